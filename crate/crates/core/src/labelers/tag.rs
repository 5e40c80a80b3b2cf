use crate::order::{plan_singles, Anchor, Core, ElementHandle, Gap, InsertResult, Label, LabelError, LabelMap, Labeler};

/// Amortized online list labeling over a polynomial tag range.
///
/// Tags live in `[0, 2^bits)` with `2^bits = n_max^exponent`. An aligned tag
/// range of size `2^i` may hold at most `2^(i / exponent)` elements; when an
/// insert finds no free tag between its neighbours, the smallest enclosing
/// range still under its threshold is relabeled evenly. Exceeding `n_max`
/// doubles it and re-spreads everything.
#[derive(Clone, Debug)]
pub struct TagListLabeler {
    core: Core,
    exponent: u32,
    n_max: u64,
    bits: u32,
}

impl Default for TagListLabeler {
    fn default() -> Self {
        Self::new(2)
    }
}

impl TagListLabeler {
    /// `exponent` is the polynomial degree of the tag range over `n_max`.
    pub fn new(exponent: u32) -> Self {
        assert!(exponent >= 2, "tag range must be at least quadratic");
        let mut t = TagListLabeler { core: Core::default(), exponent, n_max: 0, bits: 0 };
        t.set_capacity(4);
        t
    }

    fn set_capacity(&mut self, n_max: u64) {
        self.n_max = n_max;
        self.bits = n_max.trailing_zeros() * self.exponent;
        assert!(self.bits < 63, "tag range exceeds 63 bits");
    }

    /// A labeler already holding `k` elements spread evenly over the tag
    /// range, returned in order. Used to rebuild a top-level directory.
    pub fn bulk_load(exponent: u32, k: usize) -> (Self, Vec<ElementHandle>) {
        let mut t = Self::new(exponent);
        let mut cap = 4;
        while cap < 2 * k as u64 {
            cap *= 2;
        }
        t.set_capacity(cap);
        let space = t.space() as u128;
        let handles = (0..k)
            .map(|i| {
                let h = t.core.fresh();
                let label = (i as u128 * space / k as u128) as Label;
                t.core.map.place(h, label).expect("distinct even labels");
                h
            })
            .collect();
        (t, handles)
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn space(&self) -> Label {
        1 << self.bits
    }

    /// `count` elements fit a range of `2^level` tags iff `count^exponent <= 2^level`.
    fn fits(&self, level: u32, count: usize) -> bool {
        (count as u128).saturating_pow(self.exponent) <= 1u128 << level
    }

    fn spread(&mut self, lo: Label, size: Label, gap: &Gap, h: ElementHandle) -> Result<InsertResult, LabelError> {
        let elems: Vec<(ElementHandle, Label)> =
            self.core.map.range(lo, lo + size - 1).into_iter().map(|(l, e)| (e, l)).collect();
        let rank = match gap.pred {
            Some((p, _)) => elems.partition_point(|&(_, l)| l <= p),
            None => 0,
        };
        let k = elems.len() as u128 + 1;
        let mut targets: Vec<Label> = (0..k).map(|t| lo + (t * size as u128 / k) as Label).collect();
        let new_label = targets.remove(rank);
        let ops = plan_singles(&elems, &targets);
        for op in ops {
            self.core.emit(op, None)?;
        }
        self.core.finish(h, new_label, gap)
    }
}

impl Labeler for TagListLabeler {
    fn name(&self) -> &'static str {
        "tag"
    }

    fn insert(&mut self, anchor: Anchor) -> Result<InsertResult, LabelError> {
        let gap = self.core.gap(anchor)?;
        let h = self.core.fresh();
        if self.core.map.is_empty() {
            let mid = self.space() / 2;
            return self.core.finish(h, mid, &gap);
        }
        let n = self.core.map.len();
        if n as u64 + 1 > self.n_max {
            let mut cap = self.n_max;
            while cap < n as u64 + 1 {
                cap *= 2;
            }
            if (cap.trailing_zeros() * self.exponent) >= 63 {
                return Err(LabelError::Capacity { needed: n + 1, bound: self.label_bound() });
            }
            self.set_capacity(cap);
            return self.spread(0, self.space(), &gap, h);
        }
        let lo = gap.pred.map_or(0, |(p, _)| p + 1);
        let hi = gap.succ.map_or(self.space(), |(s, _)| s);
        if lo < hi {
            return self.core.finish(h, lo + (hi - 1 - lo) / 2, &gap);
        }
        let home = gap.pred.or(gap.succ).map(|(l, _)| l).unwrap();
        for level in 1..=self.bits {
            let size = 1u64 << level;
            let start = home / size * size;
            let count = self.core.map.count_in(start, start + size - 1);
            if self.fits(level, count + 1) {
                return self.spread(start, size, &gap, h);
            }
        }
        // The root threshold is n_max, which was checked above.
        unreachable!("root range always admits n <= n_max elements")
    }

    fn labels(&self) -> &LabelMap {
        &self.core.map
    }

    fn label_bound(&self) -> Label {
        self.space() - 1
    }

    fn bulk_limit(&self) -> Option<usize> {
        None
    }
}
