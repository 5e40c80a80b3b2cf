//! Packed-array machinery shared by the classic packed labeler and its bulk
//! variant: leaf windows of `S` slots under an implicit balanced window tree,
//! upper density thresholds interpolated from 1 at the leaves to 1/2 at the
//! root, and even re-spreading of the smallest window that can absorb an insert.

use crate::order::{
    plan_bulks, plan_singles, Anchor, Core, ElementHandle, Gap, InsertResult, Label, LabelError, RelabelOp,
};

/// How a rebalanced window lays out its elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Spread {
    /// Evenly spaced inside each leaf; moves are emitted as singles.
    Even,
    /// Left-packed runs inside each leaf; moves are emitted as bulk ops of at
    /// most one leaf.
    Packed,
}

#[derive(Clone, Debug)]
pub(crate) struct Pma {
    pub core: Core,
    /// Label space is `slack * n` at the last rebuild, rounded up to whole leaves.
    slack: u64,
    leaf: u64,
    leaves: u64,
    height: u32,
    /// Implicit window tree; node `(h, i)` lives at `(leaves >> h) + i`.
    counts: Vec<u32>,
    spread: Spread,
}

pub(crate) fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

impl Pma {
    pub fn new(slack: u64, spread: Spread) -> Self {
        assert!(slack >= 2, "slack must leave the root at most half full");
        let mut p = Pma {
            core: Core::default(),
            slack,
            leaf: 0,
            leaves: 0,
            height: 0,
            counts: Vec::new(),
            spread,
        };
        p.reshape(1);
        p
    }

    /// Geometry for holding `n` elements at density `1/slack`.
    fn reshape(&mut self, n: usize) {
        let need = self.slack * n.max(1) as u64;
        let leaf = u64::from(ceil_log2(need)).max(4);
        let leaves = need.div_ceil(leaf).next_power_of_two();
        self.leaf = leaf;
        self.leaves = leaves;
        self.height = leaves.trailing_zeros();
        self.counts = vec![0; 2 * leaves as usize];
        let labels: Vec<Label> = self.core.map.iter().map(|(l, _)| l).collect();
        for l in labels {
            self.bump(l, 1);
        }
    }

    pub fn capacity(&self) -> Label {
        self.leaf * self.leaves
    }

    pub fn leaf_size(&self) -> usize {
        self.leaf as usize
    }

    pub fn bulk_limit(&self) -> Option<usize> {
        match self.spread {
            Spread::Even => None,
            Spread::Packed => Some(self.leaf as usize),
        }
    }

    fn node(&self, slot: Label, h: u32) -> usize {
        ((self.leaves >> h) + ((slot / self.leaf) >> h)) as usize
    }

    fn window(&self, slot: Label, h: u32) -> (Label, Label) {
        let span = self.leaf << h;
        let lo = slot / span * span;
        (lo, lo + span - 1)
    }

    fn bump(&mut self, slot: Label, d: i32) {
        let mut node = (self.leaves + slot / self.leaf) as usize;
        while node >= 1 {
            self.counts[node] = (self.counts[node] as i64 + d as i64) as u32;
            node /= 2;
        }
    }

    /// Whether a window of height `h` may hold `count` elements.
    fn within(&self, h: u32, count: u64) -> bool {
        let size = self.leaf << h;
        let hh = u64::from(self.height);
        if hh == 0 {
            return 2 * count <= size;
        }
        // count <= (1 - h / (2H)) * size
        count * 2 * hh <= (2 * hh - u64::from(h)) * size
    }

    /// Highest window on the path from `slot`'s leaf to the root that would
    /// exceed its threshold after one more element arrives there.
    fn highest_violation(&self, slot: Label) -> Option<u32> {
        (0..=self.height)
            .rev()
            .find(|&h| !self.within(h, u64::from(self.counts[self.node(slot, h)]) + 1))
    }

    fn emit_all(&mut self, ops: Vec<RelabelOp>) -> Result<(), LabelError> {
        let limit = self.bulk_limit();
        for op in ops {
            for (_, old, new) in self.core.emit(op, limit)? {
                self.bump(old, -1);
                self.bump(new, 1);
            }
        }
        Ok(())
    }

    fn finish(&mut self, h: ElementHandle, label: Label, gap: &Gap) -> Result<InsertResult, LabelError> {
        self.bump(label, 1);
        self.core.finish(h, label, gap)
    }

    pub fn insert(&mut self, anchor: Anchor) -> Result<InsertResult, LabelError> {
        let gap = self.core.gap(anchor)?;
        let h = self.core.fresh();
        if self.core.map.is_empty() {
            let mid = self.capacity() / 2;
            return self.finish(h, mid, &gap);
        }
        let pred = gap.pred.map(|(l, _)| l);
        let succ = gap.succ.map(|(l, _)| l);
        // `lo..hi` is the open gap, with virtual sentinels at -1 and capacity.
        let lo = pred.map_or(0, |p| p + 1);
        let hi = succ.unwrap_or(self.capacity());
        let direct = if lo < hi {
            Some(match self.spread {
                Spread::Even => lo + (hi - 1 - lo) / 2,
                Spread::Packed => {
                    if pred.is_some() {
                        lo
                    } else {
                        hi - 1
                    }
                }
            })
        } else {
            None
        };
        if let Some(slot) = direct {
            match self.highest_violation(slot) {
                None => return self.finish(h, slot, &gap),
                Some(v) => return self.rebalance(v + 1, slot, &gap, h),
            }
        }
        // No free label between the neighbours.
        let home = pred.or(succ).expect("non-empty structure has a neighbour");
        if let Some(v) = self.highest_violation(home) {
            return self.rebalance(v + 1, home, &gap, h);
        }
        match self.spread {
            Spread::Even => self.rebalance(0, home, &gap, h),
            Spread::Packed => self.shift_in_leaf(home, lo, &gap, h),
        }
    }

    /// Opens label `target` (currently occupied) by shifting the run up to the
    /// nearest free slot of the same leaf.
    fn shift_in_leaf(&mut self, home: Label, target: Label, gap: &Gap, h: ElementHandle) -> Result<InsertResult, LabelError> {
        let (wlo, whi) = self.window(home, 0);
        let free = |l: Label| self.core.map.at(l).is_none();
        if let Some(f) = (target + 1..=whi).find(|&l| free(l)) {
            self.emit_all(vec![RelabelOp::Bulk { lo: target, hi: f - 1, delta: 1 }])?;
            return self.finish(h, target, gap);
        }
        let left_end = target.checked_sub(1).filter(|&l| l >= wlo);
        if let Some(last) = left_end {
            if let Some(f) = (wlo..last).rev().find(|&l| free(l)) {
                self.emit_all(vec![RelabelOp::Bulk { lo: f + 1, hi: last, delta: -1 }])?;
                return self.finish(h, last, gap);
            }
        }
        // The leaf threshold (1) was checked, so a free slot exists; reaching
        // here means the target sits at the leaf edge. Re-spread the leaf.
        self.rebalance(0, home, gap, h)
    }

    /// Slots for `k` elements spread over the leaves of `[lo, lo + span)`.
    fn layout(&self, lo: Label, leaves: u64, k: u64) -> Vec<Label> {
        let mut out = Vec::with_capacity(k as usize);
        for i in 0..leaves {
            let c = k * (i + 1) / leaves - k * i / leaves;
            let base = lo + i * self.leaf;
            for t in 0..c {
                out.push(match self.spread {
                    Spread::Even => base + t * self.leaf / c,
                    Spread::Packed => base + t,
                });
            }
        }
        out
    }

    fn rebalance(&mut self, level: u32, slot: Label, gap: &Gap, h: ElementHandle) -> Result<InsertResult, LabelError> {
        if level > self.height {
            return self.rebuild(gap, h);
        }
        let (lo, hi) = self.window(slot, level);
        let elems: Vec<(ElementHandle, Label)> =
            self.core.map.range(lo, hi).into_iter().map(|(l, e)| (e, l)).collect();
        let rank = match gap.pred {
            Some((p, _)) => elems.partition_point(|&(_, l)| l <= p),
            None => 0,
        };
        let targets = self.layout(lo, 1 << level, elems.len() as u64 + 1);
        self.relocate(&elems, targets, rank, gap, h)
    }

    fn rebuild(&mut self, gap: &Gap, h: ElementHandle) -> Result<InsertResult, LabelError> {
        let n = self.core.map.len();
        self.reshape(n + 1);
        let elems: Vec<(ElementHandle, Label)> = self.core.map.iter().map(|(l, e)| (e, l)).collect();
        let rank = self.core.rank_of_gap(gap);
        let targets = self.layout(0, self.leaves, n as u64 + 1);
        self.relocate(&elems, targets, rank, gap, h)
    }

    fn relocate(
        &mut self,
        elems: &[(ElementHandle, Label)],
        mut targets: Vec<Label>,
        rank: usize,
        gap: &Gap,
        h: ElementHandle,
    ) -> Result<InsertResult, LabelError> {
        let new_label = targets.remove(rank);
        let ops = match self.spread {
            Spread::Even => plan_singles(elems, &targets),
            Spread::Packed => plan_bulks(elems, &targets, self.leaf as usize),
        };
        self.emit_all(ops)?;
        self.finish(h, new_label, gap)
    }

    /// Checks every window of every height against its threshold.
    pub fn audit_density(&self) -> Result<(), String> {
        for h in 0..=self.height {
            let span = self.leaf << h;
            let mut lo = 0;
            while lo < self.capacity() {
                let c = self.core.map.count_in(lo, lo + span - 1) as u64;
                if c != u64::from(self.counts[self.node(lo, h)]) {
                    return Err(format!("stale count for window [{lo}, {}]", lo + span - 1));
                }
                if !self.within(h, c) {
                    return Err(format!("window [{lo}, {}] of height {h} holds {c}", lo + span - 1));
                }
                lo += span;
            }
        }
        Ok(())
    }
}
