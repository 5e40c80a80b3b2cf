use std::collections::HashMap;

use crate::labelers::pma::ceil_log2;
use crate::labelers::TagListLabeler;
use crate::order::{plan_bulks, Anchor, Core, ElementHandle, Gap, InsertResult, Label, LabelError, LabelMap, Labeler, RelabelOp};

/// Blocks of `Θ(log n)` consecutive elements under a tag-list directory.
///
/// Element labels are `top * W + offset`, with `W = 2g` and `g = ceil(log2 n)`.
/// A full block splits into two halves, and every directory relabel becomes
/// one bulk shift of a whole block.
#[derive(Clone, Debug)]
pub struct TwoLevelLabeler {
    core: Core,
    top: TagListLabeler,
    sizes: HashMap<ElementHandle, u64>,
    n_cap: u64,
    g: u64,
}

impl Default for TwoLevelLabeler {
    fn default() -> Self {
        Self::new()
    }
}

impl TwoLevelLabeler {
    pub fn new() -> Self {
        TwoLevelLabeler { core: Core::default(), top: TagListLabeler::default(), sizes: HashMap::new(), n_cap: 4, g: 2 }
    }

    fn width(&self) -> u64 {
        2 * self.g
    }

    pub fn block_count(&self) -> usize {
        self.top.len()
    }

    /// Sizes of the blocks in order.
    pub fn block_sizes(&self) -> Vec<u64> {
        self.top.order().iter().map(|t| self.sizes[t]).collect()
    }

    fn block_of(&self, label: Label) -> ElementHandle {
        self.top.labels().at(label / self.width()).expect("every element lives in a block")
    }

    fn base_of(&self, t: ElementHandle) -> Label {
        self.top.label_of(t).expect("live block") * self.width()
    }

    fn rebuild(&mut self, gap: &Gap, h: ElementHandle) -> Result<InsertResult, LabelError> {
        let n = self.core.map.len() as u64;
        while self.n_cap < n + 1 {
            self.n_cap *= 2;
        }
        self.g = u64::from(ceil_log2(self.n_cap)).max(2);
        let (g, w) = (self.g, self.width());
        let total = n + 1;
        let k = total.div_ceil(g) as usize;
        let (top, blocks) = TagListLabeler::bulk_load(self.top.exponent(), k);
        self.top = top;
        self.sizes = blocks.iter().enumerate().map(|(j, &t)| (t, g.min(total - j as u64 * g))).collect();
        let mut targets: Vec<Label> = (0..total)
            .map(|i| self.top.label_of(blocks[(i / g) as usize]).unwrap() * w + i % g)
            .collect();
        let elems: Vec<(ElementHandle, Label)> = self.core.map.iter().map(|(l, e)| (e, l)).collect();
        let new_label = targets.remove(self.core.rank_of_gap(gap));
        for op in plan_bulks(&elems, &targets, w as usize) {
            self.core.emit(op, Some(w as usize))?;
        }
        self.core.finish(h, new_label, gap)
    }

    fn split(&mut self, t: ElementHandle, pos: u64, gap: &Gap, h: ElementHandle) -> Result<InsertResult, LabelError> {
        let (g, w) = (self.g, self.width());
        let r = self.top.insert_after(t)?;
        for op in &r.relabels {
            if let RelabelOp::Single { handle, old, new } = *op {
                let sz = self.sizes[&handle];
                let bulk = RelabelOp::Bulk { lo: old * w, hi: old * w + sz - 1, delta: (new as i64 - old as i64) * w as i64 };
                self.core.emit(bulk, Some(w as usize))?;
            }
        }
        let nt = r.handle;
        let (base, nbase) = (self.base_of(t), self.base_of(nt));
        let size = self.sizes[&t];
        let slot = |i: u64| if i < g { base + i } else { nbase + i - g };
        let elems: Vec<(ElementHandle, Label)> =
            self.core.map.range(base, base + size - 1).into_iter().map(|(l, e)| (e, l)).collect();
        let targets: Vec<Label> = (0..size).map(|i| slot(if i < pos { i } else { i + 1 })).collect();
        for op in plan_bulks(&elems, &targets, w as usize) {
            self.core.emit(op, Some(w as usize))?;
        }
        self.sizes.insert(t, g);
        self.sizes.insert(nt, size + 1 - g);
        let label = slot(pos);
        self.core.finish(h, label, gap)
    }
}

impl Labeler for TwoLevelLabeler {
    fn name(&self) -> &'static str {
        "twolevel"
    }

    fn insert(&mut self, anchor: Anchor) -> Result<InsertResult, LabelError> {
        let gap = self.core.gap(anchor)?;
        let h = self.core.fresh();
        if self.core.map.is_empty() {
            let t = self.top.insert_first()?.handle;
            self.sizes.insert(t, 1);
            let base = self.base_of(t);
            return self.core.finish(h, base, &gap);
        }
        if self.core.map.len() as u64 + 1 > self.n_cap {
            return self.rebuild(&gap, h);
        }
        let w = self.width();
        let (t, pos) = match gap.pred {
            Some((p, _)) => (self.block_of(p), p % w + 1),
            None => (self.top.labels().first().unwrap().1, 0),
        };
        let size = self.sizes[&t];
        if size + 1 == w {
            return self.split(t, pos, &gap, h);
        }
        let base = self.base_of(t);
        if pos < size {
            self.core.emit(RelabelOp::Bulk { lo: base + pos, hi: base + size - 1, delta: 1 }, Some(w as usize))?;
        }
        *self.sizes.get_mut(&t).unwrap() += 1;
        self.core.finish(h, base + pos, &gap)
    }

    fn labels(&self) -> &LabelMap {
        &self.core.map
    }

    fn label_bound(&self) -> Label {
        (self.top.label_bound() + 1) * self.width() - 1
    }

    fn bulk_limit(&self) -> Option<usize> {
        Some(self.width() as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_split_at_twice_the_log() {
        let mut t = TwoLevelLabeler::new();
        let a = t.insert_first().unwrap().handle;
        for _ in 0..3 {
            t.insert_after(a).unwrap();
        }
        assert_eq!(t.block_sizes(), vec![2, 2]);
    }

    #[test]
    fn directory_moves_become_block_shifts() {
        let mut t = TwoLevelLabeler::new();
        let a = t.insert_first().unwrap().handle;
        let mut seen_directory_move = false;
        for _ in 0..3000 {
            let r = t.insert_after(a).unwrap();
            assert!(r.relabels.iter().all(RelabelOp::is_bulk));
            assert!(r.max_bulk <= t.bulk_limit().unwrap());
            seen_directory_move |= r.relabels.len() > 2;
        }
        assert!(seen_directory_move);
        assert!(t.block_sizes().iter().all(|&s| s >= 1 && s < t.width()));
    }
}
