//! Ordered labeling: handles, labels, the relabel-event model shared by every
//! labeler and drawing engine, and the naive re-packing oracle.

use std::cell::OnceCell;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

/// Integer label in `[0, N]`.
pub type Label = u64;

/// Identity of an ordered element. Assigned from a per-structure monotone
/// counter and never reused.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElementHandle(u64);

impl ElementHandle {
    pub fn id(self) -> u64 {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("stale handle {0:?}")]
    StaleHandle(ElementHandle),
    #[error("capacity: cannot hold {needed} elements within label bound {bound}")]
    Capacity { needed: usize, bound: Label },
    #[error("invalid relabel batch: {0}")]
    InvalidRelabel(String),
    #[error("structure is not empty, an anchor element is required")]
    AnchorRequired,
}

/// One unit of relabeling. A `Bulk` shifts every live label in `[lo, hi]` by
/// `delta`; it is counted as one move regardless of how many elements it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelabelOp {
    Single {
        handle: ElementHandle,
        old: Label,
        new: Label,
    },
    Bulk {
        lo: Label,
        hi: Label,
        delta: i64,
    },
}

impl RelabelOp {
    pub fn is_bulk(&self) -> bool {
        matches!(self, RelabelOp::Bulk { .. })
    }
}

/// Where a new element goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    /// The null anchor: only valid while the structure is empty.
    First,
    After(ElementHandle),
    Before(ElementHandle),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertResult {
    pub handle: ElementHandle,
    pub assigned: Label,
    /// Applied in order to the prior assignment before `assigned` is given out.
    pub relabels: Vec<RelabelOp>,
    /// Largest number of elements carried by one bulk op of this insertion.
    pub max_bulk: usize,
}

impl InsertResult {
    pub fn singles(&self) -> usize {
        self.relabels.iter().filter(|op| !op.is_bulk()).count()
    }

    pub fn bulks(&self) -> usize {
        self.relabels.iter().filter(|op| op.is_bulk()).count()
    }
}

/// Bidirectional handle/label map. Every labeler mutates its labels only
/// through [`LabelMap::apply`], so emitted ops are exactly the state changes.
#[derive(Clone, Debug, Default)]
pub struct LabelMap {
    by_label: BTreeMap<Label, ElementHandle>,
    /// Indexed by handle id.
    by_handle: Vec<Option<Label>>,
}

impl PartialEq for LabelMap {
    fn eq(&self, other: &Self) -> bool {
        self.by_label == other.by_label
    }
}

impl Eq for LabelMap {}

impl LabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.by_label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_label.is_empty()
    }

    pub fn label_of(&self, h: ElementHandle) -> Option<Label> {
        self.by_handle.get(h.0 as usize).copied().flatten()
    }

    fn set(&mut self, h: ElementHandle, label: Label) {
        let i = h.0 as usize;
        if i >= self.by_handle.len() {
            self.by_handle.resize(i + 1, None);
        }
        self.by_handle[i] = Some(label);
    }

    pub fn at(&self, label: Label) -> Option<ElementHandle> {
        self.by_label.get(&label).copied()
    }

    pub fn contains(&self, h: ElementHandle) -> bool {
        self.label_of(h).is_some()
    }

    pub fn first(&self) -> Option<(Label, ElementHandle)> {
        self.by_label.iter().next().map(|(&l, &h)| (l, h))
    }

    pub fn last(&self) -> Option<(Label, ElementHandle)> {
        self.by_label.iter().next_back().map(|(&l, &h)| (l, h))
    }

    /// Closest live element with a label strictly below `label`.
    pub fn below(&self, label: Label) -> Option<(Label, ElementHandle)> {
        self.by_label.range(..label).next_back().map(|(&l, &h)| (l, h))
    }

    /// Closest live element with a label strictly above `label`.
    pub fn above(&self, label: Label) -> Option<(Label, ElementHandle)> {
        self.by_label
            .range((std::ops::Bound::Excluded(label), std::ops::Bound::Unbounded))
            .next()
            .map(|(&l, &h)| (l, h))
    }

    pub fn count_in(&self, lo: Label, hi: Label) -> usize {
        if lo > hi {
            return 0;
        }
        self.by_label.range(lo..=hi).count()
    }

    /// Elements with labels in `[lo, hi]`, in label order.
    pub fn range(&self, lo: Label, hi: Label) -> Vec<(Label, ElementHandle)> {
        if lo > hi {
            return Vec::new();
        }
        self.by_label.range(lo..=hi).map(|(&l, &h)| (l, h)).collect()
    }

    /// Elements in label order.
    pub fn iter(&self) -> impl Iterator<Item = (Label, ElementHandle)> + '_ {
        self.by_label.iter().map(|(&l, &h)| (l, h))
    }

    pub fn handles(&self) -> Vec<ElementHandle> {
        self.by_label.values().copied().collect()
    }

    /// Gives a fresh handle a free label. Order is the caller's business.
    pub fn place(&mut self, h: ElementHandle, label: Label) -> Result<(), LabelError> {
        if self.contains(h) {
            return Err(LabelError::InvalidRelabel(format!("{h:?} already placed")));
        }
        if self.by_label.contains_key(&label) {
            return Err(LabelError::InvalidRelabel(format!("label {label} occupied")));
        }
        self.by_label.insert(label, h);
        self.set(h, label);
        Ok(())
    }

    /// Applies one op after checking it cannot collide or reorder. Returns the
    /// moved elements as `(handle, old, new)`.
    pub fn apply(
        &mut self,
        op: &RelabelOp,
        bulk_limit: Option<usize>,
    ) -> Result<Vec<(ElementHandle, Label, Label)>, LabelError> {
        match *op {
            RelabelOp::Single { handle, old, new } => {
                if self.label_of(handle) != Some(old) {
                    return Err(invalid(format!("{handle:?} is not at label {old}")));
                }
                if old == new {
                    return Ok(vec![]);
                }
                let (lo, hi) = if new < old { (new, old - 1) } else { (old + 1, new) };
                if self.by_label.range(lo..=hi).next().is_some() {
                    if self.by_label.contains_key(&new) {
                        return Err(invalid(format!("label {new} occupied")));
                    }
                    return Err(invalid(format!("moving {handle:?} {old}->{new} passes another element")));
                }
                self.by_label.remove(&old);
                self.by_label.insert(new, handle);
                self.set(handle, new);
                Ok(vec![(handle, old, new)])
            }
            RelabelOp::Bulk { lo, hi, delta } => {
                if lo > hi {
                    return Err(invalid(format!("empty bulk interval [{lo}, {hi}]")));
                }
                let new_lo = lo
                    .checked_add_signed(delta)
                    .ok_or_else(|| invalid(format!("bulk [{lo}, {hi}] shifted below 0")))?;
                let new_hi = hi
                    .checked_add_signed(delta)
                    .ok_or_else(|| invalid(format!("bulk [{lo}, {hi}] overflows")))?;
                let moving: Vec<(Label, ElementHandle)> =
                    self.by_label.range(lo..=hi).map(|(&l, &h)| (l, h)).collect();
                if let Some(limit) = bulk_limit {
                    if moving.len() > limit {
                        return Err(invalid(format!(
                            "bulk [{lo}, {hi}] carries {} elements, limit {limit}",
                            moving.len()
                        )));
                    }
                }
                if delta == 0 {
                    return Ok(vec![]);
                }
                let swept = if delta > 0 { (hi + 1, new_hi) } else { (new_lo, lo - 1) };
                if self.by_label.range(swept.0..=swept.1).next().is_some() {
                    return Err(invalid(format!(
                        "bulk [{lo}, {hi}] by {delta} collides with or passes a live element"
                    )));
                }
                for (l, _) in &moving {
                    self.by_label.remove(l);
                }
                let mut out = Vec::with_capacity(moving.len());
                for (l, h) in moving {
                    let nl = l.wrapping_add_signed(delta);
                    self.by_label.insert(nl, h);
                    self.set(h, nl);
                    out.push((h, l, nl));
                }
                Ok(out)
            }
        }
    }
}

fn invalid(msg: String) -> LabelError {
    LabelError::InvalidRelabel(msg)
}

/// Replays a batch onto a copy of `map`.
pub fn apply_relabels(map: &LabelMap, ops: &[RelabelOp]) -> Result<LabelMap, LabelError> {
    let mut out = map.clone();
    for op in ops {
        out.apply(op, None)?;
    }
    Ok(out)
}

/// An ordered-labeling structure that reports every relabel it performs.
pub trait Labeler: Send {
    fn name(&self) -> &'static str;

    fn insert(&mut self, anchor: Anchor) -> Result<InsertResult, LabelError>;

    fn labels(&self) -> &LabelMap;

    /// Current label-space bound `N`; every live label is `<= N`.
    fn label_bound(&self) -> Label;

    /// Declared bulk-size parameter `B`, `None` when the structure never bulk-moves.
    fn bulk_limit(&self) -> Option<usize>;

    fn insert_first(&mut self) -> Result<InsertResult, LabelError> {
        self.insert(Anchor::First)
    }

    fn insert_after(&mut self, x: ElementHandle) -> Result<InsertResult, LabelError> {
        self.insert(Anchor::After(x))
    }

    fn insert_before(&mut self, x: ElementHandle) -> Result<InsertResult, LabelError> {
        self.insert(Anchor::Before(x))
    }

    fn label_of(&self, x: ElementHandle) -> Result<Label, LabelError> {
        self.labels().label_of(x).ok_or(LabelError::StaleHandle(x))
    }

    fn len(&self) -> usize {
        self.labels().len()
    }

    fn is_empty(&self) -> bool {
        self.labels().is_empty()
    }

    fn order(&self) -> Vec<ElementHandle> {
        self.labels().handles()
    }

    fn max_label(&self) -> Option<Label> {
        self.labels().last().map(|(l, _)| l)
    }
}

/// Neighbours of the position a new element will take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Gap {
    pub pred: Option<(Label, ElementHandle)>,
    pub succ: Option<(Label, ElementHandle)>,
}

/// State every concrete labeler carries: the label map, the handle counter and
/// the journal of ops emitted by the insertion in progress.
#[derive(Clone, Debug, Default)]
pub(crate) struct Core {
    pub map: LabelMap,
    next_id: u64,
    journal: Vec<RelabelOp>,
    max_bulk: usize,
}

impl Core {
    pub fn fresh(&mut self) -> ElementHandle {
        let h = ElementHandle(self.next_id);
        self.next_id += 1;
        h
    }

    pub fn gap(&self, anchor: Anchor) -> Result<Gap, LabelError> {
        match anchor {
            Anchor::First => {
                if self.map.is_empty() {
                    Ok(Gap { pred: None, succ: None })
                } else {
                    Err(LabelError::AnchorRequired)
                }
            }
            Anchor::After(x) => {
                let l = self.map.label_of(x).ok_or(LabelError::StaleHandle(x))?;
                Ok(Gap { pred: Some((l, x)), succ: self.map.above(l) })
            }
            Anchor::Before(x) => {
                let l = self.map.label_of(x).ok_or(LabelError::StaleHandle(x))?;
                Ok(Gap { pred: self.map.below(l), succ: Some((l, x)) })
            }
        }
    }

    /// Rank the new element will take among current elements.
    pub fn rank_of_gap(&self, gap: &Gap) -> usize {
        match gap.pred {
            Some((l, _)) => self.map.count_in(0, l),
            None => 0,
        }
    }

    pub fn emit(
        &mut self,
        op: RelabelOp,
        limit: Option<usize>,
    ) -> Result<Vec<(ElementHandle, Label, Label)>, LabelError> {
        let moved = self.map.apply(&op, limit)?;
        if op.is_bulk() {
            self.max_bulk = self.max_bulk.max(moved.len());
        }
        self.journal.push(op);
        Ok(moved)
    }

    /// Places the new element and hands back the journal of this insertion.
    pub fn finish(&mut self, h: ElementHandle, label: Label, gap: &Gap) -> Result<InsertResult, LabelError> {
        debug_assert!(gap.pred.is_none_or(|(_, p)| self.map.label_of(p).unwrap() < label));
        debug_assert!(gap.succ.is_none_or(|(_, s)| self.map.label_of(s).unwrap() > label));
        self.map.place(h, label)?;
        Ok(InsertResult {
            handle: h,
            assigned: label,
            relabels: std::mem::take(&mut self.journal),
            max_bulk: std::mem::take(&mut self.max_bulk),
        })
    }
}

/// Orders moves so every intermediate state is valid: left movers ascending,
/// then right movers descending.
fn order_pieces(pieces: Vec<(Label, Label, i64)>) -> Vec<(Label, Label, i64)> {
    let (mut left, mut right): (Vec<_>, Vec<_>) = pieces
        .into_iter()
        .filter(|p| p.2 != 0)
        .partition(|p| p.2 < 0);
    left.sort_by_key(|p| p.0);
    right.sort_by_key(|p| std::cmp::Reverse(p.0));
    left.extend(right);
    left
}

/// Moves each element from its current label to `targets[i]` with singles.
/// `elems` must be in label order and `targets` strictly increasing.
pub(crate) fn plan_singles(elems: &[(ElementHandle, Label)], targets: &[Label]) -> Vec<RelabelOp> {
    debug_assert_eq!(elems.len(), targets.len());
    let by_label: HashMap<Label, ElementHandle> = elems.iter().map(|&(h, l)| (l, h)).collect();
    let pieces = elems
        .iter()
        .zip(targets)
        .map(|(&(_, l), &t)| (l, l, t as i64 - l as i64))
        .collect();
    order_pieces(pieces)
        .into_iter()
        .map(|(l, _, d)| RelabelOp::Single {
            handle: by_label[&l],
            old: l,
            new: l.wrapping_add_signed(d),
        })
        .collect()
}

/// Same contract as [`plan_singles`], but consecutive elements that are
/// contiguous both before and after share one bulk op of at most `max_piece`.
pub(crate) fn plan_bulks(elems: &[(ElementHandle, Label)], targets: &[Label], max_piece: usize) -> Vec<RelabelOp> {
    debug_assert_eq!(elems.len(), targets.len());
    let mut pieces: Vec<(Label, Label, i64)> = Vec::new();
    let mut size = 0usize;
    for (i, (&(_, l), &t)) in elems.iter().zip(targets).enumerate() {
        let delta = t as i64 - l as i64;
        let joins = i > 0
            && size < max_piece
            && elems[i - 1].1 + 1 == l
            && targets[i - 1] + 1 == t;
        if joins {
            pieces.last_mut().unwrap().1 = l;
            size += 1;
        } else {
            pieces.push((l, l, delta));
            size = 1;
        }
    }
    order_pieces(pieces)
        .into_iter()
        .map(|(lo, hi, delta)| RelabelOp::Bulk { lo, hi, delta })
        .collect()
}

/// Re-packs labels to `1..=n` on every insertion. The correctness baseline.
///
/// Labels are ranks, so the order is kept as a plain sequence and the
/// [`LabelMap`] view is built only when asked for.
#[derive(Clone, Debug)]
pub struct OracleLabeler {
    seq: Vec<ElementHandle>,
    /// Index into `seq`, by handle id.
    rank: Vec<usize>,
    bound: Label,
    view: OnceCell<LabelMap>,
}

impl Default for OracleLabeler {
    fn default() -> Self {
        Self::new()
    }
}

impl OracleLabeler {
    pub fn new() -> Self {
        Self::with_bound(Label::MAX)
    }

    /// An oracle that refuses to hold more than `bound` elements.
    pub fn with_bound(bound: Label) -> Self {
        Self { seq: Vec::new(), rank: Vec::new(), bound, view: OnceCell::new() }
    }

    fn rank_of(&self, x: ElementHandle) -> Result<usize, LabelError> {
        self.rank.get(x.0 as usize).copied().ok_or(LabelError::StaleHandle(x))
    }
}

impl Labeler for OracleLabeler {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn insert(&mut self, anchor: Anchor) -> Result<InsertResult, LabelError> {
        let at = match anchor {
            Anchor::First if self.seq.is_empty() => 0,
            Anchor::First => return Err(LabelError::AnchorRequired),
            Anchor::After(x) => self.rank_of(x)? + 1,
            Anchor::Before(x) => self.rank_of(x)?,
        };
        let n = self.seq.len();
        if n as Label + 1 > self.bound {
            return Err(LabelError::Capacity { needed: n + 1, bound: self.bound });
        }
        let relabels = (at..n)
            .rev()
            .map(|i| RelabelOp::Single { handle: self.seq[i], old: i as Label + 1, new: i as Label + 2 })
            .collect();
        let h = ElementHandle(n as u64);
        self.seq.insert(at, h);
        self.rank.push(at);
        for (i, e) in self.seq.iter().enumerate().skip(at + 1) {
            self.rank[e.0 as usize] = i;
        }
        self.view = OnceCell::new();
        Ok(InsertResult { handle: h, assigned: at as Label + 1, relabels, max_bulk: 0 })
    }

    fn labels(&self) -> &LabelMap {
        self.view.get_or_init(|| {
            let mut m = LabelMap::new();
            for (i, &h) in self.seq.iter().enumerate() {
                m.place(h, i as Label + 1).expect("ranks are distinct");
            }
            m
        })
    }

    fn label_of(&self, x: ElementHandle) -> Result<Label, LabelError> {
        Ok(self.rank_of(x)? as Label + 1)
    }

    fn len(&self) -> usize {
        self.seq.len()
    }

    fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn order(&self) -> Vec<ElementHandle> {
        self.seq.clone()
    }

    fn max_label(&self) -> Option<Label> {
        (!self.seq.is_empty()).then_some(self.seq.len() as Label)
    }

    fn label_bound(&self) -> Label {
        self.bound
    }

    fn bulk_limit(&self) -> Option<usize> {
        None
    }
}

/// Running move accounting over a sequence of insertions.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MoveStats {
    pub singles: u64,
    pub bulks: u64,
    pub max_bulk_size: usize,
    pub max_label: Label,
    pub per_insertion: Vec<(u64, u64)>,
}

impl MoveStats {
    pub fn record(&mut self, r: &InsertResult, max_label: Label) {
        let (s, b) = (r.singles() as u64, r.bulks() as u64);
        self.singles += s;
        self.bulks += b;
        self.max_bulk_size = self.max_bulk_size.max(r.max_bulk);
        self.max_label = self.max_label.max(max_label);
        self.per_insertion.push((s, b));
    }

    pub fn insertions(&self) -> usize {
        self.per_insertion.len()
    }

    pub fn amortized_singles(&self) -> f64 {
        self.singles as f64 / self.insertions().max(1) as f64
    }

    pub fn amortized_bulks(&self) -> f64 {
        self.bulks as f64 / self.insertions().max(1) as f64
    }

    /// Totals recomputed from the per-insertion entries.
    pub fn consistent(&self) -> bool {
        let (s, b) = self
            .per_insertion
            .iter()
            .fold((0, 0), |(s, b), &(x, y)| (s + x, b + y));
        s == self.singles && b == self.bulks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels_of(l: &dyn Labeler, hs: &[ElementHandle]) -> Vec<Label> {
        hs.iter().map(|&h| l.label_of(h).unwrap()).collect()
    }

    #[test]
    fn oracle_append_needs_no_relabel() {
        let mut o = OracleLabeler::new();
        let a = o.insert_first().unwrap();
        assert_eq!(a.assigned, 1);
        let b = o.insert_after(a.handle).unwrap();
        assert_eq!(b.assigned, 2);
        assert!(b.relabels.is_empty());
        assert_eq!(o.order(), vec![a.handle, b.handle]);
    }

    #[test]
    fn oracle_insert_in_middle_shifts_suffix() {
        let mut o = OracleLabeler::new();
        let a = o.insert_first().unwrap().handle;
        let b = o.insert_after(a).unwrap().handle;
        let c = o.insert_after(a).unwrap();
        assert_eq!(c.relabels, vec![RelabelOp::Single { handle: b, old: 2, new: 3 }]);
        assert_eq!(c.assigned, 2);
        assert_eq!(o.order(), vec![a, c.handle, b]);
        let mut ls = labels_of(&o, &[a, b, c.handle]);
        ls.sort();
        assert_eq!(ls, vec![1, 2, 3]);
    }

    #[test]
    fn oracle_insert_before() {
        let mut o = OracleLabeler::new();
        let a = o.insert_first().unwrap().handle;
        let d = o.insert_before(a).unwrap();
        assert_eq!(d.relabels, vec![RelabelOp::Single { handle: a, old: 1, new: 2 }]);
        assert_eq!(d.assigned, 1);
        assert_eq!(o.order(), vec![d.handle, a]);
    }

    #[test]
    fn dual_calls_agree() {
        let mut x = OracleLabeler::new();
        let a = x.insert_first().unwrap().handle;
        let b = x.insert_after(a).unwrap().handle;
        x.insert_after(a).unwrap();
        let mut y = OracleLabeler::new();
        let a2 = y.insert_first().unwrap().handle;
        let b2 = y.insert_after(a2).unwrap().handle;
        y.insert_before(b2).unwrap();
        assert_eq!(x.order().len(), 3);
        assert_eq!(labels_of(&x, &[a, b]), labels_of(&y, &[a2, b2]));
    }

    #[test]
    fn errors() {
        let mut o = OracleLabeler::with_bound(2);
        let a = o.insert_first().unwrap().handle;
        assert_eq!(o.insert_first(), Err(LabelError::AnchorRequired));
        let mut other = OracleLabeler::new();
        other.insert_first().unwrap();
        let stale = other.insert_after(a).unwrap().handle;
        assert_eq!(o.insert_after(stale), Err(LabelError::StaleHandle(stale)));
        assert_eq!(o.label_of(stale), Err(LabelError::StaleHandle(stale)));
        o.insert_after(a).unwrap();
        assert!(matches!(o.insert_after(a), Err(LabelError::Capacity { .. })));
    }

    #[test]
    fn bulk_shift_and_reorder_rejection() {
        let mut o = OracleLabeler::new();
        let a = o.insert_first().unwrap().handle;
        let b = o.insert_after(a).unwrap().handle;
        let moved = apply_relabels(o.labels(), &[RelabelOp::Bulk { lo: 1, hi: 2, delta: 3 }]).unwrap();
        assert_eq!(moved.label_of(a), Some(4));
        assert_eq!(moved.label_of(b), Some(5));
        let err = apply_relabels(o.labels(), &[RelabelOp::Bulk { lo: 2, hi: 2, delta: -2 }]);
        assert!(matches!(err, Err(LabelError::InvalidRelabel(_))));
        let err = apply_relabels(o.labels(), &[RelabelOp::Single { handle: a, old: 1, new: 2 }]);
        assert!(matches!(err, Err(LabelError::InvalidRelabel(_))));
    }

    #[test]
    fn bulk_limit_enforced() {
        let mut m = LabelMap::new();
        let mut core = Core::default();
        for l in 0..4 {
            let h = core.fresh();
            m.place(h, l).unwrap();
        }
        assert!(m.clone().apply(&RelabelOp::Bulk { lo: 0, hi: 3, delta: 1 }, Some(3)).is_err());
        assert_eq!(m.apply(&RelabelOp::Bulk { lo: 0, hi: 3, delta: 1 }, Some(4)).unwrap().len(), 4);
    }

    #[test]
    fn planned_moves_replay_cleanly() {
        let mut core = Core::default();
        let mut m = LabelMap::new();
        let labels = [2u64, 3, 4, 9, 10, 11, 12, 20];
        let elems: Vec<_> = labels
            .iter()
            .map(|&l| {
                let h = core.fresh();
                m.place(h, l).unwrap();
                (h, l)
            })
            .collect();
        let targets = [0u64, 1, 5, 6, 7, 13, 14, 15];
        for ops in [plan_singles(&elems, &targets), plan_bulks(&elems, &targets, 2)] {
            let out = apply_relabels(&m, &ops).unwrap();
            for (&(h, _), &t) in elems.iter().zip(&targets) {
                assert_eq!(out.label_of(h), Some(t));
            }
        }
        let bulks = plan_bulks(&elems, &targets, 2);
        assert!(bulks.iter().all(|op| match op {
            RelabelOp::Bulk { lo, hi, .. } => hi - lo < 2,
            _ => false,
        }));
    }

    #[test]
    fn stats_totals() {
        let mut o = OracleLabeler::new();
        let mut st = MoveStats::default();
        let a = o.insert_first().unwrap();
        st.record(&a, o.max_label().unwrap());
        let mut first = a.handle;
        for _ in 0..5 {
            let r = o.insert_before(first).unwrap();
            st.record(&r, o.max_label().unwrap());
            first = r.handle;
        }
        assert!(st.consistent());
        assert_eq!(st.singles, 1 + 2 + 3 + 4 + 5);
        assert_eq!(st.max_label, 6);
    }
}
