//! Streamed outerplanar drawings on lattice points in convex position.
//!
//! The combinatorial state is a rotation system (clockwise neighbour lists).
//! Faces are walked by leaving each vertex toward the clockwise successor of
//! the neighbour we arrived from; a corner is named by its incoming dart.
//! Every vertex is anchored at one corner of the outer walk, and the cyclic
//! order of anchors is the order of the vertices on the convex slot chain,
//! kept by a labeler over slot indices.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::convex::{strictly_convex, ConvexSlots};
use crate::drawing::{count_ops, DrawError, Drawing, DrawingDelta, Moved, Subject, Tracked};
use crate::geometry::{planarity_audit, Point};
use crate::order::{Anchor, ElementHandle, InsertResult, Label};
use crate::strategy::Strategy;

/// Which side of the directed new edge `(p, q)` a reference vertex ends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// On the clockwise arc from `p` to `q`.
    Left,
    /// On the clockwise arc from `q` to `p`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hint {
    pub reference: String,
    pub side: Side,
}

type Dart = (usize, usize);

pub struct OuterplanarDrawer {
    ids: HashMap<String, usize>,
    names: Vec<String>,
    rot: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_set: HashSet<(usize, usize)>,
    anchor: Vec<Dart>,
    slot: Vec<ElementHandle>,
    /// Slot owners; `None` marks a freed slot.
    tracked: Tracked<Option<usize>>,
    slots: ConvexSlots,
    outer: Dart,
    moves: Vec<u32>,
    last_repositioned: Vec<usize>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl OuterplanarDrawer {
    /// Slots are indexed by label, so only strategies with linear label
    /// space are accepted.
    pub fn new(strategy: Strategy, exponent: u32) -> Result<Self, DrawError> {
        if matches!(strategy, Strategy::Tag | Strategy::TwoLevel) {
            return Err(DrawError::UnsupportedStrategy(strategy.name().into()));
        }
        Ok(OuterplanarDrawer {
            ids: HashMap::new(),
            names: Vec::new(),
            rot: Vec::new(),
            edges: Vec::new(),
            edge_set: HashSet::new(),
            anchor: Vec::new(),
            slot: Vec::new(),
            tracked: Tracked::new(strategy, exponent),
            slots: ConvexSlots::new(16),
            outer: (0, 0),
            moves: Vec::new(),
            last_repositioned: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn max_label(&self) -> u64 {
        self.tracked.labeler.max_label().unwrap_or(0)
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &ConvexSlots {
        &self.slots
    }

    pub fn position(&self, name: &str) -> Option<Point> {
        self.ids.get(name).map(|&v| self.point(v))
    }

    fn point(&self, v: usize) -> Point {
        self.slots.point(self.tracked.label(self.slot[v]))
    }

    pub fn degree(&self, name: &str) -> Option<usize> {
        self.ids.get(name).map(|&v| self.rot[v].len())
    }

    /// Line-6 repositionings per vertex so far.
    pub fn move_counts(&self) -> Vec<(String, u32, usize)> {
        (0..self.names.len()).map(|v| (self.names[v].clone(), self.moves[v], self.rot[v].len())).collect()
    }

    /// Vertices repositioned by the last chord insertion, in processing order.
    pub fn last_repositioned(&self) -> Vec<String> {
        self.last_repositioned.iter().map(|&v| self.names[v].clone()).collect()
    }

    /// Vertices in clockwise slot order, starting from the lowest label.
    pub fn circle_order(&self) -> Vec<String> {
        self.tracked
            .map()
            .iter()
            .filter_map(|(_, h)| self.tracked.owner[&h].map(|v| self.names[v].clone()))
            .collect()
    }

    /// Clockwise neighbours of `name`.
    pub fn rotation(&self, name: &str) -> Option<Vec<String>> {
        self.ids.get(name).map(|&v| self.rot[v].iter().map(|&w| self.names[w].clone()).collect())
    }

    /// Next neighbour clockwise.
    fn succ(&self, v: usize, u: usize) -> usize {
        let r = &self.rot[v];
        let i = r.iter().position(|&w| w == u).expect("dart endpoints are adjacent");
        r[(i + 1) % r.len()]
    }

    /// The face walk through dart `start`, as incoming darts (corners).
    fn face(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = start;
        loop {
            let next = (d.1, self.succ(d.1, d.0));
            if next == start {
                return out;
            }
            out.push(next);
            d = next;
        }
    }

    /// The outer face walk as vertex names, one entry per corner.
    pub fn outer_walk(&self) -> Vec<String> {
        if self.names.is_empty() {
            return Vec::new();
        }
        self.face(self.outer).iter().map(|d| self.names[d.1].clone()).collect()
    }

    /// Corner of `v` that a new neighbour at rotation index `pos` splits.
    fn corner(&self, v: usize, pos: usize) -> Result<Dart, DrawError> {
        let d = self.rot[v].len();
        if pos > d {
            return Err(DrawError::InvalidRotation { vertex: self.names[v].clone(), pos, max: d });
        }
        Ok((self.rot[v][(pos + d - 1) % d], v))
    }

    fn intern(&mut self, name: &str) -> usize {
        let id = self.names.len();
        self.names.push(name.into());
        self.ids.insert(name.into(), id);
        self.rot.push(Vec::new());
        self.anchor.push((id, id));
        self.slot.push(ElementHandle::default());
        self.moves.push(0);
        id
    }

    fn add_edge(&mut self, p: usize, pos_p: usize, q: usize, pos_q: usize) {
        self.rot[p].insert(pos_p, q);
        self.rot[q].insert(pos_q, p);
        self.edges.push((p, q));
        self.edge_set.insert(key(p, q));
    }

    /// Adds edge `(u, v)` with rotation indices at both ends.
    pub fn insert_edge(
        &mut self,
        u: &str,
        v: &str,
        pos_u: usize,
        pos_v: usize,
        hint: Option<&Hint>,
    ) -> Result<DrawingDelta, DrawError> {
        let mut delta = DrawingDelta::default();
        self.last_repositioned.clear();
        match (self.ids.get(u).copied(), self.ids.get(v).copied()) {
            (None, None) if self.names.is_empty() => self.first_edge(u, v, &mut delta)?,
            (None, None) => return Err(DrawError::Disconnected(u.into(), v.into())),
            (Some(p), None) => self.pendant(p, pos_u, v, pos_v, &mut delta)?,
            (None, Some(p)) => self.pendant(p, pos_v, u, pos_u, &mut delta)?,
            (Some(p), Some(q)) => self.chord(p, pos_u, q, pos_v, hint, &mut delta)?,
        }
        Ok(delta)
    }

    fn first_edge(&mut self, u: &str, v: &str, delta: &mut DrawingDelta) -> Result<(), DrawError> {
        if u == v {
            return Err(DrawError::InvariantBreach("self-loop".into()));
        }
        let p = self.intern(u);
        let q = self.intern(v);
        self.add_edge(p, 0, q, 0);
        self.anchor[p] = (q, p);
        self.anchor[q] = (p, q);
        self.outer = (p, q);
        self.place_first(p, delta)?;
        self.place_after(q, p, true, delta)?;
        Ok(())
    }

    fn pendant(&mut self, p: usize, pos_p: usize, name: &str, pos_q: usize, delta: &mut DrawingDelta) -> Result<(), DrawError> {
        if pos_q > 0 {
            return Err(DrawError::InvalidRotation { vertex: name.into(), pos: pos_q, max: 0 });
        }
        let cp = self.corner(p, pos_p)?;
        let walk = self.face(self.outer);
        let Some(i) = walk.iter().position(|&d| d == cp) else {
            return Err(DrawError::NotOuterplanar(self.names[p].clone(), name.into()));
        };
        let pred = self.anchored_at_or_before(&walk, i);
        let q = self.intern(name);
        self.add_edge(p, pos_p, q, 0);
        self.anchor[q] = (p, q);
        self.place_after(q, pred, true, delta)
    }

    /// The vertex anchored at the last corner at or before index `i` of `walk`.
    fn anchored_at_or_before(&self, walk: &[Dart], i: usize) -> usize {
        let n = walk.len();
        (0..n)
            .map(|k| walk[(i + n - k) % n])
            .find(|&d| self.anchor[d.1] == d)
            .expect("some corner is anchored")
            .1
    }

    fn chord(
        &mut self,
        p: usize,
        pos_p: usize,
        q: usize,
        pos_q: usize,
        hint: Option<&Hint>,
        delta: &mut DrawingDelta,
    ) -> Result<(), DrawError> {
        let (pn, qn) = (self.names[p].clone(), self.names[q].clone());
        if p == q {
            return Err(DrawError::InvariantBreach("self-loop".into()));
        }
        if self.edge_set.contains(&key(p, q)) {
            return Err(DrawError::DuplicateEdge(pn, qn));
        }
        let (cp, cq) = (self.corner(p, pos_p)?, self.corner(q, pos_q)?);
        let walk = self.face(self.outer);
        let (i, j) = match (walk.iter().position(|&d| d == cp), walk.iter().position(|&d| d == cq)) {
            (Some(i), Some(j)) => (i, j),
            (None, None) => {
                // Both corners must share one inner face; the chord splits it.
                if !self.face(cp).contains(&cq) {
                    return Err(DrawError::NotOuterplanar(pn, qn));
                }
                self.add_edge(p, pos_p, q, pos_q);
                return Ok(());
            }
            _ => return Err(DrawError::NotOuterplanar(pn, qn)),
        };
        let n = walk.len();
        // Side one runs from just after cp through cq; side two is the rest.
        let side1: Vec<usize> = (1..=(j + n - i) % n).map(|k| (i + k) % n).collect();
        let mut in_side1 = vec![false; n];
        for &k in &side1 {
            in_side1[k] = true;
        }
        let exclusive = |first: bool| {
            let mut total: HashMap<usize, (usize, usize)> = HashMap::new();
            for (k, d) in walk.iter().enumerate() {
                let e = total.entry(d.1).or_default();
                e.0 += 1;
                if in_side1[k] == first {
                    e.1 += 1;
                }
            }
            total.into_iter().any(|(v, (all, here))| v != p && v != q && all == here)
        };
        let (can1, can2) = (!exclusive(true), !exclusive(false));
        let enclose_first = match (can1, can2) {
            (false, false) => return Err(DrawError::NotOuterplanar(pn, qn)),
            (true, false) => true,
            (false, true) => false,
            (true, true) => {
                let h = hint.ok_or_else(|| DrawError::Ambiguous(pn.clone(), qn.clone()))?;
                if !self.ids.contains_key(&h.reference) {
                    return Err(DrawError::UnknownHint(h.reference.clone()));
                }
                h.side == Side::Right
            }
        };
        let enclosed: HashSet<Dart> = walk
            .iter()
            .enumerate()
            .filter(|&(k, _)| in_side1[k] == enclose_first)
            .map(|(_, &d)| d)
            .collect();
        // The endpoint whose split corner closes the enclosed side keeps its
        // place through the other half of that corner.
        let (keeper, kept_corner, new_corner) = if enclose_first { (q, cq, (p, q)) } else { (p, cp, (q, p)) };
        self.add_edge(p, pos_p, q, pos_q);
        self.outer = new_corner;
        let out_walk = self.face(self.outer);
        if self.anchor[keeper] == kept_corner {
            self.anchor[keeper] = new_corner;
        }
        let moving: Vec<usize> = (0..self.names.len()).filter(|&v| enclosed.contains(&self.anchor[v])).collect();
        let mut settled: Vec<bool> = vec![true; self.names.len()];
        for &v in &moving {
            settled[v] = false;
        }
        let mut pred = None;
        for &d in &out_walk {
            let v = d.1;
            if !settled[v] {
                self.anchor[v] = d;
                settled[v] = true;
                let before = pred.expect("the walk starts at a settled endpoint");
                self.reposition(v, before, &settled, delta)?;
            }
            if self.anchor[v] == d {
                pred = Some(v);
            }
        }
        Ok(())
    }

    /// Moves `v` right after `pred` in slot order unless it already sits
    /// there with no settled vertex in between.
    fn reposition(&mut self, v: usize, pred: usize, settled: &[bool], delta: &mut DrawingDelta) -> Result<(), DrawError> {
        let mine = self.slot[v];
        let mut cur = self.tracked.label(self.slot[pred]);
        loop {
            let (l, h) = self.next_slot(cur);
            if h == mine {
                return Ok(());
            }
            match self.tracked.owner[&h] {
                Some(w) if settled[w] => break,
                _ => cur = l,
            }
        }
        let from = self.point(v);
        let (_, next) = self.next_slot(self.tracked.label(self.slot[pred]));
        if self.tracked.owner[&next].is_none() {
            self.tracked.owner.insert(mine, None);
            self.tracked.owner.insert(next, Some(v));
            self.slot[v] = next;
        } else {
            self.tracked.owner.insert(mine, None);
            self.place_after(v, pred, false, delta)?;
        }
        self.moves[v] += 1;
        self.last_repositioned.push(v);
        delta.moved.push(Moved { subject: Subject::Vertex(self.names[v].clone()), from, to: self.point(v) });
        Ok(())
    }

    /// The slot after label `l`, wrapping around.
    fn next_slot(&self, l: Label) -> (Label, ElementHandle) {
        let map = self.tracked.map();
        map.above(l).or_else(|| map.first()).expect("non-empty")
    }

    fn place_first(&mut self, v: usize, delta: &mut DrawingDelta) -> Result<(), DrawError> {
        let r = self.tracked.labeler.insert_first()?;
        self.absorb(v, r, true, delta)
    }

    /// Gives `v` the slot after `pred`: a free one if adjacent, else a new one.
    fn place_after(&mut self, v: usize, pred: usize, fresh: bool, delta: &mut DrawingDelta) -> Result<(), DrawError> {
        let (_, next) = self.next_slot(self.tracked.label(self.slot[pred]));
        if self.tracked.owner[&next].is_none() {
            self.tracked.owner.insert(next, Some(v));
            self.slot[v] = next;
            if fresh {
                delta.placed.push((self.names[v].clone(), self.point(v)));
            }
            return Ok(());
        }
        let r = self.tracked.labeler.insert(Anchor::After(self.slot[pred]))?;
        self.absorb(v, r, fresh, delta)
    }

    fn absorb(&mut self, v: usize, r: InsertResult, fresh: bool, delta: &mut DrawingDelta) -> Result<(), DrawError> {
        count_ops(delta, &r);
        let effects = self.tracked.absorb(&r, Some(v))?;
        self.slot[v] = r.handle;
        let top = self.tracked.labeler.max_label().unwrap_or(0) as usize;
        let grown = (top >= self.slots.len()).then(|| {
            let mut m = self.slots.len();
            while m <= top {
                m *= 2;
            }
            std::mem::replace(&mut self.slots, ConvexSlots::new(m))
        });
        let old_slots = grown.as_ref().unwrap_or(&self.slots);
        let mut shifted = HashSet::new();
        for e in effects {
            for (w, old, new) in e.moved {
                if let Some(w) = w.filter(|&w| w != v) {
                    shifted.insert(w);
                    delta.moved.push(Moved {
                        subject: Subject::Vertex(self.names[w].clone()),
                        from: old_slots.point(old),
                        to: self.slots.point(new),
                    });
                }
            }
        }
        if grown.is_some() {
            delta.remapped += (0..self.names.len())
                .filter(|&w| w != v && !shifted.contains(&w) && self.slot_live(w))
                .filter(|&w| {
                    let l = self.tracked.label(self.slot[w]);
                    old_slots.point(l) != self.slots.point(l)
                })
                .count();
        }
        if fresh {
            delta.placed.push((self.names[v].clone(), self.point(v)));
        }
        Ok(())
    }

    fn slot_live(&self, w: usize) -> bool {
        self.tracked.owner.get(&self.slot[w]).copied().flatten() == Some(w)
    }

    pub fn drawing(&self) -> Drawing {
        Drawing {
            vertices: (0..self.names.len()).map(|v| (self.names[v].clone(), self.point(v))).collect(),
            edges: self.edges.clone(),
            rects: Vec::new(),
        }
    }

    /// Chords cross iff their endpoints alternate around the convex chain.
    /// Exact for strictly convex slots; checks all edges by a stack scan.
    pub fn audit_fast(&self) -> Vec<String> {
        let mut out = Vec::new();
        let rank: HashMap<usize, usize> = self
            .tracked
            .map()
            .iter()
            .filter_map(|(_, h)| self.tracked.owner[&h])
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        if rank.len() != self.names.len() {
            out.push("a vertex has no live slot".into());
            return out;
        }
        let mut iv: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (rank[&a], rank[&b]);
                (x.min(y), x.max(y))
            })
            .collect();
        iv.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for (lo, hi) in iv {
            while let Some(&(_, top_hi)) = stack.last() {
                if top_hi <= lo {
                    stack.pop();
                } else {
                    break;
                }
            }
            if let Some(&(top_lo, top_hi)) = stack.last() {
                if hi > top_hi && lo > top_lo {
                    out.push(format!("chords ({lo},{hi}) and ({top_lo},{top_hi}) cross"));
                }
            }
            stack.push((lo, hi));
        }
        out.extend(self.audit_outer_order());
        out
    }

    /// Every vertex is anchored on the outer walk, and anchors occur in slot order.
    pub fn audit_outer_order(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.names.is_empty() {
            return out;
        }
        let walk = self.face(self.outer);
        let anchored: Vec<usize> = walk.iter().filter(|&&d| self.anchor[d.1] == d).map(|d| d.1).collect();
        let mut seen = vec![false; self.names.len()];
        for &v in &anchored {
            seen[v] = true;
        }
        if anchored.len() != self.names.len() || seen.iter().any(|s| !s) {
            out.push("some vertex is not anchored on the outer face".into());
            return out;
        }
        let circle: Vec<usize> = self.tracked.map().iter().filter_map(|(_, h)| self.tracked.owner[&h]).collect();
        let start = circle.iter().position(|&v| v == anchored[0]).expect("anchored vertex has a slot");
        let rotated: Vec<usize> = circle[start..].iter().chain(&circle[..start]).copied().collect();
        if rotated != anchored {
            out.push("slot order differs from the outer face order".into());
        }
        out
    }

    /// Exact segment audit of the whole drawing plus the order audit.
    pub fn audit(&self) -> Vec<String> {
        let d = self.drawing();
        let mut out: Vec<String> = planarity_audit(&d.segments())
            .into_iter()
            .map(|v| format!("{:?} between edges {} and {}", v.kind, v.a, v.b))
            .collect();
        let mut pts: Vec<Point> = d.vertices.iter().map(|v| v.1).collect();
        pts.sort_unstable();
        if pts.windows(2).any(|w| w[0] == w[1]) {
            out.push("two vertices share a point".into());
        }
        if !strictly_convex(self.slots.points()) {
            out.push("slots are not in convex position".into());
        }
        out.extend(self.audit_outer_order());
        out
    }

    /// Vertices whose line-6 moves exceed their degree minus one.
    pub fn move_audit(&self) -> Vec<String> {
        (0..self.names.len())
            .filter(|&v| self.moves[v] as usize + 1 > self.rot[v].len().max(1))
            .map(|v| format!("{} moved {} times with degree {}", self.names[v], self.moves[v], self.rot[v].len()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workloads::{circle_events, circle_rotations, random_outerplanar_stream};

    const NAMES: [&str; 9] = ["a", "b", "c", "d", "e", "f", "g", "h", "i"];

    fn drawer() -> OuterplanarDrawer {
        OuterplanarDrawer::new(Strategy::Oracle, 2).unwrap()
    }

    fn play(o: &mut OuterplanarDrawer, n: usize, edges: &[(usize, usize)]) {
        let rot = circle_rotations(n, edges);
        let letter = |s: &str| NAMES[s[1..].parse::<usize>().unwrap()];
        for e in circle_events(n, edges, &rot) {
            let hint = e.hint.map(|h| Hint { reference: letter(&h.reference).into(), side: h.side });
            o.insert_edge(letter(&e.u), letter(&e.v), e.pos_u, e.pos_v, hint.as_ref()).unwrap();
            assert!(o.audit().is_empty(), "{:?}", o.audit());
        }
    }

    /// Rotation index that puts a new neighbour right after `pred` at `v`.
    fn after(o: &OuterplanarDrawer, v: &str, pred: &str) -> usize {
        o.rotation(v).unwrap().iter().position(|x| x == pred).unwrap() + 1
    }

    fn rotated(order: Vec<String>, start: &str) -> Vec<String> {
        let k = order.iter().position(|x| x == start).unwrap();
        order[k..].iter().chain(&order[..k]).cloned().collect()
    }

    #[test]
    fn triangle_walk_visits_each_vertex_once() {
        let mut o = drawer();
        play(&mut o, 3, &[(0, 1), (1, 2), (2, 0)]);
        let mut w = o.outer_walk();
        w.sort();
        assert_eq!(w, ["a", "b", "c"]);
    }

    #[test]
    fn star_centre_repeats_on_the_walk() {
        let mut o = drawer();
        play(&mut o, 4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(o.outer_walk().iter().filter(|v| *v == "a").count(), 3);
    }

    #[test]
    fn adding_a_g_reverses_the_path_and_moves_four() {
        let mut o = drawer();
        let before = [(0, 2), (0, 1), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5), (8, 2), (8, 3)];
        play(&mut o, 9, &before);
        assert_eq!(rotated(o.circle_order(), "a"), NAMES);
        o.insert_edge("a", "g", after(&o, "a", "b"), after(&o, "g", "f"), None).unwrap();
        assert!(o.audit().is_empty(), "{:?}", o.audit());
        assert_eq!(rotated(o.circle_order(), "a"), ["a", "b", "g", "h", "f", "e", "d", "i", "c"]);
        let mut moved = o.last_repositioned();
        moved.sort();
        assert_eq!(moved, ["c", "d", "e", "f"]);
        for (v, m, deg) in o.move_counts() {
            let expect = u32::from(["c", "d", "e", "f"].contains(&v.as_str()));
            assert_eq!(m, expect, "{v}");
            assert!((m as usize) < deg);
        }
    }

    #[test]
    fn two_leaves_joined_without_a_hint_are_ambiguous() {
        let mut o = drawer();
        o.insert_edge("a", "b", 0, 0, None).unwrap();
        o.insert_edge("b", "c", 1, 0, None).unwrap();
        let e = o.insert_edge("a", "c", 1, 1, None).unwrap_err();
        assert!(e.to_string().contains("ambiguous insertion"));
    }

    fn fig2(side: Side) -> Result<OuterplanarDrawer, DrawError> {
        let mut o = drawer();
        o.insert_edge("a", "b", 0, 0, None)?;
        o.insert_edge("b", "c", 1, 0, None)?;
        let hint = Hint { reference: "b".into(), side };
        o.insert_edge("a", "c", 1, 1, Some(&hint))?;
        // b's rotation becomes (a, d, c).
        o.insert_edge("b", "d", 1, 0, None)?;
        Ok(o)
    }

    #[test]
    fn hinted_side_keeps_room_for_the_next_neighbour() {
        let o = fig2(Side::Left).unwrap();
        assert!(o.audit().is_empty(), "{:?}", o.audit());
        assert_eq!(o.rotation("b").unwrap(), ["a", "d", "c"]);
        let e = fig2(Side::Right).err().unwrap();
        assert!(e.to_string().contains("not outerplanar"));
    }

    #[test]
    fn hint_must_name_a_drawn_vertex() {
        let mut o = drawer();
        o.insert_edge("a", "b", 0, 0, None).unwrap();
        o.insert_edge("b", "c", 1, 0, None).unwrap();
        let hint = Hint { reference: "zz".into(), side: Side::Left };
        assert_eq!(o.insert_edge("a", "c", 1, 1, Some(&hint)), Err(DrawError::UnknownHint("zz".into())));
    }

    #[test]
    fn a_chord_that_would_enclose_a_vertex_takes_the_other_side() {
        // Path r-p-s with a pendant x at p: the chord (r, s) must leave x outside.
        let mut o = drawer();
        o.insert_edge("p", "r", 0, 0, None).unwrap();
        o.insert_edge("p", "s", 1, 0, None).unwrap();
        o.insert_edge("p", "x", 2, 0, None).unwrap();
        o.insert_edge("r", "s", 1, 1, None).unwrap();
        assert!(o.audit().is_empty(), "{:?}", o.audit());
        assert!(o.outer_walk().contains(&"x".to_string()));
    }

    #[test]
    fn crossing_chord_is_rejected() {
        let mut o = drawer();
        play(&mut o, 4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let e = o.insert_edge("b", "d", 1, 2, None).unwrap_err();
        assert!(e.to_string().contains("not outerplanar"), "{e}");
    }

    #[test]
    fn tag_strategies_are_refused() {
        assert!(OuterplanarDrawer::new(Strategy::Tag, 2).is_err());
    }

    #[test]
    fn random_maximal_streams_stay_planar_with_few_moves() {
        for strategy in [Strategy::Oracle, Strategy::Packed, Strategy::Sqrt, Strategy::BulkPacked] {
            for seed in 0..5 {
                let s = random_outerplanar_stream(60, seed);
                let mut o = OuterplanarDrawer::new(strategy, 2).unwrap();
                for (k, e) in s.events.iter().enumerate() {
                    o.insert_edge(&e.u, &e.v, e.pos_u, e.pos_v, e.hint.as_ref())
                        .unwrap_or_else(|err| panic!("{strategy} seed {seed} event {k}: {err}"));
                    let bad = o.audit_fast();
                    assert!(bad.is_empty(), "{strategy} seed {seed} event {k}: {bad:?}");
                }
                assert!(o.audit().is_empty());
                assert!(o.move_audit().is_empty(), "{:?}", o.move_audit());
            }
        }
    }
}
