//! Upward straight-line grid drawing of a streamed tree, one labeler per level.
//!
//! A vertex at depth `k` sits at `(origin(k) + L(v), -k)`. Each level fixes its
//! origin when its first vertex arrives, so that vertex lands right below its
//! parent (or right above the old root when the root grows upward). Moves
//! reported by a level's labeler become horizontal vertex moves on that level.

use std::collections::{BTreeMap, HashMap};

use crate::drawing::{count_ops, BulkGroup, DrawError, Drawing, DrawingDelta, Moved, Subject, Tracked};
use crate::geometry::{planarity_audit, planarity_audit_subset, Point, Violation};
use crate::order::{Anchor, ElementHandle};
use crate::strategy::Strategy;

struct Vertex {
    name: String,
    depth: i64,
    handle: ElementHandle,
    parent: Option<usize>,
    children: Vec<usize>,
}

struct Level {
    tracked: Tracked<usize>,
    origin: i64,
}

pub struct TreeDrawer {
    strategy: Strategy,
    exponent: u32,
    ids: HashMap<String, usize>,
    verts: Vec<Vertex>,
    levels: BTreeMap<i64, Level>,
    root: Option<usize>,
}

impl TreeDrawer {
    pub fn new(strategy: Strategy, exponent: u32) -> Self {
        TreeDrawer { strategy, exponent, ids: HashMap::new(), verts: Vec::new(), levels: BTreeMap::new(), root: None }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn root(&self) -> Option<&str> {
        self.root.map(|r| self.verts[r].name.as_str())
    }

    pub fn position(&self, name: &str) -> Option<Point> {
        self.ids.get(name).map(|&v| self.point(v))
    }

    fn point(&self, v: usize) -> Point {
        let vx = &self.verts[v];
        let level = &self.levels[&vx.depth];
        Point::new(level.origin + level.tracked.label(vx.handle) as i64, -vx.depth)
    }

    /// Vertex names of every level, top to bottom, left to right.
    pub fn level_orders(&self) -> Vec<Vec<String>> {
        self.levels
            .values()
            .map(|l| l.tracked.map().iter().map(|(_, h)| self.verts[l.tracked.owner[&h]].name.clone()).collect())
            .collect()
    }

    pub fn max_label(&self) -> u64 {
        self.levels.values().filter_map(|l| l.tracked.labeler.max_label()).max().unwrap_or(0)
    }

    /// Largest label over all levels, plus one, times the number of levels.
    pub fn label_area(&self) -> u128 {
        let widest = self.levels.values().filter_map(|l| l.tracked.labeler.max_label()).max().unwrap_or(0);
        (u128::from(widest) + 1) * self.levels.len() as u128
    }

    pub fn depth_span(&self) -> usize {
        self.levels.len()
    }

    /// Adds edge `(u, v)`. The drawn endpoint is the parent, except that a
    /// new `u` joined to the current root `v` becomes the new root.
    pub fn insert_edge(&mut self, u: &str, v: &str, pos_u: usize, pos_v: usize) -> Result<DrawingDelta, DrawError> {
        match (self.ids.get(u).copied(), self.ids.get(v).copied()) {
            (None, None) if self.verts.is_empty() => {
                let mut delta = self.place_root(u)?;
                let d2 = self.add_child(0, v, pos_u)?;
                merge(&mut delta, d2);
                Ok(delta)
            }
            (None, None) => Err(DrawError::Disconnected(u.into(), v.into())),
            (Some(_), Some(_)) => Err(DrawError::Cycle(u.into(), v.into())),
            (Some(a), None) => self.add_child(a, v, pos_u),
            (None, Some(b)) if Some(b) == self.root => self.recalibrate_root(u, b),
            (None, Some(b)) => self.add_child(b, u, pos_v),
        }
    }

    fn intern(&mut self, name: &str, depth: i64, handle: ElementHandle, parent: Option<usize>) -> usize {
        let id = self.verts.len();
        self.verts.push(Vertex { name: name.into(), depth, handle, parent, children: Vec::new() });
        self.ids.insert(name.into(), id);
        id
    }

    fn new_level(&mut self, depth: i64, name: &str, x: i64, parent: Option<usize>) -> Result<usize, DrawError> {
        let mut tracked = Tracked::new(self.strategy, self.exponent);
        let r = tracked.labeler.insert_first()?;
        let id = self.verts.len();
        tracked.absorb(&r, id)?;
        self.levels.insert(depth, Level { tracked, origin: x - r.assigned as i64 });
        Ok(self.intern(name, depth, r.handle, parent))
    }

    fn place_root(&mut self, name: &str) -> Result<DrawingDelta, DrawError> {
        let r = self.new_level(0, name, 0, None)?;
        self.root = Some(r);
        Ok(DrawingDelta { placed: vec![(name.into(), Point::new(0, 0))], ..Default::default() })
    }

    /// Puts a new root `p` one row above the old root `r` without moving anything.
    pub fn recalibrate_root(&mut self, p: &str, r: usize) -> Result<DrawingDelta, DrawError> {
        let rp = self.point(r);
        let depth = self.verts[r].depth - 1;
        if self.levels.contains_key(&depth) {
            return Err(DrawError::InvariantBreach("level above the root is occupied".into()));
        }
        let id = self.new_level(depth, p, rp.x, None)?;
        self.verts[id].children.push(r);
        self.verts[r].parent = Some(id);
        self.root = Some(id);
        Ok(DrawingDelta { placed: vec![(p.into(), self.point(id))], ..Default::default() })
    }

    /// Where the `pos`-th child of `a` goes in its level: next to a sibling,
    /// else next to the nearest cousin group in parent order.
    fn anchor_for(&self, a: usize, pos: usize) -> Option<Anchor> {
        let kids = &self.verts[a].children;
        if pos > 0 {
            return Some(Anchor::After(self.verts[kids[pos - 1]].handle));
        }
        if let Some(&first) = kids.first() {
            return Some(Anchor::Before(self.verts[first].handle));
        }
        let level = &self.levels[&self.verts[a].depth];
        let map = level.tracked.map();
        let here = level.tracked.label(self.verts[a].handle);
        let mut cur = map.below(here);
        while let Some((l, h)) = cur {
            let w = level.tracked.owner[&h];
            if let Some(&last) = self.verts[w].children.last() {
                return Some(Anchor::After(self.verts[last].handle));
            }
            cur = map.below(l);
        }
        let mut cur = map.above(here);
        while let Some((l, h)) = cur {
            let w = level.tracked.owner[&h];
            if let Some(&first) = self.verts[w].children.first() {
                return Some(Anchor::Before(self.verts[first].handle));
            }
            cur = map.above(l);
        }
        None
    }

    fn add_child(&mut self, a: usize, b: &str, pos: usize) -> Result<DrawingDelta, DrawError> {
        let max = self.verts[a].children.len();
        if pos > max {
            return Err(DrawError::InvalidRotation { vertex: self.verts[a].name.clone(), pos, max });
        }
        let depth = self.verts[a].depth + 1;
        let anchor = self.anchor_for(a, pos);
        let mut delta = DrawingDelta::default();
        let id = match anchor {
            None => {
                let x = self.point(a).x;
                self.new_level(depth, b, x, Some(a))?
            }
            Some(anchor) => {
                let id = self.verts.len();
                let level = self.levels.get_mut(&depth).expect("anchored level exists");
                let r = level.tracked.labeler.insert(anchor)?;
                count_ops(&mut delta, &r);
                let effects = level.tracked.absorb(&r, id)?;
                let (origin, y) = (level.origin, -depth);
                for e in effects {
                    let start = delta.moved.len();
                    for (w, old, new) in e.moved {
                        delta.moved.push(Moved {
                            subject: Subject::Vertex(self.verts[w].name.clone()),
                            from: Point::new(origin + old as i64, y),
                            to: Point::new(origin + new as i64, y),
                        });
                    }
                    if e.bulk {
                        let shift = delta.moved.get(start).map_or(0, |m| m.to.x - m.from.x);
                        delta.bulk_groups.push(BulkGroup {
                            points: delta.moved[start..].iter().map(|m| m.from).collect(),
                            translation: Point::new(shift, 0),
                        });
                    }
                }
                self.intern(b, depth, r.handle, Some(a))
            }
        };
        self.verts[a].children.insert(pos, id);
        delta.placed.push((b.into(), self.point(id)));
        Ok(delta)
    }

    pub fn drawing(&self) -> Drawing {
        let vertices = (0..self.verts.len()).map(|v| (self.verts[v].name.clone(), self.point(v))).collect();
        let edges = (0..self.verts.len()).filter_map(|v| self.verts[v].parent.map(|p| (p, v))).collect();
        Drawing { vertices, edges, rects: Vec::new() }
    }

    /// Segments of edges whose parent is on `depth`, with their child ids.
    fn band(&self, depth: i64) -> Vec<((Point, Point), usize)> {
        let Some(level) = self.levels.get(&depth) else { return Vec::new() };
        let mut out = Vec::new();
        for (_, h) in level.tracked.map().iter() {
            let p = level.tracked.owner[&h];
            let pp = self.point(p);
            for &c in &self.verts[p].children {
                out.push(((pp, self.point(c)), c));
            }
        }
        out
    }

    /// Checks edges touched by `delta` against the other edges of their bands.
    pub fn audit_delta(&self, delta: &DrawingDelta) -> Vec<Violation> {
        let mut depths: Vec<i64> = Vec::new();
        let mut touched: Vec<usize> = Vec::new();
        let names = delta.placed.iter().map(|p| &p.0).chain(delta.moved.iter().filter_map(|m| match &m.subject {
            Subject::Vertex(n) => Some(n),
            _ => None,
        }));
        for n in names {
            let v = self.ids[n];
            touched.push(v);
            depths.push(self.verts[v].depth);
            depths.push(self.verts[v].depth - 1);
        }
        depths.sort_unstable();
        depths.dedup();
        let mut out = Vec::new();
        for d in depths {
            let band = self.band(d);
            let segs: Vec<(Point, Point)> = band.iter().map(|b| b.0).collect();
            let changed: Vec<usize> = band
                .iter()
                .enumerate()
                .filter(|(_, (_, c))| {
                    touched.contains(c) || self.verts[*c].parent.is_some_and(|p| touched.contains(&p))
                })
                .map(|(i, _)| i)
                .collect();
            out.extend(planarity_audit_subset(&segs, &changed));
        }
        out
    }

    /// Full audit: planarity, upwardness and sibling order. Returns messages.
    pub fn audit(&self) -> Vec<String> {
        let d = self.drawing();
        let mut out: Vec<String> = planarity_audit(&d.segments())
            .into_iter()
            .map(|v| format!("{:?} between edges {} and {}", v.kind, v.a, v.b))
            .collect();
        for (v, vx) in self.verts.iter().enumerate() {
            let p = self.point(v);
            if let Some(par) = vx.parent {
                if self.point(par).y != p.y + 1 {
                    out.push(format!("edge to {} is not one row down", vx.name));
                }
            }
            let xs: Vec<i64> = vx.children.iter().map(|&c| self.point(c).x).collect();
            if xs.windows(2).any(|w| w[0] >= w[1]) {
                out.push(format!("children of {} out of rotation order", vx.name));
            }
        }
        out
    }
}

fn merge(into: &mut DrawingDelta, d: DrawingDelta) {
    into.placed.extend(d.placed);
    into.moved.extend(d.moved);
    into.bulk_groups.extend(d.bulk_groups);
    into.singles += d.singles;
    into.bulks += d.bulks;
    into.max_bulk = into.max_bulk.max(d.max_bulk);
    into.rebound += d.rebound;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_edge_places_root_at_origin() {
        let mut t = TreeDrawer::new(Strategy::Oracle, 2);
        let d = t.insert_edge("r", "a", 0, 0).unwrap();
        assert_eq!(t.position("r"), Some(Point::new(0, 0)));
        assert_eq!(t.position("a").unwrap().y, -1);
        assert!(d.moved.is_empty());
    }

    #[test]
    fn middle_child_shifts_the_level_suffix() {
        let mut t = TreeDrawer::new(Strategy::Oracle, 2);
        t.insert_edge("r", "a", 0, 0).unwrap();
        t.insert_edge("r", "b", 1, 0).unwrap();
        t.insert_edge("a", "c", 0, 0).unwrap();
        t.insert_edge("a", "d", 1, 0).unwrap();
        t.insert_edge("b", "e", 0, 0).unwrap();
        let before: Vec<Point> = ["d", "e"].iter().map(|n| t.position(n).unwrap()).collect();
        let d = t.insert_edge("a", "x", 1, 0).unwrap();
        let moved: Vec<&Subject> = d.moved.iter().map(|m| &m.subject).collect();
        assert_eq!(moved, vec![&Subject::Vertex("e".into()), &Subject::Vertex("d".into())]);
        for (m, b) in d.moved.iter().rev().zip(&before) {
            assert_eq!(m.from, *b);
            assert_eq!(m.to, Point::new(b.x + 1, b.y));
        }
        assert_eq!(t.position("x"), Some(before[0]));
        assert!(t.audit().is_empty());
    }

    #[test]
    fn root_growth_moves_nothing() {
        let mut t = TreeDrawer::new(Strategy::Packed, 2);
        t.insert_edge("r", "a", 0, 0).unwrap();
        let mut top = "r".to_string();
        for i in 0..5 {
            let snapshot = t.drawing().vertices;
            let p = format!("p{i}");
            let d = t.insert_edge(&p, &top, 0, 0).unwrap();
            assert!(d.moved.is_empty());
            for (n, pt) in snapshot {
                assert_eq!(t.position(&n), Some(pt));
            }
            let old = t.position(&top).unwrap();
            assert_eq!(t.position(&p), Some(Point::new(old.x, old.y + 1)));
            top = p;
        }
        assert_eq!(t.root(), Some(top.as_str()));
    }

    #[test]
    fn stream_errors() {
        let mut t = TreeDrawer::new(Strategy::Oracle, 2);
        t.insert_edge("r", "a", 0, 0).unwrap();
        assert!(matches!(t.insert_edge("x", "y", 0, 0), Err(DrawError::Disconnected(..))));
        assert!(matches!(t.insert_edge("r", "b", 5, 0), Err(DrawError::InvalidRotation { .. })));
        assert!(matches!(t.insert_edge("r", "a", 0, 0), Err(DrawError::Cycle(..))));
    }
}
