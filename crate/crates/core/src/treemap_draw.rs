//! Streamed tree-maps over two shared coordinate sets.
//!
//! Rectangle sides are references to coordinates kept in an X and a Y labeler,
//! so a coordinate move carries every side that uses it. A first child takes
//! its parent's rectangle. A later child gets one fresh coordinate next to its
//! sibling's boundary; sides that sat on that boundary and now need the fresh
//! coordinate to stay nested and disjoint are re-pointed to it.

use std::collections::HashMap;

use serde::Serialize;

use crate::drawing::{count_ops, BulkGroup, DrawError, Drawing, DrawingDelta, Moved, Rect, Subject, Tracked};
use crate::geometry::Point;
use crate::order::{Anchor, ElementHandle, InsertResult};
use crate::strategy::Strategy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn flip(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }

    fn idx(self) -> usize {
        self as usize
    }
}

/// A shared coordinate: its axis and its id within that axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoordRef {
    pub axis: Axis,
    pub id: u64,
}

#[derive(Clone, Debug)]
struct Node {
    name: String,
    /// `[lo, hi]` coordinate ids per axis.
    span: [[u64; 2]; 2],
    axis: Axis,
    parent: Option<usize>,
    children: Vec<usize>,
}

struct Coords {
    tracked: Tracked<u64>,
    handles: Vec<ElementHandle>,
}

impl Coords {
    fn value(&self, id: u64) -> i64 {
        self.tracked.label(self.handles[id as usize]) as i64
    }
}

pub struct TreeMapDrawer {
    ids: HashMap<String, usize>,
    nodes: Vec<Node>,
    coords: [Coords; 2],
    /// Rectangles created or re-pointed by the last insertion.
    touched: Vec<usize>,
}

impl TreeMapDrawer {
    pub fn new(strategy: Strategy, exponent: u32) -> Self {
        let c = || Coords { tracked: Tracked::new(strategy, exponent), handles: Vec::new() };
        TreeMapDrawer { ids: HashMap::new(), nodes: Vec::new(), coords: [c(), c()], touched: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of shared coordinates on `axis`.
    pub fn coord_count(&self, axis: Axis) -> usize {
        self.coords[axis.idx()].handles.len()
    }

    pub fn max_label(&self, axis: Axis) -> u64 {
        self.coords[axis.idx()].tracked.labeler.max_label().unwrap_or(0)
    }

    /// The four side references of `name`'s rectangle: left, right, bottom, top.
    pub fn sides(&self, name: &str) -> Option<[CoordRef; 4]> {
        let n = &self.nodes[*self.ids.get(name)?];
        let r = |axis: Axis, k: usize| CoordRef { axis, id: n.span[axis.idx()][k] };
        Some([r(Axis::X, 0), r(Axis::X, 1), r(Axis::Y, 0), r(Axis::Y, 1)])
    }

    pub fn primary_axis(&self, name: &str) -> Option<Axis> {
        self.ids.get(name).map(|&v| self.nodes[v].axis)
    }

    pub fn children(&self, name: &str) -> Option<Vec<String>> {
        let v = *self.ids.get(name)?;
        Some(self.nodes[v].children.iter().map(|&c| self.nodes[c].name.clone()).collect())
    }

    pub fn coord_value(&self, c: CoordRef) -> i64 {
        self.coords[c.axis.idx()].value(c.id)
    }

    fn rect(&self, v: usize) -> Rect {
        let s = &self.nodes[v].span;
        let (x, y) = (&self.coords[0], &self.coords[1]);
        Rect { x0: x.value(s[0][0]), x1: x.value(s[0][1]), y0: y.value(s[1][0]), y1: y.value(s[1][1]) }
    }

    pub fn rect_of(&self, name: &str) -> Option<Rect> {
        self.ids.get(name).map(|&v| self.rect(v))
    }

    /// Records the moves of one axis insert and returns the new coordinate id.
    fn absorb(&mut self, axis: Axis, r: &InsertResult, delta: &mut DrawingDelta) -> Result<u64, DrawError> {
        count_ops(delta, r);
        let coords = &mut self.coords[axis.idx()];
        let id = coords.handles.len() as u64;
        coords.handles.push(r.handle);
        let at = |v: i64| match axis {
            Axis::X => Point::new(v, 0),
            Axis::Y => Point::new(0, v),
        };
        for e in coords.tracked.absorb(r, id)? {
            let start = delta.moved.len();
            for (c, old, new) in e.moved {
                let subject = match axis {
                    Axis::X => Subject::X(c),
                    Axis::Y => Subject::Y(c),
                };
                delta.moved.push(Moved { subject, from: at(old as i64), to: at(new as i64) });
            }
            if e.bulk {
                let m = &delta.moved[start..];
                let shift = m.first().map_or(Point::default(), |m| Point::new(m.to.x - m.from.x, m.to.y - m.from.y));
                delta.bulk_groups.push(BulkGroup { points: m.iter().map(|m| m.from).collect(), translation: shift });
            }
        }
        Ok(id)
    }

    fn insert_coord(&mut self, axis: Axis, anchor: Anchor, delta: &mut DrawingDelta) -> Result<u64, DrawError> {
        let r = self.coords[axis.idx()].tracked.labeler.insert(anchor)?;
        self.absorb(axis, &r, delta)
    }

    fn handle(&self, axis: Axis, id: u64) -> ElementHandle {
        self.coords[axis.idx()].handles[id as usize]
    }

    fn intern(&mut self, name: &str, span: [[u64; 2]; 2], axis: Axis, parent: Option<usize>) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node { name: name.into(), span, axis, parent, children: Vec::new() });
        self.ids.insert(name.into(), id);
        id
    }

    fn create_root(&mut self, name: &str, delta: &mut DrawingDelta) -> Result<(), DrawError> {
        let mut span = [[0; 2]; 2];
        for axis in [Axis::X, Axis::Y] {
            let lo = self.insert_coord(axis, Anchor::First, delta)?;
            let hi = self.insert_coord(axis, Anchor::After(self.handle(axis, lo)), delta)?;
            span[axis.idx()] = [lo, hi];
        }
        self.intern(name, span, Axis::X, None);
        let r = self.rect(0);
        delta.placed.push((name.into(), Point::new(r.x0, r.y0)));
        Ok(())
    }

    /// Adds edge `(u, v)`; the drawn endpoint is the parent.
    pub fn insert_edge(&mut self, u: &str, v: &str, pos_u: usize, pos_v: usize) -> Result<DrawingDelta, DrawError> {
        let mut delta = DrawingDelta::default();
        self.touched.clear();
        match (self.ids.get(u).copied(), self.ids.get(v).copied()) {
            (None, None) if self.nodes.is_empty() => {
                self.create_root(u, &mut delta)?;
                self.add_child(0, v, pos_u, &mut delta)?;
            }
            (None, None) => return Err(DrawError::Disconnected(u.into(), v.into())),
            (Some(_), Some(_)) => return Err(DrawError::Cycle(u.into(), v.into())),
            (Some(a), None) => self.add_child(a, v, pos_u, &mut delta)?,
            (None, Some(b)) => self.add_child(b, u, pos_v, &mut delta)?,
        }
        Ok(delta)
    }

    fn add_child(&mut self, a: usize, b: &str, pos: usize, delta: &mut DrawingDelta) -> Result<(), DrawError> {
        let max = self.nodes[a].children.len();
        if pos > max {
            return Err(DrawError::InvalidRotation { vertex: self.nodes[a].name.clone(), pos, max });
        }
        let z = self.nodes[a].axis;
        let zi = z.idx();
        let id = if max == 0 {
            let span = self.nodes[a].span;
            self.intern(b, span, z.flip(), Some(a))
        } else {
            // `near` is the side of b touching the boundary it is inserted at.
            let (kappa, near) = if pos > 0 {
                (self.nodes[self.nodes[a].children[pos - 1]].span[zi][1], 0)
            } else {
                (self.nodes[self.nodes[a].children[0]].span[zi][0], 1)
            };
            let h = self.handle(z, kappa);
            let anchor = if near == 0 { Anchor::After(h) } else { Anchor::Before(h) };
            let xi = self.insert_coord(z, anchor, delta)?;
            let mut span = self.nodes[a].span;
            span[zi][near] = kappa;
            span[zi][1 - near] = xi;
            let id = self.intern(b, span, z.flip(), Some(a));
            // Sides on the far side of the boundary move off it.
            for (w, n) in self.nodes.iter_mut().enumerate() {
                if w != id && n.span[zi][near] == kappa {
                    n.span[zi][near] = xi;
                    delta.rebound += 1;
                    self.touched.push(w);
                }
            }
            // Enclosing rectangles grow to keep b inside.
            let mut up = Some(a);
            while let Some(w) = up {
                if self.nodes[w].span[zi][1 - near] != kappa {
                    break;
                }
                self.nodes[w].span[zi][1 - near] = xi;
                delta.rebound += 1;
                self.touched.push(w);
                up = self.nodes[w].parent;
            }
            id
        };
        self.nodes[a].children.insert(pos, id);
        self.touched.push(id);
        let r = self.rect(id);
        delta.placed.push((b.into(), Point::new(r.x0, r.y0)));
        Ok(())
    }

    /// Nested rectangles, parents before children.
    pub fn drawing(&self) -> Drawing {
        Drawing {
            vertices: Vec::new(),
            edges: Vec::new(),
            rects: (0..self.nodes.len()).map(|v| (self.nodes[v].name.clone(), self.rect(v))).collect(),
        }
    }

    fn check_node(&self, v: usize, rects: &dyn Fn(usize) -> Rect, out: &mut Vec<String>) {
        let n = &self.nodes[v];
        let r = rects(v);
        if r.x0 >= r.x1 || r.y0 >= r.y1 {
            out.push(format!("{} is degenerate", n.name));
        }
        if let Some(p) = n.parent {
            if !rects(p).contains(&r) {
                out.push(format!("{} escapes its parent", n.name));
            }
        }
        let zi = n.axis.idx();
        for w in n.children.windows(2) {
            let (c, d) = (rects(w[0]), rects(w[1]));
            let (c_hi, d_lo) = if zi == 0 { (c.x1, d.x0) } else { (c.y1, d.y0) };
            if c_hi > d_lo {
                out.push(format!("children {} and {} of {} overlap or are out of order", self.nodes[w[0]].name, self.nodes[w[1]].name, n.name));
            }
            if c.interiors_overlap(&d) {
                out.push(format!("children {} and {} overlap", self.nodes[w[0]].name, self.nodes[w[1]].name));
            }
        }
        for (i, &c) in n.children.iter().enumerate() {
            if self.nodes[c].axis != n.axis.flip() {
                out.push(format!("{} does not alternate axis", self.nodes[c].name));
            }
            for &d in &n.children[i + 1..] {
                if rects(c).interiors_overlap(&rects(d)) {
                    out.push(format!("siblings {} and {} overlap", self.nodes[c].name, self.nodes[d].name));
                }
            }
        }
    }

    /// Containment, disjointness and order over every rectangle.
    pub fn audit(&self) -> Vec<String> {
        let cache: Vec<Rect> = self.resolved();
        let rects = |v: usize| cache[v];
        let mut out = Vec::new();
        for v in 0..self.nodes.len() {
            self.check_node(v, &rects, &mut out);
        }
        out
    }

    /// The same checks restricted to what the last insertion could change.
    /// Coordinate moves preserve every order relation, so only the new
    /// rectangle and re-pointed rectangles, with their parents and children,
    /// need a look.
    pub fn audit_recent(&self) -> Vec<String> {
        let rects = |v: usize| self.rect(v);
        let mut seen = Vec::new();
        for &v in &self.touched {
            seen.push(v);
            seen.extend(self.nodes[v].parent);
            seen.extend(self.nodes[v].children.iter().copied());
        }
        seen.sort_unstable();
        seen.dedup();
        let mut out = Vec::new();
        for v in seen {
            self.check_node(v, &rects, &mut out);
        }
        out
    }

    /// Resolves all rectangles in one pass over the coordinate orders.
    fn resolved(&self) -> Vec<Rect> {
        let vals: Vec<Vec<i64>> = self
            .coords
            .iter()
            .map(|c| {
                let mut v = vec![0; c.handles.len()];
                for (l, h) in c.tracked.map().iter() {
                    v[c.tracked.owner[&h] as usize] = l as i64;
                }
                v
            })
            .collect();
        self.nodes
            .iter()
            .map(|n| Rect {
                x0: vals[0][n.span[0][0] as usize],
                x1: vals[0][n.span[0][1] as usize],
                y0: vals[1][n.span[1][0] as usize],
                y1: vals[1][n.span[1][1] as usize],
            })
            .collect()
    }

    /// Names whose sides reference coordinate `c`.
    pub fn users_of(&self, c: CoordRef) -> Vec<String> {
        self.nodes.iter().filter(|n| n.span[c.axis.idx()].contains(&c.id)).map(|n| n.name.clone()).collect()
    }
}
