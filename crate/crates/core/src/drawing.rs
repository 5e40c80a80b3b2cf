//! Types shared by the drawing engines.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::Point;
use crate::order::{ElementHandle, InsertResult, Label, LabelError, LabelMap, Labeler, RelabelOp};
use crate::strategy::Strategy;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DrawError {
    #[error("disconnected stream: edge ({0}, {1}) touches no drawn vertex")]
    Disconnected(String, String),
    #[error("invalid rotation index {pos} at {vertex} (at most {max})")]
    InvalidRotation { vertex: String, pos: usize, max: usize },
    #[error("edge ({0}, {1}) joins two drawn vertices of a tree")]
    Cycle(String, String),
    #[error("ambiguous insertion: edge ({0}, {1}) needs a side hint")]
    Ambiguous(String, String),
    #[error("not outerplanar: edge ({0}, {1})")]
    NotOuterplanar(String, String),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(String, String),
    #[error("unknown hint vertex {0}")]
    UnknownHint(String),
    #[error("strategy {0} has a label space too large for convex slots")]
    UnsupportedStrategy(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
    #[error(transparent)]
    Label(#[from] LabelError),
}

/// What a reported move refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    Vertex(String),
    /// A shared x-coordinate of the tree-map, by coordinate id.
    X(u64),
    /// A shared y-coordinate of the tree-map, by coordinate id.
    Y(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Moved {
    pub subject: Subject,
    pub from: Point,
    pub to: Point,
}

/// Points translated together by one bulk op.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BulkGroup {
    pub points: Vec<Point>,
    pub translation: Point,
}

/// Everything one stream event changed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DrawingDelta {
    pub placed: Vec<(String, Point)>,
    pub moved: Vec<Moved>,
    pub bulk_groups: Vec<BulkGroup>,
    pub singles: usize,
    pub bulks: usize,
    pub max_bulk: usize,
    /// Tree-map boundaries re-pointed to another shared coordinate.
    pub rebound: usize,
    /// Vertices shifted by a rebuild of the outerplanar slot set.
    pub remapped: usize,
}

impl DrawingDelta {
    pub fn moves(&self) -> usize {
        self.singles + self.bulks
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rect {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl Rect {
    pub fn contains(&self, o: &Rect) -> bool {
        self.x0 <= o.x0 && o.x1 <= self.x1 && self.y0 <= o.y0 && o.y1 <= self.y1
    }

    pub fn interiors_overlap(&self, o: &Rect) -> bool {
        self.x0 < o.x1 && o.x0 < self.x1 && self.y0 < o.y1 && o.y0 < self.y1
    }
}

/// A resolved drawing: named vertices, straight-line edges and rectangles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Drawing {
    pub vertices: Vec<(String, Point)>,
    pub edges: Vec<(usize, usize)>,
    pub rects: Vec<(String, Rect)>,
}

impl Drawing {
    pub fn segments(&self) -> Vec<(Point, Point)> {
        self.edges.iter().map(|&(a, b)| (self.vertices[a].1, self.vertices[b].1)).collect()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.vertices
            .iter()
            .map(|v| v.1)
            .chain(self.rects.iter().flat_map(|(_, r)| [Point::new(r.x0, r.y0), Point::new(r.x1, r.y1)]))
    }
}

/// A labeler plus a mirror of its labels, used to see which elements each
/// reported op moved.
pub(crate) struct Tracked<T> {
    pub labeler: Box<dyn Labeler>,
    mirror: LabelMap,
    pub owner: HashMap<ElementHandle, T>,
}

/// One applied op: moved elements with old and new labels.
pub(crate) struct OpEffect<T> {
    pub bulk: bool,
    pub moved: Vec<(T, Label, Label)>,
}

impl<T: Clone> Tracked<T> {
    pub fn new(strategy: Strategy, exponent: u32) -> Self {
        Tracked { labeler: strategy.build(exponent), mirror: LabelMap::new(), owner: HashMap::new() }
    }

    /// Replays `r` on the mirror, records `item` as the new element and
    /// returns the effect of every op in order.
    pub fn absorb(&mut self, r: &InsertResult, item: T) -> Result<Vec<OpEffect<T>>, DrawError> {
        let limit = self.labeler.bulk_limit();
        let mut out = Vec::with_capacity(r.relabels.len());
        for op in &r.relabels {
            let moved = self.mirror.apply(op, limit)?;
            out.push(OpEffect {
                bulk: matches!(op, RelabelOp::Bulk { .. }),
                moved: moved.into_iter().map(|(h, a, b)| (self.owner[&h].clone(), a, b)).collect(),
            });
        }
        self.mirror.place(r.handle, r.assigned)?;
        self.owner.insert(r.handle, item);
        if self.mirror.len() != self.labeler.len() {
            return Err(DrawError::InvariantBreach("labeler and mirror disagree".into()));
        }
        Ok(out)
    }

    pub fn label(&self, h: ElementHandle) -> Label {
        self.mirror.label_of(h).expect("tracked handle")
    }

    pub fn map(&self) -> &LabelMap {
        &self.mirror
    }
}

/// Adds op counts of `r` to `delta`.
pub(crate) fn count_ops(delta: &mut DrawingDelta, r: &InsertResult) {
    delta.singles += r.singles();
    delta.bulks += r.bulks();
    delta.max_bulk = delta.max_bulk.max(r.max_bulk);
}
