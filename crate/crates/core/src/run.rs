//! Replays a stream through the matching engine and collects a report.

use serde::Serialize;
use thiserror::Error;

use crate::drawing::{DrawError, Drawing, DrawingDelta};
use crate::geometry::area_of;
use crate::outerplanar_draw::OuterplanarDrawer;
use crate::stream::{Mode, Stream, StreamEvent};
use crate::strategy::Strategy;
use crate::tree_draw::TreeDrawer;
use crate::treemap_draw::{Axis, TreeMapDrawer};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunParams {
    pub strategy: Strategy,
    /// Exponent of the tag labeler's label space.
    pub exponent: u32,
    /// Audit after every event, not only at the end.
    pub audit_each: bool,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams { strategy: Strategy::Packed, exponent: 2, audit_each: false }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("event {event}: {source}")]
pub struct RunError {
    pub event: usize,
    #[source]
    pub source: DrawError,
}

pub enum Engine {
    Tree(TreeDrawer),
    TreeMap(TreeMapDrawer),
    Outerplanar(OuterplanarDrawer),
}

impl Engine {
    pub fn new(mode: Mode, strategy: Strategy, exponent: u32) -> Result<Self, DrawError> {
        Ok(match mode {
            Mode::Tree => Engine::Tree(TreeDrawer::new(strategy, exponent)),
            Mode::TreeMap => Engine::TreeMap(TreeMapDrawer::new(strategy, exponent)),
            Mode::Outerplanar => Engine::Outerplanar(OuterplanarDrawer::new(strategy, exponent)?),
        })
    }

    pub fn apply(&mut self, e: &StreamEvent) -> Result<DrawingDelta, DrawError> {
        match self {
            Engine::Tree(t) => t.insert_edge(&e.u, &e.v, e.pos_u, e.pos_v),
            Engine::TreeMap(t) => t.insert_edge(&e.u, &e.v, e.pos_u, e.pos_v),
            Engine::Outerplanar(o) => o.insert_edge(&e.u, &e.v, e.pos_u, e.pos_v, e.hint.as_ref()),
        }
    }

    /// Checks limited to what `delta` could have broken.
    pub fn audit_event(&self, delta: &DrawingDelta) -> Vec<String> {
        match self {
            Engine::Tree(t) => t.audit_delta(delta).into_iter().map(|v| format!("{v:?}")).collect(),
            Engine::TreeMap(t) => t.audit_recent(),
            Engine::Outerplanar(o) => o.audit_fast(),
        }
    }

    pub fn audit_full(&self) -> Vec<String> {
        match self {
            Engine::Tree(t) => t.audit(),
            Engine::TreeMap(t) => t.audit(),
            Engine::Outerplanar(o) => {
                let mut v = o.audit();
                v.extend(o.move_audit());
                v
            }
        }
    }

    pub fn drawing(&self) -> Drawing {
        match self {
            Engine::Tree(t) => t.drawing(),
            Engine::TreeMap(t) => t.drawing(),
            Engine::Outerplanar(o) => o.drawing(),
        }
    }

    pub fn max_label(&self) -> u64 {
        match self {
            Engine::Tree(t) => t.max_label(),
            Engine::TreeMap(t) => t.max_label(Axis::X).max(t.max_label(Axis::Y)),
            Engine::Outerplanar(o) => o.max_label(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Engine::Tree(t) => t.len(),
            Engine::TreeMap(t) => t.len(),
            Engine::Outerplanar(o) => o.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EventRecord {
    pub event: usize,
    pub u: String,
    pub v: String,
    pub placed: usize,
    pub moved: usize,
    pub singles: usize,
    pub bulks: usize,
    pub max_bulk: usize,
    pub bulk_groups: usize,
    pub rebound: usize,
    pub remapped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub singles: usize,
    pub bulks: usize,
    pub max_bulk: usize,
    pub max_label: u64,
    pub area: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub passed: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub mode: Mode,
    pub strategy: Strategy,
    pub n: usize,
    pub per_event: Vec<EventRecord>,
    pub totals: Totals,
    pub audit: AuditSummary,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Replays `stream`; the final state is always audited.
pub fn run(stream: &Stream, params: RunParams) -> Result<(RunReport, Drawing), RunError> {
    let mut engine =
        Engine::new(stream.mode, params.strategy, params.exponent).map_err(|source| RunError { event: 0, source })?;
    let mut per_event = Vec::with_capacity(stream.events.len());
    let mut totals = Totals::default();
    let mut violations = Vec::new();
    for (i, e) in stream.events.iter().enumerate() {
        let d = engine.apply(e).map_err(|source| RunError { event: i, source })?;
        if params.audit_each {
            violations.extend(engine.audit_event(&d).into_iter().map(|v| format!("event {i}: {v}")));
        }
        totals.singles += d.singles;
        totals.bulks += d.bulks;
        totals.max_bulk = totals.max_bulk.max(d.max_bulk);
        totals.max_label = totals.max_label.max(engine.max_label());
        per_event.push(EventRecord {
            event: i,
            u: e.u.clone(),
            v: e.v.clone(),
            placed: d.placed.len(),
            moved: d.moved.len(),
            singles: d.singles,
            bulks: d.bulks,
            max_bulk: d.max_bulk,
            bulk_groups: d.bulk_groups.len(),
            rebound: d.rebound,
            remapped: d.remapped,
        });
    }
    violations.extend(engine.audit_full().into_iter().map(|v| format!("final: {v}")));
    let drawing = engine.drawing();
    totals.area = area_of(drawing.points());
    let report = RunReport {
        schema: SCHEMA,
        mode: stream.mode,
        strategy: params.strategy,
        n: engine.len(),
        per_event,
        totals,
        audit: AuditSummary { passed: violations.is_empty(), violations },
    };
    Ok((report, drawing))
}
