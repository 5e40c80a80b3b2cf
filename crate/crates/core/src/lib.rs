//! Order-maintenance labelers and incremental drawing engines built on them.

pub mod adversary;
pub mod bench;
pub mod bulk_labelers;
pub mod convex;
pub mod drawing;
pub mod geometry;
pub mod labelers;
pub mod order;
pub mod outerplanar_draw;
pub mod run;
pub mod strategy;
pub mod stream;
pub mod svg;
pub mod tree_draw;
pub mod treemap_draw;
pub mod workloads;

pub use order::{Anchor, ElementHandle, InsertResult, Label, LabelError, LabelMap, Labeler, RelabelOp};
pub use strategy::Strategy;
