//! Classic labelers that relabel one element at a time.

pub(crate) mod pma;
mod tag;

pub use tag::TagListLabeler;

use crate::order::{Anchor, InsertResult, Label, LabelError, LabelMap, Labeler};
use pma::{Pma, Spread};

/// Packed-array file maintenance: `N = O(n)` labels, `O(log^2 n)` amortized
/// single relabels per insertion.
#[derive(Clone, Debug)]
pub struct PackedArrayLabeler {
    pma: Pma,
}

impl Default for PackedArrayLabeler {
    fn default() -> Self {
        Self::new(4)
    }
}

impl PackedArrayLabeler {
    /// `slack` is the ratio of label space to element count right after a rebuild.
    pub fn new(slack: u64) -> Self {
        Self { pma: Pma::new(slack, Spread::Even) }
    }

    pub fn audit_density(&self) -> Result<(), String> {
        self.pma.audit_density()
    }

    pub fn leaf_size(&self) -> usize {
        self.pma.leaf_size()
    }
}

impl Labeler for PackedArrayLabeler {
    fn name(&self) -> &'static str {
        "packed"
    }

    fn insert(&mut self, anchor: Anchor) -> Result<InsertResult, LabelError> {
        self.pma.insert(anchor)
    }

    fn labels(&self) -> &LabelMap {
        &self.pma.core.map
    }

    fn label_bound(&self) -> Label {
        self.pma.capacity() - 1
    }

    fn bulk_limit(&self) -> Option<usize> {
        None
    }
}
