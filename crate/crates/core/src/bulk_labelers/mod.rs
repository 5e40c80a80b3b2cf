//! Labelers whose relabels are bulk shifts of contiguous label intervals.

mod sqrt;
mod twolevel;

pub use sqrt::SqrtChunkLabeler;
pub use twolevel::TwoLevelLabeler;

use crate::labelers::pma::{Pma, Spread};
use crate::order::{Anchor, InsertResult, Label, LabelError, LabelMap, Labeler};

/// The packed-array labeler with left-packed leaves, so every rebalance is a
/// handful of bulk shifts no longer than one leaf.
#[derive(Clone, Debug)]
pub struct BulkPackedLabeler {
    pma: Pma,
}

impl Default for BulkPackedLabeler {
    fn default() -> Self {
        Self { pma: Pma::new(4, Spread::Packed) }
    }
}

impl BulkPackedLabeler {
    pub fn audit_density(&self) -> Result<(), String> {
        self.pma.audit_density()
    }
}

impl Labeler for BulkPackedLabeler {
    fn name(&self) -> &'static str {
        "bulkpacked"
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
        self.pma.bulk_limit()
    }
}
