use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bulk_labelers::{BulkPackedLabeler, SqrtChunkLabeler, TwoLevelLabeler};
use crate::labelers::{PackedArrayLabeler, TagListLabeler};
use crate::order::{Labeler, OracleLabeler};

/// Labeling strategy selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Oracle,
    Tag,
    Packed,
    Sqrt,
    TwoLevel,
    BulkPacked,
}

impl Strategy {
    pub const ALL: [Strategy; 6] =
        [Strategy::Oracle, Strategy::Tag, Strategy::Packed, Strategy::Sqrt, Strategy::TwoLevel, Strategy::BulkPacked];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Oracle => "oracle",
            Strategy::Tag => "tag",
            Strategy::Packed => "packed",
            Strategy::Sqrt => "sqrt",
            Strategy::TwoLevel => "twolevel",
            Strategy::BulkPacked => "bulkpacked",
        }
    }

    pub fn uses_bulk(self) -> bool {
        matches!(self, Strategy::Sqrt | Strategy::TwoLevel | Strategy::BulkPacked)
    }

    /// A fresh labeler. `tag_exponent` only affects [`Strategy::Tag`].
    pub fn build(self, tag_exponent: u32) -> Box<dyn Labeler> {
        match self {
            Strategy::Oracle => Box::new(OracleLabeler::new()),
            Strategy::Tag => Box::new(TagListLabeler::new(tag_exponent)),
            Strategy::Packed => Box::new(PackedArrayLabeler::default()),
            Strategy::Sqrt => Box::new(SqrtChunkLabeler::new()),
            Strategy::TwoLevel => Box::new(TwoLevelLabeler::new()),
            Strategy::BulkPacked => Box::new(BulkPackedLabeler::default()),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Strategy::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}
