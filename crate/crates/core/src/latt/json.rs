use serde::{Deserialize, Serialize};

/// On-disk description of a finite category or lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default)]
    pub compose: Vec<ComposeSpec>,
    #[serde(default)]
    pub pointed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_init: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_fin: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// `then ∘ first = equals`; `equals` may be `"zero"` in a pointed category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeSpec {
    pub first: String,
    pub then: String,
    pub equals: String,
}

pub const ZERO: &str = "zero";
