use serde::{Deserialize, Serialize};

use super::ops::permutation_closure;
use super::table::FiniteGroup;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// How a group is written down in an input file.
///
/// ```json
/// {"name": "Z3", "cayley": [[0,1,2],[1,2,0],[2,0,1]]}
/// {"name": "S3", "permutations": {"degree": 3, "generators": [[1,0,2],[1,2,0]]}}
/// ```
///
/// Permutations are image arrays on `0..degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSource {
    Cayley(Vec<Vec<usize>>),
    Permutations(PermutationSource),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationSource {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub source: GroupSource,
}

pub fn load_group(source: &GroupSource, name: Option<String>, limits: &Limits) -> Result<FiniteGroup> {
    match source {
        GroupSource::Cayley(rows) => {
            limits.check_order(rows.len())?;
            FiniteGroup::from_rows(rows, name)
        }
        GroupSource::Permutations(p) => permutation_closure(p.degree, &p.generators, name, limits),
    }
}

pub fn load_group_json(text: &str, limits: &Limits) -> Result<FiniteGroup> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(format!("group file: {e}")))?;
    load_group(&file.source, file.name, limits)
}
