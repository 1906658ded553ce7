use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupError};

/// On-disk form of a group: `{"order": n, "table": [[...]], "names": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupFile {
    pub fn into_group(self) -> Result<FiniteGroup, GroupError> {
        if self.table.len() != self.order {
            return Err(GroupError::MalformedTable(format!(
                "declared order {} but table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        FiniteGroup::from_cayley_table(&self.table, self.names)
    }
}

impl From<&FiniteGroup> for GroupFile {
    fn from(g: &FiniteGroup) -> Self {
        Self {
            order: g.order(),
            table: g.table(),
            names: Some(g.names().to_vec()),
        }
    }
}

impl FiniteGroup {
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let file: GroupFile =
            serde_json::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))?;
        file.into_group()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupFile::from(self)).expect("group files serialize")
    }
}
