use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a variable in a [`VariableTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarRole {
    Indicator,
    Auxiliary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub role: VarRole,
}

/// Names and roles of the variables of one polynomial system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariableTable {
    entries: Vec<Variable>,
    by_name: HashMap<String, VarId>,
}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_variables(vars: impl IntoIterator<Item = Variable>) -> Result<Self> {
        let mut table = Self::new();
        for v in vars {
            table.push(v.name, v.role)?;
        }
        Ok(table)
    }

    pub fn push(&mut self, name: impl Into<String>, role: VarRole) -> Result<VarId> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(Error::Structural(format!(
                "duplicate variable name {name:?}"
            )));
        }
        let id = VarId(self.entries.len() as u32);
        self.by_name.insert(name.clone(), id);
        self.entries.push(Variable { name, role });
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, id: VarId) -> bool {
        id.index() < self.entries.len()
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.entries[id.index()].name
    }

    pub fn role(&self, id: VarId) -> VarRole {
        self.entries[id.index()].role
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.entries
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.entries.len() as u32).map(VarId)
    }

    pub fn indicators(&self) -> Vec<VarId> {
        self.ids()
            .filter(|&v| self.role(v) == VarRole::Indicator)
            .collect()
    }

    /// Fails when `vars` mentions an id outside this table.
    pub fn check<I: IntoIterator<Item = VarId>>(&self, vars: I) -> Result<()> {
        for v in vars {
            if !self.contains(v) {
                return Err(Error::Structural(format!(
                    "variable {v} is not in a table of {} variables",
                    self.len()
                )));
            }
        }
        Ok(())
    }
}
