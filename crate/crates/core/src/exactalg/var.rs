use std::collections::HashMap;
use std::fmt;

/// Opaque handle of a variable inside a [`VarTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Display name of a variable.
///
/// The derived ordering is the canonical variable order used for printing:
/// first by family (`Y`, then `X`, then plain names), then by indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarName {
    /// `Y[i,j]`: component `i` (1-based), index `j` (0 is the zero-count variable).
    Y { component: u32, index: u32 },
    /// `X{label}`: one variable per poset element. `key` orders the family.
    X { key: Vec<u32>, label: String },
    /// Anything else, e.g. `q`, `Y` or `x_3`.
    Plain { stem: String, sub: Vec<u32> },
}

impl VarName {
    pub fn y(component: u32, index: u32) -> Self {
        VarName::Y { component, index }
    }

    pub fn plain(stem: &str) -> Self {
        VarName::Plain { stem: stem.to_string(), sub: Vec::new() }
    }

    pub fn indexed(stem: &str, sub: &[u32]) -> Self {
        VarName::Plain { stem: stem.to_string(), sub: sub.to_vec() }
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarName::Y { component, index } => write!(f, "Y[{component},{index}]"),
            VarName::X { label, .. } => write!(f, "X{{{label}}}"),
            VarName::Plain { stem, sub } => {
                f.write_str(stem)?;
                for s in sub {
                    write!(f, "_{s}")?;
                }
                Ok(())
            }
        }
    }
}

/// Bijection between [`VarId`]s and display names. Ids are dense `0..len`.
#[derive(Debug, Clone, Default)]
pub struct VarTable {
    names: Vec<VarName>,
    ids: HashMap<VarName, VarId>,
    labels: HashMap<String, VarId>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, creating it if needed.
    pub fn intern(&mut self, name: VarName) -> VarId {
        if let Some(&id) = self.ids.get(&name) {
            return id;
        }
        let id = VarId(self.names.len() as u32);
        self.labels.insert(name.to_string(), id);
        self.ids.insert(name.clone(), id);
        self.names.push(name);
        id
    }

    pub fn get(&self, name: &VarName) -> Option<VarId> {
        self.ids.get(name).copied()
    }

    /// Looks a variable up by its rendered name, e.g. `"X{0^2 1}"`.
    pub fn lookup(&self, rendered: &str) -> Option<VarId> {
        self.labels.get(rendered).copied()
    }

    pub fn name(&self, id: VarId) -> &VarName {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.names.len() as u32).map(VarId)
    }

    /// Position of every variable in the canonical variable order.
    pub fn canonical_ranks(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.names.len()).collect();
        order.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        let mut rank = vec![0; order.len()];
        for (pos, id) in order.into_iter().enumerate() {
            rank[id] = pos;
        }
        rank
    }
}
