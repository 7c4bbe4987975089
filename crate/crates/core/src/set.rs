use crate::error::{Error, Result};
use crate::function::{FiniteFunction, Signature};

/// Deduplicated functions of one signature, kept in canonical
/// (lexicographic by table) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionSet {
    sig: Signature,
    members: Vec<FiniteFunction>,
}

impl FunctionSet {
    pub fn empty(sig: Signature) -> Self {
        FunctionSet {
            sig,
            members: Vec::new(),
        }
    }

    pub fn new(sig: Signature, members: impl IntoIterator<Item = FiniteFunction>) -> Result<Self> {
        let mut members: Vec<FiniteFunction> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|f| f.signature() != sig) {
            return Err(Error::input(format!(
                "member with signature {} in a set of {sig}",
                bad.signature()
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(FunctionSet { sig, members })
    }

    /// Builds from tables already sorted and deduplicated.
    pub(crate) fn from_sorted_tables(sig: Signature, tables: Vec<Box<[u8]>>) -> Self {
        debug_assert!(tables.windows(2).all(|w| w[0] < w[1]));
        FunctionSet {
            sig,
            members: tables
                .into_iter()
                .map(|t| FiniteFunction::from_raw(sig, t))
                .collect(),
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn arity(&self) -> usize {
        self.sig.arity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FiniteFunction> {
        self.members.iter()
    }

    pub fn members(&self) -> &[FiniteFunction] {
        &self.members
    }

    pub fn first(&self) -> Option<&FiniteFunction> {
        self.members.first()
    }

    pub fn contains(&self, f: &FiniteFunction) -> bool {
        f.signature() == self.sig && self.contains_table(f.table())
    }

    pub fn contains_table(&self, table: &[u8]) -> bool {
        self.members
            .binary_search_by(|m| m.table().cmp(table))
            .is_ok()
    }

    pub fn is_subset(&self, other: &FunctionSet) -> bool {
        self.sig == other.sig && self.members.iter().all(|f| other.contains(f))
    }

    /// Members satisfying `keep`, still canonical.
    pub fn filter(&self, mut keep: impl FnMut(&FiniteFunction) -> bool) -> FunctionSet {
        FunctionSet {
            sig: self.sig,
            members: self.members.iter().filter(|f| keep(f)).cloned().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a FunctionSet {
    type Item = &'a FiniteFunction;
    type IntoIter = std::slice::Iter<'a, FiniteFunction>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
