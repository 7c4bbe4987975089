//! Relation pairs `(P, Q)` and the polymorphism judgment.

use std::collections::BTreeSet;

use crate::closure::Budget;
use crate::error::{Error, Result};
use crate::function::{FiniteFunction, Signature, Tuples};
use crate::set::FunctionSet;

/// A pair of `m`-ary relations, `P` over the source and `Q` over the target.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationPair {
    arity: usize,
    source_size: usize,
    target_size: usize,
    p: Vec<Vec<u8>>,
    q: Vec<Vec<u8>>,
}

impl RelationPair {
    pub fn new<P, Q>(
        arity: usize,
        source_size: usize,
        target_size: usize,
        p: P,
        q: Q,
    ) -> Result<Self>
    where
        P: IntoIterator<Item = Vec<usize>>,
        Q: IntoIterator<Item = Vec<usize>>,
    {
        if arity == 0 {
            return Err(Error::input("relations must have arity at least 1"));
        }
        // Validates both carriers.
        Signature::new(source_size, target_size, 1)?;
        let p = collect_relation("P", arity, source_size, p)?;
        let q = collect_relation("Q", arity, target_size, q)?;
        Ok(RelationPair {
            arity,
            source_size,
            target_size,
            p,
            q,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    /// `P` in lexicographic order.
    pub fn p(&self) -> &[Vec<u8>] {
        &self.p
    }

    /// `Q` in lexicographic order.
    pub fn q(&self) -> &[Vec<u8>] {
        &self.q
    }

    pub fn q_contains(&self, tuple: &[u8]) -> bool {
        self.q.binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }

    fn check_sizes(&self, f: &FiniteFunction) -> Result<()> {
        if f.source_size() != self.source_size || f.target_size() != self.target_size {
            return Err(Error::input(format!(
                "function {} does not match relation pair over {} -> {}",
                f.signature(),
                self.source_size,
                self.target_size
            )));
        }
        Ok(())
    }
}

fn collect_relation(
    name: &str,
    arity: usize,
    size: usize,
    tuples: impl IntoIterator<Item = Vec<usize>>,
) -> Result<Vec<Vec<u8>>> {
    let mut out = BTreeSet::new();
    for t in tuples {
        if t.len() != arity {
            return Err(Error::input(format!(
                "{name} tuple of length {} in a relation of arity {arity}",
                t.len()
            )));
        }
        if let Some(&bad) = t.iter().find(|&&x| x >= size) {
            return Err(Error::input(format!(
                "{name} entry {bad} outside carrier of size {size}"
            )));
        }
        out.insert(t.into_iter().map(|x| x as u8).collect::<Vec<u8>>());
    }
    Ok(out.into_iter().collect())
}

/// Whether `f` maps every `k`-tuple of `P`-elements, taken column-wise,
/// into `Q`. Brute force over `|P|^k` choices.
pub fn is_polymorphism(f: &FiniteFunction, pair: &RelationPair) -> Result<bool> {
    pair.check_sizes(f)?;
    Ok(preserves(f, pair))
}

pub(crate) fn preserves(f: &FiniteFunction, pair: &RelationPair) -> bool {
    if pair.p.is_empty() {
        return true;
    }
    let k = f.arity();
    let s = f.source_size();
    let m = pair.arity;
    let table = f.table();
    let mut image = vec![0u8; m];
    let mut choice = Tuples::new(pair.p.len(), k);
    while let Some(c) = choice.current() {
        for (row, out) in image.iter_mut().enumerate() {
            let idx = c
                .iter()
                .fold(0usize, |acc, &pi| acc * s + pair.p[pi][row] as usize);
            *out = table[idx];
        }
        if !pair.q_contains(&image) {
            return false;
        }
        choice.advance();
    }
    true
}

/// Every function of signature `sig` preserving all `pairs`, by filtering the
/// full enumeration. The enumeration size must fit the budget.
pub fn pol_slice(pairs: &[RelationPair], sig: Signature, budget: Budget) -> Result<FunctionSet> {
    for pair in pairs {
        if pair.source_size != sig.source_size || pair.target_size != sig.target_size {
            return Err(Error::input(format!(
                "relation pair over {} -> {} does not match {sig}",
                pair.source_size, pair.target_size
            )));
        }
    }
    let count = sig.function_count();
    if count > budget.max_set_size as u128 {
        return Err(Error::Budget {
            what: format!("enumeration of {sig}"),
            size: count,
            limit: budget.max_set_size,
        });
    }
    let mut tables = Vec::new();
    let mut candidates = Tuples::new(sig.target_size, sig.table_len());
    while let Some(t) = candidates.current() {
        let table: Box<[u8]> = t.iter().map(|&v| v as u8).collect();
        let f = FiniteFunction::from_raw(sig, table);
        if pairs.iter().all(|r| preserves(&f, r)) {
            tables.push(f.into_table());
        }
        candidates.advance();
    }
    Ok(FunctionSet::from_sorted_tables(sig, tables))
}
