//! Fixpoint engines: subalgebras of `B^(A^k)`, slices of generated
//! clonoids, membership (direct and via Baker–Pixley minors), clone slices
//! and clone containment.

mod affine;
mod engine;
mod projection;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::function::{FiniteFunction, MinorMap, Signature};
use crate::set::FunctionSet;

use engine::{close_tables, Outcome};

/// Cap on the number of elements any closure may hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_set_size: usize,
}

impl Budget {
    pub const DEFAULT_MAX_SET_SIZE: usize = 1 << 20;

    pub fn new(max_set_size: usize) -> Result<Self> {
        if max_set_size == 0 {
            return Err(Error::input("budget must be positive"));
        }
        Ok(Budget { max_set_size })
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_set_size: Self::DEFAULT_MAX_SET_SIZE,
        }
    }
}

/// Generators `F` of a clonoid `<F>_B`; arities may differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorFamily {
    source_size: usize,
    target_size: usize,
    generators: Vec<FiniteFunction>,
}

impl GeneratorFamily {
    pub fn new(
        source_size: usize,
        target_size: usize,
        generators: Vec<FiniteFunction>,
    ) -> Result<Self> {
        Signature::new(source_size, target_size, 1)?;
        if let Some(g) = generators
            .iter()
            .find(|g| g.source_size() != source_size || g.target_size() != target_size)
        {
            return Err(Error::input(format!(
                "generator {} in a family over {source_size} -> {target_size}",
                g.signature()
            )));
        }
        Ok(GeneratorFamily {
            source_size,
            target_size,
            generators,
        })
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn generators(&self) -> &[FiniteFunction] {
        &self.generators
    }
}

/// Least superset of `gens` closed under the pointwise action of every basic
/// operation of `algebra`.
pub fn subalgebra_close(
    gens: &FunctionSet,
    algebra: &Algebra,
    budget: Budget,
) -> Result<FunctionSet> {
    check_target(gens.signature().target_size, algebra)?;
    if gens.is_empty() {
        return Ok(FunctionSet::empty(gens.signature()));
    }
    let probe = budget.max_set_size.min(MAJORITY_PROBE_LIMIT);
    if projection::has_majority_term(algebra, probe) {
        let sig = gens.signature();
        let tables: Vec<Box<[u8]>> = gens.iter().map(|f| f.table().into()).collect();
        let closed = projection::close(
            algebra,
            sig.table_len(),
            &tables,
            budget.max_set_size,
            &closure_label(sig),
        )?;
        return Ok(FunctionSet::from_sorted_tables(sig, closed));
    }
    if let Some(forms) = affine::forms(algebra) {
        let sig = gens.signature();
        let tables: Vec<Box<[u8]>> = gens.iter().map(|f| f.table().into()).collect();
        let closed = affine::close(
            &forms,
            sig.table_len(),
            &tables,
            budget.max_set_size,
            &closure_label(sig),
        )?;
        return Ok(FunctionSet::from_sorted_tables(sig, closed));
    }
    subalgebra_close_worklist(gens, algebra, budget)
}

// Enough for every two-element algebra (at most 256 ternary term operations);
// larger carriers fall back to the worklist when the probe gives up.
const MAJORITY_PROBE_LIMIT: usize = 1 << 10;

/// [`subalgebra_close`] computed by the plain worklist fixpoint, never using
/// the majority or affine shortcuts.
pub fn subalgebra_close_worklist(
    gens: &FunctionSet,
    algebra: &Algebra,
    budget: Budget,
) -> Result<FunctionSet> {
    check_target(gens.signature().target_size, algebra)?;
    let sig = gens.signature();
    let tables = gens.iter().map(|f| f.table().into()).collect();
    match close_tables(
        algebra,
        sig.table_len(),
        tables,
        budget.max_set_size,
        &closure_label(sig),
        &mut |_| false,
    )? {
        Outcome::Closed(t) => Ok(FunctionSet::from_sorted_tables(sig, t)),
        Outcome::Found(_) => unreachable!("no stop predicate"),
    }
}

fn closure_label(sig: Signature) -> String {
    format!("closure of {sig}")
}

fn check_target(target: usize, algebra: &Algebra) -> Result<()> {
    if target != algebra.carrier_size() {
        return Err(Error::input(format!(
            "functions map into {target} elements but the algebra has {}",
            algebra.carrier_size()
        )));
    }
    Ok(())
}

/// All `arity`-ary minors of the generators.
pub fn generator_minors(
    family: &GeneratorFamily,
    arity: usize,
    budget: Budget,
) -> Result<FunctionSet> {
    let sig = Signature::new(family.source_size, family.target_size, arity)?;
    let mut seen = std::collections::BTreeSet::new();
    for f in &family.generators {
        for map in MinorMap::all(f.arity(), arity) {
            seen.insert(f.minor(&map)?);
            if seen.len() > budget.max_set_size {
                return Err(Error::Budget {
                    what: format!("minors of arity {arity}"),
                    size: seen.len() as u128,
                    limit: budget.max_set_size,
                });
            }
        }
    }
    FunctionSet::new(sig, seen)
}

/// The `arity`-ary part of `<F>_B`: the subalgebra generated by all
/// `arity`-ary minors of the generators.
pub fn clonoid_slice(
    family: &GeneratorFamily,
    algebra: &Algebra,
    arity: usize,
    budget: Budget,
) -> Result<FunctionSet> {
    check_target(family.target_size, algebra)?;
    let minors = generator_minors(family, arity, budget)?;
    subalgebra_close(&minors, algebra, budget)
}

/// Whether `f` lies in `<F>_B`.
pub fn member(
    f: &FiniteFunction,
    family: &GeneratorFamily,
    algebra: &Algebra,
    budget: Budget,
) -> Result<bool> {
    check_family(f, family)?;
    Ok(clonoid_slice(family, algebra, f.arity(), budget)?.contains(f))
}

fn check_family(f: &FiniteFunction, family: &GeneratorFamily) -> Result<()> {
    if f.source_size() != family.source_size || f.target_size() != family.target_size {
        return Err(Error::input(format!(
            "function {} does not match family over {} -> {}",
            f.signature(),
            family.source_size,
            family.target_size
        )));
    }
    Ok(())
}

/// Membership test through the `|A|^(n-1)`-ary slice, valid when the target
/// algebra has an `nu_arity`-ary near-unanimity term: `f` belongs iff every
/// minor of `f` of arity `r = |A|^(n-1)` lies in `slice_r`.
///
/// The minors inspected are exactly those `f^σ` arising from choices of
/// `n - 1` rows `X` over `A^k`: with `Z` the matrix whose columns enumerate
/// `A^(n-1)` canonically, column `i` of `X` is column `σ(i)` of `Z` and
/// `f(X) = f^σ(Z)` row by row (see [`bp_minor_map`]). Every `σ: [k] -> [r]`
/// arises this way, so all of them are checked.
pub fn bp_member(f: &FiniteFunction, slice_r: &FunctionSet, nu_arity: usize) -> Result<bool> {
    if nu_arity < 3 {
        return Err(Error::input(format!(
            "near-unanimity arity {nu_arity} is below 3"
        )));
    }
    let r = crate::function::table_len(f.source_size(), nu_arity - 1)?;
    let sig = slice_r.signature();
    if sig.arity != r || sig.source_size != f.source_size() || sig.target_size != f.target_size() {
        return Err(Error::input(format!(
            "slice has signature {sig}, need {}^{r} -> {}",
            f.source_size(),
            f.target_size()
        )));
    }
    for map in MinorMap::all(f.arity(), r) {
        if !slice_r.contains(&f.minor(&map)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The map `σ` with `f(X) = f^σ(Z)`, for `rows` the `n - 1` rows of `X`
/// (each a `k`-tuple over `A`).
pub fn bp_minor_map(source_size: usize, rows: &[Vec<usize>]) -> Result<MinorMap> {
    let k = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != k) {
        return Err(Error::input("rows of X must have equal length"));
    }
    let r = crate::function::table_len(source_size, rows.len())?;
    let images = (0..k)
        .map(|i| {
            let column: Vec<usize> = rows.iter().map(|row| row[i]).collect();
            crate::function::tuple_index(source_size, &column) + 1
        })
        .collect();
    MinorMap::new(r, images)
}

/// All `n`-ary term operations of `algebra`.
pub fn clone_slice(algebra: &Algebra, n: usize, budget: Budget) -> Result<FunctionSet> {
    let gens = projections(algebra.carrier_size(), n)?;
    subalgebra_close(&gens, algebra, budget)
}

fn projections(size: usize, n: usize) -> Result<FunctionSet> {
    let sig = Signature::new(size, size, n)?;
    FunctionSet::new(
        sig,
        (0..n)
            .map(|i| FiniteFunction::projection(size, n, i))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// First `n`-ary term operation accepted by `accept`, generating the clone
/// slice only as far as needed. `Ok(None)` means the whole slice was built.
pub fn find_term(
    algebra: &Algebra,
    n: usize,
    budget: Budget,
    accept: &mut dyn FnMut(&FiniteFunction) -> bool,
) -> Result<Option<FiniteFunction>> {
    let gens = projections(algebra.carrier_size(), n)?;
    let sig = gens.signature();
    let tables = gens.iter().map(|f| f.table().into()).collect();
    let mut stop = |t: &[u8]| accept(&FiniteFunction::from_raw(sig, t.into()));
    Ok(
        match close_tables(
            algebra,
            sig.table_len(),
            tables,
            budget.max_set_size,
            &closure_label(sig),
            &mut stop,
        )? {
            Outcome::Found(t) => Some(FiniteFunction::from_raw(sig, t)),
            Outcome::Closed(_) => None,
        },
    )
}

/// Whether every basic operation of `b` is a term operation of `m`, i.e.
/// the clone of `b` is contained in the clone of `m`.
pub fn clone_contains(m: &Algebra, b: &Algebra, budget: Budget) -> Result<bool> {
    if m.carrier_size() != b.carrier_size() {
        return Err(Error::input(format!(
            "carriers differ: {} vs {}",
            m.carrier_size(),
            b.carrier_size()
        )));
    }
    let mut slices: BTreeMap<usize, FunctionSet> = BTreeMap::new();
    for op in b.ops() {
        let arity = op.arity();
        if let Entry::Vacant(e) = slices.entry(arity) {
            e.insert(clone_slice(m, arity, budget)?);
        }
        if !slices[&arity].contains(&op.function) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A generated clonoid `<F>_B` with its slices computed on demand and kept.
#[derive(Debug, Clone)]
pub struct GeneratedClonoid {
    family: GeneratorFamily,
    algebra: Algebra,
    budget: Budget,
    slices: BTreeMap<usize, FunctionSet>,
}

impl GeneratedClonoid {
    pub fn new(family: GeneratorFamily, algebra: Algebra, budget: Budget) -> Result<Self> {
        check_target(family.target_size, &algebra)?;
        Ok(GeneratedClonoid {
            family,
            algebra,
            budget,
            slices: BTreeMap::new(),
        })
    }

    pub fn family(&self) -> &GeneratorFamily {
        &self.family
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn slice(&mut self, arity: usize) -> Result<&FunctionSet> {
        if !self.slices.contains_key(&arity) {
            let s = clonoid_slice(&self.family, &self.algebra, arity, self.budget)?;
            self.slices.insert(arity, s);
        }
        Ok(&self.slices[&arity])
    }

    pub fn contains(&mut self, f: &FiniteFunction) -> Result<bool> {
        check_family(f, &self.family)?;
        Ok(self.slice(f.arity())?.contains(f))
    }
}
