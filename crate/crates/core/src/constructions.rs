//! Witness families and algebra combinators: `e_k`, `f_k`, `(P_n, Q_n)`,
//! `F_U` / `R_U`, product algebras, Boolean duals, and the standard Boolean
//! algebras used throughout.

use std::collections::BTreeSet;

use crate::algebra::{Algebra, Operation};
use crate::closure::GeneratorFamily;
use crate::error::{Error, Result};
use crate::function::{FiniteFunction, Signature};
use crate::relation::RelationPair;

fn need_two(role: &str, size: usize) -> Result<()> {
    if size < 2 {
        return Err(Error::input(format!(
            "{role} needs at least the two designated elements 0 and 1, got size {size}"
        )));
    }
    Ok(())
}

/// `e_k`: indicator of the all-ones tuple in `A^k`, into `{0,1}`.
pub fn build_e(source_size: usize, k: usize) -> Result<FiniteFunction> {
    need_two("source", source_size)?;
    let sig = Signature::new(source_size, 2, k)?;
    FiniteFunction::from_fn(sig, |x| x.iter().all(|&v| v == 1) as usize)
}

/// `f_k`: indicator of the unit vectors `P_k` in `A^k`, into `{0,1}`.
pub fn build_f(source_size: usize, k: usize) -> Result<FiniteFunction> {
    need_two("source", source_size)?;
    let sig = Signature::new(source_size, 2, k)?;
    FiniteFunction::from_fn(sig, |x| is_unit_vector(x) as usize)
}

fn is_unit_vector(x: &[usize]) -> bool {
    x.iter().filter(|&&v| v == 1).count() == 1 && x.iter().all(|&v| v <= 1)
}

fn unit_vectors(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).map(move |i| (0..n).map(|j| (i == j) as usize).collect())
}

/// `(P_n, Q_n)`: `P_n` the `n` unit vectors over `A`, `Q_n` every 0/1 tuple
/// of length `n` except all-ones, inside `B^n`.
pub fn build_pq(n: usize, source_size: usize, target_size: usize) -> Result<RelationPair> {
    need_two("source", source_size)?;
    need_two("target", target_size)?;
    let q = crate::function::Tuples::new(2, n).filter(|t| t.contains(&0));
    RelationPair::new(n, source_size, target_size, unit_vectors(n), q)
}

/// `(P_n × {0}, {0,1}^(n+1) ∖ {(1,…,1,0)})`: the unit vectors with a zero
/// coordinate appended. Unlike `(P_n, Q_n)` this pair is also preserved by
/// constant 1 and by complements of minors of `f_k` (`k ≠ n`), which makes
/// it the separating pair for targets with negation.
pub fn build_pq_pointed(n: usize, source_size: usize, target_size: usize) -> Result<RelationPair> {
    need_two("source", source_size)?;
    need_two("target", target_size)?;
    let p = unit_vectors(n).map(|mut u| {
        u.push(0);
        u
    });
    let q = crate::function::Tuples::new(2, n + 1)
        .filter(|t| !(t[..n].iter().all(|&v| v == 1) && t[n] == 0));
    RelationPair::new(n + 1, source_size, target_size, p, q)
}

/// A finite index set `U` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(BTreeSet<usize>);

impl IndexSet {
    pub fn new(items: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = items.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::input("index sets contain positive integers only"));
        }
        Ok(IndexSet(set))
    }

    pub fn contains(&self, n: usize) -> bool {
        self.0.contains(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `window ∖ U`.
    pub fn complement_within(&self, window: &IndexSet) -> IndexSet {
        IndexSet(window.0.difference(&self.0).copied().collect())
    }

    /// `U ∖ V ∪ V ∖ U`.
    pub fn symmetric_difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    /// Every subset, ordered by size then lexicographically.
    pub fn subsets(&self) -> Vec<IndexSet> {
        let items: Vec<usize> = self.iter().collect();
        let mut out: Vec<IndexSet> = (0..1u64 << items.len())
            .map(|mask| {
                IndexSet(
                    items
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect(),
                )
            })
            .collect();
        out.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.0.iter().cmp(b.0.iter()))
        });
        out
    }

    /// Enforces `U ⊆ ℕ ∖ {1}`.
    pub fn require_without_one(&self) -> Result<()> {
        if self.contains(1) {
            return Err(Error::input("index set must not contain 1"));
        }
        Ok(())
    }
}

impl std::fmt::Display for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// `(F_U, R_U)`.
pub fn family(
    u: &IndexSet,
    source_size: usize,
    target_size: usize,
) -> Result<(GeneratorFamily, Vec<RelationPair>)> {
    need_two("target", target_size)?;
    let generators = u
        .iter()
        .map(|k| {
            let f = build_f(source_size, k)?;
            FiniteFunction::new(
                Signature::new(source_size, target_size, k)?,
                f.table().to_vec(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs = u
        .iter()
        .map(|n| build_pq(n, source_size, target_size))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        GeneratorFamily::new(source_size, target_size, generators)?,
        pairs,
    ))
}

/// Componentwise product; element `(a, b)` is encoded as `a * |B2| + b`.
/// Both factors must declare the same operation names with the same arities,
/// in the same order.
pub fn product_algebra(b1: &Algebra, b2: &Algebra) -> Result<Algebra> {
    if b1.ops().len() != b2.ops().len()
        || b1
            .ops()
            .iter()
            .zip(b2.ops())
            .any(|(x, y)| x.name != y.name || x.arity() != y.arity())
    {
        return Err(Error::input(
            "factors must have the same operation names and arities",
        ));
    }
    let (n1, n2) = (b1.carrier_size(), b2.carrier_size());
    let size = n1 * n2;
    let ops = b1
        .ops()
        .iter()
        .zip(b2.ops())
        .map(|(x, y)| {
            let sig = Signature::new(size, size, x.arity())?;
            let f = FiniteFunction::from_fn(sig, |args| {
                let left: Vec<usize> = args.iter().map(|&e| e / n2).collect();
                let right: Vec<usize> = args.iter().map(|&e| e % n2).collect();
                x.function.eval(&left) * n2 + y.function.eval(&right)
            })?;
            Ok(Operation::new(x.name.clone(), f))
        })
        .collect::<Result<Vec<_>>>()?;
    Algebra::new(size, ops)
}

/// `g(x_1..x_k) = ¬f(¬x_1, ..., ¬x_k)` for `f` over `{0,1}`.
pub fn dualize(f: &FiniteFunction) -> Result<FiniteFunction> {
    if f.source_size() != 2 || f.target_size() != 2 {
        return Err(Error::input("dualization needs source and target {0,1}"));
    }
    // Negating every argument reverses the table index.
    let n = f.table().len();
    let table = (0..n).map(|i| 1 - f.table()[n - 1 - i]).collect();
    FiniteFunction::new(f.signature(), table)
}

/// Dualizes every basic operation.
pub fn dualize_algebra(b: &Algebra) -> Result<Algebra> {
    let ops = b
        .ops()
        .iter()
        .map(|o| Ok(Operation::new(o.name.clone(), dualize(&o.function)?)))
        .collect::<Result<Vec<_>>>()?;
    Algebra::new(b.carrier_size(), ops)
}

/// Standard algebras on `{0,1}`.
pub mod boolean {
    use super::*;

    pub const AND: &str = "0001";
    pub const OR: &str = "0111";
    pub const NOT: &str = "10";
    pub const ZERO: &str = "00";
    pub const ONE: &str = "11";
    pub const XOR: &str = "0110";
    pub const IMPLIES: &str = "1101";
    pub const NOT_IMPLIES: &str = "0010";
    pub const MAJORITY: &str = "00010111";
    pub const MINORITY: &str = "01101001";

    fn algebra(ops: &[(&str, usize, &str)]) -> Algebra {
        Algebra::from_tables(2, ops).expect("static Boolean tables are valid")
    }

    pub fn no_ops() -> Algebra {
        algebra(&[])
    }

    pub fn meet() -> Algebra {
        algebra(&[("and", 2, AND)])
    }

    pub fn join() -> Algebra {
        algebra(&[("or", 2, OR)])
    }

    pub fn meet_with_constants() -> Algebra {
        algebra(&[("and", 2, AND), ("zero", 1, ZERO), ("one", 1, ONE)])
    }

    pub fn join_with_constants() -> Algebra {
        algebra(&[("or", 2, OR), ("zero", 1, ZERO), ("one", 1, ONE)])
    }

    pub fn negation_with_zero() -> Algebra {
        algebra(&[("not", 1, NOT), ("zero", 1, ZERO)])
    }

    pub fn negation() -> Algebra {
        algebra(&[("not", 1, NOT)])
    }

    pub fn implication() -> Algebra {
        algebra(&[("implies", 2, IMPLIES)])
    }

    pub fn non_implication() -> Algebra {
        algebra(&[("nimplies", 2, NOT_IMPLIES)])
    }

    pub fn majority() -> Algebra {
        algebra(&[("maj", 3, MAJORITY)])
    }

    /// `({0,1}, x+y+z)`.
    pub fn minority() -> Algebra {
        algebra(&[("minority", 3, MINORITY)])
    }

    /// `({0,1}, +, 0, 1)`.
    pub fn affine_with_constants() -> Algebra {
        algebra(&[("plus", 2, XOR), ("zero", 1, ZERO), ("one", 1, ONE)])
    }

    pub fn constant_zero() -> Algebra {
        algebra(&[("zero", 1, ZERO)])
    }

    /// Resolves the short names accepted on the command line.
    pub fn by_name(name: &str) -> Option<Algebra> {
        Some(match name {
            "none" => no_ops(),
            "meet" => meet(),
            "join" => join(),
            "meet-01" => meet_with_constants(),
            "join-01" => join_with_constants(),
            "not" => negation(),
            "not-0" => negation_with_zero(),
            "implies" => implication(),
            "not-implies" => non_implication(),
            "maj" => majority(),
            "minority" => minority(),
            "affine-01" => affine_with_constants(),
            _ => return None,
        })
    }
}

/// The two factors of the independent pair: `t` is the first projection and
/// `s` is `x+y+z` in the first; `t` is the second projection and `s` is
/// majority in the second.
pub fn independent_factors() -> (Algebra, Algebra) {
    let b1 = Algebra::from_tables(2, &[("t", 2, "0011"), ("s", 3, boolean::MINORITY)])
        .expect("static tables");
    let b2 = Algebra::from_tables(2, &[("t", 2, "0101"), ("s", 3, boolean::MAJORITY)])
        .expect("static tables");
    (b1, b2)
}
