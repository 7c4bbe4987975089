//! Term conditions (Mal'cev, majority, near-unanimity), cube term blockers,
//! and the exact three-way classification of two-element target algebras.

use std::fmt;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::closure::{clone_contains, clone_slice, find_term, Budget};
use crate::constructions::boolean;
use crate::error::{Error, Result};
use crate::function::{tuple_index, FiniteFunction, Tuples};
use crate::set::FunctionSet;

/// NU identities at arity `n` for a table over a `c`-element carrier:
/// the value is `x` whenever all arguments but at most one equal `x`.
pub(crate) fn table_is_near_unanimity(table: &[u8], c: usize, n: usize) -> bool {
    let mut args = vec![0usize; n];
    for x in 0..c {
        for y in 0..c {
            for pos in 0..n {
                args.iter_mut().for_each(|a| *a = x);
                args[pos] = y;
                if table[tuple_index(c, &args)] as usize != x {
                    return false;
                }
            }
        }
    }
    true
}

fn is_operation(f: &FiniteFunction) -> bool {
    f.source_size() == f.target_size()
}

/// Whether `f` (an operation of arity ≥ 3) satisfies the NU identities.
pub fn is_near_unanimity(f: &FiniteFunction) -> bool {
    is_operation(f)
        && f.arity() >= 3
        && table_is_near_unanimity(f.table(), f.source_size(), f.arity())
}

pub fn is_majority(f: &FiniteFunction) -> bool {
    f.arity() == 3 && is_near_unanimity(f)
}

/// `f(y,y,x) = f(x,y,y) = x`.
pub fn is_malcev(f: &FiniteFunction) -> bool {
    if !is_operation(f) || f.arity() != 3 {
        return false;
    }
    let c = f.source_size();
    (0..c).all(|x| (0..c).all(|y| f.eval(&[y, y, x]) == x && f.eval(&[x, y, y]) == x))
}

/// Ternary term operations satisfying the Mal'cev identities; empty exactly
/// when the algebra has no Mal'cev term.
pub fn malcev_terms(b: &Algebra, budget: Budget) -> Result<FunctionSet> {
    Ok(clone_slice(b, 3, budget)?.filter(is_malcev))
}

/// Ternary term operations satisfying the majority identities.
pub fn majority_terms(b: &Algebra, budget: Budget) -> Result<FunctionSet> {
    Ok(clone_slice(b, 3, budget)?.filter(is_majority))
}

/// `n`-ary term operations satisfying the NU identities. A budget error
/// means "unknown at this arity", not "none".
pub fn nu_terms(b: &Algebra, n: usize, budget: Budget) -> Result<FunctionSet> {
    if n < 3 {
        return Err(Error::input(format!(
            "near-unanimity terms have arity at least 3, got {n}"
        )));
    }
    Ok(clone_slice(b, n, budget)?.filter(is_near_unanimity))
}

pub fn is_idempotent(b: &Algebra) -> bool {
    b.ops().iter().all(|op| {
        let c = b.carrier_size();
        (0..c).all(|x| op.function.eval(&vec![x; op.arity()]) == x)
    })
}

/// A nonempty proper subset `V` of the carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockerSet {
    carrier_size: usize,
    elements: Vec<usize>,
}

impl BlockerSet {
    pub fn new(carrier_size: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty()
            || elements.len() >= carrier_size
            || elements.iter().any(|&e| e >= carrier_size)
        {
            return Err(Error::input(
                "a blocker must be a nonempty proper subset of the carrier",
            ));
        }
        Ok(BlockerSet {
            carrier_size,
            elements,
        })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Membership in `T_n = B^n ∖ (B ∖ V)^n`.
    pub fn t_contains(&self, tuple: &[usize]) -> bool {
        tuple.iter().any(|&x| self.contains(x))
    }

    /// Whether `T_n` is closed under every basic operation, by enumerating
    /// all argument tuples drawn from `T_n`.
    pub fn t_is_subuniverse(&self, b: &Algebra, n: usize) -> bool {
        let t_n: Vec<Vec<usize>> = Tuples::new(b.carrier_size(), n)
            .filter(|t| self.t_contains(t))
            .collect();
        b.ops().iter().all(|op| {
            let m = op.arity();
            Tuples::new(t_n.len(), m).all(|choice| {
                let image: Vec<usize> = (0..n)
                    .map(|row| {
                        let args: Vec<usize> = choice.iter().map(|&c| t_n[c][row]).collect();
                        op.function.eval(&args)
                    })
                    .collect();
                self.t_contains(&image)
            })
        })
    }
}

impl fmt::Display for BlockerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Whether some coordinate `i` of `op` forces the value into `V` whenever
/// argument `i` is in `V`.
fn has_absorbing_coordinate(op: &FiniteFunction, in_v: &[bool]) -> bool {
    let m = op.arity();
    let mut failed = vec![false; m];
    let mut tuples = Tuples::new(op.source_size(), m);
    while let Some(t) = tuples.current() {
        if !in_v[op.eval(t)] {
            for (i, &x) in t.iter().enumerate() {
                if in_v[x] {
                    failed[i] = true;
                }
            }
        }
        tuples.advance();
    }
    failed.iter().any(|f| !f)
}

/// First nonempty proper `V` (by size, then lexicographically) such that
/// every basic operation has a coordinate that pulls its value into `V`.
/// That property passes to all term operations, so `T_n` is a subuniverse
/// for every `n`.
pub fn cube_term_blocker(b: &Algebra) -> Option<BlockerSet> {
    let c = b.carrier_size();
    for size in 1..c {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let mut in_v = vec![false; c];
            subset.iter().for_each(|&x| in_v[x] = true);
            if b.ops()
                .iter()
                .all(|op| has_absorbing_coordinate(&op.function, &in_v))
            {
                return Some(BlockerSet {
                    carrier_size: c,
                    elements: subset,
                });
            }
            if !next_combination(&mut subset, c) {
                break;
            }
        }
    }
    None
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// How many clonoids a two-element target algebra admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Finite,
    CountablyInfinite,
    Continuum,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Finite => "finite",
            Verdict::CountablyInfinite => "countably_infinite",
            Verdict::Continuum => "continuum",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The maximal Boolean clones without NU or Mal'cev terms, up to the
/// containments that matter for classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MaximalClone {
    #[serde(rename = "meet-01")]
    Meet01,
    #[serde(rename = "join-01")]
    Join01,
    #[serde(rename = "not-0")]
    Not0,
    #[serde(rename = "implies")]
    Implies,
    #[serde(rename = "not-implies")]
    NotImplies,
}

impl MaximalClone {
    pub const ALL: [MaximalClone; 5] = [
        MaximalClone::Meet01,
        MaximalClone::Join01,
        MaximalClone::Not0,
        MaximalClone::Implies,
        MaximalClone::NotImplies,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MaximalClone::Meet01 => "meet-01",
            MaximalClone::Join01 => "join-01",
            MaximalClone::Not0 => "not-0",
            MaximalClone::Implies => "implies",
            MaximalClone::NotImplies => "not-implies",
        }
    }

    /// Generating operations of the clone.
    pub fn algebra(self) -> Algebra {
        match self {
            MaximalClone::Meet01 => boolean::meet_with_constants(),
            MaximalClone::Join01 => boolean::join_with_constants(),
            MaximalClone::Not0 => boolean::negation_with_zero(),
            MaximalClone::Implies => boolean::implication(),
            MaximalClone::NotImplies => boolean::non_implication(),
        }
    }
}

impl fmt::Display for MaximalClone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NuWitness {
    Found(FiniteFunction),
    /// An NU term exists but none was found up to this arity.
    BeyondCap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub witness_majority: Option<FiniteFunction>,
    pub witness_malcev: Option<FiniteFunction>,
    pub witness_nu: Option<NuWitness>,
    pub containing_maximal_clone: Option<MaximalClone>,
    pub blocker: Option<BlockerSet>,
    pub idempotent: bool,
    /// For idempotent algebras: whether "blocker present" agrees with
    /// "verdict continuum".
    pub idempotent_cross_check: Option<bool>,
}

/// Exact trichotomy for algebras on `{0,1}`:
/// a majority term gives finitely many clonoids, otherwise a Mal'cev term
/// gives countably many, otherwise the clone sits inside one of the five
/// maximal clones and there are continuum many. An algebra outside all five
/// without Mal'cev term must have an NU term, searched for up to `nu_cap`.
pub fn classify_boolean(
    b: &Algebra,
    nu_cap: usize,
    budget: Budget,
) -> Result<ClassificationReport> {
    if b.carrier_size() != 2 {
        return Err(Error::input(format!(
            "classification needs a two-element algebra, got {} elements",
            b.carrier_size()
        )));
    }
    let ternary = clone_slice(b, 3, budget)?;
    let witness_majority = ternary.iter().find(|f| is_majority(f)).cloned();
    let witness_malcev = ternary.iter().find(|f| is_malcev(f)).cloned();

    let mut containing_maximal_clone = None;
    for m in MaximalClone::ALL {
        if clone_contains(&m.algebra(), b, budget)? {
            containing_maximal_clone = Some(m);
            break;
        }
    }

    let (verdict, witness_nu) = if let Some(maj) = &witness_majority {
        (Verdict::Finite, Some(NuWitness::Found(maj.clone())))
    } else if witness_malcev.is_some() {
        (Verdict::CountablyInfinite, None)
    } else if containing_maximal_clone.is_some() {
        (Verdict::Continuum, None)
    } else {
        (Verdict::Finite, Some(search_nu(b, nu_cap, budget)))
    };

    let blocker = cube_term_blocker(b);
    let idempotent = is_idempotent(b);
    let idempotent_cross_check =
        idempotent.then(|| blocker.is_some() == (verdict == Verdict::Continuum));
    Ok(ClassificationReport {
        verdict,
        witness_majority,
        witness_malcev,
        witness_nu,
        containing_maximal_clone,
        blocker,
        idempotent,
        idempotent_cross_check,
    })
}

fn search_nu(b: &Algebra, nu_cap: usize, budget: Budget) -> NuWitness {
    for n in 4..=nu_cap {
        // Exhausted or over budget at an arity: try the next one.
        if let Ok(Some(f)) = find_term(b, n, budget, &mut |f| is_near_unanimity(f)) {
            return NuWitness::Found(f);
        }
    }
    NuWitness::BeyondCap(nu_cap)
}
