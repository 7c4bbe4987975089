//! Named verification suites replicating the witness constructions at
//! desk scale. Each suite returns a [`VerificationReport`] with one entry per
//! individual check; reports are deterministic for fixed parameters.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::closure::{bp_member, Budget, GeneratedClonoid, GeneratorFamily};
use crate::constructions::{
    boolean, build_e, build_f, build_pq, build_pq_pointed, family, independent_factors,
    product_algebra, IndexSet,
};
use crate::error::{Error, Result};
use crate::function::{apply_pointwise, FiniteFunction, MinorMap, Signature};
use crate::relation::{is_polymorphism, RelationPair};
use crate::terms::{classify_boolean, cube_term_blocker, NuWitness, Verdict};

pub const SUITES: [&str; 9] = [
    "lemma-3.2",
    "lemma-4.1",
    "eq-4.1",
    "lemma-4.4",
    "lemma-4.5",
    "thm-2.1",
    "thm-1.4-table",
    "blocker-table",
    "separation",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub budget_exceeded: bool,
}

impl Check {
    fn equal(
        description: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            description: description.into(),
            pass: expected == actual,
            expected,
            actual,
            budget_exceeded: false,
        }
    }

    fn holds(
        description: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check {
            description: description.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
            budget_exceeded: false,
        }
    }

    fn failed(description: impl Into<String>, expected: impl Into<String>, err: &Error) -> Self {
        Check {
            description: description.into(),
            expected: expected.into(),
            actual: err.to_string(),
            pass: false,
            budget_exceeded: err.is_budget(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameter {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite_id: String,
    pub parameters: Vec<Parameter>,
    pub checks: Vec<Check>,
    pub overall: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerificationReport {
    /// 0 pass, 1 some check failed, 3 some check ran out of budget.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.budget_exceeded) {
            3
        } else if self.overall {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite_id);
        for p in &self.parameters {
            out.push_str(&format!("param {}={}\n", p.key, p.value));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed {seed}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}: expected {}, actual {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.description,
                c.expected,
                c.actual
            ));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "overall {} ({passed}/{} checks)\n",
            if self.overall { "PASS" } else { "FAIL" },
            self.checks.len()
        ));
        out
    }
}

/// Suite parameters: declared keys with defaults, overridden by `key=value`.
struct Params {
    values: BTreeMap<&'static str, String>,
}

impl Params {
    fn new(defaults: &[(&'static str, &str)], given: &[(String, String)]) -> Result<Self> {
        let mut values: BTreeMap<&'static str, String> =
            defaults.iter().map(|&(k, v)| (k, v.to_string())).collect();
        for (k, v) in given {
            match defaults.iter().find(|(d, _)| d == k) {
                Some(&(key, _)) => {
                    values.insert(key, v.clone());
                }
                None => {
                    let known: Vec<&str> = defaults.iter().map(|(k, _)| *k).collect();
                    return Err(Error::input(format!(
                        "unknown parameter '{k}' (accepted: {})",
                        known.join(", ")
                    )));
                }
            }
        }
        Ok(Params { values })
    }

    fn usize(&self, key: &str) -> Result<usize> {
        let v = &self.values[key];
        v.parse()
            .map_err(|_| Error::input(format!("parameter {key}={v} is not a nonnegative integer")))
    }

    fn u64(&self, key: &str) -> Result<u64> {
        let v = &self.values[key];
        v.parse()
            .map_err(|_| Error::input(format!("parameter {key}={v} is not a nonnegative integer")))
    }

    fn window(&self, key: &str) -> Result<IndexSet> {
        let v = &self.values[key];
        let items = v
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.trim().parse::<usize>().map_err(|_| {
                    Error::input(format!("parameter {key}={v} is not a list of integers"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSet::new(items)
    }

    fn algebra(&self, key: &str) -> Result<Algebra> {
        let v = &self.values[key];
        boolean::by_name(v)
            .ok_or_else(|| Error::input(format!("parameter {key}={v} is not a known algebra")))
    }

    fn names(&self, key: &str) -> Vec<String> {
        self.values[key].split(',').map(str::to_string).collect()
    }

    fn list(&self) -> Vec<Parameter> {
        self.values
            .iter()
            .map(|(k, v)| Parameter {
                key: k.to_string(),
                value: v.clone(),
            })
            .collect()
    }
}

/// Runs a named suite. Unknown suites and malformed parameters are input
/// errors; budget overruns are recorded on the affected checks.
pub fn run_verification(
    suite_id: &str,
    params: &[(String, String)],
    budget: Budget,
) -> Result<VerificationReport> {
    let (params, checks, seed) = match suite_id {
        "lemma-4.1" => f_grid(params)?,
        "lemma-3.2" => e_chain(params, budget)?,
        "eq-4.1" => membership_grid(params, "meet", false, budget)?,
        "lemma-4.4" => membership_grid(params, "not-0", true, budget)?,
        "lemma-4.5" => preserved_pairs(params, budget)?,
        "thm-2.1" => baker_pixley(params, budget)?,
        "thm-1.4-table" => classification_table(params, budget)?,
        "blocker-table" => blocker_table(params)?,
        "separation" => separation(params, budget)?,
        other => {
            return Err(Error::input(format!(
                "unknown suite '{other}' (known: {})",
                SUITES.join(", ")
            )))
        }
    };
    let overall = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        suite_id: suite_id.to_string(),
        parameters: params.list(),
        checks,
        overall,
        seed,
    })
}

type SuiteOutput = (Params, Vec<Check>, Option<u64>);

/// Converts a budget error into a failed check, propagating anything else.
fn guard<T>(
    r: Result<T>,
    checks: &mut Vec<Check>,
    description: &str,
    expected: &str,
) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_budget() => {
            checks.push(Check::failed(description, expected, &e));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn f_grid(given: &[(String, String)]) -> Result<SuiteOutput> {
    let p = Params::new(&[("max", "5"), ("source", "2"), ("target", "2")], given)?;
    let (max, source, target) = (p.usize("max")?, p.usize("source")?, p.usize("target")?);
    let mut checks = Vec::new();
    for k in 1..=max {
        let fk = build_f(source, k)?;
        let fk = FiniteFunction::new(Signature::new(source, target, k)?, fk.table().to_vec())?;
        for n in 1..=max {
            let preserves = is_polymorphism(&fk, &build_pq(n, source, target)?)?;
            checks.push(Check::equal(
                format!("f_{k} preserves (P_{n},Q_{n})"),
                k != n,
                preserves,
            ));
        }
    }
    Ok((p, checks, None))
}

fn e_family(k: usize) -> Result<GeneratorFamily> {
    let gens = (1..=k).map(|i| build_e(2, i)).collect::<Result<Vec<_>>>()?;
    GeneratorFamily::new(2, 2, gens)
}

fn e_chain(given: &[(String, String)], budget: Budget) -> Result<SuiteOutput> {
    let p = Params::new(&[("max_k", "4")], given)?;
    let max_k = p.usize("max_k")?;
    if max_k < 2 {
        return Err(Error::input("max_k must be at least 2"));
    }
    let b = boolean::affine_with_constants();
    let mut clonoids = (1..=max_k)
        .map(|m| GeneratedClonoid::new(e_family(m)?, b.clone(), budget))
        .collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();

    for k in 1..=max_k {
        let e = build_e(2, k)?;
        checks.push(Check::equal(
            format!("support of e_{k} at 1"),
            1,
            e.support_count(1)?,
        ));
    }
    for k in 2..=max_k {
        let desc = format!("e_{k} in <e_1..e_{}> (arity {k})", k - 1);
        let r = clonoids[k - 2].contains(&build_e(2, k)?);
        if let Some(found) = guard(r, &mut checks, &desc, "false")? {
            checks.push(Check::equal(desc, false, found));
        }
    }
    for m in 1..max_k {
        for k in m + 1..=max_k {
            let desc = format!("supports in slice_{k}<e_1..e_{m}> are even");
            let Some(slice) = guard(clonoids[m - 1].slice(k), &mut checks, &desc, "even")? else {
                continue;
            };
            let odd = slice
                .iter()
                .find(|g| g.table().iter().filter(|&&v| v == 1).count() % 2 == 1);
            let actual = match odd {
                None => format!("even ({} members)", slice.len()),
                Some(g) => format!("odd support in {}", g.table_string()),
            };
            checks.push(Check::holds(desc, "even", actual, odd.is_none()));
        }
    }
    for m in 1..max_k {
        let desc = format!(
            "slice_{max_k}<e_1..e_{m}> strictly inside slice_{max_k}<e_1..e_{}>",
            m + 1
        );
        let Some(small) = guard(
            clonoids[m - 1].slice(max_k).cloned(),
            &mut checks,
            &desc,
            "strict",
        )?
        else {
            continue;
        };
        let Some(large) = guard(clonoids[m].slice(max_k), &mut checks, &desc, "strict")? else {
            continue;
        };
        let strict = small.is_subset(large) && small.len() < large.len();
        checks.push(Check::holds(
            desc,
            "strict",
            format!(
                "{} ({} vs {} members)",
                if strict { "strict" } else { "not strict" },
                small.len(),
                large.len()
            ),
            strict,
        ));
    }
    Ok((p, checks, None))
}

/// `member(f_n, F_U) = (n in U)` over all `U` in the window and `n` in it.
fn membership_grid(
    given: &[(String, String)],
    default_algebra: &str,
    no_one: bool,
    budget: Budget,
) -> Result<SuiteOutput> {
    let p = Params::new(
        &[
            ("algebra", default_algebra),
            ("window", "2,3,4"),
            ("source", "2"),
        ],
        given,
    )?;
    let (b, window, source) = (
        p.algebra("algebra")?,
        p.window("window")?,
        p.usize("source")?,
    );
    if no_one {
        window.require_without_one()?;
    }
    let mut checks = Vec::new();
    for u in window.subsets() {
        let (f_u, _) = family(&u, source, 2)?;
        let mut clonoid = GeneratedClonoid::new(f_u, b.clone(), budget)?;
        for n in window.iter() {
            let desc = format!("f_{n} in <F_{u}>");
            let expected = u.contains(n);
            let r = clonoid.contains(&build_f(source, n)?);
            if let Some(found) = guard(r, &mut checks, &desc, &expected.to_string())? {
                checks.push(Check::equal(desc, expected, found));
            }
        }
    }
    Ok((p, checks, None))
}

fn preserved_pairs(given: &[(String, String)], budget: Budget) -> Result<SuiteOutput> {
    let p = Params::new(
        &[
            ("algebra", "not-implies"),
            ("window", "2,3"),
            ("max_arity", "4"),
            ("max_m", "4"),
            ("source", "2"),
        ],
        given,
    )?;
    let b = p.algebra("algebra")?;
    let window = p.window("window")?;
    let (max_arity, max_m, source) = (p.usize("max_arity")?, p.usize("max_m")?, p.usize("source")?);
    let mut checks = Vec::new();
    for u in window.subsets() {
        let (f_u, _) = family(&u, source, 2)?;
        let mut clonoid = GeneratedClonoid::new(f_u, b.clone(), budget)?;
        for n in 1..=max_arity {
            let desc = format!("slice_{n}<F_{u}>");
            let Some(slice) = guard(clonoid.slice(n), &mut checks, &desc, "computed")? else {
                continue;
            };
            for m in (1..=max_m).filter(|&m| !u.contains(m)) {
                let pair = build_pq(m, source, 2)?;
                let bad = slice.iter().find(|g| !crate::relation::preserves(g, &pair));
                let actual = match bad {
                    None => format!("all {} preserve", slice.len()),
                    Some(g) => format!("{} fails", g.table_string()),
                };
                checks.push(Check::holds(
                    format!("slice_{n}<F_{u}> preserves (P_{m},Q_{m})"),
                    "all preserve",
                    actual,
                    bad.is_none(),
                ));
            }
            if u.contains(n) {
                let f_n = build_f(source, n)?;
                checks.push(Check::equal(
                    format!("f_{n} in slice_{n}<F_{u}>"),
                    true,
                    slice.contains(&f_n),
                ));
                checks.push(Check::equal(
                    format!("f_{n} preserves (P_{n},Q_{n})"),
                    false,
                    is_polymorphism(&f_n, &build_pq(n, source, 2)?)?,
                ));
            }
        }
    }
    Ok((p, checks, None))
}

fn random_function(rng: &mut ChaCha8Rng, arity: usize) -> Result<FiniteFunction> {
    let sig = Signature::new(2, 2, arity)?;
    let table = (0..sig.table_len())
        .map(|_| rng.gen_range(0..2u8))
        .collect();
    FiniteFunction::new(sig, table)
}

fn random_minor(rng: &mut ChaCha8Rng, f: &FiniteFunction, arity: usize) -> Result<FiniteFunction> {
    let images = (0..f.arity()).map(|_| rng.gen_range(1..=arity)).collect();
    f.minor(&MinorMap::new(arity, images)?)
}

/// Direct membership against the Baker–Pixley route for `({0,1}, maj)`.
fn baker_pixley(given: &[(String, String)], budget: Budget) -> Result<SuiteOutput> {
    let p = Params::new(
        &[
            ("seed", "0"),
            ("families", "50"),
            ("max_generators", "2"),
            ("max_generator_arity", "3"),
            ("max_test_arity", "4"),
        ],
        given,
    )?;
    let seed = p.u64("seed")?;
    let (families, max_gens, max_gen_arity, max_test_arity) = (
        p.usize("families")?,
        p.usize("max_generators")?,
        p.usize("max_generator_arity")?,
        p.usize("max_test_arity")?,
    );
    if max_gens == 0 || max_gen_arity == 0 || max_test_arity == 0 {
        return Err(Error::input("generator count and arities must be positive"));
    }
    const NU_ARITY: usize = 3;
    let r = 4; // |A|^(n-1) with |A| = 2, n = 3
    let b = boolean::majority();
    let maj = &b.ops()[0].function;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let (mut members, mut non_members) = (0usize, 0usize);

    for fam in 0..families {
        let count = rng.gen_range(1..=max_gens);
        let gens = (0..count)
            .map(|_| {
                let a = rng.gen_range(1..=max_gen_arity);
                random_function(&mut rng, a)
            })
            .collect::<Result<Vec<_>>>()?;

        let mut tests: Vec<FiniteFunction> = gens.clone();
        for arity in 1..=max_test_arity {
            tests.push(random_function(&mut rng, arity)?);
            // A member by construction, and a one-entry perturbation of it.
            let picks = (0..3)
                .map(|_| {
                    let g = &gens[rng.gen_range(0..gens.len())];
                    random_minor(&mut rng, g, arity)
                })
                .collect::<Result<Vec<_>>>()?;
            let built = apply_pointwise(maj, &[&picks[0], &picks[1], &picks[2]])?;
            let mut flipped = built.table().to_vec();
            let at = rng.gen_range(0..flipped.len());
            flipped[at] ^= 1;
            tests.push(FiniteFunction::new(built.signature(), flipped)?);
            tests.push(built);
        }

        let tables: Vec<String> = gens.iter().map(|g| g.table_string()).collect();
        let mut clonoid =
            GeneratedClonoid::new(GeneratorFamily::new(2, 2, gens)?, b.clone(), budget)?;
        let desc_slice = format!("family {fam} [{}]: slice_{r}", tables.join(","));
        let Some(slice_r) = guard(
            clonoid.slice(r).cloned(),
            &mut checks,
            &desc_slice,
            "computed",
        )?
        else {
            continue;
        };
        for (t, f) in tests.iter().enumerate() {
            let desc = format!(
                "family {fam} [{}] test {t} ({})",
                tables.join(","),
                f.table_string()
            );
            let Some(direct) = guard(clonoid.contains(f), &mut checks, &desc, "agreement")? else {
                continue;
            };
            let via_minors = bp_member(f, &slice_r, NU_ARITY)?;
            if direct {
                members += 1;
            } else {
                non_members += 1;
            }
            checks.push(Check::holds(
                desc,
                format!("bp_member = {via_minors}"),
                format!("member = {direct}"),
                direct == via_minors,
            ));
        }
    }
    let total = members + non_members;
    checks.push(Check::holds(
        "instances checked",
        "at least 100",
        format!("{total} ({members} members, {non_members} non-members)"),
        total >= 100,
    ));
    Ok((p, checks, Some(seed)))
}

/// The reference rows: algebra name, algebra, expected verdict.
pub fn classification_rows() -> Vec<(&'static str, Algebra, Verdict)> {
    vec![
        ("({0,1}, maj)", boolean::majority(), Verdict::Finite),
        (
            "({0,1}, x+y+z)",
            boolean::minority(),
            Verdict::CountablyInfinite,
        ),
        (
            "({0,1}, +, 0, 1)",
            boolean::affine_with_constants(),
            Verdict::CountablyInfinite,
        ),
        ("({0,1}, and)", boolean::meet(), Verdict::Continuum),
        (
            "({0,1}, and, 0, 1)",
            boolean::meet_with_constants(),
            Verdict::Continuum,
        ),
        (
            "({0,1}, not, 0)",
            boolean::negation_with_zero(),
            Verdict::Continuum,
        ),
        (
            "({0,1}, not-implies)",
            boolean::non_implication(),
            Verdict::Continuum,
        ),
        (
            "({0,1}, no operations)",
            boolean::no_ops(),
            Verdict::Continuum,
        ),
    ]
}

fn classification_table(given: &[(String, String)], budget: Budget) -> Result<SuiteOutput> {
    let p = Params::new(&[("nu_cap", "5")], given)?;
    let nu_cap = p.usize("nu_cap")?;
    let mut checks = Vec::new();
    for (name, b, expected) in classification_rows() {
        let desc = format!("{name} verdict");
        let Some(report) = guard(
            classify_boolean(&b, nu_cap, budget),
            &mut checks,
            &desc,
            expected.as_str(),
        )?
        else {
            continue;
        };
        checks.push(Check::equal(desc, expected, report.verdict));
        let consistent = match report.verdict {
            Verdict::Finite => matches!(
                report.witness_nu,
                Some(NuWitness::Found(_)) | Some(NuWitness::BeyondCap(_))
            ),
            Verdict::CountablyInfinite => {
                report.witness_malcev.is_some() && report.witness_majority.is_none()
            }
            Verdict::Continuum => report.containing_maximal_clone.is_some(),
        };
        checks.push(Check::equal(
            format!("{name} witnesses match verdict"),
            true,
            consistent,
        ));
        if let Some(agrees) = report.idempotent_cross_check {
            checks.push(Check::equal(
                format!("{name} blocker present iff continuum (idempotent)"),
                true,
                agrees,
            ));
        }
    }
    Ok((p, checks, None))
}

/// Reference rows for the blocker table; `None` means no blocker.
pub fn blocker_rows() -> Vec<(&'static str, Algebra, Option<Vec<usize>>)> {
    let (b1, b2) = independent_factors();
    vec![
        ("({0,1}, and)", boolean::meet(), Some(vec![0])),
        ("({0,1}, x+y+z)", boolean::minority(), None),
        ("({0,1}, maj)", boolean::majority(), None),
        (
            "B1 x B2 (independent pair)",
            product_algebra(&b1, &b2).expect("matching signatures"),
            None,
        ),
    ]
}

fn blocker_table(given: &[(String, String)]) -> Result<SuiteOutput> {
    let p = Params::new(&[("max_n", "4")], given)?;
    let max_n = p.usize("max_n")?;
    let mut checks = Vec::new();
    let show = |v: &Option<Vec<usize>>| match v {
        None => "none".to_string(),
        Some(v) => format!(
            "{{{}}}",
            v.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    };
    for (name, b, expected) in blocker_rows() {
        let found = cube_term_blocker(&b);
        let found_elems = found.as_ref().map(|v| v.elements().to_vec());
        checks.push(Check::equal(
            format!("{name} blocker"),
            show(&expected),
            show(&found_elems),
        ));
        if let Some(v) = &found {
            for n in 1..=max_n {
                checks.push(Check::equal(
                    format!("{name}: T_{n} for V={v} is a subuniverse"),
                    true,
                    v.t_is_subuniverse(&b, n),
                ));
            }
        }
    }
    Ok((p, checks, None))
}

/// Finds a pair among the candidates that `f` fails while every member of
/// `slice` preserves it.
fn separating_pair<'a>(
    f: &FiniteFunction,
    slice: &crate::set::FunctionSet,
    candidates: &'a [(String, RelationPair)],
) -> Option<&'a (String, RelationPair)> {
    candidates.iter().find(|(_, pair)| {
        !crate::relation::preserves(f, pair)
            && slice.iter().all(|g| crate::relation::preserves(g, pair))
    })
}

fn separation(given: &[(String, String)], budget: Budget) -> Result<SuiteOutput> {
    let p = Params::new(
        &[
            ("algebras", "meet,not-0,not-implies"),
            ("window", "2,3"),
            ("source", "2"),
        ],
        given,
    )?;
    let window = p.window("window")?;
    let source = p.usize("source")?;
    let mut checks = Vec::new();
    for name in p.names("algebras") {
        let b = boolean::by_name(&name)
            .ok_or_else(|| Error::input(format!("unknown algebra '{name}'")))?;
        let subsets = window.subsets();
        let mut clonoids = subsets
            .iter()
            .map(|u| GeneratedClonoid::new(family(u, source, 2)?.0, b.clone(), budget))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..subsets.len() {
            for j in i + 1..subsets.len() {
                let (u, v) = (&subsets[i], &subsets[j]);
                let n = u
                    .symmetric_difference(v)
                    .iter()
                    .next()
                    .expect("distinct subsets");
                // `with` contains n, `without` does not.
                let (wi, wo) = if u.contains(n) { (i, j) } else { (j, i) };
                let desc = format!("{name}: <F_{u}> vs <F_{v}> at arity {n}");
                let f_n = build_f(source, n)?;
                let Some(in_with) =
                    guard(clonoids[wi].contains(&f_n), &mut checks, &desc, "separated")?
                else {
                    continue;
                };
                let Some(slice_without) =
                    guard(clonoids[wo].slice(n), &mut checks, &desc, "separated")?
                else {
                    continue;
                };
                let candidates = [
                    (format!("(P_{n},Q_{n})"), build_pq(n, source, 2)?),
                    (format!("(P_{n}x0,Q'_{n})"), build_pq_pointed(n, source, 2)?),
                ];
                let pair = separating_pair(&f_n, slice_without, &candidates);
                let ok = in_with && !slice_without.contains(&f_n) && pair.is_some();
                let actual = match pair {
                    Some((pname, _)) if ok => format!(
                        "f_{n} in <F_{}> only; every member of slice_{n}<F_{}> preserves {pname}, f_{n} does not",
                        subsets[wi], subsets[wo]
                    ),
                    _ => format!(
                        "no witness (f_{n} in <F_{}>: {in_with}, in <F_{}>: {}, separating pair: {})",
                        subsets[wi],
                        subsets[wo],
                        slice_without.contains(&f_n),
                        pair.is_some()
                    ),
                };
                checks.push(Check::holds(desc, "separated", actual, ok));
            }
        }
    }
    Ok((p, checks, None))
}
