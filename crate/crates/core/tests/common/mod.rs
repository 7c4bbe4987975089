//! Property checks shared by the property tests and the acceptance runner.
//! Each check returns the number of cases examined or a description of the
//! first counterexample.

#![allow(dead_code)]

use std::collections::BTreeSet;

use clonoid::closure::subalgebra_close_worklist;
use clonoid::function::Tuples;
use clonoid::text;
use clonoid::{
    apply_pointwise, is_polymorphism, pol_slice, subalgebra_close, Algebra, Budget, FiniteFunction,
    FunctionSet, MinorMap, Operation, RelationPair, Signature,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<usize, String>;

/// Function spaces up to this size are enumerated in full; larger ones are
/// sampled with this many seeded draws.
pub const FULL_SPACE: usize = 256;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_function(rng: &mut impl Rng, a: usize, b: usize, k: usize) -> FiniteFunction {
    let sig = Signature::new(a, b, k).unwrap();
    let table = (0..sig.table_len())
        .map(|_| rng.gen_range(0..b) as u8)
        .collect();
    FiniteFunction::new(sig, table).unwrap()
}

/// Every function `a^k -> b` when there are at most [`FULL_SPACE`], else a
/// seeded sample of that many.
pub fn functions(a: usize, b: usize, k: usize, rng: &mut impl Rng) -> Vec<FiniteFunction> {
    let sig = Signature::new(a, b, k).unwrap();
    let len = sig.table_len();
    let full = (b as f64).powi(len as i32) <= FULL_SPACE as f64;
    if full {
        Tuples::new(b, len)
            .map(|t| FiniteFunction::new(sig, t.into_iter().map(|v| v as u8).collect()).unwrap())
            .collect()
    } else {
        (0..FULL_SPACE)
            .map(|_| random_function(rng, a, b, k))
            .collect()
    }
}

/// Index of a tuple over `a` elements, first coordinate most significant.
pub fn index(a: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * a + x)
}

/// `f^sigma` straight from the definition.
pub fn naive_minor(f: &FiniteFunction, sigma: &[usize], l: usize) -> Vec<u8> {
    let a = f.source_size();
    Tuples::new(a, l)
        .map(|x| {
            let picked: Vec<usize> = sigma.iter().map(|&j| x[j - 1]).collect();
            f.table()[index(a, &picked)]
        })
        .collect()
}

pub fn naive_preserves(f: &FiniteFunction, pair: &RelationPair) -> bool {
    let k = f.arity();
    let m = pair.arity();
    let a = f.source_size();
    // Every choice of k tuples from P, as columns of an m x k matrix.
    let mut choice = vec![0usize; k];
    if pair.p().is_empty() {
        return true;
    }
    loop {
        let image: Vec<u8> = (0..m)
            .map(|row| {
                let x: Vec<usize> = choice.iter().map(|&c| pair.p()[c][row] as usize).collect();
                f.table()[index(a, &x)]
            })
            .collect();
        if !pair.q().contains(&image) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < pair.p().len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Saturation by brute force: apply every operation to every tuple of
/// current elements until nothing new appears.
pub fn naive_closure(gens: &[Vec<u8>], algebra: &Algebra, cap: usize) -> Option<Vec<Vec<u8>>> {
    let mut found: BTreeSet<Vec<u8>> = gens.iter().cloned().collect();
    let len = gens.first().map_or(0, Vec::len);
    loop {
        let elems: Vec<Vec<u8>> = found.iter().cloned().collect();
        for op in algebra.ops() {
            for choice in Tuples::new(elems.len(), op.arity()) {
                let v: Vec<u8> = (0..len)
                    .map(|j| {
                        let x: Vec<usize> = choice.iter().map(|&c| elems[c][j] as usize).collect();
                        op.function.table()[index(algebra.carrier_size(), &x)]
                    })
                    .collect();
                found.insert(v);
                if found.len() > cap {
                    return None;
                }
            }
        }
        if found.len() == elems.len() {
            return Some(elems);
        }
    }
}

pub fn random_algebra(rng: &mut impl Rng, c: usize, max_ops: usize, max_arity: usize) -> Algebra {
    let count = rng.gen_range(1..=max_ops);
    let ops = (0..count)
        .map(|i| {
            let k = rng.gen_range(1..=max_arity);
            Operation::new(format!("o{i}"), random_function(rng, c, c, k))
        })
        .collect();
    Algebra::new(c, ops).unwrap()
}

/// Every one-operation algebra on `c` elements with an operation of arity
/// `k`, or a sample when there are too many.
pub fn single_op_algebras(c: usize, k: usize, rng: &mut impl Rng) -> Vec<Algebra> {
    functions(c, c, k, rng)
        .into_iter()
        .map(|f| Algebra::new(c, vec![Operation::new("o", f)]).unwrap())
        .collect()
}

fn minor_functoriality_case(f: &FiniteFunction, l: usize, m: usize) -> Check {
    let mut n = 0;
    let k = f.arity();
    if f.minor(&MinorMap::identity(k)).map_err(|e| e.to_string())? != *f {
        return Err(format!("identity minor changes {}", f.table_string()));
    }
    for sigma in MinorMap::all(k, l) {
        let fs = f.minor(&sigma).unwrap();
        if fs.table() != naive_minor(f, sigma.images(), l).as_slice() {
            return Err(format!(
                "minor of {} by {:?} disagrees with definition",
                f.table_string(),
                sigma.images()
            ));
        }
        for tau in MinorMap::all(l, m) {
            let lhs = fs.minor(&tau).unwrap();
            let rhs = f.minor(&sigma.then(&tau).unwrap()).unwrap();
            if lhs != rhs {
                return Err(format!(
                    "(f^s)^t != f^(t.s) for f={}, s={:?}, t={:?}",
                    f.table_string(),
                    sigma.images(),
                    tau.images()
                ));
            }
            n += 1;
        }
    }
    Ok(n)
}

pub fn minor_functoriality(max_size: usize, max_arity: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut n = 0;
    for a in 1..=max_size {
        for b in 1..=max_size {
            for k in 1..=max_arity {
                for f in functions(a, b, k, &mut rng) {
                    for l in 1..=max_arity {
                        // m is sampled: the (l, m) grid is covered across functions.
                        let m = rng.gen_range(1..=max_arity);
                        n += minor_functoriality_case(&f, l, m)?;
                    }
                }
            }
        }
    }
    Ok(n)
}

fn commutation_case(g: &FiniteFunction, fs: &[FiniteFunction], l: usize) -> Check {
    let refs: Vec<&FiniteFunction> = fs.iter().collect();
    let composed = apply_pointwise(g, &refs).map_err(|e| e.to_string())?;
    let mut n = 0;
    for sigma in MinorMap::all(fs[0].arity(), l) {
        let lhs = composed.minor(&sigma).unwrap();
        let minors: Vec<FiniteFunction> = fs.iter().map(|f| f.minor(&sigma).unwrap()).collect();
        let mrefs: Vec<&FiniteFunction> = minors.iter().collect();
        let rhs = apply_pointwise(g, &mrefs).unwrap();
        if lhs != rhs {
            return Err(format!(
                "g(f..)^s != g(f^s..) for g={}, s={:?}",
                g.table_string(),
                sigma.images()
            ));
        }
        n += 1;
    }
    Ok(n)
}

pub fn pointwise_commutation(max_size: usize, max_arity: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut n = 0;
    for a in 1..=max_size {
        for b in 1..=max_size {
            for g_arity in 1..=2 {
                for g in functions(b, b, g_arity, &mut rng) {
                    let k = rng.gen_range(1..=max_arity);
                    let fs: Vec<FiniteFunction> = (0..g_arity)
                        .map(|_| random_function(&mut rng, a, b, k))
                        .collect();
                    for l in 1..=max_arity {
                        n += commutation_case(&g, &fs, l)?;
                    }
                }
            }
        }
    }
    Ok(n)
}

fn subsets_of(items: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    (0..1usize << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, t)| t.clone())
                .collect()
        })
        .collect()
}

pub fn random_pair(rng: &mut impl Rng, m: usize, a: usize, b: usize) -> RelationPair {
    let p: Vec<Vec<usize>> = Tuples::new(a, m).filter(|_| rng.gen_bool(0.5)).collect();
    let q: Vec<Vec<usize>> = Tuples::new(b, m).filter(|_| rng.gen_bool(0.6)).collect();
    RelationPair::new(m, a, b, p, q).unwrap()
}

fn pol_case(pair: &RelationPair, max_arity: usize, budget: Budget) -> Check {
    let (a, b) = (pair.source_size(), pair.target_size());
    let mut n = 0;
    for k in 1..=max_arity {
        let sig = Signature::new(a, b, k).unwrap();
        if (b as f64).powi(sig.table_len() as i32) > 4096.0 {
            break;
        }
        let pol = pol_slice(std::slice::from_ref(pair), sig, budget).map_err(|e| e.to_string())?;
        let oracle: Vec<FiniteFunction> = Tuples::new(b, sig.table_len())
            .map(|t| FiniteFunction::new(sig, t.into_iter().map(|v| v as u8).collect()).unwrap())
            .filter(|f| naive_preserves(f, pair))
            .collect();
        if pol.members() != oracle.as_slice() {
            return Err(format!(
                "Pol slice of arity {k} differs from brute force ({} vs {})",
                pol.len(),
                oracle.len()
            ));
        }
        for f in pol.iter() {
            for l in 1..=max_arity {
                for sigma in MinorMap::all(k, l) {
                    let g = f.minor(&sigma).unwrap();
                    if !is_polymorphism(&g, pair).unwrap() {
                        return Err(format!(
                            "minor {} of polymorphism {} is not one",
                            g.table_string(),
                            f.table_string()
                        ));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// Every pair over sizes up to 2 and arity up to 2, then random pairs over
/// sizes up to `max_size`.
pub fn pol_minor_closure(max_size: usize, max_arity: usize, samples: usize, seed: u64) -> Check {
    let budget = Budget::default();
    let mut n = 0;
    for a in 1..=2 {
        for b in 1..=2 {
            for m in 1..=2 {
                let ps = subsets_of(&Tuples::new(a, m).collect::<Vec<_>>());
                let qs = subsets_of(&Tuples::new(b, m).collect::<Vec<_>>());
                for p in &ps {
                    for q in &qs {
                        let pair = RelationPair::new(m, a, b, p.clone(), q.clone()).unwrap();
                        n += pol_case(&pair, max_arity.min(2), budget)?;
                    }
                }
            }
        }
    }
    let mut rng = rng(seed);
    for _ in 0..samples {
        let (a, b) = (rng.gen_range(1..=max_size), rng.gen_range(1..=max_size));
        let m = rng.gen_range(1..=3);
        n += pol_case(&random_pair(&mut rng, m, a, b), max_arity, budget)?;
    }
    Ok(n)
}

fn closure_case(
    gens: &FunctionSet,
    extra: &FunctionSet,
    algebra: &Algebra,
    budget: Budget,
) -> Check {
    let sig = gens.signature();
    let close = |s: &FunctionSet| subalgebra_close(s, algebra, budget).map_err(|e| e.to_string());
    let c = close(gens)?;
    if !gens.is_subset(&c) {
        return Err("closure is not extensive".into());
    }
    if close(&c)? != c {
        return Err("closure is not idempotent".into());
    }
    let bigger = FunctionSet::new(sig, gens.iter().chain(extra.iter()).cloned()).unwrap();
    if !c.is_subset(&close(&bigger)?) {
        return Err("closure is not monotone".into());
    }
    let plain = subalgebra_close_worklist(gens, algebra, budget).map_err(|e| e.to_string())?;
    if plain != c {
        return Err(format!(
            "fast path and worklist disagree ({} vs {})",
            c.len(),
            plain.len()
        ));
    }
    let tables: Vec<Vec<u8>> = gens.iter().map(|f| f.table().to_vec()).collect();
    if let Some(naive) = naive_closure(&tables, algebra, 400) {
        let got: Vec<Vec<u8>> = c.iter().map(|f| f.table().to_vec()).collect();
        if got != naive {
            return Err("closure differs from brute-force saturation".into());
        }
    }
    Ok(1)
}

/// Ambient powers `B^(A^k)` for closure cases are kept to at most this many
/// elements so the brute-force comparisons stay cheap.
pub const CLOSURE_SPACE: f64 = 4096.0;

/// A random signature `a^k -> c` with `c^(a^k)` within [`CLOSURE_SPACE`].
pub fn closure_signature(
    rng: &mut impl Rng,
    c: usize,
    max_size: usize,
    max_arity: usize,
) -> Signature {
    let options: Vec<(usize, usize)> = (1..=max_size)
        .flat_map(|a| (1..=max_arity).map(move |k| (a, k)))
        .filter(|&(a, k)| (c as f64).powf((a as f64).powi(k as i32)) <= CLOSURE_SPACE)
        .collect();
    let (a, k) = *options.choose(rng).expect("a^1 always fits");
    Signature::new(a, c, k).unwrap()
}

fn random_set(rng: &mut impl Rng, sig: Signature, max: usize) -> FunctionSet {
    let count = rng.gen_range(0..=max);
    let fs = (0..count).map(|_| random_function(rng, sig.source_size, sig.target_size, sig.arity));
    FunctionSet::new(sig, fs).unwrap()
}

/// Single-operation algebras of arity up to 2 on up to 3 elements (all of
/// them when few enough), each against seeded generator sets.
pub fn closure_laws(max_size: usize, max_arity: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let budget = Budget::default();
    let mut n = 0;
    for c in 1..=max_size {
        for op_arity in 1..=2 {
            for algebra in single_op_algebras(c, op_arity, &mut rng) {
                for _ in 0..4 {
                    let sig = closure_signature(&mut rng, c, max_size, max_arity);
                    let gens = random_set(&mut rng, sig, 3);
                    let extra = random_set(&mut rng, sig, 2);
                    n += closure_case(&gens, &extra, &algebra, budget)?;
                }
            }
        }
    }
    Ok(n)
}

fn round_trip_case(artifact: &text::Artifact) -> Check {
    let written = text::format_artifact(artifact);
    let read = text::parse_artifact(&written)
        .map_err(|e| format!("{e} while reading back:\n{written}"))?;
    if &read != artifact {
        return Err(format!("parse(format(x)) != x for\n{written}"));
    }
    // Noise that the canonical form drops.
    let noisy: String = written
        .lines()
        .map(|l| {
            format!(
                "  {}   # note\n\n",
                l.split_whitespace().collect::<Vec<_>>().join("   ")
            )
        })
        .collect();
    let again = text::format_artifact(&text::parse_artifact(&noisy).map_err(|e| e.to_string())?);
    if again != written {
        return Err(format!(
            "canonical form not restored:\n{again}\nvs\n{written}"
        ));
    }
    Ok(1)
}

pub fn random_artifact(rng: &mut impl Rng, max_size: usize, max_arity: usize) -> text::Artifact {
    let c = rng.gen_range(1..=max_size);
    let a = rng.gen_range(1..=max_size);
    let k = rng.gen_range(1..=max_arity);
    match rng.gen_range(0..4) {
        0 => text::Artifact::Algebra(random_algebra(rng, c, 3, max_arity)),
        1 => text::Artifact::Functions(
            (0..rng.gen_range(1..=3))
                .map(|i| text::NamedFunction {
                    name: format!("g{i}"),
                    function: random_function(rng, a, c, k),
                })
                .collect(),
        ),
        2 => text::Artifact::Pairs(
            (0..rng.gen_range(1..=2))
                .map(|_| {
                    let m = rng.gen_range(1..=3);
                    random_pair(rng, m, a, c)
                })
                .collect(),
        ),
        _ => text::Artifact::Set(random_set(rng, Signature::new(a, c, k).unwrap(), 4)),
    }
}

/// Every function and single-operation algebra in the small spaces, plus
/// `samples` random artifacts of every kind.
pub fn round_trip(max_size: usize, max_arity: usize, samples: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut n = 0;
    for a in 1..=max_size {
        for b in 1..=max_size {
            for k in 1..=max_arity {
                let fs = functions(a, b, k, &mut rng);
                for f in &fs {
                    n += round_trip_case(&text::Artifact::Functions(vec![text::NamedFunction {
                        name: "f".into(),
                        function: f.clone(),
                    }]))?;
                }
                n += round_trip_case(&text::Artifact::Set(
                    FunctionSet::new(fs[0].signature(), fs).unwrap(),
                ))?;
            }
        }
    }
    for _ in 0..samples {
        n += round_trip_case(&random_artifact(&mut rng, max_size, max_arity))?;
    }
    Ok(n)
}

/// `count` seeded cases drawn across all properties, on sizes up to 4 and
/// arities up to 4.
pub fn random_cases(count: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let budget = Budget::default();
    let mut n = 0;
    for i in 0..count {
        let a = rng.gen_range(1..=4);
        let b = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=3);
        let l = rng.gen_range(1..=3);
        match i % 5 {
            0 => {
                let f = random_function(&mut rng, a, b, k);
                minor_functoriality_case(&f, l, rng.gen_range(1..=3))?;
            }
            1 => {
                let g_arity = rng.gen_range(1..=3);
                let g = random_function(&mut rng, b, b, g_arity);
                let fs: Vec<_> = (0..g_arity)
                    .map(|_| random_function(&mut rng, a, b, k))
                    .collect();
                commutation_case(&g, &fs, l)?;
            }
            2 => {
                let m = rng.gen_range(1..=3);
                pol_case(&random_pair(&mut rng, m, a.min(3), b.min(3)), 2, budget)?;
            }
            3 => {
                let algebra = random_algebra(&mut rng, b.min(3), 2, 2);
                let sig = closure_signature(&mut rng, b.min(3), 3, 3);
                let gens = random_set(&mut rng, sig, 3);
                let extra = random_set(&mut rng, sig, 2);
                closure_case(&gens, &extra, &algebra, budget)?;
            }
            _ => {
                round_trip_case(&random_artifact(&mut rng, 4, 3))?;
            }
        }
        n += 1;
    }
    Ok(n)
}
