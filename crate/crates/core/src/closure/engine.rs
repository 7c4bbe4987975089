//! Worklist fixpoint shared by every closure in the crate.
//!
//! Elements are processed in insertion order. When element `n` is processed,
//! each operation is applied to exactly the argument tuples over
//! `elems[0..=n]` whose largest index is `n`, so every tuple is evaluated
//! once over the whole run. New elements found while processing `n` are
//! appended in canonical order.

use std::hash::Hash;

use rustc_hash::FxHashSet;

use crate::algebra::Algebra;
use crate::error::{Error, Result};

pub(crate) trait Repr {
    type Elem: Clone + Eq + Hash + Ord;

    fn arities(&self) -> Vec<usize>;
    fn apply(&self, op: usize, args: &[&Self::Elem]) -> Self::Elem;
    fn seen(&self) -> Box<dyn Seen<Self::Elem>>;
}

pub(crate) trait Seen<E> {
    /// Returns `true` if `e` was not present before.
    fn insert(&mut self, e: &E) -> bool;
}

impl<E: Clone + Eq + Hash> Seen<E> for FxHashSet<E> {
    fn insert(&mut self, e: &E) -> bool {
        if self.contains(e) {
            false
        } else {
            FxHashSet::insert(self, e.clone())
        }
    }
}

struct BitSeen(Vec<u64>);

impl Seen<u64> for BitSeen {
    fn insert(&mut self, &e: &u64) -> bool {
        let (word, bit) = ((e >> 6) as usize, e & 63);
        let fresh = self.0[word] & (1 << bit) == 0;
        self.0[word] |= 1 << bit;
        fresh
    }
}

/// Boolean tables of at most 64 entries packed into a word, entry `j` at bit
/// `width - 1 - j` so that numeric order is table order.
pub(crate) struct PackedBoolean {
    width: usize,
    mask: u64,
    ops: Vec<PackedOp>,
}

struct PackedOp {
    arity: usize,
    // Argument patterns (bit `arity - 1 - j` = value of argument j) mapped to 1.
    ones: Vec<u32>,
}

impl PackedBoolean {
    pub(crate) const MAX_WIDTH: usize = 64;
    const BITSET_WIDTH: usize = 24;

    pub(crate) fn new(algebra: &Algebra, width: usize) -> Self {
        debug_assert_eq!(algebra.carrier_size(), 2);
        debug_assert!((1..=Self::MAX_WIDTH).contains(&width));
        let ops = algebra
            .ops()
            .iter()
            .map(|op| PackedOp {
                arity: op.arity(),
                ones: op
                    .function
                    .table()
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v == 1)
                    .map(|(i, _)| i as u32)
                    .collect(),
            })
            .collect();
        PackedBoolean {
            width,
            mask: if width == 64 {
                u64::MAX
            } else {
                (1u64 << width) - 1
            },
            ops,
        }
    }

    pub(crate) fn pack(&self, table: &[u8]) -> u64 {
        table.iter().fold(0u64, |acc, &v| (acc << 1) | v as u64)
    }

    pub(crate) fn unpack(&self, word: u64) -> Box<[u8]> {
        (0..self.width)
            .map(|j| ((word >> (self.width - 1 - j)) & 1) as u8)
            .collect()
    }
}

impl Repr for PackedBoolean {
    type Elem = u64;

    fn arities(&self) -> Vec<usize> {
        self.ops.iter().map(|o| o.arity).collect()
    }

    fn apply(&self, op: usize, args: &[&u64]) -> u64 {
        let op = &self.ops[op];
        let m = op.arity;
        let mut out = 0u64;
        for &pattern in &op.ones {
            let mut term = self.mask;
            for (j, &&x) in args.iter().enumerate() {
                term &= if (pattern >> (m - 1 - j)) & 1 == 1 {
                    x
                } else {
                    !x
                };
            }
            out |= term;
        }
        out & self.mask
    }

    fn seen(&self) -> Box<dyn Seen<u64>> {
        if self.width <= Self::BITSET_WIDTH {
            Box::new(BitSeen(vec![0; (1usize << self.width).div_ceil(64)]))
        } else {
            Box::new(FxHashSet::<u64>::default())
        }
    }
}

/// Byte tables over any carrier.
pub(crate) struct ByteTables {
    carrier: usize,
    len: usize,
    ops: Vec<(usize, Box<[u8]>)>,
}

impl ByteTables {
    pub(crate) fn new(algebra: &Algebra, len: usize) -> Self {
        ByteTables {
            carrier: algebra.carrier_size(),
            len,
            ops: algebra
                .ops()
                .iter()
                .map(|o| (o.arity(), o.function.table().into()))
                .collect(),
        }
    }
}

impl Repr for ByteTables {
    type Elem = Box<[u8]>;

    fn arities(&self) -> Vec<usize> {
        self.ops.iter().map(|(a, _)| *a).collect()
    }

    fn apply(&self, op: usize, args: &[&Box<[u8]>]) -> Box<[u8]> {
        let table = &self.ops[op].1;
        (0..self.len)
            .map(|x| {
                let idx = args
                    .iter()
                    .fold(0usize, |acc, g| acc * self.carrier + g[x] as usize);
                table[idx]
            })
            .collect()
    }

    fn seen(&self) -> Box<dyn Seen<Box<[u8]>>> {
        Box::new(FxHashSet::<Box<[u8]>>::default())
    }
}

pub(crate) enum Outcome<E> {
    Closed(Vec<E>),
    Found(E),
}

/// Closes `gens` (canonical order, deduplicated) under every operation of
/// `repr`, failing once more than `limit` elements exist. Stops early with
/// [`Outcome::Found`] on the first element accepted by `stop`.
pub(crate) fn worklist<R: Repr>(
    repr: &R,
    gens: Vec<R::Elem>,
    limit: usize,
    what: &str,
    stop: &mut dyn FnMut(&R::Elem) -> bool,
) -> Result<Outcome<R::Elem>> {
    let arities = repr.arities();
    let max_arity = arities.iter().copied().max().unwrap_or(0);
    let mut seen = repr.seen();
    let mut elems: Vec<R::Elem> = Vec::with_capacity(gens.len());
    for g in gens {
        if seen.insert(&g) {
            if stop(&g) {
                return Ok(Outcome::Found(g));
            }
            elems.push(g);
        }
    }
    check_limit(elems.len(), limit, what)?;

    let mut fresh: Vec<R::Elem> = Vec::new();
    let mut idx: Vec<usize> = Vec::new();
    let mut next = 0;
    while next < elems.len() {
        let newest = next;
        let mut args: Vec<&R::Elem> = Vec::with_capacity(max_arity);
        for (op, &m) in arities.iter().enumerate() {
            // Tuples whose first occurrence of `newest` is at position p.
            for p in 0..m {
                if p > 0 && newest == 0 {
                    break;
                }
                idx.clear();
                idx.extend((0..m).map(|j| if j == p { newest } else { 0 }));
                loop {
                    args.clear();
                    args.extend(idx.iter().map(|&i| &elems[i]));
                    let value = repr.apply(op, &args);
                    if seen.insert(&value) {
                        if stop(&value) {
                            return Ok(Outcome::Found(value));
                        }
                        fresh.push(value);
                        check_limit(elems.len() + fresh.len(), limit, what)?;
                    }
                    if !advance(&mut idx, p, newest) {
                        break;
                    }
                }
            }
        }
        drop(args);
        fresh.sort_unstable();
        elems.append(&mut fresh);
        next += 1;
    }
    elems.sort_unstable();
    Ok(Outcome::Closed(elems))
}

// Odometer: positions before p range over [0, newest), position p is fixed,
// positions after p range over [0, newest].
fn advance(idx: &mut [usize], p: usize, newest: usize) -> bool {
    for j in (0..idx.len()).rev() {
        if j == p {
            continue;
        }
        let bound = if j < p { newest } else { newest + 1 };
        idx[j] += 1;
        if idx[j] < bound {
            return true;
        }
        idx[j] = 0;
    }
    false
}

fn check_limit(size: usize, limit: usize, what: &str) -> Result<()> {
    if size > limit {
        return Err(Error::Budget {
            what: what.to_string(),
            size: size as u128,
            limit,
        });
    }
    Ok(())
}

/// Closure of byte tables of length `len` under `algebra`, picking the packed
/// representation when it applies. Input tables must be sorted and distinct.
pub(crate) fn close_tables(
    algebra: &Algebra,
    len: usize,
    tables: Vec<Box<[u8]>>,
    limit: usize,
    what: &str,
    stop: &mut dyn FnMut(&[u8]) -> bool,
) -> Result<Outcome<Box<[u8]>>> {
    if algebra.carrier_size() == 2 && len <= PackedBoolean::MAX_WIDTH {
        let repr = PackedBoolean::new(algebra, len);
        let gens = tables.iter().map(|t| repr.pack(t)).collect();
        let mut packed_stop = |w: &u64| stop(&repr.unpack(*w));
        Ok(
            match worklist(&repr, gens, limit, what, &mut packed_stop)? {
                Outcome::Closed(words) => {
                    Outcome::Closed(words.into_iter().map(|w| repr.unpack(w)).collect())
                }
                Outcome::Found(w) => Outcome::Found(repr.unpack(w)),
            },
        )
    } else {
        let repr = ByteTables::new(algebra, len);
        #[allow(clippy::borrowed_box)]
        worklist(&repr, tables, limit, what, &mut |t: &Box<[u8]>| stop(t))
    }
}
