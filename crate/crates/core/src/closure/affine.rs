//! Subalgebra generation for two-element algebras whose basic operations are
//! all affine over GF(2) and which have `x+y+z` as a term operation.
//!
//! Subuniverses of powers of such an algebra are affine subspaces, and an
//! affine operation maps `(o+L)^k` into `c + (a_1+..+a_k)o + L`, a coset that
//! contains its own base point. So the closure is the affine hull of the
//! generators together with those base points, iterated to a fixpoint.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::function::{FiniteFunction, Tuples};

use super::engine::{close_tables, Outcome};

const MINORITY: [u8; 8] = [0, 1, 1, 0, 1, 0, 0, 1];

/// `f(x) = c + sum a_i x_i` over GF(2), as `(c, a)`.
fn affine_form(f: &FiniteFunction) -> Option<(bool, Vec<bool>)> {
    let k = f.arity();
    let c = f.table()[0] == 1;
    let a: Vec<bool> = (0..k)
        .map(|i| (f.table()[1 << (k - 1 - i)] == 1) ^ c)
        .collect();
    let mut tuples = Tuples::new(2, k);
    let mut index = 0;
    while let Some(x) = tuples.current() {
        let v = x
            .iter()
            .zip(&a)
            .fold(c, |acc, (&xi, &ai)| acc ^ (xi == 1 && ai));
        if (f.table()[index] == 1) != v {
            return None;
        }
        index += 1;
        tuples.advance();
    }
    Some((c, a))
}

/// The affine forms of the basic operations, when the fast path applies.
pub(crate) fn forms(algebra: &Algebra) -> Option<Vec<(bool, Vec<bool>)>> {
    if algebra.carrier_size() != 2 {
        return None;
    }
    let forms = algebra
        .ops()
        .iter()
        .map(|o| affine_form(&o.function))
        .collect::<Option<Vec<_>>>()?;
    let mut gens: Vec<Box<[u8]>> = (0..3)
        .map(|i| FiniteFunction::projection(2, 3, i).map(FiniteFunction::into_table))
        .collect::<Result<_>>()
        .ok()?;
    gens.sort_unstable();
    // Affine clones on {0,1} have at most 16 ternary members.
    let found = close_tables(
        algebra,
        8,
        gens,
        16,
        "minority search",
        &mut |t: &[u8]| t == MINORITY,
    );
    matches!(found, Ok(Outcome::Found(_))).then_some(forms)
}

type Vector = Vec<u64>;

struct Hull {
    words: usize,
    origin: Option<Vector>,
    /// Echelon basis: `(pivot bit, vector)`, each pivot cleared in the others.
    basis: Vec<(usize, Vector)>,
}

impl Hull {
    fn reduce(&self, mut v: Vector) -> Vector {
        for (p, b) in &self.basis {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
        v
    }

    /// Adds a point; true if the hull grew.
    fn insert(&mut self, point: Vector) -> bool {
        let Some(origin) = &self.origin else {
            self.origin = Some(point);
            return true;
        };
        let diff: Vector = point.iter().zip(origin).map(|(x, y)| x ^ y).collect();
        let v = self.reduce(diff);
        let Some(p) = (0..self.words * 64).find(|&p| v[p / 64] >> (p % 64) & 1 == 1) else {
            return false;
        };
        for (_, b) in &mut self.basis {
            if b[p / 64] >> (p % 64) & 1 == 1 {
                b.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
            }
        }
        self.basis.push((p, v));
        true
    }
}

fn pack(table: &[u8], words: usize) -> Vector {
    let mut v = vec![0u64; words];
    for (j, &x) in table.iter().enumerate() {
        v[j / 64] |= u64::from(x) << (j % 64);
    }
    v
}

/// Closure of `gens` (entries all of length `len`) under the affine
/// operations `forms`, assuming `x+y+z` is a term operation.
pub(crate) fn close(
    forms: &[(bool, Vec<bool>)],
    len: usize,
    gens: &[Box<[u8]>],
    limit: usize,
    what: &str,
) -> Result<Vec<Box<[u8]>>> {
    let words = len.div_ceil(64);
    let mut ones = vec![u64::MAX; words];
    if len % 64 != 0 {
        ones[words - 1] = (1u64 << (len % 64)) - 1;
    }
    let mut hull = Hull {
        words,
        origin: None,
        basis: Vec::new(),
    };
    for g in gens {
        hull.insert(pack(g, words));
    }
    let Some(origin) = hull.origin.clone() else {
        return Ok(Vec::new());
    };
    loop {
        let mut grew = false;
        for (c, a) in forms {
            let odd = a.iter().filter(|&&x| x).count() % 2 == 1;
            let base = if odd { origin.clone() } else { vec![0; words] };
            let point = if *c {
                base.iter().zip(&ones).map(|(x, y)| x ^ y).collect()
            } else {
                base
            };
            grew |= hull.insert(point);
        }
        if !grew {
            break;
        }
    }
    let dim = hull.basis.len();
    if dim >= usize::BITS as usize || 1usize << dim > limit {
        return Err(Error::Budget {
            what: what.to_string(),
            size: 1u128 << dim.min(127),
            limit,
        });
    }
    let mut out = Vec::with_capacity(1 << dim);
    let mut v = origin;
    // Gray code walk over the span.
    for step in 0..1usize << dim {
        if step > 0 {
            let (_, b) = &hull.basis[step.trailing_zeros() as usize];
            v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
        }
        let table: Box<[u8]> = (0..len)
            .map(|j| (v[j / 64] >> (j % 64) & 1) as u8)
            .collect();
        out.push(table);
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::boolean;

    #[test]
    fn detects_affine_algebras_with_minority() {
        assert!(forms(&boolean::affine_with_constants()).is_some());
        assert!(forms(&boolean::minority()).is_some());
        assert!(forms(&boolean::negation()).is_none());
        assert!(forms(&boolean::meet()).is_none());
        assert!(forms(&boolean::majority()).is_none());
    }

    #[test]
    fn affine_form_rejects_nonlinear() {
        let and = FiniteFunction::from_digits(2, 2, 2, "0001").unwrap();
        assert!(affine_form(&and).is_none());
        let xnor = FiniteFunction::from_digits(2, 2, 2, "1001").unwrap();
        assert_eq!(affine_form(&xnor), Some((true, vec![true, true])));
    }

    #[test]
    fn hull_of_two_points_with_constants() {
        let f = forms(&boolean::affine_with_constants()).unwrap();
        let gens: Vec<Box<[u8]>> = vec![vec![0, 1, 1, 1].into()];
        let out = close(&f, 4, &gens, 100, "t").unwrap();
        // span of 0111, 0000, 1111
        let want: Vec<Box<[u8]>> = vec![
            vec![0, 0, 0, 0].into(),
            vec![0, 1, 1, 1].into(),
            vec![1, 0, 0, 0].into(),
            vec![1, 1, 1, 1].into(),
        ];
        assert_eq!(out, want);
    }
}
