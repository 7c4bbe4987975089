//! Subalgebra generation for algebras with a majority term operation.
//!
//! For such algebras a subalgebra of `B^W` is exactly the set of tuples whose
//! projections onto every pair of coordinates lie in the corresponding
//! projection of the subalgebra (Baker–Pixley), and the projection of the
//! generated subalgebra is the subalgebra of `B^2` generated by the projected
//! generators. Both facts together let us enumerate the closure by
//! backtracking over coordinates instead of saturating a cubic worklist.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::function::FiniteFunction;

use super::engine::{close_tables, worklist, ByteTables, Outcome};

/// Searches the ternary term operations for a majority operation. Gives up
/// (returning `false`) once the search exceeds `limit` elements.
pub(crate) fn has_majority_term(algebra: &Algebra, limit: usize) -> bool {
    let c = algebra.carrier_size();
    let Ok(gens) = (0..3)
        .map(|i| FiniteFunction::projection(c, 3, i).map(FiniteFunction::into_table))
        .collect::<Result<Vec<_>>>()
    else {
        return false;
    };
    let mut gens = gens;
    gens.sort_unstable();
    let mut is_majority = |t: &[u8]| crate::terms::table_is_near_unanimity(t, c, 3);
    matches!(
        close_tables(
            algebra,
            c * c * c,
            gens,
            limit,
            "majority search",
            &mut is_majority
        ),
        Ok(Outcome::Found(_))
    )
}

/// Closure of `gens` (sorted, distinct, all of length `len`) assuming
/// `algebra` has a majority term operation.
pub(crate) fn close(
    algebra: &Algebra,
    len: usize,
    gens: &[Box<[u8]>],
    limit: usize,
    what: &str,
) -> Result<Vec<Box<[u8]>>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let c = algebra.carrier_size();

    let unary = |i: usize| -> Result<Vec<bool>> {
        let mut col: Vec<Box<[u8]>> = gens.iter().map(|g| vec![g[i]].into()).collect();
        col.sort_unstable();
        col.dedup();
        let mut allowed = vec![false; c];
        for t in closed(worklist(
            &ByteTables::new(algebra, 1),
            col,
            usize::MAX,
            what,
            &mut |_| false,
        )?) {
            allowed[t[0] as usize] = true;
        }
        Ok(allowed)
    };
    let values: Vec<Vec<bool>> = (0..len).map(unary).collect::<Result<_>>()?;

    // pairs[j][i] for j < i: allowed (value at j, value at i), row-major c x c.
    let mut pairs: Vec<Vec<Vec<bool>>> = vec![Vec::new(); len];
    for i in 0..len {
        for j in 0..i {
            let mut col: Vec<Box<[u8]>> = gens.iter().map(|g| vec![g[j], g[i]].into()).collect();
            col.sort_unstable();
            col.dedup();
            let mut allowed = vec![false; c * c];
            for t in closed(worklist(
                &ByteTables::new(algebra, 2),
                col,
                usize::MAX,
                what,
                &mut |_| false,
            )?) {
                allowed[t[0] as usize * c + t[1] as usize] = true;
            }
            pairs[j].push(allowed);
        }
    }
    // pairs[j] was filled for i = j+1.., so pairs[j][i - j - 1] is the (j, i) table.

    let mut out = Vec::new();
    let mut current = vec![0u8; len];
    extend(0, &mut current, &values, &pairs, c, limit, what, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    i: usize,
    current: &mut [u8],
    values: &[Vec<bool>],
    pairs: &[Vec<Vec<bool>>],
    c: usize,
    limit: usize,
    what: &str,
    out: &mut Vec<Box<[u8]>>,
) -> Result<()> {
    if i == current.len() {
        if out.len() == limit {
            return Err(Error::Budget {
                what: what.to_string(),
                size: limit as u128 + 1,
                limit,
            });
        }
        out.push(current.into());
        return Ok(());
    }
    for v in 0..c {
        if !values[i][v] {
            continue;
        }
        let consistent = (0..i).all(|j| pairs[j][i - j - 1][current[j] as usize * c + v]);
        if consistent {
            current[i] = v as u8;
            extend(i + 1, current, values, pairs, c, limit, what, out)?;
        }
    }
    Ok(())
}

fn closed(o: Outcome<Box<[u8]>>) -> Vec<Box<[u8]>> {
    match o {
        Outcome::Closed(v) => v,
        Outcome::Found(_) => unreachable!("no stop predicate"),
    }
}
