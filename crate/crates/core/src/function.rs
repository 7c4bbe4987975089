//! Finite functions `A^k -> B` stored as value tables, and the minor maps
//! acting on them.
//!
//! Carriers are `0..size`. A tuple `(x_1, ..., x_k)` lives at table index
//! `sum x_i * |A|^(k-i)`, so the first argument is the most significant digit
//! and iterating the table in order visits tuples lexicographically.

use std::fmt;

use crate::error::{Error, Result};

/// Largest carrier the `u8` table entries can hold.
pub const MAX_CARRIER: usize = 256;

/// Largest table this crate will allocate.
pub const MAX_TABLE_LEN: usize = 1 << 24;

/// Source size, target size and arity shared by a family of functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub source_size: usize,
    pub target_size: usize,
    pub arity: usize,
}

impl Signature {
    pub fn new(source_size: usize, target_size: usize, arity: usize) -> Result<Self> {
        check_carrier("source", source_size)?;
        check_carrier("target", target_size)?;
        if arity == 0 {
            return Err(Error::input("arity must be at least 1"));
        }
        table_len(source_size, arity)?;
        Ok(Signature {
            source_size,
            target_size,
            arity,
        })
    }

    /// Number of entries in a table of this signature.
    pub fn table_len(&self) -> usize {
        self.source_size.pow(self.arity as u32)
    }

    /// Number of distinct functions with this signature, saturating.
    pub fn function_count(&self) -> u128 {
        let mut count: u128 = 1;
        for _ in 0..self.table_len() {
            count = count.saturating_mul(self.target_size as u128);
            if count == u128::MAX {
                break;
            }
        }
        count
    }

    pub fn with_arity(self, arity: usize) -> Result<Self> {
        Signature::new(self.source_size, self.target_size, arity)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}^{} -> {}",
            self.source_size, self.arity, self.target_size
        )
    }
}

fn check_carrier(role: &str, size: usize) -> Result<()> {
    if size == 0 || size > MAX_CARRIER {
        return Err(Error::input(format!(
            "{role} size {size} outside 1..={MAX_CARRIER}"
        )));
    }
    Ok(())
}

/// `size^arity`, rejecting anything larger than [`MAX_TABLE_LEN`].
pub fn table_len(size: usize, arity: usize) -> Result<usize> {
    let mut len: usize = 1;
    for _ in 0..arity {
        len = len
            .checked_mul(size)
            .filter(|&l| l <= MAX_TABLE_LEN)
            .ok_or_else(|| {
                Error::input(format!(
                    "table for {size}^{arity} exceeds {MAX_TABLE_LEN} entries"
                ))
            })?;
    }
    Ok(len)
}

/// Table index of a tuple.
pub fn tuple_index(size: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * size + x)
}

/// Tuple stored at a table index.
pub fn index_tuple(size: usize, arity: usize, mut index: usize) -> Vec<usize> {
    let mut tuple = vec![0; arity];
    for slot in tuple.iter_mut().rev() {
        *slot = index % size;
        index /= size;
    }
    tuple
}

/// Odometer over `0..size` tuples of fixed length in canonical order.
#[derive(Debug, Clone)]
pub struct Tuples {
    size: usize,
    current: Vec<usize>,
    done: bool,
}

impl Tuples {
    pub fn new(size: usize, len: usize) -> Self {
        Tuples {
            size,
            current: vec![0; len],
            done: size == 0 && len > 0,
        }
    }

    /// Advances to the next tuple; returns `false` once exhausted.
    pub fn advance(&mut self) -> bool {
        for slot in self.current.iter_mut().rev() {
            *slot += 1;
            if *slot < self.size {
                return true;
            }
            *slot = 0;
        }
        self.done = true;
        false
    }

    pub fn current(&self) -> Option<&[usize]> {
        (!self.done).then_some(self.current.as_slice())
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.advance();
        Some(out)
    }
}

/// A total map `[k] -> [l]` with 1-based images, used to form minors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorMap {
    codomain_arity: usize,
    images: Vec<usize>,
}

impl MinorMap {
    /// `images[i - 1]` is the image of `i`; every image must lie in `1..=codomain_arity`.
    pub fn new(codomain_arity: usize, images: Vec<usize>) -> Result<Self> {
        if images.is_empty() || codomain_arity == 0 {
            return Err(Error::input(
                "minor maps need positive domain and codomain arity",
            ));
        }
        if let Some(&bad) = images.iter().find(|&&j| j == 0 || j > codomain_arity) {
            return Err(Error::input(format!(
                "image {bad} outside [1, {codomain_arity}]"
            )));
        }
        Ok(MinorMap {
            codomain_arity,
            images,
        })
    }

    pub fn identity(arity: usize) -> Self {
        MinorMap {
            codomain_arity: arity,
            images: (1..=arity).collect(),
        }
    }

    pub fn domain_arity(&self) -> usize {
        self.images.len()
    }

    pub fn codomain_arity(&self) -> usize {
        self.codomain_arity
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `i -> then(self(i))`, i.e. the composite `then ∘ self`.
    pub fn then(&self, then: &MinorMap) -> Result<MinorMap> {
        if then.domain_arity() != self.codomain_arity {
            return Err(Error::input(format!(
                "cannot compose [{}]->[{}] with [{}]->[{}]",
                self.domain_arity(),
                self.codomain_arity,
                then.domain_arity(),
                then.codomain_arity
            )));
        }
        Ok(MinorMap {
            codomain_arity: then.codomain_arity,
            images: self.images.iter().map(|&j| then.images[j - 1]).collect(),
        })
    }

    /// Every map `[domain] -> [codomain]`, in lexicographic order of images.
    pub fn all(domain: usize, codomain: usize) -> impl Iterator<Item = MinorMap> {
        Tuples::new(codomain, domain).map(move |t| MinorMap {
            codomain_arity: codomain,
            images: t.into_iter().map(|j| j + 1).collect(),
        })
    }
}

/// A total function `A^k -> B` given by its value table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFunction {
    sig: Signature,
    table: Box<[u8]>,
}

impl fmt::Debug for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteFunction({}, {})", self.sig, self.table_string())
    }
}

impl FiniteFunction {
    pub fn new(sig: Signature, table: Vec<u8>) -> Result<Self> {
        if table.len() != sig.table_len() {
            return Err(Error::input(format!(
                "table has {} entries, expected {} for {sig}",
                table.len(),
                sig.table_len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= sig.target_size) {
            return Err(Error::input(format!(
                "table entry {bad} outside target of size {}",
                sig.target_size
            )));
        }
        Ok(FiniteFunction {
            sig,
            table: table.into_boxed_slice(),
        })
    }

    /// Caller guarantees length and range.
    pub(crate) fn from_raw(sig: Signature, table: Box<[u8]>) -> Self {
        debug_assert_eq!(table.len(), sig.table_len());
        FiniteFunction { sig, table }
    }

    /// Builds a function from a table written as a digit string, e.g. `"0110"`.
    pub fn from_digits(
        source_size: usize,
        target_size: usize,
        arity: usize,
        digits: &str,
    ) -> Result<Self> {
        let sig = Signature::new(source_size, target_size, arity)?;
        let table = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::input(format!("'{c}' is not a digit")))
            })
            .collect::<Result<Vec<u8>>>()?;
        FiniteFunction::new(sig, table)
    }

    /// Tabulates `rule` over all tuples in canonical order.
    pub fn from_fn(sig: Signature, mut rule: impl FnMut(&[usize]) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(sig.table_len());
        let mut tuples = Tuples::new(sig.source_size, sig.arity);
        while let Some(t) = tuples.current() {
            let v = rule(t);
            if v >= sig.target_size {
                return Err(Error::input(format!(
                    "value {v} outside target of size {}",
                    sig.target_size
                )));
            }
            table.push(v as u8);
            tuples.advance();
        }
        Ok(FiniteFunction::from_raw(sig, table.into_boxed_slice()))
    }

    pub fn constant(sig: Signature, value: usize) -> Result<Self> {
        FiniteFunction::from_fn(sig, |_| value)
    }

    /// The `index`-th (0-based) projection `size^arity -> size`.
    pub fn projection(size: usize, arity: usize, index: usize) -> Result<Self> {
        if index >= arity {
            return Err(Error::input(format!(
                "projection index {index} outside arity {arity}"
            )));
        }
        FiniteFunction::from_fn(Signature::new(size, size, arity)?, |t| t[index])
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn source_size(&self) -> usize {
        self.sig.source_size
    }

    pub fn target_size(&self) -> usize {
        self.sig.target_size
    }

    pub fn arity(&self) -> usize {
        self.sig.arity
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn into_table(self) -> Box<[u8]> {
        self.table
    }

    /// Value at a tuple; panics on an out-of-range tuple.
    pub fn eval(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.sig.arity, "tuple length must equal arity");
        self.table[tuple_index(self.sig.source_size, tuple)] as usize
    }

    /// Table as a digit string when the target fits in one digit, otherwise
    /// space-separated decimals.
    pub fn table_string(&self) -> String {
        crate::text::format_table(&self.table, self.sig.target_size)
    }

    /// `g(x_1..x_l) = f(x_σ(1), ..., x_σ(k))`.
    pub fn minor(&self, map: &MinorMap) -> Result<Self> {
        if map.domain_arity() != self.sig.arity {
            return Err(Error::input(format!(
                "minor map has domain arity {}, function has arity {}",
                map.domain_arity(),
                self.sig.arity
            )));
        }
        let sig = self.sig.with_arity(map.codomain_arity())?;
        let s = self.sig.source_size;
        // Weight contributed to the source index by each target coordinate.
        let mut weights = vec![0usize; map.codomain_arity()];
        let k = self.sig.arity;
        for (i, &j) in map.images().iter().enumerate() {
            weights[j - 1] += s.pow((k - 1 - i) as u32);
        }
        let mut table = Vec::with_capacity(sig.table_len());
        let mut tuples = Tuples::new(s, sig.arity);
        while let Some(t) = tuples.current() {
            let idx: usize = t.iter().zip(&weights).map(|(x, w)| x * w).sum();
            table.push(self.table[idx]);
            tuples.advance();
        }
        Ok(FiniteFunction::from_raw(sig, table.into_boxed_slice()))
    }

    /// Number of tuples mapped to `value`.
    pub fn support_count(&self, value: usize) -> Result<usize> {
        if value >= self.sig.target_size {
            return Err(Error::input(format!(
                "value {value} outside target of size {}",
                self.sig.target_size
            )));
        }
        Ok(self.table.iter().filter(|&&v| v as usize == value).count())
    }
}

/// `r(x) = op(g_1(x), ..., g_m(x))`, the pointwise action of a basic
/// operation on functions into its carrier.
pub fn apply_pointwise(op: &FiniteFunction, args: &[&FiniteFunction]) -> Result<FiniteFunction> {
    if op.source_size() != op.target_size() {
        return Err(Error::input(
            "pointwise operation must map a carrier to itself",
        ));
    }
    if args.len() != op.arity() {
        return Err(Error::input(format!(
            "operation of arity {} applied to {} arguments",
            op.arity(),
            args.len()
        )));
    }
    let sig = args[0].signature();
    if let Some(bad) = args.iter().find(|g| g.signature() != sig) {
        return Err(Error::input(format!(
            "argument signatures differ: {sig} vs {}",
            bad.signature()
        )));
    }
    if sig.target_size != op.source_size() {
        return Err(Error::input(format!(
            "arguments map into {} elements, operation carrier has {}",
            sig.target_size,
            op.source_size()
        )));
    }
    let c = op.source_size();
    let table: Box<[u8]> = (0..sig.table_len())
        .map(|x| {
            let idx = args
                .iter()
                .fold(0usize, |acc, g| acc * c + g.table[x] as usize);
            op.table[idx]
        })
        .collect();
    Ok(FiniteFunction::from_raw(sig, table))
}
