use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::function::FiniteFunction;

/// A named basic operation of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operation {
    pub name: String,
    pub function: FiniteFunction,
}

impl Operation {
    pub fn new(name: impl Into<String>, function: FiniteFunction) -> Self {
        Operation {
            name: name.into(),
            function,
        }
    }

    pub fn arity(&self) -> usize {
        self.function.arity()
    }
}

/// A finite carrier `0..carrier_size` with basic operations. Constants are
/// unary constant operations; there are no nullary operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    carrier_size: usize,
    ops: Vec<Operation>,
}

impl Algebra {
    pub fn new(carrier_size: usize, ops: Vec<Operation>) -> Result<Self> {
        if carrier_size == 0 {
            return Err(Error::input("carrier must be nonempty"));
        }
        let mut names = HashSet::new();
        for op in &ops {
            if !names.insert(op.name.as_str()) {
                return Err(Error::input(format!(
                    "duplicate operation name '{}'",
                    op.name
                )));
            }
            if op.function.source_size() != carrier_size
                || op.function.target_size() != carrier_size
            {
                return Err(Error::input(format!(
                    "operation '{}' is {}, not an operation on {carrier_size} elements",
                    op.name,
                    op.function.signature()
                )));
            }
        }
        Ok(Algebra { carrier_size, ops })
    }

    /// Convenience constructor from `(name, arity, digit table)` triples.
    pub fn from_tables(carrier_size: usize, ops: &[(&str, usize, &str)]) -> Result<Self> {
        let ops = ops
            .iter()
            .map(|&(name, arity, digits)| {
                FiniteFunction::from_digits(carrier_size, carrier_size, arity, digits)
                    .map(|f| Operation::new(name, f))
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(carrier_size, ops)
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn op(&self, name: &str) -> Option<&Operation> {
        self.ops.iter().find(|o| o.name == name)
    }
}
