//! Exact arithmetic in cyclotomic fields `ℚ(ζ_N)` and exact linear algebra
//! over them. Nothing downstream ever rounds.

mod matrix;
mod number;
pub mod sparse;

use std::fmt::Debug;

use thiserror::Error;

pub use matrix::{mat_kernel, mat_rank, CycMatrix, Matrix};
pub use number::{cyclotomic_polynomial, CycNum, MAX_CONDUCTOR};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed conductor {from} into conductor {target}")]
    NotDivisible { from: u32, target: u32 },
    #[error("conductor {0} out of range")]
    BadConductor(u32),
    #[error("malformed cyclotomic literal `{0}`")]
    Parse(String),
    #[error("wrong number of arguments for {0}")]
    Arity(&'static str),
}

/// The operations exact linear algebra needs from its scalars.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Mul,
    Neg,
    Inverse,
    /// Check that the value lives in `ℚ(ζ_target)`; the canonical value is unchanged.
    Embed {
        target: u32,
    },
}

/// Dispatch a single field operation.
pub fn cyc_arith(op: CycOp, args: &[CycNum]) -> Result<CycNum, CycloError> {
    match (op, args) {
        (CycOp::Add, [a, b]) => Ok(a + b),
        (CycOp::Mul, [a, b]) => Ok(a * b),
        (CycOp::Neg, [a]) => Ok(-a),
        (CycOp::Inverse, [a]) => a.inverse(),
        (CycOp::Embed { target }, [a]) => {
            let coeffs = a.embed(target)?;
            CycNum::from_coeffs(target, &coeffs)
        }
        (CycOp::Add, _) => Err(CycloError::Arity("add")),
        (CycOp::Mul, _) => Err(CycloError::Arity("mul")),
        (CycOp::Neg, _) => Err(CycloError::Arity("neg")),
        (CycOp::Inverse, _) => Err(CycloError::Arity("inverse")),
        (CycOp::Embed { .. }, _) => Err(CycloError::Arity("embed")),
    }
}
