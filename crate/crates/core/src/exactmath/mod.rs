//! Exact coefficient arithmetic and exact linear algebra.
//!
//! Everything here is exact: Gaussian rationals, sparse multivariate Laurent
//! polynomials, rational functions, truncated power series and rank by
//! fraction-free elimination. There is no floating point anywhere.

/// Owned-operand `+ - * neg` in terms of the by-reference impls.
macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use forward_owned_ops;

/// Implements the arithmetic half of [`Ring`] through the std operators.
macro_rules! ring_arith_via_ops {
    () => {
        fn add_ref(&self, o: &Self) -> Self {
            self + o
        }
        fn sub_ref(&self, o: &Self) -> Self {
            self - o
        }
        fn mul_ref(&self, o: &Self) -> Self {
            self * o
        }
        fn neg_ref(&self) -> Self {
            -self
        }
    };
}
pub(crate) use ring_arith_via_ops;

mod cauchy;
mod gaussian;
mod gcd;
mod matrix;
mod poly;
mod ratfun;
mod series;
mod yfrac;

use std::fmt::Debug;

use thiserror::Error;

pub use cauchy::{cauchy_det_check, cauchy_random_check, cauchy_sides};
pub use gaussian::GaussianRational;
pub use matrix::{compressed_rank_mod_p, exact_rank, gaussian_mod_p, ExactMatrix, RANK_PRIME};
pub use poly::{Monomial, Poly, Var};
pub use ratfun::RatFun;
pub use series::{u_of_z, z_of_u, SeriesVar, TruncatedSeries};
pub use yfrac::YFrac;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization makes a denominator vanish")]
    SingularSpecialization,
    #[error("coincident points make the Cauchy kernel singular")]
    CoincidentPoints,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

/// Commutative ring with exact equality.
///
/// Arithmetic goes through `&self` methods so that generic code never has to
/// clone big coefficients just to add them.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Result<Self, ExactError>;

    fn div_ref(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul_ref(&o.inv()?))
    }
}
