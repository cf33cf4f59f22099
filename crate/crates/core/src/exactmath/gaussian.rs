//! Gaussian rationals: exact elements of Q(i).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{ExactError, Field, Ring};

/// `re + im·i` with both parts arbitrary-precision rationals.
///
/// `BigRational` keeps itself reduced with a positive denominator, so the
/// derived equality is the canonical one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_parts(0, 1)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::from_parts(0, 1),
            2 => Self::from_int(-1),
            _ => Self::from_parts(0, -1),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn pow(&self, e: i32) -> Result<Self, ExactError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// A random real rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
    pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let p = rng.gen_range(-bound..=bound);
        let q = rng.gen_range(1..=bound);
        Self::from_frac(p, q)
    }

    /// A random Gaussian integer with parts in `[-bound, bound]`.
    pub fn random_gaussian_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        Self::from_parts(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    super::ring_arith_via_ops!();
}

impl Field for GaussianRational {
    fn inv(&self) -> Result<Self, ExactError> {
        if Ring::is_zero(self) {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        // fast paths: most coefficients in this crate are real or purely imaginary
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational {
                re: &self.re * &o.re,
                im: BigRational::zero(),
            };
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

super::forward_owned_ops!(GaussianRational);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical text form `(<re>)+(<im>)i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})i", fmt_rational(&self.re), fmt_rational(&self.im))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else {
            write!(f, "{}", self)
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for GaussianRational {
    type Err = ExactError;

    /// Accepts the canonical form `(<re>)+(<im>)i` as well as a bare
    /// rational such as `3/1` or `-2`.
    fn from_str(s: &str) -> Result<Self, ExactError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let bad = || ExactError::Parse(format!("bad scalar `{s}`"));
            let (re, rest) = rest.split_once(")+(").ok_or_else(bad)?;
            let im = rest.strip_suffix(")i").ok_or_else(bad)?;
            Ok(GaussianRational {
                re: parse_rational(re)?,
                im: parse_rational(im)?,
            })
        } else {
            Ok(parse_rational(s)?.into())
        }
    }
}

impl GaussianRational {
    /// True when both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// `|re| + |im|` as a crude size measure, used when picking pivots.
    pub fn height(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_round_trips() {
        let x = GaussianRational::new(
            BigRational::new(BigInt::from(-6), BigInt::from(4)),
            BigRational::from_integer(BigInt::from(2)),
        );
        assert_eq!(x.to_string(), "(-3/2)+(2)i");
        assert_eq!(x.to_string().parse::<GaussianRational>().unwrap(), x);
        assert_eq!("3/1".parse::<GaussianRational>().unwrap(), GaussianRational::from_int(3));
    }

    #[test]
    fn inverse_and_powers_of_i() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        assert_eq!(i.inv().unwrap(), GaussianRational::i_pow(-1));
        let z = GaussianRational::from_parts(3, -4);
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_err());
        assert_eq!(z.pow(-2).unwrap(), (&z * &z).inv().unwrap());
    }
}
