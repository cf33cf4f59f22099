//! Multivariate rational functions over Q(i) in canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gcd::{monic, poly_gcd};
use super::{ExactError, Field, GaussianRational, Monomial, Poly, Ring, Var};

/// `num / den` with `num`, `den` ordinary polynomials, `gcd(num, den) = 1`
/// and `den` monic in lex order. Laurent inputs are absorbed into `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<RatFun, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: Poly) -> RatFun {
        Self::canonical(p, Poly::one())
    }

    pub fn constant(c: GaussianRational) -> RatFun {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> RatFun {
        Self::from_poly(Poly::var(v))
    }

    /// `v^e`, negative exponents allowed.
    pub fn var_pow(v: Var, e: i32) -> RatFun {
        Self::canonical(Poly::term(GaussianRational::one(), Monomial::var_pow(v, e)), Poly::one())
    }

    pub fn int(n: i64) -> RatFun {
        Self::from_poly(Poly::int(n))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    fn canonical(num: Poly, den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::one(),
            };
        }
        // clear all negative exponents by a common monomial shift
        let shift = num.monomial_content().meet(&den.monomial_content()).inverse();
        let num = num.mul_monomial(&shift);
        let den = den.mul_monomial(&shift);
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.as_constant().is_some() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("non-zero denominator");
        let lc_inv = lc.inv().expect("non-zero");
        RatFun {
            num: num.scale(&lc_inv),
            den: monic(&den),
        }
    }

    /// For `num`, `den` already coprime: only fixes the leading coefficient.
    fn normalised(num: Poly, den: Poly) -> RatFun {
        let lc = den.leading().map(|(_, c)| c.clone()).expect("non-zero denominator");
        let lc_inv = lc.inv().expect("non-zero");
        RatFun {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    pub fn pow(&self, e: i32) -> Result<RatFun, ExactError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(RatFun {
            num: base.num.pow(e.unsigned_abs()),
            den: base.den.pow(e.unsigned_abs()),
        })
    }

    /// Substitutes scalars for every variable; fails if the denominator
    /// vanishes at the point.
    pub fn eval(&self, at: &BTreeMap<Var, GaussianRational>) -> Result<GaussianRational, ExactError> {
        let d = self.den.eval(at)?;
        if d.is_zero() {
            return Err(ExactError::SingularSpecialization);
        }
        Ok(&self.num.eval(at)? * &d.inv()?)
    }

    /// Partial substitution of one variable.
    pub fn substitute(&self, v: Var, value: &GaussianRational) -> Result<RatFun, ExactError> {
        let d = self.den.substitute(v, value)?;
        if d.is_zero() {
            return Err(ExactError::SingularSpecialization);
        }
        RatFun::new(self.num.substitute(v, value)?, d)
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n * &d.inv().ok()?)
    }
}

impl Ring for RatFun {
    fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn one() -> Self {
        RatFun::int(1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    super::ring_arith_via_ops!();
}

impl Field for RatFun {
    fn inv(&self) -> Result<Self, ExactError> {
        if self.num.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        // only factors of gcd(den, den') can cancel in the sum
        let g = poly_gcd(&self.den, &o.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = o.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&o.num * &d1);
        if num.is_zero() {
            return RatFun::zero();
        }
        let h = poly_gcd(&num, &g);
        let num = num.div_exact(&h).expect("gcd divides");
        let den = (&d1 * &o.den).div_exact(&h).expect("gcd divides");
        RatFun::normalised(num, den)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        // both sides are reduced, so only cross factors can cancel
        let g1 = poly_gcd(&self.num, &o.den);
        let g2 = poly_gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFun::normalised(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

super::forward_owned_ops!(RatFun);

impl From<Poly> for RatFun {
    fn from(p: Poly) -> RatFun {
        RatFun::from_poly(p)
    }
}

impl From<GaussianRational> for RatFun {
    fn from(c: GaussianRational) -> RatFun {
        RatFun::constant(c)
    }
}

impl fmt::Display for RatFun {
    /// `num / den`, each side bracketed when it has more than one term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: &Poly| {
            if p.num_terms() > 1 {
                format!("[{p}]")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", side(&self.num), side(&self.den))
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn y() -> RatFun {
        RatFun::var(Var::Y)
    }

    #[test]
    fn partial_fractions_of_phi_normalisations() {
        // 1/(1-y²) + 1/(1-y^-2) = 1
        let one = RatFun::one();
        let a = (&one - &y().pow(2).unwrap()).inv().unwrap();
        let b = (&one - &RatFun::var_pow(Var::Y, -2)).inv().unwrap();
        assert_eq!(&a + &b, one);
    }

    #[test]
    fn cancellation() {
        let one = RatFun::one();
        let q = &(&y().pow(2).unwrap() - &one) * &(&y() - &one).inv().unwrap();
        assert_eq!(q, &y() + &one);
        assert_eq!(q.den(), &Poly::one());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(RatFun::zero().inv(), Err(ExactError::DivisionByZero));
        assert!(RatFun::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn randomized_field_axioms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let vars = [Var::Y, Var::T1, Var::H(1)];
        for _ in 0..20 {
            let rnd = |rng: &mut rand_chacha::ChaCha8Rng| {
                let d = Poly::random(rng, &vars, 2, 2);
                let d = if d.is_zero() { Poly::one() } else { d };
                RatFun::new(Poly::random(rng, &vars, 2, 3), d).unwrap()
            };
            let a = rnd(&mut rng);
            let b = rnd(&mut rng);
            let c = rnd(&mut rng);
            assert_eq!(&(&a + &b) - &b, a);
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            if !a.is_zero() {
                assert_eq!(&a * &a.inv().unwrap(), RatFun::one());
            }
        }
    }
}
