//! Rational functions of `y` whose denominator is a power of `1 − y²`.
//!
//! At the free-fermion point every matrix entry is of this shape: tails
//! contribute Laurent monomials in `y`, and the fermion normalisations
//! `1/(1 − y^{∓2})` only ever contribute powers of `1/(1 − y²)`. Keeping that
//! denominator implicit avoids a gcd per operation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactError, Field, GaussianRational, Poly, RatFun, Ring, Var};

/// `y^lo · (c_0 + c_1 y + …) / (1 − y²)^pow`, canonical: no trailing or
/// leading zero coefficients, and `pow` minimal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct YFrac {
    lo: i32,
    coeffs: Vec<GaussianRational>,
    pow: u32,
}

impl YFrac {
    pub fn constant(c: GaussianRational) -> YFrac {
        Self::monomial(c, 0)
    }

    /// `c · y^e`
    pub fn monomial(c: GaussianRational, e: i32) -> YFrac {
        if c.is_zero() {
            return YFrac::default();
        }
        YFrac {
            lo: e,
            coeffs: vec![c],
            pow: 0,
        }
    }

    pub fn y_pow(e: i32) -> YFrac {
        Self::monomial(GaussianRational::one(), e)
    }

    /// `1/(1 − y²)`
    pub fn inv_one_minus_y2() -> YFrac {
        YFrac {
            lo: 0,
            coeffs: vec![GaussianRational::one()],
            pow: 1,
        }
    }

    /// `c_e` of the Laurent numerator, for `e` in absolute exponent.
    fn num_coeff(&self, e: i32) -> Option<&GaussianRational> {
        let k = e - self.lo;
        if k < 0 {
            None
        } else {
            self.coeffs.get(k as usize)
        }
    }

    fn hi(&self) -> i32 {
        self.lo + self.coeffs.len() as i32 - 1
    }

    fn trimmed(mut self) -> YFrac {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i32;
        }
        if self.coeffs.is_empty() {
            return YFrac::default();
        }
        self
    }

    /// Multiplies the numerator by `(1 − y²)^k` and raises `pow` to match.
    fn raise(&self, k: u32) -> YFrac {
        let mut c = self.coeffs.clone();
        for _ in 0..k {
            let mut next = c.clone();
            next.extend([GaussianRational::zero(), GaussianRational::zero()]);
            for (i, a) in c.iter().enumerate() {
                next[i + 2] -= a;
            }
            c = next;
        }
        YFrac {
            lo: self.lo,
            coeffs: c,
            pow: self.pow + k,
        }
    }

    /// Cancels common factors of `1 − y²`.
    fn reduced(self) -> YFrac {
        let mut x = self.trimmed();
        while x.pow > 0 && x.coeffs.len() >= 3 {
            let at_one = x.coeffs.iter().fold(GaussianRational::zero(), |acc, c| &acc + c);
            let at_minus_one = x
                .coeffs
                .iter()
                .enumerate()
                .fold(GaussianRational::zero(), |acc, (i, c)| if i % 2 == 0 { &acc + c } else { &acc - c });
            if !at_one.is_zero() || !at_minus_one.is_zero() {
                break;
            }
            // a_k = r_k − r_{k−2}
            let d = x.coeffs.len() - 3;
            let mut r: Vec<GaussianRational> = Vec::with_capacity(d + 1);
            for k in 0..=d {
                let prev = if k >= 2 { r[k - 2].clone() } else { GaussianRational::zero() };
                r.push(&x.coeffs[k] + &prev);
            }
            x = YFrac {
                lo: x.lo,
                coeffs: r,
                pow: x.pow - 1,
            }
            .trimmed();
        }
        x
    }

    pub fn denominator_power(&self) -> u32 {
        self.pow
    }

    /// Evaluates at a numeric `y`.
    pub fn eval(&self, y: &GaussianRational) -> Result<GaussianRational, ExactError> {
        if self.coeffs.is_empty() {
            return Ok(GaussianRational::zero());
        }
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * y) + c;
        }
        let mut v = &acc * &y.pow(self.lo).map_err(|_| ExactError::SingularSpecialization)?;
        if self.pow > 0 {
            let d = &GaussianRational::one() - &(y * y);
            let d = d.pow(self.pow as i32).map_err(|_| ExactError::SingularSpecialization)?;
            v = &v * &d.inv()?;
        }
        Ok(v)
    }

    pub fn to_ratfun(&self) -> RatFun {
        let mut num = Poly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            num.add_term(crate::exactmath::Monomial::var_pow(Var::Y, self.lo + k as i32), c);
        }
        let den = (&Poly::one() - &Poly::var_pow(Var::Y, 2)).pow(self.pow);
        RatFun::new(num, den).expect("1 − y² is non-zero")
    }
}

impl Ring for YFrac {
    fn zero() -> Self {
        YFrac::default()
    }
    fn one() -> Self {
        YFrac::constant(GaussianRational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn unit_inverse(&self) -> Option<Self> {
        // only scalar multiples of y^e are units here
        if self.coeffs.len() == 1 && self.pow == 0 {
            Some(YFrac::monomial(self.coeffs[0].inv().ok()?, -self.lo))
        } else {
            None
        }
    }
    super::ring_arith_via_ops!();
}

fn add_aligned(a: &YFrac, b: &YFrac, negate_b: bool) -> YFrac {
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    if b.is_zero() {
        return a.clone();
    }
    let (a, b) = match a.pow.cmp(&b.pow) {
        std::cmp::Ordering::Equal => (a.clone(), b.clone()),
        std::cmp::Ordering::Less => (a.raise(b.pow - a.pow), b.clone()),
        std::cmp::Ordering::Greater => (a.clone(), b.raise(a.pow - b.pow)),
    };
    let lo = a.lo.min(b.lo);
    let hi = a.hi().max(b.hi());
    let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
    for e in lo..=hi {
        let x = a.num_coeff(e);
        let y = b.num_coeff(e);
        let v = match (x, y, negate_b) {
            (Some(x), Some(y), false) => x + y,
            (Some(x), Some(y), true) => x - y,
            (Some(x), None, _) => x.clone(),
            (None, Some(y), false) => y.clone(),
            (None, Some(y), true) => -y,
            (None, None, _) => GaussianRational::zero(),
        };
        coeffs.push(v);
    }
    let out = YFrac { lo, coeffs, pow: a.pow };
    if out.pow > 0 {
        out.reduced()
    } else {
        out.trimmed()
    }
}

impl<'a> Add<&'a YFrac> for &'a YFrac {
    type Output = YFrac;
    fn add(self, o: &YFrac) -> YFrac {
        add_aligned(self, o, false)
    }
}

impl<'a> Sub<&'a YFrac> for &'a YFrac {
    type Output = YFrac;
    fn sub(self, o: &YFrac) -> YFrac {
        add_aligned(self, o, true)
    }
}

impl<'a> Mul<&'a YFrac> for &'a YFrac {
    type Output = YFrac;
    fn mul(self, o: &YFrac) -> YFrac {
        if self.is_zero() || o.is_zero() {
            return YFrac::default();
        }
        let mut coeffs = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        let out = YFrac {
            lo: self.lo + o.lo,
            coeffs,
            pow: self.pow + o.pow,
        };
        if self.pow > 0 && o.pow > 0 || (out.pow > 0 && (self.coeffs.len() > 2 || o.coeffs.len() > 2)) {
            out.reduced()
        } else {
            out.trimmed()
        }
    }
}

impl Neg for &YFrac {
    type Output = YFrac;
    fn neg(self) -> YFrac {
        YFrac {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            pow: self.pow,
        }
    }
}

super::forward_owned_ops!(YFrac);

impl From<GaussianRational> for YFrac {
    fn from(c: GaussianRational) -> YFrac {
        YFrac::constant(c)
    }
}

impl fmt::Display for YFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfun())
    }
}

impl fmt::Debug for YFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_ratfun())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rnd(rng: &mut impl Rng) -> YFrac {
        let mut x = YFrac::zero();
        for _ in 0..rng.gen_range(1..4) {
            let t = YFrac::monomial(GaussianRational::random_gaussian_int(rng, 3), rng.gen_range(-3..4));
            x = &x + &t;
        }
        for _ in 0..rng.gen_range(0..3) {
            x = &x * &YFrac::inv_one_minus_y2();
        }
        x
    }

    #[test]
    fn agrees_with_general_rational_functions() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let a = rnd(&mut rng);
            let b = rnd(&mut rng);
            assert_eq!((&a + &b).to_ratfun(), &a.to_ratfun() + &b.to_ratfun());
            assert_eq!((&a - &b).to_ratfun(), &a.to_ratfun() - &b.to_ratfun());
            assert_eq!((&a * &b).to_ratfun(), &a.to_ratfun() * &b.to_ratfun());
        }
    }

    #[test]
    fn canonical_form_cancels_one_minus_y2() {
        let one_minus = &YFrac::one() - &YFrac::y_pow(2);
        assert_eq!(&one_minus * &YFrac::inv_one_minus_y2(), YFrac::one());
        // 1/(1-y^2) + 1/(1-y^-2) = 1
        let b = &(-&YFrac::y_pow(2)) * &YFrac::inv_one_minus_y2();
        assert_eq!(&YFrac::inv_one_minus_y2() + &b, YFrac::one());
    }

    #[test]
    fn evaluation_matches() {
        let x = &YFrac::y_pow(-1) * &YFrac::inv_one_minus_y2();
        let v = x.eval(&GaussianRational::from_int(3)).unwrap();
        assert_eq!(v, GaussianRational::from_frac(-1, 24));
        assert!(x.eval(&GaussianRational::from_int(1)).is_err());
    }
}
