//! Truncated power series with exact coefficients.

use super::{ExactError, GaussianRational, Ring};

/// Which expansion variable a series is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SeriesVar {
    /// `u = ζ² − 1`
    U,
    /// `z = (1 − ζ²)/(1 + ζ²)`
    Z,
}

/// `Σ_{p=0}^{N} c_p v^p`, everything beyond order `N` discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    pub var: SeriesVar,
    coeffs: Vec<C>,
}

impl<C: Ring> TruncatedSeries<C> {
    /// Series with the given leading coefficients, padded with zeros up to
    /// `order`.
    pub fn new(var: SeriesVar, order: usize, leading: Vec<C>) -> Self {
        let mut coeffs = leading;
        coeffs.resize(order + 1, C::zero());
        coeffs.truncate(order + 1);
        TruncatedSeries { var, coeffs }
    }

    pub fn zero(var: SeriesVar, order: usize) -> Self {
        Self::new(var, order, Vec::new())
    }

    pub fn one(var: SeriesVar, order: usize) -> Self {
        Self::new(var, order, vec![C::one()])
    }

    /// The series of the variable itself.
    pub fn variable(var: SeriesVar, order: usize) -> Self {
        Self::new(var, order, vec![C::zero(), C::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, p: usize) -> &C {
        &self.coeffs[p]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.var, order, self.coeffs[..=order.min(self.order())].to_vec())
    }

    fn common_order(&self, o: &Self) -> usize {
        assert_eq!(self.var, o.var, "series in different variables");
        self.order().min(o.order())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let c = (0..=n).map(|p| self.coeffs[p].add_ref(&o.coeffs[p])).collect();
        Self::new(self.var, n, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let c = (0..=n).map(|p| self.coeffs[p].sub_ref(&o.coeffs[p])).collect();
        Self::new(self.var, n, c)
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.var, self.order(), self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(self.var, n, out)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inv(&self) -> Result<Self, ExactError> {
        let c0_inv = self.coeffs[0].unit_inverse().ok_or(ExactError::DivisionByZero)?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(c0_inv.clone());
        for p in 1..=n {
            let mut acc = C::zero();
            for k in 1..=p {
                acc = acc.add_ref(&self.coeffs[k].mul_ref(&out[p - k]));
            }
            out.push(acc.mul_ref(&c0_inv).neg_ref());
        }
        Ok(Self::new(self.var, n, out))
    }

    /// `self(inner)`; `inner` must have zero constant term. The result is
    /// in `inner`'s variable.
    pub fn compose(&self, inner: &Self) -> Result<Self, ExactError> {
        if !inner.coeffs[0].is_zero() {
            return Err(ExactError::Invalid("inner series has a constant term".into()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner: c_0 + inner·(c_1 + inner·(…))
        let mut acc = Self::zero(inner.var, n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(&inner).add(&Self::new(inner.var, n, vec![c.clone()]));
        }
        Ok(acc)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries::new(self.var, self.order(), self.coeffs.iter().map(f).collect())
    }
}

/// `z = −u/(2+u)` expanded in `u` through order `n`.
pub fn z_of_u(n: usize) -> TruncatedSeries<GaussianRational> {
    // −(u/2)·Σ(−u/2)^k  ⇒  coefficient of u^p is (−1)^p / 2^p for p ≥ 1
    let mut c = vec![GaussianRational::zero()];
    for p in 1..=n {
        let sign = if p % 2 == 0 { 1 } else { -1 };
        c.push(GaussianRational::from_frac(sign, 1i64 << p));
    }
    TruncatedSeries::new(SeriesVar::U, n, c)
}

/// `u = −2z/(1+z)` expanded in `z` through order `n`.
pub fn u_of_z(n: usize) -> TruncatedSeries<GaussianRational> {
    let mut c = vec![GaussianRational::zero()];
    for p in 1..=n {
        let sign = if p % 2 == 0 { 2 } else { -2 };
        c.push(GaussianRational::from_int(sign));
    }
    TruncatedSeries::new(SeriesVar::Z, n, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn z_of_u_low_orders() {
        let z = z_of_u(3);
        assert_eq!(
            z.coeffs(),
            &[g(0), GaussianRational::from_frac(-1, 2), GaussianRational::from_frac(1, 4), GaussianRational::from_frac(-1, 8)]
        );
        assert_eq!(z_of_u(0).coeffs(), &[g(0)]);
    }

    #[test]
    fn z_and_u_are_inverse_substitutions() {
        for n in 0..8 {
            let back = u_of_z(n).compose(&z_of_u(n)).unwrap();
            assert_eq!(back, TruncatedSeries::variable(SeriesVar::U, n));
            let fwd = z_of_u(n).compose(&u_of_z(n)).unwrap();
            assert_eq!(fwd, TruncatedSeries::variable(SeriesVar::Z, n));
        }
    }

    #[test]
    fn geometric_series_inverse() {
        let s = TruncatedSeries::new(SeriesVar::U, 6, vec![g(1), g(1)]);
        let inv = s.inv().unwrap();
        for p in 0..=6 {
            assert_eq!(inv.coeff(p), &g(if p % 2 == 0 { 1 } else { -1 }));
        }
        assert!(TruncatedSeries::<GaussianRational>::variable(SeriesVar::U, 3).inv().is_err());
    }

    fn arb_series(n: usize) -> impl Strategy<Value = TruncatedSeries<GaussianRational>> {
        proptest::collection::vec(-5i64..=5, n + 1)
            .prop_map(move |v| TruncatedSeries::new(SeriesVar::U, n, v.into_iter().map(g).collect()))
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_truncates(a in arb_series(6), b in arb_series(6), k in 0usize..6) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.truncate(k).mul(&b.truncate(k)), a.mul(&b).truncate(k));
        }

        #[test]
        fn inverse_is_inverse(mut a in arb_series(5)) {
            if a.coeff(0).is_zero() {
                a = a.add(&TruncatedSeries::one(SeriesVar::U, 5));
            }
            prop_assume!(!a.coeff(0).is_zero());
            prop_assert_eq!(a.mul(&a.inv().unwrap()), TruncatedSeries::one(SeriesVar::U, 5));
        }
    }
}
