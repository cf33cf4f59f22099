//! Sparse multivariate Laurent polynomials over Q(i).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{ExactError, Field, GaussianRational, Ring};

/// Named variables.
///
/// `Y` is `q^α`, `T1` is `t*_1` (the only variable that routinely carries
/// negative exponents), `H(p)` is `h*_p`, and `X(n)` are auxiliary symbols
/// for throwaway symbolic checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Y,
    T1,
    H(u16),
    X(u16),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Y => write!(f, "y"),
            Var::T1 => write!(f, "T1"),
            Var::H(p) => write!(f, "H{p}"),
            Var::X(n) => write!(f, "x{n}"),
        }
    }
}

impl FromStr for Var {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Var, ExactError> {
        let bad = || ExactError::Parse(format!("unknown variable `{s}`"));
        match s {
            "y" => Ok(Var::Y),
            "T1" => Ok(Var::T1),
            _ => {
                if let Some(p) = s.strip_prefix('H') {
                    p.parse().map(Var::H).map_err(|_| bad())
                } else if let Some(n) = s.strip_prefix('x') {
                    n.parse().map(Var::X).map_err(|_| bad())
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// A Laurent monomial: sorted `(variable, exponent)` pairs, zero exponents
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Self {
        let mut m = BTreeMap::new();
        for (v, e) in pairs {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// `self / o` if the quotient has non-negative exponents.
    pub fn divide(&self, o: &Monomial) -> Option<Monomial> {
        let q = self.mul(&o.inverse());
        q.0.iter().all(|&(_, e)| e >= 0).then_some(q)
    }

    /// Lexicographic monomial order with `Y > T1 > H1 > H2 > … > x0 > …`.
    pub fn lex_cmp(&self, o: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &o.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    /// Component-wise minimum of exponents (a "gcd" for Laurent monomials).
    pub fn meet(&self, o: &Monomial) -> Monomial {
        let vars: BTreeSet<Var> = self.0.iter().chain(o.0.iter()).map(|&(v, _)| v).collect();
        Monomial::from_pairs(vars.into_iter().map(|v| (v, self.exponent(v).min(o.exponent(v)))))
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial: monomial → non-zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn constant(c: GaussianRational) -> Poly {
        Poly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(GaussianRational::from_int(n))
    }

    pub fn var(v: Var) -> Poly {
        Poly::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Poly {
        Poly::term(GaussianRational::one(), Monomial::var_pow(v, e))
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(v, _)| v)).collect()
    }

    pub fn degree(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn min_degree(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(v)).min()
    }

    /// Exponent-wise minimum over all terms; dividing by it leaves an
    /// ordinary polynomial with no monomial content.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.meet(m)),
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.pairs().iter().any(|&(_, e)| e < 0))
    }

    /// Leading term under [`Monomial::lex_cmp`].
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Substitutes `v ↦ value` (a scalar).
    pub fn substitute(&self, v: Var, value: &GaussianRational) -> Result<Poly, ExactError> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let factor = value.pow(e).map_err(|_| ExactError::SingularSpecialization)?;
            out.add_term(m.without(v), &(c * &factor));
        }
        Ok(out)
    }

    /// Substitutes `v ↦ p` for a polynomial `p`; negative exponents of `v`
    /// need `p` to be a unit.
    pub fn substitute_poly(&self, v: Var, p: &Poly) -> Result<Poly, ExactError> {
        let inv = p.unit_inverse();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let base = if e < 0 {
                inv.clone().ok_or(ExactError::DivisionByZero)?
            } else {
                p.clone()
            };
            let rest = Poly::term(c.clone(), m.without(v));
            out = &out + &(&rest * &base.pow(e.unsigned_abs()));
        }
        Ok(out)
    }

    /// Evaluates at a full assignment of its variables.
    pub fn eval(&self, at: &BTreeMap<Var, GaussianRational>) -> Result<GaussianRational, ExactError> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = at
                    .get(&v)
                    .ok_or_else(|| ExactError::Invalid(format!("no value for {v}")))?;
                t = &t * &x.pow(e).map_err(|_| ExactError::SingularSpecialization)?;
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    /// Both must be ordinary polynomials (no negative exponents).
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let tm = rm.divide(dm)?;
            let tc = rc * &dc_inv;
            let t = Poly::term(tc.clone(), tm.clone());
            rem = &rem - &(d * &t);
            q.add_term(tm, &tc);
        }
        Some(q)
    }

    /// View as a univariate polynomial in `v`: coefficient list indexed by
    /// degree. Requires non-negative exponents of `v`.
    pub fn to_univariate(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree(v).unwrap_or(0).max(0) as usize;
        let mut out = vec![Poly::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            debug_assert!(e >= 0);
            out[e as usize].add_term(m.without(v), c);
        }
        out
    }

    pub fn from_univariate(v: Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Monomial::var_pow(v, e as i32);
            for (k, a) in c.terms() {
                out.add_term(k.mul(&m), a);
            }
        }
        out
    }

    /// Random polynomial in `vars` with small Gaussian-integer coefficients.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, vars: &[Var], max_deg: i32, n_terms: usize) -> Poly {
        let mut p = Poly::zero();
        for _ in 0..n_terms {
            let m = Monomial::from_pairs(vars.iter().map(|&v| (v, rng.gen_range(0..=max_deg))));
            p.add_term(m, &GaussianRational::random_gaussian_int(rng, 3));
        }
        p
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Poly::int(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Units of the Laurent ring are non-zero scalar multiples of monomials.
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        Some(Poly::term(c.inv().ok()?, m.inverse()))
    }
    super::ring_arith_via_ops!();
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

super::forward_owned_ops!(Poly);

impl From<GaussianRational> for Poly {
    fn from(c: GaussianRational) -> Poly {
        Poly::constant(c)
    }
}

impl fmt::Display for Poly {
    /// Terms in monomial-key order joined by ` + `; each term is the
    /// canonical scalar followed by `*var^e` factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match (m.is_one(), c.is_one()) {
                (true, _) => write!(f, "{c:?}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{c:?}*{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> Poly {
        Poly::var(Var::Y)
    }

    #[test]
    fn laurent_monomials_cancel() {
        let p = &Poly::var_pow(Var::T1, -1) * &Poly::var(Var::T1);
        assert_eq!(p, Poly::one());
    }

    #[test]
    fn exact_division() {
        let a = &(&y() * &y()) - &Poly::one();
        let b = &y() - &Poly::one();
        assert_eq!(a.div_exact(&b).unwrap(), &y() + &Poly::one());
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn lex_order_is_multiplicative() {
        let a = Monomial::from_pairs([(Var::Y, 2), (Var::H(1), 1)]);
        let b = Monomial::from_pairs([(Var::Y, 1), (Var::H(2), 5)]);
        let c = Monomial::from_pairs([(Var::T1, 3)]);
        assert_eq!(a.lex_cmp(&b), Ordering::Greater);
        assert_eq!(a.mul(&c).lex_cmp(&b.mul(&c)), Ordering::Greater);
    }

    #[test]
    fn substitution_of_laurent_variable() {
        let p = &Poly::var_pow(Var::T1, -2) + &Poly::var(Var::H(1));
        let v = p.substitute(Var::T1, &GaussianRational::from_int(2)).unwrap();
        assert_eq!(v, &Poly::constant(GaussianRational::from_frac(1, 4)) + &Poly::var(Var::H(1)));
        assert!(p.substitute(Var::T1, &GaussianRational::zero()).is_err());
    }
}
