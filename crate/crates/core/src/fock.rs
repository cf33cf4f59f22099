//! The abstract Fock module of the fermionic creation and annihilation
//! operators.
//!
//! A vector is a finite combination of canonical monomials
//! `T1^a ∏ H_p^{m_p} · b*_{j_1}⋯b*_{j_s} · c*_{k_1}⋯c*_{k_t} |vac>` with
//! `j_1 > ⋯ > j_s ≥ 1`, `k_1 > ⋯ > k_t ≥ 1`. The central generators are
//! stored as `t*_1 = T1` and `t*_{p+1} = T1·H_p`, so `h*_p = H_p` and
//! `(t*_1)^{-1}` is `T1^-1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{ExactError, GaussianRational, Monomial, Poly, Ring, SeriesVar, TruncatedSeries, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("generator {0} is even; anticommutators are defined for odd generators only")]
    EvenGenerator(Generator),
    #[error("index {0} is outside the admissible range")]
    BadIndex(i64),
    #[error("monomial {0} lies outside the coordinate caps")]
    OutOfCaps(String),
    #[error("cannot parse Fock vector: {0}")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Generators of the algebra acting on the module. Indices start at 1,
/// except `HStar(0)` which is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    TStar(u32),
    T1Inv,
    HStar(u32),
    B(u32),
    C(u32),
    BStar(u32),
    CStar(u32),
    BBar(u32),
    CBar(u32),
    BBarStar(u32),
    CBarStar(u32),
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        !matches!(self, Generator::TStar(_) | Generator::T1Inv | Generator::HStar(_))
    }

    fn index(&self) -> u32 {
        match *self {
            Generator::T1Inv => 0,
            Generator::TStar(p)
            | Generator::HStar(p)
            | Generator::B(p)
            | Generator::C(p)
            | Generator::BStar(p)
            | Generator::CStar(p)
            | Generator::BBar(p)
            | Generator::CBar(p)
            | Generator::BBarStar(p)
            | Generator::CBarStar(p) => p,
        }
    }

    /// Which fermion family (`b` or `c`) an odd generator belongs to.
    fn family(&self) -> Option<Family> {
        match self {
            Generator::B(_) | Generator::BStar(_) | Generator::BBar(_) | Generator::BBarStar(_) => Some(Family::B),
            Generator::C(_) | Generator::CStar(_) | Generator::CBar(_) | Generator::CBarStar(_) => Some(Family::C),
            _ => None,
        }
    }

    fn validate(&self) -> Result<(), FockError> {
        let ok = match self {
            Generator::T1Inv => true,
            Generator::HStar(_) => true,
            g => g.index() >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(FockError::BadIndex(self.index() as i64))
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::TStar(p) => write!(f, "t*{p}"),
            Generator::T1Inv => write!(f, "t*1^-1"),
            Generator::HStar(p) => write!(f, "h*{p}"),
            Generator::B(p) => write!(f, "b{p}"),
            Generator::C(p) => write!(f, "c{p}"),
            Generator::BStar(p) => write!(f, "b*{p}"),
            Generator::CStar(p) => write!(f, "c*{p}"),
            Generator::BBar(p) => write!(f, "bbar{p}"),
            Generator::CBar(p) => write!(f, "cbar{p}"),
            Generator::BBarStar(p) => write!(f, "bbar*{p}"),
            Generator::CBarStar(p) => write!(f, "cbar*{p}"),
        }
    }
}

impl FromStr for Generator {
    type Err = FockError;
    fn from_str(s: &str) -> Result<Self, FockError> {
        let s = s.trim();
        if s == "t*1^-1" {
            return Ok(Generator::T1Inv);
        }
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| FockError::Parse(s.into()))?;
        let (head, num) = s.split_at(split);
        let p: u32 = num.parse().map_err(|_| FockError::Parse(s.into()))?;
        let g = match head {
            "t*" => Generator::TStar(p),
            "h*" => Generator::HStar(p),
            "b" => Generator::B(p),
            "c" => Generator::C(p),
            "b*" => Generator::BStar(p),
            "c*" => Generator::CStar(p),
            "bbar" => Generator::BBar(p),
            "cbar" => Generator::CBar(p),
            "bbar*" => Generator::BBarStar(p),
            "cbar*" => Generator::CBarStar(p),
            _ => return Err(FockError::Parse(s.into())),
        };
        g.validate()?;
        Ok(g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    B,
    C,
}

/// The fermionic part of a canonical monomial: `b*` indices and `c*`
/// indices, each strictly decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fermions {
    pub b: Vec<u32>,
    pub c: Vec<u32>,
}

impl Fermions {
    pub fn new(mut b: Vec<u32>, mut c: Vec<u32>) -> Option<Fermions> {
        let n = (b.len(), c.len());
        b.sort_unstable_by(|x, y| y.cmp(x));
        b.dedup();
        c.sort_unstable_by(|x, y| y.cmp(x));
        c.dedup();
        ((b.len(), c.len()) == n && !b.contains(&0) && !c.contains(&0)).then_some(Fermions { b, c })
    }

    pub fn max_index(&self) -> u32 {
        self.b.first().copied().unwrap_or(0).max(self.c.first().copied().unwrap_or(0))
    }

    /// Creation on the left; returns the sign and the new key, or `None`
    /// when the index is already occupied.
    fn create(&self, fam: Family, p: u32) -> Option<(i64, Fermions)> {
        let (list, offset) = match fam {
            Family::B => (&self.b, 0),
            Family::C => (&self.c, self.b.len()),
        };
        if list.contains(&p) {
            return None;
        }
        let pos = list.iter().take_while(|&&j| j > p).count();
        let mut out = self.clone();
        match fam {
            Family::B => out.b.insert(pos, p),
            Family::C => out.c.insert(pos, p),
        }
        Some((sign(offset + pos), out))
    }

    fn annihilate(&self, fam: Family, p: u32) -> Option<(i64, Fermions)> {
        let (list, offset) = match fam {
            Family::B => (&self.b, 0),
            Family::C => (&self.c, self.b.len()),
        };
        let pos = list.iter().position(|&j| j == p)?;
        let mut out = self.clone();
        match fam {
            Family::B => out.b.remove(pos),
            Family::C => out.c.remove(pos),
        };
        Some((sign(offset + pos), out))
    }

    fn list(&self, fam: Family) -> &[u32] {
        match fam {
            Family::B => &self.b,
            Family::C => &self.c,
        }
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `h*_p` as a central element; `h*_0 = 1`, negative indices vanish.
pub fn h_star(p: i64) -> Poly {
    match p {
        0 => Poly::one(),
        p if p < 0 => Poly::zero(),
        p => Poly::var(Var::H(p as u16)),
    }
}

/// `t*_r = T1·h*_{r−1}`, zero for `r ≤ 0`.
pub fn t_star(r: i64) -> Poly {
    if r <= 0 {
        Poly::zero()
    } else {
        &Poly::var(Var::T1) * &h_star(r - 1)
    }
}

/// One canonical monomial with its scalar coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBWMonomial {
    pub t1_power: i32,
    pub h_exponents: BTreeMap<u32, u32>,
    pub bstar: Vec<u32>,
    pub cstar: Vec<u32>,
}

impl PBWMonomial {
    fn central(&self) -> Monomial {
        Monomial::from_pairs(
            std::iter::once((Var::T1, self.t1_power))
                .chain(self.h_exponents.iter().map(|(&p, &m)| (Var::H(p as u16), m as i32))),
        )
    }

    fn from_parts(m: &Monomial, f: &Fermions) -> Result<PBWMonomial, FockError> {
        let mut t1_power = 0;
        let mut h_exponents = BTreeMap::new();
        for &(v, e) in m.pairs() {
            match v {
                Var::T1 => t1_power = e,
                Var::H(p) if e > 0 && p > 0 => {
                    h_exponents.insert(p as u32, e as u32);
                }
                _ => return Err(FockError::OutOfCaps(format!("{m}"))),
            }
        }
        Ok(PBWMonomial {
            t1_power,
            h_exponents,
            bstar: f.b.clone(),
            cstar: f.c.clone(),
        })
    }
}

/// A vector of the Fock module: fermion key ↦ central polynomial
/// coefficient. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FockVector {
    terms: BTreeMap<Fermions, Poly>,
}

impl FockVector {
    pub fn zero() -> FockVector {
        FockVector::default()
    }

    pub fn vacuum() -> FockVector {
        Self::monomial(Poly::one(), Fermions::default())
    }

    pub fn monomial(coeff: Poly, key: Fermions) -> FockVector {
        let mut v = FockVector::zero();
        v.add_term(key, &coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Fermions, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &Fermions) -> Poly {
        self.terms.get(key).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add_term(&mut self, key: Fermions, c: &Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &FockVector) -> FockVector {
        self.add(&o.scale(&Poly::int(-1)))
    }

    pub fn scale(&self, c: &Poly) -> FockVector {
        let mut out = FockVector::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), &(x * c));
        }
        out
    }

    /// Expands coefficients into canonical monomials.
    pub fn pbw_terms(&self) -> Vec<(PBWMonomial, GaussianRational)> {
        let mut out = Vec::new();
        for (f, p) in &self.terms {
            for (m, c) in p.terms() {
                out.push((PBWMonomial::from_parts(m, f).expect("Fock coefficients live in T1, H_p"), c.clone()));
            }
        }
        out
    }

    pub fn from_pbw_terms(terms: impl IntoIterator<Item = (PBWMonomial, GaussianRational)>) -> Result<FockVector, FockError> {
        let mut v = FockVector::zero();
        for (m, c) in terms {
            let key = Fermions::new(m.bstar.clone(), m.cstar.clone())
                .ok_or_else(|| FockError::Parse(format!("repeated or zero index in {:?} / {:?}", m.bstar, m.cstar)))?;
            v.add_term(key, &Poly::term(c, m.central()));
        }
        Ok(v)
    }

    /// Counts `(#b*, #c*)` if every monomial has the same shape.
    pub fn grading(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|f| (f.b.len(), f.c.len()));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(Fermions::max_index).max().unwrap_or(0)
    }

    fn map_keys(&self, f: impl Fn(&Fermions) -> Vec<(Fermions, Poly)>) -> FockVector {
        let mut out = FockVector::zero();
        for (k, c) in &self.terms {
            for (k2, c2) in f(k) {
                out.add_term(k2, &(c * &c2));
            }
        }
        out
    }

    /// Action of a single generator.
    pub fn apply(&self, g: Generator) -> FockVector {
        match g {
            Generator::TStar(p) => self.scale(&t_star(p as i64)),
            Generator::T1Inv => self.scale(&Poly::var_pow(Var::T1, -1)),
            Generator::HStar(p) => self.scale(&h_star(p as i64)),
            Generator::BStar(p) | Generator::CStar(p) => {
                let fam = g.family().expect("odd");
                self.map_keys(|k| k.create(fam, p).map(|(s, k2)| (k2, Poly::int(s))).into_iter().collect())
            }
            Generator::B(p) | Generator::C(p) => {
                let fam = g.family().expect("odd");
                self.map_keys(|k| k.annihilate(fam, p).map(|(s, k2)| (k2, Poly::int(s))).into_iter().collect())
            }
            Generator::BBar(p) | Generator::CBar(p) => {
                // x̄_p = −t*_1 Σ_{q≥0} h*_q x_{p+q}; only occupied indices contribute
                let fam = g.family().expect("odd");
                let minus_t1 = Poly::term(GaussianRational::from_int(-1), Monomial::var_pow(Var::T1, 1));
                self.map_keys(|k| {
                    k.list(fam)
                        .iter()
                        .filter(|&&j| j >= p)
                        .map(|&j| {
                            let (s, k2) = k.annihilate(fam, j).expect("occupied");
                            (k2, &(&minus_t1 * &h_star((j - p) as i64)) * &Poly::int(s))
                        })
                        .collect()
                })
            }
            Generator::BBarStar(p) | Generator::CBarStar(p) => {
                let fam = g.family().expect("odd");
                let plain = |q| if fam == Family::B { Generator::BStar(q) } else { Generator::CStar(q) };
                let mut out = FockVector::zero();
                for (q, coeff) in bar_star_expand(p) {
                    out = out.add(&self.apply(plain(q)).scale(&coeff));
                }
                out
            }
        }
    }

    pub fn apply_word(&self, w: &AlgebraWord) -> FockVector {
        w.factors.iter().rev().fold(self.scale(&w.coeff), |v, &g| v.apply(g))
    }

    /// Random vector with `n_terms` monomials, indices in `1..=max_index`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_index: u32, n_terms: usize) -> FockVector {
        let mut v = FockVector::zero();
        for _ in 0..n_terms {
            let pick = |rng: &mut R| -> Vec<u32> { (1..=max_index).filter(|_| rng.gen_bool(0.4)).collect() };
            let key = Fermions::new(pick(rng), pick(rng)).expect("distinct indices");
            let mut coeff = Poly::zero();
            for _ in 0..rng.gen_range(1..3) {
                let m = Monomial::from_pairs([
                    (Var::T1, rng.gen_range(-1..=2)),
                    (Var::H(rng.gen_range(1..=3)), rng.gen_range(0..=2)),
                ]);
                coeff.add_term(m, &GaussianRational::random_gaussian_int(rng, 3));
            }
            v.add_term(key, &coeff);
        }
        v
    }
}

/// An ordered product of generators with a central prefactor, applied
/// right-to-left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraWord {
    pub coeff: Poly,
    pub factors: Vec<Generator>,
}

impl AlgebraWord {
    pub fn new(factors: Vec<Generator>) -> AlgebraWord {
        AlgebraWord {
            coeff: Poly::one(),
            factors,
        }
    }

    /// `self · o`
    pub fn then(&self, o: &AlgebraWord) -> AlgebraWord {
        AlgebraWord {
            coeff: &self.coeff * &o.coeff,
            factors: self.factors.iter().chain(&o.factors).copied().collect(),
        }
    }
}

impl fmt::Display for AlgebraWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.coeff.is_one() {
            write!(f, "({}) ", self.coeff)?;
        }
        let names: Vec<String> = self.factors.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", names.join(" "))
    }
}

impl FromStr for AlgebraWord {
    type Err = FockError;
    /// Space-separated generators, e.g. `b1 b*1` or `c*2 c*1 b*2 b*1`.
    fn from_str(s: &str) -> Result<Self, FockError> {
        Ok(AlgebraWord::new(s.split_whitespace().map(str::parse).collect::<Result<_, _>>()?))
    }
}

/// A signed sum of words applied to the vacuum, e.g. `t*1 b*2 - t*2 b*1`
/// or `1`. Each word is a space-separated product of generators.
pub fn word_sum(s: &str) -> Result<FockVector, FockError> {
    let mut out = FockVector::zero();
    let mut sign = 1;
    let mut cur: Vec<&str> = Vec::new();
    let flush = |sign: i64, cur: &mut Vec<&str>, out: &mut FockVector| -> Result<(), FockError> {
        if cur.is_empty() {
            return Err(FockError::Parse(s.to_string()));
        }
        let gens: Vec<Generator> = cur.iter().filter(|t| **t != "1").map(|t| t.parse()).collect::<Result<_, _>>()?;
        *out = out.add(&FockVector::vacuum().apply_word(&AlgebraWord::new(gens)).scale(&Poly::int(sign)));
        cur.clear();
        Ok(())
    };
    for tok in s.split_whitespace() {
        match tok {
            "+" | "-" => {
                flush(sign, &mut cur, &mut out)?;
                sign = if tok == "+" { 1 } else { -1 };
            }
            t => cur.push(t),
        }
    }
    flush(sign, &mut cur, &mut out)?;
    Ok(out)
}

/// Coefficients of `x̄*_p = Σ_{p' ≤ p} a_{p−p'} x*_{p'}`, where `a_k` is the
/// `u^k` coefficient of `h*(u)^{-1}` and `h*(u) = Σ h*_q u^q`.
pub fn bar_star_expand(p: u32) -> Vec<(u32, Poly)> {
    let n = (p - 1) as usize;
    let h = TruncatedSeries::new(SeriesVar::U, n, (0..=n as i64).map(h_star).collect());
    let inv = h.inv().expect("constant term is one");
    (1..=p).rev().map(|q| (q, inv.coeff((p - q) as usize).clone())).filter(|(_, c)| !c.is_zero()).collect()
}

/// The anticommutator of two odd generators as a central element.
///
/// Pairs within one fermion family follow the defining relations:
/// `[x*_p, x_{p'}]_+ = δ`, `[x*_p, x̄_{p'}]_+ = −t*_{p−p'+1}` (zero when
/// `p < p'`), `[x̄*_p, x̄_{p'}]_+ = −t*_1 δ`, and `[x̄*_p, x_{p'}]_+` is the
/// `u^{p−p'}` coefficient of `h*(u)^{-1}`. Everything else anticommutes.
pub fn anticommutator(g1: Generator, g2: Generator) -> Result<Poly, FockError> {
    for g in [g1, g2] {
        if !g.is_odd() {
            return Err(FockError::EvenGenerator(g));
        }
        g.validate()?;
    }
    if g1.family() != g2.family() {
        return Ok(Poly::zero());
    }
    let creator = |g: Generator| matches!(g, Generator::BStar(_) | Generator::CStar(_) | Generator::BBarStar(_) | Generator::CBarStar(_));
    let (cr, an) = match (creator(g1), creator(g2)) {
        (true, false) => (g1, g2),
        (false, true) => (g2, g1),
        _ => return Ok(Poly::zero()),
    };
    let (p, q) = (cr.index() as i64, an.index() as i64);
    let barred = |g: Generator| matches!(g, Generator::BBar(_) | Generator::CBar(_) | Generator::BBarStar(_) | Generator::CBarStar(_));
    Ok(match (barred(cr), barred(an)) {
        (false, false) => Poly::int((p == q) as i64),
        (false, true) => -&t_star(p - q + 1),
        (true, true) => {
            if p == q {
                -&Poly::var(Var::T1)
            } else {
                Poly::zero()
            }
        }
        (true, false) => bar_star_expand(p as u32)
            .into_iter()
            .find(|&(r, _)| r as i64 == q)
            .map_or_else(Poly::zero, |(_, c)| c),
    })
}

/// The triangular system `Σ_q h*_q x̄*_{p−q} = x*_p` solved by forward
/// substitution, applied to `v`. This is the direct reading of the
/// defining series relation, independent of [`bar_star_expand`].
fn bar_star_forward(fam: Family, p: u32, v: &FockVector) -> FockVector {
    let plain = |q| if fam == Family::B { Generator::BStar(q) } else { Generator::CStar(q) };
    let mut bars: Vec<FockVector> = vec![FockVector::zero()];
    for r in 1..=p {
        let mut x = v.apply(plain(r));
        for q in 1..r {
            x = x.sub(&bars[(r - q) as usize].scale(&h_star(q as i64)));
        }
        bars.push(x);
    }
    bars.pop().expect("p ≥ 1")
}

/// Checks the two generating-series relations on each sample:
///
/// * the principal part of `−t*_1 h*(ζ) x(ζ)` equals `x̄(ζ)` through `u^{-N}`,
///   computed as a product of series in `u` rather than the closed sum;
/// * `x̄*(ζ) = h*(ζ)^{-1} x*(ζ)` through `u^{N−1}`, with the left side from
///   the series inverse and the right side by forward substitution.
pub fn series_identity_check(order: usize, samples: &[FockVector]) -> bool {
    let t1 = Poly::var(Var::T1);
    for v in samples {
        let top = (v.max_index() as usize).max(order) + 1;
        for fam in [Family::B, Family::C] {
            let (ann, bar) = match fam {
                Family::B => (Generator::B as fn(u32) -> Generator, Generator::BBar as fn(u32) -> Generator),
                Family::C => (Generator::C as fn(u32) -> Generator, Generator::CBar as fn(u32) -> Generator),
            };
            // x(ζ)v = Σ_p x_p v · u^{-p}; store the coefficient of u^{-p} at slot p
            let xs: Vec<FockVector> = (0..=top).map(|p| if p == 0 { FockVector::zero() } else { v.apply(ann(p as u32)) }).collect();
            for p in 1..=order {
                // u^{-p} coefficient of h*(u)·x(u): Σ_q h*_q x_{p+q}
                let mut rhs = FockVector::zero();
                for q in 0..=top - p {
                    rhs = rhs.add(&xs[p + q].scale(&h_star(q as i64)));
                }
                let rhs = rhs.scale(&(-&t1));
                if v.apply(bar(p as u32)) != rhs {
                    return false;
                }
            }
            let (star, barstar) = match fam {
                Family::B => (Family::B, Generator::BBarStar as fn(u32) -> Generator),
                Family::C => (Family::C, Generator::CBarStar as fn(u32) -> Generator),
            };
            for p in 1..=order as u32 {
                if v.apply(barstar(p)) != bar_star_forward(star, p, v) {
                    return false;
                }
            }
        }
    }
    true
}

/// Caps for coordinate extraction: all fermion indices in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PbwCaps {
    pub n: u32,
}

/// Coordinates on the `4^n` fermion keys with indices `≤ n`; the key with
/// `b*`-set `B` and `c*`-set `C` sits at `mask(B) + 2^n·mask(C)`.
pub fn pbw_coordinates(v: &FockVector, caps: PbwCaps) -> Result<BTreeMap<usize, Poly>, FockError> {
    let mut out = BTreeMap::new();
    for (f, c) in v.terms() {
        if f.max_index() > caps.n {
            return Err(FockError::OutOfCaps(format!("{f:?}")));
        }
        let mask = |l: &[u32]| l.iter().fold(0usize, |m, &j| m | 1 << (j - 1));
        out.insert(mask(&f.b) + (mask(&f.c) << caps.n), c.clone());
    }
    Ok(out)
}

impl fmt::Display for FockVector {
    /// `coeff * T1^a * H1^m1 H2^m2 * b*[j..] * c*[k..] |vac>` joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.pbw_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            match m.t1_power {
                0 => {}
                1 => write!(f, " * T1")?,
                a => write!(f, " * T1^{a}")?,
            }
            if !m.h_exponents.is_empty() {
                let hs: Vec<String> = m
                    .h_exponents
                    .iter()
                    .map(|(p, e)| if *e == 1 { format!("H{p}") } else { format!("H{p}^{e}") })
                    .collect();
                write!(f, " * {}", hs.join(" "))?;
            }
            let list = |l: &[u32]| l.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            if !m.bstar.is_empty() {
                write!(f, " * b*[{}]", list(&m.bstar))?;
            }
            if !m.cstar.is_empty() {
                write!(f, " * c*[{}]", list(&m.cstar))?;
            }
            write!(f, " |vac>")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_index_list(s: &str) -> Result<Vec<u32>, FockError> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| FockError::Parse(s.into())))
        .collect()
}

fn parse_term(t: &str) -> Result<(PBWMonomial, GaussianRational), FockError> {
    let bad = || FockError::Parse(t.to_string());
    let body = t.trim().strip_suffix("|vac>").ok_or_else(bad)?.trim_end();
    let mut parts = body.split(" * ");
    let coeff: GaussianRational = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let mut m = PBWMonomial {
        t1_power: 0,
        h_exponents: BTreeMap::new(),
        bstar: Vec::new(),
        cstar: Vec::new(),
    };
    for part in parts {
        let part = part.trim();
        if let Some(rest) = part.strip_prefix("b*[") {
            m.bstar = parse_index_list(rest.strip_suffix(']').ok_or_else(bad)?)?;
        } else if let Some(rest) = part.strip_prefix("c*[") {
            m.cstar = parse_index_list(rest.strip_suffix(']').ok_or_else(bad)?)?;
        } else if let Some(rest) = part.strip_prefix("T1") {
            m.t1_power = match rest.strip_prefix('^') {
                None if rest.is_empty() => 1,
                Some(e) => e.parse().map_err(|_| bad())?,
                None => return Err(bad()),
            };
        } else if part.starts_with('H') {
            for h in part.split_whitespace() {
                let h = h.strip_prefix('H').ok_or_else(bad)?;
                let (p, e) = match h.split_once('^') {
                    Some((p, e)) => (p, e.parse().map_err(|_| bad())?),
                    None => (h, 1u32),
                };
                let p: u32 = p.parse().map_err(|_| bad())?;
                if p == 0 || e == 0 {
                    return Err(bad());
                }
                *m.h_exponents.entry(p).or_insert(0) += e;
            }
        } else {
            return Err(bad());
        }
    }
    Ok((m, coeff))
}

impl FromStr for FockVector {
    type Err = FockError;
    fn from_str(s: &str) -> Result<Self, FockError> {
        let s = s.trim();
        if s == "0" {
            return Ok(FockVector::zero());
        }
        FockVector::from_pbw_terms(s.split(" + ").map(parse_term).collect::<Result<Vec<_>, _>>()?)
    }
}

/// The eight odd generator families, for random sampling.
const ODD_KINDS: [fn(u32) -> Generator; 8] = [
    Generator::B,
    Generator::C,
    Generator::BStar,
    Generator::CStar,
    Generator::BBar,
    Generator::CBar,
    Generator::BBarStar,
    Generator::CBarStar,
];

/// A word of `len` odd generators with indices in `1..=max_index`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, len: usize, max_index: u32) -> AlgebraWord {
    AlgebraWord::new((0..len).map(|_| ODD_KINDS[rng.gen_range(0..8)](rng.gen_range(1..=max_index))).collect())
}

/// `t*_r`, `(t*_1)^{-1}` and `h*_p` commute with random words on random
/// vectors. Returns the first offending pair.
pub fn centrality_check<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> Option<String> {
    for _ in 0..trials {
        let len = rng.gen_range(1..4);
        let word = random_word(rng, len, 6);
        let t = [Generator::TStar(rng.gen_range(1..=6)), Generator::T1Inv, Generator::HStar(rng.gen_range(0..=6))]
            [rng.gen_range(0..3)];
        let v = FockVector::random(rng, 6, 2);
        let left = AlgebraWord::new(vec![t]).then(&word);
        let right = word.then(&AlgebraWord::new(vec![t]));
        if v.apply_word(&left) != v.apply_word(&right) {
            return Some(format!("{t} vs {word} on {v}"));
        }
    }
    None
}

/// Every odd generator squares to zero on random vectors.
pub fn nilpotence_check<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> Option<String> {
    for _ in 0..trials {
        let v = FockVector::random(rng, 6, 3);
        for k in ODD_KINDS {
            let g = k(rng.gen_range(1..=6));
            if !v.apply(g).apply(g).is_zero() {
                return Some(format!("{g} on {v}"));
            }
        }
    }
    None
}

/// `[x̄*_p, (t*_1)^{-1} x̄_q]_+ = −δ_{p,q}` for `p, q ≤ cap`, with both barred
/// operators taken from their series definitions, on a random vector.
pub fn barred_pair_check<R: Rng + ?Sized>(rng: &mut R, cap: u32) -> Option<String> {
    let v = FockVector::random(rng, cap, 4);
    for (star, bar) in [
        (Generator::BBarStar as fn(u32) -> Generator, Generator::BBar as fn(u32) -> Generator),
        (Generator::CBarStar, Generator::CBar),
    ] {
        for p in 1..=cap {
            for q in 1..=cap {
                let a = v.apply(bar(q)).apply(Generator::T1Inv).apply(star(p));
                let b = v.apply(star(p)).apply(bar(q)).apply(Generator::T1Inv);
                let expect = if p == q { v.scale(&Poly::int(-1)) } else { FockVector::zero() };
                if a.add(&b) != expect {
                    return Some(format!("{} {} p={p} q={q}", star(p), bar(q)));
                }
            }
        }
    }
    None
}

/// Annihilators with index above every occupied one kill the state.
pub fn annihilation_check<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> Option<String> {
    use Generator::*;
    for _ in 0..trials {
        let v = FockVector::random(rng, 4, 3);
        for p in v.max_index() + 1..=7 {
            for g in [B(p), C(p), BBar(p), CBar(p)] {
                if !v.apply(g).is_zero() {
                    return Some(format!("{g} on {v}"));
                }
            }
        }
    }
    None
}

/// The anticommutator table agrees with the action on random vectors for all
/// pairs of odd generators with indices `≤ cap`.
pub fn table_action_check<R: Rng + ?Sized>(rng: &mut R, samples: usize, cap: u32) -> Option<String> {
    for _ in 0..samples {
        let v = FockVector::random(rng, cap + 1, 3);
        for k1 in ODD_KINDS {
            for k2 in ODD_KINDS {
                for p in 1..=cap {
                    for q in 1..=cap {
                        let (g1, g2) = (k1(p), k2(q));
                        let table = match anticommutator(g1, g2) {
                            Ok(t) => t,
                            Err(e) => return Some(e.to_string()),
                        };
                        let acting = v.apply(g2).apply(g1).add(&v.apply(g1).apply(g2));
                        if acting != v.scale(&table) {
                            return Some(format!("{g1} {g2} on {v}"));
                        }
                    }
                }
            }
        }
    }
    None
}
