//! Quasi-local operators of the spin chain at the free-fermion point `q = i`.
//!
//! An operator of spin `s` is stored as a finite matrix on a window `[k,m]`;
//! every site `j < k` carries the tail `diag(τ_s, τ_s⁻¹)`, `τ_s = y·i^{−s}`,
//! and every site `j > m` the identity. Window bit `j − k` is `0` for `↑`
//! and `1` for `↓`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{exact_rank, z_of_u, ExactMatrix, Field, GaussianRational, Ring, YFrac};

/// Reading of the exponential in the bosonized form of `h*(ζ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BosonForm {
    Literal,
    NormalOrdered,
}

/// Scalars the lattice can be built over: symbolic `y` or a specialised one.
pub trait LatticeScalar: Ring + From<GaussianRational> {}

impl LatticeScalar for YFrac {}
impl LatticeScalar for GaussianRational {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("y = {0} makes a fermion normalisation singular")]
    SingularY(String),
    #[error("series order {0} exceeds the cap {1}")]
    OrderTooLarge(usize, usize),
    #[error("weight cap {0} exceeds the limit {1}")]
    WeightTooLarge(usize, usize),
    #[error("invalid operator data: {0}")]
    Invalid(String),
}

/// Largest series order accepted by the checks.
pub const ORDER_CAP: usize = 6;
/// Largest weight accepted by `schur_monomial_rank`.
pub const WEIGHT_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn sign(self) -> i32 {
        match self {
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }

    pub fn flip(self) -> Eps {
        match self {
            Eps::Plus => Eps::Minus,
            Eps::Minus => Eps::Plus,
        }
    }

    pub const BOTH: [Eps; 2] = [Eps::Plus, Eps::Minus];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FermionKind {
    Psi,
    Phi,
}

/// `Ψ^ε_j` or `Φ^ε_j` as a map on quasi-local operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fermion {
    pub kind: FermionKind,
    pub eps: Eps,
    pub site: i64,
}

impl Fermion {
    pub fn psi(eps: Eps, site: i64) -> Fermion {
        Fermion { kind: FermionKind::Psi, eps, site }
    }

    pub fn phi(eps: Eps, site: i64) -> Fermion {
        Fermion { kind: FermionKind::Phi, eps, site }
    }

    /// Creation fermions build the Fock space over the vacuum.
    pub fn is_creation(&self) -> bool {
        match self.kind {
            FermionKind::Phi => self.site > 0,
            FermionKind::Psi => self.site <= 0,
        }
    }
}

impl fmt::Display for Fermion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            FermionKind::Psi => "Psi",
            FermionKind::Phi => "Phi",
        };
        let e = if self.eps == Eps::Plus { '+' } else { '-' };
        write!(f, "{k}{e}{}", self.site)
    }
}

fn pop(x: u32) -> i32 {
    x.count_ones() as i32
}

/// A quasi-local operator of definite spin.
#[derive(Clone, PartialEq, Eq)]
pub struct QuasiLocalOp<S> {
    spin: i32,
    k: i64,
    len: u32,
    entries: BTreeMap<(u32, u32), S>,
}

impl<S: LatticeScalar> QuasiLocalOp<S> {
    /// Validates the block structure: `#↓(c) − #↓(r) = spin` for every entry.
    pub fn from_entries(spin: i32, k: i64, len: u32, entries: BTreeMap<(u32, u32), S>) -> Result<Self, LatticeError> {
        if len > 15 {
            return Err(LatticeError::Invalid(format!("window of {len} sites")));
        }
        for &(r, c) in entries.keys() {
            if r >> len != 0 || c >> len != 0 {
                return Err(LatticeError::Invalid(format!("entry ({r},{c}) outside {len} sites")));
            }
            if pop(c) - pop(r) != spin {
                return Err(LatticeError::Invalid(format!("entry ({r},{c}) does not have spin {spin}")));
            }
        }
        let mut op = QuasiLocalOp { spin, k, len, entries };
        op.entries.retain(|_, v| !v.is_zero());
        Ok(op)
    }

    pub fn zero(spin: i32) -> Self {
        QuasiLocalOp {
            spin,
            k: 1,
            len: 0,
            entries: BTreeMap::new(),
        }
    }

    pub fn spin(&self) -> i32 {
        self.spin
    }

    /// `(k, m)`; `m = k − 1` for an empty window.
    pub fn window(&self) -> (i64, i64) {
        (self.k, self.k + self.len as i64 - 1)
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), S> {
        &self.entries
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Shift by `d` sites to the right.
    pub fn translate(&self, d: i64) -> Self {
        QuasiLocalOp { k: self.k + d, ..self.clone() }
    }

    fn scaled(&self, c: &S) -> Self {
        let mut out = QuasiLocalOp { entries: BTreeMap::new(), ..self.clone() };
        if !c.is_zero() {
            for (key, v) in &self.entries {
                out.entries.insert(*key, v.mul_ref(c));
            }
        }
        out
    }

    /// Row-major dense matrix on the window.
    pub fn dense_rows(&self) -> Vec<Vec<S>> {
        let d = 1usize << self.len;
        let mut rows = vec![vec![S::zero(); d]; d];
        for (&(r, c), v) in &self.entries {
            rows[r as usize][c as usize] = v.clone();
        }
        rows
    }
}

impl<S: LatticeScalar + fmt::Display> fmt::Display for QuasiLocalOp<S> {
    /// Header line, then one row-major matrix row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, m) = self.window();
        writeln!(f, "spin {} window [{k},{m}]", self.spin)?;
        for row in self.dense_rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<S: LatticeScalar> fmt::Debug for QuasiLocalOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, m) = self.window();
        write!(f, "QuasiLocalOp(spin {}, [{k},{m}], {:?})", self.spin, self.entries)
    }
}

/// The free-fermion point with its `y`-dependent constants.
#[derive(Clone, Debug)]
pub struct FreeFermionLattice<S> {
    y: S,
    y_inv: S,
    /// `1/(1 − y²)`
    inv_1my2: S,
    i_pows: [S; 4],
}

impl FreeFermionLattice<YFrac> {
    pub fn symbolic() -> Self {
        Self::from_constants(YFrac::y_pow(1), YFrac::y_pow(-1), YFrac::inv_one_minus_y2())
    }
}

impl FreeFermionLattice<GaussianRational> {
    /// Rejects `y ∈ {0, ±1, ±i}`.
    pub fn at(y: GaussianRational) -> Result<Self, LatticeError> {
        let one = GaussianRational::one();
        let y2 = &y * &y;
        if y.is_zero() || y2 == one || y2 == -&one {
            return Err(LatticeError::SingularY(y.to_string()));
        }
        let inv = (&one - &y2).inv().expect("checked above");
        let y_inv = y.inv().expect("checked above");
        Ok(Self::from_constants(y, y_inv, inv))
    }
}

impl<S: LatticeScalar> FreeFermionLattice<S> {
    fn from_constants(y: S, y_inv: S, inv_1my2: S) -> Self {
        let i_pows = [0, 1, 2, 3].map(|k| S::from(GaussianRational::i_pow(k)));
        FreeFermionLattice { y, y_inv, inv_1my2, i_pows }
    }

    fn i_pow(&self, k: i64) -> &S {
        &self.i_pows[k.rem_euclid(4) as usize]
    }

    pub fn tau(&self, s: i32) -> S {
        self.y.mul_ref(self.i_pow(-(s as i64)))
    }

    pub fn tau_inv(&self, s: i32) -> S {
        self.y_inv.mul_ref(self.i_pow(s as i64))
    }

    /// `y^{2S(0)}`: spin 0, empty window with boundary at site 0.
    pub fn vacuum(&self) -> QuasiLocalOp<S> {
        QuasiLocalOp {
            spin: 0,
            k: 1,
            len: 0,
            entries: BTreeMap::from([((0, 0), S::one())]),
        }
    }

    /// Re-expresses `x` on the larger window `[k, m]`.
    pub fn extend(&self, x: &QuasiLocalOp<S>, k: i64, m: i64) -> QuasiLocalOp<S> {
        let (xk, xm) = x.window();
        assert!(k <= xk && m >= xm, "extend must not shrink the window");
        let dl = (xk - k) as u32;
        let dr = (m - xm) as u32;
        if dl == 0 && dr == 0 {
            return x.clone();
        }
        let (t, ti) = (self.tau(x.spin), self.tau_inv(x.spin));
        let weights: Vec<S> = (0..1u32 << dl)
            .map(|a| {
                (0..dl).fold(S::one(), |acc, b| acc.mul_ref(if a >> b & 1 == 0 { &t } else { &ti }))
            })
            .collect();
        let mut entries = BTreeMap::new();
        for (&(r, c), v) in &x.entries {
            for (a, w) in weights.iter().enumerate() {
                let val = v.mul_ref(w);
                for b in 0..1u32 << dr {
                    let hi = b << (dl + x.len);
                    entries.insert((a as u32 | r << dl | hi, a as u32 | c << dl | hi), val.clone());
                }
            }
        }
        QuasiLocalOp {
            spin: x.spin,
            k,
            len: x.len + dl + dr,
            entries,
        }
    }

    fn shrink_left(&self, x: &QuasiLocalOp<S>) -> Option<QuasiLocalOp<S>> {
        if x.len == 0 {
            return None;
        }
        let ti = self.tau_inv(x.spin);
        let entries = x
            .entries
            .iter()
            .filter(|(&(r, c), _)| r & 1 == 0 && c & 1 == 0)
            .map(|(&(r, c), v)| ((r >> 1, c >> 1), v.mul_ref(&ti)))
            .collect();
        let cand = QuasiLocalOp {
            spin: x.spin,
            k: x.k + 1,
            len: x.len - 1,
            entries,
        };
        (self.extend(&cand, x.k, x.window().1).entries == x.entries).then_some(cand)
    }

    fn shrink_right(&self, x: &QuasiLocalOp<S>) -> Option<QuasiLocalOp<S>> {
        if x.len == 0 {
            return None;
        }
        let top = x.len - 1;
        let entries = x
            .entries
            .iter()
            .filter(|(&(r, c), _)| r >> top == 0 && c >> top == 0)
            .map(|(&key, v)| (key, v.clone()))
            .collect();
        let cand = QuasiLocalOp {
            spin: x.spin,
            k: x.k,
            len: top,
            entries,
        };
        (self.extend(&cand, x.k, x.window().1).entries == x.entries).then_some(cand)
    }

    /// The same operator on its minimal window.
    pub fn trim(&self, x: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        if x.is_zero() {
            return QuasiLocalOp::zero(x.spin);
        }
        let mut cur = x.clone();
        while let Some(next) = self.shrink_left(&cur) {
            cur = next;
        }
        while let Some(next) = self.shrink_right(&cur) {
            cur = next;
        }
        cur
    }

    /// Minimal interval outside which `x` equals its tail/identity
    /// extension; `None` when that interval is empty.
    pub fn support(&self, x: &QuasiLocalOp<S>) -> Option<(i64, i64)> {
        let t = self.trim(x);
        (t.len > 0).then(|| t.window())
    }

    pub fn same(&self, a: &QuasiLocalOp<S>, b: &QuasiLocalOp<S>) -> bool {
        if a.is_zero() || b.is_zero() {
            return a.is_zero() && b.is_zero();
        }
        a.spin == b.spin && self.trim(a) == self.trim(b)
    }

    fn union_window(a: &QuasiLocalOp<S>, b: &QuasiLocalOp<S>) -> (i64, i64) {
        let (ak, am) = a.window();
        let (bk, bm) = b.window();
        (ak.min(bk), am.max(bm))
    }

    /// `a + c·b`; spins must agree unless one side is zero.
    pub fn add_scaled(&self, a: &QuasiLocalOp<S>, b: &QuasiLocalOp<S>, c: &S) -> QuasiLocalOp<S> {
        if b.is_zero() || c.is_zero() {
            return a.clone();
        }
        if a.is_zero() {
            return b.scaled(c);
        }
        assert_eq!(a.spin, b.spin, "adding operators of different spin");
        let (k, m) = Self::union_window(a, b);
        let mut out = self.extend(a, k, m);
        let b = self.extend(b, k, m);
        for (key, v) in b.entries {
            let t = v.mul_ref(c);
            match out.entries.get_mut(&key) {
                Some(x) => {
                    *x = x.add_ref(&t);
                    if x.is_zero() {
                        out.entries.remove(&key);
                    }
                }
                None => {
                    out.entries.insert(key, t);
                }
            }
        }
        out
    }

    pub fn add(&self, a: &QuasiLocalOp<S>, b: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        self.add_scaled(a, b, &S::one())
    }

    pub fn sub(&self, a: &QuasiLocalOp<S>, b: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        self.add_scaled(a, b, &S::one().neg_ref())
    }

    pub fn scale(&self, x: &QuasiLocalOp<S>, c: &S) -> QuasiLocalOp<S> {
        x.scaled(c)
    }

    /// `ψ^ε_j X` or `X ψ^ε_j`, with `ψ^±_j = σ^±_j e^{∓πiS(j−1)}`. The
    /// string through the tail turns `τ_s` into `τ_{s±1}`.
    pub fn psi_mul(&self, eps: Eps, j: i64, x: &QuasiLocalOp<S>, side: Side) -> QuasiLocalOp<S> {
        let spin = x.spin + eps.sign();
        if x.is_zero() {
            return QuasiLocalOp::zero(spin);
        }
        let (xk, xm) = x.window();
        let x = self.extend(x, xk.min(j), xm.max(j));
        let jb = (j - x.k) as u32;
        let bit = 1u32 << jb;
        // σ^+ takes ↓ to ↑
        let src = if eps == Eps::Plus { bit } else { 0 };
        let below = bit - 1;
        // per-site string factor −i on ↑, +i on ↓ for ψ^+ (conjugate for ψ^−)
        let phase = |state: u32| -> i64 {
            let downs = pop(state & below) as i64;
            let ups = jb as i64 - downs;
            match eps {
                Eps::Plus => 3 * ups + downs,
                Eps::Minus => ups + 3 * downs,
            }
        };
        let mut entries = BTreeMap::new();
        for (&(r, c), v) in &x.entries {
            let key = match side {
                Side::Left if r & bit == src => (r ^ bit, c),
                Side::Right if c & bit != src => (r, c ^ bit),
                _ => continue,
            };
            let ph = match side {
                Side::Left => phase(r),
                Side::Right => phase(c),
            };
            entries.insert(key, v.mul_ref(self.i_pow(ph)));
        }
        QuasiLocalOp {
            spin,
            k: x.k,
            len: x.len,
            entries,
        }
    }

    fn parity(s: i32) -> S {
        if s.rem_euclid(2) == 0 {
            S::one()
        } else {
            S::one().neg_ref()
        }
    }

    /// `Ψ^ε_j(X) = ψX − (−1)^s Xψ`
    pub fn psi(&self, eps: Eps, j: i64, x: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        let l = self.psi_mul(eps, j, x, Side::Left);
        let r = self.psi_mul(eps, j, x, Side::Right);
        self.add_scaled(&l, &r, &Self::parity(x.spin).neg_ref())
    }

    /// `Φ^ε_j(X) = (ψX − y^{∓2}(−1)^s Xψ)/(1 − y^{∓2})`
    pub fn phi(&self, eps: Eps, j: i64, x: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        let l = self.psi_mul(eps, j, x, Side::Left);
        let r = self.psi_mul(eps, j, x, Side::Right);
        let y2 = self.y.mul_ref(&self.y);
        let y_m2 = self.y_inv.mul_ref(&self.y_inv);
        // 1/(1 − y^{−2}) = −y²/(1 − y²)
        let (w, norm) = match eps {
            Eps::Plus => (y_m2, y2.mul_ref(&self.inv_1my2).neg_ref()),
            Eps::Minus => (y2, self.inv_1my2.clone()),
        };
        let c = w.mul_ref(&Self::parity(x.spin)).neg_ref();
        self.add_scaled(&l, &r, &c).scaled(&norm)
    }

    pub fn apply(&self, f: Fermion, x: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        match f.kind {
            FermionKind::Psi => self.psi(f.eps, f.site, x),
            FermionKind::Phi => self.phi(f.eps, f.site, x),
        }
    }

    /// Applies `fs[0] ∘ fs[1] ∘ ⋯` (rightmost first).
    pub fn apply_all(&self, fs: &[Fermion], x: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        fs.iter().rev().fold(x.clone(), |acc, &f| self.apply(f, &acc))
    }

    /// `A X` and `X A` for `A = (ψ^+_i + ψ^+_{i+1})(ψ^−_i − ψ^−_{i+1})`.
    fn a_mul(&self, i: i64, x: &QuasiLocalOp<S>, side: Side) -> QuasiLocalOp<S> {
        let mut out = QuasiLocalOp::zero(x.spin);
        let minus = S::one().neg_ref();
        for a in [i, i + 1] {
            for (b, sb) in [(i, S::one()), (i + 1, minus.clone())] {
                let t = match side {
                    Side::Left => self.psi_mul(Eps::Plus, a, &self.psi_mul(Eps::Minus, b, x, Side::Left), Side::Left),
                    Side::Right => self.psi_mul(Eps::Minus, b, &self.psi_mul(Eps::Plus, a, x, Side::Right), Side::Right),
                };
                out = self.add_scaled(&out, &t, &sb);
            }
        }
        out
    }

    /// `e^H X e^{−H}` with `H = zA`, `H² = 0`: the coefficients of `z⁰, z¹, z²`.
    pub fn r_adjoint(&self, i: i64, x: &QuasiLocalOp<S>) -> [QuasiLocalOp<S>; 3] {
        let ax = self.a_mul(i, x, Side::Left);
        let xa = self.a_mul(i, x, Side::Right);
        let axa = self.a_mul(i, &ax, Side::Right);
        [x.clone(), self.sub(&ax, &xa), axa.scaled(&S::one().neg_ref())]
    }

    /// `A²` applied to `x` from the left; zero when `H² = 0`.
    pub fn a_squared(&self, i: i64, x: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        self.a_mul(i, &self.a_mul(i, x, Side::Left), Side::Left)
    }

    /// Applies the adjoint R factors for `i = first, …, last` to a
    /// `z`-series, truncating at its length.
    fn r_product(&self, series: Vec<QuasiLocalOp<S>>, first: i64, last: i64) -> Vec<QuasiLocalOp<S>> {
        let n = series.len();
        let mut cur = series;
        for i in first..=last {
            let mut next: Vec<QuasiLocalOp<S>> = cur.iter().map(|c| QuasiLocalOp::zero(c.spin)).collect();
            for (p, c) in cur.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                next[p] = self.add(&next[p], c);
                if p + 1 < n {
                    let ax = self.a_mul(i, c, Side::Left);
                    let xa = self.a_mul(i, c, Side::Right);
                    next[p + 1] = self.add(&next[p + 1], &self.sub(&ax, &xa));
                    if p + 2 < n {
                        let axa = self.a_mul(i, &ax, Side::Right);
                        next[p + 2] = self.sub(&next[p + 2], &axa);
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// `h*(ζ)(X)` as a series in `z` through `z^order`: the R product from
    /// site `k − 1` of the trimmed window up to `m + order − 1`. With
    /// `extra > 0` the product runs `extra` factors further.
    pub fn hstar_series_ext(&self, x: &QuasiLocalOp<S>, order: usize, extra: usize) -> Vec<QuasiLocalOp<S>> {
        let x = self.trim(x);
        let (k, m) = x.window();
        let mut series = vec![QuasiLocalOp::zero(x.spin); order + 1];
        series[0] = x;
        let out = self.r_product(series, k - 1, m + order as i64 - 1 + extra as i64);
        out.iter().map(|c| self.trim(c)).collect()
    }

    pub fn hstar_series(&self, x: &QuasiLocalOp<S>, order: usize) -> Vec<QuasiLocalOp<S>> {
        self.hstar_series_ext(x, order, 0)
    }

    /// Re-expands `z`-coefficients in `u = ζ² − 1`.
    pub fn z_to_u(&self, zs: &[QuasiLocalOp<S>]) -> Vec<QuasiLocalOp<S>> {
        let n = zs.len().saturating_sub(1);
        let z = z_of_u(n);
        let mut zj = crate::exactmath::TruncatedSeries::<GaussianRational>::one(crate::exactmath::SeriesVar::U, n);
        let mut out: Vec<QuasiLocalOp<S>> = zs.iter().map(|c| QuasiLocalOp::zero(c.spin)).collect();
        for c in zs {
            for (p, a) in zj.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    out[p] = self.add_scaled(&out[p], c, &S::from(a.clone()));
                }
            }
            zj = zj.mul(&z);
        }
        out
    }

    /// `h*_p(X)`, the coefficient of `(ζ² − 1)^p`.
    pub fn hstar_coeff(&self, p: usize, x: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        let zs = self.hstar_series(x, p);
        self.trim(&self.z_to_u(&zs)[p])
    }

    /// Series inverse of `h*(ζ)` applied to `x`, in `z`.
    pub fn hstar_inverse_series(&self, x: &QuasiLocalOp<S>, order: usize) -> Vec<QuasiLocalOp<S>> {
        let mut g: Vec<QuasiLocalOp<S>> = vec![self.trim(x)];
        let mut images: Vec<Vec<QuasiLocalOp<S>>> = Vec::new();
        for n in 1..=order {
            images.push(self.hstar_series(&g[n - 1], order - (n - 1)));
            let mut acc = QuasiLocalOp::zero(x.spin);
            for (j, img) in images.iter().enumerate() {
                acc = self.sub(&acc, &img[n - j]);
            }
            g.push(self.trim(&acc));
        }
        g
    }

    /// Applies `h*(ζ)` to a `z`-series of operators.
    pub fn hstar_on_series(&self, s: &[QuasiLocalOp<S>]) -> Vec<QuasiLocalOp<S>> {
        let order = s.len() - 1;
        let mut out: Vec<QuasiLocalOp<S>> = s.iter().map(|c| QuasiLocalOp::zero(c.spin)).collect();
        for (b, y) in s.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (a, c) in self.hstar_series(y, order - b).into_iter().enumerate() {
                out[a + b] = self.add(&out[a + b], &c);
            }
        }
        out.iter().map(|c| self.trim(c)).collect()
    }

    /// Fock vacuum expectation: a site-factorised weighted trace, normalised
    /// so that the vacuum has value 1 and creation fermions are killed.
    pub fn vacuum_expectation(&self, x: &QuasiLocalOp<S>) -> S {
        if x.spin != 0 {
            return S::zero();
        }
        let inv = &self.inv_1my2;
        let y2 = self.y.mul_ref(&self.y);
        // sites ≥ 1: ↑ ↦ 1/(1−y²), ↓ ↦ y²/(y²−1); sites ≤ 0: ↑ ↦ 1/(y−y⁻¹), ↓ ↦ 1/(y⁻¹−y)
        let pos = [inv.clone(), y2.mul_ref(inv).neg_ref()];
        let neg = [self.y.mul_ref(inv).neg_ref(), self.y.mul_ref(inv)];
        let mut total = S::zero();
        for (&(r, c), v) in &x.entries {
            if r != c {
                continue;
            }
            let mut w = v.clone();
            for b in 0..x.len {
                let site = x.k + b as i64;
                let table = if site >= 1 { &pos } else { &neg };
                w = w.mul_ref(&table[(r >> b & 1) as usize]);
            }
            total = total.add_ref(&w);
        }
        total
    }

    /// `I_ν(X) = Σ_ε Σ_p :Φ^ε_p Ψ^{−ε}_{p+ν}:(X)`, with `Ψ_{j>0}`, `Φ_{j≤0}`
    /// moved to the right.
    pub fn i_nu(&self, nu: i64, x: &QuasiLocalOp<S>) -> QuasiLocalOp<S> {
        let x = self.trim(x);
        let (k, m) = x.window();
        let a = nu.abs();
        let mut out = QuasiLocalOp::zero(x.spin);
        for eps in Eps::BOTH {
            for p in k.min(1) - a - 1..=m.max(0) + a + 1 {
                let q = p + nu;
                let t = if p <= 0 && q <= 0 {
                    self.psi(eps.flip(), q, &self.phi(eps, p, &x)).scaled(&S::one().neg_ref())
                } else {
                    self.phi(eps, p, &self.psi(eps.flip(), q, &x))
                };
                out = self.add(&out, &t);
            }
        }
        self.trim(&out)
    }

    /// The bosonized form of `h*(ζ)(X)` through `z^order`.
    ///
    /// `Literal` is `(1 − z²) exp(Σ_{ν≥1} z^ν/ν (I_{−ν} − I_ν))`. `NormalOrdered`
    /// is `(1 − z²) :exp(⋯):`, which by `[I_μ, I_ν] = 2μ δ_{μ+ν,0}` equals the
    /// plain exponential without the prefactor.
    pub fn bosonized_hstar(&self, x: &QuasiLocalOp<S>, order: usize, form: BosonForm) -> Vec<QuasiLocalOp<S>> {
        let spin = x.spin;
        let e = |s: &[QuasiLocalOp<S>]| -> Vec<QuasiLocalOp<S>> {
            let mut out = vec![QuasiLocalOp::zero(spin); order + 1];
            for (n, c) in s.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for nu in 1..=order - n {
                    let d = self.sub(&self.i_nu(-(nu as i64), c), &self.i_nu(nu as i64, c));
                    let w = S::from(GaussianRational::from_frac(1, nu as i64));
                    out[n + nu] = self.add_scaled(&out[n + nu], &d, &w);
                }
            }
            out
        };
        let mut term = vec![QuasiLocalOp::zero(spin); order + 1];
        term[0] = self.trim(x);
        let mut sum = term.clone();
        for j in 1..=order {
            let w = S::from(GaussianRational::from_frac(1, j as i64));
            term = e(&term).iter().map(|c| c.scaled(&w)).collect();
            for n in 0..=order {
                sum[n] = self.add(&sum[n], &term[n]);
            }
        }
        let mut out = sum.clone();
        if form == BosonForm::Literal {
            for n in 2..=order {
                out[n] = self.sub(&out[n], &sum[n - 2]);
            }
        }
        out.iter().map(|c| self.trim(c)).collect()
    }

    /// Vacuum plus creation fermions applied to it.
    pub fn fock_panel(&self) -> Vec<(String, QuasiLocalOp<S>)> {
        use Eps::*;
        let words: Vec<Vec<Fermion>> = vec![
            vec![],
            vec![Fermion::phi(Plus, 1)],
            vec![Fermion::phi(Minus, 2)],
            vec![Fermion::psi(Plus, 0)],
            vec![Fermion::psi(Minus, -1)],
            vec![Fermion::phi(Plus, 1), Fermion::psi(Minus, 0)],
            vec![Fermion::phi(Minus, 2), Fermion::phi(Plus, 1)],
        ];
        words
            .into_iter()
            .map(|w| {
                let name = if w.is_empty() {
                    "vac".to_string()
                } else {
                    w.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(".")
                };
                (name, self.apply_all(&w, &self.vacuum()))
            })
            .collect()
    }

    /// A random operator of the given spin on `[k, k + len − 1]`.
    pub fn random_op<R: Rng + ?Sized>(&self, rng: &mut R, spin: i32, k: i64, len: u32, n_entries: usize) -> QuasiLocalOp<S> {
        let mut entries = BTreeMap::new();
        let d = 1u32 << len;
        let mut tries = 0;
        while entries.len() < n_entries && tries < 50 * n_entries {
            tries += 1;
            let r = rng.gen_range(0..d);
            let c = rng.gen_range(0..d);
            if pop(c) - pop(r) == spin {
                entries.insert((r, c), S::from(GaussianRational::random_gaussian_int(rng, 3)));
            }
        }
        QuasiLocalOp::from_entries(spin, k, len, entries).expect("constructed with the right spin")
    }
}

/// Coefficient-wise comparison of two operator series.
pub fn series_equal<S: LatticeScalar>(lat: &FreeFermionLattice<S>, a: &[QuasiLocalOp<S>], b: &[QuasiLocalOp<S>]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| lat.same(x, y))
}

/// Checks `h* F_p h*⁻¹ = −F_{p−1} z + (1 − z²) Σ_{k≥p} F_k z^{k−p}` through
/// `z^order` on every panel operator, for `F = Φ^±, Ψ^±`.
pub fn conjugation_check<S: LatticeScalar>(
    lat: &FreeFermionLattice<S>,
    p: i64,
    order: usize,
    panel: &[QuasiLocalOp<S>],
) -> bool {
    let cases: Vec<(FermionKind, Eps, &QuasiLocalOp<S>)> = [FermionKind::Phi, FermionKind::Psi]
        .into_iter()
        .flat_map(|kind| Eps::BOTH.into_iter().flat_map(move |e| panel.iter().map(move |x| (kind, e, x))))
        .collect();
    cases.into_par_iter().all(|(kind, eps, x)| {
        let f = |site: i64, y: &QuasiLocalOp<S>| lat.apply(Fermion { kind, eps, site }, y);
        let g = lat.hstar_inverse_series(x, order);
        let fg: Vec<QuasiLocalOp<S>> = g.iter().map(|c| f(p, c)).collect();
        let lhs = lat.hstar_on_series(&fg);
        let spin = x.spin() + eps.sign();
        let mut rhs = vec![QuasiLocalOp::zero(spin); order + 1];
        for (n, slot) in rhs.iter_mut().enumerate() {
            let mut acc = f(p + n as i64, x);
            if n == 1 {
                acc = lat.sub(&acc, &f(p - 1, x));
            }
            if n >= 2 {
                acc = lat.sub(&acc, &f(p + n as i64 - 2, x));
            }
            *slot = acc;
        }
        series_equal(lat, &lhs, &rhs)
    })
}

/// `⟨h*(ζ)⟩` as `z`-coefficients through `z^order`.
pub fn vacuum_expectation_series<S: LatticeScalar>(lat: &FreeFermionLattice<S>, order: usize) -> Vec<S> {
    lat.hstar_series(&lat.vacuum(), order).iter().map(|c| lat.vacuum_expectation(c)).collect()
}

/// Compares `h*(ζ)` with its bosonized form on every panel operator.
pub fn bosonization_check<S: LatticeScalar>(
    lat: &FreeFermionLattice<S>,
    order: usize,
    panel: &[QuasiLocalOp<S>],
    form: BosonForm,
) -> bool {
    panel
        .par_iter()
        .all(|x| series_equal(lat, &lat.hstar_series(x, order), &lat.bosonized_hstar(x, order, form)))
}

/// Vacuum expectation of the bosonized form, `z`-coefficients.
pub fn bosonized_vacuum_expectation<S: LatticeScalar>(lat: &FreeFermionLattice<S>, order: usize, form: BosonForm) -> Vec<S> {
    lat.bosonized_hstar(&lat.vacuum(), order, form).iter().map(|c| lat.vacuum_expectation(c)).collect()
}

/// `[Ψ^ε_a, Ψ^δ_b]_+ = [Φ^ε_a, Φ^δ_b]_+ = 0` and `[Ψ^ε_a, Φ^δ_b]_+ = δ_{a,b}δ_{ε,−δ}`
/// on random operators of every spin in `−1..=1` and every window length
/// `1..=max_len`, for all sites within one of the window.
pub fn car_check<S: LatticeScalar, R: Rng + ?Sized>(lat: &FreeFermionLattice<S>, rng: &mut R, max_len: u32) -> Option<String> {
    let anti = |f: Fermion, g: Fermion, x: &QuasiLocalOp<S>| lat.add(&lat.apply(f, &lat.apply(g, x)), &lat.apply(g, &lat.apply(f, x)));
    for len in 1..=max_len {
        for spin in -1..=1 {
            let k = 1 - (len as i64) / 2;
            let x = lat.random_op(rng, spin, k, len, 6);
            let sites: Vec<i64> = (k - 1..=k + len as i64).collect();
            for &a in &sites {
                for &b in &sites {
                    for e in Eps::BOTH {
                        for f in Eps::BOTH {
                            let (psi_a, phi_a) = (Fermion::psi(e, a), Fermion::phi(e, a));
                            let (psi_b, phi_b) = (Fermion::psi(f, b), Fermion::phi(f, b));
                            if !anti(psi_a, psi_b, &x).is_zero() {
                                return Some(format!("{psi_a} {psi_b} len={len} spin={spin}"));
                            }
                            if !anti(phi_a, phi_b, &x).is_zero() {
                                return Some(format!("{phi_a} {phi_b} len={len} spin={spin}"));
                            }
                            let pf = anti(psi_a, phi_b, &x);
                            let ok = if a == b && e != f { lat.same(&pf, &x) } else { pf.is_zero() };
                            if !ok {
                                return Some(format!("{psi_a} {phi_b} len={len} spin={spin}"));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// `Ψ^±_j(vac) = 0` for `1 ≤ j ≤ reach` and `Φ^±_j(vac) = 0` for `−reach < j ≤ 0`.
pub fn vacuum_annihilation_check<S: LatticeScalar>(lat: &FreeFermionLattice<S>, reach: i64) -> Option<String> {
    let v = lat.vacuum();
    for e in Eps::BOTH {
        for j in 1..=reach {
            if !lat.psi(e, j, &v).is_zero() {
                return Some(Fermion::psi(e, j).to_string());
            }
        }
        for j in 1 - reach..=0 {
            if !lat.phi(e, j, &v).is_zero() {
                return Some(Fermion::phi(e, j).to_string());
            }
        }
    }
    None
}

/// For every panel operator with support `[k, m]` and `p ≤ max_p`, the support
/// of `h*_p(X)` lies in `[k − 1, m + p]`, and extending the product by one more
/// site leaves the coefficients unchanged.
pub fn hsupp_check<S: LatticeScalar>(lat: &FreeFermionLattice<S>, max_p: usize, panel: &[(String, QuasiLocalOp<S>)]) -> Option<String> {
    panel.par_iter().find_map_any(|(name, x)| {
        let short = lat.hstar_series(x, max_p);
        let long = lat.hstar_series_ext(x, max_p, 1);
        if !series_equal(lat, &short, &long) {
            return Some(format!("{name}: not stable"));
        }
        let (k, m) = lat.support(x)?;
        let coeffs = lat.z_to_u(&short);
        for (p, c) in coeffs.iter().enumerate() {
            if let Some((a, b)) = lat.support(c) {
                if a < k - 1 || b > m + p as i64 {
                    return Some(format!("{name}: p={p} support [{a}, {b}]"));
                }
            }
        }
        None
    })
}

/// The adjoint R-matrix on sites `i, i+1` disjoint from the support of a
/// random operator acts as the identity.
pub fn r_adjoint_disjoint_check<S: LatticeScalar, R: Rng + ?Sized>(lat: &FreeFermionLattice<S>, rng: &mut R, trials: usize) -> Option<String> {
    for t in 0..trials {
        let spin = (t % 3) as i32 - 1;
        let x = lat.random_op(rng, spin, t as i64 % 3, 3, 6);
        let Some((k, m)) = lat.support(&x) else { continue };
        for i in (k - 4..=k - 2).chain(m + 1..=m + 3) {
            let [c0, c1, c2] = lat.r_adjoint(i, &x);
            if !(lat.same(&c0, &x) && c1.is_zero() && c2.is_zero()) {
                return Some(format!("i={i} support [{k}, {m}]"));
            }
        }
    }
    None
}

/// Partitions of `n` in decreasing order of parts.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Result of the monomial rank computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialRank {
    pub weight: usize,
    pub monomials: usize,
    pub rank: usize,
    pub window: (i64, i64),
}

/// Exact rank of `∏ h*_p^{m_p}(vac)` for `Σ p·m_p ≤ w`, flattened on `[−w, w]`.
pub fn schur_monomial_rank(w: usize, y: GaussianRational) -> Result<MonomialRank, LatticeError> {
    if w > WEIGHT_CAP {
        return Err(LatticeError::WeightTooLarge(w, WEIGHT_CAP));
    }
    let lat = FreeFermionLattice::at(y)?;
    let mut values: BTreeMap<Vec<usize>, QuasiLocalOp<GaussianRational>> = BTreeMap::new();
    values.insert(Vec::new(), lat.vacuum());
    for size in 1..=w {
        let batch: Vec<(Vec<usize>, QuasiLocalOp<GaussianRational>)> = partitions(size)
            .into_par_iter()
            .map(|lambda| {
                let base = &values[&lambda[1..].to_vec()];
                let v = lat.hstar_coeff(lambda[0], base);
                (lambda, v)
            })
            .collect();
        values.extend(batch);
    }
    let (k, m) = (-(w as i64), w as i64);
    let len = (m - k + 1) as u32;
    let mut mat = ExactMatrix::new(1usize << (2 * len));
    for v in values.values() {
        let e = lat.extend(v, k, m);
        mat.push_row(e.entries.iter().map(|(&(r, c), x)| (((r as usize) << len) | c as usize, x.clone())).collect());
    }
    Ok(MonomialRank {
        weight: w,
        monomials: values.len(),
        rank: exact_rank(&mat),
        window: (k, m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    type Lat = FreeFermionLattice<YFrac>;

    fn lat() -> Lat {
        FreeFermionLattice::symbolic()
    }

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(5)
    }

    #[test]
    fn vacuum_and_embedding() {
        let l = lat();
        let v = l.vacuum();
        assert_eq!(l.support(&v), None);
        let e = l.extend(&v, 1, 2);
        assert_eq!(e.num_entries(), 4);
        assert!(e.entries().iter().all(|(&(r, c), x)| r == c && x.is_one()));
        assert!(l.same(&e, &v));
        let e = l.extend(&v, -1, 0);
        assert_eq!(e.entries()[&(0, 0)], YFrac::y_pow(2));
        assert!(l.same(&e, &v));
    }

    #[test]
    fn singular_y_rejected() {
        for y in [GaussianRational::zero(), GaussianRational::one(), GaussianRational::i(), GaussianRational::from_int(-1)] {
            assert!(FreeFermionLattice::at(y).is_err());
        }
        assert!(FreeFermionLattice::at(GaussianRational::from_int(3)).is_ok());
    }

    #[test]
    fn spin_block_structure_is_enforced() {
        let bad = BTreeMap::from([((0u32, 0u32), YFrac::one())]);
        assert!(QuasiLocalOp::from_entries(1, 1, 1, bad).is_err());
    }

    #[test]
    fn vacuum_annihilation() {
        let l = lat();
        let v = l.vacuum();
        for e in Eps::BOTH {
            for j in 1..4 {
                assert!(l.psi(e, j, &v).is_zero(), "Psi{e:?}{j}");
            }
            for j in -3..=0 {
                assert!(l.phi(e, j, &v).is_zero(), "Phi{e:?}{j}");
            }
            assert!(!l.phi(e, 1, &v).is_zero());
            assert!(!l.psi(e, 0, &v).is_zero());
        }
    }

    #[test]
    fn spin_shift_and_tail_relabel() {
        let l = lat();
        let mut r = rng();
        let x = l.random_op(&mut r, 0, 1, 2, 5);
        let y = l.phi(Eps::Plus, 2, &x);
        assert_eq!(y.spin(), 1);
        let y = l.psi(Eps::Minus, -1, &x);
        assert_eq!(y.spin(), -1);
        assert_eq!(l.tau(1), l.tau(0).mul_ref(&YFrac::from(GaussianRational::i_pow(-1))));
    }

    #[test]
    fn canonical_anticommutation() {
        assert_eq!(car_check(&lat(), &mut rng(), 6), None);
        let g = FreeFermionLattice::at(GaussianRational::from_parts(2, 3)).unwrap();
        assert_eq!(car_check(&g, &mut rng(), 4), None);
    }

    #[test]
    fn support_bounds_and_disjoint_r_matrices() {
        let l = lat();
        assert_eq!(hsupp_check(&l, 4, &l.fock_panel()), None);
        assert_eq!(r_adjoint_disjoint_check(&l, &mut rng(), 6), None);
        assert_eq!(vacuum_annihilation_check(&l, 6), None);
    }

    #[test]
    fn vanishing_outside_the_window() {
        let l = lat();
        let mut r = rng();
        for spin in -1..=1 {
            let x = l.random_op(&mut r, spin, 0, 3, 8);
            for e in Eps::BOTH {
                for p in 3..6 {
                    assert!(l.psi(e, p, &x).is_zero());
                }
                for p in -4..0 {
                    assert!(l.phi(e, p, &x).is_zero());
                }
            }
        }
    }

    #[test]
    fn r_adjoint_properties() {
        let l = lat();
        let mut r = rng();
        let x = l.random_op(&mut r, 0, 0, 2, 6);
        for i in -2..4 {
            assert!(l.a_squared(i, &x).is_zero(), "A² at {i}");
        }
        let far = l.random_op(&mut r, 1, 4, 3, 6);
        for i in [0, 1, 2, 7, 8] {
            let [c0, c1, c2] = l.r_adjoint(i, &far);
            assert!(l.same(&c0, &far));
            assert!(c1.is_zero() && c2.is_zero(), "i={i}");
        }
        let [_, c1, _] = l.r_adjoint(3, &far);
        assert!(!c1.is_zero());
    }

    #[test]
    fn vacuum_functional() {
        let l = lat();
        assert!(l.vacuum_expectation(&l.vacuum()).is_one());
        let mut r = rng();
        for spin in [-1, 1] {
            let y = l.random_op(&mut r, spin, -1, 3, 8);
            for e in Eps::BOTH {
                if e.sign() + spin != 0 {
                    continue;
                }
                for j in 1..4 {
                    assert!(l.vacuum_expectation(&l.phi(e, j, &y)).is_zero());
                }
                for j in -3..=0 {
                    assert!(l.vacuum_expectation(&l.psi(e, j, &y)).is_zero());
                }
            }
        }
    }

    #[test]
    fn vacuum_expectation_of_hstar() {
        let l = lat();
        let s = vacuum_expectation_series(&l, 4);
        let expect = [1, 0, -1, 0, 0].map(|c| YFrac::from(GaussianRational::from_int(c)));
        assert_eq!(s, expect);
    }

    #[test]
    fn hstar_basics() {
        let l = lat();
        let mut r = rng();
        let x = l.random_op(&mut r, 0, 1, 2, 5);
        assert!(l.same(&l.hstar_coeff(0, &x), &x));
        for p in 0..=3 {
            let a = l.hstar_series(&x, p);
            let b = l.hstar_series_ext(&x, p, 1);
            assert!(series_equal(&l, &a, &b), "stabilisation at order {p}");
        }
        for p in 1..=3 {
            let (k, m) = l.support(&x).unwrap();
            if let Some((a, b)) = l.support(&l.hstar_coeff(p, &x)) {
                assert!(a >= k - 1 && b <= m + p as i64);
            }
        }
        let inv = l.hstar_inverse_series(&x, 3);
        let back = l.hstar_on_series(&inv);
        assert!(l.same(&back[0], &x));
        assert!(back[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn translation_commutes() {
        let l = lat();
        let mut r = rng();
        let x = l.random_op(&mut r, 1, 0, 2, 5);
        let t = x.translate(2);
        assert!(l.same(&l.psi(Eps::Plus, 3, &t), &l.psi(Eps::Plus, 1, &x).translate(2)));
        assert!(l.same(&l.phi(Eps::Minus, 2, &t), &l.phi(Eps::Minus, 0, &x).translate(2)));
        let h = l.hstar_coeff(2, &t);
        assert!(l.same(&h, &l.hstar_coeff(2, &x).translate(2)));
    }

    #[test]
    fn heisenberg_relations() {
        let l = lat();
        for (_, x) in l.fock_panel().into_iter().take(4) {
            let c = |a: i64, b: i64| l.sub(&l.i_nu(a, &l.i_nu(b, &x)), &l.i_nu(b, &l.i_nu(a, &x)));
            assert!(l.same(&c(1, -1), &l.scale(&x, &YFrac::from(GaussianRational::from_int(2)))));
            assert!(c(1, 2).is_zero());
        }
        let v = l.vacuum();
        assert!(l.i_nu(1, &v).is_zero());
        assert!(l.i_nu(2, &v).is_zero());
        assert!(!l.i_nu(-1, &v).is_zero());
    }

    #[test]
    fn conjugation_low_order() {
        let l = lat();
        let panel: Vec<_> = l.fock_panel().into_iter().map(|(_, x)| x).take(3).collect();
        assert!(conjugation_check(&l, 1, 0, &panel));
        assert!(conjugation_check(&l, 1, 2, &panel));
    }

    #[test]
    fn bosonization_low_order() {
        let l = lat();
        let panel: Vec<_> = l.fock_panel().into_iter().map(|(_, x)| x).take(3).collect();
        assert!(bosonization_check(&l, 0, &panel, BosonForm::Literal));
        assert!(bosonization_check(&l, 1, &panel, BosonForm::Literal));
        assert!(bosonization_check(&l, 2, &panel, BosonForm::NormalOrdered));
        assert!(!bosonization_check(&l, 2, &panel[..1], BosonForm::Literal));
    }

    #[test]
    fn literal_exponential_squares_the_vacuum_value() {
        // ⟨exp(A − B)⟩ = 1 − z² already, so the prefactor gives (1 − z²)²
        let l = lat();
        let g = |c| YFrac::from(GaussianRational::from_int(c));
        assert_eq!(bosonized_vacuum_expectation(&l, 4, BosonForm::Literal), [1, 0, -2, 0, 1].map(g));
        assert_eq!(bosonized_vacuum_expectation(&l, 4, BosonForm::NormalOrdered), [1, 0, -1, 0, 0].map(g));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn monomial_rank_small() {
        let y = GaussianRational::from_int(3);
        assert_eq!(schur_monomial_rank(0, y.clone()).unwrap().rank, 1);
        assert_eq!(schur_monomial_rank(2, y).unwrap().rank, 4);
    }
}
