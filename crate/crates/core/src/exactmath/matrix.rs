//! Sparse exact matrices and rank by fraction-free elimination.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::{ExactError, Field, GaussianRational, RatFun, Ring, Var};

/// Row-sparse matrix; absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F> {
    cols: usize,
    rows: Vec<BTreeMap<usize, F>>,
}

impl<F: Ring> ExactMatrix<F> {
    pub fn new(cols: usize) -> Self {
        ExactMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::new(cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.push_row(r.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
        }
        m
    }

    /// Appends a sparse row; zero entries are dropped.
    pub fn push_row(&mut self, mut row: BTreeMap<usize, F>) {
        row.retain(|_, x| !x.is_zero());
        if let Some((&c, _)) = row.iter().next_back() {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
        }
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.rows[r].get(&c).cloned().unwrap_or_else(F::zero)
    }

    pub fn rows(&self) -> &[BTreeMap<usize, F>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let mut t = vec![BTreeMap::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, x) in row {
                t[c].insert(r, x.clone());
            }
        }
        ExactMatrix {
            cols: self.rows.len(),
            rows: t,
        }
    }

    /// Dense-times-sparse product `self · rhs`.
    pub fn mul(&self, rhs: &ExactMatrix<F>) -> ExactMatrix<F> {
        assert_eq!(self.cols, rhs.nrows());
        let mut out = ExactMatrix::new(rhs.cols);
        for row in &self.rows {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (&k, a) in row {
                for (&c, b) in &rhs.rows[k] {
                    let e = acc.entry(c).or_insert_with(F::zero);
                    *e = e.add_ref(&a.mul_ref(b));
                }
            }
            out.push_row(acc);
        }
        out
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> Result<G, ExactError>) -> Result<ExactMatrix<G>, ExactError> {
        let mut out = ExactMatrix::new(self.cols);
        for row in &self.rows {
            let mut r = BTreeMap::new();
            for (&c, x) in row {
                r.insert(c, f(x)?);
            }
            out.push_row(r);
        }
        Ok(out)
    }
}

impl ExactMatrix<RatFun> {
    /// Substitutes scalars for all variables; a vanishing denominator is
    /// reported so the caller can pick another point.
    pub fn specialize(&self, at: &BTreeMap<Var, GaussianRational>) -> Result<ExactMatrix<GaussianRational>, ExactError> {
        self.map(|x| x.eval(at))
    }
}

/// Rank by Bareiss fraction-free elimination with sparse rows.
///
/// Every remaining row is updated by `(p_k·row − row[c_k]·pivot_row) / p_{k−1}`,
/// so integral inputs stay integral; over a field the division is always
/// exact anyway.
pub fn exact_rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    let mut rows: Vec<BTreeMap<usize, F>> = m.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut prev = F::one();
    let mut rank = 0;
    while !rows.is_empty() {
        // sparsest row with the leftmost leading column keeps fill-in low
        let (pi, _) = rows
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| (*r.keys().next().expect("non-empty row"), r.len()))
            .expect("rows non-empty");
        let pivot_row = rows.swap_remove(pi);
        let (&pc, pv) = pivot_row.iter().next().expect("non-empty row");
        let pv = pv.clone();
        rank += 1;
        let prev_inv = prev.inv().expect("previous pivot is non-zero");
        let mut next = Vec::with_capacity(rows.len());
        for row in rows {
            let factor = row.get(&pc).cloned();
            let mut out: BTreeMap<usize, F> = BTreeMap::new();
            for (&c, x) in &row {
                if c != pc {
                    out.insert(c, pv.mul_ref(x));
                }
            }
            if let Some(f) = factor {
                for (&c, x) in pivot_row.iter().skip(1) {
                    let e = out.entry(c).or_insert_with(F::zero);
                    *e = e.sub_ref(&f.mul_ref(x));
                }
            }
            out.retain(|_, x| !x.is_zero());
            if out.is_empty() {
                continue;
            }
            for x in out.values_mut() {
                *x = x.mul_ref(&prev_inv);
            }
            next.push(out);
        }
        rows = next;
        prev = pv;
    }
    rank
}

/// Prime for modular ranks; `≡ 1 mod 4`, so `i` has an image in `F_p`.
pub const RANK_PRIME: u64 = 998_244_353;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let p = RANK_PRIME;
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `√−1` in `F_p`, from the primitive root 3.
fn sqrt_minus_one() -> u64 {
    pow_mod(3, (RANK_PRIME - 1) / 4)
}

fn rational_mod_p(x: &num_rational::BigRational) -> Option<u64> {
    let p = num_bigint::BigInt::from(RANK_PRIME);
    let red = |n: &num_bigint::BigInt| (((n % &p) + &p) % &p).to_u64().expect("reduced below p");
    let d = red(x.denom());
    (d != 0).then(|| red(x.numer()) * pow_mod(d, RANK_PRIME - 2) % RANK_PRIME)
}

/// Image under `ℚ(i) ⊃ ℤ_(p)[i] → F_p`; `None` when a denominator is
/// divisible by `p`.
pub fn gaussian_mod_p(x: &GaussianRational) -> Option<u64> {
    let re = rational_mod_p(&x.re)?;
    let im = rational_mod_p(&x.im)?;
    Some((re + im * sqrt_minus_one() % RANK_PRIME) % RANK_PRIME)
}

fn dense_rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let p = RANK_PRIME;
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pi) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pi);
        let inv = pow_mod(rows[rank][c], p - 2);
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| x * inv % p).collect();
        for r in rank + 1..rows.len() {
            let f = rows[r][c];
            if f == 0 {
                continue;
            }
            for (x, &y) in rows[r].iter_mut().zip(&pivot).skip(c) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_p` of `m·R`, with `R` a seeded uniformly random
/// `cols × target` matrix. Never exceeds the rank of `m` over `ℚ(i)`.
pub fn compressed_rank_mod_p(m: &ExactMatrix<GaussianRational>, target: usize, seed: u64) -> Option<usize> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let r: Vec<Vec<u64>> = (0..m.cols).map(|_| (0..target).map(|_| rng.gen_range(0..RANK_PRIME)).collect()).collect();
    let mut out = Vec::with_capacity(m.rows.len());
    for row in &m.rows {
        let mut acc = vec![0u64; target];
        for (&c, x) in row {
            let x = gaussian_mod_p(x)?;
            for (a, &b) in acc.iter_mut().zip(&r[c]) {
                *a = (*a + x * b) % RANK_PRIME;
            }
        }
        out.push(acc);
    }
    Some(dense_rank_mod_p(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn dense(v: &[&[i64]]) -> ExactMatrix<GaussianRational> {
        ExactMatrix::from_dense(v.iter().map(|r| r.iter().map(|&x| g(x)).collect()).collect())
    }

    #[test]
    fn small_ranks() {
        let id: Vec<Vec<GaussianRational>> =
            (0..5).map(|i| (0..5).map(|j| g((i == j) as i64)).collect()).collect();
        assert_eq!(exact_rank(&ExactMatrix::from_dense(id)), 5);
        assert_eq!(exact_rank(&dense(&[&[1, 2], &[2, 4]])), 1);
        // Vandermonde at 1, 2, 3
        assert_eq!(exact_rank(&dense(&[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9]])), 3);
        assert_eq!(exact_rank(&ExactMatrix::<GaussianRational>::new(4)), 0);
    }

    #[test]
    fn symbolic_rank_bounds_specialized_rank() {
        // [[y, 1], [1, y]] has symbolic rank 2, rank 1 at y = 1
        let y = RatFun::var(Var::Y);
        let m = ExactMatrix::from_dense(vec![vec![y.clone(), RatFun::one()], vec![RatFun::one(), y]]);
        assert_eq!(exact_rank(&m), 2);
        let at1 = BTreeMap::from([(Var::Y, g(1))]);
        assert_eq!(exact_rank(&m.specialize(&at1).unwrap()), 1);
        let at3 = BTreeMap::from([(Var::Y, g(3))]);
        assert_eq!(exact_rank(&m.specialize(&at3).unwrap()), 2);
    }

    #[test]
    fn specialization_hitting_a_pole_is_an_error() {
        let y = RatFun::var(Var::Y);
        let m = ExactMatrix::from_dense(vec![vec![(&y - &RatFun::one()).inv().unwrap()]]);
        let at1 = BTreeMap::from([(Var::Y, g(1))]);
        assert_eq!(m.specialize(&at1), Err(ExactError::SingularSpecialization));
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose(v in proptest::collection::vec(-2i64..=2, 20), cols in 1usize..6) {
            let rows = 20 / cols;
            let m = ExactMatrix::from_dense(
                (0..rows).map(|r| (0..cols).map(|c| g(v[r * cols + c])).collect()).collect());
            prop_assert_eq!(exact_rank(&m), exact_rank(&m.transpose()));
        }
    }

    #[test]
    fn modular_rank_bounds_exact_rank() {
        let i = sqrt_minus_one();
        assert_eq!(i * i % RANK_PRIME, RANK_PRIME - 1);
        assert_eq!(gaussian_mod_p(&GaussianRational::from_frac(1, 2)), Some(RANK_PRIME.div_ceil(2)));
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(compressed_rank_mod_p(&m, 2, 5), Some(2));
        assert_eq!(compressed_rank_mod_p(&m, 1, 5), Some(1));
        // p itself vanishes in F_p
        let q = dense(&[&[RANK_PRIME as i64]]);
        assert_eq!(compressed_rank_mod_p(&q, 1, 0), Some(0));
        assert_eq!(exact_rank(&q), 1);
    }
}
