//! The operators `B_J`, the `4^n` family `b̄_M c_N (B_J)` and the checks of
//! the completeness theorem: reduction to Schur determinants and exact rank.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{compressed_rank_mod_p, exact_rank, ExactMatrix, GaussianRational, Monomial, Poly, Ring, Var};
use crate::fock::{h_star, AlgebraWord, Fermions, FockVector, Generator};
use crate::lrcoeff::{lr_series, LRTable, SubsetIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("subset {0} is not contained in [1,{1}]")]
    OutOfRange(String, u32),
    #[error("chain length {0} exceeds the cap {1}")]
    TooLong(u32, u32),
    #[error("a coefficient denominator vanishes modulo the rank prime")]
    SingularReduction,
}

/// Largest chain length accepted by the constructions.
pub const N_CAP: u32 = 6;

fn check_subset(s: &SubsetIndex, n: u32) -> Result<(), BasisError> {
    if s.elements().first().is_some_and(|&x| x > n) {
        return Err(BasisError::OutOfRange(s.to_string(), n));
    }
    Ok(())
}

fn check_n(n: u32) -> Result<(), BasisError> {
    if n > N_CAP {
        return Err(BasisError::TooLong(n, N_CAP));
    }
    Ok(())
}

/// The terms `(I, K, C^I_{J,K})` of `B_J` with non-zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotWord {
    pub n: u32,
    pub j: SubsetIndex,
    pub terms: Vec<(SubsetIndex, SubsetIndex, u64)>,
}

impl SlotWord {
    pub fn new(n: u32, j: &SubsetIndex) -> Result<SlotWord, BasisError> {
        check_n(n)?;
        check_subset(j, n)?;
        Ok(Self::with_table(n, j, &lr_series(j.len(), n)))
    }

    fn with_table(n: u32, j: &SubsetIndex, table: &LRTable) -> SlotWord {
        let subsets = SubsetIndex::all(n, j.len());
        let mut terms = Vec::new();
        for i in &subsets {
            for k in &subsets {
                match table.get(i, j, k) {
                    Some(0) => {}
                    Some(c) => terms.push((i.clone(), k.clone(), c)),
                    None => unreachable!("table cap covers [1,n]"),
                }
            }
        }
        SlotWord { n, j: j.clone(), terms }
    }

    /// `g_n ⋯ g_1` for one term: slot `i_p` holds `c*_{k_p}`, every other
    /// slot `i` holds `b*_i`.
    pub fn word(&self, i: &SubsetIndex, k: &SubsetIndex, barred: bool) -> AlgebraWord {
        let gens = (1..=self.n)
            .rev()
            .map(|slot| match i.elements().iter().position(|&x| x == slot) {
                Some(p) if barred => Generator::CBarStar(k.elements()[p]),
                Some(p) => Generator::CStar(k.elements()[p]),
                None if barred => Generator::BBarStar(slot),
                None => Generator::BStar(slot),
            })
            .collect();
        AlgebraWord::new(gens)
    }

    pub fn expand(&self, barred: bool) -> FockVector {
        let mut out = FockVector::zero();
        for (i, k, c) in &self.terms {
            let v = FockVector::vacuum().apply_word(&self.word(i, k, barred));
            out = out.add(&v.scale(&Poly::int(*c as i64)));
        }
        out
    }
}

pub fn build_bj(n: u32, j: &SubsetIndex) -> Result<FockVector, BasisError> {
    Ok(SlotWord::new(n, j)?.expand(false))
}

/// The same sum written with `b̄*`, `c̄*`.
pub fn build_bj_bar(n: u32, j: &SubsetIndex) -> Result<FockVector, BasisError> {
    Ok(SlotWord::new(n, j)?.expand(true))
}

fn all_subsets(n: u32) -> Vec<SubsetIndex> {
    (0..=n as usize).flat_map(|l| SubsetIndex::all(n, l)).collect()
}

/// Compares the two expressions for every `J ⊂ [1,n]`; returns the first
/// `J` where they differ.
pub fn bj_identity_mismatch(n: u32) -> Result<Option<SubsetIndex>, BasisError> {
    check_n(n)?;
    let tables: Vec<LRTable> = (0..=n as usize).map(|l| lr_series(l, n)).collect();
    let bad = all_subsets(n).into_par_iter().find_first(|j| {
        let w = SlotWord::with_table(n, j, &tables[j.len()]);
        w.expand(false) != w.expand(true)
    });
    Ok(bad)
}

pub fn bj_identity_check(n: u32) -> Result<bool, BasisError> {
    Ok(bj_identity_mismatch(n)?.is_none())
}

/// Sign of the leading term `b*_{∁J} c*_{l..1}` of `B_J`, or `None` if the
/// coefficient is not `±1` or another term also carries `c*_{l..1}`.
pub fn leading_term_sign(n: u32, j: &SubsetIndex) -> Result<Option<i64>, BasisError> {
    let v = build_bj(n, j)?;
    let l = j.len() as u32;
    let lead_c: Vec<u32> = (1..=l).rev().collect();
    let lead_b = j.complement(n).elements().to_vec();
    let mut sign = None;
    for (f, c) in v.terms() {
        if f.c != lead_c {
            continue;
        }
        if f.b != lead_b {
            return Ok(None);
        }
        sign = if *c == Poly::one() {
            Some(1)
        } else if *c == Poly::int(-1) {
            Some(-1)
        } else {
            None
        };
    }
    Ok(sign)
}

/// One element `b̄_M c_N (B_J)` of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyElement {
    pub j: SubsetIndex,
    pub m: SubsetIndex,
    pub n: SubsetIndex,
    pub value: FockVector,
}

/// `x_{i_1} ⋯ x_{i_l}` for `i_1 > ⋯ > i_l`.
fn annihilator_word(m: &SubsetIndex, nn: &SubsetIndex) -> AlgebraWord {
    let gens = m
        .elements()
        .iter()
        .map(|&p| Generator::BBar(p))
        .chain(nn.elements().iter().map(|&p| Generator::C(p)))
        .collect();
    AlgebraWord::new(gens)
}

/// All `4^n` family elements, ordered by `|J|`, `J`, `M`, `N`.
pub fn build_family(n: u32) -> Result<Vec<FamilyElement>, BasisError> {
    check_n(n)?;
    let tables: Vec<LRTable> = (0..=n as usize).map(|l| lr_series(l, n)).collect();
    let mut jobs = Vec::new();
    for j in all_subsets(n) {
        let l = j.len() as u32;
        for m in all_subsets(n - l) {
            for nn in all_subsets(l) {
                jobs.push((j.clone(), m.clone(), nn));
            }
        }
    }
    let bj: HashMap<SubsetIndex, FockVector> = all_subsets(n)
        .into_par_iter()
        .map(|j| {
            let v = SlotWord::with_table(n, &j, &tables[j.len()]).expand(false);
            (j, v)
        })
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(j, m, nn)| {
            let value = bj[&j].apply_word(&annihilator_word(&m, &nn));
            FamilyElement { j, m, n: nn, value }
        })
        .collect())
}

/// `det(h*_{j'_a − b})_{1≤a,b≤r}` by the Leibniz formula, `J'` decreasing.
pub fn schur_det(jprime: &SubsetIndex) -> Poly {
    let r = jprime.len();
    let entry = |a: usize, b: usize| h_star(jprime.elements()[a] as i64 - (b as i64 + 1));
    let mut total = Poly::zero();
    let mut perm: Vec<usize> = (0..r).collect();
    loop {
        let mut term = Poly::one();
        for (a, &b) in perm.iter().enumerate() {
            term = &term * &entry(a, b);
            if term.is_zero() {
                break;
            }
        }
        if !term.is_zero() {
            let inversions = (0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Result of applying the complementary annihilator string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub value: FockVector,
    pub target: FockVector,
    /// `Some(±1)` when `value = ±target`.
    pub sign: Option<i64>,
}

/// Applies `b̄_{[1,n−l]∖M0} c_{[1,l]∖N0}` to `b̄_{M0} c_{N0} (B_J)` and
/// compares with `(t*_1)^{n−l} det(h*_{j'_a−b}) |vac>`.
pub fn reduction_check(
    n: u32,
    j: &SubsetIndex,
    m0: &SubsetIndex,
    n0: &SubsetIndex,
) -> Result<ReductionOutcome, BasisError> {
    let l = j.len() as u32;
    check_subset(m0, n - l.min(n))?;
    check_subset(n0, l)?;
    let bj = build_bj(n, j)?;
    let element = bj.apply_word(&annihilator_word(m0, n0));
    let rest = annihilator_word(&m0.complement(n - l), &n0.complement(l));
    let value = element.apply_word(&rest);
    let coeff = &Poly::var_pow(Var::T1, (n - l) as i32) * &schur_det(&j.complement(n));
    let target = FockVector::vacuum().scale(&coeff);
    let sign = if value == target {
        Some(1)
    } else if value == target.scale(&Poly::int(-1)) {
        Some(-1)
    } else {
        None
    };
    Ok(ReductionOutcome { value, target, sign })
}

/// Checks every `(J, M0, N0)` for chain length `n`; returns the number of
/// cases and the first failing one.
pub fn reduction_sweep(n: u32) -> Result<(usize, Option<(SubsetIndex, SubsetIndex, SubsetIndex)>), BasisError> {
    let mut cases = Vec::new();
    for j in all_subsets(n) {
        let l = j.len() as u32;
        for m0 in all_subsets(n - l) {
            for n0 in all_subsets(l) {
                cases.push((j.clone(), m0.clone(), n0));
            }
        }
    }
    let total = cases.len();
    let results: Vec<_> = cases
        .into_par_iter()
        .map(|(j, m0, n0)| reduction_check(n, &j, &m0, &n0).map(|o| (o.sign.is_some(), (j, m0, n0))))
        .collect::<Result<_, _>>()?;
    Ok((total, results.into_iter().find(|(ok, _)| !ok).map(|(_, c)| c)))
}

/// Whether each vector of `a` equals `±` a distinct vector of `b`.
pub fn matches_up_to_sign(a: &[FockVector], b: &[FockVector]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    let minus = Poly::int(-1);
    for x in a {
        let neg = x.scale(&minus);
        let Some(k) = (0..b.len()).find(|&k| !used[k] && (b[k] == *x || b[k] == neg)) else {
            return false;
        };
        used[k] = true;
    }
    true
}

/// Rank data for the family at chain length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub n: u32,
    pub elements: usize,
    /// Number of distinct PBW monomials (central part × fermions) touched.
    pub monomials: usize,
    pub exact_rank: usize,
    pub seeds: Vec<u64>,
    /// Ranks over `F_p` of `M·R_s` for a random `monomials × 4^n` matrix
    /// `R_s`, one per seed; each is a lower bound for `exact_rank`.
    pub compressed_ranks: Vec<usize>,
}

impl RankCertificate {
    pub fn is_complete(&self) -> bool {
        let full = 4usize.pow(self.n);
        self.elements == full && self.exact_rank == full && self.compressed_ranks.iter().all(|&r| r == full)
    }
}

/// Coefficient matrix of the family on full PBW monomials: rows are family
/// elements, columns are `(central monomial, fermion key)` pairs.
pub fn family_matrix(family: &[FamilyElement]) -> ExactMatrix<GaussianRational> {
    let mut columns: HashMap<(Monomial, Fermions), usize> = HashMap::new();
    let mut rows = Vec::with_capacity(family.len());
    for e in family {
        let mut row = BTreeMap::new();
        for (f, c) in e.value.terms() {
            for (m, a) in c.terms() {
                let next = columns.len();
                let col = *columns.entry((m.clone(), f.clone())).or_insert(next);
                row.insert(col, a.clone());
            }
        }
        rows.push(row);
    }
    let mut m = ExactMatrix::new(columns.len());
    for r in rows {
        m.push_row(r);
    }
    m
}

/// Exact rank of the family over the scalars, plus one modular compressed
/// rank per seed as an independent guard.
pub fn certify_rank(n: u32, seeds: &[u64]) -> Result<RankCertificate, BasisError> {
    let family = build_family(n)?;
    let m = family_matrix(&family);
    let size = family.len();
    let compressed_ranks = seeds
        .par_iter()
        .map(|&seed| compressed_rank_mod_p(&m, size, seed).ok_or(BasisError::SingularReduction))
        .collect::<Result<_, _>>()?;
    Ok(RankCertificate {
        n,
        elements: size,
        monomials: m.ncols(),
        exact_rank: exact_rank(&m),
        seeds: seeds.to_vec(),
        compressed_ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::word_sum;

    fn s(v: &[u32]) -> SubsetIndex {
        SubsetIndex::from_set(v.to_vec()).unwrap()
    }

    #[test]
    fn small_bj() {
        assert_eq!(build_bj(2, &s(&[])).unwrap(), word_sum("b*2 b*1").unwrap());
        assert_eq!(build_bj(2, &s(&[2])).unwrap(), word_sum("c*1 b*1").unwrap());
        assert_eq!(build_bj(2, &s(&[1])).unwrap(), word_sum("b*2 c*1 + c*2 b*1").unwrap());
        assert_eq!(build_bj(1, &s(&[1])).unwrap(), word_sum("c*1").unwrap());
        assert_eq!(build_bj_bar(1, &s(&[1])).unwrap(), word_sum("c*1").unwrap());
        assert!(build_bj(2, &s(&[3])).is_err());
    }

    #[test]
    fn n4_examples() {
        assert_eq!(build_bj(4, &s(&[3, 4])).unwrap(), word_sum("c*2 c*1 b*2 b*1").unwrap());
        assert_eq!(
            build_bj(4, &s(&[2, 4])).unwrap(),
            word_sum("c*2 b*3 c*1 b*1 + c*3 c*1 b*2 b*1").unwrap()
        );
    }

    #[test]
    fn two_expressions_agree() {
        for n in 1..=3 {
            assert_eq!(bj_identity_mismatch(n).unwrap(), None, "n={n}");
        }
    }

    #[test]
    fn leading_terms_have_unit_coefficient() {
        for n in 1..=4 {
            for j in all_subsets(n) {
                assert!(leading_term_sign(n, &j).unwrap().is_some(), "n={n} J={j}");
            }
        }
    }

    #[test]
    fn family_sizes_and_grading() {
        for n in 1..=3 {
            let fam = build_family(n).unwrap();
            assert_eq!(fam.len(), 4usize.pow(n));
            for e in &fam {
                let l = e.j.len();
                assert_eq!(e.value.grading(), Some((n as usize - l - e.m.len(), l - e.n.len())));
            }
        }
    }

    #[test]
    fn n1_family() {
        let fam = build_family(1).unwrap();
        let vals: Vec<FockVector> = fam.into_iter().map(|e| e.value).collect();
        let expect: Vec<FockVector> = ["b*1", "t*1", "1", "c*1"].iter().map(|w| word_sum(w).unwrap()).collect();
        assert!(matches_up_to_sign(&vals, &expect));
    }

    #[test]
    fn schur_determinants() {
        assert_eq!(schur_det(&s(&[])), Poly::one());
        assert_eq!(schur_det(&s(&[2])), Poly::var(Var::H(1)));
        // J' = {3,1}: det [[h2, h1], [1, 0]] = −h1
        assert_eq!(schur_det(&s(&[3, 1])), -&Poly::var(Var::H(1)));
        // J' = {4,2}: det [[h3, h2], [h1, 1]]
        let h = |p| Poly::var(Var::H(p));
        assert_eq!(schur_det(&s(&[4, 2])), &(&h(3) * &Poly::one()) - &(&h(2) * &h(1)));
    }

    #[test]
    fn reduction_examples() {
        let o = reduction_check(2, &s(&[1]), &s(&[]), &s(&[])).unwrap();
        assert_eq!(o.value.coeff(&Default::default()).num_terms(), 1);
        assert!(o.sign.is_some());
        let o = reduction_check(2, &s(&[1, 2]), &s(&[]), &s(&[])).unwrap();
        assert!(o.sign.is_some());
        for n in 1..=3 {
            let (total, bad) = reduction_sweep(n).unwrap();
            assert_eq!(total, 4usize.pow(n));
            assert_eq!(bad, None);
        }
    }

    #[test]
    fn rank_small() {
        for n in 1..=2 {
            let c = certify_rank(n, &[1, 2]).unwrap();
            assert!(c.is_complete(), "{c:?}");
        }
    }

    #[test]
    fn specialising_the_centre_loses_rank() {
        // t*_1|vac> and |vac> are proportional over the central ring
        let fam = build_family(1).unwrap();
        let m = family_matrix(&fam);
        assert_eq!(exact_rank(&m), 4);
        let keys: std::collections::BTreeSet<_> = fam.iter().flat_map(|e| e.value.terms().map(|(f, _)| f.clone())).collect();
        assert_eq!(keys.len(), 3);
    }
}
