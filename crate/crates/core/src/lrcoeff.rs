//! Littlewood–Richardson coefficients from the Cauchy-type generating series
//!
//! ```text
//! Δ(x)Δ(y)Δ(z) / ∏_{i,j}(1 − x_i y_j)(1 − x_i z_j) = Σ C^{I}_{J;K} ∏_p x_p^{i_p−1} y_p^{j_p−1} z_p^{k_p−1}
//! ```
//!
//! together with a skew-tableau counter used as an independent oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LrError {
    #[error("index tuple {0:?} is not strictly decreasing and positive")]
    NotDecreasing(Vec<u32>),
    #[error("tuples of different lengths")]
    LengthMismatch,
}

/// A strictly decreasing tuple of positive integers, read as a subset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubsetIndex(Vec<u32>);

impl SubsetIndex {
    pub fn new(elements: Vec<u32>) -> Result<SubsetIndex, LrError> {
        let ok = elements.windows(2).all(|w| w[0] > w[1]) && elements.last().is_none_or(|&x| x >= 1);
        if ok {
            Ok(SubsetIndex(elements))
        } else {
            Err(LrError::NotDecreasing(elements))
        }
    }

    /// From any collection of distinct positive integers.
    pub fn from_set(mut elements: Vec<u32>) -> Result<SubsetIndex, LrError> {
        elements.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(elements)
    }

    /// `{l, …, 2, 1}`
    pub fn initial(l: u32) -> SubsetIndex {
        SubsetIndex((1..=l).rev().collect())
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.contains(&x)
    }

    /// All `l`-subsets of `1..=n`, each decreasing, in lexicographic order.
    pub fn all(n: u32, l: usize) -> Vec<SubsetIndex> {
        fn go(start: u32, n: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<SubsetIndex>) {
            if left == 0 {
                out.push(SubsetIndex(cur.iter().rev().copied().collect()));
                return;
            }
            for x in start..=n {
                cur.push(x);
                go(x + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(1, n, l, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// `[1, n] ∖ self`, decreasing.
    pub fn complement(&self, n: u32) -> SubsetIndex {
        SubsetIndex((1..=n).rev().filter(|x| !self.0.contains(x)).collect())
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Weakly decreasing parts, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Option<Partition> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return None;
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Some(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    fn part(&self, r: usize) -> u32 {
        self.0.get(r).copied().unwrap_or(0)
    }

    pub fn contains(&self, o: &Partition) -> bool {
        o.0.len() <= self.0.len() && o.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

/// `λ_p = i_p − (l − p + 1)`
pub fn subset_to_partition(i: &SubsetIndex) -> Partition {
    let l = i.len() as u32;
    Partition::new(i.0.iter().enumerate().map(|(p, &x)| x - (l - p as u32)).collect()).expect("decreasing input gives a partition")
}

/// Every permutation of `0..l` with its sign.
fn permutations(l: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                go(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut perms = Vec::new();
    go(&mut Vec::new(), &mut vec![false; l], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inv = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            (p, if inv % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Coefficient of `x^a y^b` in `∏_{i,j} 1/(1 − x_i y_j)`: the number of
/// non-negative integer matrices with row sums `a` and column sums `b`.
struct Kernel {
    memo: HashMap<(Vec<u32>, Vec<u32>), i64>,
}

impl Kernel {
    fn new() -> Kernel {
        Kernel { memo: HashMap::new() }
    }

    fn coeff(&mut self, a: &[u32], b: &[u32]) -> i64 {
        if a.iter().sum::<u32>() != b.iter().sum::<u32>() {
            return 0;
        }
        if a.is_empty() {
            return 1;
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        // distribute the first row sum over the columns
        fn rows(k: &mut Kernel, rest: &[u32], b: &mut Vec<u32>, col: usize, left: u32) -> i64 {
            if col == b.len() {
                return if left == 0 { k.coeff(rest, b) } else { 0 };
            }
            let mut total = 0;
            for take in 0..=left.min(b[col]) {
                b[col] -= take;
                total += rows(k, rest, b, col + 1, left - take);
                b[col] += take;
            }
            total
        }
        let v = rows(self, &a[1..], &mut b.to_vec(), 0, a[0]);
        self.memo.insert(key, v);
        v
    }
}

/// Coefficient of `∏ x_p^{i_p−1} y_p^{j_p−1} z_p^{k_p−1}` in the generating
/// series, for arbitrary positive tuples.
///
/// `Δ(y)·∏1/(1−x_i y_j)` is read off at `y^{J−1}` first, as a series in
/// `x`; the product of the `J` and `K` series is then multiplied by `Δ(x)`.
pub fn series_coefficient(i: &[u32], j: &[u32], k: &[u32]) -> Result<i64, LrError> {
    let l = i.len();
    if j.len() != l || k.len() != l {
        return Err(LrError::LengthMismatch);
    }
    for t in [i, j, k] {
        if t.contains(&0) {
            return Err(LrError::NotDecreasing(t.to_vec()));
        }
    }
    let perms = permutations(l);
    let mut kernel = Kernel::new();
    // Δ(v) = Σ_σ sgn σ ∏_p v_p^{l−1−σ(p)}
    let shifted = |t: &[u32], s: &[usize]| -> Option<Vec<u32>> {
        t.iter()
            .zip(s)
            .map(|(&e, &sp)| (e as i64 - 1 - (l - 1 - sp) as i64).try_into().ok())
            .collect()
    };
    let series = |t: &[u32], a: &[u32], kernel: &mut Kernel| -> i64 {
        perms
            .iter()
            .filter_map(|(s, sg)| shifted(t, s).map(|b| sg * kernel.coeff(a, &b)))
            .sum()
    };
    let mut total = 0;
    for (s, sg) in &perms {
        let Some(target) = shifted(i, s) else { continue };
        // split target = a1 + a2 componentwise
        let mut a1 = vec![0u32; l];
        loop {
            let a2: Vec<u32> = target.iter().zip(&a1).map(|(t, x)| t - x).collect();
            let gj = series(j, &a1, &mut kernel);
            if gj != 0 {
                total += sg * gj * series(k, &a2, &mut kernel);
            }
            // odometer over 0..=target
            let mut p = 0;
            while p < l && a1[p] == target[p] {
                a1[p] = 0;
                p += 1;
            }
            if p == l {
                break;
            }
            a1[p] += 1;
        }
    }
    Ok(total)
}

/// Number of LR tableaux of shape `λ/μ` and weight `ν`: semistandard
/// fillings whose reverse row reading word is a lattice word.
pub fn lr_tableau(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) {
        return 0;
    }
    let rows = lambda.0.len();
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (mu.part(r) as usize..lambda.part(r) as usize).rev().map(move |c| (r, c)))
        .collect();
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut count = vec![0u32; nu.0.len()];

    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        mu: &Partition,
        nu: &Partition,
        filling: &mut BTreeMap<(usize, usize), usize>,
        count: &mut Vec<u32>,
    ) -> u64 {
        let Some(&(r, c)) = cells.get(idx) else { return 1 };
        let mut total = 0;
        for v in 0..nu.0.len() {
            if count[v] == nu.0[v] || (v > 0 && count[v] + 1 > count[v - 1]) {
                continue;
            }
            // rows weakly increase to the right; we fill right-to-left
            if let Some(&right) = filling.get(&(r, c + 1)) {
                if v > right {
                    continue;
                }
            }
            if r > 0 && c >= mu.part(r - 1) as usize {
                if let Some(&above) = filling.get(&(r - 1, c)) {
                    if v <= above {
                        continue;
                    }
                }
            }
            filling.insert((r, c), v);
            count[v] += 1;
            total += go(idx + 1, cells, mu, nu, filling, count);
            count[v] -= 1;
            filling.remove(&(r, c));
        }
        total
    }
    go(0, &cells, mu, nu, &mut filling, &mut count)
}

/// `C^I_{J,K}` for all decreasing triples with entries `≤ cap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LRTable {
    pub l: usize,
    pub cap: u32,
    values: BTreeMap<(SubsetIndex, SubsetIndex, SubsetIndex), u64>,
}

impl LRTable {
    /// `None` when a subset has the wrong length or exceeds the cap.
    pub fn get(&self, i: &SubsetIndex, j: &SubsetIndex, k: &SubsetIndex) -> Option<u64> {
        let fits = |s: &SubsetIndex| s.len() == self.l && s.0.first().is_none_or(|&x| x <= self.cap);
        if !(fits(i) && fits(j) && fits(k)) {
            return None;
        }
        Some(self.values.get(&(i.clone(), j.clone(), k.clone())).copied().unwrap_or(0))
    }

    /// Non-zero entries.
    pub fn entries(&self) -> impl Iterator<Item = (&(SubsetIndex, SubsetIndex, SubsetIndex), &u64)> {
        self.values.iter()
    }

    /// CSV rows `l,I,J,K,value` with space-separated tuples.
    pub fn to_csv(&self) -> String {
        let tuple = |s: &SubsetIndex| s.0.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let mut out = String::from("l,I,J,K,value\n");
        for ((i, j, k), v) in &self.values {
            out.push_str(&format!("{},{},{},{},{}\n", self.l, tuple(i), tuple(j), tuple(k), v));
        }
        out
    }
}

/// Builds the table of non-zero coefficients by expanding the series.
pub fn lr_series(l: usize, cap: u32) -> LRTable {
    let subsets = SubsetIndex::all(cap, l);
    let mut triples = Vec::new();
    for i in &subsets {
        for j in &subsets {
            for k in &subsets {
                // weight conservation prunes most triples cheaply
                if subset_to_partition(i).size() == subset_to_partition(j).size() + subset_to_partition(k).size() {
                    triples.push((i, j, k));
                }
            }
        }
    }
    let values = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let v = series_coefficient(&i.0, &j.0, &k.0).expect("well-formed tuples");
            assert!(v >= 0, "negative coefficient at {i} {j} {k}");
            (v != 0).then(|| ((i.clone(), j.clone(), k.clone()), v as u64))
        })
        .collect();
    LRTable { l, cap, values }
}

/// Series and tableau routes agree on every triple within the cap, and the
/// table is symmetric in `J ↔ K`.
pub fn lr_consistency(l: usize, cap: u32) -> bool {
    let table = lr_series(l, cap);
    let subsets = SubsetIndex::all(cap, l);
    subsets.par_iter().all(|i| {
        subsets.iter().all(|j| {
            subsets.iter().all(|k| {
                let v = table.get(i, j, k).expect("within cap");
                let t = lr_tableau(&subset_to_partition(i), &subset_to_partition(j), &subset_to_partition(k));
                v == t && Some(v) == table.get(i, k, j)
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> SubsetIndex {
        SubsetIndex::new(v.to_vec()).unwrap()
    }

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dictionary() {
        assert_eq!(subset_to_partition(&s(&[4, 3])), p(&[2, 2]));
        assert_eq!(subset_to_partition(&SubsetIndex::initial(3)), p(&[]));
        assert_eq!(subset_to_partition(&s(&[3, 1])), p(&[1]));
        assert!(SubsetIndex::new(vec![1, 3]).is_err());
        assert!(SubsetIndex::new(vec![2, 2]).is_err());
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(lr_tableau(&p(&[2]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_tableau(&p(&[1, 1]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_tableau(&p(&[3, 2, 1]), &p(&[]), &p(&[3, 2, 1])), 1);
        assert_eq!(lr_tableau(&p(&[2, 2]), &p(&[2, 1]), &p(&[1])), 1);
        // the classic multiplicity two
        assert_eq!(lr_tableau(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(lr_tableau(&p(&[2]), &p(&[1, 1]), &p(&[])), 0);
    }

    #[test]
    fn series_values() {
        assert_eq!(series_coefficient(&[4, 2], &[3, 1], &[3, 2]).unwrap(), 1);
        // antisymmetric in each index family
        assert_eq!(series_coefficient(&[2, 4], &[3, 1], &[3, 2]).unwrap(), -1);
        assert_eq!(series_coefficient(&[4, 4], &[3, 1], &[3, 2]).unwrap(), 0);
        // l = 1: C^i_{j,k} = [i = j + k − 1]
        for i in 1..6 {
            for j in 1..6 {
                for k in 1..6 {
                    assert_eq!(series_coefficient(&[i], &[j], &[k]).unwrap(), (i + 1 == j + k) as i64);
                }
            }
        }
    }

    #[test]
    fn unit_rows_of_the_table() {
        let t = lr_series(2, 5);
        let one = SubsetIndex::initial(2);
        for i in SubsetIndex::all(5, 2) {
            for j in SubsetIndex::all(5, 2) {
                assert_eq!(t.get(&i, &j, &one), Some((i == j) as u64));
            }
        }
        assert_eq!(t.get(&s(&[6, 1]), &one, &one), None);
    }

    #[test]
    fn routes_agree() {
        assert!(lr_consistency(1, 6));
        assert!(lr_consistency(2, 6));
    }

    #[test]
    fn csv_dump() {
        let csv = lr_series(1, 2).to_csv();
        assert_eq!(csv, "l,I,J,K,value\n1,1,1,1,1\n1,2,1,2,1\n1,2,2,1,1\n");
    }
}
