//! The Cauchy-kernel determinant identity behind the barred form of `B_J`.
//!
//! With `x_p = ξ_p² − 1` and `z_p = (ζ_p² − 1)^{-1}`:
//!
//! ```text
//! ∏_p z_p · Δ(x)Δ(z) / ∏_{i,j}(1 − x_i z_j) = det( 1/(ζ_p² − ξ_{p'}²) )
//! ```

use rand::Rng;

use super::{ExactError, Field, GaussianRational};

fn vandermonde<F: Field>(v: &[F]) -> F {
    let mut acc = F::one();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            acc = acc.mul_ref(&v[i].sub_ref(&v[j]));
        }
    }
    acc
}

/// Determinant by Gaussian elimination over a field.
pub(crate) fn det<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let mut acc = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return F::zero();
        };
        if p != k {
            m.swap(p, k);
            acc = acc.neg_ref();
        }
        let pv = m[k][k].clone();
        acc = acc.mul_ref(&pv);
        let pv_inv = pv.inv().expect("non-zero pivot");
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = m[r][k].mul_ref(&pv_inv);
            for c in k..n {
                let t = f.mul_ref(&m[k][c]);
                m[r][c] = m[r][c].sub_ref(&t);
            }
        }
    }
    acc
}

/// Both sides of the identity at the given `ζ²` and `ξ²` values.
pub fn cauchy_sides<F: Field>(zeta2: &[F], xi2: &[F]) -> Result<(F, F), ExactError> {
    if zeta2.len() != xi2.len() {
        return Err(ExactError::Invalid("need as many ζ² as ξ² values".into()));
    }
    let one = F::one();
    let l = zeta2.len();
    let mut all: Vec<&F> = zeta2.iter().chain(xi2.iter()).collect();
    all.push(&one);
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            // ξ² = 1 is allowed (x = 0); ζ² = 1 is not (z has a pole)
            if i >= l && j == all.len() - 1 {
                continue;
            }
            if all[i] == all[j] {
                return Err(ExactError::CoincidentPoints);
            }
        }
    }
    let x: Vec<F> = xi2.iter().map(|v| v.sub_ref(&one)).collect();
    let z: Vec<F> = zeta2.iter().map(|v| v.sub_ref(&one).inv()).collect::<Result<_, _>>()?;
    let mut lhs = vandermonde(&x).mul_ref(&vandermonde(&z));
    for zp in &z {
        lhs = lhs.mul_ref(zp);
    }
    for xi in &x {
        for zj in &z {
            let k = one.sub_ref(&xi.mul_ref(zj));
            lhs = lhs.mul_ref(&k.inv().map_err(|_| ExactError::CoincidentPoints)?);
        }
    }
    let kernel: Vec<Vec<F>> = zeta2
        .iter()
        .map(|a| xi2.iter().map(|b| a.sub_ref(b).inv()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()
        .map_err(|_| ExactError::CoincidentPoints)?;
    Ok((lhs, det(kernel)))
}

/// Checks the identity for `l` pairs; `points` holds `ζ_1², …, ζ_l²`
/// followed by `ξ_1², …, ξ_l²`.
pub fn cauchy_det_check(l: usize, points: &[GaussianRational]) -> Result<bool, ExactError> {
    if points.len() != 2 * l {
        return Err(ExactError::Invalid(format!("expected {} points, got {}", 2 * l, points.len())));
    }
    let (lhs, rhs) = cauchy_sides(&points[..l], &points[l..])?;
    Ok(lhs == rhs)
}

/// Runs the check on `sets` random rational point sets for `l` pairs,
/// redrawing any set with coincident points. Returns the first failing set.
pub fn cauchy_random_check<R: Rng + ?Sized>(rng: &mut R, l: usize, sets: usize) -> Option<Vec<GaussianRational>> {
    let mut done = 0;
    while done < sets {
        let pts: Vec<GaussianRational> =
            (0..2 * l).map(|_| GaussianRational::from_frac(rng.gen_range(-40..40), rng.gen_range(1..9))).collect();
        match cauchy_det_check(l, &pts) {
            Ok(true) => done += 1,
            Ok(false) => return Some(pts),
            Err(_) => continue,
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{RatFun, Ring, Var};
    use rand::SeedableRng;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn symbolic_single_pair() {
        let (lhs, rhs) = cauchy_sides(&[RatFun::var(Var::X(0))], &[RatFun::var(Var::X(1))]).unwrap();
        assert_eq!(lhs, rhs);
        let expect = (&RatFun::var(Var::X(0)) - &RatFun::var(Var::X(1))).inv().unwrap();
        assert_eq!(rhs, expect);
    }

    #[test]
    fn two_pairs_at_integer_points() {
        assert!(cauchy_det_check(2, &[g(2), g(3), g(5), g(7)]).unwrap());
    }

    #[test]
    fn coincident_points_are_rejected() {
        assert_eq!(cauchy_det_check(2, &[g(2), g(2), g(5), g(7)]), Err(ExactError::CoincidentPoints));
        assert_eq!(cauchy_det_check(1, &[g(1), g(5)]), Err(ExactError::CoincidentPoints));
    }

    #[test]
    fn without_the_z_prefactor_the_identity_fails() {
        let zeta = [g(2), g(3)];
        let xi = [g(5), g(7)];
        let (lhs, rhs) = cauchy_sides(&zeta, &xi).unwrap();
        let prefactor = zeta.iter().fold(GaussianRational::one(), |acc, v| &acc * &(v - &g(1)).inv().unwrap());
        assert_eq!(lhs, rhs);
        assert_ne!(&lhs * &prefactor.inv().unwrap(), rhs);
    }

    #[test]
    fn random_point_sets_up_to_four_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for l in 1..=4 {
            assert_eq!(cauchy_random_check(&mut rng, l, 20), None);
        }
    }
}
