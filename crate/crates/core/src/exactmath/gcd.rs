//! Multivariate polynomial gcd over Q(i) by recursive primitive PRS.

use std::collections::BTreeMap;

use super::{Field, GaussianRational, Poly, Ring, Var};

/// Scales `p` so that its lex-leading coefficient is one.
pub(crate) fn monic(p: &Poly) -> Poly {
    match p.leading() {
        None => Poly::zero(),
        Some((_, c)) => p.scale(&c.inv().expect("leading coefficient is non-zero")),
    }
}

/// Monic gcd of two ordinary (non-Laurent) polynomials.
pub(crate) fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    let vars: Vec<Var> = a.vars().union(&b.vars()).copied().collect();
    let Some(&v) = vars.first() else {
        return Poly::one();
    };
    if vars.len() > 1 && coprime_by_specialisation(a, b, &vars) {
        return Poly::one();
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = poly_gcd(&ca, &cb);
    let mut f = to_uni(&a.div_exact(&ca).expect("content divides"), v);
    let mut g = to_uni(&b.div_exact(&cb).expect("content divides"), v);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    let g = loop {
        if g.len() <= 1 {
            // g is v-free and primitive, hence a unit
            break vec![Poly::one()];
        }
        let r = prem(&f, &g);
        if r.is_empty() {
            break g;
        }
        f = g;
        g = primitive(&r, v);
    };
    let g = primitive(&g, v);
    monic(&(&c * &Poly::from_univariate(v, &g)))
}

/// Sufficient test for `gcd(a, b) = 1`: for each variable `v`, fix the
/// others at a point where both leading coefficients in `v` survive. The
/// specialised gcd then has at least the `v`-degree of the true gcd.
fn coprime_by_specialisation(a: &Poly, b: &Poly, vars: &[Var]) -> bool {
    for (k, &v) in vars.iter().enumerate() {
        let point: BTreeMap<Var, GaussianRational> = vars
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(j, &w)| (w, GaussianRational::from_int(2 + 3 * j as i64 + k as i64)))
            .collect();
        let spec = |p: &Poly| -> Option<Poly> {
            let u = p.to_univariate(v);
            let lead = u.last()?.eval(&point).ok()?;
            if lead.is_zero() {
                return None;
            }
            let mut out = p.clone();
            for (w, x) in &point {
                out = out.substitute(*w, x).ok()?;
            }
            Some(out)
        };
        let (Some(sa), Some(sb)) = (spec(a), spec(b)) else {
            return false;
        };
        if poly_gcd(&sa, &sb).degree(v).unwrap_or(0) > 0 {
            return false;
        }
    }
    true
}

fn to_uni(p: &Poly, v: Var) -> Vec<Poly> {
    p.to_univariate(v)
}

fn content(p: &Poly, v: Var) -> Poly {
    let coeffs = p.to_univariate(v);
    let mut acc = Poly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = poly_gcd(&acc, c);
        if acc.as_constant().is_some() {
            return Poly::one();
        }
    }
    if acc.is_zero() {
        Poly::one()
    } else {
        acc
    }
}

fn primitive(u: &[Poly], v: Var) -> Vec<Poly> {
    let p = Poly::from_univariate(v, u);
    let c = content(&p, v);
    // constants are units; dividing them out keeps coefficients small
    to_uni(&monic(&p.div_exact(&c).expect("content divides")), v)
}

fn trim(u: &mut Vec<Poly>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

/// Sparse pseudo-remainder of `f` by `g` (univariate, coefficient lists).
fn prem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = f.to_vec();
    trim(&mut r);
    let lg = g.last().expect("non-empty divisor").clone();
    let dg = g.len() - 1;
    while r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = &*c * &lg;
        }
        for (k, gc) in g.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&lr * gc);
        }
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn gcd_recovers_common_factor() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let vars = [Var::Y, Var::X(0), Var::X(1)];
        for _ in 0..10 {
            let g = Poly::random(&mut rng, &vars, 2, 3);
            let a = Poly::random(&mut rng, &vars, 2, 3);
            let b = Poly::random(&mut rng, &vars, 2, 3);
            if g.is_zero() || a.is_zero() || b.is_zero() {
                continue;
            }
            let d = poly_gcd(&(&g * &a), &(&g * &b));
            // g divides the gcd, and the gcd divides both products
            assert!(d.div_exact(&monic(&g)).is_some(), "g={g:?} d={d:?}");
            assert!((&g * &a).div_exact(&d).is_some());
            assert!((&g * &b).div_exact(&d).is_some());
        }
    }

    #[test]
    fn coprime_gives_one() {
        let y = Poly::var(Var::Y);
        let a = &y + &Poly::one();
        let b = &y - &Poly::one();
        assert_eq!(poly_gcd(&a, &b), Poly::one());
        let c = Poly::constant(GaussianRational::from_int(6));
        assert_eq!(poly_gcd(&c, &(&y * &c)), Poly::one());
    }
}
