//! The Hilbert polynomial `H(k) = ind(L^k)` of the line bundle with first
//! Chern class `c1 / k0`, its rigidity, generating function, closed forms,
//! roots, and the Hamiltonian classifier built on top.

mod classify;
mod closed_form;
mod genfn;
mod lowdim;
mod roots;

pub use classify::{classify_action, ClassifyInput, Verdict, VerdictKind};
pub use closed_form::{a_integrality, chern_relation_check, closed_form, ClosedForm};
pub use genfn::{generating_function, GenFnData};
pub use lowdim::lowdim_report;
pub use roots::{root_analysis, ComplexRoot, RootReport};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{factorial, q, Poly};
use crate::error::{Error, Result};
use crate::localization::{index_at_one, mixed_chern_todd, BundleRestriction};
use crate::report::Report;
use crate::space::S1Space;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ViaIndex,
    ViaChern,
    ClosedForm,
    /// Entered directly, without weight data behind it.
    Fixture,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertPoly {
    pub coeffs: Poly,
    pub n: usize,
    pub k0: u64,
    pub n0: u64,
    pub source: Source,
}

impl HilbertPoly {
    pub fn new(coeffs: Poly, n: usize, k0: u64, n0: u64, source: Source) -> Self {
        HilbertPoly {
            coeffs,
            n,
            k0,
            n0,
            source,
        }
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.coeffs.eval(z)
    }

    pub fn eval_int(&self, k: i64) -> BigRational {
        self.coeffs.eval_int(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.degree()
    }

    /// `H(-k0 - z)`
    pub fn reflected(&self) -> Poly {
        self.coeffs.compose_affine(&-q(1), &-q(self.k0 as i64))
    }

    /// `c_1^n[M] = a_n k0^n n!`
    pub fn c1n(&self) -> BigRational {
        let n = self.n;
        self.coeffs.coeff(n) * BigRational::from_integer(BigInt::from(self.k0).pow(n as u32) * factorial(n as u64))
    }

    /// `c_1^{n-2} c_2[M] = 12 a_{n-2} k0^{n-2} (n-2)! - c_1^n[M]`, for `n >= 2`.
    pub fn c1n2c2(&self) -> Option<BigRational> {
        let n = self.n;
        if n < 2 {
            return None;
        }
        let t = self.coeffs.coeff(n - 2)
            * BigRational::from_integer(
                BigInt::from(12) * BigInt::from(self.k0).pow(n as u32 - 2) * factorial(n as u64 - 2),
            );
        Some(t - self.c1n())
    }

    pub fn render(&self) -> String {
        self.coeffs.render("z")
    }

    pub fn render_factored(&self) -> String {
        self.coeffs.render_factored("z")
    }
}

/// The unique `c in 0..k0` with `sum_j w_pj = k0 eta(p) + c` at every fixed point.
pub fn solve_eta(space: &S1Space, k0: u64) -> Result<(i64, BundleRestriction)> {
    if k0 == 0 {
        return Err(Error::InvalidParams("k0 must be positive".into()));
    }
    let k = k0 as i64;
    let sums: Vec<i64> = space.points().iter().map(|p| p.weight_sum()).collect();
    let res: Vec<i64> = sums.iter().map(|s| s.rem_euclid(k)).collect();
    if res.iter().any(|r| *r != res[0]) {
        let detail = space
            .points()
            .iter()
            .zip(&res)
            .map(|(p, r)| format!("{}: {r}", p.id))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::NoConsistentResidue {
            k0,
            detail: format!("c1 residues mod {k0}: {detail}"),
        });
    }
    let c = res[0];
    let eta = sums.iter().map(|s| (s - c) / k).collect();
    Ok((c, BundleRestriction::from_vec(space, eta)?))
}

/// Interpolate the indices `ind(L^k)`, `k = 0..n`, and confirm further values.
pub fn hilbert_via_index(space: &S1Space, k0: u64) -> Result<HilbertPoly> {
    let (_, eta) = solve_eta(space, k0)?;
    let n = space.n() as i64;
    let ks: Vec<i64> = (-n..=2 * n).collect();
    let vals: Vec<(i64, BigInt)> = ks
        .par_iter()
        .map(|&k| index_at_one(space, &eta.scaled(k)).map(|v| (k, v)))
        .collect::<Result<Vec<_>>>()?;
    let nodes: Vec<(i64, BigRational)> = vals
        .iter()
        .filter(|(k, _)| (0..=n).contains(k))
        .map(|(k, v)| (*k, BigRational::from_integer(v.clone())))
        .collect();
    let p = Poly::interpolate(&nodes)?;
    for (k, v) in &vals {
        if p.eval_int(*k) != BigRational::from_integer(v.clone()) {
            return Err(Error::NotPolynomial(*k));
        }
    }
    Ok(HilbertPoly::new(p, space.n(), k0, space.n0(), Source::ViaIndex))
}

/// `a_h = c_1^h T_{n-h}[M] / (k0^h h!)`.
pub fn hilbert_via_chern(space: &S1Space, k0: u64) -> Result<HilbertPoly> {
    if k0 == 0 {
        return Err(Error::InvalidParams("k0 must be positive".into()));
    }
    let n = space.n();
    let coeffs = (0..=n)
        .into_par_iter()
        .map(|h| {
            let m = mixed_chern_todd(space, h)?;
            let d = BigInt::from(k0).pow(h as u32) * factorial(h as u64);
            Ok(m / BigRational::from_integer(d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertPoly::new(Poly::new(coeffs), n, k0, space.n0(), Source::ViaChern))
}

/// Both constructions; a disagreement is an error.
pub fn hilbert_both(space: &S1Space, k0: u64) -> Result<HilbertPoly> {
    let a = hilbert_via_index(space, k0)?;
    let b = hilbert_via_chern(space, k0)?;
    if a.coeffs != b.coeffs {
        return Err(Error::OracleMismatch(format!(
            "index route gives {}, Chern route gives {}",
            a.render(),
            b.render()
        )));
    }
    Ok(a)
}

/// The structural properties every Hilbert polynomial has: value `N0` at the
/// origin, reciprocity, degree parity, and integer values.
pub fn check_invariants(h: &HilbertPoly) -> Report {
    let mut r = Report::new(String::new());
    let n = h.n as i64;
    let h0 = h.eval_int(0);
    r.check(
        "H(0) = N0",
        h0 == BigRational::from_integer(h.n0.into()),
        format!("H(0) = {h0}, N0 = {}", h.n0),
    );
    let refl = h.reflected();
    let sign = if n % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let ok = refl.scale(&sign) == h.coeffs;
    r.check("reciprocity H(z) = (-1)^n H(-k0-z)", ok, "");
    let parity_ok = match h.degree() {
        None => true,
        Some(d) => (d as i64 - n) % 2 == 0,
    };
    r.check(
        "degree parity deg H = n mod 2",
        parity_ok,
        format!("deg H = {}", h.degree().map_or("-inf".into(), |d| d.to_string())),
    );
    let bad: Vec<i64> = (-2 * n..=2 * n).filter(|&k| !h.eval_int(k).is_integer()).collect();
    r.check(
        "integer values on [-2n, 2n]",
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("non-integral at k = {bad:?}") },
    );
    r
}

/// Zeros forced by the index, the extra root at `-k0/2`, and the bounds on `k0`.
pub fn check_rigidity(h: &HilbertPoly) -> Report {
    let mut r = Report::new(format!("rigidity n = {}, k0 = {}", h.n, h.k0));
    let n = h.n as i64;
    let k0 = h.k0 as i64;
    if k0 < 1 {
        r.check("index k0 >= 1", false, format!("k0 = {k0}"));
        return r;
    }
    for k in 1..k0 {
        let v = h.eval_int(-k);
        r.check(format!("vanishing H(-{k}) = 0"), v.is_zero(), format!("H(-{k}) = {v}"));
    }
    if (n - k0) % 2 == 0 {
        let half = BigRational::new((-k0).into(), 2.into());
        let v = h.eval(&half);
        r.check(format!("extra root H({half}) = 0"), v.is_zero(), format!("H({half}) = {v}"));
        if n % 2 == 0 && k0 % 2 == 0 && !h.is_zero() {
            let m = h.coeffs.root_multiplicity(&half);
            r.check(
                format!("root {half} has multiplicity >= 2"),
                m >= 2,
                format!("multiplicity {m}"),
            );
        }
    }
    if let Some(d) = h.degree() {
        let d = d as i64;
        r.check("bound k0 <= deg H + 1", k0 <= d + 1, format!("deg H = {d}"));
        if h.n0 == 0 {
            r.check("bound k0 <= deg H - 1 when N0 = 0", k0 <= d - 1, format!("deg H = {d}"));
        }
    } else {
        r.note("H is identically zero; degree bounds not applicable");
    }
    if h.n0 > 0 {
        r.check(
            "H not identically zero when N0 > 0",
            !h.is_zero(),
            "",
        );
    }
    r.extend(check_invariants(h));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qr;
    use crate::space::product_space;

    fn cp2() -> S1Space {
        S1Space::from_weights("CP2", 2, vec![vec![1, 2], vec![-1, 1], vec![-2, -1]]).unwrap()
    }

    fn s2() -> S1Space {
        S1Space::from_weights("S2", 1, vec![vec![1], vec![-1]]).unwrap()
    }

    #[test]
    fn eta_solutions() {
        let (c, eta) = solve_eta(&cp2(), 3).unwrap();
        assert_eq!(c, 0);
        assert_eq!(eta.exponents(), &[1, 0, -1]);
        let (c, eta) = solve_eta(&s2(), 2).unwrap();
        assert_eq!(c, 1);
        assert_eq!(eta.exponents(), &[0, -1]);
        assert!(matches!(solve_eta(&cp2(), 2), Err(Error::NoConsistentResidue { .. })));
    }

    #[test]
    fn small_hilbert_polys() {
        let h = hilbert_both(&cp2(), 3).unwrap();
        assert_eq!(h.coeffs, Poly::new(vec![q(1), qr(3, 2), qr(1, 2)]));
        let h = hilbert_both(&s2(), 2).unwrap();
        assert_eq!(h.coeffs, Poly::from_ints(&[1, 1]));
        let s = s2();
        let h = hilbert_both(&product_space(&s, &s, Some(2)), 2).unwrap();
        assert_eq!(h.coeffs, Poly::from_ints(&[1, 2, 1]));
        assert!(check_rigidity(&h).passed());
    }

    #[test]
    fn rigidity_negative_control() {
        let h = HilbertPoly::new(Poly::from_ints(&[2, 1]), 1, 2, 2, Source::Fixture);
        let r = check_rigidity(&h);
        assert!(!r.find("vanishing H(-1)").unwrap().passed);
        let z = HilbertPoly::new(Poly::zero(), 3, 10, 0, Source::Fixture);
        let r = check_rigidity(&z);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn chern_extraction() {
        let h = hilbert_both(&cp2(), 3).unwrap();
        assert_eq!(h.c1n(), q(9));
        assert_eq!(h.c1n2c2(), Some(q(3)));
    }
}
