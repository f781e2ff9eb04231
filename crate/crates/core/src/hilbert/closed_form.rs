//! Explicit Hilbert polynomials for `k0 = n+1, n, n-1, n-2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{HilbertPoly, Source};
use crate::algebra::{as_string, factorial, q, qr, Poly};
use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub hilbert: HilbertPoly,
    #[serde(serialize_with = "as_string::display")]
    pub c1n: BigRational,
    #[serde(serialize_with = "as_string::option")]
    pub c1n2c2: Option<BigRational>,
    /// Numerator of the generating function over `(1-t)^{n+1}`.
    pub u: Poly,
    /// The middle coefficient parameter, for `k0 = n-1, n-2` with `N0 != 0`.
    #[serde(serialize_with = "as_string::option")]
    pub b: Option<BigRational>,
    /// The root parameter `a` (square of the offset of the two free roots
    /// from `-k0/2`), derived from `b` when defined.
    #[serde(serialize_with = "as_string::option")]
    pub a: Option<BigRational>,
}

fn rq(b: &BigInt) -> BigRational {
    BigRational::from_integer(b.clone())
}

/// `sum_i u_i C(z - i + n, n)`: the polynomial whose values have generating
/// function `U(t) / (1-t)^{n+1}`.
pub(crate) fn hilbert_from_u(u: &Poly, n: usize) -> Poly {
    let nf = rq(&factorial(n as u64)).recip();
    let mut acc = Poly::zero();
    for (i, ui) in u.coeffs().iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        let shifts = (1..=n as i64).map(|j| q(j - i as i64));
        let b = Poly::from_shifts(shifts).scale(&nf);
        acc = &acc + &b.scale(ui);
    }
    acc
}

/// The closed-form case for `(n, k0, N0)`.
///
/// `param` is `b` when `k0` is `n-1` or `n-2` and `N0 != 0`, and the leading
/// scale `gamma` when `N0 = 0` in those two cases. It is ignored otherwise.
pub fn closed_form(n: usize, k0: u64, n0: u64, param: Option<BigRational>) -> Result<ClosedForm> {
    let ni = n as i64;
    let k = k0 as i64;
    let n0q = q(n0 as i64);
    let no_form = Error::NoClosedForm { n, k0 };
    if k0 == 0 || n == 0 {
        return Err(no_form);
    }
    let case = if k == ni + 1 {
        1
    } else if k == ni && n >= 1 {
        0
    } else if k == ni - 1 && n >= 2 {
        -1
    } else if k == ni - 2 && n >= 3 {
        -2
    } else {
        return Err(no_form);
    };
    let (poly, u, b) = if n0 == 0 && case >= 0 {
        (Poly::zero(), Poly::zero(), None)
    } else if n0 == 0 {
        let gamma = param.ok_or_else(|| Error::InvalidParams("gamma required when N0 = 0".into()))?;
        let poly = if case == -1 {
            Poly::from_shifts((0..ni).map(q)).scale(&gamma)
        } else {
            let half = qr(ni - 2, 2);
            &Poly::linear(half) * &Poly::from_shifts((0..=ni - 2).map(q)).scale(&gamma)
        };
        (poly, Poly::zero(), None)
    } else {
        let (u, b) = match case {
            1 => (Poly::constant(n0q.clone()), None),
            0 => (Poly::new(vec![n0q.clone(), n0q.clone()]), None),
            _ => {
                let b = param.ok_or_else(|| Error::InvalidParams("parameter b required".into()))?;
                let bn = &b * &n0q;
                if !bn.is_integer() {
                    return Err(Error::InvalidParams(format!("b N0 = {bn} is not an integer")));
                }
                let u = if case == -1 {
                    Poly::new(vec![n0q.clone(), bn, n0q.clone()])
                } else {
                    Poly::new(vec![n0q.clone(), bn.clone(), bn, n0q.clone()])
                };
                (u, Some(b))
            }
        };
        (hilbert_from_u(&u, n), u, b)
    };
    let hilbert = HilbertPoly::new(poly, n, k0, n0, Source::ClosedForm);
    let u = if u.is_zero() && !hilbert.is_zero() {
        super::generating_function(&hilbert).u
    } else {
        u
    };
    let a = b.as_ref().and_then(|b| {
        // b + 2 = 4n(n-1)/((n-1)^2 - 4a)   for k0 = n-1
        // b + 1 = 4n(n-1)/((n-2)^2 - 4a)   for k0 = n-2
        let (shift, base) = if case == -1 { (2, (ni - 1) * (ni - 1)) } else { (1, (ni - 2) * (ni - 2)) };
        let denom = b + q(shift);
        if denom.is_zero() {
            return None;
        }
        let d = q(4 * ni * (ni - 1)) / denom;
        Some((q(base) - d) / q(4))
    });
    Ok(ClosedForm {
        c1n: hilbert.c1n(),
        c1n2c2: hilbert.c1n2c2(),
        hilbert,
        u,
        b,
        a,
    })
}

/// The linear relation between `c_1^n` and `c_1^{n-2} c_2` for `k0 = n-1`
/// (right side `12 N0 (n-1)^{n-2}`) and `k0 = n-2` (right side `24 N0 (n-2)^{n-2}`).
pub fn chern_relation_check(
    n: usize,
    k0: u64,
    c1n: &BigRational,
    c1n2c2: &BigRational,
    n0: u64,
) -> Result<Report> {
    let ni = n as i64;
    let mut r = Report::new(format!("Chern relation n = {n}, k0 = {k0}"));
    let (lhs, rhs) = if k0 as i64 == ni - 1 && n >= 2 {
        let coef = qr(ni * (ni - 3), 2 * (ni - 1) * (ni - 1));
        (
            c1n2c2 - coef * c1n,
            q(12 * n0 as i64) * rq(&BigInt::from(ni - 1).pow(n as u32 - 2)),
        )
    } else if k0 as i64 == ni - 2 && n >= 3 {
        let coef = qr(ni - 3, 2 * (ni - 2));
        (
            c1n2c2 - coef * c1n,
            q(24 * n0 as i64) * rq(&BigInt::from(ni - 2).pow(n as u32 - 2)),
        )
    } else {
        return Err(Error::InvalidParams(format!(
            "Chern relation needs k0 = n-1 (n >= 2) or k0 = n-2 (n >= 3), got n = {n}, k0 = {k0}"
        )));
    };
    r.check(
        "c1^{n-2}c2 - coef c1^n equals its predicted value",
        lhs == rhs,
        format!("lhs = {lhs}, rhs = {rhs}"),
    );
    Ok(r)
}

/// `true` when `a` makes `4 N0 n (n-1) / ((n-1)^2 - 4a)` an integer (`k0 = n-1`)
/// or `8 N0 n (n-1) / ((n-2)^2 - 4a)` an integer (`k0 = n-2`).
pub fn a_integrality(n: usize, k0: u64, n0: u64, a: &BigRational) -> Option<bool> {
    let ni = n as i64;
    let (num, base) = if k0 as i64 == ni - 1 {
        (4 * n0 as i64 * ni * (ni - 1), (ni - 1) * (ni - 1))
    } else if k0 as i64 == ni - 2 {
        (8 * n0 as i64 * ni * (ni - 1), (ni - 2) * (ni - 2))
    } else {
        return None;
    };
    let d = q(base) - q(4) * a;
    if d.is_zero() {
        return Some(false);
    }
    Some((q(num) / d).is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim8_values() {
        let c = closed_form(4, 5, 1, None).unwrap();
        assert_eq!((c.c1n, c.c1n2c2.unwrap()), (q(625), q(250)));
        let c = closed_form(4, 4, 1, None).unwrap();
        assert_eq!((c.c1n, c.c1n2c2.unwrap()), (q(512), q(224)));
    }

    #[test]
    fn flag_value() {
        let c = closed_form(3, 2, 1, Some(q(4))).unwrap();
        assert_eq!(c.c1n, q(48));
        assert_eq!(c.c1n2c2, Some(q(24)));
        assert_eq!(c.hilbert.coeffs, Poly::from_ints(&[1, 3, 3, 1]));
        assert_eq!(c.u, Poly::from_ints(&[1, 4, 1]));
    }

    #[test]
    fn b_formulas_match_explicit_expressions() {
        for n in 3..8i64 {
            for b in -3..6i64 {
                let c = closed_form(n as usize, (n - 1) as u64, 1, Some(q(b))).unwrap();
                let p = BigInt::from(n - 1);
                assert_eq!(c.c1n, q(b + 2) * rq(&p.pow(n as u32)));
                let expect = rq(&p.pow(n as u32 - 2)) * (q(12) + qr((b + 2) * n * (n - 3), 2));
                assert_eq!(c.c1n2c2.unwrap(), expect);
                if n >= 4 {
                    let c = closed_form(n as usize, (n - 2) as u64, 1, Some(q(b))).unwrap();
                    let p = BigInt::from(n - 2);
                    assert_eq!(c.c1n, q(2 * (b + 1)) * rq(&p.pow(n as u32)));
                    let expect = rq(&p.pow(n as u32 - 2)) * q(24 + (b + 1) * (n - 2) * (n - 3));
                    assert_eq!(c.c1n2c2.unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn relations_hold() {
        let c = closed_form(3, 2, 1, Some(q(4))).unwrap();
        assert!(chern_relation_check(3, 2, &c.c1n, c.c1n2c2.as_ref().unwrap(), 1).unwrap().passed());
        assert!(chern_relation_check(4, 2, &q(384), &q(192), 1).unwrap().passed());
        assert!(chern_relation_check(4, 2, &q(0), &q(0), 0).unwrap().passed());
        assert!(!chern_relation_check(4, 2, &q(384), &q(190), 1).unwrap().passed());
    }

    #[test]
    fn zero_n0_forms() {
        let c = closed_form(4, 3, 0, Some(q(1))).unwrap();
        assert_eq!(c.hilbert.coeffs, Poly::from_shifts((0..4).map(q)));
        assert_eq!(c.c1n, q(81 * 24));
        let c = closed_form(3, 2, 0, None);
        assert!(c.is_err());
        let c = closed_form(3, 4, 0, None).unwrap();
        assert!(c.hilbert.is_zero());
        assert!(closed_form(5, 1, 1, None).is_err());
    }

    #[test]
    fn a_parameter() {
        let c = closed_form(3, 2, 1, Some(q(4))).unwrap();
        let a = c.a.unwrap();
        assert_eq!(a_integrality(3, 2, 1, &a), Some(true));
        // H = 4/(1 (4 - 4a)) (z^2 + 2z + 1 - a)(z + 1) should equal (z+1)^3, so a = 0
        assert_eq!(a, q(0));
        assert!(closed_form(3, 2, 2, Some(qr(1, 3))).is_err());
    }
}
