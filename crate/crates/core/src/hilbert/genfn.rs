//! The generating function `sum_k H(k) t^k = U(t) / (1 - t)^{m+1}`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::HilbertPoly;
use crate::algebra::{binomial, Poly};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenFnData {
    pub u: Poly,
    /// `deg H`; `None` when `H` is identically zero.
    pub m: Option<usize>,
    pub k0: u64,
    pub n0: u64,
    pub checks: Report,
}

impl GenFnData {
    pub fn is_zero_flag(&self) -> bool {
        self.m.is_none()
    }

    /// The middle coefficient parameter `b = u_1 / N0` of the closed-form cases.
    pub fn b_parameter(&self) -> Option<BigRational> {
        if self.n0 == 0 {
            return None;
        }
        Some(self.u.coeff(1) / BigRational::from_integer(self.n0.into()))
    }
}

/// Numerator `U` with `u_i = sum_{j<=i} (-1)^j C(m+1, j) H(i-j)`, plus its checks.
pub fn generating_function(h: &HilbertPoly) -> GenFnData {
    let mut r = Report::new("generating function");
    let Some(m) = h.degree() else {
        r.note("H is identically zero, so U is zero");
        return GenFnData {
            u: Poly::zero(),
            m: None,
            k0: h.k0,
            n0: h.n0,
            checks: r,
        };
    };
    let mi = m as i64;
    let k0 = h.k0 as i64;
    let vals: Vec<BigRational> = (0..=mi + 2).map(|k| h.eval_int(k)).collect();
    let u: Vec<BigRational> = (0..=mi + 2)
        .map(|i| {
            (0..=i).fold(BigRational::zero(), |acc, j| {
                let c = BigRational::from_integer(binomial(mi + 1, j));
                let t = c * &vals[(i - j) as usize];
                if j % 2 == 0 {
                    acc + t
                } else {
                    acc - t
                }
            })
        })
        .collect();
    let top = mi + 1 - k0;
    let tail_bad: Vec<i64> = (0..=mi + 2)
        .filter(|&i| i > top && !u[i as usize].is_zero())
        .collect();
    r.check(
        format!("u_i = 0 for i > m+1-k0 = {top}"),
        tail_bad.is_empty(),
        if tail_bad.is_empty() { String::new() } else { format!("nonzero at i = {tail_bad:?}") },
    );
    let up = Poly::new(u.clone());
    r.check(
        "U(0) = N0",
        up.coeff(0) == BigRational::from_integer(h.n0.into()),
        format!("U(0) = {}", up.coeff(0)),
    );
    let pal = (0..=mi + 2).all(|i| {
        let j = top - i;
        let other = if (0..=mi + 2).contains(&j) { u[j as usize].clone() } else { BigRational::zero() };
        u[i as usize] == other
    });
    r.check("palindrome U(1/t) = t^(k0-m-1) U(t)", pal, format!("U = {}", up.render_ascending("t")));
    let deg_u = up.degree();
    let window = match deg_u {
        Some(e) => {
            let e = e as i64;
            2 * e >= top && e <= top
        }
        None => false,
    };
    r.check(
        "degree window (m+1-k0)/2 <= deg U <= m+1-k0",
        window,
        format!("deg U = {}, m+1-k0 = {top}", deg_u.map_or("-inf".into(), |d| d.to_string())),
    );
    let top_exact = deg_u.map(|e| e as i64) == Some(top);
    r.check(
        "deg U = m+1-k0 iff N0 != 0",
        top_exact == (h.n0 != 0),
        "",
    );
    GenFnData {
        u: up,
        m: Some(m),
        k0: h.k0,
        n0: h.n0,
        checks: r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::hilbert::Source;

    fn hp(c: &[i64], n: usize, k0: u64, n0: u64) -> HilbertPoly {
        HilbertPoly::new(Poly::from_ints(c), n, k0, n0, Source::Fixture)
    }

    #[test]
    fn quadric_and_flag() {
        let g = generating_function(&hp(&[1, 2, 1], 2, 2, 1));
        assert_eq!(g.u, Poly::from_ints(&[1, 1]));
        assert!(g.checks.passed(), "{}", g.checks);
        let g = generating_function(&hp(&[1, 3, 3, 1], 3, 2, 1));
        assert_eq!(g.u, Poly::from_ints(&[1, 4, 1]));
        assert_eq!(g.b_parameter(), Some(q(4)));
        assert!(g.checks.passed(), "{}", g.checks);
    }

    #[test]
    fn zero_flag() {
        let g = generating_function(&hp(&[], 3, 10, 0));
        assert!(g.is_zero_flag());
        assert!(g.u.is_zero());
    }

    #[test]
    fn bad_index_flagged() {
        // (z+1)^2 does not have index 3
        let g = generating_function(&hp(&[1, 2, 1], 2, 3, 1));
        assert!(!g.checks.passed());
    }
}
