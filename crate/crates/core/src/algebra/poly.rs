//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients indexed by degree; the last entry is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl From<Poly> for Vec<String> {
    fn from(p: Poly) -> Self {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for Poly {
    type Error = String;
    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        let coeffs = v
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|e| format!("{s}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| q(c)).collect())
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// `c * z^d`
    pub fn monomial(c: BigRational, d: usize) -> Self {
        let mut v = vec![BigRational::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// The linear polynomial `z + r`.
    pub fn linear(r: BigRational) -> Self {
        Self::new(vec![r, BigRational::one()])
    }

    /// `prod (z + r)` over the given shifts.
    pub fn from_shifts<I: IntoIterator<Item = BigRational>>(shifts: I) -> Self {
        shifts.into_iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear(r))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&q(x))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lead().recip();
        self.scale(&l)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Long division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); r.len() - dd];
        let inv = d.lead().recip();
        for i in (0..quo.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            quo[i] = c;
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    /// `Some(self / d)` when the division is exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// `p(a z + b)`
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> Poly {
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Integer content and primitive integer coefficients (positive leading coefficient).
    pub fn primitive_integer(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (BigRational::new(g, lcm), prim)
    }

    /// Primitive part as a rational polynomial.
    pub fn primitive_part(&self) -> Poly {
        Poly::from_bigints(&self.primitive_integer().1)
    }

    /// Monic gcd, computed by the primitive-part Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Square-free part (monic).
    pub fn squarefree(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Interpolate exactly through `(x, y)` pairs (Newton divided differences).
    pub fn interpolate(points: &[(i64, BigRational)]) -> Result<Poly> {
        if points.is_empty() {
            return Err(Error::NoNodes);
        }
        let mut seen = std::collections::HashSet::new();
        for (x, _) in points {
            if !seen.insert(*x) {
                return Err(Error::DuplicateNode(*x));
            }
        }
        let xs: Vec<BigRational> = points.iter().map(|(x, _)| q(*x)).collect();
        let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        let m = dd.len();
        for lvl in 1..m {
            for i in (lvl..m).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - lvl]);
            }
        }
        let mut acc = Poly::zero();
        for i in (0..m).rev() {
            acc = &(&acc * &Poly::new(vec![-xs[i].clone(), BigRational::one()]))
                + &Poly::constant(dd[i].clone());
        }
        Ok(acc)
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`,
    /// with `None` standing for the corresponding infinity.
    pub fn count_real_roots(&self, lo: Option<&BigRational>, hi: Option<&BigRational>) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = sturm_sequence(&self.squarefree());
        let v_lo = sign_changes(&seq, lo, false);
        let v_hi = sign_changes(&seq, hi, true);
        v_lo.saturating_sub(v_hi)
    }

    /// True when every complex root is real.
    pub fn all_roots_real(&self) -> bool {
        let s = self.squarefree();
        match s.degree() {
            None | Some(0) => true,
            Some(d) => s.count_real_roots(None, None) == d,
        }
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &BigRational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear(-r.clone());
        let mut p = self.clone();
        let mut m = 0;
        while let Some(next) = p.exact_div(&lin) {
            p = next;
            m += 1;
        }
        m
    }

    /// Rational roots with multiplicity, found by the rational root theorem.
    ///
    /// Candidates are enumerated only when the extreme integer coefficients
    /// stay below `RATIONAL_ROOT_LIMIT`; otherwise the list may be incomplete.
    pub fn rational_roots(&self) -> Vec<(BigRational, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut p = self.clone();
        // zero is handled separately so the constant term is nonzero
        let m0 = p.coeffs.iter().take_while(|c| c.is_zero()).count();
        if m0 > 0 {
            out.push((BigRational::zero(), m0));
            p = Poly::new(p.coeffs[m0..].to_vec());
        }
        let (_, ints) = p.primitive_integer();
        let (Some(c0), Some(cl)) = (ints.first(), ints.last()) else {
            return out;
        };
        let (Some(c0), Some(cl)) = (c0.abs().to_u64(), cl.abs().to_u64()) else {
            return out;
        };
        if c0 > RATIONAL_ROOT_LIMIT || cl > RATIONAL_ROOT_LIMIT {
            return out;
        }
        let mut cands: Vec<BigRational> = Vec::new();
        for a in small_divisors(c0) {
            for b in small_divisors(cl) {
                let r = BigRational::new(BigInt::from(a), BigInt::from(b));
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        let fc: Vec<f64> = ints.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
        for r in cands {
            // skip candidates that are clearly not roots; the threshold is far
            // above rounding error, so true roots always reach the exact test
            let x = r.to_f64().unwrap_or(0.0);
            let (mut v, mut scale, mut xp) = (0.0f64, 0.0f64, 1.0f64);
            for c in &fc {
                v += c * xp;
                scale += (c * xp).abs();
                xp *= x;
            }
            if v.is_finite() && scale.is_finite() && v.abs() > 1e-6 * scale {
                continue;
            }
            let m = p.root_multiplicity(&r);
            if m > 0 {
                out.push((r, m));
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// Factor over the rationals as far as rational roots allow, e.g.
    /// `(1/2)(z+1)(z+2)` or `(1/6)(z+1)(5z^2+10z+6)`.
    pub fn render_factored(&self, var: &str) -> String {
        if self.degree().unwrap_or(0) == 0 {
            return self.render(var);
        }
        let mut rest = self.clone();
        let mut factors = String::new();
        for (r, m) in self.rational_roots() {
            // primitive integral linear factor  b z - a  for root a/b
            let lin = Poly::from_bigints(&[-r.numer().clone(), r.denom().clone()]);
            for _ in 0..m {
                rest = rest.exact_div(&lin).expect("root divides");
            }
            let body = lin.render(var).replace(' ', "");
            let body = if body == var { body } else { format!("({body})") };
            if m == 1 {
                factors.push_str(&body);
            } else {
                factors.push_str(&format!("{body}^{m}"));
            }
        }
        let (content, prim) = rest.primitive_integer();
        if factors.is_empty() {
            return self.render(var);
        }
        if prim.len() > 1 {
            let body = Poly::from_bigints(&prim).render(var).replace(' ', "");
            factors.push_str(&format!("({body})"));
        }
        let c = if prim.len() > 1 { content } else { rest.lead() };
        let lead = if c.is_one() {
            String::new()
        } else if (-c.clone()).is_one() {
            "-".to_string()
        } else if c.is_integer() {
            c.to_string()
        } else {
            format!("({c})")
        };
        format!("{lead}{factors}")
    }

    /// Render with descending powers, e.g. `(1/2)z^2 + (3/2)z + 1`.
    pub fn render(&self, var: &str) -> String {
        render_terms((0..self.coeffs.len()).rev().map(|i| (i, &self.coeffs[i])), var)
    }

    /// Render with ascending powers, e.g. `1 + 4t + t^2`.
    pub fn render_ascending(&self, var: &str) -> String {
        render_terms(self.coeffs.iter().enumerate(), var)
    }
}

/// Bound on the extreme coefficients for rational root enumeration.
const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000_000;

fn small_divisors(n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            v.push(i);
            if i != n / i {
                v.push(n / i);
            }
        }
        i += 1;
    }
    v
}

fn render_terms<'a, I: Iterator<Item = (usize, &'a BigRational)>>(terms: I, var: &str) -> String {
    let mut out = String::new();
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else if a.is_integer() {
            out.push_str(&format!("{a}{mono}"));
        } else {
            out.push_str(&format!("({a}){mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Pseudo-remainder of `a` by `b`, scaled so that it stays integral for integral inputs.
fn pseudo_rem(a: &Poly, b: &Poly) -> Poly {
    let (_, r) = a.div_rem(b);
    let l = b.lead();
    let e = a.degree().unwrap_or(0) + 1 - b.degree().unwrap_or(0);
    let mut s = BigRational::one();
    for _ in 0..e {
        s *= &l;
    }
    r.scale(&s)
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // positive rescaling of -r keeps the Sturm property
        let (content, prim) = r.primitive_integer();
        let prim = Poly::from_bigints(&prim);
        seq.push(if content.is_positive() { -&prim } else { prim });
    }
    seq
}

fn sign_at(p: &Poly, x: Option<&BigRational>, plus_inf: bool) -> i32 {
    match x {
        Some(x) => {
            let v = p.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        }
        None => {
            let l = p.lead();
            let d = p.degree().unwrap_or(0);
            let s = if l.is_positive() { 1 } else { -1 };
            if plus_inf || d % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

fn sign_changes(seq: &[Poly], x: Option<&BigRational>, plus_inf: bool) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| sign_at(p, x, plus_inf))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("z"))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(i64, BigRational)> {
        v.iter().map(|&(x, y)| (x, q(y))).collect()
    }

    #[test]
    fn interpolate_small() {
        let p = Poly::interpolate(&pts(&[(0, 1), (1, 3), (2, 6)])).unwrap();
        assert_eq!(p.coeffs(), &[q(1), qr(3, 2), qr(1, 2)]);
        let c = Poly::interpolate(&pts(&[(0, 5)])).unwrap();
        assert_eq!(c, Poly::from_ints(&[5]));
        let l = Poly::interpolate(&pts(&[(0, 1), (1, 2), (-1, 0)])).unwrap();
        assert_eq!(l, Poly::from_ints(&[1, 1]));
        assert_eq!(
            Poly::interpolate(&pts(&[(0, 1), (0, 2)])),
            Err(Error::DuplicateNode(0))
        );
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        assert_eq!(a.exact_div(&b), Some(Poly::from_ints(&[1, 1])));
        let g = Poly::from_ints(&[2, 3, 1]).gcd(&Poly::from_ints(&[3, 4, 1]));
        assert_eq!(g, Poly::from_ints(&[1, 1]));
        let g = Poly::from_ints(&[1, 1]).gcd(&Poly::from_ints(&[2, 1]));
        assert_eq!(g, Poly::one());
    }

    #[test]
    fn render_forms() {
        let p = Poly::new(vec![q(1), qr(3, 2), qr(1, 2)]);
        assert_eq!(p.render("z"), "(1/2)z^2 + (3/2)z + 1");
        assert_eq!(Poly::from_ints(&[1, 4, 1]).render_ascending("t"), "1 + 4t + t^2");
        assert_eq!(Poly::from_ints(&[0, -1, 2]).render("z"), "2z^2 - z");
        assert_eq!(Poly::zero().render("z"), "0");
    }

    #[test]
    fn sturm_counts() {
        // (z-1)(z-2)(z^2+1)
        let p = &Poly::from_ints(&[2, -3, 1]) * &Poly::from_ints(&[1, 0, 1]);
        assert_eq!(p.count_real_roots(None, None), 2);
        assert_eq!(p.count_real_roots(Some(&q(1)), None), 1);
        assert_eq!(p.count_real_roots(Some(&q(0)), Some(&q(1))), 1);
        assert!(!p.all_roots_real());
        let r = Poly::from_shifts([q(1), q(1), q(2)]);
        assert!(r.all_roots_real());
        assert_eq!(r.root_multiplicity(&q(-1)), 2);
    }

    #[test]
    fn factored_forms() {
        let cp2 = Poly::new(vec![q(1), qr(3, 2), qr(1, 2)]);
        assert_eq!(cp2.render_factored("z"), "(1/2)(z+1)(z+2)");
        assert_eq!(Poly::from_ints(&[1, 2, 1]).render_factored("z"), "(z+1)^2");
        let v5 = &Poly::new(vec![q(1), qr(5, 3), qr(5, 6)]) * &Poly::from_ints(&[1, 1]);
        assert_eq!(v5.render_factored("z"), "(1/6)(z+1)(5z^2+10z+6)");
        assert_eq!(Poly::from_ints(&[1, 2, 2]).render_factored("z"), "2z^2 + 2z + 1");
        assert_eq!(Poly::from_ints(&[0, 0, -3]).render_factored("z"), "-3z^2");
    }

    #[test]
    fn compose_affine_shift() {
        let p = Poly::from_ints(&[1, 2, 1]);
        // p(z - 1) = z^2
        assert_eq!(p.compose_affine(&q(1), &q(-1)), Poly::from_ints(&[0, 0, 1]));
    }
}
