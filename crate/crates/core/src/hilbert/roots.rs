//! Position of the roots of `H`: the cross `{Im z = 0} ∪ {Re z = -k0/2}`,
//! the strip `-k0 < Re z < 0`, and the family `T_k0` of products
//! `C(z) (z+1)...(z+k0-1)` with every root of `C` on `Re z = -k0/2`.
//!
//! Everything is decided exactly when the residual is symmetric about
//! `-k0/2`: writing `R(w - k0/2) = S(w^2)`, the roots of `R` are on the cross
//! iff `S` has only real roots, and on the vertical line iff additionally
//! those roots are `<= 0`. Floating point is used only to report
//! approximate root positions and, for non-real `S` roots, the strip test.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{generating_function, HilbertPoly};
use crate::algebra::{factorial, q, qr, Poly};
use crate::error::{Error, Result};
use crate::report::Report;

/// Classification tolerance on `|Re z + k0/2|`, `|Im z|` and the strip edges.
pub const ROOT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexRoot {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
    /// `true` when the root is known in closed form.
    pub exact: bool,
    pub exact_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport {
    pub degree: usize,
    /// Roots found, with multiplicity; equals `degree` for consistent data.
    pub root_count: usize,
    /// Integer roots with multiplicity, descending.
    pub integer_roots: Vec<(i64, usize)>,
    /// Multiplicity of `-k0/2` (zero when it is not a root).
    pub half_root_mult: usize,
    /// Rational roots that are neither integers nor `-k0/2`.
    pub other_rational_roots: Vec<(String, usize)>,
    /// The factor left after removing every rational root.
    pub residual: Poly,
    pub residual_roots: Vec<ComplexRoot>,
    pub on_cross: bool,
    pub in_strip: bool,
    pub in_t_family: bool,
    pub cassini_checked: Option<bool>,
    pub checks: Report,
}

/// `S` with `p(w - k0/2) = w^e S(w^2)`, when `p` is symmetric about `-k0/2`.
fn even_part(p: &Poly, k0: u64) -> Option<Poly> {
    let s = p.compose_affine(&q(1), &qr(-(k0 as i64), 2));
    let e = s.coeffs().iter().take_while(|c| c.is_zero()).count();
    let cs = &s.coeffs()[e..];
    if cs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return None;
    }
    Some(Poly::new(cs.iter().step_by(2).cloned().collect()))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// All complex roots of a polynomial with rational coefficients, by the
/// Aberth iteration followed by Newton polishing.
pub(crate) fn numeric_roots(p: &Poly) -> Vec<Complex64> {
    let Some(d) = p.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let m = p.monic();
    let c: Vec<Complex64> = m.coeffs().iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for a in c.iter().rev() {
            dv = dv * z + v;
            v = v * z + a;
        }
        (v, dv)
    };
    // Cauchy bound for the initial circle
    let radius = 1.0 + c[..d].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = std::f64::consts::TAU * (k as f64 + 0.25) / d as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let rep: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::one() / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::one() - ratio * rep);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = eval(*zi);
            if dv.norm() > 0.0 {
                let step = v / dv;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z
}

/// Roots of `a u^2 + b u + c` or `b u + c`, with readable exact forms.
fn solve_small(s: &Poly) -> Vec<(Complex64, String, Option<BigRational>)> {
    match s.degree() {
        Some(1) => {
            let r = -s.coeff(0) / s.coeff(1);
            vec![(Complex64::new(to_f64(&r), 0.0), r.to_string(), Some(r))]
        }
        Some(2) => {
            let (a, b, c) = (s.coeff(2), s.coeff(1), s.coeff(0));
            let mid = -&b / (q(2) * &a);
            let disc = (&b * &b - q(4) * &a * &c) / (q(4) * &a * &a);
            let mf = to_f64(&mid);
            let df = to_f64(&disc);
            if disc.is_negative() {
                let im = (-df).sqrt();
                vec![
                    (Complex64::new(mf, im), format!("{mid} + i sqrt({})", -&disc), None),
                    (Complex64::new(mf, -im), format!("{mid} - i sqrt({})", -&disc), None),
                ]
            } else {
                let sq = df.sqrt();
                vec![
                    (Complex64::new(mf + sq, 0.0), format!("{mid} + sqrt({disc})"), None),
                    (Complex64::new(mf - sq, 0.0), format!("{mid} - sqrt({disc})"), None),
                ]
            }
        }
        _ => Vec::new(),
    }
}

/// Group numerically equal roots.
fn group(roots: Vec<(Complex64, bool, Option<String>)>) -> Vec<ComplexRoot> {
    let mut out: Vec<ComplexRoot> = Vec::new();
    for (z, exact, form) in roots {
        let scale = 1.0 + z.norm();
        if let Some(r) = out
            .iter_mut()
            .find(|r| (Complex64::new(r.re, r.im) - z).norm() < 1e-7 * scale && r.exact_form == form)
        {
            r.multiplicity += 1;
            continue;
        }
        out.push(ComplexRoot {
            re: z.re,
            im: z.im,
            multiplicity: 1,
            exact,
            exact_form: form,
        });
    }
    out.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    out
}

/// Remove `(z - r)^m` for every listed root.
fn deflate(p: &Poly, roots: &[(BigRational, usize)]) -> Poly {
    let mut out = p.clone();
    for (r, m) in roots {
        let lin = Poly::linear(-r.clone());
        for _ in 0..*m {
            out = out.exact_div(&lin).expect("listed root divides");
        }
    }
    out
}

fn product_shifts(k0: u64) -> Poly {
    Poly::from_shifts((1..k0 as i64).map(q))
}

/// Locate and classify the roots of a nonzero Hilbert polynomial.
pub fn root_analysis(h: &HilbertPoly) -> Result<RootReport> {
    let Some(deg) = h.degree() else {
        return Err(Error::InvalidParams("root analysis needs H not identically zero".into()));
    };
    let n = h.n as i64;
    let k0 = h.k0;
    let k = k0 as i64;
    let half = qr(-k, 2);
    let mut checks = Report::new(format!("roots of H = {}", h.render_factored()));
    let p = &h.coeffs;

    for j in 1..k {
        let m = p.root_multiplicity(&q(-j));
        checks.check(format!("known root -{j} present"), m > 0, format!("multiplicity {m}"));
    }
    let half_mult = p.root_multiplicity(&half);
    if (n - k) % 2 == 0 {
        checks.check(
            format!("extra root {half} present"),
            half_mult > 0,
            format!("multiplicity {half_mult}"),
        );
    }

    // every rational root, exact
    let mut rational = p.rational_roots();
    for j in 1..k {
        let r = q(-j);
        if !rational.iter().any(|(x, _)| *x == r) {
            let m = p.root_multiplicity(&r);
            if m > 0 {
                rational.push((r, m));
            }
        }
    }
    if half_mult > 0 && !rational.iter().any(|(x, _)| *x == half) {
        rational.push((half.clone(), half_mult));
    }
    rational.sort_by(|a, b| b.0.cmp(&a.0));
    let residual = deflate(p, &rational);

    let mut integer_roots = Vec::new();
    let mut other_rational = Vec::new();
    for (r, m) in &rational {
        if r.is_integer() {
            integer_roots.push((r.to_integer().to_i64().unwrap_or(i64::MIN), *m));
        } else if *r != half {
            other_rational.push((r.to_string(), *m));
        }
    }

    // rational roots must pair up under z -> -k0 - z
    let rational_symmetric = rational.iter().all(|(r, m)| {
        let mirror = -q(k) - r;
        rational.iter().any(|(x, mm)| *x == mirror && mm == m)
    });
    let resid_even = even_part(&residual, k0);
    checks.check(
        "roots closed under z -> -k0 - z",
        rational_symmetric && resid_even.is_some(),
        "",
    );

    // positions of the residual roots
    let mut approx: Vec<(Complex64, bool, Option<String>)> = Vec::new();
    let shift = Complex64::new(-(k as f64) / 2.0, 0.0);
    match &resid_even {
        Some(s) if s.degree().unwrap_or(0) > 0 => {
            let us: Vec<(Complex64, Option<(String, Option<BigRational>)>)> = if s.degree().unwrap() <= 2 {
                solve_small(s).into_iter().map(|(u, f, r)| (u, Some((f, r)))).collect()
            } else {
                numeric_roots(s).into_iter().map(|u| (u, None)).collect()
            };
            for (u, form) in us {
                let w = u.sqrt();
                for sign in [1.0, -1.0] {
                    let pm = if sign > 0.0 { "+" } else { "-" };
                    let f = form.as_ref().map(|(f, r)| match r {
                        Some(r) if r.is_negative() => format!("{half} {pm} i sqrt({})", -r),
                        Some(r) => format!("{half} {pm} sqrt({r})"),
                        None => format!("{half} {pm} sqrt({f})"),
                    });
                    approx.push((shift + w * sign, form.is_some(), f));
                }
            }
        }
        Some(_) => {}
        None => {
            let small = residual.degree().unwrap_or(0) <= 2;
            if small {
                for (z, f, _) in solve_small(&residual) {
                    approx.push((z, true, Some(f)));
                }
            } else {
                for z in numeric_roots(&residual) {
                    approx.push((z, false, None));
                }
            }
        }
    }
    let residual_roots = group(approx);

    // cross: rational roots are real; the residual needs S all-real
    let on_cross = match &resid_even {
        Some(s) => s.all_roots_real(),
        None => residual_roots
            .iter()
            .all(|r| r.im.abs() < ROOT_TOL || (r.re + k as f64 / 2.0).abs() < ROOT_TOL),
    };

    // strip: -k0 < Re z < 0
    let rational_in_strip = rational.iter().all(|(r, _)| r > &-q(k) && r.is_negative());
    let residual_in_strip = match &resid_even {
        Some(s) if s.degree().unwrap_or(0) > 0 => {
            let edge = qr(k * k, 4);
            let real_ok = s.eval(&edge) != BigRational::zero() && s.count_real_roots(Some(&edge), None) == 0;
            // non-real u give roots off the real axis; their real parts need numerics
            let complex_ok = s.all_roots_real()
                || residual_roots.iter().all(|r| r.re > -(k as f64) + ROOT_TOL && r.re < -ROOT_TOL);
            real_ok && complex_ok
        }
        Some(_) => true,
        None => residual_roots.iter().all(|r| r.re > -(k as f64) + ROOT_TOL && r.re < -ROOT_TOL),
    };
    let in_strip = rational_in_strip && residual_in_strip;

    // T family: H = C (z+1)...(z+k0-1), C with all roots on Re z = -k0/2
    let in_t_family = match p.exact_div(&product_shifts(k0)) {
        Some(c) => match even_part(&c, k0) {
            Some(sc) => sc.all_roots_real() && sc.count_real_roots(Some(&BigRational::zero()), None) == 0,
            None => false,
        },
        None => false,
    };

    let total: usize = rational.iter().map(|(_, m)| m).sum::<usize>()
        + residual_roots.iter().map(|r| r.multiplicity).sum::<usize>();
    checks.check(
        "root count equals deg H",
        total == deg,
        format!("{total} roots, deg H = {deg}"),
    );

    if k >= n - 2 && deg > 0 {
        checks.check("all roots on the cross when k0 >= n-2", on_cross, "");
    }

    // the explicit criteria for k0 = n-1, n-2 in terms of b
    if (k == n - 1 && n >= 2) || (k == n - 2 && n >= 3) {
        let g = generating_function(h);
        if h.n0 == 0 {
            checks.check("roots not all in the strip when N0 = 0", !in_strip, "");
        } else if g.checks.passed() {
            if let Some(b) = g.b_parameter() {
                let (low, high) = if k == n - 1 {
                    (q(-2), qr(2 * (n + 1), n - 1))
                } else {
                    (q(-1), qr(3 * n * n - 4, (n - 2) * (n - 2)))
                };
                checks.check(
                    format!("strip iff b >= {low}"),
                    in_strip == (b >= low),
                    format!("b = {b}, in strip = {in_strip}"),
                );
                checks.check(
                    format!("T family iff {low} <= b <= {high}"),
                    in_t_family == (b >= low && b <= high),
                    format!("b = {b}, in T family = {in_t_family}"),
                );
            }
        }
    }

    // k0 = n-3: four free roots; off the cross they lie on a Cassini oval
    let mut cassini_checked = None;
    if k == n - 3 && n >= 4 && h.n0 != 0 && deg == h.n && !on_cross {
        let rest = Poly::from_shifts((1..=n - 4).map(q));
        if let Some(quartic) = p.exact_div(&rest) {
            let quartic = quartic.monic();
            let c1n = h.c1n();
            let rhs = BigRational::from_integer(
                BigInt::from(h.n0) * factorial(h.n as u64) * BigInt::from(n - 3).pow(h.n as u32),
            ) / (BigRational::from_integer(factorial(h.n as u64 - 4)) * c1n);
            let lhs = quartic.coeff(0);
            let ok = lhs == rhs;
            checks.check(
                "Cassini relation on the free quartic",
                ok,
                format!("product of the four roots {lhs}, predicted {rhs}"),
            );
            cassini_checked = Some(ok);
        }
    }

    Ok(RootReport {
        degree: deg,
        root_count: total,
        integer_roots,
        half_root_mult: half_mult,
        other_rational_roots: other_rational,
        residual,
        residual_roots,
        on_cross,
        in_strip,
        in_t_family,
        cassini_checked,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{closed_form, Source};

    fn hp(p: Poly, n: usize, k0: u64, n0: u64) -> HilbertPoly {
        HilbertPoly::new(p, n, k0, n0, Source::Fixture)
    }

    #[test]
    fn quadric_surface() {
        let r = root_analysis(&hp(Poly::from_ints(&[1, 2, 1]), 2, 2, 1)).unwrap();
        assert_eq!(r.integer_roots, vec![(-1, 2)]);
        assert!(r.on_cross && r.in_t_family && r.in_strip);
        assert!(r.checks.passed(), "{}", r.checks);
    }

    #[test]
    fn index_one_surface() {
        let r = root_analysis(&hp(Poly::from_ints(&[1, 2, 2]), 2, 1, 1)).unwrap();
        assert!(r.integer_roots.is_empty());
        assert_eq!(r.residual_roots.len(), 2);
        for z in &r.residual_roots {
            assert!((z.re + 0.5).abs() < 1e-12 && (z.im.abs() - 0.5).abs() < 1e-12);
            assert!(z.exact);
        }
        assert!(r.on_cross && r.in_t_family && r.in_strip);
    }

    #[test]
    fn projective_spaces() {
        for n in 1..=5usize {
            let h = closed_form(n, n as u64 + 1, 1, None).unwrap().hilbert;
            let r = root_analysis(&h).unwrap();
            let expect: Vec<(i64, usize)> = (1..=n as i64).map(|j| (-j, 1)).collect();
            assert_eq!(r.integer_roots, expect);
            assert!(r.in_t_family && r.on_cross);
            assert!(r.checks.passed(), "{}", r.checks);
        }
    }

    #[test]
    fn b_criteria_agree_with_exact_tests() {
        for n in 3..9usize {
            for b in -6..20i64 {
                let h = closed_form(n, n as u64 - 1, 1, Some(q(b))).unwrap().hilbert;
                let r = root_analysis(&h).unwrap();
                assert!(r.checks.passed(), "n={n} b={b}\n{}", r.checks);
                if n >= 4 {
                    let h = closed_form(n, n as u64 - 2, 1, Some(q(b))).unwrap().hilbert;
                    let r = root_analysis(&h).unwrap();
                    assert!(r.checks.passed(), "n={n} b={b}\n{}", r.checks);
                }
            }
        }
    }

    #[test]
    fn cassini_on_a_quartic_off_the_cross() {
        // n = 4, k0 = 1, H(z) symmetric about -1/2 with four roots off the cross:
        // (w^2 - 1/4)... take S(u) = u^2 + u + 1 in u = w^2, so H = S((z+1/2)^2)
        let w2 = Poly::new(vec![qr(1, 4), q(1), q(1)]);
        let s = &(&w2 * &w2) + &(&w2 + &Poly::one());
        let h = hp(s, 4, 1, 0);
        // adjust N0 to H(0) so the Cassini identity is meaningful
        let n0 = h.eval_int(0);
        let scale = n0.denom().clone();
        let p = h.coeffs.scale(&BigRational::from_integer(scale));
        let n0 = p.eval_int(0).to_integer().to_u64().unwrap();
        let h = hp(p, 4, 1, n0);
        let r = root_analysis(&h).unwrap();
        assert!(!r.on_cross);
        assert_eq!(r.cassini_checked, Some(true));
        assert_eq!(r.residual_roots.len(), 4);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(root_analysis(&hp(Poly::zero(), 3, 10, 0)).is_err());
    }
}
