//! The two fixed-point formulas: integration of Chern monomials by
//! localization, and the equivariant index of a line bundle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{elementary_all, laurent_limit, todd_polynomials, LaurentPoly, LimitPoint, RationalFn};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::space::{weight_profile, S1Space};

/// A Chern monomial `c_{i_1} ... c_{i_k}` of total degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChernPartition {
    parts: Vec<usize>,
}

impl ChernPartition {
    pub fn new(mut parts: Vec<usize>, n: usize) -> Result<Self> {
        if parts.iter().any(|p| *p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        let s: usize = parts.iter().sum();
        if s != n {
            return Err(Error::InvalidPartition(format!("{parts:?} sums to {s}, expected {n}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ChernPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }
}

impl fmt::Display for ChernPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &self.parts {
            *counts.entry(*p).or_default() += 1;
        }
        for (p, c) in counts {
            if c == 1 {
                write!(f, "c{p}")?;
            } else {
                write!(f, "c{p}^{c}")?;
            }
        }
        Ok(())
    }
}

/// Restriction of an equivariant line bundle to the fixed points: `L(p) = t^{a_p}`.
/// Stored in the point order of the owning space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleRestriction {
    a: Vec<i64>,
}

impl BundleRestriction {
    pub fn trivial(space: &S1Space) -> Self {
        BundleRestriction {
            a: vec![0; space.points().len()],
        }
    }

    pub fn from_vec(space: &S1Space, a: Vec<i64>) -> Result<Self> {
        if a.len() != space.points().len() {
            return Err(Error::InvalidParams(format!(
                "bundle has {} entries for {} fixed points",
                a.len(),
                space.points().len()
            )));
        }
        Ok(BundleRestriction { a })
    }

    pub fn from_map(space: &S1Space, m: &BTreeMap<String, i64>) -> Result<Self> {
        for id in m.keys() {
            if space.position(id).is_none() {
                return Err(Error::UnknownPoint(id.clone()));
            }
        }
        let a = space
            .points()
            .iter()
            .map(|p| m.get(&p.id).copied().ok_or_else(|| Error::MissingRestriction(p.id.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(BundleRestriction { a })
    }

    /// The restriction of the first Chern class, `a_p = sum of weights`.
    pub fn c1(space: &S1Space) -> Self {
        BundleRestriction {
            a: space.points().iter().map(|p| p.weight_sum()).collect(),
        }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.a
    }

    pub fn to_map(&self, space: &S1Space) -> BTreeMap<String, i64> {
        space
            .points()
            .iter()
            .zip(&self.a)
            .map(|(p, a)| (p.id.clone(), *a))
            .collect()
    }

    pub fn scaled(&self, h: i64) -> Self {
        BundleRestriction {
            a: self.a.iter().map(|x| x * h).collect(),
        }
    }

    pub fn shifted(&self, c: i64) -> Self {
        BundleRestriction {
            a: self.a.iter().map(|x| x + c).collect(),
        }
    }

    pub fn plus(&self, o: &BundleRestriction) -> Self {
        BundleRestriction {
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
        }
    }
}

/// Per-point elementary symmetric functions and Euler classes.
struct LocalData {
    sigma: Vec<Vec<BigInt>>,
    euler: Vec<BigInt>,
}

impl LocalData {
    fn new(space: &S1Space) -> Self {
        LocalData {
            sigma: space.points().iter().map(|p| elementary_all(&p.weights)).collect(),
            euler: space.points().iter().map(|p| p.euler()).collect(),
        }
    }

    fn integrate(&self, parts: &[usize]) -> BigRational {
        (0..self.euler.len())
            .into_par_iter()
            .map(|i| {
                let num: BigInt = parts.iter().map(|&j| self.sigma[i][j].clone()).product();
                BigRational::new(num, self.euler[i].clone())
            })
            .reduce(BigRational::zero, |a, b| a + b)
    }
}

/// The localization sum for a Chern monomial, before the integrality check.
pub fn localize(space: &S1Space, part: &ChernPartition) -> BigRational {
    LocalData::new(space).integrate(part.parts())
}

fn integral(v: BigRational, what: impl FnOnce() -> String) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NotIntegral(format!("{} = {v}", what())))
    }
}

/// The Chern number `c_{i_1}...c_{i_k}[M]`.
pub fn chern_number(space: &S1Space, part: &ChernPartition) -> Result<BigInt> {
    integral(localize(space, part), || part.to_string())
}

/// `c_1^h T_{n-h}[M]`.
pub fn mixed_chern_todd(space: &S1Space, h: usize) -> Result<BigRational> {
    let n = space.n();
    if h > n {
        return Err(Error::InvalidParams(format!("h = {h} exceeds n = {n}")));
    }
    let data = LocalData::new(space);
    let todd = todd_polynomials(n);
    let mut acc = BigRational::zero();
    for (parts, coeff) in todd[n - h].terms() {
        let mut full = parts.clone();
        full.extend(std::iter::repeat(1).take(h));
        full.sort_unstable_by(|a, b| b.cmp(a));
        let v = integral(data.integrate(&full), || {
            ChernPartition::new(full.clone(), n).map(|p| p.to_string()).unwrap_or_default()
        })?;
        acc += coeff * BigRational::from_integer(v);
    }
    Ok(acc)
}

/// Largest exponent spread accepted by [`atiyah_segal_index`].
const MAX_SERIES_LEN: usize = 50_000_000;

/// The equivariant index `sum_p t^{a_p} / prod_j (1 - t^{-w_pj})`.
///
/// Each summand is rewritten as `(-1)^{lambda_p + n} t^{a_p + c1+(p)} prod_j 1/(1 - t^{|w_pj|})`
/// and expanded as a power series at `t = 0`. If the sum is a Laurent polynomial it
/// lies in `[min(a_p + c1+), max(a_p - c1-)]`. The sum equals `t^e R / L` with `L`
/// the lcm of the denominators, so its series coefficients obey the linear
/// recurrence of `L` beyond `deg R`; a run of `deg L` zeros past the expected top
/// exponent therefore certifies that all later coefficients vanish.
pub fn atiyah_segal_index(space: &S1Space, bundle: &BundleRestriction) -> Result<LaurentPoly> {
    let pts = space.points();
    if bundle.exponents().len() != pts.len() {
        return Err(Error::InvalidParams("bundle does not match space".into()));
    }
    let prof = weight_profile(space);
    let n = space.n();
    let a = bundle.exponents();
    let e: Vec<i64> = (0..pts.len()).map(|i| a[i] + prof.c1_plus[i]).collect();
    let top: Vec<i64> = (0..pts.len()).map(|i| a[i] - prof.c1_minus[i]).collect();
    let e_min = *e.iter().min().unwrap();
    let d_top = *top.iter().max().unwrap();
    let deg_l = lcm_degree(space) as i64;
    // coefficients g_0 .. g_{last} of t^{-e_min} * sum
    let expected_hi = d_top - e_min;
    let last = expected_hi.max(-1) + deg_l;
    let len = usize::try_from(last + 1).unwrap_or(0).max(1);
    if len > MAX_SERIES_LEN {
        return Err(Error::InvalidParams(format!("exponent spread {len} too large")));
    }
    let partial: Vec<Vec<BigInt>> = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let off = (e[i] - e_min) as usize;
            if off >= len {
                return Vec::new();
            }
            let mut s = vec![BigInt::zero(); len - off];
            s[0] = BigInt::one();
            for &w in &pts[i].weights {
                let u = w.unsigned_abs() as usize;
                for k in u..s.len() {
                    let prev = s[k - u].clone();
                    s[k] += prev;
                }
            }
            let neg = (prof.n_negative[i] + n) % 2 == 1;
            if neg {
                for c in s.iter_mut() {
                    *c = -std::mem::take(c);
                }
            }
            s
        })
        .collect();
    let mut g = vec![BigInt::zero(); len];
    for (i, s) in partial.into_iter().enumerate() {
        let off = (e[i] - e_min) as usize;
        for (k, c) in s.into_iter().enumerate() {
            g[off + k] += c;
        }
    }
    let lo_check = (expected_hi + 1).max(0) as usize;
    if g[lo_check.min(len)..].iter().any(|c| !c.is_zero()) {
        return Err(Error::NotLaurent);
    }
    Ok(LaurentPoly::from_terms(
        g.into_iter()
            .enumerate()
            .take(lo_check)
            .map(|(k, c)| (k as i64 + e_min, BigRational::from_integer(c))),
    ))
}

/// Degree of the lcm of the polynomials `prod_j (t^{|w_pj|} - 1)` over all points.
fn lcm_degree(space: &S1Space) -> usize {
    let mut need: BTreeMap<u64, usize> = BTreeMap::new();
    for p in space.points() {
        let mut here: BTreeMap<u64, usize> = BTreeMap::new();
        for &w in &p.weights {
            for d in divisors(w.unsigned_abs()) {
                *here.entry(d).or_default() += 1;
            }
        }
        for (d, m) in here {
            let slot = need.entry(d).or_default();
            *slot = (*slot).max(m);
        }
    }
    need.into_iter().map(|(d, m)| totient(d) as usize * m).sum()
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut i = 1;
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

fn totient(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// The individual summands `t^{a_p} / prod_j (1 - t^{-w_pj})` as rational functions.
pub fn atiyah_segal_summands(space: &S1Space, bundle: &BundleRestriction) -> Vec<RationalFn> {
    space
        .points()
        .iter()
        .zip(bundle.exponents())
        .map(|(p, &a)| {
            let den = p.weights.iter().fold(LaurentPoly::one(), |acc, &w| {
                let f = LaurentPoly::from_terms([(0, BigRational::one()), (-w, -BigRational::one())]);
                &acc * &f
            });
            RationalFn::new(LaurentPoly::monomial(BigRational::one(), a), den).expect("nonzero denominator")
        })
        .collect()
}

/// The index evaluated at `t = 1`.
pub fn index_at_one(space: &S1Space, bundle: &BundleRestriction) -> Result<BigInt> {
    let v = atiyah_segal_index(space, bundle)?.eval_at_one();
    Ok(v.to_integer())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

/// `tau(p) <= c1+(p)` for all `p` (plus), or `-tau(p) <= c1-(p)` (minus).
pub fn is_dominated(space: &S1Space, tau: &BundleRestriction, side: Side) -> bool {
    let prof = weight_profile(space);
    let t = tau.exponents();
    match side {
        Side::Plus => t.iter().zip(&prof.c1_plus).all(|(t, c)| t <= c),
        Side::Minus => t.iter().zip(&prof.c1_minus).all(|(t, c)| -t <= *c),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitOutcome {
    #[serde(serialize_with = "crate::algebra::as_string::display")]
    pub analytic: BigInt,
    #[serde(serialize_with = "crate::algebra::as_string::display")]
    pub predicted: BigInt,
}

/// Limit at zero (resp. infinity) of the index of the bundle `-tau`, with the
/// combinatorial prediction counted from the points where domination is tight.
pub fn limit_index(space: &S1Space, tau: &BundleRestriction, at: LimitPoint) -> Result<LimitOutcome> {
    let prof = weight_profile(space);
    let n = space.n();
    let t = tau.exponents();
    let predicted: i64 = match at {
        LimitPoint::Zero => {
            if !is_dominated(space, tau, Side::Plus) {
                return Err(Error::NotDominated("tau exceeds c1+ at some fixed point".into()));
            }
            (0..t.len())
                .filter(|&i| t[i] == prof.c1_plus[i])
                .map(|i| if (n - prof.n_negative[i]) % 2 == 0 { 1 } else { -1 })
                .sum()
        }
        LimitPoint::Infinity => {
            if !is_dominated(space, tau, Side::Minus) {
                return Err(Error::NotDominated("-tau exceeds c1- at some fixed point".into()));
            }
            (0..t.len())
                .filter(|&i| -t[i] == prof.c1_minus[i])
                .map(|i| if prof.n_negative[i] % 2 == 0 { 1 } else { -1 })
                .sum()
        }
    };
    let ind = atiyah_segal_index(space, &tau.scaled(-1))?;
    let lim = laurent_limit(&RationalFn::from_laurent(ind), at)?;
    let predicted = BigInt::from(predicted);
    if lim != BigRational::from_integer(predicted.clone()) {
        return Err(Error::LimitMismatch {
            analytic: lim.to_string(),
            predicted: predicted.to_string(),
        });
    }
    Ok(LimitOutcome {
        analytic: lim.to_integer(),
        predicted,
    })
}

/// Check that the index of `-h eta` vanishes identically for `h = 1..k-1`.
pub fn verify_vanishing_range(space: &S1Space, eta: &BundleRestriction, k: u64) -> Result<Report> {
    let cs: Vec<i64> = space
        .points()
        .iter()
        .zip(eta.exponents())
        .map(|(p, e)| p.weight_sum() - k as i64 * e)
        .collect();
    if cs.iter().any(|c| *c != cs[0]) {
        return Err(Error::EtaInconsistent(k));
    }
    let mut r = Report::new(format!("vanishing of ind(-h eta) for h = 1..{}", k.saturating_sub(1)));
    for h in 1..k {
        let ind = atiyah_segal_index(space, &eta.scaled(-(h as i64)))?;
        if !ind.is_zero() {
            return Err(Error::VanishingViolated {
                h,
                index: ind.to_string(),
            });
        }
        r.check(format!("ind(-{h} eta) = 0"), true, "");
    }
    Ok(r)
}

/// `c_1 c_{n-1}[M]` predicted from the `N_j` alone.
pub fn c1_cn1_from_betti(big_n: &[u64]) -> BigRational {
    let n = (big_n.len() - 1) as i64;
    let base = BigRational::new((5 * n - 3 * n * n).into(), 2.into());
    big_n
        .iter()
        .enumerate()
        .map(|(j, &nj)| {
            let j = j as i64;
            (BigRational::from_integer((6 * j * (j - 1)).into()) + &base) * BigRational::from_integer(nj.into())
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qr, rfn_sum_normalize, rfn_to_laurent};

    fn cp2() -> S1Space {
        S1Space::from_weights("CP2", 2, vec![vec![1, 2], vec![-1, 1], vec![-2, -1]]).unwrap()
    }

    fn s2() -> S1Space {
        S1Space::from_weights("S2", 1, vec![vec![1], vec![-1]]).unwrap()
    }

    fn cp3(a: i64, b: i64, c: i64) -> S1Space {
        S1Space::from_weights(
            "CP3",
            3,
            vec![
                vec![a, a + b, a + b + c],
                vec![-a, b, b + c],
                vec![-a - b, -b, c],
                vec![-a - b - c, -b - c, -c],
            ],
        )
        .unwrap()
    }

    fn part(p: &[usize], n: usize) -> ChernPartition {
        ChernPartition::new(p.to_vec(), n).unwrap()
    }

    #[test]
    fn cp2_chern_numbers() {
        let s = cp2();
        assert_eq!(chern_number(&s, &part(&[1, 1], 2)).unwrap(), BigInt::from(9));
        assert_eq!(chern_number(&s, &part(&[2], 2)).unwrap(), BigInt::from(3));
        assert_eq!(mixed_chern_todd(&s, 2).unwrap(), q(9));
        assert_eq!(mixed_chern_todd(&s, 0).unwrap(), q(1));
    }

    #[test]
    fn cp3_mixed() {
        let s = cp3(1, 1, 1);
        assert_eq!(mixed_chern_todd(&s, 1).unwrap(), qr(22, 3));
    }

    #[test]
    fn non_integral_detected() {
        // c1^2 on two arbitrary points: 9/2 - 4/3 = 19/6
        let s = S1Space::from_weights("x", 2, vec![vec![1, 2], vec![1, -3]]).unwrap();
        assert!(matches!(chern_number(&s, &part(&[1, 1], 2)), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn s2_indices() {
        let s = s2();
        let ind = atiyah_segal_index(&s, &BundleRestriction::trivial(&s)).unwrap();
        assert_eq!(ind, LaurentPoly::one());
        let b = BundleRestriction::from_vec(&s, vec![0, -2]).unwrap();
        let ind = atiyah_segal_index(&s, &b).unwrap();
        assert_eq!(ind.to_string(), "t^-2 + t^-1 + 1");
        assert_eq!(index_at_one(&s, &b).unwrap(), BigInt::from(3));
    }

    #[test]
    fn cp3_minus_tau_vanishes() {
        for (a, b, c) in [(1, 2, 3), (1, 1, 1), (2, 3, 5), (3, 4, 5), (1, 5, 7)] {
            let s = cp3(a, b, c);
            let minus_tau = BundleRestriction::from_vec(&s, vec![0, a, a + b, a + b + c]).unwrap();
            assert!(atiyah_segal_index(&s, &minus_tau).unwrap().is_zero());
            let parts = atiyah_segal_summands(&s, &minus_tau);
            assert!(rfn_to_laurent(&rfn_sum_normalize(&parts)).unwrap().is_zero());
        }
    }

    #[test]
    fn series_route_matches_rational_route() {
        let s = cp2();
        for a in [vec![0, 0, 0], vec![1, 0, -1], vec![3, -2, 5], vec![-4, 4, 0]] {
            let b = BundleRestriction::from_vec(&s, a).unwrap();
            let fast = atiyah_segal_index(&s, &b);
            let slow = rfn_to_laurent(&rfn_sum_normalize(&atiyah_segal_summands(&s, &b)));
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn inconsistent_data_not_laurent() {
        let s = S1Space::from_weights("bad", 2, vec![vec![1, 2], vec![1, 2]]).unwrap();
        let r = atiyah_segal_index(&s, &BundleRestriction::trivial(&s));
        assert_eq!(r, Err(Error::NotLaurent));
    }

    #[test]
    fn domination_and_limits() {
        let s = s2();
        let zero = BundleRestriction::trivial(&s);
        assert!(is_dominated(&s, &zero, Side::Plus) && is_dominated(&s, &zero, Side::Minus));
        let out = limit_index(&s, &zero, LimitPoint::Zero).unwrap();
        assert_eq!(out.predicted, BigInt::from(1));
        let c = cp2();
        let tau = BundleRestriction::c1(&c);
        assert!(is_dominated(&c, &tau, Side::Plus) && is_dominated(&c, &tau, Side::Minus));
        let out = limit_index(&c, &tau, LimitPoint::Infinity).unwrap();
        assert_eq!(out.analytic, out.predicted);
        assert_eq!(out.predicted, BigInt::from(1));
        let over = BundleRestriction::from_vec(&c, vec![4, 0, -3]).unwrap();
        assert!(!is_dominated(&c, &over, Side::Plus));
        assert!(matches!(limit_index(&c, &over, LimitPoint::Zero), Err(Error::NotDominated(_))));
    }

    #[test]
    fn vanishing_range_cp2() {
        let s = cp2();
        let eta = BundleRestriction::from_vec(&s, vec![1, 0, -1]).unwrap();
        let r = verify_vanishing_range(&s, &eta, 3).unwrap();
        assert_eq!(r.checks.len(), 2);
        let zero = BundleRestriction::trivial(&s);
        assert_eq!(verify_vanishing_range(&s, &zero, 1), Err(Error::EtaInconsistent(1)));
        assert_eq!(verify_vanishing_range(&s, &eta, 2), Err(Error::EtaInconsistent(2)));
    }

    #[test]
    fn betti_formula_cp2() {
        assert_eq!(c1_cn1_from_betti(&[1, 1, 1]), q(9));
    }

    #[test]
    fn partition_display() {
        assert_eq!(part(&[1, 2, 1], 4).to_string(), "c1^2c2");
        assert!(ChernPartition::new(vec![1, 1], 3).is_err());
    }

}
