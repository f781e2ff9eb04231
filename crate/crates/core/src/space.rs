//! Fixed-point data of a circle action and its derived combinatorics.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::partitions;
use crate::error::{Error, Result};
use crate::localization::{self, BundleRestriction, ChernPartition};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub id: String,
    pub weights: Vec<i64>,
}

impl FixedPoint {
    pub fn new(id: impl Into<String>, weights: Vec<i64>) -> Self {
        FixedPoint {
            id: id.into(),
            weights,
        }
    }

    pub fn n_negative(&self) -> usize {
        self.weights.iter().filter(|w| **w < 0).count()
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().sum()
    }

    /// Product of the weights, the equivariant Euler class coefficient.
    pub fn euler(&self) -> BigInt {
        self.weights.iter().map(|&w| BigInt::from(w)).product()
    }
}

/// A circle action with isolated fixed points, given by its weights.
///
/// Construction checks the structural rules (nonempty, `n` nonzero weights
/// per point, distinct ids). Whether the data is consistent with a genuine
/// action is the job of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S1Space {
    name: String,
    n: usize,
    points: Vec<FixedPoint>,
    index_k0: Option<u64>,
    eta: Option<BTreeMap<String, i64>>,
}

impl S1Space {
    pub fn new(name: impl Into<String>, n: usize, points: Vec<FixedPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if n == 0 {
            return Err(Error::InvalidParams("dimension n must be positive".into()));
        }
        let mut ids = HashSet::new();
        for p in &points {
            if !ids.insert(p.id.as_str()) {
                return Err(Error::DuplicateId(p.id.clone()));
            }
            if p.weights.len() != n {
                return Err(Error::WeightCount {
                    point: p.id.clone(),
                    expected: n,
                    got: p.weights.len(),
                });
            }
            if p.weights.contains(&0) {
                return Err(Error::ZeroWeight { point: p.id.clone() });
            }
        }
        Ok(S1Space {
            name: name.into(),
            n,
            points,
            index_k0: None,
            eta: None,
        })
    }

    /// Points given as bare weight lists, labelled `p0, p1, ...`.
    pub fn from_weights(name: impl Into<String>, n: usize, weights: Vec<Vec<i64>>) -> Result<Self> {
        let pts = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| FixedPoint::new(format!("p{i}"), w))
            .collect();
        Self::new(name, n, pts)
    }

    pub fn with_index(mut self, k0: Option<u64>) -> Self {
        self.index_k0 = k0;
        self
    }

    /// Attach an eta restriction; every id must exist and every point must be covered.
    pub fn with_eta(mut self, eta: Option<BTreeMap<String, i64>>) -> Result<Self> {
        if let Some(m) = &eta {
            BundleRestriction::from_map(&self, m)?;
        }
        self.eta = eta;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn index_k0(&self) -> Option<u64> {
        self.index_k0
    }

    pub fn eta(&self) -> Option<&BTreeMap<String, i64>> {
        self.eta.as_ref()
    }

    pub fn eta_restriction(&self) -> Option<BundleRestriction> {
        self.eta
            .as_ref()
            .map(|m| BundleRestriction::from_map(self, m).expect("checked on attach"))
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    /// `N_j`, the number of fixed points with exactly `j` negative weights.
    pub fn big_n(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.n + 1];
        for p in &self.points {
            v[p.n_negative()] += 1;
        }
        v
    }

    pub fn n0(&self) -> u64 {
        self.big_n()[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    /// Number of negative weights per point, in point order.
    pub n_negative: Vec<usize>,
    pub big_n: Vec<u64>,
    pub c1_restriction: Vec<i64>,
    pub c1_plus: Vec<i64>,
    pub c1_minus: Vec<i64>,
}

pub fn weight_profile(space: &S1Space) -> WeightProfile {
    let pts = space.points();
    WeightProfile {
        n_negative: pts.iter().map(FixedPoint::n_negative).collect(),
        big_n: space.big_n(),
        c1_restriction: pts.iter().map(FixedPoint::weight_sum).collect(),
        c1_plus: pts
            .iter()
            .map(|p| p.weights.iter().filter(|w| **w > 0).sum())
            .collect(),
        c1_minus: pts
            .iter()
            .map(|p| -p.weights.iter().filter(|w| **w < 0).sum::<i64>())
            .collect(),
    }
}

/// Cartesian product; the index is taken from `k0`, eta is not carried over.
pub fn product_space(s1: &S1Space, s2: &S1Space, k0: Option<u64>) -> S1Space {
    let mut pts = Vec::with_capacity(s1.points.len() * s2.points.len());
    for a in &s1.points {
        for b in &s2.points {
            let mut w = a.weights.clone();
            w.extend_from_slice(&b.weights);
            pts.push(FixedPoint::new(format!("{}.{}", a.id, b.id), w));
        }
    }
    S1Space::new(format!("{}x{}", s1.name, s2.name), s1.n + s2.n, pts)
        .expect("product of valid spaces is valid")
        .with_index(k0)
}

/// Result of [`validate`].
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub report: Report,
    pub big_n: Vec<u64>,
    pub consistent: bool,
}

impl ValidationReport {
    pub fn verdict(&self) -> &'static str {
        if self.consistent {
            "consistent"
        } else {
            "not realizable as an S1-space"
        }
    }
}

/// Largest `n` for which every Chern number is checked for integrality.
const FULL_CHERN_SUITE_MAX_N: usize = 8;

/// Run the consistency checks.
///
/// Passing means the data is consistent with every identity tested here; it
/// does not mean an actual manifold with this action exists.
pub fn validate(space: &S1Space) -> ValidationReport {
    let n = space.n();
    let big_n = space.big_n();
    let mut r = Report::new(format!("validate {}", space.name()));

    let sym_bad: Vec<String> = (0..=n)
        .filter(|&j| big_n[j] != big_n[n - j])
        .map(|j| format!("N{j}={} vs N{}={}", big_n[j], n - j, big_n[n - j]))
        .collect();
    r.check(
        "N_j symmetry N_j = N_{n-j}",
        sym_bad.is_empty(),
        format!("N = {:?}{}", big_n, if sym_bad.is_empty() { String::new() } else { format!("; {}", sym_bad.join(", ")) }),
    );

    let abbv: BigRational = space
        .points()
        .iter()
        .map(|p| BigRational::new(1.into(), p.euler()))
        .fold(BigRational::zero(), |a, b| a + b);
    r.check(
        "localization of 1 vanishes",
        abbv.is_zero(),
        format!("sum 1/prod w = {abbv}"),
    );

    let trivial = BundleRestriction::trivial(space);
    match localization::atiyah_segal_index(space, &trivial) {
        Ok(ind) => {
            let expect = BigRational::from_integer(big_n[0].into());
            let ok = ind.terms().len() <= 1 && ind.coeff(0) == expect;
            r.check("index of trivial bundle is N0", ok, format!("index = {ind}, N0 = {}", big_n[0]));
        }
        Err(e) => {
            r.check("index of trivial bundle is N0", false, e.to_string());
        }
    }

    match localization::mixed_chern_todd(space, 0) {
        Ok(td) => {
            let ok = td == BigRational::from_integer(big_n[0].into());
            r.check("Todd genus integral and equal to N0", ok, format!("T_n[M] = {td}"));
        }
        Err(e) => {
            r.check("Todd genus integral and equal to N0", false, e.to_string());
        }
    }

    if n <= FULL_CHERN_SUITE_MAX_N {
        let mut bad = Vec::new();
        for parts in partitions(n) {
            let part = ChernPartition::new(parts.clone(), n).expect("partition of n");
            let v = localization::localize(space, &part);
            if !v.is_integer() {
                bad.push(format!("{} = {v}", part));
            }
        }
        r.check(
            "all Chern numbers integral",
            bad.is_empty(),
            if bad.is_empty() { String::new() } else { bad.join(", ") },
        );
    } else {
        r.note(format!("Chern integrality suite skipped for n = {n}"));
    }

    let prof = weight_profile(space);
    if prof.c1_restriction.iter().all(|c| *c == prof.c1_restriction[0]) {
        r.check(
            "constant c1 restriction forces N0 = N_n = 0",
            big_n[0] == 0 && big_n[n] == 0,
            format!("c1(p) = {} at every point", prof.c1_restriction[0]),
        );
    }

    if let Some(k0) = space.index_k0() {
        if k0 > 0 {
            let res: Vec<i64> = prof
                .c1_restriction
                .iter()
                .map(|c| c.rem_euclid(k0 as i64))
                .collect();
            let ok = res.iter().all(|x| *x == res[0]);
            r.check(
                "declared index divides c1 differences",
                ok,
                format!("c1 mod {k0} = {res:?}"),
            );
        }
    }

    if let Some(eta) = space.eta_restriction() {
        if let Some(k0) = space.index_k0() {
            let cs: Vec<i64> = space
                .points()
                .iter()
                .zip(eta.exponents())
                .map(|(p, e)| p.weight_sum() - k0 as i64 * e)
                .collect();
            r.check(
                "declared eta satisfies c1 = k0 eta + c",
                cs.iter().all(|c| *c == cs[0]),
                format!("c1 - k0 eta = {cs:?}"),
            );
        }
    }

    let consistent = r.passed();
    ValidationReport {
        report: r,
        big_n,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> S1Space {
        S1Space::from_weights("S2", 1, vec![vec![1], vec![-1]]).unwrap()
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            S1Space::from_weights("x", 1, vec![vec![0], vec![1]]),
            Err(Error::ZeroWeight { point: "p0".into() })
        );
        assert_eq!(S1Space::from_weights("x", 1, vec![]), Err(Error::EmptyPointSet));
        assert!(matches!(
            S1Space::from_weights("x", 2, vec![vec![1]]),
            Err(Error::WeightCount { .. })
        ));
    }

    #[test]
    fn s2_validates() {
        let v = validate(&s2());
        assert!(v.consistent, "{}", v.report);
        assert_eq!(v.big_n, vec![1, 1]);
        assert_eq!(v.verdict(), "consistent");
    }

    #[test]
    fn nin_violation() {
        let s = S1Space::from_weights("bad", 2, vec![vec![1, 2], vec![1, 2]]).unwrap();
        let v = validate(&s);
        assert!(!v.consistent);
        assert!(!v.report.find("symmetry").unwrap().passed);
        let abbv = v.report.find("localization of 1").unwrap();
        assert!(!abbv.passed);
        assert!(abbv.detail.ends_with("= 1"));
        assert_eq!(v.verdict(), "not realizable as an S1-space");
    }

    #[test]
    fn cp2_profile() {
        let s = S1Space::from_weights("CP2", 2, vec![vec![1, 2], vec![-1, 1], vec![-2, -1]]).unwrap();
        let p = weight_profile(&s);
        assert_eq!(p.n_negative, vec![0, 1, 2]);
        assert_eq!(p.big_n, vec![1, 1, 1]);
        assert_eq!(p.c1_restriction, vec![3, 0, -3]);
        let sp = weight_profile(&s2());
        assert_eq!(sp.c1_plus, vec![1, 0]);
        assert_eq!(sp.c1_minus, vec![0, 1]);
    }

    #[test]
    fn products() {
        let s = s2();
        let ss = product_space(&s, &s, Some(2));
        assert_eq!(ss.points().len(), 4);
        let w: Vec<_> = ss.points().iter().map(|p| p.weights.clone()).collect();
        assert_eq!(w, vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]);
        assert_eq!(ss.big_n(), vec![1, 2, 1]);
        assert_eq!(ss.index_k0(), Some(2));
        let sss = product_space(&ss, &s, Some(2));
        assert_eq!(sss.big_n(), vec![1, 3, 3, 1]);
    }
}
