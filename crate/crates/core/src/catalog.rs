//! Builtin example spaces and Hilbert polynomial fixtures, with the values
//! each one is expected to reproduce.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{binomial, factorial, q, qr, Poly};
use crate::error::{Error, Result};
use crate::hilbert::{
    check_rigidity, generating_function, hilbert_both, root_analysis, HilbertPoly, Source,
};
use crate::localization::{
    atiyah_segal_index, c1_cn1_from_betti, chern_number, mixed_chern_todd, verify_vanishing_range,
    BundleRestriction, ChernPartition,
};
use crate::report::Report;
use crate::space::{product_space, validate, FixedPoint, S1Space};
use crate::toric::{circle_restrict, delzant_validate, torus_index, LatticePolytope};

/// Values an entry must reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Declared {
    pub k0: u64,
    pub big_n: Vec<u64>,
    /// Chern numbers keyed by partition, e.g. `[1, 1, 1]` for `c1^3`.
    #[serde(serialize_with = "chern_as_strings")]
    pub chern: Vec<(Vec<usize>, BigInt)>,
    pub hilbert: Poly,
    pub u: Option<Poly>,
    /// The index of `-eta` for the stored `eta` vanishes identically.
    pub minus_eta_vanishes: bool,
    /// Computed from the toric structure when there is one.
    pub toric_index: Option<u64>,
}

fn chern_as_strings<S: serde::Serializer>(v: &[(Vec<usize>, BigInt)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(p, c)| (p, c.to_string())))
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceEntry {
    pub key: String,
    pub space: S1Space,
    pub declared: Declared,
}

/// A Hilbert polynomial without weight data behind it.
#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub key: String,
    pub hilbert: HilbertPoly,
    #[serde(serialize_with = "crate::algebra::as_string::display")]
    pub c1n: BigRational,
    #[serde(serialize_with = "crate::algebra::as_string::option")]
    pub b: Option<BigRational>,
    /// Roots in the family `prod (z+j)` times a factor on `Re z = -k0/2`.
    pub in_t_family: bool,
}

#[derive(Clone, Debug, Serialize)]
pub enum CatalogItem {
    Space(SpaceEntry),
    Fixture(Fixture),
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryInfo {
    pub key: &'static str,
    pub params: &'static str,
    pub kind: &'static str,
    pub about: &'static str,
}

const ENTRIES: &[EntryInfo] = &[
    EntryInfo { key: "S2", params: "", kind: "space", about: "rotation of the 2-sphere" },
    EntryInfo { key: "CPn", params: "n [xi_1 .. xi_n]", kind: "space", about: "linear action on CP^n, xi_0 = 0" },
    EntryInfo { key: "CP3", params: "a b c", kind: "space", about: "CP^3 with weights a, a+b, a+b+c; pairwise coprime" },
    EntryInfo { key: "Hirzebruch", params: "k l m", kind: "space", about: "Hirzebruch surface H_k, circle (l, m) in the torus" },
    EntryInfo { key: "Flag3", params: "[x0 x1 x2]", kind: "space", about: "complete flags in C^3" },
    EntryInfo { key: "ProductOfSpheres", params: "r", kind: "space", about: "(S^2)^r with diagonal rotation" },
    EntryInfo { key: "CP1xCP1", params: "", kind: "space", about: "product of two spheres" },
    EntryInfo { key: "CP1xCP2", params: "", kind: "space", about: "S^2 times CP^2" },
    EntryInfo { key: "V5", params: "", kind: "fixture", about: "Fano threefold of index 2 and degree 5" },
    EntryInfo { key: "V22", params: "", kind: "fixture", about: "Fano threefold of index 1 and genus 12" },
    EntryInfo { key: "nK", params: "", kind: "fixture", about: "index 2 threefold with the Betti numbers of the flag manifold and c1^3 = 64" },
    EntryInfo { key: "dim4-k1-beta6", params: "", kind: "fixture", about: "n = 2, k0 = 1, N1/N0 = 6" },
];

pub fn list() -> &'static [EntryInfo] {
    ENTRIES
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn expect_len(key: &str, params: &[i64], allowed: &[usize]) -> Result<()> {
    if allowed.contains(&params.len()) {
        Ok(())
    } else {
        Err(bad(format!("{key} takes {allowed:?} parameters, got {}", params.len())))
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `prod_{j} (z + j) / n!`
fn cp_hilbert(n: usize) -> Poly {
    Poly::from_shifts((1..=n as i64).map(q)).scale(&BigRational::from_integer(factorial(n as u64)).recip())
}

fn cpn_space(n: usize, xi: &[i64]) -> Result<S1Space> {
    let pts = (0..=n)
        .map(|i| {
            let ws = (0..=n).filter(|&j| j != i).map(|j| xi[j] - xi[i]).collect();
            FixedPoint::new(format!("p{i}"), ws)
        })
        .collect();
    S1Space::new(format!("CP{n}"), n, pts)
}

fn sphere() -> S1Space {
    S1Space::from_weights("S2", 1, vec![vec![1], vec![-1]])
        .expect("valid")
        .with_index(Some(2))
}

fn spheres(r: usize) -> Result<S1Space> {
    if r == 0 {
        return Err(bad("r must be positive"));
    }
    let mut s = sphere();
    for _ in 1..r {
        s = product_space(&s, &sphere(), Some(2));
    }
    Ok(s)
}

fn fixture(key: &str, n: usize, k0: u64, coeffs: Poly, b: Option<BigRational>, in_t_family: bool) -> CatalogItem {
    let h = HilbertPoly::new(coeffs, n, k0, 1, Source::Fixture);
    let c1n = h.c1n();
    CatalogItem::Fixture(Fixture {
        key: key.to_string(),
        hilbert: h,
        c1n,
        b,
        in_t_family,
    })
}

/// Build an entry. Keys are matched case-insensitively.
pub fn catalog_emit(key: &str, params: &[i64]) -> Result<CatalogItem> {
    let info = ENTRIES
        .iter()
        .find(|e| e.key.eq_ignore_ascii_case(key))
        .ok_or_else(|| Error::UnknownEntry(key.to_string()))?;
    let key = info.key;
    let entry = |space: S1Space, declared: Declared| {
        Ok(CatalogItem::Space(SpaceEntry {
            key: key.to_string(),
            space,
            declared,
        }))
    };
    match key {
        "S2" => {
            expect_len(key, params, &[0])?;
            entry(
                sphere(),
                Declared {
                    k0: 2,
                    big_n: vec![1, 1],
                    chern: vec![(vec![1], big(2))],
                    hilbert: Poly::from_ints(&[1, 1]),
                    u: Some(Poly::one()),
                    minus_eta_vanishes: false,
                    toric_index: None,
                },
            )
        }
        "CPn" => {
            let n = params.first().copied().unwrap_or(2);
            if n < 1 {
                return Err(bad("n must be positive"));
            }
            let n = n as usize;
            expect_len(key, params, &[0, 1, n + 1])?;
            let xi: Vec<i64> = if params.len() <= 1 {
                (0..=n as i64).collect()
            } else {
                std::iter::once(0).chain(params[1..].iter().copied()).collect()
            };
            let mut sorted = xi.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != xi.len() {
                return Err(bad(format!("xi entries must be distinct (with xi_0 = 0): {xi:?}")));
            }
            let space = cpn_space(n, &xi)?.with_index(Some(n as u64 + 1));
            let ni = n as i64;
            let mut chern = vec![
                (vec![1; n], big(ni + 1).pow(n as u32)),
                (vec![n], big(ni + 1)),
            ];
            if n >= 2 {
                let mut p = vec![1; n - 2];
                p.insert(0, 2);
                chern.push((p, big(ni) * big(ni + 1).pow(n as u32 - 1) / 2));
            }
            entry(
                space,
                Declared {
                    k0: n as u64 + 1,
                    big_n: vec![1; n + 1],
                    chern,
                    hilbert: cp_hilbert(n),
                    u: Some(Poly::one()),
                    minus_eta_vanishes: false,
                    toric_index: None,
                },
            )
        }
        "CP3" => {
            expect_len(key, params, &[0, 3])?;
            let (a, b, c) = if params.is_empty() { (1, 2, 3) } else { (params[0], params[1], params[2]) };
            if a <= 0 || b <= 0 || c <= 0 {
                return Err(bad("a, b, c must be positive"));
            }
            if a.gcd(&b) != 1 || a.gcd(&c) != 1 || b.gcd(&c) != 1 {
                return Err(bad(format!("a, b, c must be pairwise coprime: {a}, {b}, {c}")));
            }
            let pts = vec![
                FixedPoint::new("p0", vec![a, a + b, a + b + c]),
                FixedPoint::new("p1", vec![-a, b, b + c]),
                FixedPoint::new("p2", vec![-b, -a - b, c]),
                FixedPoint::new("p3", vec![-c, -b - c, -a - b - c]),
            ];
            let tau: BTreeMap<String, i64> = [("p0", 0), ("p1", -a), ("p2", -a - b), ("p3", -a - b - c)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            let space = S1Space::new(format!("CP3({a},{b},{c})"), 3, pts)?
                .with_index(Some(4))
                .with_eta(Some(tau))?;
            entry(
                space,
                Declared {
                    k0: 4,
                    big_n: vec![1; 4],
                    chern: vec![(vec![1, 1, 1], big(64)), (vec![2, 1], big(24)), (vec![3], big(4))],
                    hilbert: cp_hilbert(3),
                    u: Some(Poly::one()),
                    minus_eta_vanishes: true,
                    toric_index: None,
                },
            )
        }
        "Hirzebruch" => {
            expect_len(key, params, &[0, 3])?;
            let (k, l, m) = if params.is_empty() { (2, 1, 3) } else { (params[0], params[1], params[2]) };
            if k < 0 {
                return Err(bad("k must be non-negative"));
            }
            if l.gcd(&m) != 1 {
                return Err(bad(format!("l and m must be coprime: {l}, {m}")));
            }
            let p = LatticePolytope::from_vertices(vec![vec![0, 0], vec![k + 1, 0], vec![1, 1], vec![0, 1]])?;
            let d = delzant_validate(&p)?;
            let k0 = if k % 2 == 0 { 2 } else { 1 };
            let space = circle_restrict(&d, &[l, m], &format!("H{k}"))?.with_index(Some(k0));
            let (hilbert, u) = if k0 == 2 {
                (Poly::from_ints(&[1, 2, 1]), Poly::from_ints(&[1, 1]))
            } else {
                (Poly::from_ints(&[1, 4, 4]), Poly::from_ints(&[1, 6, 1]))
            };
            entry(
                space,
                Declared {
                    k0,
                    big_n: vec![1, 2, 1],
                    chern: vec![(vec![1, 1], big(8)), (vec![2], big(4))],
                    hilbert,
                    u: Some(u),
                    minus_eta_vanishes: false,
                    toric_index: Some(torus_index(&d)),
                },
            )
        }
        "Flag3" => {
            expect_len(key, params, &[0, 3])?;
            let xi = if params.is_empty() { vec![0, 1, 3] } else { params.to_vec() };
            if xi[0] == xi[1] || xi[1] == xi[2] || xi[0] == xi[2] {
                return Err(bad("xi entries must be distinct"));
            }
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let pts = perms
                .iter()
                .map(|s| {
                    let mut ws = Vec::with_capacity(3);
                    for i in 0..3 {
                        for j in i + 1..3 {
                            ws.push(xi[s[j]] - xi[s[i]]);
                        }
                    }
                    FixedPoint::new(format!("p{}{}{}", s[0], s[1], s[2]), ws)
                })
                .collect();
            let space = S1Space::new("Flag3", 3, pts)?.with_index(Some(2));
            entry(
                space,
                Declared {
                    k0: 2,
                    big_n: vec![1, 2, 2, 1],
                    chern: vec![(vec![1, 1, 1], big(48)), (vec![2, 1], big(24)), (vec![3], big(6))],
                    hilbert: Poly::from_ints(&[1, 3, 3, 1]),
                    u: Some(Poly::from_ints(&[1, 4, 1])),
                    minus_eta_vanishes: false,
                    toric_index: None,
                },
            )
        }
        "ProductOfSpheres" | "CP1xCP1" => {
            let r = if key == "CP1xCP1" {
                expect_len(key, params, &[0])?;
                2
            } else {
                expect_len(key, params, &[0, 1])?;
                params.first().copied().unwrap_or(3)
            };
            if !(1..=12).contains(&r) {
                return Err(bad("r must be in 1..=12"));
            }
            let r = r as usize;
            let mut space = spheres(r)?;
            if key == "CP1xCP1" {
                space = rename(space, "CP1xCP1")?;
            }
            let big_n = (0..=r).map(|j| binomial(r as i64, j as i64).try_into().unwrap()).collect();
            let rf = factorial(r as u64);
            let u = if r == 1 { Poly::one() } else { generating_function(&HilbertPoly::new(Poly::from_shifts(vec![q(1); r]), r, 2, 1, Source::Fixture)).u };
            entry(
                space,
                Declared {
                    k0: 2,
                    big_n,
                    chern: vec![(vec![1; r], rf * big(2).pow(r as u32)), (vec![r], big(2).pow(r as u32))],
                    hilbert: Poly::from_shifts(vec![q(1); r]),
                    u: Some(u),
                    minus_eta_vanishes: false,
                    toric_index: None,
                },
            )
        }
        "CP1xCP2" => {
            expect_len(key, params, &[0])?;
            let cp2 = cpn_space(2, &[0, 1, 2])?;
            let space = rename(product_space(&sphere(), &cp2, Some(1)), "CP1xCP2")?;
            let h = &Poly::from_ints(&[2, 9, 9]) * &Poly::from_ints(&[1, 2]);
            entry(
                space,
                Declared {
                    k0: 1,
                    big_n: vec![1, 2, 2, 1],
                    chern: vec![(vec![1, 1, 1], big(54)), (vec![3], big(6))],
                    hilbert: h.scale(&qr(1, 2)),
                    u: None,
                    minus_eta_vanishes: false,
                    toric_index: None,
                },
            )
        }
        "V5" => {
            expect_len(key, params, &[0])?;
            let h = (&Poly::from_ints(&[6, 10, 5]) * &Poly::from_ints(&[1, 1])).scale(&qr(1, 6));
            Ok(fixture(key, 3, 2, h, Some(q(3)), true))
        }
        "V22" => {
            expect_len(key, params, &[0])?;
            let h = (&Poly::from_ints(&[6, 11, 11]) * &Poly::from_ints(&[1, 2])).scale(&qr(1, 6));
            Ok(fixture(key, 3, 1, h, Some(q(10)), true))
        }
        "nK" => {
            expect_len(key, params, &[0])?;
            let h = (&Poly::from_ints(&[3, 8, 4]) * &Poly::from_ints(&[1, 1])).scale(&qr(1, 3));
            // free roots -1 +- 1/2 are real
            Ok(fixture(key, 3, 2, h, Some(q(6)), false))
        }
        "dim4-k1-beta6" => {
            expect_len(key, params, &[0])?;
            Ok(fixture(key, 2, 1, Poly::from_ints(&[1, 2, 2]), Some(q(2)), true))
        }
        _ => unreachable!("key listed without a recipe"),
    }
}

fn rename(s: S1Space, name: &str) -> Result<S1Space> {
    let k0 = s.index_k0();
    S1Space::new(name, s.n(), s.points().to_vec()).map(|t| t.with_index(k0))
}

/// Run every applicable check on a space entry.
pub fn space_selftest(e: &SpaceEntry) -> Report {
    let s = &e.space;
    let d = &e.declared;
    let n = s.n();
    let mut r = Report::new(e.key.clone());
    let v = validate(s);
    r.check("validate", v.consistent, v.verdict());
    r.check("N_j as declared", s.big_n() == d.big_n, format!("{:?} vs {:?}", s.big_n(), d.big_n));
    for (parts, want) in &d.chern {
        let label = match ChernPartition::new(parts.clone(), n) {
            Ok(p) => p,
            Err(e) => {
                r.check(format!("partition {parts:?}"), false, e.to_string());
                continue;
            }
        };
        match chern_number(s, &label) {
            Ok(got) => r.check(format!("{label} = {want}"), &got == want, format!("got {got}")),
            Err(err) => r.check(format!("{label} = {want}"), false, err.to_string()),
        };
    }
    if n >= 2 {
        let mut p = vec![1];
        p.insert(0, n - 1);
        let part = ChernPartition::new(p, n).expect("valid partition");
        let predicted = c1_cn1_from_betti(&s.big_n());
        match chern_number(s, &part) {
            Ok(got) => r.check(
                "c1 c_{n-1} from the N_j",
                BigRational::from_integer(got.clone()) == predicted,
                format!("{got} vs {predicted}"),
            ),
            Err(err) => r.check("c1 c_{n-1} from the N_j", false, err.to_string()),
        };
    }
    match mixed_chern_todd(s, 0) {
        Ok(t) => r.check(
            "Todd genus = N0",
            t == BigRational::from_integer(s.n0().into()),
            format!("Todd genus {t}"),
        ),
        Err(err) => r.check("Todd genus = N0", false, err.to_string()),
    };
    if let Some(ti) = d.toric_index {
        r.check("index from the polytope", ti == d.k0, format!("{ti} vs {}", d.k0));
    }
    match hilbert_both(s, d.k0) {
        Ok(h) => {
            r.check(
                "Hilbert polynomial as declared",
                h.coeffs == d.hilbert,
                format!("{} vs {}", h.render_factored(), d.hilbert.render_factored("z")),
            );
            r.extend(check_rigidity(&h));
            let g = generating_function(&h);
            if let Some(u) = &d.u {
                r.check("U as declared", &g.u == u, format!("{} vs {}", g.u.render_ascending("t"), u.render_ascending("t")));
            }
            r.extend(g.checks);
        }
        Err(err) => {
            r.check("Hilbert polynomial by index and by Chern numbers", false, err.to_string());
        }
    }
    if d.minus_eta_vanishes {
        match s.eta_restriction() {
            Some(eta) => match atiyah_segal_index(s, &eta.scaled(-1)) {
                Ok(ind) => r.check("index of -eta vanishes", ind.is_zero(), format!("{ind}")),
                Err(err) => r.check("index of -eta vanishes", false, err.to_string()),
            },
            None => r.check("index of -eta vanishes", false, "no eta stored"),
        };
    }
    if e.key == "CPn" && n <= 5 {
        match crate::hilbert::solve_eta(s, d.k0) {
            Ok((_, eta)) => match verify_vanishing_range(s, &eta, d.k0) {
                Ok(rep) => r.extend(rep),
                Err(err) => {
                    r.check("vanishing of ind(-h eta)", false, err.to_string());
                }
            },
            Err(err) => {
                r.check("vanishing of ind(-h eta)", false, err.to_string());
            }
        }
    }
    r
}

pub fn fixture_selftest(f: &Fixture) -> Report {
    let mut r = Report::new(f.key.clone());
    let h = &f.hilbert;
    r.extend(check_rigidity(h));
    let g = generating_function(h);
    if let Some(b) = &f.b {
        let got = g.b_parameter();
        r.check(
            format!("b = {b} from U"),
            got.as_ref() == Some(b),
            format!("U = {}", g.u.render_ascending("t")),
        );
    }
    r.extend(g.checks);
    match root_analysis(h) {
        Ok(rr) => {
            r.check("roots in the T family", rr.in_t_family == f.in_t_family, format!("{}", rr.in_t_family));
            let mut c = rr.checks;
            c.title = "roots".into();
            r.extend(c);
        }
        Err(err) => {
            r.check("root analysis", false, err.to_string());
        }
    }
    r
}

/// Every entry at its default parameters, plus CP^n for n = 1..5 and the
/// flag manifold against the nK fixture.
pub fn catalog_selftest() -> Report {
    let mut r = Report::new("catalog selftest");
    let mut runs: Vec<(&str, Vec<i64>)> = ENTRIES.iter().map(|e| (e.key, vec![])).collect();
    for n in 1..=5 {
        runs.push(("CPn", vec![n]));
    }
    runs.push(("CP3", vec![1, 1, 1]));
    runs.push(("CP3", vec![2, 3, 5]));
    runs.push(("Hirzebruch", vec![1, 1, 3]));
    runs.push(("Hirzebruch", vec![0, 1, 2]));
    runs.push(("Hirzebruch", vec![3, 2, 1]));
    for (key, params) in runs {
        let label = if params.is_empty() {
            key.to_string()
        } else {
            format!("{key} {params:?}")
        };
        match catalog_emit(key, &params) {
            Ok(CatalogItem::Space(e)) => {
                let mut sub = space_selftest(&e);
                sub.title = label;
                r.extend(sub);
            }
            Ok(CatalogItem::Fixture(f)) => {
                let mut sub = fixture_selftest(&f);
                sub.title = label;
                r.extend(sub);
            }
            Err(err) => {
                r.check(label, false, err.to_string());
            }
        }
    }
    if let (Ok(CatalogItem::Space(flag)), Ok(CatalogItem::Fixture(nk))) = (catalog_emit("Flag3", &[]), catalog_emit("nK", &[])) {
        let same = flag.declared.k0 == nk.hilbert.k0
            && flag.space.n0() == nk.hilbert.n0
            && flag.space.n() == nk.hilbert.n;
        r.check("Flag3 and nK share k0 and N0", same, "");
        let c = chern_number(&flag.space, &ChernPartition::new(vec![1, 1, 1], 3).expect("valid"));
        let differ = c.map(|c| BigRational::from_integer(c) != nk.c1n).unwrap_or(false);
        r.check("Flag3 and nK differ in c1^3", differ, format!("48 vs {}", nk.c1n));
    }
    r
}

/// `c1 = k0 eta + const` restricted to the fixed points, for exporting.
pub fn eta_for(space: &S1Space, k0: u64) -> Result<BundleRestriction> {
    crate::hilbert::solve_eta(space, k0).map(|(_, e)| e)
}
