//! Smooth lattice polytopes: facet descriptions, unimodular vertex cones,
//! the circle subgroups of the torus, lattice point counts and reflexive
//! dilates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::hilbert::hilbert_via_index;
use crate::report::Report;
use crate::space::{FixedPoint, S1Space};

/// `normal . x + offset >= 0`, with a primitive inward normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, x: &[i64]) -> i64 {
        dot(&self.normal, x) + self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// A vector orthogonal to the `d-1` rows of `rows` (generalized cross product).
fn cofactor_normal(rows: &[Vec<i64>], d: usize) -> Vec<i64> {
    (0..d)
        .map(|i| {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| *v).collect())
                .collect();
            let s = if i % 2 == 0 { 1 } else { -1 };
            (s * det(&minor)) as i64
        })
        .collect()
}

fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != BigRational::from_integer(0.into())) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..a.len() {
            if i != r {
                let f = &a[i][c] / &pivot;
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Facets of the convex hull of full-dimensional integer points.
fn hull_facets(points: &[Vec<i64>], d: usize) -> Result<Vec<Facet>> {
    let mut found: BTreeSet<Facet> = BTreeSet::new();
    for s in subsets(points.len(), d) {
        let base = &points[s[0]];
        let rows: Vec<Vec<i64>> = s[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let mut a = primitive(&cofactor_normal(&rows, d));
        if a.iter().all(|x| *x == 0) {
            continue;
        }
        let mut b = -dot(&a, base);
        let vals: Vec<i64> = points.iter().map(|p| dot(&a, p) + b).collect();
        let pos = vals.iter().any(|v| *v > 0);
        let neg = vals.iter().any(|v| *v < 0);
        if pos && neg {
            continue;
        }
        if neg {
            a.iter_mut().for_each(|x| *x = -*x);
            b = -b;
        }
        found.insert(Facet { normal: a, offset: b });
    }
    if found.len() < d + 1 {
        return Err(Error::InvalidPolytope("points are not full-dimensional".into()));
    }
    Ok(found.into_iter().collect())
}

impl LatticePolytope {
    /// Convex hull of the given points, which must all be vertices.
    pub fn from_vertices(vertices: Vec<Vec<i64>>) -> Result<Self> {
        let Some(d) = vertices.first().map(|v| v.len()) else {
            return Err(Error::InvalidPolytope("no vertices".into()));
        };
        if d == 0 {
            return Err(Error::InvalidPolytope("dimension 0".into()));
        }
        if vertices.iter().any(|v| v.len() != d) {
            return Err(Error::InvalidPolytope("vertices of mixed dimension".into()));
        }
        let uniq: BTreeSet<&Vec<i64>> = vertices.iter().collect();
        if uniq.len() != vertices.len() {
            return Err(Error::InvalidPolytope("repeated vertex".into()));
        }
        let facets = hull_facets(&vertices, d)?;
        for v in &vertices {
            let tight: Vec<Vec<i64>> =
                facets.iter().filter(|f| f.value(v) == 0).map(|f| f.normal.clone()).collect();
            if rank(&tight) < d {
                return Err(Error::InvalidPolytope(format!("{v:?} is not a vertex of the hull")));
            }
        }
        Ok(LatticePolytope { dim: d, vertices, facets })
    }

    /// Vertex and facet descriptions together; they must describe the same polytope.
    pub fn new(vertices: Vec<Vec<i64>>, facets: Vec<Facet>) -> Result<Self> {
        let p = Self::from_vertices(vertices)?;
        let given: BTreeSet<Facet> = facets
            .into_iter()
            .map(|f| {
                let g = gcd_all(&f.normal);
                if g == 0 {
                    return Err(Error::InvalidPolytope("zero facet normal".into()));
                }
                if f.offset % g != 0 {
                    return Err(Error::InvalidPolytope(format!(
                        "facet {:?}, {} has no lattice points after normalization",
                        f.normal, f.offset
                    )));
                }
                Ok(Facet {
                    normal: f.normal.iter().map(|x| x / g).collect(),
                    offset: f.offset / g,
                })
            })
            .collect::<Result<_>>()?;
        let computed: BTreeSet<Facet> = p.facets.iter().cloned().collect();
        if given != computed {
            return Err(Error::InvalidPolytope(
                "facet description does not match the convex hull of the vertices".into(),
            ));
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// `x` lies in `k` times the polytope.
    pub fn contains_dilate(&self, x: &[i64], k: i64) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, x) + k * f.offset >= 0)
    }

    /// The standard simplex `conv(0, e_1, ..., e_d)`.
    pub fn simplex(d: usize) -> Result<Self> {
        let mut vs = vec![vec![0; d]];
        for i in 0..d {
            let mut v = vec![0; d];
            v[i] = 1;
            vs.push(v);
        }
        Self::from_vertices(vs)
    }

    /// `[0, l_1] x ... x [0, l_d]`
    pub fn lattice_box(lengths: &[i64]) -> Result<Self> {
        if lengths.iter().any(|l| *l <= 0) {
            return Err(Error::InvalidPolytope("box side lengths must be positive".into()));
        }
        let d = lengths.len();
        let vs = (0..1usize << d)
            .map(|mask| (0..d).map(|i| if mask >> i & 1 == 1 { lengths[i] } else { 0 }).collect())
            .collect();
        Self::from_vertices(vs)
    }

    pub fn cube(d: usize) -> Result<Self> {
        Self::lattice_box(&vec![1; d])
    }

    pub fn product(&self, other: &LatticePolytope) -> LatticePolytope {
        let mut vertices = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                let mut v = a.clone();
                v.extend(b);
                vertices.push(v);
            }
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            let mut a = f.normal.clone();
            a.extend(std::iter::repeat(0).take(other.dim));
            facets.push(Facet { normal: a, offset: f.offset });
        }
        for f in &other.facets {
            let mut a = vec![0; self.dim];
            a.extend(&f.normal);
            facets.push(Facet { normal: a, offset: f.offset });
        }
        facets.sort();
        LatticePolytope {
            dim: self.dim + other.dim,
            vertices,
            facets,
        }
    }

    pub fn dilate(&self, k: i64) -> Result<LatticePolytope> {
        if k <= 0 {
            return Err(Error::InvalidParams("dilation factor must be positive".into()));
        }
        Ok(LatticePolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset * k,
                })
                .collect(),
        })
    }

    pub fn translate(&self, t: &[i64]) -> Result<LatticePolytope> {
        if t.len() != self.dim {
            return Err(Error::InvalidParams("translation has the wrong length".into()));
        }
        Ok(LatticePolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset - dot(&f.normal, t),
                })
                .collect(),
        })
    }

    /// Image under the integer matrix `m` (rows), which must be unimodular.
    pub fn transform(&self, m: &[Vec<i64>]) -> Result<LatticePolytope> {
        if m.len() != self.dim || m.iter().any(|r| r.len() != self.dim) {
            return Err(Error::InvalidParams("matrix has the wrong shape".into()));
        }
        if det(m).abs() != 1 {
            return Err(Error::InvalidParams("matrix is not unimodular".into()));
        }
        let vs = self.vertices.iter().map(|v| m.iter().map(|r| dot(r, v)).collect()).collect();
        LatticePolytope::from_vertices(vs)
    }

    /// Per coordinate `[min, max]` of `k` times the polytope.
    fn bounding_box(&self, k: i64) -> Vec<(i64, i64)> {
        (0..self.dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| v[i]).min().unwrap();
                let hi = self.vertices.iter().map(|v| v[i]).max().unwrap();
                (lo * k, hi * k)
            })
            .collect()
    }
}

/// Count of lattice points `x` of `k P` with `a.x + k b >= slack` for every facet.
fn count_points(p: &LatticePolytope, k: i64, slack: i64) -> BigInt {
    let d = p.dim;
    let bbox = p.bounding_box(k);
    // a facet is tested as soon as its last nonzero coordinate is fixed
    let mut by_last: Vec<Vec<&Facet>> = vec![Vec::new(); d];
    for f in &p.facets {
        let last = f.normal.iter().rposition(|a| *a != 0).unwrap_or(0);
        by_last[last].push(f);
    }
    fn rec(
        level: usize,
        x: &mut Vec<i64>,
        bbox: &[(i64, i64)],
        by_last: &[Vec<&Facet>],
        k: i64,
        slack: i64,
    ) -> u64 {
        let d = bbox.len();
        let mut total = 0;
        for v in bbox[level].0..=bbox[level].1 {
            x[level] = v;
            let ok = by_last[level]
                .iter()
                .all(|f| dot(&f.normal[..=level], &x[..=level]) + k * f.offset >= slack);
            if !ok {
                continue;
            }
            total += if level + 1 == d { 1 } else { rec(level + 1, x, bbox, by_last, k, slack) };
        }
        total
    }
    let (lo, hi) = bbox[0];
    let counts: Vec<u64> = (lo..=hi)
        .into_par_iter()
        .map(|v| {
            let mut x = vec![0; d];
            x[0] = v;
            let ok = by_last[0].iter().all(|f| f.normal[0] * v + k * f.offset >= slack);
            if !ok {
                return 0;
            }
            if d == 1 {
                1
            } else {
                rec(1, &mut x, &bbox, &by_last, k, slack)
            }
        })
        .collect();
    counts.into_iter().map(BigInt::from).sum()
}

/// `|kP ∩ Z^d|`
pub fn lattice_count(p: &LatticePolytope, k: u64) -> BigInt {
    count_points(p, k as i64, 0)
}

/// Lattice points in the interior of `kP`.
pub fn interior_count(p: &LatticePolytope, k: u64) -> BigInt {
    count_points(p, k as i64, 1)
}

fn interior_points(p: &LatticePolytope, k: i64) -> Vec<Vec<i64>> {
    let bbox = p.bounding_box(k);
    let d = p.dim;
    let mut out = Vec::new();
    let mut x: Vec<i64> = bbox.iter().map(|b| b.0).collect();
    loop {
        if p.facets.iter().all(|f| dot(&f.normal, &x) + k * f.offset >= 1) {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            if x[i] < bbox[i].1 {
                x[i] += 1;
                break;
            }
            x[i] = bbox[i].0;
            i += 1;
        }
    }
}

/// Interpolate the counts at `k = 0..d` and confirm them at `k = d+1..2d`.
pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<Poly> {
    let d = p.dim as u64;
    let counts: Vec<(i64, BigRational)> = (0..=2 * d)
        .into_par_iter()
        .map(|k| (k as i64, BigRational::from_integer(lattice_count(p, k))))
        .collect();
    let poly = Poly::interpolate(&counts[..=d as usize])?;
    for (k, c) in &counts[d as usize + 1..] {
        if poly.eval_int(*k) != *c {
            return Err(Error::CountNotPolynomial(*k as u64));
        }
    }
    Ok(poly)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflexiveDilate {
    pub k: u64,
    /// `kP + translation` is reflexive.
    pub translation: Vec<i64>,
    /// `i(z) = (-1)^d i(-1-z)` for the Ehrhart polynomial of the dilate.
    pub hibi_reciprocity: bool,
}

/// The smallest `k <= d+1` with `kP` reflexive after an integer translation.
pub fn reflexive_dilate(p: &LatticePolytope) -> Result<Option<ReflexiveDilate>> {
    let d = p.dim;
    for k in 1..=(d as i64 + 1) {
        let inner = interior_points(p, k);
        if inner.len() != 1 {
            continue;
        }
        let x0 = &inner[0];
        if !p.facets.iter().all(|f| dot(&f.normal, x0) + k * f.offset == 1) {
            continue;
        }
        let t: Vec<i64> = x0.iter().map(|x| -x).collect();
        let dil = p.dilate(k)?.translate(&t)?;
        let e = ehrhart_polynomial(&dil)?;
        let mirrored = e.compose_affine(&-BigRational::from_integer(1.into()), &-BigRational::from_integer(1.into()));
        let sign = if d % 2 == 0 { 1 } else { -1 };
        let hibi = mirrored.scale(&BigRational::from_integer(sign.into())) == e;
        return Ok(Some(ReflexiveDilate {
            k: k as u64,
            translation: t,
            hibi_reciprocity: hibi,
        }));
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelzantData {
    pub polytope: LatticePolytope,
    /// For each vertex, the `d` primitive edge directions leaving it.
    pub vertex_edges: Vec<Vec<Vec<i64>>>,
}

/// Primitive edge directions at every vertex, and unimodularity of each cone.
pub fn delzant_validate(p: &LatticePolytope) -> Result<DelzantData> {
    let d = p.dim;
    let mut vertex_edges = Vec::with_capacity(p.vertices.len());
    for (i, v) in p.vertices.iter().enumerate() {
        let tight: Vec<&Facet> = p.facets.iter().filter(|f| f.value(v) == 0).collect();
        if tight.len() != d {
            return Err(Error::NonSmoothVertex {
                vertex: i,
                coords: v.clone(),
                detail: format!("{} facets meet here, expected {d}", tight.len()),
            });
        }
        let mut edges = Vec::with_capacity(d);
        for skip in 0..d {
            let rows: Vec<Vec<i64>> = tight
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .map(|(_, f)| f.normal.clone())
                .collect();
            let mut e = primitive(&cofactor_normal(&rows, d));
            if dot(&tight[skip].normal, &e) < 0 {
                e.iter_mut().for_each(|x| *x = -*x);
            }
            edges.push(e);
        }
        let dv = det(&edges);
        if dv.abs() != 1 {
            return Err(Error::NonSmoothVertex {
                vertex: i,
                coords: v.clone(),
                detail: format!("edge determinant {dv}"),
            });
        }
        vertex_edges.push(edges);
    }
    Ok(DelzantData {
        polytope: p.clone(),
        vertex_edges,
    })
}

/// Largest `k` with all differences of the equivariant first Chern class
/// (the sum of the edge vectors at each vertex) divisible by `k`.
pub fn torus_index(d: &DelzantData) -> u64 {
    let sums: Vec<Vec<i64>> = d
        .vertex_edges
        .iter()
        .map(|es| (0..d.polytope.dim).map(|i| es.iter().map(|e| e[i]).sum()).collect())
        .collect();
    let mut g = 0i64;
    for s in &sums[1..] {
        for (a, b) in s.iter().zip(&sums[0]) {
            g = g.gcd(&(a - b));
        }
    }
    g.unsigned_abs()
}

/// Fixed points and weights of the circle `xi` in the torus.
pub fn circle_restrict(d: &DelzantData, xi: &[i64], name: &str) -> Result<S1Space> {
    let dim = d.polytope.dim;
    if xi.len() != dim {
        return Err(Error::InvalidParams(format!("xi has {} entries, expected {dim}", xi.len())));
    }
    let mut points = Vec::with_capacity(d.vertex_edges.len());
    for (i, edges) in d.vertex_edges.iter().enumerate() {
        let mut ws = Vec::with_capacity(dim);
        for e in edges {
            let w = dot(e, xi);
            if w == 0 {
                return Err(Error::NonGenericXi {
                    vertex: i,
                    edge: e.clone(),
                });
            }
            ws.push(w);
        }
        points.push(FixedPoint::new(format!("v{i}"), ws));
    }
    S1Space::new(name, dim, points)
}

/// The toric space of `p` under the circle `xi`, its index from the
/// reflexive dilate, and the comparison of its Hilbert and Ehrhart polynomials.
pub fn ehrhart_vs_hilbert(d: &DelzantData, xi: &[i64]) -> Result<Report> {
    let p = &d.polytope;
    let mut r = Report::new("Ehrhart vs Hilbert");
    let Some(refl) = reflexive_dilate(p)? else {
        r.check("reflexive dilate exists", false, "no k <= d+1 makes kP reflexive");
        return Ok(r);
    };
    r.check(
        "reflexive dilate exists",
        true,
        format!("k = {}, translation {:?}", refl.k, refl.translation),
    );
    r.check("Hibi reciprocity on the dilate", refl.hibi_reciprocity, "");
    let space = circle_restrict(d, xi, "toric")?;
    let h = hilbert_via_index(&space, refl.k)?;
    let e = ehrhart_polynomial(p)?;
    r.check(
        "Hilbert polynomial equals Ehrhart polynomial",
        h.coeffs == e,
        format!("H = {}, Ehrhart = {}", h.render_factored(), e.render_factored("z")),
    );
    Ok(r)
}
