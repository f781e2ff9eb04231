//! TOML documents for spaces, bundles, polytopes and Hilbert polynomials.
//!
//! Emitting always uses the field order declared here, so that emitting a
//! parsed document reproduces it byte for byte.

use std::collections::BTreeMap;

use eqloc_core::algebra::{BigRational, Poly};
use eqloc_core::hilbert::{HilbertPoly, Source};
use eqloc_core::localization::BundleRestriction;
use eqloc_core::space::{FixedPoint, S1Space};
use eqloc_core::toric::{Facet, LatticePolytope};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Invalid(#[from] eqloc_core::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub id: String,
    pub weights: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub name: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<BTreeMap<String, i64>>,
    pub fixed_points: Vec<PointEntry>,
}

impl SpaceFile {
    pub fn from_space(s: &S1Space) -> Self {
        SpaceFile {
            name: s.name().to_string(),
            n: s.n(),
            index: s.index_k0(),
            eta: s.eta().cloned(),
            fixed_points: s
                .points()
                .iter()
                .map(|p| PointEntry {
                    id: p.id.clone(),
                    weights: p.weights.clone(),
                })
                .collect(),
        }
    }

    pub fn to_space(&self) -> eqloc_core::Result<S1Space> {
        let pts = self
            .fixed_points
            .iter()
            .map(|p| FixedPoint::new(p.id.clone(), p.weights.clone()))
            .collect();
        S1Space::new(self.name.clone(), self.n, pts)?
            .with_index(self.index)
            .with_eta(self.eta.clone())
    }
}

/// `[restriction]` maps fixed point ids to the exponent of the bundle there.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub restriction: BTreeMap<String, i64>,
}

impl BundleFile {
    pub fn to_bundle(&self, s: &S1Space) -> eqloc_core::Result<BundleRestriction> {
        BundleRestriction::from_map(s, &self.restriction)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetEntry {
    pub normal: Vec<i64>,
    pub offset: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<FacetEntry>>,
}

impl PolytopeFile {
    pub fn to_polytope(&self) -> eqloc_core::Result<LatticePolytope> {
        if self.vertices.iter().any(|v| v.len() != self.dim) {
            return Err(eqloc_core::Error::InvalidPolytope(format!(
                "every vertex must have {} coordinates",
                self.dim
            )));
        }
        match &self.facets {
            None => LatticePolytope::from_vertices(self.vertices.clone()),
            Some(fs) => LatticePolytope::new(
                self.vertices.clone(),
                fs.iter()
                    .map(|f| Facet {
                        normal: f.normal.clone(),
                        offset: f.offset,
                    })
                    .collect(),
            ),
        }
    }

    pub fn from_polytope(p: &LatticePolytope) -> Self {
        PolytopeFile {
            dim: p.dim(),
            vertices: p.vertices().to_vec(),
            facets: Some(
                p.facets()
                    .iter()
                    .map(|f| FacetEntry {
                        normal: f.normal.clone(),
                        offset: f.offset,
                    })
                    .collect(),
            ),
        }
    }
}

/// A Hilbert polynomial entered directly; coefficients ascending, as fractions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertFile {
    pub name: String,
    pub n: usize,
    pub k0: u64,
    pub n0: u64,
    pub coefficients: Vec<String>,
}

impl HilbertFile {
    pub fn from_hilbert(name: &str, h: &HilbertPoly) -> Self {
        HilbertFile {
            name: name.to_string(),
            n: h.n,
            k0: h.k0,
            n0: h.n0,
            coefficients: h.coeffs.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_hilbert(&self) -> eqloc_core::Result<HilbertPoly> {
        let cs = self
            .coefficients
            .iter()
            .map(|c| {
                c.trim()
                    .parse::<BigRational>()
                    .map_err(|e| eqloc_core::Error::InvalidParams(format!("coefficient {c:?}: {e}")))
            })
            .collect::<eqloc_core::Result<Vec<_>>>()?;
        Ok(HilbertPoly::new(Poly::new(cs), self.n, self.k0, self.n0, Source::Fixture))
    }
}

pub fn read<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_string(),
        source,
    })?;
    parse(&text, path)
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, FileError> {
    toml::from_str(text).map_err(|e| FileError::Parse {
        path: path.to_string(),
        message: e.message().to_string(),
    })
}

pub fn emit<T: Serialize>(doc: &T) -> String {
    toml::to_string(doc).expect("documents are always representable in TOML")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trip() {
        let text = "name = \"S2\"\nn = 1\nindex = 2\n\n[[fixed_points]]\nid = \"N\"\nweights = [1]\n\n[[fixed_points]]\nid = \"S\"\nweights = [-1]\n";
        let f: SpaceFile = parse(text, "x").unwrap();
        let s = f.to_space().unwrap();
        assert_eq!(emit(&SpaceFile::from_space(&s)), text);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = "name = \"S2\"\nn = 1\ncolor = 3\n[[fixed_points]]\nid = \"N\"\nweights = [1]\n";
        assert!(parse::<SpaceFile>(text, "x").is_err());
    }

    #[test]
    fn hilbert_file() {
        let f = HilbertFile {
            name: "h".into(),
            n: 2,
            k0: 3,
            n0: 1,
            coefficients: vec!["1".into(), "3/2".into(), "1/2".into()],
        };
        let h = f.to_hilbert().unwrap();
        assert_eq!(h.eval_int(1), BigRational::from_integer(3.into()));
        assert_eq!(HilbertFile::from_hilbert("h", &h), f);
    }
}
