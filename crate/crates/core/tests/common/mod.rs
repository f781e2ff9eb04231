#![allow(dead_code)]

use eqloc_core::space::S1Space;
use eqloc_core::toric::{circle_restrict, delzant_validate, torus_index, DelzantData, LatticePolytope};
use rand::Rng;

/// A product of dilated simplices and boxes of total dimension 1..=3.
pub fn random_polytope<R: Rng>(rng: &mut R) -> LatticePolytope {
    let dim = rng.gen_range(1..=3usize);
    let mut left = dim;
    let mut acc: Option<LatticePolytope> = None;
    while left > 0 {
        let d = rng.gen_range(1..=left);
        left -= d;
        let factor = if rng.gen_bool(0.5) {
            LatticePolytope::simplex(d).unwrap().dilate(rng.gen_range(1..=3)).unwrap()
        } else {
            let ls: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=3)).collect();
            LatticePolytope::lattice_box(&ls).unwrap()
        };
        acc = Some(match acc {
            None => factor,
            Some(p) => p.product(&factor),
        });
    }
    acc.unwrap()
}

pub struct ToricSample {
    pub polytope: LatticePolytope,
    pub delzant: DelzantData,
    pub xi: Vec<i64>,
    pub space: S1Space,
    pub k0: u64,
}

/// A random smooth toric space with a generic circle, entries of `xi` in `-20..=20`.
pub fn random_toric<R: Rng>(rng: &mut R) -> ToricSample {
    let polytope = random_polytope(rng);
    let delzant = delzant_validate(&polytope).unwrap();
    let k0 = torus_index(&delzant);
    loop {
        let xi: Vec<i64> = (0..polytope.dim()).map(|_| rng.gen_range(-20..=20)).collect();
        if let Ok(space) = circle_restrict(&delzant, &xi, "toric") {
            return ToricSample {
                polytope,
                delzant,
                xi,
                space: space.with_index(Some(k0)),
                k0,
            };
        }
    }
}
