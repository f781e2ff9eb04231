//! Linear relations between Chern numbers and the `N_j` in dimensions 4, 6, 8.

use num_rational::BigRational;

use crate::algebra::{partitions, q, qr};
use crate::localization::{chern_number, ChernPartition};
use crate::report::Report;
use crate::space::S1Space;

/// Every Chern number by localization, compared with the formulas that hold
/// for `n = 2, 3, 4`, plus the ones that depend on `k0` when it is given.
pub fn lowdim_report(space: &S1Space, k0: Option<u64>) -> Report {
    let n = space.n();
    let mut r = Report::new(format!("low-dimensional identities, n = {n}"));
    if !(2..=4).contains(&n) {
        r.note(format!("no tabulated identities for n = {n}"));
        return r;
    }
    let big = space.big_n();
    let nj = |j: usize| q(big[j] as i64);
    let (n0, n1) = (nj(0), nj(1));
    let n2 = if n >= 2 { nj(2) } else { q(0) };

    let mut numbers: Vec<(String, BigRational)> = Vec::new();
    for p in partitions(n) {
        let part = match ChernPartition::new(p, n) {
            Ok(p) => p,
            Err(e) => {
                r.check("Chern partition", false, e.to_string());
                return r;
            }
        };
        match chern_number(space, &part) {
            Ok(v) => numbers.push((part.to_string(), BigRational::from_integer(v))),
            Err(e) => {
                r.check(format!("Chern number {part}"), false, e.to_string());
                return r;
            }
        }
    }
    for (name, v) in &numbers {
        r.note(format!("{name} = {v}"));
    }
    let get = |name: &str| -> BigRational {
        numbers
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| q(0))
    };
    let eq = |r: &mut Report, label: &str, lhs: BigRational, rhs: BigRational| {
        r.check(label, lhs == rhs, format!("{lhs} vs {rhs}"));
    };
    let nstr = format!("N = {big:?}");
    r.note(nstr);

    match n {
        2 => {
            let (c2, c11) = (get("c2"), get("c1^2"));
            eq(&mut r, "c2 = 2N0 + N1", c2.clone(), q(2) * &n0 + &n1);
            eq(&mut r, "c1^2 = 10N0 - N1", c11.clone(), q(10) * &n0 - &n1);
            eq(&mut r, "c1^2 + c2 = 12N0", &c11 + &c2, q(12) * &n0);
            match k0 {
                Some(3) => {
                    r.check("N0 = N1 = N2", n0 == n1 && n1 == n2, "");
                    eq(&mut r, "c1^2 = 9N0", c11, q(9) * &n0);
                }
                Some(2) => {
                    r.check("2N0 = N1 = 2N2", q(2) * &n0 == n1 && n1 == q(2) * &n2, "");
                    eq(&mut r, "c1^2 = 8N0", c11, q(8) * &n0);
                }
                Some(k) if k > 3 => {
                    r.check("k0 in {1, 2, 3}", false, format!("k0 = {k}"));
                }
                _ => {}
            }
        }
        3 => {
            let (c3, c1c2, c111) = (get("c3"), get("c1c2"), get("c1^3"));
            eq(&mut r, "c3 = 2(N0 + N1)", c3, q(2) * (&n0 + &n1));
            eq(&mut r, "c1c2 = 24N0", c1c2, q(24) * &n0);
            match k0 {
                Some(4) => eq(&mut r, "c1^3 = 64N0", c111, q(64) * &n0),
                Some(3) => eq(&mut r, "c1^3 = 54N0", c111, q(54) * &n0),
                _ => {}
            }
        }
        4 => {
            let c4 = get("c4");
            let c1c3 = get("c1c3");
            let c22 = get("c2^2");
            let c112 = get("c1^2c2");
            let c1111 = get("c1^4");
            eq(&mut r, "c4 = 2N0 + 2N1 + N2", c4, q(2) * &n0 + q(2) * &n1 + &n2);
            eq(&mut r, "c1c3 = 44N0 + 8N1 - 2N2", c1c3, q(44) * &n0 + q(8) * &n1 - q(2) * &n2);
            let base = -q(2) * &n1 + &n2;
            match k0 {
                Some(5) => {
                    eq(&mut r, "c1^4 = 625N0", c1111, q(625) * &n0);
                    eq(&mut r, "c1^2c2 = 250N0", c112, q(250) * &n0);
                    eq(&mut r, "c2^2 = 101N0 - 2N1 + N2", c22, q(101) * &n0 + base);
                }
                Some(4) => {
                    eq(&mut r, "c1^4 = 512N0", c1111, q(512) * &n0);
                    eq(&mut r, "c1^2c2 = 224N0", c112, q(224) * &n0);
                    eq(&mut r, "c2^2 = 98N0 - 2N1 + N2", c22, q(98) * &n0 + base);
                }
                Some(3) => {
                    eq(&mut r, "c1^2c2 = 108N0 + (2/9)c1^4", c112, q(108) * &n0 + qr(2, 9) * &c1111);
                    eq(
                        &mut r,
                        "c2^2 = 82N0 - 2N1 + N2 + (1/27)c1^4",
                        c22,
                        q(82) * &n0 + base + qr(1, 27) * &c1111,
                    );
                }
                Some(2) => {
                    eq(&mut r, "c1^2c2 = 96N0 + (1/4)c1^4", c112, q(96) * &n0 + qr(1, 4) * &c1111);
                    eq(&mut r, "c2^2 = 98N0 - 2N1 + N2", c22, q(98) * &n0 + base);
                }
                _ => {}
            }
        }
        _ => unreachable!(),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::product_space;

    #[test]
    fn cp2_rows() {
        let s = S1Space::from_weights("CP2", 2, vec![vec![1, 2], vec![-1, 1], vec![-2, -1]]).unwrap();
        let r = lowdim_report(&s, Some(3));
        assert!(r.passed(), "{r}");
        assert!(r.find("N0 = N1 = N2").is_some());
    }

    #[test]
    fn s2_to_the_fourth() {
        let s = S1Space::from_weights("S2", 1, vec![vec![1], vec![-1]]).unwrap();
        let s2 = product_space(&s, &s, None);
        let s4 = product_space(&s2, &s2, Some(2));
        let r = lowdim_report(&s4, Some(2));
        assert!(r.passed(), "{r}");
    }
}
