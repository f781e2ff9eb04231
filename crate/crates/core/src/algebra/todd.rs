//! Todd polynomials in abstract Chern classes.
//!
//! The total Todd class is `prod x_i / (1 - e^{-x_i})` over Chern roots. We
//! take its logarithm, which is a sum of power sums `beta_k p_k`, rewrite the
//! power sums in elementary symmetric functions (the Chern classes) with
//! Newton's identities, and exponentiate, truncating at weight `n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::combinatorics::factorial;
use super::poly::q;

/// A polynomial in `c_1, c_2, ...`, keyed by decreasing partitions
/// (`[2, 1, 1]` is `c_2 c_1^2`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChernPoly {
    terms: BTreeMap<Vec<usize>, BigRational>,
}

impl ChernPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Vec::new(), BigRational::one())
    }

    pub fn term(mut parts: Vec<usize>, c: BigRational) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut p = Self::zero();
        p.add_term(parts, c);
        p
    }

    fn add_term(&mut self, parts: Vec<usize>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(parts.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&parts);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, parts: &[usize]) -> BigRational {
        self.terms.get(parts).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, o: &ChernPoly) -> ChernPoly {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(k.clone(), v.clone());
        }
        r
    }

    fn scale(&self, c: &BigRational) -> ChernPoly {
        let mut r = ChernPoly::zero();
        for (k, v) in &self.terms {
            r.add_term(k.clone(), v * c);
        }
        r
    }

    /// Product, dropping monomials of weight above `max_weight`.
    pub fn mul_truncated(&self, o: &ChernPoly, max_weight: usize) -> ChernPoly {
        let mut r = ChernPoly::zero();
        for (k1, v1) in &self.terms {
            let w1: usize = k1.iter().sum();
            for (k2, v2) in &o.terms {
                let w2: usize = k2.iter().sum();
                if w1 + w2 > max_weight {
                    continue;
                }
                let mut k: Vec<usize> = k1.iter().chain(k2.iter()).copied().collect();
                k.sort_unstable_by(|a, b| b.cmp(a));
                r.add_term(k, v1 * v2);
            }
        }
        r
    }

    /// The part of weight exactly `w`.
    pub fn homogeneous(&self, w: usize) -> ChernPoly {
        ChernPoly {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.iter().sum::<usize>() == w)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for ChernPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                f.write_str(if v.is_negative() { " - " } else { " + " })?;
            } else if v.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = v.abs();
            let mut mono = String::new();
            let mut i = 0;
            while i < k.len() {
                let mut j = i;
                while j < k.len() && k[j] == k[i] {
                    j += 1;
                }
                mono.push_str(&format!("c{}", k[i]));
                if j - i > 1 {
                    mono.push_str(&format!("^{}", j - i));
                }
                i = j;
            }
            match (a.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => f.write_str(&mono)?,
                (false, false) => write!(f, "({a}){mono}")?,
            }
        }
        Ok(())
    }
}

/// Power series coefficients of `log(x / (1 - e^{-x}))` up to `x^n`.
fn log_todd_series(n: usize) -> Vec<BigRational> {
    // (1 - e^{-x})/x = sum (-1)^k x^k / (k+1)!
    let f: Vec<BigRational> = (0..=n)
        .map(|k| {
            let s = if k % 2 == 0 { 1 } else { -1 };
            BigRational::new(s.into(), factorial(k as u64 + 1))
        })
        .collect();
    // g = 1/f
    let mut g = vec![BigRational::zero(); n + 1];
    g[0] = BigRational::one();
    for k in 1..=n {
        let mut s = BigRational::zero();
        for j in 1..=k {
            s += &f[j] * &g[k - j];
        }
        g[k] = -s;
    }
    // (log g)' = g'/g, so L_k = (1/k) [x^{k-1}] g' f
    let dg: Vec<BigRational> = (0..n).map(|k| &g[k + 1] * q(k as i64 + 1)).collect();
    let mut l = vec![BigRational::zero(); n + 1];
    for k in 1..=n {
        let mut s = BigRational::zero();
        for j in 0..k {
            s += &dg[j] * &f[k - 1 - j];
        }
        l[k] = s / q(k as i64);
    }
    l
}

fn compute(n: usize) -> Vec<ChernPoly> {
    let beta = log_todd_series(n);
    // power sums p_1..p_n in Chern classes
    let mut p: Vec<ChernPoly> = vec![ChernPoly::zero(); n + 1];
    for k in 1..=n {
        let mut acc = ChernPoly::term(vec![k], q(k as i64 * if k % 2 == 1 { 1 } else { -1 }));
        for i in 1..k {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let t = ChernPoly::term(vec![i], q(sign)).mul_truncated(&p[k - i], n);
            acc = acc.add(&t);
        }
        p[k] = acc;
    }
    let mut s = ChernPoly::zero();
    for k in 1..=n {
        s = s.add(&p[k].scale(&beta[k]));
    }
    // exp(s), s has no constant term
    let mut total = ChernPoly::one();
    let mut pow = ChernPoly::one();
    for m in 1..=n {
        pow = pow.mul_truncated(&s, n).scale(&BigRational::new(1.into(), (m as i64).into()));
        total = total.add(&pow);
    }
    (0..=n).map(|j| total.homogeneous(j)).collect()
}

type Cache = RwLock<HashMap<usize, Arc<Vec<ChernPoly>>>>;

/// `T_0, ..., T_n`; cached per `n`.
pub fn todd_polynomials(n: usize) -> Arc<Vec<ChernPoly>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("todd cache").get(&n) {
        return v.clone();
    }
    let v = Arc::new(compute(n));
    cache
        .write()
        .expect("todd cache")
        .entry(n)
        .or_insert(v)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::qr;

    #[test]
    fn low_degree_todd() {
        let t = todd_polynomials(4);
        assert_eq!(t[0], ChernPoly::one());
        assert_eq!(t[1], ChernPoly::term(vec![1], qr(1, 2)));
        let t2 = ChernPoly::term(vec![1, 1], qr(1, 12)).add(&ChernPoly::term(vec![2], qr(1, 12)));
        assert_eq!(t[2], t2);
        assert_eq!(t[3], ChernPoly::term(vec![2, 1], qr(1, 24)));
        let t4 = [
            (vec![1, 1, 1, 1], -1),
            (vec![2, 1, 1], 4),
            (vec![2, 2], 3),
            (vec![3, 1], 1),
            (vec![4], -1),
        ]
        .into_iter()
        .fold(ChernPoly::zero(), |acc, (k, c)| acc.add(&ChernPoly::term(k, qr(c, 720))));
        assert_eq!(t[4], t4);
    }

    #[test]
    fn cached_prefix_agrees() {
        let a = todd_polynomials(6);
        let b = todd_polynomials(3);
        for j in 0..=3 {
            assert_eq!(a[j], b[j]);
        }
    }

    #[test]
    fn render() {
        assert_eq!(todd_polynomials(3)[3].to_string(), "(1/24)c2c1");
    }
}
