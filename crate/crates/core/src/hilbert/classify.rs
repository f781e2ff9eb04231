//! Hamiltonian versus non-Hamiltonian from the index and two Chern numbers.
//!
//! The input is read as data of a symplectic circle action with isolated
//! fixed points, so `N0` is `0` or `1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{q, qr, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Hamiltonian,
    NonHamiltonian,
    /// The data contradict a necessary condition.
    Inconsistent,
    /// No criterion applies.
    Indeterminate,
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            VerdictKind::Hamiltonian => "Hamiltonian",
            VerdictKind::NonHamiltonian => "NonHamiltonian",
            VerdictKind::Inconsistent => "Inconsistent",
            VerdictKind::Indeterminate => "Indeterminate",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassifyInput {
    pub n: usize,
    pub k0: u64,
    pub c1n: Option<BigRational>,
    pub c1n2c2: Option<BigRational>,
    /// Coefficients of `H`; supplies the Chern numbers when they are absent.
    pub hilbert: Option<Poly>,
    pub n0: Option<u64>,
}

fn big_pow(b: i64, e: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(b).pow(e as u32))
}

fn factorial_q(n: usize) -> BigRational {
    BigRational::from_integer((1..=n as u64).map(BigInt::from).product())
}

impl ClassifyInput {
    /// `c1^h T_{n-h} = a_h k0^h h!`
    fn mixed_from_h(&self, h: usize) -> Option<BigRational> {
        let p = self.hilbert.as_ref()?;
        Some(p.coeff(h) * big_pow(self.k0 as i64, h) * factorial_q(h))
    }

    fn chern_pair(&self) -> (Option<BigRational>, Option<BigRational>) {
        let n = self.n;
        let c1n = self.c1n.clone().or_else(|| self.mixed_from_h(n));
        let c1n2c2 = if n >= 2 {
            self.c1n2c2.clone().or_else(|| {
                let t = self.mixed_from_h(n - 2)?;
                let c = self.mixed_from_h(n)?;
                // T_2 = (c1^2 + c2)/12
                Some(q(12) * t - c)
            })
        } else {
            None
        };
        (c1n, c1n2c2)
    }
}

fn fmt_opt(x: &Option<BigRational>) -> String {
    x.as_ref().map_or("?".into(), |v| v.to_string())
}

/// Verdict from the index `k0` and `(c1^n, c1^{n-2}c2)`.
pub fn classify_action(input: &ClassifyInput) -> Verdict {
    let n = input.n;
    let ni = n as i64;
    let k = input.k0 as i64;
    let (c1n, c1n2c2) = input.chern_pair();
    let mut reasons = Vec::new();
    let pair = format!("(c1^n, c1^(n-2)c2) = ({}, {})", fmt_opt(&c1n), fmt_opt(&c1n2c2));

    if let Some(n0) = input.n0 {
        if n0 > 1 {
            reasons.push(format!("N0 = {n0}, but a symplectic action has N0 in {{0, 1}}"));
            return Verdict {
                kind: VerdictKind::Inconsistent,
                reasons,
            };
        }
    }
    let n0_hint = |reasons: &mut Vec<String>, ham: bool| -> bool {
        match input.n0 {
            Some(n0) if (n0 == 1) != ham => {
                reasons.push(format!("N0 = {n0} disagrees with the Chern number verdict"));
                false
            }
            Some(n0) => {
                reasons.push(format!("N0 = {n0} agrees (Hamiltonian iff N0 = 1)"));
                true
            }
            None => true,
        }
    };

    let done = |kind: VerdictKind, mut reasons: Vec<String>| {
        if kind == VerdictKind::Hamiltonian {
            reasons.push(format!("k0 = {k} is then the minimal Chern number"));
        }
        Verdict { kind, reasons }
    };

    // k0 = 0 or k0 > n+1
    if k == 0 || k > ni + 1 {
        reasons.push(format!("k0 = {k} lies outside 1..=n+1, so the action is not Hamiltonian"));
        let nonzero = [&c1n, &c1n2c2].iter().any(|c| c.as_ref().is_some_and(|v| !v.is_zero()));
        if nonzero {
            reasons.push(format!("{pair}, but both must vanish"));
            return done(VerdictKind::Inconsistent, reasons);
        }
        reasons.push("both Chern numbers vanish as required".into());
        if !n0_hint(&mut reasons, false) {
            return done(VerdictKind::Inconsistent, reasons);
        }
        return done(VerdictKind::NonHamiltonian, reasons);
    }

    // k0 = n+1 or k0 = n: two admissible pairs
    if k == ni + 1 || k == ni {
        let (a, b) = if k == ni + 1 {
            (big_pow(ni + 1, n), if n >= 2 { qr(ni, 2) * big_pow(ni + 1, n - 1) } else { q(0) })
        } else {
            (q(2) * big_pow(ni, n), if n >= 2 { big_pow(ni, n - 2) * q(ni * ni - ni + 2) } else { q(0) })
        };
        let matches = |x: &BigRational, y: &BigRational| {
            let first = c1n.as_ref().map_or(true, |c| c == x);
            let second = n < 2 || c1n2c2.as_ref().map_or(true, |c| c == y);
            first && second
        };
        let allowed = format!("({a}, {b}) or (0, 0)");
        if c1n.is_none() && (n < 2 || c1n2c2.is_none()) {
            reasons.push(format!("k0 = {k}: no Chern numbers given; allowed pairs are {allowed}"));
            return done(VerdictKind::Indeterminate, reasons);
        }
        if matches(&a, &b) {
            reasons.push(format!("k0 = {k}: {pair} is the nonzero admissible pair"));
            if !n0_hint(&mut reasons, true) {
                return done(VerdictKind::Inconsistent, reasons);
            }
            return done(VerdictKind::Hamiltonian, reasons);
        }
        if matches(&q(0), &q(0)) {
            reasons.push(format!("k0 = {k}: {pair} vanishes, so the action is not Hamiltonian"));
            if !n0_hint(&mut reasons, false) {
                return done(VerdictKind::Inconsistent, reasons);
            }
            return done(VerdictKind::NonHamiltonian, reasons);
        }
        reasons.push(format!("k0 = {k}: {pair} is not among {allowed}"));
        return done(VerdictKind::Inconsistent, reasons);
    }

    // k0 = n-1 (n >= 2) or k0 = n-2 (n >= 3): one linear combination
    if (k == ni - 1 && n >= 2) || (k == ni - 2 && n >= 3) {
        let (coef, target) = if k == ni - 1 {
            (qr(ni * (ni - 3), 2 * (ni - 1) * (ni - 1)), q(12) * big_pow(ni - 1, n - 2))
        } else {
            (qr(ni - 3, 2 * (ni - 2)), q(24) * big_pow(ni - 2, n - 2))
        };
        let (Some(a), Some(b)) = (&c1n, &c1n2c2) else {
            reasons.push(format!("k0 = {k} needs both c1^n and c1^(n-2)c2"));
            return done(VerdictKind::Indeterminate, reasons);
        };
        let m = b - &coef * a;
        let combo = format!("c1^(n-2)c2 - ({coef}) c1^n = {m}");
        if m == target {
            reasons.push(format!("k0 = {k}: {combo} is the nonzero admissible value"));
            if !n0_hint(&mut reasons, true) {
                return done(VerdictKind::Inconsistent, reasons);
            }
            return done(VerdictKind::Hamiltonian, reasons);
        }
        if m.is_zero() {
            reasons.push(format!("k0 = {k}: {combo} vanishes, so the action is not Hamiltonian"));
            if !n0_hint(&mut reasons, false) {
                return done(VerdictKind::Inconsistent, reasons);
            }
            return done(VerdictKind::NonHamiltonian, reasons);
        }
        reasons.push(format!("k0 = {k}: {combo} is not in {{0, {target}}}"));
        return done(VerdictKind::Inconsistent, reasons);
    }

    // 1 <= k0 <= n-3: one-sided vanishing test on c1^h T_{n-h}
    reasons.push(format!("k0 = {k} <= n-3: Chern numbers do not decide the action"));
    let threshold = 2 * k - ni + 2 * ((ni - k) / 2);
    let start = threshold.max(0) as usize;
    if input.hilbert.is_some() {
        let all_zero = (start..=n).all(|h| input.mixed_from_h(h).is_some_and(|v| v.is_zero()));
        if all_zero {
            reasons.push(format!(
                "c1^h T_(n-h) = 0 for all h >= {threshold}, so the action is not Hamiltonian"
            ));
            if !n0_hint(&mut reasons, false) {
                return done(VerdictKind::Inconsistent, reasons);
            }
            return done(VerdictKind::NonHamiltonian, reasons);
        }
        reasons.push(format!("some c1^h T_(n-h) with h >= {threshold} is nonzero; vanishing test inconclusive"));
    } else {
        reasons.push(format!(
            "vanishing test needs c1^h T_(n-h) for h >= {threshold}; supply H"
        ));
    }
    done(VerdictKind::Indeterminate, reasons)
}
