//! Comparing an instance with the decoding of a witness, and batch reports.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::classify::{decode, invariants, Category, Certificate, Check, Instance, Invariants, Witness};
use crate::classify::pgo4::Pgo4Invariants;
use crate::error::Result;

fn check(name: &str, lhs: impl Display, rhs: impl Display, pass: bool) -> Check {
    Check { check: name.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), pass }
}

fn eq_check<T: PartialEq + Display>(name: &str, lhs: &T, rhs: &T) -> Check {
    check(name, lhs, rhs, lhs == rhs)
}

fn show_opt<T: Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

/// One named check per tracked invariant.
pub fn invariant_checks(a: &Invariants, b: &Invariants) -> Vec<Check> {
    use Invariants as I;
    match (a, b) {
        (
            I::Hermitian { degree: d1, ramification: r1, kind: k1, disc: c1 },
            I::Hermitian { degree: d2, ramification: r2, kind: k2, disc: c2 },
        ) => vec![
            eq_check("degree", d1, d2),
            eq_check("ramification", r1, r2),
            eq_check("involution_type", k1, k2),
            check("discriminant", show_opt(c1), show_opt(c2), c1 == c2),
        ],
        (I::Pgo4(p1), I::Pgo4(p2)) => match (p1, p2) {
            (
                Pgo4Invariants::Field { class: c1, ramification: r1 },
                Pgo4Invariants::Field { class: c2, ramification: r2 },
            ) => vec![eq_check("etale_class", c1, c2), eq_check("ramification", r1, r2)],
            (Pgo4Invariants::Split(v1), Pgo4Invariants::Split(v2)) => {
                vec![check("ramification_pair", v1.join(" | "), v2.join(" | "), v1 == v2)]
            }
            _ => vec![check("etale_shape", format!("{p1:?}"), format!("{p2:?}"), false)],
        },
        (
            I::Symplectic { degree: d1, kind: k1, brauer: b1, form: f1 },
            I::Symplectic { degree: d2, kind: k2, brauer: b2, form: f2 },
        ) => vec![
            eq_check("degree", d1, d2),
            eq_check("involution_type", k1, k2),
            eq_check("brauer_class", b1, b2),
            eq_check("square_form", f1, f2),
        ],
        (I::Canonical { ramification: r1 }, I::Canonical { ramification: r2 }) => vec![eq_check("ramification", r1, r2)],
        _ => vec![check("category", format!("{a:?}"), format!("{b:?}"), false)],
    }
}

/// Checks that `w` decodes to an instance with the invariants of `x`. Decode
/// failures become a failing `decode` check.
pub fn verify_pair(category: Category, x: &Instance, w: &Witness) -> Result<Vec<Check>> {
    let mut checks = vec![check("category", category, w.category, category == w.category)];
    if category != w.category {
        return Ok(checks);
    }
    let want = invariants(x)?;
    match decode(w) {
        Ok(y) => checks.extend(invariant_checks(&want, &invariants(&y)?)),
        Err(e) => checks.push(check("decode", e.name(), "ok", false)),
    }
    Ok(checks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub micros: Option<u64>,
}

impl Outcome {
    pub fn from_checks(index: usize, witness: Option<Witness>, checks: Vec<Check>) -> Outcome {
        let passed = checks.iter().all(|c| c.pass);
        Outcome { index, witness, checks, passed, error: None, micros: None }
    }

    pub fn from_certificate(index: usize, witness: Witness, cert: Certificate) -> Outcome {
        Outcome::from_checks(index, Some(witness), cert.checks)
    }

    pub fn failed(index: usize, error: String) -> Outcome {
        Outcome { index, witness: None, checks: Vec::new(), passed: false, error: Some(error), micros: None }
    }

    /// The first failing check, or the error.
    pub fn failure(&self) -> Option<String> {
        if let Some(e) = &self.error {
            return Some(e.clone());
        }
        self.checks.iter().find(|c| !c.pass).map(|c| format!("{}: {} ≠ {}", c.check, c.lhs, c.rhs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub outcomes: Vec<Outcome>,
}

impl RunReport {
    pub fn new(seed: u64, outcomes: Vec<Outcome>) -> RunReport {
        let passed = outcomes.iter().filter(|o| o.passed).count();
        RunReport { seed, total: outcomes.len(), passed, failed: outcomes.len() - passed, outcomes }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::encode;
    use crate::harness::generate::generate;
    use crate::rat::Rat;

    #[test]
    fn matching_pair_passes() {
        for c in Category::ALL {
            let n = c.fixed_n().unwrap_or(3);
            let x = generate(c, n, 3, 10).unwrap();
            let w = encode(c, &x, 3).unwrap().witness;
            let checks = verify_pair(c, &x, &w).unwrap();
            assert!(checks.iter().all(|k| k.pass), "{c}: {checks:?}");
        }
    }

    #[test]
    fn tampered_parameter_is_named() {
        let x = generate(Category::C1, 1, 0, 10).unwrap();
        let mut w = encode(Category::C1, &x, 0).unwrap().witness;
        w.params[0] = Rat::zero();
        let checks = verify_pair(Category::C1, &x, &w).unwrap();
        let o = Outcome::from_checks(0, Some(w), checks);
        assert!(!o.passed);
        assert!(o.failure().unwrap().starts_with("decode"));
    }

    #[test]
    fn report_counts() {
        let r = RunReport::new(5, vec![Outcome::failed(0, "X".into()), Outcome::from_checks(1, None, vec![])]);
        assert_eq!((r.total, r.passed, r.failed), (2, 1, 1));
        assert!(!r.all_passed());
    }
}
