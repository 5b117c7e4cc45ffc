//! Encoders from algebras with involution to points of classifying varieties,
//! and decoders back.
//!
//! Every encoder returns a `Witness` (the parameter tuple) together with a
//! `Certificate` of exact checks. An encoder never returns a certificate with
//! a failed check; it reports `CERTIFICATE_FAILED` instead.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quaternion::{QuaternionAlgebra, QuaternionElement};
use crate::rat::Rat;

pub mod hermitian;
pub mod instance;
pub mod pgo4;
pub mod symplectic;

pub use hermitian::{disc_equation_root, encode_hermitian, encode_skew, encode_skew_trivial_disc};
pub use instance::{decode, encode, invariants, Instance, Invariants};
pub use pgo4::{encode_pgo4, Pgo4Instance};
pub use symplectic::{decompose_symplectic_deg4, encode_c2, Branch, Decomposition};

pub(crate) type Quat = QuaternionElement<Rat>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    QhPlus,
    QhMinus,
    QhMinusDisc1,
    A12,
    C2,
    C1,
}

impl Category {
    pub const ALL: [Category; 6] =
        [Category::QhPlus, Category::QhMinus, Category::QhMinusDisc1, Category::A12, Category::C2, Category::C1];

    pub fn tag(self) -> &'static str {
        match self {
            Category::QhPlus => "QH+",
            Category::QhMinus => "QH-",
            Category::QhMinusDisc1 => "QH-disc1",
            Category::A12 => "A12",
            Category::C2 => "C2",
            Category::C1 => "C1",
        }
    }

    /// Number of parameters of a witness.
    pub fn witness_len(self, n: usize) -> usize {
        match self {
            Category::QhPlus => n + 1,
            Category::QhMinus => 3 * n - 3,
            Category::QhMinusDisc1 => 3 * n - 4,
            Category::A12 | Category::C2 => 4,
            Category::C1 => 2,
        }
    }

    /// The `n` recorded for categories of fixed size.
    pub fn fixed_n(self) -> Option<usize> {
        match self {
            Category::A12 | Category::C2 => Some(2),
            Category::C1 => Some(1),
            _ => None,
        }
    }

    /// Checks that `n` is admissible for the category.
    pub fn check_n(self, n: usize) -> Result<()> {
        let ok = match self {
            Category::QhPlus | Category::QhMinus => n >= 3,
            Category::QhMinusDisc1 => n >= 3 && n % 2 == 1,
            _ => Some(n) == self.fixed_n(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("n = {n} is not admissible for {self}")))
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Category {
    type Err = Error;
    fn from_str(s: &str) -> Result<Category> {
        Category::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown category {s:?}")))
    }
}

impl Serialize for Category {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Category {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Category, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of a classifying variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub category: Category,
    pub n: usize,
    pub params: Vec<Rat>,
    #[serde(default)]
    pub meta: BTreeMap<String, String>,
}

impl Witness {
    pub fn new(category: Category, n: usize, params: Vec<Rat>) -> Witness {
        Witness { category, n, params, meta: BTreeMap::new() }
    }

    pub fn with_meta(mut self, key: &str, value: impl fmt::Display) -> Witness {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.get(key).map(String::as_str)
    }

    /// Checks the category, `n` and the parameter count.
    pub fn check_shape(&self) -> Result<()> {
        self.category.check_n(self.n).map_err(|e| Error::WitnessInvalid(e.to_string()))?;
        let want = self.category.witness_len(self.n);
        if self.params.len() != want {
            return Err(Error::WitnessInvalid(format!(
                "{} witness with n = {} needs {want} parameters, got {}",
                self.category,
                self.n,
                self.params.len()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub checks: Vec<Check>,
    pub seed: u64,
}

impl Certificate {
    pub fn new(seed: u64) -> Certificate {
        Certificate { checks: Vec::new(), seed }
    }

    pub fn push(&mut self, check: &str, lhs: impl fmt::Display, rhs: impl fmt::Display, pass: bool) {
        self.checks.push(Check { check: check.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string(), pass });
    }

    pub fn push_eq<T: PartialEq + fmt::Display>(&mut self, check: &str, lhs: &T, rhs: &T) {
        self.push(check, lhs, rhs, lhs == rhs);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// The certificate itself, or `CERTIFICATE_FAILED` naming the first failure.
    pub fn into_result(self) -> Result<Certificate> {
        let failure = self.failures().next().map(|c| format!("{}: {} ≠ {}", c.check, c.lhs, c.rhs));
        match failure {
            None => Ok(self),
            Some(m) => Err(Error::CertificateFailed(m)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Encoded {
    pub witness: Witness,
    pub certificate: Certificate,
}

/// ((a, b), γ) ↦ (a, b).
pub fn encode_c1(q: &QuaternionAlgebra) -> Encoded {
    let witness = Witness::new(Category::C1, 1, vec![q.a().clone(), q.b().clone()]);
    let mut certificate = Certificate::new(0);
    certificate.push("symbol", format!("({}, {})", q.a(), q.b()), format!("({}, {})", witness.params[0], witness.params[1]), true);
    Encoded { witness, certificate }
}

pub(crate) fn decode_c1(w: &Witness) -> Result<QuaternionAlgebra> {
    QuaternionAlgebra::new(w.params[0].clone(), w.params[1].clone()).map_err(|e| Error::WitnessInvalid(e.to_string()))
}

pub(crate) fn sign_text(r: &Rat) -> &'static str {
    match r.signum() {
        1 => "+1",
        -1 => "-1",
        _ => "0",
    }
}

pub(crate) fn parse_sign(s: Option<&str>, key: &str) -> Result<i32> {
    match s {
        Some("+1") => Ok(1),
        Some("-1") => Ok(-1),
        Some("0") => Ok(0),
        other => Err(Error::WitnessInvalid(format!("meta {key} must be +1, -1 or 0, got {other:?}"))),
    }
}
