//! Line-delimited JSON interchange. Every rational is an exact string in
//! lowest terms; payload keys come out sorted, so serializing a parsed file
//! reproduces it byte for byte.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::{Category, Encoded, Instance, Pgo4Instance, Witness};
use crate::error::{Error, Result};
use crate::field::EtaleElement;
use crate::forms::{Epsilon, HermitianForm, QuatMatrix};
use crate::linalg::RatMatrix;
use crate::quaternion::{QuaternionAlgebra, QuaternionElement};
use crate::rat::Rat;
use crate::tensor::{LinearInvolution, StructureAlgebra};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: String,
    pub category: Category,
    pub n: usize,
    pub payload: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RatAlgebra {
    a: Rat,
    b: Rat,
    base: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EtaleBase {
    e: Rat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EtaleAlgebra {
    a: [Rat; 2],
    b: [Rat; 2],
    base: EtaleBase,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HermitianPayload {
    algebra: RatAlgebra,
    epsilon: String,
    gram: Vec<Vec<[Rat; 4]>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum A12Payload {
    Field { algebra: EtaleAlgebra },
    Split { pair: [RatAlgebra; 2] },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct C2Payload {
    constants: Vec<Vec<Vec<Rat>>>,
    unit: Vec<Rat>,
    involution: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct C1Payload {
    algebra: RatAlgebra,
}

fn rat_algebra(q: &QuaternionAlgebra) -> RatAlgebra {
    RatAlgebra { a: q.a().clone(), b: q.b().clone(), base: "Q".into() }
}

fn from_rat_algebra(r: RatAlgebra) -> Result<QuaternionAlgebra> {
    if r.base != "Q" {
        return Err(Error::Parse(format!("expected base \"Q\", got {:?}", r.base)));
    }
    QuaternionAlgebra::new(r.a, r.b)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload types serialize")
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Parse(e.to_string()))
}

impl InstanceFile {
    pub fn from_instance(category: Category, x: &Instance) -> Result<InstanceFile> {
        if !x.fits(category) {
            return Err(Error::ShapeMismatch(format!("instance does not belong to {category}")));
        }
        let payload = match x {
            Instance::Hermitian(h) => to_value(&HermitianPayload {
                algebra: rat_algebra(h.algebra()),
                epsilon: h.epsilon().to_string(),
                gram: h.gram().to_rows().into_iter().map(|row| row.into_iter().map(|q| q.c).collect()).collect(),
            }),
            Instance::Pgo4(Pgo4Instance::Field(q)) => to_value(&A12Payload::Field {
                algebra: EtaleAlgebra {
                    a: [q.a().x.clone(), q.a().y.clone()],
                    b: [q.b().x.clone(), q.b().y.clone()],
                    base: EtaleBase { e: q.a().e().clone() },
                },
            }),
            Instance::Pgo4(Pgo4Instance::Split(q1, q2)) => to_value(&A12Payload::Split { pair: [rat_algebra(q1), rat_algebra(q2)] }),
            Instance::Symplectic { algebra, involution } => to_value(&C2Payload {
                constants: algebra.structure_constants(),
                unit: algebra.unit().clone(),
                involution: involution.matrix().to_rows(),
            }),
            Instance::Canonical(q) => to_value(&C1Payload { algebra: rat_algebra(q) }),
        };
        Ok(InstanceFile { version: FORMAT_VERSION.into(), category, n: x.n(), payload })
    }

    /// The instance, after checking the file's own consistency.
    pub fn to_instance(&self) -> Result<Instance> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported version {:?}", self.version)));
        }
        let x = match self.category {
            Category::QhPlus | Category::QhMinus | Category::QhMinusDisc1 => {
                let p: HermitianPayload = from_value(&self.payload)?;
                let epsilon: Epsilon = p.epsilon.parse()?;
                let q = from_rat_algebra(p.algebra)?;
                let rows: Vec<Vec<QuaternionElement>> =
                    p.gram.into_iter().map(|row| row.into_iter().map(QuaternionElement::new).collect()).collect();
                Instance::Hermitian(HermitianForm::new(q, epsilon, QuatMatrix::from_rows(rows)?)?)
            }
            Category::A12 => match from_value::<A12Payload>(&self.payload)? {
                A12Payload::Field { algebra } => {
                    let e = algebra.base.e;
                    let el = |[x, y]: [Rat; 2]| EtaleElement::new(x, y, e.clone());
                    let q = QuaternionAlgebra::new(el(algebra.a), el(algebra.b))?;
                    Instance::Pgo4(Pgo4Instance::from_etale(q)?)
                }
                A12Payload::Split { pair: [q1, q2] } => {
                    Instance::Pgo4(Pgo4Instance::Split(from_rat_algebra(q1)?, from_rat_algebra(q2)?))
                }
            },
            Category::C2 => {
                let p: C2Payload = from_value(&self.payload)?;
                let algebra = StructureAlgebra::new(p.constants, p.unit)?;
                let involution = LinearInvolution::new(&algebra, RatMatrix::from_rows(p.involution))?;
                Instance::Symplectic { algebra, involution }
            }
            Category::C1 => Instance::Canonical(from_rat_algebra(from_value::<C1Payload>(&self.payload)?.algebra)?),
        };
        if !x.fits(self.category) || x.n() != self.n {
            return Err(Error::ShapeMismatch(format!("payload does not describe a {} instance with n = {}", self.category, self.n)));
        }
        Ok(x)
    }

    pub fn parse(line: &str) -> Result<InstanceFile> {
        serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("instance files serialize")
    }
}

/// Nonblank lines of a line-delimited file.
pub fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}

pub fn parse_instances(text: &str) -> Result<Vec<InstanceFile>> {
    lines(text).map(InstanceFile::parse).collect()
}

/// A witness line, either bare or inside an encoder output line.
pub fn parse_witness(line: &str) -> Result<Witness> {
    let v: Value = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
    let w = match v.get("witness") {
        Some(inner) => inner.clone(),
        None => v,
    };
    Witness::deserialize(&w).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_witnesses(text: &str) -> Result<Vec<Witness>> {
    lines(text).map(parse_witness).collect()
}

pub fn encoded_line(e: &Encoded) -> String {
    serde_json::to_string(e).expect("encoder output serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::generate;

    #[test]
    fn round_trip_every_category() {
        for c in Category::ALL {
            let n = c.fixed_n().unwrap_or(3);
            for seed in 0..5 {
                let x = generate(c, n, seed, 6).unwrap();
                let f = InstanceFile::from_instance(c, &x).unwrap();
                let line = f.to_line();
                let g = InstanceFile::parse(&line).unwrap();
                assert_eq!(g.to_line(), line);
                let y = g.to_instance().unwrap();
                assert_eq!(InstanceFile::from_instance(c, &y).unwrap().to_line(), line);
            }
        }
    }

    #[test]
    fn c1_layout() {
        let x = Instance::Canonical(QuaternionAlgebra::from_ints(-1, -3).unwrap());
        let line = InstanceFile::from_instance(Category::C1, &x).unwrap().to_line();
        assert_eq!(line, r#"{"version":"1","category":"C1","n":1,"payload":{"algebra":{"a":"-1","b":"-3","base":"Q"}}}"#);
    }

    #[test]
    fn malformed_input() {
        assert_eq!(InstanceFile::parse("{").unwrap_err().name(), "PARSE_ERROR");
        let bad = r#"{"version":"1","category":"C1","n":1,"payload":{"algebra":{"a":"1/0","b":"-3","base":"Q"}}}"#;
        let f = InstanceFile::parse(bad).unwrap();
        assert_eq!(f.to_instance().unwrap_err().name(), "PARSE_ERROR");
        let w = parse_witness(r#"{"witness":{"category":"C1","n":1,"params":["-1","-1"]},"certificate":{"checks":[],"seed":0}}"#).unwrap();
        assert_eq!(w.params.len(), 2);
    }
}
