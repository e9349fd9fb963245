//! Serializable records: rationals as "p/q" strings, field elements as
//! coefficient vectors in powers of ζ_N.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{fmt_q, parse_q};
use crate::cyclo::{CycloError, CycloNum, FieldSpec};
use crate::group::{GroupError, P1Point, Pgl2Elem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
    #[error(transparent)]
    Field(#[from] CycloError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn invalid(path: &str, msg: impl Into<String>) -> RecordError {
    RecordError::Invalid {
        path: path.to_string(),
        msg: msg.into(),
    }
}

pub type CoeffVec = Vec<String>;

pub fn num_record(x: &CycloNum) -> CoeffVec {
    let mut v: Vec<String> = x.coeffs().iter().map(fmt_q).collect();
    while v.len() > 1 && v.last().map(|s| s == "0").unwrap_or(false) {
        v.pop();
    }
    v
}

pub fn num_from_record(n: u32, v: &[String], path: &str) -> Result<CycloNum, RecordError> {
    if n == 0 {
        return Err(invalid(path, "conductor must be positive"));
    }
    let coeffs = v
        .iter()
        .enumerate()
        .map(|(i, s)| {
            parse_q(s).ok_or_else(|| invalid(&format!("{path}[{i}]"), format!("not a rational: {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CycloNum::new(n, coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub conductor: u32,
    pub generators: Vec<CoeffVec>,
}

impl FieldRecord {
    pub fn from_spec(k: &FieldSpec) -> Self {
        FieldRecord {
            conductor: k.conductor(),
            generators: k.generators().iter().map(num_record).collect(),
        }
    }

    pub fn to_spec(&self) -> Result<FieldSpec, RecordError> {
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| num_from_record(self.conductor, g, &format!("field.generators[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FieldSpec::new(self.conductor, gens)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub conductor: u32,
    pub t1: CoeffVec,
    pub t0: CoeffVec,
}

impl PointRecord {
    pub fn from_point(p: &P1Point) -> Self {
        let (t1, t0) = p.coords();
        PointRecord {
            conductor: p.conductor(),
            t1: num_record(t1),
            t0: num_record(t0),
        }
    }

    pub fn to_point(&self) -> Result<P1Point, RecordError> {
        let t1 = num_from_record(self.conductor, &self.t1, "point.t1")?;
        let t0 = num_from_record(self.conductor, &self.t0, "point.t0")?;
        Ok(P1Point::new(t1, t0)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub conductor: u32,
    pub entries: [CoeffVec; 4],
}

impl MatrixRecord {
    pub fn from_elem(g: &Pgl2Elem) -> Self {
        let e = g.entries();
        MatrixRecord {
            conductor: g.conductor(),
            entries: [
                num_record(&e[0]),
                num_record(&e[1]),
                num_record(&e[2]),
                num_record(&e[3]),
            ],
        }
    }

    pub fn to_elem(&self) -> Result<Pgl2Elem, RecordError> {
        let f = |i: usize| num_from_record(self.conductor, &self.entries[i], &format!("matrix.entries[{i}]"));
        Ok(Pgl2Elem::new(f(0)?, f(1)?, f(2)?, f(3)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::consts;

    #[test]
    fn field_roundtrip() {
        let k = FieldSpec::new(20, vec![consts::sqrt5(20).unwrap(), consts::i(20).unwrap()]).unwrap();
        let r = FieldRecord::from_spec(&k);
        let json = serde_json::to_string(&r).unwrap();
        let back: FieldRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_spec().unwrap(), k);
    }

    #[test]
    fn bad_rational_reports_path() {
        let r = FieldRecord {
            conductor: 4,
            generators: vec![vec!["1".into(), "x".into()]],
        };
        let err = r.to_spec().unwrap_err();
        assert!(err.to_string().starts_with("field.generators[0][1]"));
    }
}
