//! What to analyze: a Dynkin type, a character lattice and a parameter,
//! from flags or a TOML file.

use std::path::Path;

use qfiber::qparam::{parse_scales, QParam};
use qfiber::rootdata::{DynkinType, LatticeSpec, RootDatum};
use qfiber::{Error, Int, Result};
use serde::{Deserialize, Serialize};

use crate::num::{fraction, Num};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    SimplyConnected,
    Adjoint,
    Explicit(Vec<Vec<Int>>),
}

impl LatticeChoice {
    /// `sc`, `adjoint` or generator rows as `[[2,0],[1,1]]` or `2,0;1,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "sc" | "simply-connected" | "simply_connected" => return Ok(Self::SimplyConnected),
            "ad" | "adjoint" => return Ok(Self::Adjoint),
            _ => {}
        }
        let rows: Vec<Vec<Int>> = if t.starts_with('[') {
            serde_json::from_str::<Vec<Vec<Num>>>(t)
                .map_err(|e| Error::InvalidInput(format!("bad lattice rows '{t}': {e}")))?
                .into_iter()
                .map(|r| r.into_iter().map(|n| n.0).collect())
                .collect()
        } else {
            t.split(';')
                .map(|row| {
                    row.split(',')
                        .map(|x| x.trim().parse::<Int>().map_err(|_| Error::InvalidInput(format!("bad lattice entry '{x}'"))))
                        .collect()
                })
                .collect::<Result<_>>()?
        };
        Ok(Self::Explicit(rows))
    }

    fn spec(&self) -> LatticeSpec {
        match self {
            Self::SimplyConnected => LatticeSpec::SimplyConnected,
            Self::Adjoint => LatticeSpec::Adjoint,
            Self::Explicit(rows) => LatticeSpec::Explicit(rows.clone()),
        }
    }

    pub fn echo(&self) -> LatticeEcho {
        match self {
            Self::SimplyConnected => LatticeEcho::Named("sc".into()),
            Self::Adjoint => LatticeEcho::Named("adjoint".into()),
            Self::Explicit(rows) => LatticeEcho::Rows(crate::num::matrix(rows)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeEcho {
    Named(String),
    Rows(Vec<Vec<Num>>),
}

/// A root datum together with a parameter, still unparsed where possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub dynkin: DynkinType,
    pub lattice: LatticeChoice,
    pub param: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    #[serde(rename = "type")]
    pub dynkin: String,
    pub lattice: LatticeEcho,
    /// One scale per almost-simple factor.
    pub param: Vec<String>,
}

impl Instance {
    pub fn new(dynkin: &str, lattice: &str, param: &str) -> Result<Self> {
        Ok(Self { dynkin: dynkin.parse()?, lattice: LatticeChoice::parse(lattice)?, param: param.to_string() })
    }

    pub fn build(&self) -> Result<QParam> {
        let rd = RootDatum::new(self.dynkin.clone(), self.lattice.spec())?;
        let scales = parse_scales(&self.param, self.dynkin.factors().len())?;
        QParam::new(rd, scales)
    }

    pub fn echo(&self, q: &QParam) -> InputEcho {
        InputEcho {
            dynkin: self.dynkin.to_string(),
            lattice: self.lattice.echo(),
            param: q.scales().iter().map(fraction).collect(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    #[serde(rename = "type")]
    dynkin: String,
    #[serde(default)]
    lattice: Option<FileLattice>,
    param: FileParam,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FileLattice {
    Named(String),
    Rows(Vec<Vec<i64>>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FileParam {
    One(String),
    Many(Vec<String>),
}

/// Reads `type = "A2xB3"`, `lattice = "sc" | "adjoint" | [[...]]`, `param = "1/6"`.
pub fn from_toml(text: &str) -> Result<Instance> {
    let f: InputFile = toml::from_str(text).map_err(|e| Error::InvalidInput(format!("bad input file: {e}")))?;
    let lattice = match f.lattice {
        None => LatticeChoice::SimplyConnected,
        Some(FileLattice::Named(s)) => LatticeChoice::parse(&s)?,
        Some(FileLattice::Rows(rows)) => {
            LatticeChoice::Explicit(rows.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect())
        }
    };
    let param = match f.param {
        FileParam::One(s) => s,
        FileParam::Many(v) => v.join(","),
    };
    Ok(Instance { dynkin: f.dynkin.parse()?, lattice, param })
}

pub fn from_toml_file(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    from_toml(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_forms() {
        assert_eq!(LatticeChoice::parse("sc").unwrap(), LatticeChoice::SimplyConnected);
        assert_eq!(LatticeChoice::parse("Adjoint").unwrap(), LatticeChoice::Adjoint);
        let a = LatticeChoice::parse("[[2,0],[1,1]]").unwrap();
        let b = LatticeChoice::parse("2,0; 1,1").unwrap();
        assert_eq!(a, b);
        assert!(LatticeChoice::parse("2,x").is_err());
    }

    #[test]
    fn toml_input() {
        let i = from_toml("type = \"A1xA1\"\nlattice = [[2,0],[1,1]]\nparam = [\"1/4\", \"pi/l:2\"]\n").unwrap();
        assert_eq!(i.dynkin.to_string(), "A1xA1");
        let q = i.build().unwrap();
        assert_eq!(i.echo(&q).param, vec!["1/4", "1/4"]);
        assert!(from_toml("type = \"A1\"\nparam = \"1/4\"\nextra = 1\n").is_err());
    }
}
