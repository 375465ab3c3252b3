//! JSON file formats for inputs and reports.
//!
//! Complex numbers travel as `[re, im]` pairs. Parsing is two-stage: syntax
//! errors surface as [`LoadError::Parse`], well-formed but invalid structure
//! as [`LoadError::Invalid`].

use serde::{Deserialize, Serialize};

use crate::characters::Character;
use crate::engine::EquationTag;
use crate::error::Error;
use crate::measure::DiracMeasure;
use crate::scalar::{Complex64, RootValue, ScalarFunction};
use crate::semigroup::{FiniteSemigroup, InvolutiveMorphism, MorphismKind};
use crate::solvers::{SolutionSet, Warning};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] Error),
}

type Pair = [f64; 2];

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn complex([re, im]: Pair) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupJson {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl SemigroupJson {
    pub fn build(self) -> Result<FiniteSemigroup, Error> {
        if self.n != self.table.len() {
            return Err(Error::OrderMismatch {
                declared: self.n,
                rows: self.table.len(),
            });
        }
        let s = FiniteSemigroup::new(self.table)?;
        Ok(match self.name {
            Some(name) => s.with_name(name),
            None => s,
        })
    }
}

impl From<&FiniteSemigroup> for SemigroupJson {
    fn from(s: &FiniteSemigroup) -> Self {
        Self {
            n: s.order(),
            table: s.rows(),
            name: s.name().map(str::to_owned),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub map: Vec<usize>,
    pub kind: MorphismKind,
}

impl From<&InvolutiveMorphism> for MorphismJson {
    fn from(m: &InvolutiveMorphism) -> Self {
        Self {
            map: m.map().to_vec(),
            kind: m.kind(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomJson {
    pub point: usize,
    pub w: Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureJson {
    pub atoms: Vec<AtomJson>,
}

impl MeasureJson {
    pub fn build(self) -> Result<DiracMeasure, Error> {
        DiracMeasure::new(self.atoms.into_iter().map(|a| (a.point, complex(a.w))))
    }
}

impl From<&DiracMeasure> for MeasureJson {
    fn from(mu: &DiracMeasure) -> Self {
        Self {
            atoms: mu
                .atoms()
                .iter()
                .map(|a| AtomJson {
                    point: a.point,
                    w: pair(a.weight),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionJson {
    pub values: Vec<Pair>,
}

impl FunctionJson {
    pub fn build(self) -> Result<ScalarFunction, Error> {
        ScalarFunction::new(self.values.into_iter().map(complex).collect())
    }
}

impl From<&ScalarFunction> for FunctionJson {
    fn from(f: &ScalarFunction) -> Self {
        Self {
            values: f.values().iter().copied().map(pair).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum RootJson {
    Zero { zero: bool },
    Root { q: u32, m: u32 },
}

impl RootJson {
    fn build(self) -> Result<RootValue, Error> {
        match self {
            Self::Zero { zero: true } => Ok(RootValue::Zero),
            Self::Zero { zero: false } => Err(Error::BadRoot { q: 0, m: 0 }),
            Self::Root { q, m } => RootValue::root(q, m),
        }
    }
}

impl From<RootValue> for RootJson {
    fn from(v: RootValue) -> Self {
        match v {
            RootValue::Zero => Self::Zero { zero: true },
            RootValue::Root { q, m } => Self::Root { q, m },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterJson {
    pub values: Vec<RootJson>,
}

impl CharacterJson {
    pub fn build(self, s: &FiniteSemigroup) -> Result<Character, Error> {
        let values = self.values.into_iter().map(RootJson::build).collect::<Result<_, _>>()?;
        Character::new(s, values)
    }
}

impl From<&Character> for CharacterJson {
    fn from(chi: &Character) -> Self {
        Self {
            values: chi.values().iter().map(|&v| v.into()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProvenanceJson {
    pub chi: CharacterJson,
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionJson {
    pub values: Vec<Pair>,
    pub provenance: ProvenanceJson,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionSetJson {
    pub equation: EquationTag,
    pub solutions: Vec<SolutionJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<Warning>,
}

impl From<&SolutionSet> for SolutionSetJson {
    fn from(set: &SolutionSet) -> Self {
        Self {
            equation: set.equation,
            solutions: set
                .solutions
                .iter()
                .map(|s| SolutionJson {
                    values: FunctionJson::from(&s.f).values,
                    provenance: ProvenanceJson {
                        chi: (&s.provenance.chi).into(),
                        formula: s.provenance.formula.to_owned(),
                    },
                    residual: s.residual,
                })
                .collect(),
            warnings: set.warnings.clone(),
        }
    }
}

pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup, LoadError> {
    Ok(serde_json::from_str::<SemigroupJson>(text)?.build()?)
}

pub fn parse_morphism(text: &str, s: &FiniteSemigroup) -> Result<InvolutiveMorphism, LoadError> {
    let m: MorphismJson = serde_json::from_str(text)?;
    Ok(InvolutiveMorphism::new(s, m.map, m.kind)?)
}

pub fn parse_measure(text: &str) -> Result<DiracMeasure, LoadError> {
    Ok(serde_json::from_str::<MeasureJson>(text)?.build()?)
}

pub fn parse_function(text: &str) -> Result<ScalarFunction, LoadError> {
    Ok(serde_json::from_str::<FunctionJson>(text)?.build()?)
}

pub fn parse_character(text: &str, s: &FiniteSemigroup) -> Result<Character, LoadError> {
    Ok(serde_json::from_str::<CharacterJson>(text)?.build(s)?)
}

/// Pretty JSON with a trailing newline. Floats use the shortest
/// representation that round-trips, so output is reproducible bit for bit.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}
