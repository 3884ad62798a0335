//! JSON wire formats. Rationals travel as `{"num": ..., "den": ...}` (plain
//! integers when they fit, decimal strings otherwise) so exactness survives
//! the wire; a decimal rendering at the configured precision rides along for
//! human readers.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use normlab_core::free::{FiniteMetricSpace, FreeVector};
use normlab_core::num::{decimal_string, ComplexRat, Enclosure, Rat, Value};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_bigint(x: &BigInt) -> IntRepr {
        match i64::try_from(x.clone()) {
            Ok(v) => IntRepr::Small(v),
            Err(_) => IntRepr::Big(x.to_string()),
        }
    }

    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s.parse::<BigInt>().map_err(|e| anyhow!("bad integer: {e}")),
        }
    }
}

/// Exact rational on the wire.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatDto {
    pub num: IntRepr,
    pub den: IntRepr,
}

impl RatDto {
    pub fn from_rat(r: &Rat) -> RatDto {
        RatDto {
            num: IntRepr::from_bigint(r.numer()),
            den: IntRepr::from_bigint(r.denom()),
        }
    }

    pub fn to_rat(&self) -> Result<Rat> {
        let num = self.num.to_bigint()?;
        let den = self.den.to_bigint()?;
        if den == BigInt::from(0) {
            bail!("zero denominator");
        }
        Ok(Rat::new(num, den))
    }
}

/// Complex rational on the wire; `im` defaults to zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDto {
    pub re: RatDto,
    #[serde(default)]
    pub im: Option<RatDto>,
}

impl ComplexDto {
    pub fn to_complex(&self) -> Result<ComplexRat> {
        let re = self.re.to_rat()?;
        let im = match &self.im {
            Some(i) => i.to_rat()?,
            None => Rat::from_integer(BigInt::from(0)),
        };
        Ok(ComplexRat::new(re, im))
    }

    pub fn from_complex(z: &ComplexRat) -> ComplexDto {
        ComplexDto {
            re: RatDto::from_rat(&z.re),
            im: if num_traits::Zero::is_zero(&z.im) {
                None
            } else {
                Some(RatDto::from_rat(&z.im))
            },
        }
    }
}

/// A computed value: its exact form plus a decimal rendering.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValueDto {
    pub form: ValueForm,
    pub decimal: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ValueForm {
    Rational {
        num: IntRepr,
        den: IntRepr,
    },
    /// The nonnegative square root of the stored rational.
    Sqrt {
        radicand: RatDto,
    },
    Enclosure {
        lo: RatDto,
        hi: RatDto,
    },
}

impl ValueDto {
    pub fn from_value(v: &Value, digits: u32) -> ValueDto {
        let tol = normlab_core::num::pow10_neg(digits + 6);
        let mid = v.enclosure(&tol).midpoint();
        let form = match v {
            Value::Rational(r) => {
                let dto = RatDto::from_rat(r);
                ValueForm::Rational {
                    num: dto.num,
                    den: dto.den,
                }
            }
            Value::SqrtRational(q) => ValueForm::Sqrt {
                radicand: RatDto::from_rat(q),
            },
            Value::Enclosed(e) => ValueForm::Enclosure {
                lo: RatDto::from_rat(e.lo()),
                hi: RatDto::from_rat(e.hi()),
            },
        };
        ValueDto {
            form,
            decimal: decimal_string(&mid, digits),
        }
    }

    pub fn from_rat(r: &Rat, digits: u32) -> ValueDto {
        ValueDto::from_value(&Value::rational(r.clone()), digits)
    }

    pub fn from_enclosure(e: &Enclosure, digits: u32) -> ValueDto {
        ValueDto::from_value(&Value::enclosed(e.clone()), digits)
    }
}

/// Metric space file: labels, exact distance matrix, base index.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceFile {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<RatDto>>,
    pub base: usize,
}

impl SpaceFile {
    pub fn to_space(&self) -> Result<FiniteMetricSpace> {
        let d = self
            .matrix
            .iter()
            .map(|row| row.iter().map(RatDto::to_rat).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FiniteMetricSpace::new(self.labels.clone(), d, self.base)
            .map_err(|e| anyhow!("invalid metric space: {e}"))
    }
}

/// Vector file: a label -> rational map over the space's non-base points.
pub type VectorFile = BTreeMap<String, RatDto>;

pub fn vector_from_file(file: &VectorFile, space: &FiniteMetricSpace) -> Result<FreeVector> {
    let mut mu = FreeVector::zero(space);
    let support = space.support_points();
    for (label, dto) in file {
        let idx = space
            .find_label(label)
            .with_context(|| format!("unknown point label {label:?}"))?;
        if idx == space.base() {
            bail!("label {label:?} is the base point and carries no coefficient");
        }
        let slot = support.iter().position(|&p| p == idx).unwrap();
        mu.coeffs[slot] = dto.to_rat()?;
    }
    Ok(mu)
}

/// Complex coefficient list file (for the selection command).
pub type ComplexListFile = Vec<ComplexDto>;

pub fn complex_list(file: &ComplexListFile) -> Result<Vec<ComplexRat>> {
    file.iter().map(ComplexDto::to_complex).collect()
}

/// One rational as an exact + decimal pair, for single-value outputs.
#[derive(Clone, Debug, Serialize)]
pub struct ExactOutput {
    pub num: IntRepr,
    pub den: IntRepr,
    pub decimal: String,
}

impl ExactOutput {
    pub fn new(r: &Rat, digits: u32) -> ExactOutput {
        let dto = RatDto::from_rat(r);
        ExactOutput {
            num: dto.num,
            den: dto.den,
            decimal: decimal_string(r, digits),
        }
    }
}
