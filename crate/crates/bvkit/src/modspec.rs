//! Modulus-of-continuity specifications.
//!
//! A modulus is a continuous increasing function on `[0, ∞)` vanishing at 0.
//! Analytic families cover the classical Hölder/Lipschitz/logarithmic
//! shapes; `Tabulated` holds an arbitrary increasing table with linear
//! interpolation and a constant tail beyond the table end.

use serde::{Deserialize, Serialize};

use crate::error::{argument_err, domain_err, Result};
use crate::pwl::PiecewiseLinear;

/// Serialized as a tagged union, e.g. `{"kind":"power","L":1.0,"alpha":0.5}`
/// or `{"kind":"tabulated","table":[[h,w],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModulusSpec {
    /// `h ↦ L·h^α` with `L > 0`, `α ∈ (0, 1]`.
    Power {
        #[serde(rename = "L")]
        l: f64,
        alpha: f64,
    },
    /// `h ↦ L·h` with `L > 0`.
    Linear {
        #[serde(rename = "L")]
        l: f64,
    },
    /// `h ↦ L / log(e + 1/h)` with value 0 at `h = 0`; bounded by `L`.
    LogReciprocal {
        #[serde(rename = "L")]
        l: f64,
    },
    /// Increasing table on `[0, H]` with value 0 at 0; the value is held
    /// constant at the table end for `h > H`.
    Tabulated {
        #[serde(with = "table_as_pairs")]
        table: PiecewiseLinear,
    },
}

mod table_as_pairs {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        table: &PiecewiseLinear,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        table.breakpoints().serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<PiecewiseLinear, D::Error> {
        let pairs = Vec::<(f64, f64)>::deserialize(deserializer)?;
        PiecewiseLinear::new(pairs).map_err(D::Error::custom)
    }
}

impl ModulusSpec {
    pub fn power(l: f64, alpha: f64) -> Result<Self> {
        let spec = ModulusSpec::Power { l, alpha };
        spec.validate()?;
        Ok(spec)
    }

    pub fn linear(l: f64) -> Result<Self> {
        let spec = ModulusSpec::Linear { l };
        spec.validate()?;
        Ok(spec)
    }

    pub fn log_reciprocal(l: f64) -> Result<Self> {
        let spec = ModulusSpec::LogReciprocal { l };
        spec.validate()?;
        Ok(spec)
    }

    pub fn tabulated(table: PiecewiseLinear) -> Result<Self> {
        let spec = ModulusSpec::Tabulated { table };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the modulus invariants: positive coefficients, admissible
    /// exponents, and for tables a non-decreasing profile starting at
    /// `(0, 0)`.
    pub fn validate(&self) -> Result<()> {
        match self {
            ModulusSpec::Power { l, alpha } => {
                if !(*l > 0.0) || !l.is_finite() {
                    return argument_err("power modulus needs L > 0");
                }
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return argument_err("power modulus needs alpha in (0, 1]");
                }
            }
            ModulusSpec::Linear { l } | ModulusSpec::LogReciprocal { l } => {
                if !(*l > 0.0) || !l.is_finite() {
                    return argument_err("modulus needs L > 0");
                }
            }
            ModulusSpec::Tabulated { table } => {
                let bps = table.breakpoints();
                if bps[0].0 != 0.0 {
                    return argument_err("tabulated modulus must start at h = 0");
                }
                if bps[0].1 != 0.0 {
                    return argument_err("tabulated modulus must vanish at h = 0");
                }
                if bps.windows(2).any(|w| w[0].1 > w[1].1) {
                    return argument_err("tabulated modulus values must be non-decreasing");
                }
            }
        }
        Ok(())
    }

    /// Evaluates the modulus at `h >= 0`; for `Tabulated`, values beyond the
    /// table end return the tail constant.
    pub fn eval(&self, h: f64) -> Result<f64> {
        if !(h >= 0.0) {
            return domain_err(format!("modulus argument must be non-negative, got {h}"));
        }
        Ok(match self {
            ModulusSpec::Power { l, alpha } => {
                if h == 0.0 {
                    0.0
                } else {
                    l * h.powf(*alpha)
                }
            }
            ModulusSpec::Linear { l } => l * h,
            ModulusSpec::LogReciprocal { l } => {
                if h == 0.0 {
                    0.0
                } else {
                    l / (std::f64::consts::E + 1.0 / h).ln()
                }
            }
            ModulusSpec::Tabulated { table } => {
                let dom = table.domain();
                if h > dom.b() {
                    table.breakpoints().last().unwrap().1
                } else {
                    table.eval_in_domain(h)
                }
            }
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ModulusSpec = serde_json::from_str(text)
            .map_err(|e| crate::error::Error::Argument(format!("bad modulus JSON: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("modulus specs always serialize")
    }
}

/// Convenience free function mirroring the operation vocabulary.
pub fn eval_modulus(w: &ModulusSpec, h: f64) -> Result<f64> {
    w.eval(h)
}
