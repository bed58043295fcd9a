//! Ring and run configuration.

use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, FiniteField};
use crate::ring::{Doubling, Involution, MatrixRing, TruncatedPoly};

/// A ring literal: variant tag plus parameters.
///
/// ```json
/// {"variant": "truncated_poly", "field": {"p": 3}, "m": 3, "involution": "negate_x"}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum RingSpec {
    TruncatedPoly { field: FieldSpec, m: usize, involution: Involution },
    MatrixRing { field: FieldSpec, n: usize },
    Doubling { field: FieldSpec, n: usize },
}

impl RingSpec {
    pub fn field_spec(&self) -> &FieldSpec {
        match self {
            RingSpec::TruncatedPoly { field, .. } | RingSpec::MatrixRing { field, .. } | RingSpec::Doubling { field, .. } => {
                field
            }
        }
    }

    fn field(&self) -> Result<Arc<FiniteField>> {
        Ok(Arc::new(FiniteField::new(self.field_spec())?))
    }

    pub fn truncated(&self) -> Result<TruncatedPoly> {
        match self {
            RingSpec::TruncatedPoly { m, involution, .. } => TruncatedPoly::new(self.field()?, *m, *involution),
            _ => Err(Error::WrongVariant { expected: "truncated_poly" }),
        }
    }

    pub fn matrix(&self) -> Result<MatrixRing> {
        match self {
            RingSpec::MatrixRing { n, .. } => MatrixRing::new(self.field()?, *n),
            _ => Err(Error::WrongVariant { expected: "matrix_ring" }),
        }
    }

    pub fn doubling(&self) -> Result<Doubling> {
        match self {
            RingSpec::Doubling { n, .. } => Ok(Doubling::new(MatrixRing::new(self.field()?, *n)?)),
            _ => Err(Error::WrongVariant { expected: "doubling" }),
        }
    }

    /// A truncated ring that also satisfies the Weil preconditions.
    pub fn weil_ring(&self) -> Result<TruncatedPoly> {
        let ring = self.truncated()?;
        ring.check_weil()?;
        Ok(ring)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub ring: RingSpec,
    #[serde(default)]
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub output: OutputFormat,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::InvalidRing(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        match &self.ring {
            RingSpec::TruncatedPoly { .. } => self.ring.truncated().map(|_| ()),
            RingSpec::MatrixRing { .. } => self.ring.matrix().map(|_| ()),
            RingSpec::Doubling { .. } => self.ring.doubling().map(|_| ()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_spec_json() {
        let spec: RingSpec =
            serde_json::from_str(r#"{"variant": "truncated_poly", "field": {"p": 3}, "m": 3, "involution": "negate_x"}"#)
                .unwrap();
        assert_eq!(spec.truncated().unwrap().m(), 3);
        assert!(spec.matrix().is_err());
        let back: RingSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        let m: RingSpec = serde_json::from_str(r#"{"variant": "matrix_ring", "field": {"p": 3}, "n": 2}"#).unwrap();
        assert_eq!(m.matrix().unwrap().n(), 2);
    }

    #[test]
    fn validation() {
        let cfg = RunConfig {
            ring: RingSpec::TruncatedPoly { field: FieldSpec::prime(4), m: 3, involution: Involution::NegateX },
            seed: 0,
            samples: 10,
            tolerance: 1e-9,
            output: OutputFormat::Json,
            cache_dir: None,
        };
        assert!(cfg.validate().is_err());
        let ok = RunConfig { ring: RingSpec::TruncatedPoly { field: FieldSpec::prime(3), m: 3, involution: Involution::NegateX }, ..cfg.clone() };
        assert!(ok.validate().is_ok());
        assert!(RunConfig { tolerance: 0.0, ..ok.clone() }.validate().is_err());
        let even = RingSpec::TruncatedPoly { field: FieldSpec::prime(3), m: 2, involution: Involution::NegateX };
        assert!(even.weil_ring().is_err());
    }
}
