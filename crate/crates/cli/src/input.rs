//! Polynomial input files: `{"coeffs": [[re, im], ...]}` in ascending degree,
//! leading coefficient included.

use std::path::Path;

use lemniscate::poly::MonicPolynomial;
use lemniscate::random::random_monic;
use lemniscate::{Complex64, DeflationRecord, Polynomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::CliError;

/// Largest coefficient modulus of random inputs.
pub const RANDOM_MAX_MODULUS: f64 = 10.0;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyFile {
    coeffs: Vec<[f64; 2]>,
}

/// Monic input together with its origin deflation.
#[derive(Debug, Clone, PartialEq)]
pub struct Input {
    pub source: String,
    pub monic: Polynomial,
    pub deflation: DeflationRecord,
}

impl Input {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, source: &str) -> Result<Self, CliError> {
        let file: PolyFile =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{source}: {e}")))?;
        if file.coeffs.iter().flatten().any(|v| !v.is_finite()) {
            return Err(CliError::Parse(format!("{source}: non-finite coefficient")));
        }
        let all: Vec<Complex64> = file.coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        let monic =
            MonicPolynomial::from_ascending(&all).map_err(|e| CliError::Parse(format!("{source}: {e}")))?;
        Self::from_monic(monic, source)
    }

    /// Seeded random polynomial with coefficient moduli up to 10.
    pub fn random(degree: usize, seed: u64) -> Result<Self, CliError> {
        if degree == 0 {
            return Err(CliError::Parse("random degree must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let monic = random_monic(&mut rng, degree, RANDOM_MAX_MODULUS);
        Self::from_monic(monic, &format!("random(degree={degree}, seed={seed})"))
    }

    pub fn from_monic(monic: Polynomial, source: &str) -> Result<Self, CliError> {
        let deflation = monic
            .deflate_origin()
            .map_err(|e| CliError::Parse(format!("{source}: {e}")))?;
        Ok(Self {
            source: source.to_string(),
            monic,
            deflation,
        })
    }

    /// The polynomial the theorems are applied to.
    pub fn reduced(&self) -> &Polynomial {
        &self.deflation.reduced
    }

    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source,
            "degree": self.monic.degree(),
            "monic_coeffs": crate::json::complexes(&self.monic.to_ascending()),
            "origin_multiplicity": self.deflation.origin_multiplicity,
            "reduced_degree": self.reduced().degree(),
        })
    }
}
