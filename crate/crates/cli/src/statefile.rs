//! On-disk state format: a single JSON object with per-party dimensions and
//! the flat amplitude vector as [re, im] pairs in big-endian mixed-radix
//! offset order (party 1 most significant).

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use qsep_core::PureState;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

impl StateFile {
    pub fn from_state(state: &PureState, name: Option<String>) -> StateFile {
        StateFile {
            dims: state.dims().to_vec(),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
            name,
        }
    }

    pub fn parse(text: &str) -> Result<StateFile> {
        let file: StateFile = serde_json::from_str(text).context("malformed state file")?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            bail!("state file has no dimensions");
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d < 2) {
            bail!("every party dimension must be at least 2, got {d}");
        }
        let expected: usize = self.dims.iter().product();
        if self.amplitudes.len() != expected {
            bail!(
                "expected {expected} amplitudes for dims {:?}, got {}",
                self.dims,
                self.amplitudes.len()
            );
        }
        for (offset, [re, im]) in self.amplitudes.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                bail!("amplitude at offset {offset} is not finite");
            }
        }
        Ok(())
    }

    /// Builds the in-memory state, enforcing unit norm unless
    /// `allow_unnormalized` is set.
    pub fn to_state(&self, allow_unnormalized: bool) -> Result<PureState> {
        let amps: Vec<Complex64> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let state = if allow_unnormalized {
            PureState::new_unnormalized(self.dims.clone(), amps)
        } else {
            PureState::new(self.dims.clone(), amps)
        };
        state.map_err(|e| anyhow::anyhow!("invalid state: {e}"))
    }
}
