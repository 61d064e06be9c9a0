//! Machine-readable reports with a stable schema and deterministic number
//! formatting: every float is serialized with 17 significant digits, which
//! round-trips f64 exactly and keeps reports byte-identical across runs.

use std::io::{self, Write};

use num_complex::Complex64;
use qsep_core::{ConstraintQuad, TwoQubitSpectrum, Verdict, Witness};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dims: Vec<usize>,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<VerdictReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_e: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_invariant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt: Option<SchmidtReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<FactorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entangled_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &'static str, name: Option<String>, dims: Vec<usize>) -> Report {
        Report {
            command,
            name,
            dims,
            tolerances: Tolerances::default(),
            verdicts: None,
            agreement: None,
            d_e: None,
            det_invariant: None,
            schmidt: None,
            factorization: None,
            entangled_residual: None,
            timing_ms: None,
        }
    }
}

/// Tolerances in effect for the command, echoed for auditability.
#[derive(Debug, Serialize)]
pub struct Tolerances {
    pub separability: f64,
    pub factorization: f64,
    pub normalization: f64,
}

impl Default for Tolerances {
    fn default() -> Tolerances {
        Tolerances {
            separability: qsep_core::DEFAULT_TOL,
            factorization: qsep_core::DEFAULT_FACTOR_TOL,
            normalization: qsep_core::DEFAULT_NORM_TOL,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictReport {
    pub method: &'static str,
    pub separable: bool,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
}

impl From<&Verdict> for VerdictReport {
    fn from(v: &Verdict) -> VerdictReport {
        VerdictReport {
            method: v.method.name(),
            separable: v.separable,
            tolerance: v.tolerance,
            witness: v.witness.as_ref().map(WitnessReport::from),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessReport {
    Minor {
        party: usize,
        r1: usize,
        r2: usize,
        c1: usize,
        c2: usize,
        value: [f64; 2],
        magnitude: f64,
    },
    Pair {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residual: f64,
    },
    ImpureMarginal {
        party: usize,
        purity: f64,
    },
}

impl From<&Witness> for WitnessReport {
    fn from(w: &Witness) -> WitnessReport {
        match *w {
            Witness::Minor {
                party,
                r1,
                r2,
                c1,
                c2,
                value,
            } => WitnessReport::Minor {
                party,
                r1,
                r2,
                c1,
                c2,
                value: [value.re, value.im],
                magnitude: value.norm(),
            },
            Witness::Pair {
                quad: ConstraintQuad { i, j, k, l },
                residual,
            } => WitnessReport::Pair {
                i,
                j,
                k,
                l,
                residual,
            },
            Witness::ImpureMarginal { party, purity } => {
                WitnessReport::ImpureMarginal { party, purity }
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SchmidtReport {
    pub epsilon: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl From<TwoQubitSpectrum> for SchmidtReport {
    fn from(s: TwoQubitSpectrum) -> SchmidtReport {
        SchmidtReport {
            epsilon: s.epsilon,
            lambda_plus: s.lambda_plus,
            lambda_minus: s.lambda_minus,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FactorReport {
    pub locals: Vec<Vec<[f64; 2]>>,
    pub global_phase: [f64; 2],
    pub residual: f64,
}

impl FactorReport {
    pub fn new(locals: &[Vec<Complex64>], phase: Complex64, residual: f64) -> FactorReport {
        FactorReport {
            locals: locals
                .iter()
                .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            global_phase: [phase.re, phase.im],
            residual,
        }
    }
}

/// Report for the two-state equivalence command.
#[derive(Debug, Serialize)]
pub struct EquivReport {
    pub command: &'static str,
    pub d_e_a: f64,
    pub d_e_b: f64,
    pub difference: f64,
    pub tolerance: f64,
    pub equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// JSON formatter that writes every f64 as `{:.16e}` (17 significant
/// digits), enough to reproduce the exact bit pattern on parse.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes with the 17-significant-digit float formatter.
pub fn to_json(value: &impl Serialize) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization is infallible");
    String::from_utf8(out).expect("serde_json emits utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_exactly() {
        #[derive(Serialize)]
        struct Probe {
            x: f64,
        }
        for &x in &[
            0.0,
            0.25,
            -1.0 / 3.0,
            std::f64::consts::FRAC_1_SQRT_2,
            1e-300,
            -2.5e17,
        ] {
            let json = to_json(&Probe { x });
            let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
            assert_eq!(
                parsed["x"].as_f64().unwrap().to_bits(),
                x.to_bits(),
                "{json}"
            );
        }
    }

    #[test]
    fn report_omits_absent_sections() {
        let report = Report::new("check", None, vec![2, 2]);
        let json = to_json(&report);
        assert!(json.contains("\"command\":\"check\""));
        assert!(!json.contains("schmidt"));
        assert!(!json.contains("timing_ms"));
    }
}
