//! On-disk state format.
//!
//! ```json
//! {
//!   "version": 1,
//!   "kind": "pure",
//!   "m": 1,
//!   "data": [
//!     [7.0710678118654757e-1, 0.0000000000000000e0],
//!     [7.0710678118654757e-1, 0.0000000000000000e0]
//!   ]
//! }
//! ```
//!
//! `data` holds `2^m` amplitudes (pure) or the `4^m` row-major density
//! matrix entries (mixed), each as `[re, im]`. Numbers are written with 17
//! significant digits so every `f64` survives a round trip.

use std::fmt::Write as _;
use std::path::Path;

use mtangle::{Complex64, Density, Operator, State};
use serde::Deserialize;

use crate::error::{input, CliResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub version: u32,
    pub kind: Kind,
    pub m: usize,
    pub data: Vec<[f64; 2]>,
}

/// A parsed and validated state.
#[derive(Debug, Clone)]
pub enum LoadedState {
    Pure(State),
    Mixed(Density),
}

impl LoadedState {
    pub fn num_qubits(&self) -> usize {
        match self {
            LoadedState::Pure(s) => s.num_qubits(),
            LoadedState::Mixed(r) => r.num_qubits(),
        }
    }
}

fn to_pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

impl StateFile {
    pub fn from_pure(state: &State) -> Self {
        Self {
            version: FORMAT_VERSION,
            kind: Kind::Pure,
            m: state.num_qubits(),
            data: to_pairs(state.amplitudes()),
        }
    }

    pub fn from_mixed(rho: &Density) -> Self {
        Self {
            version: FORMAT_VERSION,
            kind: Kind::Mixed,
            m: rho.num_qubits(),
            data: to_pairs(rho.matrix().as_slice()),
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| input(format!("malformed state file: {e}")))
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Serialized text, 17 significant digits per number.
    pub fn to_text(&self) -> String {
        let kind = match self.kind {
            Kind::Pure => "pure",
            Kind::Mixed => "mixed",
        };
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\n  \"version\": {},\n  \"kind\": \"{kind}\",\n  \"m\": {},\n  \"data\": [",
            self.version, self.m
        );
        for (i, [re, im]) in self.data.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            let _ = write!(out, "{sep}\n    [{re:.16e}, {im:.16e}]");
        }
        out.push_str("\n  ]\n}\n");
        out
    }

    /// Checks the header and builds the validated state.
    pub fn load(&self) -> CliResult<LoadedState> {
        if self.version != FORMAT_VERSION {
            return Err(input(format!("unsupported format version {}", self.version)));
        }
        if self.m == 0 || self.m > 16 {
            return Err(input(format!("m = {} is out of range", self.m)));
        }
        let entries: Vec<Complex64> = self.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        let dim = 1usize << self.m;
        match self.kind {
            Kind::Pure => {
                if entries.len() != dim {
                    return Err(input(format!("pure state with m = {} needs {dim} entries, got {}", self.m, entries.len())));
                }
                Ok(LoadedState::Pure(State::new(entries).map_err(input)?))
            }
            Kind::Mixed => {
                if entries.len() != dim * dim {
                    return Err(input(format!(
                        "mixed state with m = {} needs {} entries, got {}",
                        self.m,
                        dim * dim,
                        entries.len()
                    )));
                }
                let matrix = Operator::new(dim, dim, entries).map_err(input)?;
                Ok(LoadedState::Mixed(Density::new(matrix).map_err(input)?))
            }
        }
    }
}

pub fn load_path(path: &Path) -> CliResult<LoadedState> {
    StateFile::read(path)?.load()
}
