//! Run configuration shared by the command-line tool and the examples.
//!
//! Values come from a JSON file, then command-line flags override them field
//! by field. Anything still unset falls back to the reference parameters
//! (`m = 1`, `β = 1/8`, `ħ = 3`, `L = 1/2`, `V0 = 1`).

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::physical::PhysicalParams;
use crate::potential::{ClassicalPotential, SquareBarrier, TabulatedPotential};
use crate::quadrature::QuadratureConfig;

pub const DEFAULT_M: f64 = 1.0;
pub const DEFAULT_BETA: f64 = 0.125;
pub const DEFAULT_HBAR: f64 = 3.0;
pub const DEFAULT_HALF_WIDTH: f64 = 0.5;
pub const DEFAULT_V0: f64 = 1.0;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub m: Option<f64>,
    pub beta: Option<f64>,
    pub hbar: Option<f64>,
    /// Barrier half-width.
    #[serde(rename = "L")]
    pub half_width: Option<f64>,
    #[serde(rename = "V0")]
    pub v0: Option<f64>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub tail_sigmas: Option<f64>,
    /// Tabulated potential used instead of the square barrier.
    pub potential_csv: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_json_str(&text)?;
        // Relative CSV paths are taken relative to the config file.
        if let (Some(csv), Some(dir)) = (cfg.potential_csv.as_mut(), path.parent()) {
            if csv.is_relative() {
                *csv = dir.join(&*csv);
            }
        }
        Ok(cfg)
    }

    /// Fields set in `over` replace ours.
    pub fn overridden_by(self, over: RunConfig) -> RunConfig {
        RunConfig {
            m: over.m.or(self.m),
            beta: over.beta.or(self.beta),
            hbar: over.hbar.or(self.hbar),
            half_width: over.half_width.or(self.half_width),
            v0: over.v0.or(self.v0),
            rel_tol: over.rel_tol.or(self.rel_tol),
            abs_tol: over.abs_tol.or(self.abs_tol),
            tail_sigmas: over.tail_sigmas.or(self.tail_sigmas),
            potential_csv: over.potential_csv.or(self.potential_csv),
        }
    }

    pub fn physical(&self) -> Result<PhysicalParams> {
        PhysicalParams::new(
            self.m.unwrap_or(DEFAULT_M),
            self.beta.unwrap_or(DEFAULT_BETA),
            self.hbar.unwrap_or(DEFAULT_HBAR),
        )
    }

    pub fn barrier(&self) -> Result<SquareBarrier> {
        SquareBarrier::new(
            self.v0.unwrap_or(DEFAULT_V0),
            self.half_width.unwrap_or(DEFAULT_HALF_WIDTH),
        )
    }

    pub fn potential(&self) -> Result<ClassicalPotential> {
        match &self.potential_csv {
            Some(path) => Ok(TabulatedPotential::from_csv_path(path)?.into()),
            None => Ok(self.barrier()?.into()),
        }
    }

    pub fn quadrature(&self) -> Result<QuadratureConfig> {
        let mut q = QuadratureConfig::default();
        if let Some(v) = self.rel_tol {
            q = q.with_rel_tol(v);
        }
        if let Some(v) = self.abs_tol {
            q = q.with_abs_tol(v);
        }
        if let Some(v) = self.tail_sigmas {
            q = q.with_tail_sigmas(v);
        }
        q.validate()?;
        Ok(q)
    }

    /// `# key = value` lines describing the resolved parameters.
    pub fn metadata(&self) -> Result<Vec<String>> {
        let p = self.physical()?;
        let mut lines = vec![format!(
            "m = {}, beta = {}, hbar = {}",
            p.m(),
            p.beta(),
            p.hbar()
        )];
        match &self.potential_csv {
            Some(path) => lines.push(format!("potential = {}", path.display())),
            None => {
                let b = self.barrier()?;
                let d = crate::physical::dimensionless(&p, &b);
                lines.push(format!("V0 = {}, L = {}", b.height(), b.half_width()));
                lines.push(format!("H = {}, Q = {}", d.h, d.q));
            }
        }
        let q = self.quadrature()?;
        lines.push(format!(
            "rel_tol = {:e}, abs_tol = {:e}, tail_sigmas = {}",
            q.rel_tol, q.abs_tol, q.tail_sigmas
        ));
        Ok(lines)
    }
}
