//! Data behind the four reference figures: mass profiles, reduced
//! potentials, and the two transmission curves.
//!
//! Each figure is written as `figN.csv` (metadata lines start with `#`)
//! together with a gnuplot script `figN.gp` that plots it.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lowmomentum::LowMomentumModel;
use crate::physical::{dimensionless, PhysicalParams};
use crate::potential::SquareBarrier;
use crate::transmission::{effective_t_of_h, quantum_t_mixture, CoefficientPair};

/// Uniform grid `lo + (hi - lo) * i / divisions` for `i` in `first..=divisions`.
/// Points are computed from integer indices so every run gives the same bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub divisions: usize,
    /// 0 includes `lo`, 1 starts one step in (open left end).
    pub first: usize,
}

impl Grid {
    pub fn closed(lo: f64, hi: f64, points: usize) -> Self {
        Grid {
            lo,
            hi,
            divisions: points - 1,
            first: 0,
        }
    }

    /// `(lo, hi]` with `points` points.
    pub fn open_left(lo: f64, hi: f64, points: usize) -> Self {
        Grid {
            lo,
            hi,
            divisions: points,
            first: 1,
        }
    }

    pub fn len(&self) -> usize {
        self.divisions + 1 - self.first
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.divisions as f64;
        (self.first..=self.divisions)
            .map(|i| {
                let i = i as f64;
                (self.lo * (n - i) + self.hi * i) / n
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Series {
    /// `M(q)` at the given ħ.
    Mass { hbar: f64 },
    /// `V^Q(q)` at the given ħ and energy.
    ReducedPotential { hbar: f64, eps: f64 },
    /// Effective `t` and `r` as functions of `H`.
    EffectiveCoefficients,
    /// Mixture `t^Q` and `r^Q` as functions of `Q`.
    QuantumCoefficients,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub id: u8,
    pub m: f64,
    pub beta: f64,
    pub barrier: SquareBarrier,
    pub grid: Grid,
    pub abscissa: &'static str,
    pub series: Vec<(&'static str, Series)>,
}

impl FigureSpec {
    /// The reference parameter set for figure `id` (1 to 4).
    pub fn reference(id: u8) -> Result<Self> {
        let base = |grid, abscissa, series| FigureSpec {
            id,
            m: 1.0,
            beta: 0.125,
            barrier: SquareBarrier::reference(),
            grid,
            abscissa,
            series,
        };
        let eps = 0.25;
        Ok(match id {
            1 => base(
                Grid::closed(-30.0, 30.0, 3001),
                "q",
                vec![
                    ("M_hbar10", Series::Mass { hbar: 10.0 }),
                    ("M_hbar30", Series::Mass { hbar: 30.0 }),
                ],
            ),
            2 => base(
                Grid::closed(-4.0, 4.0, 801),
                "q",
                vec![
                    ("VQ_h0", Series::ReducedPotential { hbar: 0.0, eps }),
                    ("VQ_h3", Series::ReducedPotential { hbar: 3.0, eps }),
                    ("VQ_h6", Series::ReducedPotential { hbar: 6.0, eps }),
                ],
            ),
            3 => base(
                Grid::open_left(0.0, 10.0, 500),
                "H",
                vec![
                    ("t", Series::EffectiveCoefficients),
                    ("r", Series::EffectiveCoefficients),
                ],
            ),
            4 => base(
                Grid::open_left(0.0, 10.0, 500),
                "Q",
                vec![
                    ("tQ", Series::QuantumCoefficients),
                    ("rQ", Series::QuantumCoefficients),
                ],
            ),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "no figure {id}; expected 1 to 4"
                )))
            }
        })
    }

    pub fn header(&self) -> Vec<&'static str> {
        std::iter::once(self.abscissa)
            .chain(self.series.iter().map(|s| s.0))
            .collect()
    }
}

/// Computed table: one row per grid point, abscissa first.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub id: u8,
    pub header: Vec<&'static str>,
    pub metadata: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureData {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for line in &self.metadata {
            let _ = writeln!(s, "# {line}");
        }
        let _ = writeln!(s, "{}", self.header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.11e}")).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    pub fn gnuplot_script(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "set datafile separator ','");
        let _ = writeln!(s, "set datafile commentschars '#'");
        let _ = writeln!(s, "set key autotitle columnhead");
        let _ = writeln!(s, "set xlabel '{}'", self.header[0]);
        let plots: Vec<String> = (1..self.header.len())
            .map(|j| {
                let file = if j == 1 {
                    format!("'fig{}.csv'", self.id)
                } else {
                    "''".into()
                };
                format!("{file} using 1:{} with lines dashtype {j}", j + 1)
            })
            .collect();
        let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
        let _ = writeln!(s, "pause mouse close");
        s
    }
}

fn model_for(spec: &FigureSpec, hbar: f64) -> Result<LowMomentumModel> {
    LowMomentumModel::new(PhysicalParams::new(spec.m, spec.beta, hbar)?, spec.barrier)
}

pub fn compute_figure(spec: &FigureSpec) -> Result<FigureData> {
    if spec.grid.divisions == 0 || spec.grid.is_empty() {
        return Err(Error::InvalidParameter("figure grid is empty".into()));
    }
    let xs = spec.grid.points();
    let b = &spec.barrier;
    let mut metadata = vec![
        format!("figure {}", spec.id),
        format!(
            "m = {}, beta = {}, V0 = {}, L = {}",
            spec.m,
            spec.beta,
            b.height(),
            b.half_width()
        ),
    ];
    let mut columns: Vec<Vec<f64>> = vec![xs.clone()];

    for &(label, series) in &spec.series {
        let col: Vec<f64> = match series {
            Series::Mass { hbar } => {
                let md = model_for(spec, hbar)?;
                let d = dimensionless(md.params(), b);
                metadata.push(format!("{label}: hbar = {hbar}, H = {}, Q = {}", d.h, d.q));
                xs.par_iter().map(|&q| md.mass(q)).collect::<Result<_>>()?
            }
            Series::ReducedPotential { hbar, eps } => {
                let md = model_for(spec, hbar)?;
                let d = dimensionless(md.params(), b);
                metadata.push(format!(
                    "{label}: hbar = {hbar}, eps = {eps}, H = {}, Q = {}",
                    d.h, d.q
                ));
                xs.par_iter()
                    .map(|&q| md.vq_potential(q, eps))
                    .collect::<Result<_>>()?
            }
            Series::EffectiveCoefficients => xs
                .iter()
                .map(|&h| CoefficientPair::from_transmission(effective_t_of_h(h)))
                .map(|c| if label.starts_with('r') { c.r() } else { c.t() })
                .collect(),
            Series::QuantumCoefficients => xs
                .par_iter()
                .map(|&q| quantum_t_mixture(q).map(CoefficientPair::from_transmission))
                .map(|c| c.map(|c| if label.starts_with('r') { c.r() } else { c.t() }))
                .collect::<Result<_>>()?,
        };
        columns.push(col);
    }
    let rows = (0..xs.len())
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    Ok(FigureData {
        id: spec.id,
        header: spec.header(),
        metadata,
        rows,
    })
}

/// Write `figN.csv` and `figN.gp` into `out_dir`, creating it if needed.
pub fn emit_figure(spec: &FigureSpec, out_dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let out_dir = out_dir.as_ref();
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let data = compute_figure(spec)?;
    let csv = out_dir.join(format!("fig{}.csv", spec.id));
    let gp = out_dir.join(format!("fig{}.gp", spec.id));
    fs::write(&csv, data.to_csv()).map_err(|e| Error::io(&csv, e))?;
    fs::write(&gp, data.gnuplot_script()).map_err(|e| Error::io(&gp, e))?;
    Ok(vec![csv, gp])
}

pub fn emit_all(out_dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for id in 1..=4 {
        files.extend(emit_figure(&FigureSpec::reference(id)?, out_dir.as_ref())?);
    }
    Ok(files)
}
