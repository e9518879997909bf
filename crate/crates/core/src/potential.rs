//! Classical one-dimensional potentials.
//!
//! Every potential tends to the same constant on both sides; only the
//! deviation from that level is smoothed. At a jump the potential takes the
//! mean of the two sides, so a square barrier of height `V0` equals `V0 / 2`
//! at its edges.

use std::io::Read;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `V0` on `|q| < L`, zero outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareBarrier {
    v0: f64,
    l: f64,
}

impl SquareBarrier {
    pub fn new(v0: f64, half_width: f64) -> Result<Self> {
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "barrier height must be positive, got {v0}"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "barrier half-width must be positive, got {half_width}"
            )));
        }
        Ok(SquareBarrier { v0, l: half_width })
    }

    /// `V0 = 1`, `L = 1/2`.
    pub fn reference() -> Self {
        SquareBarrier { v0: 1.0, l: 0.5 }
    }

    pub fn height(&self) -> f64 {
        self.v0
    }

    pub fn half_width(&self) -> f64 {
        self.l
    }

    pub fn eval(&self, q: f64) -> f64 {
        self.v0 * (step(self.l + q) + step(self.l - q) - 1.0)
    }

    /// `∫ V(q) e^{-ikq} dq = 2 V0 sin(kL) / k`.
    pub fn form_factor(&self, k: f64) -> f64 {
        2.0 * self.v0 * self.l * sinc(k * self.l)
    }

    pub fn to_piecewise(&self) -> PiecewiseConstantPotential {
        PiecewiseConstantPotential {
            breakpoints: vec![-self.l, self.l],
            values: vec![0.0, self.v0, 0.0],
        }
    }
}

fn step(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Piecewise-constant potential: `values[i]` holds between `breakpoints[i-1]`
/// and `breakpoints[i]`; the first and last entries are the asymptotic levels.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstantPotential {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseConstantPotential {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} values for {} breakpoints, got {}",
                breakpoints.len() + 1,
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints
            .iter()
            .chain(values.iter())
            .any(|x| !x.is_finite())
        {
            return Err(Error::InvalidParameter(
                "non-finite breakpoint or value".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if values[0] != values[values.len() - 1] {
            return Err(Error::Unsupported(format!(
                "unequal asymptotic levels {} and {}",
                values[0],
                values[values.len() - 1]
            )));
        }
        Ok(PiecewiseConstantPotential {
            breakpoints,
            values,
        })
    }

    /// Two barriers of height `v0` and width `width`, separated by a well of
    /// width `gap`, centered at the origin.
    pub fn double_barrier(v0: f64, width: f64, gap: f64) -> Result<Self> {
        let outer = gap / 2.0 + width;
        let inner = gap / 2.0;
        PiecewiseConstantPotential::new(
            vec![-outer, -inner, inner, outer],
            vec![0.0, v0, 0.0, v0, 0.0],
        )
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn asymptote(&self) -> f64 {
        self.values[0]
    }

    pub fn eval(&self, q: f64) -> f64 {
        // Index of the first breakpoint strictly greater than q.
        let idx = self.breakpoints.partition_point(|&b| b <= q);
        if idx > 0 && self.breakpoints[idx - 1] == q {
            0.5 * (self.values[idx - 1] + self.values[idx])
        } else {
            self.values[idx]
        }
    }

    /// Sum over finite segments of `(v_i - c) ∫ e^{-ikq} dq`.
    pub fn form_factor(&self, k: f64) -> Complex64 {
        if self.breakpoints.len() < 2 {
            return Complex64::new(0.0, 0.0);
        }
        let c = self.asymptote();
        self.breakpoints
            .windows(2)
            .zip(&self.values[1..self.values.len() - 1])
            .map(|(w, &v)| {
                let mid = 0.5 * (w[0] + w[1]);
                let width = w[1] - w[0];
                Complex64::from_polar(1.0, -k * mid) * ((v - c) * width * sinc(0.5 * k * width))
            })
            .sum()
    }
}

/// Samples joined by linear interpolation; held at the boundary values
/// outside the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl TabulatedPotential {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least two samples with matching lengths (grid {}, values {})",
                grid.len(),
                values.len()
            )));
        }
        if grid.iter().chain(values.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite sample".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "tabulated positions must be strictly increasing".into(),
            ));
        }
        if values[0] != values[values.len() - 1] {
            return Err(Error::Unsupported(format!(
                "unequal asymptotic levels {} and {}",
                values[0],
                values[values.len() - 1]
            )));
        }
        Ok(TabulatedPotential { grid, values })
    }

    /// Two-column CSV: position, value. A header row is optional and lines
    /// starting with `#` are ignored.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let mut grid = Vec::new();
        let mut values = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            if record.len() < 2 {
                return Err(Error::Parse(format!(
                    "row {}: expected two columns",
                    row + 1
                )));
            }
            let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
            match parsed {
                (Ok(x), Ok(v)) => {
                    grid.push(x);
                    values.push(v);
                }
                _ if row == 0 => continue,
                _ => {
                    return Err(Error::Parse(format!(
                        "row {}: cannot parse '{}', '{}'",
                        row + 1,
                        &record[0],
                        &record[1]
                    )))
                }
            }
        }
        TabulatedPotential::new(grid, values)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        TabulatedPotential::from_csv_reader(file)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn asymptote(&self) -> f64 {
        self.values[0]
    }

    pub fn eval(&self, q: f64) -> f64 {
        let n = self.grid.len();
        if q <= self.grid[0] {
            return self.values[0];
        }
        if q >= self.grid[n - 1] {
            return self.values[n - 1];
        }
        let idx = self.grid.partition_point(|&x| x <= q);
        let (x0, x1) = (self.grid[idx - 1], self.grid[idx]);
        let (v0, v1) = (self.values[idx - 1], self.values[idx]);
        v0 + (v1 - v0) * (q - x0) / (x1 - x0)
    }

    /// Trapezoidal Fourier sum on the sample grid.
    pub fn form_factor(&self, k: f64) -> Complex64 {
        let c = self.asymptote();
        let n = self.grid.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 {
                    self.grid[i] - self.grid[i - 1]
                } else {
                    0.0
                };
                let right = if i + 1 < n {
                    self.grid[i + 1] - self.grid[i]
                } else {
                    0.0
                };
                let weight = 0.5 * (left + right);
                Complex64::from_polar(1.0, -k * self.grid[i]) * (weight * (self.values[i] - c))
            })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassicalPotential {
    Square(SquareBarrier),
    Piecewise(PiecewiseConstantPotential),
    Tabulated(TabulatedPotential),
}

impl From<SquareBarrier> for ClassicalPotential {
    fn from(b: SquareBarrier) -> Self {
        ClassicalPotential::Square(b)
    }
}

impl From<PiecewiseConstantPotential> for ClassicalPotential {
    fn from(p: PiecewiseConstantPotential) -> Self {
        ClassicalPotential::Piecewise(p)
    }
}

impl From<TabulatedPotential> for ClassicalPotential {
    fn from(t: TabulatedPotential) -> Self {
        ClassicalPotential::Tabulated(t)
    }
}

impl ClassicalPotential {
    pub fn eval(&self, q: f64) -> f64 {
        match self {
            ClassicalPotential::Square(b) => b.eval(q),
            ClassicalPotential::Piecewise(p) => p.eval(q),
            ClassicalPotential::Tabulated(t) => t.eval(q),
        }
    }

    pub fn asymptote(&self) -> f64 {
        match self {
            ClassicalPotential::Square(_) => 0.0,
            ClassicalPotential::Piecewise(p) => p.asymptote(),
            ClassicalPotential::Tabulated(t) => t.asymptote(),
        }
    }

    pub fn form_factor(&self, k: f64) -> Complex64 {
        match self {
            ClassicalPotential::Square(b) => Complex64::new(b.form_factor(k), 0.0),
            ClassicalPotential::Piecewise(p) => p.form_factor(k),
            ClassicalPotential::Tabulated(t) => t.form_factor(k),
        }
    }

    /// Interval outside which the potential equals its asymptote.
    pub fn support(&self) -> (f64, f64) {
        match self {
            ClassicalPotential::Square(b) => (-b.half_width(), b.half_width()),
            ClassicalPotential::Piecewise(p) => match (p.breakpoints.first(), p.breakpoints.last())
            {
                (Some(&a), Some(&b)) => (a, b),
                _ => (0.0, 0.0),
            },
            ClassicalPotential::Tabulated(t) => (t.grid[0], t.grid[t.grid.len() - 1]),
        }
    }

    /// Positions where the potential or its slope is discontinuous.
    pub fn kinks(&self) -> Vec<f64> {
        match self {
            ClassicalPotential::Square(b) => vec![-b.half_width(), b.half_width()],
            ClassicalPotential::Piecewise(p) => p.breakpoints.clone(),
            ClassicalPotential::Tabulated(t) => t.grid.clone(),
        }
    }

    pub fn max_value(&self) -> f64 {
        match self {
            ClassicalPotential::Square(b) => b.height(),
            ClassicalPotential::Piecewise(p) => p.values.iter().cloned().fold(f64::MIN, f64::max),
            ClassicalPotential::Tabulated(t) => t.values.iter().cloned().fold(f64::MIN, f64::max),
        }
    }

    /// Largest deviation from the asymptotic level; sets the energy scale.
    pub fn energy_scale(&self) -> f64 {
        let c = self.asymptote();
        let dev = match self {
            ClassicalPotential::Square(b) => b.height(),
            ClassicalPotential::Piecewise(p) => {
                p.values.iter().map(|v| (v - c).abs()).fold(0.0, f64::max)
            }
            ClassicalPotential::Tabulated(t) => {
                t.values.iter().map(|v| (v - c).abs()).fold(0.0, f64::max)
            }
        };
        if dev > 0.0 {
            dev
        } else {
            1.0
        }
    }

    /// Piecewise-constant view, when the potential has one.
    pub fn as_piecewise(&self) -> Option<PiecewiseConstantPotential> {
        match self {
            ClassicalPotential::Square(b) => Some(b.to_piecewise()),
            ClassicalPotential::Piecewise(p) => Some(p.clone()),
            ClassicalPotential::Tabulated(_) => None,
        }
    }

    pub fn as_square(&self) -> Option<&SquareBarrier> {
        match self {
            ClassicalPotential::Square(b) => Some(b),
            _ => None,
        }
    }
}
