//! Tabulated data behind each figure: parameter sweeps evaluated in parallel
//! and returned in grid order with fixed column names.

use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::{
    distribution_maxima, legendre_distribution, DeviationLattice, Truncation,
};
use crate::energetics::{
    concurrence_from_energy_moments, cumulants, ohmic_uncertainties, slope_ratio_r,
    DEFAULT_CUTOFF_RATIO, DEFAULT_FIT_ORDER,
};
use crate::entanglement::{
    concurrence_from_correlation_energy, correlation_energy_from_concurrence,
    entropy_vs_correlation_energy, uncertainties, EntropyMode, InversionMode, UncertaintyPair,
};
use crate::error::{domain, Error, Result};
use crate::model::{
    correlation_energy, params_from_correlation_energy, CouplingParams, MAX_CORRELATION_ENERGY,
};
use crate::special::linspace;

/// Largest coupling reached by sweeps over K.
pub const K_SWEEP_MAX: f64 = 0.5 - 1e-6;

/// Maxima of the first six level probabilities printed with the contour plots.
pub const CAPTION_MAXIMA: [f64; 6] = [0.942809, 0.249761, 0.190042, 0.105418, 0.103428, 0.0669486];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepParameter {
    K,
    #[serde(rename = "chi")]
    Chi,
    Ecorr,
    #[serde(rename = "concurrence")]
    Concurrence,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::K => "K",
            SweepParameter::Chi => "chi",
            SweepParameter::Ecorr => "Ecorr",
            SweepParameter::Concurrence => "concurrence",
        }
    }

    /// Default sweep range for this parameter.
    pub fn default_range(&self) -> (f64, f64) {
        match self {
            SweepParameter::K => (0.0, K_SWEEP_MAX),
            SweepParameter::Chi => (0.02, 0.999),
            SweepParameter::Ecorr => (0.0, 0.62),
            SweepParameter::Concurrence => (0.0, 0.999),
        }
    }

    /// The model point at parameter value `v`.
    pub fn params(&self, v: f64) -> Result<CouplingParams> {
        match self {
            SweepParameter::K => CouplingParams::from_k(v.min(K_SWEEP_MAX)),
            SweepParameter::Chi => CouplingParams::from_chi(v),
            SweepParameter::Ecorr => params_from_correlation_energy(v),
            SweepParameter::Concurrence => params_from_correlation_energy(
                correlation_energy_from_concurrence(v, InversionMode::ExactRoot)?,
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FigureId {
    /// Entropy against correlation energy.
    EntropyVsEnergy,
    /// Concurrence against correlation energy.
    ConcurrenceVsEnergy,
    /// Level probabilities over a (Δq, Δp) lattice with both model curves.
    Distributions,
    /// Second energy cumulant of both models.
    SecondCumulant,
    /// Slope ratio R(χ).
    SlopeDifference,
    /// Concurrence of both models from energy moments.
    ConcurrenceCompare,
}

impl FigureId {
    pub fn name(&self) -> &'static str {
        match self {
            FigureId::EntropyVsEnergy => "1",
            FigureId::ConcurrenceVsEnergy => "2",
            FigureId::Distributions => "distributions",
            FigureId::SecondCumulant => "cum2",
            FigureId::SlopeDifference => "diff",
            FigureId::ConcurrenceCompare => "conc-compare",
        }
    }

    pub fn columns(&self) -> &'static [&'static str] {
        match self {
            FigureId::EntropyVsEnergy => &[
                "ecorr",
                "chi",
                "entropy",
                "entropy_small_expansion",
                "entropy_divergent_expansion",
            ],
            FigureId::ConcurrenceVsEnergy => &[
                "ecorr",
                "chi",
                "concurrence",
                "ecorr_from_small_expansion",
                "ecorr_from_large_expansion",
            ],
            FigureId::Distributions => &["series", "chi", "dq", "dp", "l", "probability"],
            FigureId::SecondCumulant => &["chi", "beta", "cum2_moshinsky", "cum2_ohmic"],
            FigureId::SlopeDifference => &[
                "chi",
                "slope_moshinsky",
                "slope_ohmic",
                "r",
                "fit_residual_moshinsky",
                "fit_residual_ohmic",
            ],
            FigureId::ConcurrenceCompare => {
                &["chi", "beta", "concurrence_moshinsky", "concurrence_ohmic"]
            }
        }
    }

    /// Parameter and range used when none is given.
    pub fn default_sweep(&self) -> (SweepParameter, f64, f64) {
        match self {
            FigureId::EntropyVsEnergy | FigureId::ConcurrenceVsEnergy => {
                (SweepParameter::Ecorr, 0.0, 0.62)
            }
            FigureId::SlopeDifference => (SweepParameter::Chi, 0.02, 0.95),
            _ => (SweepParameter::Chi, 0.02, 0.999),
        }
    }
}

impl std::str::FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "1" => FigureId::EntropyVsEnergy,
            "2" => FigureId::ConcurrenceVsEnergy,
            "distributions" => FigureId::Distributions,
            "cum2" => FigureId::SecondCumulant,
            "diff" => FigureId::SlopeDifference,
            "conc-compare" => FigureId::ConcurrenceCompare,
            other => return Err(Error::InvalidArgument(format!("unknown figure '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub cutoff_ratio: f64,
    pub cumulant_order: usize,
    pub truncation_tol: f64,
    pub lattice: DeviationLattice,
    /// Number of level probabilities in the distribution tables.
    pub levels: usize,
}

impl SweepConfig {
    pub fn for_figure(id: FigureId) -> Self {
        let (parameter, lo, hi) = id.default_sweep();
        Self {
            parameter,
            lo,
            hi,
            points: 200,
            cutoff_ratio: DEFAULT_CUTOFF_RATIO,
            cumulant_order: DEFAULT_FIT_ORDER,
            truncation_tol: 1e-12,
            lattice: DeviationLattice::default(),
            levels: 6,
        }
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        if self.points < 2 {
            return Err(Error::InvalidArgument(format!(
                "a sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.lo < self.hi) {
            return Err(Error::InvalidArgument(format!(
                "sweep needs lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        let hi = match self.parameter {
            SweepParameter::K => self.hi.min(K_SWEEP_MAX),
            _ => self.hi,
        };
        let grid = linspace(self.lo, hi, self.points);
        // Fail early on the endpoints rather than midway through a sweep.
        self.parameter.params(grid[0])?;
        self.parameter.params(grid[grid.len() - 1])?;
        Ok(grid)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(&'static str),
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureTable {
    pub figure: FigureId,
    pub config: SweepConfig,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

fn nums(values: &[f64]) -> Vec<Cell> {
    values.iter().map(|&v| Cell::Num(v)).collect()
}

fn rows_in_parallel(
    grid: &[f64],
    f: impl Fn(f64) -> Result<Vec<Cell>> + Sync,
) -> Result<Vec<Vec<Cell>>> {
    grid.par_iter().map(|&v| f(v)).collect()
}

pub fn figure_table(id: FigureId, config: &SweepConfig) -> Result<FigureTable> {
    if !(config.cutoff_ratio > 1.0) {
        return Err(domain("cutoff ratio", config.cutoff_ratio, "(1, inf)"));
    }
    let grid = config.grid()?;
    let param = config.parameter;
    let rows = match id {
        FigureId::EntropyVsEnergy => rows_in_parallel(&grid, |v| {
            let p = param.params(v)?;
            let e = correlation_energy(&p).min(MAX_CORRELATION_ENERGY * (1.0 - 1e-16));
            Ok(nums(&[
                e,
                p.chi(),
                entropy_vs_correlation_energy(e, EntropyMode::Exact)?,
                entropy_vs_correlation_energy(e, EntropyMode::SmallExpansion)?,
                entropy_vs_correlation_energy(e, EntropyMode::DivergentExpansion)?,
            ]))
        })?,
        FigureId::ConcurrenceVsEnergy => rows_in_parallel(&grid, |v| {
            let p = param.params(v)?;
            let e = correlation_energy(&p).min(MAX_CORRELATION_ENERGY * (1.0 - 1e-16));
            let c = concurrence_from_correlation_energy(e)?;
            Ok(nums(&[
                e,
                p.chi(),
                c,
                correlation_energy_from_concurrence(c, InversionMode::SmallExpansion)?,
                correlation_energy_from_concurrence(c, InversionMode::LargeExpansion)?,
            ]))
        })?,
        FigureId::Distributions => distribution_rows(&grid, config)?,
        FigureId::SecondCumulant => rows_in_parallel(&grid, |v| {
            let p = param.params(v)?;
            let exact = cumulants(&uncertainties(&p), 2)?.second();
            let ohmic = cumulants(&ohmic_uncertainties(p.beta(), config.cutoff_ratio)?, 2)?.second();
            Ok(nums(&[p.chi(), p.beta(), exact, ohmic]))
        })?,
        FigureId::SlopeDifference => rows_in_parallel(&grid, |v| {
            let p = param.params(v)?;
            let s = slope_ratio_r(p.chi(), config.cumulant_order, config.cutoff_ratio)?;
            Ok(nums(&[
                p.chi(),
                s.exact.slope,
                s.ohmic.slope,
                s.r,
                s.exact.residual,
                s.ohmic.residual,
            ]))
        })?,
        FigureId::ConcurrenceCompare => rows_in_parallel(&grid, |v| {
            let p = param.params(v)?;
            let exact = concurrence_from_energy_moments(&uncertainties(&p))?;
            let ohmic = concurrence_from_energy_moments(&ohmic_uncertainties(
                p.beta(),
                config.cutoff_ratio,
            )?)?;
            Ok(nums(&[p.chi(), p.beta(), exact, ohmic]))
        })?,
    };
    Ok(FigureTable {
        figure: id,
        config: config.clone(),
        columns: id.columns().to_vec(),
        rows,
    })
}

fn distribution_rows(grid: &[f64], config: &SweepConfig) -> Result<Vec<Vec<Cell>>> {
    if config.levels == 0 {
        return Err(Error::InvalidArgument("levels must be positive".into()));
    }
    let truncation = Truncation::Fixed(config.levels - 1);
    let emit = |series: &'static str, chi: Option<f64>, u: &UncertaintyPair| -> Result<Vec<Vec<Cell>>> {
        let d = legendre_distribution(u, truncation)?;
        Ok(d.probs
            .iter()
            .enumerate()
            .map(|(l, &prob)| {
                vec![
                    Cell::Text(series),
                    chi.map_or(Cell::Empty, Cell::Num),
                    Cell::Num(u.dq2.sqrt()),
                    Cell::Num(u.dp2.sqrt()),
                    Cell::Int(l),
                    Cell::Num(prob),
                ]
            })
            .collect())
    };
    let lattice: Vec<Vec<Vec<Cell>>> = config
        .lattice
        .physical_points()?
        .par_iter()
        .map(|u| emit("grid", None, u))
        .collect::<Result<_>>()?;
    let curves: Vec<Vec<Vec<Cell>>> = grid
        .par_iter()
        .map(|&v| {
            let p = config.parameter.params(v)?;
            let mut rows = emit("moshinsky", Some(p.chi()), &uncertainties(&p))?;
            let ohmic = ohmic_uncertainties(p.beta(), config.cutoff_ratio)?;
            rows.extend(emit("ohmic", Some(p.chi()), &ohmic)?);
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(lattice.into_iter().chain(curves).flatten().collect())
}

/// Level-probability maxima on a lattice next to the printed caption values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaptionComparison {
    pub lattice: DeviationLattice,
    pub maxima: Vec<f64>,
    pub caption: Vec<f64>,
    /// Largest relative deviation over levels l ≥ 1.
    pub worst_excited_deviation: f64,
}

pub fn caption_comparison(lattice: &DeviationLattice) -> Result<CaptionComparison> {
    let maxima = distribution_maxima(lattice, CAPTION_MAXIMA.len())?;
    let worst = maxima
        .iter()
        .zip(CAPTION_MAXIMA)
        .skip(1)
        .map(|(m, c)| ((m - c) / c).abs())
        .fold(0.0, f64::max);
    Ok(CaptionComparison {
        lattice: *lattice,
        maxima,
        caption: CAPTION_MAXIMA.to_vec(),
        worst_excited_deviation: worst,
    })
}

/// Searches a family of lattices for the one whose maxima best match the
/// caption on levels l ≥ 1.
pub fn best_fit_caption_lattice() -> Result<CaptionComparison> {
    let mut candidates = Vec::new();
    for lo in [0.1, 0.2, 0.3, 0.4, 0.5] {
        for hi in [2.0, 2.5, 3.0, 3.5, 4.0, 5.0] {
            for step in [0.05, 0.1, 0.25, 0.5] {
                candidates.push(DeviationLattice { lo, hi, step });
            }
        }
    }
    let results: Vec<CaptionComparison> = candidates
        .par_iter()
        .map(caption_comparison)
        .collect::<Result<_>>()?;
    results
        .into_iter()
        .min_by(|a, b| a.worst_excited_deviation.total_cmp(&b.worst_excited_deviation))
        .ok_or_else(|| Error::InvalidArgument("empty lattice family".into()))
}
