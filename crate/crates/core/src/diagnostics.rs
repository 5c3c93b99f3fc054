//! Verification metrics and fine-grid reference solutions.

use std::fs;
use std::path::{Path, PathBuf};

use crate::cases::{self, CaseSpec, EndTime};
use crate::error::{Error, Result};
use crate::fast1d;
use crate::flux::SchemeKind;
use crate::io::{self, num};
use crate::solver::{self, Field, Grid, Run, RunOverrides};
use crate::state::{Composition, ModelKind, Primitive};

/// Cell count of the reference solutions.
pub const REFERENCE_CELLS: usize = 10_000;
/// Bumped whenever a change would alter reference results; part of the
/// cache key.
pub const REFERENCE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "-r1");

/// Running raw (unclipped) range of `ρY₁ / ρ` over many fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassFractionBounds {
    pub y_min: f64,
    pub y_max: f64,
}

impl Default for MassFractionBounds {
    fn default() -> Self {
        MassFractionBounds {
            y_min: f64::INFINITY,
            y_max: f64::NEG_INFINITY,
        }
    }
}

impl MassFractionBounds {
    pub fn observe(&mut self, field: &Field) -> Result<()> {
        if field.model.kind != ModelKind::MassFraction {
            return Err(Error::Config(
                "mass-fraction bounds need the mass-fraction model".into(),
            ));
        }
        let k = field.model.extra_index();
        for u in &field.cells {
            let y = u[k] / u[0];
            self.y_min = self.y_min.min(y);
            self.y_max = self.y_max.max(y);
        }
        Ok(())
    }
}

/// Global `(y_min, y_max)` over every cell of every field.
pub fn check_mass_fraction_bounds<'a>(fields: impl IntoIterator<Item = &'a Field>) -> Result<(f64, f64)> {
    let mut b = MassFractionBounds::default();
    for f in fields {
        b.observe(f)?;
    }
    Ok((b.y_min, b.y_max))
}

/// `max |p − p_ex| / max(|p_ex|, 1)` and the same for the velocity vector.
pub fn pressure_oscillation_metric(field: &Field, exact_p: f64, exact_vel: [f64; 2]) -> Result<(f64, f64)> {
    let p_scale = exact_p.abs().max(1.0);
    let v_scale = exact_vel[0].hypot(exact_vel[1]).max(1.0);
    let mut p_osc = 0.0f64;
    let mut u_osc = 0.0f64;
    for n in 0..field.cells.len() {
        let s = field.primitive(n)?;
        p_osc = p_osc.max((s.p - exact_p).abs() / p_scale);
        u_osc = u_osc.max((s.vel[0] - exact_vel[0]).hypot(s.vel[1] - exact_vel[1]) / v_scale);
    }
    Ok((p_osc, u_osc))
}

/// Primitive quantity compared by [`l1_error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    Density,
    Velocity,
    Pressure,
    MassFraction,
    Gamma,
}

impl Variable {
    pub fn of(self, p: &Primitive) -> f64 {
        match (self, p.comp) {
            (Variable::Density, _) => p.rho,
            (Variable::Velocity, _) => p.vel[0],
            (Variable::Pressure, _) => p.p,
            (Variable::MassFraction, Composition::MassFraction { y1 }) => y1,
            (Variable::Gamma, Composition::Gamma { gamma, .. }) => gamma,
            _ => f64::NAN,
        }
    }

    fn column(self) -> &'static str {
        match self {
            Variable::Density => "rho",
            Variable::Velocity => "u",
            Variable::Pressure => "p",
            Variable::MassFraction => "Y",
            Variable::Gamma => "gamma",
        }
    }
}

/// Fine-grid solution stored as primitive profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSolution {
    pub case: String,
    pub scheme: SchemeKind,
    pub cells: usize,
    pub cfl: f64,
    pub grid: Grid,
    pub x: Vec<f64>,
    pub rho: Vec<f64>,
    pub u: Vec<f64>,
    pub p: Vec<f64>,
    /// `Y` or `γ`, depending on the model.
    pub extra: Vec<f64>,
    pub kind: ModelKind,
}

impl ReferenceSolution {
    pub fn from_field(case: &str, scheme: SchemeKind, cfl: f64, field: &Field) -> Result<Self> {
        if field.grid.dims != 1 {
            return Err(Error::Config("reference solutions are 1D".into()));
        }
        let prims = field.primitives()?;
        let extra = match field.model.kind {
            ModelKind::MassFraction => Variable::MassFraction,
            ModelKind::GammaBased => Variable::Gamma,
        };
        Ok(ReferenceSolution {
            case: case.into(),
            scheme,
            cells: field.grid.nx(),
            cfl,
            grid: field.grid,
            x: (0..field.grid.nx()).map(|i| field.grid.center(i, 0)[0]).collect(),
            rho: prims.iter().map(|p| p.rho).collect(),
            u: prims.iter().map(|p| p.vel[0]).collect(),
            p: prims.iter().map(|p| p.p).collect(),
            extra: prims.iter().map(|p| extra.of(p)).collect(),
            kind: field.model.kind,
        })
    }

    pub fn values(&self, var: Variable) -> Result<&[f64]> {
        Ok(match (var, self.kind) {
            (Variable::Density, _) => &self.rho,
            (Variable::Velocity, _) => &self.u,
            (Variable::Pressure, _) => &self.p,
            (Variable::MassFraction, ModelKind::MassFraction) | (Variable::Gamma, ModelKind::GammaBased) => &self.extra,
            _ => return Err(Error::Config(format!("reference has no {} column", var.column()))),
        })
    }

    /// Cell averages over blocks of `ratio` consecutive fine cells.
    pub fn restrict(&self, var: Variable, coarse: usize) -> Result<Vec<f64>> {
        if coarse == 0 || !self.cells.is_multiple_of(coarse) {
            return Err(Error::Resolution(format!(
                "reference has {} cells, not an integer multiple of {coarse}",
                self.cells
            )));
        }
        let ratio = self.cells / coarse;
        Ok(self
            .values(var)?
            .chunks_exact(ratio)
            .map(|c| c.iter().sum::<f64>() / ratio as f64)
            .collect())
    }
}

/// `(1/N) Σ |q_i − q̄_i^ref|` with the reference restricted to the field's grid.
pub fn l1_error(field: &Field, reference: &ReferenceSolution, var: Variable) -> Result<f64> {
    if field.grid.dims != 1 {
        return Err(Error::Resolution("L1 errors are defined for 1D fields".into()));
    }
    if field.grid.extent[0] != reference.grid.extent[0] {
        return Err(Error::Resolution("field and reference cover different domains".into()));
    }
    let n = field.grid.nx();
    let coarse = reference.restrict(var, n)?;
    let mut sum = 0.0;
    for (k, r) in coarse.iter().enumerate() {
        sum += (var.of(&field.primitive(k)?) - r).abs();
    }
    Ok(sum / n as f64)
}

pub fn reference_cache_path(dir: &Path, case: &CaseSpec, cells: usize) -> PathBuf {
    dir.join(format!(
        "{}_n{cells}_cfl{}_v{REFERENCE_VERSION}.csv",
        case.name, case.cfl
    ))
}

fn load_reference(path: &Path, case: &CaseSpec, cells: usize) -> Result<ReferenceSolution> {
    let t = io::read_csv(path)?;
    let kind = case.model;
    let expect = io::csv_header(kind, 1);
    if t.header != expect || t.rows.len() != cells {
        return Err(Error::Parse {
            path: path.into(),
            reason: format!("expected {cells} rows with header {expect:?}"),
        });
    }
    let col = |name: &str| t.column(name).expect("header checked");
    let extra = match kind {
        ModelKind::MassFraction => col("Y"),
        ModelKind::GammaBased => col("gamma"),
    };
    Ok(ReferenceSolution {
        case: case.name.clone(),
        scheme: SchemeKind::Rusanov,
        cells,
        cfl: case.cfl,
        grid: Grid::new(1, &case.extent, &[cells])?,
        x: col("x"),
        rho: col("rho"),
        u: col("u"),
        p: col("p"),
        extra,
        kind,
    })
}

/// Rusanov solution on `cells` cells at the case's CFL and end time. With a
/// cache directory the result is read from, or atomically written to, a
/// CSV file keyed by case, cell count, CFL and code version.
pub fn generate_reference(case: &CaseSpec, cells: usize, cache_dir: Option<&Path>) -> Result<ReferenceSolution> {
    if case.dims != 1 {
        return Err(Error::Config(format!("case '{}' is not 1D", case.name)));
    }
    if let Some(dir) = cache_dir {
        let path = reference_cache_path(dir, case, cells);
        if path.exists() {
            return load_reference(&path, case, cells);
        }
    }
    let ov = RunOverrides {
        cells: Some(vec![cells]),
        ..Default::default()
    };
    let start = cases::sample_initial(case, &solver::case_grid(case, &ov)?)?;
    let field = match case.t_end {
        EndTime::Time(t_end) if fast1d::supports(&start) => fast1d::march(start, case.cfl, t_end)?,
        _ => solver::run_observed(case, SchemeKind::Rusanov, &ov, |_, _| {})?.field,
    };
    let reference = ReferenceSolution::from_field(&case.name, SchemeKind::Rusanov, case.cfl, &field)?;
    if let Some(dir) = cache_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = reference_cache_path(dir, case, cells);
        let text = io::csv_string(&field, None)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
        std::io::Write::write_all(&mut tmp, text.as_bytes()).map_err(|e| Error::io(tmp.path(), e))?;
        tmp.persist(&path).map_err(|e| Error::io(&path, e.error))?;
        // later readers see the rounded CSV values; keep this result consistent
        return load_reference(&path, case, cells);
    }
    Ok(reference)
}

/// Fixed-order metric set written by [`write_metrics`]. Unavailable entries
/// are `None` and printed as `nan`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Metrics {
    pub y_min: Option<f64>,
    pub y_max: Option<f64>,
    pub p_osc: Option<f64>,
    pub u_osc: Option<f64>,
    pub l1_rho: Option<f64>,
    pub l1_p: Option<f64>,
    pub cons_residual: Option<f64>,
}

impl Metrics {
    pub const KEYS: [&'static str; 7] = ["y_min", "y_max", "p_osc", "u_osc", "l1_rho", "l1_p", "cons_residual"];

    pub fn values(&self) -> [Option<f64>; 7] {
        [
            self.y_min,
            self.y_max,
            self.p_osc,
            self.u_osc,
            self.l1_rho,
            self.l1_p,
            self.cons_residual,
        ]
    }

    pub fn to_text(&self) -> String {
        Metrics::KEYS
            .iter()
            .zip(self.values())
            .map(|(k, v)| format!("{k}={}\n", v.map_or_else(|| "nan".to_string(), num)))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Metrics> {
        let mut vals = [None; 7];
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("bad metrics line '{line}'")))?;
            let idx = Metrics::KEYS
                .iter()
                .position(|key| *key == k.trim())
                .ok_or_else(|| Error::Config(format!("unknown metric '{k}'")))?;
            let x: f64 = v
                .trim()
                .parse()
                .map_err(|e| Error::Config(format!("metric {k}: {e}")))?;
            vals[idx] = (!x.is_nan()).then_some(x);
        }
        let [y_min, y_max, p_osc, u_osc, l1_rho, l1_p, cons_residual] = vals;
        Ok(Metrics {
            y_min,
            y_max,
            p_osc,
            u_osc,
            l1_rho,
            l1_p,
            cons_residual,
        })
    }
}

pub fn write_metrics(metrics: &Metrics, path: &Path) -> Result<()> {
    fs::write(path, metrics.to_text()).map_err(|e| Error::io(path, e))
}

/// Runs `case` and gathers its metrics. Mass-fraction bounds and, for cases
/// with a known uniform exact flow, the oscillation metrics are maxima over
/// space and time including the initial field. L1 errors need a reference;
/// `cons_residual` is the run's cumulative ledger residual.
pub fn run_with_metrics(
    case: &CaseSpec,
    scheme: SchemeKind,
    overrides: &RunOverrides,
    reference: Option<&ReferenceSolution>,
) -> Result<(Run, Metrics)> {
    let start = cases::sample_initial(case, &solver::case_grid(case, overrides)?)?;
    let mf = start.model.kind == ModelKind::MassFraction;
    let mut bounds = MassFractionBounds::default();
    let mut osc: Option<(f64, f64)> = None;
    let mut failure = None;
    let mut observe = |f: &Field| {
        let r = (|| {
            if mf {
                bounds.observe(f)?;
            }
            if let Some(ex) = case.exact_uniform {
                let (p, u) = pressure_oscillation_metric(f, ex.p, ex.vel)?;
                let (p0, u0) = osc.unwrap_or((0.0, 0.0));
                osc = Some((p0.max(p), u0.max(u)));
            }
            Ok(())
        })();
        if let Err(e) = r {
            failure.get_or_insert(e);
        }
    };
    observe(&start);
    let run = solver::run_observed(case, scheme, overrides, |f, _| observe(f))?;
    if let Some(e) = failure {
        return Err(e);
    }
    let l1 = |var| reference.map(|r| l1_error(&run.field, r, var)).transpose();
    let metrics = Metrics {
        y_min: mf.then_some(bounds.y_min),
        y_max: mf.then_some(bounds.y_max),
        p_osc: osc.map(|o| o.0),
        u_osc: osc.map(|o| o.1),
        l1_rho: l1(Variable::Density)?,
        l1_p: l1(Variable::Pressure)?,
        cons_residual: Some(run.ledger.residual()),
    };
    Ok((run, metrics))
}

/// Reference for `case` at the default resolution, honouring a cache.
pub fn reference_for(case_name: &str, cache_dir: Option<&Path>) -> Result<ReferenceSolution> {
    generate_reference(&cases::get_case(case_name)?, REFERENCE_CELLS, cache_dir)
}
