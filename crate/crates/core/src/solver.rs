//! Structured-grid finite-volume time marching.
//!
//! First-order forward Euler with transmissive boundaries. In 2D both axes'
//! flux differences come from the same time level and are applied in one
//! update. For the γ-based model the advected pair is updated in
//! quasi-conservative form, with the face velocity from the flux kernel.

use crate::cases::{self, CaseSpec, EndTime};
use crate::error::{Error, Location, Result};
use crate::flux::{interface_flux, InterfaceFlux, SchemeKind};
use crate::state::{Axis, CellView, Conserved, Model, ModelKind, Primitive, MAX_VARS};

/// Steady cases stop once `max |U^{n+1} − U^n| / dt` falls below this.
pub const STEADY_TOLERANCE: f64 = 1e-12;
/// Step cap for steady cases.
pub const STEADY_STEP_CAP: usize = 100_000;

/// Uniform structured grid on `[0, Lx] (× [0, Ly])`. A 1D grid is stored as
/// one row of unit depth so cell volumes and face areas need no special
/// case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub dims: usize,
    pub extent: [f64; 2],
    pub cells: [usize; 2],
    pub dx: [f64; 2],
}

impl Grid {
    pub fn new(dims: usize, extent: &[f64], cells: &[usize]) -> Result<Grid> {
        if dims != 1 && dims != 2 {
            return Err(Error::Config(format!("dimensionality must be 1 or 2, got {dims}")));
        }
        if extent.len() != dims || cells.len() != dims {
            return Err(Error::Config(format!(
                "{dims}D grid needs {dims} extents and cell counts, got {extent:?} and {cells:?}"
            )));
        }
        let mut g = Grid {
            dims,
            extent: [1.0; 2],
            cells: [1; 2],
            dx: [1.0; 2],
        };
        for d in 0..dims {
            if cells[d] < 3 {
                return Err(Error::Config(format!(
                    "need at least 3 cells per axis, got {}",
                    cells[d]
                )));
            }
            if !(extent[d] > 0.0) || !extent[d].is_finite() {
                return Err(Error::Config(format!("extent must be positive, got {}", extent[d])));
            }
            g.extent[d] = extent[d];
            g.cells[d] = cells[d];
            g.dx[d] = extent[d] / cells[d] as f64;
        }
        Ok(g)
    }

    pub fn one_d(length: f64, n: usize) -> Result<Grid> {
        Grid::new(1, &[length], &[n])
    }

    pub fn two_d(extent: [f64; 2], cells: [usize; 2]) -> Result<Grid> {
        Grid::new(2, &extent, &cells)
    }

    pub fn nx(&self) -> usize {
        self.cells[0]
    }

    pub fn ny(&self) -> usize {
        self.cells[1]
    }

    pub fn len(&self) -> usize {
        self.cells[0] * self.cells[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major index, x fastest.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.cells[0] + i
    }

    pub fn center(&self, i: usize, j: usize) -> [f64; 2] {
        [(i as f64 + 0.5) * self.dx[0], (j as f64 + 0.5) * self.dx[1]]
    }

    pub fn cell_volume(&self) -> f64 {
        self.dx[0] * self.dx[1]
    }

    pub fn face_area(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.dx[1],
            Axis::Y => self.dx[0],
        }
    }
}

/// Cell averages over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub model: Model,
    pub grid: Grid,
    pub cells: Vec<Conserved>,
}

impl Field {
    /// Checks sizes and that every cell decodes to a valid state.
    pub fn new(model: Model, grid: Grid, cells: Vec<Conserved>) -> Result<Field> {
        if model.dims != grid.dims {
            return Err(Error::Config(format!("{}D model on a {}D grid", model.dims, grid.dims)));
        }
        if cells.len() != grid.len() {
            return Err(Error::Config(format!(
                "field has {} cells, grid has {}",
                cells.len(),
                grid.len()
            )));
        }
        let field = Field { model, grid, cells };
        for (n, u) in field.cells.iter().enumerate() {
            if u.len() != model.nvars() {
                return Err(Error::Config(format!(
                    "cell {n} has {} variables, model needs {}",
                    u.len(),
                    model.nvars()
                )));
            }
            model.view(u, Axis::X).map_err(|e| e.at(field.location(n)))?;
        }
        Ok(field)
    }

    pub fn uniform(model: Model, grid: Grid, state: &Primitive) -> Result<Field> {
        let u = model.to_conserved(state)?;
        Field::new(model, grid, vec![u; grid.len()])
    }

    pub fn get(&self, i: usize, j: usize) -> &Conserved {
        &self.cells[self.grid.index(i, j)]
    }

    pub fn location(&self, n: usize) -> Location {
        Location::Cell {
            i: n % self.grid.nx(),
            j: n / self.grid.nx(),
        }
    }

    pub fn primitive(&self, n: usize) -> Result<Primitive> {
        self.model
            .to_primitive(&self.cells[n])
            .map_err(|e| e.at(self.location(n)))
    }

    pub fn primitives(&self) -> Result<Vec<Primitive>> {
        (0..self.cells.len()).map(|n| self.primitive(n)).collect()
    }

    /// Domain integral of each conserved slot (compensated summation).
    pub fn totals(&self) -> [f64; MAX_VARS] {
        let mut sums = [Neumaier::default(); MAX_VARS];
        for u in &self.cells {
            for (s, &v) in sums.iter_mut().zip(u.raw()) {
                s.add(v);
            }
        }
        let vol = self.grid.cell_volume();
        sums.map(|s| s.value() * vol)
    }

    /// Domain integral of `|U_k|`, the scale for relative ledger checks.
    pub fn abs_totals(&self) -> [f64; MAX_VARS] {
        let mut out = [0.0; MAX_VARS];
        for u in &self.cells {
            for (o, &v) in out.iter_mut().zip(u.raw()) {
                *o += v.abs();
            }
        }
        out.map(|s| s * self.grid.cell_volume())
    }
}

/// Kahan-Babuška-Neumaier compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Ghost cells for transmissive boundaries: each copies the adjacent
/// interior cell. `x_lo[j]` sits left of cell `(0, j)`, `y_lo[i]` below
/// cell `(i, 0)`; the y layers are empty in 1D.
#[derive(Debug, Clone, PartialEq)]
pub struct GhostLayers {
    pub x_lo: Vec<Conserved>,
    pub x_hi: Vec<Conserved>,
    pub y_lo: Vec<Conserved>,
    pub y_hi: Vec<Conserved>,
}

pub fn apply_boundary(field: &Field) -> GhostLayers {
    let g = &field.grid;
    let (nx, ny) = (g.nx(), g.ny());
    let mut out = GhostLayers {
        x_lo: (0..ny).map(|j| *field.get(0, j)).collect(),
        x_hi: (0..ny).map(|j| *field.get(nx - 1, j)).collect(),
        y_lo: Vec::new(),
        y_hi: Vec::new(),
    };
    if g.dims == 2 {
        out.y_lo = (0..nx).map(|i| *field.get(i, 0)).collect();
        out.y_hi = (0..nx).map(|i| *field.get(i, ny - 1)).collect();
    }
    out
}

fn check_cfl(cfl: f64) -> Result<()> {
    if cfl > 0.0 && cfl <= 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("CFL must lie in (0, 1], got {cfl}")))
    }
}

/// `cfl · min over cells and axes of Δ/(|v_n| + a)`.
pub fn compute_dt(field: &Field, cfl: f64) -> Result<f64> {
    check_cfl(cfl)?;
    let limit = Stepper::new(field.clone())?.stats.dt_limit;
    Ok(cfl * limit)
}

/// Diagnostics of one accepted step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    /// 1-based step number.
    pub step: usize,
    /// Time after the step.
    pub time: f64,
    pub dt: f64,
    /// Largest `|v_n| + a` of the field the step started from.
    pub max_wave_speed: f64,
    /// Number of leading slots that are conservation laws.
    pub conserved_slots: usize,
    pub totals_before: [f64; MAX_VARS],
    pub totals_after: [f64; MAX_VARS],
    /// Net outward boundary flux integral per unit time.
    pub boundary_flux: [f64; MAX_VARS],
    /// `after − before + dt · boundary_flux`, per slot.
    pub imbalance: [f64; MAX_VARS],
    /// Largest per-slot imbalance relative to `Σ|U_k| · vol`.
    pub ledger_residual: f64,
    /// `max |U^{n+1} − U^n| / dt`.
    pub residual: f64,
    /// Raw mass-fraction range of the new field (mass-fraction model only).
    pub y_min: Option<f64>,
    pub y_max: Option<f64>,
    pub p_min: f64,
}

#[derive(Debug, Clone, Copy)]
struct FieldStats {
    dt_limit: f64,
    max_speed: f64,
    p_min: f64,
    y_min: f64,
    y_max: f64,
}

/// Owns a field and the per-cell views of its current state so each cell
/// is decoded once per step.
#[derive(Debug, Clone)]
pub struct Stepper {
    field: Field,
    views: [Vec<CellView>; 2],
    next: Vec<Conserved>,
    rhs: [Vec<[f64; MAX_VARS]>; 2],
    div: [Vec<f64>; 2],
    faces: Vec<InterfaceFlux>,
    totals: [f64; MAX_VARS],
    stats: FieldStats,
    time: f64,
    steps: usize,
}

impl Stepper {
    pub fn new(field: Field) -> Result<Stepper> {
        let n = field.cells.len();
        let dims = field.grid.dims;
        let empty = |d: usize| if d < dims { n } else { 0 };
        let mut s = Stepper {
            views: [Vec::with_capacity(n), Vec::with_capacity(empty(1))],
            next: field.cells.clone(),
            rhs: [vec![[0.0; MAX_VARS]; n], vec![[0.0; MAX_VARS]; empty(1)]],
            div: [vec![0.0; n], vec![0.0; empty(1)]],
            faces: Vec::with_capacity(field.grid.nx().max(field.grid.ny()) + 1),
            totals: field.totals(),
            stats: FieldStats {
                dt_limit: f64::INFINITY,
                max_speed: 0.0,
                p_min: f64::INFINITY,
                y_min: f64::INFINITY,
                y_max: f64::NEG_INFINITY,
            },
            time: 0.0,
            steps: 0,
            field,
        };
        s.stats = s.refresh_views()?;
        Ok(s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn into_field(self) -> Field {
        self.field
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// `cfl · min Δ/(|v_n| + a)` for the current field.
    pub fn stable_dt(&self, cfl: f64) -> Result<f64> {
        check_cfl(cfl)?;
        let dt = cfl * self.stats.dt_limit;
        if dt > 0.0 && dt.is_finite() {
            Ok(dt)
        } else {
            Err(Error::NonFinite {
                what: format!("time step {dt}"),
                location: None,
            })
        }
    }

    fn refresh_views(&mut self) -> Result<FieldStats> {
        let f = &self.field;
        let model = f.model;
        let mut st = FieldStats {
            dt_limit: f64::INFINITY,
            max_speed: 0.0,
            p_min: f64::INFINITY,
            y_min: f64::INFINITY,
            y_max: f64::NEG_INFINITY,
        };
        let mf = model.kind == ModelKind::MassFraction;
        let yi = model.extra_index();
        for d in 0..f.grid.dims {
            let axis = if d == 0 { Axis::X } else { Axis::Y };
            let dx = f.grid.dx[d];
            let views = &mut self.views[d];
            views.clear();
            for (n, u) in f.cells.iter().enumerate() {
                let v = model.view(u, axis).map_err(|e| e.at(f.location(n)))?;
                let speed = v.vn.abs() + v.a;
                st.max_speed = st.max_speed.max(speed);
                st.dt_limit = st.dt_limit.min(dx / speed);
                if d == 0 {
                    st.p_min = st.p_min.min(v.p);
                    if mf {
                        let y = u[yi] / v.rho;
                        st.y_min = st.y_min.min(y);
                        st.y_max = st.y_max.max(y);
                    }
                }
                views.push(v);
            }
        }
        Ok(st)
    }

    /// One forward-Euler step of size `dt`.
    pub fn advance(&mut self, scheme: SchemeKind, dt: f64) -> Result<StepReport> {
        let model = self.field.model;
        scheme.check_model(&model)?;
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Config(format!("time step must be positive, got {dt}")));
        }
        let grid = self.field.grid;
        let ghosts = apply_boundary(&self.field);
        let nvars = model.nvars();
        let slots = model.conserved_slots();
        let mut boundary = [0.0; MAX_VARS];

        for d in 0..grid.dims {
            let axis = if d == 0 { Axis::X } else { Axis::Y };
            let (lo, hi) = match axis {
                Axis::X => (&ghosts.x_lo, &ghosts.x_hi),
                Axis::Y => (&ghosts.y_lo, &ghosts.y_hi),
            };
            let ratio = dt / grid.dx[d];
            let area = grid.face_area(axis);
            let (n_along, n_lines) = match axis {
                Axis::X => (grid.nx(), grid.ny()),
                Axis::Y => (grid.ny(), grid.nx()),
            };
            let cell = |line: usize, k: usize| match axis {
                Axis::X => grid.index(k, line),
                Axis::Y => grid.index(line, k),
            };
            for line in 0..n_lines {
                let g_lo = model
                    .view(&lo[line], axis)
                    .map_err(|e| e.at(self.field.location(cell(line, 0))))?;
                let g_hi = model
                    .view(&hi[line], axis)
                    .map_err(|e| e.at(self.field.location(cell(line, n_along - 1))))?;
                self.faces.clear();
                let views = &self.views[d];
                for k in 0..=n_along {
                    let l = if k == 0 { &g_lo } else { &views[cell(line, k - 1)] };
                    let r = if k == n_along { &g_hi } else { &views[cell(line, k)] };
                    let face = interface_flux(&model, l, r, scheme).map_err(|e| {
                        let (i, j) = match axis {
                            Axis::X => (k, line),
                            Axis::Y => (line, k),
                        };
                        e.at(Location::Face { axis: d, i, j })
                    })?;
                    self.faces.push(face);
                }
                let first = self.faces[0].flux;
                let last = self.faces[n_along].flux;
                for q in 0..nvars {
                    boundary[q] += (last[q] - first[q]) * area;
                }
                for k in 0..n_along {
                    let (fm, fp) = (&self.faces[k], &self.faces[k + 1]);
                    let n = cell(line, k);
                    let (a, b) = (fm.flux.raw(), fp.flux.raw());
                    let out = &mut self.rhs[d][n];
                    for q in 0..MAX_VARS {
                        out[q] = ratio * (b[q] - a[q]);
                    }
                    self.div[d][n] = ratio * (fp.face_velocity - fm.face_velocity);
                }
            }
        }

        let quasi = model.kind == ModelKind::GammaBased;
        let xi = model.extra_index();
        let mut residual = 0.0f64;
        for n in 0..self.field.cells.len() {
            let u = &self.field.cells[n];
            let mut change = self.rhs[0][n];
            let mut div = self.div[0][n];
            if grid.dims == 2 {
                for (c, y) in change.iter_mut().zip(&self.rhs[1][n]) {
                    *c += y;
                }
                div += self.div[1][n];
            }
            if quasi {
                change[xi] -= u[xi] * div;
                change[xi + 1] -= u[xi + 1] * div;
            }
            let new = &mut self.next[n];
            let (old, out) = (u.raw(), new.raw_mut());
            for q in 0..MAX_VARS {
                out[q] = old[q] - change[q];
            }
            for q in 0..nvars {
                residual = residual.max((out[q] - old[q]).abs());
            }
            if !new.is_finite() {
                return Err(Error::NonFinite {
                    what: format!("updated state {new:?}"),
                    location: Some(self.field.location(n)),
                });
            }
        }

        std::mem::swap(&mut self.field.cells, &mut self.next);
        let old_stats = self.stats;
        match self.refresh_views() {
            Ok(st) => self.stats = st,
            Err(e) => {
                std::mem::swap(&mut self.field.cells, &mut self.next);
                self.refresh_views().expect("previous field was valid");
                return Err(e);
            }
        }

        let before = self.totals;
        let after = self.field.totals();
        let scale = self.field.abs_totals();
        let mut imbalance = [0.0; MAX_VARS];
        let mut ledger = 0.0f64;
        for q in 0..slots {
            imbalance[q] = after[q] - before[q] + dt * boundary[q];
            let s = scale[q].max(dt * boundary[q].abs());
            let rel = if s > 0.0 {
                imbalance[q].abs() / s
            } else {
                imbalance[q].abs()
            };
            ledger = ledger.max(rel);
        }
        self.totals = after;
        self.time += dt;
        self.steps += 1;
        let mf = model.kind == ModelKind::MassFraction;
        Ok(StepReport {
            step: self.steps,
            time: self.time,
            dt,
            max_wave_speed: old_stats.max_speed,
            conserved_slots: slots,
            totals_before: before,
            totals_after: after,
            boundary_flux: boundary,
            imbalance,
            ledger_residual: ledger,
            residual: residual / dt,
            y_min: mf.then_some(self.stats.y_min),
            y_max: mf.then_some(self.stats.y_max),
            p_min: self.stats.p_min,
        })
    }
}

/// Functional single step: returns the new field and its report.
pub fn step(field: &Field, scheme: SchemeKind, dt: f64) -> Result<(Field, StepReport)> {
    let mut s = Stepper::new(field.clone())?;
    let rep = s.advance(scheme, dt)?;
    Ok((s.into_field(), rep))
}

/// Optional run-time overrides of a case's defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOverrides {
    pub cells: Option<Vec<usize>>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    /// March exactly this many CFL steps, ignoring the end time.
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// Reached the end time or the requested step count.
    Completed,
    /// Steady case met the residual tolerance.
    Converged,
    /// Steady case hit the step cap without converging.
    StepCapReached,
}

/// Running sum of per-step ledger imbalances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ledger {
    pub slots: usize,
    pub initial_scale: [f64; MAX_VARS],
    pub imbalance: [f64; MAX_VARS],
}

impl Ledger {
    pub fn new(field: &Field) -> Ledger {
        Ledger {
            slots: field.model.conserved_slots(),
            initial_scale: field.abs_totals(),
            imbalance: [0.0; MAX_VARS],
        }
    }

    pub fn record(&mut self, rep: &StepReport) {
        for q in 0..self.slots {
            self.imbalance[q] += rep.imbalance[q];
        }
    }

    /// Largest cumulative imbalance relative to the initial `Σ|U_k| · vol`.
    pub fn residual(&self) -> f64 {
        (0..self.slots)
            .map(|q| {
                let s = self.initial_scale[q];
                if s > 0.0 {
                    self.imbalance[q].abs() / s
                } else {
                    self.imbalance[q].abs()
                }
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
pub struct Run {
    pub field: Field,
    pub scheme: SchemeKind,
    pub cfl: f64,
    pub time: f64,
    pub steps: usize,
    pub status: RunStatus,
    pub ledger: Ledger,
    /// Every step's report; left empty by [`run_observed`].
    pub reports: Vec<StepReport>,
}

/// Grid of `case`, honouring a cell-count override.
pub fn case_grid(case: &CaseSpec, overrides: &RunOverrides) -> Result<Grid> {
    let cells = overrides.cells.as_deref().unwrap_or(&case.cells);
    Grid::new(case.dims, &case.extent, cells)
}

/// Runs `case` and keeps every step report.
pub fn run(case: &CaseSpec, scheme: SchemeKind, overrides: &RunOverrides) -> Result<Run> {
    let mut reports = Vec::new();
    let mut r = run_observed(case, scheme, overrides, |_, rep| reports.push(*rep))?;
    r.reports = reports;
    Ok(r)
}

/// Runs `case`, handing the field after every accepted step to `observer`.
pub fn run_observed(
    case: &CaseSpec,
    scheme: SchemeKind,
    overrides: &RunOverrides,
    mut observer: impl FnMut(&Field, &StepReport),
) -> Result<Run> {
    let grid = case_grid(case, overrides)?;
    let field = cases::sample_initial(case, &grid)?;
    scheme.check_model(&field.model)?;
    let cfl = overrides.cfl.unwrap_or(case.cfl);
    check_cfl(cfl)?;
    let mut ledger = Ledger::new(&field);
    let mut s = Stepper::new(field)?;

    let status = if let Some(n) = overrides.steps {
        for _ in 0..n {
            let dt = s.stable_dt(cfl)?;
            let rep = s.advance(scheme, dt)?;
            ledger.record(&rep);
            observer(s.field(), &rep);
        }
        RunStatus::Completed
    } else {
        let end = match (overrides.t_end, case.t_end) {
            (Some(t), _) => EndTime::Time(t),
            (None, e) => e,
        };
        match end {
            EndTime::Time(t_end) => {
                if !(t_end >= 0.0) || !t_end.is_finite() {
                    return Err(Error::Config(format!("end time must be non-negative, got {t_end}")));
                }
                while s.time() < t_end {
                    let dt = s.stable_dt(cfl)?.min(t_end - s.time());
                    let rep = s.advance(scheme, dt)?;
                    ledger.record(&rep);
                    observer(s.field(), &rep);
                }
                RunStatus::Completed
            }
            EndTime::Steady => {
                let mut status = RunStatus::StepCapReached;
                for _ in 0..STEADY_STEP_CAP {
                    let dt = s.stable_dt(cfl)?;
                    let rep = s.advance(scheme, dt)?;
                    ledger.record(&rep);
                    observer(s.field(), &rep);
                    if rep.residual < STEADY_TOLERANCE {
                        status = RunStatus::Converged;
                        break;
                    }
                }
                status
            }
        }
    };
    Ok(Run {
        time: s.time(),
        steps: s.steps(),
        field: s.into_field(),
        scheme,
        cfl,
        status,
        ledger,
        reports: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::GasComponent;

    fn mf1(n: usize) -> (Model, Grid) {
        let m = Model::new(
            ModelKind::MassFraction,
            1,
            GasComponent::perfect(1.4),
            GasComponent::perfect(1.4),
        )
        .unwrap();
        (m, Grid::one_d(1.0, n).unwrap())
    }

    #[test]
    fn grid_geometry() {
        let g = Grid::two_d([1.0, 2.0], [4, 5]).unwrap();
        assert_eq!(g.len(), 20);
        assert_eq!(g.dx, [0.25, 0.4]);
        assert_eq!(g.index(3, 1), 7);
        assert_eq!(g.center(0, 0), [0.125, 0.2]);
        assert!(Grid::one_d(1.0, 2).is_err());
        assert!(Grid::one_d(0.0, 10).is_err());
        assert!(Grid::new(2, &[1.0], &[10]).is_err());
        let g = Grid::one_d(1.0, 100).unwrap();
        assert_eq!(g.cell_volume(), 0.01);
        assert_eq!(g.face_area(Axis::X), 1.0);
    }

    #[test]
    fn dt_example_and_scaling() {
        let (m, g) = mf1(100);
        let f = Field::uniform(m, g, &Primitive::mass_fraction(1.0, 0.0, 1.0, 1.0)).unwrap();
        let dt = compute_dt(&f, 0.45).unwrap();
        assert!((dt - 0.45 * 0.01 / 1.4f64.sqrt()).abs() < 1e-18);
        assert!((dt - 3.8032e-3).abs() < 1e-7);
        let f2 = Field::uniform(
            m,
            Grid::one_d(1.0, 200).unwrap(),
            &Primitive::mass_fraction(1.0, 0.0, 1.0, 1.0),
        )
        .unwrap();
        assert_eq!(compute_dt(&f2, 0.45).unwrap(), dt / 2.0);
        assert!(compute_dt(&f, 0.0).is_err());
        assert!(compute_dt(&f, 1.5).is_err());
    }

    #[test]
    fn dt_takes_the_tighter_axis_in_2d() {
        let m = Model::new(
            ModelKind::GammaBased,
            2,
            GasComponent::perfect(1.4),
            GasComponent::perfect(1.4),
        )
        .unwrap();
        let g = Grid::two_d([1.0, 1.0], [10, 20]).unwrap();
        let st = Primitive::gamma_based(1.4, 0.0, 1.0, 1.4, 0.0).with_vel([0.0, 1.0]);
        let f = Field::uniform(m, g, &st).unwrap();
        // a = 1; x: 0.1 / 1, y: 0.05 / 2
        assert!((compute_dt(&f, 0.5).unwrap() - 0.5 * 0.025).abs() < 1e-16);
    }

    #[test]
    fn uniform_field_is_a_fixed_point() {
        let (m, g) = mf1(10);
        let f = Field::uniform(m, g, &Primitive::mass_fraction(1.0, 0.3, 1.0, 0.5)).unwrap();
        for k in SchemeKind::ALL {
            let (f2, rep) = step(&f, k, 1e-3).unwrap();
            assert_eq!(f2.cells, f.cells, "{k}");
            assert_eq!(rep.residual, 0.0);
        }
    }

    #[test]
    fn ghosts_copy_edge_cells() {
        let (m, g) = mf1(5);
        let cells = (0..5)
            .map(|i| {
                m.to_conserved(&Primitive::mass_fraction(1.0 + i as f64, 0.0, 1.0, 1.0))
                    .unwrap()
            })
            .collect();
        let f = Field::new(m, g, cells).unwrap();
        let gh = apply_boundary(&f);
        assert_eq!(gh.x_lo, vec![f.cells[0]]);
        assert_eq!(gh.x_hi, vec![f.cells[4]]);
        assert!(gh.y_lo.is_empty());
    }

    #[test]
    fn momentum_changes_by_boundary_pressure_flux() {
        // pressure ramp at rest: total momentum changes by −dt (p_R − p_L)
        let (m, g) = mf1(10);
        let cells = (0..10)
            .map(|i| {
                m.to_conserved(&Primitive::mass_fraction(1.0, 0.0, 1.0 + 0.1 * i as f64, 1.0))
                    .unwrap()
            })
            .collect();
        let f = Field::new(m, g, cells).unwrap();
        let dt = 1e-3;
        let (f2, rep) = step(&f, SchemeKind::Rusanov, dt).unwrap();
        let dm = f2.totals()[1] - f.totals()[1];
        let p_l = 1.0;
        let p_r = 1.0 + 0.9;
        assert!((dm + dt * (p_r - p_l)).abs() < 1e-15, "{dm}");
        assert!(rep.ledger_residual < 1e-14);
    }

    #[test]
    fn bad_update_reports_cell() {
        let (m, g) = mf1(10);
        let mut cells: Vec<_> = (0..10)
            .map(|_| m.to_conserved(&Primitive::mass_fraction(1.0, 0.0, 1.0, 1.0)).unwrap())
            .collect();
        cells[5] = m.to_conserved(&Primitive::mass_fraction(1e-6, 0.0, 1e-6, 1.0)).unwrap();
        let f = Field::new(m, g, cells).unwrap();
        let err = step(&f, SchemeKind::Rusanov, 0.5).unwrap_err();
        assert!(err.location().is_some(), "{err}");
    }

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let mut s = Neumaier::default();
        for v in [1.0, 1e100, 1.0, -1e100] {
            s.add(v);
        }
        assert_eq!(s.value(), 2.0);
    }
}
