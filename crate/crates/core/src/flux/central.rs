use super::{InterfaceFlux, SchemeKind};
use crate::error::{Error, Result};
use crate::state::{eigen_bounds_views, Axis, CellView, Conserved, Model, MAX_VARS};
use crate::thermo::{self, MixtureThermo};

/// Degeneracy threshold of RICCA's first branch, applied to the normalised
/// max-norms of ΔF and ΔU.
pub const RICCA_DELTA: f64 = 1e-10;
/// Relative threshold below which a jump ΔU_i counts as zero in MOVERS.
const JUMP_EPS: f64 = 1e-10;
/// Relative threshold of the pressure-jump indicator in RICCA.
const PRESSURE_EPS: f64 = 1e-8;

/// Per-equation diffusion coefficients and their clipping flags.
#[derive(Debug, Clone, Copy)]
pub struct PerEquation {
    pub alpha: Conserved,
    pub clipped: u8,
}

fn jump_is_zero(l: f64, r: f64) -> bool {
    (r - l).abs() <= JUMP_EPS * l.abs().max(r.abs()).max(1.0)
}

/// RH speed `|ΔF/ΔU|` corrected into `[lo, hi]`; `None` marks a vanishing
/// jump.
fn corrected_speed(ul: f64, ur: f64, fl: f64, fr: f64, lo: f64, hi: f64) -> Option<(f64, bool)> {
    if jump_is_zero(ul, ur) {
        return None;
    }
    let s = ((fr - fl) / (ur - ul)).abs();
    if s > hi {
        Some((hi, true))
    } else if s < lo {
        Some((lo, true))
    } else {
        Some((s, false))
    }
}

pub(crate) fn movers_n_views(l: &CellView, r: &CellView) -> PerEquation {
    let (lo, hi) = eigen_bounds_views(l, r);
    let n = l.u.len();
    let mut alpha = Conserved::zeros(n);
    let mut clipped = 0u8;
    for i in 0..n {
        alpha[i] = match corrected_speed(l.u[i], r.u[i], l.flux[i], r.flux[i], lo, hi) {
            Some((s, c)) => {
                if c {
                    clipped |= 1 << i;
                }
                s
            }
            None => hi,
        };
    }
    PerEquation { alpha, clipped }
}

pub(crate) fn movers_1_views(model: &Model, l: &CellView, r: &CellView) -> (f64, bool) {
    let (lo, hi) = eigen_bounds_views(l, r);
    let ie = model.energy_index();
    corrected_speed(l.u[ie], r.u[ie], l.flux[ie], r.flux[ie], lo, hi).unwrap_or((hi, false))
}

fn normalised_max_jump(l: &Conserved, r: &Conserved) -> f64 {
    l.iter()
        .zip(r.iter())
        .map(|(&a, &b)| (b - a).abs() / a.abs().max(b.abs()).max(1.0))
        .fold(0.0, f64::max)
}

pub(crate) fn ricca_views(l: &CellView, r: &CellView) -> Result<f64> {
    let (vl, vr) = (l.vn.abs(), r.vn.abs());
    if normalised_max_jump(&l.flux, &r.flux) < RICCA_DELTA && normalised_max_jump(&l.u, &r.u) < RICCA_DELTA {
        return Ok(0.5 * (vl + vr));
    }
    let dp = (r.p - l.p).abs();
    let step = if dp > PRESSURE_EPS * l.p.max(r.p).max(1.0) {
        1.0
    } else {
        0.0
    };
    let mut alpha = vl.max(vr);
    if step > 0.0 {
        let th = MixtureThermo {
            gamma: 0.5 * (l.gamma + r.gamma),
            p_inf: 0.5 * (l.p_inf + r.p_inf),
        };
        alpha += thermo::sound_speed(0.5 * (l.rho + r.rho), 0.5 * (l.p + r.p), th)?;
    }
    Ok(alpha)
}

/// Pressure-jump switch of MOVERS+: zero across contacts, one across
/// strong pressure jumps.
pub fn pressure_switch(pl: f64, p_inf_l: f64, pr: f64, p_inf_r: f64) -> f64 {
    let den = (pl + p_inf_l).min(pr + p_inf_r);
    if den > 0.0 {
        ((pr - pl).abs() / den).min(1.0)
    } else {
        1.0
    }
}

fn signum0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub(crate) fn movers_plus_views(l: &CellView, r: &CellView) -> Conserved {
    let phi = pressure_switch(l.p, l.p_inf, r.p, r.p_inf);
    let vbar = 0.5 * (l.vn.abs() + r.vn.abs());
    let n = l.u.len();
    let mut d = Conserved::zeros(n);
    for j in 0..n {
        let du = r.u[j] - l.u[j];
        let df = r.flux[j] - l.flux[j];
        d[j] = 0.5 * (phi * signum0(du) * df.abs() + vbar * du);
    }
    d
}

pub(crate) fn rusanov_views(l: &CellView, r: &CellView) -> f64 {
    (l.vn.abs() + l.a).max(r.vn.abs() + r.a)
}

fn assemble(l: &CellView, r: &CellView, alpha: Conserved, clipped: u8) -> InterfaceFlux {
    let mut flux = Conserved::zeros(l.u.len());
    let (fl, fr, ul, ur, a) = (l.flux.raw(), r.flux.raw(), l.u.raw(), r.u.raw(), alpha.raw());
    let out = flux.raw_mut();
    for k in 0..MAX_VARS {
        out[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * a[k] * (ur[k] - ul[k]);
    }
    InterfaceFlux {
        flux,
        alpha,
        clipped,
        face_velocity: 0.5 * (l.vn + r.vn),
    }
}

fn uniform(n: usize, value: f64) -> Conserved {
    let mut a = Conserved::zeros(n);
    a.iter_mut().for_each(|v| *v = value);
    a
}

pub(crate) fn central_views(model: &Model, l: &CellView, r: &CellView, scheme: SchemeKind) -> Result<InterfaceFlux> {
    let n = l.u.len();
    Ok(match scheme {
        SchemeKind::MoversN => {
            let pe = movers_n_views(l, r);
            assemble(l, r, pe.alpha, pe.clipped)
        }
        SchemeKind::Movers1 => {
            let (a, c) = movers_1_views(model, l, r);
            let clipped = if c { (1u8 << n) - 1 } else { 0 };
            assemble(l, r, uniform(n, a), clipped)
        }
        SchemeKind::Ricca => assemble(l, r, uniform(n, ricca_views(l, r)?), 0),
        SchemeKind::Rusanov => assemble(l, r, uniform(n, rusanov_views(l, r)), 0),
        SchemeKind::MoversPlus => {
            let d = movers_plus_views(l, r);
            let mut flux = Conserved::zeros(n);
            let mut alpha = Conserved::zeros(n);
            for j in 0..n {
                flux[j] = 0.5 * (l.flux[j] + r.flux[j]) - d[j];
                let du = r.u[j] - l.u[j];
                alpha[j] = if du != 0.0 { 2.0 * d[j] / du } else { 0.0 };
            }
            InterfaceFlux {
                flux,
                alpha,
                clipped: 0,
                face_velocity: 0.5 * (l.vn + r.vn),
            }
        }
        other => {
            return Err(Error::Unsupported {
                scheme: other.name().into(),
                what: "the central flux framework".into(),
            })
        }
    })
}

fn views(model: &Model, left: &Conserved, right: &Conserved, axis: Axis) -> Result<(CellView, CellView)> {
    Ok((model.view(left, axis)?, model.view(right, axis)?))
}

/// `F_I = ½(F_L + F_R) − d_I` with the dissipative flux of `scheme`.
pub fn central_flux(
    model: &Model,
    left: &Conserved,
    right: &Conserved,
    scheme: SchemeKind,
    axis: Axis,
) -> Result<InterfaceFlux> {
    let (l, r) = views(model, left, right, axis)?;
    central_views(model, &l, &r, scheme)
}

pub fn movers_n_alpha(model: &Model, left: &Conserved, right: &Conserved, axis: Axis) -> Result<PerEquation> {
    let (l, r) = views(model, left, right, axis)?;
    Ok(movers_n_views(&l, &r))
}

/// Scalar MOVERS-1 coefficient and whether wave-speed correction fired.
pub fn movers_1_alpha(model: &Model, left: &Conserved, right: &Conserved, axis: Axis) -> Result<(f64, bool)> {
    let (l, r) = views(model, left, right, axis)?;
    Ok(movers_1_views(model, &l, &r))
}

pub fn ricca_alpha(model: &Model, left: &Conserved, right: &Conserved, axis: Axis) -> Result<f64> {
    let (l, r) = views(model, left, right, axis)?;
    ricca_views(&l, &r)
}

/// The full MOVERS+ dissipative flux `d_I` (already carrying the ½).
pub fn movers_plus_diffusion(model: &Model, left: &Conserved, right: &Conserved, axis: Axis) -> Result<Conserved> {
    let (l, r) = views(model, left, right, axis)?;
    Ok(movers_plus_views(&l, &r))
}

pub fn rusanov_alpha(model: &Model, left: &Conserved, right: &Conserved, axis: Axis) -> Result<f64> {
    let (l, r) = views(model, left, right, axis)?;
    Ok(rusanov_views(&l, &r))
}
