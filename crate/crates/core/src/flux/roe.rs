//! Roe flux for the 1D two-species mass-fraction model.

use nalgebra::{Matrix4, Vector4};

use super::InterfaceFlux;
use crate::error::{Error, Result};
use crate::state::{Axis, CellView, Conserved, Model};
use crate::thermo;

/// Square-root-density weighted face state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoeAverage {
    pub rho: f64,
    pub u: f64,
    pub h: f64,
    pub y1: f64,
    pub temperature: f64,
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub b_prime: f64,
}

fn temperature(model: &Model, v: &CellView) -> f64 {
    let y = (v.u[3] / v.rho).clamp(0.0, 1.0);
    let e = (v.u[2] - 0.5 * v.u[1] * v.vn) / v.rho;
    e / thermo::mixture_cv(y, &model.gas[0], &model.gas[1])
}

pub(crate) fn average_views(model: &Model, l: &CellView, r: &CellView) -> Result<RoeAverage> {
    let (sl, sr) = (l.rho.sqrt(), r.rho.sqrt());
    let w = |a: f64, b: f64| (sl * a + sr * b) / (sl + sr);
    let hl = (l.u[2] + l.p) / l.rho;
    let hr = (r.u[2] + r.p) / r.rho;
    let u = w(l.vn, r.vn);
    let h = w(hl, hr);
    let y1 = w(l.u[3] / l.rho, r.u[3] / r.rho);
    let t = w(temperature(model, l), temperature(model, r));
    let [g1, g2] = model.gas;
    let yc = y1.clamp(0.0, 1.0);
    let gamma = thermo::mixture_gamma(yc, &g1, &g2)?;
    let a2 = (gamma - 1.0) * (h - 0.5 * u * u);
    if !(a2 > 0.0) {
        return Err(Error::RoeFailure { a2, location: None });
    }
    let b_prime = g1.cv * g2.cv * (g1.gamma - g2.gamma) * t / (yc * g1.cv + (1.0 - yc) * g2.cv);
    Ok(RoeAverage {
        rho: w(l.rho, r.rho),
        u,
        h,
        y1,
        temperature: t,
        gamma,
        a: a2.sqrt(),
        b: -y1 * b_prime,
        b_prime,
    })
}

pub(crate) fn roe_views(model: &Model, l: &CellView, r: &CellView) -> Result<InterfaceFlux> {
    let avg = average_views(model, l, r)?;
    let RoeAverage {
        u,
        h,
        y1: y,
        a,
        b,
        b_prime: bp,
        gamma,
        ..
    } = avg;
    let gm1 = gamma - 1.0;
    #[rustfmt::skip]
    let vecs = Matrix4::new(
        1.0,         1.0,                         0.0,        1.0,
        u - a,       u,                           0.0,        u + a,
        h - u * a,   0.5 * u * u - b / gm1,       -bp / gm1,  h + u * a,
        y,           0.0,                         1.0,        y,
    );
    let du = Vector4::from_fn(|i, _| r.u[i] - l.u[i]);
    let waves = vecs
        .lu()
        .solve(&du)
        .filter(|w| w.iter().all(|v| v.is_finite()))
        .ok_or(Error::RoeFailure {
            a2: a * a,
            location: None,
        })?;
    let lam = [(u - a).abs(), u.abs(), u.abs(), (u + a).abs()];
    let mut flux = Conserved::zeros(4);
    for k in 0..4 {
        let diss: f64 = (0..4).map(|i| lam[i] * waves[i] * vecs[(k, i)]).sum();
        flux[k] = 0.5 * (l.flux[k] + r.flux[k]) - 0.5 * diss;
    }
    Ok(InterfaceFlux {
        flux,
        alpha: Conserved::zeros(4),
        clipped: 0,
        face_velocity: 0.5 * (l.vn + r.vn),
    })
}

fn views(model: &Model, left: &Conserved, right: &Conserved) -> Result<(CellView, CellView)> {
    super::SchemeKind::Roe.check_model(model)?;
    Ok((model.view(left, Axis::X)?, model.view(right, Axis::X)?))
}

pub fn roe_average(model: &Model, left: &Conserved, right: &Conserved) -> Result<RoeAverage> {
    let (l, r) = views(model, left, right)?;
    average_views(model, &l, &r)
}

pub fn roe_flux(model: &Model, left: &Conserved, right: &Conserved) -> Result<Conserved> {
    let (l, r) = views(model, left, right)?;
    Ok(roe_views(model, &l, &r)?.flux)
}
