//! Verification of the mass-fraction model's flux Jacobian and its analytic
//! eigenpairs. Test support; the flux schemes never assemble the Jacobian.

use nalgebra::{Matrix4, Vector4};

use super::{Axis, Conserved, Model, ModelKind};
use crate::error::{Error, Result};
use crate::thermo;

#[derive(Debug, Clone, Copy)]
pub struct JacobianReport {
    /// `(u - a, u, u, u + a)`
    pub eigenvalues: [f64; 4],
    /// Largest scaled `|A r_i - λ_i r_i|` over the four pairs.
    pub eigen_residual: f64,
    /// Largest scaled difference between the assembled and the
    /// finite-difference Jacobian.
    pub fd_residual: f64,
    pub b: f64,
    pub b_prime: f64,
}

const REL_STEP: f64 = 1e-6;

/// Assembles the analytic Jacobian (in terms of u, H and Y₁, with the γ
/// derivatives B and B′ taken by central differences of the mixing rule)
/// and checks it against its eigenpairs and against a finite-difference
/// Jacobian of the physical flux.
pub fn jacobian_eigen_check(model: &Model, u: &Conserved) -> Result<JacobianReport> {
    if model.kind != ModelKind::MassFraction || model.dims != 1 {
        return Err(Error::Config("Jacobian check needs the 1D mass-fraction model".into()));
    }
    let [g1, g2] = model.gas;
    // γ as a function of (U1, U4), unclipped so differences are two-sided.
    let gamma_of = |u1: f64, u4: f64| thermo::mixture_gamma(u4 / u1, &g1, &g2);

    let (u1, u2, u3, u4) = (u[0], u[1], u[2], u[3]);
    let gamma = gamma_of(u1, u4)?;
    let rho = u1;
    let vel = u2 / u1;
    let y1 = u4 / u1;
    let p = (gamma - 1.0) * (u3 - 0.5 * u2 * vel);
    if !(p > 0.0) {
        return Err(Error::unphysical(format!("non-positive pressure {p}")));
    }
    let h_tot = (u3 + p) / rho;
    let a = (gamma * p / rho).sqrt();

    let h1 = REL_STEP * u1.abs();
    let dg_du1 = (gamma_of(u1 + h1, u4)? - gamma_of(u1 - h1, u4)?) / (2.0 * h1);
    let h4 = REL_STEP * u4.abs().max(u1.abs());
    let dg_du4 = (gamma_of(u1, u4 + h4)? - gamma_of(u1, u4 - h4)?) / (2.0 * h4);
    let b = p / (gamma - 1.0) * dg_du1;
    let bp = p / (gamma - 1.0) * dg_du4;

    let gm1 = gamma - 1.0;
    #[rustfmt::skip]
    let jac = Matrix4::new(
        0.0, 1.0, 0.0, 0.0,
        0.5 * (gamma - 3.0) * vel * vel + b, (3.0 - gamma) * vel, gm1, bp,
        0.5 * gm1 * vel.powi(3) + b * vel - vel * h_tot, h_tot - gm1 * vel * vel, gamma * vel, bp * vel,
        -y1 * vel, y1, 0.0, vel,
    );

    let eigenvalues = [vel - a, vel, vel, vel + a];
    let vectors = [
        Vector4::new(1.0, vel - a, h_tot - vel * a, y1),
        Vector4::new(1.0, vel, 0.5 * vel * vel - b / gm1, 0.0),
        Vector4::new(0.0, 0.0, -bp / gm1, 1.0),
        Vector4::new(1.0, vel + a, h_tot + vel * a, y1),
    ];
    let a_scale = jac.amax().max(1.0);
    let eigen_residual = vectors
        .iter()
        .zip(eigenvalues)
        .map(|(r, lam)| (jac * r - r * lam).amax() / (a_scale * r.amax().max(1.0)))
        .fold(0.0, f64::max);

    let mut fd = Matrix4::zeros();
    for k in 0..4 {
        let h = REL_STEP * u[k].abs().max(1.0);
        let mut up = *u;
        let mut dn = *u;
        up[k] += h;
        dn[k] -= h;
        let fp = model.physical_flux(&up, Axis::X)?;
        let fm = model.physical_flux(&dn, Axis::X)?;
        for i in 0..4 {
            fd[(i, k)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    let fd_residual = (jac - fd).amax() / fd.amax().max(1.0);

    Ok(JacobianReport {
        eigenvalues,
        eigen_residual,
        fd_residual,
        b,
        b_prime: bp,
    })
}
