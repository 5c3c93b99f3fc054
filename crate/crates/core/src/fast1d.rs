//! Structure-of-arrays Rusanov march for 1D mass-fraction fields.
//!
//! Performs the same floating-point operations in the same order as the
//! generic [`Stepper`](crate::solver::Stepper) with the Rusanov scheme, so
//! results agree bit for bit; it only skips the per-step reports. Used for
//! fine-grid reference solutions, where the generic path spends most of its
//! time moving padded state vectors around.

use crate::error::{Error, Result};
use crate::solver::Field;
use crate::state::{Conserved, ModelKind};
use crate::thermo::GasComponent;

/// Whether [`march`] handles this field.
pub(crate) fn supports(field: &Field) -> bool {
    field.model.kind == ModelKind::MassFraction && field.grid.dims == 1
}

struct Arrays {
    rho: Vec<f64>,
    mom: Vec<f64>,
    ener: Vec<f64>,
    ry: Vec<f64>,
    vel: Vec<f64>,
    p: Vec<f64>,
    speed: Vec<f64>,
    flux: [Vec<f64>; 4],
}

#[inline(always)]
fn mixture_gamma(y: f64, g1: &GasComponent, g2: &GasComponent) -> f64 {
    if g1.gamma == g2.gamma {
        return g1.gamma;
    }
    let y2 = 1.0 - y;
    (y * g1.gamma * g1.cv + y2 * g2.gamma * g2.cv) / (y * g1.cv + y2 * g2.cv)
}

impl Arrays {
    /// Applies the flux differences (skipped for `ratio == None`) and decodes
    /// every cell; returns the largest `|u| + a`, or the first bad cell.
    #[inline(always)]
    fn update_decode(&mut self, gas: &[GasComponent; 2], ratio: Option<f64>) -> std::result::Result<f64, usize> {
        // the branch on equal gammas is hoisted so each loop body is straight-line
        let r = if gas[0].gamma == gas[1].gamma {
            let g = gas[0].gamma;
            self.sweep(ratio, |_| g)
        } else {
            let [g1, g2] = *gas;
            self.sweep(ratio, move |y| mixture_gamma(y, &g1, &g2))
        };
        r.map_err(|()| self.first_bad(gas))
    }

    #[inline(always)]
    fn sweep(&mut self, ratio: Option<f64>, gamma_of: impl Fn(f64) -> f64) -> std::result::Result<f64, ()> {
        let n = self.rho.len();
        let (rho, mom, ener, ry) = (
            &mut self.rho[..n],
            &mut self.mom[..n],
            &mut self.ener[..n],
            &mut self.ry[..n],
        );
        let (vel, p, speed) = (&mut self.vel[..n], &mut self.p[..n], &mut self.speed[..n]);
        if let Some(ratio) = ratio {
            for (q, f) in [&mut *rho, &mut *mom, &mut *ener, &mut *ry].into_iter().zip(&self.flux) {
                let f = &f[..n + 1];
                for i in 0..n {
                    q[i] -= ratio * (f[i + 1] - f[i]);
                }
            }
        }
        for i in 0..n {
            let r = rho[i];
            let u = mom[i] / r;
            let rho_e = ener[i] - 0.5 * (mom[i] * u);
            let y = (ry[i] / r).clamp(0.0, 1.0);
            let gamma = gamma_of(y);
            let pi = (gamma - 1.0) * rho_e;
            let a2 = gamma * (pi + 0.0) / r;
            vel[i] = u;
            p[i] = pi;
            speed[i] = u.abs() + a2.sqrt();
        }
        // Admissibility without a branch per cell: a negative or non-finite
        // radicand, or a zero density, makes some speed NaN or infinite and
        // so the speed sum non-finite; negative and infinite densities show
        // in the density minimum and sum. Independent lanes let all four
        // reductions vectorise, and none of them depends on the order.
        const L: usize = 8;
        let mut max = [0.0f64; L];
        let mut sum = [0.0f64; L];
        let mut rho_min = [f64::INFINITY; L];
        let mut rho_sum = [0.0f64; L];
        let whole = n / L * L;
        for (s, r) in speed[..whole].chunks_exact(L).zip(rho[..whole].chunks_exact(L)) {
            for l in 0..L {
                max[l] = max[l].max(s[l]);
                sum[l] += s[l];
                rho_min[l] = rho_min[l].min(r[l]);
                rho_sum[l] += r[l];
            }
        }
        for i in whole..n {
            let l = i - whole;
            max[l] = max[l].max(speed[i]);
            sum[l] += speed[i];
            rho_min[l] = rho_min[l].min(rho[i]);
            rho_sum[l] += rho[i];
        }
        let total = |a: [f64; L]| a.iter().sum::<f64>();
        let good = total(sum).is_finite() && total(rho_sum).is_finite() && rho_min.iter().all(|&r| r > 0.0);
        if good {
            Ok(max.iter().fold(0.0f64, |m, &v| m.max(v)))
        } else {
            Err(())
        }
    }

    #[cold]
    #[inline(never)]
    fn first_bad(&self, gas: &[GasComponent; 2]) -> usize {
        (0..self.rho.len())
            .find(|&i| {
                let rho = self.rho[i];
                let vel = self.mom[i] / rho;
                let y = (self.ry[i] / rho).clamp(0.0, 1.0);
                let gamma = mixture_gamma(y, &gas[0], &gas[1]);
                let a2 = gamma * (gamma - 1.0) * (self.ener[i] - 0.5 * (self.mom[i] * vel)) / rho;
                !(rho > 0.0 && rho.is_finite() && a2 >= 0.0 && a2.is_finite())
            })
            .unwrap_or(0)
    }

    /// Face fluxes; face `k` sits left of cell `k`, ghosts copy edge cells.
    #[inline(always)]
    fn faces(&mut self) {
        let n = self.rho.len();
        let face = |l: usize, r: usize| {
            let (ul, ur) = (self.vel[l], self.vel[r]);
            let (pl, pr) = (self.p[l], self.p[r]);
            let alpha = self.speed[l].max(self.speed[r]);
            let central = |fl: f64, fr: f64, ql: f64, qr: f64| 0.5 * (fl + fr) - 0.5 * alpha * (qr - ql);
            [
                central(self.rho[l] * ul, self.rho[r] * ur, self.rho[l], self.rho[r]),
                central(self.mom[l] * ul + pl, self.mom[r] * ur + pr, self.mom[l], self.mom[r]),
                central(
                    (self.ener[l] + pl) * ul,
                    (self.ener[r] + pr) * ur,
                    self.ener[l],
                    self.ener[r],
                ),
                central(self.ry[l] * ul, self.ry[r] * ur, self.ry[l], self.ry[r]),
            ]
        };
        let (lo, hi) = (face(0, 0), face(n - 1, n - 1));
        let [f0, f1, f2, f3] = &mut self.flux;
        for (q, f) in [&mut *f0, &mut *f1, &mut *f2, &mut *f3].into_iter().enumerate() {
            f[0] = lo[q];
            f[n] = hi[q];
        }
        // interior faces as plain slice arithmetic so the loops vectorise
        let (rho, mom, ener, ry) = (&self.rho[..n], &self.mom[..n], &self.ener[..n], &self.ry[..n]);
        let (vel, p, speed) = (&self.vel[..n], &self.p[..n], &self.speed[..n]);
        let (f0, f1, f2, f3) = (&mut f0[1..n], &mut f1[1..n], &mut f2[1..n], &mut f3[1..n]);
        for k in 0..n - 1 {
            let (l, r) = (k, k + 1);
            let (ul, ur) = (vel[l], vel[r]);
            let (pl, pr) = (p[l], p[r]);
            let alpha = speed[l].max(speed[r]);
            let central = |fl: f64, fr: f64, ql: f64, qr: f64| 0.5 * (fl + fr) - 0.5 * alpha * (qr - ql);
            f0[k] = central(rho[l] * ul, rho[r] * ur, rho[l], rho[r]);
            f1[k] = central(mom[l] * ul + pl, mom[r] * ur + pr, mom[l], mom[r]);
            f2[k] = central((ener[l] + pl) * ul, (ener[r] + pr) * ur, ener[l], ener[r]);
            f3[k] = central(ry[l] * ul, ry[r] * ur, ry[l], ry[r]);
        }
    }
}

/// One step of size `ratio = dt/dx`, or just the initial decode for `None`.
#[inline(always)]
fn step_generic(a: &mut Arrays, gas: &[GasComponent; 2], ratio: Option<f64>) -> std::result::Result<f64, usize> {
    if ratio.is_some() {
        a.faces();
    }
    a.update_decode(gas, ratio)
}

// AVX2 where the CPU has it (AVX-512 measured no faster). Rust never
// contracts or reassociates floating-point operations, so both variants
// compute the same bits.
#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
fn step_avx2(a: &mut Arrays, gas: &[GasComponent; 2], ratio: Option<f64>) -> std::result::Result<f64, usize> {
    step_generic(a, gas, ratio)
}

fn step(a: &mut Arrays, gas: &[GasComponent; 2], ratio: Option<f64>) -> std::result::Result<f64, usize> {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the feature was detected at run time.
            return unsafe { step_avx2(a, gas, ratio) };
        }
    }
    step_generic(a, gas, ratio)
}

/// Marches `field` with the Rusanov scheme to `t_end` at the given CFL.
pub(crate) fn march(field: Field, cfl: f64, t_end: f64) -> Result<Field> {
    debug_assert!(supports(&field));
    let n = field.cells.len();
    let col = |k: usize| field.cells.iter().map(|u| u[k]).collect::<Vec<f64>>();
    let mut a = Arrays {
        rho: col(0),
        mom: col(1),
        ener: col(2),
        ry: col(3),
        vel: vec![0.0; n],
        p: vec![0.0; n],
        speed: vec![0.0; n],
        flux: std::array::from_fn(|_| vec![0.0; n + 1]),
    };
    let gas = field.model.gas;
    let dx = field.grid.dx[0];
    let bad = |a: &Arrays, i: usize| {
        Error::unphysical(format!(
            "inadmissible state rho = {}, rho_u = {}, rho_E = {}, rho_Y1 = {}",
            a.rho[i], a.mom[i], a.ener[i], a.ry[i]
        ))
        .at(field.location(i))
    };
    let mut time = 0.0;
    let mut max_speed = step(&mut a, &gas, None).map_err(|i| bad(&a, i))?;
    while time < t_end {
        let dt = (cfl * (dx / max_speed)).min(t_end - time);
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::NonFinite {
                what: format!("time step {dt}"),
                location: None,
            });
        }
        max_speed = step(&mut a, &gas, Some(dt / dx)).map_err(|i| bad(&a, i))?;
        time += dt;
    }
    let cells = (0..n)
        .map(|i| Conserved::from_slice(&[a.rho[i], a.mom[i], a.ener[i], a.ry[i]]))
        .collect();
    Field::new(field.model, field.grid, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases;
    use crate::flux::SchemeKind;
    use crate::solver::{self, RunOverrides};

    #[test]
    fn matches_generic_stepper_bitwise() {
        for name in ["sod_unequal_gamma", "stiff_shock_tube"] {
            let case = cases::get_case(name).unwrap();
            let ov = RunOverrides {
                cells: Some(vec![120]),
                t_end: Some(0.05),
                ..Default::default()
            };
            let generic = solver::run_observed(&case, SchemeKind::Rusanov, &ov, |_, _| {})
                .unwrap()
                .field;
            let grid = solver::case_grid(&case, &ov).unwrap();
            let start = cases::sample_initial(&case, &grid).unwrap();
            assert!(supports(&start));
            let lean = march(start, case.cfl, 0.05).unwrap();
            assert_eq!(lean.cells, generic.cells, "{name}");
        }
    }
}
