//! Flux-vector splittings for the 1D mass-fraction model.

use super::InterfaceFlux;
use crate::error::Result;
use crate::state::{Axis, CellView, Conserved, Model};

/// `F = F⁺ + F⁻`
#[derive(Debug, Clone, Copy)]
pub struct Split {
    pub plus: Conserved,
    pub minus: Conserved,
}

fn zero_split(v: &CellView) -> Split {
    Split {
        plus: Conserved::zeros(v.u.len()),
        minus: Conserved::zeros(v.u.len()),
    }
}

fn species_y(v: &CellView) -> f64 {
    v.u[3] / v.rho
}

pub(crate) fn steger_warming_of(v: &CellView) -> Split {
    let mut s = zero_split(v);
    if v.vn - v.a >= 0.0 {
        s.plus = v.flux;
        return s;
    }
    if v.vn + v.a <= 0.0 {
        s.minus = v.flux;
        return s;
    }
    let (g, rho, u, a) = (v.gamma, v.rho, v.vn, v.a);
    let h = (v.u[2] + v.p) / rho;
    let y = species_y(v);
    let lam = [u - a, u, u + a];
    let part = |sign: f64| {
        let l: Vec<f64> = lam.iter().map(|&x| 0.5 * (x + sign * x.abs())).collect();
        let c = rho / (2.0 * g);
        let mass = c * (l[0] + 2.0 * (g - 1.0) * l[1] + l[2]);
        let mom = c * ((u - a) * l[0] + 2.0 * (g - 1.0) * u * l[1] + (u + a) * l[2]);
        let en = c * ((h - u * a) * l[0] + (g - 1.0) * u * u * l[1] + (h + u * a) * l[2]);
        Conserved::from_slice(&[mass, mom, en, mass * y])
    };
    s.plus = part(1.0);
    s.minus = part(-1.0);
    s
}

pub(crate) fn van_leer_of(v: &CellView) -> Split {
    let mut s = zero_split(v);
    let m = v.vn / v.a;
    if m >= 1.0 {
        s.plus = v.flux;
        return s;
    }
    if m <= -1.0 {
        s.minus = v.flux;
        return s;
    }
    let (g, rho, a) = (v.gamma, v.rho, v.a);
    let y = species_y(v);
    let part = |sign: f64| {
        let mass = sign * 0.25 * rho * a * (1.0 + sign * m).powi(2);
        let w = 0.5 * (g - 1.0) * m + sign;
        let mom = mass * (2.0 * a / g) * w;
        let en = mass * (2.0 * a * a / (g * g - 1.0)) * w * w;
        Conserved::from_slice(&[mass, mom, en, mass * y])
    };
    s.plus = part(1.0);
    s.minus = part(-1.0);
    s
}

fn face(l: &CellView, r: &CellView, split: fn(&CellView) -> Split) -> InterfaceFlux {
    let fl = split(l).plus;
    let fr = split(r).minus;
    let mut flux = Conserved::zeros(l.u.len());
    for k in 0..flux.len() {
        flux[k] = fl[k] + fr[k];
    }
    InterfaceFlux {
        flux,
        alpha: Conserved::zeros(l.u.len()),
        clipped: 0,
        face_velocity: 0.5 * (l.vn + r.vn),
    }
}

pub(crate) fn steger_warming_views(l: &CellView, r: &CellView) -> InterfaceFlux {
    face(l, r, steger_warming_of)
}

pub(crate) fn van_leer_views(l: &CellView, r: &CellView) -> InterfaceFlux {
    face(l, r, van_leer_of)
}

fn checked_view(model: &Model, u: &Conserved) -> Result<CellView> {
    super::SchemeKind::StegerWarming.check_model(model)?;
    model.view(u, Axis::X)
}

pub fn steger_warming_split(model: &Model, u: &Conserved) -> Result<Split> {
    Ok(steger_warming_of(&checked_view(model, u)?))
}

pub fn van_leer_split(model: &Model, u: &Conserved) -> Result<Split> {
    Ok(van_leer_of(&checked_view(model, u)?))
}

pub fn steger_warming_flux(model: &Model, left: &Conserved, right: &Conserved) -> Result<Conserved> {
    Ok(steger_warming_views(&checked_view(model, left)?, &checked_view(model, right)?).flux)
}

pub fn van_leer_flux(model: &Model, left: &Conserved, right: &Conserved) -> Result<Conserved> {
    Ok(van_leer_views(&checked_view(model, left)?, &checked_view(model, right)?).flux)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{ModelKind, Primitive};
    use crate::thermo::GasComponent;
    use proptest::prelude::*;

    fn mf() -> Model {
        Model::new(
            ModelKind::MassFraction,
            1,
            GasComponent::perfect(1.4),
            GasComponent::perfect(1.6),
        )
        .unwrap()
    }

    fn sum_close(s: &Split, f: &Conserved, tol: f64) -> bool {
        let scale = f.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        (0..f.len()).all(|k| (s.plus[k] + s.minus[k] - f[k]).abs() <= tol * scale)
    }

    #[test]
    fn fluid_at_rest_splits_symmetrically() {
        let m = mf();
        let u = m.to_conserved(&Primitive::mass_fraction(1.0, 0.0, 1.0, 1.0)).unwrap();
        for s in [steger_warming_split(&m, &u).unwrap(), van_leer_split(&m, &u).unwrap()] {
            assert!((s.plus[0] + s.minus[0]).abs() < 1e-15);
            assert!((s.plus[1] - 0.5).abs() < 1e-14, "{s:?}");
            assert!((s.minus[1] - 0.5).abs() < 1e-14, "{s:?}");
        }
    }

    #[test]
    fn van_leer_subsonic_example() {
        // ρ = 1, p = 1/1.4 so a = 1; M = 0.5
        let m = Model::new(
            ModelKind::MassFraction,
            1,
            GasComponent::perfect(1.4),
            GasComponent::perfect(1.4),
        )
        .unwrap();
        let u = m
            .to_conserved(&Primitive::mass_fraction(1.0, 0.5, 1.0 / 1.4, 1.0))
            .unwrap();
        let s = van_leer_split(&m, &u).unwrap();
        assert!((s.plus[0] - 0.5625).abs() < 1e-14);
        assert!((s.minus[0] + 0.0625).abs() < 1e-14);
        let f = m.physical_flux(&u, Axis::X).unwrap();
        assert!(sum_close(&s, &f, 1e-14), "{s:?} {f:?}");
    }

    #[test]
    fn supersonic_splits_are_one_sided() {
        let m = mf();
        for u_vel in [3.0, -3.0] {
            let u = m.to_conserved(&Primitive::mass_fraction(1.0, u_vel, 1.0, 0.4)).unwrap();
            let f = m.physical_flux(&u, Axis::X).unwrap();
            for s in [steger_warming_split(&m, &u).unwrap(), van_leer_split(&m, &u).unwrap()] {
                let (full, empty) = if u_vel > 0.0 {
                    (s.plus, s.minus)
                } else {
                    (s.minus, s.plus)
                };
                assert_eq!(&full[..], &f[..]);
                assert!(empty.iter().all(|&v| v == 0.0));
            }
        }
    }

    #[test]
    fn splits_reject_gamma_model() {
        let m = Model::new(
            ModelKind::GammaBased,
            1,
            GasComponent::perfect(1.4),
            GasComponent::perfect(1.4),
        )
        .unwrap();
        let u = Conserved::from_slice(&[1.0, 0.0, 2.5, 2.5, 0.0]);
        assert!(steger_warming_split(&m, &u).is_err());
        assert!(van_leer_flux(&m, &u, &u).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn splits_add_up_to_physical_flux(rho in 0.05f64..20.0, vel in -4.0f64..4.0, p in 0.05f64..20.0, y in 0.0f64..=1.0) {
            let m = mf();
            let u = m.to_conserved(&Primitive::mass_fraction(rho, vel, p, y)).unwrap();
            let f = m.physical_flux(&u, Axis::X).unwrap();
            prop_assert!(sum_close(&steger_warming_split(&m, &u).unwrap(), &f, 1e-13));
            let vl = van_leer_split(&m, &u).unwrap();
            prop_assert!(sum_close(&vl, &f, 1e-13));
            prop_assert!(vl.plus[0] >= 0.0 && vl.minus[0] <= 0.0);
        }
    }
}
