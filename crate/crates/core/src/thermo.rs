//! Stiffened-gas equation of state and the two-species mixing rule.
//!
//! The stiffened gas law `(p + γ p∞) / (γ − 1) = ρ e` covers both the perfect
//! gas (`p∞ = 0`) and the liquid-like components used by the γ-based model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Thermodynamic constants of one species.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasComponent {
    pub gamma: f64,
    #[serde(default = "default_cv")]
    pub cv: f64,
    #[serde(default)]
    pub p_inf: f64,
}

fn default_cv() -> f64 {
    1.0
}

impl GasComponent {
    pub fn new(gamma: f64, cv: f64, p_inf: f64) -> Result<Self> {
        let g = GasComponent { gamma, cv, p_inf };
        g.validate()?;
        Ok(g)
    }

    /// Perfect gas with the default unit `cv`.
    pub fn perfect(gamma: f64) -> Self {
        GasComponent {
            gamma,
            cv: 1.0,
            p_inf: 0.0,
        }
    }

    pub fn stiffened(gamma: f64, p_inf: f64) -> Self {
        GasComponent { gamma, cv: 1.0, p_inf }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 1.0) || !self.gamma.is_finite() {
            return Err(Error::Domain(format!("gamma must exceed 1, got {}", self.gamma)));
        }
        if !(self.cv > 0.0) || !self.cv.is_finite() {
            return Err(Error::Domain(format!("cv must be positive, got {}", self.cv)));
        }
        if !(self.p_inf >= 0.0) || !self.p_inf.is_finite() {
            return Err(Error::Domain(format!("p_inf must be non-negative, got {}", self.p_inf)));
        }
        Ok(())
    }

    pub fn thermo(&self) -> MixtureThermo {
        MixtureThermo {
            gamma: self.gamma,
            p_inf: self.p_inf,
        }
    }
}

/// Effective (γ, p∞) of the local mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureThermo {
    pub gamma: f64,
    pub p_inf: f64,
}

impl MixtureThermo {
    pub fn perfect(gamma: f64) -> Self {
        MixtureThermo { gamma, p_inf: 0.0 }
    }
}

/// Mixture ratio of specific heats, `Σ Y_k γ_k c_v,k / Σ Y_k c_v,k`.
pub fn mixture_gamma(y1: f64, g1: &GasComponent, g2: &GasComponent) -> Result<f64> {
    let y2 = 1.0 - y1;
    let den = y1 * g1.cv + y2 * g2.cv;
    if !(den > 0.0) {
        return Err(Error::Domain(format!(
            "mixture cv is not positive (Y1 = {y1}, denominator = {den})"
        )));
    }
    if g1.gamma == g2.gamma {
        return Ok(g1.gamma);
    }
    Ok((y1 * g1.gamma * g1.cv + y2 * g2.gamma * g2.cv) / den)
}

/// Mixture specific heat at constant volume.
pub fn mixture_cv(y1: f64, g1: &GasComponent, g2: &GasComponent) -> f64 {
    y1 * g1.cv + (1.0 - y1) * g2.cv
}

pub fn pressure_from_internal_energy(rho: f64, e: f64, th: MixtureThermo) -> f64 {
    (th.gamma - 1.0) * rho * e - th.gamma * th.p_inf
}

pub fn internal_energy_from_pressure(rho: f64, p: f64, th: MixtureThermo) -> Result<f64> {
    if !(th.gamma > 1.0) {
        return Err(Error::Domain(format!("gamma must exceed 1, got {}", th.gamma)));
    }
    Ok((p + th.gamma * th.p_inf) / ((th.gamma - 1.0) * rho))
}

/// Stiffened-gas sound speed `sqrt(γ (p + p∞) / ρ)`.
pub fn sound_speed(rho: f64, p: f64, th: MixtureThermo) -> Result<f64> {
    let a2 = th.gamma * (p + th.p_inf) / rho;
    if a2 >= 0.0 && rho > 0.0 {
        Ok(a2.sqrt())
    } else {
        Err(Error::unphysical(format!(
            "negative sound-speed radicand (rho = {rho}, p = {p}, gamma = {}, p_inf = {})",
            th.gamma, th.p_inf
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn mixture_gamma_limits_and_midpoint() {
        let g1 = GasComponent::perfect(1.4);
        let g2 = GasComponent::perfect(1.6);
        assert_eq!(mixture_gamma(1.0, &g1, &g2).unwrap(), 1.4);
        assert_eq!(mixture_gamma(0.0, &g1, &g2).unwrap(), 1.6);
        assert!((mixture_gamma(0.5, &g1, &g2).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn mixture_gamma_rejects_degenerate_weights() {
        let g1 = GasComponent::perfect(1.4);
        let g2 = GasComponent::perfect(1.6);
        // cv weights that cancel at y1 = 1.5
        let g3 = GasComponent { cv: 3.0, ..g2 };
        assert!(mixture_gamma(1.5, &g1, &g3).is_err());
        assert!(mixture_gamma(f64::NAN, &g1, &g2).is_err());
    }

    #[test]
    fn eos_examples() {
        let air = MixtureThermo::perfect(1.4);
        assert!((pressure_from_internal_energy(1.0, 2.5, air) - 1.0).abs() < 1e-15);
        assert!((internal_energy_from_pressure(1.0, 1.0, air).unwrap() - 2.5).abs() < 1e-15);
        assert_eq!(
            internal_energy_from_pressure(1.0, 0.0, MixtureThermo::perfect(2.0)).unwrap(),
            0.0
        );
        // 6.8825 is the volumetric energy ρe = p / (γ - 1) of the bubble gas.
        let e = internal_energy_from_pressure(1.241, 2.753, air).unwrap();
        assert!(rel(1.241 * e, 6.8825) < 1e-14);
        assert!(internal_energy_from_pressure(1.0, 1.0, MixtureThermo::perfect(1.0)).is_err());
    }

    #[test]
    fn perfect_gas_limit_of_eos() {
        let th = MixtureThermo::perfect(1.67);
        for &(rho, e) in &[(0.3, 2.0), (4.0, 0.1), (1e3, 7.5)] {
            assert_eq!(pressure_from_internal_energy(rho, e, th), (1.67 - 1.0) * rho * e);
        }
    }

    #[test]
    fn water_state_round_trip() {
        let water = MixtureThermo {
            gamma: 5.5,
            p_inf: 1.505,
        };
        let e = internal_energy_from_pressure(0.991, 3.059e-4, water).unwrap();
        let p = pressure_from_internal_energy(0.991, e, water);
        // p is tiny next to γ p∞, so the relative check is against the
        // magnitude of the terms that cancel.
        assert!((p - 3.059e-4).abs() <= 1e-14 * (water.gamma * water.p_inf));
    }

    #[test]
    fn sound_speed_examples() {
        let air = MixtureThermo::perfect(1.4);
        let a = sound_speed(1.0, 1.0, air).unwrap();
        assert!((a - 1.4f64.sqrt()).abs() < 1e-15);
        assert!((a - 1.183_215_956_619_923).abs() < 1e-12);
        assert_eq!(sound_speed(4.0, 1.0, air).unwrap(), a / 2.0);
        let water = MixtureThermo {
            gamma: 5.5,
            p_inf: 1.505,
        };
        let aw = sound_speed(0.991, 3.059e-4, water).unwrap();
        assert!((aw - 2.8904).abs() < 5e-5, "{aw}");
        assert!(sound_speed(1.0, -2.0, water).is_err());
        assert!(sound_speed(-1.0, 1.0, air).is_err());
    }

    proptest! {
        #[test]
        fn eos_round_trip(rho in 1e-3f64..1e3, p in 1e-4f64..1e4, gamma in 1.01f64..6.0, p_inf in 0.0f64..10.0) {
            let th = MixtureThermo { gamma, p_inf };
            let e = internal_energy_from_pressure(rho, p, th).unwrap();
            let back = pressure_from_internal_energy(rho, e, th);
            // Relative to the largest term in the cancellation.
            let scale = p.abs().max(gamma * p_inf);
            prop_assert!((back - p).abs() <= 1e-14 * scale * 4.0);
        }

        #[test]
        fn perfect_sound_speed_is_bitwise(rho in 1e-3f64..1e3, p in 1e-4f64..1e4, gamma in 1.01f64..6.0) {
            let a = sound_speed(rho, p, MixtureThermo::perfect(gamma)).unwrap();
            prop_assert_eq!(a, (gamma * p / rho).sqrt());
        }

        #[test]
        fn mixture_gamma_bounded_and_monotone(
            g1 in 1.05f64..3.0, g2 in 1.05f64..3.0,
            cv1 in 0.1f64..5.0, cv2 in 0.1f64..5.0,
            ya in 0.0f64..=1.0, yb in 0.0f64..=1.0,
        ) {
            let a = GasComponent { gamma: g1, cv: cv1, p_inf: 0.0 };
            let b = GasComponent { gamma: g2, cv: cv2, p_inf: 0.0 };
            let lo = g1.min(g2) * (1.0 - 1e-15);
            let hi = g1.max(g2) * (1.0 + 1e-15);
            let ga = mixture_gamma(ya, &a, &b).unwrap();
            let gb = mixture_gamma(yb, &a, &b).unwrap();
            prop_assert!(ga >= lo && ga <= hi);
            // Larger Y1 pulls γ toward γ1.
            if ya < yb {
                prop_assert!((gb - ga) * (g1 - g2) >= -1e-15);
            }
        }
    }
}
