//! Interface numerical fluxes.
//!
//! Central schemes share the form `F_I = ½(F_L + F_R) − d_I` and differ only
//! in the dissipative flux `d_I`:
//!
//! - MOVERS-n: per-equation Rankine-Hugoniot speed `|ΔF_i / ΔU_i|`, clipped
//!   into the eigenvalue range of the two neighbouring states.
//! - MOVERS-1: the energy equation's RH speed used for every equation.
//! - RICCA: the larger normal velocity plus a sound speed that is switched
//!   on only across a pressure jump.
//! - MOVERS+: unclipped RH diffusion weighted by a pressure switch plus an
//!   advective term.
//! - Rusanov: the local maximum wave speed.
//!
//! Steger-Warming, van Leer and Roe are classical upwind comparators for the
//! 1D mass-fraction model.

mod central;
mod fvs;
mod roe;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{Axis, CellView, Conserved, Model, ModelKind, MAX_VARS};

pub use central::{
    central_flux, movers_1_alpha, movers_n_alpha, movers_plus_diffusion, pressure_switch, ricca_alpha, rusanov_alpha,
    PerEquation, RICCA_DELTA,
};
pub use fvs::{steger_warming_flux, steger_warming_split, van_leer_flux, van_leer_split, Split};
pub use roe::{roe_average, roe_flux, RoeAverage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    MoversN,
    Movers1,
    MoversPlus,
    Ricca,
    Rusanov,
    StegerWarming,
    VanLeer,
    Roe,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 8] = [
        SchemeKind::MoversN,
        SchemeKind::Movers1,
        SchemeKind::MoversPlus,
        SchemeKind::Ricca,
        SchemeKind::Rusanov,
        SchemeKind::StegerWarming,
        SchemeKind::VanLeer,
        SchemeKind::Roe,
    ];

    pub const CENTRAL: [SchemeKind; 5] = [
        SchemeKind::MoversN,
        SchemeKind::Movers1,
        SchemeKind::MoversPlus,
        SchemeKind::Ricca,
        SchemeKind::Rusanov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::MoversN => "movers_n",
            SchemeKind::Movers1 => "movers_1",
            SchemeKind::MoversPlus => "movers_plus",
            SchemeKind::Ricca => "ricca",
            SchemeKind::Rusanov => "rusanov",
            SchemeKind::StegerWarming => "steger_warming",
            SchemeKind::VanLeer => "van_leer",
            SchemeKind::Roe => "roe",
        }
    }

    pub fn is_central(self) -> bool {
        SchemeKind::CENTRAL.contains(&self)
    }

    /// Upwind comparators are only formulated for the 1D mass-fraction model.
    pub fn check_model(self, model: &Model) -> Result<()> {
        if self.is_central() || (model.kind == ModelKind::MassFraction && model.dims == 1) {
            Ok(())
        } else {
            Err(Error::Unsupported {
                scheme: self.name().into(),
                what: format!("the {}D {} model", model.dims, model.kind),
            })
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace(['-', '+'], "_");
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.name() == norm || (norm == "movers_" && *k == SchemeKind::MoversPlus))
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown scheme '{s}'; available: {}",
                    SchemeKind::ALL.map(|k| k.name()).join(", ")
                ))
            })
    }
}

/// Numerical flux through one face, plus what produced it.
#[derive(Debug, Clone, Copy)]
pub struct InterfaceFlux {
    pub flux: Conserved,
    /// Per-equation diffusion coefficient actually applied. For MOVERS+ this
    /// is the effective `2 d_j / ΔU_j`; upwind comparators report zero.
    pub alpha: Conserved,
    /// Bit `i` set when wave-speed correction clipped equation `i`.
    pub clipped: u8,
    /// `½(V_nL + V_nR)`, the face velocity used by the quasi-conservative
    /// γ-model update.
    pub face_velocity: f64,
}

impl InterfaceFlux {
    pub fn was_clipped(&self, eq: usize) -> bool {
        eq < MAX_VARS && self.clipped & (1 << eq) != 0
    }
}

/// Flux between two precomputed cell views.
pub fn interface_flux(model: &Model, l: &CellView, r: &CellView, scheme: SchemeKind) -> Result<InterfaceFlux> {
    let out = match scheme {
        SchemeKind::StegerWarming => fvs::steger_warming_views(l, r),
        SchemeKind::VanLeer => fvs::van_leer_views(l, r),
        SchemeKind::Roe => roe::roe_views(model, l, r)?,
        _ => central::central_views(model, l, r, scheme)?,
    };
    if !out.flux.is_finite() {
        return Err(Error::NonFinite {
            what: format!("{scheme} flux {:?}", out.flux),
            location: None,
        });
    }
    Ok(out)
}

/// Flux between two conserved states along `axis`.
pub fn numerical_flux(
    model: &Model,
    left: &Conserved,
    right: &Conserved,
    scheme: SchemeKind,
    axis: Axis,
) -> Result<InterfaceFlux> {
    scheme.check_model(model)?;
    let l = model.view(left, axis)?;
    let r = model.view(right, axis)?;
    interface_flux(model, &l, &r, scheme)
}
