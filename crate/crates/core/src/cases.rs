//! Registry of the test problems as data.
//!
//! Each case is a plain [`CaseSpec`] that serializes to TOML, so the CLI can
//! print a registered case, edit it and run it back through `--case-file`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{Field, Grid};
use crate::state::{Model, ModelKind, Primitive};
use crate::thermo::GasComponent;

/// Final time, or march to steady state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndTime {
    Time(f64),
    Steady,
}

/// Where a region's state applies. Intervals are half-open in x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    Interval { lo: f64, hi: f64 },
    Disk { center: [f64; 2], radius: f64 },
    OutsideDisk { center: [f64; 2], radius: f64 },
}

impl Shape {
    pub fn contains(&self, p: [f64; 2]) -> bool {
        let r2 = |c: [f64; 2]| (p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2);
        match *self {
            Shape::Interval { lo, hi } => lo <= p[0] && p[0] < hi,
            Shape::Disk { center, radius } => r2(center) <= radius * radius,
            Shape::OutsideDisk { center, radius } => r2(center) > radius * radius,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    #[serde(flatten)]
    pub shape: Shape,
    pub state: Primitive,
}

/// Pressure and velocity of an exact solution that is uniform in both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformFlow {
    pub p: f64,
    pub vel: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub model: ModelKind,
    pub dims: usize,
    pub extent: Vec<f64>,
    pub cells: Vec<usize>,
    pub cfl: f64,
    pub t_end: EndTime,
    pub gas: [GasComponent; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_uniform: Option<UniformFlow>,
    pub regions: Vec<Region>,
}

impl CaseSpec {
    pub fn build_model(&self) -> Result<Model> {
        Model::new(self.model, self.dims, self.gas[0], self.gas[1])
    }

    pub fn is_steady(&self) -> bool {
        self.t_end == EndTime::Steady
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(format!("cannot serialize case: {e}")))
    }

    pub fn from_toml(text: &str) -> Result<CaseSpec> {
        let c: CaseSpec = toml::from_str(text).map_err(|e| Error::Config(format!("invalid case file: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    /// Model, grid and every region state are usable.
    pub fn validate(&self) -> Result<()> {
        let model = self.build_model()?;
        Grid::new(self.dims, &self.extent, &self.cells)?;
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::Config(format!("CFL must lie in (0, 1], got {}", self.cfl)));
        }
        if let EndTime::Time(t) = self.t_end {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(Error::Config(format!("end time must be non-negative, got {t}")));
            }
        }
        if self.regions.is_empty() {
            return Err(Error::Config(format!("case '{}' has no regions", self.name)));
        }
        for r in &self.regions {
            let u = model.to_conserved(&r.state)?;
            model.to_primitive(&u)?;
        }
        Ok(())
    }
}

const BUBBLE_GAS: (f64, f64, f64, f64) = (1.241, 2.753, 1.4, 0.0);

fn two_state_mf(
    name: &str,
    description: &str,
    l: (f64, f64, f64),
    r: (f64, f64, f64),
    gammas: (f64, f64),
    t_end: EndTime,
) -> CaseSpec {
    // (ρ, u, p) per side; Y = 1 on the left, 0 on the right
    CaseSpec {
        name: name.into(),
        description: description.into(),
        model: ModelKind::MassFraction,
        dims: 1,
        extent: vec![1.0],
        cells: vec![100],
        cfl: 0.45,
        t_end,
        gas: [GasComponent::perfect(gammas.0), GasComponent::perfect(gammas.1)],
        exact_uniform: None,
        regions: vec![
            Region {
                shape: Shape::Interval { lo: 0.0, hi: 0.5 },
                state: Primitive::mass_fraction(l.0, l.1, l.2, 1.0),
            },
            Region {
                shape: Shape::Interval { lo: 0.5, hi: 1.0 },
                state: Primitive::mass_fraction(r.0, r.1, r.2, 0.0),
            },
        ],
    }
}

/// (ρ, u, p, γ, p∞)
type GammaState = (f64, f64, f64, f64, f64);

fn gb_state(s: GammaState) -> Primitive {
    Primitive::gamma_based(s.0, s.1, s.2, s.3, s.4)
}

fn gb_case(name: &str, description: &str, intervals: &[(f64, f64, GammaState)], cells: usize, t_end: f64) -> CaseSpec {
    let first = intervals[0].2;
    let last = intervals[intervals.len() - 1].2;
    CaseSpec {
        name: name.into(),
        description: description.into(),
        model: ModelKind::GammaBased,
        dims: 1,
        extent: vec![1.0],
        cells: vec![cells],
        cfl: 0.45,
        t_end: EndTime::Time(t_end),
        gas: [
            GasComponent::stiffened(first.3, first.4),
            GasComponent::stiffened(last.3, last.4),
        ],
        exact_uniform: None,
        regions: intervals
            .iter()
            .map(|&(lo, hi, s)| Region {
                shape: Shape::Interval { lo, hi },
                state: gb_state(s),
            })
            .collect(),
    }
}

fn bubble(
    name: &str,
    description: &str,
    center: [f64; 2],
    radius: f64,
    inside: Primitive,
    outside: Primitive,
    t_end: f64,
) -> CaseSpec {
    let gas = |p: &Primitive| match p.comp {
        crate::state::Composition::Gamma { gamma, p_inf } => GasComponent::stiffened(gamma, p_inf),
        crate::state::Composition::MassFraction { .. } => unreachable!("bubble cases use the gamma model"),
    };
    CaseSpec {
        name: name.into(),
        description: description.into(),
        model: ModelKind::GammaBased,
        dims: 2,
        extent: vec![1.0, 1.0],
        cells: vec![100, 100],
        cfl: 0.45,
        t_end: EndTime::Time(t_end),
        gas: [gas(&inside), gas(&outside)],
        exact_uniform: None,
        regions: vec![
            Region {
                shape: Shape::Disk { center, radius },
                state: inside,
            },
            Region {
                shape: Shape::OutsideDisk { center, radius },
                state: outside,
            },
        ],
    }
}

fn build(name: &str) -> Option<CaseSpec> {
    let c = match name {
        "steady_contact" => {
            let mut c = two_state_mf(
                name,
                "Stationary contact between two perfect gases at uniform pressure",
                (1.0, 0.0, 1.0),
                (0.125, 0.0, 1.0),
                (1.4, 1.6),
                EndTime::Steady,
            );
            c.exact_uniform = Some(UniformFlow {
                p: 1.0,
                vel: [0.0, 0.0],
            });
            c
        }
        "isolated_front" => two_state_mf(
            name,
            "Single-gas Riemann problem used to test mass-fraction bounds",
            (1.0, -1.0, 1.0),
            (1.0, 1.0, 5.0),
            (1.4, 1.4),
            EndTime::Time(0.21),
        ),
        "sod_unequal_gamma" => two_state_mf(
            name,
            "Strong shock tube with gamma 1.6 | 1.4",
            (1.0, 0.0, 1000.0),
            (0.125, 0.0, 1.0),
            (1.6, 1.4),
            EndTime::Time(0.21),
        ),
        "sod_unequal_gamma_figvariant" => two_state_mf(
            name,
            "Strong shock tube with gamma 1.6 | 1.2",
            (1.0, 0.0, 1000.0),
            (0.125, 0.0, 1.0),
            (1.6, 1.2),
            EndTime::Time(0.21),
        ),
        "stiff_shock_tube" => two_state_mf(
            name,
            "Strong shock tube with equal gamma 1.4",
            (1.0, 0.0, 1000.0),
            (0.125, 0.0, 1.0),
            (1.4, 1.4),
            EndTime::Time(0.21),
        ),
        "interface_only_perfect" => {
            let mut c = gb_case(
                name,
                "Material interface between two perfect gases advected at u = 1",
                &[
                    (0.0, 0.2, (1.0, 1.0, 1.0, 1.4, 0.0)),
                    (0.2, 1.0, (0.125, 1.0, 1.0, 1.2, 0.0)),
                ],
                100,
                0.12,
            );
            c.exact_uniform = Some(UniformFlow {
                p: 1.0,
                vel: [1.0, 0.0],
            });
            c
        }
        "interface_only_stiff" => {
            let mut c = gb_case(
                name,
                "Material interface between a perfect and a stiffened gas advected at u = 1",
                &[
                    (0.0, 0.2, (1.0, 1.0, 1.0, 1.4, 0.0)),
                    (0.2, 1.0, (0.125, 1.0, 1.0, 4.0, 1.0)),
                ],
                100,
                0.12,
            );
            c.exact_uniform = Some(UniformFlow {
                p: 1.0,
                vel: [1.0, 0.0],
            });
            c
        }
        "liquid_gas_rp" => gb_case(
            name,
            "Gas-liquid Riemann problem, gas on the left",
            &[
                (0.0, 0.5, (1.241, 0.0, 2.753, 1.4, 0.0)),
                (0.5, 1.0, (1.0, 0.0, 3.059e-4, 5.5, 1.505)),
            ],
            100,
            0.1,
        ),
        "shock_contact_interaction" => gb_case(
            name,
            "Shock in a stiffened gas hitting a gas interface",
            &[
                (0.0, 0.5, (1.0, 0.0, 1.0, 1.4, 0.0)),
                (0.5, 0.6, (5.0, 0.0, 1.0, 4.0, 1.0)),
                (0.6, 1.0, (7.093, -0.7288, 10.0, 4.0, 1.0)),
            ],
            200,
            0.2,
        ),
        "moving_interface_2d" => {
            let inside = Primitive::gamma_based(1.0, 1.0, 1.0, 1.4, 0.0).with_vel([1.0, 1.0]);
            let outside = Primitive::gamma_based(0.125, 1.0, 1.0, 4.0, 1.0).with_vel([1.0, 1.0]);
            let mut c = bubble(
                name,
                "Circular interface advected diagonally at uniform pressure",
                [0.25, 0.25],
                0.16,
                inside,
                outside,
                0.36,
            );
            c.exact_uniform = Some(UniformFlow {
                p: 1.0,
                vel: [1.0, 1.0],
            });
            c
        }
        "bubble_explosion_2d" => {
            let (rho, p, g, pi) = BUBBLE_GAS;
            bubble(
                name,
                "High-pressure gas bubble expanding in water",
                [0.5, 0.5],
                0.2,
                Primitive::gamma_based(rho, 0.0, p, g, pi),
                Primitive::gamma_based(0.991, 0.0, 3.059e-4, 5.5, 1.505),
                0.058,
            )
        }
        _ => return None,
    };
    Some(c)
}

/// Registered names, sorted.
pub fn case_names() -> Vec<&'static str> {
    let mut names = vec![
        "steady_contact",
        "isolated_front",
        "sod_unequal_gamma",
        "sod_unequal_gamma_figvariant",
        "stiff_shock_tube",
        "interface_only_perfect",
        "interface_only_stiff",
        "liquid_gas_rp",
        "shock_contact_interaction",
        "moving_interface_2d",
        "bubble_explosion_2d",
    ];
    names.sort_unstable();
    names
}

pub fn get_case(name: &str) -> Result<CaseSpec> {
    build(name).ok_or_else(|| Error::UnknownCase {
        name: name.into(),
        available: case_names().into_iter().map(String::from).collect(),
    })
}

pub fn all_cases() -> Vec<CaseSpec> {
    case_names().into_iter().filter_map(build).collect()
}

/// Cell-centred sampling: every cell takes the state of the first region
/// containing its center.
pub fn sample_initial(case: &CaseSpec, grid: &Grid) -> Result<Field> {
    let model = case.build_model()?;
    if grid.dims != case.dims {
        return Err(Error::Config(format!(
            "case '{}' is {}D but the grid is {}D",
            case.name, case.dims, grid.dims
        )));
    }
    let states = case
        .regions
        .iter()
        .map(|r| model.to_conserved(&r.state))
        .collect::<Result<Vec<_>>>()?;
    let mut cells = Vec::with_capacity(grid.len());
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            let c = grid.center(i, j);
            let k = case.regions.iter().position(|r| r.shape.contains(c)).ok_or_else(|| {
                Error::Config(format!(
                    "case '{}': no region contains the cell center {c:?}",
                    case.name
                ))
            })?;
            cells.push(states[k]);
        }
    }
    Field::new(model, *grid, cells)
}
