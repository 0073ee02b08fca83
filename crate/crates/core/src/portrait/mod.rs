//! Global phase portraits on the Poincaré disc.

mod integrate;
mod seeds;
mod svg;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compactify::{ChartPoint, DiscDynamics};
use crate::error::Result;
use crate::field::make_sis_field;
use crate::sis::PortraitReport;

pub use integrate::{integrate_from, integrate_orbit, project_onto_line, Controls};
pub use seeds::{generic_ring, invariant_line_seeds, separatrix_seeds, singular_stops, Seed};
pub use svg::{render_svg, Style};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscPoint {
    pub x: f64,
    pub y: f64,
}

impl DiscPoint {
    pub fn new(x: f64, y: f64) -> Self {
        DiscPoint { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(&self, o: &DiscPoint) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn as_array(&self) -> [f64; 2] {
        [self.x, self.y]
    }
}

impl From<[f64; 2]> for DiscPoint {
    fn from(d: [f64; 2]) -> Self {
        DiscPoint { x: d[0], y: d[1] }
    }
}

/// Central projection of the plane onto the open unit disc.
pub fn project_to_disc(x: f64, y: f64) -> DiscPoint {
    ChartPoint::from_plane(x, y).to_disc().into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OriginTag {
    GenericSeed,
    /// Index into [`singular_stops`].
    SeparatrixOf(usize),
    /// Index into the report's invariant lines.
    InvariantLine(usize),
    Equator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Termination {
    ArcLength,
    /// Came within the stop radius of singular point `id`.
    NearSingular(usize),
    Equator,
    StepUnderflow,
    Stalled,
    MaxSteps,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<DiscPoint>,
    pub origin_tag: OriginTag,
    pub direction: Direction,
    pub termination: Termination,
    pub diagnostic: Option<String>,
}

impl Orbit {
    pub fn end(&self) -> DiscPoint {
        *self.points.last().expect("orbit has at least its seed")
    }

    pub fn arc_length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(&w[1])).sum()
    }
}

#[derive(Clone, Debug)]
pub struct PortraitOptions {
    pub controls: Controls,
    /// Offset of separatrix seeds from their singular point.
    pub separatrix_offset: f64,
    pub ring: bool,
}

impl Default for PortraitOptions {
    fn default() -> Self {
        PortraitOptions {
            controls: Controls::default(),
            separatrix_offset: 1e-4,
            ring: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Portrait {
    pub orbits: Vec<Orbit>,
    pub diagnostics: Vec<String>,
}

/// Traces separatrices, orbits along invariant lines and a fixed ring of
/// generic orbits. Output order depends only on the report.
pub fn build_portrait(report: &PortraitReport, opts: &PortraitOptions) -> Result<Portrait> {
    let field = make_sis_field(&report.params)?;
    let dynamics = DiscDynamics::new(&field);
    let stops = singular_stops(report);
    let mut seeds = separatrix_seeds(report, opts.separatrix_offset);
    seeds.extend(invariant_line_seeds(report));
    if opts.ring {
        seeds.extend(generic_ring());
    }
    let orbits: Vec<Orbit> = seeds
        .par_iter()
        .map(|s| integrate_from(&dynamics, s, &opts.controls, &stops))
        .collect();
    let diagnostics = orbits.iter().filter_map(|o| o.diagnostic.clone()).collect();
    Ok(Portrait {
        orbits,
        diagnostics,
    })
}
