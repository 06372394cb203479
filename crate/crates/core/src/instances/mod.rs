//! Concrete evs instances and single-axiom mutants.

mod cone;
mod hyperspace;
pub mod mutants;
mod norms;

use std::fmt;
use std::str::FromStr;

use crate::evs::{check_axioms, AxiomReport, EvsError};
use crate::norm::NormError;

pub use cone::{cone_add, cone_leq, cone_smul, ConeInstance, ConePoint};
pub use hyperspace::{minkowski_sum, set_scale, subset_leq, FinitePointSet, HyperspaceInstance};
pub use mutants::{
    CubicOrder, InflatedPrimitives, PuncturedCone, SignedScaling, SkewAddition, SquaredScaling,
    StickyFlag,
};
pub use norms::{checker_config, norm_samples, NormInstance};

/// The shipped evs instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceId {
    Norms,
    Hyperspace,
    Cone,
}

impl InstanceId {
    pub const ALL: [InstanceId; 3] = [InstanceId::Norms, InstanceId::Hyperspace, InstanceId::Cone];
}

impl fmt::Display for InstanceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceId::Norms => "norms",
            InstanceId::Hyperspace => "hyperspace",
            InstanceId::Cone => "cone",
        })
    }
}

impl FromStr for InstanceId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "norms" => Ok(InstanceId::Norms),
            "hyperspace" => Ok(InstanceId::Hyperspace),
            "cone" => Ok(InstanceId::Cone),
            _ => Err(format!("unknown instance '{s}' (expected norms, hyperspace or cone)")),
        }
    }
}

/// Runs the axiom checker on a shipped instance. `dim` is `n` for `N(R^n)`,
/// the ambient dimension for point sets and `m` for the cone.
pub fn check_instance(
    id: InstanceId,
    dim: usize,
    seed: u64,
    n_samples: usize,
    n_scalars: usize,
) -> Result<AxiomReport, EvsError> {
    let bad_dim = |e: NormError| EvsError::Replay(e.to_string());
    match id {
        InstanceId::Norms => check_axioms(&NormInstance::new(dim).map_err(bad_dim)?, seed, n_samples, n_scalars),
        InstanceId::Hyperspace => check_axioms(
            &HyperspaceInstance::new(dim).map_err(bad_dim)?,
            seed,
            n_samples,
            n_scalars,
        ),
        InstanceId::Cone => check_axioms(&ConeInstance::new(dim).map_err(bad_dim)?, seed, n_samples, n_scalars),
    }
}

/// The six single-axiom mutants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutant {
    SkewAddition,
    CubicOrder,
    SquaredScaling,
    StickyFlag,
    InflatedPrimitives,
    PuncturedCone,
}

impl Mutant {
    pub const ALL: [Mutant; 6] = [
        Mutant::SkewAddition,
        Mutant::CubicOrder,
        Mutant::SquaredScaling,
        Mutant::StickyFlag,
        Mutant::InflatedPrimitives,
        Mutant::PuncturedCone,
    ];

    /// Label of the axiom the mutant violates.
    pub fn broken_axiom(&self) -> &'static str {
        match self {
            Mutant::SkewAddition => "A1",
            Mutant::CubicOrder => "A2",
            Mutant::SquaredScaling => "A3",
            Mutant::StickyFlag => "A4",
            Mutant::InflatedPrimitives => "A5",
            Mutant::PuncturedCone => "A6",
        }
    }

    pub fn check(&self, seed: u64, n_samples: usize, n_scalars: usize) -> Result<AxiomReport, EvsError> {
        match self {
            Mutant::SkewAddition => check_axioms(&SkewAddition, seed, n_samples, n_scalars),
            Mutant::CubicOrder => check_axioms(&CubicOrder, seed, n_samples, n_scalars),
            Mutant::SquaredScaling => check_axioms(&SquaredScaling, seed, n_samples, n_scalars),
            Mutant::StickyFlag => check_axioms(&StickyFlag, seed, n_samples, n_scalars),
            Mutant::InflatedPrimitives => check_axioms(&InflatedPrimitives, seed, n_samples, n_scalars),
            Mutant::PuncturedCone => check_axioms(&PuncturedCone, seed, n_samples, n_scalars),
        }
    }
}
