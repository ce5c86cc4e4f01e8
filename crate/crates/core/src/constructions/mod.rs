//! The lattice constructions: each builds a complex of groups together with a
//! morphism to the chamber complex and certifies the covering.

mod fp;
mod hypothesis;
mod ra;
mod surface;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{FieldCtx, DEFAULT_ORDER_CAP};
use crate::coxeter::{Gcm, Subset};
use crate::error::{Error, Result};

pub use fp::{build_fp, fp_hypotheses, free_rank_formula, FpGeometry, FpOutcome};
pub use hypothesis::{find_induced_cycle, surface_subgroup_hypothesis, SurfaceSubgroupReport, EXHAUSTIVE_LIMIT};
pub use ra::{
    build_ra_chamber_transitive, build_ra_two_orbit, choose_g, ra_chamber_transitive_assemble,
    ra_chamber_transitive_hypotheses, ra_local_groups, ra_two_orbit_assemble, ra_two_orbit_groups,
    ra_two_orbit_hypotheses, ConditionCheck, RaChamberTransitive, RaTwoOrbit,
};
pub use surface::{
    bourdon_hypotheses, build_bourdon_surface, faces_for, is_nullhomologous, orient_geodesics, search_tessellation,
    surface_scwol, Bourdon, Geodesic, SearchOutcome, SurfaceComplex,
};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    RaChamberTransitive,
    RaTwoOrbit,
    BourdonSurface,
    FpFree,
    SurfaceSubgroup,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 5] = [
        ConstructionKind::RaChamberTransitive,
        ConstructionKind::RaTwoOrbit,
        ConstructionKind::BourdonSurface,
        ConstructionKind::FpFree,
        ConstructionKind::SurfaceSubgroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::RaChamberTransitive => "ra_chamber_transitive",
            ConstructionKind::RaTwoOrbit => "ra_two_orbit",
            ConstructionKind::BourdonSurface => "bourdon_surface",
            ConstructionKind::FpFree => "fp_free",
            ConstructionKind::SurfaceSubgroup => "surface_subgroup",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown construction `{s}`")))
    }
}

/// Everything a construction needs: the Cartan matrix, the field and the
/// construction-specific extras.
#[derive(Debug, Clone)]
pub struct ConstructionRequest {
    pub kind: ConstructionKind,
    pub gcm: Gcm,
    pub p: u64,
    pub h: u32,
    /// Number of faces of the tessellated surface.
    pub faces: Option<usize>,
    pub genus: Option<u64>,
    /// Expected free-product factors.
    pub partition: Option<Vec<Subset>>,
    pub budget: u64,
    pub cap: usize,
}

impl ConstructionRequest {
    pub fn new(kind: ConstructionKind, gcm: Gcm, p: u64, h: u32) -> Self {
        ConstructionRequest {
            kind,
            gcm,
            p,
            h,
            faces: None,
            genus: None,
            partition: None,
            budget: DEFAULT_BUDGET,
            cap: DEFAULT_ORDER_CAP,
        }
    }

    pub fn field(&self) -> Result<Arc<FieldCtx>> {
        Ok(Arc::new(FieldCtx::new(self.p, self.h)?))
    }
}

/// Rejects with a hypothesis error unless `cond` holds.
pub(crate) fn require(cond: bool, what: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Hypothesis(what.into()))
    }
}
