//! Finite fields, rank-one matrix groups over them, and permutation groups.

pub mod field;
pub mod finite;
pub mod group;
pub mod levi;
pub mod mat2;
pub mod quad;
pub mod torus;

pub use field::{FieldCtx, Fq};
pub use finite::{ai_generators, build_ai, nonsplit_torus, sl2_group, torus_normalizer, AiCase, RankOneData};
pub use group::{FiniteActionGroup, Perm, DEFAULT_ORDER_CAP};
pub use levi::{LeviElement, LeviModel};
pub use mat2::{proj_line, Mat2};
pub use quad::QuadExt;
pub use torus::{torus_character, TorusElement};
