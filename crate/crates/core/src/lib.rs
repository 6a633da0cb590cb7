//! Exact Stokes matrices for the generalised Airy operators `∂ⁿ − yᵐ`.
//!
//! The pipeline runs entirely over the cyclotomic field Q(ζ_{n+m}):
//! λ-coefficients ([`cyclotomic`]), the companion-matrix monodromy of the
//! auxiliary hypergeometric system and its quiver ([`hypergeom`]), the
//! exponential dominance order ([`ordering`]) and the block-triangular Stokes
//! multipliers ([`stokes`]). The operator reductions linking `∂ⁿ − yᵐ` to the
//! hypergeometric operator are checked exactly in [`weyl`], and [`oracle`]
//! integrates the hypergeometric system numerically as an independent check
//! of the monodromy.

pub mod cyclotomic;
pub mod error;
pub mod hypergeom;
pub mod linalg;
pub mod oracle;
pub mod ordering;
pub mod poly;
pub mod stokes;
pub mod weyl;

pub use cyclotomic::{cyclotomic_poly, lambda_coeffs, zeta_pow, CycNum, CycPoly, IntPoly};
pub use error::{Error, Result};
pub use hypergeom::{build_airy_quiver, build_monodromy, hyp_params, HypParams, MonodromyData, Quiver, QuiverNode};
pub use linalg::ExactMat;
pub use ordering::{dominance_order, is_generic, stokes_directions, theta0, DominanceOrder, Turn};
pub use stokes::{airy_stokes, assemble, galois_group, is_regular_unipotent, StokesData};
pub use weyl::{check_chain, ChainReport, ThetaOp, WeylOp};
