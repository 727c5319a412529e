//! Exact commutative-algebra engine for deciding a smoothability criterion
//! of singular quartic surfaces in `P^3`.
//!
//! The pipeline goes Jacobian ideal → saturation → minimal free resolution
//! → `h^1(J(4))`, with every dimension computed over `Q` without rounding.
//! [`moduli`] holds the closed-form dimension bookkeeping for moduli of
//! simple sheaves on K3 surfaces.

pub mod cohomology;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod moduli;
pub mod pipeline;
pub mod poly;
pub mod resolution;

pub use error::{Error, Result};
pub use groebner::{GradedIdeal, GroebnerBasis, HilbertData};
pub use poly::{parse_polynomial, Monomial, MonomialOrder, Polynomial, RingContext};
pub use cohomology::{CohomologyTable, DEFAULT_TWISTS};
pub use moduli::ModuliInvariants;
pub use pipeline::{analyze_quartic, analyze_quartic_with, QuarticReport, Verdict};
pub use resolution::{BettiTable, FreeResolution, GradedFreeModule, GradedMap};
