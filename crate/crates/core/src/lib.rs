//! Exact and numerical machinery for the reduced Burau representation of the
//! 3-strand braid group: Alexander polynomials and their root clouds over
//! exact big-integer Laurent arithmetic, Garside canonical forms and the sign
//! calculus they drive, the spectral-radius function and its root-free
//! regions, the Rademacher quasimorphism on PSL(2,Z) with its drift and
//! hitting-measure experiments, and Monte Carlo Lyapunov/bifurcation
//! estimation — plus a reproducible experiment harness behind the
//! `braidspectra` CLI.

pub mod braid;
pub mod burau;
pub mod explab;
pub mod laurent;
pub mod lyapunov;
pub mod rng;
pub mod roots;
pub mod sl2walk;
pub mod spectral;

pub use braid::{BraidWord, CanonicalForm, NTType};
pub use burau::BurauMatrix;
pub use laurent::{Int, IntPoly, LaurentPoly};
pub use roots::{RegionTag, RootSet};
pub use spectral::GridField;
