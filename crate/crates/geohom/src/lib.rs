//! Homology classes of closed geodesics on the modular curves Y0(p) that come
//! from narrow ideal classes of real quadratic fields, computed in exact
//! arithmetic.
//!
//! The layers, bottom up:
//!
//! * [`exactmath`]: big integers, rationals, PSL2(Z), Dedekind sums and the
//!   Rademacher symbol.
//! * [`quadforms`]: indefinite binary quadratic forms, narrow class groups,
//!   genus characters, Pell units and the hyperbolic matrix of a form.
//! * [`modcurve`]: Farey symbols for Gamma0(p), their generators and the
//!   homology basis.
//! * [`geocoding`]: words in those generators, homology vectors, the
//!   Eisenstein pairing and Hecke operators.
//! * [`concentration`]: class sums, the Hecke genus identity and the
//!   discriminant sweep.

pub mod concentration;
pub mod error;
pub mod exactmath;
pub mod geocoding;
pub mod json;
pub mod modcurve;
pub mod quadforms;

pub use error::{Error, Result};
pub use exactmath::{ExtRat, Int, Mat, Rat};
