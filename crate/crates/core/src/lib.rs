//! Exact arithmetic for p-discrete generalized power series over finite fields.
//!
//! Series with rational exponents whose denominators may carry unbounded powers of the
//! characteristic, ordered by a weight vector. Around that core: certificate checking for
//! supports, Hensel / Artin–Schreier / Newton–Puiseux root construction, the monomial
//! substitution `t^u ↦ θ^u x^{n·u}`, a toric Bertini scanner built on bivariate
//! factorization over finite fields, and tropical hypersurfaces.

pub mod bertini;
pub mod cli;
pub mod ff;
pub mod io;
pub mod linalg;
pub mod order;
pub mod roots;
pub mod series;
pub mod subst;
pub mod support;
pub mod tropical;
