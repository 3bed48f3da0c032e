//! Contact-angle geometry of immersed surfaces in the unit 3-sphere.
//!
//! A surface `S` immersed in `S³ ⊂ R⁴ ≅ C²` meets the standard contact
//! distribution `Δ` (the plane field orthogonal to the Reeb field `ξ(z) = iz`)
//! in a line field almost everywhere. The *contact angle* `β` measures how far
//! the tangent plane tilts out of `Δ`; the *adapted frame* `(e₁, e₂, e₃)` is
//! the orthonormal frame with `e₁` spanning `TS ∩ Δ`, `e₂` tangent, and `e₃`
//! normal. On minimal surfaces these data satisfy closed-form identities for
//! the Gaussian curvature, `K = 1 − |∇β + e₁|²`, and for the Laplacian,
//! `Δβ = −tan β · |∇β + 2e₁|²`, together with connection-form and
//! shape-operator relations.
//!
//! This crate evaluates all of those quantities numerically on parametrized
//! patches and checks every identity as a residual over sample grids:
//!
//! - [`ambient`]: primitives of `R⁴ ≅ C²` and the contact structure of `S³`.
//! - [`surface`]: surface patches, second-order jets, adapted frames.
//! - [`calculus`]: fundamental forms, curvatures, surface gradient,
//!   Laplace–Beltrami operator, connection coefficient `w₂¹`.
//! - [`identities`]: residual checkers and aggregated reports.
//! - [`catalog`]: built-in analytic surfaces (Clifford torus, totally geodesic
//!   sphere, product tori) with golden values.
//! - [`cli`]: the `contact-angle` command-line driver (CSV/JSON output).

pub mod ambient;
pub mod calculus;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod identities;
pub mod surface;

pub use error::GeomError;
