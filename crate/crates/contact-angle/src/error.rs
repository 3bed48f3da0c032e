//! Error type shared by the geometry modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    /// A point handed to [`crate::ambient::AmbientPoint::new`] was not on the
    /// unit sphere within tolerance.
    #[error("point is off the unit sphere: |z|^2 - 1 = {defect:.3e}")]
    OffSphere { defect: f64 },

    #[error("parameter point ({u}, {v}) lies outside the patch domain")]
    OutsideDomain { u: f64, v: f64 },

    /// The immersion condition fails: `Fu`, `Fv` are (numerically) dependent.
    #[error("immersion degenerate at ({u}, {v}): Gram determinant {gram:.3e}")]
    DegenerateImmersion { u: f64, v: f64, gram: f64 },

    /// A jet evaluator produced data violating the jet invariants.
    #[error("invalid jet at ({u}, {v}): {reason}")]
    InvalidJet { u: f64, v: f64, reason: String },

    /// The adapted frame is ill-conditioned (cos β below threshold) where a
    /// well-defined frame is required.
    #[error("degenerate adapted frame at ({u}, {v}): cos(beta) = {cos_beta:.3e}")]
    DegenerateFrame { u: f64, v: f64, cos_beta: f64 },

    #[error("grid resolution must be at least 2 per axis, got {nu} x {nv}")]
    GridResolution { nu: usize, nv: usize },

    #[error("grid rectangle is not contained in the patch domain")]
    GridOutsideDomain,

    #[error("unknown surface `{0}`")]
    UnknownSurface(String),

    #[error("unknown identity `{name}`; valid names: {valid}")]
    UnknownIdentity { name: String, valid: String },

    #[error("invalid parameter {name} = {value}: expected {expected}")]
    InvalidParameter {
        name: String,
        value: f64,
        expected: String,
    },

    #[error("missing required parameter `{0}`")]
    MissingParameter(String),

    #[error("unexpected parameter `{0}` for this surface")]
    UnexpectedParameter(String),
}
