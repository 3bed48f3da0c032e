//! Primitives of `C² ≅ R⁴` and the standard contact structure of `S³`.
//!
//! Points are identified as `(z¹, z²) = (x1 + i·y1, x2 + i·y2)` with real
//! coordinates ordered `(x1, y1, x2, y2)`. The inner product is the Euclidean
//! one, `⟨z, w⟩ = Re (z, w)`; the Reeb field is `ξ(z) = iz`; and the contact
//! distribution at `z` is the J-invariant plane of `T_z S³` orthogonal to `ξ`.
//!
//! Everything here is a pure function on immutable values.

use nalgebra::{Matrix3, Vector4};

use crate::error::GeomError;

/// A vector of `R⁴`, interpreted as a tangent vector at an associated base
/// point when one is in play.
pub type AmbientVector = Vector4<f64>;

/// Unit-norm tolerance enforced at [`AmbientPoint`] construction.
pub const UNIT_TOL: f64 = 1e-12;

/// A point of `S³ ⊂ R⁴`: unit norm within [`UNIT_TOL`] at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientPoint(Vector4<f64>);

impl AmbientPoint {
    /// Checks `x1² + y1² + x2² + y2² = 1` within [`UNIT_TOL`].
    pub fn new(coords: AmbientVector) -> Result<Self, GeomError> {
        let defect = coords.norm_squared() - 1.0;
        if !defect.is_finite() || defect.abs() > UNIT_TOL {
            return Err(GeomError::OffSphere { defect });
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> AmbientVector {
        self.0
    }
}

/// Euclidean inner product of `R⁴`: `⟨z, w⟩ = Re (z, w)`.
pub fn inner(v: &AmbientVector, w: &AmbientVector) -> f64 {
    v.dot(w)
}

/// Multiplication by `i` on `C²`: `(x1, y1, x2, y2) ↦ (−y1, x1, −y2, x2)`.
///
/// An isometry with `j_mul ∘ j_mul = −id`.
pub fn j_mul(v: &AmbientVector) -> AmbientVector {
    Vector4::new(-v[1], v[0], -v[3], v[2])
}

/// The Reeb field `ξ(z) = iz`; unit and tangent to `S³` at `z`.
pub fn reeb(z: &AmbientPoint) -> AmbientVector {
    j_mul(&z.coords())
}

/// Orthogonal projection onto `T_z S³`: `v − ⟨v, z⟩ z`.
pub fn tangent_project(z: &AmbientPoint, v: &AmbientVector) -> AmbientVector {
    v - z.coords() * v.dot(&z.coords())
}

/// Levi-Civita derivative of `S³` as the tangential part of the Euclidean
/// directional derivative.
///
/// `dv` is the Euclidean derivative of the tangent field `v` along `x` at `z`;
/// since `⟨v, z⟩ ≡ 0` along the field, `⟨dv, z⟩ = −⟨v, x⟩`, so the tangential
/// part is `dv + ⟨v, x⟩ z`.
pub fn covariant_derivative(
    z: &AmbientPoint,
    x: &AmbientVector,
    dv: &AmbientVector,
    v: &AmbientVector,
) -> AmbientVector {
    dv + z.coords() * v.dot(x)
}

/// Generalized cross product of `R⁴`: the vector `n` with
/// `⟨n, x⟩ = det[a, b, c, x]` (columns) for every `x`.
///
/// `n` is orthogonal to `a`, `b`, `c` with `|n| = vol(a, b, c)`, and
/// `det[a, b, c, n] = |n|² > 0` whenever `a, b, c` are independent.
pub fn cross4(a: &AmbientVector, b: &AmbientVector, c: &AmbientVector) -> AmbientVector {
    let minor = |i: usize, j: usize, k: usize| -> f64 {
        Matrix3::new(a[i], b[i], c[i], a[j], b[j], c[j], a[k], b[k], c[k]).determinant()
    };
    // Cofactors of the fourth column of [a b c x].
    Vector4::new(
        -minor(1, 2, 3),
        minor(0, 2, 3),
        -minor(0, 1, 3),
        minor(0, 1, 2),
    )
}
