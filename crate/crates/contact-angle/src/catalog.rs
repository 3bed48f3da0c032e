//! Built-in analytic surfaces with exact jets.
//!
//! The catalog carries the two golden examples — the Clifford torus and a
//! totally geodesic 2-sphere — plus the one-parameter family of product tori
//! `(cos r · e^{iu}, sin r · e^{iv})`, which contains the Clifford torus at
//! `r = π/4` and is non-minimal elsewhere (a negative-control family).

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix2, Vector4};

use crate::error::GeomError;
use crate::surface::{DomainRect, ParamPoint, RawJet, Sign, SurfacePatch};

/// Polar margin of the geodesic-sphere chart: the chart (not the surface)
/// degenerates at θ ∈ {0, π}, which is also where cos β = 0.
pub const SPHERE_POLAR_MARGIN: f64 = 0.15;

/// Description of one named parameter of a catalog surface.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    /// Human-readable open range, e.g. `"(0,π/2)"`.
    pub range: &'static str,
}

/// Expected field values of a catalog surface, exact for the closed-form
/// immersion.
#[derive(Debug, Clone, Copy)]
pub struct GoldenValues {
    pub beta: Option<GoldenField>,
    /// Second fundamental form in the adapted basis, constant over the patch.
    pub a_frame: Option<Matrix2<f64>>,
    /// Mean curvature, constant over the patch.
    pub mean_curvature: Option<f64>,
    /// Extrinsic Gaussian curvature, constant over the patch.
    pub gauss_curvature: Option<f64>,
}

/// A scalar golden field.
#[derive(Debug, Clone, Copy)]
pub enum GoldenField {
    Constant(f64),
    /// `β = arcsin(x₂)` pointwise (geodesic sphere under the pinned sign
    /// convention `sin β = ⟨e₃, ξ⟩`).
    ArcsinX2,
}

/// A catalog entry: name, parameter schema, and patch factory.
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static [ParamSpec],
    pub summary: &'static str,
}

impl CatalogEntry {
    pub fn build(&self, params: &BTreeMap<String, f64>) -> Result<SurfacePatch, GeomError> {
        build(self.name, params)
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "clifford-torus",
            params: &[],
            summary: "flat minimal torus (sqrt2/2)(e^{iu}, e^{iv}); contact angle 0",
        },
        CatalogEntry {
            name: "geodesic-sphere",
            params: &[],
            summary: "totally geodesic 2-sphere {y2 = 0}, polar chart cropped near the poles",
        },
        CatalogEntry {
            name: "product-torus",
            params: &[ParamSpec {
                name: "r",
                range: "(0,π/2)",
            }],
            summary: "product torus (cos r e^{iu}, sin r e^{iv}); minimal only at r = π/4",
        },
    ]
}

/// Build a catalog surface by name, validating the parameter map.
pub fn build(name: &str, params: &BTreeMap<String, f64>) -> Result<SurfacePatch, GeomError> {
    match name {
        "clifford-torus" => {
            reject_params(params)?;
            Ok(clifford_torus())
        }
        "geodesic-sphere" => {
            reject_params(params)?;
            Ok(geodesic_sphere())
        }
        "product-torus" => {
            for key in params.keys() {
                if key != "r" {
                    return Err(GeomError::UnexpectedParameter(key.clone()));
                }
            }
            let r = params
                .get("r")
                .copied()
                .ok_or_else(|| GeomError::MissingParameter("r".into()))?;
            product_torus(r)
        }
        other => Err(GeomError::UnknownSurface(other.to_string())),
    }
}

fn reject_params(params: &BTreeMap<String, f64>) -> Result<(), GeomError> {
    match params.keys().next() {
        Some(key) => Err(GeomError::UnexpectedParameter(key.clone())),
        None => Ok(()),
    }
}

/// Golden values for a catalog surface, if any are known in closed form.
pub fn golden_values(name: &str, params: &BTreeMap<String, f64>) -> Option<GoldenValues> {
    match name {
        // (sqrt2/2)(e^{iu}, e^{iv}) is Hopf-invariant, so beta = 0; its shape
        // operator in the adapted basis is the constant [[0,-1],[-1,0]]
        // (trace 0: minimal; 1 + det = 0: flat).
        "clifford-torus" => Some(GoldenValues {
            beta: Some(GoldenField::Constant(0.0)),
            a_frame: Some(Matrix2::new(0.0, -1.0, -1.0, 0.0)),
            mean_curvature: Some(0.0),
            gauss_curvature: Some(0.0),
        }),
        // Totally geodesic: II = 0, H = 0, K = 1; sin β = ⟨e₃, iz⟩ = x₂.
        "geodesic-sphere" => Some(GoldenValues {
            beta: Some(GoldenField::ArcsinX2),
            a_frame: None,
            mean_curvature: Some(0.0),
            gauss_curvature: Some(1.0),
        }),
        // Hopf-invariant for every r, so beta = 0 and the induced metric is
        // flat; H = cot(2r) from l = -cos r sin r, n = cos r sin r.
        "product-torus" => {
            let r = params.get("r").copied()?;
            Some(GoldenValues {
                beta: Some(GoldenField::Constant(0.0)),
                a_frame: None,
                mean_curvature: Some(1.0 / (2.0 * r).tan()),
                gauss_curvature: Some(0.0),
            })
        }
        _ => None,
    }
}

/// The Clifford torus `f(u, v) = (√2/2)(e^{iu}, e^{iv})` on `[0, 2π)²`.
pub fn clifford_torus() -> SurfacePatch {
    let c = std::f64::consts::FRAC_1_SQRT_2;
    SurfacePatch::analytic(
        DomainRect::new(0.0, 2.0 * PI, 0.0, 2.0 * PI),
        true,
        true,
        Sign::Positive,
        move |p: ParamPoint| {
            let (su, cu) = p.u.sin_cos();
            let (sv, cv) = p.v.sin_cos();
            RawJet {
                f: Vector4::new(c * cu, c * su, c * cv, c * sv),
                fu: Vector4::new(-c * su, c * cu, 0.0, 0.0),
                fv: Vector4::new(0.0, 0.0, -c * sv, c * cv),
                fuu: Vector4::new(-c * cu, -c * su, 0.0, 0.0),
                fuv: Vector4::zeros(),
                fvv: Vector4::new(0.0, 0.0, -c * cv, -c * sv),
            }
        },
    )
}

/// The totally geodesic sphere `{y₂ = 0}` in the polar chart
/// `z(θ, φ) = (sin θ cos φ, sin θ sin φ, cos θ, 0)`, with
/// `θ ∈ [δ, π − δ]` (δ = [`SPHERE_POLAR_MARGIN`]) and `φ` periodic.
pub fn geodesic_sphere() -> SurfacePatch {
    let d = SPHERE_POLAR_MARGIN;
    SurfacePatch::analytic(
        DomainRect::new(d, PI - d, 0.0, 2.0 * PI),
        false,
        true,
        Sign::Positive,
        |p: ParamPoint| {
            let (st, ct) = p.u.sin_cos();
            let (sp, cp) = p.v.sin_cos();
            RawJet {
                f: Vector4::new(st * cp, st * sp, ct, 0.0),
                fu: Vector4::new(ct * cp, ct * sp, -st, 0.0),
                fv: Vector4::new(-st * sp, st * cp, 0.0, 0.0),
                fuu: Vector4::new(-st * cp, -st * sp, -ct, 0.0),
                fuv: Vector4::new(-ct * sp, ct * cp, 0.0, 0.0),
                fvv: Vector4::new(-st * cp, -st * sp, 0.0, 0.0),
            }
        },
    )
}

/// The product torus `(cos r · e^{iu}, sin r · e^{iv})` for `r ∈ (0, π/2)`.
pub fn product_torus(r: f64) -> Result<SurfacePatch, GeomError> {
    if !(r > 0.0 && r < FRAC_PI_2) {
        return Err(GeomError::InvalidParameter {
            name: "r".into(),
            value: r,
            expected: "a value in the open interval (0, π/2)".into(),
        });
    }
    let (sr, cr) = r.sin_cos();
    Ok(SurfacePatch::analytic(
        DomainRect::new(0.0, 2.0 * PI, 0.0, 2.0 * PI),
        true,
        true,
        Sign::Positive,
        move |p: ParamPoint| {
            let (su, cu) = p.u.sin_cos();
            let (sv, cv) = p.v.sin_cos();
            RawJet {
                f: Vector4::new(cr * cu, cr * su, sr * cv, sr * sv),
                fu: Vector4::new(-cr * su, cr * cu, 0.0, 0.0),
                fv: Vector4::new(0.0, 0.0, -sr * sv, sr * cv),
                fuu: Vector4::new(-cr * cu, -cr * su, 0.0, 0.0),
                fuv: Vector4::zeros(),
                fvv: Vector4::new(0.0, 0.0, -sr * cv, -sr * sv),
            }
        },
    ))
}
