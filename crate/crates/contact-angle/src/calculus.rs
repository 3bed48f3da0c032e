//! Intrinsic and extrinsic differential operators on a patch.
//!
//! Extrinsic data come straight from the jet: `II_ij = ⟨F_ij, e₃⟩` (valid
//! because `⟨F, e₃⟩ = 0`), `H = (G·l − 2F·m + E·n) / (2(EG − F²))`, and the
//! Gauss equation in `S³`, `K_ext = 1 + (l·n − m²)/(EG − F²)`. Intrinsic
//! curvature is recomputed independently with the Brioschi formula from
//! finite differences of the first fundamental form, which keeps the two
//! routes to `K` decoupled.
//!
//! Scalar fields on the parameter domain are differentiated with central
//! differences; the contact angle is always differenced through its
//! `(sin β, cos β)` pair, locally unwrapped about the stencil center, so
//! branch cuts of `atan2` never leak into derivatives.

use nalgebra::{Matrix2, Matrix3};
use serde::Serialize;

use crate::ambient::{covariant_derivative, inner, j_mul, AmbientVector};
use crate::error::GeomError;
use crate::surface::{adapted_frame, AdaptedFrame, Jet2, ParamPoint, SurfacePatch};

/// Differencing steps and degeneracy thresholds used by the operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalcConfig {
    /// Step for first-derivative stencils (surface gradient, `w₂¹`).
    pub h_first: f64,
    /// Step for second-derivative stencils (Laplacian, Brioschi).
    pub h_second: f64,
    /// `cos β` threshold below which the adapted frame counts as degenerate.
    pub eps_deg: f64,
    /// `cos β` band excluded from the tan β / sec β singular identity checks.
    pub band_tan: f64,
}

impl Default for CalcConfig {
    fn default() -> Self {
        Self {
            h_first: 1e-4,
            h_second: 1e-3,
            eps_deg: 1e-6,
            band_tan: 0.05,
        }
    }
}

/// First fundamental form in the `(u, v)` basis.
#[derive(Debug, Clone, Copy)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FirstForm {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// Solve `g · (a, b) = (cu, cv)`: coordinates of the vector whose metric
    /// pairings with `(Fu, Fv)` are `(cu, cv)`.
    pub fn raise(&self, cu: f64, cv: f64) -> (f64, f64) {
        let d = self.det();
        (
            (self.g * cu - self.f * cv) / d,
            (self.e * cv - self.f * cu) / d,
        )
    }
}

/// Second fundamental form data at a point.
#[derive(Debug, Clone, Copy)]
pub struct ShapeData {
    /// `⟨Fuu, e₃⟩`, `⟨Fuv, e₃⟩`, `⟨Fvv, e₃⟩`.
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// Components in the adapted `(e₁, e₂)` basis.
    pub a_frame: Matrix2<f64>,
    /// Mean curvature (half-trace of the shape operator).
    pub h: f64,
    /// Extrinsic Gaussian curvature `1 + det(shape operator)`.
    pub k_ext: f64,
}

/// `E = ⟨Fu, Fu⟩`, `F = ⟨Fu, Fv⟩`, `G = ⟨Fv, Fv⟩`.
pub fn first_fundamental_form(jet: &Jet2) -> Result<FirstForm, GeomError> {
    let form = FirstForm {
        e: inner(&jet.fu, &jet.fu),
        f: inner(&jet.fu, &jet.fv),
        g: inner(&jet.fv, &jet.fv),
    };
    if form.det().is_nan() || form.det() <= 0.0 {
        return Err(GeomError::DegenerateImmersion {
            u: jet.at.u,
            v: jet.at.v,
            gram: form.det(),
        });
    }
    Ok(form)
}

pub fn mean_curvature(first: &FirstForm, l: f64, m: f64, n: f64) -> f64 {
    (first.g * l - 2.0 * first.f * m + first.e * n) / (2.0 * first.det())
}

pub fn gauss_curvature_extrinsic(first: &FirstForm, l: f64, m: f64, n: f64) -> f64 {
    1.0 + (l * n - m * m) / first.det()
}

/// Second fundamental form with respect to the frame's normal `e₃`, plus its
/// change of basis to `(e₁, e₂)` and the derived curvatures.
pub fn second_fundamental_form(jet: &Jet2, frame: &AdaptedFrame) -> Result<ShapeData, GeomError> {
    let first = first_fundamental_form(jet)?;
    let l = inner(&jet.fuu, &frame.e3);
    let m = inner(&jet.fuv, &frame.e3);
    let n = inner(&jet.fvv, &frame.e3);

    let (a1, b1) = first.raise(inner(&frame.e1, &jet.fu), inner(&frame.e1, &jet.fv));
    let (a2, b2) = first.raise(inner(&frame.e2, &jet.fu), inner(&frame.e2, &jet.fv));
    let p = Matrix2::new(a1, a2, b1, b2);
    let ii = Matrix2::new(l, m, m, n);
    let a_frame = p.transpose() * ii * p;

    Ok(ShapeData {
        l,
        m,
        n,
        a_frame,
        h: mean_curvature(&first, l, m, n),
        k_ext: gauss_curvature_extrinsic(&first, l, m, n),
    })
}

/// Intrinsic Gaussian curvature by the Brioschi formula, with the metric
/// coefficients and their derivatives taken from central differences of step
/// `h`. Uses only the first fundamental form, so it is independent of the
/// normal/second-form route to `K`.
pub fn gauss_curvature_intrinsic(
    patch: &SurfacePatch,
    p: ParamPoint,
    h: f64,
) -> Result<f64, GeomError> {
    let eff = |q: ParamPoint| -> Result<FirstForm, GeomError> {
        first_fundamental_form(&patch.eval_jet(q)?)
    };

    let c = eff(p)?;
    let pu = eff(p.offset(h, 0.0))?;
    let mu = eff(p.offset(-h, 0.0))?;
    let pv = eff(p.offset(0.0, h))?;
    let mv = eff(p.offset(0.0, -h))?;
    let pp = eff(p.offset(h, h))?;
    let pm = eff(p.offset(h, -h))?;
    let mp = eff(p.offset(-h, h))?;
    let mm = eff(p.offset(-h, -h))?;

    let e_u = (pu.e - mu.e) / (2.0 * h);
    let e_v = (pv.e - mv.e) / (2.0 * h);
    let g_u = (pu.g - mu.g) / (2.0 * h);
    let g_v = (pv.g - mv.g) / (2.0 * h);
    let f_u = (pu.f - mu.f) / (2.0 * h);
    let f_v = (pv.f - mv.f) / (2.0 * h);
    let e_vv = (pv.e - 2.0 * c.e + mv.e) / (h * h);
    let g_uu = (pu.g - 2.0 * c.g + mu.g) / (h * h);
    let f_uv = (pp.f - pm.f - mp.f + mm.f) / (4.0 * h * h);

    let m1 = Matrix3::new(
        -0.5 * e_vv + f_uv - 0.5 * g_uu,
        0.5 * e_u,
        f_u - 0.5 * e_v,
        f_v - 0.5 * g_u,
        c.e,
        c.f,
        0.5 * g_v,
        c.f,
        c.g,
    );
    let m2 = Matrix3::new(
        0.0,
        0.5 * e_v,
        0.5 * g_u,
        0.5 * e_v,
        c.e,
        c.f,
        0.5 * g_u,
        c.f,
        c.g,
    );
    let det = c.det();
    Ok((m1.determinant() - m2.determinant()) / (det * det))
}

/// Surface gradient `∇f = g^{ij} ∂_j f ∂_i` as an ambient tangent vector;
/// `⟨∇f, e_k⟩` recovers directional derivatives.
pub fn surface_gradient<F>(
    patch: &SurfacePatch,
    f: F,
    p: ParamPoint,
    h: f64,
) -> Result<AmbientVector, GeomError>
where
    F: Fn(ParamPoint) -> Result<f64, GeomError>,
{
    let jet = patch.eval_jet(p)?;
    let first = first_fundamental_form(&jet)?;
    let fu = (f(p.offset(h, 0.0))? - f(p.offset(-h, 0.0))?) / (2.0 * h);
    let fv = (f(p.offset(0.0, h))? - f(p.offset(0.0, -h))?) / (2.0 * h);
    let (a, b) = first.raise(fu, fv);
    Ok(jet.fu * a + jet.fv * b)
}

/// Laplace–Beltrami operator in divergence form,
/// `Δf = (1/√g) ∂_i (√g · g^{ij} ∂_j f)`, discretized with nested central
/// differences of step `h` (truncation `O(h²)`).
pub fn laplace_beltrami<F>(
    patch: &SurfacePatch,
    f: F,
    p: ParamPoint,
    h: f64,
) -> Result<f64, GeomError>
where
    F: Fn(ParamPoint) -> Result<f64, GeomError>,
{
    if h.is_nan() || h <= f64::EPSILON {
        return Err(GeomError::InvalidParameter {
            name: "h".into(),
            value: h,
            expected: "a positive differencing step".into(),
        });
    }
    // Contravariant flux components sqrt(g) g^{ij} d_j f at a stencil point.
    let flux = |q: ParamPoint| -> Result<(f64, f64), GeomError> {
        let jet = patch.eval_jet(q)?;
        let first = first_fundamental_form(&jet)?;
        let fu = (f(q.offset(h, 0.0))? - f(q.offset(-h, 0.0))?) / (2.0 * h);
        let fv = (f(q.offset(0.0, h))? - f(q.offset(0.0, -h))?) / (2.0 * h);
        let (a, b) = first.raise(fu, fv);
        let sq = first.det().sqrt();
        Ok((sq * a, sq * b))
    };
    let p1 = flux(p.offset(h, 0.0))?.0 - flux(p.offset(-h, 0.0))?.0;
    let p2 = flux(p.offset(0.0, h))?.1 - flux(p.offset(0.0, -h))?.1;
    let first = first_fundamental_form(&patch.eval_jet(p)?)?;
    Ok((p1 + p2) / (2.0 * h * first.det().sqrt()))
}

/// Connection coefficient `w₂¹(X) = ⟨D_X f₂, f₁⟩` of the gauge-fixed ambient
/// frame (`f₁ = e₁`, `f₂ = J e₁`), with `D` the sphere covariant derivative
/// and the frame field extended over a neighborhood for differencing.
///
/// `X` must be tangent at `p`; fails on a degenerate frame (inside the
/// degenerate band the extended `e₁` field may flip sign between stencil
/// points).
pub fn connection_w21(
    patch: &SurfacePatch,
    p: ParamPoint,
    x: &AmbientVector,
    h: f64,
    eps_deg: f64,
) -> Result<f64, GeomError> {
    let jet = patch.eval_jet(p)?;
    let frame = adapted_frame(&jet, patch.orientation, eps_deg)?;
    if frame.degenerate {
        return Err(GeomError::DegenerateFrame {
            u: p.u,
            v: p.v,
            cos_beta: frame.cos_beta,
        });
    }
    let first = first_fundamental_form(&jet)?;
    // Parameter velocity (a, b) with a Fu + b Fv = X.
    let (a, b) = first.raise(inner(x, &jet.fu), inner(x, &jet.fv));

    let f2_at = |q: ParamPoint| -> Result<AmbientVector, GeomError> {
        let fr = patch.frame(q, eps_deg)?;
        Ok(j_mul(&fr.e1))
    };
    let plus = f2_at(p.offset(h * a, h * b))?;
    let minus = f2_at(p.offset(-h * a, -h * b))?;
    let dv = (plus - minus) / (2.0 * h);
    let f2 = j_mul(&frame.e1);
    let d = covariant_derivative(&jet.f, x, &dv, &f2);
    Ok(inner(&d, &frame.e1))
}

/// `(sin β, cos β)` at a parameter point, using the patch orientation.
pub fn beta_sincos(
    patch: &SurfacePatch,
    p: ParamPoint,
    eps_deg: f64,
) -> Result<(f64, f64), GeomError> {
    let fr = patch.frame(p, eps_deg)?;
    Ok((fr.sin_beta, fr.cos_beta))
}

/// The contact-angle field unwrapped about `center`: returns
/// `β(center) + atan2` of the angle difference, so values across a stencil
/// never jump branches.
pub fn unwrapped_beta_field<'a>(
    patch: &'a SurfacePatch,
    center: ParamPoint,
    eps_deg: f64,
) -> Result<impl Fn(ParamPoint) -> Result<f64, GeomError> + 'a, GeomError> {
    let (s0, c0) = beta_sincos(patch, center, eps_deg)?;
    let beta0 = s0.atan2(c0);
    Ok(move |q: ParamPoint| {
        let (s, c) = beta_sincos(patch, q, eps_deg)?;
        Ok(beta0 + (s * c0 - c * s0).atan2(c * c0 + s * s0))
    })
}

/// All pointwise scalars of interest at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct GeomSample {
    pub point: ParamPoint,
    pub frame: AdaptedFrame,
    pub beta: f64,
    /// `dβ(e₁)`.
    pub beta1: f64,
    /// `dβ(e₂)`.
    pub beta2: f64,
    pub grad_beta: AmbientVector,
    pub lap_beta: f64,
    pub h: f64,
    pub k_ext: f64,
    pub k_int: f64,
    pub a_frame: Matrix2<f64>,
    pub degenerate: bool,
}

/// Evaluate the full sample at `p`: frame, forms, curvatures, and the
/// finite-difference derivatives of `β`.
pub fn geom_sample(
    patch: &SurfacePatch,
    p: ParamPoint,
    cfg: &CalcConfig,
) -> Result<GeomSample, GeomError> {
    let jet = patch.eval_jet(p)?;
    let frame = adapted_frame(&jet, patch.orientation, cfg.eps_deg)?;
    let shape = second_fundamental_form(&jet, &frame)?;
    let beta_field = unwrapped_beta_field(patch, p, cfg.eps_deg)?;
    let grad_beta = surface_gradient(patch, &beta_field, p, cfg.h_first)?;
    let lap_beta = laplace_beltrami(patch, &beta_field, p, cfg.h_second)?;
    let k_int = gauss_curvature_intrinsic(patch, p, cfg.h_second)?;
    Ok(GeomSample {
        point: p,
        frame,
        beta: frame.beta,
        beta1: inner(&grad_beta, &frame.e1),
        beta2: inner(&grad_beta, &frame.e2),
        grad_beta,
        lap_beta,
        h: shape.h,
        k_ext: shape.k_ext,
        k_int,
        a_frame: shape.a_frame,
        degenerate: frame.degenerate,
    })
}
