//! Parametrized surface patches in `S³` and the adapted frame construction.
//!
//! A patch owns a rectangle of parameter space, periodicity flags, and a jet
//! source (analytic or position-only with central differences). From a
//! second-order jet the adapted frame `(e₁, e₂, e₃)` and the contact angle
//! `β` are built with the sign convention
//!
//! ```text
//! sin β = ⟨e₃, ξ⟩,   cos β = −⟨e₃, J e₁⟩ ≥ 0,
//! ```
//!
//! which fixes the sign of `e₁ ∈ TS ∩ Δ` and puts `β` on the branch
//! `[−π/2, π/2]` via `atan2`. With the gauge `f₁ = e₁`, `f₂ = J e₁`,
//! `f₃ = ξ`, the reconstruction `e₂ = sin β f₂ + cos β f₃` and
//! `e₃ = −cos β f₂ + sin β f₃` holds exactly. Points where `cos β` falls
//! below a threshold (tangent plane inside the contact plane) are flagged
//! degenerate, not dropped.

use serde::Serialize;

use crate::ambient::{cross4, inner, j_mul, reeb, AmbientPoint, AmbientVector};
use crate::error::GeomError;

/// Overshoot allowed outside a non-periodic domain axis, so that the
/// finite-difference stencils of jets, gradients and Laplacians may evaluate
/// slightly past a grid point sitting on the boundary.
pub const DOMAIN_SLACK: f64 = 5e-2;

/// Default Gram-determinant threshold below which the immersion counts as
/// degenerate.
pub const EPS_IMM_DEFAULT: f64 = 1e-10;

/// A point of the parameter domain (radians on periodic axes).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamPoint {
    pub u: f64,
    pub v: f64,
}

impl ParamPoint {
    pub fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn offset(&self, du: f64, dv: f64) -> Self {
        Self::new(self.u + du, self.v + dv)
    }
}

/// Closed parameter rectangle `[u_min, u_max] × [v_min, v_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainRect {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl DomainRect {
    pub fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Self {
        Self {
            u_min,
            u_max,
            v_min,
            v_max,
        }
    }

    fn contains_axis(lo: f64, hi: f64, x: f64, periodic: bool, slack: f64) -> bool {
        periodic || (x >= lo - slack && x <= hi + slack)
    }
}

/// Sign flag for the surface normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Raw output of a jet evaluator, before validation.
#[derive(Debug, Clone, Copy)]
pub struct RawJet {
    pub f: AmbientVector,
    pub fu: AmbientVector,
    pub fv: AmbientVector,
    pub fuu: AmbientVector,
    pub fuv: AmbientVector,
    pub fvv: AmbientVector,
}

/// Position plus first and second parameter derivatives of the immersion at
/// a parameter point, validated against the jet invariants:
/// `|F| = 1` within `1e-10`, `⟨Fu, F⟩` and `⟨Fv, F⟩` below `1e-10`, and
/// Gram determinant of `(Fu, Fv)` above the patch `eps_imm`.
#[derive(Debug, Clone, Copy)]
pub struct Jet2 {
    pub at: ParamPoint,
    pub f: AmbientPoint,
    pub fu: AmbientVector,
    pub fv: AmbientVector,
    pub fuu: AmbientVector,
    pub fuv: AmbientVector,
    pub fvv: AmbientVector,
}

impl Jet2 {
    /// Gram determinant `EG − F²` of the coordinate tangent vectors.
    pub fn gram(&self) -> f64 {
        let e = self.fu.dot(&self.fu);
        let f = self.fu.dot(&self.fv);
        let g = self.fv.dot(&self.fv);
        e * g - f * f
    }
}

enum JetSource {
    Analytic(Box<dyn Fn(ParamPoint) -> RawJet + Send + Sync>),
    Position {
        map: Box<dyn Fn(ParamPoint) -> AmbientVector + Send + Sync>,
        h_jet: f64,
    },
}

/// A parametrized surface patch in `S³`.
pub struct SurfacePatch {
    pub domain: DomainRect,
    pub periodic_u: bool,
    pub periodic_v: bool,
    pub orientation: Sign,
    pub eps_imm: f64,
    source: JetSource,
}

impl SurfacePatch {
    /// Patch with closed-form jets.
    pub fn analytic<F>(
        domain: DomainRect,
        periodic_u: bool,
        periodic_v: bool,
        orientation: Sign,
        jet: F,
    ) -> Self
    where
        F: Fn(ParamPoint) -> RawJet + Send + Sync + 'static,
    {
        Self {
            domain,
            periodic_u,
            periodic_v,
            orientation,
            eps_imm: EPS_IMM_DEFAULT,
            source: JetSource::Analytic(Box::new(jet)),
        }
    }

    /// Patch given only by its position map; jets come from central
    /// differences with step `h_jet` (accurate to `O(h_jet²)`), with first
    /// derivatives projected back onto the tangent space of `S³`.
    pub fn from_positions<F>(
        domain: DomainRect,
        periodic_u: bool,
        periodic_v: bool,
        orientation: Sign,
        h_jet: f64,
        map: F,
    ) -> Self
    where
        F: Fn(ParamPoint) -> AmbientVector + Send + Sync + 'static,
    {
        assert!(h_jet > 0.0, "finite-difference step must be positive");
        Self {
            domain,
            periodic_u,
            periodic_v,
            orientation,
            eps_imm: EPS_IMM_DEFAULT,
            source: JetSource::Position {
                map: Box::new(map),
                h_jet,
            },
        }
    }

    pub fn with_eps_imm(mut self, eps_imm: f64) -> Self {
        self.eps_imm = eps_imm;
        self
    }

    pub fn with_orientation(mut self, orientation: Sign) -> Self {
        self.orientation = orientation;
        self
    }

    /// The finite-difference step of a position-only source, if any.
    pub fn h_jet(&self) -> Option<f64> {
        match &self.source {
            JetSource::Analytic(_) => None,
            JetSource::Position { h_jet, .. } => Some(*h_jet),
        }
    }

    /// Whether `p` may be evaluated (periodic axes accept any value;
    /// non-periodic axes allow [`DOMAIN_SLACK`] of overshoot for stencils).
    pub fn contains(&self, p: ParamPoint) -> bool {
        DomainRect::contains_axis(
            self.domain.u_min,
            self.domain.u_max,
            p.u,
            self.periodic_u,
            DOMAIN_SLACK,
        ) && DomainRect::contains_axis(
            self.domain.v_min,
            self.domain.v_max,
            p.v,
            self.periodic_v,
            DOMAIN_SLACK,
        )
    }

    /// Evaluate the validated second-order jet at `p`.
    pub fn eval_jet(&self, p: ParamPoint) -> Result<Jet2, GeomError> {
        if !self.contains(p) {
            return Err(GeomError::OutsideDomain { u: p.u, v: p.v });
        }
        let raw = match &self.source {
            JetSource::Analytic(jet) => jet(p),
            JetSource::Position { map, h_jet } => fd_jet(map, p, *h_jet),
        };
        validate_jet(
            p,
            raw,
            self.eps_imm,
            matches!(self.source, JetSource::Position { .. }),
        )
    }

    /// Jet plus adapted frame at `p`, using the patch orientation.
    pub fn frame(&self, p: ParamPoint, eps_deg: f64) -> Result<AdaptedFrame, GeomError> {
        let jet = self.eval_jet(p)?;
        adapted_frame(&jet, self.orientation, eps_deg)
    }
}

fn fd_jet<F>(map: &F, p: ParamPoint, h: f64) -> RawJet
where
    F: Fn(ParamPoint) -> AmbientVector + ?Sized,
{
    let f00 = map(p);
    let fpu = map(p.offset(h, 0.0));
    let fmu = map(p.offset(-h, 0.0));
    let fpv = map(p.offset(0.0, h));
    let fmv = map(p.offset(0.0, -h));
    let fpp = map(p.offset(h, h));
    let fpm = map(p.offset(h, -h));
    let fmp = map(p.offset(-h, h));
    let fmm = map(p.offset(-h, -h));
    RawJet {
        f: f00,
        fu: (fpu - fmu) / (2.0 * h),
        fv: (fpv - fmv) / (2.0 * h),
        fuu: (fpu - f00 * 2.0 + fmu) / (h * h),
        fvv: (fpv - f00 * 2.0 + fmv) / (h * h),
        fuv: (fpp - fpm - fmp + fmm) / (4.0 * h * h),
    }
}

fn validate_jet(
    p: ParamPoint,
    raw: RawJet,
    eps_imm: f64,
    project_tangent: bool,
) -> Result<Jet2, GeomError> {
    let norm = raw.f.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-10 {
        return Err(GeomError::InvalidJet {
            u: p.u,
            v: p.v,
            reason: format!("position norm {norm} is not 1 within 1e-10"),
        });
    }
    let f = AmbientPoint::new(raw.f / norm)?;

    let (fu, fv) = if project_tangent {
        // Finite-difference first derivatives drift off the tangent space by
        // O(h^2); remove the radial component.
        (
            crate::ambient::tangent_project(&f, &raw.fu),
            crate::ambient::tangent_project(&f, &raw.fv),
        )
    } else {
        for (name, d) in [("Fu", &raw.fu), ("Fv", &raw.fv)] {
            let radial = inner(d, &f.coords()).abs();
            if radial > 1e-10 * (1.0 + d.norm()) {
                return Err(GeomError::InvalidJet {
                    u: p.u,
                    v: p.v,
                    reason: format!("<{name}, F> = {radial:.3e} exceeds 1e-10"),
                });
            }
        }
        (raw.fu, raw.fv)
    };

    let jet = Jet2 {
        at: p,
        f,
        fu,
        fv,
        fuu: raw.fuu,
        fuv: raw.fuv,
        fvv: raw.fvv,
    };
    let gram = jet.gram();
    if !gram.is_finite() || gram <= eps_imm {
        return Err(GeomError::DegenerateImmersion {
            u: p.u,
            v: p.v,
            gram,
        });
    }
    Ok(jet)
}

/// The adapted frame and contact angle at a surface point.
#[derive(Debug, Clone, Copy)]
pub struct AdaptedFrame {
    /// Unit field spanning `TS ∩ Δ`, sign fixed by `cos β ≥ 0`.
    pub e1: AmbientVector,
    /// Tangent completion, `e₂ = sin β · J e₁ + cos β · ξ`.
    pub e2: AmbientVector,
    /// Unit normal in `T S³`, sign fixed by the orientation flag.
    pub e3: AmbientVector,
    /// Contact angle in `[−π/2, π/2]`, `β = atan2(sin β, cos β)`.
    pub beta: f64,
    pub sin_beta: f64,
    pub cos_beta: f64,
    /// Set when `cos β` fell below the supplied threshold: the tangent plane
    /// coincides with the contact plane and the `e₁` direction is
    /// ill-conditioned.
    pub degenerate: bool,
}

/// Unit normal to the surface inside `T S³`, with the sign chosen so that
/// `det[F, Fu, Fv, e₃]` has the sign of `orientation`.
pub fn unit_normal(jet: &Jet2, orientation: Sign) -> Result<AmbientVector, GeomError> {
    let n = cross4(&jet.f.coords(), &jet.fu, &jet.fv);
    let scale = n.amax();
    if scale.is_nan() || scale <= 1e-12 {
        return Err(GeomError::DegenerateImmersion {
            u: jet.at.u,
            v: jet.at.v,
            gram: jet.gram(),
        });
    }
    // Scaling by the largest component first keeps axis-aligned normals
    // exact: (0, 0, 0, w) normalizes to (0, 0, 0, ±1) with no rounding.
    let scaled = n / scale;
    // <cross4(a,b,c), x> = det[a,b,c,x], so det[F,Fu,Fv,n] = |n|^2 > 0:
    // the raw cross product already carries the Positive orientation.
    Ok(scaled * (orientation.as_f64() / scaled.norm()))
}

/// Build the adapted frame from a jet.
///
/// `e₃` comes from [`unit_normal`]; `e₁` is the unit tangent orthogonal to the
/// tangential projection of `ξ` (the kernel of `v ↦ ⟨v, ξ⟩` on the tangent
/// plane), with its sign fixed so that `cos β = −⟨e₃, J e₁⟩ ≥ 0`. Degeneracy
/// (`cos β < eps_deg`) sets a flag rather than failing.
pub fn adapted_frame(
    jet: &Jet2,
    orientation: Sign,
    eps_deg: f64,
) -> Result<AdaptedFrame, GeomError> {
    let e3 = unit_normal(jet, orientation)?;
    let xi = reeb(&jet.f);

    // Orthonormal basis of the tangent plane.
    let t1 = jet.fu / jet.fu.norm();
    let mut t2 = jet.fv - t1 * inner(&jet.fv, &t1);
    t2 /= t2.norm();

    // Tangential projection of xi in (t1, t2) coordinates; |xi_T| = |cos β|.
    let a = inner(&xi, &t1);
    let b = inner(&xi, &t2);
    let mut e1 = if a.hypot(b) > 1e-14 {
        // Rotate xi_T by 90 degrees inside the tangent plane.
        let v = t1 * (-b) + t2 * a;
        v / v.norm()
    } else {
        // Tangent plane equals the contact plane; any tangent direction lies
        // in TS ∩ Δ.
        t1
    };

    let mut cos_beta = -inner(&e3, &j_mul(&e1));
    if cos_beta < 0.0 {
        e1 = -e1;
        cos_beta = -cos_beta;
    }
    let sin_beta = inner(&e3, &xi);
    let beta = sin_beta.atan2(cos_beta);
    let e2 = j_mul(&e1) * sin_beta + xi * cos_beta;

    Ok(AdaptedFrame {
        e1,
        e2,
        e3,
        beta,
        sin_beta,
        cos_beta,
        degenerate: cos_beta < eps_deg,
    })
}

/// Sampling grid over a patch (optionally over a sub-rectangle).
///
/// Periodic axes spanning the whole domain are sampled without the duplicate
/// wrap point (`n` cells); other axes include both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub nu: usize,
    pub nv: usize,
    pub rect: Option<DomainRect>,
}

impl GridSpec {
    pub fn new(nu: usize, nv: usize) -> Self {
        Self { nu, nv, rect: None }
    }

    pub fn with_rect(mut self, rect: DomainRect) -> Self {
        self.rect = Some(rect);
        self
    }

    /// Grid points in row-major order (`u` outer, `v` inner).
    pub fn points(&self, patch: &SurfacePatch) -> Result<Vec<ParamPoint>, GeomError> {
        if self.nu < 2 || self.nv < 2 {
            return Err(GeomError::GridResolution {
                nu: self.nu,
                nv: self.nv,
            });
        }
        let rect = self.rect.unwrap_or(patch.domain);
        let dom = patch.domain;
        let inside = |x: f64, lo: f64, hi: f64, periodic: bool| {
            periodic || (x >= lo - 1e-12 && x <= hi + 1e-12)
        };
        if !inside(rect.u_min, dom.u_min, dom.u_max, patch.periodic_u)
            || !inside(rect.u_max, dom.u_min, dom.u_max, patch.periodic_u)
            || !inside(rect.v_min, dom.v_min, dom.v_max, patch.periodic_v)
            || !inside(rect.v_max, dom.v_min, dom.v_max, patch.periodic_v)
            || rect.u_min >= rect.u_max
            || rect.v_min >= rect.v_max
        {
            return Err(GeomError::GridOutsideDomain);
        }

        let full_u =
            self.rect.is_none() || rect_spans(rect.u_min, rect.u_max, dom.u_min, dom.u_max);
        let full_v =
            self.rect.is_none() || rect_spans(rect.v_min, rect.v_max, dom.v_min, dom.v_max);
        let us = axis_points(rect.u_min, rect.u_max, self.nu, patch.periodic_u && full_u);
        let vs = axis_points(rect.v_min, rect.v_max, self.nv, patch.periodic_v && full_v);

        let mut pts = Vec::with_capacity(self.nu * self.nv);
        for &u in &us {
            for &v in &vs {
                pts.push(ParamPoint::new(u, v));
            }
        }
        Ok(pts)
    }
}

fn rect_spans(lo: f64, hi: f64, dom_lo: f64, dom_hi: f64) -> bool {
    (lo - dom_lo).abs() < 1e-12 && (hi - dom_hi).abs() < 1e-12
}

fn axis_points(lo: f64, hi: f64, n: usize, wrap: bool) -> Vec<f64> {
    let span = hi - lo;
    if wrap {
        (0..n).map(|i| lo + span * i as f64 / n as f64).collect()
    } else {
        (0..n)
            .map(|i| lo + span * i as f64 / (n - 1) as f64)
            .collect()
    }
}

/// Adapted frames over a grid, in the grid's row-major order. Degenerate
/// points are flagged in place, never dropped.
pub fn frame_field(
    patch: &SurfacePatch,
    grid: &GridSpec,
    eps_deg: f64,
) -> Result<Vec<(ParamPoint, AdaptedFrame)>, GeomError> {
    grid.points(patch)?
        .into_iter()
        .map(|p| patch.frame(p, eps_deg).map(|fr| (p, fr)))
        .collect()
}
