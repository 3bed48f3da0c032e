//! Residual checkers for the moving-frame identities, aggregated over grids.
//!
//! Each checker sweeps a grid in row-major order, evaluates a pointwise
//! residual, and reports max/mean/rms statistics over the non-degenerate
//! samples together with degeneracy counts and a config echo. Checks whose
//! identity presupposes minimality never abort on non-minimal input; they
//! attach the observed `max |H|` so a failing identity on a non-minimal
//! surface reads as "hypothesis unmet" rather than "identity false".

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::ambient::{inner, j_mul, reeb};
use crate::calculus::{connection_w21, geom_sample, second_fundamental_form, CalcConfig};
use crate::error::GeomError;
use crate::surface::{adapted_frame, GridSpec, ParamPoint, SurfacePatch};
use nalgebra::Matrix2;

/// Mean-curvature gate under which a surface counts as minimal for the
/// Theorem-1 consistency verdict.
pub const MINIMALITY_GATE: f64 = 1e-6;

/// The identities checked over grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `sin β · w³(X) = cos β · w²(X)` for tangent `X` (exact for any
    /// immersed surface).
    Tangency,
    /// `H = 0`.
    Minimality,
    /// `K = 1 − |∇β + e₁|²` (minimal surfaces).
    CurvatureFormula,
    /// `Δβ = −tan β · |∇β + 2e₁|²` (minimal surfaces).
    LaplacianFormula,
    /// `w₂¹(e₁) = β₂ / cos β` (encodes minimality).
    ConnectionE1,
    /// `w₂¹(e₂) = −(β₁ + 1 + sin²β) / cos β`.
    ConnectionE2,
    /// `A = [[β₂, −(β₁+1)], [−(β₁+1), −β₂]]` in the adapted basis
    /// (minimal surfaces).
    ShapePrediction,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 7] = [
        IdentityKind::Tangency,
        IdentityKind::Minimality,
        IdentityKind::CurvatureFormula,
        IdentityKind::LaplacianFormula,
        IdentityKind::ConnectionE1,
        IdentityKind::ConnectionE2,
        IdentityKind::ShapePrediction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Tangency => "tangency",
            IdentityKind::Minimality => "minimality",
            IdentityKind::CurvatureFormula => "curvature-formula",
            IdentityKind::LaplacianFormula => "laplacian-formula",
            IdentityKind::ConnectionE1 => "connection-e1",
            IdentityKind::ConnectionE2 => "connection-e2",
            IdentityKind::ShapePrediction => "shape-prediction",
        }
    }

    /// Default pass/fail threshold on `max_abs`, sized for the analytic
    /// catalog (loosest of the per-surface acceptance tolerances) and far
    /// below any genuine identity violation.
    pub fn default_threshold(self) -> f64 {
        match self {
            IdentityKind::Tangency => 1e-9,
            IdentityKind::Minimality => 1e-8,
            IdentityKind::CurvatureFormula => 1e-5,
            IdentityKind::LaplacianFormula => 1e-4,
            IdentityKind::ConnectionE1 => 1e-4,
            IdentityKind::ConnectionE2 => 1e-4,
            IdentityKind::ShapePrediction => 1e-5,
        }
    }

    pub fn valid_names() -> String {
        Self::ALL
            .iter()
            .map(|k| k.name())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GeomError::UnknownIdentity {
                name: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

/// Echo of the configuration a report was produced with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub h_first: f64,
    pub h_second: f64,
    pub h_jet: Option<f64>,
    pub eps_deg: f64,
    pub band_tan: f64,
    pub eps_imm: f64,
    pub threshold: f64,
}

impl ConfigEcho {
    fn new(patch: &SurfacePatch, cfg: &CalcConfig, kind: IdentityKind) -> Self {
        Self {
            h_first: cfg.h_first,
            h_second: cfg.h_second,
            h_jet: patch.h_jet(),
            eps_deg: cfg.eps_deg,
            band_tan: cfg.band_tan,
            eps_imm: patch.eps_imm,
            threshold: kind.default_threshold(),
        }
    }
}

/// Residual statistics of one identity over one grid.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub kind: IdentityKind,
    pub grid: GridSpec,
    pub n_total: usize,
    /// Samples excluded from the statistics (degenerate frame, or inside the
    /// `band_tan` band for the tan β / sec β singular checks).
    pub n_degenerate: usize,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub rms: f64,
    pub worst_point: Option<ParamPoint>,
    pub config: ConfigEcho,
    /// `max |H|` over the included samples, attached to the checks whose
    /// identity presupposes minimality.
    pub minimality_max_abs: Option<f64>,
}

impl ResidualReport {
    /// Whether the report passes its own threshold.
    pub fn passes(&self) -> bool {
        self.max_abs < self.config.threshold
    }
}

struct Stats {
    n_total: usize,
    n_excluded: usize,
    max_abs: f64,
    sum_abs: f64,
    sum_sq: f64,
    worst: Option<ParamPoint>,
    h_max: f64,
    track_h: bool,
}

impl Stats {
    fn new(track_h: bool) -> Self {
        Self {
            n_total: 0,
            n_excluded: 0,
            max_abs: 0.0,
            sum_abs: 0.0,
            sum_sq: 0.0,
            worst: None,
            h_max: 0.0,
            track_h,
        }
    }

    fn exclude(&mut self) {
        self.n_total += 1;
        self.n_excluded += 1;
    }

    fn record(&mut self, p: ParamPoint, residual: f64, h: f64) {
        self.n_total += 1;
        let r = residual.abs();
        // Ties keep the first point in row-major order.
        if r > self.max_abs || self.worst.is_none() {
            self.max_abs = self.max_abs.max(r);
            self.worst = Some(p);
        }
        self.sum_abs += r;
        self.sum_sq += r * r;
        self.h_max = self.h_max.max(h.abs());
    }

    fn finish(self, kind: IdentityKind, grid: GridSpec, config: ConfigEcho) -> ResidualReport {
        let n = self.n_total - self.n_excluded;
        let (mean_abs, rms) = if n > 0 {
            (self.sum_abs / n as f64, (self.sum_sq / n as f64).sqrt())
        } else {
            (0.0, 0.0)
        };
        ResidualReport {
            kind,
            grid,
            n_total: self.n_total,
            n_degenerate: self.n_excluded,
            max_abs: self.max_abs,
            mean_abs,
            rms,
            worst_point: self.worst,
            config,
            minimality_max_abs: if self.track_h { Some(self.h_max) } else { None },
        }
    }
}

/// Dispatch one identity check.
pub fn run_check(
    patch: &SurfacePatch,
    grid: &GridSpec,
    cfg: &CalcConfig,
    kind: IdentityKind,
) -> Result<ResidualReport, GeomError> {
    match kind {
        IdentityKind::Tangency => check_tangency(patch, grid, cfg),
        IdentityKind::Minimality => check_minimality(patch, grid, cfg),
        IdentityKind::CurvatureFormula => check_curvature_identity(patch, grid, cfg),
        IdentityKind::LaplacianFormula => check_laplacian_identity(patch, grid, cfg),
        IdentityKind::ConnectionE1 => check_connection_identity(patch, grid, cfg, true),
        IdentityKind::ConnectionE2 => check_connection_identity(patch, grid, cfg, false),
        IdentityKind::ShapePrediction => check_shape_prediction(patch, grid, cfg),
    }
}

/// `r(X) = sin β ⟨X, f₃⟩ − cos β ⟨X, f₂⟩` over `X ∈ {Fu, Fv}`; exact for any
/// immersed surface, so the residual is pure rounding.
pub fn check_tangency(
    patch: &SurfacePatch,
    grid: &GridSpec,
    cfg: &CalcConfig,
) -> Result<ResidualReport, GeomError> {
    let kind = IdentityKind::Tangency;
    let mut stats = Stats::new(false);
    for p in grid.points(patch)? {
        let jet = patch.eval_jet(p)?;
        let fr = adapted_frame(&jet, patch.orientation, cfg.eps_deg)?;
        if fr.degenerate {
            stats.exclude();
            continue;
        }
        let xi = reeb(&jet.f);
        let f2 = j_mul(&fr.e1);
        let residual = [jet.fu, jet.fv]
            .into_iter()
            .map(|x| (fr.sin_beta * inner(&x, &xi) - fr.cos_beta * inner(&x, &f2)).abs())
            .fold(0.0f64, f64::max);
        stats.record(p, residual, 0.0);
    }
    Ok(stats.finish(kind, *grid, ConfigEcho::new(patch, cfg, kind)))
}

/// Residual `H` at each sample.
pub fn check_minimality(
    patch: &SurfacePatch,
    grid: &GridSpec,
    cfg: &CalcConfig,
) -> Result<ResidualReport, GeomError> {
    let kind = IdentityKind::Minimality;
    let mut stats = Stats::new(false);
    for p in grid.points(patch)? {
        let jet = patch.eval_jet(p)?;
        let fr = adapted_frame(&jet, patch.orientation, cfg.eps_deg)?;
        if fr.degenerate {
            stats.exclude();
            continue;
        }
        let shape = second_fundamental_form(&jet, &fr)?;
        stats.record(p, shape.h, shape.h);
    }
    Ok(stats.finish(kind, *grid, ConfigEcho::new(patch, cfg, kind)))
}

/// Residual `K_ext − (1 − |∇β + e₁|²)`.
pub fn check_curvature_identity(
    patch: &SurfacePatch,
    grid: &GridSpec,
    cfg: &CalcConfig,
) -> Result<ResidualReport, GeomError> {
    let kind = IdentityKind::CurvatureFormula;
    let mut stats = Stats::new(true);
    for p in grid.points(patch)? {
        let s = geom_sample(patch, p, cfg)?;
        if s.degenerate {
            stats.exclude();
            continue;
        }
        let shifted = s.grad_beta + s.frame.e1;
        let residual = s.k_ext - (1.0 - shifted.norm_squared());
        stats.record(p, residual, s.h);
    }
    Ok(stats.finish(kind, *grid, ConfigEcho::new(patch, cfg, kind)))
}

/// Residual `Δβ + tan β · |∇β + 2e₁|²`, excluding `cos β < band_tan`.
pub fn check_laplacian_identity(
    patch: &SurfacePatch,
    grid: &GridSpec,
    cfg: &CalcConfig,
) -> Result<ResidualReport, GeomError> {
    let kind = IdentityKind::LaplacianFormula;
    let mut stats = Stats::new(true);
    for p in grid.points(patch)? {
        let s = geom_sample(patch, p, cfg)?;
        if s.degenerate || s.frame.cos_beta < cfg.band_tan {
            stats.exclude();
            continue;
        }
        let tan_beta = s.frame.sin_beta / s.frame.cos_beta;
        let shifted = s.grad_beta + s.frame.e1 * 2.0;
        let residual = s.lap_beta + tan_beta * shifted.norm_squared();
        stats.record(p, residual, s.h);
    }
    Ok(stats.finish(kind, *grid, ConfigEcho::new(patch, cfg, kind)))
}

/// Residuals of the two connection-form relations,
/// `r₁ = w₂¹(e₁) − β₂/cos β` and `r₂ = w₂¹(e₂) + (β₁ + 1 + sin²β)/cos β`,
/// excluding the `band_tan` band (both share the `1/cos β` singularity).
pub fn check_connection_identity(
    patch: &SurfacePatch,
    grid: &GridSpec,
    cfg: &CalcConfig,
    along_e1: bool,
) -> Result<ResidualReport, GeomError> {
    let kind = if along_e1 {
        IdentityKind::ConnectionE1
    } else {
        IdentityKind::ConnectionE2
    };
    let mut stats = Stats::new(true);
    for p in grid.points(patch)? {
        let s = geom_sample(patch, p, cfg)?;
        if s.degenerate || s.frame.cos_beta < cfg.band_tan {
            stats.exclude();
            continue;
        }
        let residual = if along_e1 {
            let w = connection_w21(patch, p, &s.frame.e1, cfg.h_first, cfg.eps_deg)?;
            w - s.beta2 / s.frame.cos_beta
        } else {
            let w = connection_w21(patch, p, &s.frame.e2, cfg.h_first, cfg.eps_deg)?;
            w + (s.beta1 + 1.0 + s.frame.sin_beta.powi(2)) / s.frame.cos_beta
        };
        stats.record(p, residual, s.h);
    }
    Ok(stats.finish(kind, *grid, ConfigEcho::new(patch, cfg, kind)))
}

/// Both connection relations in one sweep.
pub fn check_connection_identities(
    patch: &SurfacePatch,
    grid: &GridSpec,
    cfg: &CalcConfig,
) -> Result<(ResidualReport, ResidualReport), GeomError> {
    Ok((
        check_connection_identity(patch, grid, cfg, true)?,
        check_connection_identity(patch, grid, cfg, false)?,
    ))
}

/// Residual: max-norm of `A_frame − [[β₂, −(β₁+1)], [−(β₁+1), −β₂]]`.
pub fn check_shape_prediction(
    patch: &SurfacePatch,
    grid: &GridSpec,
    cfg: &CalcConfig,
) -> Result<ResidualReport, GeomError> {
    let kind = IdentityKind::ShapePrediction;
    let mut stats = Stats::new(true);
    for p in grid.points(patch)? {
        let s = geom_sample(patch, p, cfg)?;
        if s.degenerate {
            stats.exclude();
            continue;
        }
        let off = -(s.beta1 + 1.0);
        let prediction = Matrix2::new(s.beta2, off, off, -s.beta2);
        let residual = (s.a_frame - prediction).abs().max();
        stats.record(p, residual, s.h);
    }
    Ok(stats.finish(kind, *grid, ConfigEcho::new(patch, cfg, kind)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Consistency record for the constant-angle characterization: a minimal
/// surface with constant `β` must be flat.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Theorem1Verdict {
    /// `max |H| <` [`MINIMALITY_GATE`] over the grid.
    pub is_minimal: bool,
    /// `max β − min β` over the non-degenerate samples.
    pub beta_spread: f64,
    /// `max |K_ext|` over the non-degenerate samples.
    pub k_max: f64,
    /// FAIL only when the premise (minimal, constant `β`) holds and the
    /// surface is not flat within `tol_flat`; vacuously PASS otherwise.
    pub verdict: Verdict,
}

/// Check "minimal + constant contact angle implies flat" on a grid.
pub fn theorem1_consistency(
    patch: &SurfacePatch,
    grid: &GridSpec,
    cfg: &CalcConfig,
    tol_const: f64,
    tol_flat: f64,
) -> Result<Theorem1Verdict, GeomError> {
    let mut h_max: f64 = 0.0;
    let mut k_max: f64 = 0.0;
    let mut beta_min = f64::INFINITY;
    let mut beta_max = f64::NEG_INFINITY;
    for p in grid.points(patch)? {
        let jet = patch.eval_jet(p)?;
        let fr = adapted_frame(&jet, patch.orientation, cfg.eps_deg)?;
        if fr.degenerate {
            continue;
        }
        let shape = second_fundamental_form(&jet, &fr)?;
        h_max = h_max.max(shape.h.abs());
        k_max = k_max.max(shape.k_ext.abs());
        beta_min = beta_min.min(fr.beta);
        beta_max = beta_max.max(fr.beta);
    }
    let beta_spread = if beta_max >= beta_min {
        beta_max - beta_min
    } else {
        0.0
    };
    let is_minimal = h_max < MINIMALITY_GATE;
    let premise = is_minimal && beta_spread < tol_const;
    let verdict = if premise && k_max >= tol_flat {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    Ok(Theorem1Verdict {
        is_minimal,
        beta_spread,
        k_max,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::surface::Sign;
    use std::f64::consts::PI;

    fn cfg() -> CalcConfig {
        CalcConfig::default()
    }

    fn grid(n: usize) -> GridSpec {
        GridSpec::new(n, n)
    }

    #[test]
    fn identity_names_round_trip() {
        for kind in IdentityKind::ALL {
            assert_eq!(kind, kind.name().parse().unwrap());
        }
        assert!(matches!(
            "curvature".parse::<IdentityKind>(),
            Err(GeomError::UnknownIdentity { .. })
        ));
    }

    #[test]
    fn tangency_residuals_are_rounding_level() {
        let clifford = catalog::clifford_torus();
        let r = check_tangency(&clifford, &grid(12), &cfg()).unwrap();
        assert!(r.max_abs < 1e-10, "clifford tangency {:e}", r.max_abs);
        assert_eq!(r.n_total, 144);
        assert_eq!(r.n_degenerate, 0);
        assert!(r.max_abs >= r.rms && r.rms >= 0.0);

        let sphere = catalog::geodesic_sphere();
        let r = check_tangency(&sphere, &grid(12), &cfg()).unwrap();
        assert!(r.max_abs < 1e-9, "sphere tangency {:e}", r.max_abs);
    }

    #[test]
    fn tangency_fails_for_non_tangent_vectors() {
        // Negative control, outside the report path: the constraint only
        // holds for tangent X. The normal itself violates it maximally on
        // the Clifford torus (residual -cos(beta) <X, J e1> with X = J e1).
        let patch = catalog::clifford_torus();
        let p = crate::surface::ParamPoint::new(0.4, 1.1);
        let jet = patch.eval_jet(p).unwrap();
        let fr = adapted_frame(&jet, Sign::Positive, 1e-6).unwrap();
        let x = j_mul(&fr.e1);
        let residual = fr.sin_beta * inner(&x, &reeb(&jet.f)) - fr.cos_beta * inner(&x, &x);
        assert!(residual.abs() > 0.9);
    }

    #[test]
    fn minimality_split_across_catalog() {
        let c = cfg();
        let r = check_minimality(&catalog::clifford_torus(), &grid(10), &c).unwrap();
        assert!(r.max_abs < 1e-8);
        let r = check_minimality(&catalog::geodesic_sphere(), &grid(10), &c).unwrap();
        assert!(r.max_abs < 1e-8);
        let r =
            check_minimality(&catalog::product_torus(PI / 3.0).unwrap(), &grid(10), &c).unwrap();
        assert!(r.max_abs > 0.1);
        assert!(!r.passes());
    }

    #[test]
    fn curvature_identity_on_catalog() {
        let c = cfg();
        let r = check_curvature_identity(&catalog::clifford_torus(), &grid(10), &c).unwrap();
        assert!(r.max_abs < 1e-6, "clifford curvature {:e}", r.max_abs);
        let r = check_curvature_identity(&catalog::geodesic_sphere(), &grid(10), &c).unwrap();
        assert!(r.max_abs < 1e-5, "sphere curvature {:e}", r.max_abs);

        // Product tori are Hopf-invariant: beta vanishes identically, so the
        // identity degenerates to K = 0, which holds even though the surface
        // is not minimal. The attached minimality context is what flags the
        // unmet hypothesis.
        let r = check_curvature_identity(&catalog::product_torus(PI / 3.0).unwrap(), &grid(10), &c)
            .unwrap();
        assert!(r.max_abs < 1e-6, "product curvature {:e}", r.max_abs);
        assert!(r.minimality_max_abs.unwrap() > 0.1);
    }

    #[test]
    fn laplacian_identity_on_catalog() {
        let c = cfg();
        let r = check_laplacian_identity(&catalog::clifford_torus(), &grid(10), &c).unwrap();
        assert!(r.max_abs < 1e-8, "clifford laplacian {:e}", r.max_abs);
        let r = check_laplacian_identity(&catalog::geodesic_sphere(), &grid(10), &c).unwrap();
        assert!(r.max_abs < 1e-4, "sphere laplacian {:e}", r.max_abs);

        // Same Hopf-invariance degeneration as the curvature identity.
        let r = check_laplacian_identity(&catalog::product_torus(PI / 3.0).unwrap(), &grid(10), &c)
            .unwrap();
        assert!(r.max_abs < 1e-8);
        assert!(r.minimality_max_abs.unwrap() > 0.1);
    }

    #[test]
    fn connection_identities_on_catalog() {
        let c = cfg();
        let (r1, r2) =
            check_connection_identities(&catalog::clifford_torus(), &grid(8), &c).unwrap();
        assert!(r1.max_abs < 1e-6, "clifford r1 {:e}", r1.max_abs);
        assert!(r2.max_abs < 1e-6, "clifford r2 {:e}", r2.max_abs);

        let (r1, r2) =
            check_connection_identities(&catalog::geodesic_sphere(), &grid(8), &c).unwrap();
        assert!(r1.max_abs < 1e-4, "sphere r1 {:e}", r1.max_abs);
        assert!(r2.max_abs < 1e-4, "sphere r2 {:e}", r2.max_abs);

        // The e1 relation encodes minimality: on the product torus
        // w21(e1) = 2 cot(2r) while beta2 = 0, so r1 = 2 cot(2r). The e2
        // relation still holds (both sides equal -1).
        let (r1, r2) =
            check_connection_identities(&catalog::product_torus(PI / 3.0).unwrap(), &grid(8), &c)
                .unwrap();
        let expected = 2.0 / (2.0 * PI / 3.0).tan();
        assert!(
            (r1.max_abs - expected.abs()).abs() < 1e-6,
            "r1 {:e}",
            r1.max_abs
        );
        assert!(r1.max_abs > 0.1);
        assert!(r2.max_abs < 1e-6, "r2 {:e}", r2.max_abs);
    }

    #[test]
    fn shape_prediction_on_catalog() {
        let c = cfg();
        let r = check_shape_prediction(&catalog::clifford_torus(), &grid(8), &c).unwrap();
        assert!(r.max_abs < 1e-6, "clifford shape {:e}", r.max_abs);
        let r = check_shape_prediction(&catalog::geodesic_sphere(), &grid(8), &c).unwrap();
        assert!(r.max_abs < 1e-5, "sphere shape {:e}", r.max_abs);
        let r = check_shape_prediction(&catalog::product_torus(PI / 3.0).unwrap(), &grid(8), &c)
            .unwrap();
        assert!(r.max_abs > 0.1, "product shape {:e}", r.max_abs);
    }

    #[test]
    fn widening_the_excluded_band_never_raises_the_laplacian_max() {
        let sphere = catalog::geodesic_sphere();
        let g = grid(14);
        let mut last = f64::INFINITY;
        let mut excluded_counts = Vec::new();
        for band in [0.2, 0.5, 0.9] {
            let c = CalcConfig {
                band_tan: band,
                ..CalcConfig::default()
            };
            let r = check_laplacian_identity(&sphere, &g, &c).unwrap();
            assert!(
                r.max_abs <= last + 1e-18,
                "band {band}: max rose to {:e}",
                r.max_abs
            );
            last = r.max_abs;
            excluded_counts.push(r.n_degenerate);
        }
        assert!(excluded_counts.windows(2).all(|w| w[0] <= w[1]));
        assert!(*excluded_counts.last().unwrap() > 0);
    }

    #[test]
    fn finite_difference_checks_converge_at_second_order() {
        // On the sphere both checks are truncation-dominated; halving the
        // step divides the residual by ~4. On the Clifford torus the
        // connection residual behaves the same, while the Laplacian residual
        // sits at the rounding floor (beta is identically zero).
        let sphere = catalog::geodesic_sphere();
        let clifford = catalog::clifford_torus();
        let g = grid(8);
        let steps = [4e-3, 2e-3, 1e-3];

        let sweep = |patch, kind| -> Vec<f64> {
            steps
                .iter()
                .map(|&h| {
                    let c = CalcConfig {
                        h_first: h,
                        h_second: h,
                        ..CalcConfig::default()
                    };
                    run_check(patch, &g, &c, kind).unwrap().max_abs
                })
                .collect()
        };

        for kind in [IdentityKind::LaplacianFormula, IdentityKind::ConnectionE2] {
            let errs = sweep(&sphere, kind);
            for w in errs.windows(2) {
                let ratio = w[0] / w[1];
                assert!(
                    (3.5..=4.5).contains(&ratio),
                    "sphere {kind}: ratio {ratio}, residuals {errs:?}"
                );
            }
        }

        let errs = sweep(&clifford, IdentityKind::ConnectionE2);
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!(
                (3.5..=4.5).contains(&ratio),
                "clifford connection: ratio {ratio}, residuals {errs:?}"
            );
        }
        let errs = sweep(&clifford, IdentityKind::LaplacianFormula);
        assert!(
            errs.iter().all(|&e| e < 1e-8),
            "clifford laplacian floor exceeded: {errs:?}"
        );
    }

    #[test]
    fn theorem1_verdicts_across_catalog() {
        let c = cfg();
        let g = grid(10);
        let v = theorem1_consistency(&catalog::clifford_torus(), &g, &c, 1e-8, 1e-8).unwrap();
        assert!(v.is_minimal);
        assert!(v.beta_spread < 1e-8);
        assert!(v.k_max < 1e-8);
        assert_eq!(v.verdict, Verdict::Pass);

        // Non-constant beta: vacuous pass.
        let v = theorem1_consistency(&catalog::geodesic_sphere(), &g, &c, 1e-8, 1e-8).unwrap();
        assert!(v.is_minimal);
        assert!(v.beta_spread > 1.0);
        assert_eq!(v.verdict, Verdict::Pass);

        // Not minimal: vacuous pass with is_minimal = false.
        let v = theorem1_consistency(
            &catalog::product_torus(PI / 3.0).unwrap(),
            &g,
            &c,
            1e-8,
            1e-8,
        )
        .unwrap();
        assert!(!v.is_minimal);
        assert_eq!(v.verdict, Verdict::Pass);
    }

    #[test]
    fn reports_serialize_deterministically() {
        let c = cfg();
        let r1 = check_minimality(&catalog::clifford_torus(), &grid(6), &c).unwrap();
        let r2 = check_minimality(&catalog::clifford_torus(), &grid(6), &c).unwrap();
        let j1 = serde_json::to_string(&r1).unwrap();
        let j2 = serde_json::to_string(&r2).unwrap();
        assert_eq!(j1, j2);
        assert!(j1.contains("\"kind\":\"minimality\""));
    }
}
