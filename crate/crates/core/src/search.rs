//! Randomized falsification campaigns and derivative-free search for tight
//! configurations within the parameterized families.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::builders::{augmented_edge_frame, edge_frame, vertex_frame};
use crate::error::{Error, Result};
use crate::frame::{frame_operator, Frame};
use crate::inequality::{evaluate, Check, Tolerances};
use crate::polytope::{Family, InscribedPolytope};
use crate::tolerances::RESAMPLE_BUDGET;

/// Which frame the search measures tightness of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameKind {
    Vertex,
    Edge,
    AugmentedEdge,
    AugmentedEdgeNoSynthetic,
}

impl FrameKind {
    pub fn label(&self) -> &'static str {
        match self {
            FrameKind::Vertex => "vertex",
            FrameKind::Edge => "edge",
            FrameKind::AugmentedEdge => "augmented_edge",
            FrameKind::AugmentedEdgeNoSynthetic => "augmented_edge_no_synthetic",
        }
    }
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FrameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(FrameKind::Vertex),
            "edge" => Ok(FrameKind::Edge),
            "augmented_edge" => Ok(FrameKind::AugmentedEdge),
            "augmented_edge_no_synthetic" => Ok(FrameKind::AugmentedEdgeNoSynthetic),
            other => Err(Error::Parameter(format!("unknown frame kind {other:?}"))),
        }
    }
}

fn frame_of_kind(p: &InscribedPolytope, kind: FrameKind) -> Result<Frame> {
    match kind {
        FrameKind::Vertex => vertex_frame(p),
        FrameKind::Edge => edge_frame(p),
        FrameKind::AugmentedEdge => augmented_edge_frame(p, true)?.frame(),
        FrameKind::AugmentedEdgeNoSynthetic => augmented_edge_frame(p, false)?.frame(),
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen();
        if u1 > 1e-300 {
            return (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
        }
    }
}

fn unit_sphere_point(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        let n = crate::geometry::norm(&v);
        if n > 1e-6 {
            return crate::geometry::scale(&v, 1.0 / n);
        }
    }
}

/// A sampled polytope together with the parameter vector that produced it,
/// so campaign argmins can be reported and reproduced.
pub struct Sample {
    pub polytope: InscribedPolytope,
    pub params: Vec<f64>,
}

pub fn sample_with_params(family: Family, dim: usize, seed: u64) -> Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        Family::Simplex => {
            for _ in 0..RESAMPLE_BUDGET {
                let vertices: Vec<Vec<f64>> =
                    (0..=dim).map(|_| unit_sphere_point(dim, &mut rng)).collect();
                let Ok(p) = InscribedPolytope::simplex(vertices) else { continue };
                // interior origin makes the cone partition well defined
                if p.volume() > 1e-6 && p.partition().is_ok() {
                    let params = p.vertices().iter().flatten().copied().collect();
                    return Ok(Sample { polytope: p, params });
                }
            }
            Err(Error::Sampling(format!(
                "no simplex with interior origin in {RESAMPLE_BUDGET} draws"
            )))
        }
        Family::Quadrilateral => {
            for _ in 0..RESAMPLE_BUDGET {
                let mut angles = [0.0; 4];
                for a in &mut angles {
                    *a = rng.gen_range(0.0..std::f64::consts::TAU);
                }
                angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let mut gaps = [0.0; 4];
                for i in 0..3 {
                    gaps[i] = angles[i + 1] - angles[i];
                }
                gaps[3] = std::f64::consts::TAU - (angles[3] - angles[0]);
                // every arc gap below pi keeps the origin strictly inside
                if gaps.iter().any(|&g| g >= std::f64::consts::PI || g < 1e-9) {
                    continue;
                }
                let Ok(p) = InscribedPolytope::quadrilateral(angles) else { continue };
                return Ok(Sample { polytope: p, params: angles.to_vec() });
            }
            Err(Error::Sampling(format!(
                "no admissible angle vector in {RESAMPLE_BUDGET} draws"
            )))
        }
        Family::PyramidQuad => {
            let z0 = rng.gen_range(-0.95..0.5);
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let canonical = InscribedPolytope::pyramid_quad(z0)?;
            let rotated = rotate_about_z(&canonical, phi)?;
            Ok(Sample { polytope: rotated, params: vec![z0, phi] })
        }
        Family::BipyramidTri => {
            let r = 1.0 - 0.8 * rng.gen::<f64>();
            let h = 1.2 - rng.gen::<f64>();
            let p = InscribedPolytope::bipyramid_tri(r, h)?;
            Ok(Sample { polytope: p, params: vec![r, h] })
        }
    }
}

pub fn sample_polytope(family: Family, dim: usize, seed: u64) -> Result<InscribedPolytope> {
    sample_with_params(family, dim, seed).map(|s| s.polytope)
}

fn rotate_about_z(p: &InscribedPolytope, phi: f64) -> Result<InscribedPolytope> {
    let (c, s) = (phi.cos(), phi.sin());
    let vertices = p
        .vertices()
        .iter()
        .map(|v| vec![c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]])
        .collect();
    InscribedPolytope::from_parts(
        p.family(),
        p.dim(),
        vertices,
        p.edges().to_vec(),
        p.facets().to_vec(),
    )
}

/// One evaluated (sample, check) pair; the unit of the campaign CSV.
#[derive(Clone, Debug)]
pub struct CampaignRow {
    pub sample_id: usize,
    pub id: String,
    pub family: Family,
    pub dim: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub relative_gap: f64,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct CampaignResult {
    pub id: String,
    pub family: Family,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub min_relative_gap: f64,
    pub argmin_params: Vec<f64>,
    pub violations: usize,
    pub skipped: usize,
    pub wall_ms: u128,
}

pub struct Campaign {
    pub rows: Vec<CampaignRow>,
    pub results: Vec<CampaignResult>,
}

/// Evaluates each check on n polytopes drawn with per-sample seeds seed ^ i.
/// Samples run in parallel; rows and summaries come out in (sample, check)
/// order regardless of the worker count. Checks that do not apply to a given
/// sample are counted as skipped, and a failed inequality is a row with
/// holds = false, not an error.
pub fn falsification_campaign(
    checks: &[Check],
    family: Family,
    dim: usize,
    n: usize,
    seed: u64,
    tols: Tolerances,
) -> Result<Campaign> {
    if n == 0 {
        return Err(Error::Parameter("campaign needs at least one sample".into()));
    }
    let start = Instant::now();
    let per_sample: Vec<(Vec<f64>, Vec<Option<CampaignRow>>)> = (0..n)
        .into_par_iter()
        .map(|i| -> Result<(Vec<f64>, Vec<Option<CampaignRow>>)> {
            let sample = sample_with_params(family, dim, seed ^ i as u64)?;
            let mut rows = Vec::with_capacity(checks.len());
            for &check in checks {
                match evaluate(check, &sample.polytope, tols) {
                    Ok(r) => rows.push(Some(CampaignRow {
                        sample_id: i,
                        id: r.id,
                        family: r.family,
                        dim: r.dim,
                        lhs: r.lhs,
                        rhs: r.rhs,
                        gap: r.gap,
                        relative_gap: r.relative_gap,
                        holds: r.holds,
                    })),
                    Err(Error::Applicability(_)) | Err(Error::Containment(_)) => rows.push(None),
                    Err(e) => return Err(e),
                }
            }
            Ok((sample.params, rows))
        })
        .collect::<Result<Vec<_>>>()?;
    let wall_ms = start.elapsed().as_millis();

    let mut results: Vec<CampaignResult> = checks
        .iter()
        .map(|c| CampaignResult {
            id: c.label(),
            family,
            dim,
            samples: n,
            seed,
            min_relative_gap: f64::INFINITY,
            argmin_params: Vec::new(),
            violations: 0,
            skipped: 0,
            wall_ms,
        })
        .collect();

    let mut rows = Vec::with_capacity(n * checks.len());
    for (params, sample_rows) in &per_sample {
        for (k, row) in sample_rows.iter().enumerate() {
            match row {
                Some(r) => {
                    let res = &mut results[k];
                    if r.relative_gap < res.min_relative_gap {
                        res.min_relative_gap = r.relative_gap;
                        res.argmin_params = params.clone();
                    }
                    if !r.holds {
                        res.violations += 1;
                    }
                    rows.push(r.clone());
                }
                None => results[k].skipped += 1,
            }
        }
    }
    Ok(Campaign { rows, results })
}

#[derive(Clone, Debug)]
pub struct NmResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Nelder-Mead with the standard coefficients (reflect 1, expand 2,
/// contract 0.5, shrink 0.5). Derivative-free on purpose: tightness
/// deviation has kinks at eigenvalue crossings.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    step: f64,
    max_iter: usize,
    diam_tol: f64,
) -> NmResult {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let diameter = |s: &[(Vec<f64>, f64)]| -> f64 {
        let mut d = 0.0_f64;
        for a in s {
            for b in s {
                let dist: f64 = a.0.iter().zip(&b.0).map(|(x, y)| (x - y).powi(2)).sum();
                d = d.max(dist.sqrt());
            }
        }
        d
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        if diameter(&simplex) < diam_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let reflect: Vec<f64> =
            (0..n).map(|j| centroid[j] + (centroid[j] - worst.0[j])).collect();
        let fr = f(&reflect);

        if fr < simplex[0].1 {
            let expand: Vec<f64> =
                (0..n).map(|j| centroid[j] + 2.0 * (centroid[j] - worst.0[j])).collect();
            let fe = f(&expand);
            simplex[n] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflect, fr);
        } else {
            let toward = if fr < worst.1 { &reflect } else { &worst.0 };
            let contract: Vec<f64> =
                (0..n).map(|j| centroid[j] + 0.5 * (toward[j] - centroid[j])).collect();
            let fc = f(&contract);
            if fc < worst.1.min(fr) {
                simplex[n] = (contract, fc);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let shrunk: Vec<f64> = (0..n)
                        .map(|j| best[j] + 0.5 * (entry.0[j] - best[j]))
                        .collect();
                    entry.1 = f(&shrunk);
                    entry.0 = shrunk;
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    NmResult {
        x: simplex[0].0.clone(),
        value: simplex[0].1,
        iterations,
        converged,
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub objective: String,
    pub family: Family,
    pub frame_kind: FrameKind,
    pub params: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn tightness_objective(family: Family, kind: FrameKind, params: &[f64]) -> f64 {
    let polytope = match family {
        Family::PyramidQuad => {
            let z0 = params[0];
            if !(-0.99..0.99).contains(&z0) {
                return f64::INFINITY;
            }
            InscribedPolytope::pyramid_quad(z0)
        }
        Family::BipyramidTri => {
            let (r, h) = (params[0], params[1]);
            if !(0.05..=1.0).contains(&r) || !(0.05..2.0).contains(&h) {
                return f64::INFINITY;
            }
            InscribedPolytope::bipyramid_tri(r, h)
        }
        _ => return f64::INFINITY,
    };
    let Ok(p) = polytope else { return f64::INFINITY };
    let Ok(frame) = frame_of_kind(&p, kind) else { return f64::INFINITY };
    match frame_operator(&frame) {
        Ok(summary) => summary.tightness_deviation,
        Err(_) => f64::INFINITY,
    }
}

/// Minimizes tightness deviation over the family's parameter space from five
/// seeded restarts. Bipyramid results are reported scale-normalized to R = 1;
/// the deviation is invariant under scaling, so the optimum is a ray.
pub fn tightness_search(family: Family, kind: FrameKind, seed: u64) -> Result<SearchResult> {
    let parameterized = matches!(family, Family::PyramidQuad | Family::BipyramidTri);
    if !parameterized {
        return Err(Error::Applicability(format!(
            "tightness search needs a parameterized family, got {}",
            family.name()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objective = |x: &[f64]| tightness_objective(family, kind, x);
    let mut best: Option<NmResult> = None;
    for _ in 0..5 {
        let x0 = match family {
            Family::PyramidQuad => vec![rng.gen_range(-0.9..0.9)],
            _ => vec![rng.gen_range(0.1..1.0), rng.gen_range(0.1..1.9)],
        };
        let run = nelder_mead(objective, &x0, 0.1, 500, 1e-10);
        if best.as_ref().map_or(true, |b| run.value < b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("five restarts ran");
    let params = match family {
        Family::BipyramidTri => vec![1.0, best.x[1] / best.x[0]],
        _ => best.x.clone(),
    };
    Ok(SearchResult {
        objective: "tightness_deviation".into(),
        family,
        frame_kind: kind,
        params,
        value: best.value,
        iterations: best.iterations,
        converged: best.converged,
    })
}

#[derive(Clone, Debug)]
pub struct TightConfigReport {
    pub name: String,
    pub family: Family,
    pub frame_kind: FrameKind,
    pub params: Vec<f64>,
    pub deviation: f64,
    /// Measured tr(S)/d: the constant of proportionality when tight.
    pub frame_constant: f64,
    pub pass: bool,
}

/// Constructs each claimed tight configuration exactly and measures its
/// deviation, reporting the proportionality constant rather than trusting
/// any printed value for it.
pub fn verify_known_tight_configs() -> Result<Vec<TightConfigReport>> {
    let sqrt6_inv = 1.0 / 6.0_f64.sqrt();
    let configs: [(&str, Family, FrameKind, Vec<f64>); 5] = [
        ("pyramid vertex frame, base plane z0 = 1/sqrt(6)",
         Family::PyramidQuad, FrameKind::Vertex, vec![sqrt6_inv]),
        ("pyramid augmented edge frame, base plane z0 = -3/7",
         Family::PyramidQuad, FrameKind::AugmentedEdge, vec![-3.0 / 7.0]),
        ("pyramid edge frame without diagonals, base plane z0 = -1/5",
         Family::PyramidQuad, FrameKind::Edge, vec![-1.0 / 5.0]),
        ("bipyramid augmented edge frame, h/R = sqrt(3)/2",
         Family::BipyramidTri, FrameKind::AugmentedEdge, vec![1.0, 3.0_f64.sqrt() / 2.0]),
        ("bipyramid edge frame without apex segment, R/h = 2/sqrt(5)",
         Family::BipyramidTri, FrameKind::AugmentedEdgeNoSynthetic, vec![1.0, 5.0_f64.sqrt() / 2.0]),
    ];
    let mut reports = Vec::with_capacity(configs.len());
    for (name, family, kind, params) in configs {
        let p = match family {
            Family::PyramidQuad => InscribedPolytope::pyramid_quad(params[0])?,
            _ => InscribedPolytope::bipyramid_tri(params[0], params[1])?,
        };
        let summary = frame_operator(&frame_of_kind(&p, kind)?)?;
        reports.push(TightConfigReport {
            name: name.into(),
            family,
            frame_kind: kind,
            params,
            deviation: summary.tightness_deviation,
            frame_constant: summary.trace / p.dim() as f64,
            pass: summary.tightness_deviation <= crate::tolerances::TIGHT_TOL,
        });
    }
    Ok(reports)
}

/// Golden-section minimization on [a, b] for a unimodal objective.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    let fx = f(x);
    (x, fx)
}

/// The base plane that maximizes pyramid volume, found by golden section.
pub fn pyramid_volume_optimum() -> (f64, f64) {
    let (z0, neg_vol) = golden_section_min(
        |z| -InscribedPolytope::pyramid_quad(z).map_or(0.0, |p| p.volume()),
        -0.98,
        0.98,
        1e-9,
    );
    (z0, -neg_vol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sampling_is_deterministic_per_seed() {
        for family in [Family::Simplex, Family::Quadrilateral, Family::PyramidQuad, Family::BipyramidTri] {
            let dim = if family == Family::Quadrilateral || (family == Family::Simplex) { 2 } else { 3 };
            let a = sample_polytope(family, dim, 42).unwrap();
            let b = sample_polytope(family, dim, 42).unwrap();
            assert_eq!(a.vertices(), b.vertices(), "{}", family.name());
            let c = sample_polytope(family, dim, 43).unwrap();
            assert_ne!(a.vertices(), c.vertices(), "{}", family.name());
        }
    }

    #[test]
    fn sampled_simplices_contain_origin_with_usable_volume() {
        for seed in 0..300 {
            let p = sample_polytope(Family::Simplex, 3, seed).unwrap();
            assert!(p.on_sphere());
            assert!(p.volume() > 1e-6);
            let cells = p.volume_vector().unwrap();
            let total: f64 = cells.iter().sum();
            assert_relative_eq!(total, p.volume(), max_relative = 1e-9);
        }
    }

    #[test]
    fn sampled_quadrilaterals_have_interior_diagonal_crossing() {
        for seed in 0..200 {
            let s = sample_with_params(Family::Quadrilateral, 2, seed).unwrap();
            assert!(s.polytope.partition().is_ok());
            let gaps: Vec<f64> = (0..4)
                .map(|i| {
                    if i < 3 {
                        s.params[i + 1] - s.params[i]
                    } else {
                        std::f64::consts::TAU - (s.params[3] - s.params[0])
                    }
                })
                .collect();
            assert!(gaps.iter().all(|&g| g < std::f64::consts::PI));
        }
    }

    #[test]
    fn sampled_pyramids_are_rotated_but_valid() {
        let s = sample_with_params(Family::PyramidQuad, 3, 7).unwrap();
        let (z0, phi) = (s.params[0], s.params[1]);
        assert!((-0.95..0.5).contains(&z0));
        assert!(phi > 0.0);
        let canonical = InscribedPolytope::pyramid_quad(z0).unwrap();
        assert_ne!(s.polytope.vertices()[0], canonical.vertices()[0]);
        assert_relative_eq!(s.polytope.volume(), canonical.volume(), max_relative = 1e-12);
        assert!(s.polytope.on_sphere());
    }

    #[test]
    fn sampled_bipyramids_use_the_relaxed_ranges() {
        let mut seen_tall = false;
        for seed in 0..100 {
            let s = sample_with_params(Family::BipyramidTri, 3, seed).unwrap();
            let (r, h) = (s.params[0], s.params[1]);
            assert!(r > 0.2 && r <= 1.0);
            assert!(h > 0.2 && h <= 1.2);
            if h > 1.0 {
                seen_tall = true;
                assert!(!s.polytope.on_sphere());
            }
        }
        assert!(seen_tall);
    }

    #[test]
    fn quad_campaign_upholds_asserted_bounds() {
        let checks = crate::inequality::catalog_for(Family::Quadrilateral);
        let campaign =
            falsification_campaign(&checks, Family::Quadrilateral, 2, 300, 1, Tolerances::default())
                .unwrap();
        for result in &campaign.results {
            assert_eq!(result.violations, 0, "{}", result.id);
            assert!(result.min_relative_gap >= -1e-9);
            assert_eq!(result.skipped, 0);
        }
        assert_eq!(campaign.rows.len(), 300 * checks.len());
    }

    #[test]
    fn campaign_rows_are_order_deterministic() {
        let checks = [Check::BipyrIneq1, Check::BipyrIneq2];
        let a = falsification_campaign(&checks, Family::BipyramidTri, 3, 200, 9, Tolerances::default())
            .unwrap();
        let b = falsification_campaign(&checks, Family::BipyramidTri, 3, 200, 9, Tolerances::default())
            .unwrap();
        assert_eq!(a.rows.len(), b.rows.len());
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert_eq!(x.sample_id, y.sample_id);
            assert_eq!(x.id, y.id);
            assert_eq!(x.lhs.to_bits(), y.lhs.to_bits());
            assert_eq!(x.relative_gap.to_bits(), y.relative_gap.to_bits());
        }
        // the ball gate skips the first bound on tall samples only
        let r1 = &a.results[0];
        assert!(r1.skipped > 0 && r1.skipped < 200);
        assert_eq!(a.results[1].skipped, 0);
    }

    #[test]
    fn printed_interpolation_bound_is_falsified_by_campaign() {
        use crate::inequality::LpVariant;
        let stated = [Check::LpInterp { p: 1.0, variant: LpVariant::AsStated }];
        let campaign =
            falsification_campaign(&stated, Family::Simplex, 2, 100, 3, Tolerances::default())
                .unwrap();
        assert!(campaign.results[0].violations > 0);
    }

    #[test]
    fn nelder_mead_minimizes_a_shifted_bowl() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + (x[1] + 2.0).powi(2);
        let r = nelder_mead(f, &[0.0, 0.0], 0.5, 500, 1e-12);
        assert!(r.converged);
        assert_relative_eq!(r.x[0], 1.0, epsilon = 1e-6);
        assert_relative_eq!(r.x[1], -2.0, epsilon = 1e-6);
        assert!(r.value <= f(&[0.0, 0.0]));
    }

    #[test]
    fn pyramid_searches_recover_the_three_tight_planes() {
        let vertex = tightness_search(Family::PyramidQuad, FrameKind::Vertex, 0).unwrap();
        assert!(vertex.value <= 1e-9);
        assert_relative_eq!(vertex.params[0].abs(), 1.0 / 6.0_f64.sqrt(), epsilon = 1e-6);

        let aug = tightness_search(Family::PyramidQuad, FrameKind::AugmentedEdge, 0).unwrap();
        assert!(aug.value <= 1e-9);
        assert_relative_eq!(aug.params[0], -3.0 / 7.0, epsilon = 1e-6);

        let edge = tightness_search(Family::PyramidQuad, FrameKind::Edge, 0).unwrap();
        assert!(edge.value <= 1e-9);
        assert_relative_eq!(edge.params[0], -0.2, epsilon = 1e-6);
    }

    #[test]
    fn bipyramid_searches_recover_the_tight_ratios() {
        let aug = tightness_search(Family::BipyramidTri, FrameKind::AugmentedEdge, 1).unwrap();
        assert!(aug.value <= 1e-9);
        assert_relative_eq!(aug.params[1], 3.0_f64.sqrt() / 2.0, epsilon = 1e-6);

        let plain =
            tightness_search(Family::BipyramidTri, FrameKind::AugmentedEdgeNoSynthetic, 1).unwrap();
        assert!(plain.value <= 1e-9);
        // reported as h/R; the claim is R/h = 2/sqrt(5)
        assert_relative_eq!(1.0 / plain.params[1], 2.0 / 5.0_f64.sqrt(), epsilon = 1e-6);
    }

    #[test]
    fn search_rejects_unparameterized_families() {
        assert!(matches!(
            tightness_search(Family::Simplex, FrameKind::Vertex, 0),
            Err(Error::Applicability(_))
        ));
    }

    #[test]
    fn known_tight_configs_all_pass() {
        let reports = verify_known_tight_configs().unwrap();
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.pass, "{}: deviation {}", r.name, r.deviation);
        }
        assert_relative_eq!(reports[0].frame_constant, 5.0 / 3.0, max_relative = 1e-12);
        // both bipyramid configs land on the same constant at R = 1
        assert_relative_eq!(reports[3].frame_constant, 7.5, max_relative = 1e-12);
        assert_relative_eq!(reports[4].frame_constant, 7.5, max_relative = 1e-12);
    }

    #[test]
    fn pyramid_volume_peaks_at_minus_one_third() {
        let (z0, vol) = pyramid_volume_optimum();
        assert_relative_eq!(z0, -1.0 / 3.0, epsilon = 1e-6);
        assert_relative_eq!(vol, 64.0 / 81.0, max_relative = 1e-9);
    }

    #[test]
    fn frame_kind_round_trips_through_strings() {
        for kind in [
            FrameKind::Vertex,
            FrameKind::Edge,
            FrameKind::AugmentedEdge,
            FrameKind::AugmentedEdgeNoSynthetic,
        ] {
            assert_eq!(kind.label().parse::<FrameKind>().unwrap(), kind);
        }
        assert!("diagonal".parse::<FrameKind>().is_err());
    }
}
