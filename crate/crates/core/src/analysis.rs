//! Inequalities satisfied by the scalar function `x ↦ ‖F(x)‖`, continuity
//! at the origin, and propagation of Cauchy sequences through `F`.
//!
//! For a bounded `F`, homogeneity gives `‖F(x)‖ <= M_F ‖x‖`, and the
//! reverse triangle inequality turns that into the Lipschitz chain
//! `‖F(x) - F(y)‖ <= ‖F(x - y)‖ <= M_F ‖x - y‖`. Both directions of the
//! completeness/continuity equivalence are certified here through that one
//! chain, over a finite battery of sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{complex_pairs, vec_add, vec_scale, vec_sub, CVector, C64};
use crate::ovnorm::{boundedness_estimate, sphere_samples, OperatorValuedNorm};
use crate::random::{derive_seed, rng_from_seed};
use crate::report::{CheckReport, Witness};

/// Relative slack allowed in scalar norm inequalities.
pub const INEQUALITY_TOL: f64 = 1e-9;
/// Upper limit on sequence length (pairwise checks are quadratic).
pub const MAX_SEQUENCE_LENGTH: usize = 100;
/// Oscillation level used for the tail index of convergent sequences.
pub const TAIL_OSCILLATION: f64 = 1e-8;

/// `‖F(x)‖ + ‖F(y)‖ - ‖F(x+y)‖`.
pub fn subadditivity_slack<N: OperatorValuedNorm + ?Sized>(f: &N, x: &[C64], y: &[C64]) -> Result<f64> {
    Ok(f.norm_at(x)? + f.norm_at(y)? - f.norm_at(&vec_add(x, y))?)
}

/// `‖F(x - y)‖ - ‖F(x) - F(y)‖`.
pub fn reverse_triangle_slack<N: OperatorValuedNorm + ?Sized>(f: &N, x: &[C64], y: &[C64]) -> Result<f64> {
    let diff = &f.evaluate(x)? - &f.evaluate(y)?;
    Ok(f.norm_at(&vec_sub(x, y))? - f.value_norm(&diff))
}

fn sampled_pairs<N: OperatorValuedNorm + ?Sized>(f: &N, pairs: usize, seed: u64) -> Vec<(CVector, CVector)> {
    let mut rng = rng_from_seed(seed);
    let space = f.domain();
    (0..pairs)
        .map(|_| (space.sample_point(&mut rng), space.sample_point(&mut rng)))
        .collect()
}

/// `‖F(x+y)‖ <= ‖F(x)‖ + ‖F(y)‖ + 1e-9·max(1, ‖F(x)‖ + ‖F(y)‖)` on sampled pairs.
pub fn check_norm_subadditivity<N: OperatorValuedNorm + ?Sized>(f: &N, pairs: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("norm_subadditivity");
    for (i, (x, y)) in sampled_pairs(f, pairs, seed).iter().enumerate() {
        let nx = f.norm_at(x)?;
        let ny = f.norm_at(y)?;
        let nxy = f.norm_at(&vec_add(x, y))?;
        let scale = (nx + ny).max(1.0);
        report.record(nxy - nx - ny, INEQUALITY_TOL * scale, || {
            Witness::new(i, format!("|F(x+y)| = {nxy:.6e} > |F(x)| + |F(y)| = {:.6e}", nx + ny))
                .with_x(x)
                .with_y(y)
        });
    }
    report.metric("worst_slack", -report.max_residual);
    Ok(report)
}

/// `‖F(x) - F(y)‖ <= ‖F(x - y)‖ + 1e-9·max(1, ‖F(x - y)‖)` on sampled pairs.
pub fn check_reverse_triangle<N: OperatorValuedNorm + ?Sized>(f: &N, pairs: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("reverse_triangle");
    for (i, (x, y)) in sampled_pairs(f, pairs, seed).iter().enumerate() {
        let lhs = f.value_norm(&(&f.evaluate(x)? - &f.evaluate(y)?));
        let rhs = f.norm_at(&vec_sub(x, y))?;
        report.record(lhs - rhs, INEQUALITY_TOL * rhs.max(1.0), || {
            Witness::new(i, format!("|F(x)-F(y)| = {lhs:.6e} > |F(x-y)| = {rhs:.6e}"))
                .with_x(x)
                .with_y(y)
        });
    }
    report.metric("worst_slack", -report.max_residual);
    Ok(report)
}

/// Sampled `sup_{‖x‖ = r} ‖F(x)‖` for a decreasing list of radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuityTable {
    pub radii: Vec<f64>,
    pub moduli: Vec<f64>,
    /// Boundedness estimate `M̂` from the same unit directions.
    pub bound: f64,
    pub samples_per_radius: usize,
}

impl ContinuityTable {
    /// `moduli[i] - (M̂ r_i + 1e-9)` per radius; nonpositive when certified.
    pub fn excess(&self) -> Vec<f64> {
        self.radii
            .iter()
            .zip(&self.moduli)
            .map(|(r, m)| m - (self.bound * r + INEQUALITY_TOL))
            .collect()
    }

    pub fn certifies_linear_bound(&self) -> bool {
        self.excess().iter().all(|&e| e <= 0.0)
    }
}

/// Evaluates `‖F(r u)‖` for the same `m` unit directions `u` at every
/// radius `r`; `M̂` is the boundedness estimate over those directions.
pub fn continuity_modulus<N: OperatorValuedNorm + ?Sized>(
    f: &N,
    radii: &[f64],
    samples_per_radius: usize,
    seed: u64,
) -> Result<ContinuityTable> {
    if radii.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
        return Err(Error::InvalidArgument("radii must be positive and finite".into()));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("radii must be strictly decreasing".into()));
    }
    let dirs = sphere_samples(f.domain(), samples_per_radius, seed);
    let bound = boundedness_estimate(f, samples_per_radius, seed)?;
    let mut moduli = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut best: f64 = 0.0;
        for u in &dirs {
            best = best.max(f.norm_at(&vec_scale(u, C64::new(r, 0.0)))?);
        }
        moduli.push(best);
    }
    Ok(ContinuityTable {
        radii: radii.to_vec(),
        moduli,
        bound,
        samples_per_radius,
    })
}

/// Generator of a sequence in the domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SequenceKind {
    /// `x_n = x_0 rⁿ`.
    Geometric {
        #[serde(with = "complex_pairs")]
        start: CVector,
        ratio: f64,
    },
    /// `x_n = ℓ + (x_0 - ℓ)(-r)ⁿ`, alternating around the limit.
    Convergent {
        #[serde(with = "complex_pairs")]
        start: CVector,
        #[serde(with = "complex_pairs")]
        limit: CVector,
        ratio: f64,
    },
    /// Explicit points; only finiteness and dimensions are checked.
    Custom {
        #[serde(with = "crate::matrix::complex_pair_lists")]
        points: Vec<CVector>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CauchySequenceSpec {
    pub kind: SequenceKind,
    pub length: usize,
}

impl CauchySequenceSpec {
    pub fn geometric(start: CVector, ratio: f64, length: usize) -> Self {
        Self {
            kind: SequenceKind::Geometric { start, ratio },
            length,
        }
    }

    pub fn convergent(start: CVector, limit: CVector, ratio: f64, length: usize) -> Self {
        Self {
            kind: SequenceKind::Convergent { start, limit, ratio },
            length,
        }
    }

    pub fn custom(points: Vec<CVector>) -> Self {
        let length = points.len();
        Self {
            kind: SequenceKind::Custom { points },
            length,
        }
    }

    /// Generates the points and verifies the kind's Cauchy bound on every pair.
    pub fn generate<N: OperatorValuedNorm + ?Sized>(&self, f: &N) -> Result<Vec<CVector>> {
        let space = f.domain();
        if self.length == 0 || self.length > MAX_SEQUENCE_LENGTH {
            return Err(Error::InvalidArgument(format!(
                "sequence length must lie in 1..={MAX_SEQUENCE_LENGTH}, got {}",
                self.length
            )));
        }
        let check_ratio = |r: f64| {
            if r > 0.0 && r < 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("ratio must lie in (0, 1), got {r}")))
            }
        };
        let (points, bound): (Vec<CVector>, Box<dyn Fn(usize) -> f64>) = match &self.kind {
            SequenceKind::Geometric { start, ratio } => {
                check_ratio(*ratio)?;
                space.check_dim(start)?;
                let r = *ratio;
                let pts = (0..self.length)
                    .map(|n| vec_scale(start, C64::new(r.powi(n as i32), 0.0)))
                    .collect();
                let s = space.norm(start);
                (pts, Box::new(move |m| s * r.powi(m as i32) / (1.0 - r)))
            }
            SequenceKind::Convergent { start, limit, ratio } => {
                check_ratio(*ratio)?;
                space.check_dim(start)?;
                space.check_dim(limit)?;
                let r = *ratio;
                let offset = vec_sub(start, limit);
                let pts = (0..self.length)
                    .map(|n| vec_add(limit, &vec_scale(&offset, C64::new((-r).powi(n as i32), 0.0))))
                    .collect();
                let s = space.norm(&offset);
                (pts, Box::new(move |m| 2.0 * s * r.powi(m as i32) / (1.0 - r)))
            }
            SequenceKind::Custom { points } => {
                for p in points {
                    space.check_dim(p)?;
                    if p.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                        return Err(Error::InvalidArgument("custom sequence has non-finite entries".into()));
                    }
                }
                (points.clone(), Box::new(|_| f64::INFINITY))
            }
        };
        for m in 0..points.len() {
            for k in (m + 1)..points.len() {
                let distance = space.norm(&vec_sub(&points[m], &points[k]));
                let b = bound(m);
                if distance > b * (1.0 + 1e-12) + 1e-300 {
                    return Err(Error::NotCauchy { m, k, distance, bound: b });
                }
            }
        }
        Ok(points)
    }

    /// Unit directions along which the sequence moves.
    fn directions<N: OperatorValuedNorm + ?Sized>(&self, f: &N, points: &[CVector]) -> Vec<CVector> {
        let space = f.domain();
        let raw: Vec<CVector> = match &self.kind {
            SequenceKind::Geometric { start, .. } => vec![start.clone()],
            SequenceKind::Convergent { start, limit, .. } => vec![vec_sub(start, limit)],
            SequenceKind::Custom { .. } => points.iter().skip(1).map(|p| vec_sub(p, &points[0])).collect(),
        };
        raw.into_iter()
            .filter_map(|d| {
                let n = space.norm(&d);
                (n > 0.0).then(|| vec_scale(&d, C64::new(1.0 / n, 0.0)))
            })
            .collect()
    }
}

/// Pairs whose predicted image gap is below this fraction of the image
/// norms are left out of the worst-ratio metric.
pub const RATIO_FLOOR: f64 = 1e-6;

/// Sphere samples used for `M̂` when none is supplied.
pub const DEFAULT_SPHERE_SAMPLES: usize = 1000;

/// Checks the Lipschitz chain on every pair of a generated sequence:
/// `‖F(x_m) - F(x_k)‖ <= ‖F(x_m - x_k)‖ <= M̂ ‖x_m - x_k‖`.
///
/// `M̂` is the sampled boundedness estimate over the unit sphere together
/// with the sequence's own directions of motion. For convergent sequences
/// the report also carries the first index after which the image oscillates
/// by less than `1e-8`, and fails if that index exceeds the one predicted
/// by `2 M̂ ‖x_0 - ℓ‖ rᴺ <= 1e-8`.
pub fn cauchy_propagation<N: OperatorValuedNorm + ?Sized>(
    f: &N,
    spec: &CauchySequenceSpec,
    seed: u64,
) -> Result<CheckReport> {
    let points = spec.generate(f)?;
    let sphere = boundedness_estimate(f, DEFAULT_SPHERE_SAMPLES, seed)?;
    let mut m_hat = sphere;
    for d in spec.directions(f, &points) {
        m_hat = m_hat.max(f.norm_at(&d)?);
    }
    let space = f.domain();
    let images = points.iter().map(|p| f.evaluate(p)).collect::<Result<Vec<_>>>()?;
    let image_norms: Vec<f64> = images.iter().map(|v| f.value_norm(v)).collect();
    let n = points.len();

    let mut report = CheckReport::new("cauchy_propagation");
    report.metric("m_hat", m_hat);
    report.metric("m_hat_sphere", sphere);
    let mut osc = vec![vec![0.0f64; n]; n];
    let mut worst_ratio: f64 = 0.0;
    for m in 0..n {
        for k in (m + 1)..n {
            let d = vec_sub(&points[m], &points[k]);
            let dn = space.norm(&d);
            let image_gap = f.value_norm(&(&images[m] - &images[k]));
            let fd = f.norm_at(&d)?;
            osc[m][k] = image_gap;
            // Ratios of gaps near rounding level carry no information.
            let floor = RATIO_FLOOR * (image_norms[m] + image_norms[k]);
            if dn > 0.0 && m_hat * dn >= floor {
                worst_ratio = worst_ratio.max(image_gap / dn);
            }
            report.record(image_gap - fd, INEQUALITY_TOL * fd.max(1.0), || {
                Witness::new(m * n + k, format!("|F(x_{m}) - F(x_{k})| exceeds |F(x_{m} - x_{k})|"))
                    .with_x(&points[m])
                    .with_y(&points[k])
            });
            let lip = m_hat * dn;
            report.record(fd - lip, INEQUALITY_TOL * lip, || {
                Witness::new(m * n + k, format!("|F(x_{m} - x_{k})| exceeds M_hat |x_{m} - x_{k}|"))
                    .with_x(&points[m])
                    .with_y(&points[k])
            });
        }
    }
    report.metric("worst_ratio", worst_ratio);

    // Suffix maxima of the pairwise image gaps give the tail oscillation.
    let mut tail = vec![0.0f64; n + 1];
    for start in (0..n).rev() {
        let row_max = ((start + 1)..n).map(|k| osc[start][k]).fold(0.0, f64::max);
        tail[start] = tail[start + 1].max(row_max);
    }
    let tail_index = (0..n).find(|&i| tail[i] <= TAIL_OSCILLATION);
    report.metric("final_oscillation", tail[n.saturating_sub(2).min(n)]);
    if let Some(i) = tail_index {
        report.metric("tail_index", i as f64);
    }
    if let SequenceKind::Convergent { start, limit, ratio } = &spec.kind {
        let amplitude = 2.0 * m_hat * space.norm(&vec_sub(start, limit));
        let predicted = if amplitude <= TAIL_OSCILLATION {
            0
        } else {
            ((TAIL_OSCILLATION / amplitude).ln() / ratio.ln()).ceil() as usize
        };
        report.metric("predicted_tail_index", predicted as f64);
        if predicted < n {
            match tail_index {
                Some(i) if i <= predicted => {}
                _ => report.fail_with(Witness::new(
                    predicted,
                    format!("image oscillation not below {TAIL_OSCILLATION:e} by index {predicted}"),
                )),
            }
        }
    }
    Ok(report)
}

/// Sizes of the default sequence battery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryConfig {
    pub geometric: usize,
    pub convergent: usize,
    pub length: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            geometric: 20,
            convergent: 20,
            length: 40,
        }
    }
}

/// Seeded battery: geometric sequences with ratios in `[0.05, 0.5)` from
/// random starts, then convergent sequences toward random limits.
pub fn cauchy_battery<N: OperatorValuedNorm + ?Sized>(f: &N, cfg: &BatteryConfig, seed: u64) -> Vec<CauchySequenceSpec> {
    use rand::Rng;
    let space = f.domain();
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::with_capacity(cfg.geometric + cfg.convergent);
    for _ in 0..cfg.geometric {
        let start = space.sample_point(&mut rng);
        let ratio = rng.random_range(0.05..0.5);
        out.push(CauchySequenceSpec::geometric(start, ratio, cfg.length));
    }
    for _ in 0..cfg.convergent {
        let start = space.sample_point(&mut rng);
        let limit = space.sample_point(&mut rng);
        let ratio = rng.random_range(0.05..0.5);
        out.push(CauchySequenceSpec::convergent(start, limit, ratio, cfg.length));
    }
    out
}

/// Combined continuity and completeness certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LipschitzCertificate {
    pub report: CheckReport,
    pub table: ContinuityTable,
    pub sequences: usize,
}

/// Radii `1, 10⁻¹, …, 10⁻⁶`.
pub fn default_radii() -> Vec<f64> {
    (0..=6).map(|i| 10f64.powi(-i)).collect()
}

/// Runs [`continuity_modulus`] over [`default_radii`] and
/// [`cauchy_propagation`] over the default battery, folding both into one
/// report. Passing on this finite battery is what is claimed, nothing more.
pub fn theorem_b1_witness<N: OperatorValuedNorm + ?Sized>(f: &N, seed: u64) -> Result<LipschitzCertificate> {
    theorem_b1_witness_with(f, seed, 200, &BatteryConfig::default())
}

pub fn theorem_b1_witness_with<N: OperatorValuedNorm + ?Sized>(
    f: &N,
    seed: u64,
    samples_per_radius: usize,
    battery: &BatteryConfig,
) -> Result<LipschitzCertificate> {
    let table = continuity_modulus(f, &default_radii(), samples_per_radius, derive_seed(seed, 0))?;
    let mut report = CheckReport::new("lipschitz_certificate");
    for (i, excess) in table.excess().into_iter().enumerate() {
        report.record(excess, 0.0, || {
            Witness::new(i, format!("modulus at radius {:e} exceeds M_hat * r", table.radii[i]))
        });
    }
    let specs = cauchy_battery(f, battery, derive_seed(seed, 1));
    let mut worst_ratio: f64 = 0.0;
    let mut m_hat: f64 = table.bound;
    for (i, spec) in specs.iter().enumerate() {
        let r = cauchy_propagation(f, spec, derive_seed(seed, 2))?;
        worst_ratio = worst_ratio.max(r.metrics["worst_ratio"]);
        m_hat = m_hat.max(r.metrics["m_hat"]);
        if !r.passed {
            report.note(format!("sequence {i} failed"));
        }
        report.absorb(&r);
    }
    report.metric("m_hat", m_hat);
    report.metric("m_hat_continuity", table.bound);
    report.metric("worst_ratio", worst_ratio);
    report.note(format!(
        "linear bound |F(x)| <= M_hat |x| on {} radii; Lipschitz chain on {} sequences of length {}",
        table.radii.len(),
        specs.len(),
        battery.length
    ));
    Ok(LipschitzCertificate {
        report,
        table,
        sequences: specs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{compose_norm, mult_norm_l2, trivial_norm};
    use crate::random::random_with_condition;
    use crate::space::{NormedSpaceModel, ScalarField};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn subadditivity_edge_cases() {
        let f = mult_norm_l2(4).unwrap();
        let x = vec![c(1.0), c(-2.0), C64::new(0.5, 0.5), c(0.0)];
        let zero = vec![c(0.0); 4];
        assert!(subadditivity_slack(&f, &x, &zero).unwrap().abs() <= 1e-12);
        assert_eq!(f.norm_at(&vec_add(&x, &x)).unwrap(), 2.0 * f.norm_at(&x).unwrap());
        assert!(reverse_triangle_slack(&f, &x, &x).unwrap().abs() <= 1e-12);
        assert!(reverse_triangle_slack(&f, &x, &zero).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn random_pairs_pass() {
        let f = mult_norm_l2(8).unwrap();
        let r = check_norm_subadditivity(&f, 1000, 3).unwrap();
        assert!(r.passed && r.checks == 1000);
        assert!(r.metrics["worst_slack"] >= -1e-9);
        let mut rng = rng_from_seed(5);
        let g = compose_norm(&mult_norm_l2(4).unwrap(), &random_with_condition(&mut rng, 4, 20.0)).unwrap();
        assert!(check_reverse_triangle(&g, 1000, 4).unwrap().passed);
    }

    #[test]
    fn continuity_table_examples() {
        let radii = [1.0, 0.1, 0.01];
        let t = trivial_norm(NormedSpaceModel::l2(3, ScalarField::Complex).unwrap(), 2).unwrap();
        let table = continuity_modulus(&t, &radii, 50, 1).unwrap();
        for (m, r) in table.moduli.iter().zip(&radii) {
            assert!((m - r).abs() <= 1e-12);
        }
        let f = mult_norm_l2(8).unwrap();
        let table = continuity_modulus(&f, &radii, 50, 1).unwrap();
        for (m, r) in table.moduli.iter().zip(&radii) {
            assert!((m - r).abs() <= 1e-12);
        }
        assert!(table.certifies_linear_bound());
    }

    #[test]
    fn continuity_rejects_bad_radii() {
        let f = mult_norm_l2(2).unwrap();
        assert!(continuity_modulus(&f, &[1.0, 1.0], 5, 0).is_err());
        assert!(continuity_modulus(&f, &[1.0, -0.1], 5, 0).is_err());
    }

    #[test]
    fn constant_sequence_has_zero_increments() {
        let f = mult_norm_l2(3).unwrap();
        let p = vec![c(1.0), c(2.0), c(3.0)];
        let r = cauchy_propagation(&f, &CauchySequenceSpec::custom(vec![p.clone(); 5]), 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.max_residual, 0.0);
        assert_eq!(r.metrics["worst_ratio"], 0.0);
    }

    #[test]
    fn geometric_halving_under_mult_norm() {
        let f = mult_norm_l2(4).unwrap();
        let start = vec![c(1.0), C64::new(0.0, -3.0), c(0.5), c(2.0)];
        let spec = CauchySequenceSpec::geometric(start, 0.5, 30);
        let r = cauchy_propagation(&f, &spec, 1).unwrap();
        assert!(r.passed, "{r:?}");
        assert!((r.metrics["m_hat"] - 1.0).abs() <= 1e-12);
        assert!(r.metrics["worst_ratio"] <= 1.0 + 1e-12);
    }

    #[test]
    fn convergent_sequence_image_is_cauchy_by_predicted_index() {
        let f = mult_norm_l2(4).unwrap();
        let spec = CauchySequenceSpec::convergent(
            vec![c(3.0), c(-1.0), c(0.0), c(2.0)],
            vec![c(1.0), c(1.0), c(1.0), c(1.0)],
            0.3,
            40,
        );
        let r = cauchy_propagation(&f, &spec, 2).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.metrics["tail_index"] <= r.metrics["predicted_tail_index"]);
    }

    #[test]
    fn rejects_invalid_specs() {
        let f = mult_norm_l2(2).unwrap();
        let s = CauchySequenceSpec::geometric(vec![c(1.0), c(1.0)], 1.5, 10);
        assert!(s.generate(&f).is_err());
        let s = CauchySequenceSpec::geometric(vec![c(1.0), c(1.0)], 0.5, 101);
        assert!(s.generate(&f).is_err());
        let s = CauchySequenceSpec::geometric(vec![c(1.0)], 0.5, 10);
        assert!(s.generate(&f).is_err());
    }

    #[test]
    fn certificate_for_standard_norms() {
        let t = trivial_norm(NormedSpaceModel::l1(3, ScalarField::Complex).unwrap(), 2).unwrap();
        let cert = theorem_b1_witness(&t, 5).unwrap();
        assert!(cert.report.passed, "{:?}", cert.report);
        assert!((cert.report.metrics["m_hat"] - 1.0).abs() <= 1e-12);
        let f = mult_norm_l2(8).unwrap();
        let cert = theorem_b1_witness(&f, 6).unwrap();
        assert!(cert.report.passed);
        assert!((cert.report.metrics["m_hat"] - 1.0).abs() <= 1e-12);
        assert_eq!(cert.sequences, 40);
    }

    #[test]
    fn certificate_for_ill_conditioned_composition() {
        let mut rng = rng_from_seed(9);
        let g = compose_norm(&mult_norm_l2(4).unwrap(), &random_with_condition(&mut rng, 4, 1e3)).unwrap();
        let cert = theorem_b1_witness(&g, 7).unwrap();
        assert!(cert.report.passed, "{:?}", cert.report);
        assert!(cert.report.metrics["worst_ratio"] <= cert.report.metrics["m_hat"] * (1.0 + 1e-9));
    }
}
