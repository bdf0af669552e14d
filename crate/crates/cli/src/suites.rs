//! Suite execution.
//!
//! Every suite gets its own seed, `derive_seed(master, SUITE_STREAM + i)`
//! for position `i` in the config; construction draws from stream 0 of that
//! seed and the checks from streams 1 and up. Results therefore do not
//! depend on how suites are scheduled.

use std::time::Instant;

use opnorm_core::analysis::{
    check_norm_subadditivity, check_reverse_triangle, theorem_b1_witness_with, BatteryConfig,
};
use opnorm_core::ck::check_ck_axioms;
use opnorm_core::embed::{beta_embed, isometry_defect, theorem_a6_norm, DualBallDiscretization, Guarantee};
use opnorm_core::gelfand::{
    character_table, check_contractive, check_homomorphism, check_isometric, check_multiplicative_norm,
    multiplicative_ovnorm,
};
use opnorm_core::hilbert::check_lh_axioms;
use opnorm_core::matrix::{vec_add, vec_scale};
use opnorm_core::numkernel::{is_normal, numerical_radius, spectral_norm, spectral_radius, RadiusStrategy, NORMALITY_TOL};
use opnorm_core::random::{derive_seed, random_normal, rng_from_seed};
use opnorm_core::{
    AxiomConfig, CKValuedNorm, CheckReport, CommutativeStarAlgebra, LHValuedNorm, Operator, OperatorValuedNorm,
    Witness, C64,
};
use rand::Rng;

use crate::build::{build_algebra_spec, build_ck, build_discretization, build_hilbert, build_norm, BuiltNorm};
use crate::config::{SuiteSpec, SuiteConfig};
use crate::error::CliError;
use crate::report::{SuiteOutcome, SuiteReport, Verdict};

/// Offset of suite streams in the master seed's stream space.
pub const SUITE_STREAM: u64 = 0x100;

pub fn suite_seed(master: u64, index: usize) -> u64 {
    derive_seed(master, SUITE_STREAM + index as u64)
}

/// What each suite verifies.
pub fn suite_label(name: &str) -> &'static str {
    match name {
        "axioms-lh" => "L(H)-valued norm axioms: positivity, Loewner triangle inequality, absolute homogeneity, definiteness",
        "axioms-ck" => "L(C(K))-valued norm axioms under the positive-cone order",
        "prop5" => "the scalar norm of F is subadditive and satisfies the reverse triangle inequality",
        "prop6" => "for normal operators the spectral norm equals the spectral and numerical radii",
        "theorem-b1" => "completeness with respect to F is equivalent to continuity of F at 0",
        "gelfand" => "the Gelfand transform is a contractive homomorphism, isometric for self-adjoint algebras",
        "cor-a9" => "F(b) = M_|Gamma b| is a multiplicative isometric L(C(M_B))-valued norm",
        "embed-a6" => "F(b) = M_|beta b| over the dual unit ball is an isometric L(C(K))-valued norm",
        _ => "",
    }
}

/// A suite with its norms and algebras already constructed.
pub enum Prepared {
    AxiomsLh(LHValuedNorm, AxiomConfig),
    AxiomsCk(CKValuedNorm, AxiomConfig, usize),
    Prop5(BuiltNorm, usize),
    Prop6 { matrices: usize, max_dim: usize, nilpotent_samples: usize, tol: f64 },
    TheoremB1(BuiltNorm, usize, BatteryConfig),
    Gelfand(CommutativeStarAlgebra, usize, usize),
    CorA9(CommutativeStarAlgebra, CKValuedNorm, usize, AxiomConfig, usize),
    EmbedA6(DualBallDiscretization, usize, AxiomConfig, usize),
}

impl Prepared {
    fn target(&self) -> String {
        match self {
            Prepared::AxiomsLh(n, _) => n.descriptor().to_string(),
            Prepared::AxiomsCk(n, ..) => n.descriptor().to_string(),
            Prepared::Prop5(n, _) | Prepared::TheoremB1(n, ..) => n.as_dyn().descriptor().to_string(),
            Prepared::Prop6 { matrices, max_dim, .. } => format!("{matrices} random normal matrices, d <= {max_dim}"),
            Prepared::Gelfand(a, ..) | Prepared::CorA9(a, ..) => format!(
                "algebra(d={}, generators={}, characters={})",
                a.ambient_dim(),
                a.generators().len(),
                a.dim()
            ),
            Prepared::EmbedA6(d, ..) => format!("dual ball of {} with {} functionals", d.space.label(), d.len()),
        }
    }
}

/// Constructs every suite's objects; any failure is a config error.
pub fn prepare(cfg: &SuiteConfig, master: u64) -> Result<Vec<(String, u64, Prepared)>, CliError> {
    cfg.suites
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let seed = suite_seed(master, i);
            let build = derive_seed(seed, 0);
            let at = format!("suites[{i}]");
            let axioms = |samples, pairs, tol| AxiomConfig {
                samples,
                pairs,
                seed: derive_seed(seed, 1),
                tol,
            };
            let p = match spec {
                SuiteSpec::AxiomsLh(a) => {
                    Prepared::AxiomsLh(build_hilbert(&a.norm, build, &format!("{at}.norm"))?, axioms(a.samples, a.pairs, a.tol))
                }
                SuiteSpec::AxiomsCk(a) => Prepared::AxiomsCk(
                    build_ck(&a.norm, build, &format!("{at}.norm"))?,
                    axioms(a.samples, a.pairs, a.tol),
                    a.test_functions,
                ),
                SuiteSpec::Prop5(p) => Prepared::Prop5(build_norm(&p.norm, build, &format!("{at}.norm"))?, p.pairs),
                SuiteSpec::Prop6(p) => Prepared::Prop6 {
                    matrices: p.matrices,
                    max_dim: p.max_dim,
                    nilpotent_samples: p.nilpotent_samples,
                    tol: p.tol,
                },
                SuiteSpec::TheoremB1(t) => Prepared::TheoremB1(
                    build_norm(&t.norm, build, &format!("{at}.norm"))?,
                    t.samples_per_radius,
                    BatteryConfig {
                        geometric: t.geometric,
                        convergent: t.convergent,
                        length: t.length,
                    },
                ),
                SuiteSpec::Gelfand(g) => {
                    Prepared::Gelfand(build_algebra_spec(&g.algebra, build, &format!("{at}.algebra"))?, g.samples, g.pairs)
                }
                SuiteSpec::CorA9(c) => {
                    let alg = build_algebra_spec(&c.algebra, build, &format!("{at}.algebra"))?;
                    let norm = multiplicative_ovnorm(&alg).map_err(|e| CliError::invalid(format!("{at}.algebra"), e.to_string()))?;
                    Prepared::CorA9(alg, norm, c.pairs, axioms(c.samples, c.samples, c.tol), c.test_functions)
                }
                SuiteSpec::EmbedA6(e) => Prepared::EmbedA6(
                    build_discretization(&e.space, &e.discretization, &at)?,
                    e.samples,
                    axioms(e.axiom_samples, e.axiom_samples, 1e-9),
                    e.test_functions,
                ),
            };
            Ok((spec.name().to_string(), seed, p))
        })
        .collect()
}

/// Runs one prepared suite; core errors during a check become failures.
pub fn execute(index: usize, name: &str, seed: u64, suite: &Prepared) -> SuiteReport {
    let start = Instant::now();
    let mut out = SuiteOutcome::default();
    if let Err(e) = run_checks(suite, seed, &mut out) {
        out.push("error", false, 0, f64::NAN, f64::NAN, Some(Witness::new(0, e.to_string())));
    }
    let residual = out.residual();
    SuiteReport {
        index,
        name: name.to_string(),
        label: suite_label(name).to_string(),
        target: suite.target(),
        seed,
        status: Verdict::from_bool(out.passed()),
        checks: out.checks(),
        residual,
        parts: out.parts,
        witnesses: out.witnesses,
        metrics: out.metrics,
        notes: out.notes,
        artifacts: out.artifacts,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn stream(seed: u64, s: u64) -> u64 {
    derive_seed(seed, s)
}

fn run_checks(suite: &Prepared, seed: u64, out: &mut SuiteOutcome) -> opnorm_core::Result<()> {
    match suite {
        Prepared::AxiomsLh(norm, cfg) => out.push_axioms(&check_lh_axioms(norm, cfg)?),
        Prepared::AxiomsCk(norm, cfg, fs) => out.push_axioms(&check_ck_axioms(norm, cfg, *fs)?),
        Prepared::Prop5(norm, pairs) => {
            let f = norm.as_dyn();
            out.push_check("", &check_norm_subadditivity(f, *pairs, stream(seed, 1))?);
            out.push_check("", &check_reverse_triangle(f, *pairs, stream(seed, 2))?);
            out.push_check("", &equality_cases(f, 50, stream(seed, 3))?);
        }
        Prepared::Prop6 {
            matrices,
            max_dim,
            nilpotent_samples,
            tol,
        } => prop6(*matrices, *max_dim, *nilpotent_samples, *tol, seed, out)?,
        Prepared::TheoremB1(norm, spr, battery) => {
            let cert = theorem_b1_witness_with(norm.as_dyn(), stream(seed, 1), *spr, battery)?;
            out.push_check("", &cert.report);
            out.artifacts = Some(serde_json::to_value(&cert.table).expect("table serializes"));
        }
        Prepared::Gelfand(alg, samples, pairs) => {
            let mut closure = CheckReport::new("closure");
            let r = alg.closure_residual();
            closure.record(r, 1e-9, || Witness::new(0, "spectral projections fail P_i P_j = delta_ij P_i"));
            out.push_check("", &closure);
            out.push_check("", &check_homomorphism(alg, *pairs, stream(seed, 1))?);
            out.push_check("", &check_contractive(alg, *samples, stream(seed, 2))?);
            out.push_check("", &check_isometric(alg, *samples, stream(seed, 3))?);
            out.metrics.insert("characters".into(), alg.dim() as f64);
            out.artifacts = Some(serde_json::to_value(character_table(alg)?).expect("table serializes"));
        }
        Prepared::CorA9(alg, norm, pairs, cfg, fs) => {
            out.push_check("", &check_multiplicative_norm(alg, norm, *pairs, stream(seed, 2))?);
            out.push_axioms(&check_ck_axioms(norm, cfg, *fs)?);
            out.metrics.insert("characters".into(), alg.dim() as f64);
        }
        Prepared::EmbedA6(disc, samples, cfg, fs) => embed(disc, *samples, cfg, *fs, seed, out)?,
    }
    Ok(())
}

/// `‖F(x + 0)‖ = ‖F(x)‖`, `‖F(2x)‖ = 2‖F(x)‖` and `‖F(x) - F(x)‖ = ‖F(0)‖ = 0`.
fn equality_cases(f: &dyn OperatorValuedNorm, count: usize, seed: u64) -> opnorm_core::Result<CheckReport> {
    let mut report = CheckReport::new("equality_cases");
    let mut rng = rng_from_seed(seed);
    let zero = vec![C64::new(0.0, 0.0); f.domain().dim()];
    for i in 0..count {
        let x = f.domain().sample_point(&mut rng);
        let fx = f.norm_at(&x)?;
        let scale = 1e-12 * fx.max(1.0);
        let plus_zero = f.norm_at(&vec_add(&x, &zero))?;
        report.record((plus_zero - fx).abs(), scale, || Witness::new(i, "|F(x+0)| != |F(x)|").with_x(&x));
        let doubled = f.norm_at(&vec_scale(&x, C64::new(2.0, 0.0)))?;
        report.record((doubled - 2.0 * fx).abs(), 2.0 * scale, || Witness::new(i, "|F(2x)| != 2|F(x)|").with_x(&x));
        let fxv = f.evaluate(&x)?;
        #[allow(clippy::eq_op)]
        let gap = f.value_norm(&(&fxv - &fxv)) + f.norm_at(&zero)?;
        report.record(gap, 1e-12, || Witness::new(i, "|F(x) - F(x)| or |F(0)| nonzero").with_x(&x));
    }
    Ok(report)
}

fn prop6(
    matrices: usize,
    max_dim: usize,
    nilpotent_samples: usize,
    tol: f64,
    seed: u64,
    out: &mut SuiteOutcome,
) -> opnorm_core::Result<()> {
    let mut rng = rng_from_seed(stream(seed, 1));
    let mut normal = CheckReport::new("normal_norm_equals_radius");
    for i in 0..matrices {
        let d = rng.random_range(1..=max_dim);
        let m = random_normal(&mut rng, d);
        let norm = spectral_norm(&m)?;
        let rho = spectral_radius(&m)?;
        let w = numerical_radius(&m, RadiusStrategy::ExactNormal)?;
        let r = (norm - rho).abs().max((norm - w).abs());
        normal.record(r, tol, || Witness::new(i, format!("d={d}: |T| = {norm:.12e}, rho = {rho:.12e}, w = {w:.12e}")));
    }
    out.push_check("", &normal);

    // The nilpotent Jordan block shows the normality hypothesis is needed.
    let j = Operator::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
    let mut nil = CheckReport::new("nilpotent_counterexample");
    let w = numerical_radius(
        &j,
        RadiusStrategy::Sampled {
            count: nilpotent_samples,
            seed: stream(seed, 2),
        },
    )?;
    let norm = spectral_norm(&j)?;
    let normal_flag = is_normal(&j, NORMALITY_TOL)?;
    nil.record((0.499 - w).max(w - 0.5), 0.0, || Witness::new(0, format!("sampled numerical radius {w} outside [0.499, 0.5]")));
    nil.record((norm - 1.0).abs(), 1e-12, || Witness::new(0, format!("spectral norm {norm} != 1")));
    nil.record(if normal_flag { 1.0 } else { 0.0 }, 0.0, || Witness::new(0, "Jordan block reported normal"));
    nil.metric("numerical_radius", w);
    nil.metric("spectral_norm", norm);
    nil.metric("spectral_radius", spectral_radius(&j)?);
    out.push_check("", &nil);
    Ok(())
}

fn embed(
    disc: &DualBallDiscretization,
    samples: usize,
    cfg: &AxiomConfig,
    fs: usize,
    seed: u64,
    out: &mut SuiteOutcome,
) -> opnorm_core::Result<()> {
    let rep = isometry_defect(disc, samples, stream(seed, 1))?;
    let mut iso = CheckReport::new("isometry_defect");
    iso.record(-rep.min_defect, 1e-12, || Witness::new(0, "discretized sup exceeds the norm"));
    if let Some(eps) = rep.guarantee.epsilon() {
        let slack = if rep.guarantee == Guarantee::Exact { 1e-12 } else { eps + 1e-12 };
        iso.record(rep.max_defect, slack, || Witness::new(0, format!("defect {:.3e} exceeds guarantee", rep.max_defect)));
    }
    iso.metric("max_defect", rep.max_defect);
    iso.metric("min_defect", rep.min_defect);
    if let Some(eps) = rep.guarantee.epsilon() {
        iso.metric("defect_bound", eps);
    }
    iso.note(rep.note.clone());
    out.push_check("", &iso);

    let mut lin = CheckReport::new("beta_linearity");
    let mut rng = rng_from_seed(stream(seed, 2));
    for i in 0..samples.min(200) {
        let a = disc.space.sample_point(&mut rng);
        let b = disc.space.sample_point(&mut rng);
        let alpha = disc.space.sample_scalar(&mut rng);
        let lhs = beta_embed(disc, &vec_add(&vec_scale(&a, alpha), &b))?;
        let (ba, bb) = (beta_embed(disc, &a)?, beta_embed(disc, &b)?);
        let scale = ba.iter().chain(&bb).map(|z| z.norm()).fold(1.0, f64::max) * alpha.norm().max(1.0);
        let r = lhs.iter().zip(ba.iter().zip(&bb)).map(|(l, (x, y))| (l - (alpha * x + y)).norm()).fold(0.0, f64::max);
        lin.record(r, 1e-12 * scale, || Witness::new(i, "beta is not linear").with_x(&a).with_y(&b));
    }
    out.push_check("", &lin);
    out.push_axioms(&check_ck_axioms(&theorem_a6_norm(disc), cfg, fs)?);
    out.artifacts = Some(serde_json::json!({
        "discretization": disc.export(),
        "embedding": rep,
    }));
    Ok(())
}
