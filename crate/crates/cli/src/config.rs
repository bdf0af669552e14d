//! Run configuration: a JSON document naming suites and the norms they test.

use std::path::PathBuf;

use opnorm_core::embed::DiscretizationStrategy;
use opnorm_core::Operator;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub suites: Vec<SuiteSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "suite", rename_all = "kebab-case")]
pub enum SuiteSpec {
    AxiomsLh(AxiomsSpec),
    AxiomsCk(AxiomsCkSpec),
    Prop5(Prop5Spec),
    Prop6(Prop6Spec),
    TheoremB1(TheoremB1Spec),
    Gelfand(GelfandSpec),
    CorA9(CorA9Spec),
    EmbedA6(EmbedSpec),
}

impl SuiteSpec {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteSpec::AxiomsLh(_) => "axioms-lh",
            SuiteSpec::AxiomsCk(_) => "axioms-ck",
            SuiteSpec::Prop5(_) => "prop5",
            SuiteSpec::Prop6(_) => "prop6",
            SuiteSpec::TheoremB1(_) => "theorem-b1",
            SuiteSpec::Gelfand(_) => "gelfand",
            SuiteSpec::CorA9(_) => "cor-a9",
            SuiteSpec::EmbedA6(_) => "embed-a6",
        }
    }
}

pub const SUITE_NAMES: [&str; 8] = [
    "axioms-lh",
    "axioms-ck",
    "prop5",
    "prop6",
    "theorem-b1",
    "gelfand",
    "cor-a9",
    "embed-a6",
];

fn d500() -> usize {
    500
}
fn d1000() -> usize {
    1000
}
fn d200() -> usize {
    200
}
fn d100() -> usize {
    100
}
fn d20() -> usize {
    20
}
fn d40() -> usize {
    40
}
fn d8() -> usize {
    8
}
fn tol9() -> f64 {
    1e-9
}
fn tol8() -> f64 {
    1e-8
}
fn nilpotent() -> usize {
    1_000_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomsSpec {
    pub norm: NormSpec,
    #[serde(default = "d500")]
    pub samples: usize,
    #[serde(default = "d500")]
    pub pairs: usize,
    #[serde(default = "tol9")]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomsCkSpec {
    pub norm: NormSpec,
    #[serde(default = "d500")]
    pub samples: usize,
    #[serde(default = "d500")]
    pub pairs: usize,
    #[serde(default = "d100")]
    pub test_functions: usize,
    #[serde(default = "tol9")]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prop5Spec {
    pub norm: NormSpec,
    #[serde(default = "d1000")]
    pub pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prop6Spec {
    #[serde(default = "d100")]
    pub matrices: usize,
    #[serde(default = "d8")]
    pub max_dim: usize,
    #[serde(default = "nilpotent")]
    pub nilpotent_samples: usize,
    #[serde(default = "tol8")]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremB1Spec {
    pub norm: NormSpec,
    #[serde(default = "d200")]
    pub samples_per_radius: usize,
    #[serde(default = "d20")]
    pub geometric: usize,
    #[serde(default = "d20")]
    pub convergent: usize,
    #[serde(default = "d40")]
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GelfandSpec {
    pub algebra: AlgebraSpec,
    #[serde(default = "d200")]
    pub samples: usize,
    #[serde(default = "d100")]
    pub pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorA9Spec {
    pub algebra: AlgebraSpec,
    #[serde(default = "d100")]
    pub pairs: usize,
    #[serde(default = "d200")]
    pub samples: usize,
    #[serde(default = "d100")]
    pub test_functions: usize,
    #[serde(default = "tol9")]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbedSpec {
    pub space: SpaceSpec,
    pub discretization: DiscretizationStrategy,
    #[serde(default = "d1000")]
    pub samples: usize,
    #[serde(default = "d200")]
    pub axiom_samples: usize,
    #[serde(default = "d100")]
    pub test_functions: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    #[default]
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "norm", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    L1 {
        dim: usize,
        #[serde(default)]
        field: FieldSpec,
    },
    L2 {
        dim: usize,
        #[serde(default)]
        field: FieldSpec,
    },
    Linf {
        dim: usize,
        #[serde(default)]
        field: FieldSpec,
    },
    Lp {
        dim: usize,
        p: f64,
        #[serde(default)]
        field: FieldSpec,
    },
    Polytope {
        dim: usize,
        functionals: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Explicit {
        generators: Vec<Operator>,
    },
    /// Commuting normal generators sharing a random unitary; diagonal
    /// values are drawn from `distinct` random complex numbers.
    Random {
        dim: usize,
        #[serde(default = "one")]
        generators: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        distinct: Option<usize>,
    },
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "constructor", rename_all = "snake_case", deny_unknown_fields)]
pub enum NormSpec {
    TrivialNorm {
        space: SpaceSpec,
        hilbert_dim: usize,
    },
    MultNormL2 {
        grid_size: usize,
    },
    /// `F∘T` with `T` given explicitly or drawn with condition number `condition`.
    ComposeNorm {
        inner: Box<NormSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Operator>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        condition: Option<f64>,
    },
    AdversarialShift {
        inner: Box<NormSpec>,
        shift: f64,
    },
    MultNormCk {
        grid_size: usize,
    },
    MultiplicativeOvnorm {
        algebra: AlgebraSpec,
    },
    TheoremA6Norm {
        space: SpaceSpec,
        discretization: DiscretizationStrategy,
    },
}

pub const CONSTRUCTOR_NAMES: [&str; 7] = [
    "trivial_norm",
    "mult_norm_l2",
    "compose_norm",
    "adversarial_shift",
    "mult_norm_ck",
    "multiplicative_ovnorm",
    "theorem_a6_norm",
];

impl SuiteConfig {
    /// Parses and validates; errors carry file position or config path.
    pub fn parse(text: &str, source: &str) -> Result<Self, CliError> {
        let cfg: SuiteConfig = serde_json::from_str(text).map_err(|e| CliError::parse(source, &e))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (i, s) in self.suites.iter().enumerate() {
            let at = format!("suites[{i}]");
            match s {
                SuiteSpec::AxiomsLh(a) => {
                    a.norm.validate(&format!("{at}.norm"))?;
                    count(&at, "samples", a.samples)?;
                    count(&at, "pairs", a.pairs)?;
                    tol(&at, "tol", a.tol)?;
                }
                SuiteSpec::AxiomsCk(a) => {
                    a.norm.validate(&format!("{at}.norm"))?;
                    count(&at, "samples", a.samples)?;
                    count(&at, "pairs", a.pairs)?;
                    count(&at, "test_functions", a.test_functions)?;
                    tol(&at, "tol", a.tol)?;
                }
                SuiteSpec::Prop5(p) => {
                    p.norm.validate(&format!("{at}.norm"))?;
                    count(&at, "pairs", p.pairs)?;
                }
                SuiteSpec::Prop6(p) => {
                    count(&at, "matrices", p.matrices)?;
                    count(&at, "max_dim", p.max_dim)?;
                    count(&at, "nilpotent_samples", p.nilpotent_samples)?;
                    tol(&at, "tol", p.tol)?;
                }
                SuiteSpec::TheoremB1(t) => {
                    t.norm.validate(&format!("{at}.norm"))?;
                    count(&at, "samples_per_radius", t.samples_per_radius)?;
                    count(&at, "geometric", t.geometric)?;
                    count(&at, "convergent", t.convergent)?;
                    count(&at, "length", t.length)?;
                    if t.length > opnorm_core::analysis::MAX_SEQUENCE_LENGTH {
                        return Err(CliError::invalid(
                            format!("{at}.length"),
                            format!("at most {} points per sequence", opnorm_core::analysis::MAX_SEQUENCE_LENGTH),
                        ));
                    }
                }
                SuiteSpec::Gelfand(g) => {
                    g.algebra.validate(&format!("{at}.algebra"))?;
                    count(&at, "samples", g.samples)?;
                    count(&at, "pairs", g.pairs)?;
                }
                SuiteSpec::CorA9(c) => {
                    c.algebra.validate(&format!("{at}.algebra"))?;
                    count(&at, "pairs", c.pairs)?;
                    count(&at, "samples", c.samples)?;
                    count(&at, "test_functions", c.test_functions)?;
                    tol(&at, "tol", c.tol)?;
                }
                SuiteSpec::EmbedA6(e) => {
                    e.space.validate(&format!("{at}.space"))?;
                    validate_discretization(&format!("{at}.discretization"), &e.discretization)?;
                    count(&at, "samples", e.samples)?;
                    count(&at, "axiom_samples", e.axiom_samples)?;
                    count(&at, "test_functions", e.test_functions)?;
                }
            }
        }
        Ok(())
    }
}

fn count(at: &str, field: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        return Err(CliError::invalid(format!("{at}.{field}"), "count must be at least 1"));
    }
    Ok(())
}

fn tol(at: &str, field: &str, v: f64) -> Result<(), CliError> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(CliError::invalid(format!("{at}.{field}"), format!("tolerance must be positive, got {v}")));
    }
    Ok(())
}

fn validate_discretization(at: &str, d: &DiscretizationStrategy) -> Result<(), CliError> {
    match d {
        DiscretizationStrategy::Sampled { count: c, .. } => count(at, "count", *c),
        DiscretizationStrategy::UserSupplied { functionals } if functionals.is_empty() => {
            Err(CliError::invalid(format!("{at}.functionals"), "at least one functional is required"))
        }
        _ => Ok(()),
    }
}

impl SpaceSpec {
    pub fn dim(&self) -> usize {
        match self {
            SpaceSpec::L1 { dim, .. }
            | SpaceSpec::L2 { dim, .. }
            | SpaceSpec::Linf { dim, .. }
            | SpaceSpec::Lp { dim, .. }
            | SpaceSpec::Polytope { dim, .. } => *dim,
        }
    }

    fn validate(&self, at: &str) -> Result<(), CliError> {
        count(at, "dim", self.dim())?;
        match self {
            SpaceSpec::Lp { p, .. } if !(*p >= 1.0) => {
                Err(CliError::invalid(format!("{at}.p"), format!("p must lie in [1, inf], got {p}")))
            }
            SpaceSpec::Polytope { dim, functionals } => {
                if functionals.is_empty() {
                    return Err(CliError::invalid(format!("{at}.functionals"), "at least one functional is required"));
                }
                match functionals.iter().position(|f| f.len() != *dim) {
                    Some(j) => Err(CliError::invalid(
                        format!("{at}.functionals[{j}]"),
                        format!("expected {dim} entries"),
                    )),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }
}

impl AlgebraSpec {
    fn validate(&self, at: &str) -> Result<(), CliError> {
        match self {
            AlgebraSpec::Explicit { generators } => {
                if generators.is_empty() {
                    return Err(CliError::invalid(format!("{at}.generators"), "at least one generator is required"));
                }
                Ok(())
            }
            AlgebraSpec::Random {
                dim,
                generators,
                distinct,
            } => {
                count(at, "dim", *dim)?;
                count(at, "generators", *generators)?;
                if let Some(d) = distinct {
                    count(at, "distinct", *d)?;
                }
                Ok(())
            }
        }
    }
}

impl NormSpec {
    pub fn constructor(&self) -> &'static str {
        match self {
            NormSpec::TrivialNorm { .. } => "trivial_norm",
            NormSpec::MultNormL2 { .. } => "mult_norm_l2",
            NormSpec::ComposeNorm { .. } => "compose_norm",
            NormSpec::AdversarialShift { .. } => "adversarial_shift",
            NormSpec::MultNormCk { .. } => "mult_norm_ck",
            NormSpec::MultiplicativeOvnorm { .. } => "multiplicative_ovnorm",
            NormSpec::TheoremA6Norm { .. } => "theorem_a6_norm",
        }
    }

    /// Whether the constructor yields an `L(H)`-valued norm.
    pub fn is_hilbert(&self) -> bool {
        matches!(
            self,
            NormSpec::TrivialNorm { .. }
                | NormSpec::MultNormL2 { .. }
                | NormSpec::ComposeNorm { .. }
                | NormSpec::AdversarialShift { .. }
        )
    }

    fn validate(&self, at: &str) -> Result<(), CliError> {
        match self {
            NormSpec::TrivialNorm { space, hilbert_dim } => {
                space.validate(&format!("{at}.space"))?;
                count(at, "hilbert_dim", *hilbert_dim)
            }
            NormSpec::MultNormL2 { grid_size } | NormSpec::MultNormCk { grid_size } => count(at, "grid_size", *grid_size),
            NormSpec::ComposeNorm {
                inner,
                matrix,
                condition,
            } => {
                if !inner.is_hilbert() {
                    return Err(CliError::invalid(format!("{at}.inner"), "compose_norm needs an L(H)-valued inner norm"));
                }
                inner.validate(&format!("{at}.inner"))?;
                match (matrix, condition) {
                    (Some(_), None) => Ok(()),
                    (None, Some(c)) if *c >= 1.0 && c.is_finite() => Ok(()),
                    (None, Some(c)) => Err(CliError::invalid(
                        format!("{at}.condition"),
                        format!("condition number must be finite and >= 1, got {c}"),
                    )),
                    _ => Err(CliError::invalid(at.to_string(), "give exactly one of `matrix` or `condition`")),
                }
            }
            NormSpec::AdversarialShift { inner, shift } => {
                if !inner.is_hilbert() {
                    return Err(CliError::invalid(format!("{at}.inner"), "adversarial_shift needs an L(H)-valued inner norm"));
                }
                if !shift.is_finite() {
                    return Err(CliError::invalid(format!("{at}.shift"), "shift must be finite"));
                }
                inner.validate(&format!("{at}.inner"))
            }
            NormSpec::MultiplicativeOvnorm { algebra } => algebra.validate(&format!("{at}.algebra")),
            NormSpec::TheoremA6Norm { space, discretization } => {
                space.validate(&format!("{at}.space"))?;
                validate_discretization(&format!("{at}.discretization"), discretization)
            }
        }
    }
}
