//! Turns constructor specs into norms, spaces and algebras.

use opnorm_core::ck::mult_norm_ck;
use opnorm_core::embed::{discretize_dual_ball, theorem_a6_norm, DualBallDiscretization};
use opnorm_core::gelfand::{build_algebra, multiplicative_ovnorm, random_commuting_generators};
use opnorm_core::hilbert::{adversarial_shift, compose_norm, mult_norm_l2, trivial_norm};
use opnorm_core::random::{derive_seed, random_with_condition, rng_from_seed};
use opnorm_core::{
    CKValuedNorm, CommutativeStarAlgebra, LHValuedNorm, NormedSpaceModel, OperatorValuedNorm, ScalarField,
};

use crate::config::{AlgebraSpec, FieldSpec, NormSpec, SpaceSpec};
use crate::error::CliError;

/// Tolerance for normality and commutation of supplied generators.
pub const GENERATOR_TOL: f64 = 1e-10;

pub enum BuiltNorm {
    Hilbert(LHValuedNorm),
    Ck(CKValuedNorm),
}

impl BuiltNorm {
    pub fn as_dyn(&self) -> &dyn OperatorValuedNorm {
        match self {
            BuiltNorm::Hilbert(n) => n,
            BuiltNorm::Ck(n) => n,
        }
    }
}

fn core_err(at: &str) -> impl Fn(opnorm_core::Error) -> CliError + '_ {
    move |e| CliError::invalid(at.to_string(), e.to_string())
}

pub fn build_space(spec: &SpaceSpec, at: &str) -> Result<NormedSpaceModel, CliError> {
    let field = |f: &FieldSpec| match f {
        FieldSpec::Real => ScalarField::Real,
        FieldSpec::Complex => ScalarField::Complex,
    };
    match spec {
        SpaceSpec::L1 { dim, field: f } => NormedSpaceModel::l1(*dim, field(f)),
        SpaceSpec::L2 { dim, field: f } => NormedSpaceModel::l2(*dim, field(f)),
        SpaceSpec::Linf { dim, field: f } => NormedSpaceModel::linf(*dim, field(f)),
        SpaceSpec::Lp { dim, p, field: f } => NormedSpaceModel::lp(*dim, *p, field(f)),
        SpaceSpec::Polytope { dim, functionals } => NormedSpaceModel::polytope(*dim, functionals.clone()),
    }
    .map_err(core_err(at))
}

pub fn build_algebra_spec(spec: &AlgebraSpec, seed: u64, at: &str) -> Result<CommutativeStarAlgebra, CliError> {
    let generators = match spec {
        AlgebraSpec::Explicit { generators } => generators.clone(),
        AlgebraSpec::Random {
            dim,
            generators,
            distinct,
        } => {
            let mut rng = rng_from_seed(derive_seed(seed, 0));
            random_commuting_generators(&mut rng, *dim, *generators, distinct.unwrap_or(*dim))
        }
    };
    build_algebra(&generators, GENERATOR_TOL, derive_seed(seed, 1)).map_err(core_err(at))
}

pub fn build_discretization(
    space: &SpaceSpec,
    strategy: &opnorm_core::embed::DiscretizationStrategy,
    at: &str,
) -> Result<DualBallDiscretization, CliError> {
    let model = build_space(space, &format!("{at}.space"))?;
    discretize_dual_ball(&model, strategy).map_err(core_err(&format!("{at}.discretization")))
}

/// Builds the norm; randomized pieces draw from `seed`.
pub fn build_norm(spec: &NormSpec, seed: u64, at: &str) -> Result<BuiltNorm, CliError> {
    Ok(match spec {
        NormSpec::TrivialNorm { space, hilbert_dim } => {
            let model = build_space(space, &format!("{at}.space"))?;
            BuiltNorm::Hilbert(trivial_norm(model, *hilbert_dim).map_err(core_err(at))?)
        }
        NormSpec::MultNormL2 { grid_size } => BuiltNorm::Hilbert(mult_norm_l2(*grid_size).map_err(core_err(at))?),
        NormSpec::ComposeNorm {
            inner,
            matrix,
            condition,
        } => {
            let inner = build_hilbert(inner, derive_seed(seed, 1), &format!("{at}.inner"))?;
            let t = match (matrix, condition) {
                (Some(m), _) => m.clone(),
                (None, Some(c)) => {
                    let mut rng = rng_from_seed(derive_seed(seed, 0));
                    random_with_condition(&mut rng, inner.domain().dim(), *c)
                }
                (None, None) => return Err(CliError::invalid(at.to_string(), "missing `matrix` or `condition`")),
            };
            BuiltNorm::Hilbert(compose_norm(&inner, &t).map_err(core_err(at))?)
        }
        NormSpec::AdversarialShift { inner, shift } => {
            let inner = build_hilbert(inner, derive_seed(seed, 1), &format!("{at}.inner"))?;
            BuiltNorm::Hilbert(adversarial_shift(&inner, *shift))
        }
        NormSpec::MultNormCk { grid_size } => BuiltNorm::Ck(mult_norm_ck(*grid_size).map_err(core_err(at))?),
        NormSpec::MultiplicativeOvnorm { algebra } => {
            let alg = build_algebra_spec(algebra, seed, &format!("{at}.algebra"))?;
            BuiltNorm::Ck(multiplicative_ovnorm(&alg).map_err(core_err(at))?)
        }
        NormSpec::TheoremA6Norm { space, discretization } => {
            BuiltNorm::Ck(theorem_a6_norm(&build_discretization(space, discretization, at)?))
        }
    })
}

pub fn build_hilbert(spec: &NormSpec, seed: u64, at: &str) -> Result<LHValuedNorm, CliError> {
    match build_norm(spec, seed, at)? {
        BuiltNorm::Hilbert(n) => Ok(n),
        BuiltNorm::Ck(_) => Err(CliError::invalid(
            at.to_string(),
            format!("{} is C(K)-valued; this suite needs an L(H)-valued norm", spec.constructor()),
        )),
    }
}

pub fn build_ck(spec: &NormSpec, seed: u64, at: &str) -> Result<CKValuedNorm, CliError> {
    match build_norm(spec, seed, at)? {
        BuiltNorm::Ck(n) => Ok(n),
        BuiltNorm::Hilbert(_) => Err(CliError::invalid(
            at.to_string(),
            format!("{} is L(H)-valued; this suite needs a C(K)-valued norm", spec.constructor()),
        )),
    }
}
