//! Commutative *-algebras of matrices, their characters and the Gelfand
//! transform.
//!
//! The algebra generated by commuting normal matrices is modelled by its
//! maximal commutative extension: the span of the spectral projections of the
//! joint eigenspaces. Characters evaluate an element on one joint eigenvector.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ck::{op_norm_sup, CKValuedNorm, FiniteCK};
use crate::error::{Error, Result};
use crate::matrix::{complex_pairs, vec_dot, CVector, Operator, C64};
use crate::numkernel::{simultaneous_diagonalize, spectral_norm};
use crate::random::{complex_gaussian, rng_from_seed};
use crate::report::{CheckReport, Witness};
use crate::space::{NormedSpaceModel, ScalarField};

/// Joint eigenvalue tuples closer than this (max coordinate difference) share a class.
pub const CLASS_TOL: f64 = 1e-8;
/// Relative Frobenius residual allowed when projecting onto the algebra.
pub const MEMBERSHIP_TOL: f64 = 1e-8;
/// Tolerance for homomorphism, contractivity and isometry checks.
pub const GELFAND_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct CommutativeStarAlgebra {
    ambient_dim: usize,
    generators: Vec<Operator>,
    basis: Operator,
    classes: Vec<Vec<usize>>,
    projections: Vec<Operator>,
    joint_spectrum: Vec<CVector>,
    attempts: usize,
}

/// Builds the algebra with the default class tolerance.
pub fn build_algebra(generators: &[Operator], tol: f64, seed: u64) -> Result<CommutativeStarAlgebra> {
    build_algebra_with(generators, tol, CLASS_TOL, seed)
}

pub fn build_algebra_with(
    generators: &[Operator],
    tol: f64,
    class_tol: f64,
    seed: u64,
) -> Result<CommutativeStarAlgebra> {
    if generators.is_empty() {
        return Err(Error::InvalidArgument("at least one generator is required".into()));
    }
    let joint = simultaneous_diagonalize(generators, tol, seed)?;
    let d = generators[0].rows();
    if d == 0 {
        return Err(Error::EmptyMatrix);
    }

    let tuple = |slot: usize| -> CVector { joint.diagonals.iter().map(|diag| diag[slot]).collect() };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<CVector> = Vec::new();
    for slot in 0..d {
        let t = tuple(slot);
        let hit = reps.iter().position(|r| {
            r.iter().zip(&t).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) <= class_tol
        });
        match hit {
            Some(c) => classes[c].push(slot),
            None => {
                reps.push(t);
                classes.push(vec![slot]);
            }
        }
    }

    let columns: Vec<CVector> = (0..d).map(|j| joint.basis.column(j)).collect();
    let projections = classes
        .iter()
        .map(|slots| {
            Operator::from_fn(d, d, |i, j| {
                slots.iter().map(|&s| columns[s][i] * columns[s][j].conj()).sum()
            })
        })
        .collect();
    let joint_spectrum = classes
        .iter()
        .map(|slots| {
            let n = slots.len() as f64;
            (0..generators.len())
                .map(|g| slots.iter().map(|&s| joint.diagonals[g][s]).sum::<C64>() / n)
                .collect()
        })
        .collect();

    Ok(CommutativeStarAlgebra {
        ambient_dim: d,
        generators: generators.to_vec(),
        basis: joint.basis,
        classes,
        projections,
        joint_spectrum,
        attempts: joint.attempts,
    })
}

impl CommutativeStarAlgebra {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the algebra, equal to the number of characters.
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn generators(&self) -> &[Operator] {
        &self.generators
    }

    pub fn diagonalizing_basis(&self) -> &Operator {
        &self.basis
    }

    /// Spectral projections spanning the algebra.
    pub fn basis_elements(&self) -> &[Operator] {
        &self.projections
    }

    /// Slots of the diagonalizing basis grouped by joint eigenvalue.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn joint_spectrum(&self) -> &[CVector] {
        &self.joint_spectrum
    }

    pub fn attempts(&self) -> usize {
        self.attempts
    }

    /// `Σ v_i P_i`.
    pub fn element(&self, coords: &[C64]) -> Result<Operator> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        let mut out = Operator::zeros(self.ambient_dim, self.ambient_dim);
        for (p, &c) in self.projections.iter().zip(coords) {
            out = &out + &p.scale(c);
        }
        Ok(out)
    }

    /// Coordinates `tr(P_i f) / rank P_i`, or [`Error::OutsideAlgebra`] when
    /// `f` is farther than [`MEMBERSHIP_TOL`] (relative) from the span.
    pub fn coordinates(&self, f: &Operator) -> Result<CVector> {
        if f.rows() != self.ambient_dim || f.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: f.rows(),
            });
        }
        let coords: CVector = self
            .projections
            .iter()
            .zip(&self.classes)
            .map(|(p, slots)| (p * f).trace() / slots.len() as f64)
            .collect();
        let residual = (f - &self.element(&coords)?).frobenius_norm() / f.frobenius_norm().max(1.0);
        if residual > MEMBERSHIP_TOL {
            return Err(Error::OutsideAlgebra { residual });
        }
        Ok(coords)
    }

    pub fn random_coordinates(&self, rng: &mut impl Rng) -> CVector {
        (0..self.dim()).map(|_| complex_gaussian(rng)).collect()
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Operator {
        self.element(&self.random_coordinates(rng))
            .expect("coordinate count matches by construction")
    }

    /// Largest relative residual of the closure identities
    /// `P_i P_j = δ_ij P_i`, `P_iᴴ = P_i`, `Σ P_i = I`.
    pub fn closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut sum = Operator::zeros(self.ambient_dim, self.ambient_dim);
        for (i, p) in self.projections.iter().enumerate() {
            worst = worst.max(p.hermitian_residual());
            for (j, q) in self.projections.iter().enumerate() {
                let prod = p * q;
                let expected = if i == j { p.clone() } else { Operator::zeros(p.rows(), p.cols()) };
                worst = worst.max(prod.max_abs_diff(&expected));
            }
            sum = &sum + p;
        }
        worst.max(sum.max_abs_diff(&Operator::identity(self.ambient_dim)))
    }
}

/// A multiplicative functional, evaluated on one slot of the diagonalizing basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Character {
    pub index: usize,
    pub slot: usize,
    /// Values on the generators.
    #[serde(with = "complex_pairs")]
    pub point: CVector,
    #[serde(skip)]
    vector: CVector,
}

impl Character {
    /// `uᴴ f u` for the character's joint eigenvector `u`.
    pub fn evaluate(&self, f: &Operator) -> C64 {
        vec_dot(&self.vector, &f.mul_vec(&self.vector))
    }
}

/// One character per joint-spectrum class.
pub fn characters(algebra: &CommutativeStarAlgebra) -> Result<Vec<Character>> {
    let chars: Vec<Character> = algebra
        .classes
        .iter()
        .enumerate()
        .map(|(index, slots)| {
            let slot = slots[0];
            let vector = algebra.basis.column(slot);
            let point = algebra.generators.iter().map(|g| vec_dot(&vector, &g.mul_vec(&vector))).collect();
            Character {
                index,
                slot,
                point,
                vector,
            }
        })
        .collect();
    for i in 0..chars.len() {
        for j in (i + 1)..chars.len() {
            let gap = chars[i]
                .point
                .iter()
                .zip(&chars[j].point)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if gap <= CLASS_TOL {
                return Err(Error::InvalidArgument(format!(
                    "characters {i} and {j} coincide on the generators (gap {gap:.3e}); rebuild with another seed"
                )));
            }
        }
    }
    Ok(chars)
}

/// `(Γf)_i = φ_i(f)`.
pub fn gelfand_transform(algebra: &CommutativeStarAlgebra, f: &Operator) -> Result<CVector> {
    algebra.coordinates(f)?;
    Ok(characters(algebra)?.iter().map(|c| c.evaluate(f)).collect())
}

fn sup(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn transform_with(chars: &[Character], f: &Operator) -> CVector {
    chars.iter().map(|c| c.evaluate(f)).collect()
}

/// `φ(1) = 1`, `Γ(f + g) = Γf + Γg` and `Γ(fg) = Γf·Γg` on sampled pairs.
pub fn check_homomorphism(algebra: &CommutativeStarAlgebra, samples: usize, seed: u64) -> Result<CheckReport> {
    let chars = characters(algebra)?;
    let mut report = CheckReport::new("gelfand_homomorphism");
    let id = Operator::identity(algebra.ambient_dim);
    for c in &chars {
        let r = (c.evaluate(&id) - 1.0).norm();
        report.record(r, 1e-10, || Witness::new(c.index, format!("phi_{}(1) != 1", c.index)));
    }
    let mut rng = rng_from_seed(seed);
    for s in 0..samples {
        let f = algebra.random_element(&mut rng);
        let g = algebra.random_element(&mut rng);
        let (gf, gg) = (transform_with(&chars, &f), transform_with(&chars, &g));
        let scale = (spectral_norm(&f)? * spectral_norm(&g)?).max(1.0);
        let sum = transform_with(&chars, &(&f + &g));
        let prod = transform_with(&chars, &(&f * &g));
        let add_res = sum.iter().zip(gf.iter().zip(&gg)).map(|(s, (a, b))| (s - a - b).norm()).fold(0.0, f64::max);
        let mul_res = prod.iter().zip(gf.iter().zip(&gg)).map(|(p, (a, b))| (p - a * b).norm()).fold(0.0, f64::max);
        report.record(add_res, GELFAND_TOL * scale, || Witness::new(s, "Gamma(f+g) != Gamma f + Gamma g"));
        report.record(mul_res, GELFAND_TOL * scale, || Witness::new(s, "Gamma(fg) != Gamma f * Gamma g"));
    }
    report.metric("characters", chars.len() as f64);
    Ok(report)
}

/// `max_i |φ_i(f)| <= ‖f‖ + 1e-9` on `0`, `I` and `samples` random elements.
pub fn check_contractive(algebra: &CommutativeStarAlgebra, samples: usize, seed: u64) -> Result<CheckReport> {
    let chars = characters(algebra)?;
    let mut report = CheckReport::new("gelfand_contractive");
    let mut rng = rng_from_seed(seed);
    let d = algebra.ambient_dim;
    let fixed = [Operator::zeros(d, d), Operator::identity(d)];
    let mut equality: f64 = 0.0;
    for (s, f) in fixed.into_iter().chain((0..samples).map(|_| algebra.random_element(&mut rng))).enumerate() {
        let gamma = sup(&transform_with(&chars, &f));
        let norm = spectral_norm(&f)?;
        equality = equality.max((gamma - norm).abs());
        report.record(gamma - norm, GELFAND_TOL, || {
            Witness::new(s, format!("|Gamma f|_inf = {gamma:.6e} > |f| = {norm:.6e}"))
        });
    }
    report.metric("max_equality_residual", equality);
    Ok(report)
}

/// `| ‖Γf‖∞ - ‖f‖ | <= 1e-9 max(1, ‖f‖)` on sampled `f`, and every sampled
/// target vector is attained by `Σ v_i P_i`.
pub fn check_isometric(algebra: &CommutativeStarAlgebra, samples: usize, seed: u64) -> Result<CheckReport> {
    let chars = characters(algebra)?;
    let mut report = CheckReport::new("gelfand_isometric");
    let mut rng = rng_from_seed(seed);
    let mut worst_iso: f64 = 0.0;
    let mut worst_surj: f64 = 0.0;
    for (s, p) in algebra.projections.iter().enumerate() {
        let r = (sup(&transform_with(&chars, p)) - spectral_norm(p)?).abs();
        report.record(r, GELFAND_TOL, || Witness::new(s, "projection norm differs from its transform"));
    }
    for s in 0..samples {
        let f = algebra.random_element(&mut rng);
        let norm = spectral_norm(&f)?;
        let r = (sup(&transform_with(&chars, &f)) - norm).abs();
        worst_iso = worst_iso.max(r);
        report.record(r, GELFAND_TOL * norm.max(1.0), || Witness::new(s, "Gamma is not isometric on f"));

        let target = algebra.random_coordinates(&mut rng);
        let attained = transform_with(&chars, &algebra.element(&target)?);
        let r = attained.iter().zip(&target).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        worst_surj = worst_surj.max(r);
        report.record(r, GELFAND_TOL * sup(&target).max(1.0), || {
            Witness::new(s, "target vector not attained").with_vector(&target)
        });
    }
    report.metric("max_isometry_residual", worst_iso);
    report.metric("max_reconstruction_residual", worst_surj);
    Ok(report)
}

/// `F(b) = M_{|Γb|}` on `C(M_B)`, with `b` given by its algebra coordinates.
///
/// The domain norm is the spectral norm of the assembled element.
pub fn multiplicative_ovnorm(algebra: &CommutativeStarAlgebra) -> Result<CKValuedNorm> {
    let chars = Arc::new(characters(algebra)?);
    let alg = Arc::new(algebra.clone());
    let norm_alg = alg.clone();
    let domain = NormedSpaceModel::custom(
        algebra.dim(),
        ScalarField::Complex,
        format!("B({} characters)", algebra.dim()),
        Arc::new(move |v: &[C64]| {
            norm_alg
                .element(v)
                .ok()
                .and_then(|e| spectral_norm(&e).ok())
                .unwrap_or(f64::NAN)
        }),
    );
    let ck = FiniteCK::new((0..algebra.dim()).map(|i| format!("phi_{i}")).collect())?;
    let evaluator = Arc::new(move |v: &[C64]| {
        let b = alg.element(v).expect("domain dimension is checked before evaluation");
        let mods: Vec<f64> = chars.iter().map(|c| c.evaluate(&b).norm()).collect();
        Operator::from_real_diag(&mods)
    });
    Ok(CKValuedNorm::new(domain, ck, "multiplicative_ovnorm", evaluator))
}

/// `F(ab) = F(a)F(b)` and `‖F(b)‖ = ‖b‖` on sampled algebra elements.
pub fn check_multiplicative_norm(
    algebra: &CommutativeStarAlgebra,
    norm: &CKValuedNorm,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    use crate::ovnorm::OperatorValuedNorm;
    let mut report = CheckReport::new("multiplicative_norm");
    let mut rng = rng_from_seed(seed);
    for s in 0..samples {
        let (a, b) = (algebra.random_element(&mut rng), algebra.random_element(&mut rng));
        let fa = norm.evaluate(&algebra.coordinates(&a)?)?;
        let fb = norm.evaluate(&algebra.coordinates(&b)?)?;
        let fab = norm.evaluate(&algebra.coordinates(&(&a * &b))?)?;
        let scale = (op_norm_sup(&fa)? * op_norm_sup(&fb)?).max(1.0);
        report.record(op_norm_sup(&(&fab - &(&fa * &fb)))?, GELFAND_TOL * scale, || {
            Witness::new(s, "F(ab) != F(a)F(b)")
        });
        let nb = spectral_norm(&b)?;
        report.record((op_norm_sup(&fb)? - nb).abs(), GELFAND_TOL * nb.max(1.0), || {
            Witness::new(s, "|F(b)| != |b|")
        });
    }
    Ok(report)
}

/// `count` commuting normal `dim × dim` matrices `U D_j Uᴴ` sharing one
/// random unitary. Diagonal entries are drawn from `distinct` random complex
/// values, so joint eigenvalues can repeat when `distinct < dim`.
pub fn random_commuting_generators(rng: &mut impl Rng, dim: usize, count: usize, distinct: usize) -> Vec<Operator> {
    let u = crate::random::random_unitary(rng, dim);
    (0..count)
        .map(|_| {
            let pool: CVector = (0..distinct.max(1)).map(|_| complex_gaussian(rng)).collect();
            let diag: CVector = (0..dim).map(|_| pool[rng.random_range(0..pool.len())]).collect();
            &(&u * &Operator::from_diag(&diag)) * &u.adjoint()
        })
        .collect()
}

/// Character table export: generator values per character.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub ambient_dim: usize,
    pub generators: usize,
    pub characters: Vec<CharacterRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub index: usize,
    pub slots: Vec<usize>,
    #[serde(with = "complex_pairs")]
    pub generator_values: CVector,
}

pub fn character_table(algebra: &CommutativeStarAlgebra) -> Result<CharacterTable> {
    let chars = characters(algebra)?;
    Ok(CharacterTable {
        ambient_dim: algebra.ambient_dim,
        generators: algebra.generators.len(),
        characters: chars
            .into_iter()
            .map(|c| CharacterRow {
                index: c.index,
                slots: algebra.classes[c.index].clone(),
                generator_values: c.point,
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ck::check_ck_axioms;
    use crate::ovnorm::{AxiomConfig, OperatorValuedNorm};
    use crate::random::{random_normal, random_unitary};

    fn conjugate(u: &Operator, d: &[C64]) -> Operator {
        &(u * &Operator::from_diag(d)) * &u.adjoint()
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn diag122() -> Operator {
        Operator::from_real_diag(&[1.0, 2.0, 2.0])
    }

    #[test]
    fn diagonal_generator_classes() {
        let alg = build_algebra(&[diag122()], 1e-10, 1).unwrap();
        assert_eq!(alg.dim(), 2);
        let mut sizes: Vec<usize> = alg.classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
        let e1 = Operator::from_real_diag(&[1.0, 0.0, 0.0]);
        let rest = Operator::from_real_diag(&[0.0, 1.0, 1.0]);
        for p in alg.basis_elements() {
            assert!(p.max_abs_diff(&e1) < 1e-12 || p.max_abs_diff(&rest) < 1e-12);
        }
        assert!(alg.closure_residual() <= 1e-12);
        let chars = characters(&alg).unwrap();
        let mut vals: Vec<f64> = chars.iter().map(|ch| ch.evaluate(&diag122()).re).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn identity_generates_scalars() {
        let alg = build_algebra(&[Operator::identity(4)], 1e-10, 0).unwrap();
        assert_eq!(alg.dim(), 1);
        let chars = characters(&alg).unwrap();
        let lam = C64::new(2.0, -3.0);
        assert!((chars[0].evaluate(&Operator::identity(4).scale(lam)) - lam).norm() < 1e-12);
    }

    #[test]
    fn conjugated_generator_has_same_structure() {
        let mut rng = rng_from_seed(8);
        let u = random_unitary(&mut rng, 3);
        let a = conjugate(&u, &[c(1.0), c(2.0), c(2.0)]);
        let alg = build_algebra(&[a.clone()], 1e-10, 2).unwrap();
        let mut sizes: Vec<usize> = alg.classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
        let mut gamma: Vec<f64> = gelfand_transform(&alg, &a).unwrap().iter().map(|z| z.re).collect();
        gamma.sort_by(f64::total_cmp);
        assert!((gamma[0] - 1.0).abs() < 1e-9 && (gamma[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn transform_of_identity_and_squares() {
        let mut rng = rng_from_seed(4);
        let alg = build_algebra(&[random_normal(&mut rng, 5)], 1e-10, 3).unwrap();
        let ones = gelfand_transform(&alg, &Operator::identity(5)).unwrap();
        assert!(ones.iter().all(|z| (z - 1.0).norm() < 1e-12));
        let g = alg.random_element(&mut rng);
        let gg = gelfand_transform(&alg, &g).unwrap();
        let g2 = gelfand_transform(&alg, &(&g * &g)).unwrap();
        for (a, b) in g2.iter().zip(&gg) {
            assert!((a - b * b).norm() < 1e-9);
        }
    }

    #[test]
    fn outside_element_is_rejected() {
        let alg = build_algebra(&[diag122()], 1e-10, 1).unwrap();
        let mut f = Operator::identity(3);
        f.set(1, 2, c(1.0));
        match gelfand_transform(&alg, &f) {
            Err(Error::OutsideAlgebra { residual }) => assert!(residual > 0.1),
            other => panic!("{other:?}"),
        }
        let mixed = Operator::from_real_diag(&[1.0, 2.0, 3.0]);
        assert!(alg.coordinates(&mixed).is_err());
    }

    #[test]
    fn random_normal_has_multiplicative_characters() {
        let mut rng = rng_from_seed(11);
        let alg = build_algebra(&[random_normal(&mut rng, 6)], 1e-10, 5).unwrap();
        assert_eq!(characters(&alg).unwrap().len(), 6);
        let r = check_homomorphism(&alg, 100, 6).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn contractive_and_isometric() {
        let mut rng = rng_from_seed(12);
        let u = random_unitary(&mut rng, 5);
        let a = conjugate(&u, &[c(1.0), c(1.0), C64::new(0.0, 2.0), c(-1.0), c(-1.0)]);
        let b = conjugate(&u, &[c(3.0), c(4.0), c(3.0), c(3.0), c(3.0)]);
        let alg = build_algebra(&[a, b], 1e-10, 7).unwrap();
        assert_eq!(alg.dim(), 4);
        let r = check_contractive(&alg, 200, 1).unwrap();
        assert!(r.passed && r.metrics["max_equality_residual"] <= 1e-9);
        let r = check_isometric(&alg, 200, 2).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn reconstruction_hits_target() {
        let alg = build_algebra(&[diag122()], 1e-10, 1).unwrap();
        let target = vec![c(3.0), C64::new(0.0, -1.0)];
        let got = gelfand_transform(&alg, &alg.element(&target).unwrap()).unwrap();
        for (a, b) in got.iter().zip(&target) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn multiplicative_norm_examples() {
        let alg = build_algebra(&[diag122()], 1e-10, 1).unwrap();
        let f = multiplicative_ovnorm(&alg).unwrap();
        let one = f.evaluate(&alg.coordinates(&Operator::identity(3)).unwrap()).unwrap();
        assert!(one.max_abs_diff(&Operator::identity(2)) < 1e-12);
        let fb = f.evaluate(&alg.coordinates(&diag122()).unwrap()).unwrap();
        let mut d: Vec<f64> = fb.diagonal().iter().map(|z| z.re).collect();
        d.sort_by(f64::total_cmp);
        assert!((d[0] - 1.0).abs() < 1e-12 && (d[1] - 2.0).abs() < 1e-12);
        assert!((op_norm_sup(&fb).unwrap() - 2.0).abs() < 1e-12);
        assert!((spectral_norm(&diag122()).unwrap() - 2.0).abs() < 1e-12);
        assert!(check_multiplicative_norm(&alg, &f, 50, 3).unwrap().passed);
        let report = check_ck_axioms(&f, &AxiomConfig::new(200, 4, 1e-9), 50).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn character_table_round_trips() {
        let alg = build_algebra(&[diag122()], 1e-10, 1).unwrap();
        let t = character_table(&alg).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: CharacterTable = serde_json::from_str(&json).unwrap();
        assert_eq!(t, back);
        assert_eq!(back.characters.len(), 2);
    }

    #[test]
    fn non_commuting_generators_are_named() {
        let a = Operator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let b = Operator::from_real_diag(&[1.0, -1.0]);
        match build_algebra(&[a, b], 1e-10, 0) {
            Err(Error::NotCommuting { first: 0, second: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
