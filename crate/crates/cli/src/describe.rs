use crate::error::CliError;
use crate::suites::suite_label;

/// Help text for a suite or constructor name.
pub fn describe(name: &str) -> Result<String, CliError> {
    let body = match name {
        "axioms-lh" => "\
suite axioms-lh
  norm            L(H)-valued constructor (trivial_norm, mult_norm_l2, compose_norm, adversarial_shift)
  samples = 500   points for positivity, homogeneity, definiteness
  pairs = 500     pairs for the triangle inequality
  tol = 1e-9      relative tolerance
Positivity is an eigenvalue test on F(x); the triangle inequality is checked
in the Loewner order through the smallest eigenvalue of F(x) + F(y) - F(x+y).
A failure carries the offending x (and y) plus an eigenvector witness.",
        "axioms-ck" => "\
suite axioms-ck
  norm                  C(K)-valued constructor (mult_norm_ck, multiplicative_ovnorm, theorem_a6_norm)
  samples = 500, pairs = 500, test_functions = 100, tol = 1e-9
Positivity means F(x) maps nonnegative functions to nonnegative functions,
i.e. the matrix is entrywise nonnegative. The triangle inequality is
certified by cone preservation of F(x) + F(y) - F(x+y), falling back to
sampled nonnegative test functions.",
        "prop5" => "\
suite prop5
  norm            any constructor
  pairs = 1000
Checks |F(x+y)| <= |F(x)| + |F(y)| and |F(x) - F(y)| <= |F(x-y)| with
slack 1e-9 * scale, plus the equality cases y = 0 and x = y to 1e-12.",
        "prop6" => "\
suite prop6
  matrices = 100, max_dim = 8, nilpotent_samples = 1000000, tol = 1e-8
For random normal T: |T| = spectral radius = numerical radius. The 2x2
nilpotent Jordan block has sampled numerical radius in [0.499, 0.5] while
|T| = 1, so normality cannot be dropped.",
        "theorem-b1" => "\
suite theorem-b1
  norm                      any bounded constructor
  samples_per_radius = 200  unit directions reused at every radius 1, 1e-1, ..., 1e-6
  geometric = 20, convergent = 20, length = 40 (at most 100)
Both directions are certified by one Lipschitz chain:
|F(x_m) - F(x_k)| <= |F(x_m - x_k)| <= M_hat |x_m - x_k| on every pair of
every generated Cauchy sequence, and |F(x)| <= M_hat |x| on every sphere.
The universal quantifier over Cauchy sequences is approximated by the battery.",
        "gelfand" => "\
suite gelfand
  algebra           {\"kind\": \"explicit\", \"generators\": [matrix, ...]}
                    or {\"kind\": \"random\", \"dim\": d, \"generators\": g, \"distinct\": k}
  samples = 200, pairs = 100
Generators must be normal and pairwise commuting (tolerance 1e-10, scaled);
the offending generator or pair is named otherwise. The algebra is the span
of the joint spectral projections; characters evaluate on joint
eigenvectors. Checks phi(1) = 1, multiplicativity, contractivity and
isometry of the transform to 1e-9, and surjectivity by reconstruction.
The character table is attached to the report.",
        "cor-a9" => "\
suite cor-a9
  algebra as for gelfand
  pairs = 100, samples = 200, test_functions = 100, tol = 1e-9
F(b) = diag(|Gamma b|) on C(M_B). Checks F(ab) = F(a)F(b) and |F(b)| = |b|
to 1e-9 and runs the C(K) axiom suite on F.",
        "embed-a6" => "\
suite embed-a6
  space             {\"norm\": \"l1\" | \"l2\" | \"linf\" | \"lp\" | \"polytope\", \"dim\": n, ...}
  discretization    {\"strategy\": \"exact\"}
                    | {\"strategy\": \"sampled\", \"count\": m, \"seed\": s}
                    | {\"strategy\": \"user_supplied\", \"functionals\": [[[re, im], ...], ...]}
  samples = 1000, axiom_samples = 200, test_functions = 100
F(b) = diag(|beta b|) with (beta b)_i = phi_i(b) over a finite part of the
dual unit ball. Defect guarantee policy: exact extreme-point sets (l1 with
n <= 16, l_inf, polytope) must give |F(b)| = |b| to 1e-12; equally spaced
functionals on the Euclidean plane carry the bound 1 - cos(pi/m) per unit b;
every other sampled set reports the measured defect with guarantee none.
Every functional must have dual norm <= 1, so |F(b)| <= |b| always.",
        "trivial_norm" => "\
constructor trivial_norm {space, hilbert_dim}
  F(x) = |x| I_d on a given space.",
        "mult_norm_l2" => "\
constructor mult_norm_l2 {grid_size}
  F(g) = M_|g| on L2 of an n-point circle grid; the domain carries the sup norm.",
        "compose_norm" => "\
constructor compose_norm {inner, matrix | condition}
  (F o T)(x) = F(Tx). T is given as a matrix or drawn with the given
  condition number; it must be injective (sigma_min > 1e-10 sigma_max).",
        "adversarial_shift" => "\
constructor adversarial_shift {inner, shift}
  F(x) - shift I for x != 0. A positive shift breaks positivity; used to
  exercise failure reporting.",
        "mult_norm_ck" => "\
constructor mult_norm_ck {grid_size}
  F(g) = M_|g| on C(K) for a k-point grid of [0, 1].",
        "multiplicative_ovnorm" => "\
constructor multiplicative_ovnorm {algebra}
  F(b) = M_|Gamma b| on the character set; the domain is the algebra in
  projection coordinates with the spectral norm.",
        "theorem_a6_norm" => "\
constructor theorem_a6_norm {space, discretization}
  F(b) = M_|beta b| over a discretized dual unit ball (see embed-a6).",
        _ => return Err(CliError::UnknownName(name.to_string())),
    };
    let label = suite_label(name);
    Ok(if label.is_empty() {
        format!("{body}\n")
    } else {
        format!("{body}\nverifies: {label}\n")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CONSTRUCTOR_NAMES, SUITE_NAMES};

    #[test]
    fn every_name_is_documented() {
        for n in SUITE_NAMES.iter().chain(&CONSTRUCTOR_NAMES) {
            assert!(describe(n).unwrap().contains(n));
        }
    }

    #[test]
    fn embed_mentions_guarantee_policy() {
        let t = describe("embed-a6").unwrap();
        assert!(t.contains("guarantee") && t.contains("1 - cos(pi/m)"));
    }

    #[test]
    fn gelfand_lists_generator_requirements() {
        let t = describe("gelfand").unwrap();
        assert!(t.contains("normal") && t.contains("commuting"));
    }

    #[test]
    fn unknown_is_an_error() {
        assert!(matches!(describe("foo"), Err(CliError::UnknownName(_))));
    }
}
