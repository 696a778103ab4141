//! Residual checkers for the operad laws and the graded Lie identities.
//!
//! Every checker evaluates both sides of an identity coefficientwise and
//! reports a [`CheckOutcome`]: the max-abs residual, the scale it was
//! measured against, and pass/fail at `residual ≤ tol · scale`. The scale is
//! `max(1, magnitudes of the compared sides)`, so tolerances behave
//! absolutely near zero and relatively for large coefficients.

use crate::error::Error;
use crate::operad::{parity, Operation};

/// Result of one identity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOutcome {
    /// Max-abs coefficient residual between the two sides.
    pub residual: f64,
    /// Magnitude reference the tolerance is scaled by, always ≥ 1.
    pub scale: f64,
    pub pass: bool,
}

impl CheckOutcome {
    pub(crate) fn grade(residual: f64, raw_scale: f64, tol: f64) -> Self {
        let scale = raw_scale.max(1.0);
        CheckOutcome {
            residual,
            scale,
            pass: residual <= tol * scale,
        }
    }
}

/// Which branch of the composition relations an index pair (i, j) falls in.
///
/// For `(h ∘_i f) ∘_j g` the three branches partition `0 ≤ j ≤ |h| + |f|`:
/// g lands strictly left of f's block (`j ≤ i−1`), inside it
/// (`i ≤ j ≤ i+|f|`), or strictly right of it (`j ≥ i + deg f`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationCase {
    Before,
    Nested,
    After,
}

impl RelationCase {
    pub fn classify(i: usize, j: usize, f_reduced: usize) -> Self {
        if j < i {
            RelationCase::Before
        } else if j <= i + f_reduced {
            RelationCase::Nested
        } else {
            RelationCase::After
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RelationCase::Before => "before",
            RelationCase::Nested => "nested",
            RelationCase::After => "after",
        }
    }
}

/// A composition-relation check together with the branch it exercised.
#[derive(Debug, Clone, Copy)]
pub struct RelationCheck {
    pub case: RelationCase,
    pub outcome: CheckOutcome,
}

/// Unit laws `𝟙 ∘_0 f = f` and `f ∘_i 𝟙 = f` for every slot.
///
/// These hold as rearrangements of identical sums, so the residual is zero
/// in exact arithmetic and the tolerance can be as tight as 1e−15.
pub fn check_unit_laws(f: &Operation, tol: f64) -> Result<CheckOutcome, Error> {
    let id = Operation::identity(f.dim())?;
    let mut residual = id.compose_partial(f, 0)?.max_abs_diff(f);
    for slot in 0..=f.reduced_degree() {
        residual = residual.max(f.compose_partial(&id, slot)?.max_abs_diff(f));
    }
    Ok(CheckOutcome::grade(residual, f.max_abs(), tol))
}

/// Composition relation for `(h ∘_i f) ∘_j g` at one index pair.
///
/// The right-hand side depends on the branch of (i, j):
///
/// ```text
/// j ≤ i−1:          (−1)^{|f||g|} (h ∘_j g) ∘_{i+|g|} f
/// i ≤ j ≤ i+|f|:    h ∘_i (f ∘_{j−i} g)
/// j ≥ i + deg f:    (−1)^{|f||g|} (h ∘_{j−|f|} g) ∘_i f
/// ```
///
/// Index pairs outside `i ≤ |h|`, `j ≤ |h| + |f|` are errors, not failures.
pub fn check_composition_relations(
    h: &Operation,
    f: &Operation,
    g: &Operation,
    i: usize,
    j: usize,
    tol: f64,
) -> Result<RelationCheck, Error> {
    let rh = h.reduced_degree();
    let rf = f.reduced_degree();
    let rg = g.reduced_degree();
    if i > rh {
        return Err(Error::SlotOutOfRange { slot: i, reduced: rh });
    }
    if j > rh + rf {
        return Err(Error::SlotOutOfRange {
            slot: j,
            reduced: rh + rf,
        });
    }

    let lhs = h.compose_partial(f, i)?.compose_partial(g, j)?;
    let case = RelationCase::classify(i, j, rf);
    let sign = parity(rf * rg);
    let rhs = match case {
        RelationCase::Before => &h.compose_partial(g, j)?.compose_partial(f, i + rg)? * sign,
        RelationCase::Nested => h.compose_partial(&f.compose_partial(g, j - i)?, i)?,
        RelationCase::After => &h.compose_partial(g, j - rf)?.compose_partial(f, i)? * sign,
    };

    let residual = lhs.max_abs_diff(&rhs);
    let scale = lhs.max_abs().max(rhs.max_abs());
    Ok(RelationCheck {
        case,
        outcome: CheckOutcome::grade(residual, scale, tol),
    })
}

/// Graded antisymmetry `[f,g] = −(−1)^{|f||g|} [g,f]`.
pub fn check_graded_antisymmetry(
    f: &Operation,
    g: &Operation,
    tol: f64,
) -> Result<CheckOutcome, Error> {
    let fg = f.bracket(g)?;
    let gf = g.bracket(f)?;
    let sign = parity(f.reduced_degree() * g.reduced_degree());
    let residual = (&fg + &(&gf * sign)).max_abs();
    let scale = fg.max_abs().max(gf.max_abs());
    Ok(CheckOutcome::grade(residual, scale, tol))
}

/// Graded Jacobi identity
/// `(−1)^{|f||h|}[[f,g],h] + (−1)^{|g||f|}[[g,h],f] + (−1)^{|h||g|}[[h,f],g] = 0`.
pub fn check_graded_jacobi(
    f: &Operation,
    g: &Operation,
    h: &Operation,
    tol: f64,
) -> Result<CheckOutcome, Error> {
    let (rf, rg, rh) = (f.reduced_degree(), g.reduced_degree(), h.reduced_degree());
    let t1 = &f.bracket(g)?.bracket(h)? * parity(rf * rh);
    let t2 = &g.bracket(h)?.bracket(f)? * parity(rg * rf);
    let t3 = &h.bracket(f)?.bracket(g)? * parity(rh * rg);
    let residual = (&(&t1 + &t2) + &t3).max_abs();
    let scale = t1.max_abs().max(t2.max_abs()).max(t3.max_abs());
    Ok(CheckOutcome::grade(residual, scale, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_triple_relation_has_zero_residual() {
        let id = Operation::identity(2).unwrap();
        let check = check_composition_relations(&id, &id, &id, 0, 0, 0.0).unwrap();
        assert_eq!(check.case, RelationCase::Nested);
        assert_eq!(check.outcome.residual, 0.0);
        assert!(check.outcome.pass);
    }

    #[test]
    fn relation_index_validation() {
        let id = Operation::identity(2).unwrap();
        assert!(matches!(
            check_composition_relations(&id, &id, &id, 1, 0, 1e-9),
            Err(Error::SlotOutOfRange { slot: 1, .. })
        ));
        assert!(matches!(
            check_composition_relations(&id, &id, &id, 0, 1, 1e-9),
            Err(Error::SlotOutOfRange { slot: 1, .. })
        ));
    }

    #[test]
    fn relations_hold_on_random_tensors_every_branch() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = [false; 3];
        for _ in 0..60 {
            let h = Operation::random(2, 3, &mut rng).unwrap();
            let f = Operation::random(2, 2, &mut rng).unwrap();
            let g = Operation::random(2, 2, &mut rng).unwrap();
            for i in 0..=h.reduced_degree() {
                for j in 0..=h.reduced_degree() + f.reduced_degree() {
                    let check = check_composition_relations(&h, &f, &g, i, j, 1e-12).unwrap();
                    assert!(
                        check.outcome.pass,
                        "case {:?} at (i,j)=({i},{j}): residual {}",
                        check.case, check.outcome.residual
                    );
                    seen[match check.case {
                        RelationCase::Before => 0,
                        RelationCase::Nested => 1,
                        RelationCase::After => 2,
                    }] = true;
                }
            }
        }
        assert_eq!(seen, [true; 3], "all three branches must be exercised");
    }

    #[test]
    fn antisymmetry_signs_by_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        // Degree-1 pair: plain antisymmetry [f,g] = −[g,f].
        let f = Operation::random(2, 1, &mut rng).unwrap();
        let g = Operation::random(2, 1, &mut rng).unwrap();
        let fg = f.bracket(&g).unwrap();
        let gf = g.bracket(&f).unwrap();
        assert!(fg.max_abs_diff(&-&gf) < 1e-15);
        assert!(check_graded_antisymmetry(&f, &g, 1e-12).unwrap().pass);

        // Degree-2 pair has |f||g| = 1, so [f,g] = +[g,f].
        let f = Operation::random(2, 2, &mut rng).unwrap();
        let g = Operation::random(2, 2, &mut rng).unwrap();
        let fg = f.bracket(&g).unwrap();
        let gf = g.bracket(&f).unwrap();
        assert!(fg.max_abs_diff(&gf) < 1e-15);
        assert!(check_graded_antisymmetry(&f, &g, 1e-12).unwrap().pass);

        // Zero operation brackets to zero with anything.
        let z = Operation::zeros(2, 2).unwrap();
        let out = check_graded_antisymmetry(&z, &g, 0.0).unwrap();
        assert_eq!(out.residual, 0.0);
        assert!(out.pass);
    }

    #[test]
    fn jacobi_on_units_matrices_and_mixed_degrees() {
        let id = Operation::identity(2).unwrap();
        let out = check_graded_jacobi(&id, &id, &id, 0.0).unwrap();
        assert_eq!(out.residual, 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..25 {
            let f = Operation::random(3, 1, &mut rng).unwrap();
            let g = Operation::random(3, 1, &mut rng).unwrap();
            let h = Operation::random(3, 1, &mut rng).unwrap();
            assert!(check_graded_jacobi(&f, &g, &h, 1e-12).unwrap().pass);
        }
        for _ in 0..25 {
            let f = Operation::random(2, 1, &mut rng).unwrap();
            let g = Operation::random(2, 2, &mut rng).unwrap();
            let h = Operation::random(2, 2, &mut rng).unwrap();
            assert!(check_graded_jacobi(&f, &g, &h, 1e-9).unwrap().pass);
        }
    }

    #[test]
    fn tolerance_zero_fails_on_float_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = Operation::random(2, 2, &mut rng).unwrap();
        let g = Operation::random(2, 2, &mut rng).unwrap();
        let h = Operation::random(2, 2, &mut rng).unwrap();
        // Rounding makes the Jacobi residual tiny but nonzero for generic input.
        let out = check_graded_jacobi(&f, &g, &h, 0.0).unwrap();
        assert!(out.residual > 0.0);
        assert!(!out.pass);
    }

    #[test]
    fn unit_laws_check_is_tight() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for degree in 1..=3 {
            let f = Operation::random(3, degree, &mut rng).unwrap();
            let out = check_unit_laws(&f, 1e-15).unwrap();
            assert_eq!(out.residual, 0.0);
            assert!(out.pass);
        }
    }
}
