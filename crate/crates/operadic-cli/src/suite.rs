//! Randomized law suite: checks the operad axioms and the dim-2 structure
//! equations on freshly sampled tensors and prints a pass/fail table.

use crate::style;
use operadic::{
    check_composition_relations, check_graded_antisymmetry, check_graded_jacobi, check_unit_laws,
    explicit_rhs_dim2, lax_m, structure_ode_rhs, BinaryStructure, CheckOutcome, Operation,
    RelationCase,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::{self, Write};

pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub degrees: Vec<usize>,
    pub tol_override: Option<f64>,
}

/// Per-law defaults. Unit laws are exact rearrangements, so their tolerance
/// is machine-tight; the bracket laws accumulate O(dim^5) products.
const TOL_UNITS: f64 = 1e-15;
const TOL_RELATIONS: f64 = 1e-9;
const TOL_ANTISYMMETRY: f64 = 1e-9;
const TOL_JACOBI: f64 = 1e-9;
const TOL_STRUCTURE: f64 = 1e-14;

struct LawRow {
    label: &'static str,
    tol: f64,
    checks: u64,
    failures: u64,
    max_residual: f64,
}

impl LawRow {
    fn new(label: &'static str, tol: f64) -> Self {
        LawRow {
            label,
            tol,
            checks: 0,
            failures: 0,
            max_residual: 0.0,
        }
    }

    fn record(&mut self, outcome: &CheckOutcome) {
        self.checks += 1;
        if !outcome.pass {
            self.failures += 1;
        }
        self.max_residual = self.max_residual.max(outcome.residual / outcome.scale);
    }

    fn pass(&self) -> bool {
        self.failures == 0
    }
}

/// Runs `cfg.trials` rounds of every law over all configured dims and
/// degrees, writing the summary table to `w`. Returns whether every check
/// passed its tolerance.
pub fn run(cfg: &SuiteConfig, w: &mut dyn Write, styled: bool) -> io::Result<bool> {
    let tol = |default: f64| cfg.tol_override.unwrap_or(default);
    let mut units = LawRow::new("unit laws", tol(TOL_UNITS));
    let mut relations = LawRow::new("composition relations", tol(TOL_RELATIONS));
    let mut antisymmetry = LawRow::new("graded antisymmetry", tol(TOL_ANTISYMMETRY));
    let mut jacobi = LawRow::new("graded Jacobi", tol(TOL_JACOBI));
    let mut structure = LawRow::new("structure equations (dim 2)", tol(TOL_STRUCTURE));
    let mut case_counts = [0u64; 3];

    for trial in 0..cfg.trials {
        // Independent stream per trial: reordering laws or adding draws
        // inside one trial never perturbs the others.
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial as u64);

        for &dim in &cfg.dims {
            for &degree in &cfg.degrees {
                let f = Operation::random(dim, degree, &mut rng).expect("valid shape");
                units.record(&check_unit_laws(&f, units.tol).expect("dim ≥ 1"));
            }

            let draw = |rng: &mut ChaCha8Rng| {
                let degree = cfg.degrees[rng.random_range(0..cfg.degrees.len())];
                Operation::random(dim, degree, rng).expect("valid shape")
            };

            let (h, f, g) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            for i in 0..=h.reduced_degree() {
                for j in 0..=h.reduced_degree() + f.reduced_degree() {
                    let check = check_composition_relations(&h, &f, &g, i, j, relations.tol)
                        .expect("(i, j) is in range by construction");
                    case_counts[check.case as usize] += 1;
                    relations.record(&check.outcome);
                }
            }

            let (f, g) = (draw(&mut rng), draw(&mut rng));
            antisymmetry.record(
                &check_graded_antisymmetry(&f, &g, antisymmetry.tol).expect("same dim"),
            );

            let (f, g, h) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            jacobi.record(&check_graded_jacobi(&f, &g, &h, jacobi.tol).expect("same dim"));
        }

        let mu = BinaryStructure::new(Operation::random(2, 2, &mut rng).expect("valid shape"))
            .expect("degree 2 by construction");
        let omega = rng.random_range(0.1..=2.0);
        let lhs = structure_ode_rhs(&mu, &lax_m(omega)).expect("matching dims");
        let rhs = explicit_rhs_dim2(&mu, omega).expect("dim 2 by construction");
        let residual = lhs.as_operation().max_abs_diff(rhs.as_operation());
        let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
        structure.record(&CheckOutcome {
            residual,
            scale,
            pass: residual <= structure.tol * scale,
        });
    }

    writeln!(
        w,
        "axiom suite: {} trials, dims {:?}, degrees {:?}, seed {}",
        cfg.trials, cfg.dims, cfg.degrees, cfg.seed
    )?;
    writeln!(w)?;
    writeln!(
        w,
        "{:<28} {:>8} {:>9} {:>13} {:>10}  status",
        "law", "checks", "failures", "max residual", "tolerance"
    )?;

    let rows = [&units, &relations, &antisymmetry, &jacobi, &structure];
    for row in rows {
        let status = if row.pass() {
            style::paint("PASS", style::GREEN, styled)
        } else {
            style::paint("FAIL", style::RED, styled)
        };
        writeln!(
            w,
            "{:<28} {:>8} {:>9} {:>13.3e} {:>10.0e}  {}",
            row.label, row.checks, row.failures, row.max_residual, row.tol, status
        )?;
    }

    writeln!(
        w,
        "\nrelation branches exercised: before {}, nested {}, after {}",
        case_counts[RelationCase::Before as usize],
        case_counts[RelationCase::Nested as usize],
        case_counts[RelationCase::After as usize]
    )?;

    let all_pass = rows.iter().all(|r| r.pass());
    let verdict = if all_pass {
        style::paint("PASS", style::GREEN, styled)
    } else {
        style::paint("FAIL", style::RED, styled)
    };
    writeln!(w, "suite result: {verdict}")?;
    Ok(all_pass)
}
