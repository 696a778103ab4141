//! The harmonic-oscillator instance of the operadic Lax machinery.
//!
//! For H = ½(p² + ω²q²) the matrix pair is
//!
//! ```text
//! L = ( p    ωq )        M = (ω/2) ( 0  −1 )
//!     ( ωq  −p  )                  ( 1   0 )
//! ```
//!
//! and the degree-2 operadic variable is a binary algebra with structure
//! constants μ^i_{jk} evolving by μ̇ = [M, μ]. The contraction form of that
//! equation ([`structure_ode_rhs`]), the explicit eight scalar equations in
//! dimension 2 ([`explicit_rhs_dim2`]), and the closed-form anti-commutative
//! solution built from A± and B± ([`mu_closed_form`]) are implemented
//! independently so they can be checked against each other.
//!
//! The closed form takes non-negative roots A± ≥ 0, so it parametrizes μ
//! only where that branch is valid (it loses differentiability at q = 0,
//! where A₊A₋ = ω|q| vanishes). The ODE flow is globally smooth, rotates
//! (μ¹₁₂, μ²₁₂) at angular rate ω/2, and is the source of truth through
//! sign changes; it agrees with the closed form between zeros of q.

use crate::axioms::CheckOutcome;
use crate::error::Error;
use crate::operad::{Operation, Vector};

/// Negative radicands above this magnitude are treated as rounding noise
/// and clamped to zero; anything lower is a hard error. The radicands
/// √(2H) ± p are non-negative in exact arithmetic since 2H − p² = ω²q².
pub const RADICAND_CLAMP: f64 = 1e-12;

/// Oscillator parameters: frequency and initial canonical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscParams {
    omega: f64,
    q0: f64,
    p0: f64,
}

impl OscParams {
    pub fn new(omega: f64, q0: f64, p0: f64) -> Result<Self, Error> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidFrequency(omega));
        }
        if !(q0.is_finite() && p0.is_finite()) {
            return Err(Error::NonFinite {
                context: "initial coordinates",
            });
        }
        Ok(Self { omega, q0, p0 })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// The origin is the one orbit where the closed-form μ is identically
    /// zero and stays there.
    pub fn is_degenerate(&self) -> bool {
        self.q0 == 0.0 && self.p0 == 0.0
    }

    /// Oscillator period 2π/ω.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega
    }
}

/// H(q, p) = ½(p² + ω²q²).
pub fn hamiltonian(q: f64, p: f64, omega: f64) -> f64 {
    0.5 * (p * p + omega * omega * q * q)
}

/// The oscillator Lax matrix L = [[p, ωq], [ωq, −p]], traceless and
/// symmetric, with L² = 2H·Id.
pub fn lax_l(q: f64, p: f64, omega: f64) -> Operation {
    Operation::new(2, 1, vec![p, omega * q, omega * q, -p])
        .expect("finite (q, p, omega) produce a valid matrix")
}

/// The constant rotation generator M = (ω/2)[[0, −1], [1, 0]].
pub fn lax_m(omega: f64) -> Operation {
    Operation::new(2, 1, vec![0.0, -omega / 2.0, omega / 2.0, 0.0])
        .expect("finite omega produces a valid matrix")
}

/// A binary algebra on `R^d`: a degree-2 [`Operation`] whose coefficients
/// are the structure constants μ^i_{jk} = coefficient of e_i in e_j·e_k.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryStructure(Operation);

impl BinaryStructure {
    pub fn new(op: Operation) -> Result<Self, Error> {
        if op.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                got: op.degree(),
            });
        }
        Ok(Self(op))
    }

    pub fn zeros(dim: usize) -> Result<Self, Error> {
        Ok(Self(Operation::zeros(dim, 2)?))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// μ^i_{jk} with 0-based indices (i the output index).
    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.0.coeff(i, &[j, k])
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: f64) {
        self.0.set_coeff(i, &[j, k], value);
    }

    pub fn as_operation(&self) -> &Operation {
        &self.0
    }

    pub fn into_operation(self) -> Operation {
        self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    /// Largest |μ^i_{jk} + μ^i_{kj}|; zero iff the product is
    /// anti-commutative (which forces μ^i_{jj} = 0).
    pub fn max_symmetric_part(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                for k in j..d {
                    worst = worst.max((self.constant(i, j, k) + self.constant(i, k, j)).abs());
                }
            }
        }
        worst
    }

    pub fn is_anti_commutative(&self, tol: f64) -> bool {
        self.max_symmetric_part() <= tol
    }
}

impl From<BinaryStructure> for Operation {
    fn from(b: BinaryStructure) -> Operation {
        b.0
    }
}

/// Structure-constant form of the Lax equation,
/// μ̇^i_{jk} = μ^s_{jk} M^i_s − M^s_j μ^i_{sk} − M^s_k μ^i_{js},
/// for any dimension (the explicit dim-2 form is [`explicit_rhs_dim2`]).
pub fn structure_ode_rhs(mu: &BinaryStructure, m: &Operation) -> Result<BinaryStructure, Error> {
    if m.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: m.degree(),
        });
    }
    let d = mu.dim();
    if m.dim() != d {
        return Err(Error::DimMismatch {
            left: d,
            right: m.dim(),
        });
    }
    let mut out = BinaryStructure::zeros(d)?;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut dot = 0.0;
                for s in 0..d {
                    dot += mu.constant(s, j, k) * m.coeff(i, &[s])
                        - m.coeff(s, &[j]) * mu.constant(i, s, k)
                        - m.coeff(s, &[k]) * mu.constant(i, j, s);
                }
                out.set_constant(i, j, k, dot);
            }
        }
    }
    Ok(out)
}

/// The eight explicit scalar equations of the 2-dimensional operadic Lax
/// system, transcribed term by term. Must agree identically with
/// [`structure_ode_rhs`] at M = [`lax_m`]`(omega)`; keeping both versions
/// guards the transcription against index slips.
pub fn explicit_rhs_dim2(mu: &BinaryStructure, omega: f64) -> Result<BinaryStructure, Error> {
    if mu.dim() != 2 {
        return Err(Error::WrongDim {
            expected: 2,
            got: mu.dim(),
        });
    }
    let w = omega / 2.0;
    let u1_11 = mu.constant(0, 0, 0);
    let u2_11 = mu.constant(1, 0, 0);
    let u1_12 = mu.constant(0, 0, 1);
    let u2_12 = mu.constant(1, 0, 1);
    let u1_21 = mu.constant(0, 1, 0);
    let u2_21 = mu.constant(1, 1, 0);
    let u1_22 = mu.constant(0, 1, 1);
    let u2_22 = mu.constant(1, 1, 1);

    let mut out = BinaryStructure::zeros(2)?;
    out.set_constant(0, 0, 0, -w * (u2_11 + u1_21 + u1_12));
    out.set_constant(1, 0, 0, w * (u1_11 - u2_21 - u2_12));
    out.set_constant(0, 0, 1, -w * (u2_12 + u1_22 - u1_11));
    out.set_constant(1, 0, 1, w * (u1_12 - u2_22 + u2_11));
    out.set_constant(0, 1, 0, -w * (u2_21 - u1_11 + u1_22));
    out.set_constant(1, 1, 0, w * (u1_21 + u2_11 - u2_22));
    out.set_constant(0, 1, 1, -w * (u2_22 - u1_12 - u1_21));
    out.set_constant(1, 1, 1, w * (u1_22 + u2_12 + u2_21));
    Ok(out)
}

/// The square-root auxiliaries of the closed-form solution:
/// A± = √(√(2H) ± p), B± = A₊ ± A₋.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtAuxiliaries {
    pub a_plus: f64,
    pub a_minus: f64,
    pub b_plus: f64,
    pub b_minus: f64,
}

impl SqrtAuxiliaries {
    /// True only on the degenerate orbit (q, p) = (0, 0).
    pub fn is_degenerate(&self) -> bool {
        self.b_plus == 0.0
    }

    /// 4√(2H) recovered as B₊² + B₋²; the rotation invariant of the flow.
    pub fn four_sqrt_2h(&self) -> f64 {
        self.b_plus * self.b_plus + self.b_minus * self.b_minus
    }
}

fn sqrt_clamped(radicand: f64) -> Result<f64, Error> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand(radicand))
    }
}

/// Evaluates A± and B± at a phase-space point. The radicands are
/// non-negative up to rounding (see [`RADICAND_CLAMP`]).
pub fn ab_auxiliaries(q: f64, p: f64, omega: f64) -> Result<SqrtAuxiliaries, Error> {
    if !(q.is_finite() && p.is_finite() && omega.is_finite()) {
        return Err(Error::NonFinite {
            context: "ab_auxiliaries input",
        });
    }
    let sqrt_2h = (p * p + omega * omega * q * q).sqrt();
    let a_plus = sqrt_clamped(sqrt_2h + p)?;
    let a_minus = sqrt_clamped(sqrt_2h - p)?;
    Ok(SqrtAuxiliaries {
        a_plus,
        a_minus,
        b_plus: a_plus + a_minus,
        b_minus: a_plus - a_minus,
    })
}

/// The closed-form anti-commutative operadic variable:
/// μ¹₁₂ = −μ¹₂₁ = B₋, μ²₁₂ = −μ²₂₁ = B₊, all other constants zero.
pub fn mu_closed_form(q: f64, p: f64, omega: f64) -> Result<BinaryStructure, Error> {
    let aux = ab_auxiliaries(q, p, omega)?;
    let mut mu = BinaryStructure::zeros(2)?;
    mu.set_constant(0, 0, 1, aux.b_minus);
    mu.set_constant(0, 1, 0, -aux.b_minus);
    mu.set_constant(1, 0, 1, aux.b_plus);
    mu.set_constant(1, 1, 0, -aux.b_plus);
    Ok(mu)
}

/// Brute-force Jacobi check for an anti-commutative structure: the residual
/// is the largest component of Σ_cyc μ(μ(e_j, e_k), e_l) over all basis
/// triples. Anti-commutativity is a precondition (checked at the same
/// scaled tolerance); in dimension 2 every anti-commutative product
/// satisfies Jacobi identically.
pub fn check_jacobi_structure_constants(
    mu: &BinaryStructure,
    tol: f64,
) -> Result<CheckOutcome, Error> {
    let scale = mu.max_abs().max(1.0);
    let sym = mu.max_symmetric_part();
    if sym > tol * scale {
        return Err(Error::NotAntiCommutative { residual: sym });
    }

    let d = mu.dim();
    let op = mu.as_operation();
    let basis: Vec<Vector> = (0..d)
        .map(|k| Vector::basis(d, k))
        .collect::<Result<_, _>>()?;
    let pair = |a: usize, b: usize| op.apply(&[basis[a].clone(), basis[b].clone()]);

    let mut residual = 0.0f64;
    for j in 0..d {
        for k in 0..d {
            for l in 0..d {
                let t1 = op.apply(&[pair(j, k)?, basis[l].clone()])?;
                let t2 = op.apply(&[pair(k, l)?, basis[j].clone()])?;
                let t3 = op.apply(&[pair(l, j)?, basis[k].clone()])?;
                for i in 0..d {
                    let sum = t1.entries()[i] + t2.entries()[i] + t3.entries()[i];
                    residual = residual.max(sum.abs());
                }
            }
        }
    }
    // Jacobi terms are quadratic in the structure constants.
    let jac_scale = (mu.max_abs() * mu.max_abs()).max(1.0);
    Ok(CheckOutcome::grade(residual, jac_scale, tol))
}

/// Determinants of the closed-form derivation's 2×2 linear system, their
/// closed forms, and the recovered Hamilton equations.
#[derive(Debug, Clone, Copy)]
pub struct CramerReport {
    pub delta: f64,
    pub delta_p_dot: f64,
    pub delta_q_dot: f64,
    pub closed_delta: f64,
    pub closed_p_dot: f64,
    pub closed_q_dot: f64,
    /// Max over the three determinant residuals and the two Hamilton
    /// residuals |Δ_q̇/Δ − p|, |Δ_ṗ/Δ + ω²q|.
    pub residual: f64,
    pub scale: f64,
    pub pass: bool,
}

/// Rebuilds the linear system that determines (ṗ, q̇) from Ḃ± = ∓(ω/2)B∓,
/// evaluates its three determinants numerically, and compares them with the
/// closed forms Δ = 4q²ω³/√(2H), Δ_ṗ = −4q³ω⁵/√(2H), Δ_q̇ = 4pq²ω³/√(2H).
///
/// The closed forms use A₊A₋ = ωq, which holds with the non-negative roots
/// only for q > 0 (numerically A₊A₋ = ω|q|); on the q < 0 branch the
/// computed Δ is the negative of the closed form and the check reports the
/// discrepancy honestly. At q = 0 the system is singular and rejected.
pub fn verify_cramer_identities(
    q: f64,
    p: f64,
    omega: f64,
    tol: f64,
) -> Result<CramerReport, Error> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidFrequency(omega));
    }
    if !(q.is_finite() && p.is_finite()) {
        return Err(Error::NonFinite {
            context: "phase-space point",
        });
    }
    if q == 0.0 {
        return Err(Error::DegenerateCramer);
    }

    let aux = ab_auxiliaries(q, p, omega)?;
    let sqrt_2h = (p * p + omega * omega * q * q).sqrt();
    let u = p / sqrt_2h;

    // Rows of the system  a·ṗ + b·q̇ = rhs  after scaling by 2A₊A₋.
    let a11 = aux.a_minus * (u + 1.0) - aux.a_plus * (u - 1.0);
    let a12 = -q * omega * omega * aux.b_minus / sqrt_2h;
    let a21 = aux.a_minus * (u + 1.0) + aux.a_plus * (u - 1.0);
    let a22 = q * omega * omega * aux.b_plus / sqrt_2h;
    let b1 = -omega * aux.b_plus * aux.a_plus * aux.a_minus;
    let b2 = omega * aux.b_minus * aux.a_plus * aux.a_minus;

    let delta = a11 * a22 - a12 * a21;
    let delta_p_dot = b1 * a22 - a12 * b2;
    let delta_q_dot = a11 * b2 - b1 * a21;

    let closed_delta = 4.0 * q * q * omega.powi(3) / sqrt_2h;
    let closed_p_dot = -4.0 * q.powi(3) * omega.powi(5) / sqrt_2h;
    let closed_q_dot = 4.0 * p * q * q * omega.powi(3) / sqrt_2h;

    let hamilton_q = delta_q_dot / delta - p;
    let hamilton_p = delta_p_dot / delta + omega * omega * q;

    let residual = (delta - closed_delta)
        .abs()
        .max((delta_p_dot - closed_p_dot).abs())
        .max((delta_q_dot - closed_q_dot).abs())
        .max(hamilton_q.abs())
        .max(hamilton_p.abs());
    let scale = closed_delta
        .abs()
        .max(closed_p_dot.abs())
        .max(closed_q_dot.abs())
        .max(p.abs())
        .max((omega * omega * q).abs())
        .max(1.0);

    Ok(CramerReport {
        delta,
        delta_p_dot,
        delta_q_dot,
        closed_delta,
        closed_p_dot,
        closed_q_dot,
        residual,
        scale,
        pass: residual <= tol * scale,
    })
}
