//! Dense multilinear operations on `R^d` and their graded composition.
//!
//! A degree-n [`Operation`] is a multilinear map `V^⊗n → V` for `V = R^d`,
//! held as the coefficient tensor `c[i; j1..jn]` of `f(e_{j1},…,e_{jn})` on
//! `e_i`. Storage is dense row-major with the output index slowest, so the
//! flat offset is `((i·d + j1)·d + j2)·d + …`.
//!
//! Grading uses the reduced degree `|f| = deg f − 1`. Partial composition
//! follows the convention
//!
//! ```text
//! f ∘_i g = (−1)^{i·|g|} f ∘ (1^⊗i ⊗ g ⊗ 1^⊗(|f|−i)),   0 ≤ i ≤ |f|,
//! ```
//!
//! total composition is `f • g = Σ_i f ∘_i g`, and the Gerstenhaber bracket
//! is the graded commutator `[f,g] = f•g − (−1)^{|f||g|} g•f`. For degree-1
//! operations these reduce to the matrix product and matrix commutator.

use crate::error::Error;
use rand::Rng;
use std::ops::{Add, Mul, Neg, Sub};

/// Hard cap on coefficient storage (512 MiB of f64).
const MAX_COEFFS: usize = 1 << 26;

/// Coefficient count `dim^(degree+1)`, guarded against overflow.
fn tensor_len(dim: usize, degree: usize) -> Result<usize, Error> {
    if dim == 0 {
        return Err(Error::ZeroDim);
    }
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut len: usize = 1;
    for _ in 0..=degree {
        len = len
            .checked_mul(dim)
            .filter(|&l| l <= MAX_COEFFS)
            .ok_or(Error::TensorTooLarge { dim, degree })?;
    }
    Ok(len)
}

/// (−1)^k.
pub(crate) fn parity(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Element of `R^d`, d ≥ 1, finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    entries: Vec<f64>,
}

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::ZeroDim);
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "vector entries",
            });
        }
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Result<Self, Error> {
        Self::new(vec![0.0; dim])
    }

    /// Standard basis vector `e_k` (0-based).
    pub fn basis(dim: usize, k: usize) -> Result<Self, Error> {
        if k >= dim {
            return Err(Error::IndexOutOfRange { index: k, dim });
        }
        let mut entries = vec![0.0; dim];
        entries[k] = 1.0;
        Self::new(entries)
    }

    /// Entries i.i.d. uniform on [−1, 1].
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::ZeroDim);
        }
        Self::new((0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Homogeneous degree-n multilinear operation on `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Operation {
    dim: usize,
    degree: usize,
    coeffs: Vec<f64>,
}

impl Operation {
    /// Builds from a flat coefficient slice of length `dim^(degree+1)`,
    /// laid out as described in the module docs.
    pub fn new(dim: usize, degree: usize, coeffs: Vec<f64>) -> Result<Self, Error> {
        let expected = tensor_len(dim, degree)?;
        if coeffs.len() != expected {
            return Err(Error::CoefficientCount {
                got: coeffs.len(),
                expected,
            });
        }
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "operation coefficients",
            });
        }
        Ok(Self { dim, degree, coeffs })
    }

    pub fn zeros(dim: usize, degree: usize) -> Result<Self, Error> {
        let len = tensor_len(dim, degree)?;
        Ok(Self {
            dim,
            degree,
            coeffs: vec![0.0; len],
        })
    }

    /// The operad unit 𝟙: the degree-1 identity map.
    pub fn identity(dim: usize) -> Result<Self, Error> {
        let mut op = Self::zeros(dim, 1)?;
        for i in 0..dim {
            op.coeffs[i * dim + i] = 1.0;
        }
        Ok(op)
    }

    /// Coefficients i.i.d. uniform on [−1, 1].
    pub fn random<R: Rng + ?Sized>(
        dim: usize,
        degree: usize,
        rng: &mut R,
    ) -> Result<Self, Error> {
        let len = tensor_len(dim, degree)?;
        Ok(Self {
            dim,
            degree,
            coeffs: (0..len).map(|_| rng.random_range(-1.0..=1.0)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Reduced degree |f| = degree − 1, the exponent weight in all signs.
    pub fn reduced_degree(&self) -> usize {
        self.degree - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn flat_index(&self, out: usize, ins: &[usize]) -> usize {
        assert_eq!(ins.len(), self.degree, "expected {} input indices", self.degree);
        assert!(out < self.dim, "output index {out} out of range");
        let mut idx = out;
        for &j in ins {
            assert!(j < self.dim, "input index {j} out of range");
            idx = idx * self.dim + j;
        }
        idx
    }

    /// Coefficient `c[out; ins]`. Panics on out-of-range indices.
    pub fn coeff(&self, out: usize, ins: &[usize]) -> f64 {
        self.coeffs[self.flat_index(out, ins)]
    }

    /// Sets `c[out; ins]`. Panics on out-of-range indices or non-finite value.
    pub fn set_coeff(&mut self, out: usize, ins: &[usize], value: f64) {
        assert!(value.is_finite(), "coefficients must be finite");
        let idx = self.flat_index(out, ins);
        self.coeffs[idx] = value;
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Max-abs difference of coefficients. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Operation) -> f64 {
        assert_same_shape(self, other);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Evaluates the multilinear map: `v_i = Σ c[i; j1..jn] Π args[k]_{jk}`.
    pub fn apply(&self, args: &[Vector]) -> Result<Vector, Error> {
        if args.len() != self.degree {
            return Err(Error::ArityMismatch {
                degree: self.degree,
                supplied: args.len(),
            });
        }
        for a in args {
            if a.dim() != self.dim {
                return Err(Error::DimMismatch {
                    left: self.dim,
                    right: a.dim(),
                });
            }
        }
        // Contract the last input index against the last argument, repeatedly.
        let d = self.dim;
        let mut cur = self.coeffs.clone();
        for arg in args.iter().rev() {
            let rows = cur.len() / d;
            let mut next = Vec::with_capacity(rows);
            for r in 0..rows {
                let base = r * d;
                let mut acc = 0.0;
                for (j, x) in arg.entries().iter().enumerate() {
                    acc += cur[base + j] * x;
                }
                next.push(acc);
            }
            cur = next;
        }
        Vector::new(cur)
    }

    /// Partial composition `f ∘_slot g`, plugging g into input slot+1 of f
    /// with the sign (−1)^{slot·|g|}. Requires `slot ≤ |f|` and equal dims.
    pub fn compose_partial(&self, g: &Operation, slot: usize) -> Result<Operation, Error> {
        if self.dim != g.dim {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: g.dim,
            });
        }
        let reduced = self.reduced_degree();
        if slot > reduced {
            return Err(Error::SlotOutOfRange { slot, reduced });
        }
        let d = self.dim;
        let m = self.degree;
        let n = g.degree;
        let out_degree = m + n - 1;
        let out_len = tensor_len(d, out_degree)?;
        let sign = parity(slot * g.reduced_degree());

        // Input-block sizes: slot leading f-inputs, the contracted slot, the
        // n inputs of g, and the trailing f-inputs.
        let pre_count = d.pow(slot as u32);
        let post_count = d.pow((m - 1 - slot) as u32);
        let gin_count = d.pow(n as u32);

        let mut coeffs = vec![0.0f64; out_len];
        let fc = &self.coeffs;
        let gc = &g.coeffs;
        for o in 0..d {
            for pre in 0..pre_count {
                let f_row = (o * pre_count + pre) * d;
                let r_row = (o * pre_count + pre) * gin_count;
                for kk in 0..gin_count {
                    let r_base = (r_row + kk) * post_count;
                    for s in 0..d {
                        let w = sign * gc[s * gin_count + kk];
                        let f_base = (f_row + s) * post_count;
                        for post in 0..post_count {
                            coeffs[r_base + post] += w * fc[f_base + post];
                        }
                    }
                }
            }
        }
        Operation::new(d, out_degree, coeffs)
    }

    /// Total composition `f • g = Σ_{i=0}^{|f|} f ∘_i g`.
    pub fn compose_total(&self, g: &Operation) -> Result<Operation, Error> {
        let mut acc = self.compose_partial(g, 0)?;
        for slot in 1..=self.reduced_degree() {
            let term = self.compose_partial(g, slot)?;
            for (a, b) in acc.coeffs.iter_mut().zip(&term.coeffs) {
                *a += b;
            }
        }
        Ok(acc)
    }

    /// Gerstenhaber bracket `[f,g] = f•g − (−1)^{|f||g|} g•f`.
    pub fn bracket(&self, g: &Operation) -> Result<Operation, Error> {
        let fg = self.compose_total(g)?;
        let gf = g.compose_total(self)?;
        let sign = parity(self.reduced_degree() * g.reduced_degree());
        let mut coeffs = fg.coeffs;
        for (a, b) in coeffs.iter_mut().zip(&gf.coeffs) {
            *a -= sign * b;
        }
        Ok(Operation {
            dim: fg.dim,
            degree: fg.degree,
            coeffs,
        })
    }
}

fn assert_same_shape(a: &Operation, b: &Operation) {
    assert_eq!(a.dim, b.dim, "operation dims differ");
    assert_eq!(a.degree, b.degree, "operation degrees differ");
}

impl Add for &Operation {
    type Output = Operation;
    fn add(self, rhs: &Operation) -> Operation {
        assert_same_shape(self, rhs);
        Operation {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Operation {
    type Output = Operation;
    fn sub(self, rhs: &Operation) -> Operation {
        assert_same_shape(self, rhs);
        Operation {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<f64> for &Operation {
    type Output = Operation;
    fn mul(self, rhs: f64) -> Operation {
        Operation {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * rhs).collect(),
        }
    }
}

impl Neg for &Operation {
    type Output = Operation;
    fn neg(self) -> Operation {
        self * -1.0
    }
}
