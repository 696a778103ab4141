//! Operadic Lax pairs and fixed-step integration of coupled flows.
//!
//! A Lax pair is an operation `L` of any degree driven by a degree-1
//! operation `M` through `dL/dt = [M, L] = M•L − L•M` (the sign collapses
//! because `|M| = 0`). For degree-1 `L` this is the ordinary matrix Lax
//! equation; for the oscillator instance `L` is the degree-2 operadic
//! variable μ co-evolving with the canonical pair (q, p).
//!
//! The integrator is classical RK4 on the flattened state (q, p, then μ
//! coefficients in storage order), fixed step, with blow-up detection on
//! every accepted state.

use crate::error::Error;
use crate::operad::Operation;

/// Any state magnitude beyond this aborts integration as a blow-up.
pub const BLOW_UP_LIMIT: f64 = 1e12;

/// An operadic Lax pair (L, M): `dL/dt = [M, L]`, `M` of degree 1.
#[derive(Debug, Clone)]
pub struct LaxPair {
    l: Operation,
    m: Operation,
}

impl LaxPair {
    pub fn new(l: Operation, m: Operation) -> Result<Self, Error> {
        if m.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: m.degree(),
            });
        }
        if l.dim() != m.dim() {
            return Err(Error::DimMismatch {
                left: l.dim(),
                right: m.dim(),
            });
        }
        Ok(Self { l, m })
    }

    pub fn l(&self) -> &Operation {
        &self.l
    }

    pub fn m(&self) -> &Operation {
        &self.m
    }

    /// The Lax derivative [M, L] of this pair.
    pub fn rhs(&self) -> Operation {
        lax_rhs(&self.m, &self.l).expect("pair invariants guarantee compatible shapes")
    }
}

/// Lax equation right-hand side `[M, L] = M•L − L•M` for degree-1 M.
pub fn lax_rhs(m: &Operation, l: &Operation) -> Result<Operation, Error> {
    if m.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: m.degree(),
        });
    }
    m.bracket(l)
}

/// Hamilton's equations for H = ½(p² + ω²q²): returns (q̇, ṗ) = (p, −ω²q).
pub fn hamiltonian_rhs(q: f64, p: f64, omega: f64) -> (f64, f64) {
    (p, -omega * omega * q)
}

/// Point on a coupled canonical/operadic flow.
#[derive(Debug, Clone)]
pub struct FlowState {
    pub t: f64,
    pub q: f64,
    pub p: f64,
    pub mu: Operation,
}

impl FlowState {
    pub fn new(t: f64, q: f64, p: f64, mu: Operation) -> Result<Self, Error> {
        if !(t.is_finite() && q.is_finite() && p.is_finite()) {
            return Err(Error::NonFinite {
                context: "flow state",
            });
        }
        Ok(Self { t, q, p, mu })
    }
}

/// Time derivative of a [`FlowState`] (the t-component is implicitly 1).
#[derive(Debug, Clone)]
pub struct FlowDerivative {
    pub dq: f64,
    pub dp: f64,
    pub dmu: Operation,
}

/// Coupled right-hand side: Hamilton's equations for (q, p) and the Lax
/// equation `dμ/dt = [M, μ]` for the operadic variable.
pub fn coupled_rhs(s: &FlowState, m: &Operation, omega: f64) -> Result<FlowDerivative, Error> {
    let (dq, dp) = hamiltonian_rhs(s.q, s.p, omega);
    let dmu = lax_rhs(m, &s.mu)?;
    Ok(FlowDerivative { dq, dp, dmu })
}

/// A named scalar observable evaluated on accepted states.
pub struct Probe {
    name: String,
    eval: Box<dyn Fn(&FlowState) -> f64 + Send + Sync>,
}

impl Probe {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(&FlowState) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Probe {
            name: name.into(),
            eval: Box::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, s: &FlowState) -> f64 {
        (self.eval)(s)
    }
}

/// One recorded step: the state and every probe value at that time.
#[derive(Debug, Clone)]
pub struct TrajectoryPoint {
    pub state: FlowState,
    pub probes: Vec<f64>,
}

/// An integrated trajectory; `points[k]` is after k steps, starting at t0.
#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub probe_names: Vec<String>,
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> Option<&TrajectoryPoint> {
        self.points.first()
    }

    pub fn last(&self) -> Option<&TrajectoryPoint> {
        self.points.last()
    }

    /// Drift of every probe between the first and last recorded points.
    pub fn invariant_report(&self) -> InvariantReport {
        let mut entries = Vec::new();
        if let (Some(first), Some(last)) = (self.first(), self.last()) {
            for (k, name) in self.probe_names.iter().enumerate() {
                entries.push(InvariantDrift {
                    label: name.clone(),
                    initial: first.probes[k],
                    current: last.probes[k],
                    drift: (last.probes[k] - first.probes[k]).abs(),
                });
            }
        }
        InvariantReport { entries }
    }

    /// Largest drift of probe `k` against its initial value over all points.
    pub fn max_probe_drift(&self, k: usize) -> f64 {
        let Some(first) = self.first() else { return 0.0 };
        let initial = first.probes[k];
        self.points
            .iter()
            .fold(0.0, |m, pt| m.max((pt.probes[k] - initial).abs()))
    }
}

/// Initial/current/drift summary for one labelled invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantDrift {
    pub label: String,
    pub initial: f64,
    pub current: f64,
    pub drift: f64,
}

/// Drift summary over a trajectory, one entry per probe.
#[derive(Debug, Clone, Default)]
pub struct InvariantReport {
    pub entries: Vec<InvariantDrift>,
}

fn flatten(s: &FlowState) -> Vec<f64> {
    let mut y = Vec::with_capacity(2 + s.mu.coeffs().len());
    y.push(s.q);
    y.push(s.p);
    y.extend_from_slice(s.mu.coeffs());
    y
}

fn unflatten(t: f64, y: &[f64], shape: &Operation) -> Result<FlowState, Error> {
    let mu = Operation::new(shape.dim(), shape.degree(), y[2..].to_vec())?;
    FlowState::new(t, y[0], y[1], mu)
}

/// One classical RK4 step of size h on the flattened state.
pub fn rk4_step<F>(s: &FlowState, h: f64, rhs: F) -> Result<FlowState, Error>
where
    F: Fn(&FlowState) -> Result<FlowDerivative, Error>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStepSize(h));
    }

    let y0 = flatten(s);
    let stage = |dt: f64, k: Option<&Vec<f64>>| -> Result<Vec<f64>, Error> {
        let state = match k {
            None => s.clone(),
            Some(k) => {
                let y: Vec<f64> = y0.iter().zip(k).map(|(a, b)| a + dt * b).collect();
                unflatten(s.t + dt, &y, &s.mu).map_err(|_| Error::NonFiniteState {
                    t: s.t,
                    stage: "rk4 stage state",
                })?
            }
        };
        let d = rhs(&state)?;
        let mut k = Vec::with_capacity(y0.len());
        k.push(d.dq);
        k.push(d.dp);
        k.extend_from_slice(d.dmu.coeffs());
        if k.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState {
                t: s.t,
                stage: "rk4 derivative",
            });
        }
        Ok(k)
    };

    let k1 = stage(0.0, None)?;
    let k2 = stage(h / 2.0, Some(&k1))?;
    let k3 = stage(h / 2.0, Some(&k2))?;
    let k4 = stage(h, Some(&k3))?;

    let y1: Vec<f64> = (0..y0.len())
        .map(|n| y0[n] + h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]))
        .collect();
    unflatten(s.t + h, &y1, &s.mu).map_err(|_| Error::NonFiniteState {
        t: s.t + h,
        stage: "rk4 update",
    })
}

fn exceeds_limit(s: &FlowState) -> bool {
    let bad = |v: f64| !v.is_finite() || v.abs() > BLOW_UP_LIMIT;
    bad(s.q) || bad(s.p) || s.mu.coeffs().iter().any(|&v| bad(v))
}

/// Integrates `steps` RK4 steps of size h from `s0`, recording the initial
/// state and every accepted step (so `steps + 1` points). Probes are
/// evaluated on accepted states only, never at internal stages. A non-finite
/// state or any magnitude beyond [`BLOW_UP_LIMIT`] aborts with
/// [`Error::BlowUp`] carrying the partial trajectory.
pub fn integrate<F>(
    s0: FlowState,
    h: f64,
    steps: usize,
    rhs: F,
    probes: &[Probe],
) -> Result<Trajectory, Error>
where
    F: Fn(&FlowState) -> Result<FlowDerivative, Error>,
{
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStepSize(h));
    }

    let record = |traj: &mut Trajectory, state: FlowState| {
        let probes = probes.iter().map(|pr| pr.eval(&state)).collect();
        traj.points.push(TrajectoryPoint { state, probes });
    };

    let mut traj = Trajectory {
        probe_names: probes.iter().map(|p| p.name().to_string()).collect(),
        points: Vec::with_capacity(steps + 1),
    };
    let mut state = s0;
    record(&mut traj, state.clone());

    for step in 1..=steps {
        state = match rk4_step(&state, h, &rhs) {
            Ok(next) => next,
            Err(Error::NonFiniteState { t, .. }) => {
                return Err(Error::BlowUp {
                    step,
                    t,
                    trajectory: Box::new(traj),
                });
            }
            Err(e) => return Err(e),
        };
        if exceeds_limit(&state) {
            return Err(Error::BlowUp {
                step,
                t: state.t,
                trajectory: Box::new(traj),
            });
        }
        record(&mut traj, state.clone());
    }
    Ok(traj)
}

/// Trace of the k-th matrix power of a degree-1 operation, k ≥ 1.
///
/// tr Lᵏ is the isospectral invariant of ordinary (matrix) Lax flows.
pub fn trace_power(l: &Operation, k: usize) -> Result<f64, Error> {
    if l.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: l.degree(),
        });
    }
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let d = l.dim();
    let a = l.coeffs();
    let mut power = a.to_vec();
    for _ in 1..k {
        let mut next = vec![0.0; d * d];
        for r in 0..d {
            for s in 0..d {
                let w = power[r * d + s];
                for c in 0..d {
                    next[r * d + c] += w * a[s * d + c];
                }
            }
        }
        power = next;
    }
    Ok((0..d).map(|r| power[r * d + r]).sum())
}
