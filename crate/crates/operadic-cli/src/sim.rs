//! Oscillator simulation: coupled (q, p, μ) integration and trajectory
//! emission with an invariant-drift report.

use crate::OutputFormat;
use operadic::{
    coupled_rhs, hamiltonian, integrate, lax_l, lax_m, mu_closed_form, trace_power, Error,
    FlowState, Trajectory,
};
use serde::Serialize;
use std::io::{self, Write};

pub struct SimConfig {
    pub omega: f64,
    pub q0: f64,
    pub p0: f64,
    pub dt: f64,
    pub steps: usize,
    pub format: OutputFormat,
}

pub enum SimOutcome {
    Completed,
    /// Partial output was emitted; the message describes the abort.
    Aborted(String),
}

/// One emitted trajectory row. μ¹₁₂ and μ²₁₂ determine the whole
/// anti-commutative structure; the two invariants are
/// inv_rot = (μ¹₁₂)² + (μ²₁₂)² (= 4√(2H) on the closed-form orbit) and
/// inv_energy = (μ¹₁₂μ²₁₂/2)² + (((μ²₁₂)²−(μ¹₁₂)²)/4)² (= 2H).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Record {
    pub t: f64,
    pub q: f64,
    pub p: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub mu112: f64,
    pub mu212: f64,
    pub inv_rot: f64,
    pub inv_energy: f64,
    #[serde(rename = "trL2")]
    pub tr_l2: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Drift {
    pub initial: f64,
    #[serde(rename = "final")]
    pub last: f64,
    pub drift: f64,
}

impl Drift {
    fn between(initial: f64, last: f64) -> Self {
        Drift {
            initial,
            last,
            drift: (last - initial).abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Report {
    #[serde(rename = "H")]
    pub h: Drift,
    pub inv_rot: Drift,
    pub inv_energy: Drift,
    #[serde(rename = "trL2")]
    pub tr_l2: Drift,
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    records: &'a [Record],
    report: &'a Report,
}

fn record_from_state(s: &FlowState, omega: f64) -> Record {
    let x = s.mu.coeff(0, &[0, 1]);
    let y = s.mu.coeff(1, &[0, 1]);
    Record {
        t: s.t,
        q: s.q,
        p: s.p,
        h: hamiltonian(s.q, s.p, omega),
        mu112: x,
        mu212: y,
        inv_rot: x * x + y * y,
        inv_energy: (x * y / 2.0).powi(2) + ((y * y - x * x) / 4.0).powi(2),
        tr_l2: trace_power(&lax_l(s.q, s.p, omega), 2)
            .expect("oscillator L is a valid degree-1 operation"),
    }
}

fn report_from_records(records: &[Record]) -> Report {
    let first = records.first().expect("trajectories start with t = 0");
    let last = records.last().expect("non-empty by construction");
    Report {
        h: Drift::between(first.h, last.h),
        inv_rot: Drift::between(first.inv_rot, last.inv_rot),
        inv_energy: Drift::between(first.inv_energy, last.inv_energy),
        tr_l2: Drift::between(first.tr_l2, last.tr_l2),
    }
}

/// Integrates the coupled flow from the closed-form μ(q0, p0) and writes
/// the trajectory in the configured format. On blow-up the records produced
/// so far are still written, followed by the report over that prefix.
pub fn run_simulation(cfg: &SimConfig, w: &mut dyn Write) -> io::Result<SimOutcome> {
    let m = lax_m(cfg.omega);
    let mu0 = mu_closed_form(cfg.q0, cfg.p0, cfg.omega)
        .expect("finite (q0, p0, omega) always yield the closed form");
    let s0 = FlowState::new(0.0, cfg.q0, cfg.p0, mu0.into_operation())
        .expect("validated initial state");

    let omega = cfg.omega;
    let rhs = move |s: &FlowState| coupled_rhs(s, &m, omega);
    let (trajectory, failure) = match integrate(s0, cfg.dt, cfg.steps, rhs, &[]) {
        Ok(t) => (t, None),
        Err(Error::BlowUp { step, t, trajectory }) => (
            *trajectory,
            Some(format!(
                "state exceeded the blow-up limit at step {step} (t = {t}); \
                 partial trajectory written"
            )),
        ),
        Err(e) => (Trajectory::default(), Some(e.to_string())),
    };

    let records: Vec<Record> = trajectory
        .points
        .iter()
        .map(|pt| record_from_state(&pt.state, cfg.omega))
        .collect();

    if records.is_empty() {
        return Ok(SimOutcome::Aborted(
            failure.unwrap_or_else(|| "no trajectory produced".into()),
        ));
    }
    let report = report_from_records(&records);

    match cfg.format {
        OutputFormat::Csv => write_csv(&records, &report, w)?,
        OutputFormat::Json => {
            serde_json::to_writer(&mut *w, &JsonOutput {
                records: &records,
                report: &report,
            })?;
            writeln!(w)?;
        }
    }

    Ok(match failure {
        None => SimOutcome::Completed,
        Some(msg) => SimOutcome::Aborted(msg),
    })
}

// Plain `{}` float formatting is the shortest representation that parses
// back to the same bits, which keeps trajectories byte-stable across runs.
fn write_csv(records: &[Record], report: &Report, w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "t,q,p,H,mu112,mu212,inv_rot,inv_energy,trL2")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.t, r.q, r.p, r.h, r.mu112, r.mu212, r.inv_rot, r.inv_energy, r.tr_l2
        )?;
    }
    writeln!(w, "# invariant,initial,final,drift")?;
    for (label, d) in [
        ("H", report.h),
        ("inv_rot", report.inv_rot),
        ("inv_energy", report.inv_energy),
        ("trL2", report.tr_l2),
    ] {
        writeln!(w, "# {},{},{},{}", label, d.initial, d.last, d.drift)?;
    }
    Ok(())
}
