//! Local minimizers over a budget of objective evaluations.

use std::cell::RefCell;
use std::collections::VecDeque;

use super::VqeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Derivative-free linear-approximation trust region (COBYLA).
    Cobyla,
    /// Limited-memory BFGS with forward-difference gradients.
    Lbfgs,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cobyla" => Ok(Method::Cobyla),
            "lbfgs" | "l-bfgs" => Ok(Method::Lbfgs),
            _ => Err(format!("unknown optimizer {s:?} (expected cobyla or lbfgs)")),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Cobyla => "cobyla",
            Method::Lbfgs => "lbfgs",
        })
    }
}

#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub method: Method,
    /// Maximum number of objective evaluations.
    pub budget: usize,
    /// COBYLA: final trust radius. L-BFGS: relative change of the objective
    /// over one iteration.
    pub tol: f64,
    /// Initial trust radius for COBYLA.
    pub rhobeg: f64,
    /// Forward-difference step for L-BFGS.
    pub fd_step: f64,
    /// L-BFGS history length.
    pub memory: usize,
}

impl OptimizerConfig {
    pub fn new(method: Method, budget: usize) -> Self {
        Self {
            method,
            budget,
            tol: 1e-8,
            rhobeg: 1.0,
            fd_step: 1e-7,
            memory: 10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Optimum {
    /// Best parameters seen.
    pub params: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    /// False when the budget ran out first.
    pub converged: bool,
    /// Objective value of every evaluation, in order.
    pub trajectory: Vec<f64>,
}

/// Evaluation bookkeeping shared by both methods.
struct Tracker<F> {
    f: F,
    budget: usize,
    trajectory: Vec<f64>,
    best: (f64, Vec<f64>),
}

impl<F: FnMut(&[f64]) -> f64> Tracker<F> {
    fn exhausted(&self) -> bool {
        self.trajectory.len() >= self.budget
    }

    fn eval(&mut self, x: &[f64]) -> f64 {
        let v = (self.f)(x);
        self.trajectory.push(v);
        if v < self.best.0 {
            self.best = (v, x.to_vec());
        }
        v
    }
}

/// Minimizes `f` from `x0`. The first evaluation is always at `x0`, so the
/// returned value never exceeds `f(x0)`.
pub fn optimize<F: FnMut(&[f64]) -> f64>(f: F, x0: &[f64], cfg: &OptimizerConfig) -> Result<Optimum, VqeError> {
    if cfg.budget == 0 {
        return Err(VqeError::Config("optimizer budget must be at least 1".into()));
    }
    let mut t = Tracker {
        f,
        budget: cfg.budget,
        trajectory: Vec::new(),
        best: (f64::INFINITY, x0.to_vec()),
    };
    let f0 = t.eval(x0);
    let converged = if x0.is_empty() || t.exhausted() {
        x0.is_empty()
    } else {
        match cfg.method {
            Method::Cobyla => cobyla(&mut t, x0, cfg),
            Method::Lbfgs => lbfgs(&mut t, x0, f0, cfg),
        }
    };
    let (value, params) = t.best;
    Ok(Optimum {
        params,
        value,
        evals: t.trajectory.len(),
        converged,
        trajectory: t.trajectory,
    })
}

fn cobyla<F: FnMut(&[f64]) -> f64>(t: &mut Tracker<F>, x0: &[f64], cfg: &OptimizerConfig) -> bool {
    let n = x0.len();
    let remaining = t.budget - t.trajectory.len();
    let cell = RefCell::new(t);
    let objective = |x: &[f64], _: &mut ()| cell.borrow_mut().eval(x);
    let no_constraints: [fn(&[f64], &mut ()) -> f64; 0] = [];
    let tols = cobyla::StopTols {
        xtol_abs: vec![cfg.tol; n],
        ..Default::default()
    };
    let out = cobyla::minimize(
        objective,
        x0,
        &vec![(f64::NEG_INFINITY, f64::INFINITY); n],
        &no_constraints,
        (),
        remaining,
        cobyla::RhoBeg::All(cfg.rhobeg),
        Some(tols),
    );
    matches!(
        out,
        Ok((cobyla::SuccessStatus::XtolReached | cobyla::SuccessStatus::Success | cobyla::SuccessStatus::FtolReached, _, _))
    )
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gradient<F: FnMut(&[f64]) -> f64>(t: &mut Tracker<F>, x: &[f64], fx: f64, h: f64) -> Option<Vec<f64>> {
    let mut g = vec![0.0; x.len()];
    let mut xp = x.to_vec();
    for i in 0..x.len() {
        if t.exhausted() {
            return None;
        }
        let step = h * x[i].abs().max(1.0);
        xp[i] = x[i] + step;
        g[i] = (t.eval(&xp) - fx) / step;
        xp[i] = x[i];
    }
    Some(g)
}

fn lbfgs<F: FnMut(&[f64]) -> f64>(t: &mut Tracker<F>, x0: &[f64], f0: f64, cfg: &OptimizerConfig) -> bool {
    let mut x = x0.to_vec();
    let mut fx = f0;
    let Some(mut g) = gradient(t, &x, fx, cfg.fd_step) else {
        return false;
    };
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    loop {
        let gmax = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if gmax <= cfg.tol * fx.abs().max(1.0) {
            return true;
        }
        // two-loop recursion
        let mut d: Vec<f64> = g.iter().map(|v| -v).collect();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let a = rho * dot(s, &d);
            d.iter_mut().zip(y).for_each(|(di, yi)| *di -= a * yi);
            alphas.push(a);
        }
        if let Some((s, y, _)) = history.back() {
            let gamma = dot(s, y) / dot(y, y);
            d.iter_mut().for_each(|di| *di *= gamma);
        } else {
            let scale = 1.0 / gmax.max(1.0);
            d.iter_mut().for_each(|di| *di *= scale);
        }
        for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &d);
            d.iter_mut().zip(s).for_each(|(di, si)| *di += (a - b) * si);
        }
        let mut slope = dot(&g, &d);
        if slope >= 0.0 {
            history.clear();
            d = g.iter().map(|v| -v / gmax.max(1.0)).collect();
            slope = dot(&g, &d);
        }
        // backtracking Armijo search
        let mut step = 1.0;
        let (xn, fn_) = loop {
            if t.exhausted() {
                return false;
            }
            let xn: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + step * di).collect();
            let fv = t.eval(&xn);
            if fv <= fx + 1e-4 * step * slope {
                break (xn, fv);
            }
            step *= 0.5;
            if step < 1e-12 {
                return true;
            }
        };
        let Some(gn) = gradient(t, &xn, fn_, cfg.fd_step) else {
            return false;
        };
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * dot(&y, &y).sqrt() * dot(&s, &s).sqrt() {
            history.push_back((s, y, 1.0 / sy));
            if history.len() > cfg.memory {
                history.pop_front();
            }
        }
        let decrease = fx - fn_;
        x = xn;
        g = gn;
        fx = fn_;
        if decrease <= cfg.tol * fx.abs().max(1.0) {
            return true;
        }
    }
}
