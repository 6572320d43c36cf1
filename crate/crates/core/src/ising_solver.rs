//! Classical Ising-machine emulator.
//!
//! Energy convention: `E(s) = offset + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j`
//! with `s_i = +1` identified with the Z eigenvalue +1 (basis state |0>).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_BRUTE_SPINS: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ProblemJson", try_from = "ProblemJson")]
pub struct IsingProblem {
    n: usize,
    offset: f64,
    h: Vec<f64>,
    couplings: BTreeMap<(usize, usize), f64>,
}

#[derive(Serialize, Deserialize)]
struct ProblemJson {
    n: usize,
    #[serde(default)]
    offset: f64,
    h: Vec<f64>,
    #[serde(rename = "J", default)]
    j: Vec<(usize, usize, f64)>,
}

impl From<IsingProblem> for ProblemJson {
    fn from(p: IsingProblem) -> Self {
        ProblemJson { n: p.n, offset: p.offset, h: p.h, j: p.couplings.into_iter().map(|((i, j), v)| (i, j, v)).collect() }
    }
}

impl TryFrom<ProblemJson> for IsingProblem {
    type Error = Error;

    fn try_from(p: ProblemJson) -> Result<Self> {
        IsingProblem::new(p.n, p.offset, p.h, p.j)
    }
}

impl IsingProblem {
    /// Couplings may be given in either index order; each pair at most once.
    pub fn new(n: usize, offset: f64, h: Vec<f64>, couplings: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if h.len() != n {
            return Err(Error::Parse(format!("field `h`: expected {n} entries, found {}", h.len())));
        }
        if !offset.is_finite() {
            return Err(Error::Parse("field `offset`: value is not finite".into()));
        }
        if let Some(i) = h.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parse(format!("field `h[{i}]`: value is not finite")));
        }
        let mut map = BTreeMap::new();
        for (k, (i, j, v)) in couplings.into_iter().enumerate() {
            if i == j {
                return Err(Error::Parse(format!("field `J[{k}]`: self-coupling on spin {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::Parse(format!("field `J[{k}]`: pair ({i}, {j}) out of range for n = {n}")));
            }
            if !v.is_finite() {
                return Err(Error::Parse(format!("field `J[{k}]`: value is not finite")));
            }
            let key = (i.min(j), i.max(j));
            if map.insert(key, v).is_some() {
                return Err(Error::Parse(format!("field `J[{k}]`: duplicate coupling ({}, {})", key.0, key.1)));
            }
        }
        Ok(Self { n, offset, h, couplings: map })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn fields(&self) -> &[f64] {
        &self.h
    }

    pub fn couplings(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.couplings.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.couplings.get(&(i.min(j), i.max(j))).copied().unwrap_or(0.0)
    }

    /// Largest magnitude among fields and couplings.
    pub fn max_coefficient(&self) -> f64 {
        self.h.iter().chain(self.couplings.values()).fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Exact energy of a configuration; summation order is fixed.
    pub fn evaluate(&self, spins: &[i8]) -> f64 {
        debug_assert_eq!(spins.len(), self.n);
        let mut e = self.offset;
        for (hi, &s) in self.h.iter().zip(spins) {
            e += hi * f64::from(s);
        }
        for (&(i, j), &v) in &self.couplings {
            e += v * f64::from(spins[i]) * f64::from(spins[j]);
        }
        e
    }

    fn neighbours(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (&(i, j), &v) in &self.couplings {
            adj[i].push((j, v));
            adj[j].push((i, v));
        }
        adj
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Anneal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingSolution {
    pub spins: Vec<i8>,
    pub energy: f64,
    pub method: Method,
    pub seed: Option<u64>,
}

/// True when `a` should be preferred over `b`: lower energy, then the
/// lexicographically smaller spin vector (-1 before +1).
fn better(a_energy: f64, a_spins: &[i8], b_energy: f64, b_spins: &[i8]) -> bool {
    a_energy < b_energy || (a_energy == b_energy && a_spins < b_spins)
}

/// Exhaustive minimum over all `2^n` configurations.
pub fn solve_brute(p: &IsingProblem) -> Result<IsingSolution> {
    let n = p.n;
    if n > MAX_BRUTE_SPINS {
        return Err(Error::Resource(format!("{n} spins exceeds the brute-force limit of {MAX_BRUTE_SPINS}")));
    }
    let adj = p.neighbours();
    let mut spins = vec![-1i8; n];
    let mut fields: Vec<f64> = (0..n).map(|i| local_field(p, &adj, &spins, i)).collect();
    let mut energy = p.evaluate(&spins);
    let mut best_spins = spins.clone();
    let mut best_energy = energy;

    // walk a Gray code; candidates near the running minimum are re-evaluated exactly
    let scale: f64 = 1.0 + p.offset.abs() + p.h.iter().map(|v| v.abs()).sum::<f64>() + p.couplings.values().map(|v| v.abs()).sum::<f64>();
    let slack = 1e-9 * scale;
    for k in 1u64..(1u64 << n) {
        let i = k.trailing_zeros() as usize;
        let s = f64::from(spins[i]);
        energy -= 2.0 * s * fields[i];
        spins[i] = -spins[i];
        for &(j, v) in &adj[i] {
            fields[j] -= 2.0 * v * s;
        }
        if k % 4096 == 0 {
            energy = p.evaluate(&spins);
        }
        if energy <= best_energy + slack {
            let exact = p.evaluate(&spins);
            if better(exact, &spins, best_energy, &best_spins) {
                best_energy = exact;
                best_spins.clone_from(&spins);
            }
        }
    }
    Ok(IsingSolution { spins: best_spins, energy: best_energy, method: Method::Brute, seed: None })
}

fn local_field(p: &IsingProblem, adj: &[Vec<(usize, f64)>], spins: &[i8], i: usize) -> f64 {
    p.h[i] + adj[i].iter().map(|&(j, v)| v * f64::from(spins[j])).sum::<f64>()
}

/// Geometric temperature schedule with independent restarts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub t_start: f64,
    pub t_end: f64,
    pub sweeps: usize,
    pub restarts: usize,
}

impl Schedule {
    pub const DEFAULT_T_END: f64 = 1e-3;
    pub const DEFAULT_SWEEPS: usize = 10_000;
    pub const DEFAULT_RESTARTS: usize = 20;

    /// `T` from `5 * max|coefficient|` down to `1e-3`; the start is kept at least
    /// ten times the end so near-null problems still get a valid schedule.
    pub fn default_for(p: &IsingProblem) -> Self {
        Self {
            t_start: (5.0 * p.max_coefficient()).max(10.0 * Self::DEFAULT_T_END),
            t_end: Self::DEFAULT_T_END,
            sweeps: Self::DEFAULT_SWEEPS,
            restarts: Self::DEFAULT_RESTARTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0) || !(self.t_start > self.t_end) || !self.t_start.is_finite() {
            return Err(Error::Config(format!(
                "schedule needs t_start > t_end > 0, got t_start = {}, t_end = {}",
                self.t_start, self.t_end
            )));
        }
        if self.sweeps == 0 || self.restarts == 0 {
            return Err(Error::Config("schedule needs at least one sweep and one restart".into()));
        }
        Ok(())
    }

    pub fn temperature(&self, sweep: usize) -> f64 {
        if self.sweeps == 1 {
            return self.t_end;
        }
        let frac = sweep as f64 / (self.sweeps - 1) as f64;
        self.t_start * (self.t_end / self.t_start).powf(frac)
    }
}

/// Metropolis single-spin-flip annealing; returns the best configuration seen.
///
/// Restart `k` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `k`, so
/// results depend only on (problem, schedule, seed).
pub fn solve_anneal(p: &IsingProblem, schedule: &Schedule, seed: u64) -> Result<IsingSolution> {
    schedule.validate()?;
    if p.n == 0 {
        return Err(Error::Config("annealing needs at least one spin".into()));
    }
    let adj = p.neighbours();
    let runs: Vec<(f64, Vec<i8>)> = (0..schedule.restarts)
        .into_par_iter()
        .map(|restart| anneal_once(p, &adj, schedule, seed, restart as u64))
        .collect();
    let (energy, spins) = runs
        .into_iter()
        .reduce(|a, b| if better(b.0, &b.1, a.0, &a.1) { b } else { a })
        .expect("at least one restart");
    Ok(IsingSolution { spins, energy, method: Method::Anneal, seed: Some(seed) })
}

fn anneal_once(p: &IsingProblem, adj: &[Vec<(usize, f64)>], schedule: &Schedule, seed: u64, stream: u64) -> (f64, Vec<i8>) {
    let n = p.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut spins: Vec<i8> = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
    let mut fields: Vec<f64> = (0..n).map(|i| local_field(p, adj, &spins, i)).collect();
    let mut energy = p.evaluate(&spins);
    let mut best_energy = energy;
    let mut best_spins = spins.clone();

    for sweep in 0..schedule.sweeps {
        let t = schedule.temperature(sweep);
        for i in 0..n {
            let s = f64::from(spins[i]);
            let delta = -2.0 * s * fields[i];
            if delta <= 0.0 || rng.random::<f64>() < (-delta / t).exp() {
                spins[i] = -spins[i];
                energy += delta;
                for &(j, v) in &adj[i] {
                    fields[j] -= 2.0 * v * s;
                }
                if energy < best_energy {
                    best_energy = energy;
                    best_spins.clone_from(&spins);
                }
            }
        }
        // keep the running energy from drifting
        if sweep % 256 == 255 {
            energy = p.evaluate(&spins);
        }
    }
    (p.evaluate(&best_spins), best_spins)
}

/// Which solver to run and how.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SolverConfig {
    Brute,
    Anneal { schedule: Option<Schedule>, seed: u64 },
}

impl SolverConfig {
    pub fn solve(&self, p: &IsingProblem) -> Result<IsingSolution> {
        match *self {
            SolverConfig::Brute => solve_brute(p),
            SolverConfig::Anneal { schedule, seed } => {
                let schedule = schedule.unwrap_or_else(|| Schedule::default_for(p));
                solve_anneal(p, &schedule, seed)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_problem() {
        let p = IsingProblem::new(2, 0.0, vec![0.0, 0.0], []).unwrap();
        let s = solve_brute(&p).unwrap();
        assert_eq!(s.energy, 0.0);
        assert_eq!(s.spins, vec![-1, -1]);
    }

    #[test]
    fn single_field() {
        let p = IsingProblem::new(1, 0.25, vec![1.0], []).unwrap();
        let s = solve_brute(&p).unwrap();
        assert_eq!(s.spins, vec![-1]);
        assert_eq!(s.energy, 0.25 - 1.0);
        let a = solve_anneal(&p, &Schedule::default_for(&p), 3).unwrap();
        assert_eq!(a.spins, vec![-1]);
        assert_eq!(a.seed, Some(3));
    }

    #[test]
    fn ties_break_lexicographically() {
        // ferromagnetic pair: (-1,-1) and (+1,+1) tie
        let p = IsingProblem::new(2, 0.0, vec![0.0, 0.0], [(0, 1, -1.0)]).unwrap();
        assert_eq!(solve_brute(&p).unwrap().spins, vec![-1, -1]);
        let a = solve_anneal(&p, &Schedule::default_for(&p), 11).unwrap();
        assert_eq!(a.spins, vec![-1, -1]);
    }

    #[test]
    fn validation() {
        assert!(IsingProblem::new(2, 0.0, vec![0.0], []).is_err());
        assert!(IsingProblem::new(2, 0.0, vec![0.0, 0.0], [(1, 1, 1.0)]).is_err());
        assert!(IsingProblem::new(2, 0.0, vec![0.0, 0.0], [(0, 2, 1.0)]).is_err());
        assert!(IsingProblem::new(2, 0.0, vec![0.0, 0.0], [(0, 1, 1.0), (1, 0, 2.0)]).is_err());
        assert!(IsingProblem::new(2, 0.0, vec![f64::NAN, 0.0], []).is_err());
        assert!(IsingProblem::new(2, f64::INFINITY, vec![0.0, 0.0], []).is_err());
        let p = IsingProblem::new(2, 0.0, vec![0.0, 0.0], [(1, 0, 0.5)]).unwrap();
        assert_eq!(p.coupling(0, 1), 0.5);
    }

    #[test]
    fn brute_limit() {
        let p = IsingProblem::new(25, 0.0, vec![0.0; 25], []).unwrap();
        assert!(matches!(solve_brute(&p), Err(Error::Resource(_))));
    }

    #[test]
    fn invalid_schedules() {
        let p = IsingProblem::new(1, 0.0, vec![1.0], []).unwrap();
        let bad = [
            Schedule { t_start: 1.0, t_end: 1.0, sweeps: 10, restarts: 1 },
            Schedule { t_start: 1.0, t_end: 0.0, sweeps: 10, restarts: 1 },
            Schedule { t_start: -1.0, t_end: -2.0, sweeps: 10, restarts: 1 },
            Schedule { t_start: 1.0, t_end: 0.1, sweeps: 0, restarts: 1 },
            Schedule { t_start: 1.0, t_end: 0.1, sweeps: 10, restarts: 0 },
        ];
        for s in bad {
            assert!(matches!(solve_anneal(&p, &s, 0), Err(Error::Config(_))), "{s:?}");
        }
    }

    #[test]
    fn schedule_is_geometric() {
        let s = Schedule { t_start: 10.0, t_end: 0.1, sweeps: 3, restarts: 1 };
        assert!((s.temperature(0) - 10.0).abs() < 1e-12);
        assert!((s.temperature(1) - 1.0).abs() < 1e-12);
        assert!((s.temperature(2) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn json_format() {
        let text = r#"{"n": 3, "offset": 0.5, "h": [1, 0, -1], "J": [[0, 1, -1.0], [2, 1, 0.5]]}"#;
        let p = IsingProblem::from_json(text).unwrap();
        assert_eq!(p.coupling(1, 2), 0.5);
        let back = IsingProblem::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        let err = IsingProblem::from_json(r#"{"n": 2, "h": [1, 0], "J": [[0, 0, 1.0]]}"#).unwrap_err();
        assert!(err.to_string().contains("J[0]"), "{err}");
        let err = IsingProblem::from_json("{\n\"n\": 2,\n\"h\": [1, }").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn solution_json() {
        let s = IsingSolution { spins: vec![1, -1], energy: -1.5, method: Method::Anneal, seed: Some(7) };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"spins":[1,-1],"energy":-1.5,"method":"anneal","seed":7}"#);
    }
}
