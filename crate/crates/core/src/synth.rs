//! Synthetic Gaussian bandit suite: problem generation, policy episodes,
//! regret curves, and the time-to-iterations budget table.

use alloc::rc::Rc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::bandit::{simple_regret, Policy, Ucb1Recommend};
use crate::clock::ManualClock;
use crate::seeds::mix_seed;
use crate::{Error, Result};

/// One bandit problem: `k` true means with unit-variance Gaussian noise.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditProblem {
    pub mus: Vec<f64>,
    pub noise_sigma: f64,
    pub problem_id: u64,
    pub seed: u64,
}

/// Simple regret recorded at a ladder of budgets.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretCurve {
    pub checkpoints: Vec<(u64, f64)>,
}

/// Which policy an episode runs, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicySpec {
    Ucb1 { c: f64, literal_recommend: bool },
    Sh,
    TimeSh,
    AnytimeSh,
}

impl PolicySpec {
    pub fn name(&self) -> &'static str {
        match self {
            PolicySpec::Ucb1 { .. } => "ucb1",
            PolicySpec::Sh => "sh",
            PolicySpec::TimeSh => "time-sh",
            PolicySpec::AnytimeSh => "anytime-sh",
        }
    }
}

/// Draw the suite: `num_problems` problems of `k` arms each, means i.i.d.
/// standard normal, derived deterministically from `master_seed`.
pub fn generate_suite(num_problems: u64, k: usize, master_seed: u64) -> Vec<BanditProblem> {
    (0..num_problems)
        .map(|i| {
            let seed = mix_seed(master_seed, &[0x6d65616e73, i]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mus = (0..k).map(|_| StandardNormal.sample(&mut rng)).collect();
            BanditProblem {
                mus,
                noise_sigma: 1.0,
                problem_id: i,
                seed,
            }
        })
        .collect()
}

/// One reward draw: `N(mus[arm], noise_sigma)`.
pub fn sample_reward<R: Rng>(problem: &BanditProblem, arm: usize, rng: &mut R) -> f64 {
    assert!(arm < problem.mus.len(), "arm out of range");
    let z: f64 = StandardNormal.sample(rng);
    problem.mus[arm] + problem.noise_sigma * z
}

fn validate_checkpoints(k: usize, budget: u64, checkpoints: &[u64]) -> Result<()> {
    if checkpoints.is_empty() {
        return Err(Error::BadCheckpoints("no checkpoints given".into()));
    }
    let mut prev = 0;
    for &c in checkpoints {
        if c < k as u64 {
            return Err(Error::BadCheckpoints(alloc::format!(
                "checkpoint {c} below the arm count {k}"
            )));
        }
        if c <= prev {
            return Err(Error::BadCheckpoints("checkpoints must ascend".into()));
        }
        if c > budget {
            return Err(Error::BadCheckpoints(alloc::format!(
                "checkpoint {c} beyond the budget {budget}"
            )));
        }
        prev = c;
    }
    Ok(())
}

/// Run one policy on one problem, recording simple regret at every
/// checkpoint.
///
/// The anytime policies (UCB1, time-sliced and anytime halving) run once
/// through `budget` pulls and are probed as they pass each checkpoint. The
/// fixed-budget halving policy cannot be probed mid-run: it is re-run fresh
/// per checkpoint with the checkpoint as its planning budget, on its own
/// derived seed stream.
///
/// The time-sliced policy runs on virtual time, one millisecond per pull,
/// with its budget equal to the pull budget — deterministic and
/// hardware-independent.
pub fn run_episode(
    problem: &BanditProblem,
    spec: PolicySpec,
    budget: u64,
    checkpoints: &[u64],
    seed: u64,
) -> Result<RegretCurve> {
    let k = problem.mus.len();
    validate_checkpoints(k, budget, checkpoints)?;

    let points = match spec {
        PolicySpec::Sh => {
            let mut points = Vec::with_capacity(checkpoints.len());
            for (i, &t) in checkpoints.iter().enumerate() {
                let mut policy = Policy::sh(k, t)?;
                let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, &[0x7368, i as u64]));
                for _ in 0..t {
                    let arm = policy.select()?;
                    policy.update(arm, sample_reward(problem, arm, &mut rng))?;
                }
                points.push((t, simple_regret(policy.recommend()?, &problem.mus)));
            }
            points
        }
        _ => {
            let clock = ManualClock::new();
            let mut policy = match spec {
                PolicySpec::Ucb1 {
                    c,
                    literal_recommend,
                } => {
                    let mode = if literal_recommend {
                        Ucb1Recommend::LiteralUcb
                    } else {
                        Ucb1Recommend::EmpiricalMean
                    };
                    Policy::ucb1_with_recommend(k, c, mode)?
                }
                PolicySpec::TimeSh => Policy::time_sh(k, budget as f64, Rc::new(clock.clone()))?,
                PolicySpec::AnytimeSh => Policy::anytime_sh(k)?,
                PolicySpec::Sh => unreachable!(),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, &[0x616e79]));
            let mut points = Vec::with_capacity(checkpoints.len());
            let mut next = 0;
            for t in 1..=budget {
                let arm = policy.select()?;
                policy.update(arm, sample_reward(problem, arm, &mut rng))?;
                clock.advance(1.0);
                if next < checkpoints.len() && checkpoints[next] == t {
                    points.push((t, simple_regret(policy.recommend()?, &problem.mus)));
                    next += 1;
                }
            }
            points
        }
    };
    Ok(RegretCurve {
        checkpoints: points,
    })
}

/// Average curves point-wise: per checkpoint, the mean regret and the 95%
/// normal-approximation half-width `1.96 * sd / sqrt(n)` (sample sd; zero
/// when n = 1).
pub fn aggregate_curves(curves: &[RegretCurve]) -> Result<Vec<(u64, f64, f64)>> {
    let first = curves.first().ok_or(Error::MismatchedCheckpoints)?;
    let grid: Vec<u64> = first.checkpoints.iter().map(|&(b, _)| b).collect();
    for c in curves {
        let this: Vec<u64> = c.checkpoints.iter().map(|&(b, _)| b).collect();
        if this != grid {
            return Err(Error::MismatchedCheckpoints);
        }
    }
    let n = curves.len() as f64;
    Ok(grid
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let mean = curves.iter().map(|c| c.checkpoints[i].1).sum::<f64>() / n;
            let half = if curves.len() < 2 {
                0.0
            } else {
                let var = curves
                    .iter()
                    .map(|c| {
                        let d = c.checkpoints[i].1 - mean;
                        d * d
                    })
                    .sum::<f64>()
                    / (n - 1.0);
                1.96 * libm::sqrt(var / n)
            };
            (b, mean, half)
        })
        .collect())
}

/// Ordered (milliseconds, iterations) pairs for converting wall-clock
/// budgets to pull budgets.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetMap {
    rows: Vec<(f64, u64)>,
}

impl BudgetMap {
    /// Both coordinates must ascend strictly.
    pub fn new(rows: Vec<(f64, u64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::BadConfig("empty budget map".into()));
        }
        for w in rows.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::BadConfig(
                    "budget map must ascend in both coordinates".into(),
                ));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[(f64, u64)] {
        &self.rows
    }
}

/// The built-in default mapping, measured at 500 ms steps up to 5 s.
pub fn default_budget_map() -> BudgetMap {
    BudgetMap::new(alloc::vec![
        (500.0, 18_500),
        (1000.0, 37_000),
        (1500.0, 55_500),
        (2000.0, 73_000),
        (2500.0, 93_000),
        (3000.0, 112_500),
        (3500.0, 131_000),
        (4000.0, 150_500),
        (4500.0, 167_500),
        (5000.0, 186_500),
    ])
    .expect("default budget map is well formed")
}

/// Convert a wall-clock budget to iterations by linear interpolation
/// between the bracketing rows, rounded down.
pub fn map_budget(map: &BudgetMap, milliseconds: f64) -> Result<u64> {
    let rows = map.rows();
    let (lo, hi) = (rows[0].0, rows[rows.len() - 1].0);
    if !(milliseconds >= lo && milliseconds <= hi) {
        return Err(Error::TimeOutOfRange {
            ms: milliseconds,
            lo,
            hi,
        });
    }
    let i = rows
        .windows(2)
        .position(|w| milliseconds <= w[1].0)
        .unwrap_or(0);
    let (ms0, it0) = rows[i];
    let (ms1, it1) = rows[i + 1];
    let frac = (milliseconds - ms0) / (ms1 - ms0);
    Ok((it0 as f64 + frac * (it1 as f64 - it0 as f64)) as u64)
}
