//! One runner per command. Grid points are evaluated in parallel and
//! collected in grid order, so output never depends on the worker count.

use std::collections::BTreeMap;

use entshare::bounds::{self, pipeline_overlap, theorem1_bound, BoundReport, SLACK_TOL};
use entshare::csscode::{parse_css, steane_css, CssCode};
use entshare::purify::{estimate, exact_outcome, MaskPolicy, PauliChannelSpec, MAX_EXACT_BLOCK_LEN};
use entshare::qcore::{apply_channel, haar_state, overlap, schmidt_decompose, substream, trace_distance};
use entshare::states::{generalized_bell, ghz, isotropic, IsotropicParams};
use entshare::teleport::{teleport_channel, teleport_fidelity};
use entshare::twirl::{twirl_exact, twirl_sampled};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::report::{PurifyRow, Rows, ShareRow, TeleportRow, TwirlRow};
use crate::CliError;

/// Resolves `steane` or a code file path.
pub fn load_code(spec: &str) -> Result<CssCode, CliError> {
    if spec.eq_ignore_ascii_case("steane") {
        return Ok(steane_css());
    }
    let text = std::fs::read_to_string(spec).map_err(|e| CliError::Config(format!("cannot read code {spec}: {e}")))?;
    parse_css(&text).map_err(|e| CliError::Config(format!("{spec}: {e}")))
}

fn or_default<T: Clone>(values: &[T], default: &[T]) -> Vec<T> {
    if values.is_empty() {
        default.to_vec()
    } else {
        values.to_vec()
    }
}

pub fn purify(cfg: &ExperimentConfig) -> Result<Rows, CliError> {
    let code = load_code(&cfg.code)?;
    let trials = cfg.trials.unwrap_or(10_000);
    let rows = or_default(&cfg.p, &[0.01])
        .into_iter()
        .map(|p| {
            let spec = PauliChannelSpec::depolarizing(p)?;
            let report = estimate(&code, &spec, trials, cfg.seed)?;
            let exact = if code.n() <= MAX_EXACT_BLOCK_LEN {
                Some(exact_outcome(&code, &spec, MaskPolicy::Random)?)
            } else {
                None
            };
            Ok(PurifyRow {
                code: cfg.code.clone(),
                n: code.n(),
                m: code.m(),
                t: code.t(),
                p,
                trials,
                passes: report.passes,
                successes: report.successes,
                pass_rate: report.pass_rate,
                conditional_fidelity: report.conditional_fidelity,
                ci_low: report.ci_low,
                ci_high: report.ci_high,
                disagreements: report.disagreements,
                exact_pass_probability: exact.map(|e| e.pass_probability),
                exact_conditional_fidelity: exact.map(|e| e.conditional_fidelity),
                seed: cfg.seed,
            })
        })
        .collect::<Result<Vec<_>, entshare::Error>>()?;
    Ok(Rows::Purify(rows))
}

pub fn teleport(cfg: &ExperimentConfig) -> Result<Rows, CliError> {
    let inputs = cfg.trials.unwrap_or(100);
    let mut grid = Vec::new();
    for d in or_default(&cfg.d, &[2, 3, 4, 5]) {
        let dd = (d * d) as f64;
        for f in or_default(&cfg.fidelity, &[1.0 / dd, 0.3, 0.6, 0.9, 1.0]) {
            grid.push((d, f));
        }
    }
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(idx, &(d, f))| {
            let channel = teleport_channel(&isotropic(&IsotropicParams::new(d, f)?))?;
            let predicted = teleport_fidelity(d, f);
            let mut rng = substream(cfg.seed, idx as u64);
            let (mut lo, mut hi, mut err) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
            for _ in 0..inputs {
                let psi = haar_state(vec![d], &mut rng)?;
                let o = overlap(&apply_channel(&channel, &psi.projector(), &[0])?, &psi)?;
                lo = lo.min(o);
                hi = hi.max(o);
                err = err.max((o - predicted).abs());
            }
            Ok(TeleportRow { d, fidelity: f, inputs, predicted, min_overlap: lo, max_overlap: hi, max_error: err })
        })
        .collect::<Result<Vec<_>, entshare::Error>>()?;
    Ok(Rows::Teleport(rows))
}

pub fn twirl(cfg: &ExperimentConfig) -> Result<Rows, CliError> {
    let max_samples = cfg.trials.unwrap_or(20_000);
    let mut counts: Vec<u64> = (0..=4).rev().map(|k| (max_samples >> k).max(1)).collect();
    counts.dedup();
    let mut rows = Vec::new();
    for d in or_default(&cfg.d, &[2, 3]) {
        let rho = haar_state(vec![d, d], &mut substream(cfg.seed, d as u64))?.projector();
        let exact = twirl_exact(&rho)?;
        let f = overlap(&exact, &generalized_bell(d)?)?;
        for &samples in &counts {
            let sampled = twirl_sampled(&rho, samples as usize, cfg.seed)?;
            rows.push(TwirlRow { d, samples, isotropic_fidelity: f, trace_distance: trace_distance(&sampled, &exact)? });
        }
    }
    Ok(Rows::Twirl(rows))
}

pub fn bounds(cfg: &ExperimentConfig) -> Result<Rows, CliError> {
    let samples = cfg.trials.unwrap_or(20) as f64;
    let eps_grid = or_default(&cfg.eps, &[0.0, 0.05, 0.1, 0.2]);
    let mut jobs: Vec<(&str, BTreeMap<String, f64>)> = Vec::new();
    let base = |eps: f64| -> BTreeMap<String, f64> {
        [("eps", eps), ("samples", samples), ("seed", cfg.seed as f64)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    };
    for name in ["lemma2", "lemma3", "maxent", "corollary1"] {
        for &d in &or_default(&cfg.d, &[2, 3, 4]) {
            for &eps in &eps_grid {
                let mut p = base(eps);
                p.insert("d".into(), d as f64);
                jobs.push((name, p));
            }
        }
    }
    for name in ["theorem1", "ghz"] {
        for &m in &or_default(&cfg.m, &[1, 2, 3]) {
            let sizes: Vec<usize> = if cfg.n.is_empty() { vec![m + 1] } else { cfg.n.iter().copied().filter(|&n| n > m).collect() };
            for &n in &sizes {
                for &eps in &eps_grid {
                    let mut p = base(eps);
                    p.insert("m".into(), m as f64);
                    p.insert("n".into(), n as f64);
                    jobs.push((name, p));
                }
            }
        }
    }
    let rows = jobs
        .par_iter()
        .map(|(name, p)| bounds::verify(name, p))
        .collect::<Result<Vec<BoundReport>, _>>()?;
    Ok(Rows::Bounds(rows))
}

pub fn share(cfg: &ExperimentConfig) -> Result<Rows, CliError> {
    let code = load_code(&cfg.code)?;
    let trials = cfg.trials.unwrap_or(10_000);
    let mut rows = Vec::new();
    for p in or_default(&cfg.p, &[0.01]) {
        let spec = PauliChannelSpec::depolarizing(p)?;
        let report = estimate(&code, &spec, trials, cfg.seed)?;
        let block_fidelity = report
            .conditional_fidelity
            .ok_or_else(|| CliError::Runtime(format!("no purification round passed at p = {p}")))?;
        for m in or_default(&cfg.m, &[1]) {
            for n in or_default(&cfg.n, &[3]) {
                if n <= m {
                    return Err(CliError::Config(format!("N = {n} must exceed m = {m}")));
                }
                // independent blocks; a partially used block counts in full
                let blocks = m.div_ceil(code.m());
                let resource_fidelity = block_fidelity.powi(blocks as i32);
                let eps = 1.0 - resource_fidelity;
                let psi = ghz(n)?;
                let sim = pipeline_overlap(&psi, m, eps)?;
                let left: Vec<usize> = (0..m).collect();
                let schmidt = schmidt_decompose(&psi, &left)?;
                let bound = theorem1_bound(m as u32, eps, schmidt.schmidt_number, schmidt.max_pair_product());
                let example = bounds::ghz_example_fidelity(m as u32, eps).ok();
                let fidelity = sim.sqrt();
                rows.push(ShareRow {
                    code: cfg.code.clone(),
                    p,
                    trials,
                    pass_rate: report.pass_rate,
                    block_fidelity,
                    blocks,
                    resource_fidelity,
                    eps,
                    m,
                    n,
                    overlap: sim,
                    fidelity,
                    ghz_example_fidelity: example,
                    ghz_gap: example.map(|e| fidelity - e),
                    theorem1_bound: bound,
                    theorem1_slack: sim - bound,
                    satisfied: sim - bound >= -SLACK_TOL,
                });
            }
        }
    }
    Ok(Rows::Share(rows))
}
