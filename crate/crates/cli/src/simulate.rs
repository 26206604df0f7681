use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use robustnet::broadcast::{cpa_log_csv, cpa_run, cpa_sweep, CpaOutcome, SweepSummary};
use robustnet::consensus::files::{load_scenario, write_run};
use robustnet::consensus::{simulate, AdversaryStrategy, StrategyKind, ThreatModel};
use robustnet::io::{read_graph, write_atomic};
use robustnet::{CheckOptions, NodeId, NodeSet};
use serde::Serialize;

use crate::Exit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expected {
    Converged,
    Stalled,
    Timeout,
}

impl Expected {
    fn label(self) -> &'static str {
        match self {
            Expected::Converged => "CONVERGED",
            Expected::Stalled => "STALLED",
            Expected::Timeout => "TIMEOUT",
        }
    }
}

#[derive(Args, Debug)]
pub struct WmsrArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Exit with status 1 unless the run ends with this outcome.
    #[arg(long, value_enum)]
    pub expect: Option<Expected>,
}

pub fn run_wmsr(args: &WmsrArgs) -> Result<()> {
    let sc = load_scenario(&args.scenario).with_context(|| format!("loading {}", args.scenario.display()))?;
    let (traj, verdict) = simulate(&sc)?;
    write_run(&args.out_dir, &sc, &traj, &verdict)?;
    println!(
        "{} after {} steps, safe={}, phi={:e}",
        verdict.outcome.label(),
        verdict.steps_used,
        verdict.safe,
        verdict.phi_final
    );
    if let Some(want) = args.expect {
        if verdict.outcome.label() != want.label() {
            eprintln!("expected {}, got {}", want.label(), verdict.outcome.label());
            return Err(Exit(1).into());
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct CpaArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub source: NodeId,
    #[arg(long)]
    pub f: usize,
    /// Comma-separated faulty node ids.
    #[arg(long, value_delimiter = ',', conflicts_with = "sweep_all_f_local")]
    pub malicious: Vec<NodeId>,
    /// Run against every f-local faulty set that spares the source.
    #[arg(long)]
    pub sweep_all_f_local: bool,
    /// Faulty nodes send independent random values to each neighbor instead
    /// of one coordinated lie.
    #[arg(long)]
    pub byzantine: bool,
    /// Value broadcast by the source.
    #[arg(long, default_value_t = 1.0)]
    pub value: f64,
    /// Coordinated lie used without `--byzantine`.
    #[arg(long, default_value_t = -1.0)]
    pub lie: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Exit with status 1 unless every run reaches every normal node.
    #[arg(long)]
    pub expect_success: bool,
}

#[derive(Serialize)]
struct RunSummary<'a> {
    source: NodeId,
    f: usize,
    malicious: Vec<NodeId>,
    accepted: Vec<NodeId>,
    misled: Vec<NodeId>,
    rounds: usize,
    success: bool,
    strategy: &'a AdversaryStrategy,
}

#[derive(Serialize)]
struct CaseRow {
    malicious: String,
    accepted_count: usize,
    misled_count: usize,
    rounds: usize,
    success: bool,
}

fn strategy(args: &CpaArgs) -> Result<AdversaryStrategy> {
    if args.lie.to_bits() == args.value.to_bits() && !args.byzantine {
        bail!("--lie must differ from --value");
    }
    Ok(if args.byzantine {
        let spread = args.value.abs().max(1.0) * 4.0;
        AdversaryStrategy::new(
            StrategyKind::Random {
                low: args.value - spread,
                high: args.value + spread,
            },
            ThreatModel::Byzantine,
            args.seed,
        )
    } else {
        AdversaryStrategy::new(StrategyKind::Constant { value: args.lie }, ThreatModel::Malicious, args.seed)
    })
}

fn ids(set: &NodeSet) -> String {
    set.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run_cpa(args: &CpaArgs, opts: &CheckOptions) -> Result<()> {
    let g = read_graph(&args.graph).with_context(|| format!("reading {}", args.graph.display()))?;
    let strategy = strategy(args)?;
    let all_ok = if args.sweep_all_f_local {
        let outcomes = cpa_sweep(&g, args.source, args.f, &strategy, args.value, opts)?;
        let summary = SweepSummary::from_outcomes(args.source, args.f, &outcomes);
        let mut w = csv::Writer::from_writer(Vec::new());
        for o in &outcomes {
            w.serialize(CaseRow {
                malicious: ids(&o.malicious),
                accepted_count: o.accepted.len(),
                misled_count: o.misled.len(),
                rounds: o.rounds,
                success: o.success,
            })?;
        }
        write_atomic(&args.out_dir.join("cpa_cases.csv"), &w.into_inner()?)?;
        // the fault-free run is always first in mask order
        if let Some(clean) = outcomes.first() {
            write_atomic(&args.out_dir.join("cpa_log.csv"), &cpa_log_csv(clean)?)?;
        }
        let body = serde_json::json!({"sweep": summary, "strategy": strategy, "seed": args.seed});
        write_atomic(&args.out_dir.join("cpa_summary.json"), (serde_json::to_string_pretty(&body)? + "\n").as_bytes())?;
        println!(
            "{}/{} faulty sets succeeded, {} misled runs, max rounds {}",
            summary.successes, summary.cases, summary.misled_runs, summary.max_rounds
        );
        summary.all_succeeded && summary.misled_runs == 0
    } else {
        let malicious: NodeSet = args.malicious.iter().copied().collect();
        let o: CpaOutcome = cpa_run(&g, args.source, args.f, &malicious, &strategy, args.value)?;
        write_atomic(&args.out_dir.join("cpa_log.csv"), &cpa_log_csv(&o)?)?;
        let body = serde_json::json!({
            "run": RunSummary {
                source: o.source,
                f: args.f,
                malicious: o.malicious.to_vec(),
                accepted: o.accepted.to_vec(),
                misled: o.misled.to_vec(),
                rounds: o.rounds,
                success: o.success,
                strategy: &strategy,
            },
            "seed": args.seed,
        });
        write_atomic(&args.out_dir.join("cpa_summary.json"), (serde_json::to_string_pretty(&body)? + "\n").as_bytes())?;
        println!(
            "{} of {} normal nodes accepted in {} rounds, success={}",
            o.accepted.len(),
            g.n() - o.malicious.len(),
            o.rounds,
            o.success
        );
        o.success && o.misled.is_empty()
    };
    if args.expect_success && !all_ok {
        return Err(Exit(1).into());
    }
    Ok(())
}
