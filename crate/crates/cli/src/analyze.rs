use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use robustnet::broadcast::{x_graph_witness, XWitness};
use robustnet::connectivity::vertex_connectivity_with;
use robustnet::io::{read_graph, write_atomic};
use robustnet::robustness::{is_r_robust_with, is_strongly_r_robust_with, max_robustness_with, max_strong_robustness_with};
use robustnet::{CheckOptions, Extended};
use serde::Serialize;

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub graph: PathBuf,
    /// Also report the sufficient conditions for this fault bound.
    #[arg(long)]
    pub f: Option<usize>,
    /// Write the report here as well as to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize, Default)]
struct Conditions {
    f: usize,
    /// W-MSR is f-local safe on (2f+1)-robust graphs.
    robust_2f1: Option<bool>,
    /// CPA succeeds on strongly (2f+1)-robust graphs.
    strongly_robust_2f1: Option<bool>,
    /// CPA succeeds when X(G) > 2f.
    x_exceeds_2f: Option<bool>,
}

#[derive(Serialize, Default)]
struct Report {
    graph: String,
    n: usize,
    directed: bool,
    edges: usize,
    min_degree: usize,
    max_robust_r: Option<usize>,
    max_strong_robust_r: Option<Extended>,
    connectivity: Option<usize>,
    x_graph: Option<Extended>,
    x_witness: Option<XWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditions: Option<Conditions>,
    /// Metric name to error message for metrics that could not be computed.
    errors: BTreeMap<String, String>,
}

fn record<T>(errors: &mut BTreeMap<String, String>, name: &str, r: robustnet::Result<T>) -> Option<T> {
    r.map_err(|e| {
        errors.insert(name.to_string(), e.to_string());
    })
    .ok()
}

pub fn run(args: &AnalyzeArgs, opts: &CheckOptions) -> Result<()> {
    let g = read_graph(&args.graph).with_context(|| format!("reading {}", args.graph.display()))?;
    let mut errors = BTreeMap::new();
    let max_robust_r = record(&mut errors, "max_robust_r", max_robustness_with(&g, opts));
    let max_strong_robust_r = record(&mut errors, "max_strong_robust_r", max_strong_robustness_with(&g, opts));
    let connectivity = record(&mut errors, "connectivity", vertex_connectivity_with(&g, opts.exec));
    let witness = record(&mut errors, "x_graph", x_graph_witness(&g));
    let x_graph = witness.map(|w| w.map_or(Extended::Infinite, |w| Extended::Finite(w.x)));
    let conditions = args.f.map(|f| Conditions {
        f,
        robust_2f1: record(&mut errors, "robust_2f1", is_r_robust_with(&g, 2 * f + 1, opts)),
        strongly_robust_2f1: record(&mut errors, "strongly_robust_2f1", is_strongly_r_robust_with(&g, 2 * f + 1, opts)),
        x_exceeds_2f: x_graph.map(|x| x.exceeds(2 * f)),
    });
    let report = Report {
        graph: args.graph.display().to_string(),
        n: g.n(),
        directed: g.is_directed(),
        edges: if g.is_directed() { g.edge_count() } else { g.edge_count() / 2 },
        min_degree: g.min_in_degree(),
        max_robust_r,
        max_strong_robust_r,
        connectivity,
        x_graph,
        x_witness: witness.flatten(),
        conditions,
        errors,
    };
    let text = serde_json::to_string_pretty(&report)? + "\n";
    if let Some(out) = &args.out {
        write_atomic(out, text.as_bytes())?;
    }
    print!("{text}");
    Ok(())
}
