use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use robustnet::construction::{grow, AttachMode, GrowthPolicy};
use robustnet::generators::{complete, fig1_tight_graph, path, prop1_graph, prop4_graph, star};
use robustnet::io::write_graph;
use robustnet::DiGraph;

use crate::OutputGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Complete,
    Star,
    Path,
    /// Two cliques joined by a matching-like bridge.
    Prop1,
    /// Two-robust graph on which W-MSR with this f can stall.
    Fig1Tight,
    /// Fixed 8-node graph, strongly 3-robust with X(G) = 2.
    Prop4,
    /// Grown from K_{2r-1}, new nodes attach to r nodes by degree.
    PrefAttach,
    /// Grown from K_{2r-1}, new nodes attach to r uniformly chosen nodes.
    UniformAttach,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Node count (complete, star, path, prop1, *-attach).
    #[arg(long)]
    pub n: Option<usize>,
    /// Fault bound (prop1, fig1-tight).
    #[arg(long)]
    pub f: Option<usize>,
    /// Attachments per new node (*-attach).
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputGraph,
}

fn need(value: Option<usize>, name: &str, family: Family) -> Result<usize> {
    value.with_context(|| format!("--{name} is required for family {family:?}"))
}

fn build(args: &GenerateArgs) -> Result<DiGraph> {
    let fam = args.family;
    Ok(match fam {
        Family::Complete => complete(need(args.n, "n", fam)?)?,
        Family::Star => star(need(args.n, "n", fam)?)?,
        Family::Path => path(need(args.n, "n", fam)?)?,
        Family::Prop1 => prop1_graph(need(args.n, "n", fam)?, need(args.f, "f", fam)?)?,
        Family::Fig1Tight => fig1_tight_graph(need(args.f, "f", fam)?)?,
        Family::Prop4 => prop4_graph(),
        Family::PrefAttach | Family::UniformAttach => {
            if args.r == 0 {
                bail!("--r must be at least 1");
            }
            let mode = if fam == Family::PrefAttach {
                AttachMode::PreferentialAttachment
            } else {
                AttachMode::Uniform
            };
            let seed_graph = complete(2 * args.r - 1)?;
            let n = need(args.n, "n", fam)?;
            grow(&seed_graph, &GrowthPolicy::new(args.r, mode, args.seed), n)?
        }
    })
}

pub fn run(args: &GenerateArgs) -> Result<()> {
    let g = build(args)?;
    write_graph(&args.output.out, &g, args.output.format())
        .with_context(|| format!("writing {}", args.output.out.display()))?;
    let edges = if g.is_directed() { g.edge_count() } else { g.edge_count() / 2 };
    println!(
        "{}: n={} edges={} directed={} min_degree={} seed={}",
        args.output.out.display(),
        g.n(),
        edges,
        g.is_directed(),
        g.min_in_degree(),
        args.seed
    );
    Ok(())
}
