//! `rainbow-forest`: generators, the two pipelines, verification and sweeps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or parameter
//! error, 3 partial pipeline result.

mod manifest;
mod plot;
mod sweep;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rainbow_forest::factorization::theorem2_pipeline_seeded;
use rainbow_forest::generate::{orient_sts, proper_colouring, round_robin_one_factorization, steiner_triple_system};
use rainbow_forest::io::{
    certificate_to_string, colouring_to_string, matching_family_to_string, read_certificate, read_colouring,
    sts_to_string,
};
use rainbow_forest::isomorphize::{change_spider_parameter, ReshapeParams};
use rainbow_forest::matchings::{greedy_rainbow_matching, many_rainbow_matchings};
use rainbow_forest::proper::{multi_shape_pipeline, theorem1_pipeline, PipelineParams};
use rainbow_forest::{classify_spider, verify_certificate, CertTree, ColouredGraph, ForestCertificate};

use manifest::Manifest;

#[derive(Parser)]
#[command(name = "rainbow-forest", version, about = "Edge-disjoint rainbow spanning trees and spiders")]
struct Cli {
    /// Write `-` for the wall-clock field of manifests and 0 for sweep
    /// timings, making every output byte-reproducible.
    #[arg(long, global = true)]
    no_clock: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a colouring or a Steiner triple system.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Spanning rainbow trees in a 1-factorized K_n.
    Factorize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Seed of the triple orientation.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the growth trace of every tree here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Spanning rainbow isomorphic spiders in a proper colouring of K_n.
    Proper {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Leg count of every spider.
        #[arg(long, required_unless_present = "shapes")]
        t: Option<usize>,
        /// Comma-separated leg counts, one spider each.
        #[arg(long, conflicts_with = "t", value_delimiter = ',')]
        shapes: Option<Vec<usize>>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// A greedy rainbow matching, or many matchings with roots.
    Matchings {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Matching size; with --count, asks for that many matchings.
        #[arg(long, requires = "count")]
        delta: Option<usize>,
        #[arg(long, requires = "delta")]
        count: Option<usize>,
        /// Colour-class bound; defaults to the largest class.
        #[arg(long)]
        b: Option<usize>,
    },
    /// Add legs to one spider of a certificate.
    Reshape {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Index of the tree to reshape.
        #[arg(long)]
        tree: usize,
        /// Legs to add.
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long)]
        strict: bool,
    },
    /// Check a certificate against a colouring.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a pipeline over a grid of n and seeds, one CSV row per cell.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Round-robin 1-factorization, relabelled by seed when one is given.
    Factorization {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seeded proper colouring with extra split colours.
    Proper {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        extra_colours: usize,
        /// Split this many largest classes into pieces of --piece edges.
        #[arg(long, default_value_t = 0)]
        shatter: usize,
        #[arg(long, default_value_t = 59)]
        piece: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Steiner triple system on m points.
    Sts {
        #[arg(long)]
        m: usize,
        /// Write the seeded cyclic orientation instead of the bare triples.
        #[arg(long)]
        orient: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Clone, Default)]
pub struct ParamArgs {
    /// Start from the relaxed constants instead of the published ones,
    /// optionally followed by a settings file.
    #[arg(long, num_args = 0..=1, value_name = "FILE")]
    relax: Option<Option<PathBuf>>,
    /// TOML file of `key = value` settings.
    #[arg(long)]
    params: Option<PathBuf>,
    /// `key=value` setting, applied after the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Pipeline {
    Factorize,
    Proper,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pipeline: Pipeline,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 2)]
    n_step: usize,
    /// Comma-separated seeds.
    #[arg(long)]
    seeds: String,
    #[arg(long, default_value_t = 0)]
    extra_colours: usize,
    /// Classes shattered before the proper pipeline runs.
    #[arg(long, default_value_t = 0)]
    shatter: usize,
    /// Leg count for the proper pipeline.
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG plot of trees found against n.
    #[arg(long)]
    plot: Option<PathBuf>,
}

/// How a command ended, short of an input error.
enum Outcome {
    Ok,
    VerifyFailed,
    Partial,
}

type Res<T> = Result<T, String>;

fn read(path: &Path, m: &mut Manifest) -> Res<String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    m.input(path, &bytes);
    String::from_utf8(bytes).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_colouring(path: &Path, m: &mut Manifest) -> Res<ColouredGraph> {
    let text = read(path, m)?;
    read_colouring(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_certificate(path: &Path, m: &mut Manifest) -> Res<ForestCertificate> {
    let text = read(path, m)?;
    read_certificate(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn pipeline_params(args: &ParamArgs) -> Res<PipelineParams> {
    let mut p = if args.relax.is_some() {
        PipelineParams::relaxed()
    } else {
        PipelineParams::published()
    };
    let files = args.relax.iter().flatten().chain(&args.params);
    for path in files {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let table: toml::Table = text.parse().map_err(|e| format!("{}: {e}", path.display()))?;
        for (k, v) in &table {
            let x = match v {
                toml::Value::Float(f) => *f,
                toml::Value::Integer(i) => *i as f64,
                toml::Value::Boolean(b) => f64::from(u8::from(*b)),
                other => return Err(format!("{}: `{k}` has unsupported value {other}", path.display())),
            };
            p.set(k, x).map_err(|e| e.to_string())?;
        }
    }
    for kv in &args.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{kv}`"))?;
        let x = match v.trim() {
            "true" => 1.0,
            "false" => 0.0,
            s => s.parse().map_err(|_| format!("`{v}` is not a number"))?,
        };
        p.set(k.trim(), x).map_err(|e| e.to_string())?;
    }
    Ok(p)
}

pub fn record_params(m: &mut Manifest, p: &PipelineParams) {
    m.param("alpha", p.alpha);
    m.param("phi", p.phi);
    m.param("epsilon", p.epsilon);
    m.param("gamma", p.gamma.map_or("-".to_string(), |x| x.to_string()));
    m.param("tau", p.tau.map_or("-".to_string(), |x| x.to_string()));
    m.param("delta", p.delta);
    m.param("mu", p.mu.map_or("-".to_string(), |x| x.to_string()));
    m.param("t_min", p.t_min);
    m.param("t_max", p.t_max);
    m.param("strict", p.strict);
}

fn seed_header(seed: Option<u64>) -> String {
    match seed {
        Some(s) => format!("# seed={s}\n"),
        None => String::new(),
    }
}

fn generate(kind: &GenerateKind, clock: bool) -> Res<Outcome> {
    match kind {
        GenerateKind::Factorization { n, seed, out } => {
            let mut m = Manifest::new("generate factorization", *seed, clock);
            m.param("n", n);
            let g = match seed {
                Some(s) if n % 2 == 0 => proper_colouring(*n, *s, 0),
                _ => round_robin_one_factorization(*n),
            }
            .map_err(|e| e.to_string())?;
            let text = seed_header(*seed) + &colouring_to_string(&g);
            m.write_output(out, text.as_bytes())?;
            eprintln!("K_{n} with {} colours", g.num_colours());
            m.finish("ok")?;
        }
        GenerateKind::Proper {
            n,
            seed,
            extra_colours,
            shatter,
            piece,
            out,
        } => {
            let mut m = Manifest::new("generate proper", Some(*seed), clock);
            m.param("n", n);
            m.param("extra_colours", extra_colours);
            m.param("shatter", shatter);
            m.param("piece", piece);
            let mut g = proper_colouring(*n, *seed, *extra_colours).map_err(|e| e.to_string())?;
            if *shatter > 0 {
                g = rainbow_forest::generate::shatter_colour_classes(&g, *shatter, *piece, *seed)
                    .map_err(|e| e.to_string())?;
            }
            let text = seed_header(Some(*seed)) + &colouring_to_string(&g);
            m.write_output(out, text.as_bytes())?;
            eprintln!("K_{n} with {} colours", g.num_colours());
            m.finish("ok")?;
        }
        GenerateKind::Sts { m: points, orient, out } => {
            let mut m = Manifest::new("generate sts", *orient, clock);
            m.param("m", points);
            let sts = steiner_triple_system(*points).map_err(|e| e.to_string())?;
            let text = match orient {
                None => sts_to_string(&sts),
                Some(seed) => {
                    let o = orient_sts(&sts, *seed);
                    let mut s = format!("# seed={seed}\n{}\n", points);
                    for t in o.ordered() {
                        s.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
                    }
                    s
                }
            };
            m.write_output(out, text.as_bytes())?;
            eprintln!("{} triples", sts.triples().len());
            m.finish("ok")?;
        }
    }
    Ok(Outcome::Ok)
}

fn factorize(input: &Path, out: &Path, seed: u64, trace: Option<&Path>, clock: bool) -> Res<Outcome> {
    let mut m = Manifest::new("factorize", Some(seed), clock);
    let g = load_colouring(input, &mut m)?;
    let run = theorem2_pipeline_seeded(&g, seed).map_err(|e| e.to_string())?;
    let guaranteed = g.order().div_ceil(9).saturating_sub(6);
    m.param("n", g.order());
    m.param("m", run.m);
    eprintln!("n = {}, m = {}, roots {:?}", g.order(), run.m, run.a);
    eprintln!(
        "stage decomposition: ok ({} spiders, t = {})",
        run.spiders.len(),
        run.spiders.first().map_or(0, |s| s.t())
    );
    let text = seed_header(Some(seed)) + &certificate_to_string(&run.certificate);
    m.write_output(out, text.as_bytes())?;
    if let Some(path) = trace {
        let t: String = run.traces.iter().map(|t| t.to_string()).collect();
        m.write_output(path, t.as_bytes())?;
    }
    let found = run.certificate.trees.len();
    match &run.failure {
        None => {
            eprintln!("stage growth: ok ({found} trees, guarantee {guaranteed})");
            let report = verify_certificate(&g, &run.certificate);
            if !report.pass() {
                eprint!("{report}");
                m.finish("verify-failed")?;
                return Ok(Outcome::VerifyFailed);
            }
            m.finish(&format!("ok trees={found}"))?;
            Ok(Outcome::Ok)
        }
        Some(e) => {
            eprintln!("stage growth: FAILED after {found} trees: {e}");
            m.finish(&format!("partial trees={found} failure={e}"))?;
            Ok(Outcome::Partial)
        }
    }
}

fn proper(input: &Path, out: &Path, t: Option<usize>, shapes: Option<&[usize]>, args: &ParamArgs, clock: bool) -> Res<Outcome> {
    let mut m = Manifest::new("proper", None, clock);
    let g = load_colouring(input, &mut m)?;
    let mut p = pipeline_params(args)?;
    let run = match (t, shapes) {
        (Some(t), _) => {
            m.param("t", t);
            theorem1_pipeline(&g, t, &p)
        }
        (None, Some(ts)) => {
            if !args.set.iter().any(|s| s.trim_start().starts_with("t_min")) {
                p = p.multi_shape();
            }
            m.param("shapes", ts.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            multi_shape_pipeline(&g, ts, &p)
        }
        (None, None) => return Err("either --t or --shapes is required".into()),
    }
    .map_err(|e| e.to_string())?;
    record_params(&mut m, &p);
    eprint!("{}", run.report());
    let text = certificate_to_string(&run.certificate);
    m.write_output(out, text.as_bytes())?;
    let found = run.certificate.trees.len();
    match &run.failure {
        None => {
            m.finish(&format!("ok spiders={found}"))?;
            Ok(Outcome::Ok)
        }
        Some(e) => {
            eprintln!("partial: {found} spanning spider(s) certified; {e}");
            m.finish(&format!("partial spiders={found} failure={e}"))?;
            Ok(Outcome::Partial)
        }
    }
}

fn matchings(input: &Path, out: &Path, delta: Option<usize>, count: Option<usize>, b: Option<usize>, clock: bool) -> Res<Outcome> {
    let mut m = Manifest::new("matchings", None, clock);
    let g = load_colouring(input, &mut m)?;
    let b = b.unwrap_or_else(|| g.max_class_size());
    m.param("b", b);
    let text = match (delta, count) {
        (Some(delta), Some(count)) => {
            m.param("delta", delta);
            m.param("count", count);
            let fam = many_rainbow_matchings(&g, delta, b, count).map_err(|e| e.to_string())?;
            matching_family_to_string(&fam)
        }
        _ => {
            let mm = greedy_rainbow_matching(&g, b).map_err(|e| e.to_string())?;
            let mut s = format!("{}\n", mm.len());
            for e in &mm {
                s.push_str(&format!("{} {}\n", e.u, e.v));
            }
            s
        }
    };
    m.write_output(out, text.as_bytes())?;
    m.finish("ok")?;
    Ok(Outcome::Ok)
}

#[allow(clippy::too_many_arguments)]
fn reshape(input: &Path, cert: &Path, out: &Path, tree: usize, s: usize, delta: f64, strict: bool, clock: bool) -> Res<Outcome> {
    let mut m = Manifest::new("reshape", None, clock);
    let g = load_colouring(input, &mut m)?;
    let mut c = load_certificate(cert, &mut m)?;
    m.param("tree", tree);
    m.param("s", s);
    m.param("delta", delta);
    m.param("strict", strict);
    let target = c
        .trees
        .get(tree)
        .ok_or_else(|| format!("certificate has {} trees, no tree {tree}", c.trees.len()))?;
    let spider = classify_spider(&g, &target.edges, target.root).map_err(|e| e.to_string())?;
    let mut host = g.clone();
    for (i, t) in c.trees.iter().enumerate() {
        if i != tree {
            for e in &t.edges {
                host.remove_edge(e.u, e.v);
            }
        }
    }
    let r = change_spider_parameter(&host, &spider, s, &ReshapeParams { delta, strict }).map_err(|e| e.to_string())?;
    eprintln!("tree {tree}: {} -> {} legs via {}", spider.t(), r.spider.t(), r.branch);
    c.trees[tree] = CertTree::from_spider(&r.spider);
    m.write_output(out, certificate_to_string(&c).as_bytes())?;
    m.finish(&format!("ok branch={}", r.branch))?;
    Ok(Outcome::Ok)
}

fn verify(input: &Path, cert: &Path, out: Option<&Path>, clock: bool) -> Res<Outcome> {
    let mut m = Manifest::new("verify", None, clock);
    let g = load_colouring(input, &mut m)?;
    let c = load_certificate(cert, &mut m)?;
    let report = verify_certificate(&g, &c);
    let text = report.to_string();
    print!("{text}");
    if let Some(path) = out {
        m.write_output(path, text.as_bytes())?;
    }
    if report.pass() {
        m.finish("pass")?;
        Ok(Outcome::Ok)
    } else {
        m.finish(&format!("fail {}", report.failures.join("; ")))?;
        Ok(Outcome::VerifyFailed)
    }
}

fn run(cli: Cli) -> Res<Outcome> {
    let clock = !cli.no_clock;
    match &cli.command {
        Command::Generate { kind } => generate(kind, clock),
        Command::Factorize { input, out, seed, trace } => factorize(input, out, *seed, trace.as_deref(), clock),
        Command::Proper {
            input,
            out,
            t,
            shapes,
            params,
        } => proper(input, out, *t, shapes.as_deref(), params, clock),
        Command::Matchings {
            input,
            out,
            delta,
            count,
            b,
        } => matchings(input, out, *delta, *count, *b, clock),
        Command::Reshape {
            input,
            cert,
            out,
            tree,
            s,
            delta,
            strict,
        } => reshape(input, cert, out, *tree, *s, *delta, *strict, clock),
        Command::Verify { input, cert, out } => verify(input, cert, out.as_deref(), clock),
        Command::Sweep(args) => sweep::run(args, clock),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerifyFailed) => ExitCode::from(1),
        Ok(Outcome::Partial) => ExitCode::from(3),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

