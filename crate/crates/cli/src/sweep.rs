use std::time::Instant;

use rainbow_forest::factorization::theorem2_pipeline_seeded;
use rainbow_forest::generate::{proper_colouring, shatter_colour_classes};
use rainbow_forest::proper::{theorem1_pipeline, PipelineParams};
use rainbow_forest::{verify_certificate, Error};
use rayon::prelude::*;

use crate::manifest::Manifest;
use crate::{pipeline_params, plot, record_params, Outcome, Pipeline, Res, SweepArgs};

struct Row {
    n: usize,
    seed: u64,
    found: usize,
    guaranteed: usize,
    stage_failed: String,
    millis: u128,
}

fn parse_seeds(s: &str) -> Res<Vec<u64>> {
    let seeds: Vec<u64> = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| format!("`{x}` is not a seed")))
        .collect::<Res<_>>()?;
    if seeds.is_empty() {
        return Err("the seed list is empty".into());
    }
    Ok(seeds)
}

fn factorize_cell(n: usize, seed: u64) -> (usize, String) {
    let g = match proper_colouring(n, seed, 0) {
        Ok(g) => g,
        Err(_) => return (0, "input".into()),
    };
    match theorem2_pipeline_seeded(&g, seed) {
        Err(Error::Input(_)) | Err(Error::Existence(_)) => (0, "input".into()),
        Err(_) => (0, "decomposition".into()),
        Ok(run) => {
            let found = run.certificate.trees.len();
            if run.failure.is_some() {
                (found, "growth".into())
            } else if !verify_certificate(&g, &run.certificate).pass() {
                (found, "verify".into())
            } else {
                (found, "-".into())
            }
        }
    }
}

fn proper_cell(n: usize, seed: u64, args: &SweepArgs, p: &PipelineParams) -> (usize, String) {
    let g = proper_colouring(n, seed, args.extra_colours).and_then(|g| {
        if args.shatter == 0 {
            Ok(g)
        } else {
            let piece = p.fat_threshold(n).saturating_sub(1).max(1);
            shatter_colour_classes(&g, args.shatter, piece, seed)
        }
    });
    let g = match g {
        Ok(g) => g,
        Err(_) => return (0, "input".into()),
    };
    match theorem1_pipeline(&g, args.t, p) {
        Err(_) => (0, "input".into()),
        Ok(run) => {
            let found = run.certificate.trees.len();
            match run.stages.iter().find(|s| !s.ok()) {
                Some(stage) => (found, stage.stage.to_string()),
                None if run.failure.is_some() => (found, "unknown".into()),
                None => (found, "-".into()),
            }
        }
    }
}

pub fn run(args: &SweepArgs, clock: bool) -> Res<Outcome> {
    let seeds = parse_seeds(&args.seeds)?;
    if args.n_step == 0 || args.n_min > args.n_max {
        return Err(format!(
            "empty n range {}..={} step {}",
            args.n_min, args.n_max, args.n_step
        ));
    }
    let p = pipeline_params(&args.params)?;
    let mut m = Manifest::new("sweep", None, clock);
    m.param(
        "pipeline",
        match args.pipeline {
            Pipeline::Factorize => "factorize",
            Pipeline::Proper => "proper",
        },
    );
    m.param("n_min", args.n_min);
    m.param("n_max", args.n_max);
    m.param("n_step", args.n_step);
    m.param("seeds", seeds.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
    if args.pipeline == Pipeline::Proper {
        m.param("t", args.t);
        m.param("extra_colours", args.extra_colours);
        m.param("shatter", args.shatter);
        record_params(&mut m, &p);
    }

    let cells: Vec<(usize, u64)> = (args.n_min..=args.n_max)
        .step_by(args.n_step)
        .flat_map(|n| seeds.iter().map(move |&s| (n, s)))
        .collect();
    let rows: Vec<Row> = cells
        .par_iter()
        .map(|&(n, seed)| {
            let start = Instant::now();
            let ((found, stage_failed), guaranteed) = match args.pipeline {
                Pipeline::Factorize => (factorize_cell(n, seed), n.div_ceil(9).saturating_sub(6)),
                Pipeline::Proper => (proper_cell(n, seed, args, &p), p.spider_count(n)),
            };
            Row {
                n,
                seed,
                found,
                guaranteed,
                stage_failed,
                millis: if clock { start.elapsed().as_millis() } else { 0 },
            }
        })
        .collect();

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "seed", "trees_found", "trees_guaranteed", "stage_failed", "millis"])
        .map_err(|e| e.to_string())?;
    for r in &rows {
        w.write_record([
            r.n.to_string(),
            r.seed.to_string(),
            r.found.to_string(),
            r.guaranteed.to_string(),
            r.stage_failed.clone(),
            r.millis.to_string(),
        ])
        .map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    m.write_output(&args.out, &bytes)?;
    if let Some(path) = &args.plot {
        let points: Vec<(usize, usize)> = rows.iter().map(|r| (r.n, r.found)).collect();
        let svg = match args.pipeline {
            Pipeline::Factorize => plot::svg(&points, |n| n / 9.0 - 6.0, "n/9 - 6"),
            Pipeline::Proper => {
                let alpha = p.alpha;
                plot::svg(&points, move |n| (alpha * n).floor(), "⌊αn⌋")
            }
        };
        m.write_output(path, svg.as_bytes())?;
    }
    let ok = rows.iter().filter(|r| r.stage_failed == "-").count();
    eprintln!("{ok} of {} cells succeeded", rows.len());
    m.finish(&format!("cells={} succeeded={ok}", rows.len()))?;
    if ok == 0 {
        Ok(Outcome::Partial)
    } else {
        Ok(Outcome::Ok)
    }
}
