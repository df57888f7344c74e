use std::fs;
use std::io::Write;
use std::process::ExitCode;

use biprestar::bounds::{self, bound_report, fekete_szego_bound};
use biprestar::verifier::{self, default_grid, Targets, GRID_MUS};
use biprestar::{BoundsError, ClassParams, VerifyError};
use clap::error::ErrorKind;
use clap::Parser;

mod config;
mod report;

use config::{Cli, CommandKind, ConfigError, RunConfig};
use report::{BoundsView, Document, ParamsView, SweepRow, SweepView};

enum Failure {
    Usage(String),
    Degenerate(String),
    Violations(u64),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Usage(m) => Failure::Usage(m),
            ConfigError::Range(e) => e.into(),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::DegenerateDenominator { .. } => Failure::Degenerate(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Bounds(b) => b.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Degenerate(_) => 2,
            Failure::Violations(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match RunConfig::from_cli(cli).map_err(Failure::from).and_then(|cfg| run(&cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Degenerate(m) => eprintln!("error: {m}"),
                Failure::Violations(n) => eprintln!("verification failed: {n} violation(s)"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cfg: &RunConfig) -> Result<(), Failure> {
    let mut doc = Document::new(cfg.seed);
    let outcome = match cfg.command {
        CommandKind::Bounds => cmd_bounds(cfg, &mut doc),
        CommandKind::Fekete => cmd_fekete(cfg, &mut doc),
        CommandKind::Verify => cmd_verify(cfg, &mut doc),
        CommandKind::Sweep => cmd_sweep(cfg, &mut doc),
    };
    if let Err(Failure::Usage(_)) = outcome {
        return outcome;
    }
    emit(cfg, &doc)?;
    outcome
}

fn emit(cfg: &RunConfig, doc: &Document) -> Result<(), Failure> {
    let text = doc.render(cfg.format).map_err(|e| Failure::Usage(e.to_string()))?;
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn cmd_bounds(cfg: &RunConfig, doc: &mut Document) -> Result<(), Failure> {
    let p = cfg.params.expect("bounds needs a point");
    let r = bound_report(&p);
    doc.params = Some(ParamsView::of(&p));
    doc.bounds = Some(BoundsView::of(&p, &r));
    bounds::ensure_nondegenerate(&p)?;
    Ok(())
}

fn cmd_fekete(cfg: &RunConfig, doc: &mut Document) -> Result<(), Failure> {
    let p = cfg.params.expect("fekete needs a point");
    doc.params = Some(ParamsView::of(&p));
    doc.bounds = Some(BoundsView::of(&p, &bound_report(&p)));
    doc.fekete = Some(fekete_szego_bound(&p, cfg.mu.expect("fekete needs mu"))?);
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, doc: &mut Document) -> Result<(), Failure> {
    let points: Vec<ClassParams> = match cfg.params {
        Some(p) => {
            doc.params = Some(ParamsView::of(&p));
            vec![p]
        }
        None => default_grid(),
    };
    let mus: Vec<f64> = cfg.mu.map_or_else(|| GRID_MUS.to_vec(), |m| vec![m]);

    let mut runs = Vec::with_capacity(points.len() * mus.len());
    for p in &points {
        for &mu in &mus {
            let mut targets = Targets::from_bounds(p, Some(mu))?;
            if cfg.corrupt_bound {
                targets.a2 *= 0.5;
            }
            runs.push(verifier::verify_against(p, targets, cfg.mode, cfg.seed, cfg.count)?);
        }
    }
    let violations: u64 = runs.iter().map(|r| r.violation_count).sum();
    doc.verify = Some(runs);
    if violations > 0 {
        return Err(Failure::Violations(violations));
    }
    Ok(())
}

fn cmd_sweep(cfg: &RunConfig, doc: &mut Document) -> Result<(), Failure> {
    let spec = cfg.sweep.as_ref().expect("sweep spec");
    let mut rows = Vec::with_capacity(spec.steps);
    for v in spec.values() {
        let (p, mu) = cfg.point_on(spec, v)?;
        let r = bound_report(&p);
        let fs = match mu {
            Some(mu) if !r.degenerate => Some(fekete_szego_bound(&p, mu)?),
            _ => None,
        };
        rows.push(SweepRow {
            value: v,
            lambda: p.lambda(),
            alpha: p.alpha(),
            t: p.t(),
            mu,
            a2_bound: r.a2_bound,
            a3_bound: r.a3_bound,
            fekete: fs.map(|f| f.value),
            branch: fs.map(|f| f.branch),
            degenerate: r.degenerate,
        });
    }
    doc.sweep = Some(SweepView { axis: spec.axis.name().to_owned(), rows });
    Ok(())
}
