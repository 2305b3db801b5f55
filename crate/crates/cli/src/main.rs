//! `sre`: exact lattice vs. asymptotic symmetry-resolved entanglement.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! or domain errors.

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use sre_core::harness::{
    self, dominant_period, fit_table, rows_to_csv, run_identities, table_from_json, CompareTable, FitEntry,
    FitOptions, Format, SweepConfig, TableMetadata, Verdict,
};
use sre_core::{Error, Model};

#[derive(Parser, Debug)]
#[command(name = "sre", version, about = "Symmetry-resolved entanglement: exact lattice vs. asymptotics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact charged moments from the correlation matrix.
    Exact(SweepArgs),
    /// Leading and subleading asymptotic predictions.
    Asympt(SweepArgs),
    /// Exact vs. leading order, with raw and improved deviations.
    Compare(SweepArgs),
    /// Fit the decay exponent of the deviation for every (n, α).
    Fit(FitArgs),
    /// Run the standalone identity suite.
    Identities(IdentityArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// JSON sweep config; flags given alongside override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Model as inline JSON or a path to a JSON file.
    #[arg(long)]
    model: Option<String>,
    /// Rényi indices.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    n: Vec<f64>,
    /// Explicit α values; overrides the generated grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Vec<f64>,
    /// Number of points in the symmetric α grid on [−alpha-max, alpha-max].
    #[arg(long, default_value_t = 5)]
    alpha_count: usize,
    #[arg(long, default_value_t = 0.9 * PI)]
    alpha_max: f64,
    /// Subsystem lengths.
    #[arg(short = 'L', long = "L", value_delimiter = ',')]
    lengths: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct FitArgs {
    /// A table written by `compare --format json`; otherwise the sweep is run.
    #[arg(long, conflicts_with_all = ["config", "model", "n", "alpha", "lengths"])]
    table: Option<PathBuf>,
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long, default_value_t = 0.25)]
    drop_fraction: f64,
    /// Envelope block length in L; defaults to the model's longest oscillation period.
    #[arg(long)]
    period_hint: Option<f64>,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Also list passing checks.
    #[arg(long)]
    verbose: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}

/// Returns whether every check passed.
fn run(command: Command) -> sre_core::Result<bool> {
    match command {
        Command::Exact(args) => {
            let cfg = args.resolve()?;
            let rows = harness::run_exact(&cfg)?;
            write_rows(&cfg, &rows)?;
            Ok(true)
        }
        Command::Asympt(args) => {
            let cfg = args.resolve()?;
            let rows = harness::run_asympt(&cfg)?;
            write_rows(&cfg, &rows)?;
            Ok(true)
        }
        Command::Compare(args) => {
            let cfg = args.resolve()?;
            let table = harness::run_compare(&cfg)?;
            harness::emit(&table, cfg.format, cfg.out.as_deref())?;
            Ok(true)
        }
        Command::Fit(args) => fit(args),
        Command::Identities(args) => identities(args),
    }
}

impl SweepArgs {
    fn resolve(&self) -> sre_core::Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => Some(SweepConfig::from_path(path)?),
            None => None,
        };
        let model = match &self.model {
            Some(m) => Some(parse_model(m)?),
            None => None,
        };
        let model = match (model, &cfg) {
            (Some(m), _) => m,
            (None, Some(c)) => c.model.clone(),
            (None, None) => return Err(Error::Usage("a model is required (--model or --config)".into())),
        };
        let alpha = if !self.alpha.is_empty() {
            self.alpha.clone()
        } else if let Some(c) = &cfg {
            c.alpha.clone()
        } else {
            alpha_grid(self.alpha_count, self.alpha_max)?
        };
        let pick = |flag: &Vec<f64>, from_cfg: Option<&Vec<f64>>| {
            if flag.is_empty() {
                from_cfg.cloned().unwrap_or_default()
            } else {
                flag.clone()
            }
        };
        let n = pick(&self.n, cfg.as_ref().map(|c| &c.n));
        let lengths = if self.lengths.is_empty() {
            cfg.as_ref().map(|c| c.lengths.clone()).unwrap_or_default()
        } else {
            self.lengths.clone()
        };
        let out = self.out.clone().or_else(|| cfg.as_mut().and_then(|c| c.out.take()));
        let format = self.format.or(cfg.as_ref().map(|c| c.format)).unwrap_or_default();
        let cfg = SweepConfig { model, n, alpha, lengths, out, format };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Inline JSON if the argument looks like an object, otherwise a file path.
fn parse_model(arg: &str) -> sre_core::Result<Model> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        let path = Path::new(arg);
        std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?
    };
    Ok(serde_json::from_str(&text)?)
}

fn alpha_grid(count: usize, max: f64) -> sre_core::Result<Vec<f64>> {
    if !(0.0..PI).contains(&max) {
        return Err(Error::Domain(format!("--alpha-max must lie in [0, π), got {max}")));
    }
    Ok(match count {
        0 => return Err(Error::Usage("--alpha-count must be positive".into())),
        1 => vec![0.0],
        _ => (0..count).map(|i| -max + 2.0 * max * i as f64 / (count - 1) as f64).collect(),
    })
}

fn write_rows<R: serde::Serialize>(cfg: &SweepConfig, rows: &[R]) -> sre_core::Result<()> {
    let text = match cfg.format {
        Format::Csv => rows_to_csv(rows)?,
        Format::Json => {
            let doc = json!({ "metadata": TableMetadata::new(cfg.model.clone()), "rows": rows });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    write_text(&text, cfg.out.as_deref())
}

fn write_text(text: &str, out: Option<&Path>) -> sre_core::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth an error exit
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn fit(args: FitArgs) -> sre_core::Result<bool> {
    if !(0.0..1.0).contains(&args.drop_fraction) {
        return Err(Error::Usage(format!("--drop-fraction must lie in [0, 1), got {}", args.drop_fraction)));
    }
    let (table, format, out): (CompareTable, Format, Option<PathBuf>) = match &args.table {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.clone(), source })?;
            (table_from_json(&text)?, args.sweep.format.unwrap_or_default(), args.sweep.out.clone())
        }
        None => {
            let cfg = args.sweep.resolve()?;
            (harness::run_compare(&cfg)?, cfg.format, cfg.out)
        }
    };
    let period_hint = args.period_hint.or_else(|| dominant_period(&table.metadata.model));
    let opts = FitOptions { drop_fraction: args.drop_fraction, period_hint };
    let fits = fit_table(&table, &opts)?;
    let text = match format {
        Format::Csv => fits_to_csv(&fits),
        Format::Json => {
            let doc = json!({ "metadata": table.metadata, "options": opts, "fits": fits });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    write_text(&text, out.as_deref())?;
    Ok(fits.iter().all(|f| f.report.verdict == Verdict::MeetsBound))
}

fn fits_to_csv(fits: &[FitEntry]) -> String {
    let mut s = String::from("n,alpha,exponent,mu,cft_2mu,L_min,L_max,points,residual,verdict\n");
    for f in fits {
        let r = &f.report;
        let verdict = match r.verdict {
            Verdict::MeetsBound => "meets-bound",
            Verdict::Inconclusive => "inconclusive",
        };
        s += &format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            f.n, f.alpha, r.exponent, r.mu, r.cft_target, r.window.0, r.window.1, r.points_used, r.residual_norm, verdict
        );
    }
    s
}

fn identities(args: IdentityArgs) -> sre_core::Result<bool> {
    let report = run_identities()?;
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = String::from("family,case,residual,threshold,passed\n");
            for c in report.checks.iter().filter(|c| args.verbose || !c.passed) {
                s += &format!("{},\"{}\",{:e},{:e},{}\n", c.family, c.case, c.residual, c.threshold, c.passed);
            }
            s
        }
    };
    write_text(&text, args.out.as_deref())?;
    let mut families: Vec<&str> = report.checks.iter().map(|c| c.family.as_str()).collect();
    families.dedup();
    for fam in families {
        let (total, failed) = report.family(fam).fold((0, 0), |(t, f), c| (t + 1, f + usize::from(!c.passed)));
        let worst = report.family(fam).map(|c| c.residual).fold(0.0, f64::max);
        eprintln!("{fam}: {}/{total} passed, max residual {worst:.2e}", total - failed);
    }
    Ok(report.passed())
}
