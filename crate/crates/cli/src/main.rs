//! `analyze`: collinearity diagnostics for a CSV regression dataset.
//!
//! Exit codes: 0 on success (collinearity findings are output, not
//! failure), 1 for usage errors, 2 for data or parse errors, 3 for
//! numerical failures such as exact collinearity.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use collindiag::{
    diagnose, infer_roles, load_csv, render, ColumnRole, DesignMatrix, DiagnoseOptions, Error,
    Format, RoleOverride, ThresholdConfig,
};

/// Column excluded from the default regressor set; index-like identifiers
/// add nothing to a collinearity analysis. Select it explicitly via
/// `--regressors` to include it.
const DEFAULT_EXCLUDED: &str = "year";

#[derive(Debug, Parser)]
#[command(
    name = "analyze",
    version,
    about = "Collinearity diagnostics for linear regression designs",
    after_help = "Without --regressors, every column except the dependent (and a column named \
                  \"year\", if present) enters the design. Findings are reported on exit code 0; \
                  nonzero codes signal operational failures only."
)]
struct Args {
    /// CSV file: UTF-8, header row, decimal numbers.
    file: PathBuf,

    /// Name of the dependent (response) column.
    #[arg(long)]
    dependent: String,

    /// Comma-separated regressor columns (default: all except the dependent
    /// and "year").
    #[arg(long, value_delimiter = ',')]
    regressors: Option<Vec<String>>,

    /// Override a column role, e.g. --role twentys=quantitative. Repeatable.
    #[arg(long = "role", value_name = "NAME=dummy|quantitative", value_parser = parse_role)]
    roles: Vec<RoleArg>,

    /// Build the design without a prepended intercept column.
    #[arg(long)]
    no_intercept: bool,

    /// Re-admit dummy columns into the correlation matrix and VIF table
    /// (compatibility with tooling that ignores column roles).
    #[arg(long)]
    include_dummies_in_legacy_measures: bool,

    /// Output format.
    #[arg(long, env = "COLLINDIAG_FORMAT", default_value = "text", value_parser = parse_format)]
    format: Format,

    /// Condition number at or above which collinearity is problematic.
    #[arg(long, value_name = "F")]
    cn_threshold: Option<f64>,

    /// VIF at or above which a regressor is flagged.
    #[arg(long, value_name = "F")]
    vif_threshold: Option<f64>,

    /// Absolute pairwise correlation at or above which a pair is flagged.
    #[arg(long, value_name = "F")]
    corr_threshold: Option<f64>,

    /// Coefficient of variation below which relative variability is
    /// worryingly low.
    #[arg(long, value_name = "F")]
    cv_threshold: Option<f64>,

    /// Variance decomposition proportion at or above which a coefficient
    /// co-loads on a condition index.
    #[arg(long, value_name = "F")]
    vdp_threshold: Option<f64>,
}

#[derive(Debug, Clone)]
struct RoleArg {
    column: String,
    role: ColumnRole,
}

fn parse_role(s: &str) -> Result<RoleArg, String> {
    let (name, role) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=dummy|quantitative, got {s:?}"))?;
    if name.is_empty() {
        return Err("empty column name in --role".into());
    }
    let role = match role {
        "dummy" => ColumnRole::Dummy,
        "quantitative" => ColumnRole::Quantitative,
        other => return Err(format!("unknown role {other:?} (expected dummy or quantitative)")),
    };
    Ok(RoleArg {
        column: name.to_owned(),
        role,
    })
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn thresholds_from(args: &Args) -> ThresholdConfig {
    let mut t = ThresholdConfig::default();
    if let Some(cn) = args.cn_threshold {
        t.cn_problematic = cn;
        // keep the moderate band below the problematic cutoff
        t.cn_moderate = t.cn_moderate.min(cn);
    }
    if let Some(v) = args.vif_threshold {
        t.vif = v;
    }
    if let Some(c) = args.corr_threshold {
        t.corr = c;
    }
    if let Some(c) = args.cv_threshold {
        t.cv = c;
    }
    if let Some(v) = args.vdp_threshold {
        t.vdp = v;
    }
    t
}

fn run(args: &Args) -> Result<String, Error> {
    let (dataset, dependent) = load_csv(&args.file, &args.dependent)?;
    let dataset = match &args.regressors {
        Some(names) => dataset.select(names)?,
        None => dataset.without(DEFAULT_EXCLUDED),
    };
    let overrides: Vec<RoleOverride> = args
        .roles
        .iter()
        .map(|r| RoleOverride {
            column: r.column.clone(),
            role: r.role,
        })
        .collect();
    let roles = infer_roles(&dataset, &overrides)?;
    let design = DesignMatrix::build(&dataset, &roles, !args.no_intercept)?;
    let options = DiagnoseOptions {
        thresholds: thresholds_from(args),
        include_dummies_in_legacy_measures: args.include_dummies_in_legacy_measures,
        dataset_label: args.file.display().to_string(),
    };
    let report = diagnose(&design, Some(&dependent), &options)?;
    Ok(render(&report, args.format))
}

fn exit_code_for(error: &Error) -> ExitCode {
    if error.is_numerical() {
        ExitCode::from(3)
    } else if matches!(error, Error::InvalidThresholds(_)) {
        ExitCode::from(1)
    } else {
        ExitCode::from(2)
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&args) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
