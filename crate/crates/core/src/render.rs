//! Text and JSON rendering of a diagnostics report.
//!
//! Both formats are deterministic: the same report renders to identical
//! bytes every time, and the JSON parses back into [`DiagnosticsReport`]
//! and re-renders unchanged.

use std::fmt::Write as _;

use crate::diagnose::{DiagnosticsReport, MeasureOutcome, VariabilityEntry, VerdictKind};
use crate::measures::{SlmVariability, VifEntry};

/// Output format for [`render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected text or json)")),
        }
    }
}

/// Renders a report to its byte representation (UTF-8 text in both modes).
pub fn render(report: &DiagnosticsReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .expect("report serialization cannot fail: no non-finite numbers are stored");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

/// Formats with six significant digits; scientific notation outside
/// [1e-4, 1e6).
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0.00000".into();
    }
    let a = v.abs();
    if !(1e-4..1e6).contains(&a) {
        return format!("{v:.5e}");
    }
    let digits_before = a.log10().floor() as i32 + 1;
    let decimals = (6 - digits_before).max(0) as usize;
    format!("{v:.decimals$}")
}

fn pad_left(s: &str, width: usize) -> String {
    format!("{s:>width$}")
}

fn pad_right(s: &str, width: usize) -> String {
    format!("{s:<width$}")
}

/// Renders rows as a table: first column left-aligned, the rest right-aligned.
fn table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::from(" ");
        for (i, cell) in row.iter().enumerate() {
            line.push(' ');
            if i == 0 {
                line.push_str(&pad_right(cell, widths[i]));
            } else {
                line.push_str(&pad_left(cell, widths[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_text(report: &DiagnosticsReport) -> String {
    let mut out = String::new();
    let t = &report.thresholds;

    let _ = writeln!(out, "Collinearity diagnostics: {}", report.dataset);
    let _ = writeln!(
        out,
        "n = {} observations, k = {} design columns",
        report.n, report.k
    );
    let columns = report
        .columns
        .iter()
        .map(|c| format!("{} [{}]", c.name, c.role))
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(out, "columns: {columns}");
    if report.legacy_dummy_measures {
        let _ = writeln!(
            out,
            "legacy mode: dummy columns included in correlation matrix and VIF table"
        );
    }
    out.push('\n');

    if let Some(r2) = report.model_r_squared {
        let _ = writeln!(out, "Model fit");
        let _ = writeln!(out, "  R-squared of dependent on all columns: {}", sig6(r2));
        out.push('\n');
    }

    let _ = writeln!(out, "Condition number (unit-length scaling)");
    let _ = writeln!(
        out,
        "  with intercept:    {}",
        sig6(report.condition_number_with_intercept)
    );
    let _ = writeln!(
        out,
        "  without intercept: {}",
        sig6(report.condition_number_without_intercept)
    );
    out.push('\n');

    match &report.correlation {
        MeasureOutcome::Computed { value } => {
            let _ = writeln!(out, "Correlation matrix");
            let mut rows: Vec<Vec<String>> = Vec::new();
            let mut header = vec![String::new()];
            header.extend(value.names.iter().cloned());
            rows.push(header);
            for (i, name) in value.names.iter().enumerate() {
                let mut row = vec![name.clone()];
                row.extend(value.matrix[i].iter().map(|v| sig6(*v)));
                rows.push(row);
            }
            out.push_str(&table(&rows));
            let _ = writeln!(out, "  determinant: {}", sig6(value.determinant));
            if value.flagged_pairs.is_empty() {
                let _ = writeln!(out, "  flagged pairs (|r| >= {}): none", sig6(value.threshold));
            } else {
                let _ = writeln!(out, "  flagged pairs (|r| >= {}):", sig6(value.threshold));
                for pair in &value.flagged_pairs {
                    let _ = writeln!(
                        out,
                        "    {} ~ {} |r| = {}",
                        pair.first,
                        pair.second,
                        sig6(pair.abs_correlation)
                    );
                }
            }
        }
        MeasureOutcome::NotApplicable { reason } => {
            let _ = writeln!(out, "Correlation matrix: not applicable ({reason})");
        }
    }
    out.push('\n');

    match &report.vif {
        MeasureOutcome::Computed { value } => {
            let _ = writeln!(out, "Variance inflation factors");
            let mut rows = vec![vec![
                "column".to_string(),
                "aux R-squared".to_string(),
                "VIF".to_string(),
            ]];
            for entry in &value.entries {
                match entry {
                    VifEntry::Applicable {
                        name,
                        aux_r_squared,
                        vif,
                    } => rows.push(vec![name.clone(), sig6(*aux_r_squared), sig6(*vif)]),
                    VifEntry::Infinite {
                        name,
                        aux_r_squared,
                    } => rows.push(vec![
                        name.clone(),
                        sig6(*aux_r_squared),
                        "infinite".to_string(),
                    ]),
                    VifEntry::NotApplicable { name, reason } => {
                        rows.push(vec![name.clone(), format!("not applicable: {reason}"), String::new()])
                    }
                }
            }
            out.push_str(&table(&rows));
        }
        MeasureOutcome::NotApplicable { reason } => {
            let _ = writeln!(out, "Variance inflation factors: not applicable ({reason})");
        }
    }
    out.push('\n');

    match &report.stewart {
        MeasureOutcome::Computed { value } => {
            let _ = writeln!(out, "Stewart indices (unit-length design, intercept included)");
            let mut rows = vec![vec!["column".to_string(), "kappa^2".to_string()]];
            for e in &value.entries {
                rows.push(vec![e.name.clone(), sig6(e.kappa_squared)]);
            }
            out.push_str(&table(&rows));
        }
        MeasureOutcome::NotApplicable { reason } => {
            let _ = writeln!(out, "Stewart indices: not applicable ({reason})");
        }
    }
    out.push('\n');

    match &report.belsley {
        MeasureOutcome::Computed { value } => {
            let _ = writeln!(out, "Belsley variance decomposition");
            let mut rows: Vec<Vec<String>> = Vec::new();
            let mut header = vec!["index".to_string()];
            header.extend(value.column_names.iter().cloned());
            rows.push(header);
            for (i, idx) in value.condition_indexes.iter().enumerate() {
                let mut row = vec![sig6(*idx)];
                row.extend(value.vdp[i].iter().map(|v| sig6(*v)));
                rows.push(row);
            }
            out.push_str(&table(&rows));
        }
        MeasureOutcome::NotApplicable { reason } => {
            let _ = writeln!(out, "Belsley variance decomposition: not applicable ({reason})");
        }
    }
    out.push('\n');

    let _ = writeln!(out, "Variability screen");
    let mut rows = vec![vec![
        "column".to_string(),
        "measure".to_string(),
        "value".to_string(),
    ]];
    for entry in &report.variability.entries {
        match entry {
            VariabilityEntry::CoefficientOfVariation { name, value } => {
                let note = if *value < t.cv {
                    format!("{} (below {})", sig6(*value), sig6(t.cv))
                } else {
                    sig6(*value)
                };
                rows.push(vec![name.clone(), "cv".to_string(), note]);
            }
            VariabilityEntry::ProportionOfOnes { name, value } => rows.push(vec![
                name.clone(),
                "proportion of ones".to_string(),
                sig6(*value),
            ]),
            VariabilityEntry::Unavailable { name, reason } => rows.push(vec![
                name.clone(),
                "unavailable".to_string(),
                reason.clone(),
            ]),
        }
    }
    out.push_str(&table(&rows));
    out.push('\n');

    if let Some(slm) = &report.slm {
        let _ = writeln!(
            out,
            "Simple linear model diagnostics ({} [{}])",
            slm.regressor, slm.regressor_role
        );
        let _ = writeln!(out, "  condition number: {}", sig6(slm.cn_with_intercept));
        let _ = writeln!(
            out,
            "  Stewart indices:  {} (intercept), {} ({})",
            sig6(slm.stewart_intercept),
            sig6(slm.stewart_regressor),
            slm.regressor
        );
        match &slm.variability {
            SlmVariability::CoefficientOfVariation { value } => {
                let _ = writeln!(out, "  coefficient of variation: {}", sig6(*value));
            }
            SlmVariability::ProportionOfOnes { value } => {
                let _ = writeln!(out, "  proportion of ones: {}", sig6(*value));
            }
            SlmVariability::Unavailable { reason } => {
                let _ = writeln!(out, "  variability: unavailable ({reason})");
            }
        }
        if let Some(cn) = slm.closed_form_cn {
            let _ = writeln!(out, "  closed-form dummy condition number: {}", sig6(cn));
        }
        out.push('\n');
    }

    match report.verdict.kind {
        VerdictKind::None => {
            let _ = writeln!(out, "No problematic multicollinearity detected");
            let cn = report.condition_number_with_intercept;
            if cn >= t.cn_moderate && cn < t.cn_problematic {
                let _ = writeln!(
                    out,
                    "note: condition number {} sits in the moderate band [{}, {})",
                    sig6(cn),
                    sig6(t.cn_moderate),
                    sig6(t.cn_problematic)
                );
            }
        }
        kind => {
            let label = match kind {
                VerdictKind::Essential => "essential",
                VerdictKind::NonEssential => "non-essential",
                VerdictKind::Both => "essential and non-essential",
                VerdictKind::None => unreachable!(),
            };
            let _ = writeln!(out, "Verdict: {label} multicollinearity");
            for set in &report.verdict.implicated {
                let _ = writeln!(out, "  implicated: {{{}}}", set.join(", "));
            }
            if !report.verdict.evidence.is_empty() {
                let _ = writeln!(out, "  evidence:");
                for e in &report.verdict.evidence {
                    let _ = writeln!(
                        out,
                        "    {} = {} (threshold {})",
                        e.measure,
                        sig6(e.value),
                        sig6(e.threshold)
                    );
                }
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig6_examples() {
        assert_eq!(sig6(53.39671), "53.3967");
        assert_eq!(sig6(427.445968), "427.446");
        assert_eq!(sig6(0.17884669), "0.178847");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(0.051474557561), "0.0514746");
        assert_eq!(sig6(0.0), "0.00000");
        assert_eq!(sig6(-9.972766), "-9.97277");
        assert_eq!(sig6(2_000_000.0), "2.00000e6");
    }

    #[test]
    fn format_parses() {
        assert_eq!("text".parse::<Format>().unwrap(), Format::Text);
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("yaml".parse::<Format>().is_err());
    }
}
