//! Report records and their CSV, JSON and text renderings.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::CliResult;

/// One checked or measured quantity.
///
/// A gated record passes when `|measured - expected| <= bound`, or
/// `measured <= bound` when there is no expected value. Records without a
/// bound are measurements and carry no pass flag.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRecord {
    pub suite: String,
    pub case_id: String,
    pub parameters: String,
    pub measured: f64,
    pub expected: Option<f64>,
    pub bound: Option<f64>,
    pub pass: Option<bool>,
    /// The relation the value refers to.
    pub identity: String,
}

impl ReportRecord {
    pub fn below(suite: &str, case_id: String, parameters: String, measured: f64, bound: f64, identity: &str) -> Self {
        Self {
            suite: suite.into(),
            case_id,
            parameters,
            measured,
            expected: None,
            bound: Some(bound),
            pass: Some(measured <= bound),
            identity: identity.into(),
        }
    }

    pub fn near(
        suite: &str,
        case_id: String,
        parameters: String,
        measured: f64,
        expected: f64,
        bound: f64,
        identity: &str,
    ) -> Self {
        Self {
            suite: suite.into(),
            case_id,
            parameters,
            measured,
            expected: Some(expected),
            bound: Some(bound),
            pass: Some((measured - expected).abs() <= bound),
            identity: identity.into(),
        }
    }

    pub fn measure(suite: &str, case_id: String, parameters: String, measured: f64, identity: &str) -> Self {
        Self {
            suite: suite.into(),
            case_id,
            parameters,
            measured,
            expected: None,
            bound: None,
            pass: None,
            identity: identity.into(),
        }
    }
}

/// One point of the displacement phase sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub q_norm: f64,
    pub p_norm: f64,
    pub slice_flag: &'static str,
    pub residual_kind: &'static str,
    pub value: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub records: Vec<ReportRecord>,
    pub sweep: Vec<SweepRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub gated: usize,
    pub passed: usize,
    pub failed: usize,
    pub measured_only: usize,
}

impl Report {
    pub fn summary(&self) -> Summary {
        let gated = self.records.iter().filter(|r| r.pass.is_some()).count();
        let passed = self.records.iter().filter(|r| r.pass == Some(true)).count();
        Summary { gated, passed, failed: gated - passed, measured_only: self.records.len() - gated }
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass != Some(false))
    }

    pub fn write(&self, config: &ExperimentConfig, dir: &Path) -> CliResult<()> {
        fs::create_dir_all(dir)?;
        self.write_csv(&dir.join("report.csv"))?;
        self.write_sweep(&dir.join("displacement_sweep.csv"))?;
        #[derive(Serialize)]
        struct Json<'a> {
            config: &'a ExperimentConfig,
            summary: Summary,
            records: &'a [ReportRecord],
            sweep: &'a [SweepRow],
        }
        let json = Json { config, summary: self.summary(), records: &self.records, sweep: &self.sweep };
        let mut text = serde_json::to_string_pretty(&json)?;
        text.push('\n');
        fs::write(dir.join("report.json"), text)?;
        fs::write(dir.join("summary.txt"), self.summary_text(config))?;
        Ok(())
    }

    fn write_csv(&self, path: &Path) -> CliResult<()> {
        let mut w = csv_writer(path)?;
        w.write_record(["suite", "case_id", "parameters", "measured", "expected", "bound", "pass", "identity"])?;
        for r in &self.records {
            w.write_record([
                r.suite.clone(),
                r.case_id.clone(),
                r.parameters.clone(),
                float(r.measured),
                r.expected.map(float).unwrap_or_default(),
                r.bound.map(float).unwrap_or_default(),
                r.pass.map(|p| p.to_string()).unwrap_or_default(),
                r.identity.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_sweep(&self, path: &Path) -> CliResult<()> {
        let mut w = csv_writer(path)?;
        w.write_record(["|q|", "|p|", "slice_flag", "residual_kind", "value"])?;
        for s in &self.sweep {
            w.write_record([
                float(s.q_norm),
                float(s.p_norm),
                s.slice_flag.into(),
                s.residual_kind.into(),
                float(s.value),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    fn summary_text(&self, config: &ExperimentConfig) -> String {
        let s = self.summary();
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", config.suite.name());
        let _ = writeln!(out, "seed: {}", config.seed);
        let _ = writeln!(out, "dim: {}", config.dim);
        let _ = writeln!(out, "gated: {} passed, {} failed; measured only: {}", s.passed, s.failed, s.measured_only);
        let mut suites: Vec<&str> = self.records.iter().map(|r| r.suite.as_str()).collect();
        suites.dedup();
        for name in suites {
            let rs: Vec<_> = self.records.iter().filter(|r| r.suite == name).collect();
            let fail = rs.iter().filter(|r| r.pass == Some(false)).count();
            let gated = rs.iter().filter(|r| r.pass.is_some()).count();
            let _ = writeln!(out, "  {name}: {}/{gated} gated records pass", gated - fail);
        }
        let failures: Vec<_> = self.records.iter().filter(|r| r.pass == Some(false)).collect();
        if !failures.is_empty() {
            let _ = writeln!(out, "failed records:");
            for r in failures {
                let want = match r.expected {
                    Some(e) => format!("expected {} within {}", float(e), float(r.bound.unwrap_or(0.0))),
                    None => format!("bound {}", float(r.bound.unwrap_or(0.0))),
                };
                let _ = writeln!(
                    out,
                    "  {} [{}] measured {}, {want}: {}",
                    r.case_id,
                    r.suite,
                    float(r.measured),
                    r.identity
                );
            }
        }
        out
    }
}

fn csv_writer(path: &Path) -> CliResult<csv::Writer<fs::File>> {
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path)?)
}

/// 17 significant digits in scientific notation.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}
