use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use tempfile::NamedTempFile;

use lcflat::verify::{SuiteReport, VerificationReport, Verdict};
use lcflat::Point;

use crate::{Common, Failure, Format};

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    /// Empty for the Levi-Civita Ricci-flat metric.
    pub lambda: Option<f64>,
    pub identity: String,
    pub max_residual: f64,
    pub verdict: Verdict,
}

pub enum Payload<'a> {
    Report(&'a VerificationReport),
    Suite(&'a SuiteReport),
    Sweep(&'a [SweepRow]),
    Samples(&'a [Point]),
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    }
}

fn json(payload: &Payload) -> serde_json::Result<String> {
    let mut s = match payload {
        Payload::Report(r) => serde_json::to_string_pretty(r)?,
        Payload::Suite(r) => serde_json::to_string_pretty(r)?,
        Payload::Sweep(rows) => serde_json::to_string_pretty(rows)?,
        Payload::Samples(pts) => serde_json::to_string_pretty(pts)?,
    };
    s.push('\n');
    Ok(s)
}

fn point_header(n: usize) -> Vec<String> {
    (1..=n).flat_map(|i| [format!("z{i}_re"), format!("z{i}_im")]).collect()
}

fn point_fields(p: &Point) -> Vec<String> {
    p.coords.iter().flat_map(|c| [c.re.to_string(), c.im.to_string()]).collect()
}

fn csv(payload: &Payload) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match payload {
        Payload::Report(r) => {
            let n = r.stats.argmax.n();
            let mut header = vec!["index".to_string()];
            header.extend(point_header(n));
            header.push("residual".into());
            w.write_record(&header)?;
            for pr in &r.per_point {
                let mut rec = vec![pr.index.to_string()];
                rec.extend(point_fields(&pr.point));
                rec.push(pr.residual.to_string());
                w.write_record(&rec)?;
            }
        }
        Payload::Suite(r) => {
            w.write_record(["identity", "metric", "expect", "verdict", "max_residual", "as_expected"])?;
            for e in &r.results {
                w.write_record([
                    e.check.identity.tag().to_string(),
                    e.check.metric.to_string(),
                    verdict_str(e.expect).to_string(),
                    e.verdict.map(verdict_str).unwrap_or("error").to_string(),
                    e.max_residual.map(|m| m.to_string()).unwrap_or_default(),
                    e.as_expected.to_string(),
                ])?;
            }
        }
        Payload::Sweep(rows) => {
            w.write_record(["a", "b", "alpha", "lambda", "identity", "max_residual", "verdict"])?;
            for r in rows.iter() {
                w.write_record([
                    r.a.to_string(),
                    r.b.to_string(),
                    r.alpha.to_string(),
                    r.lambda.map(|l| l.to_string()).unwrap_or_default(),
                    r.identity.clone(),
                    r.max_residual.to_string(),
                    verdict_str(r.verdict).to_string(),
                ])?;
            }
        }
        Payload::Samples(pts) => {
            let n = pts.first().map_or(2, |p| p.n());
            let mut header = vec!["index".to_string()];
            header.extend(point_header(n));
            w.write_record(&header)?;
            for (i, p) in pts.iter().enumerate() {
                let mut rec = vec![i.to_string()];
                rec.extend(point_fields(p));
                w.write_record(&rec)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn pretty_point(p: &Point) -> String {
    let coords: Vec<String> = p.coords.iter().map(|c| format!("{:+.12}{:+.12}i", c.re, c.im)).collect();
    coords.join("  ")
}

fn pretty(payload: &Payload) -> String {
    let mut s = String::new();
    match payload {
        Payload::Report(r) => {
            let _ = writeln!(s, "identity   {}", r.check.identity);
            let _ = writeln!(s, "metric     {}", r.check.metric);
            let _ = writeln!(s, "points     {} evaluated, {} skipped (seed {})", r.stats.n_evaluated, r.stats.n_failed, r.check.seed);
            let _ = writeln!(s, "residual   max {:.3e}  mean {:.3e}  tol {:.1e}", r.stats.max, r.stats.mean, r.check.tol);
            let _ = writeln!(s, "argmax     #{} {}", r.stats.argmax_index, pretty_point(&r.stats.argmax));
            for w in &r.warnings {
                let _ = writeln!(s, "warning    {w}");
            }
            let _ = writeln!(s, "verdict    {}", verdict_str(r.verdict).to_uppercase());
        }
        Payload::Suite(r) => {
            for e in &r.results {
                let got = e.verdict.map(verdict_str).unwrap_or("error");
                let mark = if e.as_expected { "ok " } else { "BAD" };
                let res = e.max_residual.map(|m| format!("{m:.3e}")).unwrap_or_else(|| e.error.clone().unwrap_or_default());
                let _ = writeln!(s, "{mark} {:<18} {:<4}/{:<4} {:>10}  {}", e.check.identity.tag(), verdict_str(e.expect), got, res, e.check.metric);
            }
            let _ = writeln!(s, "{} entries, {} unexpected", r.results.len(), r.n_unexpected);
        }
        Payload::Sweep(rows) => {
            let _ = writeln!(s, "{:>10} {:>10} {:>10} {:>7} {:>12} verdict", "a", "b", "alpha", "lambda", "max_residual");
            for r in rows.iter() {
                let l = r.lambda.map(|l| l.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "{:>10.6} {:>10.6} {:>10.6} {:>7} {:>12.3e} {}", r.a, r.b, r.alpha, l, r.max_residual, verdict_str(r.verdict));
            }
        }
        Payload::Samples(pts) => {
            for (i, p) in pts.iter().enumerate() {
                let _ = writeln!(s, "{i:>4} {}", pretty_point(p));
            }
        }
    }
    s
}

fn render(fmt: Format, payload: &Payload) -> Result<String, Failure> {
    match fmt {
        Format::Json => json(payload).map_err(|e| Failure::Usage(format!("cannot encode json: {e}"))),
        Format::Csv => csv(payload).map_err(|e| Failure::Usage(format!("cannot encode csv: {e}"))),
        Format::Pretty => Ok(pretty(payload)),
    }
}

/// Writes via a temporary file in the target directory, so a reader never
/// sees a partial report.
fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn write_output(common: &Common, fmt: Format, payload: &Payload) -> Result<(), Failure> {
    let text = render(fmt, payload)?;
    match &common.output {
        Some(path) => write_atomic(path, &text)
            .map_err(|e| Failure::Usage(format!("cannot write `output` {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
