use std::str::FromStr;

use super::ExperimentReport;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<ReportFormat> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(Error::parse(format!("unknown report format {s:?}"))),
        }
    }
}

/// JSON is lossless; CSV has one row per bucket; Markdown prints only the
/// digits each height's radius certifies.
pub fn emit_report(r: &ExperimentReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("serializable");
            s.push('\n');
            s
        }
        ReportFormat::Csv => csv_doc(r),
        ReportFormat::Markdown => markdown(r),
    }
}

fn csv_doc(r: &ExperimentReport) -> String {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(["lower", "upper", "count"]).expect("in-memory write");
    for b in &r.buckets {
        w.write_record([b.lower.to_string(), b.upper.to_string(), b.count.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

fn markdown(r: &ExperimentReport) -> String {
    let mut s = String::from("# Finiteness census\n\n");
    s += &format!("- target: `{}`\n", serde_json::to_string(&r.config.target).expect("serializable"));
    s += &format!("- degree cap: {}\n", r.config.degree_cap);
    s += &format!("- cutoff: {}\n", r.config.cutoff);
    s += &format!("- height: {:?}\n", r.height);
    s += &format!(
        "- soundness: {}\n",
        serde_json::to_value(r.soundness).expect("serializable").as_str().unwrap_or("")
    );
    s += &format!("- total: {}\n", r.total);
    s += &format!("- candidates examined: {}\n", r.candidates_examined);
    s += &format!("- undecided: {}\n", r.undecided);
    if let Some(b) = r.cutoff_below_threshold {
        s += &format!("- cutoff below threshold: {b}\n");
    }
    for n in &r.notes {
        s += &format!("- note: {n}\n");
    }
    if !r.buckets.is_empty() {
        s += "\n| lower | upper | count |\n|---|---|---|\n";
        for b in &r.buckets {
            s += &format!("| {:.4} | {:.4} | {} |\n", b.lower, b.upper, b.count);
        }
    }
    if !r.witnesses.is_empty() {
        s += "\n| object | degree | height |\n|---|---|---|\n";
        for w in &r.witnesses {
            let h = if w.height.rad == "0" {
                w.height.mid.clone()
            } else {
                format!("{} ± {}", w.height.mid, w.height.rad)
            };
            s += &format!("| `{}` | {} | {} |\n", w.object, w.degree, h);
        }
        if r.witnesses_truncated {
            s += &format!("\n{} more witnesses omitted.\n", r.total - r.witnesses.len());
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::{run_finiteness_experiment, ExperimentConfig};
    use crate::northcott::HeightCap;

    #[test]
    fn formats() {
        let cfg = ExperimentConfig::rational_points(1, 1, HeightCap::log(2));
        let e = ExperimentReport::empty(cfg.clone());
        let j = emit_report(&e, ReportFormat::Json);
        assert_eq!(serde_json::from_str::<ExperimentReport>(&j).unwrap(), e);
        assert_eq!(emit_report(&e, ReportFormat::Csv), "lower,upper,count\n");
        assert!(emit_report(&e, ReportFormat::Markdown).starts_with("# Finiteness census"));

        let r = run_finiteness_experiment(&cfg).unwrap();
        let j = emit_report(&r, ReportFormat::Json);
        let back: ExperimentReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
        assert_eq!(emit_report(&back, ReportFormat::Json), j);
        assert_eq!(emit_report(&r, ReportFormat::Csv).lines().count(), 5);
        let md = emit_report(&r, ReportFormat::Markdown);
        assert!(md.contains("| `[\"-2\",\"1\"]` | 1 |"), "{md}");
    }
}
