use biprestar::bounds::{self, a2_denominator};
use biprestar::{BoundReport, ClassParams, FeketeSzegoReport, VerifyReport};
use serde::{Deserialize, Serialize};

use crate::config::Format;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsView {
    pub lambda: f64,
    pub alpha: f64,
    pub t: f64,
    pub class: String,
}

impl ParamsView {
    pub fn of(p: &ClassParams) -> Self {
        Self { lambda: p.lambda(), alpha: p.alpha(), t: p.t(), class: p.class_name().to_owned() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsView {
    pub a2_bound: Option<f64>,
    pub a3_bound: f64,
    pub exclusion_t: Option<f64>,
    pub degenerate: bool,
    pub psi2: f64,
    pub psi3: f64,
    pub denominator: f64,
}

impl BoundsView {
    pub fn of(p: &ClassParams, r: &BoundReport) -> Self {
        Self {
            a2_bound: r.a2_bound,
            a3_bound: r.a3_bound,
            exclusion_t: r.exclusion_t,
            degenerate: r.degenerate,
            psi2: p.psi2(),
            psi3: p.psi3(),
            denominator: a2_denominator(p),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub t: f64,
    pub mu: Option<f64>,
    pub a2_bound: Option<f64>,
    pub a3_bound: f64,
    pub fekete: Option<f64>,
    pub branch: Option<bounds::Branch>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepView {
    pub axis: String,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    pub version: String,
}

/// The JSON document every command emits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub params: Option<ParamsView>,
    pub bounds: Option<BoundsView>,
    pub fekete: Option<FeketeSzegoReport>,
    pub verify: Option<Vec<VerifyReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepView>,
    pub meta: Meta,
}

impl Document {
    pub fn new(seed: u64) -> Self {
        Self {
            params: None,
            bounds: None,
            fekete: None,
            verify: None,
            sweep: None,
            meta: Meta { seed, version: env!("CARGO_PKG_VERSION").to_owned() },
        }
    }

    pub fn render(&self, format: Format) -> Result<String, Box<dyn std::error::Error>> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => self.csv(),
            Format::Table => Ok(self.table()),
        }
    }

    fn csv(&self) -> Result<String, Box<dyn std::error::Error>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        if let Some(s) = &self.sweep {
            w.write_record([s.axis.as_str(), "lambda", "alpha", "t", "mu", "a2_bound", "a3_bound", "fekete", "branch", "degenerate"])?;
            for r in &s.rows {
                w.write_record([
                    r.value.to_string(),
                    r.lambda.to_string(),
                    r.alpha.to_string(),
                    r.t.to_string(),
                    opt(r.mu),
                    opt(r.a2_bound),
                    r.a3_bound.to_string(),
                    opt(r.fekete),
                    r.branch.map(|b| b.to_string()).unwrap_or_default(),
                    r.degenerate.to_string(),
                ])?;
            }
        } else if let Some(runs) = &self.verify {
            w.write_record([
                "lambda", "alpha", "t", "mu", "mode", "seed", "count", "samples", "max_ratio_a2", "max_ratio_a3",
                "max_ratio_fs", "violation_count",
            ])?;
            for r in runs {
                w.write_record([
                    r.params.lambda().to_string(),
                    r.params.alpha().to_string(),
                    r.params.t().to_string(),
                    opt(r.mu),
                    r.mode.to_string(),
                    r.seed.to_string(),
                    r.count.to_string(),
                    r.samples.to_string(),
                    r.max_ratio_a2.to_string(),
                    r.max_ratio_a3.to_string(),
                    opt(r.max_ratio_fs),
                    r.violation_count.to_string(),
                ])?;
            }
        } else if let (Some(p), Some(f)) = (&self.params, &self.fekete) {
            w.write_record(["lambda", "alpha", "t", "mu", "value", "branch", "h_mu", "threshold"])?;
            w.write_record([
                p.lambda.to_string(),
                p.alpha.to_string(),
                p.t.to_string(),
                f.mu.to_string(),
                f.value.to_string(),
                f.branch.to_string(),
                f.h_mu.to_string(),
                f.threshold.to_string(),
            ])?;
        } else if let (Some(p), Some(b)) = (&self.params, &self.bounds) {
            w.write_record(["lambda", "alpha", "t", "class", "a2_bound", "a3_bound", "exclusion_t", "degenerate"])?;
            w.write_record([
                p.lambda.to_string(),
                p.alpha.to_string(),
                p.t.to_string(),
                p.class.clone(),
                opt(b.a2_bound),
                b.a3_bound.to_string(),
                opt(b.exclusion_t),
                b.degenerate.to_string(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k:<13}{v}\n"));
        let opt = |x: Option<f64>| x.map_or_else(|| "-".to_owned(), |v| v.to_string());

        if let Some(p) = &self.params {
            line("class", p.class.clone());
            line("lambda", p.lambda.to_string());
            line("alpha", p.alpha.to_string());
            line("t", p.t.to_string());
        }
        if let Some(b) = &self.bounds {
            line("a2_bound", opt(b.a2_bound));
            line("a3_bound", b.a3_bound.to_string());
            line("exclusion_t", opt(b.exclusion_t));
            line("degenerate", b.degenerate.to_string());
        }
        if let Some(f) = &self.fekete {
            line("mu", f.mu.to_string());
            line("value", f.value.to_string());
            line("branch", f.branch.to_string());
            line("h_mu", f.h_mu.to_string());
            line("threshold", f.threshold.to_string());
        }
        if let Some(runs) = &self.verify {
            out.push_str(&format!(
                "{:>6} {:>6} {:>6} {:>6} {:>9} {:>12} {:>12} {:>12} {:>10}\n",
                "lambda", "alpha", "t", "mu", "samples", "ratio_a2", "ratio_a3", "ratio_fs", "violations"
            ));
            for r in runs {
                out.push_str(&format!(
                    "{:>6} {:>6} {:>6} {:>6} {:>9} {:>12.9} {:>12.9} {:>12} {:>10}\n",
                    r.params.lambda(),
                    r.params.alpha(),
                    r.params.t(),
                    r.mu.map_or_else(|| "-".to_owned(), |m| m.to_string()),
                    r.samples,
                    r.max_ratio_a2,
                    r.max_ratio_a3,
                    r.max_ratio_fs.map_or_else(|| "-".to_owned(), |x| format!("{x:.9}")),
                    r.violation_count,
                ));
            }
        }
        if let Some(s) = &self.sweep {
            out.push_str(&format!(
                "{:>12} {:>20} {:>20} {:>20} {:>6}\n",
                s.axis, "a2_bound", "a3_bound", "fekete", "degen"
            ));
            for r in &s.rows {
                out.push_str(&format!(
                    "{:>12} {:>20} {:>20} {:>20} {:>6}\n",
                    r.value,
                    opt(r.a2_bound),
                    r.a3_bound,
                    opt(r.fekete),
                    r.degenerate
                ));
            }
        }
        out
    }
}
