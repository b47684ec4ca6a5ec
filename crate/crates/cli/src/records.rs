use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use smallball::mc::McResult;
use smallball::ProbEstimate;

/// Column order of estimate records.
pub const COLUMNS: [&str; 12] =
    ["r", "method", "logP", "logDensity", "error_indicator", "K_r", "sbar", "terms_k", "h", "p_hat", "ci_low", "ci_high"];

/// One row of output: one method at one `r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub r: f64,
    pub method: String,
    #[serde(rename = "logP")]
    pub log_p: f64,
    #[serde(rename = "logDensity")]
    pub log_density: Option<f64>,
    pub error_indicator: f64,
    #[serde(rename = "K_r")]
    pub k_r: Option<f64>,
    pub sbar: Option<f64>,
    pub terms_k: Option<usize>,
    pub h: Option<f64>,
    pub p_hat: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    /// `logP` minus the saddle `logP`; `compare` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
}

impl From<&ProbEstimate<f64>> for Record {
    fn from(e: &ProbEstimate<f64>) -> Self {
        Self {
            r: e.r,
            method: e.method.name().to_string(),
            log_p: e.log_p,
            log_density: e.log_density,
            error_indicator: e.error_indicator,
            k_r: e.k_r,
            sbar: e.sbar,
            terms_k: e.terms_k,
            h: e.h,
            p_hat: e.mc.map(|m| m.p_hat),
            ci_low: e.mc.map(|m| m.ci_low),
            ci_high: e.mc.map(|m| m.ci_high),
            gap: None,
        }
    }
}

impl From<&McResult<f64>> for Record {
    fn from(m: &McResult<f64>) -> Self {
        Record::from(&m.to_estimate())
    }
}

/// 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn json_num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(x.to_string())
    }
}

impl Record {
    fn csv_fields(&self) -> Vec<String> {
        let mut out = vec![
            fmt_num(self.r),
            self.method.clone(),
            fmt_num(self.log_p),
            fmt_opt(self.log_density),
            fmt_num(self.error_indicator),
            fmt_opt(self.k_r),
            fmt_opt(self.sbar),
            self.terms_k.map(|k| k.to_string()).unwrap_or_default(),
            fmt_opt(self.h),
            fmt_opt(self.p_hat),
            fmt_opt(self.ci_low),
            fmt_opt(self.ci_high),
        ];
        if let Some(g) = self.gap {
            out.push(fmt_num(g));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let opt = |x: Option<f64>| x.map(json_num).unwrap_or(Value::Null);
        let mut v = json!({
            "r": json_num(self.r),
            "method": self.method,
            "logP": json_num(self.log_p),
            "logDensity": opt(self.log_density),
            "error_indicator": json_num(self.error_indicator),
            "K_r": opt(self.k_r),
            "sbar": opt(self.sbar),
            "terms_k": self.terms_k,
            "h": opt(self.h),
            "p_hat": opt(self.p_hat),
            "ci_low": opt(self.ci_low),
            "ci_high": opt(self.ci_high),
        });
        if let Some(g) = self.gap {
            v["gap"] = json_num(g);
        }
        v
    }
}

/// Records as CSV; a `gap` column is added when any record carries one.
pub fn write_csv<W: Write>(out: W, records: &[Record]) -> csv::Result<()> {
    let with_gap = records.iter().any(|r| r.gap.is_some());
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = COLUMNS.to_vec();
    if with_gap {
        header.push("gap");
    }
    w.write_record(&header)?;
    for rec in records {
        let mut fields = rec.csv_fields();
        if with_gap && rec.gap.is_none() {
            fields.push(String::new());
        }
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> csv::Result<Vec<Record>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// A generic two-column table, used for constants.
pub fn write_pairs<W: Write>(out: W, pairs: &[(String, f64)]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["name", "value"])?;
    for (k, v) in pairs {
        w.write_record([k.as_str(), &fmt_num(*v)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn pairs_json(pairs: &[(String, f64)]) -> Value {
    Value::Array(pairs.iter().map(|(k, v)| json!({"name": k, "value": json_num(*v)})).collect())
}
