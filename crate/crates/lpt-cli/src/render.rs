//! Output rendering: aligned text, RFC-4180 CSV and a stable JSON schema.

use clap::ValueEnum;
use lpt_core::Rational;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignConvention {
    /// Report the energy E itself.
    Energy,
    /// Report the binding energy -E, the sign bound-state tables print.
    Binding,
}

impl SignConvention {
    pub fn apply(&self, value: &Rational) -> Rational {
        match self {
            SignConvention::Energy => value.clone(),
            SignConvention::Binding => -value,
        }
    }

    pub fn apply_f64(&self, value: f64) -> f64 {
        match self {
            SignConvention::Energy => value,
            SignConvention::Binding => -value,
        }
    }
}

/// One rendered series job: corrections, partial sums and an optional
/// numerically solved reference eigenvalue.
pub struct SeriesOutput {
    pub family: &'static str,
    pub n: u32,
    pub l: u32,
    pub order: usize,
    pub digits: usize,
    /// `(k, E_k)` with the raw energy sign.
    pub corrections: Vec<(usize, Rational)>,
    /// `(K, partial sum)` with the sign convention already applied.
    pub partial_sums: Vec<(usize, Rational)>,
    /// Numeric eigenvalue, sign convention already applied.
    pub oracle: Option<f64>,
}

impl SeriesOutput {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Pretty => self.pretty(),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "family: {}   n={}  l={}  K={}\n",
            self.family, self.n, self.l, self.order
        ));
        out.push_str("  k  E_k\n");
        for (k, value) in &self.corrections {
            out.push_str(&format!(
                " {k:>2}  {value}  ({})\n",
                value.to_decimal(self.digits)
            ));
        }
        out.push_str("  K  partial sum\n");
        for (k, value) in &self.partial_sums {
            out.push_str(&format!(" {k:>2}  {}\n", value.to_decimal(self.digits)));
        }
        if let Some(oracle) = self.oracle {
            out.push_str(&format!("num  {}\n", format_f64(oracle, self.digits)));
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        out.push_str("k,numerator,denominator,decimal,partial_sum\n");
        for (k, value) in &self.corrections {
            let partial = self
                .partial_sums
                .iter()
                .find(|(pk, _)| pk == k)
                .map(|(_, sum)| sum.to_decimal(self.digits))
                .unwrap_or_default();
            out.push_str(&format!(
                "{k},{},{},{},{partial}\n",
                csv_field(&value.numer().to_string()),
                csv_field(&value.denom().to_string()),
                value.to_decimal(self.digits),
            ));
        }
        if let Some(oracle) = self.oracle {
            out.push_str(&format!("oracle,,,{},\n", format_f64(oracle, self.digits)));
        }
        out
    }

    fn json(&self) -> String {
        let corrections: Vec<Value> = self
            .corrections
            .iter()
            .map(|(k, value)| rational_entry(*k, value, self.digits))
            .collect();
        let partial_sums: Vec<Value> = self
            .partial_sums
            .iter()
            .map(|(k, value)| rational_entry(*k, value, self.digits))
            .collect();
        let mut value = json!({
            "family": self.family,
            "n": self.n,
            "l": self.l,
            "K": self.order,
            "corrections": corrections,
            "partial_sums": partial_sums,
        });
        if let Some(oracle) = self.oracle {
            value["oracle"] = Value::String(format_f64(oracle, self.digits));
        }
        to_pretty(&value)
    }
}

pub fn rational_entry(k: usize, value: &Rational, digits: usize) -> Value {
    json!({
        "k": k,
        "numerator": value.numer().to_string(),
        "denominator": value.denom().to_string(),
        "decimal": value.to_decimal(digits),
    })
}

/// Fixed-point rendering of the oracle double at the table digit count.
pub fn format_f64(value: f64, digits: usize) -> String {
    format!("{value:.digits$}")
}

/// RFC-4180: quote fields containing commas, quotes or newlines.
pub fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

pub fn to_pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON serialization cannot fail")
}
