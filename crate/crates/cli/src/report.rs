use biext_core::degeneration::{
    Sample, CSV_HEADER, MAX_CONDITION, MIN_FIT_DECADES, MIN_FIT_SAMPLES,
};
use biext_core::modular::{DELTA_TAIL, SYMMETRY_TOL, THETA_TAIL_LOG};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::args::Format;

/// Everything a subcommand emits.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub schedule: Option<Value>,
    pub fields: Map<String, Value>,
    pub samples: Option<Vec<Sample>>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            schedule: None,
            fields: Map::new(),
            samples: None,
        }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn merge(mut self, value: Value) -> Self {
        if let Value::Object(m) = value {
            self.fields.extend(m);
        }
        self
    }

    pub fn schedule(mut self, schedule: Value) -> Self {
        self.schedule = Some(schedule);
        self
    }

    pub fn samples(mut self, samples: Vec<Sample>) -> Self {
        self.samples = Some(samples);
        self
    }

    fn metadata(&self) -> Value {
        json!({
            "tool": "biext",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "cutoffs": {
                "delta_tail": DELTA_TAIL,
                "theta_tail_log": THETA_TAIL_LOG,
                "symmetry_tol": SYMMETRY_TOL,
                "fit_max_condition": MAX_CONDITION,
                "fit_min_samples": MIN_FIT_SAMPLES,
                "fit_min_decades": MIN_FIT_DECADES,
            },
            "schedule": self.schedule.clone().unwrap_or(Value::Null),
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_json(&self) -> String {
        let mut doc = Map::new();
        doc.insert("metadata".into(), self.metadata());
        doc.extend(self.fields.clone());
        if let Some(samples) = &self.samples {
            let rows: Vec<Value> = samples
                .iter()
                .map(|s| json!({"t": s.t_string(), "log_t": s.log_abs_t, "loglog_t": s.loglog(), "value": s.value}))
                .collect();
            doc.insert("samples".into(), rows.into());
        }
        let mut out =
            serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
        out.push('\n');
        out
    }

    /// Metadata and scalar fields become `# key: json` comment lines; the
    /// sample table (or a key/value table) follows.
    fn render_csv(&self) -> String {
        let mut out = String::new();
        if let Value::Object(meta) = self.metadata() {
            for (k, v) in meta {
                out.push_str(&format!("# {k}: {v}\n"));
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.samples {
            Some(samples) => {
                for (k, v) in &self.fields {
                    out.push_str(&format!("# {k}: {v}\n"));
                }
                w.write_record(CSV_HEADER).expect("in-memory write");
                for s in samples {
                    w.write_record(s.csv_record()).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["key", "value"]).expect("in-memory write");
                for (k, v) in &self.fields {
                    let cell = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    w.write_record([k.as_str(), cell.as_str()])
                        .expect("in-memory write");
                }
            }
        }
        out.push_str(
            &String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 CSV"),
        );
        out
    }
}

/// A JSON number when it fits in `i64`, otherwise a decimal string.
pub fn big_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}
