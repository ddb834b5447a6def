use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BenchError, ScenarioKind};

/// Per-frame core timings of one scenario run.
#[derive(Clone, Debug, PartialEq)]
pub struct TimingReport {
    pub scenario: ScenarioKind,
    pub n: usize,
    pub m: usize,
    pub samples_ms: Vec<f64>,
    pub pick_queries: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(BenchError::Format(format!("unknown report format {other:?}"))),
        }
    }
}

impl TimingReport {
    pub fn mean(&self) -> f64 {
        self.samples_ms.iter().sum::<f64>() / self.samples_ms.len() as f64
    }

    /// Nearest-rank 95th percentile.
    pub fn p95(&self) -> f64 {
        let mut sorted = self.samples_ms.clone();
        sorted.sort_by(f64::total_cmp);
        let rank = ((0.95 * sorted.len() as f64).ceil() as usize).max(1);
        sorted[rank - 1]
    }

    pub fn median(&self) -> f64 {
        let mut sorted = self.samples_ms.clone();
        sorted.sort_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        if sorted.len().is_multiple_of(2) {
            (sorted[mid - 1] + sorted[mid]) / 2.0
        } else {
            sorted[mid]
        }
    }

    pub fn fps_equivalent(&self) -> f64 {
        1000.0 / self.mean()
    }

    fn check(&self) -> Result<(), BenchError> {
        if self.samples_ms.is_empty() {
            return Err(BenchError::EmptyReport);
        }
        Ok(())
    }

    pub fn render(&self, format: ReportFormat) -> Result<String, BenchError> {
        match format {
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Json => self.to_json(),
        }
    }

    /// `scenario,n,m,frame,ms` rows followed by `# key=value` aggregate lines.
    pub fn to_csv(&self) -> Result<String, BenchError> {
        self.check()?;
        let mut w = csv::Writer::from_writer(Vec::new());
        for (frame, &ms) in self.samples_ms.iter().enumerate() {
            w.serialize(Row {
                scenario: self.scenario,
                n: self.n,
                m: self.m,
                frame,
                ms,
            })?;
        }
        let mut out = String::from_utf8(w.into_inner().map_err(|e| BenchError::Format(e.to_string()))?)
            .expect("csv writer emits utf-8");
        let a = self.aggregate();
        out.push_str(&format!(
            "# mean_ms={}\n# p95_ms={}\n# fps_equivalent={}\n# pick_queries={}\n",
            a.mean_ms, a.p95_ms, a.fps_equivalent, a.pick_queries
        ));
        Ok(out)
    }

    pub fn from_csv(text: &str) -> Result<Self, BenchError> {
        let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let mut head: Option<(ScenarioKind, usize, usize)> = None;
        let mut samples_ms = Vec::new();
        for row in r.deserialize::<Row>() {
            let row = row?;
            if row.frame != samples_ms.len() {
                return Err(BenchError::Format(format!("frame {} out of sequence", row.frame)));
            }
            match head {
                None => head = Some((row.scenario, row.n, row.m)),
                Some(h) if h != (row.scenario, row.n, row.m) => {
                    return Err(BenchError::Format("mixed scenarios in one report".into()))
                }
                _ => {}
            }
            samples_ms.push(row.ms);
        }
        let (scenario, n, m) = head.ok_or(BenchError::EmptyReport)?;
        let pick_queries = text
            .lines()
            .filter_map(|l| l.strip_prefix("# pick_queries="))
            .next()
            .map(|v| v.trim().parse::<u64>().map_err(|e| BenchError::Format(e.to_string())))
            .transpose()?
            .unwrap_or(0);
        Ok(TimingReport {
            scenario,
            n,
            m,
            samples_ms,
            pick_queries,
        })
    }

    fn aggregate(&self) -> Aggregate {
        Aggregate {
            mean_ms: self.mean(),
            p95_ms: self.p95(),
            fps_equivalent: self.fps_equivalent(),
            pick_queries: self.pick_queries,
        }
    }

    pub fn to_json(&self) -> Result<String, BenchError> {
        self.check()?;
        let doc = JsonReport {
            scenario: self.scenario,
            n: self.n,
            m: self.m,
            samples: self
                .samples_ms
                .iter()
                .enumerate()
                .map(|(frame, &ms)| Sample { frame, ms })
                .collect(),
            aggregate: self.aggregate(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let doc: JsonReport = serde_json::from_str(text)?;
        if doc.samples.is_empty() {
            return Err(BenchError::EmptyReport);
        }
        if doc.samples.iter().enumerate().any(|(i, s)| s.frame != i) {
            return Err(BenchError::Format("frames out of sequence".into()));
        }
        Ok(TimingReport {
            scenario: doc.scenario,
            n: doc.n,
            m: doc.m,
            samples_ms: doc.samples.iter().map(|s| s.ms).collect(),
            pick_queries: doc.aggregate.pick_queries,
        })
    }
}

impl fmt::Display for TimingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} m={} frames={} mean={:.3}ms p95={:.3}ms fps~{:.1}",
            self.scenario,
            self.n,
            self.m,
            self.samples_ms.len(),
            self.mean(),
            self.p95(),
            self.fps_equivalent()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct Row {
    scenario: ScenarioKind,
    n: usize,
    m: usize,
    frame: usize,
    ms: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Sample {
    frame: usize,
    ms: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Aggregate {
    mean_ms: f64,
    p95_ms: f64,
    fps_equivalent: f64,
    pick_queries: u64,
}

/// JSON report document.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonReport {
    scenario: ScenarioKind,
    n: usize,
    m: usize,
    samples: Vec<Sample>,
    aggregate: Aggregate,
}
