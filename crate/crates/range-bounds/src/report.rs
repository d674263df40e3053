//! JSON report envelope shared by every CLI subcommand.
//!
//! Reports are built for reproducible diffs: struct fields serialize in a
//! fixed order, floats use the shortest representation that parses back to
//! the identical bit pattern (at most 17 significant digits), and parsing
//! an emitted report and re-serializing it is byte-identical.

use serde::{Deserialize, Serialize};

use crate::bounds::{Bounds, BoundsReport, ExtremalKind, SplitVariant};
use crate::optimizer::MoveTrace;
use crate::oracle::ExtremaSearchResult;
use crate::stats::{Configuration, GiniForms, WindowRs};

/// Warning attached whenever bounds are requested for an exponent below 1.
pub const OPEN_CASE_WARNING: &str = "p < 1: the sharp lower bound is an open question; only the \
     generic envelope [1, n(n-1)/2] applies and reported extrema carry no optimality claim";

/// Warning attached when bivariate input columns had to be sorted.
pub const RESORTED_WARNING: &str = "input columns were not sorted ascending; each column was \
     sorted independently before analysis (the bivariate envelope assumes index-paired sorted \
     sequences)";

/// Per-exponent statistics block of a `stats` report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerEntry {
    pub p: f64,
    pub pairwise_power_sum: f64,
    pub power_ratio: f64,
}

/// Payload of `stats` on a sample column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatisticsReport {
    pub n: usize,
    pub range: f64,
    pub sample_variance: f64,
    pub range_variance_ratio: f64,
    pub gini: GiniForms,
    pub power: Vec<PowerEntry>,
}

/// Payload of `stats --series`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub n: usize,
    pub arrs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rs_profile: Option<Vec<WindowRs>>,
}

/// Payload of `bounds`: every closed-form envelope for one n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsTable {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Sharp power-ratio envelope; present only when `p >= 1` was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power_ratio: Option<Bounds>,
    pub power_ratio_generic: Bounds,
    pub range_variance_ratio: Bounds,
    pub covariance_ratio: Bounds,
}

/// Payload of `extremize`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremizerReport {
    pub kind: ExtremalKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<SplitVariant>,
    pub n: usize,
    pub config: Configuration,
    /// The matching statistic evaluated on the configuration.
    pub statistic_value: f64,
    /// The bound the configuration attains.
    pub bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv_path: Option<String>,
}

/// The per-subcommand payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Statistics(StatisticsReport),
    SeriesStatistics(SeriesReport),
    BoundsTable(BoundsTable),
    BoundsCheck(BoundsReport),
    MoveTrace(MoveTrace),
    Extrema(ExtremaSearchResult),
    Extremizer(ExtremizerReport),
}

/// Envelope wrapping every JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub command: String,
    /// UTC ISO-8601; honors `SOURCE_DATE_EPOCH` for reproducible output.
    pub timestamp: String,
    pub payload: Payload,
    pub warnings: Vec<String>,
}

impl ReportEnvelope {
    pub fn new(
        tool_version: impl Into<String>,
        command: impl Into<String>,
        timestamp: impl Into<String>,
        payload: Payload,
        warnings: Vec<String>,
    ) -> Self {
        Self {
            tool_version: tool_version.into(),
            command: command.into(),
            timestamp: timestamp.into(),
            payload,
            warnings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report payloads contain only finite numbers")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{check_bounds, power_ratio_generic, range_variance_bounds};
    use crate::bounds::covariance_ratio_bounds;
    use crate::stats::{PowerExponent, Sample};

    fn envelope() -> ReportEnvelope {
        let s = Sample::new(vec![0.0, 0.3, 1.0]).unwrap();
        let report = check_bounds(&s, PowerExponent::new(2.0).unwrap());
        ReportEnvelope::new(
            "0.1.0",
            "check --input data.csv --p 2",
            "2024-01-01T00:00:00Z",
            Payload::BoundsCheck(report),
            vec![],
        )
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let env = envelope();
        let first = env.to_json();
        let reparsed = ReportEnvelope::from_json(&first).unwrap();
        assert_eq!(reparsed, env);
        assert_eq!(reparsed.to_json(), first);
    }

    #[test]
    fn bounds_table_serializes_optionals_sparsely() {
        let table = BoundsTable {
            n: 4,
            p: None,
            power_ratio: None,
            power_ratio_generic: power_ratio_generic(4).unwrap(),
            range_variance_ratio: range_variance_bounds(4).unwrap(),
            covariance_ratio: covariance_ratio_bounds(4).unwrap(),
        };
        let env = ReportEnvelope::new(
            "0.1.0",
            "bounds --n 4",
            "2024-01-01T00:00:00Z",
            Payload::BoundsTable(table),
            vec![],
        );
        let json = env.to_json();
        assert!(!json.contains("\"p\""));
        assert!(json.contains("\"kind\": \"bounds_table\""));
        let back = ReportEnvelope::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
    }
}
