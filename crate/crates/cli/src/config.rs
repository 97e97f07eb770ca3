//! Sweep configuration: a single JSON document, with every command-line
//! `--set key=value` flag acting as a dotted-path override of that
//! document before it is typed and validated.

use crate::error::{CliError, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const PARAM_NAMES: [ParamName; 5] = [
    ParamName::Alpha,
    ParamName::Beta,
    ParamName::Delta,
    ParamName::Ell,
    ParamName::Hr,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamName {
    Alpha,
    Beta,
    Delta,
    Ell,
    #[serde(alias = "HR")]
    Hr,
}

impl ParamName {
    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::Alpha => "alpha",
            ParamName::Beta => "beta",
            ParamName::Delta => "delta",
            ParamName::Ell => "ell",
            ParamName::Hr => "hr",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackgroundKind {
    Minkowski,
    DeSitter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gkmr,
    Larsson,
}

/// A fixed separation is either a number or the keyword `"min"`, meaning
/// the smallest non-overlapping separation `2(1+delta)` at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Value(f64),
    #[serde(with = "alpha_min_keyword")]
    Min,
}

mod alpha_min_keyword {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str("min")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<(), D::Error> {
        let text = String::deserialize(d)?;
        if text == "min" {
            Ok(())
        } else {
            Err(D::Error::custom(format!(
                "unknown separation keyword {text:?} (expected \"min\")"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hr: Option<f64>,
}

impl FixedParams {
    fn has(&self, name: ParamName) -> bool {
        match name {
            ParamName::Alpha => self.alpha.is_some(),
            ParamName::Beta => self.beta.is_some(),
            ParamName::Delta => self.delta.is_some(),
            ParamName::Ell => self.ell.is_some(),
            ParamName::Hr => self.hr.is_some(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: ParamName,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: Scale,
}

impl Axis {
    /// Grid coordinate `i` of this axis, interpolated on the integer index
    /// (bit-reproducible across runs and thread counts). Endpoints are
    /// returned exactly — a log axis must end at its stated bounds, not at
    /// their ln/exp round trip.
    pub fn value(&self, i: usize) -> f64 {
        if self.count <= 1 || i == 0 {
            return self.min;
        }
        if i == self.count - 1 {
            return self.max;
        }
        let t = i as f64 / (self.count - 1) as f64;
        match self.scale {
            Scale::Linear => self.min + (self.max - self.min) * t,
            Scale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LarssonConfig {
    /// Lattice-cell budget per grid point before the narrow-bin closed
    /// form is substituted (and flagged in the output).
    pub cell_budget: u64,
}

impl Default for LarssonConfig {
    fn default() -> Self {
        Self {
            cell_budget: bellfield_core::larsson::DEFAULT_CELL_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: PathBuf,
    pub format: OutputFormat,
    #[serde(default)]
    pub plot: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub background: BackgroundKind,
    pub family: Family,
    #[serde(default)]
    pub fixed: FixedParams,
    #[serde(default)]
    pub axes: Vec<Axis>,
    #[serde(default)]
    pub larsson: LarssonConfig,
    pub output: OutputConfig,
}

impl SweepConfig {
    pub fn from_file(path: &Path, overrides: &[String]) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text, overrides)
    }

    pub fn from_json(text: &str, overrides: &[String]) -> Result<Self> {
        let mut doc: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("invalid config JSON: {e}")))?;
        for item in overrides {
            apply_override(&mut doc, item)?;
        }
        let config: SweepConfig = serde_json::from_value(doc)
            .map_err(|e| CliError::Usage(format!("invalid config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// Structural checks; per-point physics validation happens row by row
    /// so one bad grid point cannot abort a sweep.
    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.axes.iter().enumerate() {
            if a.count == 0 {
                return Err(CliError::Usage(format!(
                    "axis {} has count 0",
                    a.name.as_str()
                )));
            }
            if !(a.min.is_finite() && a.max.is_finite()) || a.min > a.max {
                return Err(CliError::Usage(format!(
                    "axis {} has an empty or non-finite range [{}, {}]",
                    a.name.as_str(),
                    a.min,
                    a.max
                )));
            }
            if a.scale == Scale::Log && a.min <= 0.0 {
                return Err(CliError::Usage(format!(
                    "axis {} is log-scaled but starts at {} <= 0",
                    a.name.as_str(),
                    a.min
                )));
            }
            if self.axes[..i].iter().any(|b| b.name == a.name) {
                return Err(CliError::Usage(format!(
                    "axis {} appears more than once",
                    a.name.as_str()
                )));
            }
            if self.fixed.has(a.name) {
                return Err(CliError::Usage(format!(
                    "{} is both a fixed parameter and an axis",
                    a.name.as_str()
                )));
            }
        }
        let offered =
            |name: ParamName| self.fixed.has(name) || self.axes.iter().any(|a| a.name == name);
        for name in [ParamName::Alpha, ParamName::Beta, ParamName::Delta] {
            if !offered(name) {
                return Err(CliError::Usage(format!(
                    "parameter {} is neither fixed nor an axis",
                    name.as_str()
                )));
            }
        }
        match self.background {
            BackgroundKind::DeSitter if !offered(ParamName::Hr) => {
                return Err(CliError::Usage(
                    "expanding background needs hr fixed or as an axis".into(),
                ));
            }
            BackgroundKind::Minkowski if offered(ParamName::Hr) => {
                return Err(CliError::Usage(
                    "hr is meaningless on the static background".into(),
                ));
            }
            _ => {}
        }
        match self.family {
            Family::Larsson if !offered(ParamName::Ell) => {
                return Err(CliError::Usage(
                    "larsson sweeps need ell fixed or as an axis".into(),
                ));
            }
            Family::Gkmr if offered(ParamName::Ell) => {
                return Err(CliError::Usage(
                    "ell only applies to the larsson family".into(),
                ));
            }
            _ => {}
        }
        Ok(())
    }

    /// Hash of the effective configuration (after overrides), recorded in
    /// output provenance comments.
    pub fn sha256(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        sha256_hex(canonical.as_bytes())
    }

    /// Total number of grid points (product of axis counts; 1 when all
    /// parameters are fixed).
    pub fn grid_len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product::<usize>().max(1)
    }

    /// Axis values of the `idx`-th grid point in row-major order (last
    /// axis fastest).
    pub fn grid_point(&self, idx: usize) -> Vec<(ParamName, f64)> {
        let mut rem = idx;
        let mut out = Vec::with_capacity(self.axes.len());
        for a in self.axes.iter().rev() {
            out.push((a.name, a.value(rem % a.count)));
            rem /= a.count;
        }
        out.reverse();
        out
    }
}

/// Lowercase hex SHA-256 digest, used for output provenance.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        use std::fmt::Write as _;
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

/// Apply one `path.to.key=value` override to the JSON document.
fn apply_override(doc: &mut serde_json::Value, item: &str) -> Result<()> {
    let (path, raw) = item
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("override {item:?} is not key=value")))?;
    let value: serde_json::Value = serde_json::from_str(raw)
        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let mut cursor = doc;
    let tokens: Vec<&str> = path.split('.').collect();
    if tokens.is_empty() || tokens.iter().any(|t| t.is_empty()) {
        return Err(CliError::Usage(format!("override path {path:?} is empty")));
    }
    for (i, token) in tokens.iter().enumerate() {
        let last = i + 1 == tokens.len();
        if let Ok(index) = token.parse::<usize>() {
            let arr = cursor
                .as_array_mut()
                .ok_or_else(|| CliError::Usage(format!("{path:?}: {token} indexes a non-array")))?;
            if index >= arr.len() {
                return Err(CliError::Usage(format!(
                    "{path:?}: index {index} out of bounds ({} elements)",
                    arr.len()
                )));
            }
            if last {
                arr[index] = value;
                return Ok(());
            }
            cursor = &mut arr[index];
        } else {
            let obj = cursor.as_object_mut().ok_or_else(|| {
                CliError::Usage(format!("{path:?}: {token} indexes a non-object"))
            })?;
            if last {
                obj.insert(token.to_string(), value);
                return Ok(());
            }
            cursor = obj
                .entry(token.to_string())
                .or_insert_with(|| serde_json::Value::Object(Default::default()));
        }
    }
    unreachable!("loop returns on the last token");
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "background": "minkowski",
        "family": "gkmr",
        "fixed": {"alpha": 3.0, "beta": 0.0, "delta": 0.1},
        "output": {"path": "out.csv", "format": "csv"}
    }"#;

    #[test]
    fn minimal_config_parses_and_hashes_reproducibly() {
        let a = SweepConfig::from_json(BASE, &[]).unwrap();
        let b = SweepConfig::from_json(BASE, &[]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sha256(), b.sha256());
        assert_eq!(a.grid_len(), 1);
        assert!(a.grid_point(0).is_empty());
    }

    #[test]
    fn overrides_rewrite_dotted_paths() {
        let cfg = SweepConfig::from_json(
            BASE,
            &[
                "fixed.delta=0.25".into(),
                "output.path=other.csv".into(),
                "output.plot=true".into(),
            ],
        )
        .unwrap();
        assert_eq!(cfg.fixed.delta, Some(0.25));
        assert_eq!(cfg.output.path, PathBuf::from("other.csv"));
        assert!(cfg.output.plot);
        assert_ne!(
            cfg.sha256(),
            SweepConfig::from_json(BASE, &[]).unwrap().sha256()
        );
    }

    #[test]
    fn axis_grid_is_index_interpolated() {
        let cfg = SweepConfig::from_json(
            BASE,
            &[
                "fixed={\"beta\": 0.0, \"delta\": 0.1}".into(),
                "axes=[{\"name\":\"alpha\",\"min\":2.2,\"max\":22.0,\"count\":3,\"scale\":\"log\"}]"
                    .into(),
            ],
        )
        .unwrap();
        assert_eq!(cfg.grid_len(), 3);
        assert_eq!(cfg.grid_point(0), vec![(ParamName::Alpha, 2.2)]);
        let mid = cfg.grid_point(1)[0].1;
        assert!((mid - (2.2f64 * 22.0).sqrt()).abs() < 1e-12);
        assert_eq!(cfg.grid_point(2), vec![(ParamName::Alpha, 22.0)]);
    }

    #[test]
    fn structural_errors_are_usage_errors() {
        // Missing delta.
        let bad = r#"{
            "background": "minkowski", "family": "gkmr",
            "fixed": {"alpha": 3.0, "beta": 0.0},
            "output": {"path": "o.csv", "format": "csv"}
        }"#;
        assert!(matches!(
            SweepConfig::from_json(bad, &[]),
            Err(CliError::Usage(_))
        ));
        // hr on a static background.
        assert!(SweepConfig::from_json(BASE, &["fixed.hr=1.0".into()]).is_err());
        // Duplicate axis/fixed parameter.
        assert!(SweepConfig::from_json(
            BASE,
            &["axes=[{\"name\":\"alpha\",\"min\":2.2,\"max\":3.0,\"count\":2,\"scale\":\"linear\"}]"
                .into()],
        )
        .is_err());
        // ell on a gkmr sweep.
        assert!(SweepConfig::from_json(BASE, &["fixed.ell=1.0".into()]).is_err());
        // The "min" keyword round-trips.
        let min = SweepConfig::from_json(BASE, &["fixed.alpha=\"min\"".into()]).unwrap();
        assert_eq!(min.fixed.alpha, Some(AlphaSpec::Min));
    }

    #[test]
    fn larsson_family_requires_and_accepts_ell() {
        let cfg = SweepConfig::from_json(
            BASE,
            &["family=larsson".into(), "fixed.ell=0.5".into()],
        )
        .unwrap();
        assert_eq!(cfg.family, Family::Larsson);
        assert_eq!(
            cfg.larsson.cell_budget,
            bellfield_core::larsson::DEFAULT_CELL_BUDGET
        );
        assert!(SweepConfig::from_json(BASE, &["family=larsson".into()]).is_err());
    }
}
