use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Formal time symbol `t_i`. Distinct ids are distinct symbols.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TimeLabel(pub u32);

/// Formal wave-vector symbol `k_i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WaveLabel(pub u32);

impl fmt::Display for TimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

impl fmt::Display for WaveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k{}", self.0)
    }
}

/// Maps label ids to the names used in text output.
pub trait LabelNames {
    fn time_name(&self, t: TimeLabel) -> String;
    fn wave_name(&self, k: WaveLabel) -> String;
}

/// `t<id>` / `k<id>`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DefaultNames;

impl LabelNames for DefaultNames {
    fn time_name(&self, t: TimeLabel) -> String {
        t.to_string()
    }

    fn wave_name(&self, k: WaveLabel) -> String {
        k.to_string()
    }
}

/// Explicit names with a fallback to [`DefaultNames`] for unknown ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameTable {
    pub times: BTreeMap<TimeLabel, String>,
    pub waves: BTreeMap<WaveLabel, String>,
}

impl NameTable {
    pub fn time_by_name(&self, name: &str) -> Option<TimeLabel> {
        self.times
            .iter()
            .find(|(_, n)| n.as_str() == name)
            .map(|(t, _)| *t)
    }

    pub fn wave_by_name(&self, name: &str) -> Option<WaveLabel> {
        self.waves
            .iter()
            .find(|(_, n)| n.as_str() == name)
            .map(|(k, _)| *k)
    }
}

impl LabelNames for NameTable {
    fn time_name(&self, t: TimeLabel) -> String {
        self.times.get(&t).cloned().unwrap_or_else(|| t.to_string())
    }

    fn wave_name(&self, k: WaveLabel) -> String {
        self.waves.get(&k).cloned().unwrap_or_else(|| k.to_string())
    }
}
