use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

/// Machine-readable run report. Key order is fixed (BTreeMap + struct
/// order), so re-running an identical request reproduces the bytes except
/// for `runtime_ms` and `timestamp`.
#[derive(Debug, Serialize)]
pub struct Report {
    pub inputs_echo: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_errors: Option<BTreeMap<String, f64>>,
    pub verdicts: BTreeMap<String, bool>,
    pub runtime_ms: u128,
    pub timestamp: u64,
}

impl Report {
    pub fn new() -> Self {
        Self {
            inputs_echo: BTreeMap::new(),
            results: BTreeMap::new(),
            std_errors: None,
            verdicts: BTreeMap::new(),
            runtime_ms: 0,
            timestamp: 0,
        }
    }

    pub fn echo(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs_echo.insert(key.to_string(), value.into());
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn std_error(&mut self, key: &str, value: f64) {
        self.std_errors
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_string(), value);
    }

    pub fn verdict(&mut self, key: &str, value: bool) {
        self.verdicts.insert(key.to_string(), value);
    }

    /// All theory gates passed (usage errors are reported separately).
    pub fn all_ok(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn finalize(&mut self, started: std::time::Instant) {
        self.runtime_ms = started.elapsed().as_millis();
        self.timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}
