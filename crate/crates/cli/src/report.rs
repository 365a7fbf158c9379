//! Run reports: enough to reproduce a run from its inputs and seed.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SUCCESS: u8 = 0;
pub const PROPERTY_FAILED: u8 = 1;
pub const INPUT_ERROR: u8 = 2;
pub const INCONCLUSIVE: u8 = 3;

#[derive(Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

impl InputHash {
    pub fn of(path: &Path, bytes: &[u8]) -> InputHash {
        InputHash { path: path.display().to_string(), sha256: format!("{:x}", Sha256::digest(bytes)) }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<InputHash>,
    pub seed: u64,
    pub exit_code: u8,
    pub result: Value,
    /// How each claim in `result` is backed.
    pub evidence: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_sha256_hex() {
        let h = InputHash::of(Path::new("g.txt"), b"abc");
        assert_eq!(h.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn wall_time_left_out_when_absent() {
        let mut r = RunReport {
            tool: "pc",
            version: "0",
            command: vec![],
            inputs: vec![],
            seed: 0,
            exit_code: SUCCESS,
            result: Value::Null,
            evidence: vec![],
            wall_time_ms: None,
        };
        assert!(!r.to_json().contains("wall_time_ms"));
        r.wall_time_ms = Some(1.5);
        assert!(r.to_json().contains("wall_time_ms"));
    }
}
