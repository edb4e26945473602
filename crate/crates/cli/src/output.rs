use std::path::Path;

use rmt_kernels::{Complex64, Error};
use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_ID: &str = "rmtk-summary";
pub const SCHEMA_VERSION: &str = "1.0.0";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::Unsupported(_)
            | Error::Domain(_)
            | Error::DeltaSupport(_)
            | Error::NotDirectlyComparable(_) => Failure::Config(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

pub fn config_error(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

pub type CmdResult = Result<Report, Failure>;

/// What a command hands back to the driver.
pub struct Report {
    pub passed: bool,
    pub metrics: Map<String, Value>,
    pub csv: Vec<u8>,
    pub rows: usize,
    /// Human-readable summary lines.
    pub lines: Vec<String>,
}

/// Shortest representation that parses back to the same f64.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn re_im(z: Complex64) -> [String; 2] {
    [num(z.re), num(z.im)]
}

pub struct Table {
    writer: csv::Writer<Vec<u8>>,
    rows: usize,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Self { writer, rows: 0 }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(row).expect("in-memory write");
        self.rows += 1;
    }

    pub fn finish(self) -> (Vec<u8>, usize) {
        let rows = self.rows;
        (self.writer.into_inner().expect("in-memory flush"), rows)
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub schema: &'static str,
    pub schema_version: &'static str,
    pub command: Option<String>,
    pub status: &'static str,
    pub exit_code: i32,
    pub config: Value,
    pub metrics: Value,
    pub output: Option<String>,
    pub rows: Option<usize>,
    pub wall_time_s: f64,
    pub error: Option<String>,
}

pub fn status_name(code: i32) -> &'static str {
    match code {
        EXIT_PASS => "pass",
        EXIT_TOLERANCE => "tolerance_violation",
        EXIT_CONFIG => "invalid_config",
        _ => "numerical_failure",
    }
}

pub fn write_output(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| config_error(format!("cannot write {}: {e}", path.display())))
}
