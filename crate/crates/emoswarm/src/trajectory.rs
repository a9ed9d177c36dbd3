//! Trajectory recording and its two file formats.
//!
//! A log is one metadata header plus a flat list of records, one per robot
//! per logged instant, frame-major (all robots at t, then all robots at
//! t + dt). Both formats print floats in their shortest round-tripping form,
//! so reading a file back recovers the exact simulated values and two runs
//! with the same inputs produce byte-identical files.
//!
//! CSV files open with a `# {json}` metadata comment and a column header;
//! JSONL files hold the metadata object on the first line and one record
//! object per following line. [`TrajectoryLog::load`] tells them apart by
//! the first byte.

use crate::controllers::UniControl;
use crate::dynamics::Pose;
use crate::engine::{BehaviorSpec, Emotion};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TrajectoryError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("malformed log at line {line}: {reason}")]
    MalformedLog { line: usize, reason: String },
    #[error("unknown log format {0:?}; expected csv or jsonl")]
    UnknownFormat(String),
}

fn malformed(line: usize, reason: impl Into<String>) -> TrajectoryError {
    TrajectoryError::MalformedLog {
        line,
        reason: reason.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogFormat {
    Csv,
    Jsonl,
}

impl fmt::Display for LogFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogFormat::Csv => "csv",
            LogFormat::Jsonl => "jsonl",
        })
    }
}

impl FromStr for LogFormat {
    type Err = TrajectoryError;

    fn from_str(s: &str) -> Result<LogFormat, TrajectoryError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(LogFormat::Csv),
            "jsonl" => Ok(LogFormat::Jsonl),
            _ => Err(TrajectoryError::UnknownFormat(s.to_string())),
        }
    }
}

/// One robot at one logged instant, with the command computed there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub t: f64,
    pub robot_id: usize,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub v: f64,
    pub omega: f64,
}

/// Inputs that produced a log, embedded in every export.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub emotion: Emotion,
    pub n: usize,
    pub seed: u64,
    pub dt: f64,
    pub duration: f64,
    pub steps: usize,
    pub spec: BehaviorSpec,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryLog {
    pub meta: RunMeta,
    pub records: Vec<Record>,
}

impl TrajectoryLog {
    pub fn new(meta: RunMeta) -> TrajectoryLog {
        let capacity = (meta.steps + 1) * meta.n;
        TrajectoryLog {
            meta,
            records: Vec::with_capacity(capacity),
        }
    }

    /// Append one record per robot for the instant `t`.
    pub fn push_frame(&mut self, t: f64, poses: &[Pose], cmds: &[UniControl]) {
        for (robot_id, (pose, cmd)) in poses.iter().zip(cmds).enumerate() {
            self.records.push(Record {
                t,
                robot_id,
                x: pose.position.x,
                y: pose.position.y,
                theta: pose.heading,
                v: cmd.v,
                omega: cmd.omega,
            });
        }
    }

    /// Records of one robot, in time order.
    pub fn robot_records(&self, robot_id: usize) -> impl Iterator<Item = &Record> + '_ {
        self.records.iter().filter(move |r| r.robot_id == robot_id)
    }

    /// Whole-swarm snapshots, one slice per logged instant.
    pub fn frames(&self) -> impl Iterator<Item = &[Record]> + '_ {
        self.records.chunks(self.meta.n.max(1))
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), TrajectoryError> {
        writeln!(out, "# {}", serde_json::to_string(&self.meta)?)?;
        let mut writer = csv::Writer::from_writer(out);
        for record in &self.records {
            writer.serialize(record)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(mut input: R) -> Result<TrajectoryLog, TrajectoryError> {
        let mut text = String::new();
        input.read_to_string(&mut text)?;
        let (first, rest) = text
            .split_once('\n')
            .ok_or_else(|| malformed(1, "missing metadata line"))?;
        let meta_json = first
            .strip_prefix('#')
            .ok_or_else(|| malformed(1, "expected a '# {...}' metadata comment"))?
            .trim_start();
        let meta: RunMeta = serde_json::from_str(meta_json)
            .map_err(|e| malformed(1, format!("bad metadata: {e}")))?;
        let mut records = Vec::new();
        let mut reader = csv::Reader::from_reader(rest.as_bytes());
        for (i, row) in reader.deserialize::<Record>().enumerate() {
            // Line i + 3: metadata and header lines precede the rows.
            records.push(row.map_err(|e| malformed(i + 3, e.to_string()))?);
        }
        Ok(TrajectoryLog { meta, records })
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<(), TrajectoryError> {
        writeln!(out, "{}", serde_json::to_string(&self.meta)?)?;
        for record in &self.records {
            writeln!(out, "{}", serde_json::to_string(record)?)?;
        }
        Ok(())
    }

    pub fn read_jsonl<R: Read>(mut input: R) -> Result<TrajectoryLog, TrajectoryError> {
        let mut text = String::new();
        input.read_to_string(&mut text)?;
        let mut lines = text.lines().enumerate();
        let (_, first) = lines
            .next()
            .ok_or_else(|| malformed(1, "missing metadata line"))?;
        let meta: RunMeta =
            serde_json::from_str(first).map_err(|e| malformed(1, format!("bad metadata: {e}")))?;
        let mut records = Vec::new();
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let record: Record = serde_json::from_str(line)
                .map_err(|e| malformed(i + 1, format!("bad record: {e}")))?;
            records.push(record);
        }
        Ok(TrajectoryLog { meta, records })
    }

    pub fn save(&self, path: &Path, format: LogFormat) -> Result<(), TrajectoryError> {
        let out = BufWriter::new(File::create(path)?);
        match format {
            LogFormat::Csv => self.write_csv(out),
            LogFormat::Jsonl => self.write_jsonl(out),
        }
    }

    /// Read a log back, telling the format from the first byte ('#' opens a
    /// CSV metadata comment, '{' a JSONL metadata object).
    pub fn load(path: &Path) -> Result<TrajectoryLog, TrajectoryError> {
        let mut text = String::new();
        BufReader::new(File::open(path)?).read_to_string(&mut text)?;
        match text.chars().next() {
            Some('#') => TrajectoryLog::read_csv(text.as_bytes()),
            Some('{') => TrajectoryLog::read_jsonl(text.as_bytes()),
            _ => Err(malformed(1, "file starts with neither '#' nor '{'")),
        }
    }
}
