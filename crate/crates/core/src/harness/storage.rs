//! Segment file format: CSV with a header row and 61 columns — `t_sec`,
//! then `sc00_re, sc00_im, ..., sc29_re, sc29_im` — one file per segment.
//! Values are written as shortest round-trip decimals, so a save/load
//! round trip reproduces the numeric content exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::HarnessError;
use crate::csi::{ComplexSample, CsiFrame, CsiSegment, DEFAULT_SUBCARRIERS};

/// Columns per row: timestamp plus re/im for each of the 30 subcarriers.
pub const SEGMENT_COLUMNS: usize = 1 + 2 * DEFAULT_SUBCARRIERS;

fn header() -> String {
    let mut h = String::from("t_sec");
    for i in 0..DEFAULT_SUBCARRIERS {
        let _ = write!(h, ",sc{i:02}_re,sc{i:02}_im");
    }
    h
}

/// Writes a segment in the 61-column CSV format. The label is not stored in
/// the file; dataset manifests carry it.
pub fn save_segment(segment: &CsiSegment, path: &Path) -> Result<(), HarnessError> {
    if segment.subcarrier_count() != DEFAULT_SUBCARRIERS {
        return Err(HarnessError::InvalidInput(format!(
            "segment files store exactly {DEFAULT_SUBCARRIERS} subcarriers, segment has {}",
            segment.subcarrier_count()
        )));
    }
    let mut out = String::with_capacity(segment.len() * 192);
    out.push_str(&header());
    out.push('\n');
    for frame in segment.frames() {
        let _ = write!(out, "{}", frame.timestamp);
        for s in &frame.subcarriers {
            let _ = write!(out, ",{},{}", s.re, s.im);
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        reason: source.to_string(),
    })
}

/// Reads a segment file, validating the column layout, numeric cells and
/// timestamp ordering; errors carry the offending 1-based line number. The
/// sample rate is recovered from the timestamps.
pub fn load_segment(path: &Path) -> Result<CsiSegment, HarnessError> {
    let content = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        reason: source.to_string(),
    })?;
    let parse_err = |line: usize, message: String| HarnessError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut lines = content.lines().enumerate();
    let (_, header_line) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file".into()))?;
    let header_cols = header_line.split(',').count();
    if header_cols != SEGMENT_COLUMNS {
        return Err(parse_err(
            1,
            format!("expected {SEGMENT_COLUMNS} columns, found {header_cols}"),
        ));
    }

    let mut frames: Vec<CsiFrame> = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != SEGMENT_COLUMNS {
            return Err(parse_err(
                line_no,
                format!("expected {SEGMENT_COLUMNS} columns, found {}", cells.len()),
            ));
        }
        let mut numbers = Vec::with_capacity(SEGMENT_COLUMNS);
        for (col, cell) in cells.iter().enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| {
                parse_err(line_no, format!("column {}: invalid number {cell:?}", col + 1))
            })?;
            if !value.is_finite() {
                return Err(parse_err(
                    line_no,
                    format!("column {}: non-finite value {value}", col + 1),
                ));
            }
            numbers.push(value);
        }
        let timestamp = numbers[0];
        if let Some(prev) = frames.last() {
            if timestamp <= prev.timestamp {
                return Err(parse_err(
                    line_no,
                    format!(
                        "timestamps must strictly increase (got {timestamp} after {})",
                        prev.timestamp
                    ),
                ));
            }
        }
        let subcarriers = numbers[1..]
            .chunks_exact(2)
            .map(|pair| ComplexSample::new(pair[0], pair[1]))
            .collect();
        frames.push(CsiFrame::new(timestamp, subcarriers));
    }

    let n = frames.len();
    if n < 2 {
        return Err(parse_err(
            n + 1,
            "at least 2 data rows are required to recover the sample rate".into(),
        ));
    }
    let span = frames[n - 1].timestamp - frames[0].timestamp;
    let sample_rate = (n - 1) as f64 / span;
    let duration = n as f64 / sample_rate;
    CsiSegment::new(frames, sample_rate, duration, None)
        .map_err(|e| parse_err(2, e.to_string()))
}
