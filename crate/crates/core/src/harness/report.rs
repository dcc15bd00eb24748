use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SweepRecord;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "point,frames,bit_errs,frame_errs,ber,fer,mean_iters,secs";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidConfig(format!("unknown format {s:?}"))),
        }
    }
}

pub fn report(records: &[SweepRecord], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in records {
                let _ = writeln!(out, "{}", csv_row(r));
            }
            Ok(out)
        }
        Format::Json => {
            let mut out = serde_json::to_string_pretty(records)?;
            out.push('\n');
            Ok(out)
        }
    }
}

pub(crate) fn csv_row(r: &SweepRecord) -> String {
    format!(
        "{:.4},{},{},{},{:.6e},{:.6e},{:.3},{:.3}",
        r.point, r.frames, r.bit_errs, r.frame_errs, r.ber, r.fer, r.mean_iters, r.secs
    )
}
