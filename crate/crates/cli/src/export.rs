//! Plot-ready CSV and JSON tables.
//!
//! Floats are written in their shortest round-trip form, so reading an export
//! back yields the same bits.

use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use mannheim_core::ruled::{drall, frenet_frame};
use mannheim_core::{RuledSurface, SurfaceError};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameRow {
    pub s: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub ds1_ds: f64,
    pub kappa: f64,
    pub drall: f64,
}

pub const FRAME_COLUMNS: [&str; 13] = ["s", "q1", "q2", "q3", "h1", "h2", "h3", "a1", "a2", "a3", "ds1_ds", "kappa", "drall"];

impl FrameRow {
    pub fn at(surf: &dyn RuledSurface, s: f64) -> Result<FrameRow, SurfaceError> {
        let f = frenet_frame(surf, s)?;
        Ok(FrameRow {
            s,
            q1: f.q.x1,
            q2: f.q.x2,
            q3: f.q.x3,
            h1: f.h.x1,
            h2: f.h.x2,
            h3: f.h.x3,
            a1: f.a.x1,
            a2: f.a.x2,
            a3: f.a.x3,
            ds1_ds: f.ds1_ds,
            kappa: f.kappa,
            drall: drall(surf, s)?,
        })
    }

    pub fn to_bits(&self) -> [u64; 13] {
        [
            self.s, self.q1, self.q2, self.q3, self.h1, self.h2, self.h3, self.a1, self.a2, self.a3, self.ds1_ds,
            self.kappa, self.drall,
        ]
        .map(f64::to_bits)
    }
}

pub fn frame_rows(surf: &dyn RuledSurface, grid: &[f64]) -> Result<Vec<FrameRow>, SurfaceError> {
    grid.iter().map(|&s| FrameRow::at(surf, s)).collect()
}

/// One ruling of a sampled offset: base point `c*` and director `q*`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OffsetRow {
    pub s: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

pub fn write_rows<T: Serialize>(rows: &[T], format: Format, out: impl Write) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)
        }
    }
}

pub fn read_rows<T: DeserializeOwned>(format: Format, input: impl Read) -> Result<Vec<T>, Box<dyn std::error::Error>> {
    Ok(match format {
        Format::Csv => csv::Reader::from_reader(input).deserialize().collect::<Result<_, _>>()?,
        Format::Json => serde_json::from_reader(input)?,
    })
}
