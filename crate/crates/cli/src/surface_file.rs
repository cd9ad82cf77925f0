//! Line-oriented surface definition files.
//!
//! ```text
//! # helicoid
//! k = (0, 0, s)
//! q = (cosh(s), sinh(s), 0)
//! domain = [-1, 1]
//! samples = 256
//! ```
//!
//! A surface may instead be synthesized from its curvature profile:
//!
//! ```text
//! type = M1-
//! kappa = -cosh(3 - s)/sinh(3 - s)
//! ds1_ds = 1
//! domain = [0, 2]
//! step = 1e-3
//! ```

use std::fmt;
use std::sync::Arc;

use mannheim_core::expr::parse_expr;
use mannheim_core::ruled::{integrate_frame, DEFAULT_SAMPLES};
use mannheim_core::{parse_curve, CurveDef, Domain, FrameType, LVec3, ParseError, RuledSurface, RuledSurfaceDef, ScalarFn, SurfaceError};

const KEYS: [&str; 8] = ["k", "q", "domain", "samples", "type", "kappa", "ds1_ds", "step"];

#[derive(Debug, Clone, PartialEq)]
pub enum FileError {
    At { line: usize, column: usize, message: String },
    Missing(&'static str),
    Conflict(String),
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::At { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            FileError::Missing(key) => write!(f, "missing required key `{key}`"),
            FileError::Conflict(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for FileError {}

#[derive(Clone, Debug)]
pub enum SurfaceSource {
    Analytic { k: CurveDef, q: CurveDef },
    Synthesized { kind: FrameType, kappa: ScalarFn, ds1_ds: ScalarFn, step: f64 },
}

#[derive(Clone, Debug)]
pub struct SurfaceFile {
    pub source: SurfaceSource,
    pub domain: Domain,
    pub samples: usize,
}

struct Entry<'a> {
    line: usize,
    /// 1-based character column of the value.
    column: usize,
    value: &'a str,
}

impl Entry<'_> {
    fn err(&self, message: impl Into<String>) -> FileError {
        FileError::At { line: self.line, column: self.column, message: message.into() }
    }

    fn parse_err(&self, e: ParseError) -> FileError {
        let column = match e.offset() {
            Some(off) => self.column + self.value[..off.min(self.value.len())].chars().count(),
            None => self.column,
        };
        FileError::At { line: self.line, column, message: e.to_string() }
    }

    fn real(&self, text: &str, base: usize) -> Result<f64, FileError> {
        let lead = text.chars().take_while(|c| c.is_whitespace()).count();
        let at = Entry { line: self.line, column: self.column + base + lead, value: text.trim_start() };
        let e = parse_expr(at.value).map_err(|e| at.parse_err(e))?;
        if !e.is_constant() {
            return Err(at.err(format!("`{}` is not a constant", text.trim())));
        }
        e.eval(0.0).map_err(|e| at.err(e.to_string()))
    }
}

impl SurfaceFile {
    pub fn parse(text: &str) -> Result<SurfaceFile, FileError> {
        let mut entries: [Option<Entry>; 8] = Default::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let lead = line.len() - line.trim_start().len();
            let Some(eq) = line.find('=') else {
                return Err(FileError::At { line: i + 1, column: lead + 1, message: "expected `key = value`".into() });
            };
            let key = line[..eq].trim();
            let slot = KEYS.iter().position(|k| *k == key).ok_or_else(|| FileError::At {
                line: i + 1,
                column: line[..lead].chars().count() + 1,
                message: format!("unknown key `{key}`, expected one of {}", KEYS.join(", ")),
            })?;
            let after = &line[eq + 1..];
            let pad = after.len() - after.trim_start().len();
            let start = eq + 1 + pad;
            let entry = Entry { line: i + 1, column: line[..start].chars().count() + 1, value: line[start..].trim_end() };
            if let Some(prev) = &entries[slot] {
                return Err(entry.err(format!("duplicate key `{key}` (first given on line {})", prev.line)));
            }
            entries[slot] = Some(entry);
        }
        let [k, q, domain, samples, kind, kappa, ds1_ds, step] = entries;

        let domain = domain.ok_or(FileError::Missing("domain"))?;
        let domain = parse_domain(&domain)?;
        let samples = match samples {
            None => DEFAULT_SAMPLES,
            Some(e) => match e.value.trim().parse::<usize>() {
                Ok(n) if n >= 2 => n,
                _ => return Err(e.err(format!("samples must be an integer >= 2, found `{}`", e.value))),
            },
        };

        let synthesized = [&kind, &kappa, &ds1_ds, &step].iter().any(|e| e.is_some());
        let source = if synthesized && (k.is_some() || q.is_some()) {
            return Err(FileError::Conflict("`k`/`q` cannot be combined with `type`/`kappa`/`ds1_ds`/`step`".into()));
        } else if synthesized {
            let kind_e = kind.ok_or(FileError::Missing("type"))?;
            let kind = FrameType::from_label(kind_e.value.trim())
                .ok_or_else(|| kind_e.err(format!("unknown type `{}`, expected M1-, M1+ or M2+", kind_e.value)))?;
            let kappa_e = kappa.ok_or(FileError::Missing("kappa"))?;
            let kappa = ScalarFn::parse(kappa_e.value).map_err(|e| kappa_e.parse_err(e))?;
            let ds1_ds = match ds1_ds {
                None => ScalarFn::constant(1.0),
                Some(e) => ScalarFn::parse(e.value).map_err(|err| e.parse_err(err))?,
            };
            let step = match step {
                None => 1e-3,
                Some(e) => {
                    let v = e.real(e.value, 0)?;
                    if !(v > 0.0 && v.is_finite()) {
                        return Err(e.err("step must be positive"));
                    }
                    v
                }
            };
            SurfaceSource::Synthesized { kind, kappa, ds1_ds, step }
        } else {
            let k_e = k.ok_or(FileError::Missing("k"))?;
            let q_e = q.ok_or(FileError::Missing("q"))?;
            let k = parse_curve(k_e.value).map_err(|e| k_e.parse_err(e))?;
            let q = parse_curve(q_e.value).map_err(|e| q_e.parse_err(e))?;
            SurfaceSource::Analytic { k, q }
        };
        Ok(SurfaceFile { source, domain, samples })
    }

    pub fn build(&self) -> Result<Arc<dyn RuledSurface>, SurfaceError> {
        Ok(match &self.source {
            SurfaceSource::Analytic { k, q } => {
                Arc::new(RuledSurfaceDef::new(k.clone(), q.clone(), self.domain).with_samples(self.samples))
            }
            SurfaceSource::Synthesized { kind, kappa, ds1_ds, step } => Arc::new(
                integrate_frame(*kind, kappa.clone(), ds1_ds.clone(), kind.standard_seed(), LVec3::ZERO, self.domain, *step)?
                    .with_samples(self.samples),
            ),
        })
    }
}

fn parse_domain(e: &Entry) -> Result<Domain, FileError> {
    let v = e.value;
    let inner = v.strip_prefix('[').and_then(|r| r.trim_end().strip_suffix(']'));
    let inner = inner.ok_or_else(|| e.err("domain must look like `[lo, hi]`"))?;
    let comma = inner.find(',').ok_or_else(|| e.err("domain must look like `[lo, hi]`"))?;
    let lo = e.real(&inner[..comma], 1)?;
    let hi = e.real(&inner[comma + 1..], 1 + inner[..=comma].chars().count())?;
    Domain::new(lo, hi).map_err(|_| e.err(format!("empty or invalid domain [{lo}, {hi}]")))
}
