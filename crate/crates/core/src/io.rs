//! On-disk formats.
//!
//! A profile is a CSV with header `r,re,im` (one row per grid node) next to a
//! JSON sidecar with the same stem holding the type, weight exponent, grid
//! breakpoints, tail and the angular constant. A tabulated symbol is a CSV
//! `lambda,re,im` plus a sidecar whose discrete values are keyed by exact
//! half-integers such as `"3/2"`. Everything else is plain JSON.

use crate::convolution::BiTypeProfile;
use crate::error::{Error, Result};
use crate::special::HalfInt;
use crate::transform::{GridSpec, RadialGrid, RadialProfile, TabulatedSymbol, Tail, KAPPA};
use num_complex::Complex64 as C64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// Sidecar of a profile CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileMeta {
    /// Left type, present only for mixed-type profiles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    pub m: i64,
    pub alpha: f64,
    pub grid: GridSpec,
    pub tail: Option<Tail>,
    /// Angular constant the values were produced with.
    pub kappa: f64,
}

/// Sidecar of a symbol table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolMeta {
    pub m: i64,
    /// `"3/2" -> [re, im]`.
    pub discrete: BTreeMap<String, [f64; 2]>,
}

/// `x/h1.csv -> x/h1.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes rows of numbers under a header; floats use the shortest
/// representation that round-trips, so output is reproducible byte for byte.
pub fn write_table<W: Write>(out: W, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|x| format!("{x:?}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a numeric CSV, checking the header.
pub fn read_table(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_path(path)?;
    let got: Vec<String> = r.headers()?.iter().map(|h| h.trim().to_string()).collect();
    if got != header {
        return Err(Error::Parse(format!("{}: expected header {:?}, found {:?}", path.display(), header, got)));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("{}: bad number {x:?}", path.display()))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn profile_rows(p: &RadialProfile) -> Vec<Vec<f64>> {
    p.grid.nodes().iter().zip(&p.values).map(|(r, v)| vec![*r, v.re, v.im]).collect()
}

fn write_profile_with(path: &Path, p: &RadialProfile, n: Option<i64>) -> Result<()> {
    let mut w = create(path)?;
    write_table(&mut w, &["r", "re", "im"], &profile_rows(p))?;
    w.flush()?;
    let meta = ProfileMeta { n, m: p.m, alpha: p.alpha, grid: p.grid.clone().into(), tail: p.tail, kappa: KAPPA };
    write_json(&sidecar_path(path), &meta)
}

pub fn write_profile(path: &Path, p: &RadialProfile) -> Result<()> {
    write_profile_with(path, p, None)
}

pub fn write_bitype(path: &Path, p: &BiTypeProfile) -> Result<()> {
    write_profile_with(path, &p.radial, Some(p.n))
}

fn read_profile_with(path: &Path) -> Result<(RadialProfile, Option<i64>)> {
    let meta: ProfileMeta = read_json(&sidecar_path(path))?;
    if (meta.kappa / KAPPA - 1.0).abs() > 1e-12 {
        return Err(Error::Parse(format!("{} was written with angular constant {}, not {KAPPA}", path.display(), meta.kappa)));
    }
    let grid = RadialGrid::try_from(meta.grid)?;
    let rows = read_table(path, &["r", "re", "im"])?;
    if rows.len() != grid.len() {
        return Err(Error::Parse(format!("{}: {} rows for a grid of {} nodes", path.display(), rows.len(), grid.len())));
    }
    for (row, r) in rows.iter().zip(grid.nodes()) {
        if (row[0] - r).abs() > 1e-12 * r.max(1.0) {
            return Err(Error::Parse(format!("{}: radius {} does not match grid node {r}", path.display(), row[0])));
        }
    }
    let values = rows.iter().map(|row| C64::new(row[1], row[2])).collect();
    Ok((RadialProfile::new(meta.m, meta.alpha, grid, values, meta.tail)?, meta.n))
}

pub fn read_profile(path: &Path) -> Result<RadialProfile> {
    Ok(read_profile_with(path)?.0)
}

/// Reads a mixed-type profile; a plain profile reads as type (m, m).
pub fn read_bitype(path: &Path) -> Result<BiTypeProfile> {
    let (p, n) = read_profile_with(path)?;
    Ok(BiTypeProfile { n: n.unwrap_or(p.m), radial: p })
}

pub fn write_symbol(path: &Path, s: &TabulatedSymbol) -> Result<()> {
    let rows: Vec<Vec<f64>> = s.lambdas.iter().zip(&s.values).map(|(l, v)| vec![*l, v.re, v.im]).collect();
    let mut w = create(path)?;
    write_table(&mut w, &["lambda", "re", "im"], &rows)?;
    w.flush()?;
    let discrete = s.discrete.iter().map(|(k, v)| (k.to_string(), [v.re, v.im])).collect();
    write_json(&sidecar_path(path), &SymbolMeta { m: s.m, discrete })
}

pub fn read_symbol(path: &Path) -> Result<TabulatedSymbol> {
    let meta: SymbolMeta = read_json(&sidecar_path(path))?;
    let rows = read_table(path, &["lambda", "re", "im"])?;
    let mut discrete = BTreeMap::new();
    for (k, v) in meta.discrete {
        discrete.insert(HalfInt::parse(&k)?, C64::new(v[0], v[1]));
    }
    TabulatedSymbol::new(
        meta.m,
        rows.iter().map(|r| r[0]).collect(),
        rows.iter().map(|r| C64::new(r[1], r[2])).collect(),
        discrete,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::HeatSymbol;

    #[test]
    fn profile_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        let grid = RadialGrid::with_r_max(10.0).unwrap();
        let mut p = RadialProfile::from_fn(2, 0.5, grid, |r| C64::new((-r * r).exp(), 0.1 * r)).unwrap();
        p.tail = Some(Tail { rate: -3.0, coeff: C64::new(1e-5, 0.0) });
        write_profile(&path, &p).unwrap();
        assert_eq!(read_profile(&path).unwrap(), p);
        let b = BiTypeProfile::new(0, p.clone());
        write_bitype(&path, &b).unwrap();
        assert_eq!(read_bitype(&path).unwrap(), b);
        let text = std::fs::read_to_string(sidecar_path(&path)).unwrap();
        assert!(text.contains("\"n\": 0") && text.contains("kappa"));
    }

    #[test]
    fn symbol_round_trip_with_exact_keys() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let s = TabulatedSymbol::sample(&HeatSymbol::new(4, 1.0).unwrap(), (0..20).map(|k| k as f64 * 0.5).collect()).unwrap();
        write_symbol(&path, &s).unwrap();
        assert_eq!(read_symbol(&path).unwrap(), s);
        let meta = std::fs::read_to_string(sidecar_path(&path)).unwrap();
        assert!(meta.contains("\"3/2\"") && meta.contains("\"-1/2\""), "{meta}");
    }

    #[test]
    fn header_and_grid_mismatch_are_parse_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        let grid = RadialGrid::with_r_max(10.0).unwrap();
        let p = RadialProfile::from_fn(0, 0.0, grid, |r| C64::new(r, 0.0)).unwrap();
        write_profile(&path, &p).unwrap();
        let text = std::fs::read_to_string(&path).unwrap().replacen("r,re,im", "x,re,im", 1);
        std::fs::write(&path, text).unwrap();
        assert!(matches!(read_profile(&path), Err(Error::Parse(_))));
    }
}
