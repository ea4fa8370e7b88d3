//! File formats written by the commands.
//!
//! * `diagnostics.csv`: `t,mass,hamiltonian,kinetic,potential,interaction,hs_norm,l4_norm,linf_norm`
//! * `snapshot_t<T with 6 decimals>.csv`: `x,re_u,im_u,abs_u`
//! * `summary.csv`: `epsilon,omega,sup_hs[,sup_l2_diff][,marker]`
//! * `fits.json`, `witnesses.json`, `manifest.json`
//!
//! Floats are written in shortest round-trip form.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use fnls_core::dynamics::{RunRecord, Snapshot};
use fnls_core::Warning;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const DIAGNOSTICS_HEADER: &str = "t,mass,hamiltonian,kinetic,potential,interaction,hs_norm,l4_norm,linf_norm";
pub const SNAPSHOT_HEADER: &str = "x,re_u,im_u,abs_u";

/// Shortest decimal string that parses back to `x`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// `%.6g`: six significant digits, trailing zeros dropped.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn epsilon_dir(eps: f64) -> String {
    format!("eps_{}", sig6(eps))
}

pub fn snapshot_name(t: f64) -> String {
    format!("snapshot_t{t:.6}.csv")
}

pub fn diagnostics_csv(record: &RunRecord) -> String {
    let mut out = String::with_capacity(64 * (record.rows.len() + 1));
    out.push_str(DIAGNOSTICS_HEADER);
    out.push('\n');
    for r in &record.rows {
        let cols = [r.t, r.mass, r.hamiltonian, r.kinetic, r.potential, r.interaction, r.hs_norm, r.l4_norm, r.linf_norm];
        out.push_str(&cols.map(num).join(","));
        out.push('\n');
    }
    out
}

pub fn snapshot_csv(snapshot: &Snapshot) -> String {
    let grid = snapshot.field.grid();
    let mut out = String::with_capacity(80 * (grid.len() + 1));
    out.push_str(SNAPSHOT_HEADER);
    out.push('\n');
    for (x, z) in grid.points().zip(snapshot.field.values()) {
        out.push_str(&[x, z.re, z.im, z.norm()].map(num).join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct FileEntry {
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WarningEntry {
    pub source: String,
    pub message: String,
    pub detail: Warning,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'a str,
    version: &'a str,
    command: &'a str,
    started_unix: u64,
    wall_clock_seconds: f64,
    diag_stride: u64,
    config: &'a str,
    files: &'a [FileEntry],
    warnings: &'a [WarningEntry],
}

/// Writes files under one output directory and remembers their checksums.
pub struct OutputDir {
    root: PathBuf,
    files: Vec<FileEntry>,
    warnings: Vec<WarningEntry>,
    started: Instant,
    started_unix: u64,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self> {
        fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(OutputDir {
            root: root.to_path_buf(),
            files: Vec::new(),
            warnings: Vec::new(),
            started: Instant::now(),
            started_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Writes `contents` to `relative` (with `/` separators).
    pub fn write(&mut self, relative: &str, contents: &[u8]) -> Result<()> {
        let path = self.root.join(relative);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.files.push(FileEntry {
            path: relative.to_string(),
            bytes: contents.len() as u64,
            sha256: hex::encode(Sha256::digest(contents)),
        });
        Ok(())
    }

    pub fn write_json(&mut self, relative: &str, value: &impl Serialize) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::io(self.root.join(relative), std::io::Error::other(e)))?;
        text.push('\n');
        self.write(relative, text.as_bytes())
    }

    /// Diagnostics and snapshots of one run under `prefix`.
    pub fn write_record(&mut self, prefix: &str, record: &RunRecord) -> Result<()> {
        let join = |name: &str| if prefix.is_empty() { name.to_string() } else { format!("{prefix}/{name}") };
        self.write(&join("diagnostics.csv"), diagnostics_csv(record).as_bytes())?;
        for snap in &record.snapshots {
            self.write(&join(&snapshot_name(snap.requested)), snapshot_csv(snap).as_bytes())?;
        }
        Ok(())
    }

    pub fn warn(&mut self, source: &str, warnings: &[Warning]) {
        for w in warnings {
            let dup = self.warnings.iter().any(|e| e.source == source && &e.detail == w);
            if !dup {
                self.warnings.push(WarningEntry { source: source.to_string(), message: w.to_string(), detail: w.clone() });
            }
        }
    }

    pub fn warnings(&self) -> &[WarningEntry] {
        &self.warnings
    }

    pub fn files(&self) -> &[FileEntry] {
        &self.files
    }

    /// Writes `manifest.json` listing every file written so far.
    pub fn finish(self, command: &str, config_toml: &str, diag_stride: u64) -> Result<PathBuf> {
        let manifest = Manifest {
            tool: "fnls",
            version: env!("CARGO_PKG_VERSION"),
            command,
            started_unix: self.started_unix,
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
            diag_stride,
            config: config_toml,
            files: &self.files,
            warnings: &self.warnings,
        };
        let path = self.root.join("manifest.json");
        let mut text =
            serde_json::to_string_pretty(&manifest).map_err(|e| CliError::io(&path, std::io::Error::other(e)))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}

/// One row of `summary.csv`.
#[derive(Debug, Clone, Copy)]
pub struct SummaryRow {
    pub epsilon: f64,
    pub omega: f64,
    pub sup_hs: f64,
    pub sup_l2_diff: Option<f64>,
    pub marker: Option<f64>,
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let with_diff = rows.iter().any(|r| r.sup_l2_diff.is_some());
    let with_marker = rows.iter().any(|r| r.marker.is_some());
    let mut out = String::from("epsilon,omega,sup_hs");
    if with_diff {
        out.push_str(",sup_l2_diff");
    }
    if with_marker {
        out.push_str(",marker");
    }
    out.push('\n');
    for r in rows {
        let mut cols = vec![num(r.epsilon), num(r.omega), num(r.sup_hs)];
        if with_diff {
            cols.push(r.sup_l2_diff.map(num).unwrap_or_default());
        }
        if with_marker {
            cols.push(r.marker.map(num).unwrap_or_default());
        }
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(1.0), "1");
        assert_eq!(sig6(0.7), "0.7");
        assert_eq!(sig6(0.01), "0.01");
        assert_eq!(sig6(0.005), "0.005");
        assert_eq!(sig6(0.015), "0.015");
        assert_eq!(sig6(0.0001), "0.0001");
        assert_eq!(sig6(0.00001), "1e-05");
        assert_eq!(sig6(0.123456789), "0.123457");
        assert_eq!(sig6(1234567.0), "1.23457e+06");
        assert_eq!(sig6(0.3), "0.3");
        assert_eq!(epsilon_dir(0.009), "eps_0.009");
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 5e-324, 123456.789, -2.5e17, 0.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn snapshot_names_use_six_decimals() {
        assert_eq!(snapshot_name(10.0), "snapshot_t10.000000.csv");
        assert_eq!(snapshot_name(0.25), "snapshot_t0.250000.csv");
    }

    #[test]
    fn summary_columns_follow_contents() {
        let row = SummaryRow { epsilon: 0.5, omega: 0.5, sup_hs: 2.0, sup_l2_diff: None, marker: None };
        assert_eq!(summary_csv(&[row]), "epsilon,omega,sup_hs\n0.5,0.5,2.0\n");
        let row = SummaryRow { marker: Some(3.0), ..row };
        assert!(summary_csv(&[row]).starts_with("epsilon,omega,sup_hs,marker\n"));
        let row = SummaryRow { sup_l2_diff: Some(1e-3), ..row };
        assert!(summary_csv(&[row]).starts_with("epsilon,omega,sup_hs,sup_l2_diff,marker\n"));
    }

    #[test]
    fn checksums_match_written_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = OutputDir::create(dir.path()).unwrap();
        out.write("a/b.csv", b"x\n1\n").unwrap();
        let entry = &out.files()[0];
        assert_eq!(entry.bytes, 4);
        assert_eq!(entry.sha256, hex::encode(Sha256::digest(b"x\n1\n")));
        assert_eq!(fs::read(dir.path().join("a/b.csv")).unwrap(), b"x\n1\n");
    }
}
