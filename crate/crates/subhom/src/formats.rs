//! CSV and JSON formats.
//!
//! Matrices are `{"rows", "cols", "p", "entries"}` with row-major entries.
//! Point clouds are headerless CSV, one point per line.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use subhom_core::{
    BettiVector, ConstructionKind, ConstructionReport, FieldMatrix, HomologyBasisEstimate, InducedMap,
    PersistencePair, PointCloud, PrimeField, SimplicialComplex,
};

use crate::baselines::{BenchSummary, BenchmarkRecord};
use crate::ensemble::{Ensemble, EnsembleRecord, FullSpace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub p: u32,
    pub entries: Vec<u32>,
}

impl From<&FieldMatrix> for MatrixJson {
    fn from(m: &FieldMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), p: m.field().modulus(), entries: m.entries().to_vec() }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> subhom_core::Result<FieldMatrix> {
        FieldMatrix::from_entries(PrimeField::new(self.p)?, self.rows, self.cols, self.entries.clone())
    }
}

/// One induced map as stored in an ensemble file. Only `sample_id`, `size`,
/// `k` and `matrix` are required on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordJson {
    pub sample_id: String,
    pub size: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    pub k: usize,
    pub matrix: MatrixJson,
    #[serde(default)]
    pub betti_sub: Option<Vec<usize>>,
    #[serde(default)]
    pub timing_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_hash: Option<String>,
}

impl From<&EnsembleRecord> for RecordJson {
    fn from(r: &EnsembleRecord) -> Self {
        Self {
            sample_id: r.sample_id.clone(),
            size: r.size,
            seed: Some(r.seed),
            k: r.k,
            matrix: (&r.matrix).into(),
            betti_sub: Some(r.betti_sub.0.clone()),
            timing_ms: r.timing_ms,
            threshold: Some(r.threshold),
            sample_hash: Some(r.sample_hash.clone()),
        }
    }
}

impl RecordJson {
    pub fn to_induced_map(&self) -> subhom_core::Result<InducedMap> {
        Ok(InducedMap::new(self.matrix.to_matrix()?, self.k, self.sample_id.clone(), self.size))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullSpaceJson {
    pub size: usize,
    pub threshold: f64,
    pub betti: Vec<usize>,
    pub simplex_counts: [usize; 3],
    pub timing_ms: Option<f64>,
}

impl From<&FullSpace> for FullSpaceJson {
    fn from(f: &FullSpace) -> Self {
        Self {
            size: f.size,
            threshold: f.threshold,
            betti: f.betti.0.clone(),
            simplex_counts: f.simplex_counts,
            timing_ms: f.timing_ms,
        }
    }
}

/// Ensemble records plus a summary of each full complex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleJson {
    pub maps: Vec<RecordJson>,
    pub full: Vec<FullSpaceJson>,
}

impl From<&Ensemble> for EnsembleJson {
    fn from(e: &Ensemble) -> Self {
        Self { maps: e.records.iter().map(Into::into).collect(), full: e.full.iter().map(Into::into).collect() }
    }
}

/// Reads an ensemble file: either a bare array of records or an object with
/// a `maps` array.
pub fn read_ensemble(path: &Path) -> Result<Vec<InducedMap>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        Bare(Vec<RecordJson>),
        Wrapped { maps: Vec<RecordJson> },
    }
    let records = match read_json::<Input>(path)? {
        Input::Bare(r) | Input::Wrapped { maps: r } => r,
    };
    records
        .iter()
        .map(|r| r.to_induced_map().map_err(|e| Error::malformed(path, e)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub sample_id: String,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub p: u32,
    /// Accepted vectors, zero padding included.
    pub columns: Vec<Vec<u32>>,
    pub provenance: Vec<ProvenanceJson>,
    pub beta_estimate: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub n_zeros: usize,
}

impl BasisJson {
    pub fn new(basis: &HomologyBasisEstimate, estimate: &BettiVector, size: Option<usize>) -> Self {
        Self {
            p: basis.basis.field().modulus(),
            columns: basis.basis.columns().collect(),
            provenance: basis
                .provenance
                .iter()
                .map(|(sample_id, column)| ProvenanceJson { sample_id: sample_id.clone(), column: *column })
                .collect(),
            beta_estimate: estimate.0.clone(),
            size,
            n_zeros: basis.n_zeros,
        }
    }
}

/// Simplices by dimension, each a list of vertex tuples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub threshold: Option<f64>,
    pub simplices: Vec<Vec<Vec<u32>>>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(c: &SimplicialComplex) -> Self {
        let simplices = (0..=2).map(|k| (0..c.count(k)).map(|i| c.simplex(k, i)).collect()).collect();
        Self { threshold: c.threshold(), simplices }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub subsets: Vec<Vec<usize>>,
    pub kernels: Vec<Vec<u32>>,
    pub common: Option<usize>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub kind: String,
    pub found: bool,
    pub witness: Option<WitnessJson>,
}

impl From<&ConstructionReport> for ReportJson {
    fn from(r: &ConstructionReport) -> Self {
        Self {
            kind: match r.kind {
                ConstructionKind::Figure8 => "figure8",
                ConstructionKind::Annulus => "annulus",
            }
            .into(),
            found: r.found,
            witness: r.witness.as_ref().map(|w| WitnessJson {
                subsets: w.subsets.clone(),
                kernels: w.kernels.clone(),
                common: w.common,
                degenerate: w.degenerate,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummaryJson {
    pub method: String,
    pub size: usize,
    pub runs: usize,
    pub mean_wall_time_s: f64,
    pub mean_homology: Vec<f64>,
}

impl From<&BenchSummary> for BenchSummaryJson {
    fn from(s: &BenchSummary) -> Self {
        Self {
            method: s.method.to_string(),
            size: s.size,
            runs: s.runs,
            mean_wall_time_s: s.mean_wall_time_s,
            mean_homology: s.mean_homology.clone(),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::malformed(path, e))
}

/// Pretty-printed with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::malformed(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_matrix(path: &Path) -> Result<FieldMatrix> {
    read_json::<MatrixJson>(path)?.to_matrix().map_err(|e| Error::malformed(path, e))
}

pub fn write_matrix(path: &Path, m: &FieldMatrix) -> Result<()> {
    write_json(path, &MatrixJson::from(m))
}

/// Reads a headerless CSV of coordinates; the first line fixes the dimension.
pub fn read_points(path: &Path) -> Result<PointCloud> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::malformed(path, e))?;
    let mut dim = None;
    let mut coords = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::malformed(path, e))?;
        let d = *dim.get_or_insert(record.len());
        if record.len() != d {
            return Err(Error::malformed(path, format!("line {} has {} values, expected {d}", line + 1, record.len())));
        }
        for field in record.iter() {
            let v: f64 = field
                .parse()
                .map_err(|_| Error::malformed(path, format!("line {}: `{field}` is not a number", line + 1)))?;
            coords.push(v);
        }
    }
    let dim = dim.ok_or_else(|| Error::malformed(path, "no points"))?;
    PointCloud::new(dim, coords).map_err(|e| Error::malformed(path, e))
}

/// Writes shortest round-trip decimal coordinates.
pub fn write_points(path: &Path, cloud: &PointCloud) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_path(path).map_err(|e| Error::malformed(path, e))?;
    for p in cloud.points() {
        writer.write_record(p.iter().map(|v| v.to_string())).map_err(|e| Error::malformed(path, e))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

/// `birth,death,dim` with `inf` for classes that never die.
pub fn write_persistence(path: &Path, pairs: &[PersistencePair]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::malformed(path, e))?;
    writer.write_record(["birth", "death", "dim"]).map_err(|e| Error::malformed(path, e))?;
    for p in pairs {
        let death = p.death.map_or_else(|| "inf".to_string(), |d| d.to_string());
        writer
            .write_record([p.birth.to_string(), death, p.dim.to_string()])
            .map_err(|e| Error::malformed(path, e))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

/// `method,size,seed,wall_time_s,beta0,beta1,samples_hash`.
pub fn write_bench_csv(path: &Path, records: &[BenchmarkRecord]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::malformed(path, e))?;
    writer
        .write_record(["method", "size", "seed", "wall_time_s", "beta0", "beta1", "samples_hash"])
        .map_err(|e| Error::malformed(path, e))?;
    for r in records {
        writer
            .write_record([
                r.method.to_string(),
                r.size.to_string(),
                r.seed.to_string(),
                r.wall_time_s.to_string(),
                r.homology.get(0).to_string(),
                r.homology.get(1).to_string(),
                r.samples_hash.clone(),
            ])
            .map_err(|e| Error::malformed(path, e))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

/// Appends a line to stdout-like sinks; used by the CLI for summaries.
pub fn write_line(out: &mut impl Write, line: &str) -> std::io::Result<()> {
    writeln!(out, "{line}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let m = FieldMatrix::from_rows(PrimeField::F3, &[[0, 1, 2], [2, 0, 1]]);
        write_matrix(&path, &m).unwrap();
        assert_eq!(read_matrix(&path).unwrap(), m);
    }

    #[test]
    fn malformed_matrix_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        fs::write(&path, r#"{"rows": 1, "cols": 2, "p": 3, "entries": [0, 3]}"#).unwrap();
        assert!(read_matrix(&path).unwrap_err().is_usage());
        fs::write(&path, "not json").unwrap();
        assert!(read_matrix(&path).unwrap_err().is_usage());
        fs::write(&path, r#"{"rows": 1, "cols": 1, "p": 4, "entries": [0]}"#).unwrap();
        assert!(read_matrix(&path).is_err());
    }

    #[test]
    fn points_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        let c = PointCloud::from_points(&[[0.1, -2.5], [1e-17, 3.0]]).unwrap();
        write_points(&path, &c).unwrap();
        assert_eq!(read_points(&path).unwrap(), c);
        fs::write(&path, "1,2\n3\n").unwrap();
        assert!(read_points(&path).is_err());
    }
}
