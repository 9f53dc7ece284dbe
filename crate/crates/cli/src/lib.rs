//! Library side of the `srdepth` binary: report types and subcommand runners.

pub mod report;

use std::path::{Path, PathBuf};

use serde::Serialize;
use srdepth::cohomology::{reduced_cohomology, CohomologyError};
use srdepth::complex::SimplicialComplex;
use srdepth::corpus::{named_corpus, random_specs, RandomSpec};
use srdepth::depth::{depth, DepthError};
use srdepth::face_ring::FaceRingError;
use srdepth::io::{load, to_facet_text, ParseError};
use srdepth::limits::{verify_srdec, LimitsError};
use srdepth::linalg::{FieldSpec, LinalgError};
use srdepth::verify::{verify_key_lemma, verify_munkres, verify_star_link, VerifyError};
use thiserror::Error;

pub use report::AnalysisReport;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    BadArgument(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error(transparent)]
    Limits(#[from] LimitsError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

fn linalg_bug(e: &LinalgError) -> bool {
    matches!(
        e,
        LinalgError::NotAComplex { .. } | LinalgError::ShapeMismatch { .. }
    )
}

fn cohomology_bug(e: &CohomologyError) -> bool {
    matches!(e, CohomologyError::Linalg(l) if linalg_bug(l))
}

fn depth_bug(e: &DepthError) -> bool {
    match e {
        DepthError::EngineDisagreement(_) => true,
        DepthError::Cohomology(c) => cohomology_bug(c),
        DepthError::TooLarge { .. } => false,
    }
}

fn limits_bug(e: &LimitsError) -> bool {
    match e {
        LimitsError::Linalg(l) => linalg_bug(l),
        LimitsError::Cohomology(c) => cohomology_bug(c),
        LimitsError::FaceRing(FaceRingError::OddDegree(_)) => false,
        LimitsError::FaceRing(_) => true,
    }
}

impl CliError {
    /// 2 for bad input or IO, 3 for a broken internal invariant.
    pub fn exit_code(&self) -> u8 {
        let bug = match self {
            CliError::Parse(_) | CliError::BadArgument(_) | CliError::Io { .. } => false,
            CliError::Depth(e) => depth_bug(e),
            CliError::Limits(e) => limits_bug(e),
            CliError::Cohomology(e) => cohomology_bug(e),
            CliError::Verify(VerifyError::Depth(e)) => depth_bug(e),
            CliError::Verify(VerifyError::Limits(e)) => limits_bug(e),
            CliError::Verify(VerifyError::Cohomology(e)) => cohomology_bug(e),
        };
        if bug {
            3
        } else {
            2
        }
    }
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    Ok(load(path)?)
}

/// Internal degree bound: `4m` unless given, and it must be even.
pub fn resolve_d_max(k: &SimplicialComplex, d_max: Option<u32>) -> Result<u32, CliError> {
    let d = d_max.unwrap_or(4 * k.num_vertices() as u32);
    if d % 2 == 1 {
        return Err(CliError::BadArgument(format!(
            "--d-max must be even, got {d}"
        )));
    }
    Ok(d)
}

pub fn analyze_depth(k: &SimplicialComplex, field: FieldSpec) -> Result<AnalysisReport, CliError> {
    let report = depth(k, field)?;
    let coh = reduced_cohomology(k, field)?;
    Ok(AnalysisReport::new(k, &report, coh.to_map()))
}

pub fn analyze_limits(
    k: &SimplicialComplex,
    field: FieldSpec,
    d_max: u32,
) -> Result<AnalysisReport, CliError> {
    let mut report = analyze_depth(k, field)?;
    let (check, profile) = verify_srdec(k, field, d_max)?;
    report.set_limits(&profile);
    report.record(&check);
    Ok(report)
}

pub fn analyze_verify(
    k: &SimplicialComplex,
    field: FieldSpec,
    d_max: u32,
) -> Result<AnalysisReport, CliError> {
    let mut report = analyze_limits(k, field, d_max)?;
    report.record(&verify_star_link(k, field)?);
    report.record(&verify_key_lemma(k, field)?.0);
    report.record(&verify_munkres(k, field)?);
    Ok(report)
}

#[derive(Serialize)]
struct NamedEntry {
    name: String,
    file: String,
    m: usize,
    dim: isize,
    f_vector: Vec<usize>,
}

#[derive(Serialize)]
struct RandomManifest<'a> {
    max_m: u32,
    count: usize,
    seed: u64,
    complexes: &'a [RandomSpec],
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

/// Writes `<name>.facets` per named complex plus `manifest.json`; returns the
/// number of complexes.
pub fn write_named_corpus(dir: &Path) -> Result<usize, CliError> {
    prepare_dir(dir)?;
    let mut manifest = Vec::new();
    for entry in named_corpus() {
        let file = format!("{}.facets", entry.name);
        write_file(&dir.join(&file), &to_facet_text(&entry.complex))?;
        manifest.push(NamedEntry {
            name: entry.name,
            file,
            m: entry.complex.num_vertices(),
            dim: entry.complex.dim(),
            f_vector: entry.complex.f_vector(),
        });
    }
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&dir.join("manifest.json"), &(json + "\n"))?;
    Ok(manifest.len())
}

pub fn write_random_corpus(
    dir: &Path,
    max_m: u32,
    count: usize,
    seed: u64,
) -> Result<usize, CliError> {
    if !(3..=24).contains(&max_m) {
        return Err(CliError::BadArgument(format!(
            "--m must lie in 3..=24, got {max_m}"
        )));
    }
    prepare_dir(dir)?;
    let specs = random_specs(count, max_m, seed);
    for spec in &specs {
        write_file(
            &dir.join(format!("{}.facets", spec.name)),
            &to_facet_text(&spec.build()),
        )?;
    }
    let manifest = RandomManifest {
        max_m,
        count,
        seed,
        complexes: &specs,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&dir.join("manifest.json"), &(json + "\n"))?;
    Ok(specs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use srdepth::complex::ComplexError;
    use srdepth::depth::DepthReport;

    #[test]
    fn exit_codes() {
        let broken = LinalgError::NotAComplex { n: 1 };
        assert_eq!(CliError::Limits(broken.clone().into()).exit_code(), 3);
        assert_eq!(CliError::Cohomology(broken.into()).exit_code(), 3);
        let report = DepthReport {
            field: FieldSpec::Prime(2),
            dim: 0,
            r_reisner: 1,
            r_topological: 1,
            r_ab: 0,
            cohen_macaulay: false,
            agree: false,
            witness: None,
        };
        let disagreement = DepthError::EngineDisagreement(Box::new(report));
        assert_eq!(CliError::Verify(disagreement.clone().into()).exit_code(), 3);
        assert_eq!(CliError::Depth(disagreement).exit_code(), 3);

        let too_large = DepthError::TooLarge { m: 20, bound: 14 };
        assert_eq!(CliError::Depth(too_large).exit_code(), 2);
        assert_eq!(
            CliError::Parse(ComplexError::EmptyInput.into()).exit_code(),
            2
        );
        assert_eq!(
            CliError::Limits(FaceRingError::OddDegree(3).into()).exit_code(),
            2
        );
    }
}
