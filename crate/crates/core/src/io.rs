//! File formats. The `parse_*` functions take the text of one file and never
//! touch the filesystem; the `load_*` functions resolve the paths inside map
//! and presentation files relative to the file that names them.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::artin::{LabeledGraph, RawLabeledGraph};
use crate::complex::{CollapseCertificate, CubeComplex, RawComplex};
use crate::diagrams::RawDiagram;
use crate::error::{Error, Result};
use crate::maps::{validate_map, CombinatorialMap, RawMap};
use crate::presentation::CubicalPresentation;

/// Map file: paths of both complexes and the cell assignments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMapFile {
    pub domain: String,
    pub codomain: String,
    #[serde(flatten)]
    pub map: RawMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRelatorEntry {
    pub complex: String,
    pub map: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPresentationFile {
    pub base: String,
    pub relators: Vec<RawRelatorEntry>,
}

fn json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_raw_complex(text: &str) -> Result<RawComplex> {
    json(text)
}

pub fn parse_complex(text: &str) -> Result<CubeComplex> {
    parse_raw_complex(text)?.validate()
}

pub fn parse_map_file(text: &str) -> Result<RawMapFile> {
    json(text)
}

pub fn parse_presentation_file(text: &str) -> Result<RawPresentationFile> {
    json(text)
}

pub fn parse_diagram(text: &str) -> Result<RawDiagram> {
    json(text)
}

pub fn parse_labeled_graph(text: &str) -> Result<LabeledGraph> {
    LabeledGraph::from_raw(&json::<RawLabeledGraph>(text)?)
}

pub fn parse_certificate(text: &str) -> Result<CollapseCertificate> {
    json(text)
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::FileNotFound(format!("{}: {}", path.display(), e)))
}

fn beside(file: &Path, name: &str) -> PathBuf {
    file.parent().unwrap_or(Path::new(".")).join(name)
}

pub fn load_complex(path: &Path) -> Result<CubeComplex> {
    parse_complex(&read(path)?)
}

/// A map file together with its domain and codomain.
pub fn load_map(path: &Path) -> Result<CombinatorialMap> {
    let raw = parse_map_file(&read(path)?)?;
    let domain = Arc::new(load_complex(&beside(path, &raw.domain))?);
    let codomain = Arc::new(load_complex(&beside(path, &raw.codomain))?);
    validate_map(&raw.map, domain, codomain)
}

/// A presentation file; relator maps must land on the base.
pub fn load_presentation(path: &Path) -> Result<CubicalPresentation> {
    let raw = parse_presentation_file(&read(path)?)?;
    let base = Arc::new(load_complex(&beside(path, &raw.base))?);
    let mut relators = Vec::new();
    for entry in &raw.relators {
        let map = parse_map_file(&read(&beside(path, &entry.map))?)?;
        let domain = Arc::new(load_complex(&beside(path, &entry.complex))?);
        relators.push(validate_map(&map.map, domain, base.clone())?);
    }
    CubicalPresentation::new(base, relators)
}

pub fn load_labeled_graph(path: &Path) -> Result<LabeledGraph> {
    parse_labeled_graph(&read(path)?)
}

pub fn load_diagram(path: &Path) -> Result<RawDiagram> {
    parse_diagram(&read(path)?)
}

pub fn load_certificate(path: &Path) -> Result<CollapseCertificate> {
    parse_certificate(&read(path)?)
}
