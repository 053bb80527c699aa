//! Input documents, result documents and the batch driver behind the
//! `skeleta` binary.
//!
//! Two input formats are accepted. JSON:
//!
//! ```text
//! {"name": "p2-cubic", "vertices": [[2,-1],[-1,2],[-1,-1]]}
//! ```
//!
//! with optional `"name"`, `"ambient_rank"` and `"interpretation"`
//! (`"dual"` or `"primal"`); a top-level array holds several documents.
//! Text: a header line `<d> <p>` followed by `p` lines of `d` integers, one
//! vertex per line. Several blocks may follow each other; blank lines and
//! lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::time::Instant;

use itertools::Itertools;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{complex_of, homology_q, homology_z, HomologyReport, Ring};
use crate::oracles::{verify_computed, VerificationReport};
use crate::polytope::{
    enumerate_faces, is_facet_simplicial, is_reflexive, is_vertex_simplicial, lattice_points,
    normalized_volume, polar_dual, LatticePolytope,
};
use crate::skeleton::Skeleton;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Format {
    /// JSON if the first non-blank byte opens an object or array.
    pub fn detect(bytes: &[u8]) -> Self {
        match bytes.iter().find(|b| !b.is_ascii_whitespace()) {
            Some(b'{') | Some(b'[') => Format::Json,
            _ => Format::Text,
        }
    }
}

/// Which polytope of the reflexive pair the vertices describe.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpretation {
    /// The facet-simplicial side, used directly.
    #[default]
    Dual,
    /// The other side; dualized before use.
    Primal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient_rank: usize,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default)]
    pub interpretation: Interpretation,
}

#[derive(Deserialize)]
struct RawDocument {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    ambient_rank: Option<usize>,
    vertices: Vec<Vec<i64>>,
    #[serde(default)]
    interpretation: Interpretation,
}

fn parse_error(position: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        position: position.into(),
        message: message.into(),
    }
}

impl PolytopeDocument {
    /// Checks shape and duplicates. `origin` names the document in
    /// diagnostics.
    fn validated(
        name: Option<String>,
        ambient_rank: Option<usize>,
        vertices: Vec<Vec<i64>>,
        interpretation: Interpretation,
        origin: &str,
        row_position: impl Fn(usize) -> String,
    ) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(parse_error(origin, "no vertices"));
        };
        let d = ambient_rank.unwrap_or(first.len());
        if d == 0 {
            return Err(parse_error(origin, "ambient rank must be positive"));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != d {
                return Err(parse_error(
                    row_position(i),
                    format!("expected {d} coordinates, found {}", v.len()),
                ));
            }
            if let Some(j) = vertices[..i].iter().position(|w| w == v) {
                return Err(parse_error(
                    row_position(i),
                    format!("duplicate vertex (same as vertex {j})"),
                ));
            }
        }
        Ok(Self {
            name,
            ambient_rank: d,
            vertices,
            interpretation,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    /// Text form; the name and interpretation are not representable.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.ambient_rank, self.vertices.len());
        for v in &self.vertices {
            out.push_str(&v.iter().join(" "));
            out.push('\n');
        }
        out
    }

    /// The polytope the skeleton is built from (dualized for primal input).
    pub fn skeleton_polytope(&self) -> Result<LatticePolytope> {
        let p = LatticePolytope::new(self.vertices.clone())?;
        match self.interpretation {
            Interpretation::Dual => Ok(p),
            Interpretation::Primal => polar_dual(&p),
        }
    }
}

/// Parses exactly one document.
pub fn parse_polytope(bytes: &[u8], format: Format) -> Result<PolytopeDocument> {
    let mut docs = parse_corpus(bytes, format)?;
    if docs.len() != 1 {
        return Err(parse_error(
            "input",
            format!("expected one polytope, found {}", docs.len()),
        ));
    }
    Ok(docs.remove(0))
}

/// Parses one or more documents.
pub fn parse_corpus(bytes: &[u8], format: Format) -> Result<Vec<PolytopeDocument>> {
    match format {
        Format::Json => parse_json(bytes),
        Format::Text => parse_text(bytes),
    }
}

fn parse_json(bytes: &[u8]) -> Result<Vec<PolytopeDocument>> {
    let located = |e: serde_json::Error| {
        parse_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    };
    // dispatch on the opening bracket so serde keeps its line/column info
    let many = bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'[');
    let raws: Vec<RawDocument> = if many {
        serde_json::from_slice(bytes).map_err(located)?
    } else {
        vec![serde_json::from_slice(bytes).map_err(located)?]
    };
    raws.into_iter()
        .enumerate()
        .map(|(k, r)| {
            let prefix = if many {
                format!("[{k}].")
            } else {
                String::new()
            };
            PolytopeDocument::validated(
                r.name,
                r.ambient_rank,
                r.vertices,
                r.interpretation,
                &format!("{prefix}vertices"),
                |i| format!("{prefix}vertices[{i}]"),
            )
        })
        .collect()
}

fn parse_text(bytes: &[u8]) -> Result<Vec<PolytopeDocument>> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_error("input", e.to_string()))?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let ints = |lineno: usize, line: &str| -> Result<Vec<i64>> {
        line.split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| {
                    parse_error(format!("line {lineno}"), format!("not an integer: {tok:?}"))
                })
            })
            .collect()
    };

    let mut docs = Vec::new();
    while let Some((lineno, header)) = lines.next() {
        let h = ints(lineno, header)?;
        let [d, count] = h[..] else {
            return Err(parse_error(
                format!("line {lineno}"),
                "header must be \"<d> <p>\"",
            ));
        };
        if d <= 0 || count <= 0 {
            return Err(parse_error(
                format!("line {lineno}"),
                "d and p must be positive",
            ));
        }
        let mut vertices = Vec::with_capacity(count as usize);
        let mut linenos = Vec::with_capacity(count as usize);
        for k in 0..count {
            let Some((ln, row)) = lines.next() else {
                return Err(parse_error(
                    format!("line {lineno}"),
                    format!("expected {count} vertex lines, found {k}"),
                ));
            };
            vertices.push(ints(ln, row)?);
            linenos.push(ln);
        }
        docs.push(PolytopeDocument::validated(
            None,
            Some(d as usize),
            vertices,
            Interpretation::Dual,
            &format!("line {lineno}"),
            |i| format!("line {}", linenos[i]),
        )?);
    }
    if docs.is_empty() {
        return Err(parse_error("input", "no polytope found"));
    }
    Ok(docs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub reflexive: bool,
    pub facet_simplicial: bool,
    pub vertex_simplicial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePointCounts {
    pub interior: u64,
    pub boundary: u64,
}

/// Output of `skeleta check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub polytope: PolytopeDocument,
    /// Vertices the skeleton would be built from (differs for primal input).
    pub skeleton_vertices: Vec<Vec<i64>>,
    pub flags: Flags,
    pub f_vector: Option<Vec<usize>>,
    pub lattice_points: LatticePointCounts,
    pub normalized_volume: u64,
}

impl CheckReport {
    pub fn usable(&self) -> bool {
        self.flags.reflexive && self.flags.facet_simplicial
    }
}

fn volume_u64(p: &LatticePolytope) -> Result<u64> {
    normalized_volume(p)
        .to_u64()
        .ok_or_else(|| Error::Internal("normalized volume exceeds 64 bits".into()))
}

pub fn run_check(doc: &PolytopeDocument) -> Result<CheckReport> {
    let p = doc.skeleton_polytope()?;
    let flags = Flags {
        reflexive: is_reflexive(&p),
        facet_simplicial: is_facet_simplicial(&p),
        vertex_simplicial: is_vertex_simplicial(&p),
    };
    let (interior, boundary) = lattice_points(&p);
    Ok(CheckReport {
        polytope: doc.clone(),
        skeleton_vertices: p.vertices().to_vec(),
        f_vector: enumerate_faces(&p).ok().map(|l| l.f_vector()),
        flags,
        lattice_points: LatticePointCounts { interior, boundary },
        normalized_volume: volume_u64(&p)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub ring: Ring,
    pub verify: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            ring: Ring::Q,
            verify: false,
        }
    }
}

/// One row of the per-face group table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRow {
    pub vertices: Vec<usize>,
    pub dim: usize,
    pub torus_rank: usize,
    pub invariant_factors: Vec<u64>,
    pub component_order: usize,
    /// Faces containing this one (including itself), as vertex tuples.
    pub chart: Vec<Vec<usize>>,
}

/// Wall-clock time per phase, in microseconds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub check_us: u64,
    pub faces_us: u64,
    pub groups_us: u64,
    pub complex_us: u64,
    pub homology_us: u64,
    pub verify_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub polytope: PolytopeDocument,
    pub skeleton_vertices: Vec<Vec<i64>>,
    pub flags: Flags,
    pub f_vector: Vec<usize>,
    pub lattice_points: LatticePointCounts,
    pub normalized_volume: u64,
    pub faces: Vec<FaceRow>,
    pub homology: HomologyReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    pub timing: Timing,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results always serialize")
    }
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros().try_into().unwrap_or(u64::MAX)
}

/// check → faces → groups → complex → E² → (optional) verification.
pub fn run_homology(doc: &PolytopeDocument, options: RunOptions) -> Result<ResultDocument> {
    let mut timing = Timing::default();

    let t = Instant::now();
    let p = doc.skeleton_polytope()?;
    let flags = Flags {
        reflexive: is_reflexive(&p),
        facet_simplicial: is_facet_simplicial(&p),
        vertex_simplicial: is_vertex_simplicial(&p),
    };
    let (interior, boundary) = lattice_points(&p);
    let volume = volume_u64(&p)?;
    timing.check_us = micros(t);

    let t = Instant::now();
    let lattice = enumerate_faces(&p)?;
    timing.faces_us = micros(t);

    let t = Instant::now();
    let skeleton = Skeleton::with_lattice(&p, lattice)?;
    timing.groups_us = micros(t);

    let t = Instant::now();
    let complex = complex_of(&skeleton)?;
    timing.complex_us = micros(t);

    let t = Instant::now();
    let q = homology_q(&complex)?;
    let homology = match options.ring {
        Ring::Q => q.clone(),
        Ring::Z => homology_z(&complex)?,
    };
    timing.homology_us = micros(t);

    let verification = options.verify.then(|| {
        let t = Instant::now();
        let id = doc.name.clone().unwrap_or_default();
        let report = verify_computed(id, &p, &complex, &q);
        timing.verify_us = micros(t);
        report
    });

    let lattice = skeleton.lattice();
    let faces = skeleton
        .strata()
        .into_iter()
        .zip(lattice.ids())
        .map(|((face, g), id)| {
            Ok(FaceRow {
                vertices: face.vertices.clone(),
                dim: face.dim(),
                torus_rank: g.torus_rank,
                invariant_factors: g
                    .invariant_factors
                    .iter()
                    .map(|f| {
                        f.to_u64().ok_or_else(|| {
                            Error::Internal("invariant factor exceeds 64 bits".into())
                        })
                    })
                    .try_collect()?,
                component_order: g.component_order,
                chart: skeleton
                    .chart(id)
                    .into_iter()
                    .map(|c| lattice.face(c).vertices.clone())
                    .collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ResultDocument {
        polytope: doc.clone(),
        skeleton_vertices: p.vertices().to_vec(),
        flags,
        f_vector: lattice.f_vector(),
        lattice_points: LatticePointCounts { interior, boundary },
        normalized_volume: volume,
        faces,
        homology,
        verification,
        timing,
    })
}

/// Human-readable report for `skeleta homology --table`.
pub fn render_homology_table(res: &ResultDocument) -> String {
    let mut out = String::new();
    let h = &res.homology;
    if let Some(name) = &res.polytope.name {
        let _ = writeln!(out, "polytope: {name}");
    }
    let _ = writeln!(
        out,
        "vertices: {}",
        res.skeleton_vertices
            .iter()
            .map(|v| format!("({})", v.iter().join(",")))
            .join(" ")
    );
    let _ = writeln!(out, "f-vector: {}", res.f_vector.iter().join(" "));
    let _ = writeln!(out, "normalized volume: {}", res.normalized_volume);
    let _ = writeln!(out, "ring: {}", h.ring);
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:>5} {:>3} {:>8} {:>8}",
        "deg", "r", "dim C", "rank E2"
    );
    for (deg, row) in h.e2_dims.iter().enumerate() {
        for (r, e2) in row.iter().enumerate() {
            let _ = writeln!(out, "{deg:>5} {r:>3} {:>8} {e2:>8}", h.chain_dims[deg][r]);
        }
    }
    let _ = writeln!(out);
    match &h.betti {
        Some(b) => {
            let _ = writeln!(
                out,
                "betti (assuming E2 = E-infinity): {}",
                b.iter().join(" ")
            );
        }
        None => {
            let _ = writeln!(out, "betti: not reported over Z (only the E2 page)");
        }
    }
    for t in &h.torsion {
        let _ = writeln!(
            out,
            "torsion at (deg {}, r {}): {}",
            t.deg,
            t.r,
            t.factors.iter().map(|f| format!("Z/{f}")).join(" + ")
        );
    }
    let _ = writeln!(out, "euler: {}", h.euler);
    if let Some(v) = &res.verification {
        let _ = writeln!(out);
        let _ = write!(out, "{}", render_verification(v));
    }
    out
}

pub fn render_verification(v: &VerificationReport) -> String {
    let mut out = format!("verification: {}\n", v.status());
    for c in &v.checks {
        let _ = writeln!(
            out,
            "  [{}] {}: expected {}, computed {}",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.expected,
            c.computed
        );
    }
    for c in &v.expectations {
        let _ = writeln!(
            out,
            "  [{}] {} (expectation): expected {}, computed {}",
            if c.passed { "ok" } else { "unexpected" },
            c.name,
            c.expected,
            c.computed
        );
    }
    out
}

/// Table for `skeleta strata`.
pub fn render_strata_table(res: &ResultDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<16} {:>3} {:>5} {:<16} {:>4}  chart",
        "face", "dim", "torus", "factors", "|P|"
    );
    for row in &res.faces {
        let _ = writeln!(
            out,
            "{:<16} {:>3} {:>5} {:<16} {:>4}  {}",
            format!("{{{}}}", row.vertices.iter().join(",")),
            row.dim,
            row.torus_rank,
            row.invariant_factors.iter().join(","),
            row.component_order,
            row.chart
                .iter()
                .map(|c| format!("{{{}}}", c.iter().join(",")))
                .join(" ")
        );
    }
    out
}

/// An input to [`run_batch`]: a parsed document or a failure to parse one.
#[derive(Clone, Debug)]
pub struct BatchItem {
    pub name: String,
    pub document: Result<PolytopeDocument>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    Invalid,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRow {
    pub name: String,
    pub status: RowStatus,
    pub f_vector: Vec<usize>,
    pub betti: Vec<usize>,
    pub euler: Option<i64>,
    /// "pass", "fail", or "-" when nothing was verified.
    pub verify: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl BatchRow {
    fn failed(name: String, err: &Error) -> Self {
        Self {
            name,
            status: if err.is_input_error() {
                RowStatus::Invalid
            } else {
                RowStatus::Error
            },
            f_vector: Vec::new(),
            betti: Vec::new(),
            euler: None,
            verify: "-".into(),
            message: Some(err.to_string()),
        }
    }
}

fn batch_row(item: &BatchItem, options: RunOptions) -> BatchRow {
    let doc = match &item.document {
        Ok(doc) => doc,
        Err(e) => return BatchRow::failed(item.name.clone(), e),
    };
    match run_homology(doc, options) {
        Ok(res) => BatchRow {
            name: item.name.clone(),
            status: RowStatus::Ok,
            f_vector: res.f_vector,
            // over Z the E2 ranks agree with Q, so the antidiagonal sums do too
            betti: res
                .homology
                .betti
                .clone()
                .unwrap_or_else(|| e2_antidiagonals(&res.homology)),
            euler: Some(res.homology.euler),
            verify: res
                .verification
                .as_ref()
                .map_or("-".into(), |v| v.status().to_string()),
            message: None,
        },
        Err(e) => BatchRow::failed(item.name.clone(), &e),
    }
}

fn e2_antidiagonals(h: &HomologyReport) -> Vec<usize> {
    (0..=h.n)
        .map(|k| (0..=k).map(|deg| h.e2(deg, k - deg)).sum())
        .collect()
}

/// Runs every item on a pool of `jobs` workers. Rows come back in input
/// order whatever the completion order.
pub fn run_batch(items: &[BatchItem], options: RunOptions, jobs: usize) -> Result<Vec<BatchRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        items
            .par_iter()
            .map(|item| batch_row(item, options))
            .collect()
    }))
}

pub fn render_tsv(rows: &[BatchRow]) -> String {
    let mut out = String::from("name\tstatus\tf_vector\tbetti\teuler\tverify\n");
    for r in rows {
        let status = match r.status {
            RowStatus::Ok => "ok",
            RowStatus::Invalid => "invalid",
            RowStatus::Error => "error",
        };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.name,
            status,
            r.f_vector.iter().join(","),
            r.betti.iter().join(","),
            r.euler.map_or("-".to_string(), |e| e.to_string()),
            r.verify
        );
    }
    out
}

pub fn render_jsonl(rows: &[BatchRow]) -> String {
    rows.iter()
        .map(|r| serde_json::to_string(r).expect("rows always serialize") + "\n")
        .collect()
}

impl Error {
    /// Errors that mean "bad input" rather than "bug".
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::InvalidPolytope(_)
                | Error::OriginNotInterior
                | Error::DualNotLattice(_)
                | Error::NotReflexive
                | Error::NotFacetSimplicial
                | Error::WrongDimension { .. }
        )
    }
}
