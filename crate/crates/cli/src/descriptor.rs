//! Versioned JSON descriptors. Three kinds: `representation` (field,
//! dimension, generator matrices), `fibration` (integer puncture
//! matrices), and `hodge_rep` (a representation plus graded datum and
//! polarization). Every numeric value is a string, so nothing is ever
//! rounded. Parsing is strict: unknown fields, wrong shapes, and
//! malformed entries are rejected with a location.

use crate::entry::{parse_entry, parse_i64, parse_usize, render_entry, EntryError};
use crate::error::CliError;
use monodromy_core::fibration::{FibrationDescriptor, SL2ZElement};
use monodromy_core::hodge::HodgeDatum;
use monodromy_core::rep::Representation;
use monodromy_core::{MatrixNF, NumberField};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawField {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDatum {
    pub weight: String,
    /// Pairs (graded index, dimension).
    pub pieces: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDescriptor {
    pub schema_version: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<RawField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub punctures: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<RawDatum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarization: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepPayload {
    pub field: NumberField,
    pub dimension: usize,
    pub generators: Vec<MatrixNF>,
}

impl RepPayload {
    pub fn to_representation(&self) -> Result<Representation, CliError> {
        Representation::on_free_group(self.field, self.dimension, self.generators.clone())
            .map_err(CliError::from)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationPayload {
    /// Row-major 2x2 integer matrices, one per puncture.
    pub punctures: Vec<[i64; 4]>,
}

impl FibrationPayload {
    pub fn to_fibration(&self) -> Result<FibrationDescriptor, CliError> {
        let punctures = self
            .punctures
            .iter()
            .map(|&[a, b, c, d]| SL2ZElement::new(a, b, c, d))
            .collect::<Result<Vec<_>, _>>()?;
        FibrationDescriptor::new(0, punctures, None).map_err(CliError::from)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HodgePayload {
    pub rep: RepPayload,
    pub datum: HodgeDatum,
    pub polarization: MatrixNF,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Descriptor {
    Representation(RepPayload),
    Fibration(FibrationPayload),
    HodgeRep(HodgePayload),
}

impl Descriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            Descriptor::Representation(_) => "representation",
            Descriptor::Fibration(_) => "fibration",
            Descriptor::HodgeRep(_) => "hodge_rep",
        }
    }
}

fn required<T>(opt: Option<T>, path: &str, kind: &str) -> Result<T, CliError> {
    opt.ok_or_else(|| CliError::parse(path, format!("missing required field for kind {kind:?}")))
}

fn forbidden<T>(opt: &Option<T>, path: &str, kind: &str) -> Result<(), CliError> {
    if opt.is_some() {
        return Err(CliError::parse(
            path,
            format!("field not allowed for kind {kind:?}"),
        ));
    }
    Ok(())
}

fn entry_error(path: String, e: EntryError) -> CliError {
    CliError::parse(format!("{path}, offset {}", e.offset), e.message)
}

fn field_from_raw(raw: &RawField) -> Result<NumberField, CliError> {
    match raw.kind.as_str() {
        "rationals" => {
            forbidden(&raw.d, "$.field.d", "rationals")?;
            forbidden(&raw.n, "$.field.n", "rationals")?;
            Ok(NumberField::Rationals)
        }
        "quadratic" => {
            forbidden(&raw.n, "$.field.n", "quadratic")?;
            let d = required(raw.d.as_ref(), "$.field.d", "quadratic")?;
            let d = parse_i64(d).map_err(|e| entry_error("$.field.d".into(), e))?;
            NumberField::quadratic(d).map_err(CliError::from)
        }
        "cyclotomic" => {
            forbidden(&raw.d, "$.field.d", "cyclotomic")?;
            let n = required(raw.n.as_ref(), "$.field.n", "cyclotomic")?;
            let n = parse_usize(n).map_err(|e| entry_error("$.field.n".into(), e))?;
            let n = u32::try_from(n)
                .map_err(|_| CliError::parse("$.field.n", "value out of range"))?;
            NumberField::cyclotomic(n).map_err(CliError::from)
        }
        other => Err(CliError::parse(
            "$.field.kind",
            format!("unknown field kind {other:?}; expected \"rationals\", \"quadratic\", or \"cyclotomic\""),
        )),
    }
}

fn matrix_from_raw(
    rows: &[Vec<String>],
    field: NumberField,
    dim: usize,
    path: &str,
) -> Result<MatrixNF, CliError> {
    if rows.len() != dim {
        return Err(CliError::parse(
            path,
            format!("expected {dim} rows, found {}", rows.len()),
        ));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(CliError::parse(
                format!("{path}[{r}]"),
                format!("expected {dim} entries, found {}", row.len()),
            ));
        }
        for (c, text) in row.iter().enumerate() {
            let e = parse_entry(text, field)
                .map_err(|e| entry_error(format!("{path}[{r}][{c}]"), e))?;
            entries.push(e);
        }
    }
    Ok(MatrixNF::new(field, dim, dim, entries))
}

fn puncture_from_raw(rows: &[Vec<String>], path: &str) -> Result<[i64; 4], CliError> {
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(CliError::parse(path, "expected a 2x2 matrix"));
    }
    let mut out = [0i64; 4];
    for r in 0..2 {
        for c in 0..2 {
            out[2 * r + c] = parse_i64(&rows[r][c])
                .map_err(|e| entry_error(format!("{path}[{r}][{c}]"), e))?;
        }
    }
    Ok(out)
}

fn rep_from_raw(raw: &RawDescriptor, kind: &str) -> Result<RepPayload, CliError> {
    let field = field_from_raw(required(raw.field.as_ref(), "$.field", kind)?)?;
    let dim_text = required(raw.dimension.as_ref(), "$.dimension", kind)?;
    let dimension =
        parse_usize(dim_text).map_err(|e| entry_error("$.dimension".into(), e))?;
    if dimension == 0 {
        return Err(CliError::parse("$.dimension", "dimension must be at least 1"));
    }
    let raw_gens = required(raw.generators.as_ref(), "$.generators", kind)?;
    let mut generators = Vec::with_capacity(raw_gens.len());
    for (i, g) in raw_gens.iter().enumerate() {
        generators.push(matrix_from_raw(
            g,
            field,
            dimension,
            &format!("$.generators[{i}]"),
        )?);
    }
    Ok(RepPayload {
        field,
        dimension,
        generators,
    })
}

fn datum_from_raw(raw: &RawDatum) -> Result<HodgeDatum, CliError> {
    let weight =
        parse_i64(&raw.weight).map_err(|e| entry_error("$.datum.weight".into(), e))?;
    let mut pieces = Vec::with_capacity(raw.pieces.len());
    for (i, (p, h)) in raw.pieces.iter().enumerate() {
        let p = parse_i64(p).map_err(|e| entry_error(format!("$.datum.pieces[{i}][0]"), e))?;
        let h =
            parse_usize(h).map_err(|e| entry_error(format!("$.datum.pieces[{i}][1]"), e))?;
        pieces.push((p, h));
    }
    HodgeDatum::new(weight, &pieces).map_err(CliError::from)
}

/// Strict parse of a descriptor document.
pub fn parse_descriptor(text: &str) -> Result<Descriptor, CliError> {
    let raw: RawDescriptor = serde_json::from_str(text).map_err(|e| {
        CliError::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;
    if raw.schema_version != SCHEMA_VERSION {
        return Err(CliError::SchemaVersionUnsupported {
            found: raw.schema_version,
        });
    }
    match raw.kind.as_str() {
        "representation" => {
            forbidden(&raw.punctures, "$.punctures", "representation")?;
            forbidden(&raw.datum, "$.datum", "representation")?;
            forbidden(&raw.polarization, "$.polarization", "representation")?;
            Ok(Descriptor::Representation(rep_from_raw(&raw, "representation")?))
        }
        "fibration" => {
            forbidden(&raw.field, "$.field", "fibration")?;
            forbidden(&raw.dimension, "$.dimension", "fibration")?;
            forbidden(&raw.generators, "$.generators", "fibration")?;
            forbidden(&raw.datum, "$.datum", "fibration")?;
            forbidden(&raw.polarization, "$.polarization", "fibration")?;
            let raw_punctures = required(raw.punctures.as_ref(), "$.punctures", "fibration")?;
            let mut punctures = Vec::with_capacity(raw_punctures.len());
            for (i, p) in raw_punctures.iter().enumerate() {
                punctures.push(puncture_from_raw(p, &format!("$.punctures[{i}]"))?);
            }
            Ok(Descriptor::Fibration(FibrationPayload { punctures }))
        }
        "hodge_rep" => {
            forbidden(&raw.punctures, "$.punctures", "hodge_rep")?;
            let rep = rep_from_raw(&raw, "hodge_rep")?;
            let datum = datum_from_raw(required(raw.datum.as_ref(), "$.datum", "hodge_rep")?)?;
            let polarization = matrix_from_raw(
                required(raw.polarization.as_ref(), "$.polarization", "hodge_rep")?,
                rep.field,
                rep.dimension,
                "$.polarization",
            )?;
            Ok(Descriptor::HodgeRep(HodgePayload {
                rep,
                datum,
                polarization,
            }))
        }
        other => Err(CliError::parse(
            "$.kind",
            format!(
                "unknown kind {other:?}; expected \"representation\", \"fibration\", or \"hodge_rep\""
            ),
        )),
    }
}

pub fn raw_field(field: NumberField) -> RawField {
    match field {
        NumberField::Rationals => RawField {
            kind: "rationals".into(),
            d: None,
            n: None,
        },
        NumberField::Quadratic { d } => RawField {
            kind: "quadratic".into(),
            d: Some(d.to_string()),
            n: None,
        },
        NumberField::Cyclotomic { n } => RawField {
            kind: "cyclotomic".into(),
            d: None,
            n: Some(n.to_string()),
        },
    }
}

pub fn matrix_to_raw(m: &MatrixNF) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| render_entry(m.get(r, c))).collect())
        .collect()
}

fn puncture_to_raw(p: &[i64; 4]) -> Vec<Vec<String>> {
    vec![
        vec![p[0].to_string(), p[1].to_string()],
        vec![p[2].to_string(), p[3].to_string()],
    ]
}

fn datum_to_raw(d: &HodgeDatum) -> RawDatum {
    RawDatum {
        weight: d.weight.to_string(),
        pieces: d
            .hodge_numbers
            .iter()
            .map(|(p, h)| (p.to_string(), h.to_string()))
            .collect(),
    }
}

pub fn to_raw(d: &Descriptor) -> RawDescriptor {
    let mut raw = RawDescriptor {
        schema_version: SCHEMA_VERSION.into(),
        kind: d.kind().into(),
        field: None,
        dimension: None,
        generators: None,
        punctures: None,
        datum: None,
        polarization: None,
    };
    match d {
        Descriptor::Representation(rep) => {
            raw.field = Some(raw_field(rep.field));
            raw.dimension = Some(rep.dimension.to_string());
            raw.generators = Some(rep.generators.iter().map(matrix_to_raw).collect());
        }
        Descriptor::Fibration(f) => {
            raw.punctures = Some(f.punctures.iter().map(puncture_to_raw).collect());
        }
        Descriptor::HodgeRep(h) => {
            raw.field = Some(raw_field(h.rep.field));
            raw.dimension = Some(h.rep.dimension.to_string());
            raw.generators = Some(h.rep.generators.iter().map(matrix_to_raw).collect());
            raw.datum = Some(datum_to_raw(&h.datum));
            raw.polarization = Some(matrix_to_raw(&h.polarization));
        }
    }
    raw
}

/// Canonical rendering; `parse_descriptor(render_descriptor(d)) == d`.
pub fn render_descriptor(d: &Descriptor) -> String {
    let mut text = serde_json::to_string_pretty(&to_raw(d)).expect("descriptor serializes");
    text.push('\n');
    text
}
