//! Command implementations. Each returns a finished [`Report`] plus the
//! process exit code; errors raised before a report exists bubble up as
//! [`CliError`] and the caller emits a structured failure report.

use crate::corpus::{fibration_fixtures, run_corpus};
use crate::descriptor::Descriptor;
use crate::entry::render_entry;
use crate::error::CliError;
use crate::report::{field_label, Report};
use monodromy_core::fibration::{
    check_puncture_relation, isotrivial_admissible, kodaira_type, local_eigenvalues,
    splitting_field_from_orders, trivializing_cover_with_cap, KodairaType,
};
use monodromy_core::forms::{trichotomy_seeded, TrichotomyReport};
use monodromy_core::hodge::{isotrivial_classify_with, IsotrivialClassification, PolarizedHodgeRep};
use monodromy_core::isotypic::DEFAULT_SEED;
use monodromy_core::Error as CoreError;
use serde_json::{json, Value};

pub const DEFAULT_CAP: usize = 10_000;

pub const CLAIM_CLASSIFY: &str = "each label is certified by the exact dimensions of the \
                                  invariant symmetric, alternating, and sesquilinear form spaces";
pub const CLAIM_KODAIRA: &str =
    "each type depends only on the integer conjugacy class of its local monodromy matrix";
pub const CLAIM_COVER: &str = "the degree equals the order of the finite monodromy image; \
                               the genus follows from the exact Euler characteristic count";
pub const CLAIM_CORPUS: &str =
    "golden values are exact integers and labels; any mismatch fails the run";

/// Knobs shared by the descriptor commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub cap: usize,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            seed: DEFAULT_SEED,
            cap: DEFAULT_CAP,
        }
    }
}

fn trichotomy_value(tri: &TrichotomyReport) -> Value {
    let components: Vec<Value> = tri
        .components
        .iter()
        .map(|c| {
            json!({
                "label": c.label.to_string(),
                "u_dim": c.u_dim.to_string(),
                "b_dim": c.b_dim.to_string(),
                "paired_with": c.paired_with.map(|i| i.to_string()),
            })
        })
        .collect();
    json!({
        "components": components,
        "total_dim": tri.total_dim.to_string(),
        "splitting_field": field_label(tri.splitting_field),
    })
}

fn isotrivial_value(c: &IsotrivialClassification) -> Value {
    match c {
        IsotrivialClassification::RealTensor {
            k_field,
            w_basis,
            h_intertwiners,
        } => json!({
            "shape": "real_tensor",
            "k_field": field_label(*k_field),
            "w_rank": w_basis.len().to_string(),
            "coefficient_rank": h_intertwiners.len().to_string(),
        }),
        IsotrivialClassification::ComplexSplit { k_field, subsystems } => json!({
            "shape": "complex_split",
            "k_field": field_label(*k_field),
            "subsystem_ranks": [
                subsystems[0].len().to_string(),
                subsystems[1].len().to_string(),
            ],
        }),
    }
}

/// Trichotomy labels for a `representation`, with the isotrivial
/// classification added for a `hodge_rep`.
pub fn cmd_classify(
    d: &Descriptor,
    input: &[u8],
    opts: &RunOptions,
) -> Result<(Report, i32), CliError> {
    let mut report = Report::new("classify", input);
    match d {
        Descriptor::Representation(payload) => {
            let rho = payload.to_representation()?;
            let tri = trichotomy_seeded(&rho, opts.seed)?;
            report.result = json!({
                "status": "ok",
                "kind": "representation",
                "trichotomy": trichotomy_value(&tri),
            });
            report.claims.push(CLAIM_CLASSIFY.into());
            Ok((report, 0))
        }
        Descriptor::HodgeRep(payload) => {
            let rho = payload.rep.to_representation()?;
            let tri = trichotomy_seeded(&rho, opts.seed)?;
            let polarized = PolarizedHodgeRep {
                rep: rho,
                datum: payload.datum.clone(),
                polarization: payload.polarization.clone(),
            };
            let mut result = serde_json::Map::new();
            result.insert("kind".into(), json!("hodge_rep"));
            result.insert("trichotomy".into(), trichotomy_value(&tri));
            let code = match isotrivial_classify_with(&polarized, None, opts.seed, opts.cap) {
                Ok((classification, notes)) => {
                    result.insert("status".into(), json!("ok"));
                    result.insert("isotrivial".into(), isotrivial_value(&classification));
                    report.warnings.extend(notes);
                    0
                }
                Err(e) => {
                    result.insert("status".into(), json!("error"));
                    result.insert("error".into(), json!(CliError::from(e).to_string()));
                    1
                }
            };
            report.result = Value::Object(result);
            report.claims.push(CLAIM_CLASSIFY.into());
            Ok((report, code))
        }
        Descriptor::Fibration(_) => Err(CliError::WrongKind {
            command: "classify",
            kind: "fibration",
        }),
    }
}

/// Per-puncture fiber types, orders, and exact eigenvalues.
pub fn cmd_kodaira(d: &Descriptor, input: &[u8]) -> Result<(Report, i32), CliError> {
    let Descriptor::Fibration(payload) = d else {
        return Err(CliError::WrongKind {
            command: "kodaira",
            kind: d.kind(),
        });
    };
    let fib = payload.to_fibration()?;
    for (i, t) in fib.punctures.iter().enumerate() {
        if t.trace().abs() > 2 {
            return Err(CliError::Computation(CoreError::Unsupported(format!(
                "puncture {i} is hyperbolic (trace {}); \
                 local fiber types exist only for quasi-unipotent monodromy",
                t.trace()
            ))));
        }
    }
    let types: Vec<KodairaType> = fib.punctures.iter().map(kodaira_type).collect();
    let punctures: Vec<Value> = fib
        .punctures
        .iter()
        .zip(&types)
        .map(|(t, ty)| {
            let [a, b, c, d] = t.entries();
            let eig = local_eigenvalues(t);
            json!({
                "matrix": [
                    [a.to_string(), b.to_string()],
                    [c.to_string(), d.to_string()],
                ],
                "kodaira_type": ty.to_string(),
                "order": t.order().map_or("infinite".to_string(), |o| o.to_string()),
                "eigenvalues": [render_entry(&eig.values.0), render_entry(&eig.values.1)],
                "eigenvalue_field": field_label(eig.values.0.field()),
                "admissible": eig.admissible,
            })
        })
        .collect();
    let verdict = isotrivial_admissible(&types);
    let mut report = Report::new("kodaira", input);
    report.result = json!({
        "status": "ok",
        "punctures": punctures,
        "relation_holds": check_puncture_relation(&fib),
        "admissible": verdict.admissible,
        "first_offender": verdict.first_offender.map(|t| t.to_string()),
    });
    report.claims.push(CLAIM_KODAIRA.into());
    Ok((report, 0))
}

/// Degree, Euler characteristics, genus, and class of the smallest cover
/// trivializing the monodromy, plus the splitting field of the local
/// eigenvalues.
pub fn cmd_cover(
    d: &Descriptor,
    input: &[u8],
    opts: &RunOptions,
) -> Result<(Report, i32), CliError> {
    let Descriptor::Fibration(payload) = d else {
        return Err(CliError::WrongKind {
            command: "cover",
            kind: d.kind(),
        });
    };
    let fib = payload.to_fibration()?;
    let cover = trivializing_cover_with_cap(&fib, opts.cap)?;
    let verdict = splitting_field_from_orders(&fib)?;
    let mut report = Report::new("cover", input);
    report.result = json!({
        "status": "ok",
        "degree": cover.degree.to_string(),
        "euler_open": cover.euler_open.to_string(),
        "euler_compact": cover.euler_compact.to_string(),
        "genus": cover.genus.to_string(),
        "compact_class": cover.compact_class.to_string(),
        "splitting_field": field_label(verdict.field),
    });
    if let Some(warning) = verdict.warning {
        report.warnings.push(warning);
    }
    report.claims.push(CLAIM_COVER.into());
    for fixture in fibration_fixtures() {
        if fixture.punctures == payload.punctures {
            if let Some((degree, genus, class)) = fixture.cover {
                report.claims.push(format!(
                    "matches the embedded fixture '{}': degree {degree}, genus {genus}, {class}",
                    fixture.name
                ));
            }
        }
    }
    Ok((report, 0))
}

/// Re-run the golden checks for one fixture or the whole corpus.
pub fn cmd_corpus(name: Option<&str>, cap: usize) -> Result<(Report, i32), CliError> {
    let selector = name.unwrap_or("");
    let mut report = Report::new("corpus", selector.as_bytes());
    let (checks, all_pass) = run_corpus(name, cap)?;
    let check_values: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "fixture": c.fixture,
                "what": c.what,
                "expected": c.expected,
                "actual": c.actual,
                "pass": c.pass,
            })
        })
        .collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    report.result = json!({
        "status": if all_pass { "ok" } else { "error" },
        "checks": check_values,
        "summary": {
            "total": checks.len().to_string(),
            "passed": passed.to_string(),
            "failed": (checks.len() - passed).to_string(),
        },
    });
    report.claims.push(CLAIM_CORPUS.into());
    Ok((report, i32::from(!all_pass)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::descriptor_for;
    use crate::descriptor::parse_descriptor;

    fn opts() -> RunOptions {
        RunOptions::default()
    }

    #[test]
    fn classify_labels_a_rational_rotation_as_a_complex_pair() {
        let text = r#"{
            "schema_version": "1",
            "kind": "representation",
            "field": {"kind": "rationals"},
            "dimension": "2",
            "generators": [[["0", "-1"], ["1", "0"]]]
        }"#;
        let d = parse_descriptor(text).unwrap();
        let (report, code) = cmd_classify(&d, text.as_bytes(), &opts()).unwrap();
        assert_eq!(code, 0);
        let components = report.result["trichotomy"]["components"]
            .as_array()
            .unwrap();
        assert_eq!(components.len(), 2);
        assert_eq!(components[0]["label"], "Complex");
        assert_eq!(components[0]["paired_with"], "1");
        assert_eq!(
            report.result["trichotomy"]["splitting_field"],
            "quadratic(-1)"
        );
    }

    #[test]
    fn classify_rejects_fibration_descriptors() {
        let d = descriptor_for("k3-type-ii").unwrap();
        let err = cmd_classify(&d, b"", &opts()).unwrap_err();
        assert_eq!(
            err,
            CliError::WrongKind {
                command: "classify",
                kind: "fibration"
            }
        );
    }

    #[test]
    fn kodaira_describes_the_kummer_fixture() {
        let d = descriptor_for("kummer-iii-star").unwrap();
        let (report, code) = cmd_kodaira(&d, b"x").unwrap();
        assert_eq!(code, 0);
        let punctures = report.result["punctures"].as_array().unwrap();
        assert_eq!(punctures.len(), 3);
        assert_eq!(punctures[0]["kodaira_type"], "III*");
        assert_eq!(punctures[0]["order"], "4");
        assert_eq!(punctures[0]["eigenvalue_field"], "cyclotomic(4)");
        assert_eq!(punctures[2]["kodaira_type"], "I*(0)");
        assert_eq!(report.result["relation_holds"], true);
        assert_eq!(report.result["admissible"], true);
        assert_eq!(report.result["first_offender"], Value::Null);
    }

    #[test]
    fn kodaira_refuses_hyperbolic_punctures() {
        let text = r#"{"schema_version": "1", "kind": "fibration", "punctures": [[["2", "1"], ["1", "1"]]]}"#;
        let d = parse_descriptor(text).unwrap();
        let err = cmd_kodaira(&d, text.as_bytes()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("hyperbolic"), "{err}");
    }

    #[test]
    fn cover_reports_the_k3_fixture_and_claims_the_match() {
        let d = descriptor_for("k3-type-ii").unwrap();
        let (report, code) = cmd_cover(&d, b"x", &opts()).unwrap();
        assert_eq!(code, 0);
        assert_eq!(report.result["degree"], "6");
        assert_eq!(report.result["genus"], "25");
        assert_eq!(report.result["compact_class"], "general_type");
        assert_eq!(report.result["splitting_field"], "quadratic(-3)");
        assert!(report
            .claims
            .iter()
            .any(|c| c.contains("'k3-type-ii'") && c.contains("degree 6")));
    }

    #[test]
    fn corpus_runs_green_and_counts_its_checks() {
        let (report, code) = cmd_corpus(None, DEFAULT_CAP).unwrap();
        assert_eq!(code, 0);
        assert_eq!(report.result["status"], "ok");
        assert_eq!(report.result["summary"]["failed"], "0");
        assert_eq!(report.result["summary"]["total"], "57");
    }
}
