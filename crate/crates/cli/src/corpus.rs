//! Embedded fixtures with exact golden values. `run_corpus` recomputes
//! every value and compares; any mismatch is reported as a failing check.

use crate::descriptor::{Descriptor, FibrationPayload, RepPayload};
use crate::error::CliError;
use crate::report::field_label;
use monodromy_core::fibration::{
    check_puncture_relation, isotrivial_admissible, kodaira_type, splitting_field_from_orders,
    trivializing_cover_with_cap, KodairaType,
};
use monodromy_core::fixtures::absolutely_irreducible_corpus;
use monodromy_core::forms::{classify_irreducible, frobenius_schur};
use monodromy_core::rep::Representation;

/// A fibration fixture: puncture matrices plus the exact values every run
/// must reproduce.
pub struct FibrationFixture {
    pub name: &'static str,
    pub punctures: Vec<[i64; 4]>,
    pub types: Vec<&'static str>,
    pub relation_holds: bool,
    pub admissible: bool,
    /// (degree, compact genus, compact class) for fixtures whose cover is
    /// defined (relation holds, finite orders).
    pub cover: Option<(usize, i64, &'static str)>,
    pub splitting_field: Option<&'static str>,
}

/// An irreducible-representation fixture with its golden classification.
pub struct RepFixture {
    pub name: &'static str,
    pub label: &'static str,
    pub indicator: i8,
}

pub fn fibration_fixtures() -> Vec<FibrationFixture> {
    vec![
        FibrationFixture {
            name: "k3-type-ii",
            punctures: vec![[1, 1, -1, 0]; 12],
            types: vec!["II"; 12],
            relation_holds: true,
            admissible: true,
            cover: Some((6, 25, "general_type")),
            splitting_field: Some("quadratic(-3)"),
        },
        FibrationFixture {
            name: "kummer-i0star",
            punctures: vec![[-1, 0, 0, -1]; 4],
            types: vec!["I*(0)"; 4],
            relation_holds: true,
            admissible: true,
            cover: Some((2, 1, "abelian")),
            splitting_field: Some("rationals"),
        },
        FibrationFixture {
            name: "kummer-iv-star",
            punctures: vec![[-1, -1, 1, 0]; 3],
            types: vec!["IV*"; 3],
            relation_holds: true,
            admissible: true,
            cover: Some((3, 1, "abelian")),
            splitting_field: Some("quadratic(-3)"),
        },
        FibrationFixture {
            name: "kummer-iii-star",
            punctures: vec![[0, -1, 1, 0], [0, -1, 1, 0], [-1, 0, 0, -1]],
            types: vec!["III*", "III*", "I*(0)"],
            relation_holds: true,
            admissible: true,
            cover: Some((4, 1, "abelian")),
            splitting_field: Some("quadratic(-1)"),
        },
        FibrationFixture {
            name: "shear-i3",
            punctures: vec![[1, 3, 0, 1]],
            types: vec!["I(3)"],
            relation_holds: false,
            admissible: false,
            cover: None,
            splitting_field: None,
        },
    ]
}

pub fn rep_fixtures() -> Vec<RepFixture> {
    let f = |name, label, indicator| RepFixture {
        name,
        label,
        indicator,
    };
    vec![
        f("trivial-1", "Real", 1),
        f("sign-z2", "Real", 1),
        f("char-z3", "Complex", 0),
        f("char-z3-sq", "Complex", 0),
        f("char-z4", "Complex", 0),
        f("char-z4-real", "Real", 1),
        f("char-z6", "Complex", 0),
        f("char-z8", "Complex", 0),
        f("char-z12", "Complex", 0),
        f("s3-standard", "Real", 1),
        f("d4-two-dim", "Real", 1),
        f("d4-sign", "Real", 1),
        f("q8-two-dim", "Quaternionic", -1),
    ]
}

pub fn fixture_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = fibration_fixtures().iter().map(|f| f.name).collect();
    names.extend(rep_fixtures().iter().map(|r| r.name));
    names
}

/// One golden comparison. `pass` is exact string equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub fixture: String,
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn push(checks: &mut Vec<Check>, fixture: &str, what: &str, expected: String, actual: String) {
    let pass = expected == actual;
    checks.push(Check {
        fixture: fixture.into(),
        what: what.into(),
        expected,
        actual,
        pass,
    });
}

fn corpus_rep(name: &str) -> Option<Representation> {
    absolutely_irreducible_corpus()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, rho)| rho)
}

fn check_fibration(
    fixture: &FibrationFixture,
    cap: usize,
    checks: &mut Vec<Check>,
) -> Result<(), CliError> {
    let payload = FibrationPayload {
        punctures: fixture.punctures.clone(),
    };
    let fib = payload.to_fibration()?;
    let types: Vec<KodairaType> = fib.punctures.iter().map(kodaira_type).collect();
    push(
        checks,
        fixture.name,
        "kodaira types",
        fixture.types.join(","),
        types
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    push(
        checks,
        fixture.name,
        "puncture relation",
        fixture.relation_holds.to_string(),
        check_puncture_relation(&fib).to_string(),
    );
    push(
        checks,
        fixture.name,
        "admissible for isotriviality",
        fixture.admissible.to_string(),
        isotrivial_admissible(&types).admissible.to_string(),
    );
    if let Some((degree, genus, class)) = fixture.cover {
        let cover = trivializing_cover_with_cap(&fib, cap)?;
        push(
            checks,
            fixture.name,
            "cover degree",
            degree.to_string(),
            cover.degree.to_string(),
        );
        push(
            checks,
            fixture.name,
            "compact genus",
            genus.to_string(),
            cover.genus.to_string(),
        );
        push(
            checks,
            fixture.name,
            "compact class",
            class.into(),
            cover.compact_class.to_string(),
        );
    }
    if let Some(field) = fixture.splitting_field {
        let verdict = splitting_field_from_orders(&fib)?;
        push(
            checks,
            fixture.name,
            "splitting field",
            field.into(),
            field_label(verdict.field),
        );
    }
    Ok(())
}

fn check_rep(fixture: &RepFixture, checks: &mut Vec<Check>) -> Result<(), CliError> {
    let rho = corpus_rep(fixture.name)
        .unwrap_or_else(|| panic!("embedded fixture {:?} exists", fixture.name));
    push(
        checks,
        fixture.name,
        "trichotomy label",
        fixture.label.into(),
        classify_irreducible(&rho)?.to_string(),
    );
    push(
        checks,
        fixture.name,
        "indicator",
        fixture.indicator.to_string(),
        frobenius_schur(&rho)?.to_string(),
    );
    Ok(())
}

/// Run golden checks for one named fixture, or the whole corpus.
pub fn run_corpus(name: Option<&str>, cap: usize) -> Result<(Vec<Check>, bool), CliError> {
    let fibrations = fibration_fixtures();
    let reps = rep_fixtures();
    let mut checks = Vec::new();
    match name {
        Some(n) => {
            if let Some(f) = fibrations.iter().find(|f| f.name == n) {
                check_fibration(f, 10_000, &mut checks)?;
            } else if let Some(r) = reps.iter().find(|r| r.name == n) {
                check_rep(r, &mut checks)?;
            } else {
                return Err(CliError::UnknownFixture(n.into()));
            }
        }
        None => {
            for f in &fibrations {
                check_fibration(f, cap, &mut checks)?;
            }
            for r in &reps {
                check_rep(r, &mut checks)?;
            }
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok((checks, all_pass))
}

/// The canonical descriptor for a named fixture, usable as command input.
pub fn descriptor_for(name: &str) -> Option<Descriptor> {
    if let Some(f) = fibration_fixtures().into_iter().find(|f| f.name == name) {
        return Some(Descriptor::Fibration(FibrationPayload {
            punctures: f.punctures,
        }));
    }
    let rho = corpus_rep(name)?;
    Some(Descriptor::Representation(RepPayload {
        field: rho.field(),
        dimension: rho.dim(),
        generators: rho.images().to_vec(),
    }))
}
