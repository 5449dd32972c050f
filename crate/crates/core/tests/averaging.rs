//! Cross-validation of the linear-system solvers against brute-force group
//! averaging, plus the averaged dimensions of the invariant form spaces on
//! the standard corpus. The averaging side is computed independently of
//! the solvers (projection by summing over every group element), so
//! agreement here is a genuine consistency check.

use monodromy_core::fixtures::finite_image_corpus;
use monodromy_core::rep::{
    averaging_oracle, commutant, invariant_vectors, AveragingTarget,
};
use monodromy_core::{FieldElement, MatrixNF, RowSpan};

fn matrix_span(mats: &[MatrixNF], width: usize) -> RowSpan {
    let field = mats
        .first()
        .map(MatrixNF::field)
        .unwrap_or(monodromy_core::NumberField::Rationals);
    let mut span = RowSpan::new(field, width);
    for m in mats {
        span.insert(&m.to_vec());
    }
    span
}

fn vector_span(vecs: &[Vec<FieldElement>], field: monodromy_core::NumberField, width: usize) -> RowSpan {
    let mut span = RowSpan::new(field, width);
    for v in vecs {
        span.insert(v);
    }
    span
}

fn assert_same_span(a: &RowSpan, b: &RowSpan, what: &str, name: &str) {
    assert_eq!(a.dim(), b.dim(), "{what} dimension mismatch on {name}");
    for row in a.basis() {
        assert!(b.contains(row), "{what} span mismatch on {name}");
    }
}

#[test]
fn commutant_matches_averaging_on_corpus() {
    for (name, rep) in finite_image_corpus() {
        let d = rep.dim();
        let solved = commutant(&rep);
        let averaged = averaging_oracle(&rep, AveragingTarget::Commutant).unwrap();
        let s = matrix_span(&solved.basis, d * d);
        let a = matrix_span(averaged.matrices(), d * d);
        assert_same_span(&s, &a, "commutant", name);
    }
}

#[test]
fn invariant_vectors_match_averaging_on_corpus() {
    for (name, rep) in finite_image_corpus() {
        let d = rep.dim();
        let solved = invariant_vectors(&rep);
        let averaged = averaging_oracle(&rep, AveragingTarget::InvariantVectors).unwrap();
        let s = vector_span(&solved, rep.field(), d);
        let a = vector_span(averaged.vectors(), rep.field(), d);
        assert_same_span(&s, &a, "invariant vectors", name);
    }
}

/// Split an averaged bilinear-form basis into symmetric and alternating
/// dimensions, working purely on the oracle output.
fn averaged_parity_dims(mats: &[MatrixNF], field: monodromy_core::NumberField, d: usize) -> (usize, usize) {
    let mut sym = RowSpan::new(field, d * d);
    let mut alt = RowSpan::new(field, d * d);
    for b in mats {
        let s = b.add(&b.transpose()).scale_rational(&monodromy_core::Q::new(1.into(), 2.into()));
        let a = b.sub(&b.transpose()).scale_rational(&monodromy_core::Q::new(1.into(), 2.into()));
        sym.insert(&s.to_vec());
        alt.insert(&a.to_vec());
    }
    (sym.dim(), alt.dim())
}

#[test]
fn averaged_bilinear_form_dimensions_on_key_fixtures() {
    let expectations = [
        ("q8-two-dim", (0usize, 1usize)),
        ("rotation-c4", (1, 1)),
        ("trivial-1", (1, 0)),
        ("s3-standard", (1, 0)),
        ("d4-two-dim", (1, 0)),
        ("neg-id", (3, 1)),
    ];
    let corpus = finite_image_corpus();
    for (name, (sym, alt)) in expectations {
        let rep = &corpus.iter().find(|(n, _)| *n == name).unwrap().1;
        let averaged = averaging_oracle(rep, AveragingTarget::BilinearForms).unwrap();
        let dims = averaged_parity_dims(averaged.matrices(), rep.field(), rep.dim());
        assert_eq!(dims, (sym, alt), "bilinear parity dims on {name}");
    }
}

#[test]
fn averaged_form_invariance_holds_pointwise() {
    for (name, rep) in finite_image_corpus() {
        let averaged = averaging_oracle(&rep, AveragingTarget::BilinearForms).unwrap();
        for b in averaged.matrices() {
            for g in rep.images() {
                assert_eq!(
                    g.transpose().mul(b).mul(g),
                    *b,
                    "form invariance fails on {name}"
                );
            }
        }
    }
}
