//! Small standard representations used across the test suites and the
//! command-line corpus. Every fixture is finite-image and exactly
//! specified; relators are declared where the group is presented (cyclic,
//! dihedral, symmetric, quaternion) and validated on construction.

use crate::fibration::{FibrationDescriptor, SL2ZElement};
use crate::field::{FieldElement, NumberField};
use crate::matrix::MatrixNF;
use crate::rep::{GroupData, Representation};

fn rat() -> NumberField {
    NumberField::Rationals
}

fn cyclic_group(n: usize) -> GroupData {
    GroupData::new(vec!["g".into()], Some(vec![vec![1; n]])).unwrap()
}

/// Identity action on `dim` coordinates (group with no generators).
pub fn trivial_rep(dim: usize) -> Representation {
    Representation::new(GroupData::free(0), rat(), dim, vec![]).unwrap()
}

/// The nontrivial character of Z/2.
pub fn sign_rep() -> Representation {
    Representation::new(
        cyclic_group(2),
        rat(),
        1,
        vec![MatrixNF::from_i64(rat(), &[vec![-1]])],
    )
    .unwrap()
}

/// Minus the identity on two coordinates; one irreducible with
/// multiplicity two.
pub fn neg_id_rep() -> Representation {
    Representation::new(
        cyclic_group(2),
        rat(),
        2,
        vec![MatrixNF::from_i64(rat(), &[vec![-1, 0], vec![0, -1]])],
    )
    .unwrap()
}

/// Planar rotation of order 4 over the rationals.
pub fn rotation_rep() -> Representation {
    Representation::new(
        cyclic_group(4),
        rat(),
        2,
        vec![MatrixNF::from_i64(rat(), &[vec![0, -1], vec![1, 0]])],
    )
    .unwrap()
}

/// Planar rotation of order 3 over the rationals.
pub fn rotation_c3_rep() -> Representation {
    Representation::new(
        cyclic_group(3),
        rat(),
        2,
        vec![MatrixNF::from_i64(rat(), &[vec![0, -1], vec![1, -1]])],
    )
    .unwrap()
}

/// Planar rotation of order 6 over the rationals.
pub fn rotation_c6_rep() -> Representation {
    Representation::new(
        cyclic_group(6),
        rat(),
        2,
        vec![MatrixNF::from_i64(rat(), &[vec![1, -1], vec![1, 0]])],
    )
    .unwrap()
}

/// One-dimensional character of Z/n sending the generator to the k-th
/// power of the primitive n-th root of unity, over cyclotomic(n).
pub fn char_rep(n: u32, k: u32) -> Representation {
    let field = NumberField::cyclotomic(n).unwrap();
    let zeta = FieldElement::generator(field).pow(k);
    Representation::new(
        cyclic_group(n as usize),
        field,
        1,
        vec![MatrixNF::new(field, 1, 1, vec![zeta])],
    )
    .unwrap()
}

/// Real-valued character of Z/4 sending the generator to -1.
pub fn z4_real_char_rep() -> Representation {
    Representation::new(
        cyclic_group(4),
        rat(),
        1,
        vec![MatrixNF::from_i64(rat(), &[vec![-1]])],
    )
    .unwrap()
}

/// Two-dimensional standard representation of S3 over the rationals:
/// a of order 3, b of order 2, with b a b = a^{-1}.
pub fn s3_standard_rep() -> Representation {
    let group = GroupData::new(
        vec!["a".into(), "b".into()],
        Some(vec![vec![1, 1, 1], vec![2, 2], vec![2, 1, 2, 1]]),
    )
    .unwrap();
    Representation::new(
        group,
        rat(),
        2,
        vec![
            MatrixNF::from_i64(rat(), &[vec![0, -1], vec![1, -1]]),
            MatrixNF::from_i64(rat(), &[vec![0, 1], vec![1, 0]]),
        ],
    )
    .unwrap()
}

/// Two-dimensional representation of the dihedral group D4: rotation r of
/// order 4 and reflection s, with s r s = r^{-1}.
pub fn d4_rep() -> Representation {
    let group = GroupData::new(
        vec!["r".into(), "s".into()],
        Some(vec![vec![1, 1, 1, 1], vec![2, 2], vec![2, 1, 2, 1]]),
    )
    .unwrap();
    Representation::new(
        group,
        rat(),
        2,
        vec![
            MatrixNF::from_i64(rat(), &[vec![0, -1], vec![1, 0]]),
            MatrixNF::from_i64(rat(), &[vec![1, 0], vec![0, -1]]),
        ],
    )
    .unwrap()
}

/// The character of D4 that is trivial on the rotation and -1 on the
/// reflection.
pub fn d4_sign_rep() -> Representation {
    let group = GroupData::new(
        vec!["r".into(), "s".into()],
        Some(vec![vec![1, 1, 1, 1], vec![2, 2], vec![2, 1, 2, 1]]),
    )
    .unwrap();
    Representation::new(
        group,
        rat(),
        1,
        vec![
            MatrixNF::from_i64(rat(), &[vec![1]]),
            MatrixNF::from_i64(rat(), &[vec![-1]]),
        ],
    )
    .unwrap()
}

fn q8_group() -> GroupData {
    // i^2 = j^2 and j i j^{-1} = i^{-1}, plus i^4 = 1.
    GroupData::new(
        vec!["i".into(), "j".into()],
        Some(vec![
            vec![1, 1, -2, -2],
            vec![2, 1, -2, 1],
            vec![1, 1, 1, 1],
        ]),
    )
    .unwrap()
}

/// The two-dimensional irreducible representation of the quaternion group
/// over the Gaussian field.
pub fn q8_rep() -> Representation {
    let field = NumberField::quadratic(-1).unwrap();
    let i = FieldElement::generator(field);
    let iq = MatrixNF::from_fn(field, 2, 2, |r, c| match (r, c) {
        (0, 0) => i.clone(),
        (1, 1) => i.negate(),
        _ => FieldElement::zero(field),
    });
    let jq = MatrixNF::from_i64(field, &[vec![0, 1], vec![-1, 0]]);
    Representation::new(q8_group(), field, 2, vec![iq, jq]).unwrap()
}

/// The four-dimensional rational representation of the quaternion group:
/// left multiplication by the units i and j on the quaternion basis
/// (1, i, j, k).
pub fn q8_four_dim_rep() -> Representation {
    let li = MatrixNF::from_i64(
        rat(),
        &[
            vec![0, -1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, -1],
            vec![0, 0, 1, 0],
        ],
    );
    let lj = MatrixNF::from_i64(
        rat(),
        &[
            vec![0, 0, -1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, -1, 0, 0],
        ],
    );
    Representation::new(q8_group(), rat(), 4, vec![li, lj]).unwrap()
}

/// Every finite-image fixture, named; the solver-vs-averaging checks run
/// over all of these.
pub fn finite_image_corpus() -> Vec<(&'static str, Representation)> {
    vec![
        ("trivial-1", trivial_rep(1)),
        ("trivial-3", trivial_rep(3)),
        ("sign-z2", sign_rep()),
        ("neg-id", neg_id_rep()),
        ("rotation-c3", rotation_c3_rep()),
        ("rotation-c4", rotation_rep()),
        ("rotation-c6", rotation_c6_rep()),
        ("s3-standard", s3_standard_rep()),
        ("d4-two-dim", d4_rep()),
        ("d4-sign", d4_sign_rep()),
        ("q8-two-dim", q8_rep()),
        ("q8-four-dim-rational", q8_four_dim_rep()),
        ("char-z3", char_rep(3, 1)),
        ("char-z3-sq", char_rep(3, 2)),
        ("char-z4", char_rep(4, 1)),
        ("char-z4-real", z4_real_char_rep()),
        ("char-z6", char_rep(6, 1)),
        ("char-z8", char_rep(8, 1)),
        ("char-z12", char_rep(12, 1)),
    ]
}

/// The absolutely irreducible fixtures: cyclic characters, the S3 and D4
/// two-dimensional representations, the D4 character, and the quaternion
/// two-dimensional representation.
pub fn absolutely_irreducible_corpus() -> Vec<(&'static str, Representation)> {
    vec![
        ("trivial-1", trivial_rep(1)),
        ("sign-z2", sign_rep()),
        ("char-z3", char_rep(3, 1)),
        ("char-z3-sq", char_rep(3, 2)),
        ("char-z4", char_rep(4, 1)),
        ("char-z4-real", z4_real_char_rep()),
        ("char-z6", char_rep(6, 1)),
        ("char-z8", char_rep(8, 1)),
        ("char-z12", char_rep(12, 1)),
        ("s3-standard", s3_standard_rep()),
        ("d4-two-dim", d4_rep()),
        ("d4-sign", d4_sign_rep()),
        ("q8-two-dim", q8_rep()),
    ]
}

/// Named fibration descriptors over the punctured line, each satisfying
/// the puncture product relation.
pub fn fibration_corpus() -> Vec<(&'static str, FibrationDescriptor)> {
    let m = |a, b, c, d| SL2ZElement::new(a, b, c, d).unwrap();
    let order_six = m(1, 1, -1, 0);
    let neg_id = m(-1, 0, 0, -1);
    let order_three = m(-1, -1, 1, 0);
    let order_four = m(0, -1, 1, 0);
    vec![
        (
            "k3-type-ii",
            FibrationDescriptor::new(0, vec![order_six; 12], None).unwrap(),
        ),
        (
            "kummer-i0star",
            FibrationDescriptor::new(0, vec![neg_id; 4], None).unwrap(),
        ),
        (
            "kummer-iv-star",
            FibrationDescriptor::new(0, vec![order_three; 3], None).unwrap(),
        ),
        (
            "kummer-iii-star",
            FibrationDescriptor::new(0, vec![order_four, order_four, neg_id], None).unwrap(),
        ),
    ]
}
