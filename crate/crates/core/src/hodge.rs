//! Weight and level bookkeeping for Hodge-graded data, validation of
//! polarized representations, detection of complex multiplication from a
//! period point, classification of finite-monodromy polarized systems
//! (tensor by a rank-2 coefficient space, or eigen-split over an imaginary
//! quadratic field), and the shape check for the three admissible
//! constituent patterns.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{squarefree_split, FieldElement, NumberField, Q, Sign};
use crate::forms::{trichotomy_seeded, TrichotomyReport, TypeLabel};
use crate::isotypic::{restrict_to_submodule, DEFAULT_SEED};
use crate::matrix::MatrixNF;
use crate::poly::{min_poly_of_matrix, min_poly_over_q};
use crate::rep::{commutant, hom_space, image_closure, Representation};
use crate::factor::factor;

const CLOSURE_CAP: usize = 10_000;

/// A weight together with the dimensions of the graded pieces, indexed by
/// the holomorphic index p (the complementary index is weight - p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeDatum {
    pub weight: i64,
    pub hodge_numbers: BTreeMap<i64, usize>,
}

impl HodgeDatum {
    pub fn new(weight: i64, pieces: &[(i64, usize)]) -> Result<HodgeDatum> {
        let mut hodge_numbers = BTreeMap::new();
        for &(p, h) in pieces {
            if h == 0 {
                return Err(Error::Unsupported(
                    "graded dimensions must be positive".into(),
                ));
            }
            if hodge_numbers.insert(p, h).is_some() {
                return Err(Error::Unsupported(format!(
                    "duplicate graded index {p}"
                )));
            }
        }
        Ok(HodgeDatum {
            weight,
            hodge_numbers,
        })
    }

    pub fn total_dim(&self) -> usize {
        self.hodge_numbers.values().sum()
    }
}

/// Difference between the largest and smallest recorded graded index.
pub fn level(datum: &HodgeDatum) -> Result<i64> {
    let min = datum.hodge_numbers.keys().next().ok_or(Error::EmptyDatum)?;
    let max = datum.hodge_numbers.keys().next_back().unwrap();
    Ok(max - min)
}

/// Graded tensor product: weights add and the graded dimensions convolve.
pub fn tensor_datum(d1: &HodgeDatum, d2: &HodgeDatum) -> HodgeDatum {
    let mut hodge_numbers: BTreeMap<i64, usize> = BTreeMap::new();
    for (&p1, &h1) in &d1.hodge_numbers {
        for (&p2, &h2) in &d2.hodge_numbers {
            *hodge_numbers.entry(p1 + p2).or_insert(0) += h1 * h2;
        }
    }
    HodgeDatum {
        weight: d1.weight + d2.weight,
        hodge_numbers,
    }
}

/// A representation together with its graded datum and the invariant form
/// it is required to preserve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedHodgeRep {
    pub rep: Representation,
    pub datum: HodgeDatum,
    pub polarization: MatrixNF,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HodgeViolation {
    /// Total graded dimension differs from the representation dimension.
    DimensionMismatch { datum: usize, rep: usize },
    /// The form is singular.
    DegeneratePolarization,
    /// The form's symmetry does not match the parity of the weight
    /// (alternating for odd weight, symmetric for even).
    ParityMismatch,
    /// A generator fails to preserve the form.
    InvarianceFailure { generator: usize },
}

impl std::fmt::Display for HodgeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HodgeViolation::DimensionMismatch { datum, rep } => {
                write!(f, "graded dimensions sum to {datum} but the representation has dimension {rep}")
            }
            HodgeViolation::DegeneratePolarization => f.write_str("polarization is degenerate"),
            HodgeViolation::ParityMismatch => {
                f.write_str("polarization parity does not match the weight")
            }
            HodgeViolation::InvarianceFailure { generator } => {
                write!(f, "generator {generator} does not preserve the polarization")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeValidation {
    pub violation: Option<HodgeViolation>,
}

impl HodgeValidation {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Check, in order: dimension consistency, nondegeneracy, weight parity,
/// and invariance of the form under each generator. The first violated
/// constraint is reported; nothing is thrown.
pub fn validate_hodge_rep(p: &PolarizedHodgeRep) -> HodgeValidation {
    let d = p.rep.dim();
    let datum_dim = p.datum.total_dim();
    if datum_dim != d {
        return HodgeValidation {
            violation: Some(HodgeViolation::DimensionMismatch {
                datum: datum_dim,
                rep: d,
            }),
        };
    }
    let q = &p.polarization;
    if q.rows() != d || q.cols() != d || q.det().is_zero() {
        return HodgeValidation {
            violation: Some(HodgeViolation::DegeneratePolarization),
        };
    }
    let expected = if p.datum.weight.rem_euclid(2) == 1 {
        q.transpose().negate()
    } else {
        q.transpose()
    };
    if *q != expected {
        return HodgeValidation {
            violation: Some(HodgeViolation::ParityMismatch),
        };
    }
    for (k, g) in p.rep.images().iter().enumerate() {
        if g.transpose().mul(q).mul(g) != *q {
            return HodgeValidation {
                violation: Some(HodgeViolation::InvarianceFailure { generator: k }),
            };
        }
    }
    HodgeValidation { violation: None }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CMResult {
    /// No complex multiplication: the endomorphism field is the rationals.
    Rational,
    /// Complex multiplication by the imaginary quadratic field of the
    /// given squarefree discriminant radical.
    ImaginaryQuadratic { d: i64 },
}

/// Endomorphism field of the lattice spanned by 1 and tau: an imaginary
/// quadratic field when tau satisfies a rational quadratic relation,
/// otherwise the rationals. The period point must lie strictly in the
/// upper half-plane under the designated embedding.
pub fn cm_field(tau: &FieldElement) -> Result<CMResult> {
    if tau.imaginary_sign()? != Sign::Positive {
        return Err(Error::NotInUpperHalfPlane);
    }
    let mp = min_poly_over_q(tau);
    if mp.degree() != Some(2) {
        return Ok(CMResult::Rational);
    }
    // Monic x^2 + b x + c: the field is generated by sqrt(b^2 - 4c).
    let b = mp.coeff(1).as_rational().expect("rational coefficient");
    let c = mp.coeff(0).as_rational().expect("rational coefficient");
    let disc: Q = &b * &b - Q::from_integer(4.into()) * &c;
    // sqrt(n/m) generates the same field as sqrt(n*m).
    let radicand: BigInt = disc.numer() * disc.denom();
    let (sf, _) = squarefree_split(&radicand);
    let d = i64::try_from(&sf).map_err(|_| {
        Error::Unsupported("discriminant radical out of range".into())
    })?;
    debug_assert!(d < 0, "a non-real quadratic element has negative discriminant");
    Ok(CMResult::ImaginaryQuadratic { d })
}

/// Outcome of classifying a finite-monodromy polarized system: either the
/// rational system factors as a rank-2 coefficient space tensor an
/// irreducible system W, or it splits over an imaginary quadratic field
/// into two conjugate subsystems of equal rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotrivialClassification {
    RealTensor {
        k_field: NumberField,
        /// Columns spanning one copy of the irreducible factor W.
        w_basis: Vec<Vec<FieldElement>>,
        /// Basis of the rank-2 space of intertwiners from W into the
        /// ambient system.
        h_intertwiners: Vec<MatrixNF>,
    },
    ComplexSplit {
        k_field: NumberField,
        /// Bases of the two conjugate subsystems, in the coordinates of
        /// the representation extended to k_field.
        subsystems: [Vec<Vec<FieldElement>>; 2],
    },
}

/// Whether the polarized system admits no proper invariant subspace on
/// which the form stays nondegenerate. Equivalently, the commutant holds
/// no proper idempotent that is self-adjoint for the form; the search
/// probes the self-adjoint part of the commutant and splits via minimal
/// polynomials.
fn polarized_irreducible(rho: &Representation, q: &MatrixNF, seed: u64) -> Result<bool> {
    let field = rho.field();
    let d = rho.dim();
    let comm = commutant(rho);
    // Self-adjoint part: X^T q = q X within the commutant span.
    let r = comm.basis.len();
    let mut system = MatrixNF::zero(field, d * d, r);
    for (i, ci) in comm.basis.iter().enumerate() {
        let defect = ci.transpose().mul(q).sub(&q.mul(ci));
        for (pos, v) in defect.to_vec().into_iter().enumerate() {
            system.set(pos, i, v);
        }
    }
    let selfadjoint: Vec<MatrixNF> = system
        .nullspace()
        .into_iter()
        .map(|coefs| {
            let mut s = MatrixNF::zero(field, d, d);
            for (c, m) in coefs.iter().zip(&comm.basis) {
                s = s.add(&m.scale(c));
            }
            s
        })
        .collect();
    if selfadjoint.len() <= 1 {
        return Ok(true);
    }
    let mut probes = selfadjoint.clone();
    let head = selfadjoint.len().min(4);
    for a in 0..head {
        for b in a..head {
            let p = selfadjoint[a].mul(&selfadjoint[b]);
            probes.push(p.add(&selfadjoint[b].mul(&selfadjoint[a])));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let mut z = MatrixNF::zero(field, d, d);
        for s in &selfadjoint {
            let coef =
                FieldElement::from_rational(field, Q::from_integer(rng.gen_range(-2i64..=2).into()));
            z = z.add(&s.scale(&coef));
        }
        probes.push(z);
    }
    for probe in &probes {
        let lambda = probe.get(0, 0).clone();
        if *probe == MatrixNF::identity(field, d).scale(&lambda) {
            continue;
        }
        let mp = min_poly_of_matrix(probe);
        let factors = factor(&mp)?;
        if factors.factors.len() >= 2 {
            // Primary idempotents of this probe are proper, lie in the
            // commutant, and respect the form: the system decomposes.
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classify a polarized system with finite monodromy. Requires: base
/// field the rationals, a valid polarized datum, finite image, and no
/// proper form-compatible invariant summand. An optional period point
/// adds an informational note when it has complex multiplication but the
/// outcome is the tensor case.
pub fn isotrivial_classify(
    p: &PolarizedHodgeRep,
    tau: Option<&FieldElement>,
) -> Result<(IsotrivialClassification, Vec<String>)> {
    isotrivial_classify_with(p, tau, DEFAULT_SEED, CLOSURE_CAP)
}

/// [`isotrivial_classify`] with an explicit seed for the randomized
/// splitting steps and a cap on the image enumeration.
pub fn isotrivial_classify_with(
    p: &PolarizedHodgeRep,
    tau: Option<&FieldElement>,
    seed: u64,
    cap: usize,
) -> Result<(IsotrivialClassification, Vec<String>)> {
    if p.rep.field() != NumberField::Rationals {
        return Err(Error::InvalidField(
            "classification requires a rational representation".into(),
        ));
    }
    let validation = validate_hodge_rep(p);
    if let Some(v) = validation.violation {
        return Err(Error::InvalidRepresentation(v.to_string()));
    }
    image_closure(&p.rep, cap)?;
    if !polarized_irreducible(&p.rep, &p.polarization, seed)? {
        return Err(Error::NotIrreducible);
    }
    let report = trichotomy_seeded(&p.rep, seed)?;
    let mut notes = Vec::new();
    let classification = classify_from_report(&p.rep, &report)?;
    if let Some(tau) = tau {
        if let (CMResult::ImaginaryQuadratic { d }, IsotrivialClassification::RealTensor { .. }) =
            (cm_field(tau)?, &classification)
        {
            notes.push(format!(
                "period point has complex multiplication by sqrt({d}) while the system is of tensor shape"
            ));
        }
    }
    Ok((classification, notes))
}

fn classify_from_report(
    rho: &Representation,
    report: &TrichotomyReport,
) -> Result<IsotrivialClassification> {
    if report
        .components
        .iter()
        .any(|c| c.label == TypeLabel::Quaternionic)
    {
        return Err(Error::QuaternionicImpossible);
    }
    match report.components.as_slice() {
        [c] if c.label == TypeLabel::Real && c.b_dim == 2 => {
            if report.splitting_field != NumberField::Rationals {
                return Err(Error::UnexpectedShape(
                    "tensor-shape constituent not defined over the rationals".into(),
                ));
            }
            let (w_rep, _) = restrict_to_submodule(rho, &c.irreducible_basis)?;
            let homs = hom_space(&w_rep, rho)?;
            if homs.dim() != 2 {
                return Err(Error::UnexpectedShape(format!(
                    "coefficient space has rank {} instead of 2",
                    homs.dim()
                )));
            }
            Ok(IsotrivialClassification::RealTensor {
                k_field: NumberField::Rationals,
                w_basis: c.irreducible_basis.clone(),
                h_intertwiners: homs.basis,
            })
        }
        [a, b]
            if a.label == TypeLabel::Complex
                && b.label == TypeLabel::Complex
                && a.paired_with == Some(1)
                && b.paired_with == Some(0)
                && a.b_dim == 1
                && b.b_dim == 1 =>
        {
            let k = report.splitting_field;
            if !matches!(k, NumberField::Quadratic { d } if d < 0) {
                return Err(Error::UnexpectedShape(format!(
                    "splitting field {k:?} is not imaginary quadratic"
                )));
            }
            if a.sub_basis.len() != b.sub_basis.len() {
                return Err(Error::UnexpectedShape(
                    "conjugate subsystems of unequal rank".into(),
                ));
            }
            Ok(IsotrivialClassification::ComplexSplit {
                k_field: k,
                subsystems: [a.sub_basis.clone(), b.sub_basis.clone()],
            })
        }
        _ => Err(Error::UnexpectedShape(
            "constituent pattern outside the classified cases".into(),
        )),
    }
}

/// The three admissible constituent patterns for a fibration datum: one
/// constituent alone, a conjugate pair, or one constituent doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MvShape {
    Single,
    ConjugatePair,
    Doubled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvShapeReport {
    pub shape: Option<MvShape>,
    pub pass: bool,
    /// Set when the caller declared maximal variation but the constituents
    /// are not all of Real type.
    pub flagged: bool,
    pub notes: Vec<String>,
}

/// Validate that a trichotomy report matches one of the three admissible
/// shapes (coefficient dimensions 1, 1+1, or 2); when the caller marks
/// the input as maximal variation, additionally flag non-Real
/// constituents. Optional level assignments are echoed, not checked.
pub fn mv_shape_check(
    report: &TrichotomyReport,
    maximal_variation: bool,
    levels: Option<&[i64]>,
) -> MvShapeReport {
    let shape = match report.components.as_slice() {
        [c] if c.b_dim == 1 => Some(MvShape::Single),
        [c] if c.b_dim == 2 => Some(MvShape::Doubled),
        [a, b]
            if a.label == TypeLabel::Complex
                && b.label == TypeLabel::Complex
                && a.paired_with == Some(1)
                && b.paired_with == Some(0)
                && a.b_dim == 1
                && b.b_dim == 1 =>
        {
            Some(MvShape::ConjugatePair)
        }
        _ => None,
    };
    let mut notes = Vec::new();
    if let Some(levels) = levels {
        notes.push(format!("levels recorded: {levels:?}"));
    }
    let non_real = report
        .components
        .iter()
        .any(|c| c.label != TypeLabel::Real);
    let flagged = maximal_variation && non_real;
    if flagged {
        notes.push(
            "maximal variation is incompatible with non-Real constituents".into(),
        );
    }
    MvShapeReport {
        shape,
        pass: shape.is_some(),
        flagged,
        notes,
    }
}
