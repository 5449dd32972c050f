//! Invariant bilinear and sesquilinear form spaces, and the
//! real/complex/quaternionic classification of irreducible
//! representations: an irreducible not isomorphic to its conjugate is
//! complex; otherwise the unique invariant bilinear form is symmetric
//! (real) or alternating (quaternionic), and the sign of the scalar in the
//! square of the associated antilinear intertwiner detects the same
//! dichotomy.

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField, Sign, Q};
use crate::isotypic::{isotypic_decomposition_seeded, restrict_to_submodule, DEFAULT_SEED};
use crate::matrix::{MatrixNF, RowSpan};
use crate::rep::{
    commutant, derived_rep, hom_space, image_closure, DerivedKind, Representation,
};

const CLOSURE_CAP: usize = 10_000;

/// Solution spaces of the invariance equations for forms: transpose
/// invariance for bilinear, conjugate-transpose invariance for
/// sesquilinear. The sesquilinear list is empty over totally real fields,
/// where the two notions coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSpace {
    pub rep: Representation,
    pub symmetric_basis: Vec<MatrixNF>,
    pub alternating_basis: Vec<MatrixNF>,
    pub sesquilinear_basis: Vec<MatrixNF>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TypeLabel {
    Real,
    Complex,
    Quaternionic,
}

impl std::fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TypeLabel::Real => "Real",
            TypeLabel::Complex => "Complex",
            TypeLabel::Quaternionic => "Quaternionic",
        };
        f.write_str(s)
    }
}

/// One irreducible constituent in a trichotomy report. Bases are given in
/// the coordinates of the representation extended to the splitting field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrichotomyComponent {
    pub label: TypeLabel,
    /// Dimension of the irreducible constituent.
    pub u_dim: usize,
    /// Multiplicity of the constituent (dimension of its coefficient
    /// space).
    pub b_dim: usize,
    /// Normalized invariant form on the constituent: symmetric for Real,
    /// alternating for Quaternionic, absent for Complex.
    pub witness: Option<MatrixNF>,
    /// Index of the conjugate partner for Complex constituents.
    pub paired_with: Option<usize>,
    /// Columns spanning the isotypic component.
    pub sub_basis: Vec<Vec<FieldElement>>,
    /// Columns spanning one copy of the irreducible constituent.
    pub irreducible_basis: Vec<Vec<FieldElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrichotomyReport {
    pub components: Vec<TrichotomyComponent>,
    pub total_dim: usize,
    /// Field over which the representation became a sum of absolutely
    /// irreducible pieces.
    pub splitting_field: NumberField,
}

fn half() -> Q {
    Q::new(1.into(), 2.into())
}

/// Normalize a matrix so its first nonzero entry in row-major order is 1.
fn normalize_form(m: &MatrixNF) -> MatrixNF {
    match m.entries().iter().find(|e| !e.is_zero()) {
        Some(first) => m.scale(&first.inverse().expect("nonzero entry")),
        None => m.clone(),
    }
}

fn span_to_matrices(span: &RowSpan, field: NumberField, d: usize) -> Vec<MatrixNF> {
    span.basis()
        .iter()
        .map(|row| MatrixNF::from_flat(field, d, d, row.clone()))
        .collect()
}

/// Solve the invariance equations for bilinear forms (and sesquilinear
/// ones when conjugation is nontrivial); split the bilinear space into
/// symmetric and alternating parts.
pub fn invariant_bilinear_forms(rho: &Representation) -> FormSpace {
    let field = rho.field();
    let d = rho.dim();
    let id = MatrixNF::identity(field, d * d);

    let solve_stacked = |lhs: &dyn Fn(&MatrixNF) -> MatrixNF| -> Vec<MatrixNF> {
        let gens = rho.images();
        let mut system = MatrixNF::zero(field, gens.len().max(1) * d * d, d * d);
        for (k, g) in gens.iter().enumerate() {
            let block = lhs(g).sub(&id);
            for i in 0..d * d {
                for j in 0..d * d {
                    system.set(k * d * d + i, j, block.get(i, j).clone());
                }
            }
        }
        system
            .nullspace()
            .into_iter()
            .map(|v| normalize_form(&MatrixNF::from_flat(field, d, d, v)))
            .collect()
    };

    // vec(A X C) = (A kron C^T) vec(X): invariance g^T B g = B becomes
    // (g^T kron g^T - I) vec(B) = 0.
    let bilinear = solve_stacked(&|g: &MatrixNF| g.transpose().kron(&g.transpose()));

    let mut sym = RowSpan::new(field, d * d);
    let mut alt = RowSpan::new(field, d * d);
    for b in &bilinear {
        let t = b.transpose();
        sym.insert(&b.add(&t).scale_rational(&half()).to_vec());
        alt.insert(&b.sub(&t).scale_rational(&half()).to_vec());
    }

    let sesquilinear_basis = if field.is_totally_real() {
        Vec::new()
    } else {
        solve_stacked(&|g: &MatrixNF| g.conjugate().transpose().kron(&g.transpose()))
    };

    FormSpace {
        rep: rho.clone(),
        symmetric_basis: span_to_matrices(&sym, field, d)
            .iter()
            .map(normalize_form)
            .collect(),
        alternating_basis: span_to_matrices(&alt, field, d)
            .iter()
            .map(normalize_form)
            .collect(),
        sesquilinear_basis,
    }
}

/// Exact positive-definiteness via the signs of the leading principal
/// minors in the designated embedding.
pub fn is_positive_definite(h: &MatrixNF) -> Result<bool> {
    if !h.is_square() || *h != h.conjugate_transpose() {
        return Err(Error::NotHermitian);
    }
    let n = h.rows();
    for k in 1..=n {
        let minor = MatrixNF::from_fn(h.field(), k, k, |i, j| h.get(i, j).clone()).det();
        if !minor.is_conjugation_fixed() {
            return Err(Error::NotHermitian);
        }
        if minor.sign_in_embedding()? != Sign::Positive {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_bilinear_invariant(rho: &Representation, b: &MatrixNF) -> bool {
    rho.images()
        .iter()
        .all(|g| g.transpose().mul(b).mul(g) == *b)
}

fn is_sesquilinear_invariant(rho: &Representation, h: &MatrixNF) -> bool {
    rho.images()
        .iter()
        .all(|g| g.conjugate().transpose().mul(h).mul(g) == *h)
}

/// Sign of the scalar lambda in sigma^2 = lambda id, where sigma is the
/// antilinear self-map comparing the bilinear pairing with the positive
/// sesquilinear one. Convention: sigma acts as y |-> M conj(y), with M
/// determined by requiring conj(w)^T H = z^T Q^T for w = sigma(z), i.e.
/// M = conj(H^{-T} Q). A positive sign must accompany symmetric q, a
/// negative sign alternating q.
pub fn sigma_lambda(rho: &Representation, q: &MatrixNF, h: &MatrixNF) -> Result<Sign> {
    if commutant(rho).dim() != 1 {
        return Err(Error::NotIrreducible);
    }
    let conj_rep = derived_rep(DerivedKind::Conjugate, rho, None)?;
    if hom_space(rho, &conj_rep)?.dim() == 0 {
        return Err(Error::NotSelfConjugate);
    }
    if q.is_zero() || !is_bilinear_invariant(rho, q) || !is_sesquilinear_invariant(rho, h) {
        return Err(Error::SigmaNotScalar);
    }
    if !is_positive_definite(h)? {
        return Err(Error::SigmaNotScalar);
    }
    let m = h.transpose().inverse()?.mul(q).conjugate();
    let square = m.mul(&m.conjugate());
    let lambda = square.get(0, 0).clone();
    if square != MatrixNF::identity(rho.field(), rho.dim()).scale(&lambda)
        || !lambda.is_conjugation_fixed()
    {
        return Err(Error::SigmaNotScalar);
    }
    let sign = lambda.sign_in_embedding()?;
    if sign == Sign::Zero {
        return Err(Error::SigmaNotScalar);
    }
    debug_assert_eq!(
        sign == Sign::Positive,
        *q == q.transpose(),
        "sign of lambda must match the parity of q"
    );
    Ok(sign)
}

/// Classify an absolutely irreducible representation as Real, Complex, or
/// Quaternionic: not self-conjugate means Complex; otherwise the unique
/// invariant bilinear form is symmetric (Real) or alternating
/// (Quaternionic).
pub fn classify_irreducible(rho: &Representation) -> Result<TypeLabel> {
    if commutant(rho).dim() != 1 {
        return Err(Error::NotIrreducible);
    }
    let conj_rep = derived_rep(DerivedKind::Conjugate, rho, None)?;
    if hom_space(rho, &conj_rep)?.dim() == 0 {
        return Ok(TypeLabel::Complex);
    }
    let forms = invariant_bilinear_forms(rho);
    let has_sym = !forms.symmetric_basis.is_empty();
    let has_alt = !forms.alternating_basis.is_empty();
    match (has_sym, has_alt) {
        (true, false) => Ok(TypeLabel::Real),
        (false, true) => Ok(TypeLabel::Quaternionic),
        _ => Err(Error::Ambiguous),
    }
}

fn splitting_candidates(base: NumberField) -> Result<Vec<NumberField>> {
    match base {
        NumberField::Rationals => Ok(vec![
            NumberField::Rationals,
            NumberField::quadratic(-1)?,
            NumberField::quadratic(-3)?,
            NumberField::cyclotomic(8)?,
            NumberField::cyclotomic(12)?,
        ]),
        NumberField::Quadratic { d } if d > 0 => Ok(vec![base]),
        _ => Err(Error::InvalidField(
            "trichotomy requires a rational or real quadratic base field".into(),
        )),
    }
}

/// Decompose a representation over a totally real field after extending
/// scalars to the smallest supported splitting field, classify each
/// absolutely irreducible constituent, and pair conjugate Complex
/// constituents.
pub fn trichotomy(rho: &Representation) -> Result<TrichotomyReport> {
    trichotomy_seeded(rho, DEFAULT_SEED)
}

/// [`trichotomy`] with an explicit seed for the randomized splitting step.
pub fn trichotomy_seeded(rho: &Representation, seed: u64) -> Result<TrichotomyReport> {
    let candidates = splitting_candidates(rho.field())?;
    for target in candidates {
        let extended = rho.extend_scalars(target)?;
        let dec = isotypic_decomposition_seeded(&extended, seed)?;
        let mut constituents = Vec::new();
        let mut all_absolutely_irreducible = true;
        for comp in &dec.components {
            let (u_rep, _) = restrict_to_submodule(&extended, &comp.irreducible_basis)?;
            if commutant(&u_rep).dim() != 1 {
                all_absolutely_irreducible = false;
                break;
            }
            constituents.push((comp, u_rep));
        }
        if !all_absolutely_irreducible {
            continue;
        }
        let mut components = Vec::with_capacity(constituents.len());
        for (comp, u_rep) in &constituents {
            let label = classify_irreducible(u_rep)?;
            let witness = match label {
                TypeLabel::Real => {
                    Some(invariant_bilinear_forms(u_rep).symmetric_basis[0].clone())
                }
                TypeLabel::Quaternionic => {
                    Some(invariant_bilinear_forms(u_rep).alternating_basis[0].clone())
                }
                TypeLabel::Complex => None,
            };
            components.push(TrichotomyComponent {
                label,
                u_dim: comp.irreducible_dim,
                b_dim: comp.multiplicity,
                witness,
                paired_with: None,
                sub_basis: comp.sub_basis.clone(),
                irreducible_basis: comp.irreducible_basis.clone(),
            });
        }
        // Pair Complex constituents with their conjugates.
        for i in 0..components.len() {
            if components[i].label != TypeLabel::Complex || components[i].paired_with.is_some() {
                continue;
            }
            let conj_ui = derived_rep(DerivedKind::Conjugate, &constituents[i].1, None)?;
            let mut partner = None;
            for j in 0..components.len() {
                if j == i
                    || components[j].label != TypeLabel::Complex
                    || components[j].paired_with.is_some()
                {
                    continue;
                }
                if hom_space(&conj_ui, &constituents[j].1)?.dim() > 0 {
                    partner = Some(j);
                    break;
                }
            }
            match partner {
                Some(j) => {
                    components[i].paired_with = Some(j);
                    components[j].paired_with = Some(i);
                }
                None => {
                    return Err(Error::UnexpectedShape(
                        "complex constituent without a conjugate partner".into(),
                    ))
                }
            }
        }
        let total: usize = components.iter().map(|c| c.u_dim * c.b_dim).sum();
        assert_eq!(total, rho.dim(), "constituent dimensions must add up");
        return Ok(TrichotomyReport {
            components,
            total_dim: rho.dim(),
            splitting_field: target,
        });
    }
    Err(Error::SplittingFieldNotFound)
}

/// Classical indicator for finite images: the average over the group of
/// the trace of the squared action. Exactly +1, 0, or -1 for an
/// absolutely irreducible representation, matching Real, Complex,
/// Quaternionic in that order. Independent of the solver pipeline; used
/// as an oracle in the test suites.
pub fn frobenius_schur(rho: &Representation) -> Result<i8> {
    if commutant(rho).dim() != 1 {
        return Err(Error::NotIrreducible);
    }
    let field = rho.field();
    let image = image_closure(rho, CLOSURE_CAP)?;
    let mut sum = FieldElement::zero(field);
    for g in &image.elements {
        sum = sum.add(&g.mul(g).trace());
    }
    let indicator = sum.scale(&Q::new(1.into(), (image.order as i64).into()));
    for candidate in [-1i8, 0, 1] {
        if indicator == FieldElement::from_integer(field, candidate as i64) {
            return Ok(candidate);
        }
    }
    Err(Error::Unsupported(
        "indicator outside {-1, 0, +1}".into(),
    ))
}
