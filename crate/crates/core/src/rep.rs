//! Matrix representations of finitely generated groups: construction with
//! validation, intertwiner spaces, derived representations, finite-image
//! closure, and the brute-force group-averaging oracle used to cross-check
//! the linear solvers.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField, Q};
use crate::matrix::{MatrixNF, RowSpan};

/// A group presented only through generator names, with optional relators.
/// Words are lists of signed 1-based generator indices: +k means generator
/// k, -k its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupData {
    generator_labels: Vec<String>,
    relators: Option<Vec<Vec<i32>>>,
}

impl GroupData {
    pub fn new(generator_labels: Vec<String>, relators: Option<Vec<Vec<i32>>>) -> Result<GroupData> {
        let mut seen = HashSet::new();
        for label in &generator_labels {
            if !seen.insert(label.clone()) {
                return Err(Error::InvalidRepresentation(format!(
                    "duplicate generator label `{label}`"
                )));
            }
        }
        let n = generator_labels.len() as i32;
        if let Some(words) = &relators {
            for word in words {
                for &letter in word {
                    if letter == 0 || letter.abs() > n {
                        return Err(Error::InvalidRepresentation(format!(
                            "relator letter {letter} references no generator"
                        )));
                    }
                }
            }
        }
        Ok(GroupData {
            generator_labels,
            relators,
        })
    }

    /// Free group on n generators named g1..gn.
    pub fn free(n: usize) -> GroupData {
        GroupData::new((1..=n).map(|k| format!("g{k}")).collect(), None)
            .expect("generated labels are distinct")
    }

    pub fn generator_count(&self) -> usize {
        self.generator_labels.len()
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    pub fn relators(&self) -> Option<&[Vec<i32>]> {
        self.relators.as_deref()
    }
}

/// A representation: one invertible matrix per group generator, all over
/// one field and of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    group: GroupData,
    field: NumberField,
    dim: usize,
    images: Vec<MatrixNF>,
}

impl Representation {
    /// Validates shape, invertibility, and any relators.
    pub fn new(
        group: GroupData,
        field: NumberField,
        dim: usize,
        images: Vec<MatrixNF>,
    ) -> Result<Representation> {
        if dim == 0 {
            return Err(Error::InvalidRepresentation(
                "dimension must be positive".into(),
            ));
        }
        if images.len() != group.generator_count() {
            return Err(Error::InvalidRepresentation(format!(
                "{} generator(s) but {} image(s)",
                group.generator_count(),
                images.len()
            )));
        }
        for (k, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim || m.field() != field {
                return Err(Error::InvalidRepresentation(format!(
                    "image {k} is not a {dim}x{dim} matrix over the representation field"
                )));
            }
            if m.inverse().is_err() {
                return Err(Error::NotInvertible { generator: k });
            }
        }
        let rep = Representation {
            group,
            field,
            dim,
            images,
        };
        if let Some(words) = rep.group.relators.clone() {
            for (idx, word) in words.iter().enumerate() {
                if !rep.evaluate_word(word)?.is_identity() {
                    return Err(Error::RelatorViolated { relator: idx });
                }
            }
        }
        Ok(rep)
    }

    /// Convenience constructor on a free group with default labels.
    pub fn on_free_group(
        field: NumberField,
        dim: usize,
        images: Vec<MatrixNF>,
    ) -> Result<Representation> {
        let group = GroupData::free(images.len());
        Representation::new(group, field, dim, images)
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[MatrixNF] {
        &self.images
    }

    pub fn image(&self, k: usize) -> &MatrixNF {
        &self.images[k]
    }

    /// Evaluate a word in the generators (signed 1-based letters).
    pub fn evaluate_word(&self, word: &[i32]) -> Result<MatrixNF> {
        let mut acc = MatrixNF::identity(self.field, self.dim);
        for &letter in word {
            let idx = (letter.abs() - 1) as usize;
            if letter == 0 || idx >= self.images.len() {
                return Err(Error::InvalidRepresentation(format!(
                    "word letter {letter} references no generator"
                )));
            }
            let m = if letter > 0 {
                self.images[idx].clone()
            } else {
                self.images[idx].inverse().expect("images are invertible")
            };
            acc = acc.mul(&m);
        }
        Ok(acc)
    }

    /// Reinterpret a representation with rational matrix entries over
    /// another field.
    pub fn extend_scalars(&self, target: NumberField) -> Result<Representation> {
        if target == self.field {
            return Ok(self.clone());
        }
        let mut images = Vec::with_capacity(self.images.len());
        for m in &self.images {
            images.push(m.embed_into(target)?);
        }
        Ok(Representation {
            group: self.group.clone(),
            field: target,
            dim: self.dim,
            images,
        })
    }
}

/// Basis of the space of intertwiners between two representations of the
/// same group over the same field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntertwinerSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    /// target_dim x source_dim matrices X with X ρ_source(g) = ρ_target(g) X.
    pub basis: Vec<MatrixNF>,
}

impl IntertwinerSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// All X with X ρ1(g) = ρ2(g) X for every generator, via one stacked
/// homogeneous system: vec(X A) - vec(B X) = (I ⊗ Aᵀ - B ⊗ I) vec(X).
pub fn hom_space(rho1: &Representation, rho2: &Representation) -> Result<IntertwinerSpace> {
    if rho1.group != rho2.group {
        return Err(Error::GroupMismatch);
    }
    if rho1.field != rho2.field {
        return Err(Error::FieldMismatch);
    }
    let field = rho1.field;
    let d1 = rho1.dim;
    let d2 = rho2.dim;
    let unknowns = d1 * d2;
    let gens = rho1.images.len();
    let mut system = MatrixNF::zero(field, unknowns * gens, unknowns);
    for (g, (a, b)) in rho1.images.iter().zip(&rho2.images).enumerate() {
        let block = MatrixNF::identity(field, d2)
            .kron(&a.transpose())
            .sub(&b.kron(&MatrixNF::identity(field, d1)));
        for i in 0..unknowns {
            for j in 0..unknowns {
                system.set(g * unknowns + i, j, block.get(i, j).clone());
            }
        }
    }
    let basis = system
        .nullspace()
        .into_iter()
        .map(|v| MatrixNF::from_flat(field, d2, d1, v))
        .collect();
    Ok(IntertwinerSpace {
        source_dim: d1,
        target_dim: d2,
        basis,
    })
}

/// The commutant of a representation, with the identity matrix first in
/// the basis.
pub fn commutant(rho: &Representation) -> IntertwinerSpace {
    let space = hom_space(rho, rho).expect("a representation matches itself");
    let field = rho.field;
    let id = MatrixNF::identity(field, rho.dim);
    let mut span = RowSpan::new(field, rho.dim * rho.dim);
    span.insert(&id.to_vec());
    let mut basis = vec![id];
    for m in space.basis {
        if span.insert(&m.to_vec()) {
            basis.push(m);
        }
    }
    IntertwinerSpace {
        source_dim: rho.dim,
        target_dim: rho.dim,
        basis,
    }
}

/// True exactly when the commutant is one-dimensional (scalars only).
pub fn is_absolutely_irreducible(rho: &Representation) -> bool {
    commutant(rho).dim() == 1
}

/// Basis of the simultaneous fixed space of all generator images.
pub fn invariant_vectors(rho: &Representation) -> Vec<Vec<FieldElement>> {
    let field = rho.field;
    let d = rho.dim;
    let gens = rho.images.len();
    let mut system = MatrixNF::zero(field, d * gens, d);
    for (g, m) in rho.images.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                let mut v = m.get(i, j).clone();
                if i == j {
                    v = v.sub(&FieldElement::one(field));
                }
                system.set(g * d + i, j, v);
            }
        }
    }
    system.nullspace()
}

/// The derived-representation constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedKind {
    Dual,
    Conjugate,
    Tensor,
    Sym2,
    Wedge2,
    DirectSum,
}

impl DerivedKind {
    fn name(self) -> &'static str {
        match self {
            DerivedKind::Dual => "dual",
            DerivedKind::Conjugate => "conjugate",
            DerivedKind::Tensor => "tensor",
            DerivedKind::Sym2 => "sym2",
            DerivedKind::Wedge2 => "wedge2",
            DerivedKind::DirectSum => "direct_sum",
        }
    }

    fn needs_second(self) -> bool {
        matches!(self, DerivedKind::Tensor | DerivedKind::DirectSum)
    }
}

/// Generator-wise derived representation. Tensor and direct sum take a
/// second representation of the same group over the same field; the others
/// take none.
pub fn derived_rep(
    kind: DerivedKind,
    rho: &Representation,
    rho2: Option<&Representation>,
) -> Result<Representation> {
    let expected = if kind.needs_second() { 2 } else { 1 };
    let got = 1 + usize::from(rho2.is_some());
    if got != expected {
        return Err(Error::ArityMismatch {
            kind: kind.name(),
            expected,
            got,
        });
    }
    if let Some(other) = rho2 {
        if rho.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if rho.field != other.field {
            return Err(Error::FieldMismatch);
        }
    }
    let field = rho.field;
    let images: Vec<MatrixNF> = match kind {
        DerivedKind::Dual => rho
            .images
            .iter()
            .map(|m| m.inverse().expect("images are invertible").transpose())
            .collect(),
        DerivedKind::Conjugate => rho.images.iter().map(MatrixNF::conjugate).collect(),
        DerivedKind::Tensor => rho
            .images
            .iter()
            .zip(&rho2.unwrap().images)
            .map(|(a, b)| a.kron(b))
            .collect(),
        DerivedKind::DirectSum => rho
            .images
            .iter()
            .zip(&rho2.unwrap().images)
            .map(|(a, b)| a.direct_sum(b))
            .collect(),
        DerivedKind::Sym2 => rho.images.iter().map(|m| sym2_matrix(m)).collect(),
        DerivedKind::Wedge2 => rho.images.iter().map(|m| wedge2_matrix(m)).collect(),
    };
    let dim = images.first().map_or_else(
        || match kind {
            DerivedKind::Sym2 => rho.dim * (rho.dim + 1) / 2,
            DerivedKind::Wedge2 => rho.dim * (rho.dim - 1) / 2,
            DerivedKind::Tensor => rho.dim * rho2.unwrap().dim,
            DerivedKind::DirectSum => rho.dim + rho2.unwrap().dim,
            _ => rho.dim,
        },
        MatrixNF::rows,
    );
    Representation::new(rho.group.clone(), field, dim, images)
}

/// Index pairs (i, j) with i <= j in lexicographic order.
fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push((i, j));
        }
    }
    out
}

/// Index pairs (i, j) with i < j in lexicographic order.
fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Action on the symmetric square with basis f_ij = e_i⊗e_j + e_j⊗e_i
/// (i <= j): the f_kl coordinate of g·f_ij is g_ki g_lj + g_li g_kj for
/// k < l, and g_ki g_kj for k = l.
fn sym2_matrix(g: &MatrixNF) -> MatrixNF {
    let field = g.field();
    let n = g.rows();
    let pairs = sym_pairs(n);
    MatrixNF::from_fn(field, pairs.len(), pairs.len(), |row, col| {
        let (k, l) = pairs[row];
        let (i, j) = pairs[col];
        if k < l {
            g.get(k, i).mul(g.get(l, j)).add(&g.get(l, i).mul(g.get(k, j)))
        } else {
            g.get(k, i).mul(g.get(k, j))
        }
    })
}

/// Action on the alternating square with basis f_ij = e_i∧e_j (i < j):
/// the f_kl coordinate of g·f_ij is g_ki g_lj - g_li g_kj.
fn wedge2_matrix(g: &MatrixNF) -> MatrixNF {
    let field = g.field();
    let n = g.rows();
    let pairs = wedge_pairs(n);
    MatrixNF::from_fn(field, pairs.len(), pairs.len(), |row, col| {
        let (k, l) = pairs[row];
        let (i, j) = pairs[col];
        g.get(k, i).mul(g.get(l, j)).sub(&g.get(l, i).mul(g.get(k, j)))
    })
}

/// Default element cap for finite-image closure.
pub const CLOSURE_CAP: usize = 10_000;

/// A finite matrix group, listed in breadth-first discovery order starting
/// from the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteImage {
    pub elements: Vec<MatrixNF>,
    pub order: usize,
}

/// Breadth-first closure of the generator images under multiplication.
/// Fails with TooLarge when more than `cap` elements appear, which signals
/// an infinite (or just too big) image.
pub fn image_closure(rho: &Representation, cap: usize) -> Result<FiniteImage> {
    assert!(cap >= 1);
    let id = MatrixNF::identity(rho.field, rho.dim);
    let mut seen: HashSet<MatrixNF> = HashSet::new();
    let mut elements = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(id.clone());
    elements.push(id.clone());
    queue.push_back(id);
    while let Some(current) = queue.pop_front() {
        for g in &rho.images {
            let next = current.mul(g);
            if seen.insert(next.clone()) {
                if elements.len() == cap {
                    return Err(Error::TooLarge { cap });
                }
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    let order = elements.len();
    Ok(FiniteImage { elements, order })
}

/// Which space the averaging oracle computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AveragingTarget {
    Commutant,
    InvariantVectors,
    BilinearForms,
}

/// Output of the averaging oracle, shaped like the corresponding solver
/// output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AveragedSpace {
    /// Commutant or bilinear-form basis.
    Matrices(Vec<MatrixNF>),
    /// Invariant-vector basis.
    Vectors(Vec<Vec<FieldElement>>),
}

impl AveragedSpace {
    pub fn dim(&self) -> usize {
        match self {
            AveragedSpace::Matrices(v) => v.len(),
            AveragedSpace::Vectors(v) => v.len(),
        }
    }

    pub fn matrices(&self) -> &[MatrixNF] {
        match self {
            AveragedSpace::Matrices(v) => v,
            AveragedSpace::Vectors(_) => panic!("vector-shaped space"),
        }
    }

    pub fn vectors(&self) -> &[Vec<FieldElement>] {
        match self {
            AveragedSpace::Vectors(v) => v,
            AveragedSpace::Matrices(_) => panic!("matrix-shaped space"),
        }
    }
}

/// Brute-force computation of an invariant space by summing over every
/// element of the finite image: the projection X ↦ (1/|G|) Σ_g g·X applied
/// to a spanning set. Independent of the linear solvers by construction;
/// used to cross-validate them.
pub fn averaging_oracle(rho: &Representation, target: AveragingTarget) -> Result<AveragedSpace> {
    let image = image_closure(rho, CLOSURE_CAP)?;
    let field = rho.field;
    let d = rho.dim;
    let inv_order = FieldElement::from_rational(
        field,
        Q::new(1.into(), (image.order as i64).into()),
    );
    match target {
        AveragingTarget::InvariantVectors => {
            let mut sum = MatrixNF::zero(field, d, d);
            for g in &image.elements {
                sum = sum.add(g);
            }
            let projector = sum.scale(&inv_order);
            Ok(AveragedSpace::Vectors(projector.column_space_basis()))
        }
        AveragingTarget::Commutant => {
            let inverses: Vec<MatrixNF> = image
                .elements
                .iter()
                .map(|g| g.inverse().expect("group elements are invertible"))
                .collect();
            let mut span = RowSpan::new(field, d * d);
            let mut basis = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    let mut unit = MatrixNF::zero(field, d, d);
                    unit.set(i, j, FieldElement::one(field));
                    let mut sum = MatrixNF::zero(field, d, d);
                    for (g, ginv) in image.elements.iter().zip(&inverses) {
                        sum = sum.add(&g.mul(&unit).mul(ginv));
                    }
                    let averaged = sum.scale(&inv_order);
                    if span.insert(&averaged.to_vec()) {
                        basis.push(averaged);
                    }
                }
            }
            Ok(AveragedSpace::Matrices(basis))
        }
        AveragingTarget::BilinearForms => {
            let mut span = RowSpan::new(field, d * d);
            let mut basis = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    let mut unit = MatrixNF::zero(field, d, d);
                    unit.set(i, j, FieldElement::one(field));
                    let mut sum = MatrixNF::zero(field, d, d);
                    for g in &image.elements {
                        sum = sum.add(&g.transpose().mul(&unit).mul(g));
                    }
                    let averaged = sum.scale(&inv_order);
                    if span.insert(&averaged.to_vec()) {
                        basis.push(averaged);
                    }
                }
            }
            Ok(AveragedSpace::Matrices(basis))
        }
    }
}
