//! Isotypic decomposition of a representation: central idempotents of the
//! commutant split the module into components, and a probe-driven recursion
//! inside each component determines the irreducible dimension, the
//! multiplicity, and a basis for one irreducible submodule.
//!
//! Randomness is deterministic: a fixed documented seed drives the central
//! combinations and the splitting probes, so decompositions are
//! bit-reproducible run to run.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::{FieldElement, Q};
use crate::matrix::MatrixNF;
use crate::poly::{min_poly_of_matrix, Poly};
use crate::rep::{commutant, Representation};

/// Fixed seed for the deterministic pseudo-random choices below.
pub const DEFAULT_SEED: u64 = 0x00C0_FFEE;

/// Largest representation dimension accepted.
pub const DIM_CAP: usize = 12;

const CENTRAL_RETRIES: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicComponent {
    /// Idempotent projecting onto the component, commuting with the action.
    pub projector: MatrixNF,
    /// Columns spanning the component inside the ambient space.
    pub sub_basis: Vec<Vec<FieldElement>>,
    /// Dimension of the irreducible constituent.
    pub irreducible_dim: usize,
    /// Number of copies of the constituent in the component.
    pub multiplicity: usize,
    /// Columns spanning one irreducible submodule inside the ambient space.
    pub irreducible_basis: Vec<Vec<FieldElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicDecomposition {
    pub components: Vec<IsotypicComponent>,
}

/// Decompose with the default seed.
pub fn isotypic_decomposition(rho: &Representation) -> Result<IsotypicDecomposition> {
    isotypic_decomposition_seeded(rho, DEFAULT_SEED)
}

/// Decompose the representation into isotypic components. The central
/// idempotents come from factoring the minimal polynomial of a seeded
/// random central element of the commutant, accepted only when the degree
/// matches the center dimension and the polynomial is squarefree (retried
/// with fresh coefficients, then reported as a failure, never fudged).
pub fn isotypic_decomposition_seeded(
    rho: &Representation,
    seed: u64,
) -> Result<IsotypicDecomposition> {
    let d = rho.dim();
    if d > DIM_CAP {
        return Err(Error::DegreeCapExceeded {
            degree: d,
            cap: DIM_CAP,
        });
    }
    let field = rho.field();
    let comm = commutant(rho);
    let center = center_basis(&comm.basis, field, d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Central projectors. A one-dimensional center means a single component.
    let projectors: Vec<MatrixNF> = if center.len() == 1 {
        vec![MatrixNF::identity(field, d)]
    } else {
        let mut found: Option<Vec<MatrixNF>> = None;
        for _ in 0..CENTRAL_RETRIES {
            let mut z = MatrixNF::zero(field, d, d);
            for c in &center {
                let coef = FieldElement::from_rational(field, Q::from_integer(rng.gen_range(-9i64..=9).into()));
                z = z.add(&c.scale(&coef));
            }
            let mp = min_poly_of_matrix(&z);
            if mp.degree() != Some(center.len()) || !mp.is_squarefree() {
                continue;
            }
            found = Some(central_idempotents(&z, &mp)?);
            break;
        }
        match found {
            Some(p) => p,
            None => {
                return Err(Error::SplitFailure {
                    retries: CENTRAL_RETRIES,
                })
            }
        }
    };

    // Exact verification of the projector system.
    let mut total = MatrixNF::zero(field, d, d);
    for (i, e) in projectors.iter().enumerate() {
        if e.mul(e) != *e {
            return Err(Error::NotSemisimple);
        }
        for (j, f) in projectors.iter().enumerate() {
            if i != j && !e.mul(f).is_zero() {
                return Err(Error::NotSemisimple);
            }
        }
        total = total.add(e);
    }
    if !total.is_identity() {
        return Err(Error::NotSemisimple);
    }

    let mut components = Vec::with_capacity(projectors.len());
    for e in projectors {
        let sub_basis = e.column_space_basis();
        let (restricted, basis_matrix) = restrict_to_submodule(rho, &sub_basis)?;
        let (irreducible_dim, multiplicity, witness) =
            split_component(&restricted, &mut rng)?;
        if irreducible_dim * multiplicity != restricted.dim() {
            return Err(Error::SplitFailure {
                retries: CENTRAL_RETRIES,
            });
        }
        let irreducible_basis = witness
            .iter()
            .map(|w| basis_matrix.mul_vec(w))
            .collect();
        components.push(IsotypicComponent {
            projector: e,
            sub_basis,
            irreducible_dim,
            multiplicity,
            irreducible_basis,
        });
    }
    components.sort_by(|a, b| {
        let ka = (a.irreducible_dim, a.projector.trace().to_string());
        let kb = (b.irreducible_dim, b.projector.trace().to_string());
        ka.cmp(&kb)
    });
    Ok(IsotypicDecomposition { components })
}

/// Basis of the center of the span of the commutant basis: elements
/// commuting with every basis matrix.
fn center_basis(
    comm_basis: &[MatrixNF],
    field: crate::field::NumberField,
    d: usize,
) -> Vec<MatrixNF> {
    let r = comm_basis.len();
    // Unknown coefficients x_i of Z = sum x_i C_i; equations: Z C_j = C_j Z.
    let mut system = MatrixNF::zero(field, r * d * d, r);
    for (j, cj) in comm_basis.iter().enumerate() {
        for (i, ci) in comm_basis.iter().enumerate() {
            let bracket = ci.mul(cj).sub(&cj.mul(ci));
            for (pos, v) in bracket.to_vec().into_iter().enumerate() {
                system.set(j * d * d + pos, i, v);
            }
        }
    }
    system
        .nullspace()
        .into_iter()
        .map(|coefs| {
            let mut z = MatrixNF::zero(field, d, d);
            for (c, m) in coefs.iter().zip(comm_basis) {
                z = z.add(&m.scale(c));
            }
            z
        })
        .collect()
}

/// Orthogonal idempotents from the squarefree minimal polynomial of a
/// central element, by partial-fraction inversion: with M = prod p_i and
/// q_i = M / p_i, the extended gcd a p_i + b q_i = 1 gives e_i = (b q_i)(z).
fn central_idempotents(z: &MatrixNF, mp: &Poly) -> Result<Vec<MatrixNF>> {
    let factorization = factor(mp)?;
    let mut out = Vec::with_capacity(factorization.factors.len());
    for (p, mult) in &factorization.factors {
        debug_assert_eq!(*mult, 1, "minimal polynomial is squarefree");
        let (q, rem) = mp.divrem(p);
        assert!(rem.is_zero());
        let (g, _, b) = p.extended_gcd(&q);
        assert!(g.is_constant(), "distinct irreducible factors are coprime");
        out.push(b.mul(&q).eval_matrix(z));
    }
    Ok(out)
}

/// Restriction of the action to an invariant subspace spanned by the given
/// columns. Returns the restricted representation and the tall basis matrix
/// mapping restricted coordinates back to ambient ones.
pub fn restrict_to_submodule(
    rho: &Representation,
    basis_cols: &[Vec<FieldElement>],
) -> Result<(Representation, MatrixNF)> {
    let field = rho.field();
    let d = rho.dim();
    let k = basis_cols.len();
    let b = MatrixNF::from_fn(field, d, k, |i, j| basis_cols[j][i].clone());
    let mut images = Vec::with_capacity(rho.images().len());
    for g in rho.images() {
        let gb = g.mul(&b);
        let mut r = MatrixNF::zero(field, k, k);
        for j in 0..k {
            let col = gb.column(j);
            let x = b.solve(&col).ok_or(Error::SplitFailure {
                retries: CENTRAL_RETRIES,
            })?;
            for i in 0..k {
                r.set(i, j, x[i].clone());
            }
        }
        images.push(r);
    }
    let restricted = Representation::new(rho.group().clone(), field, k, images)?;
    Ok((restricted, b))
}

/// Determine (irreducible dimension, multiplicity, irreducible witness
/// basis in local coordinates) for an isotypic module, by probing the
/// commutant for elements whose minimal polynomial splits the module and
/// recursing into kernels.
fn split_component(
    rho: &Representation,
    rng: &mut ChaCha8Rng,
) -> Result<(usize, usize, Vec<Vec<FieldElement>>)> {
    let field = rho.field();
    let d = rho.dim();
    let comm = commutant(rho);
    if comm.dim() == 1 {
        let identity_cols = (0..d)
            .map(|j| {
                (0..d)
                    .map(|i| {
                        if i == j {
                            FieldElement::one(field)
                        } else {
                            FieldElement::zero(field)
                        }
                    })
                    .collect()
            })
            .collect();
        return Ok((d, 1, identity_cols));
    }

    let mut probes: Vec<MatrixNF> = comm.basis[1..].to_vec();
    let head = comm.basis.len().min(4);
    for a in 1..head {
        for b in a..head {
            probes.push(comm.basis[a].mul(&comm.basis[b]));
        }
    }
    for _ in 0..8 {
        let mut z = MatrixNF::zero(field, d, d);
        for c in &comm.basis {
            let coef =
                FieldElement::from_rational(field, Q::from_integer(rng.gen_range(-2i64..=2).into()));
            z = z.add(&c.scale(&coef));
        }
        probes.push(z);
    }

    for probe in &probes {
        if is_scalar(probe) {
            continue;
        }
        let mp = min_poly_of_matrix(probe);
        let factorization = factor(&mp)?;
        let parts = &factorization.factors;
        if parts.len() == 1 && parts[0].1 == 1 {
            // The probe generates a field extension; no splitting data.
            continue;
        }
        if parts.len() == 1 {
            // Single irreducible factor with multiplicity: the kernel of
            // p(probe) is a proper nonzero invariant subspace. Isotypic
            // purity gives the multiplicity from one piece.
            let (p, _) = &parts[0];
            let w = p.eval_matrix(probe);
            let kernel = w.nullspace();
            assert!(!kernel.is_empty() && kernel.len() < d);
            let (sub, b) = restrict_to_submodule(rho, &kernel)?;
            let (u, _, wit) = split_component(&sub, rng)?;
            if u == 0 || d % u != 0 {
                return Err(Error::SplitFailure {
                    retries: CENTRAL_RETRIES,
                });
            }
            let witness = wit.iter().map(|v| b.mul_vec(v)).collect();
            return Ok((u, d / u, witness));
        }
        // Distinct factors: primary decomposition splits the module.
        let mut total_mult = 0usize;
        let mut dim_sum = 0usize;
        let mut u_common: Option<usize> = None;
        let mut witness: Option<Vec<Vec<FieldElement>>> = None;
        for (p, k) in parts {
            let w = p.eval_matrix(probe).pow(*k as u32);
            let kernel = w.nullspace();
            assert!(!kernel.is_empty());
            dim_sum += kernel.len();
            let (sub, b) = restrict_to_submodule(rho, &kernel)?;
            let (u, m, wit) = split_component(&sub, rng)?;
            match u_common {
                None => u_common = Some(u),
                Some(prev) if prev != u => {
                    return Err(Error::SplitFailure {
                        retries: CENTRAL_RETRIES,
                    })
                }
                _ => {}
            }
            total_mult += m;
            if witness.is_none() {
                witness = Some(wit.iter().map(|v| b.mul_vec(v)).collect());
            }
        }
        if dim_sum != d {
            return Err(Error::SplitFailure {
                retries: CENTRAL_RETRIES,
            });
        }
        return Ok((u_common.unwrap(), total_mult, witness.unwrap()));
    }

    // No probe split the module: the commutant is a division algebra and
    // the module is irreducible over its field. Division dimension must
    // divide the module dimension.
    if d % comm.dim() != 0 {
        return Err(Error::SplitFailure {
            retries: CENTRAL_RETRIES,
        });
    }
    let identity_cols = (0..d)
        .map(|j| {
            (0..d)
                .map(|i| {
                    if i == j {
                        FieldElement::one(field)
                    } else {
                        FieldElement::zero(field)
                    }
                })
                .collect()
        })
        .collect();
    Ok((d, 1, identity_cols))
}

fn is_scalar(m: &MatrixNF) -> bool {
    let lambda = m.get(0, 0).clone();
    let d = m.rows();
    (0..d).all(|i| {
        (0..d).all(|j| {
            if i == j {
                *m.get(i, j) == lambda
            } else {
                m.get(i, j).is_zero()
            }
        })
    })
}
