//! Local monodromy of elliptic fibrations: classification of integer
//! unimodular 2x2 matrices into Kodaira types, finite-order eigenvalue
//! admissibility, the puncture product relation on a genus-0 base, the
//! minimal trivializing cover with its Riemann-Hurwitz genus, and the
//! splitting-field rule read off from the local orders.

use crate::error::{Error, Result};
use crate::field::{qi, FieldElement, NumberField, Q};
use crate::matrix::MatrixNF;
use crate::rep::{image_closure, Representation};

const CLOSURE_CAP: usize = 10_000;

/// An element of SL(2, Z); unimodularity is checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SL2ZElement {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl SL2ZElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<SL2ZElement> {
        let det = a
            .checked_mul(d)
            .and_then(|ad| b.checked_mul(c).map(|bc| ad - bc))
            .ok_or(Error::Unsupported("entries out of range".into()))?;
        if det != 1 {
            return Err(Error::NotUnimodular { determinant: det });
        }
        Ok(SL2ZElement { a, b, c, d })
    }

    pub fn identity() -> SL2ZElement {
        SL2ZElement { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == SL2ZElement::identity()
    }

    pub fn is_negative_identity(&self) -> bool {
        self.entries() == [-1, 0, 0, -1]
    }

    /// Exact matrix over the rationals.
    pub fn to_matrix(&self) -> MatrixNF {
        MatrixNF::from_i64(
            NumberField::Rationals,
            &[vec![self.a, self.b], vec![self.c, self.d]],
        )
    }

    /// Order of the element in SL(2, Z): finite orders are exactly
    /// 1, 2, 3, 4, 6.
    pub fn order(&self) -> Option<u32> {
        if self.is_identity() {
            return Some(1);
        }
        if self.is_negative_identity() {
            return Some(2);
        }
        match self.trace() {
            1 => Some(6),
            0 => Some(4),
            -1 => Some(3),
            _ => None,
        }
    }
}

/// Kodaira label of a degenerate fiber; the n of the I and I* families is
/// recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl std::fmt::Display for KodairaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I({n})"),
            KodairaType::IStar(n) => write!(f, "I*({n})"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::IIStar => f.write_str("II*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IVStar => f.write_str("IV*"),
        }
    }
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Kodaira type of a local monodromy matrix. Parabolic classes are told
/// apart by the gcd of the entries of T -/+ Id; elliptic classes by the
/// pair (trace, sign of the lower-left entry), which encodes the rotation
/// multiplier at the fixed point in the upper half-plane and is a
/// conjugation invariant.
///
/// Panics when |trace| > 2: hyperbolic elements never arise as local
/// monodromy of a degenerating elliptic fibration and carry no type.
pub fn kodaira_type(t: &SL2ZElement) -> KodairaType {
    let [a, b, c, d] = t.entries();
    if t.is_identity() {
        return KodairaType::I(0);
    }
    if t.is_negative_identity() {
        return KodairaType::IStar(0);
    }
    match t.trace() {
        2 => {
            let n = gcd64(gcd64(a - 1, b), gcd64(c, d - 1));
            KodairaType::I(n as u32)
        }
        -2 => {
            let n = gcd64(gcd64(-a - 1, -b), gcd64(-c, -d - 1));
            KodairaType::IStar(n as u32)
        }
        1 => {
            if c < 0 {
                KodairaType::II
            } else {
                KodairaType::IIStar
            }
        }
        0 => {
            if c < 0 {
                KodairaType::III
            } else {
                KodairaType::IIIStar
            }
        }
        -1 => {
            if c < 0 {
                KodairaType::IV
            } else {
                KodairaType::IVStar
            }
        }
        tr => panic!("no Kodaira type for hyperbolic element with trace {tr}"),
    }
}

/// Starred/unstarred partner of an elliptic or I*(0) type.
pub fn dual_type(t: KodairaType) -> Option<KodairaType> {
    match t {
        KodairaType::II => Some(KodairaType::IIStar),
        KodairaType::IIStar => Some(KodairaType::II),
        KodairaType::III => Some(KodairaType::IIIStar),
        KodairaType::IIIStar => Some(KodairaType::III),
        KodairaType::IV => Some(KodairaType::IVStar),
        KodairaType::IVStar => Some(KodairaType::IV),
        KodairaType::IStar(0) => Some(KodairaType::IStar(0)),
        _ => None,
    }
}

/// Eigenvalues of a local monodromy in the smallest supported field,
/// together with the admissibility verdict: admissible means finite order
/// (1, 2, 3, 4, or 6), equivalently the eigenvalue pair is a pair of
/// conjugate roots of unity of one of those orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvaluePair {
    pub values: (FieldElement, FieldElement),
    pub admissible: bool,
}

pub fn local_eigenvalues(t: &SL2ZElement) -> EigenvaluePair {
    let tr = t.trace();
    let admissible = t.order().is_some();
    let pair_in = |n: u32, k: u32| {
        let field = NumberField::cyclotomic(n).unwrap();
        let z = FieldElement::generator(field);
        (z.pow(k), z.pow(n - k))
    };
    let values = match tr {
        2 => {
            let field = NumberField::Rationals;
            (FieldElement::one(field), FieldElement::one(field))
        }
        -2 => {
            let field = NumberField::Rationals;
            (
                FieldElement::from_integer(field, -1),
                FieldElement::from_integer(field, -1),
            )
        }
        1 => pair_in(6, 1),
        0 => pair_in(4, 1),
        -1 => pair_in(3, 1),
        _ => {
            // Hyperbolic: two real roots (tr +/- sqrt(tr^2 - 4))/2 in the
            // real quadratic field of the discriminant, larger first.
            let disc = tr * tr - 4;
            let (sf, _) = crate::field::squarefree_split(&num_bigint::BigInt::from(disc));
            let d = i64::try_from(&sf).expect("small discriminant");
            let field = NumberField::quadratic(d).unwrap();
            let root = FieldElement::new(
                field,
                vec![Q::new(tr.into(), 2.into()), {
                    // sqrt(disc) = f * sqrt(d) with disc = d f^2.
                    let f = ((disc / d) as f64).sqrt() as i64;
                    debug_assert_eq!(d * f * f, disc);
                    Q::new(f.into(), 2.into())
                }],
            );
            let other = FieldElement::from_rational(field, qi(tr)).sub(&root);
            (root, other)
        }
    };
    EigenvaluePair { values, admissible }
}

/// Verdict of checking a list of fiber types against the allowed set for
/// finite local monodromy: II, III, IV, I*(0), II*, III*, IV*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    pub first_offender: Option<KodairaType>,
}

pub fn isotrivial_admissible(types: &[KodairaType]) -> AdmissibilityVerdict {
    let allowed = |t: &KodairaType| {
        matches!(
            t,
            KodairaType::II
                | KodairaType::III
                | KodairaType::IV
                | KodairaType::IStar(0)
                | KodairaType::IIStar
                | KodairaType::IIIStar
                | KodairaType::IVStar
        )
    };
    match types.iter().find(|t| !allowed(t)) {
        Some(t) => AdmissibilityVerdict {
            admissible: false,
            first_offender: Some(*t),
        },
        None => AdmissibilityVerdict {
            admissible: true,
            first_offender: None,
        },
    }
}

/// Fibration data over a punctured genus-0 base: the ordered local
/// monodromies, and optionally a higher-rank rational representation
/// attached to the same punctures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationDescriptor {
    pub base_genus: u32,
    pub punctures: Vec<SL2ZElement>,
    pub rep: Option<Representation>,
}

impl FibrationDescriptor {
    pub fn new(
        base_genus: u32,
        punctures: Vec<SL2ZElement>,
        rep: Option<Representation>,
    ) -> Result<FibrationDescriptor> {
        if base_genus > 0 {
            return Err(Error::Unsupported(
                "only genus-0 bases are supported".into(),
            ));
        }
        if let Some(r) = &rep {
            if r.field() != NumberField::Rationals {
                return Err(Error::InvalidField(
                    "attached representations must be rational".into(),
                ));
            }
            if r.group().generator_count() != punctures.len() {
                return Err(Error::InvalidRepresentation(
                    "attached representation must have one generator per puncture".into(),
                ));
            }
        }
        Ok(FibrationDescriptor {
            base_genus,
            punctures,
            rep,
        })
    }
}

/// Whether the ordered product of the local monodromies is the identity,
/// as the fundamental group of a punctured sphere requires.
pub fn check_puncture_relation(d: &FibrationDescriptor) -> bool {
    let mut product = MatrixNF::identity(NumberField::Rationals, 2);
    for t in &d.punctures {
        product = product.mul(&t.to_matrix());
    }
    product.is_identity()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompactClass {
    Rational,
    Abelian,
    GeneralType,
}

impl std::fmt::Display for CompactClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CompactClass::Rational => "rational",
            CompactClass::Abelian => "abelian",
            CompactClass::GeneralType => "general_type",
        };
        f.write_str(s)
    }
}

/// The minimal cover of the punctured base trivializing the rank-2
/// system, compactified: its degree, Euler characteristics, genus, and
/// birational class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub degree: usize,
    pub euler_open: i64,
    pub euler_compact: i64,
    pub genus: i64,
    pub compact_class: CompactClass,
}

/// Compute the trivializing cover: the Galois cover attached to the
/// kernel of the monodromy representation. Degree = image order N;
/// ramification index over puncture i = order of T_i; the open Euler
/// characteristic is N(2 - s) and compactification adds N/n_i points over
/// puncture i. Genus comes from chi = 2 - 2g.
pub fn trivializing_cover(d: &FibrationDescriptor) -> Result<CoverReport> {
    trivializing_cover_with_cap(d, CLOSURE_CAP)
}

/// [`trivializing_cover`] with an explicit cap on the image enumeration.
pub fn trivializing_cover_with_cap(d: &FibrationDescriptor, cap: usize) -> Result<CoverReport> {
    if !check_puncture_relation(d) {
        return Err(Error::RelationViolated);
    }
    let mats: Vec<MatrixNF> = d.punctures.iter().map(SL2ZElement::to_matrix).collect();
    let rho = Representation::on_free_group(NumberField::Rationals, 2, mats)
        .expect("unimodular matrices are invertible");
    let image = image_closure(&rho, cap)?;
    let n = image.order as i64;
    let s = d.punctures.len() as i64;
    let euler_open = n * (2 - s);
    let mut added = 0i64;
    for (i, t) in d.punctures.iter().enumerate() {
        let order = t.order().unwrap_or_else(|| {
            unreachable!("finite image forces finite order at puncture {i}")
        }) as i64;
        debug_assert_eq!(n % order, 0, "local order divides the group order");
        added += n / order;
    }
    let euler_compact = euler_open + added;
    if (2 - euler_compact).rem_euclid(2) != 0 {
        return Err(Error::NonIntegerGenus(format!(
            "compact Euler characteristic {euler_compact} is odd"
        )));
    }
    let genus = (2 - euler_compact) / 2;
    if genus < 0 {
        return Err(Error::NonIntegerGenus(format!(
            "negative genus {genus} from Euler characteristic {euler_compact}"
        )));
    }
    let compact_class = match genus {
        0 => CompactClass::Rational,
        1 => CompactClass::Abelian,
        _ => CompactClass::GeneralType,
    };
    Ok(CoverReport {
        degree: image.order,
        euler_open,
        euler_compact,
        genus,
        compact_class,
    })
}

/// The field over which the local orders force the system to split,
/// together with an optional warning: orders at most 2 give the
/// rationals, order 4 gives the Gaussian field, orders 3 or 6 give the
/// Eisenstein quadratic field, and a mix of 4 with 3 or 6 gives their
/// compositum with a warning since no single quadratic field suffices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingFieldVerdict {
    pub field: NumberField,
    pub warning: Option<String>,
}

pub fn splitting_field_from_orders(d: &FibrationDescriptor) -> Result<SplittingFieldVerdict> {
    let mut orders = Vec::with_capacity(d.punctures.len());
    for (index, t) in d.punctures.iter().enumerate() {
        match t.order() {
            Some(o) => orders.push(o),
            None => return Err(Error::InfiniteOrderPresent { index }),
        }
    }
    let has4 = orders.iter().any(|&o| o == 4);
    let has36 = orders.iter().any(|&o| o == 3 || o == 6);
    if !has4 && !has36 {
        // Real type; the compactified cover must be an abelian curve.
        let warning = match trivializing_cover(d) {
            Ok(report) if report.compact_class == CompactClass::Abelian => None,
            Ok(report) => Some(format!(
                "real-type orders but the cover compactifies to a {} curve",
                report.compact_class
            )),
            Err(e) => Some(format!("cover not computable: {e}")),
        };
        return Ok(SplittingFieldVerdict {
            field: NumberField::Rationals,
            warning,
        });
    }
    if has4 && has36 {
        return Ok(SplittingFieldVerdict {
            field: NumberField::cyclotomic(12)?,
            warning: Some(
                "orders 4 and 3 or 6 are both present; no quadratic field splits all local systems, returning their compositum"
                    .into(),
            ),
        });
    }
    let field = if has4 {
        NumberField::quadratic(-1)?
    } else {
        NumberField::quadratic(-3)?
    };
    Ok(SplittingFieldVerdict {
        field,
        warning: None,
    })
}
