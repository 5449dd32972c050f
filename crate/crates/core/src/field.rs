//! Exact arithmetic in the supported coefficient fields: the rationals,
//! quadratic fields generated by a square root of a squarefree integer, and
//! the cyclotomic fields of order 3, 4, 6, 8 and 12.
//!
//! Elements are stored as rational coordinate vectors over the power basis of
//! the field generator. The designated complex embedding sends the generator
//! of a quadratic field with d < 0 to +i*sqrt(|d|), the generator of a
//! quadratic field with d > 0 to +sqrt(d), and the generator of the order-n
//! cyclotomic field to exp(2*pi*i/n). Sign questions against that embedding
//! are settled by interval bisection with rational endpoints; no floating
//! point is used anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the workspace.
pub type Q = BigRational;

/// Rational from an integer literal.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair. Denominator must be nonzero.
pub fn qr(num: i64, den: i64) -> Q {
    assert!(den != 0, "zero denominator");
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Exact square root of a nonnegative rational, if one exists.
pub fn sqrt_rational(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Q::zero());
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    let candidate = Q::new(n, d);
    if &candidate * &candidate == *x {
        Some(candidate)
    } else {
        None
    }
}

/// Splits n = sf * f^2 with sf squarefree and f positive; the sign stays on sf.
/// Complete for |n| below 10^18 (trial division to 10^6 plus a square test on
/// the cofactor).
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let sign = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut rest = n.abs();
    let mut sf = BigInt::one();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2u32);
    let million = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= million {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            sf *= &p;
        }
        for _ in 0..count / 2 {
            f *= &p;
        }
        p += 1u32;
    }
    // rest is now 1, a prime, a product of two primes above 10^6, or the
    // square of such a prime.
    let r = rest.sqrt();
    if &r * &r == rest {
        f *= r;
    } else {
        sf *= rest;
    }
    (sign * sf, f)
}

fn is_squarefree_i64(d: i64) -> bool {
    let (sf, _) = squarefree_split(&BigInt::from(d));
    sf == BigInt::from(d)
}

/// Exact sign of a value relative to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of_rational(x: &Q) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// A supported coefficient field, identified by its defining data. Two
/// values are equal exactly when their descriptors agree; isomorphic fields
/// with different descriptors (for example quadratic d = -3 and the order-3
/// cyclotomic field) are distinct values on purpose, because elements carry
/// coordinates relative to the descriptor's power basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NumberField {
    Rationals,
    /// Field generated by a square root of the squarefree integer d.
    Quadratic { d: i64 },
    /// Field generated by a primitive n-th root of unity, n in {3,4,6,8,12}.
    Cyclotomic { n: u32 },
}

pub const CYCLOTOMIC_ORDERS: [u32; 5] = [3, 4, 6, 8, 12];

impl NumberField {
    pub fn rationals() -> NumberField {
        NumberField::Rationals
    }

    pub fn quadratic(d: i64) -> Result<NumberField> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidField(format!(
                "quadratic parameter must be a squarefree integer other than 0 and 1, got {d}"
            )));
        }
        if !is_squarefree_i64(d) {
            return Err(Error::InvalidField(format!(
                "quadratic parameter must be squarefree, got {d}"
            )));
        }
        Ok(NumberField::Quadratic { d })
    }

    pub fn cyclotomic(n: u32) -> Result<NumberField> {
        if !CYCLOTOMIC_ORDERS.contains(&n) {
            return Err(Error::InvalidField(format!(
                "cyclotomic order must be one of {CYCLOTOMIC_ORDERS:?}, got {n}"
            )));
        }
        Ok(NumberField::Cyclotomic { n })
    }

    /// Degree over the rationals.
    pub fn degree(&self) -> usize {
        match self {
            NumberField::Rationals => 1,
            NumberField::Quadratic { .. } => 2,
            NumberField::Cyclotomic { n: 3 | 4 | 6 } => 2,
            NumberField::Cyclotomic { n: 8 | 12 } => 4,
            NumberField::Cyclotomic { n } => unreachable!("unsupported cyclotomic order {n}"),
        }
    }

    /// Monic minimal polynomial of the generator, ascending coefficients,
    /// length degree + 1.
    pub fn minimal_polynomial(&self) -> Vec<Q> {
        match self {
            // The generator of the rationals is 1.
            NumberField::Rationals => vec![qi(-1), qi(1)],
            NumberField::Quadratic { d } => vec![qi(-*d), qi(0), qi(1)],
            NumberField::Cyclotomic { n: 3 } => vec![qi(1), qi(1), qi(1)],
            NumberField::Cyclotomic { n: 4 } => vec![qi(1), qi(0), qi(1)],
            NumberField::Cyclotomic { n: 6 } => vec![qi(1), qi(-1), qi(1)],
            NumberField::Cyclotomic { n: 8 } => vec![qi(1), qi(0), qi(0), qi(0), qi(1)],
            NumberField::Cyclotomic { n: 12 } => vec![qi(1), qi(0), qi(-1), qi(0), qi(1)],
            NumberField::Cyclotomic { n } => unreachable!("unsupported cyclotomic order {n}"),
        }
    }

    /// Power-basis coordinates of the complex conjugate of the generator.
    fn conjugate_generator_coords(&self) -> Vec<Q> {
        match self {
            NumberField::Rationals => vec![qi(1)],
            NumberField::Quadratic { d } if *d > 0 => vec![qi(0), qi(1)],
            NumberField::Quadratic { .. } => vec![qi(0), qi(-1)],
            // conj(z) = z^2 = -1 - z
            NumberField::Cyclotomic { n: 3 } => vec![qi(-1), qi(-1)],
            NumberField::Cyclotomic { n: 4 } => vec![qi(0), qi(-1)],
            // conj(z) = z^5 = 1 - z
            NumberField::Cyclotomic { n: 6 } => vec![qi(1), qi(-1)],
            // conj(z) = z^7 = -z^3
            NumberField::Cyclotomic { n: 8 } => vec![qi(0), qi(0), qi(0), qi(-1)],
            // conj(z) = z^11 = z - z^3
            NumberField::Cyclotomic { n: 12 } => vec![qi(0), qi(1), qi(0), qi(-1)],
            NumberField::Cyclotomic { n } => unreachable!("unsupported cyclotomic order {n}"),
        }
    }

    /// True when complex conjugation is the identity on the field.
    pub fn is_totally_real(&self) -> bool {
        matches!(
            self,
            NumberField::Rationals | NumberField::Quadratic { d: 1.. }
        )
    }

    /// Reduce a coordinate vector of any length modulo the minimal
    /// polynomial, returning exactly `degree` coordinates.
    fn reduce(&self, mut coeffs: Vec<Q>) -> Vec<Q> {
        let deg = self.degree();
        let min_poly = self.minimal_polynomial();
        while coeffs.len() > deg {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = coeffs.len() - deg;
            for (j, m) in min_poly.iter().take(deg).enumerate() {
                let delta = &top * m;
                coeffs[k + j] -= delta;
            }
        }
        coeffs.resize(deg, Q::zero());
        coeffs
    }

    /// Images of the generator under all field automorphisms over the
    /// rationals (every supported field is Galois over the rationals).
    pub fn automorphism_generator_images(&self) -> Vec<FieldElement> {
        match self {
            NumberField::Rationals => vec![FieldElement::generator(*self)],
            NumberField::Quadratic { .. } => vec![
                FieldElement::generator(*self),
                FieldElement::generator(*self).negate(),
            ],
            NumberField::Cyclotomic { n } => {
                let z = FieldElement::generator(*self);
                (1..*n)
                    .filter(|k| gcd_u32(*k, *n) == 1)
                    .map(|k| z.pow(k))
                    .collect()
            }
        }
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// An element of a supported field, as rational coordinates over the power
/// basis 1, z, ..., z^(degree-1) of the generator z.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Q>,
}

impl FieldElement {
    pub fn new(field: NumberField, coords: Vec<Q>) -> FieldElement {
        assert_eq!(
            coords.len(),
            field.degree(),
            "coordinate count must equal the field degree"
        );
        FieldElement { field, coords }
    }

    pub fn zero(field: NumberField) -> FieldElement {
        FieldElement {
            field,
            coords: vec![Q::zero(); field.degree()],
        }
    }

    pub fn one(field: NumberField) -> FieldElement {
        FieldElement::from_rational(field, Q::one())
    }

    pub fn from_rational(field: NumberField, value: Q) -> FieldElement {
        let mut coords = vec![Q::zero(); field.degree()];
        coords[0] = value;
        FieldElement { field, coords }
    }

    pub fn from_integer(field: NumberField, value: i64) -> FieldElement {
        FieldElement::from_rational(field, qi(value))
    }

    /// The field generator as an element.
    pub fn generator(field: NumberField) -> FieldElement {
        match field {
            NumberField::Rationals => FieldElement::one(field),
            _ => {
                let mut coords = vec![Q::zero(); field.degree()];
                coords[1] = Q::one();
                FieldElement { field, coords }
            }
        }
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Q::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Q::is_zero)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Q::is_zero)
    }

    /// The element as a rational number, when it lies in the prime subfield.
    pub fn as_rational(&self) -> Option<Q> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Reinterpret a rational-valued element in another field.
    pub fn embed_into(&self, target: NumberField) -> Result<FieldElement> {
        if self.field == target {
            return Ok(self.clone());
        }
        match self.as_rational() {
            Some(q) => Ok(FieldElement::from_rational(target, q)),
            None => Err(Error::FieldMismatch),
        }
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert_eq!(self.field, other.field, "mixed-field arithmetic");
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field,
            coords,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field,
            coords,
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_field(other);
        let deg = self.field.degree();
        let mut prod = vec![Q::zero(); 2 * deg - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        FieldElement {
            field: self.field,
            coords: self.field.reduce(prod),
        }
    }

    pub fn scale(&self, factor: &Q) -> FieldElement {
        FieldElement {
            field: self.field,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn negate(&self) -> FieldElement {
        FieldElement {
            field: self.field,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// power-basis representative and the minimal polynomial.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::Singular);
        }
        let deg = self.field.degree();
        if deg == 1 {
            return Ok(FieldElement::from_rational(
                self.field,
                Q::one() / &self.coords[0],
            ));
        }
        // Extended Euclid on polynomials over the rationals: find s with
        // s * self = 1 modulo the minimal polynomial.
        let mut r0: Vec<Q> = self.field.minimal_polynomial();
        let mut r1: Vec<Q> = trim(self.coords.clone());
        let mut s0: Vec<Q> = vec![];
        let mut s1: Vec<Q> = vec![Q::one()];
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem_q(&r0, &r1);
            let s2 = poly_sub_q(&s0, &poly_mul_q(&quot, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant (the minimal polynomial is irreducible).
        assert_eq!(r0.len(), 1, "minimal polynomial must be irreducible");
        let inv_gcd = Q::one() / &r0[0];
        let coords = self
            .field
            .reduce(s0.iter().map(|c| c * &inv_gcd).collect());
        Ok(FieldElement {
            field: self.field,
            coords,
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, mut exp: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Evaluate the coordinate polynomial at an arbitrary image of the
    /// generator; this applies a field automorphism when the image is a root
    /// of the minimal polynomial.
    fn evaluate_at(&self, generator_image: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(self.field);
        for c in self.coords.iter().rev() {
            acc = acc.mul(generator_image);
            acc.coords[0] += c;
        }
        acc
    }

    /// Complex conjugation, the canonical involution of the field.
    pub fn conjugate(&self) -> FieldElement {
        if self.field.is_totally_real() {
            return self.clone();
        }
        let image = FieldElement {
            field: self.field,
            coords: self.field.conjugate_generator_coords(),
        };
        self.evaluate_at(&image)
    }

    /// Apply the automorphism sending the generator to the given image.
    pub fn apply_automorphism(&self, generator_image: &FieldElement) -> FieldElement {
        self.assert_same_field(generator_image);
        self.evaluate_at(generator_image)
    }

    /// True when the element is fixed by conjugation, i.e. lies in the
    /// maximal totally real subfield.
    pub fn is_conjugation_fixed(&self) -> bool {
        self.conjugate() == *self
    }

    /// Express a conjugation-fixed element as a + b*sqrt(m) with m a
    /// squarefree integer greater than 1, or with b = 0 when rational.
    fn real_surd_form(&self) -> Option<(Q, Q, BigInt)> {
        if !self.is_conjugation_fixed() {
            return None;
        }
        let c = &self.coords;
        match self.field {
            NumberField::Rationals => Some((c[0].clone(), Q::zero(), BigInt::one())),
            NumberField::Quadratic { d } if d > 0 => {
                Some((c[0].clone(), c[1].clone(), BigInt::from(d)))
            }
            NumberField::Quadratic { .. } | NumberField::Cyclotomic { n: 3 | 4 | 6 } => {
                debug_assert!(c[1].is_zero());
                Some((c[0].clone(), Q::zero(), BigInt::one()))
            }
            // Fixed elements are c0 + c1*(z - z^3), and z - z^3 = sqrt(2).
            NumberField::Cyclotomic { n: 8 } => {
                debug_assert!(c[2].is_zero() && c[1] == -c[3].clone());
                Some((c[0].clone(), c[1].clone(), BigInt::from(2)))
            }
            // Fixed elements are c0 + c3*(z^3 - 2z), and z^3 - 2z = -sqrt(3).
            NumberField::Cyclotomic { n: 12 } => {
                debug_assert!(c[2].is_zero() && c[1] == (-c[3].clone()) * qi(2));
                Some((c[0].clone(), -c[3].clone(), BigInt::from(3)))
            }
            NumberField::Cyclotomic { n } => unreachable!("unsupported cyclotomic order {n}"),
        }
    }

    /// Exact sign of the image under the designated embedding, for elements
    /// of the totally real subfield. Signs are settled by bisecting the
    /// defining polynomial x^2 - m on rational intervals; a non-real element
    /// is rejected.
    pub fn sign_in_embedding(&self) -> Result<Sign> {
        let (a, b, m) = self.real_surd_form().ok_or(Error::NotReal)?;
        if b.is_zero() {
            return Ok(Sign::of_rational(&a));
        }
        Ok(sign_of_surd(&a, &b, &m))
    }

    /// A canonical purely imaginary element with positive imaginary part
    /// under the designated embedding, when the field is not totally real.
    pub fn canonical_imaginary(field: NumberField) -> Option<FieldElement> {
        let coords: Vec<Q> = match field {
            NumberField::Rationals => return None,
            NumberField::Quadratic { d } if d > 0 => return None,
            // sqrt(d) itself maps to +i*sqrt(|d|).
            NumberField::Quadratic { .. } => vec![qi(0), qi(1)],
            // 1 + 2z = i*sqrt(3)
            NumberField::Cyclotomic { n: 3 } => vec![qi(1), qi(2)],
            NumberField::Cyclotomic { n: 4 } => vec![qi(0), qi(1)],
            // 2z - 1 = i*sqrt(3)
            NumberField::Cyclotomic { n: 6 } => vec![qi(-1), qi(2)],
            // z + z^3 = i*sqrt(2)
            NumberField::Cyclotomic { n: 8 } => vec![qi(0), qi(1), qi(0), qi(1)],
            // z^3 = i
            NumberField::Cyclotomic { n: 12 } => vec![qi(0), qi(0), qi(0), qi(1)],
            NumberField::Cyclotomic { n } => unreachable!("unsupported cyclotomic order {n}"),
        };
        Some(FieldElement::new(field, coords))
    }

    /// Exact sign of the imaginary part of the element under the designated
    /// embedding.
    pub fn imaginary_sign(&self) -> Result<Sign> {
        if self.field.is_totally_real() {
            return Ok(Sign::Zero);
        }
        let nu = self.sub(&self.conjugate());
        if nu.is_zero() {
            return Ok(Sign::Zero);
        }
        let iota = FieldElement::canonical_imaginary(self.field)
            .expect("non-real field has an imaginary unit");
        // nu = 2i*Im(self) and iota = i*s with s > 0, so nu/iota is real
        // with the sign of Im(self).
        let ratio = nu.div(&iota)?;
        ratio.sign_in_embedding()
    }

    /// Exact square root inside the field, when one exists. The two roots
    /// differ by sign; one of them is returned.
    pub fn sqrt_in_field(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let result = match self.field.degree() {
            1 => sqrt_rational(&self.coords[0])
                .map(|r| FieldElement::from_rational(self.field, r)),
            2 => sqrt_degree2(self),
            4 => sqrt_degree4(self),
            _ => unreachable!("supported fields have degree 1, 2, or 4"),
        };
        if let Some(ref y) = result {
            debug_assert_eq!(y.mul(y), *self, "square root must verify");
        }
        result
    }
}

/// Sign of a + b*sqrt(m) with b nonzero and m squarefree above 1, by
/// refining a rational isolating interval for the positive root of x^2 - m.
fn sign_of_surd(a: &Q, b: &Q, m: &BigInt) -> Sign {
    let m_q = Q::from_integer(m.clone());
    let mut lo = Q::zero();
    let mut hi = m_q.clone();
    if hi < Q::one() {
        unreachable!("m is at least 2");
    }
    loop {
        let v_at_lo = a + b * &lo;
        let v_at_hi = a + b * &hi;
        let (v_min, v_max) = if b.is_positive() {
            (v_at_lo, v_at_hi)
        } else {
            (v_at_hi, v_at_lo)
        };
        if v_min.is_positive() {
            return Sign::Positive;
        }
        if v_max.is_negative() {
            return Sign::Negative;
        }
        let mid = (&lo + &hi) / qi(2);
        // mid^2 never equals m: m is squarefree and greater than 1.
        if &mid * &mid < m_q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

// --- square roots in degree-2 fields ------------------------------------

/// Surd presentation x = A + B*sqrt(delta) of a degree-2 field, with the
/// basis-change data for the specific generator.
fn to_surd(x: &FieldElement) -> (Q, Q, i64) {
    let c0 = x.coords()[0].clone();
    let c1 = x.coords()[1].clone();
    match x.field() {
        NumberField::Quadratic { d } => (c0, c1, d),
        // z = (-1 + sqrt(-3))/2
        NumberField::Cyclotomic { n: 3 } => (c0 - &c1 / qi(2), c1 / qi(2), -3),
        NumberField::Cyclotomic { n: 4 } => (c0, c1, -1),
        // z = (1 + sqrt(-3))/2
        NumberField::Cyclotomic { n: 6 } => (c0 + &c1 / qi(2), c1 / qi(2), -3),
        _ => unreachable!("not a degree-2 field"),
    }
}

fn from_surd(field: NumberField, a: Q, b: Q) -> FieldElement {
    let coords = match field {
        NumberField::Quadratic { .. } => vec![a, b],
        // sqrt(-3) = 1 + 2z
        NumberField::Cyclotomic { n: 3 } => vec![a + &b, b * qi(2)],
        NumberField::Cyclotomic { n: 4 } => vec![a, b],
        // sqrt(-3) = 2z - 1
        NumberField::Cyclotomic { n: 6 } => vec![a - &b, b * qi(2)],
        _ => unreachable!("not a degree-2 field"),
    };
    FieldElement::new(field, coords)
}

/// Square root in a degree-2 field: solve (U + V*sqrt(delta))^2 = A + B*sqrt(delta)
/// in rational unknowns U, V.
fn sqrt_degree2(x: &FieldElement) -> Option<FieldElement> {
    let field = x.field();
    let (a, b, delta) = to_surd(x);
    let delta_q = qi(delta);
    if b.is_zero() {
        if let Some(u) = sqrt_rational(&a) {
            return Some(from_surd(field, u, Q::zero()));
        }
        if let Some(v) = sqrt_rational(&(&a / &delta_q)) {
            return Some(from_surd(field, Q::zero(), v));
        }
        return None;
    }
    // U^2 + delta*V^2 = A and 2UV = B force U^2 to solve
    // t^2 - A t + delta*B^2/4 = 0.
    let disc = &a * &a - &delta_q * &b * &b;
    let s = sqrt_rational(&disc)?;
    for t in [(&a + &s) / qi(2), (&a - &s) / qi(2)] {
        if let Some(u) = sqrt_rational(&t) {
            if u.is_zero() {
                continue;
            }
            let v = &b / (qi(2) * &u);
            let candidate = from_surd(field, u, v);
            if candidate.mul(&candidate) == *x {
                return Some(candidate);
            }
        }
    }
    None
}

// --- square roots in degree-4 fields ------------------------------------

/// The degree-2 subfield F with generator the square of the degree-4
/// generator: z8^2 generates the order-4 cyclotomic field, z12^2 the
/// order-6 one.
fn tower_base(field: NumberField) -> NumberField {
    match field {
        NumberField::Cyclotomic { n: 8 } => NumberField::Cyclotomic { n: 4 },
        NumberField::Cyclotomic { n: 12 } => NumberField::Cyclotomic { n: 6 },
        _ => unreachable!("not a supported degree-4 field"),
    }
}

/// Split x = D0 + z*D1 with D0, D1 in the tower base field.
fn tower_split(x: &FieldElement) -> (FieldElement, FieldElement) {
    let base = tower_base(x.field());
    let c = x.coords();
    (
        FieldElement::new(base, vec![c[0].clone(), c[2].clone()]),
        FieldElement::new(base, vec![c[1].clone(), c[3].clone()]),
    )
}

fn tower_join(field: NumberField, d0: &FieldElement, d1: &FieldElement) -> FieldElement {
    let a = d0.coords();
    let b = d1.coords();
    FieldElement::new(
        field,
        vec![a[0].clone(), b[0].clone(), a[1].clone(), b[1].clone()],
    )
}

/// Square root in a degree-4 cyclotomic field, descending through the
/// quadratic subfield tower: solve (U + z*V)^2 = D0 + z*D1 with U, V in the
/// base field, where z^2 generates the base field.
fn sqrt_degree4(x: &FieldElement) -> Option<FieldElement> {
    let field = x.field();
    let base = tower_base(field);
    let (d0, d1) = tower_split(x);
    let zeta = FieldElement::generator(base);
    if d1.is_zero() {
        if let Some(u) = d0.sqrt_in_field() {
            return Some(tower_join(field, &u, &FieldElement::zero(base)));
        }
        if let Some(v) = d0.div(&zeta).ok()?.sqrt_in_field() {
            return Some(tower_join(field, &FieldElement::zero(base), &v));
        }
        return None;
    }
    // U^2 + zeta*V^2 = D0 and 2UV = D1 force U^2 to solve
    // t^2 - D0 t + zeta*D1^2/4 = 0 over the base field.
    let disc = d0.mul(&d0).sub(&zeta.mul(&d1).mul(&d1));
    let s = disc.sqrt_in_field()?;
    let half = FieldElement::from_rational(base, qr(1, 2));
    for t in [
        d0.add(&s).mul(&half),
        d0.sub(&s).mul(&half),
    ] {
        if let Some(u) = t.sqrt_in_field() {
            if u.is_zero() {
                continue;
            }
            let v = d1.div(&u.scale(&qi(2))).ok()?;
            let candidate = tower_join(field, &u, &v);
            if candidate.mul(&candidate) == *x {
                return Some(candidate);
            }
        }
    }
    None
}

// --- small polynomial helpers over the rationals ------------------------

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().is_some_and(Q::is_zero) {
        v.pop();
    }
    v
}

fn poly_divrem_q(num: &[Q], den: &[Q]) -> (Vec<Q>, Vec<Q>) {
    assert!(!den.is_empty(), "division by the zero polynomial");
    let mut rem = num.to_vec();
    let dlen = den.len();
    if rem.len() < dlen {
        return (vec![], trim(rem));
    }
    let mut quot = vec![Q::zero(); rem.len() - dlen + 1];
    let lead_inv = Q::one() / den.last().unwrap();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dlen - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            let delta = &c * d;
            rem[k + j] -= delta;
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

fn poly_mul_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Q::zero());
    for (j, y) in b.iter().enumerate() {
        out[j] -= y;
    }
    trim(out)
}

// --- rendering -----------------------------------------------------------

impl std::fmt::Display for FieldElement {
    /// Canonical text form: terms in decreasing powers of the generator z,
    /// rationals as p/q, e.g. "1/2*z + 1" or "-z^2 + 1/3".
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, coef) in self.coords.iter().enumerate().rev() {
            if coef.is_zero() {
                continue;
            }
            let magnitude = coef.abs();
            if first {
                if coef.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coef.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coef = power == 0 || !magnitude.is_one();
            if show_coef {
                write!(f, "{magnitude}")?;
            }
            if power > 0 {
                if show_coef {
                    write!(f, "*")?;
                }
                if power == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{power}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: u32) -> NumberField {
        NumberField::cyclotomic(n).unwrap()
    }

    fn quad(d: i64) -> NumberField {
        NumberField::quadratic(d).unwrap()
    }

    #[test]
    fn field_constructors_validate() {
        assert!(NumberField::quadratic(0).is_err());
        assert!(NumberField::quadratic(1).is_err());
        assert!(NumberField::quadratic(12).is_err());
        assert!(NumberField::quadratic(-4).is_err());
        assert!(NumberField::quadratic(-1).is_ok());
        assert!(NumberField::quadratic(10).is_ok());
        assert!(NumberField::cyclotomic(5).is_err());
        assert!(NumberField::cyclotomic(8).is_ok());
    }

    #[test]
    fn squarefree_split_examples() {
        let (sf, f) = squarefree_split(&BigInt::from(-12));
        assert_eq!((sf, f), (BigInt::from(-3), BigInt::from(2)));
        let (sf, f) = squarefree_split(&BigInt::from(49));
        assert_eq!((sf, f), (BigInt::from(1), BigInt::from(7)));
        let (sf, f) = squarefree_split(&BigInt::from(30));
        assert_eq!((sf, f), (BigInt::from(30), BigInt::from(1)));
    }

    #[test]
    fn generator_satisfies_minimal_polynomial() {
        for field in [
            NumberField::Rationals,
            quad(5),
            quad(-1),
            quad(-3),
            cyc(3),
            cyc(4),
            cyc(6),
            cyc(8),
            cyc(12),
        ] {
            let z = FieldElement::generator(field);
            let mp = field.minimal_polynomial();
            let mut acc = FieldElement::zero(field);
            for c in mp.iter().rev() {
                acc = acc.mul(&z);
                acc = acc.add(&FieldElement::from_rational(field, c.clone()));
            }
            assert!(acc.is_zero(), "{field:?}");
        }
    }

    #[test]
    fn cyclotomic_generators_have_expected_order() {
        for (n, order) in [(3u32, 3u32), (4, 4), (6, 6), (8, 8), (12, 12)] {
            let z = FieldElement::generator(cyc(n));
            assert!(z.pow(order).is_one());
            for k in 1..order {
                assert!(!z.pow(k).is_one(), "z_{n} has order dividing {k}");
            }
        }
    }

    #[test]
    fn conjugation_of_cube_root_of_unity() {
        // conj(z3) = z3^2 = -1 - z3
        let z = FieldElement::generator(cyc(3));
        let expected = FieldElement::new(cyc(3), vec![qi(-1), qi(-1)]);
        assert_eq!(z.conjugate(), expected);
    }

    #[test]
    fn conjugation_is_an_involution_and_multiplicative() {
        for field in [quad(-5), cyc(3), cyc(4), cyc(6), cyc(8), cyc(12)] {
            let z = FieldElement::generator(field);
            let a = z
                .pow(2)
                .add(&z.scale(&qr(3, 2)))
                .add(&FieldElement::from_integer(field, -2));
            let b = z.sub(&FieldElement::from_rational(field, qr(1, 3)));
            assert_eq!(a.conjugate().conjugate(), a);
            assert_eq!(
                a.mul(&b).conjugate(),
                a.conjugate().mul(&b.conjugate()),
                "{field:?}"
            );
            assert_eq!(a.add(&b).conjugate(), a.conjugate().add(&b.conjugate()));
        }
    }

    #[test]
    fn involution_fixes_totally_real_fields() {
        for field in [NumberField::Rationals, quad(2), quad(5)] {
            let z = FieldElement::generator(field);
            let a = z.scale(&qr(7, 3)).add(&FieldElement::from_integer(field, 4));
            assert_eq!(a.conjugate(), a);
        }
    }

    #[test]
    fn inverse_round_trips() {
        for field in [NumberField::Rationals, quad(5), quad(-1), cyc(3), cyc(8), cyc(12)] {
            let z = FieldElement::generator(field);
            let a = z.add(&FieldElement::from_integer(field, 2));
            let inv = a.inverse().unwrap();
            assert!(a.mul(&inv).is_one(), "{field:?}");
        }
        assert_eq!(
            FieldElement::zero(cyc(4)).inverse(),
            Err(Error::Singular)
        );
    }

    #[test]
    fn sign_of_sqrt5_minus_2_is_positive() {
        // sqrt(5) - 2: the isolating interval for sqrt(5) refines inside
        // (2, 9/4), so the difference is positive.
        let field = quad(5);
        let x = FieldElement::generator(field).add(&FieldElement::from_integer(field, -2));
        assert_eq!(x.sign_in_embedding().unwrap(), Sign::Positive);
        let y = x.negate();
        assert_eq!(y.sign_in_embedding().unwrap(), Sign::Negative);
    }

    #[test]
    fn sign_rejects_non_real_elements() {
        let z = FieldElement::generator(cyc(4));
        assert_eq!(z.sign_in_embedding(), Err(Error::NotReal));
    }

    #[test]
    fn sign_on_real_subfield_of_degree4_fields() {
        // z8 - z8^3 = sqrt(2) > 0, and z12 fixes 2z - z^3 = sqrt(3) > 0.
        let z8 = FieldElement::generator(cyc(8));
        let sqrt2 = z8.sub(&z8.pow(3));
        assert_eq!(sqrt2.sign_in_embedding().unwrap(), Sign::Positive);
        let shifted = sqrt2.sub(&FieldElement::from_rational(cyc(8), qr(3, 2)));
        assert_eq!(shifted.sign_in_embedding().unwrap(), Sign::Negative);

        let z12 = FieldElement::generator(cyc(12));
        let sqrt3 = z12.scale(&qi(2)).sub(&z12.pow(3));
        assert_eq!(sqrt3.sign_in_embedding().unwrap(), Sign::Positive);
        let shifted = sqrt3.sub(&FieldElement::from_integer(cyc(12), 2));
        assert_eq!(shifted.sign_in_embedding().unwrap(), Sign::Negative);
    }

    #[test]
    fn imaginary_signs_follow_the_designated_embedding() {
        // Each cyclotomic generator maps to exp(2*pi*i/n), which has
        // positive imaginary part.
        for n in CYCLOTOMIC_ORDERS {
            let z = FieldElement::generator(cyc(n));
            assert_eq!(z.imaginary_sign().unwrap(), Sign::Positive, "n = {n}");
            assert_eq!(z.conjugate().imaginary_sign().unwrap(), Sign::Negative);
        }
        let i = FieldElement::generator(quad(-1));
        assert_eq!(i.imaginary_sign().unwrap(), Sign::Positive);
        assert_eq!(
            FieldElement::from_integer(quad(-1), 3).imaginary_sign().unwrap(),
            Sign::Zero
        );
    }

    #[test]
    fn sqrt_in_field_examples() {
        // sqrt(2) inside the order-8 cyclotomic field.
        let two = FieldElement::from_integer(cyc(8), 2);
        let r = two.sqrt_in_field().unwrap();
        assert_eq!(r.mul(&r), two);
        // sqrt(-3) inside both presentations of the same abstract field.
        for field in [cyc(3), cyc(6), quad(-3)] {
            let m3 = FieldElement::from_integer(field, -3);
            let r = m3.sqrt_in_field().unwrap();
            assert_eq!(r.mul(&r), m3);
        }
        // sqrt(i) = z8 inside the order-8 cyclotomic field.
        let z8 = FieldElement::generator(cyc(8));
        let i = z8.pow(2);
        let r = i.sqrt_in_field().unwrap();
        assert_eq!(r.mul(&r), i);
        // sqrt(z6) = z12 in the order-12 field.
        let z12 = FieldElement::generator(cyc(12));
        let target = z12.pow(2);
        let r = target.sqrt_in_field().unwrap();
        assert_eq!(r.mul(&r), target);
        // 5 is not a square in the rationals or in the order-4 field.
        assert!(FieldElement::from_integer(NumberField::Rationals, 5)
            .sqrt_in_field()
            .is_none());
        assert!(FieldElement::from_integer(cyc(4), 5).sqrt_in_field().is_none());
        // but 5 = (1 + 2i)(1 - 2i) is still not a square; -4 is.
        let m4 = FieldElement::from_integer(cyc(4), -4);
        let r = m4.sqrt_in_field().unwrap();
        assert_eq!(r.mul(&r), m4);
    }

    #[test]
    fn automorphisms_permute_roots() {
        for field in [quad(7), quad(-2), cyc(3), cyc(8), cyc(12)] {
            let images = field.automorphism_generator_images();
            assert_eq!(images.len(), field.degree());
            let mp = field.minimal_polynomial();
            for image in &images {
                let mut acc = FieldElement::zero(field);
                for c in mp.iter().rev() {
                    acc = acc.mul(image);
                    acc = acc.add(&FieldElement::from_rational(field, c.clone()));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn rendering_matches_the_canonical_format() {
        let field = cyc(4);
        let x = FieldElement::generator(field)
            .scale(&qr(1, 2))
            .add(&FieldElement::from_integer(field, 1));
        assert_eq!(x.to_string(), "1/2*z + 1");
        assert_eq!(FieldElement::from_rational(field, qr(3, 2)).to_string(), "3/2");
        assert_eq!(FieldElement::zero(field).to_string(), "0");
        let y = FieldElement::generator(cyc(8))
            .pow(2)
            .negate()
            .add(&FieldElement::from_rational(cyc(8), qr(1, 3)));
        assert_eq!(y.to_string(), "-z^2 + 1/3");
        assert_eq!(
            FieldElement::generator(quad(5)).negate().to_string(),
            "-z"
        );
    }

    #[test]
    fn embed_rational_values_into_extensions() {
        let half = FieldElement::from_rational(NumberField::Rationals, qr(1, 2));
        let lifted = half.embed_into(cyc(8)).unwrap();
        assert_eq!(lifted.as_rational().unwrap(), qr(1, 2));
        let z = FieldElement::generator(cyc(4));
        assert_eq!(z.embed_into(cyc(8)), Err(Error::FieldMismatch));
    }
}
