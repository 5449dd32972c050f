//! Univariate polynomials over a supported number field: Euclidean
//! arithmetic, squarefree decomposition, evaluation at field elements and
//! matrices, and minimal polynomials of matrices and of field elements over
//! the rationals.

use crate::field::{FieldElement, NumberField, Q};
use crate::matrix::{express_in_basis, MatrixNF, RowSpan};

/// Ascending coefficients, always trimmed: the zero polynomial has no
/// coefficients, any other polynomial has a nonzero leading one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: NumberField,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: NumberField, mut coeffs: Vec<FieldElement>) -> Poly {
        assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: NumberField) -> Poly {
        Poly {
            field,
            coeffs: vec![],
        }
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field();
        Poly::new(field, vec![c])
    }

    pub fn one(field: NumberField) -> Poly {
        Poly::constant(FieldElement::one(field))
    }

    /// The monomial x.
    pub fn x(field: NumberField) -> Poly {
        Poly::new(
            field,
            vec![FieldElement::zero(field), FieldElement::one(field)],
        )
    }

    pub fn from_rationals(field: NumberField, coeffs: &[Q]) -> Poly {
        Poly::new(
            field,
            coeffs
                .iter()
                .map(|q| FieldElement::from_rational(field, q.clone()))
                .collect(),
        )
    }

    pub fn from_integers(field: NumberField, coeffs: &[i64]) -> Poly {
        Poly::new(
            field,
            coeffs
                .iter()
                .map(|&n| FieldElement::from_integer(field, n))
                .collect(),
        )
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(FieldElement::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// All coefficients as rationals, when the polynomial has rational
    /// coefficients inside its ambient field.
    pub fn rational_coeffs(&self) -> Option<Vec<Q>> {
        self.coeffs.iter().map(FieldElement::as_rational).collect()
    }

    /// Reinterpret over another field; requires rational coefficients when
    /// the fields differ.
    pub fn embed_into(&self, target: NumberField) -> crate::error::Result<Poly> {
        if self.field == target {
            return Ok(self.clone());
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.embed_into(target)?);
        }
        Ok(Poly::new(target, coeffs))
    }

    fn assert_same_field(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "mixed-field polynomial arithmetic");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Poly::new(self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(FieldElement::negate).collect(),
        }
    }

    pub fn scale(&self, factor: &FieldElement) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().map(|c| c.mul(factor)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs =
            vec![FieldElement::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, coeffs)
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        self.assert_same_field(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlen = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quot = vec![FieldElement::zero(self.field); rem.len() - dlen + 1];
        let lead_inv = divisor
            .leading_coeff()
            .inverse()
            .expect("nonzero divisor has invertible leading coefficient");
        for k in (0..quot.len()).rev() {
            let c = rem[k + dlen - 1].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(d));
            }
            quot[k] = c;
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).1.is_zero()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .leading_coeff()
            .inverse()
            .expect("leading coefficient is nonzero");
        self.scale(&inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, s, t) with s*self + t*other = g, g the
    /// monic gcd.
    pub fn extended_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let field = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
        let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (q, r2) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead_inv = r0.leading_coeff().inverse().unwrap();
        (
            r0.scale(&lead_inv),
            s0.scale(&lead_inv),
            t0.scale(&lead_inv),
        )
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Q::from_integer(k.into())))
            .collect();
        Poly::new(self.field, coeffs)
    }

    /// Squarefree decomposition: returns pairs (factor, multiplicity) with
    /// the factors monic, squarefree, pairwise coprime, and the product of
    /// factor^multiplicity equal to the monic part of self. Characteristic
    /// zero makes the gcd-based recurrence exact.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.is_constant() {
            return vec![];
        }
        let mut out = Vec::new();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divrem(&a0).0;
        let mut c = df.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut multiplicity = 1usize;
        loop {
            let factor = b.gcd(&d);
            if factor.degree() != Some(0) {
                out.push((factor.clone(), multiplicity));
            }
            b = b.divrem(&factor).0;
            if b.is_constant() {
                break;
            }
            c = d.divrem(&factor).0;
            d = c.sub(&b.derivative());
            multiplicity += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible factors, each once.
    pub fn squarefree_part(&self) -> Poly {
        let mut out = Poly::one(self.field);
        for (factor, _) in self.squarefree_decomposition() {
            out = out.mul(&factor);
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_matrix(&self, m: &MatrixNF) -> MatrixNF {
        assert!(m.is_square());
        assert_eq!(m.field(), self.field);
        let n = m.rows();
        let mut acc = MatrixNF::zero(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = acc.get(i, i).add(c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// The polynomial p(x + shift).
    pub fn shift_argument(&self, shift: &FieldElement) -> Poly {
        let linear = Poly::new(
            self.field,
            vec![shift.clone(), FieldElement::one(self.field)],
        );
        let mut acc = Poly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&linear).add(&Poly::constant(c.clone()));
        }
        acc
    }
}

/// Monic minimal polynomial of a square matrix, by finding the first linear
/// dependency among the flattened powers I, M, M^2, ...
pub fn min_poly_of_matrix(m: &MatrixNF) -> Poly {
    assert!(m.is_square());
    let field = m.field();
    let n = m.rows();
    let width = n * n;
    let mut span = RowSpan::new(field, width);
    let mut powers: Vec<MatrixNF> = Vec::new();
    let mut current = MatrixNF::identity(field, n);
    loop {
        if !span.contains(&current.to_vec()) {
            span.insert(&current.to_vec());
            powers.push(current.clone());
            current = current.mul(m);
            continue;
        }
        // current = sum of coeffs * earlier powers; min poly is monic of
        // degree powers.len().
        let flat_basis: Vec<Vec<FieldElement>> = powers.iter().map(MatrixNF::to_vec).collect();
        let coeffs = express_in_basis(field, &flat_basis, &current.to_vec())
            .expect("dependency exists by construction");
        let mut poly_coeffs: Vec<FieldElement> = coeffs.iter().map(FieldElement::negate).collect();
        poly_coeffs.push(FieldElement::one(field));
        return Poly::new(field, poly_coeffs);
    }
}

/// Monic minimal polynomial over the rationals of a field element, via the
/// regular representation on the power basis.
pub fn min_poly_over_q(x: &FieldElement) -> Poly {
    let field = x.field();
    let deg = field.degree();
    let rat = NumberField::Rationals;
    // Column j holds the coordinates of x * z^j.
    let z = FieldElement::generator(field);
    let mut cols = Vec::with_capacity(deg);
    let mut current = x.clone();
    for _ in 0..deg {
        cols.push(current.coords().to_vec());
        current = current.mul(&z);
    }
    let mult = MatrixNF::from_fn(rat, deg, deg, |i, j| {
        FieldElement::from_rational(rat, cols[j][i].clone())
    });
    min_poly_of_matrix(&mult)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qi;

    fn rat() -> NumberField {
        NumberField::Rationals
    }

    #[test]
    fn divrem_round_trips() {
        let p = Poly::from_integers(rat(), &[2, 0, -3, 1]);
        let d = Poly::from_integers(rat(), &[1, 1]);
        let (q, r) = p.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), p);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let x = Poly::x(rat());
        let one = Poly::one(rat());
        let f = x.sub(&one); // x - 1
        let a = f.mul(&Poly::from_integers(rat(), &[1, 1])); // (x-1)(x+1)
        let b = f.mul(&Poly::from_integers(rat(), &[2, 1])); // (x-1)(x+2)
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn extended_gcd_certificate() {
        let a = Poly::from_integers(rat(), &[-1, 0, 1]); // x^2 - 1
        let b = Poly::from_integers(rat(), &[2, 3, 1]); // x^2 + 3x + 2
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, Poly::from_integers(rat(), &[1, 1])); // x + 1
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        let x = Poly::x(rat());
        let xm1 = x.sub(&Poly::one(rat()));
        let xp2 = Poly::from_integers(rat(), &[2, 1]);
        let f = xm1.pow(3).mul(&xp2.pow(2)).mul(&x);
        let decomp = f.squarefree_decomposition();
        assert_eq!(decomp.len(), 3);
        assert_eq!(decomp[0], (x.clone(), 1));
        assert_eq!(decomp[1], (xp2.monic(), 2));
        assert_eq!(decomp[2], (xm1.monic(), 3));
        let rebuilt = decomp
            .iter()
            .fold(Poly::one(rat()), |acc, (p, m)| acc.mul(&p.pow(*m as u32)));
        assert_eq!(rebuilt, f.monic());
        assert!(!f.is_squarefree());
        assert!(f.squarefree_part().is_squarefree());
    }

    #[test]
    fn eval_matrix_annihilates_by_cayley_hamilton_witness() {
        let m = MatrixNF::from_i64(rat(), &[vec![0, -1], vec![1, 0]]);
        // x^2 + 1 kills the rotation by a quarter turn.
        let p = Poly::from_integers(rat(), &[1, 0, 1]);
        assert!(p.eval_matrix(&m).is_zero());
    }

    #[test]
    fn min_poly_of_matrix_examples() {
        let id = MatrixNF::identity(rat(), 3);
        assert_eq!(min_poly_of_matrix(&id), Poly::from_integers(rat(), &[-1, 1]));
        let rot = MatrixNF::from_i64(rat(), &[vec![0, -1], vec![1, 0]]);
        assert_eq!(
            min_poly_of_matrix(&rot),
            Poly::from_integers(rat(), &[1, 0, 1])
        );
        // A non-diagonalizable block keeps the square factor.
        let jordan = MatrixNF::from_i64(rat(), &[vec![1, 1], vec![0, 1]]);
        assert_eq!(
            min_poly_of_matrix(&jordan),
            Poly::from_integers(rat(), &[1, -2, 1])
        );
    }

    #[test]
    fn min_poly_over_q_of_field_elements() {
        let z3 = FieldElement::generator(NumberField::cyclotomic(3).unwrap());
        assert_eq!(min_poly_over_q(&z3), Poly::from_integers(rat(), &[1, 1, 1]));
        let z8 = FieldElement::generator(NumberField::cyclotomic(8).unwrap());
        assert_eq!(
            min_poly_over_q(&z8),
            Poly::from_integers(rat(), &[1, 0, 0, 0, 1])
        );
        // i inside the order-8 field still has degree 2.
        assert_eq!(
            min_poly_over_q(&z8.pow(2)),
            Poly::from_integers(rat(), &[1, 0, 1])
        );
        // sqrt(2) = z8 - z8^3 has minimal polynomial x^2 - 2.
        let sqrt2 = z8.sub(&z8.pow(3));
        assert_eq!(
            min_poly_over_q(&sqrt2),
            Poly::from_integers(rat(), &[-2, 0, 1])
        );
        let half = FieldElement::from_rational(rat(), qi(1) / qi(2));
        assert_eq!(
            min_poly_over_q(&half),
            Poly::from_rationals(rat(), &[qi(-1) / qi(2), qi(1)])
        );
    }

    #[test]
    fn shift_argument_translates_roots() {
        let p = Poly::from_integers(rat(), &[-4, 0, 1]); // x^2 - 4, roots 2 and -2
        let shifted = p.shift_argument(&FieldElement::from_integer(rat(), 1)); // p(x + 1)
        assert!(shifted
            .eval(&FieldElement::from_integer(rat(), 1))
            .is_zero());
        assert!(shifted
            .eval(&FieldElement::from_integer(rat(), -3))
            .is_zero());
    }
}
