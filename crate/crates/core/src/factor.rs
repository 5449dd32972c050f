//! Polynomial factorization over the supported fields.
//!
//! The strategy is layered. Over the rationals: rational-root stripping,
//! trial division by cyclotomic polynomials, a complete resolvent-cubic
//! treatment of quartics, and a budgeted interpolation search for higher
//! degrees. Over an extension field: rational-coefficient inputs are
//! factored over the rationals first and each piece is split further using
//! square roots inside the field; genuinely irrational inputs go through a
//! norm descent that exploits the fact that every supported field is Galois
//! over the rationals. Whenever a search budget would be exceeded the
//! functions report an explicit incomplete-factorization error instead of
//! guessing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField, Q};
use crate::poly::Poly;

/// Largest input degree `factor` accepts.
pub const DEGREE_CAP: usize = 12;

/// Candidate cap for the interpolation search on degree-5-and-up rational
/// polynomials.
const SEARCH_BUDGET: usize = 200_000;

/// Trial-division bound for integer factorization.
const TRIAL_LIMIT: u64 = 1_000_000;

/// A complete factorization: `unit` times the product of monic irreducible
/// `factors` raised to their multiplicities reconstructs the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn product(&self) -> Poly {
        let mut out = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            out = out.mul(&f.pow(*m as u32));
        }
        out
    }
}

/// Factor a nonzero polynomial of degree at most `DEGREE_CAP` into monic
/// irreducibles over its field of definition.
pub fn factor(p: &Poly) -> Result<Factorization> {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let degree = p.degree().unwrap();
    if degree > DEGREE_CAP {
        return Err(Error::DegreeCapExceeded {
            degree,
            cap: DEGREE_CAP,
        });
    }
    let unit = p.leading_coeff();
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    if degree > 0 {
        for (g, mult) in p.monic().squarefree_decomposition() {
            for irr in factor_squarefree(&g)? {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| cmp_polys(&a.0, &b.0));
    let result = Factorization { unit, factors };
    assert_eq!(result.product(), *p, "factorization must reconstruct input");
    Ok(result)
}

/// True when the polynomial is irreducible over its field of definition.
pub fn is_irreducible(p: &Poly) -> Result<bool> {
    if p.is_zero() || p.is_constant() {
        return Ok(false);
    }
    let f = factor(p)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

/// Roots of the polynomial inside its field of definition, with
/// multiplicities, sorted deterministically.
pub fn roots_in_field(p: &Poly) -> Result<Vec<(FieldElement, usize)>> {
    let f = factor(p)?;
    let mut out = Vec::new();
    for (g, m) in &f.factors {
        if g.degree() == Some(1) {
            // monic x + c has root -c
            out.push((g.coeff(0).negate(), *m));
        }
    }
    Ok(out)
}

/// Deterministic ordering on polynomials: by degree, then by coefficients
/// from the highest power down, comparing power-basis coordinates.
fn cmp_polys(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let da = a.coeffs().len();
    let db = b.coeffs().len();
    if da != db {
        return da.cmp(&db);
    }
    for k in (0..da).rev() {
        let ca = a.coeff(k);
        let cb = b.coeff(k);
        let ord = ca.coords().cmp(cb.coords());
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Factor a monic squarefree polynomial of degree >= 1.
fn factor_squarefree(g: &Poly) -> Result<Vec<Poly>> {
    if g.degree() == Some(1) {
        return Ok(vec![g.clone()]);
    }
    if g.field() == NumberField::Rationals {
        return factor_squarefree_q(g);
    }
    match g.rational_coeffs() {
        Some(coeffs) => {
            let gq = Poly::from_rationals(NumberField::Rationals, &coeffs);
            let mut out = Vec::new();
            for qf in factor_squarefree_q(&gq)? {
                out.extend(split_rational_irreducible(&qf, g.field())?);
            }
            Ok(out)
        }
        None => factor_extension(g),
    }
}

// --- factorization over the rationals ------------------------------------

/// Factor a monic squarefree rational polynomial of degree >= 2 into monic
/// irreducibles. Internal entry point: no degree cap, used on norms too.
fn factor_squarefree_q(g: &Poly) -> Result<Vec<Poly>> {
    let rat = NumberField::Rationals;
    let mut out = Vec::new();
    let mut h = g.clone();
    // Linear factors.
    for r in rational_roots(&h)? {
        let lin = Poly::from_rationals(rat, &[-r.clone(), Q::one()]);
        let (quot, rem) = h.divrem(&lin);
        assert!(rem.is_zero());
        out.push(lin);
        h = quot;
    }
    // Cyclotomic factors: the irreducible polynomials of roots of unity show
    // up constantly in finite-order problems, so peel them eagerly.
    let mut m = 3u32;
    while m <= 60 {
        if h.is_constant() {
            break;
        }
        let phi = cyclotomic_polynomial(rat, m);
        if phi.degree() <= h.degree() {
            let (quot, rem) = h.divrem(&phi);
            if rem.is_zero() {
                out.push(phi);
                h = quot;
            }
        }
        m += 1;
    }
    match h.degree() {
        None | Some(0) => {}
        Some(1) => out.push(h),
        Some(2) | Some(3) => {
            // No rational roots left, so quadratics and cubics are
            // irreducible.
            out.push(h);
        }
        Some(4) => match split_quartic_rational(&h, rat)? {
            Some((a, b)) => {
                out.push(a);
                out.push(b);
            }
            None => out.push(h),
        },
        Some(_) => {
            out.extend(factor_by_interpolation(&h)?);
        }
    }
    Ok(out)
}

/// Rational roots of a rational-coefficient polynomial, each listed once.
pub fn rational_roots(p: &Poly) -> Result<Vec<Q>> {
    assert_eq!(p.field(), NumberField::Rationals);
    if p.is_zero() || p.is_constant() {
        return Ok(vec![]);
    }
    let mut coeffs = p.rational_coeffs().expect("rational field");
    let mut roots = Vec::new();
    // Strip powers of x.
    while coeffs[0].is_zero() {
        roots.push(Q::zero());
        coeffs.remove(0);
        if coeffs.len() == 1 {
            roots.dedup();
            return Ok(roots);
        }
    }
    // Clear denominators to integer coefficients.
    let mut lcm = BigInt::one();
    for c in &coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let a0 = ints.first().unwrap().abs();
    let an = ints.last().unwrap().abs();
    let num_divs = signed_divisors(&a0).ok_or(Error::FactorizationIncomplete {
        degree: coeffs.len() - 1,
    })?;
    let den_divs = positive_divisors(&an).ok_or(Error::FactorizationIncomplete {
        degree: coeffs.len() - 1,
    })?;
    let mut seen = std::collections::HashSet::new();
    for n in &num_divs {
        for d in &den_divs {
            let candidate = Q::new(n.clone(), d.clone());
            if !seen.insert(candidate.clone()) {
                continue;
            }
            if p.eval(&FieldElement::from_rational(p.field(), candidate.clone()))
                .is_zero()
            {
                roots.push(candidate);
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// The m-th cyclotomic polynomial over the given field (coefficients are
/// integers, so any field works). Cached up to order 64.
pub fn cyclotomic_polynomial(field: NumberField, m: u32) -> Poly {
    use std::sync::OnceLock;
    static CACHE: OnceLock<Vec<Poly>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let rat = NumberField::Rationals;
        let mut out: Vec<Poly> = Vec::with_capacity(64);
        for k in 1u32..=64 {
            // x^k - 1 divided by the cyclotomic polynomials of the proper
            // divisors of k.
            let mut num_coeffs = vec![FieldElement::from_integer(rat, -1)];
            num_coeffs
                .extend(std::iter::repeat_with(|| FieldElement::zero(rat)).take(k as usize - 1));
            num_coeffs.push(FieldElement::one(rat));
            let mut num = Poly::new(rat, num_coeffs);
            for d in 1..k {
                if k % d == 0 {
                    let (quot, rem) = num.divrem(&out[d as usize - 1]);
                    assert!(rem.is_zero());
                    num = quot;
                }
            }
            out.push(num);
        }
        out
    });
    assert!((1..=64).contains(&m), "cyclotomic order out of cached range");
    cache[m as usize - 1]
        .embed_into(field)
        .expect("integer coefficients embed anywhere")
}

/// Attempt to split a monic quartic with rational coefficients into two
/// monic quadratics over `target`, using the resolvent cubic of the
/// depressed form. Complete: a split over any supported field exists if and
/// only if one of the rational resolvent roots yields one, because the
/// supported fields contain no cubic subfields.
fn split_quartic_rational(h: &Poly, target: NumberField) -> Result<Option<(Poly, Poly)>> {
    let rat = NumberField::Rationals;
    let coeffs = h.rational_coeffs().expect("rational coefficients required");
    assert_eq!(coeffs.len(), 5);
    assert!(coeffs[4].is_one());
    // Depress: H(y) = h(y - b3/4) = y^4 + P y^2 + Q y + R.
    let shift = -&coeffs[3] / Q::from_integer(4.into());
    let hq = Poly::from_rationals(rat, &coeffs);
    let depressed = hq.shift_argument(&FieldElement::from_rational(rat, shift.clone()));
    let dc = depressed.rational_coeffs().unwrap();
    assert!(dc[3].is_zero());
    let (p, q, r) = (dc[2].clone(), dc[1].clone(), dc[0].clone());
    let resolvent = Poly::from_rationals(
        rat,
        &[
            -(&q * &q),
            &p * &p - Q::from_integer(4.into()) * &r,
            Q::from_integer(2.into()) * &p,
            Q::one(),
        ],
    );
    let mut split: Option<(Poly, Poly)> = None;
    for z0 in rational_roots(&resolvent)? {
        let candidate = if z0.is_zero() {
            // Then Q = 0 and the depressed quartic is biquadratic:
            // y^4 + P y^2 + R = (y^2 + u)(y^2 + v) needs sqrt(P^2 - 4R).
            let disc = FieldElement::from_rational(target, &p * &p - Q::from_integer(4.into()) * &r);
            let Some(s) = disc.sqrt_in_field() else {
                continue;
            };
            let pk = FieldElement::from_rational(target, p.clone());
            let half = FieldElement::from_rational(target, Q::new(1.into(), 2.into()));
            let u = pk.add(&s).mul(&half);
            let v = pk.sub(&s).mul(&half);
            let one = FieldElement::one(target);
            let g1 = Poly::new(target, vec![u, FieldElement::zero(target), one.clone()]);
            let g2 = Poly::new(target, vec![v, FieldElement::zero(target), one]);
            Some((g1, g2))
        } else {
            // y^4 + P y^2 + Q y + R = (y^2 + a y + b)(y^2 - a y + d) with
            // a^2 = z0, b + d = P + z0, a(d - b) = Q.
            let z0k = FieldElement::from_rational(target, z0.clone());
            let Some(a) = z0k.sqrt_in_field() else {
                continue;
            };
            let qk = FieldElement::from_rational(target, q.clone());
            let sum = FieldElement::from_rational(target, &p + &z0);
            let diff = qk.div(&a).expect("a is nonzero");
            let half = FieldElement::from_rational(target, Q::new(1.into(), 2.into()));
            let b = sum.sub(&diff).mul(&half);
            let d = sum.add(&diff).mul(&half);
            let one = FieldElement::one(target);
            let g1 = Poly::new(target, vec![b, a.clone(), one.clone()]);
            let g2 = Poly::new(target, vec![d, a.negate(), one]);
            Some((g1, g2))
        };
        if let Some((g1, g2)) = candidate {
            if g1.mul(&g2) == depressed.embed_into(target).unwrap_or_else(|_| {
                // depressed has rational coefficients by construction
                unreachable!()
            }) {
                split = Some((g1, g2));
                break;
            }
        }
    }
    let Some((g1, g2)) = split else {
        return Ok(None);
    };
    // Undo the depression: H(y) = h(y + shift), so h(x) = G1(x - shift) G2(x - shift).
    let unshift = FieldElement::from_rational(target, -shift);
    Ok(Some((
        g1.shift_argument(&unshift),
        g2.shift_argument(&unshift),
    )))
}

// --- splitting rational irreducibles over an extension -------------------

/// Split a monic polynomial irreducible over the rationals into monic
/// irreducibles over the extension field `target`.
fn split_rational_irreducible(qf: &Poly, target: NumberField) -> Result<Vec<Poly>> {
    let fk = qf.embed_into(target).expect("rational coefficients");
    match qf.degree().unwrap() {
        1 => Ok(vec![fk]),
        2 => Ok(split_quadratic_in_field(&fk)),
        // A root would generate a cubic subfield, and the supported fields
        // have none, so irreducible cubics over the rationals stay
        // irreducible.
        3 => Ok(vec![fk]),
        4 => {
            match split_quartic_rational(qf, target)? {
                Some((g1, g2)) => {
                    let mut out = split_quadratic_in_field(&g1);
                    out.extend(split_quadratic_in_field(&g2));
                    Ok(out)
                }
                None => Ok(vec![fk]),
            }
        }
        d => {
            // Degrees this high cannot be certified with the implemented
            // toolbox when the target field is a proper extension.
            Err(Error::FactorizationIncomplete { degree: d })
        }
    }
}

/// Split a monic quadratic over its own field using the discriminant.
fn split_quadratic_in_field(g: &Poly) -> Vec<Poly> {
    assert_eq!(g.degree(), Some(2));
    assert!(g.is_monic());
    let field = g.field();
    let b = g.coeff(1);
    let c = g.coeff(0);
    let four = FieldElement::from_integer(field, 4);
    let disc = b.mul(&b).sub(&four.mul(&c));
    match disc.sqrt_in_field() {
        Some(s) => {
            let half = FieldElement::from_rational(field, Q::new(1.into(), 2.into()));
            let r1 = b.negate().add(&s).mul(&half);
            let r2 = b.negate().sub(&s).mul(&half);
            let one = FieldElement::one(field);
            let mut out = vec![
                Poly::new(field, vec![r1.negate(), one.clone()]),
                Poly::new(field, vec![r2.negate(), one]),
            ];
            out.sort_by(cmp_polys);
            out
        }
        None => vec![g.clone()],
    }
}

// --- norm descent for genuinely irrational coefficients ------------------

/// Apply a field automorphism (given by the image of the generator) to all
/// coefficients.
fn map_coefficients(p: &Poly, generator_image: &FieldElement) -> Poly {
    Poly::new(
        p.field(),
        p.coeffs()
            .iter()
            .map(|c| c.apply_automorphism(generator_image))
            .collect(),
    )
}

/// Factor a monic squarefree polynomial with genuinely irrational
/// coefficients over its extension field. Quadratics split via square
/// roots; higher degrees go through the Galois norm: shift the argument by
/// multiples of the generator until the norm over the rationals is
/// squarefree, factor the norm, and pull factors back with gcds.
fn factor_extension(g: &Poly) -> Result<Vec<Poly>> {
    let field = g.field();
    if g.degree() == Some(2) {
        return Ok(split_quadratic_in_field(&g.monic()));
    }
    let alpha = FieldElement::generator(field);
    let autos = field.automorphism_generator_images();
    for s in 0..=20i64 {
        let shift = alpha.scale(&Q::from_integer((-s).into()));
        // f_s(x) = g(x - s*alpha)
        let fs = g.shift_argument(&shift);
        let mut norm = Poly::one(field);
        for image in &autos {
            norm = norm.mul(&map_coefficients(&fs, image));
        }
        let norm_coeffs = norm
            .rational_coeffs()
            .expect("Galois-invariant norm has rational coefficients");
        let norm_q = Poly::from_rationals(NumberField::Rationals, &norm_coeffs);
        if !norm_q.is_squarefree() {
            continue;
        }
        let mut out = Vec::new();
        for nf in factor_squarefree_q(&norm_q)? {
            let nk = nf.embed_into(field).expect("rational coefficients");
            let piece = fs.gcd(&nk);
            if piece.degree().is_some_and(|d| d >= 1) {
                // Undo the shift: factor of g is piece(x + s*alpha).
                let back = alpha.scale(&Q::from_integer(s.into()));
                out.push(piece.shift_argument(&back).monic());
            }
        }
        let mut product = Poly::one(field);
        for f in &out {
            product = product.mul(f);
        }
        assert_eq!(product, g.monic(), "norm descent must reconstruct input");
        return Ok(out);
    }
    Err(Error::FactorizationIncomplete {
        degree: g.degree().unwrap_or(0),
    })
}

// --- budgeted interpolation search for degree >= 5 over the rationals ----

/// Factor a monic squarefree rational polynomial of degree >= 5 with no
/// rational roots and no cyclotomic factors, by searching for a
/// low-degree divisor through integer interpolation. Honest failure when
/// the candidate budget or the integer-factoring certificates run out.
fn factor_by_interpolation(h: &Poly) -> Result<Vec<Poly>> {
    let rat = NumberField::Rationals;
    let n = h.degree().unwrap();
    // Rescale to a monic integer polynomial: with c the lcm of the
    // coefficient denominators, F(y) = c^n h(y/c) has integer coefficients,
    // and monic factorizations correspond.
    let coeffs = h.rational_coeffs().unwrap();
    let mut c = BigInt::one();
    for q in &coeffs {
        c = c.lcm(q.denom());
    }
    let cq = Q::from_integer(c.clone());
    let scaled: Vec<Q> = coeffs
        .iter()
        .enumerate()
        .map(|(k, q)| {
            let mut v = q.clone();
            for _ in 0..(n - k) {
                v *= &cq;
            }
            v
        })
        .collect();
    assert!(scaled.iter().all(|q| q.is_integer()));
    let big = Poly::from_rationals(rat, &scaled);

    let mut budget_hit = false;
    for k in 2..=n / 2 {
        match find_factor_of_degree(&big, k)? {
            SearchOutcome::Found(g) => {
                // Map back: g(y) of degree k gives the factor g(cx)/c^k.
                let unscale = |poly: &Poly, deg: usize| -> Poly {
                    let pc = poly.rational_coeffs().unwrap();
                    let rescaled: Vec<Q> = pc
                        .iter()
                        .enumerate()
                        .map(|(j, q)| {
                            let mut v = q.clone();
                            for _ in 0..(deg - j) {
                                v /= &cq;
                            }
                            v
                        })
                        .collect();
                    Poly::from_rationals(rat, &rescaled)
                };
                let g_back = unscale(&g, k);
                let (cof, rem) = h.divrem(&g_back);
                assert!(rem.is_zero());
                let mut out = factor_squarefree_q(&g_back)?;
                out.extend(factor_squarefree_q(&cof)?);
                return Ok(out);
            }
            SearchOutcome::NoneAtThisDegree => {}
            SearchOutcome::BudgetExceeded => budget_hit = true,
        }
    }
    if budget_hit {
        Err(Error::FactorizationIncomplete { degree: n })
    } else {
        Ok(vec![h.clone()])
    }
}

enum SearchOutcome {
    Found(Poly),
    NoneAtThisDegree,
    BudgetExceeded,
}

/// Search for a monic integer factor of exact degree k of the monic integer
/// polynomial `big`, by interpolating candidate factors through divisors of
/// the values at k+1 small integer points.
fn find_factor_of_degree(big: &Poly, k: usize) -> Result<SearchOutcome> {
    let rat = NumberField::Rationals;
    // Sample points 0, 1, -1, 2, -2, ...
    let mut points: Vec<Q> = Vec::with_capacity(k + 1);
    let mut t = 0i64;
    while points.len() < k + 1 {
        points.push(Q::from_integer(t.into()));
        if t > 0 {
            points.push(Q::from_integer((-t).into()));
        }
        t += 1;
    }
    points.truncate(k + 1);

    let mut divisor_lists: Vec<Vec<BigInt>> = Vec::with_capacity(points.len());
    let mut total: usize = 1;
    for x in &points {
        let v = big.eval(&FieldElement::from_rational(rat, x.clone()));
        let vq = v.as_rational().unwrap();
        assert!(vq.is_integer());
        let vi = vq.to_integer();
        // Values are nonzero: rational roots were stripped earlier.
        assert!(!vi.is_zero());
        let Some(divs) = signed_divisors(&vi.abs()) else {
            return Ok(SearchOutcome::BudgetExceeded);
        };
        total = total.saturating_mul(divs.len());
        if total > SEARCH_BUDGET {
            return Ok(SearchOutcome::BudgetExceeded);
        }
        divisor_lists.push(divs);
    }

    // Lagrange basis for the fixed point set, computed once; candidates are
    // linear combinations.
    let basis: Vec<Vec<Q>> = (0..points.len())
        .map(|i| {
            let mut term = Poly::one(rat);
            let mut denom = Q::one();
            for (j, xj) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                term = term.mul(&Poly::from_rationals(rat, &[-xj.clone(), Q::one()]));
                denom *= &points[i] - xj;
            }
            term.scale(&FieldElement::from_rational(rat, Q::one() / denom))
                .rational_coeffs()
                .unwrap()
        })
        .collect();
    let leading: Vec<Q> = basis.iter().map(|b| b[k].clone()).collect();

    // Mixed-radix enumeration of one divisor per point. The monic screen
    // rejects most tuples with a single dot product.
    let radices: Vec<usize> = divisor_lists.iter().map(Vec::len).collect();
    let mut counter = vec![0usize; radices.len()];
    loop {
        let lead: Q = counter
            .iter()
            .zip(&divisor_lists)
            .zip(&leading)
            .map(|((&i, divs), c)| Q::from_integer(divs[i].clone()) * c)
            .sum();
        if lead.is_one() {
            let mut coeffs = vec![Q::zero(); k + 1];
            for ((&i, divs), b) in counter.iter().zip(&divisor_lists).zip(&basis) {
                let d = Q::from_integer(divs[i].clone());
                for (slot, c) in coeffs.iter_mut().zip(b) {
                    *slot += &d * c;
                }
            }
            if coeffs.iter().all(|c| c.is_integer()) {
                let g = Poly::from_rationals(rat, &coeffs);
                if g.degree() == Some(k) {
                    let (_, rem) = big.divrem(&g);
                    if rem.is_zero() {
                        return Ok(SearchOutcome::Found(g));
                    }
                }
            }
        }
        // Increment the counter.
        let mut pos = 0;
        loop {
            if pos == counter.len() {
                return Ok(SearchOutcome::NoneAtThisDegree);
            }
            counter[pos] += 1;
            if counter[pos] < radices[pos] {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}

// --- certified integer divisor enumeration -------------------------------

/// Complete prime factorization of a positive integer, certified: trial
/// division up to the limit, then the remainder is accepted only when it is
/// provably prime or a prime square. Returns None when no certificate is
/// available.
fn certified_prime_factorization(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    assert!(n.is_positive());
    let mut rest = n.clone();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let limit = BigInt::from(TRIAL_LIMIT);
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest && p <= limit {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        if count > 0 {
            out.push((p.clone(), count));
        }
        p += 1u32;
    }
    if rest.is_one() {
        return Some(out);
    }
    // rest has no prime factor below the trial limit.
    let cert_bound = &limit * &limit; // anything at most limit^2 is prime
    if rest <= cert_bound {
        out.push((rest, 1));
        return Some(out);
    }
    let r = rest.sqrt();
    if &r * &r == rest && r <= cert_bound {
        out.push((r, 2));
        return Some(out);
    }
    None
}

/// All positive divisors, or None when the factorization cannot be
/// certified or there are more than 10000 of them.
fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return None;
    }
    let primes = certified_prime_factorization(&n.abs())?;
    let mut divs = vec![BigInt::one()];
    for (p, e) in &primes {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut power = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &power);
                power *= p;
            }
        }
        divs = next;
        if divs.len() > 10_000 {
            return None;
        }
    }
    divs.sort();
    Some(divs)
}

/// All divisors with both signs.
fn signed_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let pos = positive_divisors(n)?;
    let mut out = Vec::with_capacity(pos.len() * 2);
    for d in pos {
        out.push(-&d);
        out.push(d);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qi;

    fn rat() -> NumberField {
        NumberField::Rationals
    }

    fn cyc(n: u32) -> NumberField {
        NumberField::cyclotomic(n).unwrap()
    }

    fn quad(d: i64) -> NumberField {
        NumberField::quadratic(d).unwrap()
    }

    #[test]
    fn factors_difference_of_squares() {
        let p = Poly::from_integers(rat(), &[-1, 0, 1]);
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(f.product(), p);
    }

    #[test]
    fn factors_x4_minus_1_over_rationals() {
        let p = Poly::from_integers(rat(), &[-1, 0, 0, 0, 1]);
        let f = factor(&p).unwrap();
        let degrees: Vec<usize> = f.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        assert_eq!(f.product(), p);
    }

    #[test]
    fn respects_multiplicities_and_units() {
        // 3 (x^2+1)^2 (x-3)
        let sq = Poly::from_integers(rat(), &[1, 0, 1]);
        let lin = Poly::from_integers(rat(), &[-3, 1]);
        let p = sq.pow(2).mul(&lin).scale(&FieldElement::from_integer(rat(), 3));
        let f = factor(&p).unwrap();
        assert_eq!(f.unit, FieldElement::from_integer(rat(), 3));
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.contains(&(sq, 2)));
        assert!(f.factors.contains(&(lin, 1)));
    }

    #[test]
    fn quartic_with_no_rational_split_is_irreducible() {
        // x^4 + 1: the resolvent roots 0 and +-2 give no rational square
        // root, so the polynomial is irreducible over the rationals.
        let p = Poly::from_integers(rat(), &[1, 0, 0, 0, 1]);
        assert!(is_irreducible(&p).unwrap());
    }

    #[test]
    fn quartic_splits_into_quadratics_when_possible() {
        // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
        let p = Poly::from_integers(rat(), &[4, 0, 0, 0, 1]);
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|(g, _)| g.degree() == Some(2)));
        assert_eq!(f.product(), p);
    }

    #[test]
    fn x4_plus_1_splits_over_the_order8_field() {
        let p = Poly::from_integers(cyc(8), &[1, 0, 0, 0, 1]);
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 4);
        assert!(f.factors.iter().all(|(g, _)| g.degree() == Some(1)));
        let roots = roots_in_field(&p).unwrap();
        let z = FieldElement::generator(cyc(8));
        for odd in [1u32, 3, 5, 7] {
            assert!(roots.iter().any(|(r, _)| *r == z.pow(odd)));
        }
    }

    #[test]
    fn x4_plus_1_splits_into_quadratics_over_gaussians() {
        let p = Poly::from_integers(quad(-1), &[1, 0, 0, 0, 1]);
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|(g, _)| g.degree() == Some(2)));
        assert_eq!(f.product(), p);
    }

    #[test]
    fn x2_plus_1_splits_over_gaussians_and_order4() {
        for field in [quad(-1), cyc(4)] {
            let p = Poly::from_integers(field, &[1, 0, 1]);
            let roots = roots_in_field(&p).unwrap();
            assert_eq!(roots.len(), 2);
            let i = match field {
                NumberField::Quadratic { .. } => FieldElement::generator(field),
                _ => FieldElement::generator(field),
            };
            assert!(roots.iter().any(|(r, _)| *r == i));
            assert!(roots.iter().any(|(r, _)| *r == i.negate()));
        }
    }

    #[test]
    fn cubic_without_roots_stays_irreducible_over_extensions() {
        // x^3 - 2 has no roots in any supported field.
        for field in [rat(), quad(-1), quad(2), cyc(3), cyc(8), cyc(12)] {
            let p = Poly::from_integers(field, &[-2, 0, 0, 1]);
            assert!(is_irreducible(&p).unwrap(), "{field:?}");
        }
    }

    #[test]
    fn cyclotomic_polynomials_are_recognized() {
        // Degree-10 cyclotomic factor: x^10 + x^5 + 1 has the order-15
        // cyclotomic polynomial as a factor (degree 8) times the order-3
        // one (degree 2).
        let p = Poly::from_integers(rat(), &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]);
        let f = factor(&p).unwrap();
        let mut degrees: Vec<usize> = f.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        degrees.sort();
        assert_eq!(degrees, vec![2, 8]);
        assert_eq!(f.product(), p);
    }

    #[test]
    fn cyclotomic_polynomial_values() {
        assert_eq!(
            cyclotomic_polynomial(rat(), 12),
            Poly::from_integers(rat(), &[1, 0, -1, 0, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(rat(), 8),
            Poly::from_integers(rat(), &[1, 0, 0, 0, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(rat(), 1),
            Poly::from_integers(rat(), &[-1, 1])
        );
    }

    #[test]
    fn norm_descent_factors_genuinely_irrational_cubics() {
        // (x - i)(x - 1)(x - 2) over the Gaussian rationals has genuinely
        // irrational coefficients.
        let field = quad(-1);
        let i = FieldElement::generator(field);
        let one = FieldElement::one(field);
        let lin = |r: &FieldElement| Poly::new(field, vec![r.negate(), one.clone()]);
        let p = lin(&i)
            .mul(&lin(&FieldElement::from_integer(field, 1)))
            .mul(&lin(&FieldElement::from_integer(field, 2)));
        assert!(p.rational_coeffs().is_none());
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert!(f.factors.iter().all(|(g, _)| g.degree() == Some(1)));
        assert_eq!(f.product(), p);
    }

    #[test]
    fn quadratic_with_irrational_coefficients_splits_exactly() {
        // x^2 - (1+i)x + i = (x - 1)(x - i)
        let field = cyc(4);
        let i = FieldElement::generator(field);
        let p = Poly::new(
            field,
            vec![
                i.clone(),
                FieldElement::one(field).add(&i).negate(),
                FieldElement::one(field),
            ],
        );
        let roots = roots_in_field(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(r, _)| r.is_one()));
        assert!(roots.iter().any(|(r, _)| *r == i));
    }

    #[test]
    fn interpolation_search_splits_a_degree_six_product() {
        // (x^2 + 4)(x^2 - 2x + 2)(x^2 - 4x + 5): no rational roots, no
        // cyclotomic factors, degree 6.
        let a = Poly::from_integers(rat(), &[4, 0, 1]);
        let b = Poly::from_integers(rat(), &[2, -2, 1]);
        let c = Poly::from_integers(rat(), &[5, -4, 1]);
        let p = a.mul(&b).mul(&c);
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert!(f.factors.iter().all(|(g, _)| g.degree() == Some(2)));
        assert_eq!(f.product(), p);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let p = Poly::from_integers(rat(), &[1; 14]); // degree 13
        assert_eq!(
            factor(&p),
            Err(Error::DegreeCapExceeded {
                degree: 13,
                cap: DEGREE_CAP
            })
        );
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (2x - 1)(3x + 2)(x - 5) has roots 1/2, -2/3, 5.
        let a = Poly::from_integers(rat(), &[-1, 2]);
        let b = Poly::from_integers(rat(), &[2, 3]);
        let c = Poly::from_integers(rat(), &[-5, 1]);
        let p = a.mul(&b).mul(&c);
        let roots = rational_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&Q::new(1.into(), 2.into())));
        assert!(roots.contains(&Q::new((-2).into(), 3.into())));
        assert!(roots.contains(&qi(5)));
    }

    #[test]
    fn minimal_polynomial_of_sqrt2_splits_in_order8_field() {
        let p = Poly::from_integers(cyc(8), &[-2, 0, 1]);
        let roots = roots_in_field(&p).unwrap();
        assert_eq!(roots.len(), 2);
        let z = FieldElement::generator(cyc(8));
        let sqrt2 = z.sub(&z.pow(3));
        assert!(roots.iter().any(|(r, _)| *r == sqrt2));
    }
}
