//! Lyndon basis of the free Lie algebra on `A_1, B_1, .., A_g, B_g`.
//!
//! Variables are ordered `A_1 < B_1 < A_2 < ..`. The standard bracketing `P_w`
//! of a Lyndon word `w` expands to `w` plus words that are lexicographically
//! larger, so a homogeneous Lie polynomial is decomposed by repeatedly
//! stripping its smallest monomial.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::magnus::{magnus_expansion, variable_name, Monomial};
use super::endo::TwistGenerator;
use super::word::FreeWord;
use crate::error::{Error, Result};

/// Noncommutative polynomial with integer coefficients.
pub type Polynomial = BTreeMap<Monomial, BigInt>;

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// All Lyndon words of length `len` over `alphabet` letters, in lexicographic order.
pub fn lyndon_words(alphabet: u8, len: usize) -> Vec<Monomial> {
    // Duval's algorithm generates them in order for lengths up to `len`
    let mut out = Vec::new();
    if alphabet == 0 || len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == len {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(alphabet - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => break,
        }
    }
    out
}

/// Splits a Lyndon word of length at least 2 as `u v` with `v` its longest
/// proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> (&[u8], &[u8]) {
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("length-1 suffix is Lyndon");
    (&w[..i], &w[i..])
}

fn poly_add(acc: &mut Polynomial, m: Monomial, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(m.clone()).or_default();
    *e += c;
    if e.is_zero() {
        acc.remove(&m);
    }
}

/// `[p, q] = pq - qp`.
pub fn bracket(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (m1, c1) in p {
        for (m2, c2) in q {
            let c = c1 * c2;
            let mut pq = m1.clone();
            pq.extend_from_slice(m2);
            poly_add(&mut out, pq, &c);
            let mut qp = m2.clone();
            qp.extend_from_slice(m1);
            poly_add(&mut out, qp, &(-c));
        }
    }
    out
}

/// Expansion of the standard bracketing of a Lyndon word.
pub fn standard_bracketing_polynomial(w: &[u8]) -> Polynomial {
    if w.len() == 1 {
        return Polynomial::from([(w.to_vec(), BigInt::one())]);
    }
    let (u, v) = standard_factorization(w);
    bracket(&standard_bracketing_polynomial(u), &standard_bracketing_polynomial(v))
}

/// Bracket notation of the standard bracketing, e.g. `[A1,[A1,B1]]`.
pub fn standard_bracketing_name(w: &[u8]) -> String {
    if w.len() == 1 {
        return variable_name(w[0]);
    }
    let (u, v) = standard_factorization(w);
    format!("[{},{}]", standard_bracketing_name(u), standard_bracketing_name(v))
}

/// Element of the free Lie algebra in the Lyndon basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    pub coeffs: BTreeMap<Monomial, BigInt>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Decomposes a Lie polynomial; fails if it is not one.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let mut rest = p.clone();
        rest.retain(|_, c| !c.is_zero());
        let mut coeffs = BTreeMap::new();
        while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            if !is_lyndon(&w) {
                return Err(Error::Internal(format!("not a Lie polynomial: leading word {w:?} is not Lyndon")));
            }
            for (m, x) in standard_bracketing_polynomial(&w) {
                poly_add(&mut rest, m, &(-(&c * x)));
            }
            coeffs.insert(w, c);
        }
        Ok(LieElement { coeffs })
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut out = Polynomial::new();
        for (w, c) in &self.coeffs {
            for (m, x) in standard_bracketing_polynomial(w) {
                poly_add(&mut out, m, &(c * x));
            }
        }
        out
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sep}{}", standard_bracketing_name(w))?;
            } else {
                write!(f, "{sep}{mag} {}", standard_bracketing_name(w))?;
            }
        }
        Ok(())
    }
}

/// Class of `T_d^k(a_1) a_1^-1` in `gamma_2 / gamma_3`, read off the degree-3
/// Magnus terms and written in the Lyndon basis.
pub fn boundary_twist_class(genus: usize, k: i64) -> Result<LieElement> {
    let phi = TwistGenerator::Boundary.power(genus, k)?;
    let a1 = FreeWord::a(1);
    let w = phi.apply(&a1).mul(&a1.inverse());
    let part = magnus_expansion(&w, 3).homogeneous_part(3);
    LieElement::from_polynomial(&part)
}

/// `k * sum_i [[A_i, B_i], A_1]`, expanded and converted to the Lyndon basis.
pub fn expected_boundary_twist_class(genus: usize, k: i64) -> Result<LieElement> {
    let var = |x: u8| Polynomial::from([(vec![x], BigInt::one())]);
    let mut total = Polynomial::new();
    for i in 0..genus as u8 {
        let term = bracket(&bracket(&var(2 * i), &var(2 * i + 1)), &var(0));
        for (m, c) in term {
            poly_add(&mut total, m, &(c * k));
        }
    }
    LieElement::from_polynomial(&total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_counts() {
        // necklace counts for two letters: 2, 1, 2, 3, 6
        let counts: Vec<usize> = (1..=5).map(|n| lyndon_words(2, n).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6]);
        assert!(lyndon_words(4, 3).iter().all(|w| is_lyndon(w)));
        assert_eq!(lyndon_words(4, 3).len(), 20);
    }

    #[test]
    fn bracketing_names() {
        assert_eq!(standard_bracketing_name(&[0, 0, 1]), "[A1,[A1,B1]]");
        assert_eq!(standard_bracketing_name(&[0, 1, 1]), "[[A1,B1],B1]");
    }

    #[test]
    fn round_trip() {
        let w = [0u8, 1, 2];
        let p = standard_bracketing_polynomial(&w);
        let e = LieElement::from_polynomial(&p).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.to_polynomial(), p);
    }

    #[test]
    fn non_lie_rejected() {
        let p = Polynomial::from([(vec![1u8, 0], BigInt::one())]);
        assert!(LieElement::from_polynomial(&p).is_err());
    }

    #[test]
    fn boundary_class_genus_one() {
        let e = boundary_twist_class(1, 1).unwrap();
        // [[A1,B1],A1] = -[A1,[A1,B1]]
        assert_eq!(e.to_string(), "-[A1,[A1,B1]]");
        assert!(boundary_twist_class(2, 0).unwrap().is_zero());
    }
}
