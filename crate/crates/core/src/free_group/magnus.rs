//! Truncated Magnus expansion `a_i -> 1 + A_i` into noncommutative polynomials.
//!
//! Lower central series indexing here starts at `gamma_0 = pi`, so `gamma_i` is
//! detected by vanishing of every Magnus term of degree `1..=i`. For free
//! groups this criterion is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::endo::FreeEndomorphism;
use super::word::{generator_name, FreeWord, Letter};

/// Monomials are words in the variables `A_1, B_1, A_2, ..` (variable `k`
/// corresponds to generator `k`).
pub type Monomial = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedMagnusSeries {
    degree: usize,
    coeffs: BTreeMap<Monomial, BigInt>,
}

pub fn variable_name(k: u8) -> String {
    generator_name(k as usize).to_uppercase()
}

pub fn monomial_name(m: &[u8]) -> String {
    m.iter().map(|&k| variable_name(k)).collect::<Vec<_>>().join(" ")
}

impl TruncatedMagnusSeries {
    pub fn one(degree: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Vec::new(), BigInt::one());
        TruncatedMagnusSeries { degree, coeffs }
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut s = TruncatedMagnusSeries { degree, coeffs: BTreeMap::new() };
        for (m, c) in terms {
            if m.len() <= degree {
                s.add_term(m, &c);
            }
        }
        s
    }

    fn add_term(&mut self, m: Monomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(m.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, m: &[u8]) -> BigInt {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.coeffs.iter()
    }

    /// Terms of exactly degree `k`.
    pub fn homogeneous_part(&self, k: usize) -> BTreeMap<Monomial, BigInt> {
        self.coeffs.iter().filter(|(m, _)| m.len() == k).map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    /// Smallest `k >= 1` with a nonzero degree-`k` term.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Vec::len).filter(|&k| k >= 1).min()
    }

    pub fn mul(&self, other: &TruncatedMagnusSeries) -> TruncatedMagnusSeries {
        let degree = self.degree.min(other.degree);
        let mut out = TruncatedMagnusSeries { degree, coeffs: BTreeMap::new() };
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &other.coeffs {
                if m1.len() + m2.len() <= degree {
                    let mut m = m1.clone();
                    m.extend_from_slice(m2);
                    out.add_term(m, &(c1 * c2));
                }
            }
        }
        out
    }

    /// Expansion of a single letter: `1 + X` or `1 - X + X^2 - ..`.
    pub fn of_letter(l: Letter, degree: usize) -> Self {
        let x = l.generator as u8;
        let mut s = TruncatedMagnusSeries::one(degree);
        if l.inverse {
            for k in 1..=degree {
                let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                s.add_term(vec![x; k], &sign);
            }
        } else if degree >= 1 {
            s.add_term(vec![x], &BigInt::one());
        }
        s
    }

    /// Right multiplication by a single letter's expansion, without building it.
    fn mul_letter(&self, l: Letter) -> TruncatedMagnusSeries {
        let x = l.generator as u8;
        let mut out = self.clone();
        for (m, c) in &self.coeffs {
            let mut ext = m.clone();
            let mut sign = BigInt::one();
            loop {
                if ext.len() >= self.degree {
                    break;
                }
                ext.push(x);
                if l.inverse {
                    sign = -sign;
                }
                out.add_term(ext.clone(), &(c * &sign));
                if !l.inverse {
                    break;
                }
            }
        }
        out
    }
}

impl fmt::Display for TruncatedMagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            let sep = match (first, neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let body = if m.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                monomial_name(m)
            } else {
                format!("{} {}", mag, monomial_name(m))
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Magnus expansion of a word, truncated above degree `degree`.
pub fn magnus_expansion(w: &FreeWord, degree: usize) -> TruncatedMagnusSeries {
    w.letters().iter().fold(TruncatedMagnusSeries::one(degree), |acc, &l| acc.mul_letter(l))
}

/// Largest `i <= bound` with `w` in `gamma_i` (with `gamma_0` the whole group).
pub fn lcs_depth(w: &FreeWord, bound: usize) -> usize {
    match magnus_expansion(w, bound).lowest_nonconstant_degree() {
        Some(k) => k - 1,
        None => bound,
    }
}

/// Largest `i <= bound` such that `phi` acts trivially on `pi / gamma_i pi`,
/// i.e. `phi(x) x^-1` lies in `gamma_i` for every generator `x`.
pub fn johnson_depth(phi: &FreeEndomorphism, bound: usize) -> usize {
    (0..phi.rank())
        .map(|k| {
            let x = FreeWord::generator(k);
            lcs_depth(&phi.image(k).mul(&x.inverse()), bound)
        })
        .min()
        .unwrap_or(bound)
}
