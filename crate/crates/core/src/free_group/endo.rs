use std::fmt;

use num_bigint::BigInt;

use super::word::{boundary_word, generator_name, partial_boundary_word, FreeWord};
use crate::error::{Error, Result};
use crate::linalg::{elementary_divisors, SparseIntMatrix};

/// An endomorphism of the free group on `a_1, b_1, .., a_g, b_g`, given by the
/// images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeEndomorphism {
    genus: usize,
    images: Vec<FreeWord>,
}

impl FreeEndomorphism {
    pub fn new(genus: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != 2 * genus {
            return Err(Error::Parse(format!("expected {} generator images, got {}", 2 * genus, images.len())));
        }
        if let Some(m) = images.iter().filter_map(FreeWord::max_generator).max() {
            if m >= 2 * genus {
                return Err(Error::UnknownGenerator(generator_name(m)));
            }
        }
        Ok(FreeEndomorphism { genus, images })
    }

    pub fn identity(genus: usize) -> Self {
        FreeEndomorphism { genus, images: (0..2 * genus).map(FreeWord::generator).collect() }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, k: usize) -> &FreeWord {
        &self.images[k]
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        FreeWord::from_letters(w.letters().iter().flat_map(|l| {
            let img = &self.images[l.generator];
            if l.inverse {
                img.inverse().letters().to_vec()
            } else {
                img.letters().to_vec()
            }
        }))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FreeEndomorphism) -> FreeEndomorphism {
        assert_eq!(self.genus, other.genus);
        FreeEndomorphism { genus: self.genus, images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    pub fn pow(&self, k: u32) -> FreeEndomorphism {
        (0..k).fold(FreeEndomorphism::identity(self.genus), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| *w == FreeWord::generator(k))
    }

    /// Whether the boundary word is fixed exactly.
    pub fn fixes_boundary(&self) -> bool {
        let c = boundary_word(self.genus);
        self.apply(&c) == c
    }

    /// Column `j` holds the exponent sums of the image of generator `j`.
    pub fn abelianization_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| w.abelianization(r)).collect();
        (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect()
    }

    /// Determinant `±1` of the abelianization.
    pub fn abelianization_is_unimodular(&self) -> bool {
        let r = self.rank();
        let m = self.abelianization_matrix();
        let sparse = SparseIntMatrix::from_triplets(
            r,
            r,
            (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| (i, j, BigInt::from(m[i][j]))),
        );
        let d = elementary_divisors(&sparse);
        d.len() == r && d.iter().all(|v| v == &BigInt::from(1))
    }
}

impl fmt::Display for FreeEndomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.images.iter().enumerate().map(|(k, w)| format!("{}-> {}", generator_name(k), w)).collect();
        write!(f, "endo: {}", parts.join("; "))
    }
}

/// Named generators of the mapping class group acting on the free group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistGenerator {
    /// Twist about the curve carried by `a_i`.
    Alpha(usize),
    /// Twist about the curve carried by `b_i`.
    Beta(usize),
    /// Twist about the separating curve cutting off handles `1..=h`.
    Separating(usize),
    /// Twist about a curve parallel to the boundary.
    Boundary,
}

impl fmt::Display for TwistGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistGenerator::Alpha(i) => write!(f, "Ta{i}"),
            TwistGenerator::Beta(i) => write!(f, "Tb{i}"),
            TwistGenerator::Separating(h) => write!(f, "Tsep{h}"),
            TwistGenerator::Boundary => write!(f, "Td"),
        }
    }
}

impl TwistGenerator {
    pub fn parse(s: &str) -> Result<Self> {
        let index = |rest: &str| -> Result<usize> {
            rest.parse::<usize>().map_err(|_| Error::UnknownGenerator(s.to_string()))
        };
        if s == "Td" {
            Ok(TwistGenerator::Boundary)
        } else if let Some(rest) = s.strip_prefix("Tsep") {
            Ok(TwistGenerator::Separating(index(rest)?))
        } else if let Some(rest) = s.strip_prefix("Ta") {
            Ok(TwistGenerator::Alpha(index(rest)?))
        } else if let Some(rest) = s.strip_prefix("Tb") {
            Ok(TwistGenerator::Beta(index(rest)?))
        } else {
            Err(Error::UnknownGenerator(s.to_string()))
        }
    }

    fn check(&self, genus: usize) -> Result<()> {
        let ok = match *self {
            TwistGenerator::Alpha(i) | TwistGenerator::Beta(i) | TwistGenerator::Separating(i) => {
                (1..=genus).contains(&i)
            }
            TwistGenerator::Boundary => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownGenerator(format!("{self} in genus {genus}")))
        }
    }

    /// The automorphism `T^k`.
    pub fn power(&self, genus: usize, k: i64) -> Result<FreeEndomorphism> {
        self.check(genus)?;
        let mut images: Vec<FreeWord> = (0..2 * genus).map(FreeWord::generator).collect();
        match *self {
            TwistGenerator::Alpha(i) => {
                // b_i -> b_i a_i^k
                images[2 * (i - 1) + 1] = FreeWord::b(i).mul(&FreeWord::a(i).pow(k));
            }
            TwistGenerator::Beta(i) => {
                // a_i -> a_i b_i^-k
                images[2 * (i - 1)] = FreeWord::a(i).mul(&FreeWord::b(i).pow(-k));
            }
            TwistGenerator::Separating(h) => {
                let c = partial_boundary_word(h).pow(k);
                for w in images.iter_mut().take(2 * h) {
                    *w = w.conjugate_by(&c);
                }
            }
            TwistGenerator::Boundary => {
                let c = boundary_word(genus).pow(k);
                for w in images.iter_mut() {
                    *w = w.conjugate_by(&c);
                }
            }
        }
        FreeEndomorphism::new(genus, images)
    }
}

/// Looks up a named generator (`Ta1`, `Tb2`, `Tsep1`, `Td`, ..).
pub fn dehn_twist_generator(name: &str, genus: usize) -> Result<FreeEndomorphism> {
    TwistGenerator::parse(name)?.power(genus, 1)
}

/// A parsed mapping class: the input text, a normal form of it, and the
/// automorphism it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingClass {
    pub input: String,
    pub normal_form: String,
    pub endo: FreeEndomorphism,
}

/// Parses a product of twist tokens `T^k` (composed as functions, rightmost
/// first) or a raw `endo: a1-> w; b1-> w; ..` specification.
pub fn parse_mapping_class(input: &str, genus: usize) -> Result<MappingClass> {
    let trimmed = input.trim();
    if let Some(body) = trimmed.strip_prefix("endo:") {
        let mut images: Vec<Option<FreeWord>> = vec![None; 2 * genus];
        for clause in body.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (lhs, rhs) =
                clause.split_once("->").ok_or_else(|| Error::Parse(format!("expected `->` in `{clause}`")))?;
            let g: FreeWord = lhs.trim().parse()?;
            let k = match g.letters() {
                [l] if !l.inverse => l.generator,
                _ => return Err(Error::Parse(format!("left side `{}` is not a generator", lhs.trim()))),
            };
            if k >= 2 * genus {
                return Err(Error::UnknownGenerator(lhs.trim().to_string()));
            }
            images[k] = Some(rhs.trim().parse()?);
        }
        let images: Vec<FreeWord> =
            images.into_iter().enumerate().map(|(k, w)| w.unwrap_or_else(|| FreeWord::generator(k))).collect();
        let endo = FreeEndomorphism::new(genus, images)?;
        return Ok(MappingClass { input: input.to_string(), normal_form: endo.to_string(), endo });
    }
    let mut factors: Vec<(TwistGenerator, i64)> = Vec::new();
    for token in trimmed.split_whitespace().filter(|t| *t != "id") {
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => {
                (n, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?)
            }
            None => (token, 1),
        };
        let g = TwistGenerator::parse(name)?;
        g.check(genus)?;
        match factors.last_mut() {
            Some((last, e)) if *last == g => *e += exp,
            _ => factors.push((g, exp)),
        }
        if factors.last().is_some_and(|(_, e)| *e == 0) {
            factors.pop();
        }
    }
    let mut endo = FreeEndomorphism::identity(genus);
    for (g, k) in &factors {
        endo = endo.compose(&g.power(genus, *k)?);
    }
    let normal_form = if factors.is_empty() {
        "id".to_string()
    } else {
        factors
            .iter()
            .map(|(g, k)| if *k == 1 { g.to_string() } else { format!("{g}^{k}") })
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(MappingClass { input: input.to_string(), normal_form, endo })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_fix_boundary() {
        for g in 1..=3 {
            for name in ["Td"]
                .into_iter()
                .map(String::from)
                .chain((1..=g).flat_map(|i| [format!("Ta{i}"), format!("Tb{i}"), format!("Tsep{i}")]))
            {
                let t = dehn_twist_generator(&name, g).unwrap();
                assert!(t.fixes_boundary(), "{name} in genus {g}");
                assert!(t.abelianization_is_unimodular());
                let inv = TwistGenerator::parse(&name).unwrap().power(g, -1).unwrap();
                assert!(t.compose(&inv).is_identity());
            }
        }
    }

    #[test]
    fn alpha_twist_is_a_transvection() {
        let t = dehn_twist_generator("Ta1", 1).unwrap();
        assert_eq!(t.abelianization_matrix(), vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn braid_relation() {
        // Ta Tb Ta = Tb Ta Tb on the same handle
        let a = dehn_twist_generator("Ta1", 1).unwrap();
        let b = dehn_twist_generator("Tb1", 1).unwrap();
        assert_eq!(a.compose(&b).compose(&a), b.compose(&a).compose(&b));
    }

    #[test]
    fn parsing() {
        let m = parse_mapping_class("Ta1 Ta1^-1 Td^2", 1).unwrap();
        assert_eq!(m.normal_form, "Td^2");
        assert_eq!(m.endo, TwistGenerator::Boundary.power(1, 2).unwrap());
        let e = parse_mapping_class("endo: a1-> a1; b1-> b1 a1", 1).unwrap();
        assert_eq!(e.endo, dehn_twist_generator("Ta1", 1).unwrap());
        assert!(parse_mapping_class("Tx1", 1).is_err());
        assert!(parse_mapping_class("Ta2", 1).is_err());
        assert_eq!(parse_mapping_class("", 2).unwrap().normal_form, "id");
        assert!(parse_mapping_class("id", 2).unwrap().endo.is_identity());
    }
}
