//! Homology of finitely generated free chain complexes over the integers, with
//! cycle representatives and induced maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::snf::{elementary_divisors, smith_normal_form};
use super::sparse::SparseIntMatrix;
use crate::error::{Error, Result};

/// Chain groups `C_0..C_top` with `boundary(d): C_d -> C_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    /// `boundaries[d]` must be `dims[d-1] x dims[d]`; `boundaries[0]` is `0 x dims[0]`
    /// and may be omitted by passing `dims.len() - 1` matrices for degrees `1..`.
    pub fn new(dims: Vec<usize>, mut boundaries: Vec<SparseIntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 == dims.len() {
            boundaries.insert(0, SparseIntMatrix::new(0, dims.first().copied().unwrap_or(0)));
        }
        if boundaries.len() != dims.len() {
            return Err(Error::Dimension(format!("{} degrees but {} boundary maps", dims.len(), boundaries.len())));
        }
        for (d, b) in boundaries.iter().enumerate() {
            let expect_rows = if d == 0 { 0 } else { dims[d - 1] };
            if b.rows() != expect_rows || b.cols() != dims[d] {
                return Err(Error::Dimension(format!(
                    "boundary in degree {d} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    expect_rows,
                    dims[d]
                )));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    /// `C_d -> C_{d-1}`; the zero map outside the stored range.
    pub fn boundary(&self, d: usize) -> SparseIntMatrix {
        match self.boundaries.get(d) {
            Some(b) => b.clone(),
            None => SparseIntMatrix::new(self.dim(d.wrapping_sub(1)), 0),
        }
    }

    pub fn boundary_ref(&self, d: usize) -> Option<&SparseIntMatrix> {
        self.boundaries.get(d)
    }

    /// First degree `d` with `boundary(d-1) * boundary(d) != 0`.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        (2..=self.top_degree()).find(|&d| !self.boundaries[d - 1].mul(&self.boundaries[d]).unwrap().is_zero())
    }

    /// Dual complex regraded so that it is again a chain complex:
    /// `C'_k = Hom(C_{top-k}, Z)` and `boundary'(k) = boundary(top-k+1)^T`.
    pub fn dual(&self) -> ChainComplex {
        let top = self.top_degree();
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let mut boundaries = vec![SparseIntMatrix::new(0, dims.first().copied().unwrap_or(0))];
        for k in 1..dims.len() {
            boundaries.push(self.boundaries[top - k + 1].transpose());
        }
        ChainComplex { dims, boundaries }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }
}

/// Betti number and torsion of one homology group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRanks {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// One homology group with chosen generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    /// Orders of the cyclic torsion summands, each at least 2, in divisibility order.
    pub torsion: Vec<BigInt>,
    /// Cycle representatives of the torsion summands, then of the free summands.
    pub torsion_generators: Vec<Vec<BigInt>>,
    pub free_generators: Vec<Vec<BigInt>>,
    /// Rows give coordinates of a cycle: torsion summands first, then free.
    projection: SparseIntMatrix,
}

impl HomologyGroup {
    pub fn ranks(&self) -> GroupRanks {
        GroupRanks { betti: self.betti, torsion: self.torsion.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Coordinates of the class of a cycle: torsion coordinates reduced into
    /// `0..order`, then free coordinates.
    pub fn coordinates(&self, cycle: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let w = self.projection.apply(cycle);
        let t = self.torsion.len();
        let tors = w[..t].iter().zip(&self.torsion).map(|(x, o)| x.mod_floor(o)).collect();
        (tors, w[t..].to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn group(&self, d: usize) -> Option<&HomologyGroup> {
        self.groups.get(d)
    }

    pub fn ranks(&self) -> Vec<GroupRanks> {
        self.groups.iter().map(HomologyGroup::ranks).collect()
    }
}

/// Homology in every degree, with representatives.
pub fn homology(c: &ChainComplex) -> HomologySummary {
    let groups = (0..=c.top_degree()).map(|d| homology_in_degree(c, d)).collect();
    HomologySummary { groups }
}

/// Homology in one degree, with representatives.
pub fn homology_in_degree(c: &ChainComplex, d: usize) -> HomologyGroup {
    let n = c.dim(d);
    let outgoing = c.boundary(d);
    let incoming = if d < c.top_degree() { c.boundary(d + 1) } else { SparseIntMatrix::new(n, 0) };
    let s = smith_normal_form(&outgoing);
    let r = s.rank;
    let k = n - r;
    let kernel_cols: Vec<usize> = (r..n).collect();
    let all_rows: Vec<usize> = (0..n).collect();
    let kernel = s.right.submatrix(&all_rows, &kernel_cols);
    let to_kernel = s.right_inverse.submatrix(&kernel_cols, &all_rows);
    let y = to_kernel.mul(&incoming).expect("shapes agree");
    let sy = smith_normal_form(&y);
    let rp = sy.rank;
    let first_nontrivial = sy.diagonal.iter().take_while(|v| v.is_one()).count();
    let generators = kernel.mul(&sy.left_inverse).expect("shapes agree");
    let cols = generators.columns();
    let as_vec = |j: usize| {
        let mut v = vec![BigInt::zero(); n];
        for (row, x) in &cols[j] {
            v[*row] = x.clone();
        }
        v
    };
    let torsion: Vec<BigInt> = sy.diagonal[first_nontrivial..].to_vec();
    let torsion_generators = (first_nontrivial..rp).map(as_vec).collect();
    let free_generators = (rp..k).map(as_vec).collect();
    let keep: Vec<usize> = (first_nontrivial..k).collect();
    let projection = sy.left.mul(&to_kernel).expect("shapes agree").submatrix(&keep, &all_rows);
    HomologyGroup { degree: d, betti: k - rp, torsion, torsion_generators, free_generators, projection }
}

/// Betti numbers and torsion only, via sparse elimination.
pub fn homology_ranks(c: &ChainComplex) -> Vec<GroupRanks> {
    let divisors: Vec<Vec<BigInt>> = (0..=c.top_degree() + 1)
        .map(|d| if d == 0 || d > c.top_degree() { Vec::new() } else { elementary_divisors(&c.boundary(d)) })
        .collect();
    (0..=c.top_degree())
        .map(|d| {
            let betti = c.dim(d) - divisors[d].len() - divisors[d + 1].len();
            let torsion = divisors[d + 1].iter().filter(|v| !v.is_one()).cloned().collect();
            GroupRanks { betti, torsion }
        })
        .collect()
}

/// Induced endomorphism of one homology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: usize,
    /// Free part: column `j` is the free coordinate vector of the image of free generator `j`.
    pub free: SparseIntMatrix,
    /// Torsion part on torsion generators, entries reduced modulo the target order.
    pub torsion: SparseIntMatrix,
    /// Torsion coordinates of images of free generators, reduced likewise.
    pub free_to_torsion: SparseIntMatrix,
}

impl InducedMap {
    /// Identity on the whole group, torsion included.
    pub fn is_identity(&self, orders: &[BigInt]) -> bool {
        let torsion_identity = (0..orders.len()).all(|i| {
            (0..orders.len()).all(|j| {
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                (self.torsion.get(i, j) - want).mod_floor(&orders[i]).is_zero()
            })
        });
        self.free.is_identity() && torsion_identity && self.free_to_torsion.is_zero()
    }
}

/// Checks `boundary(d) f_d = f_{d-1} boundary(d)` in every degree.
pub fn check_chain_map(c: &ChainComplex, f: &[SparseIntMatrix]) -> Result<()> {
    if f.len() != c.dims.len() {
        return Err(Error::Dimension(format!("chain map has {} degrees, complex has {}", f.len(), c.dims.len())));
    }
    for (d, fd) in f.iter().enumerate() {
        if fd.rows() != c.dim(d) || fd.cols() != c.dim(d) {
            return Err(Error::Dimension(format!("chain map in degree {d} has the wrong shape")));
        }
    }
    for d in 1..=c.top_degree() {
        let lhs = c.boundaries[d].mul(&f[d])?;
        let rhs = f[d - 1].mul(&c.boundaries[d])?;
        if lhs != rhs {
            return Err(Error::NotAChainMap { degree: d });
        }
    }
    Ok(())
}

/// Induced maps on every homology group of a chain endomorphism.
pub fn induced_on_homology(c: &ChainComplex, h: &HomologySummary, f: &[SparseIntMatrix]) -> Result<Vec<InducedMap>> {
    check_chain_map(c, f)?;
    Ok(h.groups.iter().map(|g| induced_in_group(g, &f[g.degree])).collect())
}

pub fn induced_in_group(g: &HomologyGroup, f: &SparseIntMatrix) -> InducedMap {
    let t = g.torsion.len();
    let b = g.betti;
    let mut free = SparseIntMatrix::new(b, b);
    let mut torsion = SparseIntMatrix::new(t, t);
    let mut free_to_torsion = SparseIntMatrix::new(t, b);
    for (j, gen) in g.torsion_generators.iter().enumerate() {
        let (tc, _) = g.coordinates(&f.apply(gen));
        for (i, v) in tc.into_iter().enumerate() {
            torsion.set(i, j, v);
        }
    }
    for (j, gen) in g.free_generators.iter().enumerate() {
        let (tc, fc) = g.coordinates(&f.apply(gen));
        for (i, v) in tc.into_iter().enumerate() {
            free_to_torsion.set(i, j, v);
        }
        for (i, v) in fc.into_iter().enumerate() {
            free.set(i, j, v);
        }
    }
    InducedMap { degree: g.degree, free, torsion, free_to_torsion }
}

/// Cohomological reindexing for a complex computing `H_*(F^inf, inf)` of a
/// `2n`-manifold: `H^i := H_{2n-i}`.
pub fn reindex_poincare_lefschetz<T: Clone + Default>(per_degree: &[T], n: usize) -> BTreeMap<usize, T> {
    (0..=2 * n).map(|i| (i, per_degree.get(2 * n - i).cloned().unwrap_or_default())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        ChainComplex::new(vec![1, 1], vec![SparseIntMatrix::new(1, 1)]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let h = homology(&circle());
        assert_eq!(h.groups[0].betti, 1);
        assert_eq!(h.groups[1].betti, 1);
        assert_eq!(homology_ranks(&circle()), h.ranks());
    }

    #[test]
    fn multiplication_by_two() {
        let c = ChainComplex::new(vec![1, 1], vec![SparseIntMatrix::from_triplets(1, 1, [(0, 0, 2)])]).unwrap();
        let h = homology(&c);
        assert_eq!(h.groups[0].torsion, vec![BigInt::from(2)]);
        assert_eq!(h.groups[0].betti, 0);
        assert!(h.groups[1].is_zero());
        assert_eq!(homology_ranks(&c), h.ranks());
    }

    #[test]
    fn sign_flip_on_generator() {
        // two 1-cells: one a cycle, one with a boundary of 2
        let c = ChainComplex::new(vec![1, 2], vec![SparseIntMatrix::from_triplets(1, 2, [(0, 1, 2)])]).unwrap();
        let h = homology(&c);
        let mut f = vec![SparseIntMatrix::identity(1), SparseIntMatrix::identity(2)];
        f[1].set(0, 0, BigInt::from(-1));
        let maps = induced_on_homology(&c, &h, &f).unwrap();
        assert_eq!(maps[1].free.get(0, 0), BigInt::from(-1));
        let id = vec![SparseIntMatrix::identity(1), SparseIntMatrix::identity(2)];
        let maps = induced_on_homology(&c, &h, &id).unwrap();
        assert!(maps.iter().zip(&h.groups).all(|(m, g)| m.is_identity(&g.torsion)));
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let c = ChainComplex::new(vec![1, 1], vec![SparseIntMatrix::from_triplets(1, 1, [(0, 0, 1)])]).unwrap();
        let h = homology(&c);
        let f = vec![SparseIntMatrix::identity(1), SparseIntMatrix::new(1, 1)];
        assert!(matches!(induced_on_homology(&c, &h, &f), Err(Error::NotAChainMap { degree: 1 })));
    }

    #[test]
    fn dual_twice_is_identity() {
        let c = ChainComplex::new(vec![2, 3], vec![SparseIntMatrix::from_triplets(2, 3, [(0, 0, 1), (1, 2, -4)])])
            .unwrap();
        assert_eq!(c.dual().dual(), c);
    }
}
