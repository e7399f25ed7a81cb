//! The cellular chain complex of the one-point compactified configuration space,
//! relative to the point at infinity, with the cells of [`crate::model`] as basis.
//!
//! Orientation: the closed cell of `(l, P, U, V)` is parametrised by the simplex
//! of column abscissae, then the height simplex of each column, then the
//! parameter simplex of each arc in `U_1, V_1, ..` order, each in increasing
//! coordinates. Only two kinds of codimension-one faces survive in the
//! quotient; every other face meets the boundary of the surface, a collision,
//! or the basepoint, and so goes to infinity.
//!
//! * Adjacent columns `j, j+1` meeting: one term per shuffle of the two
//!   columns, with sign `-(-1)^j` times the shuffle sign.
//! * The last column reaching the right edge: its points are distributed
//!   monotonically over the `4g` right-edge intervals and land on the arcs,
//!   interleaving arbitrarily with the points already there. The sign is
//!   `-(-1)^l`, times `-1` for every point entering through a reversed
//!   interval, times the sign of the permutation taking the old coordinate list
//!   (last column, then arcs) to the new one (arcs).

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, SparseIntMatrix};
use crate::model::{enumerate_cells, CellBasis, CellTuple, Label, SurfaceParams};
use crate::perm::{monotone_assignments, rearrangement_sign, shuffles};

/// A homogeneous chain: cells with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerChain {
    pub degree: usize,
    pub terms: BTreeMap<CellTuple, i64>,
}

impl IntegerChain {
    pub fn zero(degree: usize) -> Self {
        IntegerChain { degree, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, cell: CellTuple, coeff: i64) {
        debug_assert_eq!(cell.degree(), self.degree);
        let e = self.terms.entry(cell.clone()).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&cell);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, cell: &CellTuple) -> i64 {
        self.terms.get(cell).copied().unwrap_or(0)
    }
}

fn sign_pow(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Terms from adjacent columns merging.
pub fn merge_terms(t: &CellTuple) -> IntegerChain {
    let mut out = IntegerChain::zero(t.degree() - 1);
    let cols = t.columns();
    for j in 1..cols.len() {
        let left = &cols[j - 1];
        let right = &cols[j];
        let concat: Vec<Label> = left.iter().chain(right).copied().collect();
        for merged in shuffles(&[left.clone(), right.clone()]) {
            let sign = -sign_pow(j) * rearrangement_sign(&concat, &merged) as i64;
            let mut new_cols = cols.to_vec();
            new_cols.splice(j - 1..=j, [merged]);
            out.add_term(CellTuple::from_parts_unchecked(new_cols, t.arcs().to_vec()), sign);
        }
    }
    out
}

/// Terms from the last column being absorbed into the arcs.
pub fn absorption_terms(t: &CellTuple, params: SurfaceParams) -> IntegerChain {
    let mut out = IntegerChain::zero(t.degree().saturating_sub(1));
    let l = t.length();
    if l == 0 || params.genus == 0 {
        return out;
    }
    let last = &t.columns()[l - 1];
    let rest_cols = t.columns()[..l - 1].to_vec();
    let arc_count = params.arc_count();
    let mut source: Vec<Label> = last.clone();
    source.extend(t.arcs().iter().flatten().copied());
    for assignment in monotone_assignments(last.len(), params.interval_count()) {
        let mut forward: Vec<Vec<Label>> = vec![Vec::new(); arc_count];
        let mut reversed: Vec<Vec<Label>> = vec![Vec::new(); arc_count];
        let mut reversed_count = 0;
        for (&p, &q) in last.iter().zip(&assignment) {
            let interval = params.interval(q);
            if interval.reversed() {
                reversed[interval.arc()].push(p);
                reversed_count += 1;
            } else {
                forward[interval.arc()].push(p);
            }
        }
        let base_sign = -sign_pow(l) * sign_pow(reversed_count);
        let per_arc: Vec<Vec<Vec<Label>>> = (0..arc_count)
            .map(|k| {
                let rev: Vec<Label> = reversed[k].iter().rev().copied().collect();
                shuffles(&[t.arcs()[k].clone(), forward[k].clone(), rev])
            })
            .collect();
        for arcs in per_arc.iter().map(|v| v.iter()).multi_cartesian_product() {
            let arcs: Vec<Vec<Label>> = arcs.into_iter().cloned().collect();
            let target: Vec<Label> = arcs.iter().flatten().copied().collect();
            let sign = base_sign * rearrangement_sign(&source, &target) as i64;
            out.add_term(CellTuple::from_parts_unchecked(rest_cols.clone(), arcs), sign);
        }
    }
    out
}

/// The boundary of a cell.
pub fn boundary_cell(t: &CellTuple, params: SurfaceParams) -> IntegerChain {
    let mut out = merge_terms(t);
    for (cell, c) in absorption_terms(t, params).terms {
        out.add_term(cell, c);
    }
    out
}

/// The cellular chain complex on a fixed cell basis, graded by cell degree
/// `0..=2n` (degrees below `n` are zero).
#[derive(Clone, Debug)]
pub struct IntegerChainComplex {
    basis: CellBasis,
    chain: ChainComplex,
}

impl IntegerChainComplex {
    pub fn basis(&self) -> &CellBasis {
        &self.basis
    }

    pub fn params(&self) -> SurfaceParams {
        self.basis.params()
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn boundary(&self, d: usize) -> SparseIntMatrix {
        self.chain.boundary(d)
    }

    /// Cochain complex, regraded so that degree `k` holds the duals of the cells of
    /// degree `2n - k`.
    pub fn cochain_dual(&self) -> ChainComplex {
        self.chain.dual()
    }

    /// Per-degree bases and differential triplets `(row, col, coeff)`.
    pub fn export_json(&self) -> Value {
        let p = self.params();
        let mut degrees = serde_json::Map::new();
        let mut differentials = serde_json::Map::new();
        for d in 0..=self.chain.top_degree() {
            let cells: Vec<String> = self.basis.cells_in_degree(d).iter().map(ToString::to_string).collect();
            if !cells.is_empty() {
                degrees.insert(d.to_string(), json!(cells));
            }
            if d >= 1 {
                let b = self.chain.boundary(d);
                if b.rows() > 0 && b.cols() > 0 {
                    let trip: Vec<Value> =
                        b.iter().map(|(r, c, v)| json!([r, c, v.to_string()])).collect();
                    differentials.insert(d.to_string(), json!(trip));
                }
            }
        }
        json!({"g": p.genus, "n": self.n(), "bases": degrees, "differentials": differentials})
    }
}

/// Assembles the boundary matrices without checking that they square to zero.
pub fn assemble(params: SurfaceParams, n: usize) -> IntegerChainComplex {
    let basis = enumerate_cells(params, n);
    let top = 2 * n;
    let dims: Vec<usize> = (0..=top).map(|d| basis.count_in_degree(d)).collect();
    let mut boundaries = vec![SparseIntMatrix::new(0, dims[0])];
    for d in 1..=top {
        let mut m = SparseIntMatrix::new(dims[d - 1], dims[d]);
        for (col, cell) in basis.cells_in_degree(d).iter().enumerate() {
            for (face, c) in boundary_cell(cell, params).terms {
                let row = basis.position_in_degree(&face).expect("faces are cells");
                m.add_to(row, col, &BigInt::from(c));
            }
        }
        boundaries.push(m);
    }
    let chain = ChainComplex::new(dims, boundaries).expect("dimensions agree by construction");
    IntegerChainComplex { basis, chain }
}

/// Builds the complex and certifies that the differential squares to zero.
pub fn build_complex(params: SurfaceParams, n: usize) -> Result<IntegerChainComplex> {
    let c = assemble(params, n);
    check_square_zero(&c)?;
    Ok(c)
}

/// Checks `boundary(d-1) * boundary(d) = 0`, naming the first offending cell.
pub fn check_square_zero(c: &IntegerChainComplex) -> Result<()> {
    for d in 2..=c.chain.top_degree() {
        let sq = c.chain.boundary(d - 1).mul(&c.chain.boundary(d))?;
        if let Some((_, col, _)) = sq.iter().min_by_key(|(_, col, _)| *col) {
            let cell = c.basis.cells_in_degree(d)[col].to_string();
            return Err(Error::DifferentialNotNilpotent { degree: d, cell });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(s: &str) -> CellTuple {
        s.parse().unwrap()
    }

    #[test]
    fn one_point_in_a_torus_is_closed() {
        let b = boundary_cell(&cell("l=1;P=(1);U=();V=()"), SurfaceParams::new(1));
        assert!(b.is_zero());
        assert_eq!(absorption_terms(&cell("l=1;P=(1);U=();V=()"), SurfaceParams::new(1)).terms.len(), 0);
    }

    #[test]
    fn two_points_in_a_disc() {
        let b = boundary_cell(&cell("l=2;P=(1),(2);U=;V="), SurfaceParams::new(0));
        assert_eq!(b.terms.len(), 2);
        assert_eq!(b.coefficient(&cell("l=1;P=(1,2);U=;V=")), 1);
        assert_eq!(b.coefficient(&cell("l=1;P=(2,1);U=;V=")), -1);
    }

    #[test]
    fn pure_arc_cells_are_cycles() {
        let p = SurfaceParams::new(2);
        for t in crate::model::pure_arc_cells(p, 3) {
            assert!(boundary_cell(&t, p).is_zero());
        }
    }

    #[test]
    fn ranks_for_genus_one_two_points() {
        let c = build_complex(SurfaceParams::new(1), 2).unwrap();
        assert_eq!(c.chain().dims()[2..], [6, 6, 2]);
        assert_eq!(c.chain().euler_characteristic(), 2);
    }

    #[test]
    fn known_homology() {
        use crate::linalg::homology_ranks;
        let betti = |g, n| -> Vec<usize> {
            let c = build_complex(SurfaceParams::new(g), n).unwrap();
            homology_ranks(c.chain()).iter().map(|r| r.betti).collect()
        };
        assert_eq!(betti(1, 1), vec![0, 2, 1]);
        assert_eq!(betti(1, 2), vec![0, 0, 5, 4, 1]);
        assert_eq!(betti(0, 3), vec![0, 0, 0, 0, 2, 3, 1]);
    }

    #[test]
    fn square_zero_small() {
        for g in 0..=2 {
            for n in 0..=3 {
                build_complex(SurfaceParams::new(g), n).unwrap();
            }
        }
    }
}
