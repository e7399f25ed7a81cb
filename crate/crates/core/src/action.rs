//! The mapping class group action on the cell complex: identity on column
//! factors tensored with the Moriyama action on arc factors, certified as a
//! chain map, and the induced action on cohomology.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::complex::IntegerChainComplex;
use crate::error::{Error, Result};
use crate::free_group::{johnson_depth, FreeEndomorphism};
use crate::linalg::{check_chain_map, homology, induced_on_homology, InducedMap, SparseIntMatrix};
use crate::model::{factorize_cell, product_cells, pure_arc_cells, CellTuple, Label, SurfaceParams};
use crate::perm::{monotone_assignments, rearrangement_sign, shuffles};
use crate::simplicial::MorAction;

/// Moriyama action by counting preimages: a point on loop `k` lands in one
/// letter of `phi(x_k)`, points of a loop fill its letters in order, letters
/// of inverse generators reverse their block (each reversed point contributes
/// `-1`), and blocks landing on the same loop interleave freely. The sign also
/// includes the permutation from source to target coordinate order.
pub fn combinatorial_mor_action(phi: &FreeEndomorphism, n: usize) -> MorAction {
    let params = SurfaceParams::new(phi.genus());
    let basis = pure_arc_cells(params, n);
    let index: HashMap<&CellTuple, usize> = basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut matrix = SparseIntMatrix::new(basis.len(), basis.len());
    for (col, cell) in basis.iter().enumerate() {
        let source_order = cell.coordinate_order();
        let mut column: BTreeMap<usize, i64> = BTreeMap::new();
        let per_loop: Vec<Vec<Vec<usize>>> = cell
            .arcs()
            .iter()
            .enumerate()
            .map(|(k, arc)| monotone_assignments(arc.len(), phi.image(k).len()))
            .collect();
        for choice in itertools::Itertools::multi_cartesian_product(per_loop.iter().map(|v| v.iter())) {
            let mut blocks: Vec<Vec<Vec<Label>>> = vec![Vec::new(); params.arc_count()];
            let mut reversed = 0usize;
            for (k, assignment) in choice.iter().enumerate() {
                let arc = &cell.arcs()[k];
                for (j, letter) in phi.image(k).letters().iter().enumerate() {
                    let mut block: Vec<Label> =
                        arc.iter().zip(assignment.iter()).filter(|(_, &b)| b == j).map(|(&l, _)| l).collect();
                    if block.is_empty() {
                        continue;
                    }
                    if letter.inverse {
                        block.reverse();
                        reversed += block.len();
                    }
                    blocks[letter.generator].push(block);
                }
            }
            let options: Vec<Vec<Vec<Label>>> = blocks.iter().map(|b| shuffles(b)).collect();
            let jacobian = if reversed.is_multiple_of(2) { 1 } else { -1 };
            for arcs in itertools::Itertools::multi_cartesian_product(options.iter().map(|v| v.iter().cloned())) {
                let target = CellTuple::from_parts(Vec::new(), arcs).expect("labels are preserved");
                let sign = jacobian * rearrangement_sign(&source_order, &target.coordinate_order());
                *column.entry(index[&target]).or_default() += sign as i64;
            }
        }
        for (row, v) in column {
            if v != 0 {
                matrix.set(row, col, BigInt::from(v));
            }
        }
    }
    MorAction { basis, matrix }
}

/// A chain endomorphism of the cell complex, certified to commute with the differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub endo: FreeEndomorphism,
    /// Indexed by degree `0..=2n`.
    pub matrices: Vec<SparseIntMatrix>,
}

impl ChainMap {
    pub fn is_identity_in_degree(&self, d: usize) -> bool {
        self.matrices[d].is_identity()
    }
}

/// Moriyama matrices per number of arc points, computed on demand.
#[derive(Default)]
pub struct MorCache {
    entries: HashMap<usize, (MorAction, HashMap<CellTuple, usize>)>,
}

impl MorCache {
    fn get(&mut self, phi: &FreeEndomorphism, r: usize) -> &(MorAction, HashMap<CellTuple, usize>) {
        self.entries.entry(r).or_insert_with(|| {
            let m = combinatorial_mor_action(phi, r);
            let idx = m.basis.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
            (m, idx)
        })
    }
}

/// Images of one cell: the column factor is kept, the arc factor is moved by
/// the Moriyama action after an order-preserving relabelling onto `1..|R|`.
fn image_of_cell(phi: &FreeEndomorphism, cell: &CellTuple, cache: &mut MorCache) -> Result<Vec<(CellTuple, BigInt)>> {
    let (e_part, x_part) = factorize_cell(cell);
    let (standard, originals) = x_part.standardize();
    let (mor, idx) = cache.get(phi, originals.len());
    let col = *idx
        .get(&standard)
        .ok_or_else(|| Error::Internal(format!("arc factor {standard} missing from the pure-arc basis")))?;
    let mut out = Vec::new();
    for (row, c, v) in mor.matrix.iter() {
        if c != col {
            continue;
        }
        let moved = mor.basis[row].relabeled(|l| originals[l as usize - 1]);
        out.push((product_cells(&e_part, &moved)?, v.clone()));
    }
    Ok(out)
}

/// The action of `phi` on the cell complex, verified to be a chain map.
pub fn full_action(phi: &FreeEndomorphism, complex: &IntegerChainComplex) -> Result<ChainMap> {
    if phi.genus() != complex.params().genus {
        return Err(Error::Dimension(format!(
            "endomorphism of genus {} on a complex of genus {}",
            phi.genus(),
            complex.params().genus
        )));
    }
    let basis = complex.basis();
    let mut cache = MorCache::default();
    let mut matrices = Vec::new();
    for d in 0..complex.chain().dims().len() {
        let cells = basis.cells_in_degree(d);
        let mut m = SparseIntMatrix::new(cells.len(), cells.len());
        for (col, cell) in cells.iter().enumerate() {
            for (target, v) in image_of_cell(phi, cell, &mut cache)? {
                let row = basis
                    .position_in_degree(&target)
                    .ok_or_else(|| Error::Internal(format!("image cell {target} is not in degree {d}")))?;
                m.add_to(row, col, &v);
            }
        }
        matrices.push(m);
    }
    check_chain_map(complex.chain(), &matrices)?;
    Ok(ChainMap { endo: phi.clone(), matrices })
}

/// Induced action on `H^i(F_n)` for `i = 0..=2n`, keyed by `i`.
pub fn action_on_cohomology(phi: &FreeEndomorphism, complex: &IntegerChainComplex) -> Result<BTreeMap<usize, CohomologyAction>> {
    let map = full_action(phi, complex)?;
    action_from_chain_map(&map, complex)
}

/// Induced map on one cohomology group together with its torsion orders.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyAction {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    pub map: Option<InducedMap>,
}

impl CohomologyAction {
    pub fn is_identity(&self) -> bool {
        self.map.as_ref().is_none_or(|m| m.is_identity(&self.torsion))
    }
}

pub fn action_from_chain_map(map: &ChainMap, complex: &IntegerChainComplex) -> Result<BTreeMap<usize, CohomologyAction>> {
    let h = homology(complex.chain());
    let induced = induced_on_homology(complex.chain(), &h, &map.matrices)?;
    let per_degree: Vec<CohomologyAction> = h
        .groups
        .iter()
        .zip(induced)
        .map(|(g, m)| CohomologyAction { betti: g.betti, torsion: g.torsion.clone(), map: Some(m) })
        .collect();
    Ok(crate::linalg::reindex_poincare_lefschetz(&per_degree, complex.n()))
}

/// Outcome of checking that a class of Johnson depth `d` acts trivially on `H^j`, `j <= i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JohnsonReport {
    pub depth: usize,
    pub n: usize,
    pub genus: usize,
    pub requested: usize,
    /// Whether the action on `H^j` is the identity, for every `j`.
    pub identity: BTreeMap<usize, bool>,
    /// Degrees `j <= i` with `depth >= i` where the action is not the identity.
    pub violations: Vec<usize>,
}

impl JohnsonReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Lowest degree where the action is not the identity.
    pub fn first_nontrivial(&self) -> Option<usize> {
        self.identity.iter().find(|(_, &id)| !id).map(|(&j, _)| j)
    }
}

/// Computes the depth of `phi` (bounded by `n + 1`, which is all that matters
/// here) and the identity verdict on every cohomology group.
pub fn verify_johnson_triviality(phi: &FreeEndomorphism, complex: &IntegerChainComplex, i: usize) -> Result<JohnsonReport> {
    let n = complex.n();
    let depth = johnson_depth(phi, (n + 1).max(i + 1));
    let actions = action_on_cohomology(phi, complex)?;
    let identity: BTreeMap<usize, bool> = actions.iter().map(|(&j, a)| (j, a.is_identity())).collect();
    let violations = if depth >= i { identity.iter().filter(|(&j, &id)| j <= i && !id).map(|(&j, _)| j).collect() } else { Vec::new() };
    Ok(JohnsonReport { depth, n, genus: phi.genus(), requested: i, identity, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::free_group::dehn_twist_generator;

    #[test]
    fn one_point_matches_abelianization() {
        for name in ["Ta1", "Tb1", "Td", "Tsep1"] {
            let phi = dehn_twist_generator(name, 1).unwrap();
            assert_eq!(combinatorial_mor_action(&phi, 1), crate::simplicial::abelianization_action(&phi), "{name}");
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let c = build_complex(SurfaceParams::new(1), 2).unwrap();
        let map = full_action(&FreeEndomorphism::identity(1), &c).unwrap();
        assert!(map.matrices.iter().all(SparseIntMatrix::is_identity));
    }

    #[test]
    fn twists_give_chain_maps() {
        let c = build_complex(SurfaceParams::new(1), 2).unwrap();
        for name in ["Ta1", "Tb1", "Td"] {
            full_action(&dehn_twist_generator(name, 1).unwrap(), &c).unwrap();
        }
    }
}
