//! Products of Δ-complexes as simplicial sets, relative chains modulo the fat
//! diagonal and a basepoint or boundary locus, and the induced maps of based
//! self-maps of a wedge of circles.
//!
//! A nondegenerate `m`-simplex of `K^n` is a tuple of nondegenerate simplices
//! `x_1..x_n` of `K` together with `m` nonempty step masks: step `s` raises the
//! vertex index of every coordinate in its mask by one, and coordinate `k` is
//! raised exactly `dim x_k` times. The diagonal and the basepoint/boundary loci
//! are unions of such simplices, so quotienting by them is exact.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::free_group::FreeEndomorphism;
use crate::linalg::modp::{lift, solve_mod_p, MERSENNE_61};
use crate::linalg::{homology_ranks, ChainComplex, GroupRanks, SparseIntMatrix};
use crate::model::{pure_arc_cells, CellTuple, SurfaceParams};

pub type SimplexId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSimplex {
    pub dim: usize,
    /// `faces[i] = d_i`.
    pub faces: Vec<SimplexId>,
    /// Lies in the marked (boundary) subcomplex.
    pub marked: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// Wedge of `2g` circles at the basepoint.
    Wedge,
    /// Triangulated surface with its boundary marked.
    Surface,
}

/// A Δ-complex of dimension at most 2 with a basepoint vertex and a marked subcomplex.
#[derive(Clone, Debug)]
pub struct OneComplexModel {
    kind: ModelKind,
    genus: usize,
    simplices: Vec<FactorSimplex>,
    basepoint: SimplexId,
}

impl OneComplexModel {
    fn push(&mut self, dim: usize, faces: Vec<SimplexId>, marked: bool) -> SimplexId {
        self.simplices.push(FactorSimplex { dim, faces, marked });
        (self.simplices.len() - 1) as SimplexId
    }

    /// `2g` loops at the basepoint; loop `k` carries generator `k`.
    pub fn wedge(genus: usize) -> Self {
        let mut m = OneComplexModel { kind: ModelKind::Wedge, genus, simplices: Vec::new(), basepoint: 0 };
        let p0 = m.push(0, Vec::new(), true);
        for _ in 0..2 * genus {
            m.push(1, vec![p0, p0], false);
        }
        m
    }

    /// The rectangle coned off from its centre, with the right-edge intervals
    /// glued in pairs. Loop edges come first (ids `1..=2g`), so loop `k` is again
    /// edge `k + 1`.
    pub fn surface(genus: usize) -> Self {
        let mut m = OneComplexModel { kind: ModelKind::Surface, genus, simplices: Vec::new(), basepoint: 0 };
        let params = SurfaceParams::new(genus);
        let p0 = m.push(0, Vec::new(), true);
        let loops: Vec<SimplexId> = (0..2 * genus).map(|_| m.push(1, vec![p0, p0], false)).collect();
        let q0 = m.push(0, Vec::new(), true);
        let q1 = m.push(0, Vec::new(), true);
        let c = m.push(0, Vec::new(), false);
        // Δ-complex edge [u, v] has d0 = v, d1 = u
        let bottom = m.push(1, vec![p0, q0], true);
        let left = m.push(1, vec![q1, q0], true);
        let top = m.push(1, vec![p0, q1], true);
        // polygon vertices counter-clockwise from the bottom-left corner:
        // q0, the right-edge division points (all p0), q1
        let rights = 4 * genus + 1;
        let mut polygon = vec![q0];
        polygon.extend(std::iter::repeat_n(p0, rights));
        polygon.push(q1);
        let spokes: Vec<SimplexId> = polygon.iter().map(|&v| m.push(1, vec![c, v], false)).collect();
        let triangle = |m: &mut Self, start: usize, end: usize, side: SimplexId| {
            m.push(2, vec![spokes[end], spokes[start], side], false);
        };
        triangle(&mut m, 0, 1, bottom);
        for q in 0..4 * genus {
            let iv = params.interval(q);
            let (lo, hi) = (1 + q, 2 + q);
            if iv.reversed() {
                triangle(&mut m, hi, lo, loops[iv.arc()]);
            } else {
                triangle(&mut m, lo, hi, loops[iv.arc()]);
            }
        }
        triangle(&mut m, polygon.len() - 1, polygon.len() - 2, top);
        triangle(&mut m, 0, polygon.len() - 1, left);
        m
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basepoint(&self) -> SimplexId {
        self.basepoint
    }

    pub fn simplices(&self) -> &[FactorSimplex] {
        &self.simplices
    }

    pub fn simplex(&self, id: SimplexId) -> &FactorSimplex {
        &self.simplices[id as usize]
    }

    pub fn count_in_dim(&self, d: usize) -> usize {
        self.simplices.iter().filter(|s| s.dim == d).count()
    }

    pub fn max_dim(&self) -> usize {
        self.simplices.iter().map(|s| s.dim).max().unwrap_or(0)
    }

    /// Edge of loop `k` (wedge and surface models).
    pub fn loop_edge(&self, k: usize) -> SimplexId {
        (k + 1) as SimplexId
    }

    fn flagged(&self, id: SimplexId, mode: SubspaceMode) -> bool {
        match mode {
            SubspaceMode::DiagonalAndBasepoint => id == self.basepoint,
            SubspaceMode::DiagonalAndBoundary => self.simplex(id).marked,
        }
    }

    /// Checks that faces have the right dimension and that marking is closed under faces.
    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.simplices.iter().enumerate() {
            let expect = if s.dim == 0 { 0 } else { s.dim + 1 };
            if s.faces.len() != expect {
                return Err(Error::Internal(format!("simplex {i} has {} faces", s.faces.len())));
            }
            for &f in &s.faces {
                let fs = self.simplex(f);
                if fs.dim + 1 != s.dim {
                    return Err(Error::Internal(format!("face {f} of simplex {i} has the wrong dimension")));
                }
                if s.marked && !fs.marked {
                    return Err(Error::Internal(format!("marked simplex {i} has unmarked face {f}")));
                }
            }
        }
        // simplicial identities d_i d_j = d_{j-1} d_i for i < j
        for (i, s) in self.simplices.iter().enumerate() {
            if s.dim == 2 {
                for a in 0..3 {
                    for b in a + 1..3 {
                        let lhs = self.simplex(s.faces[b]).faces[a];
                        let rhs = self.simplex(s.faces[a]).faces[b - 1];
                        if lhs != rhs {
                            return Err(Error::Internal(format!("simplicial identity fails on triangle {i}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Which subspace the product is taken relative to, besides the fat diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceMode {
    /// Some coordinate at the basepoint.
    DiagonalAndBasepoint,
    /// Some coordinate in the marked boundary.
    DiagonalAndBoundary,
}

/// A nondegenerate simplex of the product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductSimplex {
    pub factors: Vec<SimplexId>,
    pub steps: Vec<u16>,
}

impl ProductSimplex {
    pub fn dim(&self) -> usize {
        self.steps.len()
    }

    fn pattern(&self, k: usize) -> impl Iterator<Item = bool> + '_ {
        self.steps.iter().map(move |s| s & (1 << k) != 0)
    }

    fn on_diagonal(&self) -> bool {
        let n = self.factors.len();
        (0..n).any(|k| (k + 1..n).any(|l| self.factors[k] == self.factors[l] && self.pattern(k).eq(self.pattern(l))))
    }

    /// Face `d_i`.
    pub fn face(&self, model: &OneComplexModel, i: usize) -> ProductSimplex {
        let m = self.dim();
        let mut factors = self.factors.clone();
        for (k, f) in factors.iter_mut().enumerate() {
            let bit = 1u16 << k;
            let entering = i > 0 && self.steps[i - 1] & bit != 0;
            let leaving = i < m && self.steps[i] & bit != 0;
            if (i == 0 || entering) && (i == m || leaving) {
                let value = self.steps[..i].iter().filter(|s| *s & bit != 0).count();
                *f = model.simplex(*f).faces[value];
            }
        }
        let steps = if i == 0 {
            self.steps[1..].to_vec()
        } else if i == m {
            self.steps[..m - 1].to_vec()
        } else {
            let mut s = self.steps[..i - 1].to_vec();
            s.push(self.steps[i - 1] | self.steps[i]);
            s.extend_from_slice(&self.steps[i + 1..]);
            s
        };
        ProductSimplex { factors, steps }
    }
}

/// Number of step sequences raising coordinate `k` exactly `dims[k]` times.
fn step_sequence_count(dims: &[usize], memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
    if dims.iter().all(|&d| d == 0) {
        return 1;
    }
    if let Some(&v) = memo.get(dims) {
        return v;
    }
    let live: Vec<usize> = (0..dims.len()).filter(|&k| dims[k] > 0).collect();
    let mut total = 0u128;
    for mask in 1u32..(1 << live.len()) {
        let mut next = dims.to_vec();
        for (b, &k) in live.iter().enumerate() {
            if mask & (1 << b) != 0 {
                next[k] -= 1;
            }
        }
        total += step_sequence_count(&next, memo);
    }
    memo.insert(dims.to_vec(), total);
    total
}

fn step_sequences(dims: &[usize]) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut rem = dims.to_vec();
    let mut cur = Vec::new();
    fn rec(rem: &mut [usize], cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        let live: Vec<usize> = (0..rem.len()).filter(|&k| rem[k] > 0).collect();
        if live.is_empty() {
            out.push(cur.clone());
            return;
        }
        for mask in 1u32..(1 << live.len()) {
            let mut step = 0u16;
            for (b, &k) in live.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    step |= 1 << k;
                    rem[k] -= 1;
                }
            }
            cur.push(step);
            rec(rem, cur, out);
            cur.pop();
            for (b, &k) in live.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    rem[k] += 1;
                }
            }
        }
    }
    rec(&mut rem, &mut cur, &mut out);
    out
}

/// Exact number of nondegenerate simplices of `K^n` whose factors all avoid the
/// basepoint or boundary locus (an upper bound for the relative basis size).
pub fn product_simplex_count(model: &OneComplexModel, n: usize, mode: SubspaceMode) -> u128 {
    let mut per_dim = vec![0u128; model.max_dim() + 1];
    for (i, s) in model.simplices.iter().enumerate() {
        if !model.flagged(i as SimplexId, mode) {
            per_dim[s.dim] += 1;
        }
    }
    let mut memo = HashMap::new();
    let mut total = 0u128;
    let mut dims = vec![0usize; n];
    loop {
        let mut sorted = dims.clone();
        sorted.sort_unstable();
        let factors: u128 = dims.iter().map(|&d| per_dim[d]).product();
        if factors > 0 {
            total += factors * step_sequence_count(&sorted, &mut memo);
        }
        // next dims tuple in base (max_dim + 1)
        let mut k = 0;
        loop {
            if k == n {
                return total;
            }
            dims[k] += 1;
            if dims[k] <= model.max_dim() {
                break;
            }
            dims[k] = 0;
            k += 1;
        }
    }
}

/// Size limits for product models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guardrail {
    pub wedge_max_points: usize,
    pub surface_max_points: usize,
}

impl Default for Guardrail {
    fn default() -> Self {
        Guardrail { wedge_max_points: 3, surface_max_points: 2 }
    }
}

impl Guardrail {
    pub fn unlimited() -> Self {
        Guardrail { wedge_max_points: usize::MAX, surface_max_points: usize::MAX }
    }

    pub fn check(&self, model: &OneComplexModel, n: usize, mode: SubspaceMode) -> Result<()> {
        let limit = match model.kind {
            ModelKind::Wedge => self.wedge_max_points,
            ModelKind::Surface => self.surface_max_points,
        };
        if n > limit {
            let estimate = product_simplex_count(model, n, mode);
            let allowed = product_simplex_count(model, limit.min(n), mode);
            return Err(Error::Guardrail {
                estimate,
                limit: allowed,
                hint: format!("{n} points exceed the default of {limit} for this model; pass an override to proceed"),
            });
        }
        Ok(())
    }
}

/// Relative normalized chains of `(K^n, Δ ∪ A)` or `(K^n, Δ ∪ A')`.
#[derive(Clone, Debug)]
pub struct SimplicialPairComplex {
    n: usize,
    mode: SubspaceMode,
    simplices: Vec<Vec<ProductSimplex>>,
    index: Vec<HashMap<ProductSimplex, usize>>,
    chain: ChainComplex,
}

impl SimplicialPairComplex {
    /// Builds relative chains up to dimension `max_dim` (all dimensions if `None`).
    pub fn build(model: &OneComplexModel, n: usize, mode: SubspaceMode, max_dim: Option<usize>) -> Self {
        assert!(n <= 16, "at most 16 coordinates");
        let top = max_dim.unwrap_or(n * model.max_dim()).min(n * model.max_dim());
        let allowed: Vec<SimplexId> =
            (0..model.simplices.len() as SimplexId).filter(|&i| !model.flagged(i, mode)).collect();
        let mut simplices: Vec<Vec<ProductSimplex>> = vec![Vec::new(); top + 1];
        let mut seq_cache: HashMap<Vec<usize>, Vec<Vec<u16>>> = HashMap::new();
        let mut tuple = vec![0usize; n];
        if n == 0 {
            simplices[0].push(ProductSimplex { factors: Vec::new(), steps: Vec::new() });
        }
        while n > 0 && !allowed.is_empty() {
            let factors: Vec<SimplexId> = tuple.iter().map(|&i| allowed[i]).collect();
            let dims: Vec<usize> = factors.iter().map(|&f| model.simplex(f).dim).collect();
            if dims.iter().max().copied().unwrap_or(0) <= top {
                let seqs = seq_cache.entry(dims.clone()).or_insert_with(|| step_sequences(&dims));
                for steps in seqs.iter() {
                    if steps.len() <= top {
                        let s = ProductSimplex { factors: factors.clone(), steps: steps.clone() };
                        if !s.on_diagonal() {
                            simplices[s.dim()].push(s);
                        }
                    }
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    break;
                }
                tuple[k] += 1;
                if tuple[k] < allowed.len() {
                    break;
                }
                tuple[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        for v in simplices.iter_mut() {
            v.sort();
        }
        let index: Vec<HashMap<ProductSimplex, usize>> =
            simplices.iter().map(|v| v.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        let dims: Vec<usize> = simplices.iter().map(Vec::len).collect();
        let mut boundaries = vec![SparseIntMatrix::new(0, dims[0])];
        for d in 1..=top {
            let mut m = SparseIntMatrix::new(dims[d - 1], dims[d]);
            for (col, s) in simplices[d].iter().enumerate() {
                for i in 0..=d {
                    let f = s.face(model, i);
                    if let Some(&row) = index[d - 1].get(&f) {
                        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        m.add_to(row, col, &sign);
                    }
                }
            }
            boundaries.push(m);
        }
        let chain = ChainComplex::new(dims, boundaries).expect("dimensions agree by construction");
        SimplicialPairComplex { n, mode, simplices, index, chain }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> SubspaceMode {
        self.mode
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn simplices(&self, d: usize) -> &[ProductSimplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn index_of(&self, s: &ProductSimplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }
}

/// Integral relative homology of `(K^n, Δ ∪ A)` (wedge) or `(K^n, Δ ∪ A')` (surface).
pub fn relative_homology_oracle(
    model: &OneComplexModel,
    n: usize,
    mode: SubspaceMode,
    guardrail: &Guardrail,
) -> Result<Vec<GroupRanks>> {
    guardrail.check(model, n, mode)?;
    let pair = SimplicialPairComplex::build(model, n, mode, None);
    if let Some(d) = pair.chain.first_nonzero_square() {
        return Err(Error::Internal(format!("product boundary does not square to zero in degree {d}")));
    }
    Ok(homology_ranks(&pair.chain))
}

/// A simplicial map of Δ-complexes of dimension at most one, given on simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    /// Image of each domain simplex (an edge may go to a vertex).
    pub image: Vec<SimplexId>,
}

impl SimplicialMap {
    /// Image of a product simplex, or `None` if it is degenerate.
    pub fn apply(&self, domain: &OneComplexModel, target: &OneComplexModel, s: &ProductSimplex) -> Option<ProductSimplex> {
        let mut steps = s.steps.clone();
        let mut factors = Vec::with_capacity(s.factors.len());
        for (k, &f) in s.factors.iter().enumerate() {
            let img = self.image[f as usize];
            let dd = domain.simplex(f).dim;
            let td = target.simplex(img).dim;
            debug_assert!(dd <= 1 && td <= dd);
            if td < dd {
                for st in steps.iter_mut() {
                    *st &= !(1u16 << k);
                }
            }
            factors.push(img);
        }
        if steps.contains(&0) {
            return None;
        }
        Some(ProductSimplex { factors, steps })
    }
}

/// Subdivided wedge `X'` with the map `f: X' -> X` spelling the images of the
/// generators and the collapse `c: X' -> X`.
#[derive(Clone, Debug)]
pub struct SimplicialSelfMap {
    pub domain: OneComplexModel,
    pub target: OneComplexModel,
    pub map: SimplicialMap,
    pub collapse: SimplicialMap,
    /// Sub-edges of each loop in traversal order, with their orientation
    /// (`true` when the sub-edge points along the loop).
    pub loop_edges: Vec<Vec<(SimplexId, bool)>>,
}

/// Realizes an endomorphism as a based simplicial map on a subdivided wedge.
///
/// Loop `k` is cut into one sub-edge per letter of its image; an inverse
/// letter's sub-edge points against the loop. If the image is empty or starts
/// with an inverse letter, an extra leading sub-edge (sent to the basepoint by
/// the map) is added so that the collapse can send a forward sub-edge onto the loop.
pub fn endo_to_map(phi: &FreeEndomorphism) -> SimplicialSelfMap {
    let g = phi.genus();
    let target = OneComplexModel::wedge(g);
    let mut domain = OneComplexModel { kind: ModelKind::Wedge, genus: g, simplices: Vec::new(), basepoint: 0 };
    let p0 = domain.push(0, Vec::new(), true);
    let mut image = vec![target.basepoint()];
    let mut collapse = vec![target.basepoint()];
    let mut loop_edges = Vec::new();
    for k in 0..phi.rank() {
        let word = phi.image(k);
        let mut pieces: Vec<Option<crate::free_group::Letter>> = word.letters().iter().copied().map(Some).collect();
        if pieces.first().is_none_or(|l| l.is_some_and(|l| l.inverse)) {
            pieces.insert(0, None);
        }
        // subdivision points along the loop
        let mut points = vec![p0];
        for _ in 1..pieces.len() {
            points.push(domain.push(0, Vec::new(), false));
            image.push(target.basepoint());
            collapse.push(target.basepoint());
        }
        points.push(p0);
        let mut edges = Vec::new();
        for (j, piece) in pieces.iter().enumerate() {
            let (start, end) = (points[j], points[j + 1]);
            let forward = !piece.is_some_and(|l| l.inverse);
            let e = if forward { domain.push(1, vec![end, start], false) } else { domain.push(1, vec![start, end], false) };
            image.push(match piece {
                Some(l) => target.loop_edge(l.generator),
                None => target.basepoint(),
            });
            collapse.push(if j == 0 { target.loop_edge(k) } else { target.basepoint() });
            edges.push((e, forward));
        }
        loop_edges.push(edges);
    }
    SimplicialSelfMap {
        domain,
        target,
        map: SimplicialMap { image },
        collapse: SimplicialMap { image: collapse },
        loop_edges,
    }
}

/// The Moriyama module with its basis of pure-arc cells and a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorAction {
    pub basis: Vec<CellTuple>,
    pub matrix: SparseIntMatrix,
}

impl MorAction {
    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// Fundamental chain of a pure-arc cell as a relative `n`-cycle of `X^n`:
/// the sum over all orders in which the points leave the basepoint that are
/// compatible with the order on each loop (the point with the larger loop
/// parameter leaves first), signed by the step times listed in the cell's
/// coordinate order.
pub fn fundamental_chain(cell: &CellTuple, wedge: &OneComplexModel) -> Vec<(ProductSimplex, i32)> {
    let n = cell.weight();
    let order = cell.coordinate_order();
    let mut loop_of = vec![0usize; n];
    for (k, arc) in cell.arcs().iter().enumerate() {
        for &l in arc {
            loop_of[l as usize - 1] = k;
        }
    }
    let factors: Vec<SimplexId> = (0..n).map(|i| wedge.loop_edge(loop_of[i])).collect();
    let mut out = Vec::new();
    for perm in itertools::Itertools::permutations(0..n, n) {
        // perm[s] = coordinate (label - 1) raised at step s; time[c] = step of c
        let mut time = vec![0usize; n];
        for (s, &c) in perm.iter().enumerate() {
            time[c] = s;
        }
        let compatible = cell
            .arcs()
            .iter()
            .all(|arc| arc.windows(2).all(|w| time[w[0] as usize - 1] > time[w[1] as usize - 1]));
        if !compatible {
            continue;
        }
        let listed: Vec<usize> = order.iter().map(|&l| time[l as usize - 1]).collect();
        let sign = crate::perm::sign_of_sequence(&listed);
        let steps = perm.iter().map(|&c| 1u16 << c).collect();
        out.push((ProductSimplex { factors: factors.clone(), steps }, sign));
    }
    out
}

/// The Moriyama action computed through the simplicial model: pull each
/// fundamental chain back along the collapse `c: X' -> X` by an exact solve,
/// push it forward along the spelled map, and read off coordinates.
pub fn mor_action(phi: &FreeEndomorphism, n: usize, guardrail: &Guardrail) -> Result<MorAction> {
    let g = phi.genus();
    let wedge = OneComplexModel::wedge(g);
    guardrail.check(&wedge, n, SubspaceMode::DiagonalAndBasepoint)?;
    let basis = pure_arc_cells(SurfaceParams::new(g), n);
    let k = basis.len();
    if k == 0 {
        return Ok(MorAction { basis, matrix: SparseIntMatrix::new(0, 0) });
    }
    if n == 0 {
        return Ok(MorAction { basis, matrix: SparseIntMatrix::identity(1) });
    }
    let target = SimplicialPairComplex::build(&wedge, n, SubspaceMode::DiagonalAndBasepoint, Some(n));
    let rows_n = target.simplices(n).len();
    let mut fundamental = SparseIntMatrix::new(rows_n, k);
    let mut representative = Vec::with_capacity(k);
    for (j, cell) in basis.iter().enumerate() {
        let chain = fundamental_chain(cell, &wedge);
        let (rep, sign) = chain.first().cloned().expect("fundamental chains are nonempty");
        representative.push((target.index_of(&rep).expect("top simplices are relative"), sign));
        for (s, sign) in chain {
            let row = target.index_of(&s).expect("top simplices are relative");
            fundamental.add_to(row, j, &BigInt::from(sign));
        }
    }
    let sm = endo_to_map(phi);
    let source = SimplicialPairComplex::build(&sm.domain, n, SubspaceMode::DiagonalAndBasepoint, Some(n));
    let push = |m: &SimplicialMap| -> SparseIntMatrix {
        let mut out = SparseIntMatrix::new(rows_n, source.simplices(n).len());
        for (col, s) in source.simplices(n).iter().enumerate() {
            if let Some(img) = m.apply(&sm.domain, &sm.target, s) {
                if let Some(row) = target.index_of(&img) {
                    out.add_to(row, col, &BigInt::one());
                }
            }
        }
        out
    };
    let collapse = push(&sm.collapse);
    let forward = push(&sm.map);
    let boundary = source.chain().boundary(n);
    // [boundary; collapse] z = [0; fundamental]
    let stacked_rows = boundary.rows() + rows_n;
    let cols = source.simplices(n).len();
    let mut system = SparseIntMatrix::new(stacked_rows, cols);
    for (r, c, v) in boundary.iter() {
        system.add_to(r, c, v);
    }
    for (r, c, v) in collapse.iter() {
        system.add_to(boundary.rows() + r, c, v);
    }
    let mut rhs = SparseIntMatrix::new(stacked_rows, k);
    for (r, c, v) in fundamental.iter() {
        rhs.add_to(boundary.rows() + r, c, v);
    }
    let solution = solve_mod_p(&system, &rhs, MERSENNE_61)
        .ok_or_else(|| Error::Internal("collapse does not induce an isomorphism on top cycles".into()))?;
    let mut lifted = SparseIntMatrix::new(cols, k);
    for (j, col) in solution.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            if v != 0 {
                lifted.set(i, j, lift(v, MERSENNE_61));
            }
        }
    }
    if system.mul(&lifted)? != rhs {
        return Err(Error::Internal("lifted pull-back is not an exact integral solution".into()));
    }
    let image = forward.mul(&lifted)?;
    let mut matrix = SparseIntMatrix::new(k, k);
    for (i, &(row, sign)) in representative.iter().enumerate() {
        for j in 0..k {
            let v = image.get(row, j);
            if !v.is_zero() {
                matrix.set(i, j, v * sign);
            }
        }
    }
    if fundamental.mul(&matrix)? != image {
        return Err(Error::Internal("push-forward is not a combination of fundamental chains".into()));
    }
    Ok(MorAction { basis, matrix })
}

/// Exponent-sum matrix of an endomorphism as a map on `Z^{2g}`, written in the
/// one-point pure-arc basis (a point on arc `k` is generator `k`).
pub fn abelianization_action(phi: &FreeEndomorphism) -> MorAction {
    let basis = pure_arc_cells(SurfaceParams::new(phi.genus()), 1);
    let arc = |c: &CellTuple| c.arcs().iter().position(|a| !a.is_empty()).expect("one point");
    let m = phi.abelianization_matrix();
    let mut matrix = SparseIntMatrix::new(basis.len(), basis.len());
    for (i, ci) in basis.iter().enumerate() {
        for (j, cj) in basis.iter().enumerate() {
            let v = m[arc(ci)][arc(cj)];
            if v != 0 {
                matrix.set(i, j, BigInt::from(v));
            }
        }
    }
    MorAction { basis, matrix }
}

/// Ranks of `H_*(X^n, Δ ∪ A)` keyed by degree, dropping zero groups.
pub fn nonzero_ranks(ranks: &[GroupRanks]) -> BTreeMap<usize, GroupRanks> {
    ranks
        .iter()
        .enumerate()
        .filter(|(_, r)| r.betti > 0 || !r.torsion.is_empty())
        .map(|(d, r)| (d, r.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::dehn_twist_generator;

    #[test]
    fn models_are_valid() {
        for g in 0..=2 {
            OneComplexModel::wedge(g).validate().unwrap();
            let s = OneComplexModel::surface(g);
            s.validate().unwrap();
            assert_eq!(s.count_in_dim(2), 4 * g + 3);
        }
        let s = OneComplexModel::surface(0);
        assert_eq!((s.count_in_dim(0), s.count_in_dim(1), s.count_in_dim(2)), (4, 6, 3));
    }

    #[test]
    fn surface_relative_homology_of_one_point() {
        // H_*(M, boundary) for the torus with one hole: Z^2 in degree 1, Z in degree 2
        let s = OneComplexModel::surface(1);
        let r = relative_homology_oracle(&s, 1, SubspaceMode::DiagonalAndBoundary, &Guardrail::default()).unwrap();
        let betti: Vec<usize> = r.iter().map(|x| x.betti).collect();
        assert_eq!(betti, vec![0, 2, 1]);
    }

    #[test]
    fn wedge_concentration() {
        let w = OneComplexModel::wedge(1);
        let r = relative_homology_oracle(&w, 2, SubspaceMode::DiagonalAndBasepoint, &Guardrail::default()).unwrap();
        let betti: Vec<usize> = r.iter().map(|x| x.betti).collect();
        assert_eq!(betti, vec![0, 0, 6]);
    }

    #[test]
    fn guardrail_refuses_with_estimate() {
        let s = OneComplexModel::surface(0);
        let e = relative_homology_oracle(&s, 3, SubspaceMode::DiagonalAndBoundary, &Guardrail::default()).unwrap_err();
        assert!(matches!(e, Error::Guardrail { estimate: 22807, .. }));
    }

    #[test]
    fn fundamental_chains_are_cycles() {
        let w = OneComplexModel::wedge(1);
        let pair = SimplicialPairComplex::build(&w, 3, SubspaceMode::DiagonalAndBasepoint, None);
        for cell in pure_arc_cells(SurfaceParams::new(1), 3) {
            let mut v = vec![BigInt::zero(); pair.simplices(3).len()];
            for (s, sign) in fundamental_chain(&cell, &w) {
                v[pair.index_of(&s).unwrap()] += sign;
            }
            assert!(pair.chain().boundary(3).apply(&v).iter().all(Zero::is_zero), "{cell}");
        }
    }

    #[test]
    fn one_point_action_is_abelianization() {
        for name in ["Ta1", "Tb1", "Td"] {
            let phi = dehn_twist_generator(name, 1).unwrap();
            let m = mor_action(&phi, 1, &Guardrail::default()).unwrap();
            assert_eq!(m, abelianization_action(&phi), "{name}");
        }
        let inv = crate::free_group::parse_mapping_class("endo: a1-> A1", 1).unwrap().endo;
        let m = mor_action(&inv, 1, &Guardrail::default()).unwrap();
        assert_eq!(m, abelianization_action(&inv));
        assert_eq!(m.matrix.iter().filter(|(_, _, v)| **v == BigInt::from(-1)).count(), 1);
    }
}
