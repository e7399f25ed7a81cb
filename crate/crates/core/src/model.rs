//! The rectangle model of a genus-g surface with one boundary component and the
//! combinatorial cells stratifying its ordered configuration spaces.
//!
//! The surface is the quotient of `[0,2] x [0,1]` in which the right edge is cut
//! into `4g` intervals `I_i, J_i, I'_i, J'_i` (bottom to top, handle by handle) and
//! `I_i` is glued to `I'_i`, `J_i` to `J'_i`, each reversing the vertical direction.
//! The glued right edge becomes the wedge of `2g` arcs `U_i` (from `I_i`) and `V_i`
//! (from `J_i`) at the basepoint `p0`.
//!
//! A cell is a tuple `(l, P, U, V)`: `l` nonempty columns of points in the open
//! rectangle, listed bottom to top, and for each arc the points lying on it listed
//! in increasing arc parameter. Arcs are stored in the order `U_1, V_1, .., U_g, V_g`,
//! so arc `k` carries the free generator `k` (`a_1, b_1, a_2, ..`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::rising_factorial;

/// Point labels. Configurations are on `1..=n`.
pub type Label = u8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceParams {
    pub genus: usize,
}

/// Which of the four interval families a right-edge interval belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    I,
    J,
    IPrime,
    JPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryInterval {
    /// Handle index, 1-based.
    pub handle: usize,
    pub kind: IntervalKind,
}

impl BoundaryInterval {
    /// Arc that the interval is glued onto.
    pub fn arc(&self) -> usize {
        let base = 2 * (self.handle - 1);
        match self.kind {
            IntervalKind::I | IntervalKind::IPrime => base,
            IntervalKind::J | IntervalKind::JPrime => base + 1,
        }
    }

    /// Whether the gluing parametrisation runs downwards (arc parameter
    /// decreases as height increases).
    pub fn reversed(&self) -> bool {
        matches!(self.kind, IntervalKind::IPrime | IntervalKind::JPrime)
    }
}

impl SurfaceParams {
    pub fn new(genus: usize) -> Self {
        SurfaceParams { genus }
    }

    pub fn arc_count(&self) -> usize {
        2 * self.genus
    }

    pub fn interval_count(&self) -> usize {
        4 * self.genus
    }

    /// The `q`-th right-edge interval counted from the bottom.
    pub fn interval(&self, q: usize) -> BoundaryInterval {
        assert!(q < self.interval_count(), "interval index out of range");
        let kind = match q % 4 {
            0 => IntervalKind::I,
            1 => IntervalKind::J,
            2 => IntervalKind::IPrime,
            _ => IntervalKind::JPrime,
        };
        BoundaryInterval { handle: q / 4 + 1, kind }
    }

    /// Endpoints of interval `q` as numerators over `4g`.
    pub fn interval_bounds(&self, q: usize) -> (usize, usize) {
        (q, q + 1)
    }

    pub fn arc_name(&self, k: usize) -> String {
        let family = if k.is_multiple_of(2) { "U" } else { "V" };
        format!("{}{}", family, k / 2 + 1)
    }
}

/// A cell `(l, P, U, V)` on some finite set of labels.
///
/// Field order matters: the derived `Ord` compares columns, then arcs, which is
/// the tie-break of the canonical basis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellTuple {
    columns: Vec<Vec<Label>>,
    arcs: Vec<Vec<Label>>,
}

impl CellTuple {
    /// Builds and validates a tuple; `arcs_u` and `arcs_v` must both have length g.
    pub fn new(columns: Vec<Vec<Label>>, arcs_u: Vec<Vec<Label>>, arcs_v: Vec<Vec<Label>>) -> Result<Self> {
        if arcs_u.len() != arcs_v.len() {
            return Err(Error::InvalidCell(format!(
                "{} U-arcs but {} V-arcs",
                arcs_u.len(),
                arcs_v.len()
            )));
        }
        let arcs = arcs_u.into_iter().zip(arcs_v).flat_map(|(u, v)| [u, v]).collect();
        Self::from_parts(columns, arcs)
    }

    /// Builds from columns and arcs in `U_1, V_1, ..` order.
    pub fn from_parts(columns: Vec<Vec<Label>>, arcs: Vec<Vec<Label>>) -> Result<Self> {
        if !arcs.len().is_multiple_of(2) {
            return Err(Error::InvalidCell("odd number of arcs".into()));
        }
        if columns.iter().any(Vec::is_empty) {
            return Err(Error::InvalidCell("empty column".into()));
        }
        let cell = CellTuple { columns, arcs };
        let mut labels: Vec<Label> = cell.label_iter().collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCell(format!("repeated label in {cell}")));
        }
        if labels.first() == Some(&0) {
            return Err(Error::InvalidCell("labels are 1-based".into()));
        }
        Ok(cell)
    }

    pub(crate) fn from_parts_unchecked(columns: Vec<Vec<Label>>, arcs: Vec<Vec<Label>>) -> Self {
        CellTuple { columns, arcs }
    }

    /// The empty tuple for genus `g`.
    pub fn empty(genus: usize) -> Self {
        CellTuple { columns: Vec::new(), arcs: vec![Vec::new(); 2 * genus] }
    }

    pub fn genus(&self) -> usize {
        self.arcs.len() / 2
    }

    /// Number of columns `l`.
    pub fn length(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Label>] {
        &self.columns
    }

    /// All arcs in `U_1, V_1, .., U_g, V_g` order.
    pub fn arcs(&self) -> &[Vec<Label>] {
        &self.arcs
    }

    pub fn arc_u(&self, handle: usize) -> &[Label] {
        &self.arcs[2 * (handle - 1)]
    }

    pub fn arc_v(&self, handle: usize) -> &[Label] {
        &self.arcs[2 * (handle - 1) + 1]
    }

    fn label_iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.columns.iter().chain(self.arcs.iter()).flat_map(|v| v.iter().copied())
    }

    /// Sorted label set.
    pub fn labels(&self) -> Vec<Label> {
        let mut l: Vec<Label> = self.label_iter().collect();
        l.sort_unstable();
        l
    }

    pub fn weight(&self) -> usize {
        self.columns.iter().chain(self.arcs.iter()).map(Vec::len).sum()
    }

    /// Dimension of the open cell: weight plus length.
    pub fn degree(&self) -> usize {
        self.weight() + self.length()
    }

    pub fn is_pure_column(&self) -> bool {
        self.arcs.iter().all(Vec::is_empty)
    }

    pub fn is_pure_arc(&self) -> bool {
        self.columns.is_empty()
    }

    /// True when the labels are exactly `1..=weight`.
    pub fn is_standard(&self) -> bool {
        self.labels().iter().enumerate().all(|(i, &l)| l as usize == i + 1)
    }

    /// Points listed in orientation order: columns left to right (each bottom to
    /// top), then arcs in `U_1, V_1, ..` order.
    pub fn coordinate_order(&self) -> Vec<Label> {
        self.label_iter().collect()
    }

    pub fn relabeled(&self, f: impl Fn(Label) -> Label) -> CellTuple {
        let map = |v: &Vec<Label>| v.iter().map(|&l| f(l)).collect::<Vec<_>>();
        CellTuple { columns: self.columns.iter().map(map).collect(), arcs: self.arcs.iter().map(map).collect() }
    }

    /// Order-preserving relabelling onto `1..=weight`; returns the relabelled
    /// cell and the original label of each new label (index `k` holds the
    /// original of `k + 1`).
    pub fn standardize(&self) -> (CellTuple, Vec<Label>) {
        let originals = self.labels();
        let lookup: HashMap<Label, Label> =
            originals.iter().enumerate().map(|(i, &l)| (l, (i + 1) as Label)).collect();
        (self.relabeled(|l| lookup[&l]), originals)
    }
}

impl fmt::Display for CellTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = |v: &Vec<Label>| format!("({})", v.iter().join(","));
        let us = self.arcs.iter().step_by(2).map(group).join(",");
        let vs = self.arcs.iter().skip(1).step_by(2).map(group).join(",");
        write!(
            f,
            "l={};P={};U={};V={}",
            self.columns.len(),
            self.columns.iter().map(group).join(","),
            us,
            vs
        )
    }
}

fn parse_groups(s: &str) -> Result<Vec<Vec<Label>>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s;
    loop {
        let inner_start = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in `{s}`")))?;
        let close = inner_start.find(')').ok_or_else(|| Error::Parse(format!("unclosed group in `{s}`")))?;
        let inner = &inner_start[..close];
        let group = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse::<Label>().map_err(|e| Error::Parse(format!("bad label `{t}`: {e}"))))
                .collect::<Result<Vec<_>>>()?
        };
        out.push(group);
        rest = &inner_start[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(|| Error::Parse(format!("expected ',' between groups in `{s}`")))?;
    }
    Ok(out)
}

impl FromStr for CellTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut fields = BTreeMap::new();
        for part in s.split(';') {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("missing '=' in `{part}`")))?;
            fields.insert(k.trim().to_string(), v.to_string());
        }
        let get = |k: &str| fields.get(k).cloned().ok_or_else(|| Error::Parse(format!("missing field `{k}`")));
        let length: usize = get("l")?.trim().parse().map_err(|e| Error::Parse(format!("bad length: {e}")))?;
        let columns = parse_groups(&get("P")?)?;
        if columns.len() != length {
            return Err(Error::Parse(format!("l={length} but {} columns", columns.len())));
        }
        let us = parse_groups(&get("U")?)?;
        let vs = parse_groups(&get("V")?)?;
        CellTuple::new(columns, us, vs)
    }
}

/// Splits a cell into its column part and its arc part (on complementary label sets).
pub fn factorize_cell(t: &CellTuple) -> (CellTuple, CellTuple) {
    let g = t.genus();
    let e = CellTuple { columns: t.columns.clone(), arcs: vec![Vec::new(); 2 * g] };
    let x = CellTuple { columns: Vec::new(), arcs: t.arcs.clone() };
    (e, x)
}

/// Superposes a pure-column cell and a pure-arc cell on disjoint label sets.
pub fn product_cells(e_part: &CellTuple, x_part: &CellTuple) -> Result<CellTuple> {
    if !e_part.is_pure_column() {
        return Err(Error::InvalidCell(format!("{e_part} is not pure-column")));
    }
    if !x_part.is_pure_arc() {
        return Err(Error::InvalidCell(format!("{x_part} is not pure-arc")));
    }
    if e_part.genus() != x_part.genus() {
        return Err(Error::InvalidCell("genus mismatch".into()));
    }
    let el = e_part.labels();
    let shared: Vec<Label> = x_part.labels().into_iter().filter(|l| el.binary_search(l).is_ok()).collect();
    if !shared.is_empty() {
        return Err(Error::LabelsNotDisjoint(shared));
    }
    Ok(CellTuple { columns: e_part.columns.clone(), arcs: x_part.arcs.clone() })
}

/// Degree of a cell: weight plus number of columns.
pub fn cell_degree(t: &CellTuple) -> usize {
    t.degree()
}

/// Every arrangement of `labels` into nonempty ordered columns.
pub fn column_arrangements(labels: &[Label]) -> Vec<Vec<Vec<Label>>> {
    let m = labels.len();
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for perm in labels.iter().copied().permutations(m) {
        // bit i of `cuts` set: a column break after position i
        for cuts in 0u32..(1 << (m - 1)) {
            let mut cols = vec![Vec::new()];
            for (i, &l) in perm.iter().enumerate() {
                cols.last_mut().unwrap().push(l);
                if i + 1 < m && cuts & (1 << i) != 0 {
                    cols.push(Vec::new());
                }
            }
            out.push(cols);
        }
    }
    out
}

/// Every arrangement of `labels` as ordered sequences on `arc_count` arcs.
pub fn arc_arrangements(labels: &[Label], arc_count: usize) -> Vec<Vec<Vec<Label>>> {
    let m = labels.len();
    if arc_count == 0 {
        return if m == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let sizes = compositions_allowing_zero(m, arc_count);
    for perm in labels.iter().copied().permutations(m) {
        for split in &sizes {
            let mut arcs = Vec::with_capacity(arc_count);
            let mut at = 0;
            for &s in split {
                arcs.push(perm[at..at + s].to_vec());
                at += s;
            }
            out.push(arcs);
        }
    }
    out
}

fn compositions_allowing_zero(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions_allowing_zero(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All pure-arc cells on labels `1..=n`, in canonical order.
pub fn pure_arc_cells(params: SurfaceParams, n: usize) -> Vec<CellTuple> {
    let labels: Vec<Label> = (1..=n as Label).collect();
    let mut cells: Vec<CellTuple> = arc_arrangements(&labels, params.arc_count())
        .into_iter()
        .map(|arcs| CellTuple { columns: Vec::new(), arcs })
        .collect();
    cells.sort();
    cells
}

/// Ordered list of all cells for fixed `(n, g)`, grouped by degree.
#[derive(Clone, Debug)]
pub struct CellBasis {
    params: SurfaceParams,
    n: usize,
    cells: Vec<CellTuple>,
    index: HashMap<CellTuple, usize>,
    degree_ranges: BTreeMap<usize, Range<usize>>,
}

impl CellBasis {
    pub fn params(&self) -> SurfaceParams {
        self.params
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[CellTuple] {
        &self.cells
    }

    pub fn index_of(&self, t: &CellTuple) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn degree_range(&self, d: usize) -> Range<usize> {
        self.degree_ranges.get(&d).cloned().unwrap_or(0..0)
    }

    pub fn cells_in_degree(&self, d: usize) -> &[CellTuple] {
        &self.cells[self.degree_range(d)]
    }

    pub fn count_in_degree(&self, d: usize) -> usize {
        self.degree_range(d).len()
    }

    /// Index of a cell inside its degree block.
    pub fn position_in_degree(&self, t: &CellTuple) -> Option<usize> {
        let i = self.index_of(t)?;
        Some(i - self.degree_range(t.degree()).start)
    }

    /// Largest degree that can occur (`2n`).
    pub fn top_degree(&self) -> usize {
        2 * self.n
    }
}

/// Enumerates every cell on labels `1..=n` exactly once, in canonical order
/// `(degree, length, columns, arcs)`.
pub fn enumerate_cells(params: SurfaceParams, n: usize) -> CellBasis {
    assert!(n <= Label::MAX as usize, "too many points");
    let labels: Vec<Label> = (1..=n as Label).collect();
    let mut cells = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let (q, r): (Vec<Label>, Vec<Label>) = labels.iter().partition(|&&l| mask & (1 << (l - 1)) != 0);
        let arc_parts = arc_arrangements(&r, params.arc_count());
        if arc_parts.is_empty() {
            continue;
        }
        for cols in column_arrangements(&q) {
            for arcs in &arc_parts {
                cells.push(CellTuple { columns: cols.clone(), arcs: arcs.clone() });
            }
        }
    }
    cells.sort_by(|a, b| (a.degree(), a.length(), a).cmp(&(b.degree(), b.length(), b)));
    let index = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut degree_ranges: BTreeMap<usize, Range<usize>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        degree_ranges.entry(c.degree()).and_modify(|r| r.end = i + 1).or_insert(i..i + 1);
    }
    CellBasis { params, n, cells, index, degree_ranges }
}

/// Closed-form cell count: sum over the number `k` of arc points of
/// `C(n,k) * (column arrangements of n-k) * rising(2g, k)`.
pub fn expected_cell_count(params: SurfaceParams, n: usize) -> u128 {
    let factorial = |m: u128| (1..=m).product::<u128>();
    let binom = |a: u128, b: u128| factorial(a) / (factorial(b) * factorial(a - b));
    (0..=n as u128)
        .map(|k| {
            let m = n as u128 - k;
            let cols = if m == 0 { 1 } else { factorial(m) << (m - 1) };
            binom(n as u128, k) * cols * rising_factorial(2 * params.genus as u128, k as u32)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(s: &str) -> CellTuple {
        s.parse().unwrap()
    }

    #[test]
    fn small_enumerations() {
        let g1 = SurfaceParams::new(1);
        let b0 = enumerate_cells(g1, 0);
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.cells()[0].degree(), 0);

        let b1 = enumerate_cells(g1, 1);
        assert_eq!(b1.len(), 3);
        assert_eq!(b1.count_in_degree(2), 1);
        assert_eq!(b1.count_in_degree(1), 2);

        let b2 = enumerate_cells(g1, 2);
        assert_eq!(b2.len(), 14);
        let pure_col = b2.cells().iter().filter(|c| c.is_pure_column()).count();
        let pure_arc = b2.cells().iter().filter(|c| c.is_pure_arc()).count();
        assert_eq!((pure_col, pure_arc, 14 - pure_col - pure_arc), (4, 6, 4));
        assert_eq!(enumerate_cells(SurfaceParams::new(2), 3).len(), 252);
    }

    #[test]
    fn degrees() {
        assert_eq!(cell_degree(&CellTuple::empty(1)), 0);
        assert_eq!(cell_degree(&cell("l=1;P=(1);U=();V=()")), 2);
        assert_eq!(cell_degree(&cell("l=0;P=;U=(1,3);V=(2)")), 3);
    }

    #[test]
    fn factorization_examples() {
        let t = cell("l=1;P=(2);U=(1);V=()");
        let (e, x) = factorize_cell(&t);
        assert_eq!(e, cell("l=1;P=(2);U=();V=()"));
        assert_eq!(x, cell("l=0;P=;U=(1);V=()"));
        assert_eq!(product_cells(&e, &x).unwrap(), t);

        let e = cell("l=1;P=(1,3);U=(),();V=(),()");
        let x = cell("l=0;P=;U=(),();V=(),(2)");
        assert_eq!(product_cells(&e, &x).unwrap(), cell("l=1;P=(1,3);U=(),();V=(),(2)"));
        assert_eq!(
            product_cells(&CellTuple::empty(2), &CellTuple::empty(2)).unwrap(),
            CellTuple::empty(2)
        );
    }

    #[test]
    fn overlapping_labels_rejected() {
        let e = cell("l=1;P=(1);U=();V=()");
        let x = cell("l=0;P=;U=(1);V=()");
        assert!(matches!(product_cells(&e, &x), Err(Error::LabelsNotDisjoint(_))));
    }

    #[test]
    fn round_trip_all_cells_g2_n3() {
        let basis = enumerate_cells(SurfaceParams::new(2), 3);
        assert_eq!(basis.len(), 252);
        for t in basis.cells() {
            let (e, x) = factorize_cell(t);
            assert_eq!(&product_cells(&e, &x).unwrap(), t);
            assert_eq!(e.degree() + x.degree(), t.degree());
            assert_eq!(t.to_string().parse::<CellTuple>().unwrap(), *t);
        }
    }

    #[test]
    fn disc_has_no_arc_cells() {
        let b = enumerate_cells(SurfaceParams::new(0), 3);
        assert!(b.cells().iter().all(CellTuple::is_pure_column));
        assert_eq!(b.len(), 24);
    }

    #[test]
    fn serialization_format() {
        let t = CellTuple::new(vec![vec![1, 3]], vec![vec![], vec![]], vec![vec![], vec![2]]).unwrap();
        assert_eq!(t.to_string(), "l=1;P=(1,3);U=(),();V=(),(2)");
        assert_eq!(CellTuple::empty(0).to_string(), "l=0;P=;U=;V=");
    }

    #[test]
    fn invalid_cells() {
        assert!(CellTuple::new(vec![vec![]], vec![], vec![]).is_err());
        assert!(CellTuple::new(vec![vec![1]], vec![vec![1]], vec![vec![]]).is_err());
        assert!("l=2;P=(1);U=;V=".parse::<CellTuple>().is_err());
    }

    #[test]
    fn intervals() {
        let p = SurfaceParams::new(2);
        assert_eq!(p.interval(0), BoundaryInterval { handle: 1, kind: IntervalKind::I });
        assert_eq!(p.interval(6).arc(), 2);
        assert!(p.interval(6).reversed());
        assert_eq!(p.interval(7).arc(), 3);
        assert!(!p.interval(5).reversed());
    }
}
