//! Smith normal form over the integers.
//!
//! Two entry points: [`smith_normal_form`] runs dense elimination and records the
//! unimodular transforms, and [`elementary_divisors`] first strips unit pivots
//! sparsely (Markowitz order) and finishes the small remainder densely. Both try
//! checked `i64` arithmetic first and redo the work over `BigInt` on overflow.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use super::coef::Coef;
use super::sparse::SparseIntMatrix;

/// `left * m * right = diag(diagonal, 0, ..)`, with `d_1 | d_2 | ..` all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub left: SparseIntMatrix,
    pub left_inverse: SparseIntMatrix,
    pub right: SparseIntMatrix,
    pub right_inverse: SparseIntMatrix,
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SnfResult {
    let run = |track| {
        let small = m.to_dense::<i64>().and_then(|a| DenseSnf::run(a, m.rows(), m.cols(), track));
        match small {
            Some(s) => s.into_big(),
            None => {
                let a = m.to_dense::<BigInt>().expect("BigInt conversion is total");
                DenseSnf::run(a, m.rows(), m.cols(), track).expect("BigInt arithmetic cannot overflow")
            }
        }
    };
    let s = run(true);
    let dense = |d: &Option<Vec<Vec<BigInt>>>, n: usize| SparseIntMatrix::from_dense(d.as_ref().unwrap(), n);
    SnfResult {
        diagonal: s.diagonal(),
        rank: s.rank,
        left: dense(&s.l, m.rows()),
        left_inverse: dense(&s.linv, m.rows()),
        right: dense(&s.r, m.cols()),
        right_inverse: dense(&s.rinv, m.cols()),
    }
}

/// The nonzero invariant factors of `m` (ones included), without transforms.
pub fn elementary_divisors(m: &SparseIntMatrix) -> Vec<BigInt> {
    if let Some(d) = sparse_divisors::<i64>(m) {
        return d;
    }
    sparse_divisors::<BigInt>(m).expect("BigInt arithmetic cannot overflow")
}

pub fn rank(m: &SparseIntMatrix) -> usize {
    elementary_divisors(m).len()
}

/// Dense elimination state. `l * a0 * r = a` holds throughout when tracking.
pub(crate) struct DenseSnf<T> {
    pub a: Vec<Vec<T>>,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub l: Option<Vec<Vec<T>>>,
    pub linv: Option<Vec<Vec<T>>>,
    pub r: Option<Vec<Vec<T>>>,
    pub rinv: Option<Vec<Vec<T>>>,
}

fn identity<T: Coef>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::unit() } else { T::nil() }).collect()).collect()
}

fn add_row<T: Coef>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Option<()> {
    for c in 0..m[i].len() {
        if !m[j][c].is_nil() {
            m[i][c] = m[i][c].add(&q.mul(&m[j][c])?)?;
        }
    }
    Some(())
}

fn add_col<T: Coef>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Option<()> {
    for row in m.iter_mut() {
        if !row[j].is_nil() {
            row[i] = row[i].add(&q.mul(&row[j])?)?;
        }
    }
    Some(())
}

fn swap_cols<T>(m: &mut [Vec<T>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

impl<T: Coef> DenseSnf<T> {
    pub fn run(a: Vec<Vec<T>>, rows: usize, cols: usize, track: bool) -> Option<Self> {
        let mut s = DenseSnf {
            a,
            rows,
            cols,
            rank: 0,
            l: track.then(|| identity(rows)),
            linv: track.then(|| identity(rows)),
            r: track.then(|| identity(cols)),
            rinv: track.then(|| identity(cols)),
        };
        s.eliminate()?;
        Some(s)
    }

    /// row_i += q * row_j
    fn row_op(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        add_row(&mut self.a, i, j, q)?;
        if let (Some(l), Some(linv)) = (self.l.as_mut(), self.linv.as_mut()) {
            add_row(l, i, j, q)?;
            add_col(linv, j, i, &q.neg()?)?;
        }
        Some(())
    }

    /// col_i += q * col_j
    fn col_op(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        add_col(&mut self.a, i, j, q)?;
        if let (Some(r), Some(rinv)) = (self.r.as_mut(), self.rinv.as_mut()) {
            add_col(r, i, j, q)?;
            add_row(rinv, j, i, &q.neg()?)?;
        }
        Some(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let (Some(l), Some(linv)) = (self.l.as_mut(), self.linv.as_mut()) {
            l.swap(i, j);
            swap_cols(linv, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let (Some(r), Some(rinv)) = (self.r.as_mut(), self.rinv.as_mut()) {
            swap_cols(r, i, j);
            rinv.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for v in self.a[i].iter_mut() {
            *v = v.neg()?;
        }
        if let (Some(l), Some(linv)) = (self.l.as_mut(), self.linv.as_mut()) {
            for v in l[i].iter_mut() {
                *v = v.neg()?;
            }
            for row in linv.iter_mut() {
                row[i] = row[i].neg()?;
            }
        }
        Some(())
    }

    /// Least-magnitude nonzero entry of the active block, ties broken by the
    /// fewest nonzeros in its row and column.
    #[allow(clippy::needless_range_loop)]
    fn choose_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut row_nnz = vec![0usize; self.rows];
        let mut col_nnz = vec![0usize; self.cols];
        let mut best_mag = u64::MAX;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if !v.is_nil() {
                    row_nnz[i] += 1;
                    col_nnz[j] += 1;
                    best_mag = best_mag.min(v.magnitude());
                }
            }
        }
        if best_mag == u64::MAX {
            return None;
        }
        let mut best: Option<((usize, usize), usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if !v.is_nil() && v.magnitude() == best_mag {
                    let cost = row_nnz[i] + col_nnz[j];
                    if best.is_none_or(|(_, c)| cost < c) {
                        best = Some(((i, j), cost));
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn eliminate(&mut self) -> Option<()> {
        let steps = self.rows.min(self.cols);
        for t in 0..steps {
            let Some((pi, pj)) = self.choose_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_nil() {
                        let q = self.a[i][t].div_floor(&self.a[t][t])?;
                        self.row_op(i, t, &q.neg()?)?;
                        clean &= self.a[i][t].is_nil();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_nil() {
                        let q = self.a[t][j].div_floor(&self.a[t][t])?;
                        self.col_op(j, t, &q.neg()?)?;
                        clean &= self.a[t][j].is_nil();
                    }
                }
                if !clean {
                    // move the smallest remainder into the pivot and sweep again
                    let mut best = (t, t, self.a[t][t].magnitude());
                    for i in t + 1..self.rows {
                        let m = self.a[i][t].magnitude();
                        if m != 0 && m < best.2 {
                            best = (i, t, m);
                        }
                    }
                    for j in t + 1..self.cols {
                        let m = self.a[t][j].magnitude();
                        if m != 0 && m < best.2 {
                            best = (t, j, m);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                if self.a[t][t].is_unit() {
                    break;
                }
                let mut offender = None;
                'scan: for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !self.a[i][j].is_nil() && !self.a[i][j].rem_floor(&self.a[t][t])?.is_nil() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.row_op(t, i, &T::unit())?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            self.rank = t + 1;
        }
        Some(())
    }

    pub fn diagonal_coef(&self) -> Vec<T> {
        (0..self.rank).map(|t| self.a[t][t].clone()).collect()
    }
}

impl DenseSnf<i64> {
    fn into_big(self) -> DenseSnf<BigInt> {
        let conv = |m: Vec<Vec<i64>>| m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        DenseSnf {
            a: conv(self.a),
            rows: self.rows,
            cols: self.cols,
            rank: self.rank,
            l: self.l.map(conv),
            linv: self.linv.map(conv),
            r: self.r.map(conv),
            rinv: self.rinv.map(conv),
        }
    }
}

impl DenseSnf<BigInt> {
    fn diagonal(&self) -> Vec<BigInt> {
        self.diagonal_coef()
    }
}

/// Sparse unit-pivot elimination followed by dense SNF of what is left. Pivot
/// columns are taken shortest first; within a column the unit entry in the
/// shortest row wins.
fn sparse_divisors<T: Coef>(m: &SparseIntMatrix) -> Option<Vec<BigInt>> {
    let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); m.rows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, c, v) in m.iter() {
        rows[r].insert(c, T::from_big(v)?);
        cols[c].insert(r);
    }
    let mut by_len: BTreeSet<(usize, usize)> = (0..m.cols()).filter(|&c| !cols[c].is_empty()).map(|c| (cols[c].len(), c)).collect();
    // columns known to hold no unit entry since they last changed
    let mut unitless: BTreeSet<usize> = BTreeSet::new();
    let mut unit_pivots = 0usize;
    loop {
        let mut pick = None;
        for &(_, c) in &by_len {
            if unitless.contains(&c) {
                continue;
            }
            let best = cols[c].iter().filter(|&&r| rows[r][&c].is_unit()).min_by_key(|&&r| (rows[r].len(), r));
            match best {
                Some(&r) => {
                    pick = Some((r, c));
                    break;
                }
                None => {
                    unitless.insert(c);
                }
            }
        }
        let Some((p, c)) = pick else { break };
        let pivot_row = std::mem::take(&mut rows[p]);
        let pv = pivot_row[&c].clone();
        let mut touched: BTreeSet<usize> = pivot_row.keys().copied().collect();
        for cc in &touched {
            by_len.remove(&(cols[*cc].len(), *cc));
            cols[*cc].remove(&p);
        }
        let others: Vec<usize> = cols[c].iter().copied().collect();
        for i in others {
            // the pivot is a unit, so a_ic / pv = a_ic * pv
            let f = rows[i][&c].mul(&pv)?;
            for (&cc, pvv) in &pivot_row {
                let cur = rows[i].get(&cc).cloned().unwrap_or_else(T::nil);
                let nv = cur.sub(&f.mul(pvv)?)?;
                if nv.is_nil() {
                    rows[i].remove(&cc);
                    cols[cc].remove(&i);
                } else {
                    rows[i].insert(cc, nv);
                    cols[cc].insert(i);
                }
            }
        }
        debug_assert!(cols[c].is_empty());
        touched.remove(&c);
        for cc in touched {
            unitless.remove(&cc);
            if !cols[cc].is_empty() {
                by_len.insert((cols[cc].len(), cc));
            }
        }
        unit_pivots += 1;
    }
    let rem_rows: Vec<usize> = (0..m.rows()).filter(|&r| !rows[r].is_empty()).collect();
    let rem_cols: Vec<usize> = (0..m.cols()).filter(|&c| !cols[c].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = rem_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = vec![vec![T::nil(); rem_cols.len()]; rem_rows.len()];
    for (ri, &r) in rem_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            dense[ri][col_pos[c]] = v.clone();
        }
    }
    let s = DenseSnf::run(dense, rem_rows.len(), rem_cols.len(), false)?;
    let mut out = vec![BigInt::from(1); unit_pivots];
    out.extend(s.diagonal_coef().iter().map(Coef::to_big));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_transforms(m: &SparseIntMatrix) -> SnfResult {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        for (r, c, v) in d.iter() {
            assert_eq!(r, c);
            assert_eq!(v, &s.diagonal[r]);
        }
        assert_eq!(d.nnz(), s.rank);
        assert!(s.left.mul(&s.left_inverse).unwrap().is_identity());
        assert!(s.right.mul(&s.right_inverse).unwrap().is_identity());
        for w in s.diagonal.windows(2) {
            assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let m = SparseIntMatrix::from_triplets(2, 2, [(0, 0, 2), (1, 1, 3)]);
        let s = check_transforms(&m);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(elementary_divisors(&m), s.diagonal);
    }

    #[test]
    fn zero_and_identity() {
        let z = SparseIntMatrix::new(3, 2);
        let s = check_transforms(&z);
        assert!(s.diagonal.is_empty());
        assert_eq!(s.rank, 0);
        let s = check_transforms(&SparseIntMatrix::identity(4));
        assert_eq!(s.rank, 4);
        assert!(s.diagonal.iter().all(|d| d == &BigInt::from(1)));
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 3;
        let m = SparseIntMatrix::from_triplets(2, 2, [(0, 0, big), (0, 1, big - 1), (1, 0, big + 1), (1, 1, big)]);
        let s = check_transforms(&m);
        assert_eq!(s.rank, 2);
        assert_eq!(elementary_divisors(&m), s.diagonal);
    }
}
