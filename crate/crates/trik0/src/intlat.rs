//! Exact integer linear algebra: Smith normal form with unimodular
//! transforms, and the order of a vector's class in the abelian group
//! presented by a relation matrix.
//!
//! Everything runs over arbitrary-precision integers. Naive Euclidean
//! elimination suffers superexponential entry growth on the large dense
//! relation matrices here (I - M^T reaches dimension 558 and beyond), so
//! the production entry point [`quotient_structure`] works in two stages:
//! fraction-free (Bareiss) elimination for the rank and a bounding minor
//! D, then Smith elimination with every entry reduced modulo D. The
//! plain [`smith_normal_form`] keeps exact unimodular transforms and
//! serves as the small-matrix reference implementation.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector has length {got}, relation matrix has {want} columns")]
    DimensionMismatch { got: usize, want: usize },
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.data[i * c + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn mat_mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    let a = &self.data[i * self.cols + j];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination; exact.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = &num / &prev;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        sign * a[(n - 1) * n + (n - 1)].clone()
    }

    /// Triplet text with an explicit value column: header `rows cols nnz`,
    /// then `row col value` in row-major order.
    pub fn export_triplets(&self) -> String {
        let mut body = String::new();
        let mut nnz = 0usize;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    let _ = writeln!(body, "{i} {j} {v}");
                    nnz += 1;
                }
            }
        }
        format!("{} {} {nnz}\n{body}", self.rows, self.cols)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Pivot selection during elimination. Both strategies must produce the
/// same diagonal; this is itself a checked invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PivotStrategy {
    /// Smallest nonzero absolute value in the remaining submatrix.
    MinAbs,
    /// First nonzero entry in row-major order.
    FirstNonzero,
}

#[derive(Debug, Clone, Copy)]
pub struct SnfOptions {
    pub strategy: PivotStrategy,
    pub with_u: bool,
    pub with_v: bool,
}

impl Default for SnfOptions {
    fn default() -> Self {
        SnfOptions {
            strategy: PivotStrategy::MinAbs,
            with_u: true,
            with_v: true,
        }
    }
}

/// U * A * V = D with unimodular U, V; diagonal entries positive and
/// each dividing the next.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

impl SnfResult {
    /// Invariant factors greater than 1 (the torsion part).
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        self.diagonal
            .iter()
            .take(self.rank)
            .filter(|d| !d.is_one())
            .map(|d| d.to_biguint().expect("diagonal entries are positive"))
            .collect()
    }
}

/// Reduce x to the symmetric residue system modulo d > 0, i.e. into
/// (-d/2, d/2].
fn reduce_sym(x: &mut BigInt, d: &BigInt) {
    if x.is_zero() {
        return;
    }
    *x = &*x % d;
    if &x.abs() * 2u8 > *d {
        if x.is_negative() {
            *x += d;
        } else {
            *x -= d;
        }
    }
}

struct SnfCalc {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
    /// Extra columns that follow the row operations without entering the
    /// pivot search: tracking U*w for selected vectors w costs a vector
    /// each instead of the full (and explosively dense) U.
    aug: Vec<Vec<BigInt>>,
    /// When set, the elimination works in the lattice augmented by
    /// modulus * Z^n, so every entry (and tracker) may be reduced to its
    /// symmetric residue. This bounds intermediate entry growth, which is
    /// otherwise explosive on large dense eliminations.
    modulus: Option<BigInt>,
    strategy: PivotStrategy,
}

impl SnfCalc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let c = self.a.cols;
        for k in 0..c {
            self.a.data.swap(i * c + k, j * c + k);
        }
        if let Some(u) = &mut self.u {
            let uc = u.cols;
            for k in 0..uc {
                u.data.swap(i * uc + k, j * uc + k);
            }
        }
        for w in &mut self.aug {
            w.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let c = self.a.cols;
        for k in 0..self.a.rows {
            self.a.data.swap(k * c + i, k * c + j);
        }
        if let Some(v) = &mut self.v {
            let vc = v.cols;
            for k in 0..v.rows {
                v.data.swap(k * vc + i, k * vc + j);
            }
        }
    }

    /// row_i -= f * row_j
    fn row_sub(&mut self, i: usize, j: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        let c = self.a.cols;
        for k in 0..c {
            let d = f * &self.a.data[j * c + k];
            let e = &mut self.a.data[i * c + k];
            *e -= d;
            if let Some(m) = &self.modulus {
                reduce_sym(e, m);
            }
        }
        if let Some(u) = &mut self.u {
            let uc = u.cols;
            for k in 0..uc {
                let d = f * &u.data[j * uc + k];
                u.data[i * uc + k] -= d;
            }
        }
        for w in &mut self.aug {
            let d = f * &w[j];
            w[i] -= d;
            if let Some(m) = &self.modulus {
                reduce_sym(&mut w[i], m);
            }
        }
    }

    /// col_i -= f * col_j
    fn col_sub(&mut self, i: usize, j: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        let c = self.a.cols;
        for k in 0..self.a.rows {
            let d = f * &self.a.data[k * c + j];
            let e = &mut self.a.data[k * c + i];
            *e -= d;
            if let Some(m) = &self.modulus {
                reduce_sym(e, m);
            }
        }
        if let Some(v) = &mut self.v {
            let vc = v.cols;
            for k in 0..v.rows {
                let d = f * &v.data[k * vc + j];
                v.data[k * vc + i] -= d;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        let c = self.a.cols;
        for k in 0..c {
            let v = -std::mem::take(&mut self.a.data[i * c + k]);
            self.a.data[i * c + k] = v;
        }
        if let Some(u) = &mut self.u {
            let uc = u.cols;
            for k in 0..uc {
                let v = -std::mem::take(&mut u.data[i * uc + k]);
                u.data[i * uc + k] = v;
            }
        }
        for w in &mut self.aug {
            let v = -std::mem::take(&mut w[i]);
            w[i] = v;
        }
    }

    /// Quotient of the division minimizing |a - f*b|; keeps multipliers,
    /// and with them intermediate entry growth, as small as possible.
    fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
        let (mut f, r) = a.div_rem(b);
        if &r.abs() * 2u8 > b.abs() {
            if (r.is_negative()) == (b.is_negative()) {
                f += 1;
            } else {
                f -= 1;
            }
        }
        f
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (r, c) = (self.a.rows, self.a.cols);
        match self.strategy {
            PivotStrategy::FirstNonzero => {
                for i in t..r {
                    for j in t..c {
                        if !self.a.get(i, j).is_zero() {
                            return Some((i, j));
                        }
                    }
                }
                None
            }
            PivotStrategy::MinAbs => {
                let mut best: Option<(usize, usize)> = None;
                for i in t..r {
                    for j in t..c {
                        let v = self.a.get(i, j);
                        if v.is_zero() {
                            continue;
                        }
                        match best {
                            Some((bi, bj)) if self.a.get(bi, bj).abs() <= v.abs() => {}
                            _ => best = Some((i, j)),
                        }
                    }
                }
                best
            }
        }
    }

    fn process(&mut self) -> usize {
        let (r, c) = (self.a.rows, self.a.cols);
        let mut t = 0;
        while t < r.min(c) {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            'clear: loop {
                // Euclid down the column.
                for i in t + 1..r {
                    while !self.a.get(i, t).is_zero() {
                        let f = Self::div_nearest(self.a.get(i, t), self.a.get(t, t));
                        self.row_sub(i, t, &f);
                        if !self.a.get(i, t).is_zero() {
                            // remainder is smaller than the pivot
                            self.swap_rows(i, t);
                        }
                    }
                }
                // Euclid along the row; may repopulate the column.
                let mut dirty = false;
                for j in t + 1..c {
                    while !self.a.get(t, j).is_zero() {
                        let f = Self::div_nearest(self.a.get(t, j), self.a.get(t, t));
                        self.col_sub(j, t, &f);
                        if !self.a.get(t, j).is_zero() {
                            self.swap_cols(j, t);
                            dirty = true;
                        }
                    }
                }
                if !dirty || (t + 1..r).all(|i| self.a.get(i, t).is_zero()) {
                    break 'clear;
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        // Repair the divisibility chain on the diagonal. Doing this after
        // full diagonalization, rather than folding rows mid-elimination,
        // keeps the dense submatrix out of the gcd cascades and bounds
        // intermediate entry growth.
        self.diag_normalize(t);
        loop {
            let mut changed = false;
            for i in 0..t.saturating_sub(1) {
                if !(self.a.get(i + 1, i + 1) % self.a.get(i, i)).is_zero() {
                    self.fix_pair(i, i + 1);
                    self.diag_normalize(t);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        t
    }

    /// In modular mode, the lattice contains modulus * e_i for every
    /// coordinate, so each cleared pivot may be replaced by its gcd with
    /// the modulus; a residue of zero stands for the modulus itself.
    fn diag_normalize(&mut self, t: usize) {
        let Some(m) = self.modulus.clone() else {
            return;
        };
        for i in 0..t {
            let g = self.a.get(i, i).gcd(&m);
            self.a.set(i, i, g);
        }
    }

    /// Replace diagonal entries (d_i, d_j), i < j, by (gcd, lcm) via row
    /// and column operations confined to rows/columns i and j.
    fn fix_pair(&mut self, i: usize, j: usize) {
        let minus_one = -BigInt::one();
        self.row_sub(i, j, &minus_one); // row_i += row_j, so a[i][j] = d_j
        loop {
            while !self.a.get(i, j).is_zero() {
                let f = Self::div_nearest(self.a.get(i, j), self.a.get(i, i));
                self.col_sub(j, i, &f);
                if !self.a.get(i, j).is_zero() {
                    self.swap_cols(j, i);
                }
            }
            while !self.a.get(j, i).is_zero() {
                let f = Self::div_nearest(self.a.get(j, i), self.a.get(i, i));
                self.row_sub(j, i, &f);
                if !self.a.get(j, i).is_zero() {
                    self.swap_rows(j, i);
                }
            }
            if self.a.get(i, j).is_zero() {
                break;
            }
        }
        if self.a.get(i, i).is_negative() {
            self.negate_row(i);
        }
        if self.a.get(j, j).is_negative() {
            self.negate_row(j);
        }
    }
}

/// Deterministic Smith normal form. The returned diagonal entries are
/// positive, in a divisibility chain, and independent of the pivot
/// strategy; U and V track the row and column operations when requested.
pub fn smith_normal_form(a: &IntMatrix, opts: SnfOptions) -> SnfResult {
    let mut calc = SnfCalc {
        a: a.clone(),
        u: opts.with_u.then(|| IntMatrix::identity(a.rows())),
        v: opts.with_v.then(|| IntMatrix::identity(a.cols())),
        aug: Vec::new(),
        modulus: None,
        strategy: opts.strategy,
    };
    let rank = calc.process();
    let diagonal: Vec<BigInt> = (0..a.rows().min(a.cols()))
        .map(|i| calc.a.get(i, i).clone())
        .collect();
    debug_assert!((0..rank.saturating_sub(1))
        .all(|i| (&diagonal[i + 1] % &diagonal[i]).is_zero()));
    SnfResult {
        diagonal,
        rank,
        u: calc.u,
        v: calc.v,
    }
}

/// Rank of `a` over the rationals, the absolute value of a nonzero
/// rank-sized minor, and, for each appended vector, whether it lies in
/// the rational column span of `a`.
///
/// Fraction-free (Bareiss) elimination with full pivoting: every
/// intermediate entry is an exact minor of the input, so entry growth is
/// polynomially bounded — unlike Euclidean elimination, which can blow
/// up superexponentially on large dense matrices. The minor is the
/// product of the chosen pivot chain; min-abs pivoting keeps it small.
fn bareiss_rank_minor(a: &IntMatrix, vectors: &[Vec<BigInt>]) -> (usize, BigInt, Vec<bool>) {
    let n = a.rows();
    let m = a.cols();
    let cols = m + vectors.len();
    let mut w = vec![BigInt::zero(); n * cols];
    for i in 0..n {
        for j in 0..m {
            w[i * cols + j] = a.get(i, j).clone();
        }
        for (vi, v) in vectors.iter().enumerate() {
            w[i * cols + m + vi] = v[i].clone();
        }
    }
    let mut prev = BigInt::one();
    let mut used = vec![false; m];
    let mut rank = 0usize;
    while rank < n {
        let k = rank;
        let mut best: Option<(usize, usize)> = None;
        for j in 0..m {
            if used[j] {
                continue;
            }
            for i in k..n {
                let v = &w[i * cols + j];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if w[bi * cols + bj].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != k {
            for j in 0..cols {
                w.swap(k * cols + j, pi * cols + j);
            }
        }
        used[pj] = true;
        let p = w[k * cols + pj].clone();
        for i in k + 1..n {
            let fi = std::mem::take(&mut w[i * cols + pj]);
            for j in 0..cols {
                if j == pj || (j < m && used[j]) {
                    continue;
                }
                let num = &w[i * cols + j] * &p - &fi * &w[k * cols + j];
                w[i * cols + j] = num / &prev;
            }
        }
        prev = p;
        rank += 1;
    }
    let in_span = (0..vectors.len())
        .map(|vi| (rank..n).all(|i| w[i * cols + m + vi].is_zero()))
        .collect();
    (rank, prev.abs(), in_span)
}

/// The abelian group Z^cols / (row lattice of R): its invariant factors
/// and free rank, plus the order of the class of each given vector.
#[derive(Debug, Clone)]
pub struct QuotientStructure {
    /// d_1 | d_2 | ... | d_rank, including any leading 1s; the torsion
    /// subgroup is the direct sum of Z/d_i.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub free_rank: usize,
    pub orders: Vec<ElementOrder>,
}

impl QuotientStructure {
    /// Invariant factors greater than 1 (the torsion part).
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_biguint().expect("diagonal entries are positive"))
            .collect()
    }
}

pub fn quotient_structure(
    r: &IntMatrix,
    vectors: &[Vec<BigInt>],
) -> Result<QuotientStructure, LatticeError> {
    quotient_structure_with(r, vectors, PivotStrategy::MinAbs)
}

/// Invariant factors and element orders through a two-stage modular
/// computation that keeps every intermediate integer below a fixed bound:
///
/// 1. Bareiss elimination finds the rank r, a nonzero r x r minor D of
///    the relation lattice, and which vectors have torsion classes (those
///    in the rational row span). D is a multiple of the largest invariant
///    factor d_r, hence of the exponent of the torsion subgroup.
/// 2. Smith elimination runs on the lattice L + D*Z^n, whose Smith chain
///    is (d_1, ..., d_r, D, ..., D); every entry may therefore be reduced
///    mod D throughout. For a torsion class x, x lies in L + D*Z^n iff it
///    lies in L (write x = l + Dz: then [x] = D[z] is torsion, so [z] is
///    torsion and D annihilates it), so orders of torsion classes agree
///    in the two quotients and can be read off the modular Smith data.
pub fn quotient_structure_with(
    r: &IntMatrix,
    vectors: &[Vec<BigInt>],
    strategy: PivotStrategy,
) -> Result<QuotientStructure, LatticeError> {
    let n = r.cols();
    for w in vectors {
        if w.len() != n {
            return Err(LatticeError::DimensionMismatch {
                got: w.len(),
                want: n,
            });
        }
    }
    let a = r.transpose();
    let (rank, d, in_span) = bareiss_rank_minor(&a, vectors);
    let mut calc = SnfCalc {
        a: a.clone(),
        u: None,
        v: None,
        aug: vectors.to_vec(),
        modulus: Some(d.clone()),
        strategy,
    };
    for e in &mut calc.a.data {
        reduce_sym(e, &d);
    }
    for w in &mut calc.aug {
        for e in w.iter_mut() {
            reduce_sym(e, &d);
        }
    }
    let t = calc.process();
    debug_assert!(t <= rank);
    let mut diagonal: Vec<BigInt> = (0..t).map(|i| calc.a.get(i, i).clone()).collect();
    diagonal.extend(std::iter::repeat(d.clone()).take(rank - t));
    let orders = (0..vectors.len())
        .map(|vi| {
            if !in_span[vi] {
                return ElementOrder::Infinite;
            }
            let w = &calc.aug[vi];
            let mut order = BigInt::one();
            for (i, wi) in w.iter().enumerate() {
                let di = if i < t { calc.a.get(i, i) } else { &d };
                let g = di.gcd(wi);
                order = order.lcm(&(di / g));
            }
            ElementOrder::Finite(order.to_biguint().expect("order is positive"))
        })
        .collect();
    Ok(QuotientStructure {
        diagonal,
        rank,
        free_rank: n - rank,
        orders,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(k) => write!(f, "{k}"),
            ElementOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// Order of v in Z^cols / (row lattice of R): the class is torsion iff v
/// lies in the rational row span, and the order is read off the Smith
/// chain d_i and the transformed coordinates w_i as
/// lcm_i d_i / gcd(d_i, w_i).
pub fn element_order(r: &IntMatrix, v: &[BigInt]) -> Result<ElementOrder, LatticeError> {
    element_order_with(r, v, PivotStrategy::MinAbs)
}

pub fn element_order_with(
    r: &IntMatrix,
    v: &[BigInt],
    strategy: PivotStrategy,
) -> Result<ElementOrder, LatticeError> {
    let qs = quotient_structure_with(r, &[v.to_vec()], strategy)?;
    Ok(qs.orders.into_iter().next().expect("one vector given"))
}

/// v lies in the row lattice of R exactly when its class has order 1.
pub fn lattice_member(r: &IntMatrix, v: &[BigInt]) -> Result<bool, LatticeError> {
    Ok(element_order(r, v)? == ElementOrder::Finite(BigUint::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(rows: Vec<Vec<i64>>) -> Vec<BigInt> {
        let a = IntMatrix::from_rows(rows);
        let r = smith_normal_form(&a, SnfOptions::default());
        r.diagonal
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn snf_identity() {
        let d = snf_diag(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(d, vec![big(1), big(1), big(1)]);
    }

    #[test]
    fn snf_zero() {
        let a = IntMatrix::zero(2, 3);
        let r = smith_normal_form(&a, SnfOptions::default());
        assert_eq!(r.rank, 0);
        assert!(r.diagonal.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn snf_hand_example() {
        // gcd of entries 2, |det| = 8 => diag(2, 4)
        assert_eq!(snf_diag(vec![vec![2, 4], vec![6, 8]]), vec![big(2), big(4)]);
    }

    #[test]
    fn snf_reconstruction_and_unimodularity() {
        let a = IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let r = smith_normal_form(&a, SnfOptions::default());
        let (u, v) = (r.u.unwrap(), r.v.unwrap());
        let uav = u.mat_mul(&a).mat_mul(&v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { r.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(*uav.get(i, j), expect);
            }
        }
        assert_eq!(u.determinant().abs(), big(1));
        assert_eq!(v.determinant().abs(), big(1));
    }

    #[test]
    fn strategies_agree() {
        let a = IntMatrix::from_rows(vec![vec![6, 10, 15], vec![10, 15, 6], vec![15, 6, 10]]);
        let d1 = smith_normal_form(
            &a,
            SnfOptions {
                strategy: PivotStrategy::MinAbs,
                ..SnfOptions::default()
            },
        );
        let d2 = smith_normal_form(
            &a,
            SnfOptions {
                strategy: PivotStrategy::FirstNonzero,
                ..SnfOptions::default()
            },
        );
        assert_eq!(d1.diagonal, d2.diagonal);
    }

    #[test]
    fn order_of_direct_sum() {
        let r = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let order = element_order(&r, &[big(1), big(1)]).unwrap();
        assert_eq!(order, ElementOrder::Finite(BigUint::from(6u32)));
    }

    #[test]
    fn relation_rows_have_order_one() {
        let r = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        assert!(lattice_member(&r, &[big(1), big(2)]).unwrap());
        assert!(lattice_member(&r, &[big(4), big(6)]).unwrap());
        assert!(lattice_member(&r, &[big(0), big(0)]).unwrap());
    }

    #[test]
    fn infinite_order_in_free_quotient() {
        let r = IntMatrix::from_rows(vec![vec![1, 1]]);
        assert_eq!(
            element_order(&r, &[big(1), big(0)]).unwrap(),
            ElementOrder::Infinite
        );
    }

    #[test]
    fn non_member() {
        let r = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 2]]);
        assert!(!lattice_member(&r, &[big(1), big(1)]).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let r = IntMatrix::from_rows(vec![vec![2, 0]]);
        assert_eq!(
            element_order(&r, &[big(1)]).unwrap_err(),
            LatticeError::DimensionMismatch { got: 1, want: 2 }
        );
    }

    #[test]
    fn divisibility_chain() {
        let d = snf_diag(vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 9]]);
        for i in 0..2 {
            if !d[i + 1].is_zero() {
                assert!((&d[i + 1] % &d[i]).is_zero(), "{:?}", d);
            }
        }
    }

    #[test]
    fn triplet_export() {
        let a = IntMatrix::from_rows(vec![vec![1, 0], vec![-2, 3]]);
        assert_eq!(a.export_triplets(), "2 2 3\n0 0 1\n1 0 -2\n1 1 3\n");
    }
}
