//! Exact integer linear algebra: Smith normal form with unimodular
//! transforms, elementary ideals, and first homology of a stratifold graph.
//!
//! Everything here is exact. The public matrix type stores arbitrary
//! precision integers; the Smith reduction first runs a checked `i128` pass
//! and transparently redoes the computation in big integers if any
//! intermediate value would overflow, so no result ever depends on silent
//! wraparound.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::classify::EchinusParams;
use crate::graph::LabelledGraph;
use crate::presentation;

/// Dense row-major matrix of exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
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

    pub fn add_assign_entry(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] += v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let add = a * b;
                        out.add_assign_entry(i, j, &add);
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Row-major, space-separated debug dump.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    s.push(' ');
                }
                s.push_str(&self.get(i, j).to_string());
            }
            s.push('\n');
        }
        s
    }

    /// Determinant of a square matrix, by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// Exact integers the generic Smith reduction can run over. `i128` reports
/// would-be overflow; `BigInt` never fails.
trait ExactInt: Clone + Ord {
    fn zero_value() -> Self;
    fn is_zero_value(&self) -> bool;
    fn abs_value(&self) -> Option<Self>;
    fn neg_value(&self) -> Option<Self>;
    fn add_value(&self, other: &Self) -> Option<Self>;
    fn mul_value(&self, other: &Self) -> Option<Self>;
    /// Truncated division with remainder.
    fn div_rem_trunc(&self, other: &Self) -> (Self, Self);
    fn is_multiple_of_value(&self, other: &Self) -> bool;
}

impl ExactInt for i128 {
    fn zero_value() -> Self {
        0
    }
    fn is_zero_value(&self) -> bool {
        *self == 0
    }
    fn abs_value(&self) -> Option<Self> {
        self.checked_abs()
    }
    fn neg_value(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add_value(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul_value(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn div_rem_trunc(&self, other: &Self) -> (Self, Self) {
        (self / other, self % other)
    }
    fn is_multiple_of_value(&self, other: &Self) -> bool {
        if *other == 0 {
            *self == 0
        } else {
            self % other == 0
        }
    }
}

impl ExactInt for BigInt {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_value(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
    fn neg_value(&self) -> Option<Self> {
        Some(-self)
    }
    fn add_value(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul_value(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn div_rem_trunc(&self, other: &Self) -> (Self, Self) {
        Integer::div_rem(self, other)
    }
    fn is_multiple_of_value(&self, other: &Self) -> bool {
        if Zero::is_zero(other) {
            Zero::is_zero(self)
        } else {
            Zero::is_zero(&(self % other))
        }
    }
}

struct SnfWork<T> {
    rows: usize,
    cols: usize,
    m: Vec<T>,
    /// Row transform U (rows×rows) and column transform V (cols×cols),
    /// maintained so that U·M_original·V equals the current matrix.
    u: Option<Vec<T>>,
    v: Option<Vec<T>>,
}

impl<T: ExactInt> SnfWork<T> {
    fn at(&self, i: usize, j: usize) -> &T {
        &self.m[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.m.swap(a * self.cols + j, b * self.cols + j);
        }
        if let Some(u) = &mut self.u {
            for j in 0..self.rows {
                u.swap(a * self.rows + j, b * self.rows + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.m.swap(i * self.cols + a, i * self.cols + b);
        }
        if let Some(v) = &mut self.v {
            for i in 0..self.cols {
                v.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[a] += q * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &T) -> Option<()> {
        for j in 0..self.cols {
            let add = self.m[b * self.cols + j].mul_value(q)?;
            self.m[a * self.cols + j] = self.m[a * self.cols + j].add_value(&add)?;
        }
        if let Some(u) = &mut self.u {
            for j in 0..self.rows {
                let add = u[b * self.rows + j].mul_value(q)?;
                u[a * self.rows + j] = u[a * self.rows + j].add_value(&add)?;
            }
        }
        Some(())
    }

    /// col[a] += q * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &T) -> Option<()> {
        for i in 0..self.rows {
            let add = self.m[i * self.cols + b].mul_value(q)?;
            self.m[i * self.cols + a] = self.m[i * self.cols + a].add_value(&add)?;
        }
        if let Some(v) = &mut self.v {
            for i in 0..self.cols {
                let add = v[i * self.cols + b].mul_value(q)?;
                v[i * self.cols + a] = v[i * self.cols + a].add_value(&add)?;
            }
        }
        Some(())
    }

    fn negate_col(&mut self, j: usize) -> Option<()> {
        for i in 0..self.rows {
            self.m[i * self.cols + j] = self.m[i * self.cols + j].neg_value()?;
        }
        if let Some(v) = &mut self.v {
            for i in 0..self.cols {
                v[i * self.cols + j] = v[i * self.cols + j].neg_value()?;
            }
        }
        Some(())
    }

    /// Smallest nonzero |entry| in the submatrix at (k..,k..), row-major tie break.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(T, usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let x = self.at(i, j);
                if x.is_zero_value() {
                    continue;
                }
                let a = x.abs_value()?;
                match &best {
                    Some((b, _, _)) if *b <= a => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn reduce(&mut self) -> Option<()> {
        let n = self.rows.min(self.cols);
        for k in 0..n {
            let Some((pi, pj)) = self.pivot(k) else { break };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            loop {
                // Clear column k with Euclidean steps.
                let mut dirty = false;
                for i in k + 1..self.rows {
                    if self.at(i, k).is_zero_value() {
                        continue;
                    }
                    let (q, r) = self.at(i, k).div_rem_trunc(self.at(k, k));
                    let nq = q.neg_value()?;
                    self.add_row_multiple(i, k, &nq)?;
                    if !r.is_zero_value() {
                        // Remainder is smaller than the pivot: promote it.
                        self.swap_rows(k, i);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // Clear row k.
                for j in k + 1..self.cols {
                    if self.at(k, j).is_zero_value() {
                        continue;
                    }
                    let (q, r) = self.at(k, j).div_rem_trunc(self.at(k, k));
                    let nq = q.neg_value()?;
                    self.add_col_multiple(j, k, &nq)?;
                    if !r.is_zero_value() {
                        self.swap_cols(k, j);
                        dirty = true;
                        break;
                    }
                }
                if dirty {
                    continue;
                }
                if (k + 1..self.rows).any(|i| !self.at(i, k).is_zero_value()) {
                    continue;
                }
                // Divisibility: the pivot must divide the whole remaining block.
                let mut fixed = true;
                'scan: for i in k + 1..self.rows {
                    for j in k + 1..self.cols {
                        if !self.at(i, j).is_multiple_of_value(self.at(k, k)) {
                            let one = {
                                let (q, _) = self.at(k, k).div_rem_trunc(self.at(k, k));
                                q
                            };
                            self.add_row_multiple(k, i, &one)?;
                            fixed = false;
                            break 'scan;
                        }
                    }
                }
                if fixed {
                    break;
                }
            }
            if self.at(k, k) < &T::zero_value() {
                self.negate_col(k)?;
            }
        }
        Some(())
    }
}

/// Smith normal form: diagonal `d` with unimodular `u`, `v` such that
/// `u · m · v = d`, diagonal entries nonnegative with each dividing the next.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries in divisibility order.
    pub divisors: Vec<BigInt>,
}

fn to_i128(m: &IntMatrix) -> Option<Vec<i128>> {
    m.data.iter().map(|x| i128::try_from(x).ok()).collect()
}

fn run_snf(m: &IntMatrix, transforms: bool) -> (IntMatrix, Option<(IntMatrix, IntMatrix)>) {
    let rows = m.rows();
    let cols = m.cols();
    let ident = |n: usize| {
        let mut v = vec![0i128; n * n];
        for i in 0..n {
            v[i * n + i] = 1;
        }
        v
    };
    if let Some(data) = to_i128(m) {
        let mut work = SnfWork {
            rows,
            cols,
            m: data,
            u: transforms.then(|| ident(rows)),
            v: transforms.then(|| ident(cols)),
        };
        if work.reduce().is_some() {
            let pack = |v: Vec<i128>, r: usize, c: usize| {
                let mut out = IntMatrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        out.set(i, j, BigInt::from(v[i * c + j]));
                    }
                }
                out
            };
            let d = pack(work.m, rows, cols);
            let uv = work.u.map(|u| {
                (pack(u, rows, rows), pack(work.v.expect("v tracked with u"), cols, cols))
            });
            return (d, uv);
        }
    }
    // Arbitrary-precision fallback.
    let big_ident = |n: usize| {
        let mut v = vec![BigInt::zero(); n * n];
        for i in 0..n {
            v[i * n + i] = BigInt::one();
        }
        v
    };
    let mut work = SnfWork {
        rows,
        cols,
        m: m.data.clone(),
        u: transforms.then(|| big_ident(rows)),
        v: transforms.then(|| big_ident(cols)),
    };
    work.reduce().expect("big integer reduction cannot overflow");
    let pack = |v: Vec<BigInt>, r: usize, c: usize| IntMatrix { rows: r, cols: c, data: v };
    let d = pack(work.m, rows, cols);
    let uv = work
        .u
        .map(|u| (pack(u, rows, rows), pack(work.v.expect("v tracked with u"), cols, cols)));
    (d, uv)
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (d, uv) = run_snf(m, true);
    let (u, v) = uv.expect("transforms requested");
    let divisors = diagonal_divisors(&d);
    SnfResult { d, u, v, divisors }
}

/// Invariant factors only, skipping the transform bookkeeping.
pub fn snf_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let (d, _) = run_snf(m, false);
    diagonal_divisors(&d)
}

fn diagonal_divisors(d: &IntMatrix) -> Vec<BigInt> {
    (0..d.rows().min(d.cols()))
        .map(|i| d.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

/// Finitely generated abelian group in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Torsion divisors ≥ 2, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for d in &self.torsion {
            write!(f, " + Z_{}", d)?;
        }
        Ok(())
    }
}

/// Cokernel of a relation matrix (rows are relations over the column
/// generators) plus `extra_free` unconstrained generators.
pub fn cokernel(m: &IntMatrix, extra_free: usize) -> AbelianGroup {
    let divisors = snf_divisors(m);
    let free_rank = m.cols() - divisors.len() + extra_free;
    let torsion = divisors.into_iter().filter(|d| d > &BigInt::one()).collect();
    AbelianGroup { free_rank, torsion }
}

/// First homology of the stratifold of `g`, via the abelianized relation
/// matrix and Smith reduction.
pub fn h1(g: &LabelledGraph) -> AbelianGroup {
    let hm = presentation::h1_matrix(g);
    cokernel(&hm.matrix, hm.free_rank_extra)
}

/// Gcd of all (n−k)×(n−k) minors of `m`, where n = min(rows, cols); 0 when
/// every such minor vanishes, 1 when k = n. Equals the product of the first
/// n−k invariant factors (taking absent factors as 0).
///
/// Minor enumeration is exponential, so sizes above 8 are derived from the
/// Smith form instead; [`minor_gcd_direct`] stays available as the
/// independent route for cross-checking.
pub fn elementary_ideal_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let n = m.rows().min(m.cols());
    assert!(k <= n, "ideal index {k} out of range for min dimension {n}");
    let size = n - k;
    if size == 0 {
        return BigInt::one();
    }
    if n <= 8 {
        return minor_gcd_direct(m, size);
    }
    let divisors = snf_divisors(m);
    if divisors.len() < size {
        return BigInt::zero();
    }
    divisors.iter().take(size).product()
}

/// Gcd of all size×size minors by direct enumeration (exponential; the
/// independent oracle for [`elementary_ideal_gcd`]).
pub fn minor_gcd_direct(m: &IntMatrix, size: usize) -> BigInt {
    if size == 0 {
        return BigInt::one();
    }
    if size > m.rows().min(m.cols()) {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    let row_sets = combinations(m.rows(), size);
    let col_sets = combinations(m.cols(), size);
    for rs in &row_sets {
        for cs in &col_sets {
            let mut sub = IntMatrix::zeros(size, size);
            for (i, &r) in rs.iter().enumerate() {
                for (j, &c) in cs.iter().enumerate() {
                    sub.set(i, j, m.get(r, c).clone());
                }
            }
            acc = acc.gcd(&sub.determinant());
            if acc.is_one() {
                return acc;
            }
        }
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Relation matrix of the torsion of an echinus stratifold: the arm block
/// diag(2^{r_i}) stacked over the cycle block with 2^{p_i} on the diagonal
/// and −2^{q_i} on the wrapped superdiagonal. A negative orientation flips
/// the sign of the single closing entry, turning det B into
/// 2^{Σp} + 2^{Σq}.
pub fn echinus_matrix(params: &EchinusParams) -> IntMatrix {
    let n = params.len();
    assert!(n >= 1);
    let pow2 = |e: u32| BigInt::one() << e;
    let mut m = IntMatrix::zeros(2 * n, n);
    for (i, t) in params.triples.iter().enumerate() {
        m.set(i, i, pow2(t.r));
    }
    if n == 1 {
        let t = &params.triples[0];
        let closing = if params.orientable() {
            pow2(t.p) - pow2(t.q)
        } else {
            pow2(t.p) + pow2(t.q)
        };
        m.set(1, 0, closing);
        return m;
    }
    for (i, t) in params.triples.iter().enumerate() {
        m.set(n + i, i, pow2(t.p));
        let j = (i + 1) % n;
        let off = if i == n - 1 && !params.orientable() { pow2(t.q) } else { -pow2(t.q) };
        m.set(n + i, j, off);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{EchinusParams, EchinusTriple};
    use crate::graph::Sign;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check_snf(mat: &IntMatrix) -> SnfResult {
        let snf = smith_normal_form(mat);
        assert_eq!(snf.u.mul(mat).mul(&snf.v), snf.d, "U·M·V must equal D");
        assert!(snf.d.is_diagonal());
        for w in snf.divisors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisor chain violated: {:?}", snf.divisors);
        }
        for d in &snf.divisors {
            assert!(d > &BigInt::zero());
        }
        assert_eq!(snf.u.determinant().abs(), BigInt::one());
        assert_eq!(snf.v.determinant().abs(), BigInt::one());
        snf
    }

    #[test]
    fn identity_snf() {
        let snf = check_snf(&IntMatrix::identity(2));
        assert_eq!(snf.divisors, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn column_two_one() {
        let snf = check_snf(&m(&[vec![2], vec![1]]));
        assert_eq!(snf.divisors, vec![BigInt::one()]);
        assert_eq!(elementary_ideal_gcd(&m(&[vec![2], vec![1]]), 0), BigInt::one());
    }

    #[test]
    fn already_diagonal() {
        let snf = check_snf(&m(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(snf.divisors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn divisor_chain_is_enforced() {
        let snf = check_snf(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.divisors, vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn elementary_ideals_of_diag_2_6() {
        let mat = m(&[vec![2, 0], vec![0, 6]]);
        assert_eq!(elementary_ideal_gcd(&mat, 0), BigInt::from(12));
        assert_eq!(elementary_ideal_gcd(&mat, 1), BigInt::from(2));
        assert_eq!(elementary_ideal_gcd(&mat, 2), BigInt::one());
    }

    #[test]
    fn minor_gcd_matches_divisor_products() {
        let mat = m(&[vec![6, 4, 2], vec![4, 2, 0], vec![2, 0, 8]]);
        let divisors = snf_divisors(&mat);
        for k in 0..=3usize {
            let size = 3 - k;
            let expect: BigInt = if size <= divisors.len() {
                divisors.iter().take(size).product()
            } else {
                BigInt::zero()
            };
            assert_eq!(minor_gcd_direct(&mat, size), expect, "k = {k}");
        }
    }

    #[test]
    fn zero_dimension_matrices() {
        let empty = IntMatrix::zeros(1, 0);
        assert!(snf_divisors(&empty).is_empty());
        assert!(cokernel(&empty, 0).is_trivial());
        let empty = IntMatrix::zeros(0, 2);
        assert_eq!(cokernel(&empty, 0).free_rank, 2);
    }

    #[test]
    fn echinus_matrix_e101() {
        let params = EchinusParams::new(vec![EchinusTriple { p: 1, q: 0, r: 1 }], Sign::Plus);
        let mat = echinus_matrix(&params);
        assert_eq!(mat, m(&[vec![2], vec![1]]));
        assert_eq!(elementary_ideal_gcd(&mat, 0), BigInt::one());
    }

    #[test]
    fn echinus_matrix_single_branch_determinant() {
        for (p, q) in [(2u32, 0u32), (3, 1), (0, 2)] {
            let params = EchinusParams::new(vec![EchinusTriple { p, q, r: 1 }], Sign::Plus);
            let mat = echinus_matrix(&params);
            let det_b = mat.get(1, 0).clone();
            assert_eq!(det_b, BigInt::from((1i64 << p) - (1i64 << q)));
        }
    }

    #[test]
    fn echinus_matrix_det_blocks() {
        // det A = 2^{Σr}; det B = 2^{Σp} − 2^{Σq} (orientable).
        let params = EchinusParams::new(
            vec![
                EchinusTriple { p: 1, q: 1, r: 1 },
                EchinusTriple { p: 1, q: 1, r: 1 },
                EchinusTriple { p: 2, q: 0, r: 3 },
            ],
            Sign::Plus,
        );
        let mat = echinus_matrix(&params);
        let n = 3;
        let mut a = IntMatrix::zeros(n, n);
        let mut b = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, mat.get(i, j).clone());
                b.set(i, j, mat.get(n + i, j).clone());
            }
        }
        assert_eq!(a.determinant(), BigInt::from(1i64 << 5));
        assert_eq!(b.determinant(), BigInt::from((1i64 << 4) - (1i64 << 2)));
    }

    #[test]
    fn echinus_matrix_nonorientable_det() {
        let params = EchinusParams::new(
            vec![EchinusTriple { p: 1, q: 1, r: 1 }, EchinusTriple { p: 1, q: 1, r: 1 }],
            Sign::Minus,
        );
        let mat = echinus_matrix(&params);
        let mut b = IntMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                b.set(i, j, mat.get(2 + i, j).clone());
            }
        }
        assert_eq!(b.determinant(), BigInt::from((1i64 << 2) + (1i64 << 2)));
    }

    #[test]
    fn e111_has_nontrivial_torsion() {
        // det B = 2² − 2² = 0: stacked matrix keeps torsion, so H1 ≠ Z.
        let params = EchinusParams::new(
            vec![EchinusTriple { p: 1, q: 1, r: 1 }; 1],
            Sign::Plus,
        );
        let mat = echinus_matrix(&params);
        let group = cokernel(&mat, 1);
        assert!(!group.is_infinite_cyclic());
    }

    #[test]
    fn big_exponents_fall_back_to_arbitrary_precision() {
        let params = EchinusParams::new(vec![EchinusTriple { p: 140, q: 0, r: 131 }], Sign::Plus);
        let mat = echinus_matrix(&params);
        let divisors = snf_divisors(&mat);
        assert_eq!(divisors, vec![BigInt::one()]);
    }

    #[test]
    fn abelian_group_display() {
        let g = AbelianGroup { free_rank: 1, torsion: vec![BigInt::from(3)] };
        assert_eq!(g.to_string(), "Z^1 + Z_3");
        assert_eq!(AbelianGroup::trivial().to_string(), "Z^0");
    }
}
