//! Exact rational linear algebra.
//!
//! Everything here works over arbitrary-precision rationals. Rank and
//! determinant use fraction-free (Bareiss) elimination on integer rows, so
//! intermediate entries stay bounded by minors of the input. Reduced echelon
//! forms are computed with reduced fractions at every step. There is no
//! floating point in this module.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Dense rational vector.
pub type RatVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_vec(entries: &[i64]) -> RatVec {
    entries.iter().map(|&x| rat(x)).collect()
}

pub fn unit_vec(n: usize, i: usize) -> RatVec {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

pub fn ones_vec(n: usize) -> RatVec {
    vec![Rat::one(); n]
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn neg_vec(v: &[Rat]) -> RatVec {
    v.iter().map(|x| -x).collect()
}

/// `a * x + b * y`
pub fn lin_comb(a: &Rat, x: &[Rat], b: &Rat, y: &[Rat]) -> RatVec {
    x.iter().zip(y).map(|(xi, yi)| a * xi + b * yi).collect()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, crate::Error> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| crate::Error::Parse(format!("invalid rational {s:?}")))
}

/// Canonical text form: `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Scales the row by the lcm of its denominators, giving an integer row with
/// the same direction.
fn integer_row(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Scales a vector by a positive factor to the unique primitive integer
/// vector on the same ray: integer entries with gcd 1. The zero vector is
/// returned unchanged.
pub fn primitive(v: &[Rat]) -> RatVec {
    let ints = integer_row(v);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &g))
        .collect()
}

/// Like [`primitive`], but also fixes the sign so the first nonzero entry is
/// positive. Only meaningful for undirected data such as lineality
/// directions; applying it to a cone generator may flip the cone.
pub fn primitive_line(v: &[Rat]) -> RatVec {
    let mut p = primitive(v);
    if p.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        for x in &mut p {
            *x = -&*x;
        }
    }
    p
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "RatMat data length");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// The all-ones matrix `E`.
    pub fn ones(n: usize) -> Self {
        Self::new(n, n, vec![Rat::one(); n * n])
    }

    /// Builds a matrix from rows. `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: &[RatVec], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[RatVec], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<RatVec> = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(&rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RatVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<RatVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self::new(self.cols, self.rows, data)
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Rat]) -> RatVec {
        assert_eq!(self.cols, x.len(), "matrix-vector shape");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        RatMat::new(self.rows, self.cols, self.data.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RatMat::new(self.rows, self.cols, data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> RatVec {
        self.data.clone()
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = RatMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (r, pivots) = rref(&aug);
        if !pivots.iter().copied().eq(0..n) {
            return None;
        }
        let mut inv = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rat).collect())
            .collect();
        f.debug_struct("RatMat")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &rows)
            .finish()
    }
}

/// Fraction-free elimination of an integer matrix in place. Returns the
/// number of pivots and the row-swap parity. After the call, the last pivot
/// equals the determinant of the leading pivot minor (up to sign).
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> (usize, bool) {
    let m = a.len();
    let mut r = 0;
    let mut odd = false;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd = !odd;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                for x in &mut row[c + 1..cols] {
                    if !x.is_zero() {
                        *x = &*x * &pivot_row[c] / &prev;
                    }
                }
            } else {
                for j in c + 1..cols {
                    let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, odd)
}

/// Exact rank of a list of rows of length `cols`.
pub fn rank_of<'a, I>(rows: I, cols: usize) -> usize
where
    I: IntoIterator<Item = &'a RatVec>,
{
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| !is_zero_vec(r))
        .map(|r| integer_row(r))
        .collect();
    if a.is_empty() {
        return 0;
    }
    bareiss(&mut a, cols).0
}

/// Exact rank over the rationals.
pub fn rank(m: &RatMat) -> usize {
    let rows = m.row_vecs();
    rank_of(&rows, m.cols)
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &RatMat) -> Rat {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Rat::one();
    }
    // Row scaling by the row's denominator lcm multiplies det by that lcm.
    let mut scale = Rat::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        scale *= Rat::from_integer(lcm);
    }
    let (r, odd) = bareiss(&mut a, n);
    if r < n {
        return Rat::zero();
    }
    let det = Rat::from_integer(a[n - 1][n - 1].clone()) / scale;
    if odd {
        -det
    } else {
        det
    }
}

/// Reduced row echelon form and the pivot columns in increasing order.
pub fn rref(m: &RatMat) -> (RatMat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols {
                let v = &a[(i, j)] - &f * &a[(r, j)];
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of `{v : M v = 0}`, one vector per free column of the reduced
/// echelon form. Each vector has a 1 in its free column.
pub fn nullspace_basis(m: &RatMat) -> Vec<RatVec> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rat::zero(); m.cols];
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, f)];
            }
            v
        })
        .collect()
}

/// One solution of `M x = b` (free variables set to zero), or `None` when
/// the system is inconsistent.
///
/// Panics if `b.len() != M.rows()`.
pub fn solve(m: &RatMat, b: &[Rat]) -> Option<RatVec> {
    assert_eq!(m.rows, b.len(), "solve: rhs length must equal row count");
    let mut aug = RatMat::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); m.cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, m.cols)].clone();
    }
    Some(x)
}

/// Canonical basis of the row space: the nonzero rows of the reduced echelon
/// form, scaled to primitive integer vectors.
pub fn row_space_basis(rows: &[RatVec], cols: usize) -> Vec<RatVec> {
    let (r, pivots) = rref(&RatMat::from_rows(rows, cols));
    (0..pivots.len()).map(|i| primitive_line(r.row(i))).collect()
}
