//! Exact rank and cohomology computations over prime fields and the rationals.
//!
//! Every matrix assembled in this crate has integer entries (incidence signs
//! and 0/1 projections), so [`ExactMatrix`] stores `i64` entries and each rank
//! computation reduces them into the requested field. Over `F_p` elimination
//! runs on least non-negative residues; over `Q` it runs fraction-free on
//! integer rows that are kept primitive (content divided out), first in
//! checked `i64` and, on overflow, again in arbitrary precision.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unrecognized field {0:?}; expected `q` or `p=<prime>`")]
    BadFieldSyntax(String),
    #[error("d_{{{}}} ∘ d_{{{}}} is nonzero", .n + 1, .n)]
    NotAComplex { n: usize },
    #[error("shape mismatch at term {n}: {detail}")]
    ShapeMismatch { n: usize, detail: String },
}

/// Coefficient field: `F_p` for a prime `p < 2^31`, or `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rationals => 0,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "p={p}"),
            FieldSpec::Rationals => f.write_str("q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let p = t
            .strip_prefix("p=")
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| LinalgError::BadFieldSyntax(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = LinalgError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend_from_slice(r.as_ref());
        }
        ExactMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Integer product `self · rhs`, accumulated in `i128`.
    pub fn mul_wide(&self, rhs: &ExactMatrix) -> Vec<i128> {
        assert_eq!(self.cols, rhs.rows, "product shape mismatch");
        let mut out = vec![0i128; self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let row = rhs.row(k);
                let acc = &mut out[r * rhs.cols..(r + 1) * rhs.cols];
                for (o, &b) in acc.iter_mut().zip(row) {
                    if b != 0 {
                        *o += a as i128 * b as i128;
                    }
                }
            }
        }
        out
    }

    /// Product `self · rhs`. Panics if an entry overflows `i64`.
    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let data = self
            .mul_wide(rhs)
            .into_iter()
            .map(|v| i64::try_from(v).expect("matrix product overflow"))
            .collect();
        ExactMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    /// Matrix with rows and columns permuted: entry `(r, c)` moves to
    /// `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> ExactMatrix {
        let mut out = Self::zeros(self.rows, self.cols);
        for (r, &pr) in row_perm.iter().enumerate() {
            for (c, &pc) in col_perm.iter().enumerate() {
                out.set(pr, pc, self.get(r, c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

fn vanishes_in(v: i128, field: FieldSpec) -> bool {
    match field {
        FieldSpec::Prime(p) => v.rem_euclid(p as i128) == 0,
        FieldSpec::Rationals => v == 0,
    }
}

/// Exact rank over `field`.
pub fn rank(a: &ExactMatrix, field: FieldSpec) -> usize {
    if a.rows == 0 || a.cols == 0 {
        return 0;
    }
    match field {
        FieldSpec::Prime(p) => rank_mod_p(a, p as u64),
        FieldSpec::Rationals => {
            rank_fraction_free::<i64>(a).unwrap_or_else(|| rank_fraction_free::<BigInt>(a).unwrap())
        }
    }
}

pub fn kernel_dim(a: &ExactMatrix, field: FieldSpec) -> usize {
    a.cols - rank(a, field)
}

pub fn cokernel_dim(a: &ExactMatrix, field: FieldSpec) -> usize {
    a.rows - rank(a, field)
}

fn rank_mod_p(a: &ExactMatrix, p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = (0..a.rows)
        .map(|r| {
            a.row(r)
                .iter()
                .map(|&v| v.rem_euclid(p as i64) as u64)
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..a.cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][c], p);
        for v in rows[rank][c..].iter_mut() {
            *v = *v * inv % p;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let support: Vec<usize> = (c..a.cols).filter(|&j| prow[j] != 0).collect();
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for &j in &support {
                row[j] = (row[j] + p - f * prow[j] % p) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Integer arithmetic for fraction-free elimination; `None` signals overflow.
trait EliminationInt: Clone + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `a * x - b * y`
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    /// Non-negative gcd.
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
}

impl EliminationInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), other.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a as i64
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl EliminationInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        num_traits::One::is_one(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        num_integer::Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

/// Rank over `Q` by integer row operations `row <- a*row - b*pivot_row`
/// with a positive pivot, dividing each updated row by its content.
fn rank_fraction_free<T: EliminationInt>(a: &ExactMatrix) -> Option<usize> {
    let mut rows: Vec<Vec<T>> = (0..a.rows)
        .map(|r| a.row(r).iter().map(|&v| T::from_i64(v)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..a.cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        if rows[rank][c].is_negative() {
            for v in rows[rank][c..].iter_mut() {
                *v = v.neg()?;
            }
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = &prow[c];
        let support: Vec<usize> = (c..a.cols).filter(|&j| !prow[j].is_zero()).collect();
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let (pm, fm) = (pv.div_exact(&g), row[c].div_exact(&g));
            if pm.is_one() {
                for &j in &support {
                    row[j] = T::cross(&pm, &row[j], &fm, &prow[j])?;
                }
            } else {
                for j in c..a.cols {
                    if !(row[j].is_zero() && prow[j].is_zero()) {
                        row[j] = T::cross(&pm, &row[j], &fm, &prow[j])?;
                    }
                }
                let mut content = T::from_i64(0);
                for v in row[c..].iter().filter(|v| !v.is_zero()) {
                    content = content.gcd(v);
                    if content.is_one() {
                        break;
                    }
                }
                if !content.is_zero() && !content.is_one() {
                    for v in row[c..].iter_mut().filter(|v| !v.is_zero()) {
                        *v = v.div_exact(&content);
                    }
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Some(rank)
}

/// Finite cochain complex `C^0 → C^1 → ... → C^N` with `maps[n]: C^n → C^{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    maps: Vec<ExactMatrix>,
}

impl CochainComplex {
    /// `maps.len()` must be `dims.len() - 1` (or zero when `dims` is empty),
    /// and `maps[n]` must be `dims[n+1] × dims[n]`.
    pub fn new(dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<Self, LinalgError> {
        if maps.len() + 1 != dims.len().max(1) {
            return Err(LinalgError::ShapeMismatch {
                n: maps.len(),
                detail: format!("{} terms but {} maps", dims.len(), maps.len()),
            });
        }
        for (n, d) in maps.iter().enumerate() {
            if d.cols() != dims[n] || d.rows() != dims[n + 1] {
                return Err(LinalgError::ShapeMismatch {
                    n,
                    detail: format!(
                        "map is {}x{}, expected {}x{}",
                        d.rows(),
                        d.cols(),
                        dims[n + 1],
                        dims[n]
                    ),
                });
            }
        }
        Ok(CochainComplex { dims, maps })
    }

    /// Term dimensions inferred from the maps (at least one map required).
    pub fn from_maps(maps: Vec<ExactMatrix>) -> Result<Self, LinalgError> {
        let Some(first) = maps.first() else {
            return Err(LinalgError::ShapeMismatch {
                n: 0,
                detail: "no maps to infer term dimensions from".into(),
            });
        };
        let mut dims = vec![first.cols()];
        dims.extend(maps.iter().map(|d| d.rows()));
        Self::new(dims, maps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[ExactMatrix] {
        &self.maps
    }

    /// Checks `d_{n+1} · d_n = 0` over `field` for every `n`.
    pub fn check(&self, field: FieldSpec) -> Result<(), LinalgError> {
        for n in 0..self.maps.len().saturating_sub(1) {
            let prod = self.maps[n + 1].mul_wide(&self.maps[n]);
            if !prod.iter().all(|&v| vanishes_in(v, field)) {
                return Err(LinalgError::NotAComplex { n });
            }
        }
        Ok(())
    }

    /// `dim H^n = dim ker d_n − rank d_{n−1}`, after verifying `d ∘ d = 0`.
    pub fn cohomology(&self, field: FieldSpec) -> Result<Vec<usize>, LinalgError> {
        self.check(field)?;
        Ok(self.cohomology_unchecked(field))
    }

    pub(crate) fn cohomology_unchecked(&self, field: FieldSpec) -> Vec<usize> {
        let ranks: Vec<usize> = self.maps.iter().map(|d| rank(d, field)).collect();
        (0..self.dims.len())
            .map(|n| {
                let out = if n < ranks.len() { ranks[n] } else { 0 };
                let inc = if n > 0 { ranks[n - 1] } else { 0 };
                self.dims[n] - out - inc
            })
            .collect()
    }
}

/// Cohomology dimensions of `C^0 →d_0 C^1 → ... →d_N C^{N+1}`.
pub fn cohomology_dims(maps: &[ExactMatrix], field: FieldSpec) -> Result<Vec<usize>, LinalgError> {
    if maps.is_empty() {
        return Ok(Vec::new());
    }
    CochainComplex::from_maps(maps.to_vec())?.cohomology(field)
}
