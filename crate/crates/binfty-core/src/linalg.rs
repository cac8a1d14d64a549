//! Exact linear algebra over the rationals.
//!
//! Everything downstream (identity checkers, cohomology ranks, canonical
//! kernel bases) relies on two guarantees provided here:
//!
//! * arithmetic is exact: `Rational` is an arbitrary-precision reduced
//!   fraction with positive denominator, never a float;
//! * elimination is canonical: given a fixed column order, `rank_kernel`
//!   returns the reduced-echelon kernel basis, independent of the order in
//!   which entries were inserted.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Backed by `num_rational`: always reduced, with a
/// positive denominator, over arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rat: zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn rat_int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// Multiplicative inverse; zero has none.
pub fn rat_inv(r: &Rational) -> Result<Rational> {
    if r.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(r.recip())
}

/// Exact division; errors on a zero divisor.
pub fn rat_div(a: &Rational, b: &Rational) -> Result<Rational> {
    Ok(a * rat_inv(b)?)
}

/// Canonical string form `p/q` (or just `p` for integers), sign on the
/// numerator. This is the form used by the machine report and input files.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p`, `-p`, or `p/q`. Whitespace is not accepted; the denominator
/// must be nonzero. Returns the canonical reduced value.
pub fn rat_from_string(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::InvalidData(format!("bad integer `{t}` in rational `{s}`")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Sign scalar: `(-1)^k` as a Rational.
pub fn neg_one_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Sparse matrix with exact entries. Rows and columns are indexed from 0;
/// absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Set an entry; storing zero removes it.
    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "SparseMatrix::set out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    /// Add into an entry.
    pub fn add(&mut self, row: usize, col: usize, value: &Rational) {
        if value.is_zero() {
            return;
        }
        let cur = self.entries.remove(&(row, col)).unwrap_or_else(Rational::zero);
        let next = cur + value;
        if !next.is_zero() {
            self.entries.insert((row, col), next);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    /// Build from columns: `column(j)` is the j-th column as (row, value)
    /// pairs. This is how matrices of linear maps are assembled: column
    /// order is the domain basis order, row order the codomain basis order.
    pub fn from_columns(
        rows: usize,
        cols: usize,
        mut column: impl FnMut(usize) -> Vec<(usize, Rational)>,
    ) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows, cols);
        for j in 0..cols {
            for (i, v) in column(j) {
                m.add(i, j, &v);
            }
        }
        m
    }

    /// Rank and canonical kernel basis.
    ///
    /// The kernel basis is the reduced-echelon one under the fixed column
    /// order: one vector per free column, carrying 1 at that column, the
    /// negated reduced-echelon entries at the pivot columns, and 0 at all
    /// other free columns. Deterministic in the matrix alone.
    pub fn rank_kernel(&self) -> (usize, Vec<BTreeMap<usize, Rational>>) {
        // Row-reduce a working copy held as sparse rows.
        let mut work: Vec<BTreeMap<usize, Rational>> = Vec::new();
        let mut by_row: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            by_row.entry(r).or_default().insert(c, v.clone());
        }
        for (_, row) in by_row {
            work.push(row);
        }

        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (work row, column)
        let mut next_row = 0usize;
        for col in 0..self.cols {
            // First available row (deterministic choice) with a nonzero
            // entry in this column.
            let mut found = None;
            for (idx, row) in work.iter().enumerate().skip(next_row) {
                if row.contains_key(&col) {
                    found = Some(idx);
                    break;
                }
            }
            let Some(pivot_idx) = found else { continue };
            work.swap(next_row, pivot_idx);
            // Normalize the pivot row.
            let inv = work[next_row][&col].recip();
            let normalized: BTreeMap<usize, Rational> = work[next_row]
                .iter()
                .map(|(c, v)| (*c, v * &inv))
                .collect();
            work[next_row] = normalized;
            // Eliminate the column everywhere else.
            for idx in 0..work.len() {
                if idx == next_row {
                    continue;
                }
                let Some(factor) = work[idx].get(&col).cloned() else { continue };
                let pivot_row = work[next_row].clone();
                let target = &mut work[idx];
                for (c, v) in pivot_row {
                    let cur = target.remove(&c).unwrap_or_else(Rational::zero);
                    let next = cur - &factor * v;
                    if !next.is_zero() {
                        target.insert(c, next);
                    }
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
            if next_row == work.len() {
                break;
            }
        }

        let rank = pivots.len();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut kernel = Vec::new();
        for free_col in 0..self.cols {
            if pivot_cols.contains(&free_col) {
                continue;
            }
            let mut vec = BTreeMap::new();
            vec.insert(free_col, Rational::one());
            for &(row, pcol) in &pivots {
                if let Some(v) = work[row].get(&free_col) {
                    vec.insert(pcol, -v.clone());
                }
            }
            kernel.push(vec);
        }
        (rank, kernel)
    }

    /// Rank only.
    pub fn rank(&self) -> usize {
        self.rank_kernel().0
    }

    /// Matrix-vector product (vector as sparse column).
    pub fn apply(&self, v: &BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&(r, c), m) in &self.entries {
            if let Some(x) = v.get(&c) {
                let cur = out.remove(&r).unwrap_or_else(Rational::zero);
                let next = cur + m * x;
                if !next.is_zero() {
                    out.insert(r, next);
                }
            }
        }
        out
    }

    /// Does `v` lie in the column span? Decided exactly by comparing ranks
    /// of the matrix with and without `v` appended as an extra column.
    pub fn column_span_contains(&self, v: &BTreeMap<usize, Rational>) -> bool {
        let base_rank = self.rank();
        let mut ext = SparseMatrix::new(self.rows, self.cols + 1);
        for (&(r, c), val) in &self.entries {
            ext.entries.insert((r, c), val.clone());
        }
        for (&r, val) in v {
            assert!(r < self.rows, "column_span_contains: row out of range");
            if !val.is_zero() {
                ext.entries.insert((r, self.cols), val.clone());
            }
        }
        ext.rank() == base_rank
    }
}

/// Nullity from rank via the rank-nullity identity.
pub fn nullity(matrix: &SparseMatrix) -> usize {
    matrix.cols() - matrix.rank()
}
