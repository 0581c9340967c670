//! Row reduction. Over Q the forward pass is fraction-free: rows are scaled
//! to primitive integer vectors and combined as `p*row - a*pivot`, then
//! divided by their content. Over F_p plain pivoting is used. Pivots are
//! always chosen by smallest column, then smallest row index.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, Rational, Scalar};
use crate::sparse::SparseMatrix;
use crate::LinError;

type IntRow = Vec<(usize, BigInt)>;
type Row = Vec<(usize, Scalar)>;

/// Rank and a basis of the right kernel.
#[derive(Clone, Debug)]
pub struct RankKernel {
    pub rank: usize,
    /// Dense column vectors of length `cols`.
    pub kernel: Vec<Vec<Scalar>>,
}

fn to_primitive_int_row(row: &[(usize, Scalar)]) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        let r = v.as_rational().expect("rational row");
        lcm = lcm.lcm(&r.denom());
    }
    let ints: IntRow = row
        .iter()
        .map(|(j, v)| {
            let r = v.as_rational().unwrap();
            (*j, r.numer() * (&lcm / r.denom()))
        })
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if let Some((_, lead)) = row.first() {
        if lead.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -std::mem::take(v);
            }
        }
    }
    row
}

/// `p*row - a*pivot`, both sorted by column.
fn int_combine(row: &IntRow, p: &BigInt, pivot: &IntRow, a: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let ck = pivot.get(k).map_or(usize::MAX, |e| e.0);
        let (col, val) = if ci < ck {
            i += 1;
            (ci, p * &row[i - 1].1)
        } else if ck < ci {
            k += 1;
            (ck, -(a * &pivot[k - 1].1))
        } else {
            i += 1;
            k += 1;
            (ci, p * &row[i - 1].1 - a * &pivot[k - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

fn row_combine(row: &Row, pivot: &Row, a: &Scalar) -> Row {
    // row - a*pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let ck = pivot.get(k).map_or(usize::MAX, |e| e.0);
        let (col, val) = if ci < ck {
            i += 1;
            (ci, row[i - 1].1.clone())
        } else if ck < ci {
            k += 1;
            (ck, -(a * &pivot[k - 1].1))
        } else {
            i += 1;
            k += 1;
            (ci, &row[i - 1].1 - &(a * &pivot[k - 1].1))
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// Forward elimination. Returns echelon rows (leading entry normalized to 1)
/// keyed by pivot column.
fn echelon(m: &SparseMatrix) -> BTreeMap<usize, Row> {
    let field = m.field();
    let rows: Vec<Row> = m.clone().into_rows();
    match field {
        Field::Rational => echelon_fraction_free(rows),
        Field::Prime(_) => echelon_plain(rows, field),
    }
}

fn echelon_fraction_free(rows: Vec<Row>) -> BTreeMap<usize, Row> {
    // Active rows bucketed by leading column; within a bucket, by original index.
    let mut buckets: BTreeMap<usize, BTreeMap<usize, IntRow>> = BTreeMap::new();
    for (idx, row) in rows.iter().enumerate() {
        if let Some(&(c, _)) = row.first() {
            buckets.entry(c).or_default().insert(idx, to_primitive_int_row(row));
        }
    }
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    while let Some((col, mut bucket)) = buckets.pop_first() {
        let (_, pivot) = bucket.pop_first().unwrap();
        let p = pivot[0].1.clone();
        for (idx, row) in bucket {
            let a = &row[0].1;
            let g = p.gcd(a);
            let reduced = make_primitive(int_combine(&row, &(&p / &g), &pivot, &(a / &g)));
            if let Some(&(c, _)) = reduced.first() {
                debug_assert!(c > col);
                buckets.entry(c).or_default().insert(idx, reduced);
            }
        }
        pivots.insert(col, pivot);
    }
    pivots
        .into_iter()
        .map(|(col, row)| {
            let lead = row[0].1.clone();
            let scaled = row
                .into_iter()
                .map(|(j, v)| {
                    (j, Scalar::Q(Rational::from_bigints(v, lead.clone()).unwrap()))
                })
                .collect();
            (col, scaled)
        })
        .collect()
}

fn echelon_plain(rows: Vec<Row>, field: Field) -> BTreeMap<usize, Row> {
    let mut buckets: BTreeMap<usize, BTreeMap<usize, Row>> = BTreeMap::new();
    for (idx, row) in rows.into_iter().enumerate() {
        if let Some(&(c, _)) = row.first() {
            buckets.entry(c).or_default().insert(idx, row);
        }
    }
    let mut pivots = BTreeMap::new();
    while let Some((col, mut bucket)) = buckets.pop_first() {
        let (_, pivot) = bucket.pop_first().unwrap();
        let inv = pivot[0].1.inv().expect("nonzero pivot");
        let pivot: Row = pivot.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
        for (idx, row) in bucket {
            let a = row[0].1.clone();
            let reduced = row_combine(&row, &pivot, &a);
            if let Some(&(c, _)) = reduced.first() {
                buckets.entry(c).or_default().insert(idx, reduced);
            }
        }
        pivots.insert(col, pivot);
    }
    let _ = field;
    pivots
}

/// Reduced row echelon form from normalized echelon rows.
fn reduce_back(mut pivots: BTreeMap<usize, Row>) -> BTreeMap<usize, Row> {
    let cols: Vec<usize> = pivots.keys().copied().collect();
    for &pc in cols.iter().rev() {
        let prow = pivots[&pc].clone();
        for &other in cols.iter().filter(|&&c| c < pc) {
            let row = pivots.get_mut(&other).unwrap();
            if let Ok(k) = row.binary_search_by_key(&pc, |e| e.0) {
                let a = row[k].1.clone();
                *row = row_combine(row, &prow, &a);
            }
        }
    }
    pivots
}

pub fn rank(m: &SparseMatrix) -> usize {
    echelon(m).len()
}

pub fn rank_and_kernel(m: &SparseMatrix) -> RankKernel {
    let field = m.field();
    let rref = reduce_back(echelon(m));
    let rank = rref.len();
    let mut kernel = Vec::with_capacity(m.cols() - rank);
    for free in (0..m.cols()).filter(|c| !rref.contains_key(c)) {
        let mut v = vec![field.zero(); m.cols()];
        v[free] = field.one();
        for (&pc, row) in &rref {
            if let Ok(k) = row.binary_search_by_key(&free, |e| e.0) {
                v[pc] = -row[k].1.clone();
            }
        }
        kernel.push(clear_denominators(v));
    }
    RankKernel { rank, kernel }
}

fn clear_denominators(v: Vec<Scalar>) -> Vec<Scalar> {
    if !matches!(v.first(), Some(Scalar::Q(_))) {
        return v;
    }
    let mut lcm = BigInt::one();
    for x in &v {
        lcm = lcm.lcm(&x.as_rational().unwrap().denom());
    }
    if lcm.is_one() {
        return v;
    }
    let scale = Scalar::Q(Rational::from_bigints(lcm, BigInt::one()).unwrap());
    v.iter().map(|x| x * &scale).collect()
}

pub fn invert(m: &SparseMatrix) -> Result<SparseMatrix, LinError> {
    let n = m.rows();
    if n != m.cols() {
        return Err(LinError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let field = m.field();
    // [M | I]
    let trip = m
        .triplets()
        .map(|(i, j, v)| (i, j, v.clone()))
        .chain((0..n).map(|i| (i, n + i, field.one())));
    let aug = SparseMatrix::from_triplets(field, n, 2 * n, trip)?;
    let rref = reduce_back(echelon(&aug));
    let left_pivots = rref.keys().take_while(|&&c| c < n).count();
    if left_pivots < n {
        return Err(LinError::SingularMatrix { size: n, rank: left_pivots });
    }
    let trip = rref.into_iter().flat_map(|(pc, row)| {
        row.into_iter().filter(|(j, _)| *j >= n).map(move |(j, v)| (pc, j - n, v))
    });
    SparseMatrix::from_triplets(field, n, n, trip)
}
