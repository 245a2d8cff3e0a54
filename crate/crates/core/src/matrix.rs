//! Dense linear algebra over GF(q) on row vectors of encoded elements.

use crate::field::Field;

pub type Row = Vec<u32>;

pub fn dot(f: &Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `row += c * other`
#[inline]
pub fn axpy(f: &Field, row: &mut [u32], c: u32, other: &[u32]) {
    if c == 0 {
        return;
    }
    for (r, &o) in row.iter_mut().zip(other) {
        if o != 0 {
            *r = f.add(*r, f.mul(c, o));
        }
    }
}

pub fn scale(f: &Field, row: &mut [u32], c: u32) {
    for r in row.iter_mut() {
        *r = f.mul(*r, c);
    }
}

/// Reduces `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot column of every remaining row.
pub fn rref(f: &Field, rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][col]).expect("pivot is nonzero");
        scale(f, &mut rows[r], inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = f.neg(row[col]);
                axpy(f, row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &Field, rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{v : row . v = 0 for every row}` in `ncols` coordinates.
pub fn nullspace(f: &Field, rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut out = Vec::with_capacity(ncols - pivots.len());
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        out.push(v);
    }
    out
}

/// Coefficients of `v` with respect to an RREF basis, or `None` when `v` is
/// outside the row space.
pub fn coordinates(f: &Field, basis: &[Row], pivots: &[usize], v: &[u32]) -> Option<Vec<u32>> {
    let coeffs: Vec<u32> = pivots.iter().map(|&pc| v[pc]).collect();
    let mut rest = v.to_vec();
    for (row, &c) in basis.iter().zip(&coeffs) {
        axpy(f, &mut rest, f.neg(c), row);
    }
    rest.iter().all(|&x| x == 0).then_some(coeffs)
}

/// Scales a nonzero vector so its first nonzero entry is 1. Returns false for the zero vector.
#[inline]
pub fn normalize(f: &Field, v: &mut [u32]) -> bool {
    let Some(&lead) = v.iter().find(|&&x| x != 0) else {
        return false;
    };
    if lead != 1 {
        let inv = f.inv(lead).expect("nonzero");
        scale(f, v, inv);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn rref_is_canonical() {
        let f = Field::conway(3, 2).unwrap();
        let mut a = vec![vec![1, 2, 0, 4], vec![0, 1, 1, 1]];
        let mut b = vec![vec![1, 3, 1, 5], vec![0, 1, 1, 1]];
        // b's first row is a's first row plus a's second row.
        let s = f.add(1, 0);
        assert_eq!(s, 1);
        let mut sum = a[0].clone();
        axpy(&f, &mut sum, 1, &a[1]);
        b[0] = sum;
        rref(&f, &mut a);
        rref(&f, &mut b);
        assert_eq!(a, b);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let f = Field::conway(7, 2).unwrap();
        let rows = vec![vec![1, 5, 9, 0, 3], vec![2, 2, 40, 7, 1]];
        let ns = nullspace(&f, &rows, 5);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            for r in &rows {
                assert_eq!(dot(&f, r, v), 0);
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let f = Field::conway(2, 2).unwrap();
        let mut basis = vec![vec![1, 0, 2, 3], vec![0, 1, 1, 2]];
        let piv = rref(&f, &mut basis);
        let mut v = vec![0u32; 4];
        axpy(&f, &mut v, 3, &basis[0]);
        axpy(&f, &mut v, 2, &basis[1]);
        assert_eq!(coordinates(&f, &basis, &piv, &v), Some(vec![3, 2]));
        assert_eq!(coordinates(&f, &basis, &piv, &[0, 0, 1, 0]), None);
    }
}
