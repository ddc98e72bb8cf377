//! Small dense linear algebra over a `FieldTable`.

use alloc::vec::Vec;

use crate::galois::{Fe, FieldTable};

/// Reduces `rows` (each of length `cols`) to reduced row echelon form in
/// place and drops zero rows. Returns the pivot columns.
pub fn rref(f: &FieldTable, rows: &mut Vec<Vec<Fe>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldTable, rows: &[Vec<Fe>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m, cols).len()
}

/// Basis of `{x : row . x = 0 for every row}`, in reduced row echelon form.
pub fn null_space(f: &FieldTable, rows: &[Vec<Fe>], cols: usize) -> Vec<Vec<Fe>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<Fe>> = free
        .iter()
        .map(|&fc| {
            let mut v = alloc::vec![Fe::ZERO; cols];
            v[fc] = Fe::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect();
    rref(f, &mut basis, cols);
    basis
}

/// Scales a nonzero vector so that its first nonzero entry is one.
pub fn normalize(f: &FieldTable, v: &mut [Fe]) -> bool {
    let Some(lead) = v.iter().copied().find(|x| !x.is_zero()) else {
        return false;
    };
    let inv = f.inv(lead).expect("nonzero");
    for x in v.iter_mut() {
        *x = f.mul(*x, inv);
    }
    true
}

pub fn dot(f: &FieldTable, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}
