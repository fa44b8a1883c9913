//! Small dense linear algebra over a [`Field`], entries as element indices.

use crate::gf::Field;

pub type Matrix = Vec<Vec<u64>>;

/// Row-reduced echelon form (pivots equal to one) and the pivot columns.
pub fn rref(f: &Field, rows: &[Vec<u64>]) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = f.inv(a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let factor = a[i][c];
                for j in 0..ncols {
                    let t = f.mul(factor, a[r][j]);
                    a[i][j] = f.sub(a[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(f: &Field, rows: &[Vec<u64>]) -> usize {
    rref(f, rows).1.len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(f: &Field, a: &[Vec<u64>]) -> Matrix {
    let ncols = a.first().map_or(0, |r| r.len());
    let (red, pivots) = rref(f, a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

pub fn mat_mul(f: &Field, a: &[Vec<u64>], b: &[Vec<u64>]) -> Matrix {
    let inner = b.len();
    let ncols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).fold(0, |acc, k| f.add(acc, f.mul(row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<u64>]) -> Matrix {
    let ncols = a.first().map_or(0, |r| r.len());
    (0..ncols)
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

pub fn mat_vec(f: &Field, a: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_is_annihilated() {
        let f = Field::prime(5).unwrap();
        let a = vec![vec![1, 2, 3, 4], vec![2, 4, 1, 3], vec![3, 1, 4, 2]];
        let ns = nullspace(&f, &a);
        assert_eq!(ns.len() + rank(&f, &a), 4);
        for v in &ns {
            assert!(mat_vec(&f, &a, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rref_of_dependent_rows() {
        let f = Field::prime(3).unwrap();
        let (red, piv) = rref(&f, &[vec![1, 1, 0], vec![2, 2, 0], vec![0, 1, 1]]);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(red, vec![vec![1, 0, 2], vec![0, 1, 1]]);
    }
}
