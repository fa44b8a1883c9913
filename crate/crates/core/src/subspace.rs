//! Enumeration of `r`-dimensional subspaces of `F^n` by reduced row echelon
//! basis: pivot-column sets in lexicographic order, then the free entries
//! read as a base-`|F|` number with the first free slot most significant.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::exec::Exec;
use crate::gf::Field;

pub type Basis = Vec<Vec<u64>>;

/// `[n choose r]_q`.
pub fn gaussian_binomial(n: usize, r: usize, q: u64) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let qb = BigUint::from(q);
    for i in 0..r {
        num *= qb.pow((n - i) as u32) - 1u32;
        den *= qb.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// The free slots `(row, column)` of an RREF matrix with these pivots.
fn free_slots(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..n {
            if !pivots.contains(&c) {
                out.push((i, c));
            }
        }
    }
    out
}

fn build(n: usize, q: u64, pivots: &[usize], slots: &[(usize, usize)], mut z: u64) -> Basis {
    let mut rows = vec![vec![0; n]; pivots.len()];
    for (i, &pc) in pivots.iter().enumerate() {
        rows[i][pc] = 1;
    }
    for &(i, c) in slots.iter().rev() {
        rows[i][c] = z % q;
        z /= q;
    }
    rows
}

/// All `r`-dimensional subspaces of `field^n`, in enumeration order.
pub fn subspaces(field: &Field, n: usize, r: usize) -> impl Iterator<Item = Basis> {
    let q = field.size();
    combinations(n, r).into_iter().flat_map(move |piv| {
        let slots = free_slots(n, &piv);
        let count = q.pow(slots.len() as u32);
        (0..count).map(move |z| build(n, q, &piv, &slots, z))
    })
}

/// Fold over all `r`-dimensional subspaces. `step` receives the position of
/// the subspace in enumeration order.
pub fn fold_subspaces<T, I, F, R>(
    field: &Field,
    n: usize,
    r: usize,
    exec: Exec,
    identity: I,
    step: F,
    merge: R,
) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, u64, &Basis) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let q = field.size();
    let mut acc = identity();
    let mut offset = 0u64;
    for piv in combinations(n, r) {
        let slots = free_slots(n, &piv);
        let count = q.pow(slots.len() as u32);
        let part = exec.fold_with(
            0..count,
            &identity,
            |t, z| {
                let b = build(n, q, &piv, &slots, z);
                step(t, offset + z, &b);
            },
            &merge,
        );
        acc = merge(acc, part);
        offset += count;
    }
    acc
}

/// Every vector of the span, as coefficient tuple order (first basis row fastest).
pub fn span(field: &Field, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let q = field.size();
    let r = basis.len();
    let n = basis.first().map_or(0, |b| b.len());
    let total = q.pow(r as u32);
    (0..total)
        .map(|mut z| {
            let mut v = vec![0; n];
            for row in basis {
                let c = z % q;
                z /= q;
                if c != 0 {
                    for (x, &e) in v.iter_mut().zip(row) {
                        *x = field.add(*x, field.mul(c, e));
                    }
                }
            }
            v
        })
        .collect()
}

pub fn count_u64(n: usize, r: usize, q: u64) -> u64 {
    gaussian_binomial(n, r, q).to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use std::collections::BTreeSet;

    #[test]
    fn binomial_values() {
        assert_eq!(count_u64(4, 2, 3), 130);
        assert_eq!(count_u64(6, 3, 3), 33880);
        assert_eq!(count_u64(3, 1, 9), 91);
        assert_eq!(count_u64(5, 0, 7), 1);
        assert_eq!(count_u64(2, 3, 7), 0);
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for (p, n) in [(3u64, 4usize), (5, 3)] {
            let f = Field::prime(p).unwrap();
            for r in 0..=n {
                let all: Vec<Basis> = subspaces(&f, n, r).collect();
                assert_eq!(all.len() as u64, count_u64(n, r, p));
                let mut seen = BTreeSet::new();
                for b in &all {
                    assert_eq!(linalg::rank(&f, b), r);
                    let (red, _) = linalg::rref(&f, b);
                    assert_eq!(&red, b, "basis is already reduced");
                    let mut s = span(&f, b);
                    s.sort();
                    assert!(seen.insert(s));
                }
            }
        }
    }

    #[test]
    fn fold_positions_follow_enumeration_order() {
        let f = Field::prime(3).unwrap();
        let listed: Vec<Basis> = subspaces(&f, 4, 2).collect();
        let folded = fold_subspaces(
            &f,
            4,
            2,
            Exec::Parallel,
            Vec::new,
            |acc: &mut Vec<(u64, Basis)>, k, b| acc.push((k, b.clone())),
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        let mut folded = folded;
        folded.sort();
        assert_eq!(folded.into_iter().map(|x| x.1).collect::<Vec<_>>(), listed);
    }
}
