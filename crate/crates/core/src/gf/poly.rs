//! Dense polynomials over a [`Field`], coefficients as element indices,
//! constant term first. Only what the irreducibility search needs.

use super::field::Field;
use crate::error::{Error, Result};

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn mul(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
fn rem(f: &Field, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("nonzero leading coefficient");
    while r.len() > dm {
        let k = r.len() - 1;
        let c = f.mul(r[k], lead_inv);
        let shift = k - dm;
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, mj));
        }
        trim(&mut r);
    }
    r
}

fn sub(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            f.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn pow_mod(f: &Field, h: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1];
    let mut base = rem(f, h, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        base = rem(f, &mul(f, &base, &base), m);
        e >>= 1;
    }
    acc
}

/// `a * b mod modulus` for a monic modulus of degree `d`, padded to length `d`.
pub(crate) fn mul_mod(f: &Field, a: &[u64], b: &[u64], modulus: &[u64]) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut r = rem(f, &mul(f, a, b), modulus);
    r.resize(d, 0);
    r
}

/// Rabin-style test: `f | x^(Q^d) - x` and `gcd(f, x^(Q^e) - x) = 1` for every
/// proper divisor `e` of `d`, where `Q = |base|`.
pub fn is_irreducible(base: &Field, f: &[u64]) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let d = f.len() - 1;
    let q = base.size();
    let x = vec![0, 1];
    // powers[e] = x^(Q^e) mod f
    let mut powers = vec![rem(base, &x, &f)];
    for e in 1..=d {
        let next = pow_mod(base, &powers[e - 1], q, &f);
        powers.push(next);
    }
    if !sub(base, &powers[d], &rem(base, &x, &f)).is_empty() {
        return false;
    }
    (1..d).filter(|e| d % e == 0).all(|e| {
        let g = gcd(base, &f, &sub(base, &powers[e], &x));
        g.len() == 1
    })
}

/// Smallest monic irreducible of the given degree. Candidates are ordered by
/// the packed index of their non-leading coefficients, so the coefficient of
/// `x^(d-1)` is the most significant.
pub fn find_irreducible(base: &Field, degree: usize) -> Result<Vec<u64>> {
    if degree == 0 {
        return Err(Error::Parameter("irreducible of degree 0 requested".into()));
    }
    let q = base.size();
    let count = q
        .checked_pow(degree as u32)
        .ok_or_else(|| Error::Unsupported(format!("degree {degree} search space too large")))?;
    for idx in 0..count {
        let mut cand = Vec::with_capacity(degree + 1);
        let mut k = idx;
        for _ in 0..degree {
            cand.push(k % q);
            k /= q;
        }
        cand.push(1);
        if is_irreducible(base, &cand) {
            return Ok(cand);
        }
    }
    Err(Error::Consistency(format!(
        "no irreducible of degree {degree} found"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent check: a polynomial of degree <= 3 is irreducible iff it has no root.
    fn has_root(f: &Field, poly: &[u64]) -> bool {
        f.indices().any(|x| {
            let v = poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
            v == 0
        })
    }

    #[test]
    fn agrees_with_root_test_in_low_degree() {
        for p in [3u64, 5, 7] {
            let f = Field::prime(p).unwrap();
            for d in 2..=3usize {
                for idx in 0..p.pow(d as u32) {
                    let mut cand: Vec<u64> = (0..d).map(|i| idx / p.pow(i as u32) % p).collect();
                    cand.push(1);
                    assert_eq!(
                        is_irreducible(&f, &cand),
                        !has_root(&f, &cand),
                        "{cand:?} over F_{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn counts_match_necklace_formula() {
        // Number of monic irreducibles of degree 4 over F_3 is (81 - 9) / 4 = 18.
        let f = Field::prime(3).unwrap();
        let n = (0..81u64)
            .filter(|&idx| {
                let mut c: Vec<u64> = (0..4).map(|i| idx / 3u64.pow(i) % 3).collect();
                c.push(1);
                is_irreducible(&f, &c)
            })
            .count();
        assert_eq!(n, 18);
    }

    #[test]
    fn first_irreducibles() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(find_irreducible(&f3, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(&f3, 2).unwrap(), vec![1, 0, 1]);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(find_irreducible(&f5, 2).unwrap(), vec![2, 0, 1]);
    }
}
