//! Quadratic forms `F_{q^m1} -> F_q` and their invariants.

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::gf::{Field, FieldTower};
use crate::linalg::{self, Matrix};

/// `Tr_{q^m1/q}(coeff * x^(q^power + 1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobTerm {
    pub coeff: u64,
    pub power: usize,
}

/// `scale * Tr_{q^m1/q}(inner * x)^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSquareTerm {
    pub scale: u64,
    pub inner: u64,
}

/// A form given as a sum of terms. `matrix`, when present, adds
/// `x^T A x` in power-basis coordinates for a symmetric `A` over `F_q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuadFormSpec {
    pub frobenius_terms: Vec<FrobTerm>,
    pub trace_square_terms: Vec<TraceSquareTerm>,
    pub matrix: Option<Matrix>,
}

#[derive(Clone, Debug)]
pub struct QuadForm {
    tower: FieldTower,
    spec: QuadFormSpec,
    values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadFormAnalysis {
    pub rank: usize,
    /// Product of the nonzero diagonal entries, as an `F_q` index.
    pub delta: u64,
    pub eps_q: i32,
    pub eps: i32,
    pub gram: Matrix,
    pub diagonal: Vec<u64>,
    pub radical: Matrix,
}

impl QuadForm {
    pub fn new(tower: &FieldTower, spec: QuadFormSpec) -> Result<QuadForm> {
        let (q, q1) = (tower.fq.size(), tower.fq1.size());
        for t in &spec.frobenius_terms {
            if t.power >= tower.m1 {
                return param(format!(
                    "Frobenius power {} must be below m1 = {}",
                    t.power, tower.m1
                ));
            }
            if t.coeff >= q1 {
                return param("Frobenius coefficient outside F_{q^m1}");
            }
        }
        for t in &spec.trace_square_terms {
            if t.scale >= q || t.inner >= q1 {
                return param("trace-square coefficient outside its field");
            }
        }
        if let Some(a) = &spec.matrix {
            if a.len() != tower.m1
                || a.iter()
                    .any(|r| r.len() != tower.m1 || r.iter().any(|&x| x >= q))
            {
                return param(format!("matrix term must be {0}x{0} over F_q", tower.m1));
            }
            if (0..tower.m1).any(|i| (0..i).any(|j| a[i][j] != a[j][i])) {
                return param("matrix term must be symmetric");
            }
        }
        let nonzero = spec.frobenius_terms.iter().any(|t| t.coeff != 0)
            || spec
                .trace_square_terms
                .iter()
                .any(|t| t.scale != 0 && t.inner != 0)
            || spec
                .matrix
                .as_ref()
                .is_some_and(|a| a.iter().flatten().any(|&x| x != 0));
        if !nonzero {
            return param("quadratic form has no nonzero term");
        }
        let mut form = QuadForm {
            tower: tower.clone(),
            spec,
            values: Vec::new(),
        };
        form.values = tower.fq1.indices().map(|x| form.eval_direct(x)).collect();
        Ok(form)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn spec(&self) -> &QuadFormSpec {
        &self.spec
    }

    fn eval_direct(&self, x: u64) -> u64 {
        let t = &self.tower;
        let (fq, fq1) = (&t.fq, &t.fq1);
        let q = fq.size();
        let mut acc = 0;
        for term in &self.spec.frobenius_terms {
            let e = q.pow(term.power as u32) + 1;
            let v = fq1.mul(term.coeff, fq1.pow_u64(x, e));
            acc = fq.add(acc, fq1.trace_to(v, fq).expect("F_q is below F_{q^m1}"));
        }
        for term in &self.spec.trace_square_terms {
            let tr = fq1
                .trace_to(fq1.mul(term.inner, x), fq)
                .expect("F_q is below F_{q^m1}");
            acc = fq.add(acc, fq.mul(term.scale, fq.mul(tr, tr)));
        }
        if let Some(a) = &self.spec.matrix {
            let xv = fq1.digits(x);
            acc = fq.add(acc, bilinear(fq, a, &xv, &xv));
        }
        acc
    }

    /// `Q(x)` for an `F_{q^m1}` index.
    pub fn eval(&self, x: u64) -> u64 {
        self.values[x as usize]
    }

    /// `Q(x)` for every `x`, in index order.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Gram matrix of the polar form in the power basis `1, t, .., t^(m1-1)`.
    pub fn gram(&self) -> Matrix {
        let t = &self.tower;
        let fq = &t.fq;
        let q = fq.size();
        let half = fq.inv(2).expect("odd characteristic");
        let basis: Vec<u64> = (0..t.m1).map(|i| q.pow(i as u32)).collect();
        let mut g = vec![vec![0; t.m1]; t.m1];
        for i in 0..t.m1 {
            for j in 0..t.m1 {
                let s = t.fq1.add(basis[i], basis[j]);
                let v = fq.sub(
                    fq.sub(self.eval(s), self.eval(basis[i])),
                    self.eval(basis[j]),
                );
                g[i][j] = fq.mul(v, half);
            }
        }
        g
    }

    pub fn analyze(&self) -> Result<QuadFormAnalysis> {
        analyze_gram(&self.tower.fq, self.tower.m, &self.gram())
    }
}

/// `x^T A y` over `f`.
pub fn bilinear(f: &Field, a: &[Vec<u64>], x: &[u64], y: &[u64]) -> u64 {
    let mut acc = 0;
    for (i, row) in a.iter().enumerate() {
        if x[i] == 0 {
            continue;
        }
        let inner = row
            .iter()
            .zip(y)
            .fold(0, |s, (&aij, &yj)| f.add(s, f.mul(aij, yj)));
        acc = f.add(acc, f.mul(x[i], inner));
    }
    acc
}

/// Congruence-diagonalize a symmetric matrix. Pivots on the first nonzero
/// diagonal entry; if the remaining diagonal is zero, folds the first
/// nonzero off-diagonal pair `(i, j)` into row/column `i`.
pub fn diagonalize(f: &Field, gram: &[Vec<u64>]) -> Vec<u64> {
    let n = gram.len();
    let mut a: Matrix = gram.to_vec();
    let mut diag = Vec::new();
    for k in 0..n {
        let pivot = (k..n).find(|&i| a[i][i] != 0);
        let pivot = match pivot {
            Some(i) => i,
            None => {
                let pair = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && a[i][j] != 0);
                let Some((i, j)) = pair else { break };
                // row_i += row_j, col_i += col_j
                for c in 0..n {
                    a[i][c] = f.add(a[i][c], a[j][c]);
                }
                for r in 0..n {
                    a[r][i] = f.add(a[r][i], a[r][j]);
                }
                i
            }
        };
        a.swap(k, pivot);
        for row in a.iter_mut() {
            row.swap(k, pivot);
        }
        let d = a[k][k];
        let dinv = f.inv(d).expect("pivot is nonzero");
        for l in k + 1..n {
            let factor = f.mul(a[l][k], dinv);
            if factor == 0 {
                continue;
            }
            for c in 0..n {
                let t = f.mul(factor, a[k][c]);
                a[l][c] = f.sub(a[l][c], t);
            }
            for r in 0..n {
                let t = f.mul(factor, a[r][k]);
                a[r][l] = f.sub(a[r][l], t);
            }
        }
        diag.push(d);
    }
    diag
}

/// Sign exponent turning `eps_q` into `eps`.
pub fn eps_from(p: u64, m: usize, rank: usize, eps_q: i32) -> i32 {
    let r = rank as u64;
    let m = m as u64;
    let e = if r % 2 == 0 {
        (p - 1) * m * r / 4
    } else {
        (p - 1) * m * (r + 1) / 4
    };
    if e % 2 == 0 {
        eps_q
    } else {
        -eps_q
    }
}

/// Invariants of the form with Gram matrix `gram` over `F_q = fq`, `q = p^m`.
pub fn analyze_gram(fq: &Field, m: usize, gram: &[Vec<u64>]) -> Result<QuadFormAnalysis> {
    let diagonal = diagonalize(fq, gram);
    let rank = diagonal.len();
    if rank == 0 {
        return Err(Error::Domain(
            "the quadratic form is identically zero (rank 0)".into(),
        ));
    }
    let delta = diagonal.iter().fold(1, |acc, &d| fq.mul(acc, d));
    let eps_q = fq.eta(delta);
    let eps = eps_from(fq.p(), m, rank, eps_q);
    Ok(QuadFormAnalysis {
        rank,
        delta,
        eps_q,
        eps,
        gram: gram.to_vec(),
        diagonal,
        radical: linalg::nullspace(fq, gram),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trace_square_form(p: u64, m1: usize) -> (FieldTower, QuadForm) {
        let t = FieldTower::build(p, 1, m1, 1).unwrap();
        let q = QuadForm::new(
            &t,
            QuadFormSpec {
                frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
                ..Default::default()
            },
        )
        .unwrap();
        (t, q)
    }

    #[test]
    fn rejects_bad_specs() {
        let t = FieldTower::build(3, 1, 2, 1).unwrap();
        let bad = QuadFormSpec {
            frobenius_terms: vec![FrobTerm { coeff: 1, power: 2 }],
            ..Default::default()
        };
        assert!(matches!(QuadForm::new(&t, bad), Err(Error::Parameter(_))));
        let zero = QuadFormSpec {
            frobenius_terms: vec![FrobTerm { coeff: 0, power: 0 }],
            ..Default::default()
        };
        assert!(matches!(QuadForm::new(&t, zero), Err(Error::Parameter(_))));
    }

    #[test]
    fn trace_of_square_over_f81() {
        let (_, q) = trace_square_form(3, 4);
        let a = q.analyze().unwrap();
        assert_eq!(a.rank, 4);
        assert_eq!(a.eps_q, -1);
        assert_eq!(a.eps, -1);
        assert!(a.radical.is_empty());
    }

    #[test]
    fn rank_drop_from_trace_square() {
        // Tr(x^2) - (1/3) Tr(x)^2 over F_125 / F_5 has rank 2.
        let t = FieldTower::build(5, 1, 3, 2).unwrap();
        let spec = QuadFormSpec {
            frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
            trace_square_terms: vec![TraceSquareTerm { scale: 3, inner: 1 }],
            matrix: None,
        };
        let a = QuadForm::new(&t, spec).unwrap().analyze().unwrap();
        assert_eq!((a.rank, a.eps_q, a.eps), (2, -1, -1));
        assert_eq!(a.radical.len(), 1);
    }

    #[test]
    fn rank_one_case() {
        // Tr(x^2) - (1/2) Tr(x)^2 over F_25 / F_5.
        let t = FieldTower::build(5, 1, 2, 3).unwrap();
        let spec = QuadFormSpec {
            frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
            trace_square_terms: vec![TraceSquareTerm { scale: 2, inner: 1 }],
            matrix: None,
        };
        let a = QuadForm::new(&t, spec).unwrap().analyze().unwrap();
        assert_eq!((a.rank, a.eps_q, a.eps), (1, 1, 1));
    }

    #[test]
    fn zero_form_from_matrix_is_rejected_at_analysis() {
        let t = FieldTower::build(3, 1, 2, 1).unwrap();
        let f = t.fq.clone();
        assert!(matches!(
            analyze_gram(&f, 1, &[vec![0, 0], vec![0, 0]]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn hyperbolic_plane_uses_off_diagonal_pivot() {
        let f = Field::prime(3).unwrap();
        let a = analyze_gram(&f, 1, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(a.rank, 2);
        // x*y is equivalent to u^2 - v^2, determinant -1.
        assert_eq!(a.eps_q, f.eta(f.neg(1)));
    }

    #[test]
    fn values_reconstruct_from_gram() {
        for (p, m1) in [(3, 3), (5, 2), (7, 2)] {
            let (t, q) = trace_square_form(p, m1);
            let g = q.gram();
            for x in t.fq1.indices() {
                let xv = t.fq1.digits(x);
                assert_eq!(bilinear(&t.fq, &g, &xv, &xv), q.eval(x));
            }
        }
    }

    /// Random symmetric matrix and random invertible change of basis over F_q.
    fn sym_and_basis(f: &Field, n: usize, seed: &[u64]) -> (Matrix, Matrix) {
        let q = f.size();
        let mut it = seed.iter().cycle();
        let mut s = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = it.next().unwrap() % q;
                s[i][j] = v;
                s[j][i] = v;
            }
        }
        // unit lower triangular times a permutation-free diagonal is invertible
        let mut l = vec![vec![0; n]; n];
        for i in 0..n {
            l[i][i] = 1 + it.next().unwrap() % (q - 1);
            for j in 0..i {
                l[i][j] = it.next().unwrap() % q;
            }
        }
        (s, l)
    }

    proptest! {
        #[test]
        fn invariants_survive_change_of_basis(seed in proptest::collection::vec(any::<u64>(), 40), n in 1usize..6, which in 0usize..3) {
            let f = [Field::prime(3).unwrap(), Field::prime(5).unwrap(), Field::prime(7).unwrap()][which].clone();
            let (s, l) = sym_and_basis(&f, n, &seed);
            let s2 = linalg::mat_mul(&f, &linalg::mat_mul(&f, &l, &s), &linalg::transpose(&l));
            let a = analyze_gram(&f, 1, &s);
            let b = analyze_gram(&f, 1, &s2);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(a.rank, b.rank);
                    prop_assert_eq!(a.eps_q, b.eps_q);
                    prop_assert_eq!(a.rank, linalg::rank(&f, &s));
                }
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "rank-zero status differs"),
            }
        }
    }
}
