//! Generalized Hamming weights of `C_Q` and `C_Q'`.
//!
//! `d_r = n - max_H N(H)` over `r`-dimensional message subspaces `H`, where
//! `N(H)` counts coordinates at which every codeword of `H` vanishes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::code::{QfCode, Variant};
use crate::cyclotomic::{qf_exp_sum_closed, rational_q_pow, rational_to_biguint, CycFrac, CycInt};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::subspace::{self, gaussian_binomial, Basis};

/// `N(H)` by evaluating the basis functionals at every point, stopping at
/// the first one that does not vanish.
pub fn support_defect(code: &QfCode, basis: &[Vec<u64>]) -> u64 {
    let fq = code.fq();
    let fs: Vec<_> = basis.iter().map(|row| code.functional(row)).collect();
    let mut targets = vec![0u64; fs.len()];
    let mut n = 0u64;
    for &qx in code.form().values() {
        for (t, f) in targets.iter_mut().zip(&fs) {
            *t = fq.neg(fq.add(fq.mul(f.a, qx), f.c));
        }
        let ny = fs
            .first()
            .map_or(code.tower().fq2.size() as usize, |f| f.ly.len());
        'y: for y in 0..ny {
            for (t, f) in targets.iter().zip(&fs) {
                if f.ly[y] != *t {
                    continue 'y;
                }
            }
            n += 1;
        }
    }
    if code.variant() == Variant::Homogeneous {
        n -= 1;
    }
    n
}

/// `N(H)` from `q^r (N(H) + [origin]) = sum_{h in H} sum_{(x,y)} zeta^Tr(h(x,y))`,
/// with the inner sums tallied from value histograms.
pub fn support_defect_charsum(code: &QfCode, basis: &[Vec<u64>]) -> Result<u64> {
    let t = code.tower();
    let p = t.p;
    let tr: Vec<u64> =
        t.fq.indices()
            .map(|v| t.fq.trace_to(v, &t.fp))
            .collect::<Result<_>>()?;
    let mut counts = vec![BigInt::zero(); p as usize];
    for h in subspace::span(&t.fq, basis) {
        for (v, &cnt) in code.value_histogram(&h).iter().enumerate() {
            counts[tr[v] as usize] += cnt;
        }
    }
    let counts: Vec<BigInt> = counts;
    let total = cyc_from_big(p, &counts);
    let total = total
        .as_integer()
        .ok_or_else(|| Error::Consistency("character sum is not rational".into()))?;
    let qr = BigInt::from(t.q()).pow(basis.len() as u32);
    if (&total % &qr) != BigInt::zero() {
        return Err(Error::Consistency(
            "character sum not divisible by q^r".into(),
        ));
    }
    let mut n = total / qr;
    if code.variant() == Variant::Homogeneous {
        n -= 1;
    }
    n.to_u64()
        .ok_or_else(|| Error::Consistency("negative support defect".into()))
}

fn cyc_from_big(p: u64, counts: &[BigInt]) -> CycInt {
    let top = counts[(p - 1) as usize].clone();
    let mut acc = CycInt::zero(p);
    for (j, c) in counts[..(p - 1) as usize].iter().enumerate() {
        let term = CycInt::zeta_pow(p, j as u64).scale(&(c - &top));
        acc = acc.add(&term).expect("same ring");
    }
    acc
}

/// `N(H)` from the stratified character sum with the closed-form value of
/// `sum_x zeta^Tr(a Q(x))`. Works for both variants.
pub fn support_defect_stratified(code: &QfCode, basis: &[Vec<u64>]) -> Result<u64> {
    let t = code.tower();
    let (p, q) = (t.p, t.q());
    let fq = &t.fq;
    let m2 = t.m2;
    let r = basis.len() as i64;
    let big_m = t.total_degree() as i64;
    let an = code.analysis();
    let affine = code.variant() == Variant::Affine;
    let mut acc = CycFrac::from_cyc(CycInt::zero(p));
    let mut origin_counts = vec![0i64; p as usize];
    for h in subspace::span(fq, basis) {
        if h[1..=m2].iter().any(|&x| x != 0) {
            continue;
        }
        let c = if affine { h[m2 + 1] } else { 0 };
        let tc = fq.trace_to(c, &t.fp)?;
        if h[0] == 0 {
            origin_counts[tc as usize] += 1;
        } else {
            let s = qf_exp_sum_closed(t, an, h[0]);
            let z = CycFrac::from_cyc(CycInt::zeta_pow(p, tc));
            acc = acc.add(&s.mul(&z)?)?;
        }
    }
    let part_a = acc.scale(&rational_q_pow(q, m2 as i64 - r));
    let part_0 = CycFrac::from_cyc(CycInt::from_exponent_counts(p, &origin_counts))
        .scale(&rational_q_pow(q, big_m - r));
    let total = part_a.add(&part_0)?;
    let mut v = total
        .as_rational()
        .ok_or_else(|| Error::Consistency("stratified sum is not rational".into()))?;
    if !affine {
        v -= BigRational::one();
    }
    let n = rational_to_biguint(&v, "support defect")?;
    n.to_u64()
        .ok_or_else(|| Error::Unsupported("support defect too large".into()))
}

/// `N(H)` from the closed formulas: the `t`-count formula for `C_Q`, the
/// stratified sum for `C_Q'`.
pub fn support_defect_closed(code: &QfCode, basis: &[Vec<u64>]) -> Result<u64> {
    if code.variant() == Variant::Affine {
        return support_defect_stratified(code, basis);
    }
    let t = code.tower();
    let q = t.q();
    let r = basis.len() as i64;
    let big_m = t.total_degree() as i64;
    let an = code.analysis();
    let rq = an.rank as i64;
    let base = rational_q_pow(q, big_m - r);
    let v = if rq % 2 == 0 {
        let tcount = subspace::span(&t.fq, basis)
            .iter()
            .filter(|h| h[0] != 0 && h[1..].iter().all(|&x| x == 0))
            .count() as i64;
        let inner = rational_q_pow(q, -rq / 2)
            * BigRational::from_integer(BigInt::from(an.eps as i64 * tcount))
            + BigRational::one();
        base * inner - BigRational::one()
    } else {
        base - BigRational::one()
    };
    let n = rational_to_biguint(&v, "support defect")?;
    n.to_u64()
        .ok_or_else(|| Error::Unsupported("support defect too large".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct GhwValue {
    pub r: usize,
    pub d: u64,
    pub max_defect: u64,
    pub witness: Basis,
}

fn budget_check(what: &str, count: &num_bigint::BigUint, points: u64, budget: u64) -> Result<()> {
    let cost = count * points;
    if cost > num_bigint::BigUint::from(budget) {
        return Err(Error::Resource {
            what: format!("{what} ({count} subspaces of {points} points)"),
            needed: cost.to_string(),
            budget,
        });
    }
    Ok(())
}

/// Best `(defect, position, basis)`: larger defect wins, then earlier position.
type Best = Option<(u64, u64, Basis)>;

pub(crate) fn better(a: Best, b: Best) -> Best {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

/// `d_r` by enumerating every `r`-dimensional message subspace. With
/// `audit`, each subspace's count is also recomputed from character sums.
pub fn ghw_brute(
    code: &QfCode,
    r: usize,
    exec: Exec,
    budget: u64,
    audit: bool,
) -> Result<GhwValue> {
    let k = code.dimension();
    if r == 0 || r > k {
        return Err(Error::Domain(format!("r = {r} outside 1..={k}")));
    }
    let count = gaussian_binomial(k, r, code.q());
    budget_check("generalized Hamming weight", &count, code.points(), budget)?;
    let failures = std::sync::atomic::AtomicU64::new(0);
    let best = subspace::fold_subspaces(
        code.fq(),
        k,
        r,
        exec,
        || None,
        |acc: &mut Best, pos, b| {
            let n = support_defect(code, b);
            if audit && support_defect_charsum(code, b).ok() != Some(n) {
                failures.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            }
            if acc
                .as_ref()
                .map_or(true, |x| n > x.0 || (n == x.0 && pos < x.1))
            {
                *acc = Some((n, pos, b.clone()));
            }
        },
        better,
    );
    let bad = failures.into_inner();
    if bad > 0 {
        return Err(Error::Consistency(format!(
            "{bad} subspaces disagree with the character-sum count"
        )));
    }
    let (max_defect, _, witness) = best.expect("at least one subspace");
    Ok(GhwValue {
        r,
        d: code.length() - max_defect,
        max_defect,
        witness,
    })
}

/// `d_r` from the closed formulas.
pub fn ghw_closed(code: &QfCode, r: usize) -> Result<u64> {
    let t = code.tower();
    let k = code.dimension();
    if r == 0 || r > k {
        return Err(Error::Domain(format!("r = {r} outside 1..={k}")));
    }
    let q = t.q();
    let big_m = t.total_degree() as i64;
    let an = code.analysis();
    let rq = an.rank as i64;
    let ri = r as i64;
    let one = BigRational::one();
    let qr = rational_q_pow(q, ri);
    let qm1 = BigRational::from_integer(BigInt::from(q - 1));
    let base = rational_q_pow(q, big_m - ri);
    let even = rq % 2 == 0;
    let v = match code.variant() {
        Variant::Homogeneous => {
            if !even {
                base * (qr - one)
            } else if an.eps == 1 {
                base * (qr - one - &qm1 * rational_q_pow(q, -rq / 2))
            } else if r < t.m2 + 1 {
                base * (qr - one)
            } else {
                base * (qr - one + &qm1 * rational_q_pow(q, -rq / 2))
            }
        }
        Variant::Affine => {
            if r == t.m2 + 2 {
                rational_q_pow(q, big_m)
            } else if !even {
                base * (qr - one - rational_q_pow(q, (1 - rq) / 2))
            } else if an.eps == 1 {
                base * (qr - one - &qm1 * rational_q_pow(q, -rq / 2))
            } else {
                base * (qr - one - rational_q_pow(q, -rq / 2))
            }
        }
    };
    let d = rational_to_biguint(&v, "generalized Hamming weight")?;
    d.to_u64()
        .ok_or_else(|| Error::Unsupported("weight too large".into()))
}

#[derive(Clone, Debug, Default)]
pub struct HierarchyOptions {
    pub r_max: Option<usize>,
    pub exec: Exec,
    pub budget: u64,
    pub audit: bool,
    /// Externally quoted values `d_1, d_2, ..` to compare against.
    pub reference: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GhwRow {
    pub r: usize,
    pub brute: Option<u64>,
    pub brute_error: Option<String>,
    pub closed: Option<u64>,
    pub closed_error: Option<String>,
    pub reference: Option<u64>,
    /// For `C_Q'`: whether the witness attains the closed-form maximum.
    pub witness_attains_closed: Option<bool>,
    pub witness: Option<Basis>,
}

impl GhwRow {
    pub fn brute_matches_closed(&self) -> Option<bool> {
        Some(self.brute? == self.closed?)
    }

    /// The value every available source should agree on, preferring brute force.
    pub fn arbiter(&self) -> Option<u64> {
        self.brute.or(self.closed)
    }

    pub fn reference_matches(&self) -> Option<bool> {
        Some(self.reference? == self.arbiter()?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GhwReport {
    pub rows: Vec<GhwRow>,
    /// Brute-force values strictly increase in `r`.
    pub monotone: bool,
}

impl GhwReport {
    pub fn brute_closed_agree(&self) -> bool {
        self.rows.iter().all(|r| {
            r.brute_matches_closed() != Some(false) && r.witness_attains_closed != Some(false)
        })
    }

    pub fn reference_agrees(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.reference_matches() != Some(false))
    }
}

pub fn hierarchy(code: &QfCode, opts: &HierarchyOptions) -> GhwReport {
    let k = code.dimension();
    let top = opts.r_max.unwrap_or(k).min(k);
    let mut rows = Vec::new();
    for r in 1..=top {
        let (brute, brute_error, witness) =
            match ghw_brute(code, r, opts.exec, opts.budget, opts.audit) {
                Ok(v) => (Some(v.d), None, Some(v.witness)),
                Err(e) => (None, Some(e.to_string()), None),
            };
        let (closed, closed_error) = match ghw_closed(code, r) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let witness_attains_closed = match (code.variant(), &witness, closed) {
            (Variant::Affine, Some(w), Some(d)) => {
                Some(support_defect_closed(code, w).ok() == Some(code.length() - d))
            }
            _ => None,
        };
        let reference = opts.reference.as_ref().and_then(|v| v.get(r - 1).copied());
        rows.push(GhwRow {
            r,
            brute,
            brute_error,
            closed,
            closed_error,
            reference,
            witness_attains_closed,
            witness,
        });
    }
    let values: Vec<u64> = rows.iter().filter_map(|r| r.brute).collect();
    let monotone = values.windows(2).all(|w| w[0] < w[1]);
    GhwReport { rows, monotone }
}

/// Whether a Gaussian-binomial-sized scan fits the budget.
pub fn fits_budget(code: &QfCode, r: usize, budget: u64) -> bool {
    let count = gaussian_binomial(code.dimension(), r, code.q());
    count * code.points() <= num_bigint::BigUint::from(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{Mode, BUDGET};
    use crate::gf::FieldTower;
    use crate::quadform::{FrobTerm, QuadForm, QuadFormSpec, TraceSquareTerm};

    fn code(p: u64, m: usize, m1: usize, m2: usize, spec: QuadFormSpec, v: Variant) -> QfCode {
        let t = FieldTower::build(p, m, m1, m2).unwrap();
        QfCode::new(QuadForm::new(&t, spec).unwrap(), v).unwrap()
    }

    fn specs() -> Vec<QuadFormSpec> {
        vec![
            QuadFormSpec {
                frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
                ..Default::default()
            },
            QuadFormSpec {
                frobenius_terms: vec![FrobTerm { coeff: 2, power: 0 }],
                ..Default::default()
            },
            QuadFormSpec {
                frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
                trace_square_terms: vec![TraceSquareTerm { scale: 1, inner: 1 }],
                matrix: None,
            },
        ]
    }

    #[test]
    fn all_four_counts_agree_on_small_codes() {
        for (p, m1, m2) in [(3u64, 2usize, 1usize), (3, 3, 1), (5, 2, 1)] {
            for spec in specs() {
                for v in [Variant::Homogeneous, Variant::Affine] {
                    let c = code(p, 1, m1, m2, spec.clone(), v);
                    for r in 1..=c.dimension() {
                        for b in subspace::subspaces(c.fq(), c.dimension(), r) {
                            let n = support_defect(&c, &b);
                            assert_eq!(support_defect_charsum(&c, &b).unwrap(), n);
                            assert_eq!(
                                support_defect_closed(&c, &b).unwrap(),
                                n,
                                "{p} {m1} {m2} {v:?} {b:?}"
                            );
                            assert_eq!(support_defect_stratified(&c, &b).unwrap(), n);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hierarchy_matches_closed_and_first_weight() {
        for spec in specs() {
            for v in [Variant::Homogeneous, Variant::Affine] {
                let c = code(3, 1, 2, 2, spec.clone(), v);
                let rep = hierarchy(
                    &c,
                    &HierarchyOptions {
                        budget: BUDGET,
                        ..Default::default()
                    },
                );
                assert!(rep.brute_closed_agree(), "{rep:?}");
                assert!(rep.monotone);
                let wd = c
                    .weight_distribution_brute(Mode::Factored, Exec::Parallel, BUDGET)
                    .unwrap();
                let dmin = wd.keys().copied().find(|&w| w > 0).unwrap();
                assert_eq!(rep.rows[0].brute, Some(dmin));
                // d_k is the support size: C_Q vanishes at (x, 0) whenever Q(x) = 0.
                let common_zeros = match v {
                    Variant::Homogeneous => {
                        c.form().values().iter().filter(|&&x| x == 0).count() as u64 - 1
                    }
                    Variant::Affine => 0,
                };
                assert_eq!(
                    rep.rows.last().unwrap().brute,
                    Some(c.length() - common_zeros)
                );
            }
        }
    }

    #[test]
    fn sequential_and_parallel_pick_same_witness() {
        let c = code(3, 1, 2, 2, specs()[0].clone(), Variant::Affine);
        let a = ghw_brute(&c, 2, Exec::Sequential, BUDGET, false).unwrap();
        let b = ghw_brute(&c, 2, Exec::Parallel, BUDGET, false).unwrap();
        assert_eq!((a.d, a.witness), (b.d, b.witness));
    }

    #[test]
    fn budget_error_names_cost() {
        let c = code(3, 1, 2, 2, specs()[0].clone(), Variant::Affine);
        assert!(matches!(
            ghw_brute(&c, 2, Exec::Parallel, 10, false),
            Err(Error::Resource { .. })
        ));
    }
}
