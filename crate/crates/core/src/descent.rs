//! Descent of `C_Q` / `C_Q'` from `F_q` to `F_p` through the orbit of
//! `theta = g^N`: each coordinate value `v` becomes the block
//! `(Tr_{q/p}(v theta^i))_{i < L}`, `L = (q-1)/N`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::code::{Mode, QfCode, Variant, WeightDistribution};
use crate::cyclotomic::{eta_twisted_sum_brute, rational_q_pow, rational_to_biguint, CycInt};
use crate::error::{param, Error, Result};
use crate::exec::Exec;
use crate::gf::{gcd_u64, FieldTower};
use crate::ghw::{better, GhwRow};
use crate::linalg;
use crate::subspace::{self, gaussian_binomial, Basis};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentParams {
    pub n: u64,
    /// `F_q` index of `theta`.
    pub theta: u64,
    /// Order of `theta`.
    pub l: u64,
    /// Whether `N | p - 1` and `gcd(N, (q-1)/(p-1)) = 1` hold.
    pub admissible: bool,
}

impl DescentParams {
    /// Validated parameters with `theta = g^N` for the canonical primitive `g`.
    pub fn new(tower: &FieldTower, n: u64) -> Result<DescentParams> {
        let d = DescentParams::unchecked(tower, n)?;
        if !d.admissible {
            let (p, q) = (tower.p, tower.q());
            return param(format!(
                "N = {n} needs N | p - 1 = {} and gcd(N, (q-1)/(p-1)) = gcd({n}, {}) = 1",
                p - 1,
                (q - 1) / (p - 1)
            ));
        }
        Ok(d)
    }

    /// Like [`DescentParams::new`] with an explicit `theta` of order `(q-1)/N`.
    pub fn with_theta(tower: &FieldTower, n: u64, theta: u64) -> Result<DescentParams> {
        let mut d = DescentParams::new(tower, n)?;
        if theta == 0 || theta >= tower.q() || tower.fq.order(theta)? != d.l {
            return param(format!("theta must have multiplicative order {}", d.l));
        }
        d.theta = theta;
        Ok(d)
    }

    /// Parameters that only require `N | q - 1`, for studying inadmissible
    /// choices.
    pub fn unchecked(tower: &FieldTower, n: u64) -> Result<DescentParams> {
        let (p, q) = (tower.p, tower.q());
        if n == 0 || (q - 1) % n != 0 {
            return param(format!("N = {n} must divide q - 1 = {}", q - 1));
        }
        let admissible = (p - 1) % n == 0 && gcd_u64(n, (q - 1) / (p - 1)) == 1;
        let theta = tower.fq.exp(n);
        Ok(DescentParams {
            n,
            theta,
            l: (q - 1) / n,
            admissible,
        })
    }
}

/// `(Tr_{q/p}(gamma theta^i))_{i < L}` as prime-field values.
pub fn psi(tower: &FieldTower, params: &DescentParams, gamma: u64) -> Vec<u64> {
    let fq = &tower.fq;
    let mut out = Vec::with_capacity(params.l as usize);
    let mut x = gamma;
    for _ in 0..params.l {
        out.push(fq.trace_to(x, &tower.fp).expect("F_p below F_q"));
        x = fq.mul(x, params.theta);
    }
    out
}

/// The descended code `C_{Q,N}` or `C_{Q,N}'`.
pub struct DescendedCode {
    source: QfCode,
    params: DescentParams,
    /// `zero_mask[v]`: bit `i` set when `Tr(v theta^i) = 0`.
    zero_mask: Vec<Vec<u64>>,
    /// Weight of `psi(v)` by `F_q` index.
    psi_weight: Vec<u64>,
}

impl DescendedCode {
    pub fn new(source: QfCode, params: DescentParams) -> DescendedCode {
        let t = source.tower().clone();
        let l = params.l as usize;
        let words = l.div_ceil(64);
        let mut zero_mask = Vec::with_capacity(t.q() as usize);
        let mut psi_weight = Vec::with_capacity(t.q() as usize);
        for v in t.fq.indices() {
            let ps = psi(&t, &params, v);
            let mut mask = vec![0u64; words];
            for (i, &x) in ps.iter().enumerate() {
                if x == 0 {
                    mask[i / 64] |= 1 << (i % 64);
                }
            }
            psi_weight.push(ps.iter().filter(|&&x| x != 0).count() as u64);
            zero_mask.push(mask);
        }
        DescendedCode {
            source,
            params,
            zero_mask,
            psi_weight,
        }
    }

    pub fn source(&self) -> &QfCode {
        &self.source
    }

    pub fn params(&self) -> &DescentParams {
        &self.params
    }

    pub fn length(&self) -> u64 {
        self.source.length() * self.params.l
    }

    /// Dimension over `F_p`.
    pub fn dimension(&self) -> usize {
        self.source.tower().m * self.source.dimension()
    }

    /// Weight of `psi(v)` for each `v` in index order.
    pub fn psi_weights(&self) -> &[u64] {
        &self.psi_weight
    }

    /// Weight every nonzero `psi` has when the parameters are admissible.
    pub fn psi_weight_expected(&self) -> BigRational {
        let t = self.source.tower();
        BigRational::new(
            BigInt::from((t.p - 1) * t.p.pow(t.m as u32 - 1)),
            BigInt::from(self.params.n),
        )
    }

    /// Convert a prime-field message vector to `F_q` coordinates.
    pub fn lift(&self, v: &[u64]) -> Vec<u64> {
        let t = self.source.tower();
        let p = t.p;
        v.chunks(t.m)
            .map(|ch| ch.iter().rev().fold(0, |acc, &d| acc * p + d))
            .collect()
    }

    /// Descended codeword of an `F_q` message, blocks in canonical point order.
    pub fn codeword(&self, msg: &[u64]) -> Result<Vec<u64>> {
        let t = self.source.tower();
        let word = self.source.codeword(msg)?;
        let mut out = Vec::with_capacity(self.length() as usize);
        for v in word {
            out.extend(psi(t, &self.params, v));
        }
        Ok(out)
    }

    /// Rank over `F_p` of the images of the standard `F_p` basis.
    pub fn verify_dimension(&self, budget: u64) -> Result<usize> {
        let k = self.dimension();
        let cost = self.length().saturating_mul(k as u64);
        if cost > budget {
            return Err(Error::Resource {
                what: "descended dimension".into(),
                needed: cost.to_string(),
                budget,
            });
        }
        let rows: Vec<Vec<u64>> = (0..k)
            .map(|j| {
                let mut e = vec![0; k];
                e[j] = 1;
                self.codeword(&self.lift(&e))
            })
            .collect::<Result<_>>()?;
        Ok(linalg::rank(&self.source.tower().fp, &rows))
    }

    /// Weight distribution over every message, from the source code's
    /// compositions (`Factored`) or point by point (`Literal`).
    pub fn weight_distribution_brute(
        &self,
        mode: Mode,
        exec: Exec,
        budget: u64,
    ) -> Result<WeightDistribution> {
        let src = &self.source;
        match mode {
            Mode::Factored => {
                let cwe = src.cwe_brute(Mode::Factored, exec, budget)?;
                let order = src.fq().ordering();
                let mut wd = WeightDistribution::new();
                for (comp, m) in cwe {
                    let w: u64 = comp
                        .iter()
                        .zip(&order)
                        .map(|(&c, &v)| c * self.psi_weight[v as usize])
                        .sum();
                    *wd.entry(w).or_insert(0) += m;
                }
                Ok(wd)
            }
            Mode::Literal => {
                let cost = src.message_count().saturating_mul(src.points());
                if cost > budget {
                    return Err(Error::Resource {
                        what: "descended weights".into(),
                        needed: cost.to_string(),
                        budget,
                    });
                }
                let homog = src.variant() == Variant::Homogeneous;
                let fq = src.fq();
                Ok(exec.fold_range(
                    0..src.message_count(),
                    BTreeMap::new,
                    |idx| {
                        let f = src.functional(&src.message_at(idx));
                        let mut w = 0;
                        for (x, &qx) in src.form().values().iter().enumerate() {
                            let s = fq.add(fq.mul(f.a, qx), f.c);
                            for (y, &l) in f.ly.iter().enumerate() {
                                if homog && x == 0 && y == 0 {
                                    continue;
                                }
                                w += self.psi_weight[fq.add(s, l) as usize];
                            }
                        }
                        BTreeMap::from([(w, 1u64)])
                    },
                    crate::code::merge_counts,
                ))
            }
        }
    }

    /// Source distribution with every weight scaled by `(p-1) p^(m-1) / N`.
    pub fn weight_distribution_predicted(&self) -> Result<WeightDistribution> {
        let s = self.psi_weight_expected();
        let mut wd = WeightDistribution::new();
        for (w, f) in self.source.weight_distribution_predicted()? {
            let scaled = BigRational::from_integer(BigInt::from(w)) * &s;
            let v = rational_to_biguint(&scaled, "descended weight")?;
            *wd.entry(v.to_u64().unwrap_or(u64::MAX)).or_insert(0) += f;
        }
        Ok(wd)
    }

    /// `N(V)`: triples `(x, y, i)` where every basis message of `V` (over `F_p`)
    /// has a zero descended coordinate.
    pub fn support_defect(&self, basis: &[Vec<u64>]) -> u64 {
        let src = &self.source;
        let fq = src.fq();
        let fs: Vec<_> = basis
            .iter()
            .map(|row| src.functional(&self.lift(row)))
            .collect();
        let words = self.zero_mask[0].len();
        let mut acc = vec![0u64; words];
        let mut vals = vec![0u64; fs.len()];
        let mut n = 0u64;
        for &qx in src.form().values() {
            for (v, f) in vals.iter_mut().zip(&fs) {
                *v = fq.add(fq.mul(f.a, qx), f.c);
            }
            let ny = fs[0].ly.len();
            for y in 0..ny {
                acc.fill(u64::MAX);
                let mut live = true;
                for (&s, f) in vals.iter().zip(&fs) {
                    let mask = &self.zero_mask[fq.add(s, f.ly[y]) as usize];
                    live = false;
                    for (a, &m) in acc.iter_mut().zip(mask) {
                        *a &= m;
                        live |= *a != 0;
                    }
                    if !live {
                        break;
                    }
                }
                if live {
                    n += acc.iter().map(|a| a.count_ones() as u64).sum::<u64>();
                }
            }
        }
        if src.variant() == Variant::Homogeneous {
            n -= self.params.l;
        }
        n
    }

    pub fn ghw_brute(&self, r: usize, exec: Exec, budget: u64) -> Result<(u64, Basis)> {
        let k = self.dimension();
        if r == 0 || r > k {
            return Err(Error::Domain(format!("r = {r} outside 1..={k}")));
        }
        let fp = &self.source.tower().fp;
        let count = gaussian_binomial(k, r, fp.size());
        let cost = &count * self.source.points() * self.params.l;
        if cost > num_bigint::BigUint::from(budget) {
            return Err(Error::Resource {
                what: format!("descended generalized Hamming weight ({count} subspaces)"),
                needed: cost.to_string(),
                budget,
            });
        }
        let best = subspace::fold_subspaces(
            fp,
            k,
            r,
            exec,
            || None,
            |acc: &mut Option<(u64, u64, Basis)>, pos, b| {
                let n = self.support_defect(b);
                if acc
                    .as_ref()
                    .map_or(true, |x| n > x.0 || (n == x.0 && pos < x.1))
                {
                    *acc = Some((n, pos, b.clone()));
                }
            },
            better,
        );
        let (n, _, w) = best.expect("at least one subspace");
        Ok((self.length() - n, w))
    }

    /// Closed-form descended hierarchy value.
    pub fn ghw_closed(&self, r: usize) -> Result<u64> {
        let src = &self.source;
        let t = src.tower();
        let k = self.dimension();
        if r == 0 || r > k {
            return Err(Error::Domain(format!("r = {r} outside 1..={k}")));
        }
        let (p, q, m, m2) = (t.p, t.q(), t.m, t.m2);
        let an = src.analysis();
        let rq = an.rank as i64;
        let big_m = t.total_degree() as i64;
        let int = |v: u64| BigRational::from_integer(BigInt::from(v));
        let one = BigRational::one();
        let pr = int(p.pow(r as u32));
        let qm = rational_q_pow(q, big_m);
        let n = int(self.params.n);
        let scale = &qm / (&pr * &n);
        let qq = int(q);
        let q1 = int(q - 1);
        let even = rq % 2 == 0;
        let v = match src.variant() {
            Variant::Homogeneous => {
                let kk = &scale * &q1;
                if !even {
                    kk * (&pr - &one)
                } else if an.eps == 1 {
                    let h = rational_q_pow(q, -rq / 2);
                    if r <= m {
                        kk * (&pr - &one) * (&one - h)
                    } else {
                        kk * (&pr - &one - h * &q1)
                    }
                } else {
                    let h = rational_q_pow(q, -rq / 2);
                    if r <= m * m2 {
                        kk * (&pr - &one)
                    } else {
                        let ps = int(p.pow((r - m * m2) as u32));
                        kk * (&pr - &one + h * (ps - &one))
                    }
                }
            }
            Variant::Affine => {
                let plus = even && an.eps == 1;
                let h = if even {
                    rational_q_pow(q, -rq / 2)
                } else {
                    rational_q_pow(q, (1 - rq) / 2)
                };
                let top = m * (m2 + 1);
                if r <= m {
                    if plus {
                        &scale * &q1 * (&pr - &one) * (&one - &h)
                    } else {
                        &scale * (&pr - &one) * (&q1 - &h)
                    }
                } else if r <= top {
                    if plus {
                        &scale * &q1 * (&pr - &one - &h * &q1)
                    } else {
                        &scale * &q1 * (&pr - &one - &h)
                    }
                } else {
                    let ps = int(p.pow((r - top) as u32));
                    let tail = if plus { &one + &h * &q1 } else { &one + &h };
                    &scale * (&pr * &q1 - (&qq - ps) * tail)
                }
            }
        };
        let d = rational_to_biguint(&v, "descended generalized Hamming weight")?;
        d.to_u64()
            .ok_or_else(|| Error::Unsupported("weight too large".into()))
    }

    /// For `C'` with even `r_Q` and `r > m(m2+1)`, the subspace built from
    /// the structure of the maximizer: all of `(a, b, 0)` plus `s` prime
    /// directions of `c` when `eps = 1`; for `eps = -1`, `(0, b, 0)`, the
    /// diagonal `(e_i, 0, e_i)` and `s` prime directions of `c`. Here
    /// `s = r - m(m2+1)`. `None` outside those cases.
    pub fn optimal_structure(&self, r: usize) -> Option<Basis> {
        let src = &self.source;
        let t = src.tower();
        let (m, m2) = (t.m, t.m2);
        let an = src.analysis();
        let k = self.dimension();
        if src.variant() != Variant::Affine || an.rank % 2 == 1 || r <= m * (m2 + 1) || r > k {
            return None;
        }
        let s = r - m * (m2 + 1);
        let unit = |i: usize| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        };
        let c0 = m * (m2 + 1);
        let mut basis: Basis = Vec::with_capacity(r);
        if an.eps == 1 {
            basis.extend((0..c0).map(unit));
        } else {
            basis.extend((m..c0).map(unit));
            basis.extend((0..m).map(|i| {
                let mut v = unit(i);
                v[c0 + i] = 1;
                v
            }));
        }
        basis.extend((0..s).map(|j| unit(c0 + j)));
        Some(basis)
    }

    pub fn hierarchy(&self, r_max: Option<usize>, exec: Exec, budget: u64) -> Vec<GhwRow> {
        let top = r_max.unwrap_or(self.dimension()).min(self.dimension());
        (1..=top)
            .map(|r| {
                let (brute, brute_error, witness) = match self.ghw_brute(r, exec, budget) {
                    Ok((d, w)) => (Some(d), None, Some(w)),
                    Err(e) => (None, Some(e.to_string()), None),
                };
                let (closed, closed_error) = match self.ghw_closed(r) {
                    Ok(v) => (Some(v), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                let witness_attains_closed = match (self.optimal_structure(r), closed) {
                    (Some(b), Some(d)) => Some(self.length() - self.support_defect(&b) == d),
                    _ => None,
                };
                GhwRow {
                    r,
                    brute,
                    brute_error,
                    closed,
                    closed_error,
                    reference: None,
                    witness_attains_closed,
                    witness,
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    /// `|F_p^* ∩ <theta>|`.
    pub intersection: u64,
    pub expected_intersection: u64,
    /// Number of cosets of `<theta>` in `F_q^*`.
    pub cosets: u64,
    /// Number of orbits of `F_p^*` acting on those cosets.
    pub orbits: u64,
    pub transitive: bool,
}

/// Count `F_p^* ∩ <theta>` and the `F_p^*`-orbits on `F_q^* / <theta>` by enumeration.
pub fn orbit_check(tower: &FieldTower, params: &DescentParams) -> OrbitReport {
    let fq = &tower.fq;
    let q = fq.size();
    let mut group = vec![false; q as usize];
    let mut x = 1;
    for _ in 0..params.l {
        group[x as usize] = true;
        x = fq.mul(x, params.theta);
    }
    let p = tower.p;
    let intersection = (1..p).filter(|&l| group[l as usize]).count() as u64;
    // label each element by the smallest index in its coset
    let mut label = vec![u64::MAX; q as usize];
    for a in 1..q {
        if label[a as usize] != u64::MAX {
            continue;
        }
        let mut y = a;
        for _ in 0..params.l {
            label[y as usize] = a;
            y = fq.mul(y, params.theta);
        }
    }
    let mut reps: Vec<u64> = label[1..].to_vec();
    reps.sort();
    reps.dedup();
    let cosets = reps.len() as u64;
    let mut seen = std::collections::BTreeSet::new();
    let mut orbits = 0;
    for &c in &reps {
        if seen.contains(&c) {
            continue;
        }
        orbits += 1;
        for lam in 1..p {
            seen.insert(label[fq.mul(lam, c) as usize]);
        }
    }
    OrbitReport {
        intersection,
        expected_intersection: (p - 1) / params.n,
        cosets,
        orbits,
        transitive: orbits == 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharIdentityReport {
    pub first_lhs: CycInt,
    pub first_rhs: CycInt,
    pub second_lhs: CycInt,
    /// `(p-1)/N * eta(ac) * sum_{x != 0} zeta^Tr(x) eta(x)`, scaled by `N` to stay integral.
    pub second_rhs_times_n: CycInt,
    pub first_holds: bool,
    pub second_holds: bool,
}

/// Check both orbit character-sum identities for `c != 0`, `a != 0`.
pub fn char_identity_check(
    tower: &FieldTower,
    params: &DescentParams,
    c: u64,
    a: u64,
) -> Result<CharIdentityReport> {
    if c == 0 || a == 0 {
        return Err(Error::Domain("identities need nonzero a and c".into()));
    }
    let fq = &tower.fq;
    let p = tower.p;
    let mut first = vec![0i64; p as usize];
    let mut second = vec![0i64; p as usize];
    for lam in 1..p {
        let mut th = 1;
        for _ in 0..params.l {
            let tr = fq.trace_to(fq.mul(fq.mul(lam, c), th), &tower.fp)? as usize;
            first[tr] += 1;
            second[tr] += fq.eta(fq.mul(fq.mul(lam, a), th)) as i64;
            th = fq.mul(th, params.theta);
        }
    }
    let first_lhs = CycInt::from_exponent_counts(p, &first);
    let n = params.n as i64;
    let first_rhs_num = -((p - 1) as i64);
    let first_holds = first_lhs.scale(&BigInt::from(n)) == CycInt::from_int(p, first_rhs_num);
    let first_rhs = if first_rhs_num % n == 0 {
        CycInt::from_int(p, first_rhs_num / n)
    } else {
        CycInt::zero(p)
    };
    let second_lhs = CycInt::from_exponent_counts(p, &second);
    let g = eta_twisted_sum_brute(fq, 1, 1);
    let second_rhs_times_n = g.scale(&BigInt::from((p - 1) as i64 * fq.eta(fq.mul(a, c)) as i64));
    let second_holds = second_lhs.scale(&BigInt::from(n)) == second_rhs_times_n;
    Ok(CharIdentityReport {
        first_lhs,
        first_rhs,
        second_lhs,
        second_rhs_times_n,
        first_holds,
        second_holds,
    })
}

/// Every admissible `N` for the base field of `tower`.
pub fn admissible_ns(tower: &FieldTower) -> Vec<u64> {
    let (p, q) = (tower.p, tower.q());
    (1..p)
        .filter(|&n| (p - 1) % n == 0 && gcd_u64(n, (q - 1) / (p - 1)) == 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::BUDGET;
    use crate::quadform::{FrobTerm, QuadForm, QuadFormSpec};

    fn source(p: u64, m: usize, m1: usize, m2: usize, v: Variant) -> QfCode {
        let t = FieldTower::build(p, m, m1, m2).unwrap();
        let spec = QuadFormSpec {
            frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
            ..Default::default()
        };
        QfCode::new(QuadForm::new(&t, spec).unwrap(), v).unwrap()
    }

    #[test]
    fn admissibility() {
        let t = FieldTower::build(5, 2, 1, 1).unwrap();
        assert_eq!(admissible_ns(&t), vec![1]);
        assert!(DescentParams::new(&t, 2).is_err());
        let u = DescentParams::unchecked(&t, 2).unwrap();
        assert_eq!(u.l, 12);
        assert!(!u.admissible);
        let t9 = FieldTower::build(3, 2, 1, 1).unwrap();
        assert!(matches!(
            DescentParams::new(&t9, 2),
            Err(Error::Parameter(_))
        ));
        let t5 = FieldTower::build(5, 1, 1, 1).unwrap();
        assert_eq!(admissible_ns(&t5), vec![1, 2, 4]);
    }

    #[test]
    fn psi_has_constant_weight_when_admissible() {
        for (p, m) in [
            (3u64, 1usize),
            (5, 1),
            (7, 1),
            (3, 2),
            (5, 2),
            (7, 2),
            (3, 3),
        ] {
            let t = FieldTower::build(p, m, 1, 1).unwrap();
            for n in admissible_ns(&t) {
                let d = DescentParams::new(&t, n).unwrap();
                let want = (p - 1) * p.pow(m as u32 - 1) / n;
                for g in 1..t.q() {
                    let w = psi(&t, &d, g).iter().filter(|&&x| x != 0).count() as u64;
                    assert_eq!(w, want, "p={p} m={m} N={n} gamma={g}");
                }
                let o = orbit_check(&t, &d);
                assert!(o.transitive);
                assert_eq!(o.intersection, o.expected_intersection);
            }
        }
    }

    #[test]
    fn identities_hold_when_admissible() {
        let t = FieldTower::build(7, 2, 1, 1).unwrap();
        let d = DescentParams::new(&t, 3).unwrap();
        for c in [1u64, 5, 17] {
            for a in [1u64, 2, 30] {
                let r = char_identity_check(&t, &d, c, a).unwrap();
                assert!(r.first_holds && r.second_holds);
            }
        }
    }

    #[test]
    fn descended_codes_match_closed_forms() {
        for (p, m, m1, m2, n) in [
            (3u64, 1usize, 2usize, 1usize, 2u64),
            (5, 1, 1, 1, 4),
            (5, 1, 2, 1, 2),
            (3, 1, 3, 1, 1),
        ] {
            for v in [Variant::Homogeneous, Variant::Affine] {
                let src = source(p, m, m1, m2, v);
                let d = DescentParams::new(src.tower(), n).unwrap();
                let dc = DescendedCode::new(src, d);
                assert_eq!(dc.verify_dimension(BUDGET).unwrap(), dc.dimension());
                let a = dc
                    .weight_distribution_brute(Mode::Factored, Exec::Parallel, BUDGET)
                    .unwrap();
                let b = dc
                    .weight_distribution_brute(Mode::Literal, Exec::Parallel, BUDGET)
                    .unwrap();
                assert_eq!(a, b);
                assert_eq!(a, dc.weight_distribution_predicted().unwrap());
                for row in dc.hierarchy(None, Exec::Parallel, BUDGET) {
                    assert_eq!(
                        row.brute, row.closed,
                        "p={p} m1={m1} m2={m2} N={n} {v:?} r={}",
                        row.r
                    );
                }
            }
        }
    }

    #[test]
    fn optimal_structures_attain_the_closed_form() {
        let mut signs = std::collections::BTreeSet::new();
        for (p, m, m1, m2, n) in [
            (3u64, 1usize, 2usize, 1usize, 2u64),
            (5, 1, 2, 1, 2),
            (3, 2, 2, 1, 1),
            (3, 1, 4, 1, 1),
        ] {
            let src = source(p, m, m1, m2, Variant::Affine);
            let eps = src.analysis().eps;
            let dc = DescendedCode::new(
                src,
                DescentParams::new(&FieldTower::build(p, m, m1, m2).unwrap(), n).unwrap(),
            );
            for r in m * (m2 + 1) + 1..=dc.dimension() {
                let b = dc.optimal_structure(r).expect("even rank, large r");
                assert_eq!(crate::linalg::rank(&dc.source().tower().fp, &b), r);
                assert_eq!(
                    dc.length() - dc.support_defect(&b),
                    dc.ghw_closed(r).unwrap(),
                    "p={p} m={m} m1={m1} r={r}"
                );
                signs.insert(eps);
            }
        }
        assert_eq!(signs.len(), 2, "both signs of eps covered");
    }

    #[test]
    fn lift_reads_prime_digits() {
        let src = source(3, 2, 1, 1, Variant::Affine);
        let d = DescentParams::new(src.tower(), 1).unwrap();
        let dc = DescendedCode::new(src, d);
        let fq = dc.source().fq().clone();
        for a in fq.indices() {
            let mut v = fq.prime_digits(a);
            v.extend([0, 0, 0, 0]);
            assert_eq!(dc.lift(&v), vec![a, 0, 0]);
        }
    }
}
