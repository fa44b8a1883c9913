//! The codes `C_Q` (homogeneous) and `C_Q'` (affine) and their weights.
//!
//! A message is a vector over `F_q` laid out as `[a, b_0 .. b_{m2-1}]`, with a
//! trailing `c` for the affine variant; `b_j` are the power-basis coordinates
//! of `b` in `F_{q^m2}`. The codeword is `a Q(x) + Tr(b y) (+ c)` over the
//! points `(x, y)`, skipping `(0, 0)` in the homogeneous variant.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::{rational_q_pow, rational_to_biguint, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf::{Field, FieldTower};
use crate::linalg::Matrix;
use crate::quadform::{QuadForm, QuadFormAnalysis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    Homogeneous,
    Affine,
}

/// How the brute-force tallies are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Per message, histogram `a Q(x)` and `Tr(b y)` separately and convolve.
    #[default]
    Factored,
    /// Per message, evaluate every point.
    Literal,
}

/// Weight -> number of codewords.
pub type WeightDistribution = BTreeMap<u64, u64>;
/// Composition (counts of each `F_q` symbol, in canonical order) -> multiplicity.
pub type Cwe = BTreeMap<Vec<u64>, u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: u64,
    pub k: usize,
    pub d: u64,
}

/// A message's functional: `a Q(x) + ly[y] + c`.
pub struct Functional {
    pub a: u64,
    pub ly: Vec<u64>,
    pub c: u64,
}

#[derive(Clone, Debug)]
pub struct QfCode {
    form: QuadForm,
    analysis: QuadFormAnalysis,
    variant: Variant,
    /// `#{x : Q(x) = v}` by `F_q` index.
    q_hist: Vec<u64>,
    /// `Tr_{q^m2/q}(t^j t^l)`.
    trace_gram: Matrix,
    /// Canonical position of each `F_q` index.
    pos: Vec<usize>,
}

impl QfCode {
    pub fn new(form: QuadForm, variant: Variant) -> Result<QfCode> {
        let analysis = form.analyze()?;
        let t = form.tower().clone();
        let fq = &t.fq;
        let mut q_hist = vec![0; fq.size() as usize];
        for &v in form.values() {
            q_hist[v as usize] += 1;
        }
        let q = fq.size();
        let trace_gram = (0..t.m2)
            .map(|j| {
                (0..t.m2)
                    .map(|l| {
                        t.fq2
                            .trace_to(t.fq2.mul(q.pow(j as u32), q.pow(l as u32)), fq)
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Matrix>>()?;
        let pos = fq.indices().map(|v| fq.position(v) as usize).collect();
        Ok(QfCode {
            form,
            analysis,
            variant,
            q_hist,
            trace_gram,
            pos,
        })
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    pub fn tower(&self) -> &FieldTower {
        self.form.tower()
    }

    pub fn fq(&self) -> &Field {
        &self.form.tower().fq
    }

    pub fn analysis(&self) -> &QuadFormAnalysis {
        &self.analysis
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn q(&self) -> u64 {
        self.fq().size()
    }

    /// `q^M` as a machine integer.
    pub fn points(&self) -> u64 {
        self.tower().fq1.size() * self.tower().fq2.size()
    }

    pub fn length(&self) -> u64 {
        match self.variant {
            Variant::Homogeneous => self.points() - 1,
            Variant::Affine => self.points(),
        }
    }

    /// Message-space dimension over `F_q`.
    pub fn dimension(&self) -> usize {
        match self.variant {
            Variant::Homogeneous => self.tower().m2 + 1,
            Variant::Affine => self.tower().m2 + 2,
        }
    }

    pub fn message_count(&self) -> u64 {
        self.q().pow(self.dimension() as u32)
    }

    /// Canonical position of an `F_q` index.
    pub fn position(&self, v: u64) -> usize {
        self.pos[v as usize]
    }

    /// Pack `(a, b, c)` with `b` an `F_{q^m2}` index.
    pub fn message(&self, a: u64, b: u64, c: u64) -> Result<Vec<u64>> {
        let t = self.tower();
        if a >= t.q() || b >= t.fq2.size() || c >= t.q() {
            return Err(Error::Domain("message component outside its field".into()));
        }
        if self.variant == Variant::Homogeneous && c != 0 {
            return Err(Error::Domain(
                "the homogeneous code has no constant term".into(),
            ));
        }
        let mut v = vec![a];
        v.extend(t.fq2.digits(b));
        if self.variant == Variant::Affine {
            v.push(c);
        }
        Ok(v)
    }

    /// The `i`-th message in index order (`a` fastest, then `b`, then `c`).
    pub fn message_at(&self, mut idx: u64) -> Vec<u64> {
        let q = self.q();
        (0..self.dimension())
            .map(|_| {
                let d = idx % q;
                idx /= q;
                d
            })
            .collect()
    }

    /// `Tr(b y)` for every `y` in index order, via the trace form.
    pub fn trace_functional(&self, b: &[u64]) -> Vec<u64> {
        let t = self.tower();
        let fq = &t.fq;
        let q = fq.size();
        let tau: Vec<u64> = (0..t.m2)
            .map(|l| (0..t.m2).fold(0, |acc, j| fq.add(acc, fq.mul(b[j], self.trace_gram[j][l]))))
            .collect();
        let mut ly = vec![0u64];
        for &tl in &tau {
            let old = ly.len();
            let mut next = Vec::with_capacity(old * q as usize);
            for d in 0..q {
                let shift = fq.mul(tl, d);
                next.extend(ly.iter().map(|&e| fq.add(e, shift)));
            }
            debug_assert_eq!(next.len(), old * q as usize);
            ly = next;
        }
        ly
    }

    pub fn functional(&self, msg: &[u64]) -> Functional {
        let m2 = self.tower().m2;
        let c = if self.variant == Variant::Affine {
            msg[m2 + 1]
        } else {
            0
        };
        Functional {
            a: msg[0],
            ly: self.trace_functional(&msg[1..=m2]),
            c,
        }
    }

    /// Codeword over the points in canonical `(x, y)` order, `x` major.
    pub fn codeword(&self, msg: &[u64]) -> Result<Vec<u64>> {
        if msg.len() != self.dimension() || msg.iter().any(|&v| v >= self.q()) {
            return Err(Error::Domain("malformed message".into()));
        }
        let t = self.tower();
        let fq = &t.fq;
        let f = self.functional(msg);
        let xs = t.fq1.ordering();
        let ys = t.fq2.ordering();
        let mut out = Vec::with_capacity(self.length() as usize);
        for &x in &xs {
            let s = fq.add(fq.mul(f.a, self.form.eval(x)), f.c);
            for &y in &ys {
                if self.variant == Variant::Homogeneous && x == 0 && y == 0 {
                    continue;
                }
                out.push(fq.add(s, f.ly[y as usize]));
            }
        }
        Ok(out)
    }

    fn hist_y(&self, ly: &[u64]) -> Vec<u64> {
        let mut h = vec![0; self.q() as usize];
        for &v in ly {
            h[v as usize] += 1;
        }
        h
    }

    fn hist_x(&self, a: u64) -> Vec<u64> {
        let fq = self.fq();
        let mut h = vec![0; self.q() as usize];
        for (u, &cnt) in self.q_hist.iter().enumerate() {
            h[fq.mul(a, u as u64) as usize] += cnt;
        }
        h
    }

    /// Symbol counts of the codeword, indexed by canonical position.
    fn composition_from(&self, f: &Functional, hy: &[u64], mode: Mode) -> Vec<u64> {
        let fq = self.fq();
        let q = self.q() as usize;
        let mut by_index = vec![0u64; q];
        match mode {
            Mode::Factored => {
                let hx = self.hist_x(f.a);
                for (u, &cu) in hx.iter().enumerate() {
                    if cu == 0 {
                        continue;
                    }
                    let s = fq.add(u as u64, f.c);
                    for (w, &cw) in hy.iter().enumerate() {
                        by_index[fq.add(s, w as u64) as usize] += cu * cw;
                    }
                }
            }
            Mode::Literal => {
                for &qx in self.form.values() {
                    let s = fq.add(fq.mul(f.a, qx), f.c);
                    for &l in &f.ly {
                        by_index[fq.add(s, l) as usize] += 1;
                    }
                }
            }
        }
        if self.variant == Variant::Homogeneous {
            by_index[0] -= 1;
        }
        let mut out = vec![0; q];
        for (v, cnt) in by_index.into_iter().enumerate() {
            out[self.pos[v]] = cnt;
        }
        out
    }

    /// `#{(x, y) : value = v}` over all points including the origin, by `F_q` index.
    pub fn value_histogram(&self, msg: &[u64]) -> Vec<u64> {
        let fq = self.fq();
        let f = self.functional(msg);
        let hy = self.hist_y(&f.ly);
        let hx = self.hist_x(f.a);
        let mut out = vec![0u64; self.q() as usize];
        for (u, &cu) in hx.iter().enumerate() {
            if cu == 0 {
                continue;
            }
            let s = fq.add(u as u64, f.c);
            for (w, &cw) in hy.iter().enumerate() {
                out[fq.add(s, w as u64) as usize] += cu * cw;
            }
        }
        out
    }

    pub fn composition(&self, msg: &[u64], mode: Mode) -> Vec<u64> {
        let f = self.functional(msg);
        let hy = self.hist_y(&f.ly);
        self.composition_from(&f, &hy, mode)
    }

    pub fn weight(&self, msg: &[u64], mode: Mode) -> u64 {
        self.length() - self.composition(msg, mode)[0]
    }

    fn cost(&self, mode: Mode) -> u64 {
        let per = match mode {
            Mode::Factored => self.q() * self.q(),
            Mode::Literal => self.points(),
        };
        self.message_count().saturating_mul(per)
    }

    /// Complete weight enumerator by running over every message.
    pub fn cwe_brute(&self, mode: Mode, exec: Exec, budget: u64) -> Result<Cwe> {
        let cost = self.cost(mode);
        if cost > budget {
            return Err(Error::Resource {
                what: "complete weight enumerator".into(),
                needed: cost.to_string(),
                budget,
            });
        }
        let t = self.tower();
        let q = self.q();
        let nb = t.fq2.size();
        let ncs = if self.variant == Variant::Affine {
            q
        } else {
            1
        };
        let cwe = exec.fold_range(
            0..nb,
            Cwe::new,
            |b| {
                let bv = t.fq2.digits(b);
                let ly = self.trace_functional(&bv);
                let hy = self.hist_y(&ly);
                let mut local = Cwe::new();
                let mut f = Functional { a: 0, ly, c: 0 };
                for c in 0..ncs {
                    for a in 0..q {
                        f.a = a;
                        f.c = c;
                        *local
                            .entry(self.composition_from(&f, &hy, mode))
                            .or_insert(0) += 1;
                    }
                }
                local
            },
            merge_counts,
        );
        Ok(cwe)
    }

    pub fn weight_distribution_brute(
        &self,
        mode: Mode,
        exec: Exec,
        budget: u64,
    ) -> Result<WeightDistribution> {
        Ok(weights_of(
            &self.cwe_brute(mode, exec, budget)?,
            self.length(),
        ))
    }

    fn consts(&self) -> Consts {
        let t = self.tower();
        let q = self.q();
        let big_m = t.total_degree() as i64;
        let r = self.analysis.rank as i64;
        Consts {
            q,
            qm: rational_q_pow(q, big_m),
            qm1: rational_q_pow(q, big_m - 1),
            eps: BigRational::from_integer(BigInt::from(self.analysis.eps)),
            r,
            m2: t.m2 as u64,
        }
    }

    /// Weight distribution from the closed-form tables.
    pub fn weight_distribution_predicted(&self) -> Result<WeightDistribution> {
        let k = self.consts();
        let q = k.q;
        let qr = BigRational::from_integer(BigInt::from(q));
        let one = BigRational::one();
        let qm2 = q.pow(k.m2 as u32);
        let base = &k.qm1 * (&qr - &one);
        let mut wd = WeightDistribution::new();
        let mut put = |w: BigRational, f: u64| -> Result<()> {
            if f > 0 {
                let w = to_u64(&w, "weight")?;
                *wd.entry(w).or_insert(0) += f;
            }
            Ok(())
        };
        put(BigRational::zero(), 1)?;
        match (self.variant, k.r % 2 == 0) {
            (Variant::Homogeneous, true) => {
                let t = &k.eps * rational_q_pow(q, -k.r / 2);
                put(base.clone(), q * (qm2 - 1))?;
                put(&base * (&one - &t), q - 1)?;
            }
            (Variant::Homogeneous, false) => {
                put(base, q * qm2 - 1)?;
            }
            (Variant::Affine, true) => {
                let t = &k.eps * rational_q_pow(q, -k.r / 2);
                put(k.qm.clone(), q - 1)?;
                put(base.clone(), q * q * (qm2 - 1))?;
                put(&base * (&one - &t), q - 1)?;
                put(&k.qm1 * (&qr - &one + &t), (q - 1) * (q - 1))?;
            }
            (Variant::Affine, false) => {
                let t = &k.eps * rational_q_pow(q, (1 - k.r) / 2);
                put(k.qm.clone(), q - 1)?;
                put(base, q * q * (qm2 - 1) + q - 1)?;
                put(&k.qm1 * (&qr - &one - &t), (q - 1) * (q - 1) / 2)?;
                put(&k.qm1 * (&qr - &one + &t), (q - 1) * (q - 1) / 2)?;
            }
        }
        Ok(wd)
    }

    /// Complete weight enumerator from the closed formulas, with the
    /// symbols in this crate's canonical ordering.
    pub fn cwe_predicted(&self) -> Result<Cwe> {
        let k = self.consts();
        let fq = self.fq();
        let q = k.q;
        let qu = q as usize;
        let one = BigRational::one();
        let qm2 = q.pow(k.m2 as u32);
        let omega = fq.ordering();
        let qm1 = to_u64(&k.qm1, "q^(M-1)")?;
        let qm = to_u64(&k.qm, "q^M")?;
        let mut cwe = Cwe::new();
        let mut put = |comp: Vec<u64>, mult: u64| {
            if mult > 0 {
                *cwe.entry(comp).or_insert(0) += mult;
            }
        };
        let homog = self.variant == Variant::Homogeneous;
        let drop_origin = |mut v: Vec<u64>| {
            if homog {
                v[0] -= 1;
            }
            v
        };
        // zero codeword(s) and the constant codewords
        match self.variant {
            Variant::Homogeneous => {
                let mut z = vec![0; qu];
                z[0] = qm - 1;
                put(z, 1);
            }
            Variant::Affine => {
                for i in 0..qu {
                    let mut z = vec![0; qu];
                    z[i] = qm;
                    put(z, 1);
                }
            }
        }
        let flat_mult = if homog {
            q * (qm2 - 1)
        } else {
            q * q * (qm2 - 1)
        };
        put(drop_origin(vec![qm1; qu]), flat_mult);
        if k.r % 2 == 0 {
            let t = &k.eps * rational_q_pow(q, -k.r / 2);
            let qm1r = &k.qm1;
            let hi = to_u64(
                &(qm1r * (&one + &t * BigRational::from_integer(BigInt::from(q - 1)))),
                "exponent",
            )?;
            let lo = to_u64(&(qm1r * (&one - &t)), "exponent")?;
            let centres: Vec<usize> = if homog { vec![0] } else { (0..qu).collect() };
            for i in centres {
                let mut v = vec![lo; qu];
                v[i] = hi;
                put(drop_origin(v), q - 1);
            }
        } else {
            let t = &k.eps * rational_q_pow(q, (1 - k.r) / 2);
            let centres: Vec<usize> = if homog { vec![0] } else { (0..qu).collect() };
            for i in centres {
                for sign in [1i64, -1] {
                    let mut v = vec![0; qu];
                    for rho in 0..qu {
                        if rho == i {
                            v[rho] = qm1;
                            continue;
                        }
                        let e = fq.eta(fq.sub(omega[i], omega[rho])) as i64 * sign;
                        let x = &k.qm1 * (&one + &t * BigRational::from_integer(BigInt::from(e)));
                        v[rho] = to_u64(&x, "exponent")?;
                    }
                    put(drop_origin(v), (q - 1) / 2);
                }
            }
        }
        Ok(cwe)
    }

    pub fn params_predicted(&self) -> Result<CodeParams> {
        params_of(
            &self.weight_distribution_predicted()?,
            self.length(),
            self.q(),
        )
    }
}

struct Consts {
    q: u64,
    qm: BigRational,
    qm1: BigRational,
    eps: BigRational,
    r: i64,
    m2: u64,
}

fn to_u64(v: &BigRational, what: &str) -> Result<u64> {
    rational_to_biguint(v, what)?
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("{what} does not fit in 64 bits")))
}

pub(crate) fn merge_counts<K: Ord>(
    mut a: BTreeMap<K, u64>,
    b: BTreeMap<K, u64>,
) -> BTreeMap<K, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Weight distribution of a complete weight enumerator.
pub fn weights_of(cwe: &Cwe, length: u64) -> WeightDistribution {
    let mut wd = WeightDistribution::new();
    for (comp, &m) in cwe {
        *wd.entry(length - comp[0]).or_insert(0) += m;
    }
    wd
}

/// `[n, k, d]` from a weight distribution. Fails unless the total is a power
/// of `q` and only the zero message has weight zero.
pub fn params_of(wd: &WeightDistribution, n: u64, q: u64) -> Result<CodeParams> {
    let total: u64 = wd.values().sum();
    let mut k = 0;
    let mut s = 1;
    while s < total {
        s *= q;
        k += 1;
    }
    if s != total {
        return Err(Error::Consistency(format!(
            "{total} codewords is not a power of {q}"
        )));
    }
    if wd.get(&0) != Some(&1) {
        return Err(Error::Consistency(
            "a nonzero message maps to the zero codeword".into(),
        ));
    }
    let d = wd.keys().copied().find(|&w| w > 0).unwrap_or(0);
    Ok(CodeParams { n, k, d })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GriesmerReport {
    /// `sum_{i<k} ceil(d / q^i)`.
    pub bound: BigUint,
    pub n: u64,
    pub meets: bool,
    /// `n - bound`.
    pub slack: BigInt,
}

pub fn griesmer(p: &CodeParams, q: u64) -> GriesmerReport {
    let d = BigUint::from(p.d);
    let mut bound = BigUint::zero();
    let mut qi = BigUint::one();
    for _ in 0..p.k {
        bound += (&d + &qi - BigUint::one()) / &qi;
        qi *= q;
    }
    let slack = BigInt::from(p.n) - BigInt::from(bound.clone());
    GriesmerReport {
        meets: slack.is_zero(),
        bound,
        n: p.n,
        slack,
    }
}

/// True when the Griesmer verdict differs from the reading "meets iff
/// `m1 = r_Q = 1`".
pub fn griesmer_reading_divergence(report: &GriesmerReport, m1: usize, rank: usize) -> bool {
    report.meets != (m1 == 1 && rank == 1)
}

/// Sufficient minimality test: `w_min q > w_max (q - 1)` over nonzero weights.
pub fn ab_minimal(wd: &WeightDistribution, q: u64) -> bool {
    let nz: Vec<u64> = wd.keys().copied().filter(|&w| w > 0).collect();
    match (nz.first(), nz.last()) {
        (Some(&lo), Some(&hi)) => lo as u128 * q as u128 > hi as u128 * (q as u128 - 1),
        _ => false,
    }
}

/// Find a permutation of the nonzero symbols carrying `a` onto `b`.
/// Returns `perm` with `perm[i]` the position in `b` of symbol `i` of `a`.
pub fn cwe_relabeling(a: &Cwe, b: &Cwe, q: usize) -> Option<Vec<usize>> {
    if a == b {
        return Some((0..q).collect());
    }
    if a.values().sum::<u64>() != b.values().sum::<u64>() {
        return None;
    }
    let mut perm: Vec<usize> = (0..q).collect();
    let mut used = vec![false; q];
    used[0] = true;
    search_perm(a, b, q, 1, &mut perm, &mut used)
}

fn search_perm(
    a: &Cwe,
    b: &Cwe,
    q: usize,
    i: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<Vec<usize>> {
    if i == q {
        let mapped: Cwe = a
            .iter()
            .map(|(comp, &m)| {
                let mut v = vec![0; q];
                for (s, &cnt) in comp.iter().enumerate() {
                    v[perm[s]] = cnt;
                }
                (v, m)
            })
            .fold(Cwe::new(), |acc, (k, v)| {
                merge_counts(acc, BTreeMap::from([(k, v)]))
            });
        return (&mapped == b).then(|| perm.clone());
    }
    for j in 1..q {
        if used[j] {
            continue;
        }
        // prune: the multiset of symbol-i counts must match symbol-j counts
        let mut ca: Vec<(u64, u64)> = a.iter().map(|(c, &m)| (c[i], m)).collect();
        let mut cb: Vec<(u64, u64)> = b.iter().map(|(c, &m)| (c[j], m)).collect();
        ca.sort();
        cb.sort();
        if collapse(ca) != collapse(cb) {
            continue;
        }
        used[j] = true;
        perm[i] = j;
        if let Some(found) = search_perm(a, b, q, i + 1, perm, used) {
            return Some(found);
        }
        used[j] = false;
    }
    None
}

fn collapse(v: Vec<(u64, u64)>) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for (k, m) in v {
        *out.entry(k).or_insert(0) += m;
    }
    out
}

/// Default budget shared with the solution counts.
pub const BUDGET: u64 = DEFAULT_BUDGET;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::{FrobTerm, QuadFormSpec, TraceSquareTerm};

    fn code(p: u64, m: usize, m1: usize, m2: usize, spec: QuadFormSpec, v: Variant) -> QfCode {
        let t = FieldTower::build(p, m, m1, m2).unwrap();
        QfCode::new(QuadForm::new(&t, spec).unwrap(), v).unwrap()
    }

    fn tr_sq() -> QuadFormSpec {
        QuadFormSpec {
            frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
            ..Default::default()
        }
    }

    #[test]
    fn trace_functional_matches_field_trace() {
        let c = code(3, 2, 1, 2, tr_sq(), Variant::Homogeneous);
        let t = c.tower();
        for b in [1u64, 5, 17, 80] {
            let ly = c.trace_functional(&t.fq2.digits(b));
            for y in t.fq2.indices() {
                assert_eq!(
                    ly[y as usize],
                    t.fq2.trace_to(t.fq2.mul(b, y), &t.fq).unwrap()
                );
            }
        }
    }

    #[test]
    fn small_code_weights() {
        // Tr(x^2) on F_81 / F_3 with m2 = 3.
        let c = code(3, 1, 4, 3, tr_sq(), Variant::Homogeneous);
        let wd = c
            .weight_distribution_brute(Mode::Factored, Exec::Parallel, BUDGET)
            .unwrap();
        assert_eq!(wd, BTreeMap::from([(0, 1), (1458, 78), (1620, 2)]));
        assert_eq!(wd, c.weight_distribution_predicted().unwrap());
        let p = params_of(&wd, c.length(), 3).unwrap();
        assert_eq!(
            p,
            CodeParams {
                n: 2186,
                k: 4,
                d: 1458
            }
        );
        let g = griesmer(&p, 3);
        assert_eq!(g.bound, BigUint::from(2160u32));
        assert!(!g.meets);
        assert!(ab_minimal(&wd, 3));
    }

    #[test]
    fn factored_and_literal_agree() {
        for v in [Variant::Homogeneous, Variant::Affine] {
            let spec = QuadFormSpec {
                frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
                trace_square_terms: vec![TraceSquareTerm { scale: 1, inner: 3 }],
                matrix: None,
            };
            let c = code(3, 1, 3, 2, spec, v);
            let a = c.cwe_brute(Mode::Factored, Exec::Parallel, BUDGET).unwrap();
            let b = c
                .cwe_brute(Mode::Literal, Exec::Sequential, BUDGET)
                .unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c.cwe_predicted().unwrap());
        }
    }

    #[test]
    fn composition_matches_codeword() {
        let c = code(5, 1, 2, 1, tr_sq(), Variant::Affine);
        let msg = c.message(2, 3, 4).unwrap();
        let word = c.codeword(&msg).unwrap();
        let mut counts = vec![0; 5];
        for v in word {
            counts[c.position(v)] += 1;
        }
        assert_eq!(counts, c.composition(&msg, Mode::Factored));
    }

    #[test]
    fn relabeling_search() {
        let a: Cwe = BTreeMap::from([(vec![1, 2, 0], 3), (vec![3, 0, 0], 1)]);
        let b: Cwe = BTreeMap::from([(vec![1, 0, 2], 3), (vec![3, 0, 0], 1)]);
        assert_eq!(cwe_relabeling(&a, &b, 3), Some(vec![0, 2, 1]));
        let c: Cwe = BTreeMap::from([(vec![2, 1, 0], 3), (vec![3, 0, 0], 1)]);
        assert_eq!(cwe_relabeling(&a, &c, 3), None);
    }

    #[test]
    fn griesmer_meets_for_linear_forms() {
        // m1 = 1 forces r_Q = 1.
        let c = code(3, 1, 1, 2, tr_sq(), Variant::Homogeneous);
        let p = c.params_predicted().unwrap();
        let g = griesmer(&p, 3);
        assert!(g.meets);
        assert!(!griesmer_reading_divergence(&g, 1, 1));
    }

    #[test]
    fn budget_is_enforced() {
        let c = code(3, 1, 4, 3, tr_sq(), Variant::Homogeneous);
        assert!(matches!(
            c.cwe_brute(Mode::Literal, Exec::Parallel, 1000),
            Err(Error::Resource { .. })
        ));
    }
}
