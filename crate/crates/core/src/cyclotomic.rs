//! Exact arithmetic in `Z[zeta_p]` and the character sums behind the
//! solution counts.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gf::{big_pow, Field, FieldTower};
use crate::quadform::{QuadForm, QuadFormAnalysis};

/// An element `sum_{i < p-1} c_i zeta^i` of `Z[zeta_p]`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycInt {
    p: u64,
    coords: Vec<BigInt>,
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "Z[z{}]({})", self.p, parts.join(", "))
    }
}

impl CycInt {
    pub fn zero(p: u64) -> CycInt {
        CycInt {
            p,
            coords: vec![BigInt::zero(); (p - 1) as usize],
        }
    }

    pub fn from_int(p: u64, n: impl Into<BigInt>) -> CycInt {
        let mut z = CycInt::zero(p);
        z.coords[0] = n.into();
        z
    }

    pub fn one(p: u64) -> CycInt {
        CycInt::from_int(p, 1)
    }

    /// `sum_j counts[j] * zeta^j` for `j < p`.
    pub fn from_exponent_counts<T: Into<BigInt> + Copy>(p: u64, counts: &[T]) -> CycInt {
        assert_eq!(counts.len() as u64, p, "one count per residue");
        let top: BigInt = counts[(p - 1) as usize].into();
        // zeta^(p-1) = -(1 + zeta + .. + zeta^(p-2))
        let coords = counts[..(p - 1) as usize]
            .iter()
            .map(|&c| c.into() - &top)
            .collect();
        CycInt { p, coords }
    }

    /// `zeta^k`.
    pub fn zeta_pow(p: u64, k: u64) -> CycInt {
        let mut counts = vec![0i64; p as usize];
        counts[(k % p) as usize] = 1;
        CycInt::from_exponent_counts(p, &counts)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    fn check(&self, other: &CycInt) -> Result<()> {
        if self.p != other.p {
            return Err(Error::Type(format!(
                "mixed cyclotomic rings Z[zeta_{}] and Z[zeta_{}]",
                self.p, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt { p: self.p, coords })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            p: self.p,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt {
            p: self.p,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                acc[(i + j) % p] += a * b;
            }
        }
        let top = acc[p - 1].clone();
        let coords = acc[..p - 1].iter().map(|c| c - &top).collect();
        Ok(CycInt { p: self.p, coords })
    }

    pub fn pow(&self, e: u32) -> CycInt {
        let mut acc = CycInt::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }
}

/// `p* = (-1)^((p-1)/2) p`.
pub fn pstar(p: u64) -> i64 {
    if p % 4 == 1 {
        p as i64
    } else {
        -(p as i64)
    }
}

/// The quadratic Gauss sum `sum_{x in F_p} zeta^(x^2)`.
pub fn gauss_sum(p: u64) -> CycInt {
    let mut counts = vec![0i64; p as usize];
    for x in 0..p {
        counts[(x * x % p) as usize] += 1;
    }
    CycInt::from_exponent_counts(p, &counts)
}

/// An element of `Z[zeta_p][1/n]`, kept as numerator over a positive integer.
#[derive(Clone, Debug)]
pub struct CycFrac {
    pub num: CycInt,
    pub den: BigInt,
}

impl PartialEq for CycFrac {
    fn eq(&self, other: &Self) -> bool {
        self.num.p == other.num.p && self.num.scale(&other.den) == other.num.scale(&self.den)
    }
}

impl CycFrac {
    pub fn from_cyc(num: CycInt) -> CycFrac {
        CycFrac {
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_rational(p: u64, r: &BigRational) -> CycFrac {
        let (n, d) = (r.numer().clone(), r.denom().clone());
        let (n, d) = if d.is_negative() { (-n, -d) } else { (n, d) };
        CycFrac {
            num: CycInt::from_int(p, n),
            den: d,
        }
    }

    pub fn mul(&self, other: &CycFrac) -> Result<CycFrac> {
        Ok(CycFrac {
            num: self.num.mul(&other.num)?,
            den: &self.den * &other.den,
        })
    }

    pub fn add(&self, other: &CycFrac) -> Result<CycFrac> {
        let a = self.num.scale(&other.den);
        let b = other.num.scale(&self.den);
        Ok(CycFrac {
            num: a.add(&b)?,
            den: &self.den * &other.den,
        })
    }

    pub fn scale(&self, r: &BigRational) -> CycFrac {
        CycFrac {
            num: self.num.scale(r.numer()),
            den: &self.den * r.denom(),
        }
    }

    /// The rational number this equals, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num
            .as_integer()
            .map(|n| BigRational::new(n, self.den.clone()))
    }
}

/// `(p*)^(e/2)`, with `(p*)^(1/2)` taken to be the Gauss sum.
pub fn pstar_half_power(p: u64, e: i64) -> CycFrac {
    let ps = BigRational::from_integer(BigInt::from(pstar(p)));
    let half = e.div_euclid(2);
    let rational = if half >= 0 {
        num_traits::pow(ps, half as usize)
    } else {
        num_traits::pow(ps.recip(), (-half) as usize)
    };
    let base = if e.rem_euclid(2) == 1 {
        CycFrac::from_cyc(gauss_sum(p))
    } else {
        CycFrac::from_cyc(CycInt::one(p))
    };
    base.scale(&rational)
}

fn qpow(q: u64, e: i64) -> BigRational {
    let qb = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(qb, e as usize)
    } else {
        num_traits::pow(qb.recip(), (-e) as usize)
    }
}

/// `upsilon(b)`: `q - 1` at zero, `-1` elsewhere.
pub fn upsilon(q: u64, b: u64) -> i64 {
    if b == 0 {
        q as i64 - 1
    } else {
        -1
    }
}

fn trace_table(fq: &Field, fp: &Field) -> Vec<u64> {
    fq.indices()
        .map(|x| fq.trace_to(x, fp).expect("F_p is below F_q"))
        .collect()
}

/// `sum_{z != 0} eta(z)^k zeta^(Tr(z b))`, by enumeration.
pub fn eta_twisted_sum_brute(fq: &Field, k: u32, b: u64) -> CycInt {
    let p = fq.p();
    let fp = Field::prime(p).expect("characteristic is an odd prime");
    let tr = trace_table(fq, &fp);
    let mut counts = vec![0i64; p as usize];
    for z in 1..fq.size() {
        let w = if k % 2 == 0 { 1 } else { fq.eta(z) as i64 };
        counts[tr[fq.mul(z, b) as usize] as usize] += w;
    }
    CycInt::from_exponent_counts(p, &counts)
}

/// Closed form of [`eta_twisted_sum_brute`].
pub fn eta_twisted_sum_closed(fq: &Field, k: u32, b: u64) -> CycFrac {
    let p = fq.p();
    let q = fq.size();
    let m = fq.absolute_degree() as i64;
    if k % 2 == 0 {
        return CycFrac::from_cyc(CycInt::from_int(p, upsilon(q, b)));
    }
    let sign = if (m - 1) % 2 == 0 { 1 } else { -1 } * fq.eta(fq.neg(b)) as i64;
    let coeff = BigRational::from_integer(BigInt::from(sign * q as i64));
    pstar_half_power(p, -m).scale(&coeff)
}

/// `sum_{x in F_{q^m1}} zeta^(Tr_{q/p}(z Q(x)))`, by enumeration.
pub fn qf_exp_sum_brute(form: &QuadForm, z: u64) -> CycInt {
    let t = form.tower();
    let p = t.p;
    let tr = trace_table(&t.fq, &t.fp);
    let mut counts = vec![0i64; p as usize];
    for &v in form.values() {
        counts[tr[t.fq.mul(z, v) as usize] as usize] += 1;
    }
    CycInt::from_exponent_counts(p, &counts)
}

/// Closed form of [`qf_exp_sum_brute`] from the invariants of the form.
pub fn qf_exp_sum_closed(tower: &FieldTower, a: &QuadFormAnalysis, z: u64) -> CycFrac {
    let p = tower.p;
    let q = tower.q();
    let m1 = tower.m1 as i64;
    let r = a.rank as i64;
    if z == 0 {
        return CycFrac::from_cyc(CycInt::from_int(p, big_int(big_pow(q, m1 as u64))));
    }
    if r % 2 == 0 {
        let v = qpow(q, m1 - r / 2) * BigRational::from_integer(BigInt::from(a.eps));
        return CycFrac::from_rational(p, &v);
    }
    let m = tower.m as i64;
    let sign = if (m - 1) % 2 == 0 { 1 } else { -1 }
        * tower.fq.eta(tower.fq.neg(z)) as i64
        * a.eps_q as i64;
    let coeff = qpow(q, m1) * BigRational::from_integer(BigInt::from(sign));
    pstar_half_power(p, -m * r).scale(&coeff)
}

fn big_int(u: BigUint) -> BigInt {
    BigInt::from(u)
}

/// Predicted `#{(x, y) : a Q(x) + Tr(b y) + c = beta}` over all of
/// `F_{q^m1} x F_{q^m2}`. `b` only matters through whether it is zero.
pub fn count_solutions(
    tower: &FieldTower,
    an: &QuadFormAnalysis,
    a: u64,
    b: u64,
    beta: u64,
    c: u64,
) -> Result<BigUint> {
    let fq = &tower.fq;
    let q = tower.q();
    let big_m = tower.total_degree() as i64;
    let r = an.rank as i64;
    let shift = fq.sub(beta, c);
    let base = qpow(q, big_m - 1);
    let one = BigRational::one();
    let value = if a == 0 && b == 0 {
        if shift == 0 {
            qpow(q, big_m)
        } else {
            BigRational::zero()
        }
    } else if b != 0 {
        base
    } else if r % 2 == 0 {
        let t = qpow(q, -r / 2)
            * BigRational::from_integer(BigInt::from(an.eps as i64 * upsilon(q, shift)));
        base * (one + t)
    } else {
        let e = fq.eta(fq.neg(fq.mul(a, shift))) as i64;
        let t = qpow(q, (1 - r) / 2) * BigRational::from_integer(BigInt::from(an.eps as i64 * e));
        base * (one + t)
    };
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Consistency(format!(
            "solution count {value} is not a natural number"
        )));
    }
    Ok(value.to_integer().to_biguint().expect("nonnegative"))
}

/// Default enumeration budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Literal count of `(x, y)` with `a Q(x) + Tr(b y) + c = beta`.
pub fn count_solutions_brute(
    form: &QuadForm,
    a: u64,
    b: u64,
    beta: u64,
    c: u64,
    budget: u64,
) -> Result<u64> {
    let t = form.tower();
    let (fq, fq2) = (&t.fq, &t.fq2);
    let points = fq2.size().checked_mul(t.fq1.size()).unwrap_or(u64::MAX);
    if points > budget {
        return Err(Error::Resource {
            what: "solution count".into(),
            needed: points.to_string(),
            budget,
        });
    }
    let ly: Vec<u64> = fq2
        .indices()
        .map(|y| fq2.trace_to(fq2.mul(b, y), fq).expect("F_q below"))
        .collect();
    let mut n = 0;
    for &qx in form.values() {
        let s = fq.add(fq.mul(a, qx), c);
        for &l in &ly {
            if fq.add(s, l) == beta {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Exact `q^e` as a big unsigned integer.
pub fn q_pow(q: u64, e: u64) -> BigUint {
    big_pow(q, e)
}

pub(crate) fn rational_to_biguint(v: &BigRational, what: &str) -> Result<BigUint> {
    if !v.is_integer() || v.is_negative() {
        return Err(Error::Consistency(format!(
            "{what} = {v} is not a natural number"
        )));
    }
    Ok(v.to_integer().to_biguint().expect("nonnegative"))
}

pub(crate) fn rational_q_pow(q: u64, e: i64) -> BigRational {
    qpow(q, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::{FrobTerm, QuadFormSpec};
    use proptest::prelude::*;

    #[test]
    fn gauss_sum_squares_to_pstar() {
        for p in [3u64, 5, 7, 11, 13] {
            let g = gauss_sum(p);
            assert_eq!(
                g.mul(&g).unwrap().as_integer(),
                Some(BigInt::from(pstar(p)))
            );
        }
    }

    #[test]
    fn zeta_relation() {
        // 1 + zeta + .. + zeta^(p-1) = 0
        let p = 7;
        let mut acc = CycInt::zero(p);
        for k in 0..p {
            acc = acc.add(&CycInt::zeta_pow(p, k)).unwrap();
        }
        assert!(acc.is_zero());
        assert_eq!(CycInt::zeta_pow(p, 3).pow(7), CycInt::one(p));
    }

    #[test]
    fn mixed_rings() {
        assert!(matches!(
            CycInt::one(3).add(&CycInt::one(5)),
            Err(Error::Type(_))
        ));
    }

    #[test]
    fn gauss_sum_over_f3_is_twisted_sum() {
        // sum_{z != 0} eta(z) zeta^z over F_3 is zeta - zeta^2 = 1 + 2 zeta.
        let f3 = Field::prime(3).unwrap();
        let s = eta_twisted_sum_brute(&f3, 1, 1);
        assert_eq!(s, gauss_sum(3));
        assert_eq!(s.coords(), &[BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn twisted_sums_match_closed_forms() {
        for (p, m) in [(3u64, 1usize), (3, 2), (5, 1), (3, 3), (5, 2), (7, 1)] {
            let t = FieldTower::build(p, m, 1, 1).unwrap();
            for b in t.fq.indices() {
                for k in 0..2 {
                    let brute = CycFrac::from_cyc(eta_twisted_sum_brute(&t.fq, k, b));
                    assert_eq!(
                        brute,
                        eta_twisted_sum_closed(&t.fq, k, b),
                        "p={p} m={m} b={b} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn count_example_value() {
        // Tr(x^2) over F_81/F_3 with m2 = 3: a != 0, b = 0, beta = 0 gives 567.
        let t = FieldTower::build(3, 1, 4, 3).unwrap();
        let form = QuadForm::new(
            &t,
            QuadFormSpec {
                frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
                ..Default::default()
            },
        )
        .unwrap();
        let an = form.analyze().unwrap();
        assert_eq!(
            count_solutions(&t, &an, 1, 0, 0, 0).unwrap(),
            BigUint::from(567u32)
        );
        assert_eq!(
            count_solutions_brute(&form, 1, 0, 0, 0, DEFAULT_BUDGET).unwrap(),
            567
        );
    }

    #[test]
    fn brute_count_respects_budget() {
        let t = FieldTower::build(3, 1, 4, 3).unwrap();
        let form = QuadForm::new(
            &t,
            QuadFormSpec {
                frobenius_terms: vec![FrobTerm { coeff: 1, power: 0 }],
                ..Default::default()
            },
        )
        .unwrap();
        assert!(matches!(
            count_solutions_brute(&form, 1, 0, 0, 0, 100),
            Err(Error::Resource { .. })
        ));
    }

    proptest! {
        #[test]
        fn ring_laws(a in proptest::collection::vec(-20i64..20, 5), b in proptest::collection::vec(-20i64..20, 5), c in proptest::collection::vec(-20i64..20, 5)) {
            let p = 5;
            let (x, y, z) = (CycInt::from_exponent_counts(p, &a), CycInt::from_exponent_counts(p, &b), CycInt::from_exponent_counts(p, &c));
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        }
    }
}
