//! Finite fields built as a chain of relative extensions over a prime field.
//!
//! An element is stored as a single integer index: the coefficient vector
//! `(c_0, .., c_{d-1})` over the immediate base field, each coefficient itself
//! an index into the base, packed as `sum c_i * |base|^i`. Subfields along the
//! chain embed as constant polynomials, so an element lies in a subfield of
//! size `s` exactly when its index is below `s`.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::poly;
use crate::error::{param, Error, Result};

/// Fields up to this size get a full addition table.
const ADD_TABLE_LIMIT: u64 = 1024;
/// Fields up to this size get discrete log / antilog tables.
const LOG_TABLE_LIMIT: u64 = 1 << 20;

#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u64,
    base: Option<Field>,
    degree: usize,
    modulus: Vec<u64>,
    size: u64,
    base_size: u64,
    add_table: Option<Vec<u32>>,
    logs: Option<LogTables>,
    primitive: u64,
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.degree == other.0.degree
                && self.0.modulus == other.0.modulus
                && self.0.base == other.0.base)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.size)?;
        if let Some(b) = &self.0.base {
            write!(f, "/{:?} mod {:?}", b, self.0.modulus)?;
        }
        Ok(())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field `F_p`. `p` must be an odd prime.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 || !is_prime(p) {
            return param(format!("{p} is not an odd prime"));
        }
        if p > u32::MAX as u64 {
            return param(format!("prime {p} too large"));
        }
        Field::finish(Inner {
            p,
            base: None,
            degree: 1,
            modulus: Vec::new(),
            size: p,
            base_size: p,
            add_table: None,
            logs: None,
            primitive: 0,
        })
    }

    /// The extension `base[t]/(modulus)`. `modulus` lists base-field indices
    /// from the constant term up and must be monic and irreducible.
    pub fn extension(base: &Field, modulus: Vec<u64>) -> Result<Field> {
        if modulus.len() < 2 {
            return param("extension modulus must have degree at least 1");
        }
        if *modulus.last().unwrap() != 1 {
            return param("extension modulus must be monic");
        }
        if modulus.iter().any(|&c| c >= base.size()) {
            return param("modulus coefficient outside the base field");
        }
        let degree = modulus.len() - 1;
        let size = base
            .size()
            .checked_pow(degree as u32)
            .filter(|&s| s <= 1 << 40)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "extension of degree {degree} over {:?} is too large",
                    base
                ))
            })?;
        if !poly::is_irreducible(base, &modulus) {
            return param(format!("modulus {modulus:?} is reducible over {:?}", base));
        }
        Field::finish(Inner {
            p: base.p(),
            base: Some(base.clone()),
            degree,
            modulus,
            size,
            base_size: base.size(),
            add_table: None,
            logs: None,
            primitive: 0,
        })
    }

    /// Extension of `base` by the smallest monic irreducible of `degree`.
    pub fn extension_of_degree(base: &Field, degree: usize) -> Result<Field> {
        let modulus = poly::find_irreducible(base, degree)?;
        Field::extension(base, modulus)
    }

    fn finish(mut inner: Inner) -> Result<Field> {
        if inner.size <= ADD_TABLE_LIMIT && inner.base.is_some() {
            let tmp = Field(Arc::new(Inner {
                add_table: None,
                logs: None,
                ..clone_shallow(&inner)
            }));
            let n = inner.size;
            let mut t = vec![0u32; (n * n) as usize];
            for a in 0..n {
                for b in a..n {
                    let s = tmp.add_slow(a, b) as u32;
                    t[(a * n + b) as usize] = s;
                    t[(b * n + a) as usize] = s;
                }
            }
            inner.add_table = Some(t);
        }
        let tmp = Field(Arc::new(Inner {
            logs: None,
            ..clone_shallow(&inner)
        }));
        let g = tmp.find_primitive();
        inner.primitive = g;
        if inner.size <= LOG_TABLE_LIMIT {
            let n = inner.size;
            let mut exp = vec![0u32; (n - 1) as usize];
            let mut log = vec![u32::MAX; n as usize];
            let mut x = 1u64;
            for (k, e) in exp.iter_mut().enumerate() {
                *e = x as u32;
                log[x as usize] = k as u32;
                x = tmp.mul_slow(x, g);
            }
            inner.logs = Some(LogTables { exp, log });
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Degree over the immediate base (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Degree over the prime field.
    pub fn absolute_degree(&self) -> usize {
        match &self.0.base {
            None => 1,
            Some(b) => self.0.degree * b.absolute_degree(),
        }
    }

    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    /// True when `sub` appears in the chain of bases below (or equal to) `self`.
    pub fn contains_subfield(&self, sub: &Field) -> bool {
        let mut f = Some(self);
        while let Some(cur) = f {
            if cur == sub {
                return true;
            }
            f = cur.base();
        }
        false
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// Index of the first element, in index order, of full multiplicative order.
    pub fn primitive(&self) -> u64 {
        self.0.primitive
    }

    pub fn elem(&self, idx: u64) -> Result<Elem> {
        if idx >= self.size() {
            return Err(Error::Domain(format!("index {idx} outside {:?}", self)));
        }
        Ok(Elem {
            field: self.clone(),
            idx,
        })
    }

    /// Embed an element of a subfield along the chain.
    pub fn embed(&self, x: &Elem) -> Result<Elem> {
        if !self.contains_subfield(&x.field) {
            return Err(Error::Type(format!(
                "{:?} is not a subfield of {:?}",
                x.field, self
            )));
        }
        Ok(Elem {
            field: self.clone(),
            idx: x.idx,
        })
    }

    /// Coefficients over the immediate base, constant term first.
    pub fn digits(&self, mut idx: u64) -> Vec<u64> {
        let b = self.0.base_size;
        let mut out = Vec::with_capacity(self.0.degree);
        if self.is_prime_field() {
            out.push(idx);
            return out;
        }
        for _ in 0..self.0.degree {
            out.push(idx % b);
            idx /= b;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u64]) -> u64 {
        if self.is_prime_field() {
            return digits.first().copied().unwrap_or(0) % self.0.p;
        }
        let b = self.0.base_size;
        digits.iter().rev().fold(0, |acc, &d| acc * b + d)
    }

    /// Coordinates over the prime field, lowest first.
    pub fn prime_digits(&self, mut idx: u64) -> Vec<u64> {
        let n = self.absolute_degree();
        let p = self.0.p;
        (0..n)
            .map(|_| {
                let d = idx % p;
                idx /= p;
                d
            })
            .collect()
    }

    pub fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.0.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.0.add_table {
            return t[(a * self.0.size + b) as usize] as u64;
        }
        self.add_slow(a, b)
    }

    fn add_slow(&self, a: u64, b: u64) -> u64 {
        match &self.0.base {
            None => (a + b) % self.0.p,
            Some(base) => {
                let q = self.0.base_size;
                let (mut a, mut b) = (a, b);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..self.0.degree {
                    out += base.add(a % q, b % q) * place;
                    a /= q;
                    b /= q;
                    place *= q;
                }
                out
            }
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match &self.0.base {
            None => (self.0.p - a) % self.0.p,
            Some(base) => {
                let q = self.0.base_size;
                let mut a = a;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..self.0.degree {
                    out += base.neg(a % q) * place;
                    a /= q;
                    place *= q;
                }
                out
            }
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(l) = &self.0.logs {
            let n = self.0.size - 1;
            let e = (l.log[a as usize] as u64 + l.log[b as usize] as u64) % n;
            return l.exp[e as usize] as u64;
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        match &self.0.base {
            None => a * b % self.0.p,
            Some(base) => {
                let da = self.digits(a);
                let db = self.digits(b);
                let r = poly::mul_mod(base, &da, &db, &self.0.modulus);
                self.from_digits(&r)
            }
        }
    }

    pub fn pow_u64(&self, a: u64, mut e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(l) = &self.0.logs {
            let n = self.0.size - 1;
            let k = (l.log[a as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return l.exp[k] as u64;
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: u64, e: &BigUint) -> u64 {
        if e.is_zero() {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = BigUint::from(self.0.size - 1);
        let r = (e % &n).to_u64().unwrap();
        self.pow_u64(a, r)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if let Some(l) = &self.0.logs {
            let n = self.0.size - 1;
            let k = (n - l.log[a as usize] as u64) % n;
            return Ok(l.exp[k as usize] as u64);
        }
        Ok(self.pow_u64(a, self.0.size - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Discrete log to the primitive element. `None` for zero.
    pub fn log(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(l) = &self.0.logs {
            return Some(l.log[a as usize] as u64);
        }
        let g = self.0.primitive;
        let mut x = 1;
        for k in 0..self.0.size - 1 {
            if x == a {
                return Some(k);
            }
            x = self.mul(x, g);
        }
        None
    }

    /// `g^k` for the primitive element `g`.
    pub fn exp(&self, k: u64) -> u64 {
        self.pow_u64(self.0.primitive, k % (self.0.size - 1))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::Domain("order of zero".into()));
        }
        let n = self.0.size - 1;
        let mut ord = n;
        for l in prime_factors(n) {
            while ord % l == 0 && self.pow_u64(a, ord / l) == 1 {
                ord /= l;
            }
        }
        Ok(ord)
    }

    fn find_primitive(&self) -> u64 {
        let n = self.0.size - 1;
        let factors = prime_factors(n);
        (1..self.0.size)
            .find(|&g| factors.iter().all(|&l| self.pow_u64(g, n / l) != 1))
            .expect("a finite field has a primitive element")
    }

    /// The canonical ordering: `0, g^0, g^1, .., g^(size-2)`.
    pub fn ordering(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.size() as usize);
        out.push(0);
        let g = self.primitive();
        let mut x = 1;
        for _ in 0..self.size() - 1 {
            out.push(x);
            x = self.mul(x, g);
        }
        out
    }

    /// Position of an element in [`Field::ordering`].
    pub fn position(&self, a: u64) -> u64 {
        match self.log(a) {
            None => 0,
            Some(k) => k + 1,
        }
    }

    /// Quadratic character: 0 at 0, otherwise +1 on squares and -1 elsewhere.
    pub fn eta(&self, a: u64) -> i32 {
        match self.log(a) {
            None => 0,
            Some(k) if k % 2 == 0 => 1,
            Some(_) => -1,
        }
    }

    /// `x^(|target|)` applied `j` times.
    pub fn frobenius(&self, a: u64, target_size: u64, j: u32) -> u64 {
        let mut x = a;
        for _ in 0..j {
            x = self.pow_u64(x, target_size);
        }
        x
    }

    /// Relative trace `sum_j a^(|target|^j)` down to a subfield on the chain.
    pub fn trace_to(&self, a: u64, target: &Field) -> Result<u64> {
        if !self.contains_subfield(target) {
            return Err(Error::Type(format!("{:?} is not below {:?}", target, self)));
        }
        let s = self.absolute_degree() / target.absolute_degree();
        let mut acc = 0;
        let mut x = a;
        for _ in 0..s {
            acc = self.add(acc, x);
            x = self.pow_u64(x, target.size());
        }
        if acc >= target.size() {
            return Err(Error::Consistency(format!(
                "trace of {a} left the subfield"
            )));
        }
        Ok(acc)
    }

    /// Elements in index order.
    pub fn indices(&self) -> std::ops::Range<u64> {
        0..self.size()
    }
}

fn clone_shallow(i: &Inner) -> Inner {
    Inner {
        p: i.p,
        base: i.base.clone(),
        degree: i.degree,
        modulus: i.modulus.clone(),
        size: i.size,
        base_size: i.base_size,
        add_table: i.add_table.clone(),
        logs: None,
        primitive: i.primitive,
    }
}

/// A field element carrying its field, for mixed-field checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct Elem {
    field: Field,
    idx: u64,
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.field.digits(self.idx))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Elem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn index(&self) -> u64 {
        self.idx
    }

    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }

    /// Coefficients over the immediate base field.
    pub fn coeffs(&self) -> Vec<Elem> {
        let digits = self.field.digits(self.idx);
        match self.field.base() {
            None => vec![self.clone()],
            Some(b) => digits
                .into_iter()
                .map(|d| Elem {
                    field: b.clone(),
                    idx: d,
                })
                .collect(),
        }
    }

    fn same_field(&self, other: &Elem) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Type(format!(
                "operands live in different fields: {:?} and {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn arith(&self, other: &Elem, op: Op) -> Result<Elem> {
        self.same_field(other)?;
        let f = &self.field;
        let idx = match op {
            Op::Add => f.add(self.idx, other.idx),
            Op::Sub => f.sub(self.idx, other.idx),
            Op::Mul => f.mul(self.idx, other.idx),
            Op::Div => f.div(self.idx, other.idx)?,
        };
        Ok(Elem {
            field: f.clone(),
            idx,
        })
    }

    pub fn add(&self, other: &Elem) -> Result<Elem> {
        self.arith(other, Op::Add)
    }

    pub fn sub(&self, other: &Elem) -> Result<Elem> {
        self.arith(other, Op::Sub)
    }

    pub fn mul(&self, other: &Elem) -> Result<Elem> {
        self.arith(other, Op::Mul)
    }

    pub fn div(&self, other: &Elem) -> Result<Elem> {
        self.arith(other, Op::Div)
    }

    pub fn neg(&self) -> Elem {
        Elem {
            field: self.field.clone(),
            idx: self.field.neg(self.idx),
        }
    }

    pub fn inv(&self) -> Result<Elem> {
        Ok(Elem {
            field: self.field.clone(),
            idx: self.field.inv(self.idx)?,
        })
    }

    /// Power with an arbitrary integer exponent; negative exponents invert
    /// first, and `0^0 = 1`.
    pub fn pow(&self, e: &BigInt) -> Result<Elem> {
        let f = &self.field;
        let base = if e.sign() == Sign::Minus {
            f.inv(self.idx)?
        } else {
            self.idx
        };
        let mag = e.magnitude();
        Ok(Elem {
            field: f.clone(),
            idx: f.pow_big(base, mag),
        })
    }

    pub fn trace_to(&self, target: &Field) -> Result<Elem> {
        Ok(Elem {
            field: target.clone(),
            idx: self.field.trace_to(self.idx, target)?,
        })
    }

    pub fn eta(&self) -> i32 {
        self.field.eta(self.idx)
    }

    pub fn order(&self) -> Result<u64> {
        self.field.order(self.idx)
    }
}

/// Integer `a^e` as a big integer.
pub(crate) fn big_pow(a: u64, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(a), e as usize)
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f9() -> Field {
        let f3 = Field::prime(3).unwrap();
        Field::extension_of_degree(&f3, 2).unwrap()
    }

    #[test]
    fn prime_field_rejects_bad_p() {
        assert!(matches!(Field::prime(2), Err(Error::Parameter(_))));
        assert!(matches!(Field::prime(9), Err(Error::Parameter(_))));
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn small_moduli() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f9().modulus(), &[1, 0, 1]);
        let f5 = Field::prime(5).unwrap();
        let f25 = Field::extension_of_degree(&f5, 2).unwrap();
        assert_eq!(f25.modulus(), &[2, 0, 1]);
        let lin = Field::extension_of_degree(&f3, 1).unwrap();
        assert_eq!(lin.modulus(), &[0, 1]);
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::prime(3).unwrap().primitive(), 2);
        assert_eq!(Field::prime(5).unwrap().primitive(), 2);
        assert_eq!(Field::prime(7).unwrap().primitive(), 3);
        // In F_3[u]/(u^2+1), u has order 4 and 1+u (index 4) has order 8.
        let f = f9();
        assert_eq!(f.order(3).unwrap(), 4);
        assert_eq!(f.primitive(), 4);
    }

    #[test]
    fn ordering_is_a_permutation() {
        let f = f9();
        let mut ord = f.ordering();
        assert_eq!(ord[0], 0);
        assert_eq!(ord[1], 1);
        assert_eq!(ord[2], f.primitive());
        for (k, &x) in ord.iter().enumerate() {
            assert_eq!(f.position(x), k as u64);
        }
        ord.sort();
        assert_eq!(ord, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn mixed_field_operands() {
        let f3 = Field::prime(3).unwrap();
        let f5 = Field::prime(5).unwrap();
        let a = f3.elem(1).unwrap();
        let b = f5.elem(1).unwrap();
        assert!(matches!(a.add(&b), Err(Error::Type(_))));
        assert!(matches!(a.div(&f3.elem(0).unwrap()), Err(Error::Domain(_))));
    }

    #[test]
    fn pow_edge_cases() {
        let f = f9();
        let z = f.elem(0).unwrap();
        assert_eq!(z.pow(&BigInt::from(0)).unwrap().index(), 1);
        let x = f.elem(5).unwrap();
        let inv = x.pow(&BigInt::from(-1)).unwrap();
        assert_eq!(x.mul(&inv).unwrap().index(), 1);
        let huge: BigInt = BigInt::from(8u32).pow(40) + 3;
        assert_eq!(x.pow(&huge).unwrap(), x.pow(&BigInt::from(3)).unwrap());
    }

    #[test]
    fn trace_of_f9() {
        let f3 = Field::prime(3).unwrap();
        let f = f9();
        // Tr(u) = u + u^3 = u - u = 0, Tr(1) = 2.
        assert_eq!(f.trace_to(3, &f3).unwrap(), 0);
        assert_eq!(f.trace_to(1, &f3).unwrap(), 2);
    }

    #[test]
    fn eta_counts_squares() {
        let f = f9();
        let plus = f.indices().filter(|&a| f.eta(a) == 1).count();
        assert_eq!(plus, 4);
        // eta agrees with Euler's criterion.
        for a in 1..9 {
            let e = f.pow_u64(a, 4);
            assert_eq!(e == 1, f.eta(a) == 1);
        }
    }

    fn tower_fields() -> Vec<Field> {
        let f3 = Field::prime(3).unwrap();
        let f5 = Field::prime(5).unwrap();
        let f9 = Field::extension_of_degree(&f3, 2).unwrap();
        let f81 = Field::extension_of_degree(&f9, 2).unwrap();
        let f125 = Field::extension_of_degree(&f5, 3).unwrap();
        let f3_7 = Field::extension_of_degree(&f3, 7).unwrap();
        vec![f3, f5, f9, f81, f125, f3_7]
    }

    proptest! {
        #[test]
        fn field_axioms(which in 0usize..6, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let f = &tower_fields()[which];
            let n = f.size();
            let (a, b, c) = (a % n, b % n, c % n);
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                prop_assert_eq!(f.pow_u64(a, n - 1), 1);
            }
            // Frobenius is additive.
            let p = f.p();
            prop_assert_eq!(f.pow_u64(f.add(a, b), p), f.add(f.pow_u64(a, p), f.pow_u64(b, p)));
        }

        #[test]
        fn trace_is_linear_and_transitive(a in 0u64..81, b in 0u64..81, c in 0u64..3) {
            let f3 = Field::prime(3).unwrap();
            let f9 = Field::extension_of_degree(&f3, 2).unwrap();
            let f81 = Field::extension_of_degree(&f9, 2).unwrap();
            let t = |x| f81.trace_to(x, &f9).unwrap();
            prop_assert_eq!(t(f81.add(a, b)), f9.add(t(a), t(b)));
            prop_assert_eq!(t(f81.mul(c, a)), f9.mul(c, t(a)));
            let direct = f81.trace_to(a, &f3).unwrap();
            let stepped = f9.trace_to(t(a), &f3).unwrap();
            prop_assert_eq!(direct, stepped);
        }
    }
}
