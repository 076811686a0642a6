//! Exact arithmetic in small finite fields F_{p^k}, with the relative trace
//! of a cubic extension and table-based discrete logarithms.
//!
//! Fields here are tiny (at most a few thousand elements), so every field
//! carries full exp/log tables built once at construction. Elements are
//! stored as canonical indices: the coefficient vector (c_0, ..., c_{k-1})
//! of a residue mod the defining polynomial packs into sum c_i * p^i.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}, got {got}")]
    BadModulusDegree { expected: usize, got: String },
    #[error("modulus coefficient {0} is not reduced mod {1}")]
    BadModulusCoefficient(u64, u64),
    #[error("modulus is reducible: divisible by {witness}")]
    ReducibleModulus { witness: String },
    #[error("modulus is irreducible but not primitive: x has order {order}, a proper divisor of {need}")]
    NotPrimitive { order: u64, need: u64 },
    #[error("operands belong to different fields")]
    OwnerMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete log base has order {order}, not primitive (need order {need})")]
    BaseNotPrimitive { order: u64, need: u64 },
    #[error("discrete log of zero is undefined")]
    LogOfZero,
    #[error("extension degree {0} has no designated cubic subfield")]
    NoCubicSubfield(usize),
}

#[derive(Debug)]
struct FieldInner {
    p: u64,
    k: usize,
    /// Monic defining polynomial, constant term first, length k+1.
    modulus: Vec<u64>,
    /// p^k.
    size: u64,
    /// True when the class of x generates the multiplicative group.
    primitive: bool,
    /// exp[e] = index of g^e for e in [0, size-1); g is the class of x for
    /// k >= 2, and the smallest primitive root for a prime field.
    exp: Vec<u64>,
    /// log[idx] = e with g^e = idx, for idx != 0.
    log: Vec<u64>,
}

/// A concrete finite field F_{p^k}. Cheap to clone; all state is immutable.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}}", self.0.p, self.0.k)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus
    }
}
impl Eq for Field {}

fn is_prime(n: u64) -> bool {
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

/// Polynomials over F_p as coefficient vectors, constant term first, no
/// trailing zeros. Only what the irreducibility scan needs.
mod poly {
    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        debug_assert!(!b.is_empty());
        let mut r: Vec<u64> = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = super::mod_inv(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = (r[dr] * lead_inv) % p;
            if c != 0 {
                for i in 0..=db {
                    let idx = dr - db + i;
                    r[idx] = (r[idx] + p - (c * b[i]) % p) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        trim(r)
    }

    pub fn display(c: &[u64]) -> String {
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let t = match (i, ci) {
                (0, _) => format!("{ci}"),
                (1, 1) => "x".to_string(),
                (1, _) => format!("{ci}x"),
                (_, 1) => format!("x^{i}"),
                (_, _) => format!("{ci}x^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Field {
    /// Builds F_{p^k}. With no modulus given, picks the smallest monic
    /// primitive polynomial of degree k over F_p, ordering candidates by
    /// the integer value of their coefficient vector in base p (constant
    /// term least significant). The prime field k = 1 defaults to the
    /// modulus x and is exempt from the primitivity requirement.
    pub fn new(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k + 1 || m[k] != 1 {
                    return Err(FieldError::BadModulusDegree {
                        expected: k,
                        got: poly::display(&poly::trim(m.to_vec())),
                    });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::BadModulusCoefficient(c, p));
                }
                Self::check_modulus(p, k, m)?;
                m.to_vec()
            }
            None => Self::default_modulus(p, k)?,
        };
        Ok(Field(Arc::new(Self::build_inner(p, k, modulus))))
    }

    fn default_modulus(p: u64, k: usize) -> Result<Vec<u64>, FieldError> {
        if k == 1 {
            return Ok(vec![0, 1]);
        }
        let size = p.pow(k as u32);
        // Scan the p^k monic degree-k candidates in index order.
        for low in 0..size {
            let mut m = Vec::with_capacity(k + 1);
            let mut v = low;
            for _ in 0..k {
                m.push(v % p);
                v /= p;
            }
            m.push(1);
            if Self::check_modulus(p, k, &m).is_ok() {
                return Ok(m);
            }
        }
        unreachable!("a primitive polynomial of degree {k} exists over F_{p}")
    }

    /// Irreducibility by trial division, primitivity by direct order
    /// computation of the class of x.
    fn check_modulus(p: u64, k: usize, m: &[u64]) -> Result<(), FieldError> {
        if k == 1 {
            // Linear polynomials are irreducible; x itself is allowed as
            // the degenerate prime-field modulus.
            if m[0] == 0 {
                return Ok(());
            }
        }
        for d in 1..=k / 2 {
            let count = p.pow(d as u32);
            for low in 0..count {
                let mut f = Vec::with_capacity(d + 1);
                let mut v = low;
                for _ in 0..d {
                    f.push(v % p);
                    v /= p;
                }
                f.push(1);
                if poly::rem(m, &f, p).is_empty() {
                    return Err(FieldError::ReducibleModulus {
                        witness: poly::display(&f),
                    });
                }
            }
        }
        if k >= 2 {
            let need = p.pow(k as u32) - 1;
            let order = Self::order_of_x(p, k, m);
            if order != need {
                return Err(FieldError::NotPrimitive { order, need });
            }
        } else if m[0] != 0 {
            // Class of x is -c0; require it to generate F_p^*.
            let need = p - 1;
            let root = (p - m[0]) % p;
            let order = element_order_mod_p(root, p);
            if order != need {
                return Err(FieldError::NotPrimitive { order, need });
            }
        }
        Ok(())
    }

    fn order_of_x(p: u64, k: usize, m: &[u64]) -> u64 {
        let x_idx = p; // coefficient vector (0, 1, 0, ...)
        let mut acc = x_idx;
        let mut e = 1u64;
        let limit = p.pow(k as u32) - 1;
        while acc != 1 {
            acc = mul_poly_idx(acc, x_idx, p, k, m);
            e += 1;
            if e > limit {
                unreachable!("multiplicative order exceeds group order");
            }
        }
        e
    }

    fn build_inner(p: u64, k: usize, modulus: Vec<u64>) -> FieldInner {
        let size = p.pow(k as u32);
        let gen_idx = if k >= 2 {
            p
        } else {
            // Smallest primitive root of F_p; p = 2 has the root 1.
            (1..p)
                .find(|&r| element_order_mod_p(r, p) == p - 1)
                .unwrap_or(1)
        };
        let primitive = if k >= 2 {
            true // enforced by check_modulus / default scan
        } else {
            modulus[0] != 0 || p == 2
        };
        let n = (size - 1) as usize;
        let mut exp = vec![0u64; n];
        let mut log = vec![0u64; size as usize];
        let mut acc = 1u64;
        for (e, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = e as u64;
            acc = mul_poly_idx(acc, gen_idx, p, k, &modulus);
        }
        debug_assert_eq!(acc, 1, "generator order must be size - 1");
        FieldInner {
            p,
            k,
            modulus,
            size,
            primitive,
            exp,
            log,
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> u64 {
        self.0.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_primitive(&self) -> bool {
        self.0.primitive
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }

    /// The table generator: the class of x for k >= 2, the smallest
    /// primitive root for a prime field.
    pub fn generator(&self) -> FieldElem {
        self.elem(self.0.exp[if self.0.size > 2 { 1 } else { 0 }])
    }

    /// Element from its canonical index in [0, p^k).
    pub fn elem(&self, idx: u64) -> FieldElem {
        assert!(idx < self.0.size, "element index out of range");
        FieldElem {
            idx,
            field: self.clone(),
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        assert!(coeffs.len() <= self.0.k, "too many coefficients");
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            assert!(c < self.0.p, "coefficient not reduced mod p");
            idx = idx * self.0.p + c;
        }
        self.elem(idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.0.size).map(move |i| self.elem(i))
    }

    /// g^e for the table generator g.
    pub fn gen_pow(&self, e: u64) -> FieldElem {
        let n = self.0.size - 1;
        self.elem(self.0.exp[(e % n) as usize])
    }

    /// Least e >= 0 with base^e = y. Requires a primitive base and y != 0.
    pub fn discrete_log(&self, base: &FieldElem, y: &FieldElem) -> Result<u64, FieldError> {
        self.check_owner(base)?;
        self.check_owner(y)?;
        if y.idx == 0 {
            return Err(FieldError::LogOfZero);
        }
        let n = self.0.size - 1;
        if base.idx == 0 {
            return Err(FieldError::BaseNotPrimitive { order: 0, need: n });
        }
        let lb = self.0.log[base.idx as usize];
        let order = n / num_integer::gcd(lb, n).max(1);
        let order = if lb == 0 { 1 } else { order };
        if order != n {
            return Err(FieldError::BaseNotPrimitive { order, need: n });
        }
        // Solve e * lb = log(y) mod n; lb is invertible here.
        let ly = self.0.log[y.idx as usize];
        Ok(mul_mod_inv_solve(lb, ly, n))
    }

    /// Tr(x) = x + x^q + x^{q^2} down to the designated cubic subfield
    /// F_q, q = p^{k/3}. The result is x^q-invariant, hence lies in F_q.
    pub fn relative_trace(&self, x: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check_owner(x)?;
        if self.0.k % 3 != 0 {
            return Err(FieldError::NoCubicSubfield(self.0.k));
        }
        let q = self.0.p.pow((self.0.k / 3) as u32);
        let xq = x.pow(q);
        let xq2 = xq.pow(q);
        let t = x.add(&xq).unwrap().add(&xq2).unwrap();
        debug_assert_eq!(t.pow(q).idx, t.idx, "trace must be Frobenius-invariant");
        Ok(t)
    }

    /// Order q of the cubic subfield, when one exists.
    pub fn subfield_order(&self) -> Result<u64, FieldError> {
        if self.0.k % 3 != 0 {
            return Err(FieldError::NoCubicSubfield(self.0.k));
        }
        Ok(self.0.p.pow((self.0.k / 3) as u32))
    }

    fn check_owner(&self, e: &FieldElem) -> Result<(), FieldError> {
        if *self == e.field {
            Ok(())
        } else {
            Err(FieldError::OwnerMismatch)
        }
    }
}

/// Solve e * a = b mod n for e, assuming gcd(a, n) = 1.
fn mul_mod_inv_solve(a: u64, b: u64, n: u64) -> u64 {
    // Extended Euclid for a^{-1} mod n.
    let (mut r0, mut r1) = (a as i128, n as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    let inv = s0.rem_euclid(n as i128) as u64;
    ((inv as u128 * b as u128) % n as u128) as u64
}

fn element_order_mod_p(a: u64, p: u64) -> u64 {
    if a == 0 {
        return 0;
    }
    let mut acc = a % p;
    let mut e = 1;
    while acc != 1 {
        acc = acc * a % p;
        e += 1;
    }
    e
}

/// Multiply two elements given as canonical indices, by polynomial
/// multiplication and reduction. Only used to seed the tables.
fn mul_poly_idx(a: u64, b: u64, p: u64, k: usize, modulus: &[u64]) -> u64 {
    let unpack = |mut v: u64| {
        let mut c = vec![0u64; k];
        for slot in c.iter_mut() {
            *slot = v % p;
            v /= p;
        }
        c
    };
    let ca = unpack(a);
    let cb = unpack(b);
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in ca.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in cb.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce by the monic modulus: x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1}).
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            prod[d] = 0;
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + (p - modulus[i] % p) * c) % p;
            }
        }
    }
    let mut idx = 0u64;
    for &c in prod[..k].iter().rev() {
        idx = idx * p + c;
    }
    idx
}

/// An element of a specific field; arithmetic across fields is rejected.
#[derive(Clone)]
pub struct FieldElem {
    idx: u64,
    field: Field,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.idx, self.field)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.idx == other.idx && self.field == other.field
    }
}
impl Eq for FieldElem {}

impl FieldElem {
    pub fn index(&self) -> u64 {
        self.idx
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }

    pub fn coeffs(&self) -> Vec<u64> {
        let inner = &self.field.0;
        let mut v = self.idx;
        let mut c = vec![0u64; inner.k];
        for slot in c.iter_mut() {
            *slot = v % inner.p;
            v /= inner.p;
        }
        c
    }

    pub fn add(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        self.field.check_owner(rhs)?;
        let inner = &self.field.0;
        let (mut a, mut b) = (self.idx, rhs.idx);
        let mut idx = 0u64;
        let mut place = 1u64;
        for _ in 0..inner.k {
            idx += (a % inner.p + b % inner.p) % inner.p * place;
            a /= inner.p;
            b /= inner.p;
            place *= inner.p;
        }
        Ok(self.field.elem(idx))
    }

    pub fn neg(&self) -> FieldElem {
        let inner = &self.field.0;
        let mut a = self.idx;
        let mut idx = 0u64;
        let mut place = 1u64;
        for _ in 0..inner.k {
            idx += (inner.p - a % inner.p) % inner.p * place;
            a /= inner.p;
            place *= inner.p;
        }
        self.field.elem(idx)
    }

    pub fn sub(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        self.field.check_owner(rhs)?;
        if self.idx == 0 || rhs.idx == 0 {
            return Ok(self.field.zero());
        }
        let inner = &self.field.0;
        let n = inner.size - 1;
        let e = (inner.log[self.idx as usize] + inner.log[rhs.idx as usize]) % n;
        Ok(self.field.elem(inner.exp[e as usize]))
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.idx == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let inner = &self.field.0;
        let n = inner.size - 1;
        let e = (n - inner.log[self.idx as usize]) % n;
        Ok(self.field.elem(inner.exp[e as usize]))
    }

    pub fn div(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        self.mul(&rhs.inv()?)
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        if self.idx == 0 {
            return if e == 0 {
                self.field.one()
            } else {
                self.field.zero()
            };
        }
        let inner = &self.field.0;
        let n = inner.size - 1;
        let le = (inner.log[self.idx as usize] as u128 * e as u128 % n as u128) as u64;
        self.field.elem(inner.exp[le as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_modulus_f8_is_x3_x_1() {
        let f = Field::new(2, 3, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn default_modulus_prime_field_is_x() {
        let f = Field::new(3, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 3);
    }

    #[test]
    fn reducible_modulus_rejected_with_witness() {
        // x^3 + x^2 + x + 1 = (x+1)(x^2+1) over F_2
        let err = Field::new(2, 3, Some(&[1, 1, 1, 1])).unwrap_err();
        match err {
            FieldError::ReducibleModulus { witness } => assert_eq!(witness, "x+1"),
            other => panic!("expected reducibility error, got {other}"),
        }
    }

    #[test]
    fn irreducible_but_imprimitive_rejected() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible over F_2 but x has order 5.
        let err = Field::new(2, 4, Some(&[1, 1, 1, 1, 1])).unwrap_err();
        match err {
            FieldError::NotPrimitive { order, need } => {
                assert_eq!(order, 5);
                assert_eq!(need, 15);
            }
            other => panic!("expected primitivity error, got {other}"),
        }
    }

    #[test]
    fn non_prime_p_rejected() {
        assert_eq!(Field::new(6, 1, None).unwrap_err(), FieldError::NotPrime(6));
    }

    #[test]
    fn f8_generator_arithmetic() {
        let f = Field::new(2, 3, None).unwrap();
        let g = f.generator();
        // g * g^2 = g^3 = g + 1 under x^3 = x + 1
        let g2 = g.pow(2);
        assert_eq!(g.mul(&g2).unwrap(), f.from_coeffs(&[1, 1]));
        // g has order 7
        assert_eq!(g.mul(&g.pow(6)).unwrap(), f.one());
        // 1 * a = a
        for a in f.elements() {
            assert_eq!(f.one().mul(&a).unwrap(), a);
        }
    }

    #[test]
    fn owner_mismatch_rejected() {
        let f8 = Field::new(2, 3, None).unwrap();
        let f4 = Field::new(2, 2, None).unwrap();
        let err = f8.one().add(&f4.one()).unwrap_err();
        assert_eq!(err, FieldError::OwnerMismatch);
    }

    #[test]
    fn trace_f8_over_f2() {
        let f = Field::new(2, 3, None).unwrap();
        let g = f.generator();
        assert_eq!(f.relative_trace(&f.one()).unwrap(), f.one());
        assert!(f.relative_trace(&g).unwrap().is_zero());
        // Frobenius invariance of the trace
        let q = f.subfield_order().unwrap();
        for x in f.elements() {
            let t = f.relative_trace(&x).unwrap();
            let tq = f.relative_trace(&x.pow(q)).unwrap();
            assert_eq!(t, tq);
        }
    }

    #[test]
    fn trace_kernel_size_is_q_squared() {
        for (p, k) in [(2, 3), (3, 3), (2, 6), (5, 3)] {
            let f = Field::new(p, k, None).unwrap();
            let q = f.subfield_order().unwrap();
            let kernel = f
                .elements()
                .filter(|x| f.relative_trace(x).unwrap().is_zero())
                .count() as u64;
            assert_eq!(kernel, q * q, "trace kernel of F_{{{p}^{k}}}");
        }
    }

    #[test]
    fn trace_is_linear_over_subfield() {
        let f = Field::new(2, 6, None).unwrap();
        let q = f.subfield_order().unwrap();
        let n = f.order() - 1;
        // Subfield elements are the powers of g^((q^3-1)/(q-1)) plus zero.
        let step = n / (q - 1);
        let mut subfield: Vec<FieldElem> = (0..q - 1).map(|i| f.gen_pow(i * step)).collect();
        subfield.push(f.zero());
        for lam in &subfield {
            for x in f.elements().step_by(7) {
                for y in f.elements().step_by(5) {
                    let lhs = f
                        .relative_trace(&lam.mul(&x).unwrap().add(&y).unwrap())
                        .unwrap();
                    let rhs = lam
                        .mul(&f.relative_trace(&x).unwrap())
                        .unwrap()
                        .add(&f.relative_trace(&y).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn discrete_log_table() {
        let f = Field::new(2, 3, None).unwrap();
        let g = f.generator();
        assert_eq!(f.discrete_log(&g, &f.one()).unwrap(), 0);
        assert_eq!(f.discrete_log(&g, &g.pow(3)).unwrap(), 3);
        // g^3 = g + 1
        assert_eq!(f.discrete_log(&g, &f.from_coeffs(&[1, 1])).unwrap(), 3);
        assert_eq!(f.discrete_log(&g, &f.zero()).unwrap_err(), FieldError::LogOfZero);
    }

    #[test]
    fn discrete_log_rejects_imprimitive_base() {
        let f = Field::new(2, 3, None).unwrap();
        let err = f.discrete_log(&f.one(), &f.generator()).unwrap_err();
        assert!(matches!(err, FieldError::BaseNotPrimitive { order: 1, need: 7 }));
    }

    #[test]
    fn gen_pow_is_bijective_onto_nonzero() {
        let f = Field::new(3, 3, None).unwrap();
        let mut seen = vec![false; f.order() as usize];
        for e in 0..f.order() - 1 {
            let idx = f.gen_pow(e).index() as usize;
            assert_ne!(idx, 0);
            assert!(!seen[idx], "g^{e} repeats");
            seen[idx] = true;
        }
    }

    #[test]
    fn field_axioms_exhaustive_f9() {
        let f = Field::new(3, 2, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                for c in f.elements().step_by(3) {
                    let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                    let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
                if !b.is_zero() {
                    assert_eq!(b.mul(&b.inv().unwrap()).unwrap(), f.one());
                }
            }
        }
    }
}
