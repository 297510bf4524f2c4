//! Finite field arithmetic in polynomial basis over F_p, univariate
//! polynomials, primitive elements and the exponent-based vertex labeling
//! used throughout the graph output.
//!
//! A single [`Field`] instance always represents the *working* field
//! F_{p^s}; towers are flattened into one extension of F_p and subfields are
//! recognised by the x^q = x test. Construction is deterministic: when no
//! modulus is supplied the lexicographically smallest irreducible one is
//! used, and the primitive element is the smallest in index order, so vertex
//! labels are reproducible across runs.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

/// Hard cap on field size; everything here is designed for desk scale.
pub const MAX_FIELD_SIZE: u128 = 1 << 24;

static NEXT_FIELD_ID: AtomicU64 = AtomicU64::new(1);

/// Element of a [`Field`], stored as coefficients of the polynomial basis
/// 1, x, ..., x^{s-1} over F_p (little-endian, each in [0, p)).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    fid: u64,
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// Point of the projective line P^1(F_{p^s}) = F_{p^s} ∪ {∞}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjVertex {
    Finite(FieldElem),
    Infinity,
}

/// Descriptor of F_{p^s} with a fixed irreducible modulus and a fixed
/// primitive element. Immutable after construction.
pub struct Field {
    p: u64,
    s: u32,
    q: u64,
    /// Monic modulus of degree s over F_p, little-endian, length s+1.
    /// For s = 1 this is x itself, i.e. [0, 1].
    modulus: Vec<u64>,
    g: Vec<u64>,
    /// dlog[index(x)] = m with x = g^m; entry for the zero element is unused.
    dlog: Vec<u32>,
    id: u64,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Field(p={}, s={}, modulus={:?})", self.p, self.s, self.modulus)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// --- dense polynomial arithmetic over F_p on raw u64 coefficient vectors,
//     used only for modulus search/verification ---

fn ppoly_trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

fn ppoly_rem(f: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut f = f.to_vec();
    ppoly_trim(&mut f);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while f.len() > dm {
        let lead = *f.last().unwrap();
        if lead == 0 {
            f.pop();
            continue;
        }
        let c = (lead as u128 * lead_inv as u128 % p as u128) as u64;
        let shift = f.len() - 1 - dm;
        for i in 0..=dm {
            let t = (c as u128 * m[i] as u128 % p as u128) as u64;
            f[shift + i] = (f[shift + i] + p - t) % p;
        }
        f.pop();
    }
    ppoly_trim(&mut f);
    if f.is_empty() {
        f.push(0);
    }
    f
}

fn ppoly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    ppoly_rem(&prod, m, p)
}

fn ppoly_powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = ppoly_rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = ppoly_mulmod(&r, &b, m, p);
        }
        b = ppoly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn ppoly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    ppoly_trim(&mut f);
    ppoly_trim(&mut g);
    while !(g.len() == 1 && g[0] == 0) {
        let r = ppoly_rem(&f, &g, p);
        f = g;
        g = r;
    }
    f
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Rabin irreducibility: f (monic, degree s) is irreducible over F_p iff
/// x^{p^s} = x mod f and gcd(x^{p^{s/l}} - x, f) = 1 for every prime l | s.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let s = (modulus.len() - 1) as u32;
    if s == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    // x^{p^k} mod f by repeated p-powering
    let frob_power = |k: u32| -> Vec<u64> {
        let mut r = x.clone();
        for _ in 0..k {
            r = ppoly_powmod(&r, p, modulus, p);
        }
        r
    };
    let sub_x = |f: &[u64]| -> Vec<u64> {
        let mut d = f.to_vec();
        while d.len() < 2 {
            d.push(0);
        }
        d[1] = (d[1] + p - 1) % p;
        ppoly_trim(&mut d);
        d
    };
    let top = sub_x(&frob_power(s));
    if !(top.len() == 1 && top[0] == 0) {
        return false;
    }
    for (l, _) in factor_u64(s as u64) {
        let mid = sub_x(&frob_power(s / l as u32));
        let g = ppoly_gcd(&mid, modulus, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// Build F_{p^s}. When `modulus` is `None` and s > 1, the
    /// lexicographically smallest monic irreducible of degree s is searched
    /// for deterministically (low coefficients enumerated as base-p digits).
    pub fn new(p: u64, s: u32, modulus: Option<Vec<i64>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 {
            return Err(Error::Schema("extension degree must be >= 1".into()));
        }
        let q = (p as u128).checked_pow(s).filter(|&q| q <= MAX_FIELD_SIZE).ok_or(
            Error::ScaleExceeded { size: (p as u128).pow(s.min(8)), cap: MAX_FIELD_SIZE },
        )? as u64;
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
                if m.len() != s as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::Schema(format!(
                        "modulus must be monic of degree {s} over F_{p}"
                    )));
                }
                if s > 1 && !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None if s == 1 => vec![0, 1],
            None => Self::search_modulus(p, s).ok_or(Error::ReducibleModulus(p))?,
        };
        let mut field = Field { p, s, q, modulus, g: vec![], dlog: vec![], id: 0 };
        field.g = field.search_primitive().coeffs;
        field.dlog = field.build_dlog();
        field.id = NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed);
        Ok(field)
    }

    fn search_modulus(p: u64, s: u32) -> Option<Vec<u64>> {
        // enumerate lower coefficients as a base-p counter, smallest first
        let q = (p as u128).pow(s);
        let mut lower = 0u128;
        while lower < q {
            let mut m = Vec::with_capacity(s as usize + 1);
            let mut n = lower;
            for _ in 0..s {
                m.push((n % p as u128) as u64);
                n /= p as u128;
            }
            m.push(1);
            if is_irreducible(&m, p) {
                return Some(m);
            }
            lower += 1;
        }
        None
    }

    fn search_primitive(&self) -> FieldElem {
        let n = self.q - 1;
        let factors = factor_u64(n);
        'cand: for idx in 1..self.q {
            let a = self.elem_from_index(idx);
            for &(l, _) in &factors {
                if self.pow(&a, n / l) == self.one() {
                    continue 'cand;
                }
            }
            return a;
        }
        unreachable!("a primitive element always exists")
    }

    fn build_dlog(&self) -> Vec<u32> {
        let mut dlog = vec![0u32; self.q as usize];
        let g = FieldElem { fid: self.id, coeffs: self.g.clone() };
        let mut acc = self.one();
        for m in 0..self.q - 1 {
            dlog[self.index_of(&acc) as usize] = m as u32;
            acc = self.mul(&acc, &g);
        }
        debug_assert_eq!(acc, self.one());
        dlog
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.s
    }
    pub fn size(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    /// The fixed primitive element g.
    pub fn generator(&self) -> FieldElem {
        FieldElem { fid: self.id, coeffs: self.g.clone() }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { fid: self.id, coeffs: vec![0; self.s as usize] }
    }
    pub fn one(&self) -> FieldElem {
        self.elem_from_int(1)
    }
    pub fn elem_from_int(&self, n: i64) -> FieldElem {
        let mut coeffs = vec![0; self.s as usize];
        coeffs[0] = n.rem_euclid(self.p as i64) as u64;
        FieldElem { fid: self.id, coeffs }
    }
    /// Element whose base-p digit expansion is `idx` (coefficient of x^i =
    /// digit i). Inverse of [`Field::index_of`].
    pub fn elem_from_index(&self, idx: u64) -> FieldElem {
        debug_assert!(idx < self.q);
        let mut coeffs = vec![0; self.s as usize];
        let mut n = idx;
        for c in coeffs.iter_mut() {
            *c = n % self.p;
            n /= self.p;
        }
        FieldElem { fid: self.id, coeffs }
    }
    pub fn index_of(&self, a: &FieldElem) -> u64 {
        self.check(a);
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, a: &FieldElem) {
        assert_eq!(a.fid, self.id, "field element used with a foreign field");
    }
    /// Checked variant of ownership validation for user-facing paths.
    pub fn owns(&self, a: &FieldElem) -> Result<()> {
        if a.fid == self.id {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let t = x + y;
                if t >= self.p {
                    t - self.p
                } else {
                    t
                }
            })
            .collect();
        FieldElem { fid: self.id, coeffs }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| if x >= y { x - y } else { x + self.p - y })
            .collect();
        FieldElem { fid: self.id, coeffs }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        self.check(a);
        let coeffs = a.coeffs.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect();
        FieldElem { fid: self.id, coeffs }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let s = self.s as usize;
        let p = self.p;
        if s == 1 {
            let t = (a.coeffs[0] as u128 * b.coeffs[0] as u128) % p as u128;
            return FieldElem { fid: self.id, coeffs: vec![t as u64] };
        }
        let mut prod = vec![0u128; 2 * s - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p as u128;
            }
        }
        // reduce by the monic modulus
        for k in (s..2 * s - 1).rev() {
            let c = prod[k];
            if c != 0 {
                prod[k] = 0;
                for j in 0..s {
                    let sub = c * self.modulus[j] as u128 % p as u128;
                    prod[k - s + j] = (prod[k - s + j] + p as u128 - sub) % p as u128;
                }
            }
        }
        FieldElem { fid: self.id, coeffs: prod[..s].iter().map(|&c| c as u64).collect() }
    }

    /// Square-and-multiply; negative exponents invert first.
    pub fn pow(&self, a: &FieldElem, e: u64) -> FieldElem {
        let mut r = self.one();
        let mut b = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// True iff a lies in the subfield of order `q_sub` (which must be a
    /// power of p with exponent dividing s).
    pub fn in_subfield(&self, a: &FieldElem, q_sub: u64) -> bool {
        self.pow(a, q_sub) == *a
    }

    /// Multiplicative order; the zero element has no order.
    pub fn order_of(&self, a: &FieldElem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.q - 1;
        for (l, e) in factor_u64(self.q - 1) {
            for _ in 0..e {
                if self.pow(a, ord / l) == self.one() {
                    ord /= l;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    /// Discrete log with respect to the fixed generator.
    pub fn dlog(&self, a: &FieldElem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.dlog[self.index_of(a) as usize] as u64)
    }

    /// Exponent labeling: ∞ -> "∞", 0 -> "'0'", g^m -> "m".
    pub fn vertex_label(&self, v: &ProjVertex) -> String {
        match v {
            ProjVertex::Infinity => "∞".to_string(),
            ProjVertex::Finite(x) if self.is_zero(x) => "'0'".to_string(),
            ProjVertex::Finite(x) => self.dlog[self.index_of(x) as usize].to_string(),
        }
    }
}

/// Verified search for the smallest primitive element; identical to the one
/// performed at construction and exposed for direct use.
pub fn find_primitive(fd: &Field) -> FieldElem {
    fd.generator()
}

/// Dense univariate polynomial over a [`Field`], little-endian coefficients
/// with trailing zeros trimmed. The zero polynomial has no degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(fd: &Field, coeffs: Vec<FieldElem>) -> Poly {
        let mut coeffs = coeffs;
        while coeffs.len() > 0 && fd.is_zero(coeffs.last().unwrap()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(fd: &Field, ints: &[i64]) -> Poly {
        Poly::new(fd, ints.iter().map(|&c| fd.elem_from_int(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, fd: &Field, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| fd.zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, fd: &Field, x: &FieldElem) -> FieldElem {
        let mut acc = fd.zero();
        for c in self.coeffs.iter().rev() {
            acc = fd.add(&fd.mul(&acc, x), c);
        }
        acc
    }

    pub fn add(&self, fd: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fd.add(&self.coeff(fd, i), &other.coeff(fd, i)));
        }
        Poly::new(fd, out)
    }

    pub fn mul(&self, fd: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![fd.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if fd.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = fd.add(&out[i + j], &fd.mul(a, b));
            }
        }
        Poly::new(fd, out)
    }

    pub fn scale(&self, fd: &Field, c: &FieldElem) -> Poly {
        Poly::new(fd, self.coeffs.iter().map(|a| fd.mul(a, c)).collect())
    }

    /// Remainder of self modulo a nonzero divisor.
    pub fn rem(&self, fd: &Field, divisor: &Poly) -> Poly {
        assert!(!divisor.is_zero());
        let dd = divisor.degree().unwrap();
        let lead_inv = fd.inv(divisor.coeffs.last().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let c = fd.mul(r.last().unwrap(), &lead_inv);
            let shift = r.len() - 1 - dd;
            if !fd.is_zero(&c) {
                for i in 0..=dd {
                    r[shift + i] = fd.sub(&r[shift + i], &fd.mul(&c, &divisor.coeffs[i]));
                }
            }
            r.pop();
            while r.len() > 0 && fd.is_zero(r.last().unwrap()) && r.len() > dd {
                r.pop();
            }
        }
        Poly::new(fd, r)
    }

    /// Exact quotient; panics if division is not exact (internal use).
    pub fn div_exact(&self, fd: &Field, divisor: &Poly) -> Poly {
        assert!(!divisor.is_zero());
        let dd = divisor.degree().unwrap();
        let lead_inv = fd.inv(divisor.coeffs.last().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![fd.zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let c = fd.mul(r.last().unwrap(), &lead_inv);
            let shift = r.len() - 1 - dd;
            q[shift] = c.clone();
            for i in 0..=dd {
                r[shift + i] = fd.sub(&r[shift + i], &fd.mul(&c, &divisor.coeffs[i]));
            }
            while r.len() > 0 && fd.is_zero(r.last().unwrap()) {
                r.pop();
            }
        }
        assert!(r.is_empty(), "division not exact");
        Poly::new(fd, q)
    }

    /// Monic gcd.
    pub fn gcd(&self, fd: &Field, other: &Poly) -> Poly {
        let mut f = self.clone();
        let mut g = other.clone();
        while !g.is_zero() {
            let r = f.rem(fd, &g);
            f = g;
            g = r;
        }
        if f.is_zero() {
            return f;
        }
        let lead_inv = fd.inv(f.coeffs.last().unwrap()).unwrap();
        f.scale(fd, &lead_inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f73_basics() {
        let f = Field::new(73, 1, None).unwrap();
        assert_eq!(f.size(), 73);
        // smallest primitive root of 73 is 5
        assert_eq!(f.index_of(&f.generator()), 5);
        // -3 * 22 = -66 = 7 mod 73
        let prod = f.mul(&f.elem_from_int(-3), &f.elem_from_int(22));
        assert_eq!(f.index_of(&prod), 7);
    }

    #[test]
    fn f83_and_f2_primitive() {
        let f = Field::new(83, 1, None).unwrap();
        assert_eq!(f.index_of(&f.generator()), 2);
        let f2 = Field::new(2, 1, None).unwrap();
        assert_eq!(f2.generator(), f2.one());
    }

    #[test]
    fn f25_construction() {
        let f = Field::new(5, 2, None).unwrap();
        assert_eq!(f.size(), 25);
        // |P^1| would be 26; inverse axiom over all nonzero elements
        for idx in 1..25 {
            let a = f.elem_from_index(idx);
            assert_eq!(f.mul(&f.inv(&a).unwrap(), &a), f.one());
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Field::new(6, 1, None), Err(Error::NotPrime(6))));
        // x^2 - 1 is reducible over F_5
        assert!(matches!(Field::new(5, 2, Some(vec![-1, 0, 1])), Err(Error::ReducibleModulus(5))));
        let f = Field::new(5, 1, None).unwrap();
        assert!(matches!(f.inv(&f.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn dlog_bookkeeping() {
        let f = Field::new(73, 1, None).unwrap();
        let g = f.generator();
        for (m, k) in [(3u64, 14u64), (50, 60), (0, 71)] {
            let lhs = f.mul(&f.pow(&g, m), &f.pow(&g, k));
            assert_eq!(f.dlog(&lhs).unwrap(), (m + k) % 72);
        }
    }

    #[test]
    fn labels() {
        let f = Field::new(73, 1, None).unwrap();
        assert_eq!(f.vertex_label(&ProjVertex::Infinity), "∞");
        assert_eq!(f.vertex_label(&ProjVertex::Finite(f.zero())), "'0'");
        let g5 = f.pow(&f.generator(), 5);
        assert_eq!(f.vertex_label(&ProjVertex::Finite(g5)), "5");
        // bijectivity over all of P^1
        let mut seen = std::collections::HashSet::new();
        for idx in 0..73 {
            seen.insert(f.vertex_label(&ProjVertex::Finite(f.elem_from_index(idx))));
        }
        seen.insert(f.vertex_label(&ProjVertex::Infinity));
        assert_eq!(seen.len(), 74);
    }

    #[test]
    fn poly_eval_example1() {
        let f = Field::new(73, 1, None).unwrap();
        // b(x) = x^9 + 28x^7 - 21x^5 + 28x^3 + x vanishes at 0
        let b = Poly::from_ints(&f, &[0, 1, 0, 28, 0, -21, 0, 28, 0, 1]);
        assert!(f.is_zero(&b.eval(&f, &f.zero())));
        // a(x)/(-3) has coefficient sum 0, so a(1) = 0
        let a = Poly::from_ints(&f, &[3, 0, -9, 0, 15, 0, -15, 0, 9, 0, -3]);
        assert!(f.is_zero(&a.eval(&f, &f.one())));
        // constant polynomial
        let c = Poly::from_ints(&f, &[42]);
        assert_eq!(c.eval(&f, &f.elem_from_int(7)), f.elem_from_int(42));
    }

    #[test]
    fn frobenius_is_field_automorphism() {
        let f = Field::new(5, 4, None).unwrap();
        let xs: Vec<_> = (0..40).map(|i| f.elem_from_index(i * 13 % f.size())).collect();
        for a in &xs {
            for b in &xs {
                let fr = |t: &FieldElem| f.pow(t, 5);
                assert_eq!(fr(&f.add(a, b)), f.add(&fr(a), &fr(b)));
                assert_eq!(fr(&f.mul(a, b)), f.mul(&fr(a), &fr(b)));
            }
            if !f.is_zero(a) {
                assert_eq!(f.pow(a, f.size() - 1), f.one());
            }
        }
    }
}
