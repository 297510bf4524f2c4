//! Arithmetic in the imaginary quadratic order R = Z[ω_d] for squarefree
//! d < 0: elements, the Frobenius representation, integral ideals in
//! two-term Hermite normal form, prime splitting, valuations and
//! factorization of principal ideals.
//!
//! Ideals are Z-lattices with basis {a, b + cω}; membership, equality and
//! norms are O(1) on that representation, which is all the counting
//! machinery downstream ever needs. Element coordinates are arbitrary
//! precision since powers like π^n ± 1 grow with q^n.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial-division cap for factoring norms of principal ideals.
pub const NORM_FACTOR_CAP: u64 = 1_000_000_000;

/// The order Z[ω_d]: ω = (1+√d)/2 when d ≡ 1 (mod 4), else ω = √d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadOrder {
    d: i64,
    disc: i64,
}

/// Element u + v·ω of a [`QuadOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub u: BigInt,
    pub v: BigInt,
}

impl QuadInt {
    pub fn new<U: Into<BigInt>, V: Into<BigInt>>(u: U, v: V) -> QuadInt {
        QuadInt { u: u.into(), v: v.into() }
    }
    pub fn zero() -> QuadInt {
        QuadInt::new(0, 0)
    }
    pub fn one() -> QuadInt {
        QuadInt::new(1, 0)
    }
    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl std::fmt::Display for QuadInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        if self.u.is_zero() {
            return write!(f, "{}w", self.v);
        }
        if self.v.is_negative() {
            write!(f, "{}{}w", self.u, self.v)
        } else {
            write!(f, "{}+{}w", self.u, self.v)
        }
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut n = n;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return false;
            }
        } else {
            d += 1;
        }
    }
    true
}

impl QuadOrder {
    pub fn new(d: i64) -> Result<QuadOrder> {
        if d >= 0 || !is_squarefree(d.unsigned_abs()) {
            return Err(Error::Schema(format!("d = {d} must be a squarefree negative integer")));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(QuadOrder { d, disc })
    }

    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn discriminant(&self) -> i64 {
        self.disc
    }
    fn d_is_1_mod_4(&self) -> bool {
        self.d.rem_euclid(4) == 1
    }
    /// ω² = ω + (d-1)/4 when d ≡ 1 (mod 4), else ω² = d.
    fn omega_sq_const(&self) -> BigInt {
        if self.d_is_1_mod_4() {
            BigInt::from((self.d - 1) / 4)
        } else {
            BigInt::from(self.d)
        }
    }

    pub fn add(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        QuadInt { u: &x.u + &y.u, v: &x.v + &y.v }
    }
    pub fn sub(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        QuadInt { u: &x.u - &y.u, v: &x.v - &y.v }
    }
    pub fn neg(&self, x: &QuadInt) -> QuadInt {
        QuadInt { u: -&x.u, v: -&x.v }
    }

    pub fn mul(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        let c = self.omega_sq_const();
        let vv = &x.v * &y.v;
        let cross = &x.u * &y.v + &x.v * &y.u;
        if self.d_is_1_mod_4() {
            QuadInt { u: &x.u * &y.u + c * &vv, v: cross + vv }
        } else {
            QuadInt { u: &x.u * &y.u + c * &vv, v: cross }
        }
    }

    pub fn conj(&self, x: &QuadInt) -> QuadInt {
        if self.d_is_1_mod_4() {
            // ω̄ = 1 - ω
            QuadInt { u: &x.u + &x.v, v: -&x.v }
        } else {
            QuadInt { u: x.u.clone(), v: -&x.v }
        }
    }

    pub fn norm(&self, x: &QuadInt) -> BigInt {
        if self.d_is_1_mod_4() {
            &x.u * &x.u + &x.u * &x.v + &x.v * &x.v * BigInt::from((1 - self.d) / 4)
        } else {
            &x.u * &x.u - &x.v * &x.v * BigInt::from(self.d)
        }
    }

    pub fn trace(&self, x: &QuadInt) -> BigInt {
        if self.d_is_1_mod_4() {
            2 * &x.u + &x.v
        } else {
            2 * &x.u
        }
    }

    pub fn pow(&self, x: &QuadInt, e: u32) -> QuadInt {
        let mut r = QuadInt::one();
        let mut b = x.clone();
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
}

/// How a rational prime behaves in the order, together with the root(s) of
/// the minimal polynomial of ω mod p defining the prime ideal(s) above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitKind {
    /// Two conjugate primes (p, ω - t1), (p, ω - t2), roots sorted.
    Split { t1: u64, t2: u64 },
    Inert,
    /// One prime (p, ω - t) with square (p).
    Ramified { t: u64 },
}

impl SplitKind {
    pub fn name(&self) -> &'static str {
        match self {
            SplitKind::Split { .. } => "split",
            SplitKind::Inert => "inert",
            SplitKind::Ramified { .. } => "ramified",
        }
    }
}

fn mod_pow_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * a as u128) % m as u128) as u64;
        }
        a = ((a as u128 * a as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Square root of a mod odd prime p (a assumed to be a QR), Tonelli-Shanks.
fn sqrt_mod(a: u64, p: u64) -> u64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if p % 4 == 3 {
        return mod_pow_u64(a, (p + 1) / 4, p);
    }
    // write p-1 = q * 2^s
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // find a non-residue
    let mut z = 2u64;
    while mod_pow_u64(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow_u64(z, q, p);
    let mut t = mod_pow_u64(a, q, p);
    let mut r = mod_pow_u64(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = ((tt as u128 * tt as u128) % p as u128) as u64;
            i += 1;
        }
        let b = mod_pow_u64(c, 1 << (m - i - 1), p);
        m = i;
        c = ((b as u128 * b as u128) % p as u128) as u64;
        t = ((t as u128 * c as u128) % p as u128) as u64;
        r = ((r as u128 * b as u128) % p as u128) as u64;
    }
    r
}

impl QuadOrder {
    /// Splitting behavior of a rational prime, via the Kronecker symbol of
    /// the discriminant.
    pub fn splitting_type(&self, p: u64) -> SplitKind {
        let sym = kronecker_symbol(self.disc, p);
        if sym == -1 {
            return SplitKind::Inert;
        }
        // roots of the minimal polynomial of ω mod p
        if p == 2 {
            // enumerate the two candidates directly
            let mut roots = Vec::new();
            for t in 0..2u64 {
                let val = if self.d_is_1_mod_4() {
                    (t as i64 * t as i64 - t as i64 - (self.d - 1) / 4).rem_euclid(2)
                } else {
                    (t as i64 * t as i64 - self.d).rem_euclid(2)
                };
                if val == 0 {
                    roots.push(t);
                }
            }
            return if sym == 0 {
                SplitKind::Ramified { t: roots[0] }
            } else {
                SplitKind::Split { t1: roots[0], t2: roots[1] }
            };
        }
        if self.d_is_1_mod_4() {
            // t^2 - t - (d-1)/4 = 0  =>  t = (1 ± sqrt(d)) / 2 mod p
            let dm = (self.d.rem_euclid(p as i64)) as u64;
            if sym == 0 {
                let r = sqrt_mod(dm, p); // = 0 when p | d
                let t = ((1 + r) % p) as u128 * ((p as u128 + 1) / 2) % p as u128;
                return SplitKind::Ramified { t: t as u64 };
            }
            let r = sqrt_mod(dm, p);
            let half = (p as u128 + 1) / 2;
            let t1 = (((1 + r) as u128 % p as u128) * half % p as u128) as u64;
            let t2 = (((1 + p - r) as u128 % p as u128) * half % p as u128) as u64;
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            SplitKind::Split { t1: lo, t2: hi }
        } else {
            // t^2 = d mod p
            let dm = (self.d.rem_euclid(p as i64)) as u64;
            if sym == 0 {
                return SplitKind::Ramified { t: sqrt_mod(dm, p) };
            }
            let r = sqrt_mod(dm, p);
            let (lo, hi) = if r <= p - r { (r, p - r) } else { (p - r, r) };
            SplitKind::Split { t1: lo, t2: hi }
        }
    }

    /// The prime ideal (p, ω - t).
    pub fn prime_above(&self, p: u64, t: u64) -> IdealHnf {
        self.ideal_from_gens(&[QuadInt::new(p as i64, 0), QuadInt::new(-(t as i64), 1)])
            .expect("nonzero generators")
    }
}

/// Kronecker symbol (a/n), iterative implementation.
pub fn kronecker_symbol(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a.unsigned_abs() == 1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    while n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        let am8 = a.rem_euclid(8);
        if am8 == 3 || am8 == 5 {
            result = -result;
        }
        n /= 2;
    }
    if n == 1 {
        return result;
    }
    // Jacobi symbol for odd n > 1 with sign handling
    if a < 0 {
        a = a.rem_euclid(n as i64);
        // (-1/n) = (-1)^((n-1)/2) already folded in by reduction:
        // rem_euclid gives the representative in [0,n), and
        // (a/n) depends only on a mod n for odd n
    }
    let mut a = (a.rem_euclid(n as i64)) as u64;
    loop {
        if a == 0 {
            return if n == 1 { result } else { 0 };
        }
        while a % 2 == 0 {
            a /= 2;
            let nm8 = n % 8;
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
        if n == 1 {
            return result;
        }
    }
}

/// Integral ideal of a [`QuadOrder`] as the Z-lattice {a, b + cω} in HNF:
/// a > 0, c > 0, c | a, c | b, 0 ≤ b < a. Norm = a·c.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealHnf {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl std::fmt::Display for IdealHnf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{}, {}+{}w>", self.a, self.b, self.c)
    }
}

impl IdealHnf {
    pub fn basis(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn is_whole_ring(&self) -> bool {
        self.a.is_one() && self.c.is_one()
    }

    /// Membership via the HNF basis: c | v and a | (u - (v/c)·b).
    pub fn contains(&self, z: &QuadInt) -> bool {
        if !(&z.v % &self.c).is_zero() {
            return false;
        }
        let k = &z.v / &self.c;
        ((&z.u - k * &self.b) % &self.a).is_zero()
    }

    /// Canonical residue of z modulo the ideal: v reduced into [0, c),
    /// then u into [0, a).
    pub fn reduce(&self, z: &QuadInt) -> QuadInt {
        let vr = z.v.mod_floor(&self.c);
        let k = (&z.v - &vr) / &self.c;
        let u1 = &z.u - k * &self.b;
        QuadInt { u: u1.mod_floor(&self.a), v: vr }
    }
}

/// HNF of the Z-span of nonzero vectors (u, v) ~ u + vω. The span must have
/// full rank 2 (always true for the lattice of an ideal).
fn hnf_of_vectors(vecs: &[QuadInt]) -> IdealHnf {
    let mut pivot: Option<(BigInt, BigInt)> = None; // (b0, c) with c > 0
    let mut units: Vec<BigInt> = Vec::new(); // vectors with v = 0
    for z in vecs {
        if z.is_zero() {
            continue;
        }
        if z.v.is_zero() {
            units.push(z.u.abs());
            continue;
        }
        match pivot.take() {
            None => {
                if z.v.is_negative() {
                    pivot = Some((-&z.u, -&z.v));
                } else {
                    pivot = Some((z.u.clone(), z.v.clone()));
                }
            }
            Some((b0, c0)) => {
                let e = c0.extended_gcd(&z.v);
                // e.gcd = e.x * c0 + e.y * z.v
                let nb = &e.x * &b0 + &e.y * &z.u;
                units.push((&z.u - (&z.v / &e.gcd) * &nb).abs());
                units.push((&b0 - (&c0 / &e.gcd) * &nb).abs());
                pivot = Some((nb, e.gcd));
            }
        }
    }
    let (b0, c) = pivot.expect("rank-2 lattice required");
    let mut a = BigInt::zero();
    for u in units {
        a = a.gcd(&u);
    }
    assert!(!a.is_zero(), "rank-2 lattice required");
    let b = b0.mod_floor(&a);
    IdealHnf { a, b, c }
}

impl QuadOrder {
    /// HNF of the ideal generated by the given ring elements (the Z-span of
    /// each g and g·ω).
    pub fn ideal_from_gens(&self, gens: &[QuadInt]) -> Result<IdealHnf> {
        let omega = QuadInt::new(0, 1);
        let mut vecs = Vec::with_capacity(gens.len() * 2);
        for g in gens {
            if g.is_zero() {
                continue;
            }
            vecs.push(g.clone());
            vecs.push(self.mul(g, &omega));
        }
        if vecs.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let ideal = hnf_of_vectors(&vecs);
        debug_assert!(self.is_omega_closed(&ideal));
        Ok(ideal)
    }

    pub fn whole_ring(&self) -> IdealHnf {
        IdealHnf { a: BigInt::one(), b: BigInt::zero(), c: BigInt::one() }
    }

    fn is_omega_closed(&self, ideal: &IdealHnf) -> bool {
        let omega = QuadInt::new(0, 1);
        let g1 = QuadInt { u: ideal.a.clone(), v: BigInt::zero() };
        let g2 = QuadInt { u: ideal.b.clone(), v: ideal.c.clone() };
        ideal.contains(&self.mul(&g1, &omega)) && ideal.contains(&self.mul(&g2, &omega))
    }

    pub fn ideal_mul(&self, lhs: &IdealHnf, rhs: &IdealHnf) -> IdealHnf {
        let gi = [
            QuadInt { u: lhs.a.clone(), v: BigInt::zero() },
            QuadInt { u: lhs.b.clone(), v: lhs.c.clone() },
        ];
        let gj = [
            QuadInt { u: rhs.a.clone(), v: BigInt::zero() },
            QuadInt { u: rhs.b.clone(), v: rhs.c.clone() },
        ];
        // pairwise products of the Z-bases span the product ideal as a lattice
        let mut vecs = Vec::with_capacity(4);
        for x in &gi {
            for y in &gj {
                vecs.push(self.mul(x, y));
            }
        }
        hnf_of_vectors(&vecs)
    }

    pub fn ideal_pow(&self, ideal: &IdealHnf, k: u32) -> IdealHnf {
        let mut r = self.whole_ring();
        for _ in 0..k {
            r = self.ideal_mul(&r, ideal);
        }
        r
    }

    /// Largest h ≥ 0 with z ∈ B^h, by incremental powering; bounded by
    /// log_{N(B)} N(z).
    pub fn valuation(&self, z: &QuadInt, prime: &IdealHnf) -> Result<u32> {
        if z.is_zero() {
            return Err(Error::ZeroElement);
        }
        let nz = self.norm(z).abs();
        let nb = prime.norm();
        let mut h = 0u32;
        let mut power = prime.clone();
        let mut bound = nb.clone();
        loop {
            if !power.contains(z) {
                return Ok(h);
            }
            h += 1;
            if bound > nz {
                return Ok(h);
            }
            power = self.ideal_mul(&power, prime);
            bound *= &nb;
        }
    }
}

/// One prime-power factor of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeIdealFactor {
    pub p: u64,
    pub kind: SplitKind,
    pub ideal: IdealHnf,
    pub exponent: u32,
}

impl PrimeIdealFactor {
    /// Norm of the underlying prime ideal: p for split/ramified, p² inert.
    pub fn prime_norm(&self) -> BigInt {
        match self.kind {
            SplitKind::Inert => BigInt::from(self.p) * BigInt::from(self.p),
            _ => BigInt::from(self.p),
        }
    }
}

/// Factorization of a principal ideal into prime powers, split factors
/// first, then inert, then ramified; (j, k, l) are the boundary indices of
/// that partition. `cofactor` is the whole ring here and becomes meaningful
/// when a factorization is restricted to a subset of primes.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub factors: Vec<PrimeIdealFactor>,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub cofactor: IdealHnf,
}

impl Factorization {
    pub fn contains_prime(&self, ideal: &IdealHnf) -> bool {
        self.factors.iter().any(|f| &f.ideal == ideal)
    }

    pub fn exponent_of(&self, ideal: &IdealHnf) -> u32 {
        self.factors.iter().find(|f| &f.ideal == ideal).map_or(0, |f| f.exponent)
    }
}

impl QuadOrder {
    /// Factor the principal ideal (z) into prime ideal powers by factoring
    /// N(z) over the rational primes and measuring valuations above each.
    pub fn factor_principal(&self, z: &QuadInt) -> Result<Factorization> {
        if z.is_zero() {
            return Err(Error::ZeroElement);
        }
        let nz = self.norm(z).abs();
        let nz_u64 = nz.to_u64().ok_or_else(|| Error::NormTooLarge(nz.to_string()))?;
        if nz_u64 > NORM_FACTOR_CAP {
            return Err(Error::NormTooLarge(nz.to_string()));
        }
        let mut split = Vec::new();
        let mut inert = Vec::new();
        let mut ramified = Vec::new();
        for (p, e) in factor_u64_sorted(nz_u64) {
            let kind = self.splitting_type(p);
            match kind {
                SplitKind::Inert => {
                    debug_assert!(e % 2 == 0, "inert prime exponent must be even in a norm");
                    inert.push(PrimeIdealFactor {
                        p,
                        kind,
                        ideal: self
                            .ideal_from_gens(&[QuadInt::new(p as i64, 0)])
                            .expect("nonzero"),
                        exponent: e / 2,
                    });
                }
                SplitKind::Ramified { t } => {
                    let ideal = self.prime_above(p, t);
                    let v = self.valuation(z, &ideal)?;
                    debug_assert_eq!(v, e, "ramified valuation equals v_p of the norm");
                    ramified.push(PrimeIdealFactor { p, kind, ideal, exponent: v });
                }
                SplitKind::Split { t1, t2 } => {
                    for t in [t1, t2] {
                        let ideal = self.prime_above(p, t);
                        let v = self.valuation(z, &ideal)?;
                        if v > 0 {
                            split.push(PrimeIdealFactor {
                                p,
                                kind: SplitKind::Split { t1, t2 },
                                ideal,
                                exponent: v,
                            });
                        }
                    }
                }
            }
        }
        let j = split.len();
        let k = j + inert.len();
        let l = k + ramified.len();
        let mut factors = split;
        factors.extend(inert);
        factors.extend(ramified);
        // norm product must reconstruct N(z)
        let mut prod = BigInt::one();
        for f in &factors {
            prod *= f.prime_norm().pow(f.exponent);
        }
        if prod != nz {
            return Err(Error::PredictionInconsistent(format!(
                "factor norms {prod} do not rebuild N(z) = {nz}"
            )));
        }
        Ok(Factorization { factors, j, k, l, cofactor: self.whole_ring() })
    }
}

fn factor_u64_sorted(n: u64) -> Vec<(u64, u32)> {
    crate::ff::factor_u64(n)
}

/// Frobenius representation: π_q = (q + 1 - m + f₀√d)/2 as an element of
/// Z[ω_d], where f₀² d = d' = (q+1-m)² - 4q. Errors when d' ≥ 0 or when d
/// is not the squarefree part of d'.
pub fn frobenius_rep(q: u64, m: u64, d: i64) -> Result<(QuadOrder, QuadInt)> {
    let t = q as i128 + 1 - m as i128;
    let dp = t * t - 4 * q as i128;
    if dp >= 0 {
        return Err(Error::NotOrdinaryOrInconsistent(format!(
            "d' = (q+1-m)^2 - 4q = {dp} is not negative"
        )));
    }
    let order = QuadOrder::new(d)?;
    if dp % d as i128 != 0 {
        return Err(Error::NotOrdinaryOrInconsistent(format!("d = {d} does not divide d' = {dp}")));
    }
    let f0sq = dp / d as i128;
    let f0 = (f0sq as f64).sqrt().round() as i128;
    if f0 <= 0 || f0 * f0 != f0sq {
        return Err(Error::NotOrdinaryOrInconsistent(format!(
            "d'/d = {f0sq} is not a positive perfect square; d is not the squarefree part of d'"
        )));
    }
    let pi = if d.rem_euclid(4) == 1 {
        // √d = 2ω - 1: π = (T - f0)/2 + f0·ω
        if (t - f0) % 2 != 0 {
            return Err(Error::NotOrdinaryOrInconsistent("parity mismatch in (T - f0)/2".into()));
        }
        QuadInt::new(((t - f0) / 2) as i64, f0 as i64)
    } else {
        // ω = √d: π = T/2 + (f0/2)·ω
        if t % 2 != 0 || f0 % 2 != 0 {
            return Err(Error::NotOrdinaryOrInconsistent(
                "T and f0 must be even when d ≢ 1 (mod 4)".into(),
            ));
        }
        QuadInt::new((t / 2) as i64, (f0 / 2) as i64)
    };
    debug_assert_eq!(order.norm(&pi), BigInt::from(q));
    debug_assert_eq!(order.trace(&pi), BigInt::from(t));
    Ok((order, pi))
}

/// f₀ of the Frobenius data: the conductor-like index with f₀²d = d'.
pub fn frobenius_f0(q: u64, m: u64, d: i64) -> Result<u64> {
    let t = q as i128 + 1 - m as i128;
    let dp = t * t - 4 * q as i128;
    if dp >= 0 || dp % d as i128 != 0 {
        return Err(Error::NotOrdinaryOrInconsistent("no valid f0".into()));
    }
    let f0sq = dp / d as i128;
    let f0 = (f0sq as f64).sqrt().round() as i128;
    if f0 <= 0 || f0 * f0 != f0sq {
        return Err(Error::NotOrdinaryOrInconsistent("no valid f0".into()));
    }
    Ok(f0 as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(u: i64, v: i64) -> QuadInt {
        QuadInt::new(u, v)
    }

    #[test]
    fn gaussian_norms() {
        let r = QuadOrder::new(-1).unwrap();
        // (3 - i)(3 + i) = 10
        let prod = r.mul(&qi(3, -1), &qi(3, 1));
        assert_eq!(prod, qi(10, 0));
        assert_eq!(r.norm(&qi(3, -1)), BigInt::from(10));
    }

    #[test]
    fn eisenstein_like_norms() {
        let r = QuadOrder::new(-19).unwrap();
        assert_eq!(r.norm(&qi(3, 1)), BigInt::from(17));
        let r21 = QuadOrder::new(-21).unwrap();
        // (2+ω)² + 1 = -16 + 4ω, norm 592
        let sq = r21.mul(&qi(2, 1), &qi(2, 1));
        let z = r21.add(&sq, &QuadInt::one());
        assert_eq!(z, qi(-16, 4));
        assert_eq!(r21.norm(&z), BigInt::from(592));
    }

    #[test]
    fn frobenius_reps_of_the_three_curves() {
        let (_, pi) = frobenius_rep(73, 80, -1).unwrap();
        assert_eq!(pi, qi(-3, 8));
        let (_, pi) = frobenius_rep(83, 68, -19).unwrap();
        assert_eq!(pi, qi(7, 2));
        let (_, pi) = frobenius_rep(25, 22, -21).unwrap();
        assert_eq!(pi, qi(2, 1));
        assert!(frobenius_rep(73, 80, -2).is_err());
        // supersingular-shaped data: m = q + 1 gives d' = -4q
        assert!(frobenius_rep(5, 2, -5).is_err());
    }

    #[test]
    fn splitting_types() {
        let zi = QuadOrder::new(-1).unwrap();
        assert!(matches!(zi.splitting_type(2), SplitKind::Ramified { t: 1 }));
        assert!(matches!(zi.splitting_type(5), SplitKind::Split { t1: 2, t2: 3 }));
        assert!(matches!(zi.splitting_type(3), SplitKind::Inert));
        let r19 = QuadOrder::new(-19).unwrap();
        assert!(matches!(r19.splitting_type(2), SplitKind::Inert));
        let r21 = QuadOrder::new(-21).unwrap();
        assert!(matches!(r21.splitting_type(2), SplitKind::Ramified { t: 1 }));
        assert!(matches!(r21.splitting_type(3), SplitKind::Ramified { t: 0 }));
        assert!(matches!(r21.splitting_type(5), SplitKind::Split { .. }));
        assert!(matches!(r21.splitting_type(11), SplitKind::Split { .. }));
    }

    #[test]
    fn ideal_basics() {
        let zi = QuadOrder::new(-1).unwrap();
        let one_plus_i = zi.ideal_from_gens(&[qi(1, 1)]).unwrap();
        assert_eq!(one_plus_i.norm(), BigInt::from(2));
        // (1+i)^4 = (-4) up to units, norm 16
        let p4 = zi.ideal_pow(&one_plus_i, 4);
        assert_eq!(p4.norm(), BigInt::from(16));
        assert_eq!(p4, zi.ideal_from_gens(&[qi(4, 0)]).unwrap());
        // (pi_73 - 1) has norm 80
        let delta = zi.ideal_from_gens(&[qi(-4, 8)]).unwrap();
        assert_eq!(delta.norm(), BigInt::from(80));
        // zero ideal rejected
        assert!(matches!(zi.ideal_from_gens(&[QuadInt::zero()]), Err(Error::ZeroIdeal)));
    }

    #[test]
    fn membership_and_valuation() {
        let zi = QuadOrder::new(-1).unwrap();
        let b = zi.ideal_from_gens(&[qi(1, 1)]).unwrap();
        assert!(b.contains(&QuadInt::zero()));
        // v_{(1+i)}(-4+8i) = 4, v_{(1-2i)}(3-i) = 1
        assert_eq!(zi.valuation(&qi(-4, 8), &b).unwrap(), 4);
        let b5 = zi.ideal_from_gens(&[qi(1, -2)]).unwrap();
        assert_eq!(zi.valuation(&qi(3, -1), &b5).unwrap(), 1);
        // coprime norm: valuation 0
        assert_eq!(zi.valuation(&qi(3, 0), &b).unwrap(), 0);
        assert!(matches!(zi.valuation(&QuadInt::zero(), &b), Err(Error::ZeroElement)));
    }

    #[test]
    fn factor_delta_of_example_1() {
        let zi = QuadOrder::new(-1).unwrap();
        // (π - 1) = (1+i)^4 (1-2i): ramified 2^4 and split 5
        let f = zi.factor_principal(&qi(-4, 8)).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!((f.j, f.k, f.l), (1, 1, 2));
        let split = &f.factors[0];
        assert_eq!((split.p, split.exponent), (5, 1));
        let ram = &f.factors[1];
        assert_eq!((ram.p, ram.exponent), (2, 4));
        // (π + 1) = (1+i)^2 (-1+4i)
        let f = zi.factor_principal(&qi(-2, 8)).unwrap();
        let split = &f.factors[0];
        assert_eq!((split.p, split.exponent), (17, 1));
        assert_eq!((f.factors[1].p, f.factors[1].exponent), (2, 2));
    }

    #[test]
    fn factor_example_2_and_3() {
        let r19 = QuadOrder::new(-19).unwrap();
        // (π_83 + 1) = (1-ω)^2 (2)
        let f = r19.factor_principal(&qi(8, 2)).unwrap();
        assert_eq!((f.j, f.k, f.l), (1, 2, 2));
        assert_eq!((f.factors[0].p, f.factors[0].exponent), (5, 2));
        assert_eq!((f.factors[1].p, f.factors[1].exponent), (2, 1));
        assert!(matches!(f.factors[1].kind, SplitKind::Inert));

        let r21 = QuadOrder::new(-21).unwrap();
        // (π² - 1) = (-18 + 4ω) = I1 I2 I3² I4, norms 5, 11, 2, 3
        let f = r21.factor_principal(&qi(-18, 4)).unwrap();
        let norms: Vec<(u64, u32)> = f.factors.iter().map(|x| (x.p, x.exponent)).collect();
        assert_eq!(norms, vec![(5, 1), (11, 1), (2, 2), (3, 1)]);
        // (π² + 1) = (-16 + 4ω) = I1 · I2^4 with norms 37 and 2
        let f = r21.factor_principal(&qi(-16, 4)).unwrap();
        let norms: Vec<(u64, u32)> = f.factors.iter().map(|x| (x.p, x.exponent)).collect();
        assert_eq!(norms, vec![(37, 1), (2, 4)]);
    }

    #[test]
    fn ideal_residue_reduction() {
        let zi = QuadOrder::new(-1).unwrap();
        let b = zi.ideal_from_gens(&[qi(1, -2)]).unwrap(); // norm 5
        for u in -6..6 {
            for v in -6..6 {
                let z = qi(u, v);
                let r = b.reduce(&z);
                assert!(b.contains(&zi.sub(&z, &r)));
            }
        }
    }
}
