//! GF(p^e) with exhaustive irreducibility and primitivity tests.
//!
//! Elements are integers `0..q`; the base-`p` digits of an element are its
//! polynomial coefficients, constant term least significant. Integer order
//! is therefore the coefficient tuple read most-significant first.

use super::group::AbelianGroup;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    pub p: u32,
    pub e: u32,
    /// Monic modulus, coefficients low to high, length e + 1.
    pub modulus: Vec<u32>,
    pub omega: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
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

/// Returns `(p, e)` with `q = p^e`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Remainder of `a` modulo monic `m` over Z_p, padded to degree < deg m.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    for i in (dm..r.len()).rev() {
        let lead = r[i] % p;
        if lead != 0 {
            for (j, &c) in m.iter().enumerate() {
                let s = &mut r[i - dm + j];
                *s = (*s + p * p - lead * c as u64 % p) % p;
            }
        }
    }
    r.resize(dm.max(1), 0);
    r.truncate(dm.max(1));
    r.into_iter().map(|c| (c % p) as u32).collect()
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

fn monic_of_degree(d: u32, idx: u64, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(d as usize + 1);
    let mut r = idx;
    for _ in 0..d {
        c.push((r % p as u64) as u32);
        r /= p as u64;
    }
    c.push(1);
    c
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = (f.len() - 1) as u32;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let g = monic_of_degree(d, idx, p);
            let r = poly_rem(f, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    let mut r = x;
    for _ in 0..e {
        out.push(r % p);
        r /= p;
    }
    out
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

pub fn gf_build(p: u32, e: u32) -> Result<Field> {
    gf_build_capped(p, e, DEFAULT_CAP)
}

pub fn gf_build_capped(p: u32, e: u32, cap: u64) -> Result<Field> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if e == 0 {
        return Err(Error::DegreeZero);
    }
    let q = (p as u64)
        .checked_pow(e)
        .filter(|&q| q <= cap)
        .ok_or(Error::CapExceeded((p as u64).saturating_pow(e), cap))?;
    let modulus = (0..(p as u64).pow(e))
        .map(|idx| monic_of_degree(e, idx, p))
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists");
    let mul_slow = |a: u32, b: u32| -> u32 {
        let prod = poly_mul(&digits(a, p, e), &digits(b, p, e), p);
        undigits(&poly_rem(&prod, &modulus, p)[..e as usize], p)
    };
    let pow_slow = |mut a: u32, mut k: u64| -> u32 {
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = mul_slow(acc, a);
            }
            a = mul_slow(a, a);
            k >>= 1;
        }
        acc
    };
    let n = q - 1;
    let pf = prime_factors(n);
    let omega = (1..q as u32)
        .find(|&a| pf.iter().all(|&r| pow_slow(a, n / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for (k, slot) in exp.iter_mut().enumerate() {
        *slot = x;
        log[x as usize] = k as u32;
        x = mul_slow(x, omega);
    }
    Ok(Field { p, e, modulus, omega, exp, log })
}

impl Field {
    pub fn from_order(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        gf_build(p, e)
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order()
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (digits(a, self.p, self.e), digits(b, self.p, self.e));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = digits(a, self.p, self.e).iter().map(|&x| (self.p - x) % self.p).collect();
        undigits(&d, self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.exp.len();
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % n]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.exp.len();
        Some(self.exp[(n - self.log[a as usize] as usize) % n])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// ω^k for any integer k.
    pub fn omega_pow(&self, k: i64) -> u32 {
        let n = self.exp.len() as i64;
        self.exp[k.rem_euclid(n) as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let n = self.exp.len() as u64;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    pub fn mult_order(&self, a: u32) -> u64 {
        let n = self.exp.len() as u64;
        let l = self.log[a as usize] as u64;
        n / gcd(n, l)
    }

    /// Coefficient tuple, most significant first.
    pub fn coords(&self, a: u32) -> Vec<u32> {
        let mut d = digits(a, self.p, self.e);
        d.reverse();
        d
    }

    pub fn from_coords(&self, c: &[u32]) -> u32 {
        c.iter().fold(0u32, |acc, &d| acc * self.p + d)
    }

    pub fn additive_group(&self) -> AbelianGroup {
        AbelianGroup::new(vec![self.p; self.e as usize])
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf7_primitive_is_three() {
        let f = gf_build(7, 1).unwrap();
        assert_eq!(f.omega, 3);
        assert_eq!(f.modulus, vec![0, 1]);
    }

    #[test]
    fn gf4_modulus() {
        let f = gf_build(2, 2).unwrap();
        assert_eq!(f.modulus, vec![1, 1, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(gf_build(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(gf_build(3, 0), Err(Error::DegreeZero));
        assert!(matches!(gf_build_capped(2, 21, DEFAULT_CAP), Err(Error::CapExceeded(..))));
    }

    #[test]
    fn field_axioms_small() {
        for (p, e) in [(2, 3), (3, 2), (5, 2), (3, 3), (2, 4)] {
            let f = gf_build(p, e).unwrap();
            let q = f.order();
            for a in 0..q {
                for b in 0..q {
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
            assert_eq!(f.mult_order(f.omega), (q - 1) as u64);
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(31), Some((31, 1)));
        assert_eq!(prime_power(15), None);
        assert_eq!(prime_power(1), None);
    }
}
