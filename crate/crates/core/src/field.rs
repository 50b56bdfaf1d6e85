//! The prime field F_p.
//!
//! Residues are stored as `u32` in `[0, p)` with `p < 2^15`, so a product of
//! two residues never overflows before reduction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector in F_p^n, entries reduced.
pub type Vector = Vec<u32>;

pub const MAX_PRIME: u32 = 1 << 15;

/// Trial division.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Handle on the field F_p, carrying the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0 && a < self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.reduce(t0)
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        debug_assert_eq!(a.len(), b.len());
        let acc = a
            .iter()
            .zip(b)
            .fold(0u64, |acc, (&x, &y)| acc + (x * y) as u64);
        (acc % self.p as u64) as u32
    }

    pub fn add_vec(self, a: &[u32], b: &[u32]) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(self, a: &[u32], b: &[u32]) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn scale_vec(self, s: u32, a: &[u32]) -> Vector {
        a.iter().map(|&x| self.mul(s, x)).collect()
    }

    /// `a += s * b` in place.
    pub fn axpy(self, a: &mut [u32], s: u32, b: &[u32]) {
        if s == 0 {
            return;
        }
        for (x, &y) in a.iter_mut().zip(b) {
            *x = (*x + s * y) % self.p;
        }
    }

    pub fn sum_vecs<'a, I>(self, dim: usize, vs: I) -> Vector
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut acc = vec![0; dim];
        for v in vs {
            self.axpy(&mut acc, 1, v);
        }
        acc
    }

    /// Checks that every entry lies in `[0, p)`.
    pub fn check_vec(self, field: &str, v: &[u32]) -> Result<()> {
        match v.iter().find(|&&x| x >= self.p) {
            Some(&value) => Err(Error::EntryOutOfRange {
                field: field.to_string(),
                value,
                p: self.p,
            }),
            None => Ok(()),
        }
    }

    /// All vectors of F_p^n in lexicographic order, zero first.
    pub fn all_vectors(self, n: usize) -> impl Iterator<Item = Vector> {
        let p = self.p;
        let total = (p as u64).pow(n as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0u32; n];
            for slot in v.iter_mut().rev() {
                *slot = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            v
        })
    }
}

/// A single residue together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    field: Fp,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        let field = Fp::new(p)?;
        Ok(FpScalar {
            value: field.reduce(value),
            field,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn p(self) -> u32 {
        self.field.p()
    }

    fn same_field(self, other: Self) -> Fp {
        assert_eq!(self.field, other.field, "residues from different fields");
        self.field
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar {
            value: self.field.inv(self.value),
            field: self.field,
        })
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: Self) -> Self {
        let f = self.same_field(rhs);
        FpScalar { value: f.add(self.value, rhs.value), field: f }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: Self) -> Self {
        let f = self.same_field(rhs);
        FpScalar { value: f.sub(self.value, rhs.value), field: f }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: Self) -> Self {
        let f = self.same_field(rhs);
        FpScalar { value: f.mul(self.value, rhs.value), field: f }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> Self {
        FpScalar { value: self.field.neg(self.value), field: self.field }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(Fp::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Fp::new(1), Err(Error::NotPrime(1)));
        assert!(matches!(Fp::new(40009), Err(Error::PrimeTooLarge(_))));
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 32749] {
            let f = Fp::new(p).unwrap();
            for a in (1..p).step_by(((p / 50) as usize).max(1)) {
                assert_eq!(f.mul(a, f.inv(a)), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn scalar_ops() {
        let a = FpScalar::new(-1, 5).unwrap();
        assert_eq!(a.value(), 4);
        let b = FpScalar::new(3, 5).unwrap();
        assert_eq!((a + b).value(), 2);
        assert_eq!((a * b).value(), 2);
        assert_eq!((b - a).value(), 4);
        assert_eq!((-b).value(), 2);
        assert_eq!(b.inverse().unwrap().value(), 2);
        assert!(FpScalar::new(0, 5).unwrap().inverse().is_none());
    }

    #[test]
    fn vector_enumeration_order() {
        let f = Fp::new(3).unwrap();
        let all: Vec<Vector> = f.all_vectors(2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        assert_eq!(f.all_vectors(0).collect::<Vec<_>>(), vec![Vec::<u32>::new()]);
    }
}
