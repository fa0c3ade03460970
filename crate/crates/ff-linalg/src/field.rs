use crate::LinalgError;

/// The prime field F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    q: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Odd primes in increasing order, starting at 3.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime(n))
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, LinalgError> {
        if q >= 1 << 31 || !is_prime(q) {
            return Err(LinalgError::NotPrime(q));
        }
        Ok(PrimeField { q: q as u32 })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.q as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + self.q as u64 - b as u64;
        (s % self.q as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.q;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        let a = a % self.q;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.q as u64 - 2))
        }
    }

    /// Whether `a` is a square in F_q (zero counts as a square).
    pub fn is_square(&self, a: u32) -> bool {
        let a = a % self.q;
        if a == 0 || self.q == 2 {
            return true;
        }
        self.pow(a, (self.q as u64 - 1) / 2) == 1
    }

    /// Signed representative in (-q/2, q/2].
    pub fn signed(&self, a: u32) -> i64 {
        let a = a as i64;
        let q = self.q as i64;
        if a > q / 2 {
            a - q
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn squares_mod_five() {
        let f = PrimeField::new(5).unwrap();
        let sq: Vec<u32> = (0..5).filter(|&a| f.is_square(a)).collect();
        assert_eq!(sq, vec![0, 1, 4]);
    }

    #[test]
    fn odd_prime_stream() {
        let p: Vec<u64> = odd_primes().take(6).collect();
        assert_eq!(p, vec![3, 5, 7, 11, 13, 17]);
    }
}
