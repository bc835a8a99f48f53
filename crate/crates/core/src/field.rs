//! Prime fields `Z/p` with the characteristic chosen at run time.
//!
//! Elements are residues in `0..p` stored as `u32`. The default field is
//! `Z/2`, where every nonzero coefficient is one.

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Default for Field {
    fn default() -> Self {
        Field::GF2
    }
}

impl Field {
    pub const GF2: Field = Field { p: 2 };

    pub fn new(p: u32) -> Result<Self, Error> {
        if !(2..=65_521).contains(&p) || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Field(p));
        }
        Ok(Field { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        let (mut base, mut exp, mut acc) = (a as u64 % self.p as u64, self.p as u64 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// Image of a signed integer, used for the alternating signs of the
    /// simplicial boundary.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(7).is_ok());
    }

    #[test]
    fn axioms_small_primes() {
        for p in [2, 3, 5, 7, 11] {
            let f = Field::new(p).unwrap();
            for a in 0..p {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..p {
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in 0..p {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
