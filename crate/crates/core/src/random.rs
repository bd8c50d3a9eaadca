//! Seeded generators for property checks.
//!
//! Distribution of [`PolyStream::poly`]: every monomial of degree at most
//! `max_degree` is visited in ascending monomial order and kept with
//! probability 1/2; a kept monomial gets a coefficient drawn uniformly from
//! the integers in `[-9, 9]` without zero. The stream is a ChaCha8 generator
//! seeded from a `u64`, so the n-th draw is fixed by the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cpoly::{CPoly, Monomial};
use crate::envelope::NCPoly;
use crate::scalar::{int, HScalar};

pub struct PolyStream {
    rng: ChaCha8Rng,
}

impl PolyStream {
    pub fn new(seed: u64) -> Self {
        PolyStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent sub-stream, used to give each property its own sequence.
    pub fn fork(seed: u64, label: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Self::new(seed ^ h)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn coefficient(&mut self) -> i64 {
        let mag = self.rng.gen_range(1..=9i64);
        if self.rng.gen_bool(0.5) {
            -mag
        } else {
            mag
        }
    }

    /// A random polynomial in `nvars` variables with integer coefficients.
    pub fn poly(&mut self, nvars: usize, max_degree: u32) -> CPoly {
        let mut f = CPoly::zero(nvars);
        for m in Monomial::all_up_to_degree(nvars, max_degree).into_iter().rev() {
            if self.rng.gen_bool(0.5) {
                let c = self.coefficient();
                f.add_term(m, &HScalar::from_int(c));
            }
        }
        f
    }

    /// Like [`PolyStream::poly`] but never zero.
    pub fn nonzero_poly(&mut self, nvars: usize, max_degree: u32) -> CPoly {
        loop {
            let f = self.poly(nvars, max_degree);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// A random homogeneous polynomial of degree exactly `d`.
    pub fn homogeneous(&mut self, nvars: usize, d: u32) -> CPoly {
        let mut f = CPoly::zero(nvars);
        for m in Monomial::all_of_degree(nvars, d).into_iter().rev() {
            if self.rng.gen_bool(0.5) {
                let c = self.coefficient();
                f.add_term(m, &HScalar::from_int(c));
            }
        }
        f
    }

    /// A random element of `U_h`: monomials as in [`PolyStream::poly`], each
    /// coefficient an integer plus, with probability 1/2, an integer multiple of `h`.
    pub fn ncpoly(&mut self, nvars: usize, max_degree: u32) -> NCPoly {
        let mut a = NCPoly::zero(nvars);
        for m in Monomial::all_up_to_degree(nvars, max_degree).into_iter().rev() {
            if self.rng.gen_bool(0.5) {
                let c0 = self.coefficient();
                let c1 = if self.rng.gen_bool(0.5) { self.coefficient() } else { 0 };
                a.add_term(m, &HScalar::from_coeffs(vec![int(c0), int(c1)]));
            }
        }
        a
    }

    /// A random word of length at most `max_len` over `nvars` generators.
    pub fn word(&mut self, nvars: usize, max_len: usize) -> Vec<usize> {
        let len = self.rng.gen_range(0..=max_len);
        (0..len).map(|_| self.rng.gen_range(0..nvars)).collect()
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn small_int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebraSpec;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = PolyStream::new(7);
        let mut b = PolyStream::new(7);
        for _ in 0..5 {
            assert_eq!(a.poly(3, 3), b.poly(3, 3));
        }
        assert_ne!(PolyStream::fork(7, "x").poly(3, 4), PolyStream::fork(7, "y").poly(3, 4));
    }

    #[test]
    fn degree_zero_gives_constant() {
        let mut s = PolyStream::new(1);
        for _ in 0..10 {
            let f = s.poly(3, 0);
            assert!(f.x_degree().unwrap_or(0) == 0);
        }
    }

    #[test]
    fn coefficients_in_range() {
        let mut s = PolyStream::new(3);
        for _ in 0..20 {
            for c in s.poly(3, 3).terms().values() {
                let q = c.as_constant().unwrap();
                assert!(q.is_integer());
                let v: i64 = q.to_integer().try_into().unwrap();
                assert!(v != 0 && (-9..=9).contains(&v));
            }
        }
    }

    #[test]
    fn golden_first_draw_seed_42() {
        let alg = LieAlgebraSpec::su2();
        let f = PolyStream::new(42).poly(3, 2);
        let golden = include_str!("../tests/golden/seed42_su2_deg2.txt").trim();
        assert_eq!(f.to_canonical(alg.names()), golden);
    }
}
