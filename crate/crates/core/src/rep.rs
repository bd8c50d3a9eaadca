//! Spin-j representations of the deformed su(2) relations at `h = h0`, over
//! the Gaussian rationals.
//!
//! With `[J_x, J_y] = i J_z` (cyclic), the matrices `R_a = -i h0 J_a` satisfy
//! `R_x R_y - R_y R_x = h0 R_z`. The ladder is rescaled so every entry is
//! rational: `J_+ |m> = (j - m)(j + m + 1) |m + 1>`, `J_- |m + 1> = |m>`. This
//! is the standard basis conjugated by a positive diagonal matrix, so the
//! representation is equivalent to the unitary one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::envelope::NCPoly;
use crate::error::{Error, Result};
use crate::orbit::{OrbitAlgebra, QuotientElement};
use crate::scalar::{format_rational, int, rat, HScalar, Rational};

/// `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRat { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        GaussRat::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }

    /// Panics on zero.
    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "inverse of zero");
        let c = self.conj();
        GaussRat::new(&c.re / &norm, &c.im / &norm)
    }
}

impl Add<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{}*i", format_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{} {sign} {}*i", format_rational(&self.re), format_rational(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense square matrix over the Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussMatrix {
    n: usize,
    entries: Vec<GaussRat>,
}

impl GaussMatrix {
    pub fn zero(n: usize) -> Self {
        GaussMatrix { n, entries: vec![GaussRat::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for k in 0..n {
            m.entries[k * n + k] = GaussRat::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussRat {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussRat) {
        self.entries[r * self.n + c] = v;
    }

    pub fn entries(&self) -> &[GaussRat] {
        &self.entries
    }

    pub fn scale(&self, s: &GaussRat) -> GaussMatrix {
        GaussMatrix { n: self.n, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    /// `Some(s)` when the matrix is `s·I`.
    pub fn as_scalar(&self) -> Option<GaussRat> {
        let s = self.get(0, 0).clone();
        let scalar = (0..self.n).all(|r| {
            (0..self.n).all(|c| {
                let e = self.get(r, c);
                if r == c {
                    *e == s
                } else {
                    e.is_zero()
                }
            })
        });
        scalar.then_some(s)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussRat::is_zero)
    }
}

impl Mul<&GaussMatrix> for &GaussMatrix {
    type Output = GaussMatrix;
    fn mul(self, rhs: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = GaussMatrix::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * n + c;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add<&GaussMatrix> for &GaussMatrix {
    type Output = GaussMatrix;
    fn add(self, rhs: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        GaussMatrix { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&GaussMatrix> for &GaussMatrix {
    type Output = GaussMatrix;
    fn sub(self, rhs: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        GaussMatrix { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Images `R_x, R_y, R_z` of the generators in the spin-`j` representation at `h = h0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinRep {
    j: Rational,
    h0: Rational,
    gens: [GaussMatrix; 3],
}

/// Rejects anything that is not a nonnegative half-integer.
fn check_spin(j: &Rational) -> Result<usize> {
    let twice = j * &int(2);
    if j.is_negative() || !twice.is_integer() {
        return Err(Error::InvalidSpin(j.to_string()));
    }
    usize::try_from(twice.to_integer()).map_err(|_| Error::InvalidSpin(j.to_string()))
}

/// Builds the spin-`j` representation at `h = h0`; `j = 0` gives the trivial one.
pub fn spin_rep(j: &Rational, h0: &Rational) -> Result<SpinRep> {
    let twice = check_spin(j)?;
    if h0.is_zero() {
        return Err(Error::Unsupported("h0 must be nonzero".into()));
    }
    let n = twice + 1;
    // basis index k ↔ m = k - j
    let m_of = |k: usize| &int(k as i64) - j;
    let mut jz = GaussMatrix::zero(n);
    let mut jp = GaussMatrix::zero(n);
    let mut jm = GaussMatrix::zero(n);
    for k in 0..n {
        let m = m_of(k);
        jz.set(k, k, GaussRat::real(m.clone()));
        if k + 1 < n {
            jp.set(k + 1, k, GaussRat::real((j - &m) * (j + &m + int(1))));
            jm.set(k, k + 1, GaussRat::one());
        }
    }
    let half = GaussRat::real(rat(1, 2));
    let jx = (&jp + &jm).scale(&half);
    // J_y = (J_+ - J_-) / (2i)
    let jy = (&jp - &jm).scale(&GaussRat::new(Rational::zero(), int(2)).inv());
    let factor = GaussRat::new(Rational::zero(), -h0);
    Ok(SpinRep {
        j: j.clone(),
        h0: h0.clone(),
        gens: [jx.scale(&factor), jy.scale(&factor), jz.scale(&factor)],
    })
}

impl SpinRep {
    pub fn j(&self) -> &Rational {
        &self.j
    }

    pub fn h0(&self) -> &Rational {
        &self.h0
    }

    pub fn dim(&self) -> usize {
        self.gens[0].dim()
    }

    pub fn generator(&self, a: usize) -> &GaussMatrix {
        &self.gens[a]
    }

    /// `c_rep` with `R_x² + R_y² + R_z² = c_rep · I`.
    pub fn casimir_scalar(&self) -> Result<GaussRat> {
        let mut sum = GaussMatrix::zero(self.dim());
        for g in &self.gens {
            sum = &sum + &(g * g);
        }
        sum.as_scalar().ok_or(Error::NonScalarCasimir)
    }

    /// The level `c(h) = (c_rep / h0²) h²` that specializes to `c_rep` at `h0`.
    pub fn quotient_level(&self) -> Result<HScalar> {
        let c = self.casimir_scalar()?;
        if !c.im.is_zero() {
            return Err(Error::NonScalarCasimir);
        }
        Ok(HScalar::monomial(&c.re / (&self.h0 * &self.h0), 2))
    }

    fn power(&self, a: usize, e: u32) -> GaussMatrix {
        let mut out = GaussMatrix::identity(self.dim());
        for _ in 0..e {
            out = &out * &self.gens[a];
        }
        out
    }

    /// Evaluates `Σ c X^a Y^b Z^c ↦ Σ c(h0) R_x^a R_y^b R_z^c` on PBW normal forms.
    pub fn evaluate(&self, a: &NCPoly) -> GaussMatrix {
        let mut out = GaussMatrix::zero(self.dim());
        for (m, c) in a.terms() {
            let e = m.exps();
            let img = &(&self.power(0, e[0]) * &self.power(1, e[1])) * &self.power(2, e[2]);
            out = &out + &img.scale(&GaussRat::real(c.eval(&self.h0)));
        }
        out
    }
}

/// `rep_casimir_scalar`.
pub fn rep_casimir_scalar(rep: &SpinRep) -> Result<GaussRat> {
    rep.casimir_scalar()
}

/// Maps `[X^m Y^n Z^ν] ↦ R_x^m R_y^n R_z^ν`. The quotient's level must agree
/// with the representation: `c(h0) = c_rep`.
pub fn rep_apply(orbit: &OrbitAlgebra, q: &QuotientElement, rep: &SpinRep) -> Result<GaussMatrix> {
    let quotient = GaussRat::real(orbit.spec().c().eval(rep.h0()));
    let crep = rep.casimir_scalar()?;
    if quotient != crep {
        return Err(Error::CasimirMismatch { quotient: quotient.to_string(), rep: crep.to_string() });
    }
    Ok(rep.evaluate(q.lift()))
}

/// Rank over ℚ(i) of the images of `[X^m Y^n Z^ν]` with `m + n + ν ≤ maxdeg`.
pub fn image_dimension(rep: &SpinRep, maxdeg: u32) -> usize {
    let rows: Vec<Vec<GaussRat>> = crate::orbit::sphere_basis(maxdeg)
        .into_iter()
        .map(|(m, n, nu)| {
            let img = &(&rep.power(0, m) * &rep.power(1, n)) * &rep.power(2, nu);
            img.entries().to_vec()
        })
        .collect();
    rank(rows)
}

fn rank(mut rows: Vec<Vec<GaussRat>>) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut r = 0;
    for col in 0..width {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].inv();
        let pivot_row: Vec<GaussRat> = rows[r].iter().map(|e| e * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[col].clone();
            if f.is_zero() {
                continue;
            }
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                *e = &*e - &(&f * p);
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// How the measured `c_rep` relates to the level `l(l + ħ)` of geometric quantization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReconciliation {
    pub j: Rational,
    pub h0: Rational,
    pub c_rep: GaussRat,
    /// `l = j h0`.
    pub l: Rational,
    /// `l (l + h0)`.
    pub geometric_level: Rational,
    /// `c_rep = sign · l (l + h0)`, when such a sign exists.
    pub sign: Option<i8>,
}

/// Compares `c_rep` with `l(l + h0)` for `l = j h0`. With real structure
/// constants and `R_a = -i h0 J_a`, `c_rep = -h0² j(j+1) = -l(l + h0)`.
pub fn reconcile_level(rep: &SpinRep) -> Result<LevelReconciliation> {
    let c_rep = rep.casimir_scalar()?;
    let l = rep.j() * rep.h0();
    let geometric_level = &l * &(&l + rep.h0());
    let sign = if !c_rep.im.is_zero() {
        None
    } else if c_rep.re == geometric_level {
        Some(1)
    } else if c_rep.re == -&geometric_level {
        Some(-1)
    } else {
        None
    };
    Ok(LevelReconciliation { j: rep.j().clone(), h0: rep.h0().clone(), c_rep, l, geometric_level, sign })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::PolyStream;

    fn comm(a: &GaussMatrix, b: &GaussMatrix) -> GaussMatrix {
        &(a * b) - &(b * a)
    }

    #[test]
    fn spin_half_relations_by_hand() {
        let r = spin_rep(&rat(1, 2), &int(1)).unwrap();
        // R_z = -i/2 diag(-1, 1)
        assert_eq!(*r.generator(2).get(0, 0), GaussRat::new(int(0), rat(1, 2)));
        assert_eq!(*r.generator(2).get(1, 1), GaussRat::new(int(0), rat(-1, 2)));
        assert_eq!(comm(r.generator(0), r.generator(1)), *r.generator(2));
        assert_eq!(r.casimir_scalar().unwrap(), GaussRat::real(rat(-3, 4)));
    }

    #[test]
    fn relations_hold_for_several_spins() {
        for (j, h0) in [(rat(1, 1), int(1)), (rat(3, 2), rat(2, 3)), (int(2), int(-3))] {
            let r = spin_rep(&j, &h0).unwrap();
            assert_eq!(int(r.dim() as i64), &j * &int(2) + int(1));
            for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let lhs = comm(r.generator(a), r.generator(b));
                assert_eq!(lhs, r.generator(c).scale(&GaussRat::real(h0.clone())));
            }
            let expected = -(&h0 * &h0) * &j * (&j + int(1));
            assert_eq!(r.casimir_scalar().unwrap(), GaussRat::real(expected));
        }
    }

    #[test]
    fn casimir_scales_with_h0_squared() {
        let a = spin_rep(&int(1), &int(1)).unwrap().casimir_scalar().unwrap();
        let b = spin_rep(&int(1), &int(3)).unwrap().casimir_scalar().unwrap();
        assert_eq!(b, GaussRat::real(&a.re * &int(9)));
        let trivial = spin_rep(&int(0), &int(1)).unwrap();
        assert_eq!(trivial.casimir_scalar().unwrap(), GaussRat::zero());
    }

    #[test]
    fn invalid_spins() {
        assert!(matches!(spin_rep(&rat(1, 3), &int(1)), Err(Error::InvalidSpin(_))));
        assert!(matches!(spin_rep(&int(-1), &int(1)), Err(Error::InvalidSpin(_))));
        assert!(spin_rep(&int(1), &int(0)).is_err());
    }

    fn orbit_for(rep: &SpinRep) -> OrbitAlgebra {
        let env = std::sync::Arc::new(crate::envelope::EnvelopingAlgebra::su2());
        let spec = crate::orbit::CasimirSpec::any_level(&env, crate::cpoly::sum_of_squares(3), rep.quotient_level().unwrap())
            .unwrap();
        OrbitAlgebra::new(env, spec).unwrap()
    }

    #[test]
    fn apply_examples_and_homomorphism() {
        let rep = spin_rep(&int(1), &int(1)).unwrap();
        let o = orbit_for(&rep);
        let u = o.env();
        let one = o.quotient_normal_form(&u.one());
        assert_eq!(rep_apply(&o, &one, &rep).unwrap(), GaussMatrix::identity(3));
        let z2 = o.quotient_normal_form(&u.parse("Z^2").unwrap());
        let rz = rep.generator(2);
        assert_eq!(rep_apply(&o, &z2, &rep).unwrap(), rz * rz);
        let mut s = PolyStream::new(3);
        for _ in 0..10 {
            let a = o.quotient_normal_form(&s.ncpoly(3, 3));
            let b = o.quotient_normal_form(&s.ncpoly(3, 3));
            let ab = o.quotient_mul(&a, &b);
            let lhs = rep_apply(&o, &ab, &rep).unwrap();
            let rhs = &rep_apply(&o, &a, &rep).unwrap() * &rep_apply(&o, &b, &rep).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ideal_maps_to_zero() {
        let rep = spin_rep(&rat(3, 2), &int(1)).unwrap();
        let o = orbit_for(&rep);
        assert!(rep.evaluate(o.ideal_generator()).is_zero());
        let mut s = PolyStream::new(8);
        let a = s.ncpoly(3, 4);
        assert_eq!(rep.evaluate(&a), rep.evaluate(o.quotient_normal_form(&a).lift()));
        assert_eq!(rep.evaluate(&a), rep.evaluate(&a.specialize_h(rep.h0())));
    }

    #[test]
    fn mismatch_is_reported() {
        let rep = spin_rep(&rat(1, 2), &int(1)).unwrap();
        let o = OrbitAlgebra::su2(HScalar::from_int(1)).unwrap();
        let q = o.quotient_normal_form(&o.env().gen(0));
        assert!(matches!(rep_apply(&o, &q, &rep), Err(Error::CasimirMismatch { .. })));
    }

    #[test]
    fn image_dimensions() {
        let half = spin_rep(&rat(1, 2), &int(1)).unwrap();
        assert_eq!(image_dimension(&half, 0), 1);
        assert_eq!(image_dimension(&half, 1), 4);
        let one = spin_rep(&int(1), &int(1)).unwrap();
        assert_eq!(image_dimension(&one, 1), 4);
        assert_eq!(image_dimension(&one, 2), 9);
    }

    #[test]
    fn reconciliation_sign() {
        let rep = spin_rep(&int(1), &rat(1, 2)).unwrap();
        let r = reconcile_level(&rep).unwrap();
        assert_eq!(r.l, rat(1, 2));
        assert_eq!(r.geometric_level, rat(1, 2));
        assert_eq!(r.sign, Some(-1));
    }
}
