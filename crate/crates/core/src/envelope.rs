//! The deformed enveloping algebra `U_h`: PBW normal forms, the Weyl symmetrizer
//! and the Weyl-ordered star product.
//!
//! `U_h` is generated by `X_1, ..., X_n` subject to
//! `X_i X_j - X_j X_i = h Σ_k c_ij^k X_k`. Elements are kept in PBW normal form
//! `X_1^{a_1} ... X_n^{a_n}`, and products of normal monomials are memoized.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::Zero;

use crate::cpoly::{format_terms, push_power, CPoly, Monomial};
use crate::error::{Error, Result};
use crate::lie::{jacobi_check, LieAlgebraSpec};
use crate::parse::{parse_expr, ExprBuilder};
use crate::scalar::{rat, HScalar, Rational};

/// An element of `U_h` in PBW normal form: a map from exponent vectors to
/// coefficients in ℚ[h]. Products need an [`EnvelopingAlgebra`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NCPoly(CPoly);

impl NCPoly {
    pub fn zero(nvars: usize) -> Self {
        NCPoly(CPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        NCPoly(CPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: HScalar) -> Self {
        NCPoly(CPoly::constant(nvars, c))
    }

    pub fn gen(nvars: usize, i: usize) -> Self {
        NCPoly(CPoly::var(nvars, i))
    }

    pub fn term(m: Monomial, c: HScalar) -> Self {
        NCPoly(CPoly::term(m, c))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, HScalar)>) -> Self {
        NCPoly(CPoly::from_terms(nvars, terms))
    }

    /// Reads the PBW coefficients of `X^a` off the commutative monomials `x^a`.
    pub fn from_symbol(f: &CPoly) -> Self {
        NCPoly(f.clone())
    }

    /// The commutative polynomial with the same coefficients (`X^a ↦ x^a`).
    pub fn symbol(&self) -> &CPoly {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, HScalar> {
        self.0.terms()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> HScalar {
        self.0.coeff(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: &HScalar) {
        self.0.add_term(m, c)
    }

    pub fn add_scaled(&mut self, other: &NCPoly, c: &HScalar) {
        self.0.add_scaled(&other.0, c)
    }

    pub fn scale(&self, c: &HScalar) -> NCPoly {
        NCPoly(self.0.scale(c))
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.0.x_degree()
    }

    pub fn specialize_h(&self, h0: &Rational) -> NCPoly {
        NCPoly(self.0.specialize_h(h0))
    }

    /// Canonical text with capitalized generator names, e.g. `X*Y - h*Z`.
    pub fn to_canonical(&self, upper_names: &[String]) -> String {
        let terms = self.terms().iter().rev().flat_map(|(m, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(move |(k, q)| (q.clone(), k, m))
        });
        format_terms(terms, |m: &Monomial, out| {
            for (i, &e) in m.0.iter().enumerate() {
                push_power(out, &upper_names[i], e);
            }
        })
    }
}

impl std::ops::Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        NCPoly(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        NCPoly(&self.0 - &rhs.0)
    }
}

impl std::ops::Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly(-&self.0)
    }
}

/// Order in which adjacent inversions are rewritten by [`EnvelopingAlgebra::reduce_word_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapStrategy {
    Leftmost,
    Rightmost,
}

/// `U_h` for a fixed Lie algebra, with shared memo tables.
///
/// The caches are internally synchronized; an `EnvelopingAlgebra` can be used
/// from several threads at once.
pub struct EnvelopingAlgebra {
    alg: Arc<LieAlgebraSpec>,
    upper: Vec<String>,
    left_gen_cache: DashMap<(usize, Monomial), Arc<NCPoly>>,
    mono_cache: DashMap<(Monomial, Monomial), Arc<NCPoly>>,
    weyl_cache: DashMap<Monomial, Arc<NCPoly>>,
}

impl EnvelopingAlgebra {
    /// Fails if the structure constants violate Jacobi (PBW reduction would not be confluent).
    pub fn new(alg: Arc<LieAlgebraSpec>) -> Result<Self> {
        if let Some(w) = jacobi_check(&alg).witness {
            return Err(Error::JacobiViolation(w));
        }
        let upper = alg.upper_names();
        Ok(EnvelopingAlgebra {
            alg,
            upper,
            left_gen_cache: DashMap::new(),
            mono_cache: DashMap::new(),
            weyl_cache: DashMap::new(),
        })
    }

    pub fn su2() -> Self {
        Self::new(Arc::new(LieAlgebraSpec::su2())).expect("su(2) is a Lie algebra")
    }

    pub fn algebra(&self) -> &LieAlgebraSpec {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<LieAlgebraSpec> {
        self.alg.clone()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn upper_names(&self) -> &[String] {
        &self.upper
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::one(self.dim())
    }

    pub fn gen(&self, i: usize) -> NCPoly {
        NCPoly::gen(self.dim(), i)
    }

    pub fn constant(&self, c: HScalar) -> NCPoly {
        NCPoly::constant(self.dim(), c)
    }

    pub fn print(&self, a: &NCPoly) -> String {
        a.to_canonical(&self.upper)
    }

    /// `X_i · X^m` in normal form.
    pub fn left_mul_gen(&self, i: usize, m: &Monomial) -> Arc<NCPoly> {
        let key = (i, m.clone());
        if let Some(v) = self.left_gen_cache.get(&key) {
            return v.value().clone();
        }
        let n = self.dim();
        let first = m.0.iter().position(|&e| e > 0);
        let result = match first {
            Some(k) if k < i => {
                // X_i X_k = X_k X_i - h Σ_l c_ki^l X_l
                let rest = m.div_var(k).expect("k divides m");
                let mut out = NCPoly::zero(n);
                let inner = self.left_mul_gen(i, &rest);
                for (mono, c) in inner.terms() {
                    out.add_scaled(&self.left_mul_gen(k, mono), c);
                }
                for (l, c) in self.alg.bracket(k, i) {
                    let coeff = HScalar::monomial(-c, 1);
                    out.add_scaled(&self.left_mul_gen(*l, &rest), &coeff);
                }
                out
            }
            _ => NCPoly::term(m.with_var(i), HScalar::one()),
        };
        let result = Arc::new(result);
        self.left_gen_cache.insert(key, result.clone());
        result
    }

    /// `X^a · X^b` in normal form.
    pub fn mul_mono(&self, a: &Monomial, b: &Monomial) -> Arc<NCPoly> {
        let last = a.0.iter().rposition(|&e| e > 0);
        let first = b.0.iter().position(|&e| e > 0);
        match (last, first) {
            (Some(i), Some(k)) if i > k => {}
            _ => return Arc::new(NCPoly::term(a.mul(b), HScalar::one())),
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.mono_cache.get(&key) {
            return v.value().clone();
        }
        let i = last.unwrap();
        let head = a.div_var(i).expect("i divides a");
        let tail = self.left_mul_gen(i, b);
        let mut acc: BTreeMap<Monomial, HScalar> = BTreeMap::new();
        for (mono, c) in tail.terms() {
            for (m2, c2) in self.mul_mono(&head, mono).terms() {
                acc.entry(m2.clone()).or_default().add_mul(c, c2);
            }
        }
        let result = Arc::new(NCPoly::from_terms(self.dim(), acc));
        self.mono_cache.insert(key, result.clone());
        result
    }

    /// The product in `U_h`.
    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        let mut acc: BTreeMap<Monomial, HScalar> = BTreeMap::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let coeff = ca * cb;
                if coeff.is_zero() {
                    continue;
                }
                for (m, c) in self.mul_mono(ma, mb).terms() {
                    acc.entry(m.clone()).or_default().add_mul(&coeff, c);
                }
            }
        }
        NCPoly::from_terms(self.dim(), acc.into_iter().filter(|(_, c)| !c.is_zero()))
    }

    pub fn commutator(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        &self.mul(a, b) - &self.mul(b, a)
    }

    pub fn pow(&self, a: &NCPoly, n: u32) -> NCPoly {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Normal form of the word `X_{w_1} X_{w_2} ... X_{w_p}`.
    pub fn pbw_reduce(&self, word: &[usize]) -> Result<NCPoly> {
        self.check_word(word)?;
        let mut acc = self.one();
        for &i in word.iter().rev() {
            let mut next = NCPoly::zero(self.dim());
            for (m, c) in acc.terms() {
                next.add_scaled(&self.left_mul_gen(i, m), c);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of a word by explicit adjacent-swap rewriting, without any
    /// memoization. Used to check that the result does not depend on the order
    /// in which swaps are applied.
    pub fn reduce_word_with(&self, word: &[usize], strategy: SwapStrategy) -> Result<NCPoly> {
        self.check_word(word)?;
        let n = self.dim();
        let mut pending: BTreeMap<Vec<usize>, HScalar> = BTreeMap::new();
        pending.insert(word.to_vec(), HScalar::one());
        let mut done = NCPoly::zero(n);
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            let inversions = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]);
            let pos = match strategy {
                SwapStrategy::Leftmost => inversions.min(),
                SwapStrategy::Rightmost => inversions.max(),
            };
            let Some(p) = pos else {
                let mut e = vec![0u32; n];
                for &g in &w {
                    e[g] += 1;
                }
                done.add_term(Monomial(e), &c);
                continue;
            };
            // w[p] > w[p+1]: X_j X_i = X_i X_j - h Σ_l c_ij^l X_l with i = w[p+1]
            let (j, i) = (w[p], w[p + 1]);
            let mut swapped = w.clone();
            swapped.swap(p, p + 1);
            *pending.entry(swapped).or_default() += &c;
            for (l, q) in self.alg.bracket(i, j) {
                let mut shorter = w[..p].to_vec();
                shorter.push(*l);
                shorter.extend_from_slice(&w[p + 2..]);
                *pending.entry(shorter).or_default() -= &c.scale(q).shift(1);
            }
        }
        Ok(done)
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i >= self.dim()) {
            Some(&index) => Err(Error::GeneratorOutOfRange {
                index,
                dim: self.dim(),
            }),
            None => Ok(()),
        }
    }

    /// `W(x^a)`: the symmetrized product, computed by
    /// `W(x^a) = (1/p) Σ_i a_i X_i · W(x^{a - e_i})`.
    pub fn weyl_monomial(&self, m: &Monomial) -> Arc<NCPoly> {
        if m.degree() <= 1 {
            return Arc::new(NCPoly::term(m.clone(), HScalar::one()));
        }
        if let Some(v) = self.weyl_cache.get(m) {
            return v.value().clone();
        }
        let p = m.degree() as i64;
        let mut acc = NCPoly::zero(self.dim());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let sub = self.weyl_monomial(&m.div_var(i).unwrap());
            let weight = HScalar::constant(rat(e as i64, p));
            for (mono, c) in sub.terms() {
                acc.add_scaled(&self.left_mul_gen(i, mono), &(c * &weight));
            }
        }
        let result = Arc::new(acc);
        self.weyl_cache.insert(m.clone(), result.clone());
        result
    }

    /// The Weyl symmetrizer `W : Pol(g*)[h] → U_h`.
    pub fn weyl_map(&self, f: &CPoly) -> NCPoly {
        let mut acc: BTreeMap<Monomial, HScalar> = BTreeMap::new();
        for (m, c) in f.terms() {
            for (mono, d) in self.weyl_monomial(m).terms() {
                acc.entry(mono.clone()).or_default().add_mul(c, d);
            }
        }
        NCPoly::from_terms(self.dim(), acc.into_iter().filter(|(_, c)| !c.is_zero()))
    }

    /// `W⁻¹`, using that `W(x^a) = X^a + (terms of lower degree)`.
    pub fn weyl_inverse(&self, a: &NCPoly) -> CPoly {
        self.triangular_inverse(a, |m| self.weyl_monomial(m))
    }

    /// Inverts a linear map `x^a ↦ image(a)` whose images are `X^a` plus terms
    /// of strictly lower degree: the leading monomial is peeled off repeatedly.
    pub fn triangular_inverse(&self, a: &NCPoly, image: impl Fn(&Monomial) -> Arc<NCPoly>) -> CPoly {
        let mut work: BTreeMap<Monomial, HScalar> = a.terms().clone();
        let mut out = CPoly::zero(self.dim());
        while let Some((m, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            let w = image(&m);
            debug_assert!(w.coeff(&m).is_one());
            for (mono, d) in w.terms() {
                if *mono == m {
                    continue;
                }
                debug_assert!(mono.degree() < m.degree());
                let entry = work.entry(mono.clone()).or_default();
                *entry -= &(&c * d);
            }
            out.add_term(m, &c);
        }
        out
    }

    /// `f ⋆_S g = W⁻¹(W(f) W(g))`.
    pub fn star_s(&self, f: &CPoly, g: &CPoly) -> CPoly {
        if f.is_zero() || g.is_zero() {
            return CPoly::zero(self.dim());
        }
        self.weyl_inverse(&self.mul(&self.weyl_map(f), &self.weyl_map(g)))
    }

    /// True iff `a` commutes with every generator.
    pub fn is_central(&self, a: &NCPoly) -> bool {
        (0..self.dim()).all(|i| {
            let x = self.gen(i);
            self.mul(a, &x) == self.mul(&x, a)
        })
    }

    /// Parses an element written in the capitalized generator names, e.g. `Y*X + h*Z`.
    /// Products are taken in `U_h`, so the input need not be ordered.
    pub fn parse(&self, text: &str) -> Result<NCPoly> {
        self.parse_with(text, &BTreeMap::new())
    }

    pub fn parse_with(&self, text: &str, bindings: &BTreeMap<String, Rational>) -> Result<NCPoly> {
        parse_expr(text, &NCBuilder { env: self, bindings }, false)
    }
}

struct NCBuilder<'a> {
    env: &'a EnvelopingAlgebra,
    bindings: &'a BTreeMap<String, Rational>,
}

impl ExprBuilder for NCBuilder<'_> {
    type Value = NCPoly;

    fn constant(&self, q: Rational) -> NCPoly {
        self.env.constant(HScalar::constant(q))
    }

    fn symbol(&self, name: &str, pos: usize) -> Result<NCPoly> {
        if name == "h" {
            return Ok(self.env.constant(HScalar::h()));
        }
        if let Some(i) = self.env.upper.iter().position(|s| s == name) {
            return Ok(self.env.gen(i));
        }
        if let Some(q) = self.bindings.get(name) {
            return Ok(self.env.constant(HScalar::constant(q.clone())));
        }
        Err(Error::UnknownVariable {
            name: name.to_string(),
            pos,
        })
    }

    fn add(&self, a: NCPoly, b: NCPoly) -> NCPoly {
        &a + &b
    }

    fn neg(&self, a: NCPoly) -> NCPoly {
        -&a
    }

    fn mul(&self, a: NCPoly, b: NCPoly) -> NCPoly {
        self.env.mul(&a, &b)
    }
}
