//! Star products on the su(2) coadjoint orbits `x² + y² + z² = c`.
//!
//! Three constructions share one [`OrbitAlgebra`] context:
//!
//! * the quotient `U_h / I_h`, where `I_h` is generated by `P - c(h)` and
//!   `P = W(x² + y² + z²)`, with normal form in the basis `X^m Y^n Z^ν`, `ν ≤ 1`;
//! * the product on `Pol(S²)[h]` obtained by identifying `[x^m y^n z^ν]` with
//!   `[X^m Y^n Z^ν]`;
//! * the tangential product `⋆_P`, pulled back along
//!   `Φ((p - c⁰)^m η) = (P - c(h))^m W(η)` for harmonic `η`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use dashmap::DashMap;
use num_traits::Zero;

use crate::cpoly::{sum_of_squares, CPoly, Monomial};
use crate::envelope::{EnvelopingAlgebra, NCPoly};
use crate::error::{Error, Result};
use crate::harmonic::harmonic_decompose;
use crate::lie::CasimirFragment;
use crate::parse::{parse_cpoly_with, parse_hscalar};
use crate::scalar::{int, parse_rational, HScalar, Rational};

const Z: usize = 2;

/// The invariant `p`, its Weyl image `P`, the quantum level `c(h)` and the
/// classical level `c⁰ = c(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirSpec {
    p: CPoly,
    big_p: NCPoly,
    c: HScalar,
    c0: Rational,
}

impl CasimirSpec {
    /// Validates: `P = W(p)` is central, `deg_h c ≤ deg p`, `c(0) = c⁰ > 0`.
    pub fn new(env: &EnvelopingAlgebra, p: CPoly, c: HScalar, c0: Rational) -> Result<Self> {
        if c0 <= Rational::zero() {
            return Err(Error::InvalidCasimir(format!(
                "classical level c0 = {c0} must be positive for a regular orbit"
            )));
        }
        Self::build(env, p, c, c0)
    }

    /// Like [`CasimirSpec::new`] but allows `c⁰ ≤ 0`. Finite-dimensional
    /// representations of the compact form have negative Casimir scalars, so
    /// the levels compatible with them live here.
    pub fn any_level(env: &EnvelopingAlgebra, p: CPoly, c: HScalar) -> Result<Self> {
        let c0 = c.constant_term();
        Self::build(env, p, c, c0)
    }

    fn build(env: &EnvelopingAlgebra, p: CPoly, c: HScalar, c0: Rational) -> Result<Self> {
        if p.h_degree().unwrap_or(0) > 0 {
            return Err(Error::InvalidCasimir("p must not depend on h".into()));
        }
        let big_p = env.weyl_map(&p);
        if !env.is_central(&big_p) {
            return Err(Error::InvalidCasimir(format!(
                "W(p) = {} is not central",
                env.print(&big_p)
            )));
        }
        let pdeg = p.x_degree().unwrap_or(0) as usize;
        if c.degree().unwrap_or(0) > pdeg {
            return Err(Error::InvalidCasimir(format!(
                "c(h) = {c} has h-degree above deg p = {pdeg}"
            )));
        }
        if c.constant_term() != c0 {
            return Err(Error::InvalidCasimir(format!("c(0) = {} differs from c0 = {c0}", c.constant_term())));
        }
        Ok(CasimirSpec { p, big_p, c, c0 })
    }

    /// `p = x² + y² + z²` on su(2) with level `c(h)` and `c⁰ = c(0)`.
    pub fn sphere(env: &EnvelopingAlgebra, c: HScalar) -> Result<Self> {
        let c0 = c.constant_term();
        Self::new(env, sum_of_squares(env.dim()), c, c0)
    }

    /// Reads `{"p": .., "c": .., "c0": ..}`; `bindings` supplies parameters such as `l`.
    pub fn from_fragment(
        env: &EnvelopingAlgebra,
        frag: &CasimirFragment,
        bindings: &BTreeMap<String, Rational>,
    ) -> Result<Self> {
        let p = parse_cpoly_with(&frag.p, env.algebra(), bindings)?;
        let c = parse_hscalar(&frag.c, bindings)?;
        let c0 = parse_rational(&frag.c0)?;
        Self::new(env, p, c, c0)
    }

    pub fn p(&self) -> &CPoly {
        &self.p
    }

    pub fn big_p(&self) -> &NCPoly {
        &self.big_p
    }

    pub fn c(&self) -> &HScalar {
        &self.c
    }

    pub fn c0(&self) -> &Rational {
        &self.c0
    }
}

/// A function on the sphere written in the basis `x^m y^n z^ν`, `ν ∈ {0, 1}`,
/// with coefficients in ℚ[h].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePoly(CPoly);

impl SpherePoly {
    /// Rejects any monomial with `z`-degree 2 or more; reduce with
    /// [`OrbitAlgebra::classical_projection`] first.
    pub fn new(f: CPoly) -> Result<Self> {
        if f.nvars() != 3 {
            return Err(Error::NotSphereBasis("sphere polynomials have three variables".into()));
        }
        if let Some(m) = f.terms().keys().find(|m| m.0[Z] >= 2) {
            return Err(Error::NotSphereBasis(format!("monomial with exponents {:?} has z-degree >= 2", m.0)));
        }
        Ok(SpherePoly(f))
    }

    pub fn as_cpoly(&self) -> &CPoly {
        &self.0
    }

    pub fn into_cpoly(self) -> CPoly {
        self.0
    }
}

/// An element of `U_h / I_h` in the basis `[X^m Y^n Z^ν]`, `ν ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientElement(NCPoly);

impl QuotientElement {
    pub fn zero() -> Self {
        QuotientElement(NCPoly::zero(3))
    }

    /// `Σ c_{mnν} [X^m Y^n Z^ν]` from `((m, n, ν), c)` pairs; `ν` must be 0 or 1.
    pub fn from_basis(terms: impl IntoIterator<Item = ((u32, u32, u32), HScalar)>) -> Result<Self> {
        let mut a = NCPoly::zero(3);
        for ((m, n, nu), c) in terms {
            if nu > 1 {
                return Err(Error::NotSphereBasis(format!("basis index ({m}, {n}, {nu}) has ν > 1")));
            }
            a.add_term(Monomial(vec![m, n, nu]), &c);
        }
        Ok(QuotientElement(a))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, m: u32, n: u32, nu: u32) -> HScalar {
        self.0.coeff(&Monomial(vec![m, n, nu]))
    }

    pub fn basis_terms(&self) -> impl Iterator<Item = ((u32, u32, u32), &HScalar)> {
        self.0.terms().iter().map(|(m, c)| ((m.0[0], m.0[1], m.0[2]), c))
    }

    /// The representative `Σ c X^m Y^n Z^ν` in `U_h`.
    pub fn lift(&self) -> &NCPoly {
        &self.0
    }

    pub fn specialize_h(&self, h0: &Rational) -> QuotientElement {
        QuotientElement(self.0.specialize_h(h0))
    }
}

/// Basis indices `(m, n, ν)` with `m + n + ν ≤ d`.
pub fn sphere_basis(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for total in 0..=d {
        for nu in 0..=1u32.min(total) {
            for m in (0..=total - nu).rev() {
                out.push((m, total - nu - m, nu));
            }
        }
    }
    out
}

/// Context for the su(2) orbit at a fixed Casimir level.
pub struct OrbitAlgebra {
    env: Arc<EnvelopingAlgebra>,
    spec: CasimirSpec,
    p_minus_c: NCPoly,
    nf_cache: DashMap<Monomial, Arc<NCPoly>>,
    phi_cache: DashMap<Monomial, Arc<NCPoly>>,
    pc_powers: Mutex<Vec<Arc<NCPoly>>>,
}

impl OrbitAlgebra {
    /// Needs a three-dimensional algebra whose Casimir is `x² + y² + z²`.
    pub fn new(env: Arc<EnvelopingAlgebra>, spec: CasimirSpec) -> Result<Self> {
        if env.dim() != 3 || !env.algebra().has_euclidean_casimir() || env.algebra().is_abelian() {
            return Err(Error::Unsupported(
                "orbit quotients are implemented for su(2)-type algebras only".into(),
            ));
        }
        if *spec.p() != sum_of_squares(3) {
            return Err(Error::Unsupported("the Casimir must be x^2 + y^2 + z^2".into()));
        }
        let p_minus_c = &spec.big_p - &env.constant(spec.c.clone());
        Ok(OrbitAlgebra {
            env,
            spec,
            pc_powers: Mutex::new(vec![Arc::new(NCPoly::one(3))]),
            p_minus_c,
            nf_cache: DashMap::new(),
            phi_cache: DashMap::new(),
        })
    }

    /// su(2) at level `c(h)`.
    pub fn su2(c: HScalar) -> Result<Self> {
        let env = Arc::new(EnvelopingAlgebra::su2());
        let spec = CasimirSpec::sphere(&env, c)?;
        Self::new(env, spec)
    }

    /// Same enveloping algebra (and its caches), different level.
    pub fn at_level(&self, spec: CasimirSpec) -> Result<Self> {
        Self::new(self.env.clone(), spec)
    }

    pub fn env(&self) -> &EnvelopingAlgebra {
        &self.env
    }

    pub fn env_arc(&self) -> Arc<EnvelopingAlgebra> {
        self.env.clone()
    }

    pub fn spec(&self) -> &CasimirSpec {
        &self.spec
    }

    /// `P - c(h)`.
    pub fn ideal_generator(&self) -> &NCPoly {
        &self.p_minus_c
    }

    fn nf_monomial(&self, m: &Monomial) -> Arc<NCPoly> {
        if m.0[Z] < 2 {
            return Arc::new(NCPoly::term(m.clone(), HScalar::one()));
        }
        if let Some(v) = self.nf_cache.get(m) {
            return v.value().clone();
        }
        // X^a Y^b Z^c ≡ X^a Y^b Z^{c-2} (c(h) - X² - Y²)
        let mut head = m.clone();
        head.0[Z] -= 2;
        let mut out = NCPoly::zero(3);
        out.add_scaled(&self.nf_monomial(&head), &self.spec.c);
        for i in [0, 1] {
            let mut sq = Monomial::one(3);
            sq.0[i] = 2;
            for (mono, c) in self.env.mul_mono(&head, &sq).terms() {
                out.add_scaled(&self.nf_monomial(mono), &-c);
            }
        }
        let out = Arc::new(out);
        self.nf_cache.insert(m.clone(), out.clone());
        out
    }

    /// Reduces modulo `I_h` to the basis `[X^m Y^n Z^ν]`.
    pub fn quotient_normal_form(&self, a: &NCPoly) -> QuotientElement {
        let mut acc: BTreeMap<Monomial, HScalar> = BTreeMap::new();
        for (m, c) in a.terms() {
            for (mono, d) in self.nf_monomial(m).terms() {
                acc.entry(mono.clone()).or_default().add_mul(c, d);
            }
        }
        QuotientElement(NCPoly::from_terms(3, acc.into_iter().filter(|(_, c)| !c.is_zero())))
    }

    pub fn quotient_mul(&self, a: &QuotientElement, b: &QuotientElement) -> QuotientElement {
        self.quotient_normal_form(&self.env.mul(&a.0, &b.0))
    }

    /// `A ∈ I_h` iff its normal form vanishes.
    pub fn ideal_membership(&self, a: &NCPoly) -> bool {
        self.quotient_normal_form(a).is_zero()
    }

    /// `[x^m y^n z^ν] ↦ [X^m Y^n Z^ν]`.
    pub fn psi_tilde(&self, f: &SpherePoly) -> QuotientElement {
        QuotientElement(NCPoly::from_symbol(&f.0))
    }

    pub fn psi_tilde_inverse(&self, q: &QuotientElement) -> SpherePoly {
        SpherePoly(q.0.symbol().clone())
    }

    /// Accepts a plain polynomial; fails if it is outside the sphere basis.
    pub fn psi_tilde_cpoly(&self, f: &CPoly) -> Result<QuotientElement> {
        Ok(self.psi_tilde(&SpherePoly::new(f.clone())?))
    }

    /// The product on `Pol(S²)[h]` transported from `U_h / I_h`.
    pub fn star_quotient(&self, f: &SpherePoly, g: &SpherePoly) -> SpherePoly {
        self.psi_tilde_inverse(&self.quotient_mul(&self.psi_tilde(f), &self.psi_tilde(g)))
    }

    /// Writes `f = s + (p - c⁰) q` with `s` in the sphere basis, using
    /// `z² = (c⁰ - x² - y²) + (p - c⁰)`.
    pub fn classical_split(&self, f: &CPoly) -> (SpherePoly, CPoly) {
        let c0 = HScalar::constant(self.spec.c0.clone());
        let mut by_z: BTreeMap<u32, BTreeMap<Monomial, HScalar>> = BTreeMap::new();
        for (m, c) in f.terms() {
            by_z.entry(m.0[Z]).or_default().insert(m.clone(), c.clone());
        }
        let mut quotient = CPoly::zero(3);
        let mut rest = CPoly::zero(3);
        while let Some((zdeg, terms)) = by_z.pop_last() {
            if zdeg < 2 {
                for (m, c) in terms {
                    rest.add_term(m, &c);
                }
                continue;
            }
            for (m, c) in terms {
                if c.is_zero() {
                    continue;
                }
                let mut head = m.clone();
                head.0[Z] -= 2;
                quotient.add_term(head.clone(), &c);
                let lower = by_z.entry(zdeg - 2).or_default();
                let mut xs = head.clone();
                xs.0[0] += 2;
                let mut ys = head.clone();
                ys.0[1] += 2;
                for (mono, coeff) in [(head, &c * &c0), (xs, -&c), (ys, -&c)] {
                    *lower.entry(mono).or_default() += &coeff;
                }
            }
        }
        (SpherePoly(rest), quotient)
    }

    /// Restriction to the orbit `p = c⁰`, in the sphere basis.
    pub fn classical_projection(&self, f: &CPoly) -> SpherePoly {
        self.classical_split(f).0
    }

    /// The product of `Pol(S²)`: multiply, then project.
    pub fn classical_product(&self, f: &SpherePoly, g: &SpherePoly) -> SpherePoly {
        self.classical_projection(&(&f.0 * &g.0))
    }

    /// `Ψ(x^m y^n z^ν) = X^m Y^n Z^ν` for `ν ≤ 1` and
    /// `Ψ(x^m y^n z^r (p - c⁰)) = X^m Y^n Z^r (P - c(h))`.
    pub fn psi_section_map(&self, f: &CPoly) -> NCPoly {
        let (s, q) = self.classical_split(f);
        let lifted = NCPoly::from_symbol(&s.0);
        let tail = self.env.mul(&NCPoly::from_symbol(&q), &self.p_minus_c);
        &lifted + &tail
    }

    fn pc_power(&self, k: usize) -> Arc<NCPoly> {
        let mut powers = self.pc_powers.lock().expect("power table poisoned");
        while powers.len() <= k {
            let next = self.env.mul(powers.last().unwrap(), &self.p_minus_c);
            powers.push(Arc::new(next));
        }
        powers[k].clone()
    }

    fn phi_monomial(&self, m: &Monomial) -> Arc<NCPoly> {
        if let Some(v) = self.phi_cache.get(m) {
            return v.value().clone();
        }
        let f = CPoly::term(m.clone(), HScalar::one());
        let dec = harmonic_decompose(&f, self.env.algebra()).expect("su(2)-type context");
        // p^k = Σ_j C(k, j) (c⁰)^{k-j} (p - c⁰)^j
        let c0 = &self.spec.c0;
        let mut zeta: BTreeMap<u32, CPoly> = BTreeMap::new();
        for (k, eta) in dec.parts() {
            let mut binom = int(1);
            for j in (0..=k).rev() {
                // binom = C(k, j)
                let mut weight = binom.clone();
                for _ in 0..(k - j) {
                    weight *= c0;
                }
                let slot = zeta.entry(j).or_insert_with(|| CPoly::zero(3));
                *slot = &*slot + &eta.scale_rational(&weight);
                if j > 0 {
                    binom = binom * int(j as i64) / int((k - j + 1) as i64);
                }
            }
        }
        let mut out = NCPoly::zero(3);
        for (j, z) in zeta {
            if z.is_zero() {
                continue;
            }
            let w = self.env.weyl_map(&z);
            let term = if j == 0 { w } else { self.env.mul(&self.pc_power(j as usize), &w) };
            out = &out + &term;
        }
        let out = Arc::new(out);
        self.phi_cache.insert(m.clone(), out.clone());
        out
    }

    /// `Φ((p - c⁰)^m η) = (P - c(h))^m W(η)` for harmonic `η`, extended linearly.
    pub fn phi_map(&self, f: &CPoly) -> NCPoly {
        let mut acc: BTreeMap<Monomial, HScalar> = BTreeMap::new();
        for (m, c) in f.terms() {
            for (mono, d) in self.phi_monomial(m).terms() {
                acc.entry(mono.clone()).or_default().add_mul(c, d);
            }
        }
        NCPoly::from_terms(3, acc.into_iter().filter(|(_, c)| !c.is_zero()))
    }

    /// `Φ⁻¹`; `Φ(x^a)` is `X^a` plus lower-degree terms.
    pub fn phi_inverse(&self, a: &NCPoly) -> CPoly {
        self.env.triangular_inverse(a, |m| self.phi_monomial(m))
    }

    /// `f ⋆_P g = Φ⁻¹(Φ(f) Φ(g))`.
    pub fn star_p(&self, f: &CPoly, g: &CPoly) -> CPoly {
        if f.is_zero() || g.is_zero() {
            return CPoly::zero(3);
        }
        self.phi_inverse(&self.env.mul(&self.phi_map(f), &self.phi_map(g)))
    }

    /// `f ⋆_S g`, for convenience.
    pub fn star_s(&self, f: &CPoly, g: &CPoly) -> CPoly {
        self.env.star_s(f, g)
    }

    /// `p - c⁰` as a polynomial.
    pub fn classical_ideal_generator(&self) -> CPoly {
        &self.spec.p - &CPoly::rational(3, self.spec.c0.clone())
    }

    /// True iff `f` vanishes on `p = c⁰`, i.e. `f ∈ I₀`.
    pub fn in_classical_ideal(&self, f: &CPoly) -> bool {
        self.classical_projection(f).0.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpoly::kirillov_bracket;
    use crate::lie::LieAlgebraSpec;
    use crate::parse::parse_cpoly;
    use crate::random::PolyStream;
    use crate::scalar::rat;

    fn c(s: &str) -> CPoly {
        parse_cpoly(s, &LieAlgebraSpec::su2()).unwrap()
    }

    fn sphere(s: &str) -> SpherePoly {
        SpherePoly::new(c(s)).unwrap()
    }

    fn orbit() -> OrbitAlgebra {
        // c(h) = 2 + h/2
        OrbitAlgebra::su2(HScalar::from_coeffs(vec![int(2), rat(1, 2)])).unwrap()
    }

    #[test]
    fn z_squared_normal_form() {
        let o = orbit();
        let u = o.env();
        let q = o.quotient_normal_form(&u.parse("Z^2").unwrap());
        let expected = QuotientElement::from_basis([
            ((0, 0, 0), o.spec().c().clone()),
            ((2, 0, 0), HScalar::from_int(-1)),
            ((0, 2, 0), HScalar::from_int(-1)),
        ])
        .unwrap();
        assert_eq!(q, expected);
        let x = o.quotient_normal_form(&u.gen(0));
        assert_eq!(x.lift(), &u.gen(0));
    }

    #[test]
    fn z_cubed_is_coset_consistent() {
        let o = orbit();
        let u = o.env();
        let z = u.gen(2);
        let z2 = u.parse("Z^2").unwrap();
        let direct = o.quotient_normal_form(&u.parse("Z^3").unwrap());
        let left = o.quotient_mul(&o.quotient_normal_form(&z), &o.quotient_normal_form(&z2));
        let right = o.quotient_mul(&o.quotient_normal_form(&z2), &o.quotient_normal_form(&z));
        assert_eq!(direct, left);
        assert_eq!(direct, right);
        assert!(direct.basis_terms().all(|((_, _, nu), _)| nu <= 1));
    }

    #[test]
    fn sphere_star_examples() {
        let o = orbit();
        let zz = o.star_quotient(&sphere("z"), &sphere("z"));
        let expected = &CPoly::constant(3, o.spec().c().clone()) - &c("x^2 + y^2");
        assert_eq!(zz.as_cpoly(), &expected);
        let f = sphere("x^2*y*z - 3*y + h*x");
        assert_eq!(o.star_quotient(&sphere("1"), &f), f);
        let xy = o.star_quotient(&sphere("x"), &sphere("y"));
        let yx = o.star_quotient(&sphere("y"), &sphere("x"));
        assert_eq!(xy.as_cpoly() - yx.as_cpoly(), c("h*z"));
    }

    #[test]
    fn psi_tilde_rejects_high_z() {
        let o = orbit();
        assert!(matches!(o.psi_tilde_cpoly(&c("z^2")), Err(Error::NotSphereBasis(_))));
        let q = o.psi_tilde(&sphere("x*y*z"));
        assert_eq!(q.coeff(1, 1, 1), HScalar::one());
        assert_eq!(o.psi_tilde(&sphere("x")).lift(), &o.env().gen(0));
    }

    #[test]
    fn phi_examples() {
        let o = orbit();
        let u = o.env();
        let pc = o.classical_ideal_generator();
        assert_eq!(o.phi_map(&pc), o.ideal_generator().clone());
        let eta = c("x*y - 2*z + y^2 - z^2");
        assert_eq!(o.phi_map(&eta), u.weyl_map(&eta));
        let px = &pc * &c("x");
        assert_eq!(o.phi_map(&px), u.mul(o.ideal_generator(), &u.gen(0)));
    }

    #[test]
    fn phi_round_trip() {
        let o = orbit();
        let mut s = PolyStream::new(5);
        for _ in 0..10 {
            let f = s.poly(3, 5);
            assert_eq!(o.phi_inverse(&o.phi_map(&f)), f);
        }
    }

    #[test]
    fn star_p_examples() {
        let o = OrbitAlgebra::su2(HScalar::from_int(3)).unwrap();
        let p = c("x^2+y^2+z^2");
        assert_eq!(o.star_p(&p, &c("x")), c("x^3 + x*y^2 + x*z^2"));
        let comm = &o.star_p(&c("x"), &c("y")) - &o.star_p(&c("y"), &c("x"));
        assert_eq!(comm.truncate_h(2), c("h*z"));
        let f = c("x*y^2 - z + 4");
        assert_eq!(o.star_p(&CPoly::one(3), &f), f);
        // covariance at the derivation level
        let alg = LieAlgebraSpec::su2();
        let g = c("y*z + x^2");
        for i in 0..3 {
            let xi = CPoly::var(3, i);
            let lhs = kirillov_bracket(&xi, &o.star_p(&f, &g), &alg);
            let rhs = &o.star_p(&kirillov_bracket(&xi, &f, &alg), &g) + &o.star_p(&f, &kirillov_bracket(&xi, &g, &alg));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ideal_membership_examples() {
        let o = orbit();
        let u = o.env();
        assert!(o.ideal_membership(o.ideal_generator()));
        let sandwich = u.mul(&u.mul(&u.gen(0), o.ideal_generator()), &u.gen(1));
        assert!(o.ideal_membership(&sandwich));
        assert!(!o.ideal_membership(&u.gen(0)));
    }

    #[test]
    fn psi_section_examples() {
        let o = orbit();
        let u = o.env();
        assert_eq!(o.psi_section_map(&c("x")), u.gen(0));
        assert_eq!(o.psi_section_map(&o.classical_ideal_generator()), o.ideal_generator().clone());
        let img = o.psi_section_map(&c("z^2"));
        let expected = &(&u.constant(HScalar::constant(int(2))) - &u.parse("X^2 + Y^2").unwrap()) + o.ideal_generator();
        assert_eq!(img, expected);
        // modulo I_h the lift lands on c⁰ - X² - Y², not on [Z²] = c(h) - X² - Y²
        let shift = &o.quotient_normal_form(&u.parse("Z^2").unwrap()).lift().clone() - o.quotient_normal_form(&img).lift();
        assert_eq!(shift, u.constant(HScalar::monomial(rat(1, 2), 1)));
    }

    #[test]
    fn basis_count_matches_spherical_harmonics() {
        for d in 0..=6u32 {
            assert_eq!(sphere_basis(d).len() as u32, (d + 1) * (d + 1));
            let by_l: u32 = (0..=d).map(|l| 2 * l + 1).sum();
            assert_eq!(sphere_basis(d).len() as u32, by_l);
        }
    }

    #[test]
    fn spec_validation() {
        let u = EnvelopingAlgebra::su2();
        let p = sum_of_squares(3);
        assert!(CasimirSpec::new(&u, p.clone(), HScalar::from_int(-1), int(-1)).is_err());
        let cubic = HScalar::from_coeffs(vec![int(1), int(0), int(0), int(1)]);
        assert!(CasimirSpec::new(&u, p.clone(), cubic, int(1)).is_err());
        assert!(CasimirSpec::new(&u, p.clone(), HScalar::from_int(2), int(1)).is_err());
        assert!(CasimirSpec::new(&u, c("x^2"), HScalar::from_int(1), int(1)).is_err());
        let quantized = HScalar::monomial(rat(-3, 4), 2);
        assert!(CasimirSpec::any_level(&u, p, quantized).is_ok());
    }
}
