//! Commutative polynomials on the dual of a Lie algebra, with coefficients in ℚ[h].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebraSpec;
use crate::scalar::{format_rational, HScalar, Rational};

/// Exponent vector. Ordered by total degree, then lexicographically with the
/// first variable most significant, so `x^2 > x*y > y^2 > x > 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / x_i`, if `x_i` divides it.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn with_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// All exponent vectors in `n` variables of total degree exactly `d`, in descending order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// All exponent vectors of total degree at most `d`.
    pub fn all_up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Self::all_of_degree(n, k)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A commutative polynomial in `n` variables with [`HScalar`] coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, HScalar>,
}

impl CPoly {
    pub fn zero(nvars: usize) -> Self {
        CPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, HScalar::one())
    }

    pub fn constant(nvars: usize, c: HScalar) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn rational(nvars: usize, q: Rational) -> Self {
        Self::constant(nvars, HScalar::constant(q))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), HScalar::one())
    }

    pub fn h(nvars: usize) -> Self {
        Self::constant(nvars, HScalar::h())
    }

    pub fn term(m: Monomial, c: HScalar) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, HScalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, HScalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, HScalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> HScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &HScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &CPoly, c: &HScalar) {
        for (m, d) in &other.terms {
            self.add_term(m.clone(), &(c * d));
        }
    }

    pub fn scale(&self, c: &HScalar) -> CPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        CPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), c * d))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> CPoly {
        self.scale(&HScalar::constant(q.clone()))
    }

    pub fn pow(&self, n: u32) -> CPoly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Highest total degree in the variables (ignoring `h`); `None` for zero.
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Highest power of `h` appearing; `None` for zero.
    pub fn h_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(HScalar::degree).max()
    }

    pub fn homogeneous_component(&self, d: u32) -> CPoly {
        CPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every term has `x-degree + h-degree == d`.
    pub fn is_weighted_homogeneous(&self, d: usize) -> bool {
        self.terms.iter().all(|(m, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .all(|(k, q)| q.is_zero() || m.degree() as usize + k == d)
        })
    }

    /// Coefficient of `h^k`, as an `h`-free polynomial.
    pub fn h_coefficient(&self, k: usize) -> CPoly {
        CPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), HScalar::constant(c.coeff(k)))),
        )
    }

    /// Reduction modulo `h^n`.
    pub fn truncate_h(&self, n: usize) -> CPoly {
        CPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), c.truncate(n))),
        )
    }

    /// Evaluates every coefficient at `h = h0`.
    pub fn specialize_h(&self, h0: &Rational) -> CPoly {
        CPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), HScalar::constant(c.eval(h0)))),
        )
    }

    /// The constant term if the polynomial has no variable dependence.
    pub fn as_scalar(&self) -> Option<HScalar> {
        match self.terms.len() {
            0 => Some(HScalar::zero()),
            1 => self.terms.get(&Monomial::one(self.nvars)).cloned(),
            _ => None,
        }
    }

    pub fn derivative(&self, i: usize) -> CPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(dm) = m.div_var(i) {
                let e = m.0[i] as i64;
                out.add_term(dm, &c.scale(&crate::scalar::int(e)));
            }
        }
        out
    }

    /// `Σ_i ∂²f/∂x_i²`, for any number of variables.
    pub(crate) fn euclidean_laplacian(&self) -> CPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            for i in 0..self.nvars {
                let e = m.0[i];
                if e >= 2 {
                    let mut dm = m.0.clone();
                    dm[i] -= 2;
                    out.add_term(Monomial(dm), &c.scale(&crate::scalar::int((e * (e - 1)) as i64)));
                }
            }
        }
        out
    }

    /// Evaluates at a point with rational coordinates and `h = h0`.
    pub fn eval(&self, point: &[Rational], h0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.eval(h0);
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces variable `i` by `value`.
    pub fn substitute(&self, i: usize, value: &CPoly) -> CPoly {
        let mut out = Self::zero(self.nvars);
        let mut powers = vec![Self::one(self.nvars)];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest[i] = 0;
            let mono = CPoly::term(Monomial(rest), c.clone());
            out = &out + &(&mono * &powers[e]);
        }
        out
    }

    /// Canonical text form, e.g. `x*y + 1/2*h*z`.
    ///
    /// Terms print from the largest monomial down; each `h^k` part of a
    /// coefficient is its own term, with ascending `k`.
    pub fn to_canonical(&self, names: &[String]) -> String {
        let terms = self.terms.iter().rev().flat_map(|(m, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(move |(k, q)| (q.clone(), k, m))
        });
        format_terms(terms, |m, out| {
            for (i, &e) in m.0.iter().enumerate() {
                push_power(out, &names[i], e);
            }
        })
    }
}

pub(crate) fn push_power(out: &mut Vec<String>, name: &str, e: u32) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{e}")),
    }
}

/// Joins `(coefficient, h-power, monomial)` triples with ` + ` / ` - `.
pub(crate) fn format_terms<'a, M: 'a>(
    terms: impl Iterator<Item = (Rational, usize, &'a M)>,
    write_factors: impl Fn(&M, &mut Vec<String>),
) -> String {
    let mut s = String::new();
    for (q, k, m) in terms {
        let neg = q.is_negative();
        let mag = q.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        push_power(&mut factors, "h", k as u32);
        write_factors(m, &mut factors);
        if factors.is_empty() {
            s.push_str(&format_rational(&mag));
        } else {
            if !mag.is_one() {
                let _ = write!(s, "{}*", format_rational(&mag));
            }
            s.push_str(&factors.join("*"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl Add<&CPoly> for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&CPoly> for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul<&CPoly> for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        let mut acc: BTreeMap<Monomial, HScalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                acc.entry(ma.mul(mb)).or_default().add_mul(ca, cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        CPoly {
            nvars: self.nvars.max(rhs.nvars),
            terms: acc,
        }
    }
}

/// The Kirillov–Poisson bracket `{f, g} = Σ_ijk c_ij^k x_k ∂_i f ∂_j g`.
pub fn kirillov_bracket(f: &CPoly, g: &CPoly, alg: &LieAlgebraSpec) -> CPoly {
    let n = alg.dim();
    let mut out = CPoly::zero(n);
    if f.is_zero() || g.is_zero() {
        return out;
    }
    let df: Vec<CPoly> = (0..n).map(|i| f.derivative(i)).collect();
    let dg: Vec<CPoly> = (0..n).map(|j| g.derivative(j)).collect();
    for i in 0..n {
        if df[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if dg[j].is_zero() || alg.bracket(i, j).is_empty() {
                continue;
            }
            let mut lin = CPoly::zero(n);
            for (k, c) in alg.bracket(i, j) {
                lin.add_term(Monomial::var(n, *k), &HScalar::constant(c.clone()));
            }
            out = &out + &(&(&df[i] * &dg[j]) * &lin);
        }
    }
    out
}

/// `Σ_i ∂²f/∂x_i²`, defined for algebras whose quadratic Casimir is `Σ x_i²`.
pub fn laplacian(f: &CPoly, alg: &LieAlgebraSpec) -> Result<CPoly> {
    if !alg.has_euclidean_casimir() || alg.is_abelian() {
        return Err(Error::Unsupported(
            "the Laplacian needs coordinates in which the quadratic Casimir is a sum of squares".into(),
        ));
    }
    Ok(f.euclidean_laplacian())
}

/// `x_1² + ... + x_n²`.
pub fn sum_of_squares(n: usize) -> CPoly {
    let mut p = CPoly::zero(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 2;
        p.add_term(Monomial(e), &HScalar::one());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_cpoly;
    use crate::scalar::{int, rat};

    fn su2() -> LieAlgebraSpec {
        LieAlgebraSpec::su2()
    }

    fn p(s: &str) -> CPoly {
        parse_cpoly(s, &su2()).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&p("x") * &p("y"), p("x*y"));
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
        assert_eq!(&p("x^2+y^2+z^2") * &p("z"), p("x^2*z+y^2*z+z^3"));
        let f = p("x^2 + h*y - 3");
        let g = p("z^3 - 1/2*x*y");
        assert_eq!((&f * &g).x_degree(), Some(5));
    }

    #[test]
    fn bracket_examples() {
        let alg = su2();
        assert_eq!(kirillov_bracket(&p("x"), &p("y"), &alg), p("z"));
        assert!(kirillov_bracket(&p("x"), &p("x"), &alg).is_zero());
        assert_eq!(kirillov_bracket(&p("x^2"), &p("y"), &alg), p("2*x*z"));
    }

    #[test]
    fn bracket_from_pointwise_formula() {
        // {x^2, y} evaluated at sample points via Σ c_ij^k λ_k ∂_i f ∂_j g directly
        let alg = su2();
        let f = p("x^2");
        let g = p("y");
        let br = kirillov_bracket(&f, &g, &alg);
        for pt in [[int(1), int(2), int(3)], [rat(-1, 2), int(5), rat(7, 3)]] {
            let mut direct = Rational::zero();
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        direct += alg.c(i, j, k)
                            * &pt[k]
                            * f.derivative(i).eval(&pt, &int(0))
                            * g.derivative(j).eval(&pt, &int(0));
                    }
                }
            }
            assert_eq!(br.eval(&pt, &int(0)), direct);
        }
    }

    #[test]
    fn laplacian_examples() {
        let alg = su2();
        assert_eq!(laplacian(&p("x^2+y^2+z^2"), &alg).unwrap(), p("6"));
        assert!(laplacian(&p("x*y"), &alg).unwrap().is_zero());
        assert!(laplacian(&p("x^2 - 1/3*x^2 - 1/3*y^2 - 1/3*z^2"), &alg)
            .unwrap()
            .is_zero());
        assert!(laplacian(&p("x"), &LieAlgebraSpec::abelian(3)).is_err());
    }

    #[test]
    fn specialization_examples() {
        let f = p("x*y + 1/2*h*z");
        assert_eq!(f.specialize_h(&int(0)), p("x*y"));
        assert_eq!(f.specialize_h(&int(1)), p("x*y + 1/2*z"));
    }

    #[test]
    fn zero_short_circuits() {
        let alg = su2();
        let z = CPoly::zero(3);
        assert!(kirillov_bracket(&z, &p("x"), &alg).is_zero());
        assert!((&z * &p("x")).is_zero());
        assert_eq!(z.to_canonical(alg.names()), "0");
    }

    #[test]
    fn canonical_printing() {
        let names = su2().names().to_vec();
        assert_eq!(p("1/2*h*z + x*y").to_canonical(&names), "x*y + 1/2*h*z");
        assert_eq!(p("z^2+y^2+x^2").to_canonical(&names), "x^2 + y^2 + z^2");
        assert_eq!(p("-x + 2*h^2 - h").to_canonical(&names), "-x - h + 2*h^2");
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(Monomial::all_up_to_degree(3, 6).len(), 84);
        let d2 = Monomial::all_of_degree(3, 2);
        assert_eq!(d2.len(), 6);
        assert!(d2.windows(2).all(|w| w[0] > w[1]));
    }
}
