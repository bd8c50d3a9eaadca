//! Polynomial multivector fields on `g*`, the Schouten–Nijenhuis bracket and
//! the formal Poisson condition `[α, α] = 0`.
//!
//! A multivector is stored as a polynomial in odd variables `θ_i = ∂_i`: each
//! key is a strictly increasing index list. The bracket is
//!
//! ```text
//! [P, Q] = Σ_i  P ∂⃖θ_i · ∂_{x_i} Q  -  (-1)^{(p-1)(q-1)}  Q ∂⃖θ_i · ∂_{x_i} P
//! ```
//!
//! with `∂⃖θ_i` the right derivative. With this sign table `[X, f] = X(f)`,
//! `[X, Y]` is the commutator of vector fields and `[β, β] = 0` exactly when
//! the bracket of `β` satisfies Jacobi.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use crate::cpoly::{kirillov_bracket, CPoly, Monomial};
use crate::error::{Error, Result};
use crate::lie::LieAlgebraSpec;
use crate::parse::{parse_expr, CPolyBuilder, ExprBuilder};
use crate::scalar::{HScalar, Rational};

/// `Σ f_I ∂_{i₁} ∧ … ∧ ∂_{i_k}` over sorted index lists `I`; degrees may be mixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    nvars: usize,
    terms: BTreeMap<Vec<usize>, CPoly>,
}

/// Sign of sorting `a ++ b` and the sorted result; `None` if they overlap.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the a.len() - i remaining entries of a
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((odd, out))
}

impl MultiVector {
    pub fn zero(nvars: usize) -> Self {
        MultiVector { nvars, terms: BTreeMap::new() }
    }

    /// A degree-0 multivector.
    pub fn function(f: CPoly) -> Self {
        let mut m = Self::zero(f.nvars());
        m.add_term(Vec::new(), &f);
        m
    }

    /// `∂_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut m = Self::zero(nvars);
        m.add_term(vec![i], &CPoly::one(nvars));
        m
    }

    /// `f ∂_{i₁} ∧ … ∧ ∂_{i_k}` for any index order; repeated indices give zero.
    pub fn term(nvars: usize, indices: &[usize], f: CPoly) -> Self {
        let mut sorted: Vec<usize> = Vec::new();
        let mut odd = false;
        for &i in indices {
            match merge_sign(&sorted, &[i]) {
                Some((s, v)) => {
                    odd ^= s;
                    sorted = v;
                }
                None => return Self::zero(nvars),
            }
        }
        let mut m = Self::zero(nvars);
        m.add_term(sorted, &if odd { -&f } else { f });
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, CPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `∂_I` for sorted `I`.
    pub fn coeff(&self, indices: &[usize]) -> CPoly {
        self.terms.get(indices).cloned().unwrap_or_else(|| CPoly::zero(self.nvars))
    }

    /// `Some(k)` when every term has degree `k`; zero counts as any degree.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Vec::len);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    fn add_term(&mut self, indices: Vec<usize>, f: &CPoly) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry(indices).or_insert_with(|| CPoly::zero(self.nvars));
        *slot = &*slot + f;
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn scale(&self, c: &HScalar) -> MultiVector {
        let mut out = Self::zero(self.nvars);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), &f.scale(c));
        }
        out
    }

    pub fn wedge(&self, other: &MultiVector) -> MultiVector {
        let mut out = Self::zero(self.nvars.max(other.nvars));
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some((odd, idx)) = merge_sign(a, b) {
                    let fg = f * g;
                    out.add_term(idx, &if odd { -&fg } else { fg });
                }
            }
        }
        out
    }

    /// Right derivative `P ∂⃖θ_i`.
    fn right_theta_derivative(&self, i: usize) -> MultiVector {
        let mut out = Self::zero(self.nvars);
        for (idx, f) in &self.terms {
            if let Some(r) = idx.iter().position(|&k| k == i) {
                let rest: Vec<usize> = idx.iter().copied().filter(|&k| k != i).collect();
                let odd = (idx.len() - 1 - r) % 2 == 1;
                out.add_term(rest, &if odd { -f } else { f.clone() });
            }
        }
        out
    }

    fn x_derivative(&self, i: usize) -> MultiVector {
        let mut out = Self::zero(self.nvars);
        for (idx, f) in &self.terms {
            out.add_term(idx.clone(), &f.derivative(i));
        }
        out
    }

    /// Evaluates a bivector on `df ∧ dg`: `Σ_{i<j} β_ij (∂_i f ∂_j g - ∂_j f ∂_i g)`.
    pub fn contract(&self, f: &CPoly, g: &CPoly) -> CPoly {
        let mut out = CPoly::zero(self.nvars);
        for (idx, c) in &self.terms {
            if let [i, j] = idx[..] {
                let t = &(&f.derivative(i) * &g.derivative(j)) - &(&f.derivative(j) * &g.derivative(i));
                out = &out + &(c * &t);
            }
        }
        out
    }

    /// Prints as `f * d/dx ^ d/dy + …`, grouped by degree then index order.
    pub fn to_canonical(&self, names: &[String]) -> String {
        let mut keys: Vec<&Vec<usize>> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut s = String::new();
        for idx in keys {
            let f = &self.terms[idx];
            let wedge: Vec<String> = idx.iter().map(|&i| format!("d/d{}", names[i])).collect();
            let wedge = wedge.join(" ^ ");
            let printed = f.to_canonical(names);
            let single = !printed[1..].contains(" + ") && !printed[1..].contains(" - ");
            let negative = single && printed.starts_with('-');
            let coeff = if negative { &printed[1..] } else { &printed[..] };
            if s.is_empty() {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            if wedge.is_empty() {
                if single {
                    s.push_str(coeff);
                } else {
                    let _ = write!(s, "({coeff})");
                }
            } else if coeff == "1" {
                s.push_str(&wedge);
            } else if single {
                let _ = write!(s, "{coeff} * {wedge}");
            } else {
                let _ = write!(s, "({coeff}) * {wedge}");
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl Add<&MultiVector> for &MultiVector {
    type Output = MultiVector;
    fn add(self, rhs: &MultiVector) -> MultiVector {
        let mut out = self.clone();
        for (i, f) in &rhs.terms {
            out.add_term(i.clone(), f);
        }
        out
    }
}

impl Sub<&MultiVector> for &MultiVector {
    type Output = MultiVector;
    fn sub(self, rhs: &MultiVector) -> MultiVector {
        self + &-rhs
    }
}

impl Neg for &MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        MultiVector {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(i, f)| (i.clone(), -f)).collect(),
        }
    }
}

/// `β = Σ_{i<j} c_ij^k x_k ∂_i ∧ ∂_j`.
pub fn kirillov_bivector(alg: &LieAlgebraSpec) -> MultiVector {
    let n = alg.dim();
    let mut out = MultiVector::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let mut f = CPoly::zero(n);
            for (k, c) in alg.bracket(i, j) {
                f.add_term(Monomial::var(n, *k), &HScalar::constant(c.clone()));
            }
            out.add_term(vec![i, j], &f);
        }
    }
    out
}

/// The Schouten–Nijenhuis bracket, extended bilinearly to mixed degrees.
pub fn schouten_bracket(a: &MultiVector, b: &MultiVector) -> MultiVector {
    let n = a.nvars.max(b.nvars);
    let mut out = MultiVector::zero(n);
    for (ia, fa) in &a.terms {
        let pa = MultiVector { nvars: n, terms: BTreeMap::from([(ia.clone(), fa.clone())]) };
        for (ib, fb) in &b.terms {
            let qb = MultiVector { nvars: n, terms: BTreeMap::from([(ib.clone(), fb.clone())]) };
            let (p, q) = (ia.len(), ib.len());
            // (-1)^{(p-1)(q-1)} = -1 iff (p+1)(q+1) is odd
            let odd = (p + 1) * (q + 1) % 2 == 1;
            for i in 0..n {
                let first = pa.right_theta_derivative(i).wedge(&qb.x_derivative(i));
                let second = qb.right_theta_derivative(i).wedge(&pa.x_derivative(i));
                out = &out + &first;
                out = if odd { &out + &second } else { &out - &second };
            }
        }
    }
    out
}

/// Outcome of [`formal_poisson_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalPoissonReport {
    pub holds: bool,
    /// First `k` with `Σ_{i+j=k} [α_i, α_j] ≠ 0`.
    pub failing_order: Option<usize>,
    /// That nonzero trivector.
    pub witness: Option<MultiVector>,
}

/// Checks `[α, α] = 0` for `α = Σ_i h^i α_i` up to `h^order`; `alphas[0]` is `α_1`.
pub fn formal_poisson_check(alphas: &[MultiVector], order: usize) -> FormalPoissonReport {
    let nvars = alphas.iter().map(MultiVector::nvars).max().unwrap_or(0);
    for k in 2..=order {
        let mut sum = MultiVector::zero(nvars);
        for i in 1..k {
            let j = k - i;
            if let (Some(a), Some(b)) = (alphas.get(i - 1), alphas.get(j - 1)) {
                sum = &sum + &schouten_bracket(a, b);
            }
        }
        if !sum.is_zero() {
            return FormalPoissonReport { holds: false, failing_order: Some(k), witness: Some(sum) };
        }
    }
    FormalPoissonReport { holds: true, failing_order: None, witness: None }
}

/// `{f, g}` from the bivector, for cross-checking against [`kirillov_bracket`].
pub fn bivector_bracket(beta: &MultiVector, f: &CPoly, g: &CPoly) -> CPoly {
    beta.contract(f, g)
}

/// True if `β(df, dg) = {f, g}` for the given pair.
pub fn bivector_matches_bracket(alg: &LieAlgebraSpec, f: &CPoly, g: &CPoly) -> bool {
    kirillov_bivector(alg).contract(f, g) == kirillov_bracket(f, g, alg)
}

struct MultiVectorBuilder<'a> {
    poly: CPolyBuilder<'a>,
}

impl ExprBuilder for MultiVectorBuilder<'_> {
    type Value = MultiVector;

    fn constant(&self, q: Rational) -> MultiVector {
        MultiVector::function(self.poly.constant(q))
    }

    fn symbol(&self, name: &str, pos: usize) -> Result<MultiVector> {
        self.poly.symbol(name, pos).map(MultiVector::function)
    }

    fn partial(&self, name: &str, pos: usize) -> Result<MultiVector> {
        let n = self.poly.names.len();
        match self.poly.names.iter().position(|s| s == name) {
            Some(i) => Ok(MultiVector::partial(n, i)),
            None => Err(Error::UnknownVariable { name: format!("d/d{name}"), pos }),
        }
    }

    fn add(&self, a: MultiVector, b: MultiVector) -> MultiVector {
        &a + &b
    }

    fn neg(&self, a: MultiVector) -> MultiVector {
        -&a
    }

    fn mul(&self, a: MultiVector, b: MultiVector) -> MultiVector {
        a.wedge(&b)
    }
}

/// Parses `poly * d/dx ^ d/dy + …`; `*` and `^` both act as the wedge product.
pub fn parse_multivector(text: &str, alg: &LieAlgebraSpec) -> Result<MultiVector> {
    let bindings = BTreeMap::new();
    let builder = MultiVectorBuilder { poly: CPolyBuilder { names: alg.names(), bindings: &bindings } };
    let mut mv = parse_expr(text, &builder, true)?;
    mv.nvars = alg.dim();
    Ok(mv)
}
