//! Structure constants of a finite-dimensional Lie algebra and their validation.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

/// A Lie algebra given by a basis and structure constants `[X_i, X_j] = Σ_k c_ij^k X_k`.
///
/// Antisymmetry `c_ij^k = -c_ji^k` is enforced on construction. The Jacobi
/// identity is checked by [`LieAlgebraSpec::new`]; [`LieAlgebraSpec::new_unchecked`]
/// skips it so that broken constant sets can still be inspected (Kirillov
/// bivector, Jacobiator witnesses).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    names: Vec<String>,
    /// dense `c[i][j][k]`
    consts: Vec<Vec<Vec<Rational>>>,
    /// sparse view: `brackets[i][j]` lists `(k, c_ij^k)` with nonzero coefficient
    brackets: Vec<Vec<Vec<(usize, Rational)>>>,
    euclidean_casimir: bool,
}

/// Outcome of [`jacobi_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub holds: bool,
    /// First `(i, j, k, l)` in lexicographic order where the Jacobiator is nonzero.
    pub witness: Option<(usize, usize, usize, usize)>,
    pub value: Option<Rational>,
}

impl LieAlgebraSpec {
    /// Builds a validated algebra from sparse brackets `(i, j, {k: c_ij^k})` with `i < j`.
    pub fn new(names: Vec<String>, brackets: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self> {
        let alg = Self::new_unchecked(names, brackets)?;
        let report = jacobi_check(&alg);
        match report.witness {
            Some(w) => Err(Error::JacobiViolation(w)),
            None => Ok(alg),
        }
    }

    /// Same as [`LieAlgebraSpec::new`] without the Jacobi check.
    pub fn new_unchecked(
        names: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, Rational)>)],
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        for (a, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidAlgebra(format!("`{name}` is not a valid generator name")));
            }
            if name == "h" || name.eq_ignore_ascii_case("h") {
                return Err(Error::InvalidAlgebra("`h` is reserved for the deformation parameter".into()));
            }
            if names[..a].iter().any(|m| m.eq_ignore_ascii_case(name)) {
                return Err(Error::InvalidAlgebra(format!("duplicate generator name `{name}`")));
            }
        }
        let mut consts = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::InvalidAlgebra(format!("bracket index ({i}, {j}) out of range")));
            }
            if i >= j {
                return Err(Error::InvalidAlgebra(format!(
                    "brackets must be listed with i < j, got ({i}, {j})"
                )));
            }
            if seen[i][j] {
                return Err(Error::InvalidAlgebra(format!("bracket ({i}, {j}) listed twice")));
            }
            seen[i][j] = true;
            for (k, c) in coeffs {
                if *k >= n {
                    return Err(Error::InvalidAlgebra(format!("structure constant index {k} out of range")));
                }
                consts[i][j][*k] = c.clone();
                consts[j][i][*k] = -c;
            }
        }
        Ok(Self::from_dense(names, consts))
    }

    fn from_dense(names: Vec<String>, consts: Vec<Vec<Vec<Rational>>>) -> Self {
        let n = names.len();
        let brackets = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .filter(|&k| !consts[i][j][k].is_zero())
                            .map(|k| (k, consts[i][j][k].clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        // p = Σ x_i² is invariant iff c_ij^k is also antisymmetric in (j, k)
        let euclidean_casimir = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| consts[i][j][k] == -consts[i][k][j].clone()))
        });
        LieAlgebraSpec {
            names,
            consts,
            brackets,
            euclidean_casimir,
        }
    }

    /// su(2) with basis `x, y, z` and `[X,Y]=Z, [Y,Z]=X, [Z,X]=Y`.
    pub fn su2() -> Self {
        let one = Rational::one();
        Self::new(
            vec!["x".into(), "y".into(), "z".into()],
            &[
                (0, 1, vec![(2, one.clone())]),
                (1, 2, vec![(0, one.clone())]),
                (0, 2, vec![(1, -one)]),
            ],
        )
        .expect("su(2) satisfies Jacobi")
    }

    /// The abelian algebra of dimension `n` with generators `x0, x1, ...`.
    pub fn abelian(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("x{i}")).collect(), &[]).expect("abelian algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Generator names as printed for enveloping-algebra elements (`x` becomes `X`).
    pub fn upper_names(&self) -> Vec<String> {
        self.names.iter().map(|s| capitalize(s)).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.consts[i][j][k]
    }

    /// Nonzero `(k, c_ij^k)` pairs.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.brackets[i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().flatten().all(Vec::is_empty)
    }

    /// True when `x_1² + ... + x_n²` is a Casimir of the Kirillov bracket, i.e.
    /// the coordinates are orthonormal for an invariant form.
    pub fn has_euclidean_casimir(&self) -> bool {
        self.euclidean_casimir
    }

    /// Returns a copy with a single structure constant `c_ij^k` replaced (and `c_ji^k` negated).
    pub fn with_constant(&self, i: usize, j: usize, k: usize, value: Rational) -> Self {
        let mut consts = self.consts.clone();
        consts[j][i][k] = -&value;
        consts[i][j][k] = value;
        Self::from_dense(self.names.clone(), consts)
    }

    /// Sparse `(i, j, coeffs)` list with `i < j`, as stored in algebra files.
    pub fn sparse_brackets(&self) -> Vec<(usize, usize, Vec<(usize, Rational)>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.brackets[i][j].is_empty() {
                    out.push((i, j, self.brackets[i][j].clone()));
                }
            }
        }
        out
    }

    /// Parses an algebra file; see `docs/algebra.schema.json`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file = AlgebraFile::parse(text)?;
        Self::new(file.names, &file.brackets)
    }

    /// Parses an algebra file without enforcing the Jacobi identity.
    pub fn from_json_unchecked(text: &str) -> Result<Self> {
        let file = AlgebraFile::parse(text)?;
        Self::new_unchecked(file.names, &file.brackets)
    }

    pub fn to_json(&self) -> String {
        let brackets: Vec<Value> = self
            .sparse_brackets()
            .into_iter()
            .map(|(i, j, coeffs)| {
                let map: serde_json::Map<String, Value> = coeffs
                    .iter()
                    .map(|(k, c)| (k.to_string(), Value::String(format_rational(c))))
                    .collect();
                serde_json::json!({"i": i, "j": j, "coeffs": map})
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "dim": self.dim(),
            "names": self.names,
            "brackets": brackets,
        }))
        .expect("serializable")
    }
}

/// Raw contents of an algebra file, including the optional `casimir` fragment.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub names: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<(usize, Rational)>)>,
    pub casimir: Option<CasimirFragment>,
}

/// `{"p": "<poly>", "c": "<poly in h>", "c0": "<rational>"}`, kept as strings
/// until an algebra context is available to parse them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirFragment {
    pub p: String,
    pub c: String,
    pub c0: String,
}

#[derive(Deserialize)]
struct RawFile {
    dim: usize,
    names: Vec<String>,
    #[serde(default)]
    brackets: Vec<RawBracket>,
    #[serde(default)]
    casimir: Option<CasimirFragment>,
}

#[derive(Deserialize)]
struct RawBracket {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, Value>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text)?;
        if raw.dim != raw.names.len() {
            return Err(Error::InvalidAlgebra(format!(
                "dim = {} but {} names given",
                raw.dim,
                raw.names.len()
            )));
        }
        let mut brackets = Vec::with_capacity(raw.brackets.len());
        for b in raw.brackets {
            let mut coeffs = Vec::new();
            for (k, v) in b.coeffs {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::InvalidAlgebra(format!("coefficient key `{k}` is not an index")))?;
                let c = match v {
                    Value::String(s) => parse_rational(&s)?,
                    Value::Number(n) if n.is_i64() => crate::scalar::int(n.as_i64().unwrap()),
                    other => {
                        return Err(Error::InvalidAlgebra(format!(
                            "coefficient {other} must be an integer or a rational string"
                        )))
                    }
                };
                if !c.is_zero() {
                    coeffs.push((k, c));
                }
            }
            brackets.push((b.i, b.j, coeffs));
        }
        Ok(AlgebraFile {
            names: raw.names,
            brackets,
            casimir: raw.casimir,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

/// Checks `Σ_m (c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l) = 0` for every `(i, j, k, l)`.
pub fn jacobi_check(alg: &LieAlgebraSpec) -> JacobiReport {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = Rational::zero();
                    for m in 0..n {
                        s += alg.c(i, j, m) * alg.c(m, k, l);
                        s += alg.c(j, k, m) * alg.c(m, i, l);
                        s += alg.c(k, i, m) * alg.c(m, j, l);
                    }
                    if !s.is_zero() {
                        return JacobiReport {
                            holds: false,
                            witness: Some((i, j, k, l)),
                            value: Some(s),
                        };
                    }
                }
            }
        }
    }
    JacobiReport {
        holds: true,
        witness: None,
        value: None,
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_ascii_uppercase().to_string() + chars.as_str(),
        None => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    /// Jacobiator `[[a,b],c] + [[b,c],a] + [[c,a],b]` on basis vectors, computed by
    /// bracketing coordinate vectors directly.
    fn jacobiator(alg: &LieAlgebraSpec, a: usize, b: usize, c: usize) -> Vec<Rational> {
        let n = alg.dim();
        let br = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        out[k] += &u[i] * &v[j] * alg.c(i, j, k);
                    }
                }
            }
            out
        };
        let e = |i: usize| -> Vec<Rational> {
            (0..n).map(|k| if k == i { int(1) } else { int(0) }).collect()
        };
        let t1 = br(&br(&e(a), &e(b)), &e(c));
        let t2 = br(&br(&e(b), &e(c)), &e(a));
        let t3 = br(&br(&e(c), &e(a)), &e(b));
        (0..n).map(|k| &t1[k] + &t2[k] + &t3[k]).collect()
    }

    #[test]
    fn su2_and_abelian_pass() {
        assert!(jacobi_check(&LieAlgebraSpec::su2()).holds);
        assert!(jacobi_check(&LieAlgebraSpec::abelian(4)).holds);
        assert!(LieAlgebraSpec::su2().has_euclidean_casimir());
    }

    #[test]
    fn rescaled_su2_still_satisfies_jacobi() {
        // [X,Y] = 2Z with [Y,Z] = X, [Z,X] = Y: every diagonal three-dimensional
        // bracket of this shape is a Lie algebra, so no witness exists.
        let alg = LieAlgebraSpec::su2().with_constant(0, 1, 2, int(2));
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (0, 0, 1)] {
            assert!(jacobiator(&alg, a, b, c).iter().all(Zero::is_zero));
        }
        assert!(jacobi_check(&alg).holds);
    }

    #[test]
    fn perturbed_su2_fails_with_witness() {
        // [X,Y] = Z + X breaks Jacobi: J(X,Y,Z) = [X,Z] = -Y
        let alg = LieAlgebraSpec::su2().with_constant(0, 1, 0, int(1));
        let oracle = jacobiator(&alg, 0, 1, 2);
        assert_eq!(oracle, vec![int(0), int(-1), int(0)]);
        let report = jacobi_check(&alg);
        assert!(!report.holds);
        let (i, j, k, l) = report.witness.unwrap();
        assert_eq!(jacobiator(&alg, i, j, k)[l], report.value.unwrap());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let su2 = LieAlgebraSpec::su2();
        let back = LieAlgebraSpec::from_json(&su2.to_json()).unwrap();
        assert_eq!(back, su2);

        let bad_dim = r#"{"dim": 2, "names": ["a"], "brackets": []}"#;
        assert!(matches!(LieAlgebraSpec::from_json(bad_dim), Err(Error::InvalidAlgebra(_))));
        let bad_order = r#"{"dim": 2, "names": ["a", "b"], "brackets": [{"i": 1, "j": 0, "coeffs": {"0": 1}}]}"#;
        assert!(LieAlgebraSpec::from_json(bad_order).is_err());
        let reserved = r#"{"dim": 1, "names": ["h"]}"#;
        assert!(LieAlgebraSpec::from_json(reserved).is_err());
        let non_jacobi = r#"{"dim": 3, "names": ["x","y","z"], "brackets": [
            {"i": 0, "j": 1, "coeffs": {"0": 1, "2": 1}},
            {"i": 1, "j": 2, "coeffs": {"0": 1}},
            {"i": 0, "j": 2, "coeffs": {"1": -1}}]}"#;
        assert!(matches!(LieAlgebraSpec::from_json(non_jacobi), Err(Error::JacobiViolation(_))));
        assert!(LieAlgebraSpec::from_json_unchecked(non_jacobi).is_ok());
    }

    #[test]
    fn casimir_fragment_is_carried() {
        let text = r#"{"dim": 3, "names": ["x","y","z"],
            "brackets": [{"i":0,"j":1,"coeffs":{"2":"1"}},{"i":1,"j":2,"coeffs":{"0":"1"}},{"i":0,"j":2,"coeffs":{"1":"-1"}}],
            "casimir": {"p": "x^2+y^2+z^2", "c": "2", "c0": "2"}}"#;
        let file = AlgebraFile::parse(text).unwrap();
        assert_eq!(file.casimir.unwrap().c0, "2");
    }
}
