//! Decomposition `Pol(g*) ≅ I ⊗ H` for coordinates in which the quadratic
//! Casimir is `p = Σ x_i²`: every polynomial is uniquely `Σ_k p^k η_k` with
//! each `η_k` harmonic.

use std::collections::BTreeMap;

use crate::cpoly::{laplacian, sum_of_squares, CPoly};
use crate::error::Result;
use crate::lie::LieAlgebraSpec;
use crate::scalar::{int, HScalar};

/// `f = Σ_k p^k η_k` with `Δη_k = 0`. Only nonzero `η_k` are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicDecomposition {
    nvars: usize,
    parts: BTreeMap<u32, CPoly>,
}

impl HarmonicDecomposition {
    pub fn parts(&self) -> impl Iterator<Item = (u32, &CPoly)> {
        self.parts.iter().map(|(k, eta)| (*k, eta))
    }

    /// `η_k`, zero when absent.
    pub fn part(&self, k: u32) -> CPoly {
        self.parts.get(&k).cloned().unwrap_or_else(|| CPoly::zero(self.nvars))
    }

    pub fn max_power(&self) -> Option<u32> {
        self.parts.keys().next_back().copied()
    }

    /// `Σ_k p^k η_k`.
    pub fn reconstruct(&self) -> CPoly {
        let p = sum_of_squares(self.nvars);
        let mut out = CPoly::zero(self.nvars);
        for (k, eta) in &self.parts {
            out = &out + &(&p.pow(*k) * eta);
        }
        out
    }
}

/// Splits `f` into `Σ_k p^k η_k`, degree by degree.
///
/// For a homogeneous `f` of degree `d = 2K + l`, only the `p^K η_K` term
/// survives `Δ^K`, and `Δ^K (p^K η) = Π_{m=1}^{K} 2m(2m + 2l + n - 2) · η` for
/// harmonic `η` of degree `l`. Peeling off the top power and repeating gives
/// every `η_k` exactly.
pub fn harmonic_decompose(f: &CPoly, alg: &LieAlgebraSpec) -> Result<HarmonicDecomposition> {
    let n = alg.dim();
    // rejects algebras without a Euclidean Casimir
    laplacian(&CPoly::zero(n), alg)?;
    let p = sum_of_squares(n);
    let mut parts: BTreeMap<u32, CPoly> = BTreeMap::new();
    let Some(top) = f.x_degree() else {
        return Ok(HarmonicDecomposition { nvars: n, parts });
    };
    for d in 0..=top {
        let mut rem = f.homogeneous_component(d);
        for k in (0..=d / 2).rev() {
            if rem.is_zero() {
                break;
            }
            let l = (d - 2 * k) as i64;
            let mut g = rem.clone();
            for _ in 0..k {
                g = g.euclidean_laplacian();
            }
            if g.is_zero() {
                continue;
            }
            let mut norm = int(1);
            for m in 1..=k as i64 {
                norm *= &int(2 * m * (2 * m + 2 * l + n as i64 - 2));
            }
            let eta = g.scale(&HScalar::constant(norm.recip()));
            rem = &rem - &(&p.pow(k) * &eta);
            let slot = parts.entry(k).or_insert_with(|| CPoly::zero(n));
            *slot = &*slot + &eta;
        }
        debug_assert!(rem.is_zero(), "harmonic peeling must exhaust the component");
    }
    parts.retain(|_, eta| !eta.is_zero());
    Ok(HarmonicDecomposition { nvars: n, parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_cpoly;
    use crate::random::PolyStream;

    fn c(s: &str) -> CPoly {
        parse_cpoly(s, &LieAlgebraSpec::su2()).unwrap()
    }

    #[test]
    fn x_squared() {
        let d = harmonic_decompose(&c("x^2"), &LieAlgebraSpec::su2()).unwrap();
        assert_eq!(d.part(0), c("2/3*x^2 - 1/3*y^2 - 1/3*z^2"));
        assert_eq!(d.part(1), c("1/3"));
    }

    #[test]
    fn harmonic_input_is_its_own_part() {
        let d = harmonic_decompose(&c("x*y"), &LieAlgebraSpec::su2()).unwrap();
        assert_eq!(d.parts().count(), 1);
        assert_eq!(d.part(0), c("x*y"));
    }

    #[test]
    fn invariant_square() {
        let f = c("(x^2+y^2+z^2)^2");
        let d = harmonic_decompose(&f, &LieAlgebraSpec::su2()).unwrap();
        assert_eq!(d.parts().count(), 1);
        assert_eq!(d.part(2), c("1"));
    }

    #[test]
    fn zero_and_unsupported() {
        let alg = LieAlgebraSpec::su2();
        assert_eq!(harmonic_decompose(&CPoly::zero(3), &alg).unwrap().parts().count(), 0);
        assert!(harmonic_decompose(&c("x"), &LieAlgebraSpec::abelian(3)).is_err());
    }

    #[test]
    fn random_reconstruction_and_harmonicity() {
        let alg = LieAlgebraSpec::su2();
        let mut s = PolyStream::new(11);
        for _ in 0..30 {
            let f = &s.poly(3, 6) + &s.poly(3, 2).scale(&HScalar::h());
            let d = harmonic_decompose(&f, &alg).unwrap();
            assert_eq!(d.reconstruct(), f);
            for (_, eta) in d.parts() {
                assert!(laplacian(eta, &alg).unwrap().is_zero());
            }
        }
    }
}
