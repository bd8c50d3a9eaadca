//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use orbitstar::cpoly::{CPoly, Monomial};
use orbitstar::lie::LieAlgebraSpec;
use orbitstar::scalar::{int, HScalar, Rational};

/// `{f, g}` by bilinearity and Leibniz from `{x_i, x_j} = Σ_k c_ij^k x_k`,
/// working on raw exponent vectors.
pub fn oracle_bracket(f: &CPoly, g: &CPoly, alg: &LieAlgebraSpec) -> CPoly {
    let n = alg.dim();
    let mut acc: BTreeMap<Vec<u32>, HScalar> = BTreeMap::new();
    for (ma, ca) in f.terms() {
        for (mb, cb) in g.terms() {
            let coeff = ca * cb;
            for i in 0..n {
                let ai = ma.0[i];
                if ai == 0 {
                    continue;
                }
                for j in 0..n {
                    let bj = mb.0[j];
                    if bj == 0 {
                        continue;
                    }
                    for k in 0..n {
                        let c = alg.c(i, j, k);
                        if *c == int(0) {
                            continue;
                        }
                        let mut e: Vec<u32> = (0..n).map(|v| ma.0[v] + mb.0[v]).collect();
                        e[i] -= 1;
                        e[j] -= 1;
                        e[k] += 1;
                        let w = c * &int((ai * bj) as i64);
                        *acc.entry(e).or_default() += &coeff.scale(&w);
                    }
                }
            }
        }
    }
    CPoly::from_terms(
        n,
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e), c)),
    )
}

/// Pointwise product computed term by term, without `CPoly` multiplication.
pub fn oracle_product(f: &CPoly, g: &CPoly) -> CPoly {
    let n = f.nvars().max(g.nvars());
    let mut acc: BTreeMap<Vec<u32>, HScalar> = BTreeMap::new();
    for (ma, ca) in f.terms() {
        for (mb, cb) in g.terms() {
            let e: Vec<u32> = (0..n).map(|v| ma.0[v] + mb.0[v]).collect();
            *acc.entry(e).or_default() += &(ca * cb);
        }
    }
    CPoly::from_terms(
        n,
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e), c)),
    )
}

/// Solves `m x = b` over ℚ for a consistent system of full column rank.
/// Rows may outnumber columns. Returns `None` if the system is inconsistent
/// or underdetermined.
pub fn solve(mut m: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let pivot = (r..rows).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, pivot);
        b.swap(r, pivot);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let d = &f * &m[r][k];
                    m[i][k] = &m[i][k] - &d;
                }
                let d = &f * &b[r];
                b[i] = &b[i] - &d;
            }
        }
        r += 1;
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(b[..cols].to_vec())
}
