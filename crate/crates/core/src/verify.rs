//! Seeded property suites and their report.
//!
//! Every property draws from its own stream, `PolyStream::fork(seed, name)`,
//! so records do not depend on which other suites ran. Reports carry no
//! timing unless asked for, which keeps them byte-identical across runs.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::cpoly::{kirillov_bracket, sum_of_squares, CPoly, Monomial};
use crate::envelope::{EnvelopingAlgebra, NCPoly};
use crate::error::{Error, Result};
use crate::lie::{jacobi_check, LieAlgebraSpec};
use crate::orbit::{sphere_basis, CasimirSpec, OrbitAlgebra};
use crate::poisson::{formal_poisson_check, kirillov_bivector, schouten_bracket, MultiVector};
use crate::random::PolyStream;
use crate::rep::{image_dimension, reconcile_level, spin_rep, GaussMatrix, SpinRep};
use crate::scalar::{int, rat, HScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Assoc,
    Deformation,
    Tangential,
    Covariance,
    Quotient,
    Rep,
    Poisson,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Assoc,
        Suite::Deformation,
        Suite::Tangential,
        Suite::Covariance,
        Suite::Quotient,
        Suite::Rep,
        Suite::Poisson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Assoc => "assoc",
            Suite::Deformation => "deformation",
            Suite::Tangential => "tangential",
            Suite::Covariance => "covariance",
            Suite::Quotient => "quotient",
            Suite::Rep => "rep",
            Suite::Poisson => "poisson",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub algebra: LieAlgebraSpec,
    pub suite: Suite,
    pub max_degree: u32,
    pub samples: usize,
    pub seed: u64,
    /// Orbit level `c(h)` for the orbit suites; `1` when absent.
    pub level: Option<HScalar>,
    /// `(j, h0)` pairs for the representation suite.
    pub spins: Vec<(Rational, Rational)>,
    pub timings: bool,
}

impl SuiteConfig {
    pub fn new(algebra: LieAlgebraSpec, suite: Suite) -> Self {
        SuiteConfig {
            algebra,
            suite,
            max_degree: 4,
            samples: 20,
            seed: 7,
            level: None,
            spins: vec![(rat(1, 2), int(1)), (int(1), int(1)), (rat(3, 2), int(1))],
            timings: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to this algebra.
    Skip,
    /// Measured and reported, not asserted.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyRecord {
    pub name: String,
    /// The statement being checked.
    pub claim: String,
    pub samples: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl PropertyRecord {
    fn new(name: &str, claim: &str) -> Self {
        PropertyRecord {
            name: name.to_string(),
            claim: claim.to_string(),
            samples: 0,
            status: Status::Pass,
            counterexample: None,
            detail: None,
            wall_ms: None,
        }
    }

    fn skip(name: &str, claim: &str, why: &str) -> Self {
        let mut r = Self::new(name, claim);
        r.status = Status::Skip;
        r.detail = Some(why.to_string());
        r
    }

    fn verdict(name: &str, claim: &str, ok: bool, samples: usize, detail: Option<String>) -> Self {
        let mut r = Self::new(name, claim);
        r.samples = samples;
        r.status = if ok { Status::Pass } else { Status::Fail };
        r.detail = detail;
        r
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub algebra: Vec<String>,
    pub seed: u64,
    pub max_degree: u32,
    pub samples: usize,
    pub records: Vec<PropertyRecord>,
}

impl Report {
    /// No record failed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn record(&self, name: &str) -> Option<&PropertyRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} on ({}), seed {}, max degree {}, samples {}",
            self.suite,
            self.algebra.join(", "),
            self.seed,
            self.max_degree,
            self.samples
        )?;
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
                Status::Info => "INFO",
            };
            write!(f, "{tag} {} [n={}]: {}", r.name, r.samples, r.claim)?;
            if let Some(ms) = r.wall_ms {
                write!(f, " ({ms} ms)")?;
            }
            writeln!(f)?;
            if let Some(d) = &r.detail {
                writeln!(f, "    {d}")?;
            }
            if let Some(c) = &r.counterexample {
                writeln!(f, "    counterexample: {c}")?;
            }
        }
        let failed = self.records.iter().filter(|r| r.status == Status::Fail).count();
        write!(f, "{} records, {failed} failed", self.records.len())
    }
}

/// Runs `case` up to `samples` times on the property's own stream, stopping at the first counterexample.
fn sampled(
    seed: u64,
    name: &str,
    claim: &str,
    samples: usize,
    mut case: impl FnMut(&mut PolyStream) -> Option<String>,
) -> PropertyRecord {
    let mut stream = PolyStream::fork(seed, name);
    let mut r = PropertyRecord::new(name, claim);
    for i in 0..samples {
        r.samples = i + 1;
        if let Some(cx) = case(&mut stream) {
            r.status = Status::Fail;
            r.counterexample = Some(cx);
            break;
        }
    }
    r
}

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    names: Vec<String>,
    env: Option<Arc<EnvelopingAlgebra>>,
    orbit: Option<OrbitAlgebra>,
    orbit_why: String,
}

impl Ctx<'_> {
    fn p(&self, f: &CPoly) -> String {
        f.to_canonical(&self.names)
    }

    fn n(&self) -> usize {
        self.cfg.algebra.dim()
    }
}

/// Executes the selected suites; records come out in a fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let jac = jacobi_check(&cfg.algebra);
    let env = EnvelopingAlgebra::new(Arc::new(cfg.algebra.clone())).ok().map(Arc::new);
    let level = cfg.level.clone().unwrap_or_else(|| HScalar::from_int(1));
    let (orbit, orbit_why) = match &env {
        None => (None, "the algebra fails the Jacobi identity".to_string()),
        Some(env) => match CasimirSpec::new(env, sum_of_squares(env.dim()), level.clone(), level.constant_term())
            .and_then(|spec| OrbitAlgebra::new(env.clone(), spec))
        {
            Ok(o) => (Some(o), String::new()),
            Err(e) => (None, e.to_string()),
        },
    };
    let ctx = Ctx { cfg, names: cfg.algebra.names().to_vec(), env, orbit, orbit_why };

    let mut records = Vec::new();
    let mut jr = PropertyRecord::verdict(
        "algebra.jacobi",
        "the structure constants satisfy the Jacobi identity",
        jac.holds,
        1,
        None,
    );
    if let (Some((i, j, k, l)), Some(v)) = (jac.witness, jac.value) {
        let nm = &ctx.names;
        jr.counterexample = Some(format!(
            "coefficient of {} in J({}, {}, {}) is {v}",
            nm[l], nm[i], nm[j], nm[k]
        ));
    }
    records.push(jr);

    let suites: Vec<Suite> = if cfg.suite == Suite::All { Suite::EACH.to_vec() } else { vec![cfg.suite] };
    for suite in suites {
        let start = records.len();
        let t0 = Instant::now();
        match suite {
            Suite::Assoc => assoc(&ctx, &mut records),
            Suite::Deformation => deformation(&ctx, &mut records),
            Suite::Tangential => tangential(&ctx, &mut records),
            Suite::Covariance => covariance(&ctx, &mut records),
            Suite::Quotient => quotient(&ctx, &mut records),
            Suite::Rep => rep(&ctx, &mut records),
            Suite::Poisson => poisson(&ctx, &mut records),
            Suite::All => unreachable!(),
        }
        if cfg.timings {
            // attributed to the first record of the suite
            if let Some(r) = records.get_mut(start) {
                r.wall_ms = Some(t0.elapsed().as_millis() as u64);
            }
        }
    }
    Ok(Report {
        suite: cfg.suite,
        algebra: ctx.names.clone(),
        seed: cfg.seed,
        max_degree: cfg.max_degree,
        samples: cfg.samples,
        records,
    })
}

fn assoc(ctx: &Ctx, out: &mut Vec<PropertyRecord>) {
    let cfg = ctx.cfg;
    let (n, d, s) = (ctx.n(), cfg.max_degree, cfg.samples);
    let claim_s = "(f *S g) *S k = f *S (g *S k)";
    let claim_p = "(f *P g) *P k = f *P (g *P k)";
    let claim_q = "associativity of the product on Pol(S^2)[h]";
    let Some(env) = &ctx.env else {
        let why = "the algebra fails the Jacobi identity";
        out.push(PropertyRecord::skip("assoc.star_s", claim_s, why));
        out.push(PropertyRecord::skip("assoc.star_p", claim_p, why));
        out.push(PropertyRecord::skip("assoc.quotient", claim_q, why));
        return;
    };
    out.push(sampled(cfg.seed, "assoc.star_s", claim_s, s, |st| {
        let (f, g, k) = (st.poly(n, d), st.poly(n, d), st.poly(n, d));
        let lhs = env.star_s(&env.star_s(&f, &g), &k);
        let rhs = env.star_s(&f, &env.star_s(&g, &k));
        (lhs != rhs).then(|| format!("f = {}; g = {}; k = {}", ctx.p(&f), ctx.p(&g), ctx.p(&k)))
    }));
    let Some(o) = &ctx.orbit else {
        out.push(PropertyRecord::skip("assoc.star_p", claim_p, &ctx.orbit_why));
        out.push(PropertyRecord::skip("assoc.quotient", claim_q, &ctx.orbit_why));
        return;
    };
    out.push(sampled(cfg.seed, "assoc.star_p", claim_p, s, |st| {
        let (f, g, k) = (st.poly(n, d), st.poly(n, d), st.poly(n, d));
        let lhs = o.star_p(&o.star_p(&f, &g), &k);
        let rhs = o.star_p(&f, &o.star_p(&g, &k));
        (lhs != rhs).then(|| format!("f = {}; g = {}; k = {}", ctx.p(&f), ctx.p(&g), ctx.p(&k)))
    }));
    out.push(sampled(cfg.seed, "assoc.quotient", claim_q, s, |st| {
        let mut draw = || o.classical_projection(&st.poly(n, d));
        let (f, g, k) = (draw(), draw(), draw());
        let lhs = o.star_quotient(&o.star_quotient(&f, &g), &k);
        let rhs = o.star_quotient(&f, &o.star_quotient(&g, &k));
        (lhs != rhs).then(|| {
            format!("f = {}; g = {}; k = {}", ctx.p(f.as_cpoly()), ctx.p(g.as_cpoly()), ctx.p(k.as_cpoly()))
        })
    }));
}

fn deformation(ctx: &Ctx, out: &mut Vec<PropertyRecord>) {
    let cfg = ctx.cfg;
    let (n, d, s) = (ctx.n(), cfg.max_degree, cfg.samples);
    let alg = &cfg.algebra;
    let names = [
        ("deformation.generators", "x_i *S x_j - x_j *S x_i = h [x_i, x_j] exactly"),
        ("deformation.bracket_s", "f *S g - g *S f = h {f, g} mod h^2"),
        ("deformation.classical_s", "f *S g = f g at h = 0"),
        ("deformation.weyl_monomials", "W^-1(W(x^a)) = x^a for every monomial of degree <= 6"),
        ("deformation.weyl_nc", "W(W^-1(A)) = A"),
        ("deformation.bracket_p", "f *P g - g *P f = h {f, g} mod h^2"),
        ("deformation.classical_p", "f *P g = f g at h = 0"),
        ("deformation.classical_quotient", "the product on Pol(S^2)[h] at h = 0 is the pointwise product on the orbit"),
    ];
    let Some(env) = &ctx.env else {
        for (nm, claim) in names {
            out.push(PropertyRecord::skip(nm, claim, "the algebra fails the Jacobi identity"));
        }
        return;
    };
    let zero = Rational::from_i64(0);
    let mut ok = true;
    let mut cx = None;
    for i in 0..n {
        for j in 0..n {
            let (xi, xj) = (CPoly::var(n, i), CPoly::var(n, j));
            let comm = &env.star_s(&xi, &xj) - &env.star_s(&xj, &xi);
            let expected = kirillov_bracket(&xi, &xj, alg).scale(&HScalar::h());
            if ok && comm != expected {
                ok = false;
                cx = Some(format!("f = {}; g = {}", ctx.p(&xi), ctx.p(&xj)));
            }
        }
    }
    let mut r = PropertyRecord::verdict(names[0].0, names[0].1, ok, n * n, None);
    r.counterexample = cx;
    out.push(r);
    out.push(sampled(cfg.seed, names[1].0, names[1].1, s, |st| {
        let (f, g) = (st.poly(n, d), st.poly(n, d));
        let comm = &env.star_s(&f, &g) - &env.star_s(&g, &f);
        let expected = kirillov_bracket(&f, &g, alg).scale(&HScalar::h());
        (comm.truncate_h(2) != expected).then(|| format!("f = {}; g = {}", ctx.p(&f), ctx.p(&g)))
    }));
    out.push(sampled(cfg.seed, names[2].0, names[2].1, s, |st| {
        let (f, g) = (st.poly(n, d), st.poly(n, d));
        (env.star_s(&f, &g).specialize_h(&zero) != &f * &g).then(|| format!("f = {}; g = {}", ctx.p(&f), ctx.p(&g)))
    }));
    let monos = Monomial::all_up_to_degree(n, 6);
    let bad = monos.iter().find(|m| {
        let f = CPoly::term((*m).clone(), HScalar::one());
        env.weyl_inverse(&env.weyl_map(&f)) != f
    });
    let mut r = PropertyRecord::verdict(names[3].0, names[3].1, bad.is_none(), monos.len(), None);
    r.counterexample = bad.map(|m| ctx.p(&CPoly::term(m.clone(), HScalar::one())));
    out.push(r);
    out.push(sampled(cfg.seed, names[4].0, names[4].1, s, |st| {
        let a = st.ncpoly(n, d);
        (env.weyl_map(&env.weyl_inverse(&a)) != a).then(|| env.print(&a))
    }));
    let Some(o) = &ctx.orbit else {
        for (nm, claim) in &names[5..] {
            out.push(PropertyRecord::skip(nm, claim, &ctx.orbit_why));
        }
        return;
    };
    out.push(sampled(cfg.seed, names[5].0, names[5].1, s, |st| {
        let (f, g) = (st.poly(n, d), st.poly(n, d));
        let comm = &o.star_p(&f, &g) - &o.star_p(&g, &f);
        let expected = kirillov_bracket(&f, &g, alg).scale(&HScalar::h());
        (comm.truncate_h(2) != expected).then(|| format!("f = {}; g = {}", ctx.p(&f), ctx.p(&g)))
    }));
    out.push(sampled(cfg.seed, names[6].0, names[6].1, s, |st| {
        let (f, g) = (st.poly(n, d), st.poly(n, d));
        (o.star_p(&f, &g).specialize_h(&zero) != &f * &g).then(|| format!("f = {}; g = {}", ctx.p(&f), ctx.p(&g)))
    }));
    out.push(sampled(cfg.seed, names[7].0, names[7].1, s, |st| {
        let f = o.classical_projection(&st.poly(n, d));
        let g = o.classical_projection(&st.poly(n, d));
        let lhs = o.star_quotient(&f, &g).into_cpoly().specialize_h(&zero);
        let rhs = o.classical_product(&f, &g).into_cpoly();
        (lhs != rhs).then(|| format!("f = {}; g = {}", ctx.p(f.as_cpoly()), ctx.p(g.as_cpoly())))
    }));
}

/// First monomial `f` of degree `≤ max_deg` with `p *S f ≠ p f`, plus the difference.
pub fn non_tangential_witness(env: &EnvelopingAlgebra, max_deg: u32) -> Option<(CPoly, CPoly)> {
    let n = env.dim();
    let p = sum_of_squares(n);
    Monomial::all_up_to_degree(n, max_deg).into_iter().find_map(|m| {
        let f = CPoly::term(m, HScalar::one());
        let diff = &env.star_s(&p, &f) - &(&p * &f);
        (!diff.is_zero()).then_some((f, diff))
    })
}

fn tangential(ctx: &Ctx, out: &mut Vec<PropertyRecord>) {
    let cfg = ctx.cfg;
    let (n, d, s) = (ctx.n(), cfg.max_degree, cfg.samples);
    let claims = [
        ("tangential.p_star_p", "p *P f = p f"),
        ("tangential.ideal", "(p - c0) *P f and f *P (p - c0) vanish on the orbit"),
        ("tangential.star_s_witness", "some monomial f of degree <= 2 has p *S f != p f"),
    ];
    let Some(o) = &ctx.orbit else {
        for (nm, claim) in claims {
            out.push(PropertyRecord::skip(nm, claim, &ctx.orbit_why));
        }
        return;
    };
    let p = o.spec().p().clone();
    out.push(sampled(cfg.seed, claims[0].0, claims[0].1, s, |st| {
        let f = st.poly(n, d);
        (o.star_p(&p, &f) != &p * &f).then(|| format!("f = {}", ctx.p(&f)))
    }));
    let pc = o.classical_ideal_generator();
    out.push(sampled(cfg.seed, claims[1].0, claims[1].1, s, |st| {
        let f = st.poly(n, d);
        let ok = o.in_classical_ideal(&o.star_p(&pc, &f)) && o.in_classical_ideal(&o.star_p(&f, &pc));
        (!ok).then(|| format!("f = {}", ctx.p(&f)))
    }));
    let w = non_tangential_witness(o.env(), 2);
    let detail = w.as_ref().map(|(f, diff)| format!("witness f = {}: p *S f - p f = {}", ctx.p(f), ctx.p(diff)));
    out.push(PropertyRecord::verdict(claims[2].0, claims[2].1, w.is_some(), 1, detail));
}

fn covariance(ctx: &Ctx, out: &mut Vec<PropertyRecord>) {
    let cfg = ctx.cfg;
    let (n, d, s) = (ctx.n(), cfg.max_degree, cfg.samples);
    let alg = &cfg.algebra;
    for i in 0..n {
        let name = format!("covariance.star_p.{}", ctx.names[i]);
        let claim = format!(
            "L(f *P g) = L(f) *P g + f *P L(g) for L = {{{}, .}}",
            ctx.names[i]
        );
        let Some(o) = &ctx.orbit else {
            out.push(PropertyRecord::skip(&name, &claim, &ctx.orbit_why));
            continue;
        };
        let xi = CPoly::var(n, i);
        let l = |f: &CPoly| kirillov_bracket(&xi, f, alg);
        out.push(sampled(cfg.seed, &name, &claim, s, |st| {
            let (f, g) = (st.poly(n, d), st.poly(n, d));
            let lhs = l(&o.star_p(&f, &g));
            let rhs = &o.star_p(&l(&f), &g) + &o.star_p(&f, &l(&g));
            (lhs != rhs).then(|| format!("f = {}; g = {}", ctx.p(&f), ctx.p(&g)))
        }));
    }
}

/// First `q` (monomial of degree ≤ 3) for which `Ψ` built at level `c0`
/// sends `(p - c0 - shift) q` outside the ideal at level `c0 + shift`.
/// Returns `q` and the nonzero normal form.
pub fn ideal_shift_witness(o: &OrbitAlgebra, shift: &Rational) -> Result<Option<(CPoly, NCPoly)>> {
    let c = o.spec().c() + &HScalar::constant(shift.clone());
    let c0 = o.spec().c0() + shift;
    let shifted = o.at_level(CasimirSpec::new(o.env(), o.spec().p().clone(), c, c0.clone())?)?;
    let generator = &o.spec().p().clone() - &CPoly::rational(3, c0);
    for m in Monomial::all_up_to_degree(3, 3) {
        let q = CPoly::term(m, HScalar::one());
        let f = &generator * &q;
        let nf = shifted.quotient_normal_form(&o.psi_section_map(&f));
        if !nf.is_zero() {
            return Ok(Some((q, nf.lift().clone())));
        }
    }
    Ok(None)
}

fn quotient(ctx: &Ctx, out: &mut Vec<PropertyRecord>) {
    let cfg = ctx.cfg;
    let (n, d, s) = (ctx.n(), cfg.max_degree, cfg.samples);
    let claims = [
        ("quotient.basis_count", "#{(m, n, v) : m + n + v <= d, v <= 1} = (d + 1)^2"),
        ("quotient.central", "P = W(x^2 + y^2 + z^2) is central"),
        ("quotient.ideal_membership", "L (P - c(h)) R lies in the ideal"),
        ("quotient.coset_invariance", "A and A + L (P - c(h)) R have the same normal form"),
        ("quotient.psi_tilde_roundtrip", "the basis identification Pol(S^2)[h] -> U_h/I_h is a bijection"),
        ("quotient.diagram", "normal form of Psi(f) equals the lift of the restriction of f to the orbit"),
        ("quotient.ideal_shift", "Psi built at level c0 does not send the ideal at level c0 + 1 into I_h"),
    ];
    let top = d.max(6);
    let bad = (0..=top).find(|&k| sphere_basis(k).len() as u32 != (k + 1) * (k + 1));
    let counts: Vec<String> = (0..=top).map(|k| format!("{}:{}", k, sphere_basis(k).len())).collect();
    let mut r = PropertyRecord::verdict(claims[0].0, claims[0].1, bad.is_none(), top as usize + 1, None)
        .with_detail(format!("counts by degree {}", counts.join(" ")));
    r.counterexample = bad.map(|k| format!("d = {k}"));
    out.push(r);
    let Some(o) = &ctx.orbit else {
        for (nm, claim) in &claims[1..] {
            out.push(PropertyRecord::skip(nm, claim, &ctx.orbit_why));
        }
        return;
    };
    let env = o.env();
    let gen = o.ideal_generator();
    out.push(PropertyRecord::verdict(claims[1].0, claims[1].1, env.is_central(o.spec().big_p()), 1, None));
    let dl = d.min(3);
    out.push(sampled(cfg.seed, claims[2].0, claims[2].1, s, |st| {
        let (l, r) = (st.ncpoly(n, dl), st.ncpoly(n, dl));
        let a = env.mul(&env.mul(&l, gen), &r);
        (!o.ideal_membership(&a)).then(|| format!("L = {}; R = {}", env.print(&l), env.print(&r)))
    }));
    out.push(sampled(cfg.seed, claims[3].0, claims[3].1, s, |st| {
        let a = st.ncpoly(n, d);
        let (l, r) = (st.ncpoly(n, dl), st.ncpoly(n, dl));
        let b = &a + &env.mul(&env.mul(&l, gen), &r);
        (o.quotient_normal_form(&a) != o.quotient_normal_form(&b))
            .then(|| format!("A = {}; L = {}; R = {}", env.print(&a), env.print(&l), env.print(&r)))
    }));
    out.push(sampled(cfg.seed, claims[4].0, claims[4].1, s, |st| {
        let f = o.classical_projection(&st.poly(n, d));
        (o.psi_tilde_inverse(&o.psi_tilde(&f)) != f).then(|| format!("f = {}", ctx.p(f.as_cpoly())))
    }));
    out.push(sampled(cfg.seed, claims[5].0, claims[5].1, s, |st| {
        let f = st.poly(n, d);
        let lhs = o.quotient_normal_form(&o.psi_section_map(&f));
        let rhs = o.psi_tilde(&o.classical_projection(&f));
        (lhs != rhs).then(|| format!("f = {}", ctx.p(&f)))
    }));
    match ideal_shift_witness(o, &int(1)) {
        Ok(w) => {
            let detail = w.as_ref().map(|(q, nf)| {
                format!(
                    "f = (p - c0 - 1)*({}): normal form at level c0 + 1 is {}",
                    ctx.p(q),
                    env.print(nf)
                )
            });
            out.push(PropertyRecord::verdict(claims[6].0, claims[6].1, w.is_some(), 1, detail));
        }
        Err(e) => out.push(PropertyRecord::skip(claims[6].0, claims[6].1, &e.to_string())),
    }
}

fn rep_records(ctx: &Ctx, env: &Arc<EnvelopingAlgebra>, rep: &SpinRep, out: &mut Vec<PropertyRecord>) {
    let cfg = ctx.cfg;
    let (d, s) = (cfg.max_degree, cfg.samples);
    let tag = format!("rep.j={}", rep.j());
    let name = |x: &str| format!("{tag}.{x}");
    let h0 = GaussMatrix::identity(rep.dim()).scale(&crate::rep::GaussRat::real(rep.h0().clone()));
    let rels_ok = [(0, 1, 2), (1, 2, 0), (2, 0, 1)].iter().all(|&(a, b, c)| {
        let (ra, rb) = (rep.generator(a), rep.generator(b));
        &(ra * rb) - &(rb * ra) == &h0 * rep.generator(c)
    });
    out.push(PropertyRecord::verdict(&name("relations"), "R_a R_b - R_b R_a = h0 R_c (cyclic)", rels_ok, 3, None));
    let level = match rep.quotient_level() {
        Ok(l) => l,
        Err(e) => {
            out.push(PropertyRecord::verdict(&name("casimir"), "R_x^2 + R_y^2 + R_z^2 is scalar", false, 1, Some(e.to_string())));
            return;
        }
    };
    let recon = reconcile_level(rep).expect("scalar Casimir");
    let mut info = PropertyRecord::new(&name("casimir"), "c_rep with R_x^2 + R_y^2 + R_z^2 = c_rep I, compared with l(l + h0)");
    info.status = Status::Info;
    info.samples = 1;
    info.detail = Some(format!(
        "c_rep = {}; l = j h0 = {}; l(l + h0) = {}; c_rep = {}l(l + h0); quotient level c(h) = {}",
        recon.c_rep,
        recon.l,
        recon.geometric_level,
        match recon.sign {
            Some(1) => "",
            Some(_) => "-",
            None => "?",
        },
        level
    ));
    out.push(info);
    let spec = match CasimirSpec::any_level(env, sum_of_squares(3), level) {
        Ok(spec) => spec,
        Err(e) => {
            out.push(PropertyRecord::skip(&name("homomorphism"), "", &e.to_string()));
            return;
        }
    };
    let o = OrbitAlgebra::new(env.clone(), spec).expect("su(2)-type context");
    out.push(sampled(cfg.seed, &name("homomorphism"), "rep([A][B]) = rep([A]) rep([B])", s, |st| {
        let a = o.quotient_normal_form(&st.ncpoly(3, d));
        let b = o.quotient_normal_form(&st.ncpoly(3, d));
        let lhs = crate::rep::rep_apply(&o, &o.quotient_mul(&a, &b), rep);
        let rhs = crate::rep::rep_apply(&o, &a, rep).and_then(|x| crate::rep::rep_apply(&o, &b, rep).map(|y| &x * &y));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => None,
            _ => Some(format!("A = {}; B = {}", env.print(a.lift()), env.print(b.lift()))),
        }
    }));
    out.push(sampled(cfg.seed, &name("ideal_vanishes"), "L (P - c(h)) R maps to zero", s, |st| {
        let (l, r) = (st.ncpoly(3, 2), st.ncpoly(3, 2));
        let a = env.mul(&env.mul(&l, o.ideal_generator()), &r);
        (!rep.evaluate(&a).is_zero()).then(|| format!("L = {}; R = {}", env.print(&l), env.print(&r)))
    }));
    let twice = (rep.dim() - 1) as u32;
    let rank = image_dimension(rep, twice);
    let full = rep.dim() * rep.dim();
    out.push(PropertyRecord::verdict(
        &name("surjective"),
        "the images of basis cosets of degree <= 2j span all (2j+1)^2 matrices",
        rank == full,
        sphere_basis(twice).len(),
        Some(format!("rank {rank} of {full}")),
    ));
}

fn rep(ctx: &Ctx, out: &mut Vec<PropertyRecord>) {
    let Some(env) = ctx.env.as_ref().filter(|_| ctx.orbit.is_some()) else {
        out.push(PropertyRecord::skip("rep", "spin representations of the deformed relations", &ctx.orbit_why));
        return;
    };
    for (j, h0) in &ctx.cfg.spins {
        match spin_rep(j, h0) {
            Ok(rep) => rep_records(ctx, env, &rep, out),
            Err(e) => out.push(PropertyRecord::verdict(&format!("rep.j={j}"), "valid spin", false, 0, Some(e.to_string()))),
        }
    }
}

/// A bivector `x_a ∂_i ∧ ∂_j` that does not Schouten-commute with `β`, if any.
pub fn non_poisson_perturbation(alg: &LieAlgebraSpec) -> Option<MultiVector> {
    let n = alg.dim();
    let beta = kirillov_bivector(alg);
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..n {
                let g = MultiVector::term(n, &[i, j], CPoly::var(n, a));
                if !schouten_bracket(&beta, &g).is_zero() {
                    return Some(g);
                }
            }
        }
    }
    None
}

fn poisson(ctx: &Ctx, out: &mut Vec<PropertyRecord>) {
    let cfg = ctx.cfg;
    let alg = &cfg.algebra;
    let n = ctx.n();
    let beta = kirillov_bivector(alg);
    let bb = schouten_bracket(&beta, &beta);
    let mut r = PropertyRecord::verdict("poisson.beta_squared", "[beta, beta] = 0 for the Kirillov bivector", bb.is_zero(), 1, None);
    if !bb.is_zero() {
        r.counterexample = Some(bb.to_canonical(&ctx.names));
    }
    out.push(r);
    out.push(PropertyRecord::verdict(
        "poisson.jacobi_equivalence",
        "[beta, beta] = 0 exactly when the Jacobi identity holds",
        bb.is_zero() == jacobi_check(alg).holds,
        1,
        None,
    ));
    let single = formal_poisson_check(std::slice::from_ref(&beta), 4);
    out.push(PropertyRecord::verdict(
        "poisson.formal_h_beta",
        "alpha = h beta satisfies [alpha, alpha] = 0 through h^4",
        single.holds,
        1,
        single.failing_order.map(|k| format!("first failure at h^{k}")),
    ));
    let claim = "alpha = h beta + h^2 gamma with [beta, gamma] != 0 is detected as non-Poisson";
    match non_poisson_perturbation(alg) {
        Some(gamma) => {
            let rep = formal_poisson_check(&[beta.clone(), gamma.clone()], 4);
            let detail = format!(
                "gamma = {}; first failure at h^{}; witness {}",
                gamma.to_canonical(&ctx.names),
                rep.failing_order.map_or("-".to_string(), |k| k.to_string()),
                rep.witness.as_ref().map_or("-".to_string(), |w| w.to_canonical(&ctx.names))
            );
            out.push(PropertyRecord::verdict("poisson.formal_perturbed", claim, !rep.holds, 1, Some(detail)));
        }
        None => out.push(PropertyRecord::skip("poisson.formal_perturbed", claim, "no linear bivector fails to commute with beta")),
    }
    let monos = Monomial::all_up_to_degree(n, 3);
    let mut checked = 0;
    let mut cx = None;
    'outer: for a in &monos {
        for b in &monos {
            checked += 1;
            let f = CPoly::term(a.clone(), HScalar::one());
            let g = CPoly::term(b.clone(), HScalar::one());
            if beta.contract(&f, &g) != kirillov_bracket(&f, &g, alg) {
                cx = Some(format!("f = {}; g = {}", ctx.p(&f), ctx.p(&g)));
                break 'outer;
            }
        }
    }
    let mut r = PropertyRecord::verdict(
        "poisson.bivector_oracle",
        "beta(df, dg) = {f, g} on all monomial pairs of degree <= 3",
        cx.is_none(),
        checked,
        None,
    );
    r.counterexample = cx;
    out.push(r);
    out.push(sampled(cfg.seed, "poisson.graded_antisymmetry", "[P, Q] = -(-1)^((p-1)(q-1)) [Q, P]", cfg.samples, |st| {
        let draw = |st: &mut PolyStream| {
            let k = st.below(n.min(3) + 1);
            let mut idx: Vec<usize> = (0..n).collect();
            for t in 0..k {
                let u = t + st.below(n - t);
                idx.swap(t, u);
            }
            (k, MultiVector::term(n, &idx[..k], st.poly(n, 2)))
        };
        let (p, a) = draw(st);
        let (q, b) = draw(st);
        let ab = schouten_bracket(&a, &b);
        let ba = schouten_bracket(&b, &a);
        let sign_odd = (p + 1) * (q + 1) % 2 == 1;
        let expected = if sign_odd { ba } else { -&ba };
        (ab != expected).then(|| format!("P = {}; Q = {}", a.to_canonical(&ctx.names), b.to_canonical(&ctx.names)))
    }));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_full_run_passes_and_is_deterministic() {
        let mut cfg = SuiteConfig::new(LieAlgebraSpec::su2(), Suite::All);
        cfg.samples = 3;
        cfg.max_degree = 2;
        cfg.spins = vec![(rat(1, 2), int(1))];
        let a = run_suite(&cfg).unwrap();
        assert!(a.passed(), "{a}");
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.record("tangential.star_s_witness").unwrap().detail.as_ref().unwrap().contains("witness"));
    }

    #[test]
    fn perturbed_constants_fail_poisson_suite() {
        let bad = LieAlgebraSpec::su2().with_constant(0, 1, 0, int(1));
        let cfg = SuiteConfig::new(bad, Suite::Poisson);
        let r = run_suite(&cfg).unwrap();
        assert!(!r.passed());
        assert_eq!(r.record("algebra.jacobi").unwrap().status, Status::Fail);
        let bb = r.record("poisson.beta_squared").unwrap();
        assert_eq!(bb.status, Status::Fail);
        assert!(bb.counterexample.is_some());
        assert_eq!(r.record("poisson.jacobi_equivalence").unwrap().status, Status::Pass);
    }

    #[test]
    fn abelian_algebra_skips_orbit_suites() {
        let mut cfg = SuiteConfig::new(LieAlgebraSpec::abelian(2), Suite::All);
        cfg.samples = 2;
        cfg.max_degree = 2;
        let r = run_suite(&cfg).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.record("assoc.star_p").unwrap().status, Status::Skip);
        assert_eq!(r.record("assoc.star_s").unwrap().status, Status::Pass);
    }
}
