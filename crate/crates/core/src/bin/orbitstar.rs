//! Command-line front end. Exit status: 0 when every checked property holds,
//! 1 when one fails, 2 on malformed input.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use orbitstar::cpoly::kirillov_bracket;
use orbitstar::envelope::EnvelopingAlgebra;
use orbitstar::lie::{jacobi_check, AlgebraFile, CasimirFragment, LieAlgebraSpec};
use orbitstar::orbit::{CasimirSpec, OrbitAlgebra, SpherePoly};
use orbitstar::parse::{parse_cpoly, parse_hscalar};
use orbitstar::poisson::{formal_poisson_check, kirillov_bivector, parse_multivector, schouten_bracket};
use orbitstar::rep::{image_dimension, reconcile_level, spin_rep};
use orbitstar::scalar::{parse_rational, HScalar, Rational};
use orbitstar::verify::{run_suite, Suite, SuiteConfig};
use orbitstar::{Error, Result};

#[derive(Parser)]
#[command(name = "orbitstar", version, about = "Exact star products on coadjoint orbits")]
struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct AlgebraArg {
    /// Algebra file (JSON), or `su2` for the built-in su(2).
    #[arg(short = 'a', long = "algebra", default_value = "su2")]
    algebra: String,
}

#[derive(clap::Args, Clone)]
struct LevelArgs {
    /// Quantum level c(h), e.g. `l*(l+h)`; overrides the algebra file.
    #[arg(long = "casimir-c")]
    casimir_c: Option<String>,
    /// Value bound to `l` in `--casimir-c`.
    #[arg(long = "l")]
    l: Option<String>,
    /// Classical level c0; defaults to c(0).
    #[arg(long = "c0")]
    c0: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Product {
    #[value(name = "S")]
    S,
    #[value(name = "P")]
    P,
    #[value(name = "quotient")]
    Quotient,
}

#[derive(Subcommand)]
enum Command {
    /// Kirillov-Poisson bracket {f, g}.
    Bracket {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'g')]
        g: String,
    },
    /// Star product of two polynomials.
    Star {
        #[arg(short = 'p', long = "product", value_enum)]
        product: Product,
        #[command(flatten)]
        alg: AlgebraArg,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'g')]
        g: String,
    },
    /// Weyl symmetrization W(f), or its inverse with -i.
    Weyl {
        #[command(flatten)]
        alg: AlgebraArg,
        /// Read an element of U_h (capitalized generators) and print W^-1 of it.
        #[arg(short = 'i', long = "inverse")]
        inverse: bool,
        #[arg(short = 'f')]
        f: String,
    },
    /// Kirillov bivector, [beta, beta], and the formal Poisson condition.
    Schouten {
        #[command(flatten)]
        alg: AlgebraArg,
        /// File with one bivector per line: alpha_1, alpha_2, ...
        #[arg(long)]
        alpha: Option<PathBuf>,
        /// Highest power of h checked in [alpha, alpha].
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Bracket two multivectors instead, e.g. `z * d/dx ^ d/dy`.
        #[arg(long, requires = "rhs")]
        lhs: Option<String>,
        #[arg(long, requires = "lhs")]
        rhs: Option<String>,
    },
    /// Spin-j representation at h = h0.
    Rep {
        #[arg(long = "j")]
        j: String,
        #[arg(long = "h0", default_value = "1")]
        h0: String,
        /// Largest degree in the rank table; defaults to 2j.
        #[arg(long)]
        maxdeg: Option<u32>,
        /// Also run the seeded homomorphism checks.
        #[arg(long = "check-homomorphism")]
        check_homomorphism: bool,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Run a seeded property suite.
    Verify {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "max-deg", default_value_t = 4)]
        max_deg: u32,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        level: LevelArgs,
        /// Spins for the representation suite (h0 = 1); repeatable.
        #[arg(long = "j")]
        spins: Vec<String>,
        /// Include wall-clock times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
}

struct Loaded {
    alg: LieAlgebraSpec,
    casimir: Option<CasimirFragment>,
}

fn load_algebra(arg: &AlgebraArg) -> Result<Loaded> {
    if arg.algebra == "su2" {
        return Ok(Loaded { alg: LieAlgebraSpec::su2(), casimir: None });
    }
    let text = std::fs::read_to_string(&arg.algebra)?;
    let file = AlgebraFile::parse(&text)?;
    let alg = LieAlgebraSpec::new_unchecked(file.names, &file.brackets)?;
    Ok(Loaded { alg, casimir: file.casimir })
}

fn envelope(alg: &LieAlgebraSpec) -> Result<Arc<EnvelopingAlgebra>> {
    Ok(Arc::new(EnvelopingAlgebra::new(Arc::new(alg.clone()))?))
}

/// c(h) and c0 from the flags, else the file, else `c(h) = 1`.
fn level(args: &LevelArgs, file: Option<&CasimirFragment>) -> Result<(HScalar, Rational)> {
    let mut bindings = BTreeMap::new();
    if let Some(l) = &args.l {
        bindings.insert("l".to_string(), parse_rational(l)?);
    }
    let c = match (&args.casimir_c, file) {
        (Some(text), _) => parse_hscalar(text, &bindings)?,
        (None, Some(frag)) => parse_hscalar(&frag.c, &bindings)?,
        (None, None) => HScalar::from_int(1),
    };
    let c0 = match (&args.c0, file, &args.casimir_c) {
        (Some(text), _, _) => parse_rational(text)?,
        (None, Some(frag), None) => parse_rational(&frag.c0)?,
        _ => c.constant_term(),
    };
    Ok((c, c0))
}

fn orbit(loaded: &Loaded, args: &LevelArgs) -> Result<OrbitAlgebra> {
    let env = envelope(&loaded.alg)?;
    let (c, c0) = level(args, loaded.casimir.as_ref())?;
    let p = match &loaded.casimir {
        Some(frag) => parse_cpoly(&frag.p, &loaded.alg)?,
        None => orbitstar::cpoly::sum_of_squares(loaded.alg.dim()),
    };
    let spec = CasimirSpec::new(&env, p, c, c0)?;
    OrbitAlgebra::new(env, spec)
}

fn emit(json_mode: bool, value: serde_json::Value, text: String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<u8> {
    let js = cli.json;
    match cli.command {
        Command::Bracket { alg, f, g } => {
            let loaded = load_algebra(&alg)?;
            let (f, g) = (parse_cpoly(&f, &loaded.alg)?, parse_cpoly(&g, &loaded.alg)?);
            let b = kirillov_bracket(&f, &g, &loaded.alg).to_canonical(loaded.alg.names());
            emit(js, json!({ "bracket": b }), b.clone());
            Ok(0)
        }
        Command::Star { product, alg, level: lv, f, g } => {
            let loaded = load_algebra(&alg)?;
            let names = loaded.alg.names().to_vec();
            let (f, g) = (parse_cpoly(&f, &loaded.alg)?, parse_cpoly(&g, &loaded.alg)?);
            let (tag, out) = match product {
                Product::S => ("S", envelope(&loaded.alg)?.star_s(&f, &g)),
                Product::P => ("P", orbit(&loaded, &lv)?.star_p(&f, &g)),
                Product::Quotient => {
                    let o = orbit(&loaded, &lv)?;
                    let out = o.star_quotient(&SpherePoly::new(f)?, &SpherePoly::new(g)?);
                    ("quotient", out.into_cpoly())
                }
            };
            let s = out.to_canonical(&names);
            emit(js, json!({ "product": tag, "result": s }), s.clone());
            Ok(0)
        }
        Command::Weyl { alg, inverse, f } => {
            let loaded = load_algebra(&alg)?;
            let env = envelope(&loaded.alg)?;
            let s = if inverse {
                env.weyl_inverse(&env.parse(&f)?).to_canonical(loaded.alg.names())
            } else {
                env.print(&env.weyl_map(&parse_cpoly(&f, &loaded.alg)?))
            };
            emit(js, json!({ "inverse": inverse, "result": s }), s.clone());
            Ok(0)
        }
        Command::Schouten { alg, alpha, order, lhs, rhs } => {
            let loaded = load_algebra(&alg)?;
            let names = loaded.alg.names().to_vec();
            if let (Some(l), Some(r)) = (lhs, rhs) {
                let b = schouten_bracket(&parse_multivector(&l, &loaded.alg)?, &parse_multivector(&r, &loaded.alg)?);
                let s = b.to_canonical(&names);
                emit(js, json!({ "bracket": s }), s.clone());
                return Ok(0);
            }
            let beta = kirillov_bivector(&loaded.alg);
            let bb = schouten_bracket(&beta, &beta);
            let jac = jacobi_check(&loaded.alg);
            let mut ok = bb.is_zero();
            let mut text = format!(
                "beta = {}\n[beta, beta] = {}\njacobi: {}",
                beta.to_canonical(&names),
                bb.to_canonical(&names),
                if jac.holds { "holds" } else { "fails" }
            );
            let mut value = json!({
                "beta": beta.to_canonical(&names),
                "beta_beta": bb.to_canonical(&names),
                "jacobi": jac.holds,
            });
            if let Some(path) = alpha {
                let content = std::fs::read_to_string(path)?;
                let alphas = content
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(|l| parse_multivector(l, &loaded.alg))
                    .collect::<Result<Vec<_>>>()?;
                let r = formal_poisson_check(&alphas, order);
                ok &= r.holds;
                let witness = r.witness.as_ref().map(|w| w.to_canonical(&names));
                match (r.failing_order, &witness) {
                    (Some(k), Some(w)) => text.push_str(&format!("\nformal poisson: fails at h^{k}: {w}")),
                    _ => text.push_str(&format!("\nformal poisson: holds through h^{order}")),
                }
                value["formal_poisson"] = json!({
                    "holds": r.holds,
                    "failing_order": r.failing_order,
                    "witness": witness,
                });
            }
            emit(js, value, text);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Rep { j, h0, maxdeg, check_homomorphism, samples, seed } => {
            let (j, h0) = (parse_rational(&j)?, parse_rational(&h0)?);
            let rep = spin_rep(&j, &h0)?;
            let recon = reconcile_level(&rep)?;
            let top = maxdeg.unwrap_or((rep.dim() - 1) as u32);
            let ranks: Vec<(u32, usize)> = (0..=top).map(|d| (d, image_dimension(&rep, d))).collect();
            let mut text = format!(
                "spin {j} at h0 = {h0}: dimension {}\nc_rep = {}\nl = j*h0 = {}, l(l + h0) = {}, c_rep = {}l(l + h0)\nrank of images by degree:",
                rep.dim(),
                recon.c_rep,
                recon.l,
                recon.geometric_level,
                if recon.sign == Some(-1) { "-" } else { "" }
            );
            for (d, r) in &ranks {
                text.push_str(&format!("\n  {d}: {r}"));
            }
            let mut value = json!({
                "j": j.to_string(),
                "h0": h0.to_string(),
                "dimension": rep.dim(),
                "c_rep": recon.c_rep.to_string(),
                "l": recon.l.to_string(),
                "geometric_level": recon.geometric_level.to_string(),
                "sign": recon.sign,
                "ranks": ranks.iter().map(|(d, r)| json!({"degree": d, "rank": r})).collect::<Vec<_>>(),
            });
            let mut ok = true;
            if check_homomorphism {
                let mut cfg = SuiteConfig::new(LieAlgebraSpec::su2(), Suite::Rep);
                cfg.spins = vec![(j, h0)];
                cfg.samples = samples;
                cfg.seed = seed;
                cfg.max_degree = 4;
                let report = run_suite(&cfg)?;
                ok = report.passed();
                text.push('\n');
                text.push_str(&report.to_string());
                value["report"] = serde_json::to_value(&report).expect("serializable");
            }
            emit(js, value, text);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Verify { alg, suite, max_deg, samples, seed, level: lv, spins, timings } => {
            let loaded = load_algebra(&alg)?;
            let suite: Suite = suite.parse()?;
            let mut cfg = SuiteConfig::new(loaded.alg.clone(), suite);
            cfg.max_degree = max_deg;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.timings = timings;
            if lv.casimir_c.is_some() || loaded.casimir.is_some() {
                cfg.level = Some(level(&lv, loaded.casimir.as_ref())?.0);
            }
            if !spins.is_empty() {
                cfg.spins = spins
                    .iter()
                    .map(|s| parse_rational(s).map(|j| (j, Rational::from_i64(1))))
                    .collect::<Result<_>>()?;
            }
            let report = run_suite(&cfg)?;
            if js {
                println!("{}", report.to_json());
            } else {
                println!("{report}");
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::JacobiViolation(_)) {
                eprintln!("hint: `orbitstar schouten -a <file>` shows the failing identity");
            }
            ExitCode::from(2)
        }
    }
}
