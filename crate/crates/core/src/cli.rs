//! Command-line front end.
//!
//! Exit codes: 0 pass or solved, 1 property violated (or a certificate whose
//! finding is a failure), 2 input error, 3 inconclusive at the given bounds.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::certificate::{self, Certificate};
use crate::coefficients::{CommPoly, DerivationSpec};
use crate::error::Error;
use crate::pbw::{consistency_check, Algebra, CrossedElement};
use crate::properties::{
    check_completely_prime, check_filtration_multiplicative, check_graded_lemma_chain, check_scp, Grading,
    SubalgebraSpec,
};
use crate::semigroup::{check_ordered_like, FiniteSemigroupSample, OrderRule};
use crate::stably_free::{
    certify_noncyclic, certify_stably_free, cokernel_presentation, complete_row, derivation_stability, find_cofactors,
    intersection_ideal, lift_ideal, sphere_column, CofactorSearch, IdealSpec, NoncyclicOutcome,
};
use crate::Verdict;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "crossprod", version, about = "Exact computations in crossed products A * U(g)")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Opts {
    /// Presentation file or preset (weyl, weyl-ext-abelian, heisenberg,
    /// heisenberg-ext, sphere:<n>, poly:<vars>)
    #[arg(long, global = true, default_value = "weyl")]
    pres: String,
    #[arg(long, global = true, default_value_t = 10)]
    degree_cap: u32,
    #[arg(long, global = true, default_value_t = 6)]
    cofactor_bound: u32,
    /// Degree bound for sampled elements
    #[arg(long, global = true, default_value_t = 4)]
    degree_bound: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,
    /// Monomial order for printing and types: deglex, or paper (trimmed length, then lex)
    #[arg(long, global = true, default_value = "deglex")]
    order: String,
    #[arg(long, global = true)]
    strict: bool,
    /// Emit TOML (certificates where applicable)
    #[arg(long, global = true)]
    machine: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form by rewriting
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Product of two elements
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Type (order-maximal PBW exponent) and filtration index
    Type {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Seeded associativity and Jacobi-type checks of the presentation
    CheckConsistency,
    /// Strongly completely prime check
    CheckScp {
        /// a1 | degree-zero[:total|pbw|trivial] | span:<e1>,<e2>.. | ideal:<e1>,<e2>..
        #[arg(long, default_value = "a1")]
        sub: String,
    },
    /// Completely prime check
    CheckPrime {
        #[arg(long, default_value = "a1")]
        sub: String,
    },
    /// Both primality checks on the degree-zero part of a graded domain
    CheckGraded {
        #[arg(long, default_value = "total")]
        grading: String,
    },
    /// Ordered-like check on a built-in sample (nat-plus:B, nat-max:B,
    /// natk-plus:K:B) or a table file
    CheckOrderedLike {
        semigroup: String,
        #[arg(long, default_value_t = 4)]
        subset_size: usize,
    },
    /// Freeness of B over A[g1] up to --degree-cap
    CheckFreeness,
    /// Multiplicativity of the (g2..gn) filtration index on samples
    CheckFiltration,
    /// Cofactors u, v with a*u + b*v = 1
    Unimodular {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Generators of aB ∩ bB from syzygies up to --cofactor-bound
    Ideal {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Non-principality certificate for aB ∩ bB
    CertifyNoncyclic {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Completion of (a, b) to an invertible matrix
    Complete {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Lift aA1 ∩ bA1 from the Ore subalgebra A[g1] to --pres and certify it
    Lift {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Whether a derivation preserves an ideal of the base ring
    Stafford {
        /// Ideal generators
        #[arg(required = true)]
        gens: Vec<String>,
        /// Derivation image of one variable, as var=expr (repeatable)
        #[arg(long = "delta")]
        delta: Vec<String>,
        /// Use the derivation of this generator instead
        #[arg(long)]
        generator: Option<String>,
    },
    /// The unimodular sphere column and its cokernel idempotent
    Sphere { n: usize },
    /// Re-check a certificate file ("-" for stdin)
    Verify { file: String },
}

/// Failure carrying an exit code and message.
struct Exit(i32, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Certificate(_) => EXIT_FAIL,
            _ => EXIT_INPUT,
        };
        Exit(code, e.to_string())
    }
}

type Outcome = std::result::Result<i32, Exit>;

struct Ctx<'a> {
    opts: &'a Opts,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn toml<T: Serialize>(&mut self, value: &T) {
        match toml::to_string(value) {
            Ok(s) => {
                let _ = write!(self.out, "{s}");
            }
            Err(e) => self.line(format!("# serialization failed: {e}")),
        }
    }

    fn algebra(&self) -> std::result::Result<Algebra, Exit> {
        Ok(Algebra::load(&self.opts.pres)?)
    }

    fn order(&self) -> std::result::Result<OrderRule, Exit> {
        OrderRule::parse(&self.opts.order)
            .ok_or_else(|| Exit(EXIT_INPUT, format!("unknown order `{}` (expected deglex or paper)", self.opts.order)))
    }
}

fn element(alg: &Algebra, src: &str) -> std::result::Result<CrossedElement, Exit> {
    alg.parse_element(src).map_err(|e| Exit(EXIT_INPUT, format!("in `{src}`: {e}")))
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut ctx = Ctx { opts: &cli.opts, out };
    match dispatch(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn subalgebra(alg: &Algebra, spec: &str, opts: &Opts) -> std::result::Result<SubalgebraSpec, Exit> {
    let list = |s: &str| s.split(',').map(|e| element(alg, e.trim())).collect::<std::result::Result<Vec<_>, _>>();
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "a1" => Ok(SubalgebraSpec::OreA1),
        "degree-zero" => {
            let g = if rest.is_empty() { "pbw" } else { rest };
            Grading::parse(g)
                .map(SubalgebraSpec::DegreeZero)
                .ok_or_else(|| Exit(EXIT_INPUT, format!("unknown grading `{g}`")))
        }
        "span" => Ok(SubalgebraSpec::Generated { generators: list(rest)?, expansion_bound: opts.degree_cap }),
        "ideal" => Ok(SubalgebraSpec::Ideal { generators: list(rest)?, cofactor_bound: opts.cofactor_bound }),
        _ => Err(Exit(EXIT_INPUT, format!("unknown subalgebra `{spec}`"))),
    }
}

#[derive(Serialize)]
struct Value<'a> {
    result: &'a str,
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Outcome {
    let o = ctx.opts;
    match cmd {
        Command::Nf { expr } => {
            let alg = ctx.algebra()?;
            let rule = ctx.order()?;
            let e = alg.normal_form(expr).map_err(|e| Exit(EXIT_INPUT, format!("in `{expr}`: {e}")))?;
            print_element(ctx, &alg.format_with(&e, rule));
            Ok(EXIT_PASS)
        }
        Command::Mul { left, right } => {
            let alg = ctx.algebra()?;
            let rule = ctx.order()?;
            let p = alg.multiply(&element(&alg, left)?, &element(&alg, right)?)?;
            print_element(ctx, &alg.format_with(&p, rule));
            Ok(EXIT_PASS)
        }
        Command::Type { expr } => {
            let alg = ctx.algebra()?;
            let rule = ctx.order()?;
            let e = element(&alg, expr)?;
            let t = e.type_of(rule)?;
            let f = e.filtration_index()?;
            #[derive(Serialize)]
            struct TypeReport<'a> {
                order: &'a str,
                r#type: Vec<u32>,
                filtration_index: Vec<u32>,
                degree: Option<u32>,
            }
            let rep = TypeReport {
                order: rule.name(),
                r#type: t.entries().to_vec(),
                filtration_index: f.entries().to_vec(),
                degree: e.total_degree().finite(),
            };
            if o.machine {
                ctx.toml(&rep);
            } else {
                ctx.line(format!("type {:?} ({})", rep.r#type, rep.order));
                ctx.line(format!("filtration index {:?}", rep.filtration_index));
                ctx.line(format!("degree {}", rep.degree.unwrap_or(0)));
            }
            Ok(EXIT_PASS)
        }
        Command::CheckConsistency => {
            let alg = ctx.algebra()?;
            let r = consistency_check(&alg, o.trials, o.seed);
            if o.machine {
                ctx.toml(&r);
            } else {
                ctx.line(format!("consistency: {} ({} checks)", r.verdict, r.checks));
                if let (Some(w), Some(why)) = (&r.witness, &r.reason) {
                    ctx.line(format!("witness: {w}"));
                    ctx.line(format!("reason: {why}"));
                }
            }
            Ok(verdict_code(r.verdict))
        }
        Command::CheckScp { sub } | Command::CheckPrime { sub } => {
            let alg = ctx.algebra()?;
            let spec = subalgebra(&alg, sub, o)?;
            let r = if matches!(cmd, Command::CheckScp { .. }) {
                check_scp(&alg, &spec, o.trials, o.seed, o.degree_bound)?
            } else {
                check_completely_prime(&alg, &spec, o.trials, o.seed, o.degree_bound)?
            };
            print_property(ctx, &r);
            Ok(verdict_code(r.verdict))
        }
        Command::CheckGraded { grading } => {
            let alg = ctx.algebra()?;
            let g = Grading::parse(grading).ok_or_else(|| Exit(EXIT_INPUT, format!("unknown grading `{grading}`")))?;
            let r = check_graded_lemma_chain(&alg, g, o.trials, o.seed, o.degree_bound)?;
            if o.machine {
                ctx.toml(&r);
            } else {
                ctx.line(format!("graded lemma chain: {}", r.verdict));
                if let Some(why) = &r.reason {
                    ctx.line(format!("reason: {why}"));
                }
                for p in r.completely_prime.iter().chain(&r.strongly_completely_prime) {
                    print_property(ctx, p);
                }
            }
            Ok(verdict_code(r.verdict))
        }
        Command::CheckOrderedLike { semigroup, subset_size } => {
            let sample = match FiniteSemigroupSample::builtin(semigroup) {
                Ok(s) => s,
                Err(_) if std::path::Path::new(semigroup).exists() => {
                    let text = std::fs::read_to_string(semigroup).map_err(Error::from)?;
                    FiniteSemigroupSample::from_table_text(&text)?
                }
                Err(e) => return Err(e.into()),
            };
            if *subset_size == 0 || *subset_size > 8 {
                return Err(Exit(EXIT_INPUT, "--subset-size must be between 1 and 8".into()));
            }
            let r = check_ordered_like(&sample, *subset_size, o.strict);
            if o.machine {
                ctx.toml(&r);
            } else {
                let mode = if r.strict { "strict" } else { "weak" };
                ctx.line(format!("ordered-like ({mode}, subsets of size <= {}): {}", r.subset_size_bound, r.verdict));
                ctx.line(format!("pairs checked: {}, escaped: {}", r.pairs_checked, r.pairs_escaped));
                if let Some((a, b)) = &r.invertible {
                    ctx.line(format!("invertible: {a} + {b} = 0"));
                }
                if let Some((s1, s2)) = &r.counterexample {
                    ctx.line(format!("counterexample: S1 = {{{}}}, S2 = {{{}}}", s1.join(", "), s2.join(", ")));
                }
            }
            Ok(verdict_code(r.verdict))
        }
        Command::CheckFreeness => {
            let alg = ctx.algebra()?;
            let r = alg.check_a1_freeness(o.degree_cap)?;
            if o.machine {
                ctx.toml(&r);
            } else {
                ctx.line(format!("freeness over A[g1] up to degree {}: {}", o.degree_cap, r.verdict));
                for row in &r.rows {
                    ctx.line(format!(
                        "  d={:<3} dim B={:<6} products={:<6} rank={}",
                        row.degree, row.dim_b, row.products, row.rank
                    ));
                }
            }
            Ok(verdict_code(r.verdict))
        }
        Command::CheckFiltration => {
            let alg = ctx.algebra()?;
            let r = check_filtration_multiplicative(&alg, o.trials, o.seed, o.degree_bound)?;
            print_property(ctx, &r);
            Ok(verdict_code(r.verdict))
        }
        Command::Unimodular { a, b } => {
            let alg = ctx.algebra()?;
            let (a, b) = (element(&alg, a)?, element(&alg, b)?);
            match find_cofactors(&alg, &a, &b, o.cofactor_bound)? {
                CofactorSearch::Found(row) => {
                    let cert = Certificate::unimodular_row(&alg, &row)?;
                    certify_stably_free(&alg, &row)?;
                    if o.machine {
                        ctx.line(cert.to_text().trim_end());
                    } else {
                        ctx.line(format!("u = {}", alg.format(&row.u)));
                        ctx.line(format!("v = {}", alg.format(&row.v)));
                        ctx.line("splitting ker(a, b) + B = B^2: verified");
                        ctx.line(certificate::VERIFIED);
                    }
                    Ok(EXIT_PASS)
                }
                CofactorSearch::Inconclusive { cofactor_bound } => {
                    ctx.line(format!("inconclusive: no cofactors of degree <= {cofactor_bound}"));
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Ideal { a, b } => {
            let alg = ctx.algebra()?;
            let (a, b) = (element(&alg, a)?, element(&alg, b)?);
            match intersection_ideal(&alg, &a, &b, o.cofactor_bound)? {
                Some(k) => {
                    let gens: Vec<String> = k.generators.iter().map(|g| alg.format(g)).collect();
                    if o.machine {
                        #[derive(Serialize)]
                        struct Gens {
                            syzygy_bound: u32,
                            generators: Vec<String>,
                        }
                        ctx.toml(&Gens { syzygy_bound: o.cofactor_bound, generators: gens });
                    } else {
                        ctx.line(format!("generators of aB ∩ bB from syzygies of degree <= {}:", o.cofactor_bound));
                        for g in gens {
                            ctx.line(format!("  {g}"));
                        }
                    }
                    Ok(EXIT_PASS)
                }
                None => {
                    ctx.line(format!("inconclusive: no syzygy of degree <= {}", o.cofactor_bound));
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::CertifyNoncyclic { a, b } => {
            let alg = ctx.algebra()?;
            let (a, b) = (element(&alg, a)?, element(&alg, b)?);
            let k = IdealSpec::intersection(a, b)?;
            noncyclic(ctx, &alg, &k)
        }
        Command::Lift { a, b } => {
            let big = ctx.algebra()?;
            let small = Algebra::new(big.presentation().first_ore_subalgebra()?);
            let (a, b) = (element(&small, a)?, element(&small, b)?);
            let k = lift_ideal(&IdealSpec::intersection(a, b)?, &small, &big)?;
            noncyclic(ctx, &big, &k)
        }
        Command::Complete { a, b } => {
            let alg = ctx.algebra()?;
            let (a, b) = (element(&alg, a)?, element(&alg, b)?);
            let CofactorSearch::Found(row) = find_cofactors(&alg, &a, &b, o.cofactor_bound)? else {
                ctx.line(format!("inconclusive: (a, b) has no cofactors of degree <= {}", o.cofactor_bound));
                return Ok(EXIT_INCONCLUSIVE);
            };
            match complete_row(&alg, &row, o.cofactor_bound)? {
                Some(c) => {
                    let cert = Certificate::row_completion(&alg, &c)?;
                    if o.machine {
                        ctx.line(cert.to_text().trim_end());
                    } else {
                        ctx.line(format!("kernel generator (s, t) = ({}, {})", alg.format(&c.kernel.0), alg.format(&c.kernel.1)));
                        ctx.line(format!("second row (c, e) = ({}, {})", alg.format(&c.second_row.0), alg.format(&c.second_row.1)));
                        ctx.line(format!("aB ∩ bB is principal, generated by {}", alg.format(&c.intersection_generator(&alg))));
                        ctx.line(certificate::VERIFIED);
                    }
                    Ok(EXIT_PASS)
                }
                None => {
                    ctx.line(format!("inconclusive: no completion with entries of degree <= {}", o.cofactor_bound));
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Stafford { gens, delta, generator } => {
            let alg = ctx.algebra()?;
            let pres = alg.presentation();
            let base = pres.base();
            let parse = |s: &str| base.parse(s).map_err(|e| Exit(EXIT_INPUT, format!("in `{s}`: {e}")));
            let ideal = gens.iter().map(|g| parse(g)).collect::<std::result::Result<Vec<CommPoly>, _>>()?;
            let d = match generator {
                Some(g) => {
                    let i = pres
                        .lie()
                        .generator_index(g)
                        .ok_or_else(|| Exit(EXIT_INPUT, format!("unknown generator `{g}`")))?;
                    pres.derivations()[i].clone()
                }
                None => {
                    let mut images = vec![CommPoly::zero(base.nvars()); base.nvars()];
                    for item in delta {
                        let (var, img) = item
                            .split_once('=')
                            .ok_or_else(|| Exit(EXIT_INPUT, format!("expected var=expr, got `{item}`")))?;
                        let k = base
                            .names()
                            .iter()
                            .position(|n| n == var.trim())
                            .ok_or_else(|| Exit(EXIT_INPUT, format!("unknown variable `{}`", var.trim())))?;
                        images[k] = parse(img)?;
                    }
                    DerivationSpec::new(images)?
                }
            };
            let r = derivation_stability(base, &ideal, &d, o.cofactor_bound)?;
            if o.machine {
                ctx.toml(&r);
            } else {
                let word = match r.verdict {
                    Verdict::Pass => "stable",
                    Verdict::Fail => "unstable",
                    Verdict::Inconclusive => "inconclusive",
                };
                ctx.line(format!("{word}: {}", r.reason));
                if let (Some(w), Some(img)) = (&r.witness, &r.image) {
                    ctx.line(format!("witness: {w} -> {img}"));
                }
            }
            Ok(verdict_code(r.verdict))
        }
        Command::Sphere { n } => {
            let inst = sphere_column(*n)?;
            let alg = &inst.algebra;
            let w = cokernel_presentation(&inst)?;
            let cert = Certificate::stable_freeness(alg, &w)?;
            if o.machine {
                ctx.line(cert.to_text().trim_end());
            } else {
                let col: Vec<String> = inst.column.iter().map(|e| alg.format(e)).collect();
                ctx.line(format!("column ({}) over {}", col.join(", "), alg.presentation().source()));
                ctx.line("sum of a_i * a_i = 1: verified");
                ctx.line("E = I - column * row, E * E = E: verified");
                if let Some(t) = &w.trace {
                    ctx.line(format!("trace E = {}", alg.format(t)));
                }
                ctx.line(certificate::VERIFIED);
            }
            Ok(EXIT_PASS)
        }
        Command::Verify { file } => {
            let text = if file == "-" {
                let mut s = String::new();
                std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(Error::from)?;
                s
            } else {
                std::fs::read_to_string(file).map_err(Error::from)?
            };
            let cert = certificate::verify(&text)?;
            ctx.line(format!("{} {} ({})", certificate::VERIFIED, cert.claim.kind(), cert.presentation.source));
            Ok(EXIT_PASS)
        }
    }
}

fn print_element(ctx: &mut Ctx, s: &str) {
    if ctx.opts.machine {
        ctx.toml(&Value { result: s });
    } else {
        ctx.line(s);
    }
}

fn print_property(ctx: &mut Ctx, r: &crate::properties::PropertyReport) {
    if ctx.opts.machine {
        ctx.toml(r);
        return;
    }
    ctx.line(format!("{} of {}: {}", r.property, r.subject, r.verdict));
    ctx.line(format!(
        "trials {}, informative {}, violations {} (seed {}, degree bound {})",
        r.trials, r.informative, r.violation_count, r.seed, r.degree_bound
    ));
    for v in &r.violations {
        ctx.line(format!("  a = {}, b = {}, a*b = {}", v.a, v.b, v.product));
    }
}

fn noncyclic(ctx: &mut Ctx, alg: &Algebra, k: &IdealSpec) -> Outcome {
    let o = ctx.opts;
    match certify_noncyclic(alg, k, o.degree_cap, o.cofactor_bound)? {
        NoncyclicOutcome::Certified(c) => {
            let cert = Certificate::noncyclicity(alg, k, &c)?;
            if o.machine {
                ctx.line(cert.to_text().trim_end());
            } else {
                ctx.line(format!("not principal: d0 = {}, witness degree {}", c.d0, c.d_witness));
                let d = c.d_witness as usize;
                ctx.line(format!("dim K_<=d = {} but dim B_<=d-d0 = {} at d = {d}", c.dims_k[d], c.dims_b[d]));
                ctx.line(certificate::VERIFIED);
            }
            Ok(EXIT_PASS)
        }
        NoncyclicOutcome::Inconclusive { reason, dims_k } => {
            if o.machine {
                #[derive(Serialize)]
                struct Inc<'a> {
                    verdict: Verdict,
                    reason: &'a str,
                    dims_k: &'a [usize],
                }
                ctx.toml(&Inc { verdict: Verdict::Inconclusive, reason: &reason, dims_k: &dims_k });
            } else {
                ctx.line(format!("inconclusive: {reason}"));
                ctx.line(format!("dim K_<=d for d = 0..: {dims_k:?}"));
            }
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}
