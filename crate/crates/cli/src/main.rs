use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kcone::cohomology::{coho_affine_to_projective, coho_projective_to_affine, coho_reduce, QMPoly};
use kcone::cones::{
    csm_projective_cone, projective_cone_mc, projective_cone_mc0, projective_cone_pushforward,
    projective_cone_sheaf, ConeResult,
};
use kcone::equivariant::{
    affine_to_projective_mc, affine_to_projective_segre, equiv_linear_subspace, kirwan,
    projective_to_affine_forget, projective_to_affine_full, AffineEquivariantClass,
};
use kcone::hilbert::{hilbert_report, KPolynomial, MonomialIdeal, DEFAULT_GENERATOR_CAP};
use kcone::projective::{genus_report, ClassReport, VarietyDescriptor};
use kcone::verify::run_verification;
use kcone::{
    laurent_reduce, Basis, EquivariantClass, LaurentExpr, ScalarEmbedding, TorusAction,
    TruncatedClass, YRational,
};
use serde::Serialize;
use serde_json::{json, Value};

/// Exact K-theoretic classes of projective varieties and their cones.
#[derive(Parser)]
#[command(name = "kcone", version)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// LaTeX rendering of polynomials.
    #[arg(long, global = true)]
    latex: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classes of a named variety: `linear k n`, `ci 2,3 n`, `hypersurface d n`,
    /// `rnc d`, `cubic <name>` or `union-linear k l n`.
    Class {
        #[arg(required = true, num_args = 1..)]
        descriptor: Vec<String>,
    },
    /// Classes of the projective cone over a class.
    Cone(ConeArgs),
    /// K-polynomial, Hilbert series, class and Hilbert polynomial of a
    /// monomial ideal in `x0..xn`.
    Hilbert {
        /// Comma-separated monomials, e.g. "x0*x3, x1^2".
        ideal: String,
        #[arg(long)]
        n: usize,
        /// Last degree of the series prefix.
        #[arg(long, default_value_t = 10)]
        j: usize,
    },
    /// Torus-equivariant transfer between affine and projective space.
    #[command(subcommand)]
    Equivariant(EquivCommand),
    /// Replay the reference computations; the filter is a dotted prefix or a glob.
    Verify { filter: Option<String> },
}

#[derive(Args)]
#[group(id = "kind", required = true, multiple = false)]
struct ConeKind {
    #[arg(long)]
    mc: bool,
    #[arg(long)]
    mc0: bool,
    #[arg(long)]
    pushforward: bool,
    #[arg(long)]
    sheaf: bool,
    /// CSM coefficients as a JSON list, e.g. "[0,1]".
    #[arg(long, value_name = "LIST")]
    csm: Option<String>,
}

#[derive(Args)]
struct ConeArgs {
    #[command(flatten)]
    kind: ConeKind,
    /// K-polynomial for `--sheaf`.
    #[arg(long)]
    kpoly: Option<String>,
    /// Ambient dimension for `--kpoly`.
    #[arg(long)]
    n: Option<usize>,
    /// Base class as JSON: {"n":2,"basis":"H","coeffs":["0","3","-3"]}.
    #[arg(long = "class-json", value_name = "JSON")]
    class_json: Option<String>,
    /// Todd genus of the base for `--mc0 --class-json`; defaults to the
    /// integral of the class.
    #[arg(long)]
    todd: Option<String>,
    /// Variety descriptor, optionally preceded by the word `class`.
    descriptor: Vec<String>,
}

#[derive(Args)]
struct ActionArgs {
    /// Torus action as JSON, e.g. {"rank":1,"characters":["a1","a1"],"scalar":{"weights":[1],"q":1}}.
    #[arg(long)]
    action: Option<String>,
    /// Ambient dimension when no action is given; the diagonal torus is used.
    #[arg(long, default_value_t = 2)]
    n: usize,
}

impl ActionArgs {
    fn resolve(&self) -> Result<TorusAction, CliError> {
        match &self.action {
            Some(s) => {
                let v: Value = serde_json::from_str(s).map_err(|e| CliError::usage(format!("action: {e}")))?;
                Ok(TorusAction::from_json(&v)?)
            }
            None => Ok(TorusAction::diagonal(self.n)),
        }
    }
}

#[derive(Args)]
struct ProjectiveInput {
    #[command(flatten)]
    action: ActionArgs,
    /// Class in `K_T(P^n)[y]` as a polynomial in a1.., t and y.
    #[arg(long, required_unless_present = "linear")]
    poly: Option<String>,
    /// χ_y of the variety, a polynomial or fraction in y.
    #[arg(long = "chi-y", required_unless_present = "linear")]
    chi_y: Option<String>,
    /// Use the coordinate subspace `P^k` instead of `--poly` and `--chi-y`.
    #[arg(long, value_name = "K")]
    linear: Option<usize>,
}

#[derive(Subcommand)]
enum EquivCommand {
    /// Kirwan map of a Gamma x T class.
    Kirwan {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        poly: String,
    },
    /// Class of X in K_T(P^n) from the class of its punctured cone.
    ToProjective {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        poly: String,
        /// Treat a t-free input as Gamma x T-equivariant.
        #[arg(long)]
        gamma: bool,
        /// The input is a motivic Segre class; no division by 1+y.
        #[arg(long)]
        segre: bool,
        /// Scalar embedding as JSON {"weights":[..],"q":..}; defaults to the action's.
        #[arg(long)]
        emb: Option<String>,
    },
    /// Gamma x T class of the punctured cone.
    ToAffine(ProjectiveInput),
    /// T class of the punctured cone, through t = 1.
    ToAffineForget(ProjectiveInput),
    /// Cohomology class of X from that of its cone.
    CohoToProjective {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        poly: String,
    },
    /// Cohomology class of the cone from that of X.
    CohoToAffine {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        poly: String,
    },
    /// M, R and the equivariant motivic class of a coordinate subspace.
    LinearSubspace {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] kcone::Error),
}

impl CliError {
    fn usage(s: impl Into<String>) -> Self {
        CliError::Usage(s.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(kcone::Error::GeneratorCap { .. }) => 3,
            _ => 2,
        }
    }
}

struct Out {
    json: bool,
    latex: bool,
}

impl Out {
    fn class(&self, c: &TruncatedClass) -> String {
        if self.latex {
            c.to_latex(Basis::H)
        } else {
            c.render(Basis::H)
        }
    }

    fn y(&self, c: &YRational) -> String {
        if self.latex {
            c.to_latex()
        } else {
            c.to_string()
        }
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
        let s = if self.json {
            serde_json::to_string_pretty(value).map_err(|e| CliError::usage(e.to_string()))?
        } else {
            text()
        };
        use std::io::Write;
        match writeln!(std::io::stdout().lock(), "{s}") {
            // a closed pipe downstream is not our failure
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::usage(e.to_string())),
            _ => Ok(()),
        }
    }
}

fn parse_y(s: &str) -> Result<YRational, CliError> {
    let e = LaurentExpr::parse(s, 0)?;
    if e.is_zero() {
        return Ok(YRational::zero());
    }
    match e.single_term() {
        Some((exp, c)) if exp.t == 0.into() => Ok(c.clone()),
        _ => Err(CliError::usage(format!("{s:?} is not a function of y alone"))),
    }
}

fn generator_cap() -> Result<usize, CliError> {
    match std::env::var("K_CONE_GEN_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::usage(format!("K_CONE_GEN_CAP must be a number, got {v:?}"))),
        Err(_) => Ok(DEFAULT_GENERATOR_CAP),
    }
}

fn descriptor_report(words: &[String]) -> Result<ClassReport, CliError> {
    let mut words: Vec<&str> = words.iter().map(String::as_str).collect();
    if words.first() == Some(&"class") {
        words.remove(0);
    }
    if words.is_empty() {
        return Err(CliError::usage("a variety descriptor or --class-json is required"));
    }
    Ok(VarietyDescriptor::parse(&words)?.build()?)
}

/// Library JSON for a class, or the same shape with `coeffs` given as
/// strings or integers.
fn parse_class_json(s: &str) -> Result<TruncatedClass, CliError> {
    if let Ok(c) = serde_json::from_str::<TruncatedClass>(s) {
        return Ok(c);
    }
    let v: Value = serde_json::from_str(s).map_err(|e| CliError::usage(format!("class JSON: {e}")))?;
    let bad = || CliError::usage("class JSON needs \"n\" and \"coeffs\"");
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(bad)? as usize;
    let basis = match v.get("basis").and_then(Value::as_str) {
        None | Some("H") => Basis::H,
        Some("t") => Basis::T,
        Some(b) => return Err(CliError::usage(format!("unknown basis {b:?}"))),
    };
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(bad)?
        .iter()
        .map(|c| match c {
            Value::String(s) => parse_y(s),
            Value::Number(_) => parse_y(&c.to_string()),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncatedClass::from_basis(n, basis, coeffs)?)
}

fn show_list<T: std::fmt::Display>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

fn cmd_class(out: &Out, words: &[String]) -> Result<(), CliError> {
    let report = descriptor_report(words)?;
    out.emit(&report, || report.render(out.latex))
}

fn cone_text(out: &Out, base: &TruncatedClass, cone: &TruncatedClass) -> String {
    format!(
        "base: {} (n={})\ncone: {} (n={})",
        out.class(base),
        base.n(),
        out.class(cone),
        cone.n()
    )
}

fn cmd_cone(out: &Out, args: &ConeArgs) -> Result<(), CliError> {
    let k = &args.kind;
    if let Some(list) = &k.csm {
        let q: Vec<i64> = serde_json::from_str(list).map_err(|e| CliError::usage(format!("--csm: {e}")))?;
        let q: Vec<_> = q.into_iter().map(Into::into).collect();
        let cone = csm_projective_cone(&q);
        return out.emit(&json!({"base": q, "cone": cone}), || {
            format!("base: {}\ncone: {}", show_list(&q), show_list(&cone))
        });
    }
    if k.sheaf {
        let (Some(kpoly), Some(n)) = (&args.kpoly, args.n) else {
            return Err(CliError::usage("--sheaf needs --kpoly and --n"));
        };
        let kp = KPolynomial::parse(kpoly, n)?;
        let (base, cone) = projective_cone_sheaf(&kp);
        return out.emit(&json!({"kpoly": kp, "base": base, "cone": cone}), || cone_text(out, &base, &cone));
    }
    let (base_class, report) = match &args.class_json {
        Some(s) => (parse_class_json(s)?, None),
        None => {
            let r = descriptor_report(&args.descriptor)?;
            (r.classes.pushforward.clone(), Some(r))
        }
    };
    if k.pushforward {
        let cone = projective_cone_pushforward(&base_class);
        return out.emit(&json!({"base": base_class, "cone": cone}), || cone_text(out, &base_class, &cone));
    }
    if k.mc0 {
        let (mc0, todd) = match &report {
            Some(r) => (r.classes.motivic0.clone(), r.genus.todd.clone()),
            None => {
                let todd = match &args.todd {
                    Some(t) => parse_y(t)?
                        .as_constant()
                        .ok_or_else(|| CliError::usage("--todd must be a number"))?,
                    None => genus_report(&base_class, base_class.n())?.todd,
                };
                (base_class.clone(), todd)
            }
        };
        let cone = projective_cone_mc0(&mc0, &todd);
        return out.emit(&json!({"base": mc0, "todd": todd.to_string(), "cone": cone}), || {
            format!("{}\ntodd(base): {todd}", cone_text(out, &mc0, &cone))
        });
    }
    let mc = match &report {
        Some(r) => r
            .mc
            .clone()
            .ok_or_else(|| CliError::usage(format!("no motivic Chern class known for {}", r.name)))?,
        None => base_class,
    };
    let res: ConeResult = projective_cone_mc(&mc);
    out.emit(&res, || {
        format!(
            "{}\nchi_y(base): {}\nsmooth base certified: {}",
            cone_text(out, &res.base_class, &res.cone_class),
            out.y(&res.chi_y_base),
            res.smooth_certified
        )
    })
}

fn cmd_hilbert(out: &Out, ideal: &str, n: usize, j: usize) -> Result<(), CliError> {
    let ideal = MonomialIdeal::parse(ideal, n + 1)?;
    let report = hilbert_report(&ideal, j, generator_cap()?)?;
    out.emit(&report, || {
        format!(
            "ideal: {}\nK(t) = {}\nseries: {}\nclass: {}\nHilbert polynomial: {} = {}",
            report.ideal,
            report.kpoly.render(),
            report.series.join(", "),
            out.class(&report.class),
            report.hilbert_polynomial.render(),
            report.hilbert_polynomial.render_binomial()
        )
    })
}

fn equivariant_text(out: &Out, e: &EquivariantClass) -> String {
    if out.latex {
        e.to_latex()
    } else {
        e.to_string()
    }
}

fn affine_text(out: &Out, e: &AffineEquivariantClass) -> String {
    if out.latex {
        e.to_latex()
    } else {
        e.to_string()
    }
}

fn action_line(action: &TorusAction) -> String {
    format!("action: {}", serde_json::to_string(action).unwrap_or_default())
}

fn projective_input(p: &ProjectiveInput) -> Result<(TorusAction, EquivariantClass, YRational), CliError> {
    let action = p.action.resolve()?;
    if let Some(k) = p.linear {
        let lin = equiv_linear_subspace(k, &action)?;
        let chi = parse_y(&format!("(1 - (-y)^{})/(1+y)", k + 1))?;
        return Ok((action, lin.mc_t, chi));
    }
    let poly = p.poly.as_deref().ok_or_else(|| CliError::usage("--poly is required"))?;
    let chi = p.chi_y.as_deref().ok_or_else(|| CliError::usage("--chi-y is required"))?;
    let class = laurent_reduce(&LaurentExpr::parse(poly, action.rank())?, &action)?;
    Ok((action, class, parse_y(chi)?))
}

fn cmd_equivariant(out: &Out, cmd: &EquivCommand) -> Result<(), CliError> {
    match cmd {
        EquivCommand::Kirwan { action, poly } => {
            let action = action.resolve()?;
            let c = AffineEquivariantClass::gamma(&action, LaurentExpr::parse(poly, action.rank())?)?;
            let r = kirwan(&c)?;
            out.emit(&json!({"action": action, "input": c, "result": r}), || {
                format!("{}\nkappa({}) = {}", action_line(&action), affine_text(out, &c), equivariant_text(out, &r))
            })
        }
        EquivCommand::ToProjective {
            action,
            poly,
            gamma,
            segre,
            emb,
        } => {
            let action = action.resolve()?;
            let e = LaurentExpr::parse(poly, action.rank())?;
            let c = if *gamma || !e.is_t_free() {
                AffineEquivariantClass::gamma(&action, e)?
            } else {
                AffineEquivariantClass::torus_only(&action, e)?
            };
            let emb: Option<ScalarEmbedding> = match emb {
                Some(s) => Some(serde_json::from_str(s).map_err(|e| CliError::usage(format!("--emb: {e}")))?),
                None => None,
            };
            let r = if *segre {
                affine_to_projective_segre(&c, emb.as_ref())?
            } else {
                affine_to_projective_mc(&c, emb.as_ref())?
            };
            out.emit(&json!({"action": action, "input": c, "result": r}), || {
                format!("{}\n{}", action_line(&action), equivariant_text(out, &r))
            })
        }
        EquivCommand::ToAffine(p) | EquivCommand::ToAffineForget(p) => {
            let (action, class, chi) = projective_input(p)?;
            let r = if matches!(cmd, EquivCommand::ToAffine(_)) {
                projective_to_affine_full(&class, &chi)?
            } else {
                projective_to_affine_forget(&class, &chi)?
            };
            out.emit(&json!({"action": action, "input": class, "chi_y": chi, "result": r}), || {
                format!(
                    "{}\ninput: {}\nchi_y: {}\n{}",
                    action_line(&action),
                    equivariant_text(out, &class),
                    out.y(&chi),
                    affine_text(out, &r)
                )
            })
        }
        EquivCommand::CohoToProjective { action, poly } => {
            let action = action.resolve()?;
            let p = QMPoly::parse(poly, action.rank())?;
            let r = coho_affine_to_projective(&p, &action)?;
            out.emit(&json!({"action": action, "input": p, "result": r}), || {
                let s = if out.latex { r.poly().to_latex() } else { r.to_string() };
                format!("{}\n{s}", action_line(&action))
            })
        }
        EquivCommand::CohoToAffine { action, poly } => {
            let action = action.resolve()?;
            let reduced = coho_reduce(&QMPoly::parse(poly, action.rank())?, &action)?;
            let r = coho_projective_to_affine(&reduced);
            out.emit(&json!({"action": action, "input": reduced, "result": r}), || {
                let s = if out.latex { r.to_latex() } else { r.to_string() };
                format!("{}\n{s}", action_line(&action))
            })
        }
        EquivCommand::LinearSubspace { action, k } => {
            let action = action.resolve()?;
            let lin = equiv_linear_subspace(*k, &action)?;
            out.emit(&json!({"action": action, "classes": lin}), || {
                format!(
                    "{}\nM = {}\nR = {}\nmC_T = {}",
                    action_line(&action),
                    affine_text(out, &lin.m),
                    affine_text(out, &lin.r),
                    equivariant_text(out, &lin.mc_t)
                )
            })
        }
    }
}

fn cmd_verify(out: &Out, filter: Option<&str>) -> Result<bool, CliError> {
    let outcomes = run_verification(filter);
    let passed = outcomes.iter().filter(|o| o.pass).count();
    out.emit(&outcomes, || {
        let mut lines: Vec<String> = outcomes
            .iter()
            .map(|o| {
                if o.pass {
                    format!("PASS {}", o.id)
                } else {
                    format!("FAIL {}: expected {}, computed {}", o.id, o.expected, o.computed)
                }
            })
            .collect();
        lines.push(format!("{passed}/{} passed", outcomes.len()));
        lines.join("\n")
    })?;
    Ok(passed == outcomes.len())
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let out = Out {
        json: cli.json,
        latex: cli.latex,
    };
    match &cli.command {
        Command::Class { descriptor } => cmd_class(&out, descriptor)?,
        Command::Cone(args) => cmd_cone(&out, args)?,
        Command::Hilbert { ideal, n, j } => cmd_hilbert(&out, ideal, *n, *j)?,
        Command::Equivariant(cmd) => cmd_equivariant(&out, cmd)?,
        Command::Verify { filter } => return cmd_verify(&out, filter.as_deref()),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
