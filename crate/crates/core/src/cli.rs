//! Command line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::diagram;
use crate::error::{Error, Result};
use crate::gkm::{self, Localization};
use crate::lie::LieType;
use crate::pieri::{self, PieriCoefficient, PieriOptions};
use crate::polyring::Polynomial;
use crate::restrict_a::{restriction_coefficient, RestrictionInstance};
use crate::schubert::{self, GrassmannianSpace, SchubertSymbol};

#[derive(Debug, Parser)]
#[command(name = "eqpieri", version, about = "Equivariant Pieri coefficients for classical Grassmannians")]
pub struct Cli {
    /// Cap on worker threads (default: all available cores).
    #[arg(long, global = true, env = "EQPIERI_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One coefficient N^μ_{λ,p}.
    Pieri(PieriArgs),
    /// The full product [X_λ]·[X_p].
    Expand(ExpandArgs),
    /// Restriction of a special (or given) class to a fixed point.
    Restrict(RestrictArgs),
    /// Localization oracle for one coefficient or a full product.
    Oracle(OracleArgs),
    /// Compare Pieri products against the oracle.
    Verify(VerifyArgs),
    /// Render the Richardson diagram D(λ,μ) and its index sets.
    Diagram(DiagramArgs),
    /// List the Schubert symbols of a space.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// Lie type: A, B, C or D.
    #[arg(long = "type", value_name = "TYPE")]
    pub lie_type: LieType,
    /// Rank n (for type A, the ambient dimension N).
    #[arg(long)]
    pub n: usize,
    /// Dimension m of the subspaces.
    #[arg(long)]
    pub m: usize,
}

impl SpaceArgs {
    fn space(&self) -> Result<GrassmannianSpace> {
        GrassmannianSpace::new(self.lie_type, self.m, self.n)
    }
}

#[derive(Debug, Args)]
pub struct PieriArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub mu: String,
    /// Degree of the special class; defaults to n-m with --tilde.
    #[arg(long)]
    pub p: Option<usize>,
    /// Multiply by the additional type D class of degree n-m.
    #[arg(long)]
    pub tilde: bool,
    #[arg(long)]
    pub json: bool,
    /// Print the positivity certificate.
    #[arg(long)]
    pub certify: bool,
    /// Replacement for the quadric set Q (type C), e.g. 2,4.
    #[arg(long, allow_hyphen_values = true)]
    pub pivot: Option<String>,
    /// Element of Q dropped to form Q′ (types B, D).
    #[arg(long)]
    pub chat: Option<usize>,
    /// Also print the unspecialized terms.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub tilde: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub certify: bool,
}

#[derive(Debug, Args)]
pub struct RestrictArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Fixed point.
    #[arg(long)]
    pub nu: String,
    /// Degree of the special class.
    #[arg(long, required_unless_present = "class")]
    pub p: Option<usize>,
    /// Restrict this class instead of a special class.
    #[arg(long, conflicts_with = "p")]
    pub class: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub lambda: String,
    /// Omit to print the whole product.
    #[arg(long)]
    pub mu: Option<String>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub tilde: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Named suite: "small" sweeps Gr(2,5), SG(2,6), OG(2,7), OG(2,8).
    #[arg(long, conflicts_with_all = ["lie_type", "n", "m"])]
    pub suite: Option<String>,
    #[arg(long = "type", value_name = "TYPE", requires_all = ["n", "m"])]
    pub lie_type: Option<LieType>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Check this many random (λ, p) pairs per space instead of all of them.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub mu: String,
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long)]
    pub chat: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub json: bool,
}

fn parse_symbol(space: &GrassmannianSpace, name: &str, text: &str) -> Result<SchubertSymbol> {
    let s: SchubertSymbol = text.parse()?;
    space
        .validate(&s)
        .map_err(|e| Error::input(format!("{name} = {text}: {}", strip_kind(&e))))?;
    Ok(s)
}

fn strip_kind(e: &Error) -> &str {
    match e {
        Error::Input(m) | Error::Precondition(m) | Error::Internal(m) => m,
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    let body = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::input(format!("malformed list entry '{}' in '{text}'", t.trim())))
        })
        .collect()
}

fn tilde_degree(space: &GrassmannianSpace, p: Option<usize>, tilde: bool) -> Result<usize> {
    if tilde {
        if space.lie_type != LieType::D || space.m >= space.n {
            return Err(Error::input(format!("--tilde needs type D with m < n, got {space}")));
        }
        let d = space.n - space.m;
        match p {
            Some(q) if q != d => Err(Error::input(format!("--tilde fixes p = n-m = {d}, got {q}"))),
            _ => Ok(d),
        }
    } else {
        p.ok_or_else(|| Error::input("--p is required"))
    }
}

/// The class multiplied by in oracle computations.
fn oracle_class(space: &GrassmannianSpace, lambda: &SchubertSymbol, p: usize, tilde: bool) -> Result<SchubertSymbol> {
    if tilde {
        let (s, _) = schubert::special_symbol(space, p)?;
        Ok(schubert::involution(space, &s))
    } else {
        gkm::special_class_for(space, lambda, p)
    }
}

fn render_coefficient(c: &PieriCoefficient, certify: bool, verbose: bool) -> String {
    let mut out = format!("{}\n", c.value);
    if verbose {
        let _ = writeln!(
            out,
            "route: {:?}, p′ = {}, m′ = {}",
            c.route,
            c.p_prime.map_or("-".into(), |v| v.to_string()),
            c.m_prime.map_or("-".into(), |v| v.to_string())
        );
        for t in &c.terms {
            let _ = writeln!(
                out,
                "  I = {{{}}}  ν_I = {}  {}  ↦  {}",
                t.subset.iter().join(","),
                t.nu,
                t.unspecialized.display_with("s"),
                t.specialized
            );
        }
    }
    if certify {
        match &c.certificate {
            Some(cert) => {
                let _ = writeln!(out, "certificate: {} in v_i = -α_i", cert.expansion.display_with("v"));
            }
            None => out.push_str("certificate: zero coefficient\n"),
        }
    }
    out
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::internal(format!("JSON serialization failed: {e}")))
}

fn run_pieri(a: &PieriArgs) -> Result<String> {
    let space = a.space.space()?;
    let lambda = parse_symbol(&space, "λ", &a.lambda)?;
    let mu = parse_symbol(&space, "μ", &a.mu)?;
    let c = if a.tilde {
        tilde_degree(&space, a.p, true)?;
        if a.pivot.is_some() || a.chat.is_some() {
            return Err(Error::input("--pivot and --chat are not available with --tilde"));
        }
        pieri::pieri_coefficient_tilde(&space, &lambda, &mu)?
    } else {
        let p = tilde_degree(&space, a.p, false)?;
        let opts = PieriOptions {
            chat: a.chat,
            pivot: a.pivot.as_deref().map(parse_list).transpose()?,
        };
        pieri::pieri_coefficient_with(&space, &lambda, &mu, p, &opts)?
    };
    if a.json {
        let mut v = serde_json::to_value(&c).map_err(|e| Error::internal(format!("JSON serialization failed: {e}")))?;
        v["coefficient_text"] = json!(c.value.to_string());
        to_json(&v)
    } else {
        Ok(render_coefficient(&c, a.certify, a.verbose))
    }
}

fn run_expand(a: &ExpandArgs) -> Result<String> {
    let space = a.space.space()?;
    let lambda = parse_symbol(&space, "λ", &a.lambda)?;
    let p = tilde_degree(&space, a.p, a.tilde)?;
    let prod = pieri::pieri_product_with(&space, &lambda, p, a.tilde)?;
    if a.json {
        let entries: Vec<_> = prod
            .values()
            .map(|c| json!({"mu": c.mu, "coefficient": c.value, "coefficient_text": c.value.to_string(), "certificate": c.certificate}))
            .collect();
        return to_json(&json!({"space": space.to_string(), "lambda": lambda, "p": p, "tilde": a.tilde, "product": entries}));
    }
    let mut out = String::new();
    for c in prod.values() {
        let _ = writeln!(out, "{}  {}", c.mu, c.value);
        if a.certify {
            if let Some(cert) = &c.certificate {
                let _ = writeln!(out, "    certificate: {}", cert.expansion.display_with("v"));
            }
        }
    }
    Ok(out)
}

fn run_restrict(a: &RestrictArgs) -> Result<String> {
    let space = a.space.space()?;
    let nu = parse_symbol(&space, "ν", &a.nu)?;
    let value = match (&a.class, a.p) {
        (Some(k), _) => {
            let k = parse_symbol(&space, "class", k)?;
            gkm::billey_restriction(&space, &k, &nu)?
        }
        (None, Some(p)) => {
            space.check_p(p)?;
            match space.lie_type {
                LieType::A => restriction_coefficient(&RestrictionInstance::new(space.n, nu.clone(), p)?),
                LieType::D => gkm::type_d_restriction(&space, &nu, p)?,
                _ if p == 0 => Polynomial::one(space.n),
                _ => gkm::billey_restriction(&space, &gkm::special_class_for(&space, &nu, p)?, &nu)?,
            }
        }
        (None, None) => return Err(Error::input("either --p or --class is required")),
    };
    if a.json {
        to_json(&json!({"space": space.to_string(), "nu": nu, "restriction": value, "restriction_text": value.to_string()}))
    } else {
        Ok(format!("{value}\n"))
    }
}

fn run_oracle(a: &OracleArgs) -> Result<String> {
    let space = a.space.space()?;
    let lambda = parse_symbol(&space, "λ", &a.lambda)?;
    let p = tilde_degree(&space, a.p, a.tilde)?;
    if !a.tilde {
        space.check_p(p)?;
    }
    let loc = Localization::new(&space);
    let kappa = oracle_class(&space, &lambda, p, a.tilde)?;
    match &a.mu {
        Some(mu) => {
            let mu = parse_symbol(&space, "μ", mu)?;
            let v = loc.structure_constant(&lambda, &kappa, &mu)?;
            if a.json {
                to_json(&json!({"coefficient": v, "coefficient_text": v.to_string()}))
            } else {
                Ok(format!("{v}\n"))
            }
        }
        None => {
            let prod: BTreeMap<_, _> = loc
                .product(&lambda, &kappa)?
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if a.json {
                let entries: Vec<_> = prod.iter().map(|(m, v)| json!({"mu": m, "coefficient": v, "coefficient_text": v.to_string()})).collect();
                return to_json(&json!({"product": entries}));
            }
            Ok(prod.iter().map(|(m, v)| format!("{m}  {v}\n")).collect())
        }
    }
}

#[derive(Debug, Default, serde::Serialize)]
struct VerifyRow {
    space: String,
    products: usize,
    coefficients: usize,
    mismatches: usize,
    first_mismatch: Option<String>,
}

fn verify_space(space: &GrassmannianSpace, random: Option<usize>, rng: &mut ChaCha8Rng) -> Result<VerifyRow> {
    let loc = Localization::new(space);
    let mut jobs: Vec<(SchubertSymbol, usize, bool)> = (1..=space.p_max())
        .flat_map(|p| loc.symbols().iter().map(move |l| (l.clone(), p, false)))
        .collect();
    if space.lie_type == LieType::D && space.m < space.n {
        let d = space.n - space.m;
        jobs.extend(loc.symbols().iter().map(|l| (l.clone(), d, true)));
    }
    if let Some(k) = random {
        let mut picked: Vec<_> = (0..k).filter_map(|_| jobs.choose(rng).cloned()).collect();
        picked.sort();
        jobs = picked;
    }
    let mut row = VerifyRow { space: space.to_string(), ..Default::default() };
    for (lambda, p, tilde) in jobs {
        row.products += 1;
        let ours: BTreeMap<SchubertSymbol, Polynomial> = pieri::pieri_product_with(space, &lambda, p, tilde)?
            .into_iter()
            .map(|(k, c)| (k, c.value))
            .collect();
        let kappa = oracle_class(space, &lambda, p, tilde)?;
        let oracle: BTreeMap<SchubertSymbol, Polynomial> = loc
            .product(&lambda, &kappa)?
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        row.coefficients += oracle.len();
        for mu in ours.keys().chain(oracle.keys()).sorted().dedup() {
            let zero = Polynomial::zero(space.n);
            let (a, b) = (ours.get(mu).unwrap_or(&zero), oracle.get(mu).unwrap_or(&zero));
            if a != b {
                row.mismatches += 1;
                if row.first_mismatch.is_none() {
                    let label = if tilde { "~" } else { "" };
                    row.first_mismatch =
                        Some(format!("λ = {lambda}, p = {p}{label}, μ = {mu}: pieri {a}, oracle {b}"));
                }
            }
        }
    }
    Ok(row)
}

fn suite(name: &str) -> Result<Vec<GrassmannianSpace>> {
    match name {
        "small" => Ok(vec![
            GrassmannianSpace::new(LieType::A, 2, 5)?,
            GrassmannianSpace::new(LieType::C, 2, 3)?,
            GrassmannianSpace::new(LieType::B, 2, 3)?,
            GrassmannianSpace::new(LieType::D, 2, 4)?,
        ]),
        other => Err(Error::input(format!("unknown suite '{other}' (available: small)"))),
    }
}

fn run_verify(a: &VerifyArgs) -> Result<String> {
    let spaces = match (&a.suite, a.lie_type) {
        (Some(name), _) => suite(name)?,
        (None, Some(t)) => vec![GrassmannianSpace::new(t, a.m.unwrap_or_default(), a.n.unwrap_or_default())?],
        (None, None) => return Err(Error::input("give --suite or a space (--type, --n, --m)")),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let rows: Vec<VerifyRow> = spaces
        .iter()
        .map(|s| {
            let seed = rng.gen();
            verify_space(s, a.random, &mut ChaCha8Rng::seed_from_u64(seed))
        })
        .collect::<Result<_>>()?;
    let failures: usize = rows.iter().map(|r| r.mismatches).sum();
    let out = if a.json {
        to_json(&json!({"rows": rows, "mismatches": failures}))?
    } else {
        let mut out = format!("{:<10} {:>9} {:>13} {:>11}\n", "space", "products", "coefficients", "mismatches");
        for r in &rows {
            let _ = writeln!(out, "{:<10} {:>9} {:>13} {:>11}", r.space, r.products, r.coefficients, r.mismatches);
        }
        out
    };
    if failures > 0 {
        let first = rows.iter().find_map(|r| r.first_mismatch.as_ref().map(|m| format!("{}: {m}", r.space)));
        print!("{out}");
        return Err(Error::internal(format!(
            "{failures} oracle mismatches; first at {}",
            first.unwrap_or_default()
        )));
    }
    Ok(out)
}

fn run_diagram(a: &DiagramArgs) -> Result<String> {
    let space = a.space.space()?;
    let lambda = parse_symbol(&space, "λ", &a.lambda)?;
    let mu = parse_symbol(&space, "μ", &a.mu)?;
    let data = diagram::build_with_chat(&space, &lambda, &mu, a.p, a.chat)?;
    if a.json {
        to_json(&data)
    } else {
        Ok(diagram::render(&data))
    }
}

fn run_enumerate(a: &EnumerateArgs) -> Result<String> {
    let space = a.space.space()?;
    let symbols = schubert::enumerate_symbols(&space);
    let rows: Vec<(SchubertSymbol, usize, Option<u8>)> = symbols
        .into_iter()
        .map(|s| {
            let c = schubert::codim(&space, &s)?;
            let t = if space.lie_type == LieType::D { Some(schubert::type_of(&space, &s)?) } else { None };
            Ok((s, c, t))
        })
        .collect::<Result<_>>()?;
    if a.json {
        let v: Vec<_> = rows
            .iter()
            .map(|(s, c, t)| json!({"symbol": s, "codim": c, "type": t}))
            .collect();
        return to_json(&v);
    }
    Ok(rows
        .iter()
        .map(|(s, c, t)| match t {
            Some(t) => format!("{s}  codim {c}  type {t}\n"),
            None => format!("{s}  codim {c}\n"),
        })
        .collect())
}

pub fn dispatch(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Pieri(a) => run_pieri(a),
        Command::Expand(a) => run_expand(a),
        Command::Restrict(a) => run_restrict(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Verify(a) => run_verify(a),
        Command::Diagram(a) => run_diagram(a),
        Command::Enumerate(a) => run_enumerate(a),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: invalid input: --threads must be at least 1");
            return 1;
        }
        // a second initialization only happens in tests; keep the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match dispatch(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
