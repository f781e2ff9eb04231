//! The `eqloc` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for malformed input.

pub mod files;

use clap::{Parser, Subcommand, ValueEnum};
use eqloc_core::algebra::BigRational;
use eqloc_core::catalog::{self, CatalogItem};
use eqloc_core::hilbert::{
    check_rigidity, classify_action, generating_function, hilbert_both, hilbert_via_chern,
    hilbert_via_index, lowdim_report, root_analysis, solve_eta, ClassifyInput, HilbertPoly, RootReport,
    VerdictKind,
};
use eqloc_core::localization::{atiyah_segal_index, chern_number, BundleRestriction, ChernPartition};
use eqloc_core::report::Report;
use eqloc_core::space::{validate, S1Space};
use eqloc_core::toric::{
    circle_restrict, delzant_validate, ehrhart_polynomial, ehrhart_vs_hilbert, reflexive_dilate,
};
use serde_json::{json, Value};

use files::{BundleFile, FileError, HilbertFile, PolytopeFile, SpaceFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "eqloc", version, about = "Fixed-point computations for circle actions")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Index,
    Chern,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Consistency checks on the fixed point data.
    Validate { path: String },
    /// A Chern number by localization.
    Chern {
        path: String,
        /// Parts of the monomial, e.g. 1,1 for c1^2.
        #[arg(long, value_delimiter = ',', required = true)]
        partition: Vec<usize>,
    },
    /// Equivariant index of a line bundle.
    Index {
        path: String,
        /// TOML file with a [restriction] table.
        #[arg(long, conflicts_with = "eta_multiple")]
        bundle: Option<String>,
        /// Use h times the bundle eta with c1 = k0 eta.
        #[arg(long, allow_hyphen_values = true)]
        eta_multiple: Option<i64>,
        /// Index used to solve for eta when the file has none.
        #[arg(long)]
        k0: Option<u64>,
    },
    /// Hilbert polynomial with rigidity, generating function and roots.
    Hilbert {
        path: String,
        #[arg(long)]
        k0: Option<u64>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Rigidity checks on a Hilbert polynomial given directly.
    Rigidity {
        /// TOML file with name, n, k0, n0 and ascending coefficients.
        path: String,
    },
    /// Hamiltonian or not, from n, k0 and Chern numbers.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k0: u64,
        #[arg(long, allow_hyphen_values = true)]
        c1n: String,
        #[arg(long, allow_hyphen_values = true)]
        c1n2c2: Option<String>,
        #[arg(long = "N0")]
        n0: Option<u64>,
    },
    /// Ehrhart polynomial, reflexive dilate and the circle restriction.
    Ehrhart {
        path: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Option<Vec<i64>>,
        #[arg(long)]
        compare_hilbert: bool,
    },
    /// Chern number identities in complex dimensions 2, 3 and 4.
    Lowdim {
        path: String,
        #[arg(long)]
        k0: Option<u64>,
    },
    /// Builtin examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    /// Print an entry as a space or Hilbert polynomial file.
    Emit {
        key: String,
        #[arg(allow_hyphen_values = true)]
        params: Vec<i64>,
    },
    Selftest,
}

/// What a command prints and how it exits.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(code: i32, text: String, json: Value) -> Self {
        Outcome { code, text, json }
    }

    fn from_report(r: &Report, extra_text: String, extra: Value) -> Self {
        let code = if r.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
        let mut text = extra_text;
        text.push_str(&r.to_string());
        let mut j = extra;
        j["report"] = report_json(r);
        j["passed"] = json!(r.passed());
        Outcome::new(code, text, j)
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("json");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn fail(e: impl Into<Failure>) -> Outcome {
    let f: Failure = e.into();
    let code = if f.input { EXIT_INPUT } else { EXIT_CHECK_FAILED };
    Outcome::new(
        code,
        format!("error: {}\n", f.message),
        json!({"error": f.message, "input_error": f.input}),
    )
}

struct Failure {
    message: String,
    input: bool,
}

impl From<eqloc_core::Error> for Failure {
    fn from(e: eqloc_core::Error) -> Self {
        Failure {
            input: e.is_input_error(),
            message: e.to_string(),
        }
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Invalid(e) => e.into(),
            e => Failure {
                message: e.to_string(),
                input: true,
            },
        }
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure {
        message: msg.into(),
        input: true,
    }
}

fn load_space(path: &str) -> Result<S1Space, Failure> {
    let f: SpaceFile = files::read(path)?;
    Ok(f.to_space()?)
}

fn index_for(space: &S1Space, k0: Option<u64>) -> Result<u64, Failure> {
    k0.or(space.index_k0())
        .ok_or_else(|| input("no index given: pass --k0 or set index in the file"))
}

/// eta from the file when present, otherwise solved from `c1 = k0 eta + c`.
fn eta_for(space: &S1Space, k0: Option<u64>) -> Result<BundleRestriction, Failure> {
    if let Some(e) = space.eta_restriction() {
        return Ok(e);
    }
    let k0 = index_for(space, k0)?;
    Ok(solve_eta(space, k0)?.1)
}

fn root_json(rr: &RootReport) -> Value {
    let roots: Vec<Value> = rr
        .residual_roots
        .iter()
        .map(|r| {
            json!({
                "value": r.exact_form.clone().unwrap_or_else(|| format!("approx {}", approx(r.re, r.im))),
                "multiplicity": r.multiplicity,
                "exact": r.exact,
            })
        })
        .collect();
    json!({
        "integer_roots": rr.integer_roots,
        "half_root_multiplicity": rr.half_root_mult,
        "other_rational_roots": rr.other_rational_roots,
        "residual": rr.residual,
        "residual_roots": roots,
        "on_cross": rr.on_cross,
        "in_strip": rr.in_strip,
        "in_t_family": rr.in_t_family,
        "cassini_checked": rr.cassini_checked,
    })
}

fn approx(re: f64, im: f64) -> String {
    if im.abs() < 1e-12 {
        format!("{re:.6}")
    } else {
        format!("{re:.6} {} {:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

fn root_text(rr: &RootReport) -> String {
    let mut s = String::new();
    let ints: Vec<String> = rr.integer_roots.iter().map(|(r, m)| format!("{r} (x{m})")).collect();
    s.push_str(&format!("integer roots: {}\n", if ints.is_empty() { "none".into() } else { ints.join(", ") }));
    if rr.half_root_mult > 0 {
        s.push_str(&format!("multiplicity of -k0/2: {}\n", rr.half_root_mult));
    }
    for (r, m) in &rr.other_rational_roots {
        s.push_str(&format!("rational root {r} (x{m})\n"));
    }
    for r in &rr.residual_roots {
        let v = r.exact_form.clone().unwrap_or_else(|| format!("~ {} (approximate)", approx(r.re, r.im)));
        s.push_str(&format!("root {v} (x{})\n", r.multiplicity));
    }
    s.push_str(&format!(
        "on the cross: {}, in the strip: {}, in the T family: {}\n",
        rr.on_cross, rr.in_strip, rr.in_t_family
    ));
    s
}

/// Invariants, rigidity, generating function and roots of `h`.
fn hilbert_report(h: &HilbertPoly) -> (Report, String, Value) {
    let mut r = Report::new(format!("Hilbert polynomial, n = {}, k0 = {}, N0 = {}", h.n, h.k0, h.n0));
    let mut text = format!("H(z) = {}\n", h.render());
    text.push_str(&format!("factored: {}\n", h.render_factored()));
    let mut rig = check_rigidity(h);
    rig.title = "rigidity".into();
    r.extend(rig);
    let g = generating_function(h);
    text.push_str(&format!("U(t) = {}\n", g.u.render_ascending("t")));
    let b = g.b_parameter().filter(|_| h.k0 + 1 == h.n as u64 || h.k0 + 2 == h.n as u64);
    if let Some(b) = &b {
        text.push_str(&format!("b = {b}\n"));
    }
    let mut gc = g.checks.clone();
    gc.title = "generating function".into();
    r.extend(gc);
    let mut j = json!({
        "hilbert": h.coeffs,
        "factored": h.render_factored(),
        "n": h.n,
        "k0": h.k0,
        "n0": h.n0,
        "c1n": h.c1n().to_string(),
        "c1n2c2": h.c1n2c2().map(|c| c.to_string()),
        "u": g.u,
        "b": b.map(|b| b.to_string()),
    });
    if !h.is_zero() {
        match root_analysis(h) {
            Ok(rr) => {
                text.push_str(&root_text(&rr));
                j["roots"] = root_json(&rr);
                let mut rc = rr.checks.clone();
                rc.title = "roots".into();
                r.extend(rc);
            }
            Err(e) => {
                r.check("root analysis", false, e.to_string());
            }
        }
    }
    (r, text, j)
}

fn parse_rational(s: &str, what: &str) -> Result<BigRational, Failure> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| input(format!("{what}: cannot parse {s:?} as a fraction: {e}")))
}

fn cmd_validate(path: &str) -> Result<Outcome, Failure> {
    let s = load_space(path)?;
    let v = validate(&s);
    let text = format!("verdict: {}\n", v.verdict());
    Ok(Outcome::from_report(
        &v.report,
        text,
        json!({"verdict": v.verdict(), "N": v.big_n}),
    ))
}

fn cmd_chern(path: &str, partition: &[usize]) -> Result<Outcome, Failure> {
    let s = load_space(path)?;
    let p = ChernPartition::new(partition.to_vec(), s.n())?;
    let v = chern_number(&s, &p)?;
    Ok(Outcome::new(
        EXIT_OK,
        format!("{p} = {v}\n"),
        json!({"partition": p.to_string(), "value": v.to_string()}),
    ))
}

fn cmd_index(path: &str, bundle: Option<&str>, eta_multiple: Option<i64>, k0: Option<u64>) -> Result<Outcome, Failure> {
    let s = load_space(path)?;
    let b = match (bundle, eta_multiple) {
        (Some(f), None) => {
            let bf: BundleFile = files::read(f)?;
            bf.to_bundle(&s)?
        }
        (None, Some(h)) => eta_for(&s, k0)?.scaled(h),
        (None, None) => return Err(input("pass --bundle FILE or --eta-multiple H")),
        (Some(_), Some(_)) => return Err(input("--bundle and --eta-multiple are exclusive")),
    };
    let ind = atiyah_segal_index(&s, &b)?;
    Ok(Outcome::new(
        EXIT_OK,
        format!("{ind}\n"),
        json!({"index": ind.to_string(), "terms": ind}),
    ))
}

fn cmd_hilbert(path: &str, k0: Option<u64>, method: Method) -> Result<Outcome, Failure> {
    let s = load_space(path)?;
    let k0 = index_for(&s, k0)?;
    let h = match method {
        Method::Index => hilbert_via_index(&s, k0)?,
        Method::Chern => {
            // the coefficients alone do not see an inconsistent k0
            solve_eta(&s, k0)?;
            hilbert_via_chern(&s, k0)?
        }
        Method::Both => hilbert_both(&s, k0)?,
    };
    let (r, text, j) = hilbert_report(&h);
    Ok(Outcome::from_report(&r, text, j))
}

fn cmd_rigidity(path: &str) -> Result<Outcome, Failure> {
    let f: HilbertFile = files::read(path)?;
    let h = f.to_hilbert()?;
    let (r, text, j) = hilbert_report(&h);
    Ok(Outcome::from_report(&r, text, j))
}

fn cmd_classify(n: usize, k0: u64, c1n: &str, c1n2c2: Option<&str>, n0: Option<u64>) -> Result<Outcome, Failure> {
    if n == 0 || k0 == 0 {
        return Err(input("n and k0 must be positive"));
    }
    let inp = ClassifyInput {
        n,
        k0,
        c1n: Some(parse_rational(c1n, "--c1n")?),
        c1n2c2: c1n2c2.map(|s| parse_rational(s, "--c1n2c2")).transpose()?,
        n0,
        ..Default::default()
    };
    let v = classify_action(&inp);
    let mut text = format!("{}\n", v.kind);
    for r in &v.reasons {
        text.push_str(&format!("  {r}\n"));
    }
    let code = if v.kind == VerdictKind::Inconsistent { EXIT_CHECK_FAILED } else { EXIT_OK };
    Ok(Outcome::new(code, text, json!({"verdict": v.kind.to_string(), "reasons": v.reasons})))
}

fn cmd_ehrhart(path: &str, xi: Option<&[i64]>, compare: bool) -> Result<Outcome, Failure> {
    let f: PolytopeFile = files::read(path)?;
    let p = f.to_polytope()?;
    let e = ehrhart_polynomial(&p)?;
    let mut text = format!("Ehrhart polynomial: {}\nfactored: {}\n", e.render("z"), e.render_factored("z"));
    let mut j = json!({"ehrhart": e, "factored": e.render_factored("z")});
    match reflexive_dilate(&p)? {
        Some(rd) => {
            text.push_str(&format!(
                "reflexive dilate: k = {}, translation {:?}, Hibi reciprocity {}\n",
                rd.k, rd.translation, rd.hibi_reciprocity
            ));
            j["reflexive_dilate"] = serde_json::to_value(&rd).expect("json");
        }
        None => {
            text.push_str("no reflexive dilate with k <= d+1\n");
            j["reflexive_dilate"] = Value::Null;
        }
    }
    let Some(xi) = xi else {
        if compare {
            return Err(input("--compare-hilbert needs --xi"));
        }
        return Ok(Outcome::new(EXIT_OK, text, j));
    };
    let d = delzant_validate(&p)?;
    let s = circle_restrict(&d, xi, "toric")?;
    text.push_str("fixed points:\n");
    for pt in s.points() {
        text.push_str(&format!("  {}: {:?}\n", pt.id, pt.weights));
    }
    j["fixed_points"] = serde_json::to_value(s.points()).expect("json");
    if !compare {
        return Ok(Outcome::new(EXIT_OK, text, j));
    }
    let r = ehrhart_vs_hilbert(&d, xi)?;
    Ok(Outcome::from_report(&r, text, j))
}

fn cmd_lowdim(path: &str, k0: Option<u64>) -> Result<Outcome, Failure> {
    let s = load_space(path)?;
    let r = lowdim_report(&s, k0.or(s.index_k0()));
    Ok(Outcome::from_report(&r, String::new(), json!({})))
}

/// The file text for a catalog entry.
pub fn emit_entry(key: &str, params: &[i64]) -> eqloc_core::Result<String> {
    Ok(match catalog::catalog_emit(key, params)? {
        CatalogItem::Space(e) => {
            let mut s = e.space.clone();
            if s.eta().is_none() {
                let eta = catalog::eta_for(&s, e.declared.k0)?.to_map(&s);
                s = s.with_eta(Some(eta))?;
            }
            files::emit(&SpaceFile::from_space(&s))
        }
        CatalogItem::Fixture(f) => files::emit(&HilbertFile::from_hilbert(&f.key, &f.hilbert)),
    })
}

fn cmd_catalog(action: &CatalogAction) -> Result<Outcome, Failure> {
    match action {
        CatalogAction::List => {
            let mut text = String::new();
            for e in catalog::list() {
                text.push_str(&format!("{:<18} {:<8} {:<20} {}\n", e.key, e.kind, e.params, e.about));
            }
            Ok(Outcome::new(EXIT_OK, text, serde_json::to_value(catalog::list()).expect("json")))
        }
        CatalogAction::Emit { key, params } => {
            let text = emit_entry(key, params)?;
            Ok(Outcome::new(EXIT_OK, text.clone(), json!({"key": key, "document": text})))
        }
        CatalogAction::Selftest => {
            let r = catalog::catalog_selftest();
            Ok(Outcome::from_report(&r, String::new(), json!({})))
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::Validate { path } => cmd_validate(path),
        Command::Chern { path, partition } => cmd_chern(path, partition),
        Command::Index {
            path,
            bundle,
            eta_multiple,
            k0,
        } => cmd_index(path, bundle.as_deref(), *eta_multiple, *k0),
        Command::Hilbert { path, k0, method } => cmd_hilbert(path, *k0, *method),
        Command::Rigidity { path } => cmd_rigidity(path),
        Command::Classify { n, k0, c1n, c1n2c2, n0 } => cmd_classify(*n, *k0, c1n, c1n2c2.as_deref(), *n0),
        Command::Ehrhart {
            path,
            xi,
            compare_hilbert,
        } => cmd_ehrhart(path, xi.as_deref(), *compare_hilbert),
        Command::Lowdim { path, k0 } => cmd_lowdim(path, *k0),
        Command::Catalog { action } => cmd_catalog(action),
    };
    res.unwrap_or_else(fail)
}

/// Parse arguments and run; returns the exit code and what to print on stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let msg = e.render().to_string();
            return if code == EXIT_OK { (code, msg, String::new()) } else { (code, String::new(), msg) };
        }
    };
    let out = execute(&cli);
    let body = out.render(cli.json);
    if out.json.get("error").is_some() && !cli.json {
        (out.code, String::new(), body)
    } else {
        (out.code, body, String::new())
    }
}
