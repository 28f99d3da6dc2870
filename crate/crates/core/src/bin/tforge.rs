use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tforge::codes::{code_from_json, code_to_json, gbtp_to_code, optimality_cert_2q3, plotkin_check, stats, Code};
use tforge::constructions::{build_td, drtd_from_td};
use tforge::designs::{self, from_json, to_json, DesignGrid, VerifyReport};
use tforge::recipe::{recipe_from_json, run_recipe};
use tforge::search::{self, GbtpParams, StarterParams, DEFAULT_BUDGET};
use tforge::starters::{self, starter_from_json, starter_to_json, verify_starter};
use tforge::Error;

/// Build, verify and search for balanced tournament designs and the
/// equitable symbol weight codes they give.
#[derive(Parser)]
#[command(name = "tforge", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a design, starter or code file.
    Verify {
        path: String,
        #[arg(long, default_value = "auto")]
        kind: String,
        /// Also check a coloring with this many colors.
        #[arg(long)]
        colors: Option<u32>,
        /// With --colors, require witness points for every color.
        #[arg(long)]
        pi: bool,
    },
    /// Rewrite a design, starter or code file in canonical form.
    Fmt {
        path: String,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// Direct constructions.
    #[command(subcommand)]
    Construct(Construct),
    /// Run a derivation recipe.
    #[command(subcommand)]
    Derive(Derive),
    /// Code conversion, statistics and bounds.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Backtracking searches.
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Subcommand)]
enum Construct {
    /// GBTD_1(3,q) developed from the finite-field starter, q = 1 mod 6.
    FqGbtd {
        #[arg(long)]
        q: u64,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// TD(k,q) from the field of order q.
    Td {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// DRTD(k,q) from TD(k+2,q).
    Drtd {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        q: u64,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// FrGBTD(3,6^8) over Z_48.
    #[command(name = "frgbtd-6-8")]
    Frgbtd68 {
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// IGBTP_1({2,3*},33,16x29;9,4x5).
    #[command(name = "igbtp-33")]
    Igbtp33 {
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// Develop a starter file into its design.
    Develop {
        path: String,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
}

#[derive(Subcommand)]
enum Derive {
    /// Execute every step, verifying each output, and write them to a directory.
    Run {
        recipe: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// The code of a GBTP-like design: one word per point.
    ToCode {
        path: String,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// Length, size, distance, equity and error capability.
    Stats {
        path: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the generalized Plotkin bound for M words.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
        #[arg(long = "M", alias = "m-words")]
        m: u64,
    },
    /// Certificate that no ESWC(2m-3,2m-4)_m has 2m+2 words.
    Cert {
        #[arg(long)]
        m: u64,
    },
}

#[derive(Args)]
struct SearchOut {
    #[arg(long)]
    budget: Option<u64>,
    /// Where to write the found object.
    #[arg(short, long, default_value = "-")]
    out: String,
    /// Where to write the run manifest; stderr by default.
    #[arg(long)]
    manifest: Option<String>,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Largest equitable symbol weight code.
    Eswc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        o: SearchOut,
    },
    /// A GBTP or GBTD given by a parameter file.
    Design {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        o: SearchOut,
    },
    /// A starter of the given kind.
    Starter {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value_t = 0)]
        w: u32,
        #[arg(long)]
        special: bool,
        #[command(flatten)]
        o: SearchOut,
    },
    /// Color a design's blocks, row by row.
    Coloring {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        colors: u32,
        #[arg(long)]
        pi: bool,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
}

/// Print a line; a closed pipe downstream is not an error.
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

/// Semantic failures exit 1, everything else 2.
enum Fail {
    Semantic(String),
    Plumbing(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFound(s) => Fail::Semantic(format!("not found: {s}")),
            e => Fail::Plumbing(e),
        }
    }
}

type Res = Result<(), Fail>;

fn read_in(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn write_out(path: &str, text: &str) -> Result<(), Error> {
    if path == "-" {
        return match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        };
    }
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn budget(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("TFORGE_BUDGET") {
        Ok(s) => s.trim().parse().map_err(|_| Error::Format(format!("TFORGE_BUDGET={s} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

enum Doc {
    Design(DesignGrid),
    Starter(starters::Starter),
    Code(Code),
}

fn load_doc(path: &str) -> Result<Doc, Error> {
    let text = read_in(path)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    if v.get("starter_kind").is_some() {
        Ok(Doc::Starter(starter_from_json(&text)?))
    } else if v.get("words").is_some() {
        Ok(Doc::Code(code_from_json(&text)?))
    } else {
        Ok(Doc::Design(from_json(&text)?))
    }
}

fn load_design(path: &str) -> Result<DesignGrid, Error> {
    match load_doc(path)? {
        Doc::Design(g) => Ok(g),
        Doc::Starter(s) => starters::develop(&s),
        Doc::Code(_) => Err(Error::Format(format!("{path} holds a code, not a design"))),
    }
}

fn verify_design(g: &DesignGrid, kind: &str) -> Result<VerifyReport, Error> {
    Ok(match kind {
        "auto" => designs::verify_auto(g)?,
        "gbtp" => designs::verify_gbtp(g),
        "gbtd" => designs::verify_gbtd(g)?,
        "igbtp" => designs::verify_igbtp(g)?,
        "frgbtd" => designs::verify_frgbtd(g)?,
        "rbibd" => designs::verify_rbibd(g)?,
        "td" => designs::verify_td(g)?,
        "drtd" => designs::verify_drtd(g)?,
        "gdd" => designs::verify_gdd(g)?,
        "packing" => designs::verify_packing(g, false),
        "special" => designs::verify_special(g),
        other => return Err(Error::BadKind(other.to_string())),
    })
}

fn verify_code(c: &Code) -> Result<VerifyReport, Error> {
    let mut rep = VerifyReport::new();
    let equitable = tforge::codes::is_equitable(c);
    rep.add_flag("equitable", equitable, || "some word is not equitable".into());
    let distinct = {
        let mut w = c.words.clone();
        w.sort();
        w.dedup();
        w.len() == c.size()
    };
    rep.add_flag("distinct_words", distinct, || "repeated codeword".into());
    if c.size() >= 2 {
        let s = stats(c)?;
        rep.add_flag("plotkin", s.plotkin.holds, || format!("Plotkin sum {} exceeds {}", s.plotkin.lhs, s.plotkin.rhs));
    }
    Ok(rep)
}

fn report(rep: &VerifyReport) -> Res {
    say!("{rep}");
    if rep.pass {
        Ok(())
    } else {
        Err(Fail::Semantic("verification failed".into()))
    }
}

fn cmd_verify(path: &str, kind: &str, colors: Option<u32>, pi: bool) -> Res {
    let mut rep = match load_doc(path)? {
        Doc::Design(g) => {
            let mut rep = verify_design(&g, kind)?;
            if let Some(c) = colors {
                rep.merge(designs::verify_coloring(&g, c, pi)?);
            }
            rep
        }
        Doc::Starter(s) => {
            if !matches!(kind, "auto" | "starter") {
                return Err(Error::BadKind(format!("{kind} for a starter file")).into());
            }
            verify_starter(&s)
        }
        Doc::Code(c) => {
            if !matches!(kind, "auto" | "code") {
                return Err(Error::BadKind(format!("{kind} for a code file")).into());
            }
            verify_code(&c)?
        }
    };
    if rep.conditions.is_empty() {
        rep.add_flag("nonempty", false, || "nothing was checked".into());
    }
    report(&rep)
}

fn cmd_fmt(path: &str, out: &str) -> Res {
    let text = match load_doc(path)? {
        Doc::Design(g) => to_json(&g),
        Doc::Starter(s) => starter_to_json(&s),
        Doc::Code(c) => code_to_json(&c),
    };
    Ok(write_out(out, &text)?)
}

fn emit_design(g: &DesignGrid, out: &str) -> Res {
    Ok(write_out(out, &to_json(g))?)
}

fn cmd_construct(c: Construct) -> Res {
    match c {
        Construct::FqGbtd { q, out } => {
            let (s, _) = starters::build_fq_gbtd_starter(q)?;
            emit_design(&starters::develop_gbtd(&s)?, &out)
        }
        Construct::Td { k, q, out } => emit_design(&build_td(k, q)?, &out),
        Construct::Drtd { k, q, out } => emit_design(&drtd_from_td(&build_td(k + 2, q)?)?, &out),
        Construct::Frgbtd68 { out } => emit_design(&starters::build_frgbtd_6_8(), &out),
        Construct::Igbtp33 { out } => emit_design(&starters::build_igbtp_33(), &out),
        Construct::Develop { path, out } => match load_doc(&path)? {
            Doc::Starter(s) => emit_design(&starters::develop(&s)?, &out),
            _ => Err(Error::Format(format!("{path} is not a starter file")).into()),
        },
    }
}

fn cmd_derive(recipe: &Path, out_dir: &Path, b: Option<u64>) -> Res {
    let text = std::fs::read_to_string(recipe).map_err(|e| Error::Io(format!("{}: {e}", recipe.display())))?;
    let r = recipe_from_json(&text)?;
    let base = recipe.parent().unwrap_or(Path::new("."));
    let run = run_recipe(&r, base, budget(b)?)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::Io(format!("{}: {e}", out_dir.display())))?;
    for (name, g) in &run.outputs {
        let p = out_dir.join(format!("{name}.json"));
        std::fs::write(&p, to_json(g)).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    for s in &run.reports {
        let state = if s.pass { "ok".to_string() } else { format!("FAIL {}", s.failed.join(",")) };
        say!("{:<14} {:<10} {:<7} {:>4} points {:>3} x {:<3} {state}", s.out, s.op, s.kind, s.points, s.rows, s.cols);
    }
    let summary = serde_json::to_string_pretty(&json!({ "steps": run.reports, "pass": run.pass() })).expect("summary serializes");
    std::fs::write(out_dir.join("summary.json"), summary + "\n").map_err(|e| Error::Io(e.to_string()))?;
    if run.pass() {
        Ok(())
    } else {
        Err(Fail::Semantic("a step failed verification".into()))
    }
}

fn cmd_code(c: CodeCmd) -> Res {
    match c {
        CodeCmd::ToCode { path, out } => {
            let code = gbtp_to_code(&load_design(&path)?)?;
            Ok(write_out(&out, &code_to_json(&code))?)
        }
        CodeCmd::Stats { path, json } => {
            let code = match load_doc(&path)? {
                Doc::Code(c) => c,
                Doc::Design(g) => gbtp_to_code(&g)?,
                Doc::Starter(s) => gbtp_to_code(&starters::develop(&s)?)?,
            };
            let s = stats(&code)?;
            if json {
                say!("{}", serde_json::to_string_pretty(&s).expect("stats serialize"));
                return Ok(());
            }
            let eq = if s.equitable { "equitable" } else { "not-equitable" };
            say!("n={} q={} M={} d={} {eq} c={}", s.n, s.q, s.m, s.d, s.capability);
            let ec: Vec<String> = s.ec_table.iter().enumerate().map(|(i, x)| format!("{}:{x}", i + 1)).collect();
            say!("E_C {}", ec.join(" "));
            let p = &s.plotkin;
            let state = if p.equality { "equality" } else if p.holds { "holds" } else { "violated" };
            say!("plotkin lhs={} rhs={} {state}", p.lhs, p.rhs);
            Ok(())
        }
        CodeCmd::Bound { n, d, q, m } => {
            if n == 0 || q == 0 || d > n {
                return Err(Error::InconsistentParams(format!("n = {n}, d = {d}, q = {q}")).into());
            }
            let p = plotkin_check(n, d, q, m);
            let state = if !p.holds { "violated" } else if p.equality { "equality" } else { "holds" };
            say!("lhs={} rhs={} {state}", p.lhs, p.rhs);
            if p.holds {
                Ok(())
            } else {
                Err(Fail::Semantic(format!("no ESWC({n},{d})_{q} has {m} words")))
            }
        }
        CodeCmd::Cert { m } => {
            let c = optimality_cert_2q3(m)?;
            say!("{}", serde_json::to_string_pretty(&c).expect("certificate serializes"));
            if c.check.holds {
                Err(Fail::Semantic("Plotkin bound not violated".into()))
            } else {
                Ok(())
            }
        }
    }
}

fn manifest(o: &SearchOut, body: serde_json::Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(&body).expect("manifest serializes") + "\n";
    match &o.manifest {
        Some(p) => write_out(p, &text),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn cmd_search(c: SearchCmd) -> Res {
    match c {
        SearchCmd::Eswc { n, d, q, o } => {
            let b = budget(o.budget)?;
            let r = search::max_eswc(n, d, q, b)?;
            manifest(&o, json!({ "search": "eswc", "budget": b, "result": r }))?;
            Ok(write_out(&o.out, &code_to_json(&r.witness))?)
        }
        SearchCmd::Design { spec, o } => {
            let params: GbtpParams = serde_json::from_str(&read_in(&spec)?).map_err(Error::from)?;
            let b = budget(o.budget)?;
            let out = search::search_gbtp(&params, b)?;
            manifest(&o, json!({ "search": "design", "budget": b, "params": params, "found": out.value.is_some(), "exhausted": out.exhausted, "nodes": out.nodes }))?;
            let g = out.into_result("design")?;
            emit_design(&g, &o.out)
        }
        SearchCmd::Starter { kind, m, t, w, special, o } => {
            let m = m.or(t).ok_or_else(|| Error::Format("give --m (or --t for frgbtd)".into()))?;
            let params = StarterParams { m, w, special };
            let b = budget(o.budget)?;
            let out = search::search_starter(&kind, &params, b)?;
            manifest(&o, json!({ "search": "starter", "kind": kind, "budget": b, "params": params, "found": out.value.is_some(), "exhausted": out.exhausted, "nodes": out.nodes }))?;
            let s = out.into_result(&format!("{kind} starter"))?;
            Ok(write_out(&o.out, &starter_to_json(&s))?)
        }
        SearchCmd::Coloring { input, colors, pi, out } => {
            let g = load_design(&input)?;
            match search::search_coloring(&g, colors, pi)? {
                Some(c) => emit_design(&c, &out),
                None => Err(Fail::Semantic(format!("no {colors}-coloring found"))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Verify { path, kind, colors, pi } => cmd_verify(&path, &kind, colors, pi),
        Cmd::Fmt { path, out } => cmd_fmt(&path, &out),
        Cmd::Construct(c) => cmd_construct(c),
        Cmd::Derive(Derive::Run { recipe, out_dir, budget }) => cmd_derive(&recipe, &out_dir, budget),
        Cmd::Code(c) => cmd_code(c),
        Cmd::Search(c) => cmd_search(c),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Semantic(s)) => {
            eprintln!("{s}");
            ExitCode::from(1)
        }
        Err(Fail::Plumbing(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
