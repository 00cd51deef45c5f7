//! Command-line front end with an on-disk result cache.

use crate::bredon::{
    bockstein_les, chart, dual_cell, dual_matches, euler_sequences_check, render_ascii, render_svg, Engine, SesResult, Window,
};
use crate::mackey::{box_product, classify, construct_named, dual_free, dual_tors, internal_hom, isomorphic, MackeyFunctor};
use crate::slice::analysis::{self, ko_group, localize_chart, Colimit};
use crate::slice::{KRParams, SSPage, SliceSS};
use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Bumped whenever an emitted document changes shape.
pub const SCHEMA: &str = "z2mackey-doc-1";
pub const CACHE_ENV: &str = "Z2MACKEY_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "z2mackey", version, about = "Mackey functors, Bredon charts and slice spectral sequences for C₂")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
    /// cache directory; falls back to $Z2MACKEY_CACHE_DIR, no caching if neither is set
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// RO(C₂)-graded chart of HM
    Chart {
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long, default_value = "-8..8,-8..8", allow_hyphen_values = true)]
        window: String,
    },
    /// Box product and internal hom of two named functors
    Box {
        #[arg(long, num_args = 1)]
        coeff: Vec<String>,
    },
    /// ∇ and ∇_tors of a named functor
    Dual {
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Pages of the slice spectral sequence of Kℝ(n)
    Ss {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        connective: bool,
        #[arg(long, default_value = "-8..16", allow_hyphen_values = true)]
        stems: String,
        /// stems and α-degrees as `mmin..mmax,qmin..qmax`; overrides --stems
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Integer stems of the fixed points
    Ko {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        connective: bool,
        #[arg(long, default_value = "-8..16", allow_hyphen_values = true)]
        stems: String,
    },
    /// Every report-valued check on charts and spectral sequences
    Verify {
        #[arg(long, default_value = "-8..8,-8..8", allow_hyphen_values = true)]
        window: String,
    },
}

pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

pub fn parse_window(s: &str) -> Result<Window, String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected pmin..pmax,qmin..qmax, got {s:?}"))?;
    let (p, q) = (parse_range(p)?, parse_range(q)?);
    Ok(Window::new(p.0, p.1, q.0, q.1))
}

fn coefficient(name: &str) -> Result<MackeyFunctor, String> {
    construct_named(name).map_err(|e| e.to_string())
}

struct Outcome {
    code: i32,
    doc: String,
}

impl Outcome {
    fn ok(doc: String) -> Self {
        Outcome { code: EXIT_PASS, doc }
    }
}

fn json_doc(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn validate(cli: &Cli) -> Result<(), String> {
    match &cli.cmd {
        Command::Chart { coeff, window } => {
            coefficient(coeff)?;
            parse_window(window)?;
        }
        Command::Box { coeff } => {
            if coeff.len() != 2 {
                return Err("box takes exactly two --coeff values".into());
            }
            for c in coeff {
                coefficient(c)?;
            }
        }
        Command::Dual { coeff } => {
            coefficient(coeff)?;
        }
        Command::Ss { n, stems, window, .. } => {
            check_n(*n)?;
            match window {
                Some(w) => drop(parse_window(w)?),
                None => drop(parse_range(stems)?),
            }
        }
        Command::Ko { n, stems, .. } => {
            check_n(*n)?;
            parse_range(stems)?;
        }
        Command::Verify { window } => {
            parse_window(window)?;
        }
    }
    if cli.format == Format::Svg && !matches!(cli.cmd, Command::Chart { .. }) {
        return Err("svg output is only available for chart".into());
    }
    Ok(())
}

fn check_n(n: u32) -> Result<(), String> {
    if (1..=6).contains(&n) {
        Ok(())
    } else {
        Err(format!("height {n} outside 1..6"))
    }
}

fn run_chart(coeff: &str, w: Window, fmt: Format) -> Outcome {
    let m = coefficient(coeff).expect("validated");
    let e = Engine::new(&m);
    let ch = chart(&e, coeff, w);
    Outcome::ok(match fmt {
        Format::Ascii => render_ascii(&ch),
        Format::Json => json_doc(ch.to_json()),
        Format::Svg => render_svg(&ch),
    })
}

fn named_json(m: &MackeyFunctor) -> serde_json::Value {
    let c = classify(m);
    serde_json::json!({"name": c.symbol(), "aliases": c.all(), "mackey": m.to_json()})
}

fn run_box(a: &str, b: &str, fmt: Format) -> Outcome {
    let (m, n) = (coefficient(a).expect("validated"), coefficient(b).expect("validated"));
    let bx = box_product(&m, &n);
    let hom = internal_hom(&m, &n);
    Outcome::ok(match fmt {
        Format::Json => json_doc(serde_json::json!({"left": named_json(&m), "right": named_json(&n), "box": named_json(&bx), "hom": named_json(&hom)})),
        _ => format!(
            "{} ⊠ {} = {}\nHom({}, {}) = {}\n",
            classify(&m).symbol(),
            classify(&n).symbol(),
            classify(&bx).symbol(),
            classify(&m).symbol(),
            classify(&n).symbol(),
            classify(&hom).symbol()
        ),
    })
}

fn run_dual(a: &str, fmt: Format) -> Outcome {
    let m = coefficient(a).expect("validated");
    let (df, dt) = (dual_free(&m), dual_tors(&m));
    Outcome::ok(match fmt {
        Format::Json => json_doc(serde_json::json!({"functor": named_json(&m), "dual": named_json(&df), "dual_tors": named_json(&dt)})),
        _ => format!("∇{0} = {1}\n∇_tors {0} = {2}\n", classify(&m).symbol(), classify(&df).symbol(), classify(&dt).symbol()),
    })
}

fn page_ascii(page: &SSPage, title: &str, out: &mut String) {
    let _ = writeln!(out, "{title}");
    for e in page.entries.values() {
        let name = match &e.mackey {
            Some(m) => classify(m).symbol().to_string(),
            None => "undetermined".into(),
        };
        let _ = writeln!(out, "  s={:<4} V={}{:+}α  stem={:<4} v^{:<3} {}", e.s, e.p, e.q, e.stem, e.tag, name);
    }
    for d in &page.differentials {
        let rule = d.rule.map(|r| r.to_string()).unwrap_or_else(|| "undetermined".into());
        let _ = writeln!(out, "  d: ({}, {}{:+}α) -> ({}, {}{:+}α)  [{}]", d.from.0, d.from.1, d.from.2, d.to.0, d.to.1, d.to.2, rule);
    }
}

fn run_ss(n: u32, connective: bool, stems: (i64, i64), alpha: (i64, i64), fmt: Format) -> Outcome {
    let mut p = KRParams::new(n).with_stems(stems.0, stems.1).with_alpha(alpha.0, alpha.1);
    if connective {
        p = p.connective();
    }
    let e = Engine::new(&construct_named("Z").expect("ℤ̲"));
    let ss = SliceSS::new(&e, p);
    let mut e2 = ss.e2();
    ss.attach_differential(&mut e2);
    let next = ss.turn_page();
    let inf = next.as_ref().ok().map(|_| ss.e_infinity());
    let err = match (&next, &inf) {
        (Err(x), _) | (Ok(_), Some(Err(x))) => Some(x.to_string()),
        _ => None,
    };
    let code = if err.is_some() { EXIT_INCONCLUSIVE } else { EXIT_PASS };
    let doc = match fmt {
        Format::Json => {
            let mut pages = vec![e2.to_json()];
            if let Ok(pg) = &next {
                pages.push(pg.to_json());
            }
            if let Some(Ok(pg)) = &inf {
                let mut j = pg.to_json();
                j["r"] = serde_json::json!("infinity");
                pages.push(j);
            }
            json_doc(serde_json::json!({"n": n, "periodic": !connective, "pages": pages, "error": err}))
        }
        _ => {
            let mut out = String::new();
            page_ascii(&e2, &format!("E_{} (d_{} attached)", 2, ss.r()), &mut out);
            if let Ok(pg) = &next {
                page_ascii(pg, &format!("E_{}", pg.r), &mut out);
            }
            if let Some(Ok(pg)) = &inf {
                let ok = pg.certificates.iter().filter(|c| c.certified).count();
                page_ascii(pg, &format!("E_∞ ({ok} positions certified)"), &mut out);
            }
            if let Some(x) = &err {
                let _ = writeln!(out, "inconclusive: {x}");
            }
            out
        }
    };
    Outcome { code, doc }
}

fn run_ko(n: u32, connective: bool, stems: (i64, i64), fmt: Format) -> Outcome {
    let e = Engine::new(&construct_named("Z").expect("ℤ̲"));
    let st = match analysis::integer_stems(&e, n, !connective, stems.0, stems.1) {
        Ok(s) => s,
        Err(x) => return Outcome { code: EXIT_INCONCLUSIVE, doc: format!("inconclusive: {x}\n") },
    };
    let oracle = n == 1 && !connective;
    let mut code = EXIT_PASS;
    let mut rows = Vec::new();
    let mut out = String::new();
    let _ = writeln!(out, "{:>5}  {:<24} {}", "stem", "E_∞ (s: group)", if oracle { "candidates / KO" } else { "candidates" });
    for s in &st {
        let graded: Vec<String> = s.pieces.iter().map(|(f, g)| format!("{f}: {g}")).collect();
        let cands: Vec<String> = s.candidates().iter().map(|g| g.to_string()).collect();
        let ko = oracle.then(|| ko_group(s.m));
        let fits = ko.as_ref().and_then(|g| s.compatible_with(g));
        if fits == Some(false) {
            code = EXIT_FAIL;
        }
        let graded_s = if graded.is_empty() { "0".to_string() } else { graded.join(", ") };
        let mut tail = cands.join(" | ");
        if let Some(g) = &ko {
            let _ = write!(tail, "  / {g} {}", if fits == Some(true) { "ok" } else { "MISMATCH" });
        }
        let _ = writeln!(out, "{:>5}  {:<24} {}", s.m, graded_s, tail);
        rows.push(serde_json::json!({
            "m": s.m,
            "graded": s.pieces.iter().map(|(f, g)| serde_json::json!({"s": f, "group": g.to_json()})).collect::<Vec<_>>(),
            "candidates": cands,
            "ko": ko.map(|g| g.to_string()),
            "compatible": fits,
        }));
    }
    let doc = match fmt {
        Format::Json => json_doc(serde_json::json!({"n": n, "periodic": !connective, "stems": rows})),
        _ => out,
    };
    Outcome { code, doc }
}

/// One line of the verify report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub status: i32,
    pub detail: String,
}

fn line(name: &str, ok: bool, detail: String) -> CheckLine {
    CheckLine { name: name.into(), status: if ok { EXIT_PASS } else { EXIT_FAIL }, detail }
}

/// Report-valued checks of the chart and slice layers on one window.
pub fn verify_checks(w: Window) -> Vec<CheckLine> {
    let z = Engine::new(&construct_named("Z").expect("ℤ̲"));
    let f = Engine::new(&construct_named("F2").expect("𝔽̲"));
    let mut out = Vec::new();

    for (name, e) in [("Z", &z), ("F2", &f)] {
        let bad = euler_sequences_check(e, w).iter().filter(|c| !c.holds()).count();
        out.push(line(&format!("euler sequences H{name}"), bad == 0, format!("{bad} failing degrees")));
    }
    let bad = bockstein_les(&z, &f, w).iter().filter(|c| !c.holds()).count();
    out.push(line("bockstein long exact sequence", bad == 0, format!("{bad} failing degrees")));

    let (mut fails, mut inc) = (0, 0);
    for d in w.degrees() {
        match dual_matches(&dual_cell(&z, d), &z.value((d.0 - 2, d.1 + 2))) {
            SesResult::Holds => {}
            SesResult::Fails => fails += 1,
            SesResult::Inconclusive => inc += 1,
        }
    }
    out.push(CheckLine {
        name: "HZ self-duality extension".into(),
        status: if fails > 0 { EXIT_FAIL } else if inc > 0 { EXIT_INCONCLUSIVE } else { EXIT_PASS },
        detail: format!("{fails} failing, {inc} undecided"),
    });
    let bad = w
        .degrees()
        .into_iter()
        .filter(|&(p, q)| !isomorphic(&f.value((p, q)), &dual_tors(&f.value((-p - 2, 2 - q)))))
        .count();
    out.push(line("HF2 self-duality", bad == 0, format!("{bad} failing degrees")));

    for n in [1u32, 2] {
        let p = KRParams::new(n).with_stems(-8, 16).with_alpha(-16, 16);
        let ss = SliceSS::new(&z, p);
        let d = ss.differential();
        let ids = d.verify_identities().len() + d.conflicts().len();
        let sq = d.square_nonzero().len();
        out.push(line(&format!("n={n} differential identities and d∘d = 0"), ids == 0 && sq == 0, format!("{ids} identity failures, {sq} nonzero squares")));
        match ss.e_infinity() {
            Ok(pg) => out.push(line(&format!("n={n} degeneration certificates"), true, format!("{} positions", pg.certificates.len()))),
            Err(x) => out.push(CheckLine { name: format!("n={n} degeneration certificates"), status: EXIT_INCONCLUSIVE, detail: x.to_string() }),
        }
    }
    for n in [1u32, 2, 3] {
        let p = KRParams::new(n).with_stems(-8, 8).with_alpha(-8, 8);
        match analysis::anderson_check(&z, &p) {
            Ok(r) => out.push(line(
                &format!("n={n} Anderson duality"),
                r.holds(),
                format!("{} E2 cells, shifts {:?}", r.e2_cells, r.shifts),
            )),
            Err(x) => out.push(CheckLine { name: format!("n={n} Anderson duality"), status: EXIT_INCONCLUSIVE, detail: x.to_string() }),
        }
    }
    for n in [1u32, 2] {
        let p = KRParams::new(n).with_stems(-8, 8).with_alpha(-48, 8);
        let ss = SliceSS::new(&z, p);
        let loc = analysis::geometric_localize(&ss);
        let nonzero = loc.values().filter(|c| matches!(c, Colimit::Stable(g) if !g.is_trivial())).count();
        let open = loc.values().filter(|c| **c == Colimit::Inconclusive).count();
        out.push(line(&format!("n={n} a-localized E∞ vanishes"), nonzero == 0, format!("{} towers, {open} not stabilized", loc.len())));
    }
    let ctrl = (w.pmin.max(0)..=w.pmax).any(|p| matches!(localize_chart(&f, p, w.qmax, w.qmin - 8), Colimit::Stable(g) if !g.is_trivial()));
    out.push(line("a-localized HF2 is nonzero", ctrl, String::new()));
    out
}


fn run_verify(w: Window, fmt: Format) -> Outcome {
    let lines = verify_checks(w);
    let code = if lines.iter().any(|l| l.status == EXIT_FAIL) {
        EXIT_FAIL
    } else if lines.iter().any(|l| l.status == EXIT_INCONCLUSIVE) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_PASS
    };
    let word = |s: i32| match s {
        EXIT_PASS => "PASS",
        EXIT_FAIL => "FAIL",
        _ => "INCONCLUSIVE",
    };
    let doc = match fmt {
        Format::Json => json_doc(serde_json::json!({
            "status": word(code),
            "checks": lines.iter().map(|l| serde_json::json!({"name": l.name, "status": word(l.status), "detail": l.detail})).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = String::new();
            for l in &lines {
                let _ = writeln!(s, "{} {} ({})", word(l.status), l.name, l.detail);
            }
            s
        }
    };
    Outcome { code, doc }
}

fn execute(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.cmd {
        Command::Chart { coeff, window } => run_chart(coeff, parse_window(window).expect("validated"), fmt),
        Command::Box { coeff } => run_box(&coeff[0], &coeff[1], fmt),
        Command::Dual { coeff } => run_dual(coeff, fmt),
        Command::Ss { n, connective, stems, window } => {
            let (st, al) = match window {
                Some(w) => {
                    let w = parse_window(w).expect("validated");
                    ((w.pmin, w.pmax), (w.qmin, w.qmax))
                }
                None => (parse_range(stems).expect("validated"), KRParams::new(*n).alpha),
            };
            run_ss(*n, *connective, st, al, fmt)
        }
        Command::Ko { n, connective, stems } => run_ko(*n, *connective, parse_range(stems).expect("validated"), fmt),
        Command::Verify { window } => run_verify(parse_window(window).expect("validated"), fmt),
    }
}

/// Cache key over the parsed command, output format, crate version and schema.
pub fn cache_key(cli: &Cli) -> String {
    let material = format!("{:?}|{:?}|{}|{}", cli.cmd, cli.format, env!("CARGO_PKG_VERSION"), SCHEMA);
    Sha256::digest(material.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_read(dir: &Path, key: &str) -> Option<Outcome> {
    let raw = std::fs::read_to_string(dir.join(format!("{key}.out"))).ok()?;
    let (code, doc) = raw.split_once('\n')?;
    Some(Outcome { code: code.parse().ok()?, doc: doc.to_string() })
}

fn cache_write(dir: &Path, key: &str, o: &Outcome) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    write!(tmp, "{}\n{}", o.code, o.doc)?;
    tmp.persist(dir.join(format!("{key}.out"))).map_err(|e| e.error)?;
    Ok(())
}

/// Parse, validate, consult the cache, compute. Returns the exit code and the document.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return (code, e.render().to_string());
        }
    };
    if let Err(msg) = validate(&cli) {
        return (EXIT_USAGE, format!("error: {msg}\n"));
    }
    let dir = cli.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let key = cache_key(&cli);
    if let Some(d) = &dir {
        if let Some(o) = cache_read(d, &key) {
            return (o.code, o.doc);
        }
    }
    let o = execute(&cli);
    if let Some(d) = &dir {
        if o.code != EXIT_USAGE {
            // a failed cache write only costs a recomputation next time
            let _ = cache_write(d, &key, &o);
        }
    }
    (o.code, o.doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_windows() {
        assert_eq!(parse_range("-8..16"), Ok((-8, 16)));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("x..1").is_err());
        let w = parse_window("-2..3,-4..5").unwrap();
        assert_eq!((w.pmin, w.pmax, w.qmin, w.qmax), (-2, 3, -4, 5));
        assert!(parse_window("-2..3").is_err());
    }

    #[test]
    fn usage_errors_have_their_own_code() {
        assert_eq!(run(["z2mackey", "chart", "--coeff", "nope"]).0, EXIT_USAGE);
        assert_eq!(run(["z2mackey", "chart", "--window", "1..0,0..0"]).0, EXIT_USAGE);
        assert_eq!(run(["z2mackey", "frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(["z2mackey", "box", "--coeff", "Z"]).0, EXIT_USAGE);
    }
}
