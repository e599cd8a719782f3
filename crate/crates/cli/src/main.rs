use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use algact::action::DEFAULT_WORD_BOUND;
use algact::analysis::{analyze, AnalysisReport, DEFAULT_DEPTH};
use algact::compare::{compare_ideals, compare_rings, compare_toral, CompareMode, CompareVerdict, DEFAULT_PRIME_BOUND};
use algact::exact::BigInt;
use algact::groupoid::{simulate_level, LevelReport};
use algact::lattice::Lattice;
use algact::polyring::{commalg_conditions, CommalgReport};
use algact::schema::{
    action_from_value, any_action_from_value, detect_kind, ideal_from_value, parse_json, ring_from_value, InputKind,
};
use clap::{Parser, Subcommand};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "algact", version, about = "Exact invariants of algebraic actions and their groupoids")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Standing assumptions, constructible family, exactness, mixing, (F), (SF).
    Analyze {
        /// Action, ring (with generators) or ideal JSON; "-" reads stdin.
        input: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_WORD_BOUND)]
        word_bound: usize,
    },
    /// Try to certify that two groupoids are not isomorphic.
    Compare {
        first: String,
        second: String,
        /// Defaults to the mode matching the input kind.
        #[arg(long)]
        mode: Option<CompareMode>,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        prime_bound: u64,
    },
    /// Level maps, translation orbit and identity checks at one finite level.
    Groupoid {
        input: String,
        /// An integer k for k·Z^n, a JSON list of generator rows, or a JSON file.
        #[arg(long)]
        level: String,
        /// Write every level-map arrow to this file as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Groebner basis, rank and conditions (a) to (d) for a zero-dimensional ideal.
    Polyideal { input: String },
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl From<algact::Error> for Failure {
    fn from(e: algact::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn read_input(path: &str) -> Result<Value, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?
    };
    parse_json(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn with_path<T>(path: &str, r: algact::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("reports serialize")
}

fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn mark_opt(b: Option<bool>) -> &'static str {
    b.map_or("?", mark)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "action: rank {}, {} monoid on [{}]", r.rank, r.monoid, r.generators.join(", "));
    let st = &r.standing;
    let _ = writeln!(s, "standing:");
    let _ = writeln!(s, "  (FI) finite index          {}  dets [{}]", mark(st.fi_holds), join(&st.determinants));
    let _ = writeln!(s, "  non-automorphic            {}", mark(st.non_automorphic));
    let _ = writeln!(
        s,
        "  faithful (words <= {})      {}{}",
        st.faithfulness_word_bound,
        mark(st.faithful_on_generators),
        st.faithfulness_witness.as_ref().map(|w| format!("  witness {w}")).unwrap_or_default()
    );
    let _ = writeln!(s, "  (JF) {}", st.jf_note);
    let _ = writeln!(s, "  (PC) {}", st.pc_note);
    let f = &r.family;
    let _ = writeln!(
        s,
        "constructible family to depth {}: {} members{}",
        f.depth,
        f.size,
        if f.saturated { " (saturated)" } else { "" }
    );
    let _ = writeln!(s, "  index set {{{}}}", join(&f.index_set));
    let e = &r.exactness;
    let _ = writeln!(s, "exactness: {:?}", e.criterion.verdict);
    let _ = writeln!(s, "  {}", e.criterion.basis);
    if let Some(w) = &e.criterion.witness {
        let _ = writeln!(s, "  witness {w}");
    }
    let _ = writeln!(s, "  intersection indices [{}]", join(&e.intersection_indices));
    if let Some(m) = r.mixing {
        let _ = writeln!(s, "mixing                       {}", mark(m));
    }
    for (name, k) in r.generators.iter().zip(&r.root_of_unity_orders) {
        match k {
            Some(1) => {
                let _ = writeln!(s, "  {name} has eigenvalue 1");
            }
            Some(k) => {
                let _ = writeln!(s, "  {name} has a primitive {k}-th root of unity as eigenvalue");
            }
            None => {}
        }
    }
    let cf = &r.condition_f;
    let _ = writeln!(
        s,
        "(F) det(I - M_w) != 0        {}  ({} words up to length {}){}",
        mark(cf.holds_up_to_bound),
        cf.words_checked,
        cf.word_bound,
        cf.witness.as_ref().map(|w| format!("  witness {w}")).unwrap_or_default()
    );
    match &r.sf {
        Some(sf) => {
            let _ = writeln!(s, "(SF) determinant test        {}", mark(sf.determinant_map_injective));
        }
        None => {
            let _ = writeln!(s, "(SF) determinant test        n/a (free monoid)");
        }
    }
    let ok = r.identities.iter().filter(|i| i.holds).count();
    let _ = writeln!(s, "semidirect identity: {ok}/{} generators verified", r.identities.len());
    s
}

fn cmd_analyze(input: &str, depth: usize, word_bound: usize, json: bool) -> Outcome {
    let v = read_input(input)?;
    let a = with_path(input, any_action_from_value(&v))?;
    let r = analyze(&a, depth, word_bound)?;
    if !r.consistent() {
        return Err(Failure::Invariant(format!(
            "semidirect identity failed: {}",
            to_json(&r.identities)
        )));
    }
    Ok(if json { to_json(&r) } else { render_analysis(&r) })
}

fn render_verdict(v: &CompareVerdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", v.summary);
    let _ = writeln!(s, "status: {}", v.status);
    let _ = writeln!(s, "basis: {}", v.theorem_basis);
    let _ = writeln!(s, "hypotheses:");
    for h in &v.hypotheses {
        let _ = writeln!(s, "  {} {} | {}", h.name, mark_opt(h.first), mark_opt(h.second));
    }
    let _ = writeln!(s, "evidence:");
    for e in &v.evidence {
        let rel = if e.differs() { "≠" } else { "=" };
        let _ = writeln!(s, "  {}: {} {rel} {}", e.invariant, e.first, e.second);
    }
    for n in &v.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn cmd_compare(first: &str, second: &str, mode: Option<CompareMode>, prime_bound: u64, json: bool) -> Outcome {
    if first == "-" && second == "-" {
        return Err(Failure::Input("only one input may be read from stdin".into()));
    }
    let (va, vb) = (read_input(first)?, read_input(second)?);
    let (ka, kb) = (with_path(first, detect_kind(&va))?, with_path(second, detect_kind(&vb))?);
    let mode = mode.unwrap_or(match ka {
        InputKind::Action => CompareMode::Toral,
        InputKind::Ring => CompareMode::Ring,
        InputKind::Ideal => CompareMode::Poly,
    });
    let expected = match mode {
        CompareMode::Toral => InputKind::Action,
        CompareMode::Ring => InputKind::Ring,
        CompareMode::Poly => InputKind::Ideal,
    };
    for (path, k) in [(first, ka), (second, kb)] {
        if k != expected {
            return Err(Failure::Input(format!("{path}: {k:?} input does not match {mode:?} mode")));
        }
    }
    let v = match mode {
        CompareMode::Toral => compare_toral(
            &with_path(first, action_from_value(&va))?,
            &with_path(second, action_from_value(&vb))?,
        )?,
        CompareMode::Ring => compare_rings(
            &with_path(first, ring_from_value(&va))?,
            &with_path(second, ring_from_value(&vb))?,
            prime_bound,
        )?,
        CompareMode::Poly => compare_ideals(
            &with_path(first, ideal_from_value(&va))?,
            &with_path(second, ideal_from_value(&vb))?,
        )?,
    };
    if !v.is_sound() {
        return Err(Failure::Invariant(format!("unsupported distinction: {}", to_json(&v))));
    }
    Ok(if json { to_json(&v) } else { render_verdict(&v) })
}

fn parse_level(arg: &str, n: usize) -> Result<Lattice, Failure> {
    if let Ok(k) = arg.trim().parse::<BigInt>() {
        return Ok(Lattice::scaled(n, &k)?);
    }
    let v = if arg.trim_start().starts_with('[') {
        parse_json(arg).map_err(|e| Failure::Input(format!("--level: {e}")))?
    } else {
        read_input(arg)?
    };
    let rows = v
        .as_array()
        .ok_or_else(|| Failure::Input("--level: expected a list of rows".into()))?;
    let mut vecs = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Failure::Input(format!("--level: row {i} is not a list")))?;
        let mut vec = Vec::with_capacity(row.len());
        for x in row {
            let x = match x {
                Value::Number(n) => n.to_string().parse::<BigInt>().ok(),
                Value::String(s) => s.parse::<BigInt>().ok(),
                _ => None,
            }
            .ok_or_else(|| Failure::Input(format!("--level: row {i} has a non-integer entry")))?;
            vec.push(x);
        }
        vecs.push(vec);
    }
    Ok(Lattice::from_generators(n, &vecs)?)
}

fn render_level(r: &LevelReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "level Z^n / C of order {} ≅ {}",
        r.order,
        if r.cyclic_factors.is_empty() {
            "0".to_string()
        } else {
            r.cyclic_factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" ⊕ ")
        }
    );
    let _ = writeln!(s, "family depth {}", r.family_depth);
    for m in &r.maps {
        let _ = writeln!(
            s,
            "  map {}: {} entries, injective {}, image index {}, index identity {}",
            m.word,
            m.entries,
            mark(m.injective),
            m.image_index,
            mark(m.index_identity)
        );
    }
    let _ = writeln!(s, "translation orbit of 0: {} points, covers level {}", r.orbit_size, mark(r.orbit_covers_level));
    let ok = r.identities.iter().filter(|i| i.holds).count();
    let _ = writeln!(s, "semidirect identity: {ok}/{} generators verified", r.identities.len());
    let _ = writeln!(s, "{} arrows traced", r.trace.len());
    s
}

fn cmd_groupoid(input: &str, level: &str, trace: Option<&PathBuf>, depth: usize, json: bool) -> Outcome {
    let v = read_input(input)?;
    let a = with_path(input, any_action_from_value(&v))?;
    let c = parse_level(level, a.rank())?;
    let r = simulate_level(&a, &c, depth)?;
    if !r.consistent() {
        return Err(Failure::Invariant(format!("level checks failed: {}", to_json(&r))));
    }
    if let Some(path) = trace {
        std::fs::write(path, to_json(&r.trace))
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(if json { to_json(&r) } else { render_level(&r) })
}

fn render_commalg(r: &CommalgReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "variables: {}", r.vars.join(", "));
    let _ = writeln!(s, "Groebner basis:");
    for g in &r.groebner_basis {
        let _ = writeln!(s, "  {g}");
    }
    match r.dimension {
        Some(d) => {
            let _ = writeln!(s, "rank of Z[u]/I: {d}");
        }
        None => {
            let _ = writeln!(s, "not zero-dimensional");
        }
    }
    let _ = writeln!(s, "(a) {}", mark(r.a));
    let _ = writeln!(s, "(b) {}", mark_opt(r.b));
    match &r.c {
        Some(c) => {
            let _ = writeln!(
                s,
                "(c) {}{}",
                mark(c.holds),
                c.witness.as_ref().map(|w| format!("  monomial {w}")).unwrap_or_default()
            );
        }
        None => {
            let _ = writeln!(s, "(c) ?");
        }
    }
    match &r.d {
        Some(d) => {
            let _ = writeln!(s, "(d) {}  norms [{}]", mark_opt(d.holds), join(&d.norms));
            for (v, w) in r.vars.iter().zip(&d.witnesses) {
                if let Some(p) = w {
                    let _ = writeln!(s, "    {v}: p = {p}");
                }
            }
            if !d.unfactored.is_empty() {
                let _ = writeln!(s, "    unfactored: {}", d.unfactored.join(", "));
            }
        }
        None => {
            let _ = writeln!(s, "(d) ?");
        }
    }
    if !r.note.is_empty() {
        let _ = writeln!(s, "note: {}", r.note);
    }
    s
}

fn cmd_polyideal(input: &str, json: bool) -> Outcome {
    let v = read_input(input)?;
    let spec = with_path(input, ideal_from_value(&v))?;
    let r = commalg_conditions(&spec.vars, &spec.groebner())?;
    Ok(if json { to_json(&r) } else { render_commalg(&r) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Analyze { input, depth, word_bound } => cmd_analyze(input, *depth, *word_bound, cli.json),
        Command::Compare {
            first,
            second,
            mode,
            prime_bound,
        } => cmd_compare(first, second, *mode, *prime_bound, cli.json),
        Command::Groupoid {
            input,
            level,
            trace,
            depth,
        } => cmd_groupoid(input, level, trace.as_ref(), *depth, cli.json),
        Command::Polyideal { input } => cmd_polyideal(input, cli.json),
    };
    match out {
        Ok(text) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(3)
        }
    }
}
