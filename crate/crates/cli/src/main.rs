use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use invfourier::arith::{CycInt, QuadraticGamma};
use invfourier::export;
use invfourier::field::{make_field_of_order, CharSpec, Field};
use invfourier::recursions::{closed_form_canonical, recursion_phi};
use invfourier::spaces::{Budget, Space, SpaceKind};
use invfourier::symspace::{psi_brute, psi_closed, scaled_brute, scaled_restriction, PsiBlocks, SignBlocks};
use invfourier::transform::{brute_force_phi, CanonicalMatrix};
use invfourier::verify::{run_suite, Grid, Suite};
use invfourier::Error;

#[derive(Parser)]
#[command(name = "invfourier", version, about = "Exact canonical matrices of invariant Fourier transforms over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a canonical matrix (sign blocks for symmetric matrices).
    Compute(TableArgs),
    /// Serialise a table as JSON or CSV.
    Export(ExportArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print the table of a family evaluated at q = 1.
    Limit(LimitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Vec,
    Mat,
    Alt,
    Sym,
    Symscaled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Recursion,
    Closed,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct Common {
    /// Enumeration budget; defaults to $INVFOURIER_BUDGET or 10^7.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Clone)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    /// Column count for rectangular matrices.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "brute")]
    method: Method,
    /// Character twist as comma-separated coefficients over the prime field.
    #[arg(long)]
    twist: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Serialised output instead of a plain table.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct ExportArgs {
    #[command(flatten)]
    table: TableArgs,
    /// Entries as polynomials in q (recursion families, JSON only).
    #[arg(long)]
    symbolic: bool,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    /// oracle, orthogonality, multi, genfun, diagrams, sym-relations, gauss, limits or all.
    #[arg(default_value = "all")]
    suite: String,
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Comma-separated field orders.
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    /// Comma-separated sizes (default 1,2,3).
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Comma-separated column counts for rectangular matrices.
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct LimitArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Input(anyhow::Error),
    Check(String),
    Internal(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::IncompatibleOrder(..) | Error::InexactDivision => Failure::Internal(e.into()),
            e => Failure::Input(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(anyhow!(msg.into()))
}

fn kind_of(family: Family, n: usize, m: Option<usize>) -> Res<SpaceKind> {
    if m.is_some() && family != Family::Mat {
        return Err(input("--m applies only to rectangular matrices"));
    }
    Ok(match family {
        Family::Vec => SpaceKind::VecWreath { n },
        Family::Mat => SpaceKind::MatRect { n, m: m.ok_or_else(|| input("rectangular matrices need --m"))? },
        Family::Alt => SpaceKind::Alt { n },
        Family::Sym => SpaceKind::SymGL { n },
        Family::Symscaled => SpaceKind::SymScaledGL { n },
    })
}

fn setup(common: &Common) -> Res<Budget> {
    if let Some(j) = common.jobs {
        if j == 0 {
            return Err(input("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().context("thread pool")?;
    }
    Ok(common.budget.map(Budget).unwrap_or_default())
}

fn character(f: &Arc<Field>, twist: &Option<String>) -> Res<CharSpec> {
    let Some(t) = twist else {
        return Ok(CharSpec::standard(f));
    };
    let coeffs = t
        .split(',')
        .map(|c| c.trim().parse::<u32>().map_err(|_| input(format!("bad twist coefficient {c:?}"))))
        .collect::<Res<Vec<u32>>>()?;
    Ok(CharSpec::twisted(f, f.elem(&coeffs)?)?)
}

/// A computed table in one of its representations.
enum Table {
    Canonical(CanonicalMatrix),
    Psi(PsiBlocks<CycInt>),
    PsiClosed(PsiBlocks<QuadraticGamma>),
    Scaled(usize, u64, SignBlocks<CycInt>),
}

fn is_square(f: &Field, x: invfourier::field::FieldElem) -> Res<bool> {
    Ok(f.sgn(x)? == 1)
}

fn compute_table(a: &TableArgs, budget: &Budget) -> Res<(Table, Vec<String>, bool)> {
    let kind = kind_of(a.family, a.n, a.m)?;
    let f = make_field_of_order(a.q)?;
    let space = Space::new(kind, &f)?;
    let chr = character(&f, &a.twist)?;
    let mut notes = Vec::new();
    let mut ok = true;
    let table = match kind {
        SpaceKind::SymGL { n } | SpaceKind::SymScaledGL { n } => {
            let scaled = matches!(kind, SpaceKind::SymScaledGL { .. });
            if a.method == Method::Recursion {
                return Err(input("symmetric matrices have no recursion table; use brute, closed or all"));
            }
            if a.method != Method::Brute && !is_square(&f, chr.twist())? {
                return Err(input("closed forms use a character twisted by a square"));
            }
            let closed = || psi_closed(n, a.q);
            match (a.method, scaled) {
                (Method::Brute, false) => Table::Psi(psi_brute(&f, &chr, n, budget)?),
                (Method::Brute, true) => Table::Scaled(n, a.q, scaled_brute(&f, &chr, n, budget)?),
                (Method::Closed, false) => Table::PsiClosed(closed()?),
                (Method::Closed, true) => Table::Scaled(n, a.q, scaled_restriction(&closed()?.to_cyc(&chr.gauss_sum()?))),
                (_, false) => {
                    let c = closed()?;
                    let same = psi_brute(&f, &chr, n, budget)? == c.to_cyc(&chr.gauss_sum()?);
                    notes.push(format!("brute force equals closed form: {}", verdict(same)));
                    ok &= same;
                    Table::PsiClosed(c)
                }
                (_, true) => {
                    let b = scaled_brute(&f, &chr, n, budget)?;
                    let same = scaled_restriction(&closed()?.to_cyc(&chr.gauss_sum()?)) == b;
                    notes.push(format!("brute force equals closed form: {}", verdict(same)));
                    ok &= same;
                    Table::Scaled(n, a.q, b)
                }
            }
        }
        _ => match a.method {
            Method::Brute => Table::Canonical(brute_force_phi(&space, &chr, budget)?),
            Method::Recursion => Table::Canonical(recursion_phi(kind)?.to_canonical(&space, &chr)?),
            Method::Closed => Table::Canonical(closed_form_canonical(&space, &chr)?),
            Method::All => {
                let b = brute_force_phi(&space, &chr, budget)?;
                let r = recursion_phi(kind)?.to_canonical(&space, &chr)?;
                let c = closed_form_canonical(&space, &chr)?;
                notes.push(format!("recursion equals brute force: {}", verdict(r == b)));
                notes.push(format!("closed form equals brute force: {}", verdict(c == b)));
                ok &= r == b && c == b;
                Table::Canonical(b)
            }
        },
    };
    Ok((table, notes, ok))
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn plain_matrix<T: std::fmt::Display>(rows: &[String], cols: &[String], m: &[Vec<T>]) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let w = cells.iter().flatten().chain(cols).chain(rows).map(|s| s.len()).max().unwrap_or(1);
    let mut out = format!("{:>w$}", "");
    for c in cols {
        out.push_str(&format!(" {c:>w$}"));
    }
    out.push('\n');
    for (r, row) in rows.iter().zip(&cells) {
        out.push_str(&format!("{r:>w$}"));
        for x in row {
            out.push_str(&format!(" {x:>w$}"));
        }
        out.push('\n');
    }
    out
}

fn plain_blocks<T: std::fmt::Display>(b: &SignBlocks<T>) -> String {
    let names = ["rank functions onto rank functions", "sign functions onto rank functions", "rank functions onto sign functions", "sign functions onto sign functions"];
    let mut out = String::new();
    for (k, name) in names.iter().enumerate() {
        let rows = if k < 2 { &b.row_ranks } else { &b.row_signed };
        let cols = if k % 2 == 0 { &b.col_ranks } else { &b.col_signed };
        let s = |v: &Vec<usize>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        out.push_str(&format!("block {} ({name})\n", k + 1));
        out.push_str(&plain_matrix(&s(rows), &s(cols), &b.b[k]));
    }
    out
}

fn render(table: &Table, format: Option<Format>, chr: &CharSpec) -> Res<String> {
    let csv_hint = |e: Error| match e {
        Error::NotRationalInteger => input("table has non-integer entries; use --format json"),
        e => e.into(),
    };
    Ok(match (table, format) {
        (Table::Canonical(m), None) => {
            let ls: Vec<String> = m.labels.iter().map(|l| l.to_string()).collect();
            plain_matrix(&ls, &ls, &m.entries)
        }
        (Table::Psi(p), None) => plain_blocks(&p.blocks),
        (Table::PsiClosed(p), None) => plain_blocks(&p.blocks),
        (Table::Scaled(_, _, b), None) => plain_blocks(b),
        (Table::Canonical(m), Some(Format::Json)) => export::to_pretty(&export::canonical_json(m)),
        (Table::Canonical(m), Some(Format::Csv)) => export::canonical_csv(m).map_err(csv_hint)?,
        (Table::Psi(p), Some(Format::Json)) => {
            let v = if chr.field().e() % 2 == 1 {
                export::psi_json(&p.to_quadratic(&chr.gauss_sum()?)?, chr)?
            } else {
                export::psi_cyc_json(p, chr)?
            };
            export::to_pretty(&v)
        }
        (Table::PsiClosed(p), Some(Format::Json)) => export::to_pretty(&export::psi_json(p, chr)?),
        (Table::Psi(p), Some(Format::Csv)) => export::psi_csv(p).map_err(csv_hint)?,
        (Table::PsiClosed(p), Some(Format::Csv)) => export::psi_csv(&p.to_cyc(&chr.gauss_sum()?)).map_err(csv_hint)?,
        (Table::Scaled(n, q, b), Some(f)) => {
            let p = PsiBlocks { n: *n, q: *q, blocks: b.clone() };
            match f {
                Format::Json => export::to_pretty(&export::psi_cyc_json(&p, chr)?),
                Format::Csv => export::psi_csv(&p).map_err(csv_hint)?,
            }
        }
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Res<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout")?,
    }
    Ok(())
}

fn cmd_compute(a: &TableArgs) -> Res<()> {
    let budget = setup(&a.common)?;
    let (table, notes, ok) = compute_table(a, &budget)?;
    let f = make_field_of_order(a.q)?;
    let chr = character(&f, &a.twist)?;
    emit(&a.out, &render(&table, a.format, &chr)?)?;
    for n in &notes {
        eprintln!("{n}");
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check("cross-check failed".into()))
    }
}

fn cmd_export(a: &ExportArgs) -> Res<()> {
    let t = &a.table;
    let format = t.format.unwrap_or(Format::Json);
    if a.symbolic {
        let kind = kind_of(t.family, t.n, t.m)?;
        if kind.is_symmetric() {
            return Err(input("symbolic tables exist only for vec, mat and alt"));
        }
        let sym = recursion_phi(kind)?;
        let text = match format {
            Format::Json => export::to_pretty(&export::symbolic_json(&sym)),
            Format::Csv => export::symbolic_csv(&sym, t.q),
        };
        return emit(&t.out, &text);
    }
    let mut t = t.clone();
    t.format = Some(format);
    cmd_compute(&t)
}

fn cmd_verify(a: &VerifyArgs) -> Res<()> {
    let budget = setup(&a.common)?;
    let suite: Suite = a.suite.parse()?;
    let grid = match a.family {
        Some(fam) => {
            let ns = if a.n.is_empty() { vec![1, 2, 3] } else { a.n.clone() };
            let qs = if a.q.is_empty() { vec![3, 5] } else { a.q.clone() };
            let mut kinds = Vec::new();
            for &n in &ns {
                if fam == Family::Mat {
                    let ms = if a.m.is_empty() { (n..=n + 1).collect() } else { a.m.clone() };
                    for &m in ms.iter().filter(|&&m| m >= n) {
                        kinds.push(kind_of(fam, n, Some(m))?);
                    }
                } else {
                    if !a.m.is_empty() {
                        return Err(input("--m applies only to rectangular matrices"));
                    }
                    kinds.push(kind_of(fam, n, None)?);
                }
            }
            Grid::from_kinds(&kinds, &qs)
        }
        None => {
            let mut g = Grid::default_grid();
            if !a.q.is_empty() {
                g.cells.retain(|c| a.q.contains(&c.q));
                g.qs = a.q.clone();
            }
            g
        }
    };
    for &q in &grid.qs {
        make_field_of_order(q)?;
    }
    let rep = run_suite(suite, &grid, &budget)?;
    print!("{rep}");
    let fails = rep.failures().len();
    let skips = rep.count(|s| matches!(s, invfourier::report::Status::Skip(_)));
    let passes = rep.count(|s| matches!(s, invfourier::report::Status::Pass));
    println!("{suite}: {passes} passed, {fails} failed, {skips} skipped");
    if fails == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{fails} checks failed")))
    }
}

fn cmd_limit(a: &LimitArgs) -> Res<()> {
    let kind = kind_of(a.family, a.n, a.m)?;
    if kind.is_symmetric() {
        return Err(input("q = 1 limits exist only for vec, mat and alt"));
    }
    let sym = recursion_phi(kind)?;
    let ls: Vec<String> = sym.labels.iter().map(|l| l.to_string()).collect();
    print!("{}", plain_matrix(&ls, &ls, &sym.eval(&1.into())));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Export(a) => cmd_export(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Limit(a) => cmd_limit(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
