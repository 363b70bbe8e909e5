mod cache;

use anyhow::Context;
use cache::{Cache, Cached};
use clap::{Args, Parser, Subcommand, ValueEnum};
use idealarr::arrangement::DEFAULT_FLAT_BUDGET;
use idealarr::freecert::{
    inductively_factored, inductively_free, supersolvable, Budget, Certificate, CertificateDoc, Verdict,
    DEFAULT_NODE_BUDGET,
};
use idealarr::ideals::{self, enumerate, IdealFilter};
use idealarr::idealtype::{
    arrangement_of_ideal_type, boundary_rows, class_counts, classify_all, classify_ideal, Classification,
};
use idealarr::poincare::{factorization_check, poincare_poly, DEFAULT_WEYL_CAP};
use idealarr::{Error, Ideal, RootSystem};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "idealarr", version, about = "Ideal-type arrangements of root systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum flats in one intersection lattice.
    #[arg(long, global = true, default_value_t = DEFAULT_FLAT_BUDGET, value_parser = positive)]
    flats: usize,
    /// Maximum Weyl group elements visited.
    #[arg(long, global = true, default_value_t = DEFAULT_WEYL_CAP, value_parser = positive)]
    weyl_cap: usize,
    /// Maximum search nodes for certificate searches.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = positive)]
    nodes: usize,
    #[arg(long, global = true, value_parser = positive)]
    threads: Option<usize>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{}`", s)),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Args)]
struct TypeArg {
    /// Root system type, e.g. `F4` or `E8`.
    #[arg(long = "type")]
    ty: String,
}

#[derive(Args)]
struct Target {
    #[command(flatten)]
    ty: TypeArg,
    /// Generators `[g1,g2,..]`, `I<t>`, `theta` or `empty`.
    #[arg(long, default_value = "[]")]
    ideal: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    T1,
    T3,
    T4,
    T5,
    T6,
    T7,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lists positive roots: coefficients, scaled coordinates, height.
    Roots(TypeArg),
    /// Enumerates or counts ideals.
    Ideals {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        count: bool,
        /// Only ideals without simple roots.
        #[arg(long)]
        strict: bool,
        /// Only ideals inside the ideal of roots of height at least this.
        #[arg(long)]
        within: Option<usize>,
    },
    /// Ideal exponents and the height partition of the complement.
    Exponents(Target),
    /// Classifies one ideal, or every ideal when `--ideal` is omitted.
    Classify {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Searches for an induction table.
    FreeCert(CertArgs),
    /// Searches for a chain of modular flats.
    Supersolvable(CertArgs),
    /// Searches for an inductive factorization.
    Factored(CertArgs),
    /// Replays a certificate file.
    VerifyCert { file: PathBuf },
    /// Poincare polynomial of the complement of an ideal.
    Poincare {
        #[command(flatten)]
        target: Target,
        /// Compare with the product over the ideal exponents.
        #[arg(long)]
        check_factorization: bool,
    },
    /// Reproduces summary tables.
    Tables {
        #[arg(long, value_enum, ignore_case = true)]
        which: Table,
        #[command(flatten)]
        ty: TypeArg,
    },
}

#[derive(Args)]
struct CertArgs {
    #[command(flatten)]
    target: Target,
    /// Also write the certificate to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy)]
enum Kind {
    Free,
    Chain,
    Factored,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Free => "inductively free",
            Kind::Chain => "supersolvable",
            Kind::Factored => "inductively factored",
        }
    }

    fn key(self) -> &'static str {
        match self {
            Kind::Free => "induction-table",
            Kind::Chain => "modular-chain",
            Kind::Factored => "factorization-table",
        }
    }
}

/// Failure classes mapped to exit codes.
enum Fail {
    Verify(String),
    Usage(String),
    Budget(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::BudgetExhausted { .. } | Error::TooManyRoots(..) | Error::TooManyHyperplanes(_) => {
                Fail::Budget(e.to_string())
            }
            Error::BadCertificate(_) | Error::Reduction(_) => Fail::Verify(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for Fail {
    fn from(e: anyhow::Error) -> Fail {
        match e.downcast::<Error>() {
            Ok(e) => e.into(),
            Err(e) => Fail::Usage(format!("{:#}", e)),
        }
    }
}

type Out = Result<(), Fail>;

struct Ctx {
    format: Format,
    budget: Budget,
    weyl_cap: usize,
    cache: Cache,
}

impl Ctx {
    fn emit_json(&self, v: &Value) {
        println!("{}", serde_json::to_string_pretty(v).expect("json"));
    }
}

fn system(t: &TypeArg) -> Result<RootSystem, Fail> {
    Ok(RootSystem::from_name(t.ty.trim())?)
}

fn ideal(rs: &RootSystem, spec: &str) -> Result<Ideal, Fail> {
    Ok(Ideal::parse(rs, spec)?)
}

fn joined(v: &[usize], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn generators(rs: &RootSystem, i: &Ideal) -> Vec<String> {
    i.generators(rs).iter().map(|&r| rs.format_root(r)).collect()
}

fn roots(ctx: &Ctx, t: &TypeArg) -> Out {
    let rs = system(t)?;
    let rows = rs.positive_roots();
    match ctx.format {
        Format::Json => ctx.emit_json(&json!(rows
            .iter()
            .map(|r| json!({"root": rs.format_root(r.index), "coords": r.coords, "height": r.height}))
            .collect::<Vec<_>>())),
        Format::Tsv => {
            println!("root\tcoords\theight");
            for r in rows {
                println!("{}\t{}\t{}", rs.format_root(r.index), rs.format_coords(r.index), r.height);
            }
        }
        Format::Text => {
            for r in rows {
                println!("{} | {} | ht={}", rs.format_root(r.index), rs.format_coords(r.index), r.height);
            }
        }
    }
    Ok(())
}

fn list_ideals(ctx: &Ctx, t: &TypeArg, count: bool, strict: bool, within: Option<usize>) -> Out {
    let rs = system(t)?;
    let filter = match (strict, within) {
        (_, Some(0)) => return Err(Fail::Usage("--within must be at least 1".into())),
        (false, None) => IdealFilter::all(),
        (true, None) => IdealFilter::strict(),
        (false, Some(t)) => IdealFilter::within(t),
        (true, Some(t)) => IdealFilter::within(t.max(2)),
    };
    if count {
        let n = ideals::count(&rs, filter);
        match ctx.format {
            Format::Json => ctx.emit_json(&json!({"type": rs.ty.to_string(), "count": n})),
            _ => println!("{}", n),
        }
        return Ok(());
    }
    let all: Vec<Ideal> = enumerate(&rs, filter).collect();
    match ctx.format {
        Format::Json => ctx.emit_json(&json!(all.iter().map(|i| generators(&rs, i)).collect::<Vec<_>>())),
        _ => {
            for i in &all {
                println!("{}", i.format(&rs));
            }
        }
    }
    Ok(())
}

fn exponents(ctx: &Ctx, t: &Target) -> Out {
    let rs = system(&t.ty)?;
    let i = ideal(&rs, &t.ideal)?;
    let e = i.exponents(&rs);
    let heights = i.height_partition(&rs);
    match ctx.format {
        Format::Json => ctx.emit_json(&json!({
            "type": rs.ty.to_string(),
            "ideal": generators(&rs, &i),
            "exponents": e,
            "padded": i.padded_exponents(&rs),
            "height_partition": heights,
        })),
        Format::Tsv => println!("{}\t{}\t{}", i.format(&rs), joined(&e, ","), joined(&heights, ",")),
        Format::Text => {
            println!("ideal: {}", i.format(&rs));
            println!("exponents: {}", joined(&e, " "));
            println!("height partition: {}", joined(&heights, " "));
        }
    }
    Ok(())
}

fn classification_json(rs: &RootSystem, i: &Ideal, c: &Classification) -> Value {
    let (phi0, boundary) = match c {
        Classification::ConditionMet { witness } => (
            json!(witness.label(rs)),
            json!(witness.boundary.iter().map(|&b| rs.format_root(b)).collect::<Vec<_>>()),
        ),
        _ => (Value::Null, json!([])),
    };
    json!({
        "type": rs.ty.to_string(),
        "rank": rs.rank(),
        "ideal": generators(rs, i),
        "tag": c.name(),
        "phi0": phi0,
        "boundary": boundary,
        "exponents": i.exponents(rs),
    })
}

fn classification_cells(rs: &RootSystem, i: &Ideal, c: &Classification) -> [String; 4] {
    let (phi0, boundary) = match c {
        Classification::ConditionMet { witness } => (
            witness.label(rs),
            witness.boundary.iter().map(|&b| rs.format_root(b)).collect::<Vec<_>>().join(","),
        ),
        _ => ("-".into(), "-".into()),
    };
    [i.format(rs), c.name().to_string(), phi0, boundary]
}

fn classify(ctx: &Ctx, t: &TypeArg, spec: Option<&str>) -> Out {
    let rs = system(t)?;
    let rows: Vec<(Ideal, Classification)> = match spec {
        Some(s) => {
            let i = ideal(&rs, s)?;
            vec![(i, classify_ideal(&rs, &i))]
        }
        None => classify_all(&rs, IdealFilter::all()),
    };
    match ctx.format {
        Format::Json if spec.is_some() => ctx.emit_json(&classification_json(&rs, &rows[0].0, &rows[0].1)),
        Format::Json => {
            ctx.emit_json(&json!(rows.iter().map(|(i, c)| classification_json(&rs, i, c)).collect::<Vec<_>>()))
        }
        Format::Tsv => {
            println!("ideal\ttag\tphi0\tboundary");
            for (i, c) in &rows {
                println!("{}", classification_cells(&rs, i, c).join("\t"));
            }
        }
        Format::Text => {
            for (i, c) in &rows {
                println!("{}", classification_cells(&rs, i, c).join("  "));
            }
            if spec.is_none() {
                let resolved = rows.iter().filter(|(_, c)| c.is_resolved()).count();
                println!("all: {}, classified: {}", rows.len(), resolved);
            }
        }
    }
    Ok(())
}

fn search(kind: Kind, arr: &idealarr::Arrangement, budget: Budget) -> Verdict<Certificate> {
    fn wrap<C>(v: Verdict<C>, f: impl FnOnce(C) -> Certificate) -> Verdict<Certificate> {
        match v {
            Verdict::Yes(c) => Verdict::Yes(f(c)),
            Verdict::No => Verdict::No,
            Verdict::Unknown => Verdict::Unknown,
        }
    }
    match kind {
        Kind::Free => wrap(inductively_free(arr, budget), Certificate::InductionTable),
        Kind::Chain => wrap(supersolvable(arr, budget), Certificate::ModularChain),
        Kind::Factored => wrap(inductively_factored(arr, budget), Certificate::FactorizationTable),
    }
}

fn certify(ctx: &Ctx, kind: Kind, a: &CertArgs) -> Out {
    let rs = system(&a.target.ty)?;
    let i = ideal(&rs, &a.target.ideal)?;
    let arr = arrangement_of_ideal_type(&rs, &i);
    let labels: Vec<String> = i.complement(&rs).iter().map(|r| rs.format_root(r)).collect();

    let verdict = match ctx.cache.get(kind.key(), &arr) {
        Some(Cached::Yes(doc)) => Verdict::Yes(doc.certificate),
        Some(Cached::No) => Verdict::No,
        None => {
            let v = search(kind, &arr, ctx.budget);
            match &v {
                Verdict::Yes(c) => ctx.cache.put(
                    kind.key(),
                    &arr,
                    &Cached::Yes(CertificateDoc { arrangement: arr.clone(), labels: vec![], certificate: c.clone() }),
                ),
                Verdict::No => ctx.cache.put(kind.key(), &arr, &Cached::No),
                Verdict::Unknown => {}
            }
            v
        }
    };

    let doc = match verdict {
        Verdict::Unknown => {
            return Err(Fail::Budget(format!("{}: search budget of {} nodes exhausted", i.format(&rs), ctx.budget.nodes)))
        }
        Verdict::No => {
            match ctx.format {
                Format::Json => ctx.emit_json(&json!({"ideal": generators(&rs, &i), "verdict": "no"})),
                Format::Tsv => println!("{}\tno\t-", i.format(&rs)),
                Format::Text => println!("{}: not {}", i.format(&rs), kind.name()),
            }
            return Ok(());
        }
        Verdict::Yes(certificate) => CertificateDoc { arrangement: arr, labels, certificate },
    };
    let exps = doc.verify()?;
    if let Some(path) = &a.out {
        std::fs::write(path, doc.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    match ctx.format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Tsv => println!("{}\tyes\t{}", i.format(&rs), joined(&exps, ",")),
        Format::Text => {
            println!("{}: {}", i.format(&rs), kind.name());
            println!("exponents: {}", joined(&exps, " "));
        }
    }
    Ok(())
}

fn verify_cert(ctx: &Ctx, file: &PathBuf) -> Out {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Fail::Usage(format!("cannot read {}: {}", file.display(), e)))?;
    let doc = CertificateDoc::from_json(&text).map_err(|e| Fail::Verify(e.to_string()))?;
    let exps = doc.verify().map_err(|e| Fail::Verify(e.to_string()))?;
    match ctx.format {
        Format::Json => ctx.emit_json(&json!({"valid": true, "exponents": exps})),
        Format::Tsv => println!("valid\t{}", joined(&exps, ",")),
        Format::Text => println!("valid; exponents: {}", joined(&exps, " ")),
    }
    Ok(())
}

fn poincare(ctx: &Ctx, t: &Target, check: bool) -> Out {
    let rs = system(&t.ty)?;
    let i = ideal(&rs, &t.ideal)?;
    let coeffs = |p: &idealarr::Poly| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    if !check {
        let p = poincare_poly(&rs, &i, ctx.weyl_cap)?;
        match ctx.format {
            Format::Json => ctx.emit_json(&json!({"ideal": generators(&rs, &i), "coefficients": p.coeffs()})),
            Format::Tsv => println!("{}\t{}", i.format(&rs), coeffs(&p)),
            Format::Text => println!("{}", coeffs(&p)),
        }
        return Ok(());
    }
    let f = factorization_check(&rs, &i, ctx.weyl_cap)?;
    match ctx.format {
        Format::Json => ctx.emit_json(&json!({
            "ideal": generators(&rs, &i),
            "coefficients": f.poly.coeffs(),
            "exponents": f.exponents,
            "factors": f.holds,
        })),
        Format::Tsv => println!("{}\t{}\t{}\t{}", i.format(&rs), coeffs(&f.poly), joined(&f.exponents, ","), f.holds),
        Format::Text => {
            println!("{}", coeffs(&f.poly));
            println!("exponents: {}", joined(&f.exponents, " "));
            println!("factors over exponents: {}", if f.holds { "yes" } else { "no" });
        }
    }
    if f.holds {
        Ok(())
    } else {
        Err(Fail::Verify(format!("{}: polynomial does not factor over the ideal exponents", i.format(&rs))))
    }
}

fn tables(ctx: &Ctx, which: Table, t: &TypeArg) -> Out {
    let rs = system(t)?;
    match which {
        Table::T1 => {
            let c = class_counts(&rs);
            match ctx.format {
                Format::Json => ctx.emit_json(&json!({"type": rs.ty.to_string(), "counts": c})),
                Format::Tsv => println!("{}\t{}\t{}", rs.ty, c.all, c.classified),
                Format::Text => println!("all: {}, classified: {}", c.all, c.classified),
            }
        }
        Table::T3 => {
            let within = ideals::counts_within_heights(&rs);
            match ctx.format {
                Format::Json => ctx.emit_json(&json!({"type": rs.ty.to_string(), "within": within})),
                _ => {
                    for (k, n) in within.iter().enumerate() {
                        println!("{}\t{}", k + 1, n);
                    }
                }
            }
        }
        Table::T4 | Table::T5 | Table::T6 | Table::T7 => {
            let height = match which {
                Table::T4 => 3,
                Table::T5 => 4,
                Table::T6 => 5,
                _ => 6,
            };
            let rows = boundary_rows(&rs, height);
            let mut out = Vec::new();
            for row in &rows {
                let g = rs.format_root(row.generator);
                if row.witnesses.is_empty() {
                    out.push((g.clone(), None, Vec::new()));
                }
                for w in &row.witnesses {
                    let b: Vec<String> = w.boundary.iter().map(|&r| rs.format_root(r)).collect();
                    out.push((g.clone(), Some(w.label(&rs)), b));
                }
            }
            match ctx.format {
                Format::Json => ctx.emit_json(&json!(out
                    .iter()
                    .map(|(g, s, b)| json!({"generator": g, "phi0": s, "boundary": b}))
                    .collect::<Vec<_>>())),
                Format::Tsv => {
                    for (g, s, b) in &out {
                        println!("{}\t{}\t{}", g, s.as_deref().unwrap_or("x"), b.join(","));
                    }
                }
                Format::Text => {
                    for (g, s, b) in &out {
                        match s {
                            Some(s) => println!("{} | {} | {}", g, s, b.join(", ")),
                            None => println!("{} | × | ×", g),
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Out {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Fail::Usage(e.to_string()))?;
    }
    let ctx = Ctx {
        format: if cli.json { Format::Json } else { cli.format },
        budget: Budget { nodes: cli.nodes, flats: cli.flats },
        weyl_cap: cli.weyl_cap,
        cache: Cache::from_env(),
    };
    match &cli.cmd {
        Cmd::Roots(t) => roots(&ctx, t),
        Cmd::Ideals { ty, count, strict, within } => list_ideals(&ctx, ty, *count, *strict, *within),
        Cmd::Exponents(t) => exponents(&ctx, t),
        Cmd::Classify { ty, ideal } => classify(&ctx, ty, ideal.as_deref()),
        Cmd::FreeCert(a) => certify(&ctx, Kind::Free, a),
        Cmd::Supersolvable(a) => certify(&ctx, Kind::Chain, a),
        Cmd::Factored(a) => certify(&ctx, Kind::Factored, a),
        Cmd::VerifyCert { file } => verify_cert(&ctx, file),
        Cmd::Poincare { target, check_factorization } => poincare(&ctx, target, *check_factorization),
        Cmd::Tables { which, ty } => tables(&ctx, *which, ty),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Fail::Verify(m) => (1, m),
                Fail::Usage(m) => (2, m),
                Fail::Budget(m) => (3, m),
            };
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}
