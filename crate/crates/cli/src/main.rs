//! `matwork` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 a checked property does
//! not hold, 3 a theorem-range computation failed (implementation bug).

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use matwork::cochain::{cohomology_dims, torus_grid, CellComplex2};
use matwork::exactlin::json::{field_to_json, parse_rational};
use matwork::exactlin::{ExactMatrix, FieldSpec};
use matwork::gradedalg::{graded_dims, hlp_check, palindrome_check, MonomialAlgebraSpec};
use matwork::matching::{
    extract_matching, theorem_suite, top_heavy_report, verify_injectivity, Scope, HALL_MAX,
};
use matwork::matroid::json::{matroid_from_json, rank_table_from_json};
use matwork::matroid::{
    check_axioms, AxiomMode, Matroid, MatroidKind, RankFunction, Subset, EXHAUSTIVE_MAX,
};
use matwork::mobius::{MobiusAlgebra, OmegaWeights};
use matwork::tropical::{
    member, point_from_json, trop_eval, tropical_linear_space, vanishes, TropPolynomial,
};

#[derive(Parser)]
#[command(
    name = "matwork",
    version,
    about = "Matroid workbench: flats, Möbius algebras, injective flat matchings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Io {
    /// Input JSON file; standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Args, Clone, Copy)]
struct RankPair {
    #[arg(long)]
    r: usize,
    #[arg(long = "r-prime")]
    r_prime: usize,
    /// Allow r + r' > rank; results are reported but never alarms.
    #[arg(long)]
    exploratory: bool,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Matroid(MatroidCmd),
    #[command(subcommand)]
    Mobius(MobiusCmd),
    #[command(subcommand)]
    Matching(MatchingCmd),
    #[command(subcommand)]
    Gradedalg(GradedCmd),
    #[command(subcommand)]
    Tropical(TropicalCmd),
    #[command(subcommand)]
    Cochain(CochainCmd),
    /// Injectivity, matching and top-heavy checks for every rank pair.
    VerifyAll {
        #[command(flatten)]
        io: Io,
        /// Cross-check matchings with the Hall oracle up to this many flats.
        #[arg(long, default_value_t = 12)]
        hall_limit: usize,
    },
}

#[derive(Subcommand)]
enum MatroidCmd {
    Info(Io),
    Flats(Io),
    Whitney(Io),
    CheckAxioms {
        #[command(flatten)]
        io: Io,
        /// Force randomized checking with this many sampled triples.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Circuits(Io),
    Restrict {
        #[command(flatten)]
        io: Io,
        /// Comma-separated elements of a flat.
        #[arg(long, value_delimiter = ',')]
        flat: Vec<usize>,
    },
    Contract {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_delimiter = ',')]
        flat: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum MobiusCmd {
    Dims(Io),
    OmegaMatrix {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        ranks: RankPair,
        /// Comma-separated positive rationals, one per point (rank-one flat).
        #[arg(long)]
        weights: Option<String>,
    },
}

#[derive(Subcommand)]
enum MatchingCmd {
    Verify {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        ranks: RankPair,
        #[arg(long)]
        weights: Option<String>,
    },
    Extract {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        ranks: RankPair,
    },
    Topheavy(Io),
}

#[derive(Subcommand)]
enum GradedCmd {
    Dims(Io),
    Hlp(Io),
    Palindrome(Io),
}

#[derive(Subcommand)]
enum TropicalCmd {
    /// Membership of --point in the tropical linear space of the input matroid.
    Member {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        point: String,
    },
    /// Evaluates the input polynomial at --point.
    Eval {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        point: String,
    },
    Circuits(Io),
}

#[derive(Subcommand)]
enum CochainCmd {
    Dims {
        #[command(flatten)]
        io: Io,
        /// Q, or a prime p.
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
    },
    Euler(Io),
    TorusGrid {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("invalid JSON input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
}

macro_rules! input_err {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        })*
    };
}

input_err!(
    matwork::matroid::MatroidError,
    matwork::mobius::MobiusError,
    matwork::matching::MatchingError,
    matwork::gradedalg::GradedError,
    matwork::tropical::TropicalError,
    matwork::cochain::CochainError,
    matwork::exactlin::LinAlgError
);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Ok,
    Fail,
    Alarm,
}

impl Verdict {
    fn code(self) -> u8 {
        match self {
            Verdict::Ok => 0,
            Verdict::Fail => 2,
            Verdict::Alarm => 3,
        }
    }
}

struct Output {
    body: String,
    verdict: Verdict,
}

impl Output {
    fn new(body: String) -> Self {
        Output {
            body,
            verdict: Verdict::Ok,
        }
    }

    fn with(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }
}

fn read_input(io: &Io) -> Result<Value, CliError> {
    let text = match &io.input {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io {
                    path: "standard input".into(),
                    source,
                })?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn load_matroid(io: &Io) -> Result<Matroid, CliError> {
    Ok(matroid_from_json(&read_input(io)?)?)
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn csv_out(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

/// Space-separated members, so that CSV fields need no quoting.
fn members(s: Subset) -> String {
    s.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn unsupported(format: Format, verb: &str) -> CliError {
    let name = match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Dot => "dot",
    };
    CliError::Usage(format!("`{verb}` does not support --format {name}"))
}

fn kind_name(m: &Matroid) -> String {
    match m.kind() {
        MatroidKind::Linear => "linear".into(),
        MatroidKind::Lines => "lines".into(),
        MatroidKind::Uniform => "uniform".into(),
        MatroidKind::Named(name) => name.clone(),
        MatroidKind::Explicit => "explicit".into(),
    }
}

fn info_json(m: &Matroid) -> Result<Value, CliError> {
    let whitney = m.whitney()?;
    Ok(json!({
        "kind": kind_name(m),
        "n": m.n(),
        "rank": m.rank_total(),
        "whitney": whitney,
        "flat_count": whitney.iter().sum::<usize>(),
    }))
}

fn parse_flat(m: &Matroid, elems: &[usize]) -> Result<Subset, CliError> {
    let s = Subset::from_indices(m.n(), elems)?;
    if !m.is_flat(s) {
        return Err(CliError::Input(format!(
            "{elems:?} is not a flat (its closure is {:?})",
            m.closure(s).members.to_vec()
        )));
    }
    Ok(s)
}

fn parse_weights(alg: &MobiusAlgebra, text: Option<&str>) -> Result<OmegaWeights, CliError> {
    let Some(text) = text else {
        return Ok(alg.unit_weights());
    };
    let values = text
        .split(',')
        .map(|t| parse_rational(t.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != alg.dim(1) {
        return Err(CliError::Usage(format!(
            "--weights needs {} values, one per point; got {}",
            alg.dim(1),
            values.len()
        )));
    }
    Ok(OmegaWeights::new(values)?)
}

fn scope(p: &RankPair) -> Scope {
    if p.exploratory {
        Scope::Exploratory
    } else {
        Scope::Theorem
    }
}

fn matrix_csv(m: &ExactMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn run_matroid(cmd: MatroidCmd) -> Result<Output, CliError> {
    match cmd {
        MatroidCmd::Info(io) => {
            let m = load_matroid(&io)?;
            match io.format {
                Format::Json => Ok(Output::new(json_out(&info_json(&m)?))),
                f => Err(unsupported(f, "matroid info")),
            }
        }
        MatroidCmd::Flats(io) => {
            let lattice = load_matroid(&io)?.flats()?;
            match io.format {
                Format::Json => Ok(Output::new(json_out(&lattice.to_json()))),
                Format::Csv => Ok(Output::new(csv_out(
                    "rank,index,members",
                    lattice.levels().iter().enumerate().flat_map(|(r, level)| {
                        level
                            .iter()
                            .enumerate()
                            .map(move |(i, &f)| format!("{r},{i},{}", members(f)))
                    }),
                ))),
                f => Err(unsupported(f, "matroid flats")),
            }
        }
        MatroidCmd::Whitney(io) => {
            let w = load_matroid(&io)?.whitney()?;
            match io.format {
                Format::Json => Ok(Output::new(json_out(&json!({ "whitney": w })))),
                Format::Csv => Ok(Output::new(csv_out(
                    "rank,count",
                    w.iter().enumerate().map(|(r, c)| format!("{r},{c}")),
                ))),
                f => Err(unsupported(f, "matroid whitney")),
            }
        }
        MatroidCmd::CheckAxioms { io, trials, seed } => {
            if io.format != Format::Json {
                return Err(unsupported(io.format, "matroid check-axioms"));
            }
            let v = read_input(&io)?;
            let mode = |n: usize| match trials {
                Some(trials) => AxiomMode::Randomized { trials, seed },
                None if n <= EXHAUSTIVE_MAX => AxiomMode::Exhaustive,
                None => AxiomMode::Randomized {
                    trials: 20_000,
                    seed,
                },
            };
            // Raw tables are checked as given, without the constructor's
            // own validation.
            let report = if v.get("type").and_then(Value::as_str) == Some("explicit") {
                let table = rank_table_from_json(&v)?;
                check_axioms(&table, mode(table.ground_size()))?
            } else {
                let m = matroid_from_json(&v)?;
                check_axioms(&m, mode(m.n()))?
            };
            let verdict = if report.passed() {
                Verdict::Ok
            } else {
                Verdict::Fail
            };
            Ok(Output::new(json_out(&report.to_json())).with(verdict))
        }
        MatroidCmd::Circuits(io) => {
            let circuits = load_matroid(&io)?.circuits()?;
            match io.format {
                Format::Json => Ok(Output::new(json_out(
                    &json!({ "circuits": circuits.iter().map(|c| c.to_vec()).collect::<Vec<_>>() }),
                ))),
                Format::Csv => Ok(Output::new(csv_out(
                    "size,members",
                    circuits
                        .iter()
                        .map(|&c| format!("{},{}", c.len(), members(c))),
                ))),
                f => Err(unsupported(f, "matroid circuits")),
            }
        }
        MatroidCmd::Restrict { io, flat } | MatroidCmd::Contract { io, flat }
            if io.format != Format::Json =>
        {
            let _ = flat;
            Err(unsupported(io.format, "matroid restrict/contract"))
        }
        MatroidCmd::Restrict { io, flat } => {
            let m = load_matroid(&io)?;
            let f = parse_flat(&m, &flat)?;
            let minor = m.restriction(f)?;
            let mut out = info_json(&minor)?;
            out["elements"] = json!(f.to_vec());
            Ok(Output::new(json_out(&out)))
        }
        MatroidCmd::Contract { io, flat } => {
            let m = load_matroid(&io)?;
            let f = parse_flat(&m, &flat)?;
            let minor = m.contraction(f)?;
            let mut out = info_json(&minor)?;
            out["elements"] = json!(m.ground().difference(f).to_vec());
            Ok(Output::new(json_out(&out)))
        }
    }
}

fn run_mobius(cmd: MobiusCmd) -> Result<Output, CliError> {
    match cmd {
        MobiusCmd::Dims(io) => {
            let alg = MobiusAlgebra::build(&load_matroid(&io)?)?;
            let dims = alg.dims();
            match io.format {
                Format::Json => Ok(Output::new(json_out(&json!({ "dims": dims })))),
                Format::Csv => Ok(Output::new(csv_out(
                    "degree,dim",
                    dims.iter().enumerate().map(|(k, d)| format!("{k},{d}")),
                ))),
                f => Err(unsupported(f, "mobius dims")),
            }
        }
        MobiusCmd::OmegaMatrix { io, ranks, weights } => {
            let alg = MobiusAlgebra::build(&load_matroid(&io)?)?;
            let w = parse_weights(&alg, weights.as_deref())?;
            if !ranks.exploratory && ranks.r + ranks.r_prime > alg.rank() {
                return Err(CliError::Usage(format!(
                    "r + r' = {} exceeds rank {}; pass --exploratory to compute anyway",
                    ranks.r + ranks.r_prime,
                    alg.rank()
                )));
            }
            let m = alg.omega_power_matrix(ranks.r, ranks.r_prime, &w)?;
            match io.format {
                Format::Json => Ok(Output::new(json_out(&alg.matrix_json(
                    ranks.r,
                    ranks.r_prime,
                    &m,
                )))),
                Format::Csv => Ok(Output::new(matrix_csv(&m))),
                f => Err(unsupported(f, "mobius omega-matrix")),
            }
        }
    }
}

fn run_matching(cmd: MatchingCmd) -> Result<Output, CliError> {
    match cmd {
        MatchingCmd::Verify { io, ranks, weights } => {
            if io.format != Format::Json {
                return Err(unsupported(io.format, "matching verify"));
            }
            let alg = MobiusAlgebra::build(&load_matroid(&io)?)?;
            let w = parse_weights(&alg, weights.as_deref())?;
            let v = verify_injectivity(&alg, ranks.r, ranks.r_prime, &w, scope(&ranks))?;
            let verdict = match (v.injective(), v.is_alarm()) {
                (true, _) => Verdict::Ok,
                (false, true) => Verdict::Alarm,
                (false, false) => Verdict::Fail,
            };
            if verdict == Verdict::Alarm {
                eprintln!("ALARM: omega-power map is not injective inside the theorem range");
            }
            Ok(Output::new(json_out(&v.to_json())).with(verdict))
        }
        MatchingCmd::Extract { io, ranks } => {
            let res = extract_matching(&load_matroid(&io)?, ranks.r, ranks.r_prime, scope(&ranks))?;
            let verdict = match (res.complete, res.is_alarm()) {
                (true, _) => Verdict::Ok,
                (false, true) => Verdict::Alarm,
                (false, false) => Verdict::Fail,
            };
            if verdict == Verdict::Alarm {
                eprintln!("ALARM: no complete containment matching inside the theorem range");
                eprintln!("{}", json_out(&res.to_json()));
            }
            let body = match io.format {
                Format::Json => json_out(&res.to_json()),
                Format::Dot => res.to_dot(),
                Format::Csv => csv_out(
                    "flat,image",
                    res.pairs()
                        .into_iter()
                        .map(|(f, g)| format!("{},{}", members(f), members(g))),
                ),
            };
            Ok(Output::new(body).with(verdict))
        }
        MatchingCmd::Topheavy(io) => {
            if io.format != Format::Json {
                return Err(unsupported(io.format, "matching topheavy"));
            }
            let report = top_heavy_report(&load_matroid(&io)?)?;
            let verdict = if report.passed() {
                Verdict::Ok
            } else {
                Verdict::Alarm
            };
            Ok(Output::new(json_out(&report.to_json())).with(verdict))
        }
    }
}

fn run_graded(cmd: GradedCmd) -> Result<Output, CliError> {
    let (io, f) = match &cmd {
        GradedCmd::Dims(io) | GradedCmd::Hlp(io) | GradedCmd::Palindrome(io) => (io, io.format),
    };
    let spec = MonomialAlgebraSpec::from_json(&read_input(io)?)?;
    match (cmd, f) {
        (GradedCmd::Dims(_), Format::Json) => Ok(Output::new(json_out(
            &json!({ "dims": graded_dims(&spec)? }),
        ))),
        (GradedCmd::Dims(_), Format::Csv) => Ok(Output::new(csv_out(
            "degree,dim",
            graded_dims(&spec)?
                .iter()
                .enumerate()
                .map(|(k, d)| format!("{k},{d}")),
        ))),
        (GradedCmd::Hlp(_), Format::Json) => {
            let report = hlp_check(&spec)?;
            let verdict = if report.passed() {
                Verdict::Ok
            } else {
                Verdict::Fail
            };
            Ok(Output::new(json_out(&report.to_json())).with(verdict))
        }
        (GradedCmd::Palindrome(_), Format::Json) => {
            let ok = palindrome_check(&spec)?;
            let verdict = if ok { Verdict::Ok } else { Verdict::Fail };
            Ok(Output::new(json_out(
                &json!({ "palindromic": ok, "topdeg": spec.topdeg() }),
            ))
            .with(verdict))
        }
        (_, f) => Err(unsupported(f, "gradedalg")),
    }
}

fn parse_point(text: &str) -> Result<Vec<matwork::tropical::TropValue>, CliError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("--point is not JSON: {e}")))?;
    Ok(point_from_json(&v)?)
}

fn run_tropical(cmd: TropicalCmd) -> Result<Output, CliError> {
    match cmd {
        TropicalCmd::Member { io, point } => {
            if io.format != Format::Json {
                return Err(unsupported(io.format, "tropical member"));
            }
            let t = tropical_linear_space(&load_matroid(&io)?)?;
            let xi = parse_point(&point)?;
            Ok(Output::new(json_out(
                &json!({ "member": member(&t, &xi)? }),
            )))
        }
        TropicalCmd::Eval { io, point } => {
            if io.format != Format::Json {
                return Err(unsupported(io.format, "tropical eval"));
            }
            let p = TropPolynomial::from_json(&read_input(&io)?)?;
            let xi = parse_point(&point)?;
            let (value, count) = trop_eval(&p, &xi)?;
            Ok(Output::new(json_out(&json!({
                "value": value.to_json(),
                "argmax_count": count,
                "vanishes": vanishes(&p, &xi)?,
            }))))
        }
        TropicalCmd::Circuits(io) => {
            let t = tropical_linear_space(&load_matroid(&io)?)?;
            match io.format {
                Format::Json => Ok(Output::new(json_out(&t.to_json()))),
                Format::Csv => Ok(Output::new(csv_out(
                    "size,members",
                    t.circuits()
                        .iter()
                        .map(|&c| format!("{},{}", c.len(), members(c))),
                ))),
                f => Err(unsupported(f, "tropical circuits")),
            }
        }
    }
}

fn run_cochain(cmd: CochainCmd) -> Result<Output, CliError> {
    match cmd {
        CochainCmd::Dims { io, field } => {
            if io.format != Format::Json {
                return Err(unsupported(io.format, "cochain dims"));
            }
            let x = CellComplex2::from_json(&read_input(&io)?)?;
            let h = cohomology_dims(&x, field);
            Ok(Output::new(json_out(&json!({
                "field": field_to_json(&field),
                "h0": h.h0,
                "h1": h.h1,
                "h2": h.h2,
            }))))
        }
        CochainCmd::Euler(io) => {
            if io.format != Format::Json {
                return Err(unsupported(io.format, "cochain euler"));
            }
            let x = CellComplex2::from_json(&read_input(&io)?)?;
            Ok(Output::new(json_out(&json!({
                "V": x.vertex_count(),
                "E": x.edge_count(),
                "F": x.face_count(),
                "euler": x.euler_characteristic(),
            }))))
        }
        CochainCmd::TorusGrid { k, format } => match format {
            Format::Json => Ok(Output::new(json_out(&torus_grid(k)?.to_json()))),
            f => Err(unsupported(f, "cochain torus-grid")),
        },
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Matroid(c) => run_matroid(c),
        Command::Mobius(c) => run_mobius(c),
        Command::Matching(c) => run_matching(c),
        Command::Gradedalg(c) => run_graded(c),
        Command::Tropical(c) => run_tropical(c),
        Command::Cochain(c) => run_cochain(c),
        Command::VerifyAll { io, hall_limit } => {
            if io.format != Format::Json {
                return Err(unsupported(io.format, "verify-all"));
            }
            if hall_limit > HALL_MAX {
                return Err(CliError::Usage(format!(
                    "--hall-limit is at most {HALL_MAX}"
                )));
            }
            let report = theorem_suite(&load_matroid(&io)?, hall_limit)?;
            let alarms = report.alarms();
            for a in &alarms {
                eprintln!("ALARM: {a}");
            }
            let verdict = if alarms.is_empty() {
                Verdict::Ok
            } else {
                Verdict::Alarm
            };
            Ok(Output::new(json_out(&report.to_json())).with(verdict))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.body.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::from(out.verdict.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
