use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use slq::algebra::Window;
use slq::bar::bar_homology;
use slq::config::{e2_page, load_labels, load_manifold, predicted_low_weight};
use slq::gamma::{dims, predicted_hq_trivial};
use slq::lie::{omega_n, trivial, Monad};
use slq::verify::{self, Suite};

#[derive(Parser)]
#[command(name = "slq", version, about = "Quillen homology of spectral Lie algebras and Knudsen E² pages over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bar homology of the trivial algebra on one class, next to the predicted basis.
    HqTrivial {
        /// Degree of the generator.
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Restrict to the n-fold loop version.
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// E² page of the configuration space spectral sequence.
    E2 {
        #[arg(long)]
        manifold: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        /// Only this weight; default is every weight up to --max-weight.
        #[arg(long)]
        weight: Option<u32>,
        /// Print homology representatives.
        #[arg(long)]
        basis: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
    t_min: i64,
    #[arg(long, default_value_t = 20, allow_hyphen_values = true)]
    t_max: i64,
    #[arg(long, default_value_t = 3)]
    max_weight: u32,
    #[arg(long, default_value_t = 6)]
    max_s: usize,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Exit with status 1 if any row disagrees with the prediction.
    #[arg(long)]
    strict: bool,
}

impl RunArgs {
    fn window(&self) -> slq::Result<Window> {
        if self.max_weight == 0 {
            return Err(slq::Error::BadWindow("--max-weight must be at least 1".into()));
        }
        Window::new(self.t_min, self.t_max, self.max_weight, self.max_s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Serialize)]
struct Row {
    weight: u32,
    s: usize,
    t: i64,
    dim: usize,
    predicted_dim: Option<usize>,
    #[serde(rename = "match")]
    matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
}

enum Failure {
    Input(String),
    Mismatch,
}

impl From<slq::Error> for Failure {
    fn from(e: slq::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Table = BTreeMap<(u32, usize, i64), usize>;

fn rows(computed: &Table, predicted: &BTreeMap<u32, Table>) -> Vec<Row> {
    let mut keys: Vec<_> = computed.keys().copied().collect();
    for t in predicted.values() {
        keys.extend(t.keys().copied());
    }
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .map(|key @ (weight, s, t)| {
            let dim = computed.get(&key).copied().unwrap_or(0);
            let predicted_dim = predicted.get(&weight).map(|p| p.get(&key).copied().unwrap_or(0));
            Row { weight, s, t, dim, predicted_dim, matches: predicted_dim.is_none_or(|p| p == dim), basis: None }
        })
        .collect()
}

fn emit(rows: &[Row], format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(rows).expect("rows serialize")),
        Format::Tsv => {
            let with_basis = rows.iter().any(|r| r.basis.is_some());
            print!("weight\ts\tt\tdim\tpredicted_dim\tmatch");
            println!("{}", if with_basis { "\tbasis" } else { "" });
            for r in rows {
                let pred = r.predicted_dim.map_or("-".to_string(), |d| d.to_string());
                let mark = match r.predicted_dim {
                    None => "-",
                    Some(_) if r.matches => "yes",
                    Some(_) => "no",
                };
                print!("{}\t{}\t{}\t{}\t{pred}\t{mark}", r.weight, r.s, r.t, r.dim);
                match &r.basis {
                    Some(b) if with_basis => println!("\t{}", b.join("; ")),
                    _ => println!(),
                }
            }
        }
    }
}

fn finish(rows: &[Row], strict: bool) -> Result<(), Failure> {
    if strict && rows.iter().any(|r| !r.matches) {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn hq_trivial(k: i64, n: Option<u32>, run: &RunArgs) -> Result<(), Failure> {
    if run.p.is_some_and(|p| p != 2) {
        return Err(Failure::Input("hq-trivial is computed over F_2 only".into()));
    }
    let w = run.window()?;
    let g = match n {
        Some(n) => omega_n(k, n, 1, w)?,
        None => trivial(k),
    };
    let computed = bar_homology(Monad::LieR, &g, w)?;
    let mut predicted = BTreeMap::new();
    for (key, d) in dims(&predicted_hq_trivial(k, n, &w)) {
        predicted.entry(key.0).or_insert_with(Table::new).insert(key, d);
    }
    for wt in 1..=w.w_max {
        predicted.entry(wt).or_default();
    }
    let rows = rows(&computed, &predicted);
    emit(&rows, run.format);
    finish(&rows, run.strict)
}

fn e2(manifold: &Path, labels: &Path, weight: Option<u32>, basis: bool, run: &RunArgs) -> Result<(), Failure> {
    let m = load_manifold(&read(manifold)?).map_err(|e| Failure::Input(format!("{}: {e}", manifold.display())))?;
    let x = load_labels(&read(labels)?).map_err(|e| Failure::Input(format!("{}: {e}", labels.display())))?;
    if let Some(p) = run.p {
        if p != m.p.get() {
            return Err(Failure::Input(format!("--p {p} disagrees with the manifest prime {}", m.p)));
        }
    }
    let w = run.window()?;
    let weights: Vec<u32> = match weight {
        Some(k) => vec![k],
        None => (1..=w.w_max).collect(),
    };
    let mut computed = Table::new();
    let mut reps = BTreeMap::new();
    let mut predicted = BTreeMap::new();
    for &k in &weights {
        let kw = Window { w_max: k, ..w };
        for e in e2_page(&m, &x, k, kw, basis)? {
            computed.insert((e.w, e.s, e.t), e.dim);
            reps.insert((e.w, e.s, e.t), e.basis);
        }
        if k >= 2 {
            if let Ok(classes) = predicted_low_weight(&m, &x, k, kw) {
                predicted.insert(k, dims(&classes).into_iter().filter(|(key, _)| key.0 == k).collect());
            }
        }
    }
    let mut rows = rows(&computed, &predicted);
    if basis {
        for r in &mut rows {
            r.basis = Some(reps.get(&(r.weight, r.s, r.t)).cloned().unwrap_or_default());
        }
    }
    emit(&rows, run.format);
    finish(&rows, run.strict)
}

fn verify_cmd(name: &str, format: Format) -> Result<(), Failure> {
    let suites = if name == "all" { Suite::ALL.to_vec() } else { vec![name.parse::<Suite>()?] };
    let mut reports = Vec::new();
    for s in suites {
        reports.push(verify::run(s)?);
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize")),
        Format::Tsv => {
            println!("suite\tcheck\tpass\tdetail");
            for r in &reports {
                for c in &r.checks {
                    println!("{}\t{}\t{}\t{}", r.suite, c.name, if c.pass { "pass" } else { "FAIL" }, c.detail);
                }
            }
        }
    }
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::HqTrivial { k, n, run } => hq_trivial(*k, *n, run),
        Command::E2 { manifold, labels, weight, basis, run } => e2(manifold, labels, *weight, *basis, run),
        Command::Verify { suite, format } => verify_cmd(suite, *format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
