//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::harmonics::{max_strict_chain, ChainLimits, ChainSpace, ChainTables};
use crate::hopf::{subalgebra_dims, verify_axioms, AtomSet};
use crate::linear::Integer;
use crate::nutamari::{all_trees, phi, psi, NuPath, NuTree};
use crate::paths::{count_walks, count_walks_by_up_steps, verify_steep_bounce, DyckPath};
use crate::permutation::Permutation;
use crate::pipedream::PipeDream;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pipehopf", version, about = "Pipe dream Hopf algebra enumeration and verification")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Override the size limit of the chosen command (chains: 5, path maps: 8, pipe dreams: 8).
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Wall-clock budget in seconds for chain computations.
    #[arg(long, global = true)]
    pub time_budget: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced pipe dreams of a permutation, or dimensions of an atom subalgebra.
    Pipedreams(PipedreamsArgs),
    /// Dimensions, generator counts and free-algebra check of an atom subalgebra, for n up to --max-n.
    Hilbert {
        /// "identities", "dominant", or a comma-separated list of atomic permutations.
        #[arg(long)]
        atoms: AtomSet,
    },
    /// Quarter-plane walks of length 2n.
    Walks {
        /// Half the walk length.
        #[arg(long)]
        n: usize,
        /// Split by the number of (0,1) steps.
        #[arg(long)]
        by_k: bool,
    },
    /// Exhaustive identity checks up to size n.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Largest size checked.
        #[arg(long)]
        n: usize,
    },
    /// Hopf chain statistics.
    Chains(ChainsArgs),
    /// The zeta map on a Dyck path word.
    Zeta {
        /// Dyck path as an N/E word.
        #[arg(long)]
        path: DyckPath,
        /// Apply the inverse map.
        #[arg(long)]
        inverse: bool,
    },
    /// The maximal strict Hopf chain ending at a path.
    Maxchain {
        /// Dyck path as an N/E word; it must leave the diagonal at most once.
        #[arg(long)]
        path: DyckPath,
    },
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["omega", "atoms"])))]
pub struct PipedreamsArgs {
    /// Exit permutation in one-line notation, e.g. 2431 or 10,2,1,3,4,5,6,7,8,9.
    #[arg(long)]
    pub omega: Option<Permutation>,
    /// Print only the number of pipe dreams.
    #[arg(long)]
    pub count: bool,
    /// Atom set of a subalgebra: "identities", "dominant", or a comma-separated list.
    #[arg(long, requires = "n")]
    pub atoms: Option<AtomSet>,
    /// Size for --atoms.
    #[arg(long)]
    pub n: Option<usize>,
    /// Split the subalgebra dimension by number of atoms.
    #[arg(long, requires = "atoms")]
    pub by_atoms_k: bool,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("view").args(["counts", "frobenius", "bigraded"])))]
pub struct ChainsArgs {
    /// Path size.
    #[arg(long)]
    pub n: usize,
    /// Chain length.
    #[arg(long)]
    pub r: usize,
    /// Tamari, Hopf and labeled Hopf chain counts for every length up to r.
    #[arg(long)]
    pub counts: bool,
    /// The e-expansion at r (default view).
    #[arg(long)]
    pub frobenius: bool,
    /// The bigraded Hilbert series at r.
    #[arg(long)]
    pub bigraded: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    SteepBounce,
    HopfAxioms,
    Zeta,
    PsiIso,
}

/// Rendered result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    json: Value,
    csv: Option<String>,
    passed: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            csv: None,
            passed: true,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn verdict(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), rendered) } else { (rendered, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    let work = || execute(&cli);
    let result = match cli.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(Error::invalid("thread count", e.to_string())),
        },
        None => work(),
    };
    match result {
        Ok(report) => render(report, cli.format),
        Err(e) => Outcome {
            code: match e {
                Error::ResourceBound(_) => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render(report: Report, format: Format) -> Outcome {
    let code = if report.passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED };
    let body = match format {
        Format::Text => report.text,
        Format::Json => serde_json::to_string_pretty(&report.json).expect("reports serialize"),
        Format::Csv => match report.csv {
            Some(csv) => csv,
            None => {
                return Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: "error: this command has no CSV form\n".into(),
                }
            }
        },
    };
    let stdout = if body.ends_with('\n') { body } else { body + "\n" };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn bound(cli: &Cli, default: usize, requested: usize, what: &str) -> crate::Result<()> {
    let limit = cli.max_n.unwrap_or(default);
    if requested > limit {
        return Err(Error::ResourceBound(format!("{what} size {requested} exceeds the limit {limit} (see --max-n)")));
    }
    Ok(())
}

fn execute(cli: &Cli) -> crate::Result<Report> {
    match &cli.command {
        Command::Pipedreams(args) => pipedreams(cli, args),
        Command::Hilbert { atoms } => {
            let max_n = cli.max_n.ok_or_else(|| Error::invalid("hilbert", "--max-n is required"))?;
            hilbert(atoms, max_n)
        }
        Command::Walks { n, by_k } => {
            bound(cli, 30, *n, "walk")?;
            Ok(walks(*n, *by_k))
        }
        Command::Verify { check, n } => verify(cli, *check, *n),
        Command::Chains(args) => chains(cli, args),
        Command::Zeta { path, inverse } => {
            bound(cli, 8, path.size(), "path")?;
            let image = if *inverse { path.zeta_inverse() } else { path.zeta() };
            Ok(Report::new(image.to_string(), json!({ "input": path, "output": image, "inverse": inverse })))
        }
        Command::Maxchain { path } => {
            bound(cli, 8, path.size(), "path")?;
            let chain = max_strict_chain(path)?;
            let text = chain.paths.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            let csv = format!("index,path\n{}", lines(chain.paths.iter().enumerate().map(|(i, p)| format!("{},{p}", i + 1))));
            Ok(Report::new(text, json!({ "length": chain.len(), "paths": chain.paths })).with_csv(csv))
        }
    }
}

fn lines(rows: impl Iterator<Item = String>) -> String {
    rows.map(|row| row + "\n").collect()
}

fn pipedreams(cli: &Cli, args: &PipedreamsArgs) -> crate::Result<Report> {
    if let Some(omega) = &args.omega {
        bound(cli, 8, omega.size(), "permutation")?;
        let dreams = PipeDream::enumerate(omega);
        if args.count {
            let csv = format!("omega,count\n{omega},{}\n", dreams.len());
            return Ok(Report::new(dreams.len().to_string(), json!({ "omega": omega, "count": dreams.len() })).with_csv(csv));
        }
        let text = dreams.iter().map(PipeDream::to_ascii).collect::<Vec<_>>().join("\n\n");
        return Ok(Report::new(text, json!(dreams)));
    }
    let atoms = args.atoms.as_ref().expect("clap requires a source");
    let n = args.n.expect("clap requires n with atoms");
    bound(cli, 8, n, "subalgebra")?;
    let rows = subalgebra_dims(atoms, n);
    let row = &rows[n];
    if args.by_atoms_k {
        let text = lines(row.by_atom_count.iter().enumerate().map(|(k, c)| format!("k={k} {c}")));
        let csv = format!("k,count\n{}", lines(row.by_atom_count.iter().enumerate().map(|(k, c)| format!("{k},{c}"))));
        return Ok(Report::new(text, json!({ "n": n, "by_atom_count": row.by_atom_count })).with_csv(csv));
    }
    let csv = format!("n,dimension\n{n},{}\n", row.dimension);
    Ok(Report::new(row.dimension.to_string(), json!({ "n": n, "dimension": row.dimension })).with_csv(csv))
}

fn hilbert(atoms: &AtomSet, max_n: usize) -> crate::Result<Report> {
    let rows = subalgebra_dims(atoms, max_n);
    let text = lines(rows.iter().map(|r| {
        format!(
            "n={} dimension={} generators={} free={}",
            r.n, r.dimension, r.generators, r.free_dimension
        )
    }));
    let csv = format!(
        "n,dimension,generators,free_dimension\n{}",
        lines(rows.iter().map(|r| format!("{},{},{},{}", r.n, r.dimension, r.generators, r.free_dimension)))
    );
    let consistent = rows.iter().all(|r| r.is_free_consistent());
    Ok(Report::new(text, json!({ "atoms": atoms.to_string(), "rows": rows })).with_csv(csv).verdict(consistent))
}

fn walks(n: usize, by_k: bool) -> Report {
    if by_k {
        let counts = count_walks_by_up_steps(n);
        let text = lines(counts.iter().enumerate().map(|(k, c)| format!("k={k} {c}")));
        let csv = format!("k,count\n{}", lines(counts.iter().enumerate().map(|(k, c)| format!("{k},{c}"))));
        return Report::new(text, json!({ "n": n, "by_k": counts })).with_csv(csv);
    }
    let total = count_walks(n);
    Report::new(total.to_string(), json!({ "n": n, "count": total })).with_csv(format!("n,count\n{n},{total}\n"))
}

fn verify(cli: &Cli, check: Check, n: usize) -> crate::Result<Report> {
    match check {
        Check::SteepBounce => {
            bound(cli, 8, n, "steep-bounce")?;
            let rows = verify_steep_bounce(n);
            let passed = rows.iter().all(|r| r.equal);
            let text = lines(rows.iter().map(|r| {
                format!("k={} bounce={} steep={} {}", r.k, r.bounce_bottom, r.steep_top, if r.equal { "ok" } else { "MISMATCH" })
            }));
            let csv = format!(
                "k,bounce_bottom,steep_top\n{}",
                lines(rows.iter().map(|r| format!("{},{},{}", r.k, r.bounce_bottom, r.steep_top)))
            );
            Ok(Report::new(text, json!({ "n": n, "rows": rows, "passed": passed })).with_csv(csv).verdict(passed))
        }
        Check::HopfAxioms => {
            bound(cli, 6, n, "axiom check")?;
            let mut reports = vec![
                ("permutations", verify_axioms(Permutation::all, n)),
                ("pipe dreams", verify_axioms(PipeDream::all, n)),
            ];
            if n <= 4 {
                reports.push(("nu-trees", verify_axioms(all_trees, n)));
            }
            let passed = reports.iter().all(|(_, r)| r.passed());
            let text = lines(reports.iter().map(|(name, r)| {
                format!(
                    "{name}: {} elements, {} products, {} triples, {} failures",
                    r.elements,
                    r.compatibility_checks,
                    r.associativity_checks,
                    r.failures.len()
                )
            }));
            let json = json!(reports.iter().map(|(name, r)| json!({ "basis": name, "report": r })).collect::<Vec<_>>());
            Ok(Report::new(text, json).verdict(passed))
        }
        Check::Zeta => {
            bound(cli, 8, n, "zeta")?;
            let mut failures = Vec::new();
            for size in 0..=n {
                for path in DyckPath::all(size) {
                    let image = path.zeta();
                    if image.zeta_inverse() != path || image.area() != path.dinv() || image.bounce() != path.area() {
                        failures.push(path.to_string());
                    }
                }
            }
            let passed = failures.is_empty();
            let text = if passed { format!("zeta verified for n <= {n}") } else { format!("failures: {}", failures.join(" ")) };
            Ok(Report::new(text, json!({ "n": n, "failures": failures })).verdict(passed))
        }
        Check::PsiIso => {
            bound(cli, 5, n, "psi check")?;
            let failures = psi_failures(n);
            let passed = failures.is_empty();
            let text = if passed { format!("psi and phi verified for n <= {n}") } else { failures.join("\n") };
            Ok(Report::new(text, json!({ "n": n, "failures": failures })).verdict(passed))
        }
    }
}

fn psi_failures(max_n: usize) -> Vec<String> {
    let mut failures = Vec::new();
    for n in 0..=max_n {
        for omega in Permutation::dominant(n) {
            let nu = match omega.dominant_data() {
                Ok(data) => data.path,
                Err(e) => {
                    failures.push(e.to_string());
                    continue;
                }
            };
            let dreams = PipeDream::enumerate(&omega);
            let mut trees: Vec<NuTree> = dreams.iter().filter_map(|p| psi(p).ok()).collect();
            trees.sort();
            trees.dedup();
            if trees != NuTree::enumerate(&nu) {
                failures.push(format!("psi is not a bijection onto the trees of {nu}"));
            }
            for dream in &dreams {
                let (Ok(tree), Ok(path)) = (psi(dream), phi(dream)) else {
                    failures.push(format!("psi undefined on {}", dream.reading_string()));
                    continue;
                };
                let mut flipped: Vec<NuTree> = dream.flips().iter().filter_map(|f| psi(&dream.apply(f)).ok()).collect();
                flipped.sort();
                flipped.dedup();
                if flipped != tree.rotations() {
                    failures.push(format!("flips and rotations differ at {}", dream.reading_string()));
                }
                let mut covers: Vec<NuPath> =
                    dream.general_chute_covers_down().iter().filter_map(|q| phi(q).ok()).collect();
                covers.sort();
                if covers != path.up_covers() {
                    failures.push(format!("chutes and covers differ at {}", dream.reading_string()));
                }
                let image = dream.coproduct().map_basis(|(a, b)| (psi(a).ok(), psi(b).ok()));
                if tree.coproduct().map_basis(|(a, b)| (Some(a.clone()), Some(b.clone()))) != image {
                    failures.push(format!("coproducts differ at {}", dream.reading_string()));
                }
            }
        }
    }
    failures
}

fn chains(cli: &Cli, args: &ChainsArgs) -> crate::Result<Report> {
    let limits = ChainLimits {
        max_n: cli.max_n.unwrap_or(ChainLimits::default().max_n),
        time_budget: cli.time_budget.map(Duration::from_secs_f64),
    };
    if args.r == 0 {
        return Err(Error::invalid("chain length", "r must be positive"));
    }
    // Fail on the size bound before any work.
    drop(ChainSpace::new(args.n, &ChainLimits { time_budget: None, ..limits })?);
    let tables = ChainTables::new(args.n, &limits)?;
    if args.counts {
        let rows: Vec<_> = (1..=args.r).map(|r| tables.counts(r)).collect();
        let text = lines(rows.iter().map(|c| format!("r={} tamari={} hopf={} labeled={}", c.r, c.tamari, c.hopf, c.labeled)));
        let csv = format!(
            "r,tamari,hopf,labeled\n{}",
            lines(rows.iter().map(|c| format!("{},{},{},{}", c.r, c.tamari, c.hopf, c.labeled)))
        );
        return Ok(Report::new(text, json!(rows)).with_csv(csv));
    }
    if args.bigraded {
        let series = tables.bigraded.evaluate(args.r);
        let symmetric = tables.bigraded.is_symmetric();
        let json = json!({ "n": args.n, "r": args.r, "series": series, "binomial_expansion": tables.bigraded });
        let csv = format!(
            "deg_q1,deg_q2,coefficient\n{}",
            lines(series.terms().map(|((a, b), c)| format!("{a},{b},{c}")))
        );
        let mut text = String::new();
        let _ = writeln!(text, "{series}");
        if !symmetric {
            let _ = writeln!(text, "warning: not symmetric in q1 and q2");
        }
        return Ok(Report::new(text, json).with_csv(csv));
    }
    let values = tables.expansion.evaluate(args.r);
    let text = lines(values.iter().map(|(lambda, poly)| format!("e{lambda}: {poly}")));
    let csv = format!(
        "partition,degree,coefficient\n{}",
        lines(values.iter().flat_map(|(lambda, poly)| {
            poly.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(d, c)| format!("{lambda},{d},{c}"))
                .collect::<Vec<_>>()
        }))
    );
    let evaluated: Vec<(String, Vec<Integer>)> =
        values.iter().map(|(lambda, poly)| (lambda.to_string(), poly.coeffs().to_vec())).collect();
    let json = json!({ "n": args.n, "r": args.r, "evaluated": evaluated, "binomial_expansion": tables.expansion });
    Ok(Report::new(text, json).with_csv(csv))
}
