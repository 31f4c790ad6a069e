//! `sepindex`: command-line driver for separation indices of graphs and
//! triangulated 2-spheres, bistellar-move tooling, sphere censuses, and
//! closed-3-manifold invariants.
//!
//! Exit codes: 0 success, 1 verification violation, 2 input or parse
//! error, 3 vertex cap exceeded. All commands are deterministic for fixed
//! inputs and seeds; the thread count never changes an output byte.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sepindex::census::{classify_census, codes_text, csv_text, sphere_censuses_up_to, Census};
use sepindex::complex::Complex;
use sepindex::Error;
use sepindex::homology::analyze_3manifold;
use sepindex::io::{parse_auto, parse_complex, write_complex, ParsedInput};
use sepindex::moves::{build_stacked, parse_move_log, MoveSequence};
use sepindex::rational::{decimal_6sig, fraction_str};
use sepindex::separation::{
    check_cap, separation_profile, stacked_bound_verdict, stacked_value, zero_move_recurrence,
    SeparationProfile, StackedBoundVerdict, DEFAULT_CAP,
};

#[derive(Parser)]
#[command(
    name = "sepindex",
    version,
    about = "Separation indices, sphere censuses, bistellar moves, and 3-manifold reports"
)]
struct Cli {
    /// Worker threads for parallel sweeps (env SEPINDEX_THREADS; default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Separation index and per-size profile of a graph or facet list.
    SepIndex {
        /// Facet-list file ("n m" header) or raw edge list (one "u v" pair per line).
        input: PathBuf,
        /// Largest vertex count accepted (exit 3 beyond it).
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Reject non-maximal facets and unused labels.
        #[arg(long)]
        strict: bool,
        /// Write the per-size profile to this file.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Profile artifact format.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check sphere-bound and move-recurrence facts; nonzero exit on violation.
    Verify {
        /// Facet-list file for one triangulated 2-sphere.
        input: Option<PathBuf>,
        /// Verify an entire census level instead of a file.
        #[arg(long, conflicts_with = "input")]
        census: Option<usize>,
        /// Report only flag spheres in census mode.
        #[arg(long)]
        flag_only: bool,
        /// Seed for the census recurrence spot-checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reject non-maximal facets and unused labels.
        #[arg(long)]
        strict: bool,
        /// Largest vertex count accepted (exit 3 beyond it).
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Homology, mu_1, and tightness report for a closed 3-manifold, as JSON.
    Manifold3 {
        input: PathBuf,
        /// Also run the exponential tightness check (vertex cap 14).
        #[arg(long)]
        tight_bruteforce: bool,
        /// Reject non-maximal facets and unused labels.
        #[arg(long)]
        strict: bool,
        /// Largest vertex count accepted (exit 3 beyond it).
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Write the JSON report to this file as well as stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write a generated complex as a facet list.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Replay a move log and write the resulting facet list.
    Replay {
        /// Move log: lines like "0 a b c -> x", "1A b d -> a c", "2 x -> a b c".
        log: PathBuf,
        /// Starting complex (default: the 4-vertex sphere).
        #[arg(long)]
        start: Option<PathBuf>,
        /// Write the resulting facet list here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Enumerate triangulated 2-spheres up to isomorphism; write artifacts.
    Census {
        /// Largest vertex count to enumerate (at most 12).
        #[arg(long)]
        max_n: usize,
        /// Directory receiving census-N.codes and census-N.csv.
        #[arg(long)]
        out_dir: PathBuf,
        /// Restrict the artifacts to flag spheres.
        #[arg(long)]
        flag_only: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Stacked 2-sphere on n vertices grown from a seeded run of 0-moves.
    Stacked {
        n: usize,
        seed: u64,
        /// Write the facet list here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the generating move log.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Boundary of the cyclic 4-polytope on n vertices (a 3-sphere).
    Cyclic {
        n: usize,
        /// Write the facet list here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The 4-vertex 2-sphere (boundary of the 3-simplex).
    S24 {
        /// Write the facet list here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("SEPINDEX_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: could not configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(violations_found) => {
            if violations_found {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Runs one command; `Ok(true)` means a verification violation was found.
fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::SepIndex { input, cap, strict, out, format } => {
            cmd_sep_index(&input, cap, strict, out.as_deref(), format)?;
            Ok(false)
        }
        Command::Verify { input, census, flag_only, seed, strict, cap } => match (input, census) {
            (Some(path), None) => cmd_verify_file(&path, strict, cap),
            (None, Some(n)) => cmd_verify_census(n, flag_only, seed),
            _ => Err(Error::Input {
                message: "verify needs a facet-list file or --census N".into(),
            }),
        },
        Command::Manifold3 { input, tight_bruteforce, strict, cap, out } => {
            cmd_manifold3(&input, tight_bruteforce, strict, cap, out.as_deref())
        }
        Command::Gen { kind } => {
            cmd_gen(kind)?;
            Ok(false)
        }
        Command::Replay { log, start, out } => {
            cmd_replay(&log, start.as_deref(), out.as_deref())?;
            Ok(false)
        }
        Command::Census { max_n, out_dir, flag_only } => {
            cmd_census(max_n, &out_dir, flag_only)?;
            Ok(false)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input {
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Input {
        message: format!("cannot write {}: {e}", path.display()),
    })
}

/// Writes to the file when given, otherwise prints to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn profile_json(p: &SeparationProfile) -> String {
    let rows: Vec<serde_json::Value> = (0..=p.n)
        .map(|i| {
            serde_json::json!({
                "size": i,
                "sum_q_minus_1": p.sums[i].to_string(),
                "s_i": fraction_str(&p.s_i[i]),
            })
        })
        .collect();
    let doc = serde_json::json!({
        "n": p.n,
        "s": fraction_str(&p.s),
        "s_decimal": decimal_6sig(&p.s),
        "rows": rows,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}

fn cmd_sep_index(
    input: &Path,
    cap: usize,
    strict: bool,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Error> {
    let text = read_text(input)?;
    let graph = match parse_auto(&text, strict)? {
        ParsedInput::Graph(g) => g,
        ParsedInput::Complex(x) => x.one_skeleton()?,
    };
    check_cap(graph.n(), cap)?;
    let profile = separation_profile(&graph);
    println!(
        "n = {}, s = {} = {}",
        profile.n,
        fraction_str(&profile.s),
        decimal_6sig(&profile.s)
    );
    if let Some(path) = out {
        let artifact = match format {
            Format::Csv => profile.to_csv(),
            Format::Json => profile_json(&profile),
        };
        write_text(path, &artifact)?;
        println!("profile written to {}", path.display());
    }
    Ok(())
}

fn cmd_verify_file(path: &Path, strict: bool, cap: usize) -> Result<bool, Error> {
    let x = parse_complex(&read_text(path)?, strict)?;
    check_cap(x.vertex_count(), cap)?;
    let mut violated = false;

    match stacked_bound_verdict(&x)? {
        StackedBoundVerdict::EqualityStacked => {
            println!("sphere bound: equality, stacked");
        }
        StackedBoundVerdict::BelowNotStacked { gap } => {
            println!(
                "sphere bound: strictly below the stacked value (gap {}), not stacked",
                fraction_str(&gap)
            );
        }
        StackedBoundVerdict::Violation { s, bound, stacked } => {
            println!(
                "VIOLATION: s = {} vs stacked value {} (stacked: {stacked})",
                fraction_str(&s),
                fraction_str(&bound)
            );
            violated = true;
        }
    }

    let flag = x.is_flag()?;
    let flag_clique = x.is_flag_clique()?;
    if flag == flag_clique {
        println!("flag: {flag}");
    } else {
        println!(
            "flag: {flag} by the induced-3-cycle criterion, {flag_clique} by the clique criterion"
        );
    }

    let mut checked = 0;
    for f in x.facets() {
        let (lhs, rhs) = zero_move_recurrence(&x, &[f[0], f[1], f[2]])?;
        if lhs != rhs {
            println!(
                "VIOLATION: starring recurrence fails at facet {f:?}: {} vs {}",
                fraction_str(&lhs),
                fraction_str(&rhs)
            );
            violated = true;
        }
        checked += 1;
    }
    println!("starring recurrence: {checked} facets checked");
    Ok(violated)
}

fn cmd_verify_census(n: usize, flag_only: bool, seed: u64) -> Result<bool, Error> {
    let levels = sphere_censuses_up_to(n)?;
    let census = levels.last().expect("census levels");
    let report = classify_census(census);
    let mut violated = false;

    if flag_only {
        println!(
            "{} flag spheres, {} distinct indices",
            report.flag_count, report.distinct_s_among_flag
        );
    } else {
        println!(
            "{} spheres; max {} ({}); min {} ({})",
            report.classes,
            fraction_str(&report.max_s),
            if report.max_achievers_all_stacked { "stacked" } else { "NOT stacked" },
            fraction_str(&report.min_s),
            if report.min_achieved_by_flag { "flag" } else { "not flag" },
        );
    }

    let bound = stacked_value(n);
    for entry in &census.entries {
        let at_bound = entry.s == bound;
        if entry.s > bound || at_bound != entry.stacked {
            println!(
                "VIOLATION: sphere {} has s = {} (stacked: {})",
                entry.code.hex(),
                fraction_str(&entry.s),
                entry.stacked
            );
            violated = true;
        }
    }
    if !report.max_achievers_all_stacked {
        println!("VIOLATION: census maximum reached by a non-stacked sphere");
        violated = true;
    }
    // Every vertex count except 5 admits a flag sphere, and the census
    // minimum must be attained by one; n = 5 has no flag sphere at all.
    if n != 5 && !report.min_achieved_by_flag {
        println!("VIOLATION: census minimum missed by every flag sphere");
        violated = true;
    }

    let mut order: Vec<usize> = (0..census.entries.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let mut checked = 0;
    for &i in order.iter().take(25) {
        let x = &census.entries[i].complex;
        let facets = x.facets();
        let f = &facets[(seed as usize).wrapping_add(i) % facets.len()];
        let (lhs, rhs) = zero_move_recurrence(x, &[f[0], f[1], f[2]])?;
        if lhs != rhs {
            println!("VIOLATION: starring recurrence fails on sphere {}", census.entries[i].code.hex());
            violated = true;
        }
        checked += 1;
    }
    println!("starring recurrence: {checked} spot-checks");
    Ok(violated)
}

fn cmd_manifold3(
    input: &Path,
    tight_bruteforce: bool,
    strict: bool,
    cap: usize,
    out: Option<&Path>,
) -> Result<bool, Error> {
    let x = parse_complex(&read_text(input)?, strict)?;
    check_cap(x.vertex_count(), cap)?;
    let report = analyze_3manifold(&x, tight_bruteforce)?;
    let mut text = serde_json::to_string_pretty(&report).expect("serializable report");
    text.push('\n');
    print!("{text}");
    if let Some(path) = out {
        write_text(path, &text)?;
    }
    Ok(!report.violations.is_empty())
}

fn cmd_gen(kind: GenKind) -> Result<(), Error> {
    match kind {
        GenKind::Stacked { n, seed, out, log } => {
            let (x, seq) = build_stacked(n, seed)?;
            emit(out.as_deref(), &write_complex(&x))?;
            if let Some(path) = log {
                write_text(&path, &seq.to_log())?;
            }
        }
        GenKind::Cyclic { n, out } => {
            let x = Complex::cyclic_polytope_boundary(n)?;
            emit(out.as_deref(), &write_complex(&x))?;
        }
        GenKind::S24 { out } => {
            let x = Complex::from_facets(
                4,
                &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
                true,
            )?;
            emit(out.as_deref(), &write_complex(&x))?;
        }
    }
    Ok(())
}

fn cmd_replay(log: &Path, start: Option<&Path>, out: Option<&Path>) -> Result<(), Error> {
    let records = parse_move_log(&read_text(log)?)?;
    let start = match start {
        Some(path) => parse_complex(&read_text(path)?, true)?,
        None => Complex::from_facets(
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            true,
        )?,
    };
    let seq = MoveSequence { start, records };
    let x = seq.replay()?;
    emit(out, &write_complex(&x))
}

fn cmd_census(max_n: usize, out_dir: &Path, flag_only: bool) -> Result<(), Error> {
    fs::create_dir_all(out_dir).map_err(|e| Error::Input {
        message: format!("cannot create {}: {e}", out_dir.display()),
    })?;
    let levels = sphere_censuses_up_to(max_n)?;
    for census in &levels {
        let filtered;
        let level: &Census = if flag_only {
            filtered = Census {
                n: census.n,
                entries: census.entries.iter().filter(|e| e.flag).cloned().collect(),
            };
            &filtered
        } else {
            census
        };
        let codes_path = out_dir.join(format!("census-{}.codes", level.n));
        let csv_path = out_dir.join(format!("census-{}.csv", level.n));
        write_text(&codes_path, &codes_text(level))?;
        write_text(&csv_path, &csv_text(level))?;
        let report = classify_census(census);
        println!(
            "n={}: {} classes ({} stacked, {} flag) -> {}, {}",
            level.n,
            level.entries.len(),
            report.stacked_count,
            report.flag_count,
            codes_path.display(),
            csv_path.display()
        );
    }
    Ok(())
}
