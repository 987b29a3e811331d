use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use equal_quartics::elliptic::{build_curve, parse_rational, solutions_from_point, CurvePoint};
use equal_quartics::families::{generate, FamilyId, Generation};
use equal_quartics::pipeline::{
    format_report, load_records, minimal_report, run_range, summary_path, verify_file, Coverage,
    Overrides, SearchConfig, SolutionRecord,
};
use equal_quartics::{Error, Result};

#[derive(Parser)]
#[command(name = "equal-quartics", version, about = "Search, verify and rank solutions of A^4 + hB^4 = C^4 + hD^4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run the strategy ladder over a range of h and append records to a file.
    Search(SearchArgs),
    /// Re-verify every record in a file.
    Verify { file: PathBuf },
    /// Print the smallest recorded solution per h.
    Report(ReportArgs),
    /// Evaluate one parametric family and print the normalized record.
    Family {
        #[arg(long)]
        id: FamilyId,
        /// One value, or two separated by a comma.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1..=2)]
        params: Vec<i64>,
    },
    /// Recover solutions from multiples of a point on the curve for (h, a, b).
    Elliptic {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, allow_hyphen_values = true)]
        seed_x: String,
        #[arg(long, allow_hyphen_values = true)]
        seed_y: String,
        #[arg(long, default_value_t = 3)]
        max_multiple: u64,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Key-value file (TOML) whose keys mirror the flags, with dashes as underscores.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    h_min: Option<u64>,
    #[arg(long)]
    h_max: Option<u64>,
    /// Comma-separated subset of families,brute,meet,quartic,elliptic.
    #[arg(long)]
    methods: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    stop_on_first: bool,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    family_bound: Option<u64>,
    #[arg(long)]
    brute_a_min: Option<u64>,
    #[arg(long)]
    brute_a_max: Option<u64>,
    #[arg(long)]
    brute_b_max: Option<u64>,
    #[arg(long)]
    brute_c_max: Option<u64>,
    #[arg(long)]
    meet_a_max: Option<u64>,
    #[arg(long)]
    meet_b_max: Option<u64>,
    #[arg(long)]
    meet_p: Option<u64>,
    #[arg(long)]
    meet_q: Option<u64>,
    #[arg(long)]
    quartic_ab_max: Option<u64>,
    #[arg(long)]
    quartic_height: Option<u64>,
    #[arg(long)]
    elliptic_ab_max: Option<u64>,
    #[arg(long)]
    elliptic_numerator_bound: Option<u64>,
    #[arg(long)]
    elliptic_denominator_bound: Option<u64>,
    #[arg(long)]
    elliptic_max_multiple: Option<u64>,
    /// Seed point `h:a:b:X:Y` with X, Y as num/den; repeatable.
    #[arg(long = "elliptic-seed", allow_hyphen_values = true)]
    elliptic_seeds: Vec<String>,
}

impl SearchArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            h_min: self.h_min,
            h_max: self.h_max,
            methods: self.methods.clone(),
            out: self.out.as_ref().map(|p| p.display().to_string()),
            stop_on_first: self.stop_on_first.then_some(true),
            workers: self.workers,
            family_bound: self.family_bound,
            brute_a_min: self.brute_a_min,
            brute_a_max: self.brute_a_max,
            brute_b_max: self.brute_b_max,
            brute_c_max: self.brute_c_max,
            meet_a_max: self.meet_a_max,
            meet_b_max: self.meet_b_max,
            meet_p: self.meet_p,
            meet_q: self.meet_q,
            quartic_ab_max: self.quartic_ab_max,
            quartic_height: self.quartic_height,
            elliptic_ab_max: self.elliptic_ab_max,
            elliptic_numerator_bound: self.elliptic_numerator_bound,
            elliptic_denominator_bound: self.elliptic_denominator_bound,
            elliptic_max_multiple: self.elliptic_max_multiple,
            elliptic_seeds: (!self.elliptic_seeds.is_empty()).then(|| self.elliptic_seeds.clone()),
        }
    }
}

#[derive(Args)]
struct ReportArgs {
    file: PathBuf,
    /// Exhaustive box the records came from; rows it does not cover are flagged.
    #[arg(long, requires = "b_max")]
    a_max: Option<u64>,
    #[arg(long, requires = "a_max")]
    b_max: Option<u64>,
}

fn search(args: SearchArgs) -> Result<ExitCode> {
    let file = match &args.config {
        Some(path) => Overrides::load(path)?,
        None => Overrides::default(),
    };
    let merged = file.merged(args.overrides());
    let mut cfg = SearchConfig::default();
    merged.apply(&mut cfg)?;
    let out = merged
        .out
        .map(PathBuf::from)
        .ok_or_else(|| Error::Config("no output file given (--out or `out` key)".into()))?;
    let summary = run_range(&cfg, &out)?;
    println!(
        "h in [{}, {}]: {} solved, {} unsolved, {} skipped, {} resumed, {} records written",
        summary.h_min,
        summary.h_max,
        summary.solved,
        summary.unsolved,
        summary.skipped,
        summary.resumed,
        summary.records_written
    );
    if !summary.unsolved_h.is_empty() {
        let list: Vec<String> = summary.unsolved_h.iter().map(u64::to_string).collect();
        println!("unsolved: {}", list.join(" "));
    }
    println!("summary: {}", summary_path(&out).display());
    Ok(ExitCode::SUCCESS)
}

fn verify(file: PathBuf) -> Result<ExitCode> {
    let report = verify_file(&file)?;
    for f in &report.failures {
        println!("line {}: {}", f.line, f.reason);
    }
    println!("{} checked, {} passed, {} failed", report.checked, report.passed, report.failures.len());
    Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn report(args: ReportArgs) -> Result<ExitCode> {
    let (records, bad) = load_records(&args.file)?;
    for f in &bad {
        eprintln!("skipping line {}: {}", f.line, f.reason);
    }
    let coverage = args.a_max.zip(args.b_max).map(|(a_max, b_max)| Coverage { a_max, b_max });
    print!("{}", format_report(&minimal_report(&records, coverage)));
    if coverage.is_none() {
        eprintln!("no --a-max/--b-max given: minimality unproven for every row (???)");
    }
    Ok(ExitCode::SUCCESS)
}

fn family(id: FamilyId, params: Vec<i64>) -> Result<ExitCode> {
    match generate(id, &params)? {
        Generation::Admissible(g) => {
            let raw: Vec<String> = g.raw.iter().map(ToString::to_string).collect();
            eprintln!("h = {}, raw (A, B, C, D) = ({})", g.h, raw.join(", "));
            println!("{}", SolutionRecord::new(g.solution).to_line());
        }
        Generation::Inadmissible(why) => println!("inadmissible: {why}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn elliptic(h: u64, a: u64, b: u64, x: &str, y: &str, max_multiple: u64) -> Result<ExitCode> {
    let curve = build_curve(a, b, h)?;
    let point = CurvePoint::affine(parse_rational(x)?, parse_rational(y)?);
    let found = solutions_from_point(&curve, &point, max_multiple, &mut |s| {
        println!("{}", SolutionRecord::new(s).to_line());
    })?;
    eprintln!("{found} solution(s) from multiples 1..={max_multiple}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Search(args) => search(args),
        Command::Verify { file } => verify(file),
        Command::Report(args) => report(args),
        Command::Family { id, params } => family(id, params),
        Command::Elliptic {
            h,
            a,
            b,
            seed_x,
            seed_y,
            max_multiple,
        } => elliptic(h, a, b, &seed_x, &seed_y, max_multiple),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
