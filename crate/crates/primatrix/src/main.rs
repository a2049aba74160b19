use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use primatrix::classify::{classify_matrix, row_descriptors, RowClass};
use primatrix::density::{
    density_report, li, row_censuses, siegel_walfisz_compare, verify_pi_recurrence,
    verify_rho_recurrence,
};
use primatrix::matrix::{locate, MatrixSpec};
use primatrix::primes::{nth_prime, PrimeIndex};
use primatrix::report::{Cell, NamedTable, OutputFormat, Report};
use primatrix::sieve::{primes_up_to, twins_up_to, SieveConfig, DEFAULT_SEGMENT_SIZE};
use primatrix::transition::{row_children, transition_summary};
use primatrix::verify::run_identity_suite;
use primatrix::{Limits, DEFAULT_MAX_ROWS, DEFAULT_MAX_X};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "primatrix",
    version,
    about = "Arrange the integers by residue mod a primorial, then classify rows, \
             sieve primes along them, and audit the count identities"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Emit per-row detail tables where available.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count colored, single, and twin-member rows of one order.
    Classify {
        /// Matrix order: rows differ by the k-th primorial.
        #[arg(long, default_value_t = 4)]
        k: u32,
        /// Enumeration budget on the row count.
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: u64,
    },
    /// Recompute both sides of every structural identity up to an order.
    Verify {
        /// Highest order to check.
        #[arg(long, default_value_t = 6)]
        k_max: u32,
        /// Cutoff for the prime-count and density step laws.
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_X)]
        max_x: u64,
    },
    /// List twin prime pairs up to a cutoff via the twin rows.
    Twins {
        #[arg(long, default_value_t = 4)]
        k: u32,
        /// Both members of a pair must be at most this cutoff.
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_X)]
        max_x: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: u64,
        #[arg(long, default_value_t = DEFAULT_SEGMENT_SIZE)]
        segment_size: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Sieve every prime up to a cutoff by scanning uncolored rows.
    Primes {
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_X)]
        max_x: u64,
        #[arg(long, default_value_t = DEFAULT_SEGMENT_SIZE)]
        segment_size: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Census and average densities over the uncolored rows.
    Density {
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
        /// Also compare each residue class against li(x) / alpha.
        #[arg(long)]
        compare_li: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_X)]
        max_x: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: u64,
        #[arg(long, default_value_t = DEFAULT_SEGMENT_SIZE)]
        segment_size: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Tally the parent-to-child row bookkeeping for one order step.
    Transition {
        /// Child order; parents live at order k - 1.
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: u64,
    },
    /// Time the row sieve against a classic sieve at the same cutoff.
    Bench {
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_X)]
        max_x: u64,
        #[arg(long, default_value_t = DEFAULT_SEGMENT_SIZE)]
        segment_size: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let format: OutputFormat = cli.format.into();
    match run(cli) {
        Ok((report, code)) => {
            print!("{}", report.render(format));
            std::process::exit(code);
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<(Report, i32)> {
    match cli.command {
        Command::Classify { k, max_rows } => cmd_classify(k, max_rows, cli.verbose),
        Command::Verify {
            k_max,
            x,
            max_rows,
            max_x,
        } => cmd_verify(k_max, x, max_rows, max_x),
        Command::Twins {
            k,
            x,
            max_x,
            max_rows,
            segment_size,
            threads,
        } => cmd_twins(k, x, max_x, max_rows, segment_size, threads),
        Command::Primes {
            k,
            x,
            max_x,
            segment_size,
            threads,
        } => cmd_primes(k, x, max_x, segment_size, threads, cli.verbose),
        Command::Density {
            k,
            x,
            compare_li,
            max_x,
            max_rows,
            segment_size,
            threads,
        } => cmd_density(k, x, compare_li, max_x, max_rows, segment_size, threads, cli.verbose),
        Command::Transition { k, max_rows } => cmd_transition(k, max_rows, cli.verbose),
        Command::Bench {
            k,
            x,
            max_x,
            segment_size,
            threads,
        } => cmd_bench(k, x, max_x, segment_size, threads),
    }
}

fn class_cells(class: RowClass) -> (Cell, Cell) {
    let partner = match class {
        RowClass::TwinMember { partner } => Cell::Int(partner),
        _ => Cell::Empty,
    };
    (Cell::from(class.label()), partner)
}

fn cmd_classify(k: u32, max_rows: u64, verbose: bool) -> Result<(Report, i32)> {
    let k = PrimeIndex::new(k)?;
    let limits = Limits {
        max_rows,
        ..Limits::default()
    };
    let summary = classify_matrix(k, &limits)?;
    let mut report = Report::new("classify")
        .param("k", k.get())
        .param("max_rows", max_rows);
    report.scalar("omega", summary.omega);
    report.scalar("alpha", summary.alpha);
    report.scalar("beta", summary.beta);
    report.scalar("alpha_single", summary.alpha_single);
    report.scalar("alpha_twin_pairs", summary.alpha_twin_pairs);

    let mut table = NamedTable::new(
        "summary",
        &["k", "omega", "alpha", "beta", "alpha_single", "alpha_twin_pairs"],
    );
    table.push(vec![
        k.get().into(),
        summary.omega.into(),
        summary.alpha.into(),
        summary.beta.into(),
        summary.alpha_single.into(),
        summary.alpha_twin_pairs.into(),
    ]);
    report.table(table);

    if verbose {
        let mut rows = NamedTable::new("rows", &["row", "first_term", "class", "partner"]);
        for d in row_descriptors(k, &limits)? {
            let (class, partner) = class_cells(d.class);
            rows.push(vec![d.row.into(), d.first_term.into(), class, partner]);
        }
        report.table(rows);
        report.mark_primary();
    }
    Ok((report, 0))
}

fn cmd_verify(k_max: u32, x: u64, max_rows: u64, max_x: u64) -> Result<(Report, i32)> {
    let k_max = PrimeIndex::new(k_max)?;
    let limits = Limits { max_rows, max_x };
    let suite = run_identity_suite(k_max, x, &limits)?;
    let mut report = Report::new("verify")
        .param("k_max", k_max.get())
        .param("x", x);
    report.scalar("checks", suite.checks.len());
    report.scalar(
        "passed",
        suite.checks.len() - suite.failures() - suite.skipped(),
    );
    report.scalar("failed", suite.failures());
    report.scalar("skipped", suite.skipped());

    let mut table = NamedTable::new(
        "checks",
        &["identity", "lhs", "rhs", "residual", "status", "note"],
    );
    for check in &suite.checks {
        table.push(vec![
            check.tag.as_str().into(),
            check.lhs.as_str().into(),
            check.rhs.as_str().into(),
            check.residual.as_str().into(),
            check.status.label().into(),
            check
                .note
                .as_deref()
                .map(Cell::from)
                .unwrap_or(Cell::Empty),
        ]);
    }
    report.table(table);
    let code = if suite.passed() { 0 } else { 1 };
    Ok((report, code))
}

fn sieve_config(
    k: u32,
    x: u64,
    max_x: u64,
    max_rows: u64,
    segment_size: usize,
    threads: usize,
) -> Result<SieveConfig> {
    let mut config = SieveConfig::new(PrimeIndex::new(k)?, x);
    config.segment_size = segment_size;
    config.threads = threads;
    config.limits = Limits { max_rows, max_x };
    Ok(config)
}

fn cmd_twins(
    k: u32,
    x: u64,
    max_x: u64,
    max_rows: u64,
    segment_size: usize,
    threads: usize,
) -> Result<(Report, i32)> {
    let config = sieve_config(k, x, max_x, max_rows, segment_size, threads)?;
    let mut report = Report::new("twins").param("k", k).param("x", x);
    if let Some(warning) = config.cutoff_warning() {
        report.note(warning);
    }
    let twins = twins_up_to(&config)?;
    report.scalar("pairs", twins.len());
    if let Some(last) = twins.last() {
        report.scalar("largest_low", last.low);
        report.scalar("largest_high", last.high);
    }

    let spec = MatrixSpec::new(config.k)?;
    let mut table = NamedTable::new("pairs", &["low", "high", "row_low", "column"]);
    for pair in &twins {
        let coords = locate(&spec, pair.low as u128)?;
        table.push(vec![
            pair.low.into(),
            pair.high.into(),
            coords.row.into(),
            coords.column.into(),
        ]);
    }
    report.table(table);
    Ok((report, 0))
}

fn cmd_primes(
    k: u32,
    x: u64,
    max_x: u64,
    segment_size: usize,
    threads: usize,
    verbose: bool,
) -> Result<(Report, i32)> {
    let config = sieve_config(k, x, max_x, DEFAULT_MAX_ROWS, segment_size, threads)?;
    let mut report = Report::new("primes").param("k", k).param("x", x);
    let primes = primes_up_to(&config)?;
    report.scalar("count", primes.len());
    if let Some(largest) = primes.last() {
        report.scalar("largest", *largest);
    }

    let mut summary = NamedTable::new("summary", &["k", "x", "count", "largest"]);
    summary.push(vec![
        k.into(),
        x.into(),
        primes.len().into(),
        primes.last().map(|p| Cell::from(*p)).unwrap_or(Cell::Empty),
    ]);
    report.table(summary);

    if verbose {
        let spec = MatrixSpec::new(config.k)?;
        let mut table = NamedTable::new("primes", &["value", "row", "column"]);
        for &p in &primes {
            let coords = locate(&spec, p as u128)?;
            table.push(vec![p.into(), coords.row.into(), coords.column.into()]);
        }
        report.table(table);
        report.mark_primary();
    }
    Ok((report, 0))
}

#[allow(clippy::too_many_arguments)]
fn cmd_density(
    k: u32,
    x: u64,
    compare_li: bool,
    max_x: u64,
    max_rows: u64,
    segment_size: usize,
    threads: usize,
    verbose: bool,
) -> Result<(Report, i32)> {
    let config = sieve_config(k, x, max_x, max_rows, segment_size, threads)?;
    let mut report = Report::new("density").param("k", k).param("x", x);
    if let Some(warning) = config.cutoff_warning() {
        report.note(warning);
    }
    let density = density_report(&config)?;
    report.scalar("alpha", density.alpha);
    report.scalar("pi_total", density.pi_total);
    report.scalar("m_total", density.m_total);
    report.scalar("n_total", density.n_total);
    report.scalar("pi_av", Cell::rational(&density.pi_av));
    report.scalar("n_av", Cell::rational(&density.n_av));
    report.scalar("m_av_exact", Cell::rational(&density.m_av_exact));
    report.scalar("m_av_idealized", Cell::rational(&density.m_av_idealized));
    report.scalar("rho_av_exact", Cell::rational(&density.rho_av_exact));
    report.scalar(
        "rho_av_idealized",
        Cell::rational(&density.rho_av_idealized),
    );

    let p_k = nth_prime(config.k)?;
    let mut recurrences = NamedTable::new(
        "recurrences",
        &["law", "lhs", "rhs", "residual"],
    );
    if x >= p_k {
        let pi_step = verify_pi_recurrence(config.k, x, &config.limits)?;
        recurrences.push(vec![
            "prime-average-step".into(),
            pi_step.lhs.to_string().into(),
            pi_step.rhs.to_string().into(),
            pi_step.residual.to_string().into(),
        ]);
        let rho_step = verify_rho_recurrence(config.k, x, &config.limits)?;
        recurrences.push(vec![
            "density-step".into(),
            rho_step.lhs.to_string().into(),
            rho_step.rhs.to_string().into(),
            rho_step.residual.to_string().into(),
        ]);
    } else {
        report.note(format!(
            "step laws skipped: cutoff {x} is below p_{} = {p_k}",
            config.k
        ));
    }
    report.table(recurrences);

    if compare_li {
        report.scalar("li_x", li(x as f64)?);
        let mut table = NamedTable::new(
            "residue-classes",
            &["first_term", "actual", "expected", "rel_err"],
        );
        for row in siegel_walfisz_compare(&config)? {
            table.push(vec![
                row.first_term.into(),
                row.actual.into(),
                row.expected.into(),
                row.rel_err.into(),
            ]);
        }
        report.table(table);
        report.mark_primary();
    }

    if verbose {
        let mut table = NamedTable::new("rows", &["row", "first_term", "m", "pi", "n"]);
        for census in row_censuses(&config)? {
            table.push(vec![
                census.row.into(),
                census.first_term.into(),
                census.m.into(),
                census.pi.into(),
                census.n.into(),
            ]);
        }
        report.table(table);
        report.mark_primary();
    }
    Ok((report, 0))
}

fn cmd_transition(k: u32, max_rows: u64, verbose: bool) -> Result<(Report, i32)> {
    let k = PrimeIndex::new(k)?;
    let limits = Limits {
        max_rows,
        ..Limits::default()
    };
    let t = transition_summary(k, &limits)?;
    let mut report = Report::new("transition")
        .param("k", k.get())
        .param("max_rows", max_rows);
    report.scalar("beta_s", t.beta_s);
    report.scalar("beta_b", t.beta_b);
    report.scalar("beta_t", t.beta_t);
    report.scalar("alpha_t", t.alpha_t);

    let mut orders = NamedTable::new(
        "orders",
        &["order", "omega", "alpha", "beta", "alpha_single", "alpha_twin_pairs"],
    );
    for s in [&t.parent, &t.child] {
        orders.push(vec![
            s.k.get().into(),
            s.omega.into(),
            s.alpha.into(),
            s.beta.into(),
            s.alpha_single.into(),
            s.alpha_twin_pairs.into(),
        ]);
    }
    report.table(orders);

    if verbose {
        let parent_omega = t.parent.omega;
        let mut fates = NamedTable::new(
            "fates",
            &["parent_row", "parent_class", "children", "uncolored_children"],
        );
        for parent_row in 1..=parent_omega {
            let fate = row_children(k, parent_row as u128)?;
            let children = fate
                .children
                .iter()
                .map(|c| c.row.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let uncolored = fate
                .children
                .iter()
                .filter(|c| c.class.is_uncolored())
                .count();
            let (class, _) = class_cells(fate.parent_class);
            fates.push(vec![
                parent_row.into(),
                class,
                children.into(),
                uncolored.into(),
            ]);
        }
        report.table(fates);
        report.mark_primary();
    }
    Ok((report, 0))
}

fn cmd_bench(
    k: u32,
    x: u64,
    max_x: u64,
    segment_size: usize,
    threads: usize,
) -> Result<(Report, i32)> {
    let config = sieve_config(k, x, max_x, DEFAULT_MAX_ROWS, segment_size, threads)?;
    let mut report = Report::new("bench")
        .param("k", k)
        .param("x", x)
        .param("threads", threads);
    if let Some(warning) = config.cutoff_warning() {
        report.note(warning);
    }

    let start = std::time::Instant::now();
    let wheel = primes_up_to(&config)?;
    let wheel_ms = start.elapsed().as_secs_f64() * 1e3;

    let start = std::time::Instant::now();
    let classic = primatrix::primes::primes_up_to(x);
    let classic_ms = start.elapsed().as_secs_f64() * 1e3;

    let equal = wheel == classic;
    report.scalar("count", wheel.len());
    report.scalar("equal", equal);
    report.scalar("wheel_ms", wheel_ms);
    report.scalar("classic_ms", classic_ms);
    if wheel_ms > 0.0 {
        report.scalar("speedup", classic_ms / wheel_ms);
    }

    let mut table = NamedTable::new("timings", &["method", "primes", "millis"]);
    table.push(vec!["row-sieve".into(), wheel.len().into(), wheel_ms.into()]);
    table.push(vec![
        "classic".into(),
        classic.len().into(),
        classic_ms.into(),
    ]);
    report.table(table);
    Ok((report, if equal { 0 } else { 1 }))
}
