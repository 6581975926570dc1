use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use opineq::harness::{
    random_pair, render_report, run_campaign_with, tol_scale_from_env, CampaignConfig,
    InstanceSpec, ReportFormat, TheoremSelection,
};
use opineq::ineq::run_example_suite;
use opineq::weights::validate;
use opineq::{Error, OperatorFunction, QuadratureRule, WeightFunction};

#[derive(Parser)]
#[command(
    name = "opineq",
    version,
    about = "Check operator inequalities on random matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded campaign and write a JSON or CSV report.
    Run {
        /// Matrix dimension, or a comma separated list.
        #[arg(long, default_value = "4")]
        dim: String,
        /// Spectrum interval `a:b`.
        #[arg(long, default_value = "0.5:4", allow_hyphen_values = true)]
        interval: String,
        /// Function spec: power:<r>, log, xlogx, inverse, square, neg:<spec>.
        /// A comma separated list runs each in turn.
        #[arg(long = "fn", default_value = "power:2")]
        function: String,
        /// Weight spec: constant:<c>, bump, vee, table:<path>. Comma separated
        /// lists are accepted except for tables.
        #[arg(long, default_value = "bump")]
        weight: String,
        /// Inclusive seed range `lo:hi`.
        #[arg(long, default_value = "0:99")]
        seeds: String,
        /// `all` or a comma separated list of theorem ids.
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Gauss-Legendre points per panel and panel count, `16x32`.
        #[arg(long, default_value = "16x32")]
        quad: String,
        #[arg(long, default_value = "json")]
        format: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the worked examples for powers, the inverse and the logarithm.
    Examples {
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value = "0.5:4")]
        interval: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "16x32")]
        quad: String,
    },
    /// Print the validation summary of a weight.
    ValidateWeight {
        /// Weight spec, e.g. `table:weights.csv`.
        spec: String,
    },
}

fn parse_pair<T: std::str::FromStr>(s: &str, sep: char, what: &str) -> Result<(T, T), Error> {
    let bad = || Error::InvalidSpec(format!("expected {what}, got '{s}'"));
    let (lo, hi) = s.split_once(sep).ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_list<T, F>(s: &str, parse: F) -> Result<Vec<T>, Error>
where
    F: Fn(&str) -> Result<T, Error>,
{
    s.split(',').map(|x| parse(x.trim())).collect()
}

fn weights_from(s: &str) -> Result<Vec<WeightFunction>, Error> {
    if s.trim_start().starts_with("table:") {
        return Ok(vec![s.parse()?]);
    }
    parse_list(s, str::parse)
}

#[allow(clippy::too_many_arguments)]
fn run(
    dim: &str,
    interval: &str,
    function: &str,
    weight: &str,
    seeds: &str,
    theorems: &str,
    quad: &str,
    format: &str,
    out: Option<PathBuf>,
    jobs: Option<usize>,
) -> Result<ExitCode, Error> {
    let dims = parse_list(dim, |d| {
        d.parse::<usize>()
            .map_err(|_| Error::InvalidSpec(format!("bad dimension '{d}'")))
    })?;
    let interval: (f64, f64) = parse_pair(interval, ':', "an interval a:b")?;
    let functions: Vec<OperatorFunction> = parse_list(function, str::parse)?;
    let weights = weights_from(weight)?;
    let (lo, hi): (u64, u64) = parse_pair(seeds, ':', "a seed range lo:hi")?;
    if lo > hi {
        return Err(Error::InvalidSpec(format!("empty seed range {seeds}")));
    }
    let selection = TheoremSelection::parse(theorems)?;
    let quad: (usize, usize) = parse_pair(quad, 'x', "a quadrature size like 16x32")?;
    let format: ReportFormat = format.parse()?;

    let mut specs = Vec::new();
    for &d in &dims {
        for f in &functions {
            for p in &weights {
                for seed in lo..=hi {
                    let mut spec = InstanceSpec::new(d, interval, seed, f.clone(), p.clone());
                    spec.quad = quad;
                    spec.validate()?;
                    specs.push(spec);
                }
            }
        }
    }
    let config = CampaignConfig {
        tol_scale: tol_scale_from_env()?,
        jobs,
    };
    let report = run_campaign_with(&specs, &selection, &config)?;
    let text = render_report(&report, format);
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| Error::Io {
            path,
            message: e.to_string(),
        })?,
        None => println!("{text}"),
    }
    for f in &report.failures {
        eprintln!(
            "FAIL {} seed={} {}: {}",
            f.theorem, f.seed, f.instance, f.reason
        );
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn examples(dim: usize, interval: &str, seed: u64, quad: &str) -> Result<ExitCode, Error> {
    let interval: (f64, f64) = parse_pair(interval, ':', "an interval a:b")?;
    let (points, panels): (usize, usize) = parse_pair(quad, 'x', "a quadrature size like 16x32")?;
    let spec = InstanceSpec::new(
        dim,
        interval,
        seed,
        OperatorFunction::Square,
        WeightFunction::bump(),
    );
    let (a, b) = random_pair(&spec)?;
    let rule = QuadratureRule::new(points, panels)?;
    let reports = run_example_suite(&a, &b, &rule)?;
    let mut ok = true;
    for r in &reports {
        ok &= r.pass();
        let tight = r
            .tightness
            .map(|t| format!("{t:.4}"))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:4} {:<42} coefficient={:<22} margin={:+.3e} tightness={}",
            if r.pass() { "PASS" } else { "FAIL" },
            r.label,
            r.coefficient,
            r.worst_margin(),
            tight
        );
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn validate_weight(spec: &str) -> Result<ExitCode, Error> {
    let p: WeightFunction = spec.parse()?;
    let v = validate(&p);
    let opt = |x: Option<f64>| x.map_or("-".to_string(), |x| format!("{x}"));
    println!("weight            {p}");
    println!(
        "symmetric         {} (residual {:e})",
        v.symmetric, v.symmetry_residual
    );
    println!(
        "monotone          {}",
        v.monotone_class.map_or("no".to_string(), |m| m.to_string())
    );
    println!("nonnegative       {}", v.nonnegative);
    println!("p(0)              {}", v.p0);
    println!("p(1/2)            {}", v.p_half);
    println!("integral          {}", v.integral);
    println!("||p'||_inf        {}", opt(v.dinf_norm));
    println!("||p'||_2          {}", opt(v.d2_norm));
    println!("valid             {}", v.valid);
    Ok(if v.valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            dim,
            interval,
            function,
            weight,
            seeds,
            theorems,
            quad,
            format,
            out,
            jobs,
        } => run(
            &dim, &interval, &function, &weight, &seeds, &theorems, &quad, &format, out, jobs,
        ),
        Command::Examples {
            dim,
            interval,
            seed,
            quad,
        } => examples(dim, &interval, seed, &quad),
        Command::ValidateWeight { spec } => validate_weight(&spec),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
