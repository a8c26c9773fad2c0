//! The five subcommand implementations.

use std::io::Write as _;

use elso::{
    elstat, nulldist, seqks, DistSpec, EcdfConvention, NullDistribution, OneSampleStatistic,
    PooledGrid, Sample,
};
use serde::Serialize;

use crate::cache::{cache_file_name, load_or_simulate};
use crate::cli::{KSampleArgs, MethodArg, OneSampleArgs, PowerArgs, SurvArgs, TabArgs};
use crate::errors::{CliError, CliResult};
use crate::ingest;
use crate::orders;
use crate::report::{sig6, CriticalValue, NullProvenance, TestReport};
use crate::scenarios;

/// Where human-readable text goes: stdout normally, stderr under --json so
/// stdout stays machine-readable.
struct Out {
    json: bool,
}

impl Out {
    fn new(json: bool) -> Self {
        Self { json }
    }

    fn text(&self, s: &str) {
        if self.json {
            eprint!("{s}");
        } else {
            print!("{s}");
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) {
        if self.json {
            let rendered = serde_json::to_string_pretty(value).expect("serializable report");
            println!("{rendered}");
        }
    }
}

fn parse_alphas(raw: &str) -> CliResult<Vec<f64>> {
    let mut alphas = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let a: f64 = part
            .parse()
            .map_err(|_| CliError::Args(format!("cannot parse alpha '{part}'")))?;
        if !(a > 0.0 && a < 1.0) {
            return Err(CliError::Args(format!("alpha must lie in (0, 1), got {a}")));
        }
        alphas.push(a);
    }
    if alphas.is_empty() {
        return Err(CliError::Args("no alpha levels given".into()));
    }
    Ok(alphas)
}

/// `2..5` (inclusive range) or a comma list like `2,3,5`.
fn parse_k_list(raw: &str) -> CliResult<Vec<usize>> {
    let raw = raw.trim();
    if let Some((lo, hi)) = raw.split_once("..") {
        let lo: usize = lo
            .trim()
            .parse()
            .map_err(|_| CliError::Args(format!("bad k range '{raw}'")))?;
        let hi: usize = hi
            .trim()
            .parse()
            .map_err(|_| CliError::Args(format!("bad k range '{raw}'")))?;
        if lo < 2 || hi < lo {
            return Err(CliError::Args(format!(
                "bad k range '{raw}' (need 2 <= lo <= hi)"
            )));
        }
        return Ok((lo..=hi).collect());
    }
    let mut ks = Vec::new();
    for part in raw.split(',') {
        let k: usize = part
            .trim()
            .parse()
            .map_err(|_| CliError::Args(format!("cannot parse k '{part}'")))?;
        if k < 2 {
            return Err(CliError::Args(format!("k must be at least 2, got {k}")));
        }
        ks.push(k);
    }
    if ks.is_empty() {
        return Err(CliError::Args("no k values given".into()));
    }
    Ok(ks)
}

fn crit_values(nd: &NullDistribution, alphas: &[f64]) -> CliResult<Vec<CriticalValue>> {
    alphas
        .iter()
        .map(|&alpha| {
            Ok(CriticalValue {
                alpha,
                value: nd.critical_value(alpha)?,
            })
        })
        .collect()
}

fn provenance(nd: &NullDistribution) -> NullProvenance {
    NullProvenance {
        method: nd.method().as_str().to_string(),
        reps: nd.reps(),
        seed: nd.master_seed(),
        grid: nd.grid_size(),
    }
}

#[derive(Serialize)]
struct CommandReport<'a> {
    command: &'a str,
    input: String,
    groups: Vec<String>,
    reports: Vec<TestReport>,
}

pub fn cmd_k_sample(args: &KSampleArgs) -> CliResult<()> {
    let out = Out::new(args.json);
    let alphas = parse_alphas(&args.alphas)?;
    let raw = ingest::read_k_sample_csv(&args.input)?;
    let requested: Option<Vec<String>> = args
        .groups
        .as_ref()
        .map(|g| g.split(',').map(|s| s.trim().to_string()).collect());
    let (data, labels, defaulted) = ingest::select_groups(raw, requested.as_deref())?;
    if defaulted {
        eprintln!(
            "note: using first-occurrence group order {} (pass --groups to set the hypothesis order)",
            labels.join(",")
        );
    }
    let order = orders::parse_order(&args.order, data.k(), &orders::resolve_by_label(&labels))?;
    let order_str = orders::order_display(&order, &|i| labels[i].clone());
    let convention = args.ecdf.convention();
    let grid = PooledGrid::from_groups(&data);
    if grid.tie_count() > 0 {
        eprintln!(
            "warning: {} pooled point(s) carry more than one observation; the tests assume continuous data",
            grid.tie_count()
        );
    }

    let statistic = elstat::k_sample_tn_with(&data, &order, convention)?;
    let nd = match args.method {
        MethodArg::Finite => {
            let sizes: Vec<usize> = match args.null_n {
                Some(n) => vec![n; data.k()],
                None => data.sizes().to_vec(),
            };
            let method = match convention {
                EcdfConvention::RankScore => "finite-sample",
                EcdfConvention::Raw => "finite-sample-raw",
            };
            let total: usize = sizes.iter().sum();
            let weights: Vec<f64> = sizes.iter().map(|&n| n as f64 / total as f64).collect();
            let key = cache_file_name(method, data.k(), &weights, args.reps, 0, args.seed);
            load_or_simulate(args.cache_dir.as_deref(), &key, || {
                Ok(nulldist::simulate_null_finite_with(
                    &sizes, &order, args.reps, args.seed, convention,
                )?)
            })?
            .0
        }
        MethodArg::Limit => {
            let key = cache_file_name(
                "limit-k",
                data.k(),
                data.weights(),
                args.reps,
                args.grid,
                args.seed,
            );
            load_or_simulate(args.cache_dir.as_deref(), &key, || {
                Ok(nulldist::simulate_limit_k(
                    data.weights(),
                    &order,
                    args.reps,
                    args.grid,
                    args.seed,
                )?)
            })?
            .0
        }
    };

    let mut reports = vec![TestReport {
        test: "Tn".to_string(),
        statistic,
        p_value: nd.p_value(statistic),
        critical_values: crit_values(&nd, &alphas)?,
        k: data.k(),
        n: data.sizes().to_vec(),
        order: order_str.clone(),
        ecdf: Some(args.ecdf.name().to_string()),
        null: provenance(&nd),
        ties: grid.tie_count(),
    }];

    if args.with_sn {
        let sn = seqks::sn_statistic(&data);
        let crits = alphas
            .iter()
            .map(|&alpha| {
                Ok(CriticalValue {
                    alpha,
                    value: seqks::sn_critical(alpha, data.k())?,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        reports.push(TestReport {
            test: "Sn".to_string(),
            statistic: sn.statistic,
            p_value: seqks::sn_p_value(sn.statistic, data.k())?,
            critical_values: crits,
            k: data.k(),
            n: data.sizes().to_vec(),
            order: order_str.clone(),
            ecdf: None,
            null: NullProvenance {
                method: "closed-form-asymptotic".to_string(),
                reps: 0,
                seed: 0,
                grid: 0,
            },
            ties: grid.tie_count(),
        });
    }

    for r in &reports {
        out.text(&r.render_text());
    }
    out.emit_json(&CommandReport {
        command: "k-sample",
        input: args.input.display().to_string(),
        groups: labels,
        reports,
    });
    Ok(())
}

pub fn cmd_one_sample(args: &OneSampleArgs) -> CliResult<()> {
    let out = Out::new(args.json);
    let alphas = parse_alphas(&args.alphas)?;
    let sample = ingest::read_one_sample_csv(&args.input)?;
    let f0: DistSpec = args
        .f0
        .parse()
        .map_err(|e: elso::Error| CliError::Args(e.to_string()))?;

    let mut dup = 0usize;
    for pair in sample.values().windows(2) {
        if pair[0] == pair[1] {
            dup += 1;
        }
    }

    let statistics: Vec<(String, f64, OneSampleStatistic)> = {
        let mut v = vec![(
            "Tn".to_string(),
            elstat::one_sample_tn(&sample, &f0)?,
            OneSampleStatistic::Integral,
        )];
        if args.star {
            v.push((
                "Tn*".to_string(),
                elstat::one_sample_tn_star(&sample, &f0)?,
                OneSampleStatistic::Empirical,
            ));
        }
        v
    };

    let mut reports = Vec::new();
    for (name, statistic, kind) in statistics {
        let nd = match args.method {
            MethodArg::Limit => {
                let key = cache_file_name(
                    "limit-one-sample",
                    1,
                    &[1.0],
                    args.reps,
                    args.grid,
                    args.seed,
                );
                load_or_simulate(args.cache_dir.as_deref(), &key, || {
                    Ok(nulldist::simulate_limit_one(
                        args.reps, args.grid, args.seed,
                    )?)
                })?
                .0
            }
            MethodArg::Finite => {
                let method = match kind {
                    OneSampleStatistic::Integral => "finite-one-sample",
                    OneSampleStatistic::Empirical => "finite-one-sample-star",
                };
                let key = cache_file_name(method, sample.len(), &[1.0], args.reps, 0, args.seed);
                load_or_simulate(args.cache_dir.as_deref(), &key, || {
                    Ok(nulldist::simulate_null_finite_one(
                        sample.len(),
                        kind,
                        args.reps,
                        args.seed,
                    )?)
                })?
                .0
            }
        };
        reports.push(TestReport {
            test: name,
            statistic,
            p_value: nd.p_value(statistic),
            critical_values: crit_values(&nd, &alphas)?,
            k: 1,
            n: vec![sample.len()],
            order: format!("F >= {} stochastically", f0),
            ecdf: None,
            null: provenance(&nd),
            ties: dup,
        });
    }

    for r in &reports {
        out.text(&r.render_text());
    }
    out.emit_json(&CommandReport {
        command: "one-sample",
        input: args.input.display().to_string(),
        groups: vec![sample.label().to_string()],
        reports,
    });
    Ok(())
}

#[derive(Serialize)]
struct CritRow {
    k: usize,
    alpha: f64,
    value: f64,
}

#[derive(Serialize)]
struct CritReport<'a> {
    command: &'a str,
    method: String,
    ecdf: Option<String>,
    n_per_group: Option<usize>,
    grid: usize,
    reps: usize,
    seed: u64,
    critical_values: Vec<CritRow>,
}

pub fn cmd_critvals(args: &TabArgs) -> CliResult<()> {
    let out = Out::new(args.json);
    let ks = parse_k_list(&args.k)?;
    let alphas = parse_alphas(&args.alphas)?;
    let convention = args.ecdf.convention();

    let mut rows = Vec::new();
    let mut table_lines = String::new();
    table_lines.push_str(&format!(
        "critical values of Tn ({} method{})\n",
        match args.method {
            MethodArg::Finite => "finite-sample",
            MethodArg::Limit => "limit",
        },
        match args.method {
            MethodArg::Finite => format!(
                ", n={} per group, ecdf={}",
                args.n_per_group,
                args.ecdf.name()
            ),
            MethodArg::Limit => format!(", grid={}", args.grid),
        }
    ));
    let header: Vec<String> = alphas.iter().map(|a| format!("{a:>10}")).collect();
    table_lines.push_str(&format!("  k {}\n", header.join(" ")));

    for &k in &ks {
        let order = elso::OrderSpec::simple(k)?;
        let nd = match args.method {
            MethodArg::Finite => {
                let sizes = vec![args.n_per_group; k];
                let method = match convention {
                    EcdfConvention::RankScore => "finite-sample",
                    EcdfConvention::Raw => "finite-sample-raw",
                };
                let weights = vec![1.0 / k as f64; k];
                let key = cache_file_name(method, k, &weights, args.reps, 0, args.seed);
                load_or_simulate(args.cache_dir.as_deref(), &key, || {
                    Ok(nulldist::simulate_null_finite_with(
                        &sizes, &order, args.reps, args.seed, convention,
                    )?)
                })?
                .0
            }
            MethodArg::Limit => {
                let weights = vec![1.0 / k as f64; k];
                let key = cache_file_name("limit-k", k, &weights, args.reps, args.grid, args.seed);
                load_or_simulate(args.cache_dir.as_deref(), &key, || {
                    Ok(nulldist::simulate_limit_k(
                        &weights, &order, args.reps, args.grid, args.seed,
                    )?)
                })?
                .0
            }
        };
        let mut cells = Vec::new();
        for &alpha in &alphas {
            let value = nd.critical_value(alpha)?;
            cells.push(format!("{:>10}", sig6(value)));
            rows.push(CritRow { k, alpha, value });
        }
        table_lines.push_str(&format!("  {k} {}\n", cells.join(" ")));
    }

    out.text(&table_lines);
    out.emit_json(&CritReport {
        command: "critvals",
        method: match args.method {
            MethodArg::Finite => "finite-sample",
            MethodArg::Limit => "limit-k",
        }
        .to_string(),
        ecdf: matches!(args.method, MethodArg::Finite).then(|| args.ecdf.name().to_string()),
        n_per_group: matches!(args.method, MethodArg::Finite).then_some(args.n_per_group),
        grid: args.grid,
        reps: args.reps,
        seed: args.seed,
        critical_values: rows,
    });
    Ok(())
}

#[derive(Serialize)]
struct PowerRow {
    name: String,
    k: usize,
    n: Vec<usize>,
    dists: Vec<String>,
    order: String,
    alpha: f64,
    reps: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tn: Option<PowerCell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sn: Option<PowerCell>,
}

#[derive(Serialize)]
struct PowerCell {
    rate: f64,
    std_error: f64,
    critical_value: f64,
}

#[derive(Serialize)]
struct PowerReport<'a> {
    command: &'a str,
    config: String,
    rows: Vec<PowerRow>,
}

pub fn cmd_power(args: &PowerArgs) -> CliResult<()> {
    let out = Out::new(args.json);
    let loaded = scenarios::load_scenarios(&args.config)?;

    let mut rows = Vec::new();
    for item in &loaded {
        let sc = &item.scenario;
        let crit_tn = match (sc.tests().tn, item.crit_tn) {
            (false, _) => None,
            (true, Some(c)) => Some(c),
            (true, None) => {
                // Tabulation recipe: same order, n=100 per group, cached.
                let sizes = vec![100usize; sc.k()];
                let weights = vec![1.0 / sc.k() as f64; sc.k()];
                let key = cache_file_name(
                    "finite-sample",
                    sc.k(),
                    &weights,
                    args.null_reps,
                    0,
                    args.null_seed,
                );
                let (nd, _) = load_or_simulate(args.cache_dir.as_deref(), &key, || {
                    Ok(nulldist::simulate_null_finite(
                        &sizes,
                        sc.order(),
                        args.null_reps,
                        args.null_seed,
                    )?)
                })?;
                Some(nd.critical_value(sc.alpha())?)
            }
        };
        let crit_sn = match (sc.tests().sn, item.crit_sn) {
            (false, _) => None,
            (true, Some(c)) => Some(c),
            (true, None) => Some(seqks::sn_critical(sc.alpha(), sc.k())?),
        };

        let result = elso::power::run_power(sc, crit_tn, crit_sn)?;
        let cell = |p: &elso::TestPower| PowerCell {
            rate: p.rate,
            std_error: p.std_error,
            critical_value: p.critical_value,
        };
        rows.push(PowerRow {
            name: item.name.clone(),
            k: sc.k(),
            n: sc.n_per_group().to_vec(),
            dists: item.dists_display.clone(),
            order: item.order_display.clone(),
            alpha: sc.alpha(),
            reps: sc.reps(),
            seed: sc.seed(),
            tn: result.tn.as_ref().map(cell),
            sn: result.sn.as_ref().map(cell),
        });
    }

    let mut text = String::new();
    for row in &rows {
        text.push_str(&format!(
            "scenario {} k={} n={:?} alpha={} reps={} seed={} dists=[{}] order={}\n",
            row.name,
            row.k,
            row.n,
            row.alpha,
            row.reps,
            row.seed,
            row.dists.join(", "),
            row.order
        ));
        let fmt_cell = |label: &str, c: &Option<PowerCell>| {
            c.as_ref()
                .map(|c| {
                    format!(
                        "{label}: rate={} se={} crit={}",
                        sig6(c.rate),
                        sig6(c.std_error),
                        sig6(c.critical_value)
                    )
                })
                .unwrap_or_default()
        };
        let cells: Vec<String> = [fmt_cell("Tn", &row.tn), fmt_cell("Sn", &row.sn)]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
        text.push_str(&format!("  {}\n", cells.join(" | ")));
    }
    out.text(&text);
    out.emit_json(&PowerReport {
        command: "power",
        config: args.config.display().to_string(),
        rows,
    });
    Ok(())
}

pub fn cmd_survcurves(args: &SurvArgs) -> CliResult<()> {
    let raw = ingest::read_k_sample_csv(&args.input)?;
    let requested: Option<Vec<String>> = args
        .groups
        .as_ref()
        .map(|g| g.split(',').map(|s| s.trim().to_string()).collect());
    let (data, labels, _) = ingest::select_groups(raw, requested.as_deref())?;

    let mut writer: Box<dyn std::io::Write> = match &args.output {
        Some(path) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(path)
                .map_err(|e| CliError::Input(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(writer, "group,x,survival").map_err(|e| CliError::Input(e.to_string()))?;
    for (label, group) in labels.iter().zip(data.groups()) {
        for (x, survival) in survival_steps(group) {
            writeln!(writer, "{label},{x},{survival}")
                .map_err(|e| CliError::Input(e.to_string()))?;
        }
    }
    writer.flush().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(())
}

/// Step coordinates (x, 1 - F̂(x)) at the distinct observed values.
fn survival_steps(sample: &Sample) -> Vec<(f64, f64)> {
    let values = sample.values();
    let n = values.len() as f64;
    let mut steps = Vec::new();
    let mut i = 0usize;
    while i < values.len() {
        let x = values[i];
        let mut j = i;
        while j < values.len() && values[j] == x {
            j += 1;
        }
        steps.push((x, (values.len() - j) as f64 / n));
        i = j;
    }
    steps
}
