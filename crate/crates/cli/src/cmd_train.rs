use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anneal::{LossMode, StepSign};
use clap::ValueEnum;
use trainer::{
    run_algorithm, Algo, RunFailure, ScheduleKind, SmoothingKind, TargetSpec, TrainConfig,
};

use crate::args::{
    AlgoKind, LossModeArg, ScheduleArg, SmoothingArg, StepSignArg, TargetKind, TrainArgs,
};
use crate::csvio::write_csv;
use crate::error::CliError;
use crate::manifest::Manifest;
use crate::svg::{render, Panel, Series};

/// Every key a config file may set. Each one mirrors the train flag of the
/// same name.
const CONFIG_KEYS: [&str; 23] = [
    "target",
    "n",
    "p",
    "d-in",
    "d-h",
    "d-out",
    "samples",
    "noise",
    "algo",
    "lambda0",
    "lr",
    "epochs",
    "seed",
    "k",
    "T",
    "smoothing",
    "loss-mode",
    "step-sign",
    "two-step-schedule",
    "normalized-cosine",
    "trace-probes",
    "out",
    "svg",
];

/// Parses a flat `key = value` config file. `#` starts a comment, blank
/// lines are skipped, and keys must be unique and known.
fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io("read", path, e))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "{} line {}: expected key=value, got {raw:?}",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim().to_string();
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "{} line {}: unknown config key {key:?}",
                path.display(),
                lineno + 1
            )));
        }
        if map
            .insert(key.clone(), value.trim().to_string())
            .is_some()
        {
            return Err(CliError::Usage(format!(
                "{} line {}: duplicate config key {key:?}",
                path.display(),
                lineno + 1
            )));
        }
    }
    Ok(map)
}

/// Flag value if set, else the parsed config-file value, else `None`.
fn pick<T: FromStr>(
    flag: Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match file.get(key) {
        Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
            CliError::Usage(format!("config key {key}: cannot parse {raw:?}"))
        }),
        None => Ok(None),
    }
}

/// [`pick`] for clap value enums, accepting the same spellings as the
/// command line.
fn pick_enum<T: ValueEnum>(
    flag: Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match file.get(key) {
        Some(raw) => T::from_str(raw, true).map(Some).map_err(|_| {
            CliError::Usage(format!("config key {key}: unknown value {raw:?}"))
        }),
        None => Ok(None),
    }
}

#[derive(Debug)]
struct Resolved {
    config: TrainConfig,
    out: PathBuf,
    svg: Option<PathBuf>,
}

fn resolve(args: &TrainArgs) -> Result<Resolved, CliError> {
    let file = match &args.config {
        Some(path) => parse_config_file(path)?,
        None => BTreeMap::new(),
    };

    let target = pick_enum(args.target, &file, "target")?.ok_or_else(|| {
        CliError::Usage(
            "missing target: pass --target glass|mlp or set target in the config file"
                .to_string(),
        )
    })?;

    let n = pick(args.n, &file, "n")?;
    let p = pick(args.p, &file, "p")?;
    let d_in = pick(args.d_in, &file, "d-in")?;
    let d_h = pick(args.d_h, &file, "d-h")?;
    let d_out = pick(args.d_out, &file, "d-out")?;
    let samples = pick(args.samples, &file, "samples")?;
    let noise = pick(args.noise, &file, "noise")?;

    let mut config = match target {
        TargetKind::Glass => {
            for (set, name) in [
                (d_in.is_some(), "d-in"),
                (d_h.is_some(), "d-h"),
                (d_out.is_some(), "d-out"),
                (samples.is_some(), "samples"),
                (noise.is_some(), "noise"),
            ] {
                if set {
                    return Err(CliError::Usage(format!(
                        "{name} applies to the mlp target, not glass"
                    )));
                }
            }
            TrainConfig::glass(n.unwrap_or(32), p.unwrap_or(3))
        }
        TargetKind::Mlp => {
            for (set, name) in [(n.is_some(), "n"), (p.is_some(), "p")] {
                if set {
                    return Err(CliError::Usage(format!(
                        "{name} applies to the glass target, not mlp"
                    )));
                }
            }
            TrainConfig::mlp(
                d_in.unwrap_or(8),
                d_h.unwrap_or(16),
                d_out.unwrap_or(1),
                samples.unwrap_or(256),
                noise.unwrap_or(0.0),
            )
        }
    };

    if let Some(algo) = pick_enum(args.algo, &file, "algo")? {
        config.algo = match algo {
            AlgoKind::Fixed => Algo::Fixed,
            AlgoKind::Matched => Algo::Matched,
            AlgoKind::Cosine => Algo::Cosine,
            AlgoKind::TwoStep => Algo::TwoStep,
        };
    }
    if let Some(v) = pick(args.lambda0, &file, "lambda0")? {
        config.lambda0 = v;
    }
    if let Some(v) = pick(args.lr, &file, "lr")? {
        config.lr = v;
    }
    if let Some(v) = pick(args.epochs, &file, "epochs")? {
        config.epochs = v;
    }
    if let Some(v) = pick(args.seed, &file, "seed")? {
        config.seed = v;
    }
    if let Some(v) = pick(args.k, &file, "k")? {
        config.k = v;
    }
    if let Some(v) = pick(args.t, &file, "T")? {
        config.t = v;
    }
    if let Some(v) = pick_enum(args.smoothing, &file, "smoothing")? {
        config.smoothing = match v {
            SmoothingArg::Identity => SmoothingKind::Identity,
            SmoothingArg::MovingAverage => SmoothingKind::MovingAverage,
            SmoothingArg::Exponential => SmoothingKind::Exponential,
        };
    }
    if let Some(v) = pick_enum(args.loss_mode, &file, "loss-mode")? {
        config.loss_mode = match v {
            LossModeArg::Strict => LossMode::Strict,
            LossModeArg::Signed => LossMode::Signed,
        };
    }
    if let Some(v) = pick_enum(args.step_sign, &file, "step-sign")? {
        config.step_sign = match v {
            StepSignArg::Magnitude => StepSign::Magnitude,
            StepSignArg::SignPreserving => StepSign::SignPreserving,
        };
    }
    if let Some(v) = pick_enum(args.two_step_schedule, &file, "two-step-schedule")? {
        config.two_step_schedule = match v {
            ScheduleArg::Constant => ScheduleKind::Constant,
            ScheduleArg::Cosine => ScheduleKind::Cosine,
        };
    }
    if let Some(v) = pick(args.normalized_cosine, &file, "normalized-cosine")? {
        config.normalized_cosine = v;
    }
    if let Some(v) = pick(args.trace_probes, &file, "trace-probes")? {
        config.trace_probes = v;
    }
    config.validate()?;

    let out = pick(args.out.clone(), &file, "out")?
        .unwrap_or_else(|| PathBuf::from("train.csv"));
    let svg = pick(args.svg.clone(), &file, "svg")?;
    Ok(Resolved { config, out, svg })
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Fixed => "fixed",
        Algo::Matched => "matched",
        Algo::Cosine => "cosine",
        Algo::TwoStep => "two-step",
    }
}

fn echo_config(manifest: &mut Manifest, config: &TrainConfig) {
    match config.target {
        TargetSpec::Glass { n, p } => {
            manifest.push("config.target", "glass");
            manifest.push("config.n", n);
            manifest.push("config.p", p);
        }
        TargetSpec::Mlp {
            d_in,
            d_h,
            d_out,
            samples,
            noise,
        } => {
            manifest.push("config.target", "mlp");
            manifest.push("config.d-in", d_in);
            manifest.push("config.d-h", d_h);
            manifest.push("config.d-out", d_out);
            manifest.push("config.samples", samples);
            manifest.push("config.noise", noise);
        }
    }
    manifest.push("config.algo", algo_name(config.algo));
    manifest.push("config.lambda0", config.lambda0);
    manifest.push("config.lr", config.lr);
    manifest.push("config.epochs", config.epochs);
    manifest.push("seed", config.seed);
    manifest.push("config.k", config.k);
    manifest.push("config.T", config.t);
    manifest.push(
        "config.smoothing",
        match config.smoothing {
            SmoothingKind::Identity => "identity",
            SmoothingKind::MovingAverage => "moving-average",
            SmoothingKind::Exponential => "exponential",
        },
    );
    manifest.push(
        "config.loss-mode",
        match config.loss_mode {
            LossMode::Strict => "strict",
            LossMode::Signed => "signed",
        },
    );
    manifest.push(
        "config.step-sign",
        match config.step_sign {
            StepSign::Magnitude => "magnitude",
            StepSign::SignPreserving => "sign-preserving",
        },
    );
    manifest.push(
        "config.two-step-schedule",
        match config.two_step_schedule {
            ScheduleKind::Constant => "constant",
            ScheduleKind::Cosine => "cosine",
        },
    );
    manifest.push("config.normalized-cosine", config.normalized_cosine);
    manifest.push("config.trace-probes", config.trace_probes);
}

pub(crate) fn describe_failure(failure: &RunFailure) -> String {
    match failure {
        RunFailure::NonFiniteLoss { epoch, loss } => {
            format!("non-finite loss {loss} at epoch {epoch}")
        }
        RunFailure::NonpositiveLoss { epoch, loss } => format!(
            "nonpositive loss {loss} at epoch {epoch}: the matched schedule needs a positive loss in strict mode"
        ),
    }
}

pub fn run(args: &TrainArgs, argv: &[String]) -> Result<(), CliError> {
    let Resolved { config, out, svg } = resolve(args)?;
    let report = run_algorithm(&config)?;

    let rows: Vec<Vec<f64>> = report
        .records
        .iter()
        .map(|r| vec![r.epoch as f64, r.loss, r.lambda, r.trace_estimate, r.grad_norm])
        .collect();
    write_csv(
        &out,
        &["epoch", "loss", "lambda", "trace_estimate", "grad_norm"],
        &rows,
    )?;

    let mut manifest = Manifest::new(argv);
    echo_config(&mut manifest, &config);
    manifest.push_path("output.csv", &out);

    if let Some(svg_path) = &svg {
        if report.records.is_empty() {
            return Err(CliError::Numerical(format!(
                "run failed before its first record; no curves to render to {}",
                svg_path.display()
            )));
        }
        let epochs: Vec<f64> = report.records.iter().map(|r| r.epoch as f64).collect();
        let loss_panel = Panel {
            title: "loss".to_string(),
            x_label: "epoch".to_string(),
            y_label: "loss".to_string(),
            series: vec![Series {
                name: "loss".to_string(),
                points: epochs
                    .iter()
                    .zip(&report.records)
                    .map(|(&e, r)| (e, r.loss))
                    .collect(),
            }],
            vlines: Vec::new(),
        };
        let lambda_panel = Panel {
            title: "regularization strength".to_string(),
            x_label: "epoch".to_string(),
            y_label: "lambda".to_string(),
            series: vec![Series {
                name: "lambda".to_string(),
                points: epochs
                    .iter()
                    .zip(&report.records)
                    .map(|(&e, r)| (e, r.lambda))
                    .collect(),
            }],
            vlines: Vec::new(),
        };
        let document = render(&[loss_panel, lambda_panel]);
        fs::write(svg_path, document).map_err(|e| CliError::io("write", svg_path, e))?;
        manifest.push_path("output.svg", svg_path);
    }

    if let Some(last) = report.records.last() {
        manifest.push("result.final_loss", last.loss);
        manifest.push("result.final_lambda", last.lambda);
    }
    manifest.push("result.records", report.records.len());

    if let Some(failure) = &report.failure {
        let detail = describe_failure(failure);
        manifest.push("result.failure", &detail);
        manifest.write(&out.with_extension("manifest"))?;
        return Err(CliError::Numerical(format!(
            "{detail}; partial CSV retained at {}",
            out.display()
        )));
    }
    manifest.write(&out.with_extension("manifest"))
}
