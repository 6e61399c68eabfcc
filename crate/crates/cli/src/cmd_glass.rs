use std::path::Path;

use glass_sim::{
    covariance_check, enumerate_gibbs, hamiltonian_sk, ks_distance_to_semicircle,
    negative_fraction, sample_goe, spectrum, spherical_descent, stream_rng, CouplingTensor,
    GibbsEnsemble, SpinConfiguration, DENSE_BOUND,
};
use rft_core::{index_from_energy, CovarianceModel, LandscapeConstants};
use trainer::{glass_descent_experiment, Algo, TrainConfig};

use crate::args::{
    CovcheckArgs, DescendArgs, EnumerateArgs, GlassCommand, GoeArgs, IndexscanArgs, SampleArgs,
};
use crate::csvio::write_csv;
use crate::error::CliError;
use crate::manifest::Manifest;

pub fn run(command: &GlassCommand, argv: &[String]) -> Result<(), CliError> {
    match command {
        GlassCommand::Sample(args) => sample(args, argv),
        GlassCommand::Descend(args) => descend(args, argv),
        GlassCommand::Goe(args) => goe(args, argv),
        GlassCommand::Enumerate(args) => enumerate(args, argv),
        GlassCommand::Covcheck(args) => covcheck(args, argv),
        GlassCommand::Indexscan(args) => indexscan(args, argv),
    }
}

fn manifest_path(out: &Path) -> std::path::PathBuf {
    out.with_extension("manifest")
}

fn sample(args: &SampleArgs, argv: &[String]) -> Result<(), CliError> {
    let j = CouplingTensor::sample(args.n, args.p, args.seed)?;
    let rows: Vec<Vec<f64>> = j
        .values()
        .iter()
        .enumerate()
        .map(|(idx, &value)| vec![idx as f64, value])
        .collect();
    write_csv(&args.out, &["idx", "value"], &rows)?;

    let mut manifest = Manifest::new(argv);
    manifest.push("config.n", args.n);
    manifest.push("config.p", args.p);
    manifest.push("seed", args.seed);
    manifest.push("result.tuple_count", j.tuple_count());
    manifest.push_path("output.csv", &args.out);
    manifest.write(&manifest_path(&args.out))
}

fn descend(args: &DescendArgs, argv: &[String]) -> Result<(), CliError> {
    let j = CouplingTensor::sample(args.n, args.p, args.seed)?;
    let mut rng = stream_rng("descend-init", args.seed, 0);
    let sigma0 = SpinConfiguration::random_spherical(args.n, &mut rng);
    let trajectory = spherical_descent(&j, &sigma0, args.steps, args.lr, args.l2)?;
    let rows: Vec<Vec<f64>> = trajectory
        .records
        .iter()
        .map(|r| vec![r.step as f64, r.eps, r.grad_norm])
        .collect();
    write_csv(&args.out, &["step", "eps", "grad_norm"], &rows)?;

    let mut manifest = Manifest::new(argv);
    manifest.push("config.n", args.n);
    manifest.push("config.p", args.p);
    manifest.push("config.steps", args.steps);
    manifest.push("config.lr", args.lr);
    manifest.push("config.l2", args.l2);
    manifest.push("seed", args.seed);
    if let Some(last) = trajectory.records.last() {
        manifest.push("result.final_eps", last.eps);
        manifest.push("result.final_grad_norm", last.grad_norm);
    }
    manifest.push_path("output.csv", &args.out);
    manifest.write(&manifest_path(&args.out))
}

fn goe(args: &GoeArgs, argv: &[String]) -> Result<(), CliError> {
    if args.n > DENSE_BOUND {
        return Err(CliError::Resource(format!(
            "GOE spectra use the dense eigensolver, which needs n <= {DENSE_BOUND}, got n = {}",
            args.n
        )));
    }
    let matrix = sample_goe(args.n, args.seed)?;
    let eigenvalues = spectrum(&matrix);
    let rows: Vec<Vec<f64>> = eigenvalues
        .iter()
        .enumerate()
        .map(|(idx, &value)| vec![idx as f64, value])
        .collect();
    write_csv(&args.out, &["idx", "eigenvalue"], &rows)?;

    // GOE entries have variance 1/n, so the limiting spectrum is the
    // semicircle with unit curvature scale (support [-2, 2]).
    let ks = ks_distance_to_semicircle(&eigenvalues, 1.0)?;
    let mut manifest = Manifest::new(argv);
    manifest.push("config.n", args.n);
    manifest.push("seed", args.seed);
    manifest.push("result.ks_stat", ks);
    manifest.push("result.negative_fraction", negative_fraction(&eigenvalues));
    manifest.push_path("output.csv", &args.out);
    manifest.write(&manifest_path(&args.out))
}

fn enumerate(args: &EnumerateArgs, argv: &[String]) -> Result<(), CliError> {
    let j = CouplingTensor::sample(args.n, 2, args.seed)?;
    let ensemble = GibbsEnsemble::new(&j, args.beta)?;
    let report = enumerate_gibbs(&ensemble);

    let mut rows = Vec::with_capacity(report.probabilities.len());
    for (state, &probability) in report.probabilities.iter().enumerate() {
        let sigma: Vec<f64> = (0..args.n)
            .map(|i| if state >> i & 1 == 1 { 1.0 } else { -1.0 })
            .collect();
        let energy = hamiltonian_sk(&j, &SpinConfiguration::from_binary(sigma)?)?;
        rows.push(vec![state as f64, energy, probability]);
    }
    write_csv(&args.out, &["state", "energy", "probability"], &rows)?;

    let mut manifest = Manifest::new(argv);
    manifest.push("config.n", args.n);
    manifest.push("config.beta", args.beta);
    manifest.push("seed", args.seed);
    manifest.push("result.free_energy", report.free_energy);
    manifest.push("result.log_partition", report.log_partition);
    manifest.push("result.min_energy", report.min_energy);
    manifest.push("result.min_energy_per_site", report.min_energy / args.n as f64);
    manifest.push("result.ground_state", report.ground_state);
    manifest.push_path("output.csv", &args.out);
    manifest.write(&manifest_path(&args.out))
}

fn covcheck(args: &CovcheckArgs, argv: &[String]) -> Result<(), CliError> {
    let report = covariance_check(args.n, args.p, args.samples, args.seed)?;
    let rows: Vec<Vec<f64>> = report
        .bins
        .iter()
        .map(|bin| vec![bin.overlap, bin.empirical, bin.theory, bin.z])
        .collect();
    write_csv(&args.out, &["overlap", "empirical", "theory", "z"], &rows)?;

    let max_abs_z = report
        .bins
        .iter()
        .map(|bin| bin.z.abs())
        .fold(0.0_f64, f64::max);
    let mut manifest = Manifest::new(argv);
    manifest.push("config.n", args.n);
    manifest.push("config.p", args.p);
    manifest.push("config.samples", args.samples);
    manifest.push("seed", args.seed);
    manifest.push("result.max_abs_z", max_abs_z);
    manifest.push_path("output.csv", &args.out);
    manifest.write(&manifest_path(&args.out))
}

fn indexscan(args: &IndexscanArgs, argv: &[String]) -> Result<(), CliError> {
    if args.n > DENSE_BOUND {
        return Err(CliError::Resource(format!(
            "index measurement uses the dense Hessian path, which needs n <= {DENSE_BOUND}, got n = {}",
            args.n
        )));
    }
    let mut config = TrainConfig::glass(args.n, args.p);
    config.algo = Algo::Fixed;
    config.lambda0 = 0.0;
    config.lr = args.lr;
    config.epochs = args.steps;
    config.seed = args.seed;
    config.trace_probes = 1;
    config.index_every = args.measure_every.unwrap_or(args.steps.max(1));
    config.validate()?;

    let consts =
        LandscapeConstants::from_covariance(&CovarianceModel::pure(args.p)?, None)?;
    let report = glass_descent_experiment(&config)?;
    let mut rows = Vec::new();
    for record in &report.records {
        let (Some(alpha_hat), Some(lambda_bar_hat)) = (record.alpha_hat, record.lambda_bar_hat)
        else {
            continue;
        };
        // Energies can drift slightly past the index band at finite n;
        // clamping keeps the theory column defined everywhere.
        let clamped = record.eps.clamp(consts.eps_c, -consts.eps_c);
        let alpha_theory = index_from_energy(clamped, &consts)?;
        rows.push(vec![
            record.epoch as f64,
            record.eps,
            alpha_hat,
            lambda_bar_hat,
            alpha_theory,
        ]);
    }
    write_csv(
        &args.out,
        &["step", "eps", "alpha_hat", "lambda_bar_hat", "alpha_theory"],
        &rows,
    )?;

    let mut manifest = Manifest::new(argv);
    manifest.push("config.n", args.n);
    manifest.push("config.p", args.p);
    manifest.push("config.steps", args.steps);
    manifest.push("config.lr", args.lr);
    manifest.push("config.measure_every", config.index_every);
    manifest.push("seed", args.seed);
    if let Some(last) = rows.last() {
        manifest.push("result.final_eps", last[1]);
        manifest.push("result.final_alpha_hat", last[2]);
    }
    manifest.push_path("output.csv", &args.out);
    if let Some(failure) = &report.failure {
        let detail = crate::cmd_train::describe_failure(failure);
        manifest.push("result.failure", &detail);
        manifest.write(&manifest_path(&args.out))?;
        return Err(CliError::Numerical(format!(
            "{detail}; partial CSV retained at {}",
            args.out.display()
        )));
    }
    manifest.write(&manifest_path(&args.out))
}
