use std::fs;
use std::path::PathBuf;

use rft_core::{
    complexity, effective_lr_factor, index_from_energy, index_from_mean_eigenvalue,
    most_likely_mean_eigenvalue, semicircle_cdf, semicircle_density, CovarianceModel,
    LandscapeConstants, SupportMode,
};

use crate::args::{TableKind, TheoryArgs};
use crate::csvio::write_csv;
use crate::error::CliError;
use crate::manifest::Manifest;
use crate::mixture::parse_mixture;

/// Writes the constants report and/or one theory table, plus a manifest,
/// into `--out-dir`.
pub fn run(args: &TheoryArgs, argv: &[String]) -> Result<(), CliError> {
    if !args.constants && args.table.is_none() {
        return Err(CliError::Usage(
            "nothing to write: pass --constants and/or --table".to_string(),
        ));
    }
    if args.points < 2 {
        return Err(CliError::Usage(format!(
            "--points must be at least 2, got {}",
            args.points
        )));
    }
    let cov = parse_mixture(&args.mixture)?;
    let consts = LandscapeConstants::from_covariance(&cov, args.n)?;
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::io("create directory", &args.out_dir, e))?;

    let mut manifest = Manifest::new(argv);
    manifest.push("config.mixture", &args.mixture);
    manifest.push("config.points", args.points);
    if let Some(n) = args.n {
        manifest.push("config.n", n);
    }
    manifest.push("result.eps_c", consts.eps_c);

    if args.constants {
        let path = args.out_dir.join("constants.txt");
        fs::write(&path, constants_report(&args.mixture, &cov, &consts))
            .map_err(|e| CliError::io("write", &path, e))?;
        manifest.push_path("output.constants", &path);
    }
    if let Some(kind) = args.table {
        let path = write_table(kind, &consts, args.points, &args.out_dir)?;
        manifest.push_path("output.table", &path);
    }
    manifest.write(&args.out_dir.join("theory.manifest"))
}

fn constants_report(mixture: &str, cov: &CovarianceModel, consts: &LandscapeConstants) -> String {
    let mut out = String::new();
    let mut line = |key: &str, value: f64| {
        out.push_str(&format!("{key} = {}\n", value + 0.0));
    };
    line("f0", consts.f0);
    line("f1", consts.f1);
    line("f2", consts.f2);
    line("P", consts.p);
    line("Q", consts.q);
    if let Some(p_n) = consts.p_n {
        line("P_N", p_n);
    }
    if let Some(q_n) = consts.q_n {
        line("Q_N", q_n);
    }
    line("eps_c", consts.eps_c);
    line("C1", consts.c1);
    line("C2", consts.c2);
    line("M.11", consts.m[0][0]);
    line("M.12", consts.m[0][1]);
    line("M.21", consts.m[1][0]);
    line("M.22", consts.m[1][1]);
    line("effective_lr_factor", effective_lr_factor(cov));
    format!("mixture = {mixture}\n{out}")
}

/// Inclusive grid of `points` values from `lo` to `hi`. The first and last
/// values land on the endpoints exactly, and with an odd count and
/// `lo = -hi` the middle value is exactly zero.
fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| lo + (i as f64 / (points - 1) as f64) * (hi - lo))
        .collect()
}

fn write_table(
    kind: TableKind,
    consts: &LandscapeConstants,
    points: usize,
    out_dir: &std::path::Path,
) -> Result<PathBuf, CliError> {
    let edge = 2.0 * consts.f2.sqrt();
    let (name, header, rows): (&str, Vec<&str>, Vec<Vec<f64>>) = match kind {
        TableKind::Semicircle => {
            let mut rows = Vec::with_capacity(points);
            for lambda in grid(-edge, edge, points) {
                rows.push(vec![
                    lambda,
                    semicircle_density(lambda, consts.f2)?,
                    semicircle_cdf(lambda, consts.f2)?,
                ]);
            }
            ("semicircle.csv", vec!["lambda", "density", "cdf"], rows)
        }
        TableKind::IndexVsEigenvalue => {
            let mut rows = Vec::with_capacity(points);
            for lambda_bar in grid(-edge, edge, points) {
                let alpha =
                    index_from_mean_eigenvalue(lambda_bar, consts.f2, SupportMode::Clamp)?;
                rows.push(vec![lambda_bar, alpha]);
            }
            (
                "index_vs_eigenvalue.csv",
                vec!["lambda_bar", "alpha"],
                rows,
            )
        }
        TableKind::IndexVsEnergy => {
            let mut rows = Vec::with_capacity(points);
            for eps in grid(consts.eps_c, -consts.eps_c, points) {
                rows.push(vec![
                    eps,
                    index_from_energy(eps, consts)?,
                    most_likely_mean_eigenvalue(eps, consts),
                ]);
            }
            ("index_vs_energy.csv", vec!["eps", "alpha", "lambda_bar"], rows)
        }
        TableKind::ComplexitySurface => {
            let mut rows = Vec::with_capacity(points * points);
            for eps in grid(consts.eps_c, -consts.eps_c, points) {
                for lambda_bar in grid(-edge, edge, points) {
                    rows.push(vec![eps, lambda_bar, complexity(eps, lambda_bar, consts)]);
                }
            }
            (
                "complexity_surface.csv",
                vec!["eps", "lambda_bar", "sigma"],
                rows,
            )
        }
    };
    let path = out_dir.join(name);
    write_csv(&path, &header, &rows)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_endpoints_and_center_exactly() {
        let consts = LandscapeConstants::from_covariance(
            &CovarianceModel::pure(3).unwrap(),
            None,
        )
        .unwrap();
        let g = grid(consts.eps_c, -consts.eps_c, 101);
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], consts.eps_c);
        assert_eq!(g[100], -consts.eps_c);
        assert_eq!(g[50], 0.0);
    }

    #[test]
    fn report_contains_the_critical_energy() {
        let cov = CovarianceModel::pure(3).unwrap();
        let consts = LandscapeConstants::from_covariance(&cov, None).unwrap();
        let report = constants_report("3:1.0", &cov, &consts);
        assert!(report.contains("eps_c = -2.04124"), "{report}");
        assert!(report.contains("effective_lr_factor = 2.2"), "{report}");
        assert!(report.contains("P = 0.41666666666666"), "{report}");
    }
}
