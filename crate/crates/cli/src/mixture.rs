use rft_core::CovarianceModel;

use crate::error::CliError;

/// Parses a mixture argument of the form `p:gamma[,p:gamma...]`, e.g.
/// `3:1.0` or `3:1.0,2:0.5`, and builds the covariance model. Degree and
/// weight rules (p >= 2, weights finite and nonnegative, at least one
/// positive) are enforced by the model constructor.
pub fn parse_mixture(spec: &str) -> Result<CovarianceModel, CliError> {
    let mut terms = Vec::new();
    for part in spec.split(',') {
        let Some((degree, weight)) = part.split_once(':') else {
            return Err(CliError::Usage(format!(
                "bad mixture term {part:?}: expected p:gamma, e.g. 3:1.0"
            )));
        };
        let p: u32 = degree.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "bad mixture degree {degree:?}: expected an integer p >= 2"
            ))
        })?;
        let gamma: f64 = weight.trim().parse().map_err(|_| {
            CliError::Usage(format!("bad mixture weight {weight:?}: expected a number"))
        })?;
        terms.push((p, gamma));
    }
    Ok(CovarianceModel::from_mixture(&terms)?)
}
