use std::fs;

use crate::args::PlotArgs;
use crate::csvio::read_csv;
use crate::error::CliError;
use crate::manifest::Manifest;
use crate::svg::{render, Panel, Series};

/// Renders one CSV as a single-panel SVG: the x column against every
/// requested series column, with optional dashed vertical markers.
pub fn run(args: &PlotArgs, argv: &[String]) -> Result<(), CliError> {
    let table = read_csv(&args.input)?;
    let x_name = args
        .x
        .clone()
        .unwrap_or_else(|| table.header[0].clone());
    let x = table.column(&x_name).ok_or_else(|| {
        CliError::Usage(format!(
            "{}: no column {x_name:?} (columns: {})",
            args.input.display(),
            table.header.join(", ")
        ))
    })?;

    let y_names: Vec<String> = if args.y.is_empty() {
        table
            .header
            .iter()
            .filter(|h| **h != x_name)
            .cloned()
            .collect()
    } else {
        args.y.clone()
    };
    if y_names.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no series columns besides the x axis {x_name:?}",
            args.input.display()
        )));
    }

    let mut series = Vec::with_capacity(y_names.len());
    for name in &y_names {
        let column = table.column(name).ok_or_else(|| {
            CliError::Usage(format!(
                "{}: no column {name:?} (columns: {})",
                args.input.display(),
                table.header.join(", ")
            ))
        })?;
        series.push(Series {
            name: name.clone(),
            points: x.iter().copied().zip(column.iter().copied()).collect(),
        });
    }

    let title = args.title.clone().unwrap_or_else(|| {
        args.input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "plot".to_string())
    });
    let panel = Panel {
        title,
        x_label: x_name.clone(),
        y_label: if y_names.len() == 1 {
            y_names[0].clone()
        } else {
            String::new()
        },
        series,
        vlines: args.vline.clone(),
    };
    let document = render(&[panel]);
    fs::write(&args.out, document).map_err(|e| CliError::io("write", &args.out, e))?;

    let mut manifest = Manifest::new(argv);
    manifest.push_path("config.in", &args.input);
    manifest.push("config.x", &x_name);
    manifest.push("config.y", y_names.join(","));
    for (i, v) in args.vline.iter().enumerate() {
        manifest.push(&format!("config.vline.{i}"), *v);
    }
    manifest.push_path("output.svg", &args.out);
    manifest.write(&args.out.with_extension("manifest"))
}
