//! Parsers for the small spec strings taken on the command line.

use tgs_core::graph::Bipartition;

use crate::CliError;

/// `cut:<i>`, `site:<i>`, `even-odd`, or `set:<comma list>`.
pub fn parse_partition(spec: &str, n: usize) -> Result<Bipartition, CliError> {
    let usage = || CliError::Usage(format!(
        "malformed partition spec '{spec}' (expected cut:<i>, site:<i>, even-odd, or set:<i,j,...>)"
    ));
    if spec == "even-odd" {
        return Bipartition::even_odd(n).map_err(CliError::from);
    }
    let (kind, rest) = spec.split_once(':').ok_or_else(usage)?;
    match kind {
        "cut" => {
            let i: usize = rest.parse().map_err(|_| usage())?;
            Bipartition::contiguous_cut(n, i).map_err(CliError::from)
        }
        "site" => {
            let i: usize = rest.parse().map_err(|_| usage())?;
            Bipartition::single_site(n, i).map_err(CliError::from)
        }
        "set" => {
            let verts = parse_index_list(rest).map_err(|_| usage())?;
            Bipartition::new(verts, n).map_err(CliError::from)
        }
        _ => Err(usage()),
    }
}

/// `start:stop:steps` for an inclusive linear temperature grid.
pub fn parse_temps(spec: &str) -> Result<(f64, f64, usize), CliError> {
    let usage = || CliError::Usage(format!(
        "malformed temperature spec '{spec}' (expected start:stop:steps)"
    ));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(usage());
    }
    let start: f64 = parts[0].parse().map_err(|_| usage())?;
    let stop: f64 = parts[1].parse().map_err(|_| usage())?;
    let steps: usize = parts[2].parse().map_err(|_| usage())?;
    Ok((start, stop, steps))
}

pub fn parse_index_list(s: &str) -> Result<Vec<usize>, std::num::ParseIntError> {
    s.split(',').map(|t| t.trim().parse()).collect()
}

pub fn parse_coupling_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("malformed coupling list '{s}'")))
        })
        .collect()
}
