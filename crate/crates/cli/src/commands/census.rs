use std::path::Path;

use tree_energy_core::enumeration::{enumerate_trees, EnumSpec};
use tree_energy_core::spectral::Method;
use tree_energy_core::tree::{build_tstar, canonical_code};
use tree_energy_core::{Error, Tree};

use super::{energy_below, Context};
use crate::error::{CliError, Result};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy)]
pub(crate) struct CensusArgs {
    pub max_n: usize,
    pub max_degree: usize,
    pub sweep_d: usize,
    pub sweep_max: usize,
    pub sweep_full: usize,
    pub sweep_stride: usize,
}

/// Vertex counts evaluated in the scan of the constructed family.
pub fn sweep_points(full: usize, stride: usize, max: usize) -> Vec<usize> {
    let mut points: Vec<usize> = (1..=full.min(max)).collect();
    let mut n = full + stride;
    while n < max {
        points.push(n);
        n += stride;
    }
    if max > full {
        points.push(max);
    }
    points
}

pub(crate) fn run(ctx: &mut Context, a: CensusArgs, sweep_out: Option<&Path>) -> Result<Table> {
    ctx.config.command = "hypo-census".into();
    ctx.config.set("max_n", a.max_n);
    ctx.config.set("max_degree", a.max_degree);
    ctx.config.set("sweep_d", a.sweep_d);
    ctx.config.set("sweep_max", a.sweep_max);
    ctx.config.set("sweep_full", a.sweep_full);
    ctx.config.set("sweep_stride", a.sweep_stride);
    if a.sweep_stride == 0 {
        return Err(CliError::input("--sweep-stride must be at least 1"));
    }
    if a.sweep_max > ctx.config.dense_cap {
        return Err(Error::CapExceeded {
            what: "constructed-family scan",
            size: a.sweep_max,
            cap: ctx.config.dense_cap,
        }
        .into());
    }
    let specs = (1..=a.max_n)
        .map(|n| EnumSpec::new(n, a.max_degree))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let opts = ctx.opts();

    let mut t = Table::new(&[
        "n",
        "max_degree",
        "total",
        "hypoenergetic",
        "strongly_hypoenergetic",
        "hypoenergetic_witnesses",
        "strongly_witnesses",
    ]);
    let mut last_hypo_n = None;
    let mut last_strongly_n = None;
    let mut count_at_max = 0;
    for spec in specs {
        let trees: Vec<Tree> = enumerate_trees(spec)?.collect();
        let energies = ctx.energies(&trees, None)?;
        let n = spec.n as f64;
        let mut hypo = Vec::new();
        let mut strongly = Vec::new();
        for (tree, r) in trees.iter().zip(&energies) {
            if energy_below(tree, r, n, &opts)? {
                hypo.push(canonical_code(tree)?.to_string());
                if energy_below(tree, r, n - 1.0, &opts)? {
                    strongly.push(canonical_code(tree)?.to_string());
                }
            }
        }
        if !hypo.is_empty() {
            last_hypo_n = Some(spec.n);
        }
        if !strongly.is_empty() {
            last_strongly_n = Some(spec.n);
        }
        count_at_max = hypo.len();
        t.push(vec![
            spec.n.into(),
            a.max_degree.into(),
            trees.len().into(),
            hypo.len().into(),
            strongly.len().into(),
            hypo.join(";").into(),
            strongly.join(";").into(),
        ]);
    }
    t.note("largest_n_with_hypoenergetic", last_hypo_n);
    t.note("largest_n_with_strongly_hypoenergetic", last_strongly_n);
    t.note("hypoenergetic_at_max_n", count_at_max);

    if a.sweep_max > 0 {
        sweep(ctx, &a, &mut t, sweep_out)?;
    }
    Ok(t)
}

fn sweep(ctx: &Context, a: &CensusArgs, t: &mut Table, out: Option<&Path>) -> Result<()> {
    let points = sweep_points(a.sweep_full, a.sweep_stride, a.sweep_max);
    let trees = points
        .iter()
        .map(|&n| build_tstar(n, a.sweep_d))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let energies = ctx.energies(&trees, Some(Method::Dense))?;
    let opts = ctx.opts();

    let mut rows = Table::new(&["n", "energy", "ratio", "hypoenergetic", "strongly_hypoenergetic", "error_bound"]);
    let mut first_hypo = None;
    let mut first_strongly = None;
    let mut last_not_hypo = None;
    let mut last_not_strongly = None;
    for ((&n, tree), r) in points.iter().zip(&trees).zip(&energies) {
        let nf = n as f64;
        let hypo = energy_below(tree, r, nf, &opts)?;
        let strongly = energy_below(tree, r, nf - 1.0, &opts)?;
        if hypo {
            first_hypo.get_or_insert(n);
        } else {
            last_not_hypo = Some(n);
        }
        if strongly {
            first_strongly.get_or_insert(n);
        } else {
            last_not_strongly = Some(n);
        }
        rows.push(vec![n.into(), r.value.into(), (r.value / nf).into(), hypo.into(), strongly.into(), r.error_bound.into()]);
    }
    let max = *points.last().expect("sweep has points");
    let from = |last: Option<usize>| match last {
        None => Some(1),
        Some(l) if l < max => points.iter().copied().find(|&p| p > l),
        Some(_) => None,
    };
    let summary: [(&'static str, Cell); 9] = [
        ("sweep_d", a.sweep_d.into()),
        ("sweep_points", points.len().into()),
        ("sweep_every_n_up_to", a.sweep_full.min(a.sweep_max).into()),
        ("sweep_stride_beyond", a.sweep_stride.into()),
        ("sweep_max_n", max.into()),
        ("sweep_first_hypoenergetic_n", first_hypo.into()),
        ("sweep_hypoenergetic_from_n", from(last_not_hypo).into()),
        ("sweep_first_strongly_n", first_strongly.into()),
        ("sweep_strongly_from_n", from(last_not_strongly).into()),
    ];
    for (k, v) in summary {
        rows.summary.push((k, v.clone()));
        t.summary.push((k, v));
    }
    if let Some(path) = out {
        ctx.write_file(path, &rows.render(&ctx.config, ctx.config.format)?)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points() {
        assert_eq!(sweep_points(3, 5, 20), vec![1, 2, 3, 8, 13, 18, 20]);
        assert_eq!(sweep_points(5, 5, 5), vec![1, 2, 3, 4, 5]);
        assert_eq!(sweep_points(10, 5, 4), vec![1, 2, 3, 4]);
        assert_eq!(sweep_points(2, 3, 8), vec![1, 2, 5, 8]);
    }
}
