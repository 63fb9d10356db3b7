use std::fmt::Write as _;
use std::path::Path;

use tree_energy_core::alpha::alpha;
use tree_energy_core::tree::{bn_tree, bn_vertex_count, build_tstar, canonical_code};
use tree_energy_core::Error;

use super::Context;
use crate::error::Result;
use crate::output::{format_float, preamble, Table};

/// Levels up to which the apex tree is checked against `T*(N, 2)`.
pub const ISOMORPHISM_CHECK_MAX_LEVEL: usize = 6;

pub(crate) fn run(ctx: &mut Context, max_level: usize, plot: Option<&Path>) -> Result<Table> {
    ctx.config.command = "conjecture1".into();
    ctx.config.set("max_level", max_level);
    let cap = ctx.config.dense_cap;
    let sizes: Vec<usize> = (0..=max_level)
        .map(|level| {
            bn_vertex_count(level)
                .filter(|&n| n <= cap)
                .ok_or(Error::CapExceeded {
                    what: "apex tree at the requested level",
                    size: bn_vertex_count(level).unwrap_or(usize::MAX),
                    cap,
                })
        })
        .collect::<std::result::Result<_, _>>()?;

    let trees = (0..=max_level).map(bn_tree).collect::<std::result::Result<Vec<_>, _>>()?;
    let mut isomorphic = Vec::new();
    for (level, t) in trees.iter().enumerate().take(ISOMORPHISM_CHECK_MAX_LEVEL + 1) {
        if canonical_code(t)? != canonical_code(&build_tstar(sizes[level], 2)?)? {
            return Err(Error::Invariant(format!(
                "apex tree at level {level} is not isomorphic to T*({}, 2)",
                sizes[level]
            ))
            .into());
        }
        isomorphic.push(true);
    }
    let energies = ctx.energies(&trees, None)?;
    let a2 = alpha(2, ctx.config.eps)?;

    let mut t = Table::new(&[
        "level",
        "vertex_count",
        "energy",
        "ratio",
        "gap",
        "gap_times_n",
        "gap_n_over_ln_n",
        "method",
        "error_bound",
        "tstar_isomorphic",
    ]);
    let mut ratios = Vec::new();
    let mut gaps = Vec::new();
    let mut scaled = Vec::new();
    for (level, r) in energies.iter().enumerate() {
        let n = sizes[level] as f64;
        let ratio = r.value / n;
        let gap = (ratio - a2.value).abs();
        ratios.push(ratio);
        gaps.push(gap);
        scaled.push(gap * n / n.ln());
        t.push(vec![
            level.into(),
            sizes[level].into(),
            r.value.into(),
            ratio.into(),
            gap.into(),
            (gap * n).into(),
            (gap * n / n.ln()).into(),
            r.method.name().into(),
            r.error_bound.into(),
            isomorphic.get(level).copied().into(),
        ]);
    }

    let increasing = ratios.windows(2).all(|w| w[1] > w[0]);
    let gaps_decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let scaled_nonincreasing = scaled.windows(2).all(|w| w[1] <= w[0]);
    if !increasing {
        log::warn!("ratio sequence is NOT strictly increasing: {ratios:?}");
    }
    if !gaps_decreasing {
        log::warn!("gap to alpha_2 is NOT decreasing: {gaps:?}");
    }
    t.note("alpha_2", a2.value);
    t.note("alpha_2_tail_bound", a2.tail_bound);
    t.note("first_level_ratio_above_1", ratios.iter().position(|&r| r > 1.0));
    t.note("ratios_strictly_increasing", increasing);
    t.note("gaps_decreasing", gaps_decreasing);
    t.note("gap_n_over_ln_n_nonincreasing", scaled_nonincreasing);
    t.note("final_gap", gaps.last().copied());

    if let Some(path) = plot {
        let mut text = preamble(&ctx.config)?;
        text.push_str("# level ratio\n");
        for (level, r) in ratios.iter().enumerate() {
            writeln!(text, "{level} {}", format_float(*r)).unwrap();
        }
        ctx.write_file(path, &text)?;
    }
    Ok(t)
}
