use tree_energy_core::alpha::alpha;
use tree_energy_core::enumeration::{enumerate_trees, resolve_minimum, EnumSpec};
use tree_energy_core::spectral::Method;
use tree_energy_core::Tree;

use super::Context;
use crate::cli::Span;
use crate::error::Result;
use crate::output::Table;

pub(crate) fn run(ctx: &mut Context, span: Span, d: usize) -> Result<Table> {
    ctx.config.command = "minimal".into();
    ctx.config.set("n", span.to_string());
    ctx.config.set("d", d);
    let specs = span
        .iter()
        .map(|n| EnumSpec::new(n, d + 1))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let alpha_d = if d >= 2 { Some(alpha(d, ctx.config.eps)?.value) } else { None };

    let mut t = Table::new(&[
        "n",
        "d",
        "tree_count",
        "min_energy",
        "energy_per_vertex",
        "alpha_d",
        "argmin_unique",
        "tstar_match",
        "runner_up_gap",
        "argmin_code",
        "tied",
    ]);
    let mut all_match = true;
    let mut all_unique = true;
    for spec in specs {
        let trees: Vec<Tree> = enumerate_trees(spec)?.collect();
        let energies = ctx.energies(&trees, Some(Method::Cross))?;
        let scored = trees.into_iter().zip(energies.iter().map(|r| r.value)).collect();
        let r = resolve_minimum(spec.n, d, scored)?;
        all_match &= r.tstar_match != Some(false);
        all_unique &= r.argmin_unique;
        let tied: Vec<String> = r.tied.iter().map(ToString::to_string).collect();
        t.push(vec![
            r.n.into(),
            r.d.into(),
            r.tree_count.into(),
            r.min_energy.into(),
            (r.min_energy / r.n as f64).into(),
            alpha_d.into(),
            r.argmin_unique.into(),
            r.tstar_match.into(),
            r.runner_up_gap.into(),
            r.argmin_code.to_string().into(),
            tied.join(";").into(),
        ]);
    }
    t.note("alpha_d", alpha_d);
    t.note("all_tstar_match", (d >= 2).then_some(all_match));
    t.note("all_unique", all_unique);
    Ok(t)
}
