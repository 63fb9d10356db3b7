use tree_energy_core::alpha::alpha_table;

use super::Context;
use crate::cli::Span;
use crate::error::Result;
use crate::output::Table;

pub(crate) fn run(ctx: &mut Context, d: Span) -> Result<Table> {
    ctx.config.command = "alpha".into();
    ctx.config.set("d", d.to_string());
    let rows = alpha_table(d.lo, d.hi, ctx.config.eps)?;
    let mut t = Table::new(&["d", "alpha", "j_max", "tail_bound", "requested_eps"]);
    for r in rows {
        t.push(vec![r.d.into(), r.value.into(), r.j_max.into(), r.tail_bound.into(), r.requested_eps.into()]);
    }
    Ok(t)
}
