use std::path::Path;

use tree_energy_core::spectral::{matching_polynomial, spectrum_dense, spectrum_from_polynomial, Method};
use tree_energy_core::tree::{canonical_code, digital_expansion};

use super::Context;
use crate::cli::{MethodArg, TreeFormat};
use crate::error::Result;
use crate::io::{write_edge_list, write_graph6, TreeSpec};
use crate::output::Table;

pub(crate) fn energy(ctx: &mut Context, spec: &TreeSpec, method: MethodArg, spectrum: Option<&Path>) -> Result<Table> {
    ctx.config.command = "energy".into();
    ctx.config.set("tree", spec.to_string());
    ctx.config.set("method", format!("{method:?}").to_lowercase());
    let tree = spec.build()?;
    let r = ctx.energies(std::slice::from_ref(&tree), method.method())?.remove(0);

    if let Some(path) = spectrum {
        let opts = ctx.opts();
        let s = match r.method {
            Method::Polynomial => spectrum_from_polynomial(&matching_polynomial(&tree)?, &opts)?,
            Method::Dense | Method::Cross => spectrum_dense(&tree, &opts)?,
        };
        let mut st = Table::new(&["index", "eigenvalue"]);
        for (i, v) in s.values().iter().enumerate() {
            st.push(vec![i.into(), (*v).into()]);
        }
        st.note("engine", if r.method == Method::Polynomial { "polynomial" } else { "dense" });
        ctx.write_file(path, &st.to_csv(&ctx.config)?)?;
    }

    let mut t = Table::new(&["tree", "n", "max_degree", "method", "energy", "error_bound", "energy_per_vertex"]);
    let per_vertex = (tree.n() > 0).then(|| r.value / tree.n() as f64);
    t.push(vec![
        spec.to_string().into(),
        tree.n().into(),
        tree.max_degree().into(),
        r.method.name().into(),
        r.value.into(),
        r.error_bound.into(),
        per_vertex.into(),
    ]);
    Ok(t)
}

pub(crate) fn construct(ctx: &mut Context, spec: &TreeSpec, write: Option<&Path>, format: TreeFormat) -> Result<Table> {
    ctx.config.command = "construct".into();
    ctx.config.set("tree", spec.to_string());
    let tree = spec.build()?;
    if let Some(path) = write {
        let text = match format {
            TreeFormat::Edges => write_edge_list(&tree),
            TreeFormat::Graph6 => write_graph6(&tree) + "\n",
        };
        ctx.write_file(path, &text)?;
    }
    let expansion = match spec {
        TreeSpec::TStar { n, d } => {
            let e = digital_expansion(*n, *d)?;
            let digits: Vec<String> = e.coefficients.iter().map(ToString::to_string).collect();
            Some(format!("{} [{:?}]", digits.join(" "), e.terminal))
        }
        _ => None,
    };
    let mut t = Table::new(&["tree", "n", "edges", "max_degree", "expansion", "canonical_code"]);
    t.push(vec![
        spec.to_string().into(),
        tree.n().into(),
        tree.edges().len().into(),
        tree.max_degree().into(),
        expansion.into(),
        canonical_code(&tree)?.to_string().into(),
    ]);
    Ok(t)
}
