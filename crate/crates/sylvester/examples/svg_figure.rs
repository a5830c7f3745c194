//! Render a support graph as an SVG drawing: vertices at their complex
//! y values, edges as straight segments (the same drawing the planarity
//! certificate reasons about, exactly).
//!
//! Run with: cargo run --example svg_figure

use sylvester::config::fermat_config;
use sylvester::pencil::{build_support_graph, choose_generic_direction, normalize, GraphOutcome};
use sylvester::projgeom::ProjPoint;
use sylvester::svg::render_support_graph;

fn main() -> sylvester::Result<()> {
    let c = fermat_config(4)?;
    let apex = ProjPoint::from_integers(c.order(), 0, 0, 1)?;
    let mut np = normalize(&c, &apex)?;
    choose_generic_direction(&mut np)?;
    let g = match build_support_graph(&np)? {
        GraphOutcome::Graph(g) => g,
        GraphOutcome::Witness(_) => unreachable!("Sylvester-Gallai input"),
    };
    let svg = render_support_graph(&g);
    let path = std::env::temp_dir().join("fermat4_support_graph.svg");
    std::fs::write(&path, &svg).expect("write SVG");
    println!(
        "wrote {} ({} vertices, {} edges)",
        path.display(),
        g.vertices.len(),
        g.edges.len()
    );
    Ok(())
}
