//! The full support-graph pipeline on the nine-point configuration:
//! normalize the 5-line pencil, choose a generic direction, take per-line
//! minimal points, build the graph, and certify planarity, acyclicity,
//! and the edge-count bound chain.
//!
//! Run with: cargo run --example support_graph

use sylvester::config::fermat_config;
use sylvester::pencil::{
    bound_chain_report, build_support_graph, check_acyclic, check_planarity,
    choose_generic_direction, minimal_points, normalize, AcyclicityCertificate, GraphOutcome,
    PlanarityCertificate,
};
use sylvester::projgeom::ProjPoint;

fn main() -> sylvester::Result<()> {
    let c = fermat_config(3)?;
    let apex = ProjPoint::from_integers(c.order(), 0, 0, 1)?;

    let mut np = normalize(&c, &apex)?;
    println!("pencil lines m = {}", np.m());
    println!("infinite slopes:");
    for k in np.infinite_points() {
        println!("  k = {k}");
    }

    let t = choose_generic_direction(&mut np)?;
    println!("generic direction c = 1 + t*i with t = {t}");
    for (a, line) in np.finite_lines().iter().enumerate() {
        println!("  line {a}: y = {}  ({} points)", line.y, line.xs.len());
    }

    let mp = minimal_points(&np)?;
    for (a, x) in mp.x_stars.iter().enumerate() {
        println!("  minimal point on line {a}: x* = {x}");
    }

    match build_support_graph(&np)? {
        GraphOutcome::Graph(g) => {
            println!("support graph: {} vertices, {} edges", g.vertices.len(), g.edges.len());
            for e in &g.edges {
                println!("  edge ({}, {})  slope {}  intercept {}", e.a, e.b, e.slope, e.intercept);
            }
            match check_planarity(&g)? {
                PlanarityCertificate::Planar => println!("planar: yes (exact segment test)"),
                PlanarityCertificate::Crossing { first, second } => {
                    println!("planar: no, edges {first} and {second} cross")
                }
            }
            match check_acyclic(&g) {
                AcyclicityCertificate::Forest => println!("acyclic: yes (union-find)"),
                AcyclicityCertificate::Cycle(c) => println!("acyclic: no, cycle {c:?}"),
            }
            let b = bound_chain_report(&g, np.m())?;
            println!(
                "bound chain: edges {} <= binom {}; planar {:?}; forest {}",
                b.edges, b.binom_bound, b.planar_bound, b.forest_bound
            );
        }
        GraphOutcome::Witness(w) => {
            println!("found an ordinary line instead: {}", w.line);
        }
    }
    Ok(())
}
