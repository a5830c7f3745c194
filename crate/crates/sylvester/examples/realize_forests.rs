//! The realizer: search for point sets whose maximal support graph equals
//! a target forest, and certify that cyclic targets are impossible.
//!
//! Run with: cargo run --release --example realize_forests

use sylvester::realizer::{
    enumerate_forests, realize, verify_realization, RealizationStatus, TargetGraph,
};

fn main() -> sylvester::Result<()> {
    for v in 1..=4usize {
        for target in enumerate_forests(v)? {
            let r = realize(&target, 100_000, 42)?;
            match r.status {
                RealizationStatus::Realized => {
                    let pts = r.points.as_ref().unwrap();
                    assert!(verify_realization(pts, &target).passed());
                    println!(
                        "v={v} edges={:?}: realized after {} candidates",
                        target.edges, r.candidates_tried
                    );
                    for (i, (x, y)) in pts.iter().enumerate() {
                        println!("    point {i}: x = {x}, y = {y}");
                    }
                }
                RealizationStatus::BudgetExhausted => {
                    // The empty graph on two vertices: two generic points
                    // always support their connecting line, so no point set
                    // can realize it.
                    println!(
                        "v={v} edges={:?}: budget exhausted ({} candidates)",
                        target.edges, r.candidates_tried
                    );
                }
                RealizationStatus::ProvablyUnrealizable => unreachable!("forests have no cycle"),
            }
        }
    }

    // Cycles can never arise: the exact obstruction names an edge of the
    // candidate cycle and a vertex where its support condition fails.
    let c3 = TargetGraph::new(3, vec![(0, 1), (1, 2), (0, 2)])?;
    let r = realize(&c3, 10, 7)?;
    assert_eq!(r.status, RealizationStatus::ProvablyUnrealizable);
    let w = r.witness.unwrap();
    println!(
        "C3: provably unrealizable; edge ({}, {}) fails the support condition at vertex {}",
        w.edge.0, w.edge.1, w.vertex
    );
    Ok(())
}
