//! Sharpness of the concurrent-lines bound: the Fermat configuration on 3n
//! points sits on n + 2 concurrent lines with n points on one line, which
//! is exactly the m - 2 maximum a Sylvester-Gallai configuration allows.
//!
//! Run with: cargo run --example sharp_bound

use sylvester::config::fermat_config;
use sylvester::incidence::{find_concurrency_points, pencil_structure, theorem_bound_report};
use sylvester::projgeom::ProjPoint;

fn main() -> sylvester::Result<()> {
    for n in 3..=6u64 {
        let c = fermat_config(n)?;
        let apex = ProjPoint::from_integers(c.order(), 0, 0, 1)?;
        let ps = pencil_structure(&c, &apex)?;
        let r = theorem_bound_report(&c, &apex)?;
        println!(
            "fermat({n}): m = {}, counts = {:?}, max = {}, bound m-2 = {}, sg = {}, consistent = {}",
            ps.m(),
            ps.counts(),
            r.max_line_count,
            r.bound,
            r.sg,
            r.consistent,
        );
    }

    // Every point of the nine-point configuration is an apex of a 4-line
    // pencil covering it with two points per line.
    let h = fermat_config(3)?;
    let found = find_concurrency_points(&h, 4)?;
    println!(
        "apexes covering the nine points with at most 4 lines: {} (all configuration points)",
        found.len()
    );
    Ok(())
}
