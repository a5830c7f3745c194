//! The Hesse configuration: nine points, twelve 3-point lines, and no
//! ordinary line at all.
//!
//! Run with: cargo run --example hesse

use sylvester::config::{fermat_config, hesse_config, serialize};
use sylvester::incidence::{is_sylvester_gallai, ordinary_lines, spanned_lines};

fn main() -> sylvester::Result<()> {
    let h = hesse_config();
    println!("{}", serialize(&h));

    let lines = spanned_lines(&h)?;
    println!("spanned lines: {}", lines.len());
    for l in &lines {
        println!("  {}  through points {:?}", l.line, l.members);
    }
    println!("ordinary lines: {}", ordinary_lines(&h)?.len());
    println!("Sylvester-Gallai: {}", is_sylvester_gallai(&h)?);

    // The whole Fermat family behaves the same way from n = 3 on; n = 2
    // still has its three coordinate lines as ordinary lines.
    for n in 2..=5 {
        let c = fermat_config(n)?;
        println!(
            "fermat({n}): {} points, {} spanned, {} ordinary, sg = {}",
            c.len(),
            spanned_lines(&c)?.len(),
            ordinary_lines(&c)?.len(),
            is_sylvester_gallai(&c)?,
        );
    }
    Ok(())
}
