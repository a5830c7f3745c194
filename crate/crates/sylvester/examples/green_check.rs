//! The envelope attached to a support graph and its boundary behavior:
//! exact evaluation, the exact telescoping cycle sum, and the numeric
//! inward-normal boundary integral that is zero for linear envelopes and
//! strictly negative across kinks.
//!
//! Run with: cargo run --example green_check

use num_bigint::BigInt;
use sylvester::cyclofield::{CycloElement, Rational};
use sylvester::pencil::{
    green_boundary_integral_numeric, green_cycle_sum, line_through, Envelope,
};

fn gauss(re: i64, im: i64) -> CycloElement {
    let i = CycloElement::i(4).unwrap();
    &CycloElement::from_integer(4, re) + &i.scale(&Rational::from(BigInt::from(im)))
}

fn main() -> sylvester::Result<()> {
    // The telescoping sum of im(x*_{a+1} - x*_a) around any cycle is zero,
    // exactly; this is the identity that rules out cyclic support graphs.
    let xs = [gauss(0, 0), gauss(0, 1), gauss(1, 1), gauss(-2, 3)];
    let sum = green_cycle_sum(&xs, &[0, 1, 2, 3])?;
    println!("cycle sum over 4 points: {sum} (exact zero: {})", sum.is_zero());

    // A single line makes a linear envelope; its boundary integral over
    // any polygon vanishes up to quadrature error.
    let line = line_through(&(gauss(1, 2), gauss(0, 0)), &(gauss(0, -1), gauss(1, 1)))?;
    let env = Envelope::from_lines(vec![line]);
    let triangle = [gauss(0, 0), gauss(2, 0), gauss(0, 2)];
    let r = green_boundary_integral_numeric(&env, &triangle, 1000)?;
    println!("linear envelope: integral = {:+.6}, step h = {:.6}", r.value, r.step);

    // Three pairwise lines of a point set whose supremum has a genuine
    // kink inside the triangle: the integral is strictly negative (the
    // exact value here is -5/3).
    let pts = [
        (gauss(0, 0), gauss(0, 0)),
        (gauss(0, 2), gauss(1, 0)),
        (gauss(0, 1), gauss(0, 1)),
    ];
    let mut lines = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            lines.push(line_through(&pts[i], &pts[j])?);
        }
    }
    let env = Envelope::from_lines(lines);
    let triangle = [gauss(0, 0), gauss(1, 0), gauss(0, 1)];
    let r = green_boundary_integral_numeric(&env, &triangle, 1000)?;
    println!("kinked envelope: integral = {:+.6}, step h = {:.6}", r.value, r.step);

    // Exact envelope evaluation, with the achieving line index.
    let (value, idx) = env.eval(&gauss(0, 0))?;
    println!("envelope at y = 0: value = {value} from line {idx}");
    Ok(())
}
