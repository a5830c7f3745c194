//! The convex piecewise-linear envelope attached to a support graph, exact
//! evaluation, the telescoping cycle sum, and a numeric inward-normal
//! boundary integral.
//!
//! Each edge line x + k*y = d contributes the affine function
//! y -> re(d - k*y); the envelope is their pointwise supremum, hence
//! convex. Envelope evaluation and the cycle sum are exact; only the
//! boundary integral is numeric (floating evaluation of exact elements),
//! and it reports its step size alongside the value.

use crate::cyclofield::CycloElement;
use crate::error::{Error, Result};
use crate::pencil::graph::{orient, segments_intersect, sign_im, SupportGraph};

/// A supremum of affine functions y -> re(d - k*y), one per line (k, d).
#[derive(Debug, Clone)]
pub struct Envelope {
    lines: Vec<(CycloElement, CycloElement)>,
}

impl Envelope {
    pub fn from_support_graph(g: &SupportGraph) -> Self {
        Envelope {
            lines: g
                .edges
                .iter()
                .map(|e| (e.slope.clone(), e.intercept.clone()))
                .collect(),
        }
    }

    /// Build directly from (slope, intercept) pairs; used for envelopes
    /// over arbitrary line families.
    pub fn from_lines(lines: Vec<(CycloElement, CycloElement)>) -> Self {
        Envelope { lines }
    }

    pub fn lines(&self) -> &[(CycloElement, CycloElement)] {
        &self.lines
    }

    /// Exact envelope value at y: the maximum of re(d - k*y) over all
    /// lines, with ties resolved to the smallest line index. Returns the
    /// value as a real field element together with the achieving index.
    pub fn eval(&self, y: &CycloElement) -> Result<(CycloElement, usize)> {
        if self.lines.is_empty() {
            return Err(Error::EmptyEnvelope);
        }
        let mut best: Option<(CycloElement, usize)> = None;
        for (idx, (k, d)) in self.lines.iter().enumerate() {
            let value = (d - &(k * y)).re()?;
            match &best {
                None => best = Some((value, idx)),
                Some((cur, _)) => {
                    if (&value - cur).sign_real()? > 0 {
                        best = Some((value, idx));
                    }
                }
            }
        }
        Ok(best.expect("nonempty"))
    }
}

/// The exact telescoping sum of im(x*_{a+1} - x*_a) around a closed cycle;
/// always zero. Its conflict with the strict boundary-integral inequality
/// is what makes cyclic support graphs impossible.
pub fn green_cycle_sum(x_stars: &[CycloElement], cycle: &[usize]) -> Result<CycloElement> {
    if cycle.len() < 3 {
        return Err(Error::OpenCycle);
    }
    let order = x_stars
        .first()
        .map(|e| e.order())
        .ok_or(Error::OpenCycle)?;
    let mut sum = CycloElement::zero(num_integer::lcm(order, 4));
    for i in 0..cycle.len() {
        let a = cycle[i];
        let b = cycle[(i + 1) % cycle.len()];
        sum = &sum + &(&x_stars[b] - &x_stars[a]).im()?;
    }
    Ok(sum)
}

/// Result of the numeric boundary-integral check: the approximate value of
/// the inward-normal-derivative integral and the inward step h it used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenIntegral {
    pub value: f64,
    pub step: f64,
}

fn to_xy(e: &CycloElement) -> (f64, f64) {
    e.to_complex_f64()
}

/// Exact simplicity check for a polygon given as a vertex list of complex
/// values: distinct vertices, nonzero edges, no spikes at vertices, no
/// intersections between non-adjacent edges, nonzero signed area.
fn check_simple_polygon(polygon: &[CycloElement]) -> Result<()> {
    let n = polygon.len();
    if n < 3 {
        return Err(Error::NonSimplePolygon("fewer than 3 vertices".into()));
    }
    for i in 0..n {
        for j in i + 1..n {
            if polygon[i] == polygon[j] {
                return Err(Error::NonSimplePolygon(format!(
                    "vertices {i} and {j} coincide"
                )));
            }
        }
    }
    // Spikes: a vertex whose two edges fold back onto each other.
    for i in 0..n {
        let u = &polygon[(i + n - 1) % n];
        let v = &polygon[i];
        let w = &polygon[(i + 1) % n];
        if orient(u, v, w)? == 0 {
            // Collinear corner: reject when the corner folds back, i.e. the
            // two neighbors lie on the same side of v.
            let s_re = ((u - v).re()?.sign_real()?, (w - v).re()?.sign_real()?);
            let s_im = ((u - v).im()?.sign_real()?, (w - v).im()?.sign_real()?);
            let same_re = s_re.0 * s_re.1 > 0 || (s_re.0 == 0 && s_re.1 == 0);
            let same_im = s_im.0 * s_im.1 > 0 || (s_im.0 == 0 && s_im.1 == 0);
            if same_re && same_im {
                return Err(Error::NonSimplePolygon(format!("spike at vertex {i}")));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            // Skip cyclically adjacent edge pairs.
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (a1, a2) = (&polygon[i], &polygon[(i + 1) % n]);
            let (b1, b2) = (&polygon[j], &polygon[(j + 1) % n]);
            if segments_intersect(a1, a2, b1, b2)? {
                return Err(Error::NonSimplePolygon(format!(
                    "edges {i} and {j} intersect"
                )));
            }
        }
    }
    Ok(())
}

/// Signed-area orientation of the polygon: +1 counterclockwise, -1
/// clockwise, exact.
fn polygon_orientation(polygon: &[CycloElement]) -> Result<i32> {
    let n = polygon.len();
    let mut total = CycloElement::zero(4);
    for i in 0..n {
        let a = &polygon[i];
        let b = &polygon[(i + 1) % n];
        total = &total + &(&a.conj() * b);
    }
    let s = sign_im(&total)?;
    if s == 0 {
        return Err(Error::NonSimplePolygon("polygon has zero area".into()));
    }
    Ok(s)
}

/// Numeric approximation of the inward-normal-derivative boundary integral
/// of the envelope over a simple polygon. Simplicity and orientation are
/// decided exactly; the quadrature samples the envelope at edge midpoints
/// and one inward step h = (longest edge length) / resolution.
pub fn green_boundary_integral_numeric(
    e: &Envelope,
    polygon: &[CycloElement],
    resolution: u32,
) -> Result<GreenIntegral> {
    if e.lines.is_empty() {
        return Err(Error::EmptyEnvelope);
    }
    if resolution == 0 {
        return Err(Error::NonSimplePolygon("resolution must be positive".into()));
    }
    check_simple_polygon(polygon)?;
    let orientation = polygon_orientation(polygon)? as f64;

    let lines_f64: Vec<((f64, f64), f64)> = e
        .lines
        .iter()
        .map(|(k, d)| (to_xy(k), to_xy(d).0))
        .collect();
    let u = |y: (f64, f64)| -> f64 {
        lines_f64
            .iter()
            .map(|((kr, ki), dr)| dr - (kr * y.0 - ki * y.1))
            .fold(f64::NEG_INFINITY, f64::max)
    };

    let verts: Vec<(f64, f64)> = polygon.iter().map(to_xy).collect();
    let n = verts.len();
    let max_len = (0..n)
        .map(|i| {
            let (px, py) = verts[i];
            let (qx, qy) = verts[(i + 1) % n];
            ((qx - px).powi(2) + (qy - py).powi(2)).sqrt()
        })
        .fold(0.0f64, f64::max);
    let h = max_len / resolution as f64;

    let mut integral = 0.0f64;
    for i in 0..n {
        let (px, py) = verts[i];
        let (qx, qy) = verts[(i + 1) % n];
        let (dx, dy) = (qx - px, qy - py);
        let len = (dx * dx + dy * dy).sqrt();
        // Inward normal: rotate the edge direction by +90 degrees for a
        // counterclockwise polygon, -90 for clockwise.
        let (nx, ny) = (
            orientation * (-dy / len),
            orientation * (dx / len),
        );
        let ds = len / resolution as f64;
        for s in 0..resolution {
            let t = (s as f64 + 0.5) / resolution as f64;
            let base = (px + t * dx, py + t * dy);
            let stepped = (base.0 + h * nx, base.1 + h * ny);
            integral += (u(stepped) - u(base)) / h * ds;
        }
    }
    Ok(GreenIntegral { value: integral, step: h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclofield::Rational;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    fn q(n: i64, d: i64) -> CycloElement {
        CycloElement::from_rational(4, Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn gauss(re: i64, im: i64) -> CycloElement {
        &q(re, 1) + &CycloElement::i(4).unwrap().scale(&Rational::from(BigInt::from(im)))
    }

    fn lines_through(points: &[(CycloElement, CycloElement)]) -> Envelope {
        let mut lines = Vec::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                lines.push(
                    crate::pencil::graph::line_through(&points[i], &points[j]).unwrap(),
                );
            }
        }
        Envelope::from_lines(lines)
    }

    #[test]
    fn single_horizontal_edge_is_constant_zero() {
        // Line through (0,0) and (0,1): k = 0, d = 0, so u is identically 0.
        let env = lines_through(&[(gauss(0, 0), gauss(0, 0)), (gauss(0, 0), gauss(1, 0))]);
        for y in [gauss(0, 0), gauss(3, -2), gauss(-1, 5)] {
            let (v, idx) = env.eval(&y).unwrap();
            assert!(v.is_zero());
            assert_eq!(idx, 0);
        }
        assert!(matches!(
            Envelope::from_lines(vec![]).eval(&gauss(0, 0)),
            Err(Error::EmptyEnvelope)
        ));
    }

    #[test]
    fn cycle_sum_telescopes_to_zero() {
        // x* = (0, i, 1+i) around a triangle: im parts 1 + 0 - 1 = 0.
        let xs = [gauss(0, 0), gauss(0, 1), gauss(1, 1)];
        let s = green_cycle_sum(&xs, &[0, 1, 2]).unwrap();
        assert!(s.is_zero());
        let d01 = (&xs[1] - &xs[0]).im().unwrap();
        assert_eq!(d01, CycloElement::one(4));

        assert!(matches!(green_cycle_sum(&xs, &[0, 1]), Err(Error::OpenCycle)));
    }

    #[test]
    fn cycle_sum_zero_on_random_values() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let len = rng.gen_range(3..=9usize);
            let xs: Vec<CycloElement> = (0..len)
                .map(|_| gauss(rng.gen_range(-9..=9), rng.gen_range(-9..=9)))
                .collect();
            let cycle: Vec<usize> = (0..len).collect();
            assert!(green_cycle_sum(&xs, &cycle).unwrap().is_zero());
        }
    }

    #[test]
    fn linear_envelope_integrates_to_zero() {
        let env = lines_through(&[(gauss(1, 2), gauss(0, 0)), (gauss(0, -1), gauss(1, 1))]);
        let triangle = [gauss(0, 0), gauss(2, 0), gauss(0, 2)];
        let r = green_boundary_integral_numeric(&env, &triangle, 500).unwrap();
        assert!(r.value.abs() <= 10.0 * r.step, "value {} step {}", r.value, r.step);
    }

    #[test]
    fn dominated_three_line_envelope_is_linear_on_triangle() {
        // For heights (0, 0, 1) the pair line through (0,1) and (1,i)
        // dominates the other two on the whole triangle, so the envelope is
        // linear there and the integral vanishes within quadrature error.
        let pts = [
            (gauss(0, 0), gauss(0, 0)),
            (gauss(0, 0), gauss(1, 0)),
            (gauss(1, 0), gauss(0, 1)),
        ];
        let env = lines_through(&pts);
        let triangle = [gauss(0, 0), gauss(1, 0), gauss(0, 1)];
        let r = green_boundary_integral_numeric(&env, &triangle, 1000).unwrap();
        assert!(r.value.abs() <= 10.0 * r.step, "value {} step {}", r.value, r.step);
    }

    #[test]
    fn nonlinear_three_line_envelope_is_strictly_subharmonic() {
        // Points (0,0), (2i,1), (i,i): two of the three pairwise lines
        // poke above the remaining vertex, so the supremum has a kink
        // along 3*re(y) + im(y) = 1. The exact boundary integral is the
        // negative kink jump times its length: -(5/sqrt(10)) * sqrt(10)/3
        // = -5/3.
        let pts = [
            (gauss(0, 0), gauss(0, 0)),
            (gauss(0, 2), gauss(1, 0)),
            (gauss(0, 1), gauss(0, 1)),
        ];
        let env = lines_through(&pts);
        let triangle = [gauss(0, 0), gauss(1, 0), gauss(0, 1)];
        let r = green_boundary_integral_numeric(&env, &triangle, 1000).unwrap();
        assert!(r.value < -r.step, "value {} step {}", r.value, r.step);
        assert!((r.value + 5.0 / 3.0).abs() < 0.05, "value {}", r.value);
    }

    #[test]
    fn non_simple_polygons_rejected() {
        let env = lines_through(&[(gauss(0, 0), gauss(0, 0)), (gauss(0, 0), gauss(1, 0))]);
        // Self-crossing bowtie.
        let bowtie = [gauss(0, 0), gauss(1, 1), gauss(1, 0), gauss(0, 1)];
        assert!(matches!(
            green_boundary_integral_numeric(&env, &bowtie, 100),
            Err(Error::NonSimplePolygon(_))
        ));
        // Degenerate flat triangle.
        let flat = [gauss(0, 0), gauss(1, 0), gauss(2, 0)];
        assert!(matches!(
            green_boundary_integral_numeric(&env, &flat, 100),
            Err(Error::NonSimplePolygon(_))
        ));
        // Repeated vertex.
        let dup = [gauss(0, 0), gauss(1, 0), gauss(0, 0), gauss(0, 1)];
        assert!(matches!(
            green_boundary_integral_numeric(&env, &dup, 100),
            Err(Error::NonSimplePolygon(_))
        ));
    }
}
