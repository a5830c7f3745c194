//! Configuration generators and the line-oriented configuration file
//! format.
//!
//! A configuration file is a header line `field N` followed by zero or more
//! `point <expr> ; <expr> ; <expr>` lines; `#` starts a comment. The
//! serializer emits canonical coordinate expressions in a fixed layout, so
//! its output is byte-deterministic and round-trips exactly.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclofield::{parse_element, CycloElement, Rational};
use crate::error::{Error, Result};
use crate::projgeom::{collinear, incident, join, ProjPoint};

/// A finite set of distinct projective points over Q(zeta_N), 4 | N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    order: u64,
    points: Vec<ProjPoint>,
}

impl Configuration {
    pub fn new(order: u64, points: Vec<ProjPoint>) -> Result<Self> {
        if order % 4 != 0 {
            return Err(Error::OrderNotMultipleOf4(order));
        }
        if points.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        let points: Vec<ProjPoint> = points
            .into_iter()
            .map(|p| {
                let c = p.coords();
                ProjPoint::new(
                    c[0].embed(order)?,
                    c[1].embed(order)?,
                    c[2].embed(order)?,
                )
            })
            .collect::<Result<_>>()?;
        for i in 1..points.len() {
            if points[..i].contains(&points[i]) {
                return Err(Error::DuplicatePoint(i));
            }
        }
        Ok(Configuration { order, points })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when all points lie on one line.
    pub fn is_collinear(&self) -> bool {
        if self.points.len() <= 2 {
            return true;
        }
        let l = match join(&self.points[0], &self.points[1]) {
            Ok(l) => l,
            Err(_) => unreachable!("points are pairwise distinct"),
        };
        self.points[2..].iter().all(|p| incident(p, &l))
    }

    /// Apply an invertible transform pointwise.
    pub fn transformed(&self, t: &crate::projgeom::Transform) -> Configuration {
        Configuration {
            order: self.order,
            points: self.points.iter().map(|p| t.apply(p)).collect(),
        }
    }
}

/// The Fermat configuration on 3n points: [0 : 1 : -w^a], [-w^b : 0 : 1],
/// [1 : -w^c : 0] for w = zeta_n, over Q(zeta_lcm(n,4)). A
/// Sylvester-Gallai configuration for n >= 3, lying on the three
/// coordinate lines.
pub fn fermat_config(n: u64) -> Result<Configuration> {
    if n < 1 {
        return Err(Error::InvalidOrder);
    }
    let order = num_integer::lcm(n, 4);
    let w = |k: u64| CycloElement::zeta_pow(order, ((order / n) * k) as i64);
    let zero = CycloElement::zero(order);
    let one = CycloElement::one(order);
    let mut points = Vec::with_capacity(3 * n as usize);
    for a in 0..n {
        points.push(ProjPoint::new(zero.clone(), one.clone(), -w(a)?)?);
    }
    for b in 0..n {
        points.push(ProjPoint::new(-w(b)?, zero.clone(), one.clone())?);
    }
    for c in 0..n {
        points.push(ProjPoint::new(one.clone(), -w(c)?, zero.clone())?);
    }
    Configuration::new(order, points)
}

/// The Hesse configuration on nine points, modeled as fermat_config(3).
pub fn hesse_config() -> Configuration {
    fermat_config(3).expect("n = 3 is valid")
}

fn gaussian_rational(rng: &mut ChaCha8Rng) -> CycloElement {
    let q = |rng: &mut ChaCha8Rng| {
        Rational::new(
            BigInt::from(rng.gen_range(-8i64..=8)),
            BigInt::from(rng.gen_range(1i64..=4)),
        )
    };
    let re = CycloElement::from_rational(4, q(rng));
    let im = CycloElement::i(4).unwrap().scale(&q(rng));
    &re + &im
}

/// A seeded random configuration on `m` concurrent lines through a random
/// apex, with `counts[a]` points on line `a` (the apex not counted).
/// Coordinates are Gaussian rationals. Rejection sampling removes
/// accidental collinearities among points on distinct lines; collinearity
/// within a line is forced by construction.
pub fn random_pencil_config(
    m: usize,
    counts: &[usize],
    include_apex: bool,
    seed: u64,
) -> Result<Configuration> {
    if m < 2 {
        return Err(Error::InvalidCounts("need at least 2 lines".into()));
    }
    if counts.len() != m {
        return Err(Error::InvalidCounts(format!(
            "expected {m} counts, got {}",
            counts.len()
        )));
    }
    if counts.iter().any(|&c| c == 0) {
        return Err(Error::InvalidCounts("every line needs at least one point".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let apex_x = gaussian_rational(&mut rng);
    let apex_y = gaussian_rational(&mut rng);
    let apex = ProjPoint::affine(apex_x.clone(), apex_y.clone());

    // Distinct slopes, one per line.
    let mut slopes: Vec<CycloElement> = Vec::new();
    while slopes.len() < m {
        let s = gaussian_rational(&mut rng);
        if !slopes.contains(&s) {
            slopes.push(s);
        }
    }

    'outer: for _attempt in 0..200 {
        let mut points: Vec<ProjPoint> = Vec::new();
        let mut line_of: Vec<usize> = Vec::new();
        for (a, (&count, slope)) in counts.iter().zip(&slopes).enumerate() {
            let mut placed = 0;
            let mut guard = 0;
            while placed < count {
                guard += 1;
                if guard > 200 {
                    continue 'outer;
                }
                let t = gaussian_rational(&mut rng);
                if t.is_zero() {
                    continue;
                }
                let p = ProjPoint::affine(&apex_x + &t, &apex_y + &(slope * &t));
                if points.contains(&p) {
                    continue;
                }
                points.push(p);
                line_of.push(a);
                placed += 1;
            }
        }
        // Reject accidental collinear triples spanning distinct lines.
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                for k in j + 1..points.len() {
                    if line_of[i] == line_of[j] && line_of[j] == line_of[k] {
                        continue;
                    }
                    if collinear(&points[i], &points[j], &points[k]) {
                        continue 'outer;
                    }
                }
            }
        }
        if include_apex {
            points.push(apex.clone());
        }
        return Configuration::new(4, points);
    }
    Err(Error::InternalInconsistency(
        "rejection sampling failed to produce a generic pencil".into(),
    ))
}

/// Serialize in the canonical byte-deterministic file format.
pub fn serialize(c: &Configuration) -> String {
    let mut out = String::new();
    writeln!(out, "field {}", c.order).unwrap();
    for p in &c.points {
        let co = p.coords();
        writeln!(out, "point {} ; {} ; {}", co[0], co[1], co[2]).unwrap();
    }
    out
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Parse a configuration file. Errors carry 1-based line and column.
pub fn parse(text: &str) -> Result<Configuration> {
    let mut order: Option<u64> = None;
    let mut points: Vec<ProjPoint> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim_end_matches('\r');
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = line.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix("field") {
            if order.is_some() {
                return Err(parse_err(lineno, indent + 1, "duplicate field header"));
            }
            let n: u64 = rest
                .trim()
                .parse()
                .map_err(|_| parse_err(lineno, indent + 6, "expected a field order"))?;
            if n == 0 {
                return Err(parse_err(lineno, indent + 6, "field order must be positive"));
            }
            if n % 4 != 0 {
                return Err(parse_err(
                    lineno,
                    indent + 6,
                    format!("field order {n} must be a multiple of 4"),
                ));
            }
            order = Some(n);
        } else if let Some(rest) = trimmed.strip_prefix("point") {
            let n = order.ok_or_else(|| {
                parse_err(lineno, indent + 1, "point before the field header")
            })?;
            let base = indent + 5;
            let parts: Vec<&str> = rest.split(';').collect();
            if parts.len() != 3 {
                return Err(parse_err(lineno, base + 1, "expected three coordinates separated by ';'"));
            }
            let mut coords = Vec::with_capacity(3);
            let mut offset = base;
            for part in &parts {
                let e = parse_element(part, n).map_err(|e| {
                    parse_err(lineno, offset + e.offset + 1, e.msg)
                })?;
                offset += part.len() + 1;
                coords.push(e);
            }
            let [x, y, z] = <[CycloElement; 3]>::try_from(coords).unwrap();
            let p = ProjPoint::new(x, y, z)
                .map_err(|_| parse_err(lineno, base + 1, "zero point"))?;
            if points.contains(&p) {
                return Err(parse_err(lineno, base + 1, "duplicate point"));
            }
            points.push(p);
        } else {
            return Err(parse_err(lineno, indent + 1, "expected 'field', 'point', or a comment"));
        }
    }
    let order = order.ok_or_else(|| parse_err(1, 1, "missing field header"))?;
    if points.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    Configuration::new(order, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::ProjLine;

    #[test]
    fn fermat_point_counts() {
        for n in 1..=6 {
            let c = fermat_config(n).unwrap();
            assert_eq!(c.len(), 3 * n as usize);
        }
        assert_eq!(hesse_config().len(), 9);
        assert_eq!(hesse_config().order(), 12);
    }

    #[test]
    fn fermat_one_is_collinear() {
        // The three points sum to zero coordinate-wise, so the determinant
        // vanishes.
        let c = fermat_config(1).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.is_collinear());
        assert!(collinear(&c.points()[0], &c.points()[1], &c.points()[2]));
    }

    #[test]
    fn fermat_lies_on_coordinate_lines() {
        for n in 1..=8u64 {
            let c = fermat_config(n).unwrap();
            let order = c.order();
            let lines = [
                ProjLine::from_integers(order, 1, 0, 0).unwrap(),
                ProjLine::from_integers(order, 0, 1, 0).unwrap(),
                ProjLine::from_integers(order, 0, 0, 1).unwrap(),
            ];
            for (i, l) in lines.iter().enumerate() {
                let on = c.points().iter().filter(|p| incident(p, l)).count();
                assert_eq!(on, n as usize, "n={n} line {i}");
            }
        }
    }

    #[test]
    fn random_pencil_is_deterministic_and_structured() {
        let a = random_pencil_config(3, &[2, 1, 1], false, 7).unwrap();
        let b = random_pencil_config(3, &[2, 1, 1], false, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
        let c = random_pencil_config(3, &[2, 1, 1], true, 7).unwrap();
        assert_eq!(c.len(), 5);
        let d = random_pencil_config(3, &[2, 1, 1], false, 8).unwrap();
        assert_ne!(a, d);
    }

    #[test]
    fn degenerate_counts_rejected() {
        assert!(matches!(
            random_pencil_config(4, &[0, 0, 0, 0], false, 1),
            Err(Error::InvalidCounts(_))
        ));
        assert!(matches!(
            random_pencil_config(1, &[2], false, 1),
            Err(Error::InvalidCounts(_))
        ));
    }

    #[test]
    fn parse_single_point() {
        let c = parse("field 12\npoint 0 ; 1 ; -z^4\n").unwrap();
        assert_eq!(c.order(), 12);
        assert_eq!(c.len(), 1);
        let expected = ProjPoint::new(
            CycloElement::zero(12),
            CycloElement::one(12),
            -CycloElement::zeta_pow(12, 4).unwrap(),
        )
        .unwrap();
        assert_eq!(c.points()[0], expected);
    }

    #[test]
    fn parse_rejects_bad_files() {
        assert!(matches!(
            parse("field 12\npoint 0 ; 0 ; 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        let dup = "field 12\npoint 1 ; 0 ; 1\npoint 1 ; 0 ; 1\n";
        assert!(matches!(parse(dup), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse("field 7\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse("point 1 ; 0 ; 1\n"), Err(Error::Parse { .. })));
        let bad_expr = "field 12\npoint 1 + ; 0 ; 1\n";
        assert!(matches!(parse(bad_expr), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn roundtrip_hesse_and_comments() {
        let h = hesse_config();
        let text = serialize(&h);
        let reparsed = parse(&text).unwrap();
        assert_eq!(reparsed, h);
        assert_eq!(serialize(&reparsed), text);
        let with_comment = format!("# hesse\n{text}");
        assert_eq!(parse(&with_comment).unwrap(), h);
    }
}
