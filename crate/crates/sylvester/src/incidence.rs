//! Global incidence analysis: spanned lines, ordinary lines,
//! Sylvester-Gallai verification, pencil structure, and the concurrent-line
//! bound report.
//!
//! `spanned_lines` is the O(n^3) pair-enumeration oracle, kept deliberately
//! simple: it is the ground truth that the pencil pipeline is validated
//! against.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::projgeom::{incident, join, meet, ProjLine, ProjPoint};

/// A line through at least two configuration points, with the sorted list
/// of member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpannedLine {
    pub line: ProjLine,
    pub members: Vec<usize>,
}

impl SpannedLine {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

/// All distinct lines through at least two points, each with its full
/// member list, in order of first appearance.
pub fn spanned_lines(c: &Configuration) -> Result<Vec<SpannedLine>> {
    let pts = c.points();
    if pts.len() < 2 {
        return Err(Error::TooFewPoints { need: 2, got: pts.len() });
    }
    let mut lines: Vec<ProjLine> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let l = join(&pts[i], &pts[j])?;
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    Ok(lines
        .into_iter()
        .map(|line| {
            let members = pts
                .iter()
                .enumerate()
                .filter(|(_, p)| incident(p, &line))
                .map(|(i, _)| i)
                .collect();
            SpannedLine { line, members }
        })
        .collect())
}

/// The multiplicity-2 subset of the spanned lines.
pub fn ordinary_lines(c: &Configuration) -> Result<Vec<SpannedLine>> {
    Ok(spanned_lines(c)?
        .into_iter()
        .filter(|l| l.multiplicity() == 2)
        .collect())
}

/// True iff the configuration is non-collinear and has no ordinary line.
pub fn is_sylvester_gallai(c: &Configuration) -> Result<bool> {
    if c.len() < 3 {
        return Err(Error::TooFewPoints { need: 3, got: c.len() });
    }
    if c.is_collinear() {
        return Ok(false);
    }
    Ok(ordinary_lines(c)?.is_empty())
}

/// The pencil of lines through a fixed apex covering the configuration:
/// the distinct joins of the apex with each non-apex point, and the induced
/// partition of the non-apex points.
#[derive(Debug, Clone)]
pub struct PencilStructure {
    pub apex: ProjPoint,
    pub apex_in_set: bool,
    pub lines: Vec<ProjLine>,
    /// Indices into the configuration, one class per line, classes nonempty.
    pub per_line_members: Vec<Vec<usize>>,
}

impl PencilStructure {
    pub fn m(&self) -> usize {
        self.lines.len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.per_line_members.iter().map(|c| c.len()).collect()
    }
}

/// Decompose the configuration along the pencil through `apex`. Lines are
/// ordered by first appearance while scanning points in configuration
/// order, which fixes every later tie-break deterministically.
pub fn pencil_structure(c: &Configuration, apex: &ProjPoint) -> Result<PencilStructure> {
    let mut lines: Vec<ProjLine> = Vec::new();
    let mut per_line_members: Vec<Vec<usize>> = Vec::new();
    let mut apex_in_set = false;
    for (i, p) in c.points().iter().enumerate() {
        if p == apex {
            apex_in_set = true;
            continue;
        }
        let l = join(apex, p)?;
        match lines.iter().position(|k| *k == l) {
            Some(idx) => per_line_members[idx].push(i),
            None => {
                lines.push(l);
                per_line_members.push(vec![i]);
            }
        }
    }
    if lines.is_empty() {
        return Err(Error::ApexOnly);
    }
    Ok(PencilStructure {
        apex: apex.clone(),
        apex_in_set,
        lines,
        per_line_members,
    })
}

/// All apexes among the configuration points and the pairwise meets of
/// spanned lines whose pencil has at most `max_m` lines, sorted by m.
pub fn find_concurrency_points(
    c: &Configuration,
    max_m: usize,
) -> Result<Vec<(ProjPoint, usize)>> {
    let spanned = spanned_lines(c)?;
    let mut candidates: Vec<ProjPoint> = c.points().to_vec();
    for i in 0..spanned.len() {
        for j in i + 1..spanned.len() {
            if let Ok(p) = meet(&spanned[i].line, &spanned[j].line) {
                if !candidates.contains(&p) {
                    candidates.push(p);
                }
            }
        }
    }
    let mut out: Vec<(ProjPoint, usize)> = Vec::new();
    for apex in candidates {
        match pencil_structure(c, &apex) {
            Ok(ps) if ps.m() <= max_m => out.push((apex, ps.m())),
            _ => {}
        }
    }
    out.sort_by_key(|(_, m)| *m);
    Ok(out)
}

/// The concurrent-line bound report for one apex: with m pencil lines, a
/// Sylvester-Gallai configuration can put at most m - 2 points on a line
/// (the apex not counted), so `sg && exceeds` is impossible and
/// `consistent` always holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremBoundReport {
    pub m: usize,
    pub max_line_count: usize,
    pub bound: i64,
    pub exceeds: bool,
    pub sg: bool,
    pub consistent: bool,
}

pub fn theorem_bound_report(c: &Configuration, apex: &ProjPoint) -> Result<TheoremBoundReport> {
    let ps = pencil_structure(c, apex)?;
    let m = ps.m();
    let max_line_count = ps.counts().into_iter().max().unwrap_or(0);
    let bound = m as i64 - 2;
    let exceeds = max_line_count as i64 > bound;
    let sg = if c.len() >= 3 {
        is_sylvester_gallai(c)?
    } else {
        false
    };
    Ok(TheoremBoundReport {
        m,
        max_line_count,
        bound,
        exceeds,
        sg,
        consistent: !(sg && exceeds),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{fermat_config, hesse_config, random_pencil_config};
    use crate::cyclofield::CycloElement;
    use crate::projgeom::Transform;
    use rand::{Rng, SeedableRng};

    fn apex_z(order: u64) -> ProjPoint {
        ProjPoint::from_integers(order, 0, 0, 1).unwrap()
    }

    #[test]
    fn hesse_line_statistics() {
        let h = hesse_config();
        let lines = spanned_lines(&h).unwrap();
        assert_eq!(lines.len(), 12);
        assert!(lines.iter().all(|l| l.multiplicity() == 3));
        assert!(ordinary_lines(&h).unwrap().is_empty());
        assert!(is_sylvester_gallai(&h).unwrap());
    }

    #[test]
    fn generic_triangle_lines() {
        let c = random_pencil_config(2, &[1, 1], true, 3).unwrap();
        assert_eq!(c.len(), 3);
        let lines = spanned_lines(&c).unwrap();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.multiplicity() == 2));
        assert_eq!(ordinary_lines(&c).unwrap().len(), 3);
    }

    #[test]
    fn fermat_spanned_line_counts() {
        for n in 3..=6u64 {
            let c = fermat_config(n).unwrap();
            let lines = spanned_lines(&c).unwrap();
            assert_eq!(lines.len(), (n * n + 3) as usize, "n={n}");
        }
    }

    #[test]
    fn fermat_two_has_three_ordinary_lines() {
        let c = fermat_config(2).unwrap();
        let ord = ordinary_lines(&c).unwrap();
        assert_eq!(ord.len(), 3);
        // They are the coordinate lines.
        for l in &ord {
            let coeffs = l.line.coeffs();
            let nonzero = coeffs.iter().filter(|e| !e.is_zero()).count();
            assert_eq!(nonzero, 1);
        }
    }

    #[test]
    fn fermat_family_is_sylvester_gallai() {
        for n in 3..=6u64 {
            assert!(is_sylvester_gallai(&fermat_config(n).unwrap()).unwrap(), "n={n}");
        }
        let collinear3 = fermat_config(1).unwrap();
        assert_eq!(is_sylvester_gallai(&collinear3).unwrap(), false);
    }

    #[test]
    fn pair_counting_identity() {
        // Sum over spanned lines of C(mult, 2) = C(n, 2): every pair lies on
        // exactly one line.
        for c in [
            hesse_config(),
            fermat_config(2).unwrap(),
            fermat_config(4).unwrap(),
            random_pencil_config(3, &[2, 2, 1], true, 11).unwrap(),
        ] {
            let n = c.len();
            let total: usize = spanned_lines(&c)
                .unwrap()
                .iter()
                .map(|l| l.multiplicity() * (l.multiplicity() - 1) / 2)
                .sum();
            assert_eq!(total, n * (n - 1) / 2);
        }
    }

    #[test]
    fn fermat3_pencil_at_corner() {
        let c = fermat_config(3).unwrap();
        let ps = pencil_structure(&c, &apex_z(12)).unwrap();
        assert_eq!(ps.m(), 5);
        let mut counts = ps.counts();
        counts.sort_unstable();
        assert_eq!(counts, vec![1, 1, 1, 3, 3]);
        assert!(!ps.apex_in_set);
    }

    #[test]
    fn hesse_pencil_at_configuration_points() {
        let h = hesse_config();
        for apex in h.points() {
            let ps = pencil_structure(&h, apex).unwrap();
            assert_eq!(ps.m(), 4);
            assert_eq!(ps.counts(), vec![2, 2, 2, 2]);
            assert!(ps.apex_in_set);
        }
    }

    #[test]
    fn triangle_pencil_at_vertex() {
        let c = random_pencil_config(2, &[1, 1], true, 3).unwrap();
        let apex = c.points()[2].clone(); // the apex point of the generator
        let ps = pencil_structure(&c, &apex).unwrap();
        assert_eq!(ps.m(), 2);
        assert_eq!(ps.counts(), vec![1, 1]);
    }

    #[test]
    fn concurrency_search_fermat3() {
        let c = fermat_config(3).unwrap();
        let found = find_concurrency_points(&c, 5).unwrap();
        let corners = [
            ProjPoint::from_integers(12, 0, 0, 1).unwrap(),
            ProjPoint::from_integers(12, 0, 1, 0).unwrap(),
            ProjPoint::from_integers(12, 1, 0, 0).unwrap(),
        ];
        for corner in &corners {
            assert!(found.iter().any(|(p, m)| p == corner && *m == 5));
        }
    }

    #[test]
    fn concurrency_search_hesse() {
        let h = hesse_config();
        let found = find_concurrency_points(&h, 4).unwrap();
        assert_eq!(found.len(), 9);
        for (p, m) in &found {
            assert_eq!(*m, 4);
            assert!(h.points().contains(p));
        }
    }

    #[test]
    fn concurrency_search_quadrilateral_diagonals() {
        // Four generic points: no apex covers them with two lines except the
        // three diagonal points of the complete quadrilateral.
        let c = random_pencil_config(3, &[2, 1, 1], false, 19).unwrap();
        assert_eq!(ordinary_lines(&c).unwrap().len(), 6); // all pairs
        let found = find_concurrency_points(&c, 2).unwrap();
        assert_eq!(found.len(), 3);
        for (p, m) in &found {
            assert_eq!(*m, 2);
            assert!(!c.points().contains(p));
        }
    }

    #[test]
    fn bound_reports() {
        let c3 = fermat_config(3).unwrap();
        let r = theorem_bound_report(&c3, &apex_z(12)).unwrap();
        assert_eq!((r.m, r.max_line_count, r.bound), (5, 3, 3));
        assert!(!r.exceeds && r.sg && r.consistent);

        let c4 = fermat_config(4).unwrap();
        let r = theorem_bound_report(&c4, &apex_z(4)).unwrap();
        assert_eq!((r.m, r.max_line_count, r.bound), (6, 4, 4));
        assert!(!r.exceeds && r.sg && r.consistent);

        let rcfg = random_pencil_config(3, &[2, 1, 1], false, 7).unwrap();
        let apex = {
            // The generator's apex is recoverable as the meet of two pencil
            // lines; easier: rebuild with the apex included and take it.
            let with_apex = random_pencil_config(3, &[2, 1, 1], true, 7).unwrap();
            with_apex.points().last().unwrap().clone()
        };
        let r = theorem_bound_report(&rcfg, &apex).unwrap();
        assert!(r.exceeds);
        assert!(!r.sg);
        assert!(r.consistent);
    }

    #[test]
    fn ordinary_count_is_projective_invariant() {
        let c = fermat_config(2).unwrap();
        let base = ordinary_lines(&c).unwrap().len();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut done = 0;
        while done < 50 {
            let mat: [[CycloElement; 3]; 3] = std::array::from_fn(|_| {
                std::array::from_fn(|_| CycloElement::from_integer(4, rng.gen_range(-4..=4)))
            });
            let t = match Transform::new(mat) {
                Ok(t) => t,
                Err(_) => continue,
            };
            let img = c.transformed(&t);
            assert_eq!(ordinary_lines(&img).unwrap().len(), base);
            done += 1;
        }
    }
}
