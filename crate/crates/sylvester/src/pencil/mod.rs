//! The concurrent-lines pipeline: normalize a pencil so the apex sits at
//! [1 : 0 : 0] and the heaviest line at infinity, pick a generic direction,
//! take per-line minimal points, and build the support graph whose exact
//! certificates (planarity, acyclicity, bound chain) drive the
//! ordinary-line finder.

pub mod envelope;
pub mod graph;

use num_bigint::BigInt;

use crate::config::Configuration;
use crate::cyclofield::{CycloElement, Rational};
use crate::error::{Error, Result};
use crate::incidence::pencil_structure;
use crate::projgeom::{incident, normalization_transform, ProjLine, ProjPoint, Transform};

pub use envelope::{green_boundary_integral_numeric, green_cycle_sum, Envelope, GreenIntegral};
pub use graph::{
    check_acyclic, check_planarity, cycle_obstruction, genericity_check, line_through,
    max_support_graph, AcyclicityCertificate, CycleObstruction, GraphVertex,
    PlanarityCertificate, SupportEdge, SupportGraph,
};

use graph::sign_re;

/// A finite pencil line y = y_a with the x-coordinates of its points.
#[derive(Debug, Clone)]
pub struct FiniteLine {
    pub y: CycloElement,
    pub xs: Vec<CycloElement>,
}

/// A pencil in normal position: apex at [1 : 0 : 0], the heaviest line at
/// infinity carrying the slopes `infinite`, and the remaining lines
/// horizontal. Once a generic direction is applied, all coordinates are
/// already multiplied by it.
#[derive(Debug, Clone)]
pub struct NormalizedPencil {
    config: Configuration,
    apex: ProjPoint,
    apex_in_set: bool,
    transform: Transform,
    direction: Option<CycloElement>,
    direction_t: Option<Rational>,
    lines: Vec<FiniteLine>,
    infinite: Vec<CycloElement>,
}

impl NormalizedPencil {
    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn apex(&self) -> &ProjPoint {
        &self.apex
    }

    pub fn apex_in_set(&self) -> bool {
        self.apex_in_set
    }

    pub fn transform(&self) -> &Transform {
        &self.transform
    }

    /// The chosen multiplier c = 1 + t*i, once a direction is applied.
    pub fn direction(&self) -> Option<&CycloElement> {
        self.direction.as_ref()
    }

    pub fn direction_t(&self) -> Option<&Rational> {
        self.direction_t.as_ref()
    }

    pub fn finite_lines(&self) -> &[FiniteLine] {
        &self.lines
    }

    pub fn infinite_points(&self) -> &[CycloElement] {
        &self.infinite
    }

    /// Total number of pencil lines, the finite ones plus the line at
    /// infinity.
    pub fn m(&self) -> usize {
        self.lines.len() + 1
    }

    /// A synthetic normalized pencil from affine points (x, y) and infinite
    /// slopes, with the identity transform. The backing configuration is
    /// the given points plus one point [k : -1 : 0] per slope.
    pub fn from_affine_points(
        order: u64,
        finite: &[(CycloElement, CycloElement)],
        slopes: &[CycloElement],
    ) -> Result<Self> {
        if finite.is_empty() {
            return Err(Error::NoFinitePoints);
        }
        let mut points: Vec<ProjPoint> = Vec::new();
        for (x, y) in finite {
            points.push(ProjPoint::new(
                x.embed(order)?,
                y.embed(order)?,
                CycloElement::one(order),
            )?);
        }
        for k in slopes {
            points.push(ProjPoint::new(
                k.embed(order)?,
                -CycloElement::one(order),
                CycloElement::zero(order),
            )?);
        }
        let config = Configuration::new(order, points)?;
        let mut lines: Vec<FiniteLine> = Vec::new();
        for (x, y) in finite {
            let x = x.embed(order)?;
            let y = y.embed(order)?;
            match lines.iter_mut().find(|l| l.y == y) {
                Some(l) => l.xs.push(x),
                None => lines.push(FiniteLine { y, xs: vec![x] }),
            }
        }
        Ok(NormalizedPencil {
            config,
            apex: ProjPoint::from_integers(order, 1, 0, 0)?,
            apex_in_set: false,
            transform: Transform::identity(order),
            direction: None,
            direction_t: None,
            lines,
            infinite: slopes
                .iter()
                .map(|k| k.embed(order))
                .collect::<Result<_>>()?,
        })
    }
}

/// Normalize the pencil through `apex`: the line with the most points
/// (ties broken by smallest pencil index) becomes the line at infinity and
/// the apex moves to [1 : 0 : 0]. The apex itself is dropped from the
/// working set; whether it belonged to the configuration is recorded.
pub fn normalize(c: &Configuration, apex: &ProjPoint) -> Result<NormalizedPencil> {
    if c.is_collinear() {
        return Err(Error::CollinearConfiguration);
    }
    let ps = pencil_structure(c, apex)?;
    let m = ps.m();
    if m < 2 {
        return Err(Error::DegeneratePencil);
    }
    let heavy = {
        let counts = ps.counts();
        let max = *counts.iter().max().expect("m >= 2");
        counts.iter().position(|&c| c == max).expect("max exists")
    };
    let t = normalization_transform(apex, &ps.lines[heavy])?;

    let order = c.order();
    let mut infinite = Vec::new();
    for &i in &ps.per_line_members[heavy] {
        let p = t.apply(&c.points()[i]);
        let [x, y, z] = p.coords().clone();
        debug_assert!(z.is_zero());
        // [x : y : 0] with y != 0 rescales to [k : -1 : 0].
        let k = -&(&x * &y.inv()?);
        infinite.push(k);
    }
    let mut lines: Vec<FiniteLine> = Vec::new();
    for (j, members) in ps.per_line_members.iter().enumerate() {
        if j == heavy {
            continue;
        }
        let mut line: Option<FiniteLine> = None;
        for &i in members {
            let p = t.apply(&c.points()[i]);
            let [x, y, z] = p.coords().clone();
            let z_inv = z.inv().map_err(|_| {
                Error::InternalInconsistency("finite pencil point mapped to infinity".into())
            })?;
            let ax = &x * &z_inv;
            let ay = &y * &z_inv;
            match &mut line {
                Some(l) => {
                    debug_assert_eq!(l.y, ay);
                    l.xs.push(ax);
                }
                None => line = Some(FiniteLine { y: ay, xs: vec![ax] }),
            }
        }
        lines.push(line.expect("pencil classes are nonempty"));
    }
    let _ = order;
    Ok(NormalizedPencil {
        config: c.clone(),
        apex: apex.clone(),
        apex_in_set: ps.apex_in_set,
        transform: t,
        direction: None,
        direction_t: None,
        lines,
        infinite,
    })
}

/// The direction enumeration t = 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, ...
fn direction_candidates() -> impl Iterator<Item = Rational> {
    let head = std::iter::once(Rational::from(BigInt::from(0)));
    let tail = (1u64..).flat_map(|k| {
        let k_rat = Rational::from(BigInt::from(k as i64));
        let inv = Rational::new(BigInt::from(1), BigInt::from(k as i64));
        if k == 1 {
            vec![k_rat.clone(), -k_rat]
        } else {
            vec![inv.clone(), -inv, k_rat.clone(), -k_rat]
        }
    });
    head.chain(tail)
}

const DIRECTION_BUDGET: usize = 4096;

/// Index of the re-minimal element; errors on a tie.
fn argmin_re(xs: &[CycloElement]) -> Result<usize> {
    let mut best = 0usize;
    for i in 1..xs.len() {
        match xs[i].cmp_re(&xs[best])? {
            -1 => best = i,
            0 => {
                return Err(Error::GenericityViolation(
                    "two points share the minimal real coordinate".into(),
                ))
            }
            _ => {}
        }
    }
    Ok(best)
}

fn det_triple(
    xs: (&CycloElement, &CycloElement, &CycloElement),
    ys: (&CycloElement, &CycloElement, &CycloElement),
) -> CycloElement {
    // det [[1,1,1],[xa,xb,xc],[ya,yb,yc]]
    let t0 = &(xs.1 * ys.2) - &(xs.2 * ys.1);
    let t1 = &(xs.0 * ys.2) - &(xs.2 * ys.0);
    let t2 = &(xs.0 * ys.1) - &(xs.1 * ys.0);
    &(&t0 - &t1) + &t2
}

/// Scale a pencil's coordinates by c and check the two genericity
/// predicates; returns the scaled lines and minimal indices on success.
fn try_direction(
    np: &NormalizedPencil,
    c: &CycloElement,
) -> Result<Option<Vec<FiniteLine>>> {
    let scaled: Vec<FiniteLine> = np
        .lines
        .iter()
        .map(|l| FiniteLine {
            y: &l.y * c,
            xs: l.xs.iter().map(|x| x * c).collect(),
        })
        .collect();

    // P1: distinct x values get distinct real parts, across the pencil.
    let all_xs: Vec<&CycloElement> = scaled.iter().flat_map(|l| l.xs.iter()).collect();
    for i in 0..all_xs.len() {
        for j in i + 1..all_xs.len() {
            if all_xs[i] == all_xs[j] {
                continue;
            }
            if all_xs[i].cmp_re(all_xs[j])? == 0 {
                return Ok(None);
            }
        }
    }

    // P2 over the minimal points: the triple determinant divided by
    // (y_b - y_a) has zero real part only when exactly zero.
    let mins: Vec<CycloElement> = scaled
        .iter()
        .map(|l| Ok(l.xs[argmin_re(&l.xs)?].clone()))
        .collect::<Result<_>>()?;
    let n = scaled.len();
    for a in 0..n {
        for b in a + 1..n {
            let dy = &scaled[b].y - &scaled[a].y;
            let dy_inv = dy.inv()?;
            for cc in 0..n {
                if cc == a || cc == b {
                    continue;
                }
                let det = det_triple(
                    (&mins[a], &mins[b], &mins[cc]),
                    (&scaled[a].y, &scaled[b].y, &scaled[cc].y),
                );
                let v = &det * &dy_inv;
                if sign_re(&v)? == 0 && !v.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(scaled))
}

/// Choose the first generic multiplier c = 1 + t*i in the fixed
/// enumeration of t and apply it in place. Each failing candidate excludes
/// only finitely many directions, so the search terminates.
pub fn choose_generic_direction(np: &mut NormalizedPencil) -> Result<Rational> {
    choose_generic_direction_nth(np, 0)
}

/// Like [`choose_generic_direction`], but skip the first `skip` valid
/// candidates; lets callers re-run the pipeline under a different valid
/// direction.
pub fn choose_generic_direction_nth(np: &mut NormalizedPencil, skip: usize) -> Result<Rational> {
    let order = np.config.order();
    let i = CycloElement::i(order)?;
    let one = CycloElement::one(order);
    let mut remaining = skip;
    for t in direction_candidates().take(DIRECTION_BUDGET) {
        let c = &one + &i.scale(&t);
        if let Some(scaled) = try_direction(np, &c)? {
            if remaining > 0 {
                remaining -= 1;
                continue;
            }
            np.lines = scaled;
            np.direction = Some(c);
            np.direction_t = Some(t);
            return Ok(np.direction_t.clone().expect("just set"));
        }
    }
    Err(Error::DirectionSearchExhausted)
}

/// The per-line minimal points x_a*, one per finite line.
#[derive(Debug, Clone)]
pub struct MinimalPoints {
    pub x_stars: Vec<CycloElement>,
}

pub fn minimal_points(np: &NormalizedPencil) -> Result<MinimalPoints> {
    if np.direction.is_none() {
        return Err(Error::DirectionNotChosen);
    }
    let x_stars = np
        .lines
        .iter()
        .map(|l| Ok(l.xs[argmin_re(&l.xs)?].clone()))
        .collect::<Result<_>>()?;
    Ok(MinimalPoints { x_stars })
}

/// For an infinite point [k : -1 : 0], the re-minimal intercept d* of the
/// pencil of lines x + k*y = d through finite points, and the lines whose
/// point achieves it. Every minimizer is that line's minimal point.
pub fn pencil_minimal_line(
    np: &NormalizedPencil,
    k: &CycloElement,
) -> Result<(CycloElement, Vec<usize>)> {
    if np.direction.is_none() {
        return Err(Error::DirectionNotChosen);
    }
    if !np.infinite.iter().any(|s| s == k) {
        return Err(Error::UnknownSlope);
    }
    if np.lines.is_empty() {
        return Err(Error::NoFinitePoints);
    }
    let mp = minimal_points(np)?;
    let mut d_star: Option<CycloElement> = None;
    for line in &np.lines {
        for x in &line.xs {
            let d = x + &(k * &line.y);
            match &d_star {
                None => d_star = Some(d),
                Some(cur) => {
                    if d.cmp_re(cur)? < 0 {
                        d_star = Some(d);
                    }
                }
            }
        }
    }
    let d_star = d_star.expect("finite points exist");
    let mut minimizers = Vec::new();
    for (a, line) in np.lines.iter().enumerate() {
        for x in &line.xs {
            let d = x + &(k * &line.y);
            if d == d_star {
                if *x != mp.x_stars[a] {
                    return Err(Error::InternalInconsistency(
                        "a pencil-minimal point is not the line minimum".into(),
                    ));
                }
                minimizers.push(a);
            }
        }
    }
    Ok((d_star, minimizers))
}

/// A verified ordinary line: passes through exactly two configuration
/// points, found through the pencil of an infinite point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryLineWitness {
    /// The line in the original configuration's coordinates.
    pub line: ProjLine,
    /// The two member indices into the configuration.
    pub members: Vec<usize>,
    /// The slope k of the pencil (in normalized coordinates) that exposed
    /// the line.
    pub slope: CycloElement,
}

/// Either a completed support graph or an ordinary-line witness found on
/// the way.
#[derive(Debug, Clone)]
pub enum GraphOutcome {
    Graph(SupportGraph),
    Witness(OrdinaryLineWitness),
}

fn total_transform(np: &NormalizedPencil) -> Result<Transform> {
    let c = np.direction.clone().ok_or(Error::DirectionNotChosen)?;
    let scaling = Transform::affine_scaling(&c)?;
    Ok(scaling.compose(&np.transform))
}

fn witness_for(
    np: &NormalizedPencil,
    k: &CycloElement,
    d_star: &CycloElement,
) -> Result<OrdinaryLineWitness> {
    // x + k*y = d* in normalized coordinates.
    let order = np.config.order();
    let l_norm = ProjLine::new(
        CycloElement::one(order),
        k.embed(order)?,
        -d_star.embed(order)?,
    )?;
    let line = total_transform(np)?.pullback_line(&l_norm);
    let members: Vec<usize> = np
        .config
        .points()
        .iter()
        .enumerate()
        .filter(|(_, p)| incident(p, &line))
        .map(|(i, _)| i)
        .collect();
    if members.len() != 2 {
        return Err(Error::InternalInconsistency(format!(
            "ordinary-line candidate has {} members",
            members.len()
        )));
    }
    Ok(OrdinaryLineWitness { line, members, slope: k.clone() })
}

/// Build the support graph: one edge per infinite point, joining the two
/// smallest-index minimizers of its re-minimal pencil line. If some
/// infinite point has a single minimizer, that line passes through exactly
/// two configuration points and is returned as a witness instead.
///
/// On completion the support conditions are asserted exactly at every
/// vertex for every edge, and the slopes are checked pairwise distinct.
pub fn build_support_graph(np: &NormalizedPencil) -> Result<GraphOutcome> {
    let mp = minimal_points(np)?;
    let mut edges: Vec<SupportEdge> = Vec::new();
    for k in &np.infinite {
        let (d_star, minimizers) = pencil_minimal_line(np, k)?;
        match minimizers.len() {
            0 => {
                return Err(Error::InternalInconsistency(
                    "pencil-minimal line has no minimizer".into(),
                ))
            }
            1 => {
                return Ok(GraphOutcome::Witness(witness_for(np, k, &d_star)?));
            }
            _ => edges.push(SupportEdge {
                a: minimizers[0],
                b: minimizers[1],
                slope: k.clone(),
                intercept: d_star,
            }),
        }
    }

    if edges.len() != np.infinite.len() {
        return Err(Error::InternalInconsistency("edge bijection broken".into()));
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edges[i].slope == edges[j].slope {
                return Err(Error::InternalInconsistency(
                    "two edges share a slope".into(),
                ));
            }
        }
    }
    // Support condition at every vertex for every edge.
    for e in &edges {
        for (c, line) in np.lines.iter().enumerate() {
            let v = &(&mp.x_stars[c] + &(&e.slope * &line.y)) - &e.intercept;
            let s = sign_re(&v)?;
            if s < 0 || (s == 0 && !v.is_zero()) {
                return Err(Error::InternalInconsistency(format!(
                    "support condition fails at vertex {c}"
                )));
            }
        }
    }
    let vertices = np
        .lines
        .iter()
        .zip(&mp.x_stars)
        .map(|(l, x)| GraphVertex { y: l.y.clone(), x_min: x.clone() })
        .collect();
    Ok(GraphOutcome::Graph(SupportGraph { vertices, edges }))
}

/// Outcome of the constructive ordinary-line search.
#[derive(Debug, Clone)]
pub enum FindOutcome {
    Witness(OrdinaryLineWitness),
    /// No pencil line exceeds the m - 2 bound; the completed support graph
    /// is returned instead.
    BoundNotExceeded(SupportGraph),
}

/// Run the full pipeline. When some pencil line carries more than m - 2
/// points (the heaviest line then sits at infinity), a forest on m - 1
/// vertices cannot absorb one edge per infinite point, so some pencil-
/// minimal line has a single minimizer and a verified ordinary line comes
/// back. Otherwise the completed graph is returned.
pub fn find_ordinary_line_concurrent(
    c: &Configuration,
    apex: &ProjPoint,
) -> Result<FindOutcome> {
    let mut np = normalize(c, apex)?;
    choose_generic_direction(&mut np)?;
    let m = np.m();
    let exceeds = np.infinite.len() > m - 2;
    match build_support_graph(&np)? {
        GraphOutcome::Witness(w) => Ok(FindOutcome::Witness(w)),
        GraphOutcome::Graph(g) => {
            if exceeds {
                Err(Error::InternalInconsistency(
                    "bound exceeded but no witness produced; a supported cycle would be required"
                        .into(),
                ))
            } else {
                Ok(FindOutcome::BoundNotExceeded(g))
            }
        }
    }
}

/// The chain of edge-count bounds certified for a support graph from an
/// m-line pencil: binomial (vertex count), planar (Euler), forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundChainReport {
    pub edges: usize,
    pub binom_bound: usize,
    /// 3(m-1) - 6, meaningful for m >= 4 when the graph is planar.
    pub planar_bound: Option<usize>,
    pub forest_bound: usize,
    pub planar: bool,
    pub forest: bool,
}

pub fn bound_chain_report(g: &SupportGraph, m: usize) -> Result<BoundChainReport> {
    if m < 2 {
        return Err(Error::DegeneratePencil);
    }
    let edges = g.edges.len();
    let v = m - 1;
    let binom_bound = v * v.saturating_sub(1) / 2;
    let planar = matches!(check_planarity(g)?, PlanarityCertificate::Planar);
    let forest = matches!(check_acyclic(g), AcyclicityCertificate::Forest);
    let planar_bound = if m >= 4 { Some(3 * m - 9) } else { None };
    if edges > binom_bound {
        return Err(Error::InternalInconsistency("edge count exceeds the binomial bound".into()));
    }
    if planar {
        if let Some(pb) = planar_bound {
            if edges > pb {
                return Err(Error::InternalInconsistency(
                    "planar graph exceeds the Euler bound".into(),
                ));
            }
        }
    }
    if forest && edges > m - 2 {
        return Err(Error::InternalInconsistency(
            "forest exceeds the m - 2 bound".into(),
        ));
    }
    Ok(BoundChainReport { edges, binom_bound, planar_bound, forest_bound: m - 2, planar, forest })
}
