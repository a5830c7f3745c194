//! Subcommand implementations behind the command-line binary. Every
//! function is a thin adapter: parse inputs, call the library, flatten the
//! result into a [`Report`]. No file or terminal I/O happens here.

use crate::config::{self, Configuration};
use crate::cyclofield::parse_element;
use crate::error::{Error, Result};
use crate::incidence::{
    find_concurrency_points, is_sylvester_gallai, ordinary_lines, pencil_structure,
    spanned_lines, theorem_bound_report, SpannedLine,
};
use crate::pencil::{
    bound_chain_report, build_support_graph, check_acyclic, check_planarity,
    choose_generic_direction, green_boundary_integral_numeric, minimal_points, normalize,
    AcyclicityCertificate, Envelope, FindOutcome, GraphOutcome, OrdinaryLineWitness,
    PlanarityCertificate, SupportGraph,
};
use crate::projgeom::ProjPoint;
use crate::realizer::{realize, RealizationStatus, TargetGraph};
use crate::report::Report;
use crate::svg::render_support_graph;

/// Kinds accepted by the `gen` subcommand.
pub enum GenKind {
    Fermat(u64),
    Hesse,
    Random { m: usize, counts: Vec<usize>, include_apex: bool, seed: u64 },
}

pub fn cmd_gen(kind: GenKind) -> Result<String> {
    let c = match kind {
        GenKind::Fermat(n) => config::fermat_config(n)?,
        GenKind::Hesse => config::hesse_config(),
        GenKind::Random { m, counts, include_apex, seed } => {
            config::random_pencil_config(m, &counts, include_apex, seed)?
        }
    };
    Ok(config::serialize(&c))
}

fn parse_apex(text: &str, order: u64) -> Result<ProjPoint> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "apex must be three coordinates separated by ';'".into(),
        });
    }
    let mut coords = Vec::with_capacity(3);
    for part in &parts {
        let e = parse_element(part, order).map_err(|e| Error::Parse {
            line: 1,
            col: e.offset + 1,
            msg: e.msg,
        })?;
        coords.push(e);
    }
    let [x, y, z] = <[crate::cyclofield::CycloElement; 3]>::try_from(coords).unwrap();
    ProjPoint::new(x, y, z)
}

fn push_spanned(r: &mut Report, key: &str, lines: &[SpannedLine]) {
    r.push(key, lines.len());
    for (i, l) in lines.iter().enumerate() {
        r.push(format!("line.{i}"), &l.line);
        r.push(
            format!("line.{i}.members"),
            l.members
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
    }
}

pub fn cmd_lines(input: &str) -> Result<Report> {
    let c = config::parse(input)?;
    let mut r = Report::new("lines");
    r.push("points", c.len());
    push_spanned(&mut r, "spanned_lines", &spanned_lines(&c)?);
    Ok(r)
}

pub fn cmd_ordinary(input: &str) -> Result<Report> {
    let c = config::parse(input)?;
    let mut r = Report::new("ordinary");
    r.push("points", c.len());
    push_spanned(&mut r, "ordinary_lines", &ordinary_lines(&c)?);
    Ok(r)
}

pub fn cmd_sg_check(input: &str) -> Result<Report> {
    let c = config::parse(input)?;
    let mut r = Report::new("sg-check");
    r.push("points", c.len());
    r.push_bool("collinear", c.is_collinear());
    r.push("ordinary_lines", ordinary_lines(&c)?.len());
    r.push_bool("sg", is_sylvester_gallai(&c)?);
    Ok(r)
}

pub fn cmd_pencil_apex(input: &str, apex_text: &str) -> Result<Report> {
    let c = config::parse(input)?;
    let apex = parse_apex(apex_text, c.order())?;
    let ps = pencil_structure(&c, &apex)?;
    let mut r = Report::new("pencil");
    r.push("apex", &apex);
    r.push_bool("apex_in_set", ps.apex_in_set);
    r.push("m", ps.m());
    r.push(
        "counts",
        ps.counts()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    for (i, l) in ps.lines.iter().enumerate() {
        r.push(format!("line.{i}"), l);
    }
    let b = theorem_bound_report(&c, &apex)?;
    r.push("max_line_count", b.max_line_count);
    r.push("bound", b.bound);
    r.push_bool("exceeds", b.exceeds);
    r.push_bool("sg", b.sg);
    r.push_bool("consistent", b.consistent);
    Ok(r)
}

pub fn cmd_pencil_search(input: &str, max_m: usize) -> Result<Report> {
    let c = config::parse(input)?;
    let found = find_concurrency_points(&c, max_m)?;
    let mut r = Report::new("pencil-search");
    r.push("max_m", max_m);
    r.push("candidates", found.len());
    for (i, (p, m)) in found.iter().enumerate() {
        r.push(format!("apex.{i}"), p);
        r.push(format!("apex.{i}.m"), m);
    }
    Ok(r)
}

fn push_witness(r: &mut Report, w: &OrdinaryLineWitness) {
    r.push("witness.line", &w.line);
    r.push(
        "witness.members",
        w.members
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    r.push("witness.slope", &w.slope);
}

fn push_graph(r: &mut Report, g: &SupportGraph, m: usize) -> Result<()> {
    r.push("vertices", g.vertices.len());
    for (i, v) in g.vertices.iter().enumerate() {
        r.push(format!("vertex.{i}.y"), &v.y);
        r.push(format!("vertex.{i}.xmin"), &v.x_min);
    }
    r.push("edges", g.edges.len());
    for (i, e) in g.edges.iter().enumerate() {
        r.push(format!("edge.{i}"), format!("{} {}", e.a, e.b));
        r.push(format!("edge.{i}.slope"), &e.slope);
        r.push(format!("edge.{i}.intercept"), &e.intercept);
    }
    match check_planarity(g)? {
        PlanarityCertificate::Planar => r.push_bool("planar", true),
        PlanarityCertificate::Crossing { first, second } => {
            r.push_bool("planar", false);
            r.push("crossing", format!("{first} {second}"));
        }
    }
    match check_acyclic(g) {
        AcyclicityCertificate::Forest => r.push_bool("forest", true),
        AcyclicityCertificate::Cycle(c) => {
            r.push_bool("forest", false);
            r.push(
                "cycle",
                c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
            );
        }
    }
    let b = bound_chain_report(g, m)?;
    r.push("bound.binom", b.binom_bound);
    match b.planar_bound {
        Some(pb) => r.push("bound.planar", pb),
        None => r.push("bound.planar", "n/a"),
    }
    r.push("bound.forest", b.forest_bound);
    Ok(())
}

/// The support-graph pipeline report plus the rendered SVG (written to
/// disk by the binary when requested).
pub fn cmd_graph(input: &str, apex_text: &str) -> Result<(Report, Option<String>)> {
    let c = config::parse(input)?;
    let apex = parse_apex(apex_text, c.order())?;
    let mut np = normalize(&c, &apex)?;
    let t = choose_generic_direction(&mut np)?;
    let mut r = Report::new("graph");
    r.push("apex", &apex);
    r.push("m", np.m());
    r.push("direction_t", t);
    r.push("direction", np.direction().expect("direction chosen"));
    let mp = minimal_points(&np)?;
    for (i, x) in mp.x_stars.iter().enumerate() {
        r.push(format!("minimal.{i}"), x);
    }
    match build_support_graph(&np)? {
        GraphOutcome::Graph(g) => {
            r.push("outcome", "graph");
            push_graph(&mut r, &g, np.m())?;
            let svg = render_support_graph(&g);
            Ok((r, Some(svg)))
        }
        GraphOutcome::Witness(w) => {
            r.push("outcome", "witness");
            push_witness(&mut r, &w);
            Ok((r, None))
        }
    }
}

pub fn cmd_find_ordinary(input: &str, apex_text: &str) -> Result<Report> {
    let c = config::parse(input)?;
    let apex = parse_apex(apex_text, c.order())?;
    let mut r = Report::new("find-ordinary");
    r.push("apex", &apex);
    match crate::pencil::find_ordinary_line_concurrent(&c, &apex)? {
        FindOutcome::Witness(w) => {
            r.push("status", "witness");
            push_witness(&mut r, &w);
        }
        FindOutcome::BoundNotExceeded(g) => {
            r.push("status", "bound-not-exceeded");
            let m = g.vertices.len() + 1;
            push_graph(&mut r, &g, m)?;
        }
    }
    Ok(r)
}

pub fn cmd_realize(graph_input: &str, budget: u64, seed: u64) -> Result<Report> {
    let t = TargetGraph::parse(graph_input)?;
    let result = realize(&t, budget, seed)?;
    let mut r = Report::new("realize");
    r.push("vertices", t.vertex_count);
    r.push("target_edges", t.edges.len());
    r.push("budget", budget);
    r.push("seed", seed);
    r.push(
        "status",
        match result.status {
            RealizationStatus::Realized => "realized",
            RealizationStatus::BudgetExhausted => "budget-exhausted",
            RealizationStatus::ProvablyUnrealizable => "provably-unrealizable",
        },
    );
    r.push("candidates_tried", result.candidates_tried);
    if let Some(points) = &result.points {
        for (i, (x, y)) in points.iter().enumerate() {
            r.push(format!("point.{i}"), format!("{x} ; {y}"));
        }
    }
    if let Some(w) = &result.witness {
        r.push("witness.edge", format!("{} {}", w.edge.0, w.edge.1));
        r.push("witness.vertex", w.vertex);
    }
    Ok(r)
}

pub fn cmd_green_check(
    input: &str,
    apex_text: &str,
    polygon: &[usize],
    resolution: u32,
) -> Result<Report> {
    let c = config::parse(input)?;
    let apex = parse_apex(apex_text, c.order())?;
    let mut np = normalize(&c, &apex)?;
    choose_generic_direction(&mut np)?;
    let g = match build_support_graph(&np)? {
        GraphOutcome::Graph(g) => g,
        GraphOutcome::Witness(w) => {
            let mut r = Report::new("green-check");
            r.push("status", "witness");
            push_witness(&mut r, &w);
            return Ok(r);
        }
    };
    let env = Envelope::from_support_graph(&g);
    let vertices: Vec<crate::cyclofield::CycloElement> = polygon
        .iter()
        .map(|&i| {
            g.vertices
                .get(i)
                .map(|v| v.y.clone())
                .ok_or_else(|| Error::NonSimplePolygon(format!("vertex index {i} out of range")))
        })
        .collect::<Result<_>>()?;
    let integral = green_boundary_integral_numeric(&env, &vertices, resolution)?;
    let mut r = Report::new("green-check");
    r.push("status", "ok");
    r.push("envelope_edges", env.lines().len());
    r.push(
        "polygon",
        polygon
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    r.push("resolution", resolution);
    r.push_approx("integral", integral.value);
    r.push_approx("step", integral.step);
    Ok(r)
}

/// Map an error to the process exit status: 3 for internal-inconsistency
/// assertions, 2 for precondition violations and bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InternalInconsistency(_)
        | Error::PrecisionExhausted(_)
        | Error::DirectionSearchExhausted => 3,
        _ => 2,
    }
}

/// Convenience used by tests and the binary: run sg-check on a generated
/// configuration.
pub fn sg_check_of(c: &Configuration) -> Result<Report> {
    cmd_sg_check(&config::serialize(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_hesse_then_sg_check() {
        let text = cmd_gen(GenKind::Hesse).unwrap();
        let r = cmd_sg_check(&text).unwrap();
        assert_eq!(r.get("sg"), Some("true"));
        assert_eq!(r.get("points"), Some("9"));
        assert_eq!(r.get("ordinary_lines"), Some("0"));
    }

    #[test]
    fn pencil_report_for_fermat3() {
        let text = cmd_gen(GenKind::Fermat(3)).unwrap();
        let r = cmd_pencil_apex(&text, "0;0;1").unwrap();
        assert_eq!(r.get("m"), Some("5"));
        assert_eq!(r.get("counts"), Some("3,3,1,1,1"));
        assert_eq!(r.get("consistent"), Some("true"));
    }

    #[test]
    fn graph_report_for_fermat3() {
        let text = cmd_gen(GenKind::Fermat(3)).unwrap();
        let (r, svg) = cmd_graph(&text, "0;0;1").unwrap();
        assert_eq!(r.get("outcome"), Some("graph"));
        assert_eq!(r.get("edges"), Some("3"));
        assert_eq!(r.get("planar"), Some("true"));
        assert_eq!(r.get("forest"), Some("true"));
        let svg = svg.unwrap();
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 3);
    }

    #[test]
    fn reports_are_byte_deterministic() {
        let text = cmd_gen(GenKind::Random {
            m: 3,
            counts: vec![2, 1, 1],
            include_apex: false,
            seed: 11,
        })
        .unwrap();
        let again = cmd_gen(GenKind::Random {
            m: 3,
            counts: vec![2, 1, 1],
            include_apex: false,
            seed: 11,
        })
        .unwrap();
        assert_eq!(text, again);
        let r1 = cmd_lines(&text).unwrap().to_string();
        let r2 = cmd_lines(&text).unwrap().to_string();
        assert_eq!(r1, r2);
    }

    #[test]
    fn find_ordinary_via_cli() {
        let text = cmd_gen(GenKind::Random {
            m: 3,
            counts: vec![2, 1, 1],
            include_apex: true,
            seed: 5,
        })
        .unwrap();
        // The apex is the last generated point.
        let c = config::parse(&text).unwrap();
        let apex = c.points().last().unwrap();
        let apex_text = format!("{apex}");
        let r = cmd_find_ordinary(&text, &apex_text).unwrap();
        assert_eq!(r.get("status"), Some("witness"));
        assert!(r.get("witness.members").is_some());
    }

    #[test]
    fn realize_and_green_via_cli() {
        let r = cmd_realize("graph v=3\nedge 1 2\nedge 2 3\n", 50_000, 1).unwrap();
        assert_eq!(r.get("status"), Some("realized"));

        let c3 = cmd_realize("graph v=3\nedge 1 2\nedge 2 3\nedge 1 3\n", 100, 1).unwrap();
        assert_eq!(c3.get("status"), Some("provably-unrealizable"));
        assert!(c3.get("witness.edge").is_some());

        let text = cmd_gen(GenKind::Fermat(3)).unwrap();
        let g = cmd_green_check(&text, "0;0;1", &[1, 2, 3], 200).unwrap();
        assert_eq!(g.get("status"), Some("ok"));
        assert!(g.get("approx.integral").is_some());
    }

    #[test]
    fn bad_inputs_map_to_exit_code_two() {
        let err = cmd_sg_check("field 7\n").unwrap_err();
        assert_eq!(exit_code(&err), 2);
        let err = cmd_pencil_apex("field 12\npoint 1 ; 0 ; 1\n", "1;0").unwrap_err();
        assert_eq!(exit_code(&err), 2);
        assert_eq!(
            exit_code(&Error::InternalInconsistency("x".into())),
            3
        );
    }
}
