use crate::render::{render_svg, RenderOptions};
use crate::{CliError, Input, Report};
use clap::{Args, ValueEnum};
use num_traits::{One, ToPrimitive, Zero};
use sepgraph::arrangement::{free_path, mask_of, polyline_avoids, SeparationOracle};
use sepgraph::gen::GeneratorSpec;
use sepgraph::geom::{fmt_q, parse_q, Obstacle, Point, Polyline, Q};
use sepgraph::labeled_graph::{build_labeled_graph, project, route_reference_curves_seeded, LabeledMultigraph, Mode};
use sepgraph::oct::{obstacle_removal, oct_exact, LpArith, RemovalMode};
use sepgraph::parity::{detect_odd_cycle, shortest_odd_cycle};
use sepgraph::pointsep::{all_pairs, gps_solve, verify_result, Caps, Strategy};
use sepgraph::sep2::{min_st_separator, verify_sep2};
use sepgraph::Scene;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

pub fn cmd_sep2(sc: &Scene, seed: u64) -> Result<Report, CliError> {
    let result = min_st_separator(sc, seed)?;
    log::info!("sep2: separator {:?}", result.separator);
    Ok(Report::Sep2 { scene: sc.to_json(), result })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RemoveModeArg {
    Exact,
    Approx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpArithArg {
    Rational,
    Float,
}

#[derive(Args, Clone, Debug)]
pub struct RemoveArgs {
    #[arg(long, value_enum, default_value_t = RemoveModeArg::Exact)]
    pub mode: RemoveModeArg,
    /// Deletion budget for exact mode; defaults to the obstacle count.
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = LpArithArg::Rational)]
    pub lp_arith: LpArithArg,
    /// Feasibility tolerance of the float LP.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Also solve exactly and report |X| / OPT (approx mode).
    #[arg(long)]
    pub report_ratio: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Default for RemoveArgs {
    fn default() -> Self {
        RemoveArgs { mode: RemoveModeArg::Exact, budget: None, lp_arith: LpArithArg::Rational, tol: 1e-9, report_ratio: false, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpReport {
    pub arith: LpArithArg,
    pub tol: f64,
    pub objective: String,
    pub x: Vec<String>,
    pub cuts: Vec<Vec<usize>>,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub approx: usize,
    pub exact: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemovalReport {
    pub pair: (usize, usize),
    pub mode: RemoveModeArg,
    pub budget: Option<usize>,
    pub seed: u64,
    pub deleted: Vec<usize>,
    /// s-t polyline avoiding every remaining obstacle.
    pub witness: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lp: Option<LpReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<RatioReport>,
}

fn st_graph(sc: &Scene, seed: u64) -> Result<LabeledMultigraph, CliError> {
    let rc = route_reference_curves_seeded(sc, Mode::St, seed)?;
    Ok(project(&build_labeled_graph(sc, &rc)?, 0))
}

pub fn cmd_remove(sc: &Scene, args: &RemoveArgs) -> Result<Report, CliError> {
    let pair = sc.st_pair().ok_or(sepgraph::Error::MissingPair)?;
    let (mode, budget) = match args.mode {
        RemoveModeArg::Exact => {
            let q = args.budget.unwrap_or(sc.n());
            (RemovalMode::Exact(q), Some(q))
        }
        RemoveModeArg::Approx => {
            if !(args.tol >= 0.0 && args.tol < 1.0) {
                return Err(CliError::invalid("tol must lie in [0, 1)"));
            }
            let arith = match args.lp_arith {
                LpArithArg::Rational => LpArith::Rational,
                LpArithArg::Float => LpArith::Float { tol: args.tol },
            };
            (RemovalMode::Approx(arith), None)
        }
    };
    let r = obstacle_removal(sc, mode, args.seed)?;
    let lp = r.lp.as_ref().map(|sol| LpReport {
        arith: args.lp_arith,
        tol: if args.lp_arith == LpArithArg::Float { args.tol } else { 0.0 },
        objective: fmt_q(&sol.objective),
        x: sol.x.iter().map(fmt_q).collect(),
        cuts: sol.cuts.clone(),
        iterations: sol.iterations,
    });
    let ratio = if args.report_ratio && args.mode == RemoveModeArg::Approx {
        let g = st_graph(sc, args.seed)?;
        let exact = oct_exact(&g, sc.n()).map(|s| s.len()).ok_or_else(|| CliError::Internal("no exact OCT".into()))?;
        let approx = r.deleted.len();
        let ratio = if exact == 0 { 1.0 } else { approx as f64 / exact as f64 };
        log::info!("remove: approx {approx}, exact {exact}, ratio {ratio}");
        Some(RatioReport { approx, exact, ratio })
    } else {
        None
    };
    let witness = r.witness.vertices.iter().map(|p| [fmt_q(&p.x), fmt_q(&p.y)]).collect();
    let result = RemovalReport { pair, mode: args.mode, budget, seed: args.seed, deleted: r.deleted, witness, lp, ratio };
    Ok(Report::Remove { scene: sc.to_json(), result })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairsArg {
    /// Every pair of named points.
    All,
    /// The pairs listed in the scene.
    Listed,
}

pub fn cmd_psep(sc: &Scene, strategy: Strategy, pairs: PairsArg, seed: u64, caps: &Caps) -> Result<Report, CliError> {
    let pairs = match pairs {
        PairsArg::All => all_pairs(sc),
        PairsArg::Listed => sc.pairs.clone(),
    };
    let result = gps_solve(sc, &pairs, strategy, seed, caps)?;
    log::info!("psep {strategy}: separator {:?}", result.separator);
    Ok(Report::Psep { scene: sc.to_json(), result })
}

pub fn cmd_gen(spec: &GeneratorSpec, seed: u64) -> Result<Scene, CliError> {
    let sc = spec.generate(seed);
    let v = sc.validate();
    if !v.is_empty() {
        return Err(CliError::Internal(format!("generator {spec} produced an invalid scene: {v:?}")));
    }
    Ok(sc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    /// Labeled intersection graph in Graphviz DOT.
    Dot,
    /// Arrangement of obstacle boundaries as JSON.
    Arrangement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphMode {
    St,
    Pairs,
    Points,
}

impl GraphMode {
    pub fn mode(self, sc: &Scene) -> Mode {
        match self {
            GraphMode::St => Mode::St,
            GraphMode::Pairs => Mode::Pairs(sc.pairs.len()),
            GraphMode::Points => Mode::Points(sc.points.len()),
        }
    }
}

/// Graph mode, routing seed and highlighted obstacles implied by an input.
pub(crate) fn view_of(input: &Input, mode: Mode, seed: u64) -> (Mode, u64, Vec<usize>) {
    match input {
        Input::Scene(_) => (mode, seed, Vec::new()),
        Input::Report(r, _) => match r.as_ref() {
            Report::Sep2 { result, .. } => (Mode::St, result.seed, result.separator.clone()),
            Report::Remove { result, .. } => (Mode::St, result.seed, result.deleted.clone()),
            Report::Psep { result, .. } => {
                (result.certificate.mode, result.certificate.seed, result.separator.clone())
            }
        },
    }
}

pub(crate) fn graph_dot(g: &LabeledMultigraph, highlight: &[usize]) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n {
        if highlight.contains(&v) {
            let _ = writeln!(s, "  {v} [style=filled, fillcolor=\"#f4a261\"];");
        } else {
            let _ = writeln!(s, "  {v};");
        }
    }
    for e in &g.edges {
        let _ = writeln!(s, "  {} -- {} [label=\"{}\"];", e.u, e.v, e.label);
    }
    s.push_str("}\n");
    s
}

pub fn cmd_export(input: &Input, format: ExportFormat, graph: GraphMode, seed: u64) -> Result<String, CliError> {
    let sc = input.scene();
    match format {
        ExportFormat::Dot => {
            let (mode, seed, highlight) = view_of(input, graph.mode(sc), seed);
            let rc = route_reference_curves_seeded(sc, mode, seed)?;
            Ok(graph_dot(&build_labeled_graph(sc, &rc)?, &highlight))
        }
        ExportFormat::Arrangement => {
            let oracle = SeparationOracle::new(sc)?;
            Ok(serde_json::to_string_pretty(&oracle.arrangement().dump()).expect("dump serializes"))
        }
    }
}

pub fn cmd_render(input: &Input, seed: u64, opts: &RenderOptions) -> Result<String, CliError> {
    render_svg(input, seed, opts)
}

/// Rounding allowance when rechecking float LP reports.
const FLOAT_SLACK: f64 = 1e-6;

fn fail(msg: impl Into<String>) -> CliError {
    CliError::Internal(msg.into())
}

fn parse_point(p: &[String; 2]) -> Result<Point, CliError> {
    match (parse_q(&p[0]), parse_q(&p[1])) {
        (Some(x), Some(y)) => Ok(Point::new(x, y)),
        _ => Err(CliError::invalid(format!("bad coordinate {p:?}"))),
    }
}

fn verify_removal(sc: &Scene, r: &RemovalReport) -> Result<(), CliError> {
    if sc.st_pair() != Some(r.pair) {
        return Err(fail(format!("pair {:?} is not the scene's (s, t)", r.pair)));
    }
    if r.deleted.iter().any(|&i| i >= sc.n()) {
        return Err(fail("deleted obstacle out of range"));
    }
    if let (RemoveModeArg::Exact, Some(q)) = (r.mode, r.budget) {
        if r.deleted.len() > q {
            return Err(fail(format!("{} deletions exceed budget {q}", r.deleted.len())));
        }
    }
    let remaining: Vec<&Obstacle> = sc.obstacles.iter().filter(|o| !r.deleted.contains(&o.id)).collect();
    let keep: Vec<usize> = remaining.iter().map(|o| o.id).collect();
    let witness = Polyline::new(r.witness.iter().map(parse_point).collect::<Result<_, _>>()?);
    let (s, t) = (&sc.points[r.pair.0].p, &sc.points[r.pair.1].p);
    if witness.vertices.is_empty() || witness.first() != s || witness.last() != t {
        return Err(fail("witness does not run from s to t"));
    }
    if !polyline_avoids(&witness, &remaining) {
        return Err(fail("witness meets a remaining obstacle"));
    }
    if SeparationOracle::new(sc)?.separates(mask_of(&keep), r.pair.0, r.pair.1) {
        return Err(fail("remaining obstacles still separate s from t"));
    }
    let g = st_graph(sc, r.seed)?;
    if detect_odd_cycle(&g.without(&r.deleted)).is_some() {
        return Err(fail("an odd cycle survives the deletion"));
    }
    if let Some(lp) = &r.lp {
        let x: Vec<Q> = lp
            .x
            .iter()
            .map(|v| parse_q(v).ok_or_else(|| CliError::invalid(format!("bad LP value {v:?}"))))
            .collect::<Result<_, _>>()?;
        if x.len() != g.n || x.iter().any(|v| v < &Q::zero() || v > &Q::one()) {
            return Err(fail("LP solution outside [0, 1]^n"));
        }
        let sum = x.iter().fold(Q::zero(), |a, b| a + b);
        let obj = parse_q(&lp.objective).ok_or_else(|| CliError::invalid("bad LP objective"))?;
        let exact_arith = lp.arith == LpArithArg::Rational;
        let gap = (&sum - &obj).to_f64().unwrap_or(f64::INFINITY).abs();
        if (exact_arith && sum != obj) || gap > FLOAT_SLACK * (g.n.max(1) as f64) {
            return Err(fail("LP objective differs from the sum of x"));
        }
        if let Some((_, w)) = shortest_odd_cycle(&g, &x) {
            let short = if exact_arith { w < Q::one() } else { w.to_f64().unwrap_or(0.0) < 1.0 - lp.tol - FLOAT_SLACK };
            if short {
                return Err(fail(format!("odd cycle of LP weight {} < 1", fmt_q(&w))));
            }
        }
        if let Some(ratio) = &r.ratio {
            let exact = oct_exact(&g, sc.n()).map(|s| s.len()).ok_or_else(|| fail("no exact OCT"))?;
            if ratio.exact != exact || ratio.approx != r.deleted.len() {
                return Err(fail("ratio report does not match a fresh exact solve"));
            }
            if exact_arith && obj > Q::from_integer(exact.into()) {
                return Err(fail("LP objective exceeds the exact optimum"));
            }
        }
    }
    // the witness can always be rebuilt from the remaining obstacles
    if free_path(&remaining, s, t).is_none() {
        return Err(fail("no free path between s and t"));
    }
    Ok(())
}

/// Recomputes every claim in a report; any mismatch is an internal failure.
pub fn cmd_verify(report: &Report) -> Result<(), CliError> {
    let sc = report.scene()?;
    match report {
        Report::Sep2 { result, .. } => verify_sep2(&sc, result).map_err(fail),
        Report::Psep { result, .. } => verify_result(&sc, result).map_err(fail),
        Report::Remove { result, .. } => verify_removal(&sc, result),
    }
}
