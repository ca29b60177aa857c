//! Command-line front end for `sepgraph`.
//!
//! Every solver command reads a scene and writes a JSON [`Report`] that embeds
//! the scene, so `verify`, `render` and `export` can work from the report
//! alone.

mod commands;
mod render;

pub use commands::{
    cmd_export, cmd_gen, cmd_psep, cmd_remove, cmd_render, cmd_sep2, cmd_verify, ExportFormat, GraphMode, LpArithArg, LpReport,
    PairsArg, RatioReport, RemoveArgs, RemoveModeArg, RemovalReport,
};
pub use render::{render_svg, RenderOptions};

use clap::{Args, Parser, Subcommand};
use sepgraph::gen::GeneratorSpec;
use sepgraph::geom::SceneJson;
use sepgraph::pointsep::{Caps, GpsResult, Strategy};
use sepgraph::sep2::Sep2Result;
use sepgraph::{Scene, Violation};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::io::{Read, Write};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {message}")]
    Invalid { message: String, violations: Vec<Violation> },
    #[error("{0}")]
    Infeasible(String),
    #[error("verification failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::Invalid { message: message.into(), violations: Vec::new() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } => 1,
            CliError::Infeasible(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self {
            CliError::Invalid { .. } => "invalid-input",
            CliError::Infeasible(_) => "infeasible",
            CliError::Internal(_) => "internal",
        };
        let mut v = json!({ "error": kind, "exit_code": self.exit_code(), "message": self.to_string() });
        if let CliError::Invalid { violations, .. } = self {
            if !violations.is_empty() {
                v["violations"] = serde_json::to_value(violations).expect("violations serialize");
            }
        }
        v
    }
}

impl From<sepgraph::Error> for CliError {
    fn from(e: sepgraph::Error) -> Self {
        use sepgraph::Error as E;
        match e {
            E::InvalidScene(v) => CliError::Invalid { message: "scene violates invariants".into(), violations: v },
            E::UnknownPoint(_) | E::MissingPair | E::CapExceeded { .. } | E::WidthCapExceeded(..) | E::SizeMismatch(..) => {
                CliError::invalid(e.to_string())
            }
            E::Infeasible(_) | E::NoSeparatorExists | E::IterationLimit { .. } => CliError::Infeasible(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// A solver result together with the scene it was computed on.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Sep2 { scene: SceneJson, result: Sep2Result },
    Remove { scene: SceneJson, result: RemovalReport },
    Psep { scene: SceneJson, result: GpsResult },
}

impl Report {
    pub fn scene_json(&self) -> &SceneJson {
        match self {
            Report::Sep2 { scene, .. } | Report::Remove { scene, .. } | Report::Psep { scene, .. } => scene,
        }
    }

    pub fn scene(&self) -> Result<Scene, CliError> {
        scene_from_json(self.scene_json())
    }

    pub fn command(&self) -> &'static str {
        match self {
            Report::Sep2 { .. } => "sep2",
            Report::Remove { .. } => "remove",
            Report::Psep { .. } => "psep",
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Parsed input: a bare scene or a report.
pub enum Input {
    Scene(Scene),
    Report(Box<Report>, Scene),
}

impl Input {
    pub fn scene(&self) -> &Scene {
        match self {
            Input::Scene(s) | Input::Report(_, s) => s,
        }
    }
}

fn scene_from_json(js: &SceneJson) -> Result<Scene, CliError> {
    let sc = Scene::from_json(js).map_err(|e| match e {
        sepgraph::geom::SceneError::Violations(v) => {
            CliError::Invalid { message: "scene violates invariants".into(), violations: v }
        }
        other => CliError::invalid(other.to_string()),
    })?;
    let violations = sc.validate();
    if !violations.is_empty() {
        return Err(CliError::Invalid { message: "scene violates invariants".into(), violations });
    }
    Ok(sc)
}

/// Parses scene or report JSON; scenes are validated.
pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::invalid(format!("malformed JSON: {e}")))?;
    if v.get("command").is_some() {
        let r: Report = serde_json::from_value(v).map_err(|e| CliError::invalid(format!("malformed report: {e}")))?;
        let sc = r.scene()?;
        Ok(Input::Report(Box::new(r), sc))
    } else {
        let js: SceneJson = serde_json::from_value(v).map_err(|e| CliError::invalid(format!("malformed scene: {e}")))?;
        Ok(Input::Scene(scene_from_json(&js)?))
    }
}

#[derive(Parser, Debug)]
#[command(name = "sepgraph", version, about = "Separate points in the plane with polygonal obstacles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Input and output files; `-` or nothing means stdin/stdout.
#[derive(Args, Clone, Debug, Default)]
pub struct IoArgs {
    #[arg(long = "in", short = 'i', value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, short = 'o', value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct CapArgs {
    #[arg(long, default_value_t = Caps::default().brute_n)]
    pub max_brute_n: usize,
    #[arg(long, default_value_t = Caps::default().section5_n)]
    pub max_section5_n: usize,
    #[arg(long, default_value_t = Caps::default().pairs)]
    pub max_pairs: usize,
    #[arg(long, default_value_t = Caps::default().points)]
    pub max_points: usize,
    #[arg(long, default_value_t = Caps::default().width)]
    pub max_width: usize,
}

impl CapArgs {
    pub fn caps(&self) -> Result<Caps, CliError> {
        let c = Caps {
            brute_n: self.max_brute_n,
            section5_n: self.max_section5_n,
            pairs: self.max_pairs,
            points: self.max_points,
            width: self.max_width,
        };
        if [c.brute_n, c.section5_n, c.pairs, c.points, c.width].contains(&0) {
            return Err(CliError::invalid("caps must be positive"));
        }
        Ok(c)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimum separator for the pair (s, t).
    Sep2 {
        #[command(flatten)]
        io: IoArgs,
        /// Reference-curve routing seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Delete obstacles so that s and t become connected.
    Remove {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        args: RemoveArgs,
    },
    /// Minimum separator for several point pairs.
    Psep {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value_t = Strategy::Section6)]
        strategy: Strategy,
        #[arg(long, value_enum, default_value_t = PairsArg::Listed)]
        pairs: PairsArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Labeled graph as DOT, or the arrangement as JSON.
    Export {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        /// Graph mode for scenes; reports use their own.
        #[arg(long, value_enum, default_value_t = GraphMode::St)]
        graph: GraphMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Deterministic SVG of a scene or report.
    Render {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        opts: RenderOptions,
    },
    /// Generate a scene, e.g. `ring(5)` or `random-rects(6,3)`.
    Gen {
        spec: GeneratorSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short = 'o', value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Recheck every claim in a report.
    Verify {
        #[command(flatten)]
        io: IoArgs,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p).map_err(|e| CliError::invalid(format!("{}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::invalid(format!("stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn write_output(path: &Option<PathBuf>, mut text: String) -> Result<(), CliError> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::write(p, text).map_err(|e| CliError::invalid(format!("{}: {e}", p.display())))
        }
        _ => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(format!("stdout: {e}"))),
    }
}

fn scene_only(input: Input, cmd: &str) -> Result<Scene, CliError> {
    match input {
        Input::Scene(s) => Ok(s),
        Input::Report(..) => Err(CliError::invalid(format!("{cmd} expects a scene, not a report"))),
    }
}

/// Runs one parsed command, reading and writing files or stdio.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sep2 { io, seed } => {
            let sc = scene_only(parse_input(&read_input(&io.input)?)?, "sep2")?;
            write_output(&io.out, cmd_sep2(&sc, seed)?.to_json_string())
        }
        Command::Remove { io, args } => {
            let sc = scene_only(parse_input(&read_input(&io.input)?)?, "remove")?;
            write_output(&io.out, cmd_remove(&sc, &args)?.to_json_string())
        }
        Command::Psep { io, strategy, pairs, seed, caps } => {
            let sc = scene_only(parse_input(&read_input(&io.input)?)?, "psep")?;
            write_output(&io.out, cmd_psep(&sc, strategy, pairs, seed, &caps.caps()?)?.to_json_string())
        }
        Command::Export { io, format, graph, seed } => {
            let input = parse_input(&read_input(&io.input)?)?;
            write_output(&io.out, cmd_export(&input, format, graph, seed)?)
        }
        Command::Render { io, seed, opts } => {
            let input = parse_input(&read_input(&io.input)?)?;
            write_output(&io.out, cmd_render(&input, seed, &opts)?)
        }
        Command::Gen { spec, seed, out } => write_output(&out, cmd_gen(&spec, seed)?.to_json_string()),
        Command::Verify { io } => {
            let report = match parse_input(&read_input(&io.input)?)? {
                Input::Report(r, _) => r,
                Input::Scene(_) => return Err(CliError::invalid("verify expects a report")),
            };
            cmd_verify(&report)?;
            let out = json!({ "verified": true, "command": report.command() });
            write_output(&io.out, serde_json::to_string_pretty(&out).expect("json"))
        }
    }
}
