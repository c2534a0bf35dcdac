// Copyright (C) 2026 - The zx-core developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The `zx` command line.
//!
//! Exit codes: 0 on success (and for `equiv`, equal or proportional),
//! 1 when `equiv` finds the diagrams distinct or a protocol check fails,
//! 2 on any parse, validation or evaluation error. A `simplify` run that
//! exhausts its step budget still succeeds, with a warning.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::circuit::parse_circuit;
use crate::diagram::Diagram;
use crate::doubled::double;
use crate::dot::render_dot;
use crate::format::{parse_file, serialize_diagram, serialize_doubled};
use crate::phase::Phase;
use crate::protocols::{run_protocol, ProtocolParams};
use crate::simplify::{simplify, SimplifyConfig};
use crate::tensor::{compare, evaluate, CompareMode, Tensor, Verdict, DEFAULT_TOLERANCE};

#[derive(Parser, Debug)]
#[command(name = "zx", version, about = "Evaluate, rewrite and check ZX-diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the linear map of a diagram as a matrix.
    Eval { file: PathBuf },
    /// Simplify a diagram and print the result.
    Simplify {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        max_steps: u64,
        /// Write the rewrite trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the simplified diagram here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also try colour-change steps.
        #[arg(long)]
        colour_change: bool,
    },
    /// Compare two diagrams, up to a global scalar unless --exact is given.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Print the doubled diagram.
    Double {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a Graphviz rendering.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build and verify a protocol: bell, teleportation,
    /// teleportation-classical, mbqc or cluster.
    Protocol {
        name: String,
        #[arg(long, default_value = "1/4")]
        alpha: Phase,
        #[arg(long, default_value = "1/2")]
        beta: Phase,
        #[arg(long, default_value = "3/4")]
        gamma: Phase,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Reads a diagram file, or a circuit file when the first non-comment
/// line is a `qubits` header.
fn load(path: &Path) -> Result<Diagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    if first.is_some_and(|l| l.starts_with("qubits")) {
        return parse_circuit(&text)
            .map(|c| c.to_diagram())
            .map_err(|e| Failure(format!("{}: {e}", path.display())));
    }
    parse_file(&text)
        .map(|f| f.diagram)
        .map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_to(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn num(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Fixed-precision text for a tensor, one matrix row per line.
pub fn format_tensor(t: &Tensor) -> String {
    let (outs, ins) = t.shape();
    let mut s = format!("{}x{} matrix ({outs} outputs, {ins} inputs)\n", t.rows(), t.cols());
    for r in 0..t.rows() {
        let row: Vec<String> = (0..t.cols())
            .map(|c| {
                let z = t.get(r, c);
                format!("{:.9}{:+.9}i", num(z.re), num(z.im))
            })
            .collect();
        s.push_str(&row.join("  "));
        s.push('\n');
    }
    s
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Eval { file } => {
            let t = evaluate(&load(&file)?)?;
            write!(out, "{}", format_tensor(&t))?;
            Ok(0)
        }
        Command::Simplify { file, max_steps, trace, output, colour_change } => {
            let d = load(&file)?;
            let cfg = SimplifyConfig {
                max_steps: max_steps as usize,
                enable_colour_change: colour_change,
                ..Default::default()
            };
            let (s, t) = simplify(&d, cfg);
            if let Some(p) = trace {
                write_to(&p, &t.to_text())?;
            }
            let text = serialize_diagram(&s);
            match output {
                Some(p) => write_to(&p, &text)?,
                None => write!(out, "{text}")?,
            }
            if t.budget_exhausted {
                writeln!(err, "warning: step budget of {max_steps} exhausted; result is partial")?;
            }
            Ok(0)
        }
        Command::Equiv { left, right, exact } => {
            let (a, b) = (evaluate(&load(&left)?)?, evaluate(&load(&right)?)?);
            let mode = if exact { CompareMode::Exact } else { CompareMode::UpToScalar };
            let v = compare(&a, &b, mode, DEFAULT_TOLERANCE)?;
            writeln!(out, "{v}")?;
            Ok(if matches!(v, Verdict::Distinct(_)) { 1 } else { 0 })
        }
        Command::Double { file, output } => {
            let text = serialize_doubled(&double(&load(&file)?));
            match output {
                Some(p) => write_to(&p, &text)?,
                None => write!(out, "{text}")?,
            }
            Ok(0)
        }
        Command::Render { file, output } => {
            let d = load(&file)?;
            d.validate()?;
            write_to(&output, &render_dot(&d))?;
            Ok(0)
        }
        Command::Protocol { name, alpha, beta, gamma } => {
            let report = run_protocol(&name, ProtocolParams { alpha, beta, gamma })?;
            for c in &report.checks {
                writeln!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            }
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} {}", report.protocol)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
