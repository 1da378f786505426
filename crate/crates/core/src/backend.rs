//! SAT backends.
//!
//! A backend takes a [`Cnf`] and a deadline and reports a total assignment,
//! unsatisfiability, or that it ran out of time. Backends are stateful and
//! must not be shared between concurrent solves; the driver builds one per
//! component through a [`BackendFactory`].

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use batsat::{lbool, Callbacks, Lit as BLit, Solver, SolverInterface, SolverOpts, Var};

use crate::encoding::{emit_dimacs, Cnf};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    /// `model[v]` is the value of variable `v`; index 0 is unused.
    Sat(Vec<bool>),
    Unsat,
    Timeout,
}

pub trait SolverBackend: Send {
    fn name(&self) -> &str;
    fn solve(&mut self, cnf: &Cnf, deadline: Option<Instant>) -> Result<SatOutcome>;
}

pub trait BackendFactory: Sync {
    fn create(&self) -> Box<dyn SolverBackend>;
}

impl<F> BackendFactory for F
where
    F: Fn() -> Box<dyn SolverBackend> + Sync,
{
    fn create(&self) -> Box<dyn SolverBackend> {
        self()
    }
}

/// In-process CDCL solver; a fresh instance per query.
#[derive(Debug, Default, Clone, Copy)]
pub struct BatsatBackend;

impl BatsatBackend {
    pub fn factory() -> impl BackendFactory {
        || Box::new(BatsatBackend) as Box<dyn SolverBackend>
    }
}

struct Deadline(Option<Instant>);

impl Callbacks for Deadline {
    fn stop(&self) -> bool {
        self.0.is_some_and(|d| Instant::now() >= d)
    }
}

impl SolverBackend for BatsatBackend {
    fn name(&self) -> &str {
        "batsat"
    }

    fn solve(&mut self, cnf: &Cnf, deadline: Option<Instant>) -> Result<SatOutcome> {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Ok(SatOutcome::Timeout);
        }
        let mut solver = Solver::new(SolverOpts::default(), Deadline(deadline));
        let vars: Vec<Var> = (0..cnf.num_vars())
            .map(|_| solver.new_var_default())
            .collect();
        let mut buf = Vec::new();
        for clause in cnf.clauses() {
            buf.clear();
            buf.extend(
                clause
                    .iter()
                    .map(|&l| BLit::new(vars[l.unsigned_abs() as usize - 1], l > 0)),
            );
            if !solver.add_clause_reuse(&mut buf) {
                return Ok(SatOutcome::Unsat);
            }
        }
        let res = solver.solve_limited(&[]);
        if res == lbool::TRUE {
            let mut model = vec![false; cnf.num_vars() + 1];
            for (i, &v) in vars.iter().enumerate() {
                model[i + 1] = solver.value_var(v) == lbool::TRUE;
            }
            Ok(SatOutcome::Sat(model))
        } else if res == lbool::FALSE {
            Ok(SatOutcome::Unsat)
        } else {
            Ok(SatOutcome::Timeout)
        }
    }
}

/// Runs an external solver that reads DIMACS on stdin and answers in the
/// competition format (`s SATISFIABLE` / `s UNSATISFIABLE` plus `v` lines).
#[derive(Debug, Clone)]
pub struct ExternalBackend {
    pub program: PathBuf,
    pub args: Vec<String>,
}

impl ExternalBackend {
    pub fn new(program: impl Into<PathBuf>, args: Vec<String>) -> Self {
        ExternalBackend {
            program: program.into(),
            args,
        }
    }
}

impl SolverBackend for ExternalBackend {
    fn name(&self) -> &str {
        self.program.to_str().unwrap_or("external")
    }

    fn solve(&mut self, cnf: &Cnf, deadline: Option<Instant>) -> Result<SatOutcome> {
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()?;
        let input = emit_dimacs(cnf, None);
        let mut stdin = child.stdin.take().expect("piped stdin");
        let writer = thread::spawn(move || {
            // the solver may exit before reading everything
            let _ = stdin.write_all(input.as_bytes());
        });
        let mut stdout = child.stdout.take().expect("piped stdout");
        let reader = thread::spawn(move || {
            let mut s = String::new();
            let _ = stdout.read_to_string(&mut s);
            s
        });
        loop {
            if child.try_wait()?.is_some() {
                break;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                let _ = child.kill();
                let _ = child.wait();
                let _ = writer.join();
                let _ = reader.join();
                return Ok(SatOutcome::Timeout);
            }
            thread::sleep(Duration::from_millis(2));
        }
        let _ = writer.join();
        let output = reader
            .join()
            .map_err(|_| Error::Backend("reader thread panicked".into()))?;
        parse_competition_output(&output, cnf.num_vars())
    }
}

/// Parses `s` / `v` lines; unassigned variables default to false.
pub fn parse_competition_output(text: &str, num_vars: usize) -> Result<SatOutcome> {
    let mut status = None;
    let mut model = vec![false; num_vars + 1];
    for line in text.lines() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = Some(s.trim().to_owned());
        } else if let Some(v) = line.strip_prefix("v ") {
            for tok in v.split_whitespace() {
                let l: i64 = tok
                    .parse()
                    .map_err(|_| Error::Backend(format!("bad model literal {tok:?}")))?;
                let var = l.unsigned_abs() as usize;
                if var != 0 && var <= num_vars {
                    model[var] = l > 0;
                }
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => Ok(SatOutcome::Sat(model)),
        Some("UNSATISFIABLE") => Ok(SatOutcome::Unsat),
        Some("UNKNOWN") | Some("INDETERMINATE") => Ok(SatOutcome::Timeout),
        other => Err(Error::Backend(format!(
            "unexpected solver status {other:?}"
        ))),
    }
}
