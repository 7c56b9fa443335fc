//! Subprocess-backed blackbox objective.
//!
//! Protocol: per evaluation the parent writes one line of space-separated
//! decimal coordinates (original units, at least 17 significant digits,
//! LF-terminated) to the child's stdin and reads back one line containing
//! a single decimal real.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::Duration;

use snbo_core::{Bounds, Error, Objective, Result};

pub struct ExternalObjective {
    command: String,
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<std::io::Result<String>>,
    bounds: Bounds,
    timeout: Duration,
}

impl ExternalObjective {
    /// Spawns the child process. `command` is split on whitespace into
    /// program and arguments (no shell quoting).
    pub fn spawn(command: &str, bounds: Bounds, timeout: Duration) -> Result<Self> {
        let argv: Vec<&str> = command.split_whitespace().collect();
        Self::spawn_argv(&argv, bounds, timeout)
    }

    /// Spawns from an explicit argument vector.
    pub fn spawn_argv(argv: &[&str], bounds: Bounds, timeout: Duration) -> Result<Self> {
        let (program, args) = argv
            .split_first()
            .ok_or_else(|| Error::Objective("empty external command".into()))?;
        let command = argv.join(" ");
        let mut child = Command::new(program)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| Error::Objective(format!("spawning {command:?}: {e}")))?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");

        // A reader thread feeds response lines through a channel so each
        // read can carry a timeout.
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            let mut reader = BufReader::new(stdout);
            loop {
                let mut line = String::new();
                match reader.read_line(&mut line) {
                    Ok(0) => break,
                    Ok(_) => {
                        if tx.send(Ok(line)).is_err() {
                            break;
                        }
                    }
                    Err(e) => {
                        let _ = tx.send(Err(e));
                        break;
                    }
                }
            }
        });

        Ok(Self {
            command,
            child,
            stdin,
            lines: rx,
            bounds,
            timeout,
        })
    }

    fn exit_diagnostic(&mut self) -> String {
        match self.child.try_wait() {
            Ok(Some(status)) => format!("child exited ({status})"),
            _ => "child closed its output".to_string(),
        }
    }
}

impl Objective for ExternalObjective {
    fn name(&self) -> &str {
        &self.command
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        if x.len() != self.bounds.n_dims() {
            return Err(Error::DimensionMismatch {
                expected: self.bounds.n_dims(),
                got: x.len(),
            });
        }
        let mut line = String::new();
        for (i, v) in x.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&format!("{v:.16e}"));
        }
        line.push('\n');
        self.stdin
            .write_all(line.as_bytes())
            .and_then(|_| self.stdin.flush())
            .map_err(|e| {
                Error::Objective(format!("{}: writing to child failed: {e}", self.command))
            })?;

        let response = match self.lines.recv_timeout(self.timeout) {
            Ok(Ok(line)) => line,
            Ok(Err(e)) => {
                return Err(Error::Objective(format!(
                    "{}: reading from child failed: {e}",
                    self.command
                )))
            }
            Err(RecvTimeoutError::Timeout) => {
                return Err(Error::Objective(format!(
                    "{}: timed out after {:.1}s waiting for a response",
                    self.command,
                    self.timeout.as_secs_f64()
                )))
            }
            Err(RecvTimeoutError::Disconnected) => {
                let diag = self.exit_diagnostic();
                return Err(Error::Objective(format!("{}: {diag}", self.command)));
            }
        };
        let value: f64 = response.trim().parse().map_err(|_| {
            Error::Objective(format!(
                "{}: non-parseable response {:?}",
                self.command,
                response.trim()
            ))
        })?;
        if !value.is_finite() {
            return Err(Error::NonFiniteObjective { value });
        }
        Ok(value)
    }
}

impl Drop for ExternalObjective {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spawn_sh(script: &str, n_dims: usize) -> ExternalObjective {
        ExternalObjective::spawn_argv(
            &["/bin/sh", "-c", script],
            Bounds::symmetric(n_dims, 1.0),
            Duration::from_secs(5),
        )
        .unwrap()
    }

    #[test]
    fn echo_zero_child_returns_zero() {
        let mut obj = spawn_sh("while read line; do echo 0.0; done", 2);
        assert_eq!(obj.evaluate(&[0.1, -0.2]).unwrap(), 0.0);
        assert_eq!(obj.evaluate(&[0.5, 0.5]).unwrap(), 0.0);
    }

    #[test]
    fn nan_response_is_a_non_finite_error() {
        let mut obj = spawn_sh("while read line; do echo nan; done", 1);
        match obj.evaluate(&[0.0]) {
            Err(Error::NonFiniteObjective { .. }) => {}
            other => panic!("expected non-finite error, got {other:?}"),
        }
    }

    #[test]
    fn garbage_response_is_a_parse_error() {
        let mut obj = spawn_sh("while read line; do echo pancake; done", 1);
        let err = obj.evaluate(&[0.0]).unwrap_err();
        assert!(err.to_string().contains("non-parseable"), "{err}");
    }

    #[test]
    fn child_exit_is_reported() {
        let mut obj = spawn_sh("read line; exit 3", 1);
        // First evaluation may or may not get a line; the child then exits.
        let _ = obj.evaluate(&[0.0]);
        let err = obj.evaluate(&[0.0]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("child"), "{msg}");
    }

    #[test]
    fn timeout_is_reported() {
        let mut obj = spawn_sh("while read line; do sleep 60; done", 1);
        obj.timeout = Duration::from_millis(200);
        let err = obj.evaluate(&[0.0]).unwrap_err();
        assert!(err.to_string().contains("timed out"), "{err}");
    }

    #[test]
    fn child_implementing_the_identity_echoes_coordinates() {
        // The child prints the first coordinate back, so the objective is x[0].
        let mut obj = spawn_sh("while read a rest; do echo $a; done", 1);
        for v in [0.25, -0.75, 0.123456789012345] {
            let y = obj.evaluate(&[v]).unwrap();
            assert!((y - v).abs() < 1e-15, "{y} vs {v}");
        }
    }
}
