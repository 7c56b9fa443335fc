//! Demo child process for the external-objective protocol: reads one line
//! of space-separated coordinates per evaluation and answers with the
//! Ackley value. Useful for testing `snbo optimize --problem <command>`.

use std::io::{self, BufRead, Write};

fn main() {
    let stdin = io::stdin();
    let mut stdout = io::stdout();
    for line in stdin.lock().lines() {
        let line = match line {
            Ok(l) => l,
            Err(_) => break,
        };
        let x: Result<Vec<f64>, _> = line.split_whitespace().map(str::parse).collect();
        match x {
            Ok(x) if !x.is_empty() => {
                let y = snbo_core::problems::ackley(&x);
                writeln!(stdout, "{y:.16e}").expect("stdout");
                stdout.flush().expect("stdout");
            }
            _ => {
                eprintln!("ackley-child: bad input line {line:?}");
                std::process::exit(2);
            }
        }
    }
}
