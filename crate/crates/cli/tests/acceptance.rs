//! Runs every acceptance criterion at full scale and prints one line per
//! criterion. Built without the libtest harness so the table always shows.

use std::process::ExitCode;

use sarith_cli::acceptance::{acceptance_suite, SuiteOpts};

fn main() -> ExitCode {
    let suite = acceptance_suite(&SuiteOpts { timings: true, ..SuiteOpts::default() });
    for (line, row) in suite.lines().iter().zip(&suite.rows) {
        match row.elapsed_ms {
            Some(ms) => println!("{line} ({ms} ms)"),
            None => println!("{line}"),
        }
    }
    let failed: Vec<u8> = suite.rows.iter().filter(|r| !r.pass).map(|r| r.criterion).collect();
    if suite.rows.len() != 10 || !failed.is_empty() {
        println!("acceptance: FAILED {failed:?}");
        return ExitCode::FAILURE;
    }
    println!("acceptance: all 10 criteria pass");
    ExitCode::SUCCESS
}
