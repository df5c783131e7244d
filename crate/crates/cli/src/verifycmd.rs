//! The verify subcommand: runs one named suite (or all of them) and
//! reports one row per check with its observed margin.

use crate::output::{Cell, Table};
use crate::CliError;
use ansec::verify::{run_suite, Suite, SuiteReport};

fn append(table: &mut Table, report: &SuiteReport) {
    for check in &report.checks {
        table.push_row(vec![
            Cell::Text(report.suite.to_string()),
            Cell::Text(check.name.clone()),
            Cell::Num(check.observed),
            Cell::Num(check.limit),
            Cell::Num(if check.passed() { 1.0 } else { 0.0 }),
        ]);
    }
}

/// Runs `name` ("all" or a suite name) and returns the per-check table
/// plus whether every check passed.
pub fn cmd_verify(name: &str, seed: u64, samples: Option<u64>) -> Result<(Table, bool), CliError> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        match Suite::from_name(name) {
            Some(s) => vec![s],
            None => {
                let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return Err(CliError::Usage(format!(
                    "unknown suite {name:?}; expected one of {}, or all",
                    known.join(", ")
                )));
            }
        }
    };
    let mut table = Table::new(&["suite", "check", "observed", "limit", "passed"]);
    let mut all_passed = true;
    for suite in suites {
        let report = run_suite(suite, seed, samples);
        all_passed &= report.passed();
        append(&mut table, &report);
    }
    Ok((table, all_passed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_usage_error() {
        let err = cmd_verify("bogus", 1, None).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
        assert!(err.to_string().contains("coefficient-grid"));
    }

    #[test]
    fn small_suite_run_builds_table() {
        let (table, passed) = cmd_verify("coefficient-grid", 7, Some(20)).unwrap();
        assert!(passed);
        assert_eq!(table.rows().len(), 1);
        assert_eq!(table.num(0, "passed"), 1.0);
    }
}
