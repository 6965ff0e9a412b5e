use std::process::ExitCode;

use strebel::verify::{run_suite, Suite};

fn main() -> ExitCode {
    let checks = run_suite(Suite::All);
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
