//! Runs every verification criterion on the default instance matrix and
//! prints the report table.

use radical_hopf::report::render_text;
use radical_hopf::suite::{verify_all, SuiteConfig};

fn main() {
    let config = SuiteConfig { timing: true, ..SuiteConfig::default() };
    let reports = verify_all(&config);
    print!("{}", render_text(&reports));
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("{} of {} criteria passed", reports.len() - failed, reports.len());
}
