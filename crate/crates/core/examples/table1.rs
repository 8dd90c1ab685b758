//! Reproduce the reference ground-state energies. Pass `m n` to restrict the
//! run to one model, e.g. `cargo run --release --example table1 -- 1 3`.

use spiked_spectra::cli::reference::table1;
use spiked_spectra::cli::{reproduce_table1, table1_report, Format, LadderArgs};
use spiked_spectra::numerics::Precision;

fn main() {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let entries: Vec<_> = table1()
        .into_iter()
        .filter(|e| args.len() < 2 || (e.m == args[0] && e.n == args[1]))
        .collect();
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let results = reproduce_table1(&entries, Precision::DEFAULT, &LadderArgs::default(), threads);
    let report = table1_report(&results, 18, true, 25);
    print!("{}", report.render(Format::Table));
    for f in &report.failures {
        eprintln!("not reproduced: {f}");
    }
}
