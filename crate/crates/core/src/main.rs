use std::io::Write;

use clap::Parser;

use isoforms::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let report = run(&cli);
    let text = if cli.json { report.to_json() + "\n" } else { report.render_table() };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    std::process::exit(report.exit_code());
}
