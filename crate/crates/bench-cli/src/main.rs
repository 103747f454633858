use clap::Parser;
use ifoi_bench::cli::{execute, Cli};
use ifoi_bench::runner::summary_line;

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    for report in execute(&cli)? {
        println!("{}", summary_line(&report));
    }
    Ok(())
}
