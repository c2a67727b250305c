use clap::Parser;

fn main() -> anyhow::Result<()> {
    let cli = planar_bisect::cli::Cli::parse();
    planar_bisect::cli::run(&cli)
}
