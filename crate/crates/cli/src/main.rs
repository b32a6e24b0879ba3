use clap::Parser;

fn main() {
    let cli = cmc_cli::Cli::parse();
    std::process::exit(cmc_cli::run(&cli));
}
