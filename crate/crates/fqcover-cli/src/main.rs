use clap::Parser;

fn main() {
    let cli = fqcover_cli::Cli::parse();
    std::process::exit(fqcover_cli::run(cli));
}
