use clap::Parser;

fn main() {
    let cli = sepvol::cli::Cli::parse();
    std::process::exit(sepvol::cli::run(cli));
}
