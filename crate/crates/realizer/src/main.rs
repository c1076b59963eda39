use clap::Parser;

fn main() {
    let cli = realizer::cli::Cli::parse();
    std::process::exit(realizer::cli::dispatch(&cli));
}
