use clap::Parser;

fn main() {
    std::process::exit(qdeform::cli::main_with(qdeform::cli::Args::parse()));
}
