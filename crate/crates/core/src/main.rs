fn main() { std::process::exit(balsim::cli::run(std::env::args())); }
