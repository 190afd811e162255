fn main() { std::process::exit(nfh::cli::run(std::env::args().collect())); }
