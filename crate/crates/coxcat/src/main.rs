fn main() { std::process::exit(coxcat::cli::run()); }
