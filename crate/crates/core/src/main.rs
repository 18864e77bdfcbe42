fn main() { std::process::exit(translike::cli::run(std::env::args_os())); }
