fn main() {
    std::process::exit(funiq::cli::run(std::env::args()));
}
