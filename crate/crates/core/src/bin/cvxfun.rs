fn main() {
    std::process::exit(cvxfun::cli::run(std::env::args()));
}
