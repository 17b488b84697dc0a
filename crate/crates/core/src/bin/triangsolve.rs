fn main() {
    std::process::exit(triangsolve::cli::main_from_args(std::env::args_os()));
}
