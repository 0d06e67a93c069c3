fn main() {
    std::process::exit(webcalc::cli::main_with_args(std::env::args_os()));
}
