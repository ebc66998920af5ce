fn main() {
    std::process::exit(primpow::cli::main_with_args(std::env::args_os()));
}
