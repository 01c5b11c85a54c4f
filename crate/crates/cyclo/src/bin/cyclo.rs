fn main() {
    std::process::exit(cyclo::cli::main_with_args(std::env::args_os()));
}
