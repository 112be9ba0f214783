fn main() {
    std::process::exit(critnorm::cli::main_with_args(std::env::args_os()));
}
