fn main() {
    std::process::exit(cliffgrad::cli::main_with_args(std::env::args_os()));
}
