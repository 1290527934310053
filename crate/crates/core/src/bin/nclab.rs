fn main() {
    std::process::exit(nclab::cli::main_with_args(std::env::args_os()));
}
