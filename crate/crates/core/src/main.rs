fn main() {
    std::process::exit(hodgelab::cli::main_with_args(std::env::args_os()));
}
