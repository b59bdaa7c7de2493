fn main() {
    std::process::exit(hct_core::cli::main_with_args(std::env::args_os()));
}
