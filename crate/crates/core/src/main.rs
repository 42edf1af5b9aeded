fn main() {
    std::process::exit(chemoradial::orchestration::cli::main_with_args(std::env::args_os()));
}
