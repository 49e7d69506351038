fn main() {
    std::process::exit(dyntwist::cli::main_with_args(std::env::args_os()));
}
