fn main() {
    std::process::exit(nmds::cli::main_with_args(std::env::args_os()));
}
