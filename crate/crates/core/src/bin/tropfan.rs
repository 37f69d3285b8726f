fn main() {
    std::process::exit(tropfan::cli::main_with_args(std::env::args_os()));
}
