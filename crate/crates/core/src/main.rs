fn main() {
    std::process::exit(genpat::cli::main_with_args(std::env::args_os()));
}
