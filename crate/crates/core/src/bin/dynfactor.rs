fn main() {
    std::process::exit(dynfactor::cli::run(std::env::args_os()));
}
