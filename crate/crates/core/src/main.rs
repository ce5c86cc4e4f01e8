fn main() {
    std::process::exit(kmlattice::cli::run_cli(std::env::args_os()));
}
