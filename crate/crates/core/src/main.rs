fn main() {
    std::process::exit(erwlab::cli::run_from(std::env::args_os()));
}
