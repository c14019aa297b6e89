fn main() {
    std::process::exit(bitrial::cli::run(std::env::args_os()));
}
