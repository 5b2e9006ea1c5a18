fn main() {
    std::process::exit(parity_cli::run(std::env::args_os()));
}
