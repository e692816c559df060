fn main() {
    std::process::exit(purespin_cli::run(std::env::args_os()));
}
