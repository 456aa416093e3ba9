fn main() {
    std::process::exit(nclandau_cli::run(std::env::args_os()));
}
