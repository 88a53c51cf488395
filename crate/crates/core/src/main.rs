fn main() {
    std::process::exit(invol::cli::run(std::env::args_os()));
}
