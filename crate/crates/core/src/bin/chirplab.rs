fn main() {
    std::process::exit(chirplab::cli::run(std::env::args_os()));
}
