fn main() {
    std::process::exit(casorati::cli::run(std::env::args_os()));
}
