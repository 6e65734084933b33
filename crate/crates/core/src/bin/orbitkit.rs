fn main() {
    std::process::exit(orbitkit::cli::run(std::env::args_os()));
}
