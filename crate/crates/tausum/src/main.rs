fn main() {
    std::process::exit(tausum::cli::run());
}
