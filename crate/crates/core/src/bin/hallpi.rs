fn main() {
    std::process::exit(hallpi::cli::run());
}
