fn main() {
    std::process::exit(oscrep::cli::run());
}
