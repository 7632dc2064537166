fn main() {
    std::process::exit(graykit::cli::run());
}
