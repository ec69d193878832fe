fn main() {
    std::process::exit(matchbound::cli::run());
}
