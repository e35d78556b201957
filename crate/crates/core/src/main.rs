fn main() {
    std::process::exit(tustin::cli::run());
}
