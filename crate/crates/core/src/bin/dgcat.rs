fn main() {
    std::process::exit(dgcat::cli::main());
}
