fn main() {
    std::process::exit(metragraph::cli::main());
}
