fn main() {
    std::process::exit(surfminor::cli::main());
}
