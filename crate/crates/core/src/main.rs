fn main() {
    std::process::exit(splitinv::cli::main());
}
