fn main() {
    std::process::exit(imp::cli::main());
}
