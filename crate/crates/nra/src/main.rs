fn main() {
    std::process::exit(nra::cli::main());
}
