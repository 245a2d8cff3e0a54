fn main() {
    std::process::exit(linset::cli::main_with_args());
}
