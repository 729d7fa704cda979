fn main() {
    std::process::exit(ffrl::cli::main());
}
