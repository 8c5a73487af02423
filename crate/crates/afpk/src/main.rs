fn main() {
    std::process::exit(afpk::cli::main());
}
