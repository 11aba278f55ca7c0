fn main() {
    std::process::exit(biblionet::cli::run());
}
