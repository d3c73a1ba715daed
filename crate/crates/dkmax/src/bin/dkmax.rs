fn main() {
    std::process::exit(dkmax::cli::run());
}
