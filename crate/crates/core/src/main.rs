fn main() {
    std::process::exit(clusteredit::cli::run())
}
