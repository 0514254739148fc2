fn main() {
    std::process::exit(adelic_orbit::cli::main());
}
