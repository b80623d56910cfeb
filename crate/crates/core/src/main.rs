fn main() {
    std::process::exit(chi_torus::cli::cli_main());
}
