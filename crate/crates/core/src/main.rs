fn main() {
    std::process::exit(solid_syt::cli::run());
}
