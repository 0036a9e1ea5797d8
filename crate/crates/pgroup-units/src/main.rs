fn main() {
    std::process::exit(pgroup_units::cli::run());
}
