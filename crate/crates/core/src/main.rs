fn main() {
    std::process::exit(lattice_area::cli::run(std::env::args_os()));
}
