fn main() {
    std::process::exit(sl2r_harmonic::cli::run(std::env::args_os()));
}
