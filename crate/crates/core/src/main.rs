fn main() {
    std::process::exit(prm_core::cli::run(std::env::args_os()));
}
