fn main() {
    std::process::exit(qsrg_core::cli::run(std::env::args_os()));
}
