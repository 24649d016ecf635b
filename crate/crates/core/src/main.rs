fn main() {
    std::process::exit(psl_ekr::cli::run(std::env::args_os()));
}
