fn main() {
    std::process::exit(lacver::cli::run(std::env::args_os()));
}
