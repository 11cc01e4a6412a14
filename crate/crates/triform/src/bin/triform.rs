fn main() {
    std::process::exit(triform::cli::run(std::env::args_os()));
}
