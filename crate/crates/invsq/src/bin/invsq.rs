fn main() {
    std::process::exit(invsq::cli::run(std::env::args_os()));
}
