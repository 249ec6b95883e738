fn main() {
    std::process::exit(qfiber_cli::app::run(std::env::args_os()));
}
