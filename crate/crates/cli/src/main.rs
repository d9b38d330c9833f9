fn main() {
    std::process::exit(anqie_cli::run(std::env::args_os()));
}
