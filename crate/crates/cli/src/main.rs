fn main() {
    std::process::exit(trs_cli::run(std::env::args_os()));
}
