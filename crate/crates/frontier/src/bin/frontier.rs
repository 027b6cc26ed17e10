fn main() {
    std::process::exit(frontier::cli::run(std::env::args_os()));
}
