fn main() {
    std::process::exit(nl4s::cli::run(std::env::args_os()));
}
