fn main() {
    std::process::exit(sampexp::cli::main(std::env::args_os()));
}
