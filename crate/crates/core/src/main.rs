fn main() {
    std::process::exit(cxta::cli::run(std::env::args_os()));
}
