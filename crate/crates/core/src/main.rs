fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(eaqecc::cli::run_main(&args));
}
