fn main() {
    if let Err(e) = genusforge::cli::init_threads() {
        eprintln!("error: {e}");
        std::process::exit(genusforge::cli::EXIT_INPUT);
    }
    let (code, out) = genusforge::cli::dispatch(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}
