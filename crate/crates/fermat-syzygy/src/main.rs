fn main() {
    let code = fermat_syzygy::cli::run(std::env::args());
    std::process::exit(code);
}
