fn main() {
    std::process::exit(dirichlet_bidisc::cli::main_with_args(std::env::args_os()));
}
