fn main() {
    std::process::exit(ibalg::cli::main_with(std::env::args_os()));
}
