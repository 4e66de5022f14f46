fn main() {
    std::process::exit(netrobust_cli::run(std::env::args_os()));
}
