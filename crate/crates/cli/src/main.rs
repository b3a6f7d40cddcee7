fn main() {
    std::process::exit(primebound_cli::main_entry());
}
