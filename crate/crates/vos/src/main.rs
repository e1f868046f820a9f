fn main() {
    std::process::exit(vos::cli::main_entry());
}
