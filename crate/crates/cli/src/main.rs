fn main() {
    std::process::exit(rootbandit::run_cli());
}
