fn main() {
    std::process::exit(qchaos::cli::main_with_env());
}
