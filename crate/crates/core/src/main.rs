fn main() {
    let code = moodpipe::cli::main_with_env();
    std::process::exit(code);
}
