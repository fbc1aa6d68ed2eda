fn main() -> std::process::ExitCode {
    braidhopf::cli::main_entry()
}
