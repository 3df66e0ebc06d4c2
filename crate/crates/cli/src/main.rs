fn main() {
    std::process::exit(gimso::app::main_with(std::env::args_os()));
}
