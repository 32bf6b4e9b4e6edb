use std::io::{stderr, stdout};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = involutive_cfk::cli::run_cli(&argv, &mut stdout(), &mut stderr());
    std::process::exit(code);
}
