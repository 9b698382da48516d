use std::process::exit;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, out, err) = dgcm::cli::run(&argv);
    print!("{out}");
    eprint!("{err}");
    exit(code);
}
