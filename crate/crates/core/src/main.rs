use std::io::Write;

fn main() {
    let (code, doc) = z2mackey::cli::run(std::env::args_os());
    let mut out = std::io::stdout().lock();
    if code == z2mackey::cli::EXIT_USAGE {
        eprint!("{doc}");
    } else {
        let _ = out.write_all(doc.as_bytes());
    }
    let _ = out.flush();
    std::process::exit(code);
}
