use std::io::Write;

fn main() {
    let (out, code) = nilcx_cli::run::main_with_args(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    if !out.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
    let _ = stdout.flush();
    std::process::exit(code);
}
