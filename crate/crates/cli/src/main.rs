use std::io::{self, BufWriter, Write};

fn main() {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = nqueens_cli::run(
        std::env::args_os(),
        &mut io::stdin(),
        &mut out,
        &mut io::stderr(),
    );
    let code = match out.flush() {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            2
        }
        _ => code,
    };
    std::process::exit(code);
}
