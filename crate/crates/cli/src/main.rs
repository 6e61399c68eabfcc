use glass_anneal::{configure_thread_cap, dispatch};

fn main() {
    if let Err(e) = configure_thread_cap() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    if let Err(e) = dispatch(&argv) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
