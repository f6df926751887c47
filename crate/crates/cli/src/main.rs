use clap::Parser;

fn main() {
    env_logger::init();
    if let Err(e) = ringrep::run(ringrep::Cli::parse()) {
        eprintln!("ringrep: {e}");
        std::process::exit(e.exit_code());
    }
}
