use clap::Parser;
use loopss::cli::{configure_threads, run_cli, Cli};

fn main() {
    configure_threads();
    let cli = Cli::parse();
    let code = run_cli(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
