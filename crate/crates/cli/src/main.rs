use clap::Parser;

fn main() {
    let cli = mock_theta_cli::Cli::parse();
    std::process::exit(mock_theta_cli::run(cli));
}
