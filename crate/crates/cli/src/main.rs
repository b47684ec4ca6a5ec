use clap::error::ErrorKind;
use clap::Parser;
use smallball_cli::args::Cli;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                e.exit()
            }
            _ => {
                let msg = e.to_string();
                eprintln!("{}", msg.lines().next().unwrap_or("error: invalid arguments"));
                std::process::exit(2);
            }
        },
    };
    std::process::exit(smallball_cli::execute(&cli));
}
