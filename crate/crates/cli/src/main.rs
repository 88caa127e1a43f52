//! `eigenconv`: transforms, convolutions and the identity harness on signal files.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 grid mismatch,
//! 4 alias window or other precondition.

mod commands;
mod error;
mod signal_file;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{ConvArgs, DftArgs, FtArgs, IdftArgs, SeriesArgs, VerifyArgs};

#[derive(Debug, Parser)]
#[command(name = "eigenconv", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convolve two signals.
    Conv(ConvArgs),
    /// DFT of one period.
    Dft(DftArgs),
    /// Inverse DFT of a spectrum file.
    Idft(IdftArgs),
    /// Fourier-series coefficients C_n and F(n) = T·C_n.
    Series(SeriesArgs),
    /// Riemann-sum Fourier transform on an ω grid.
    Ft(FtArgs),
    /// Run every identity check and write the report.
    Verify(VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Conv(a) => commands::conv(a),
        Command::Dft(a) => commands::dft_cmd(a),
        Command::Idft(a) => commands::idft_cmd(a),
        Command::Series(a) => commands::series(a),
        Command::Ft(a) => commands::ft(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eigenconv: {}", e.message());
            e.exit_code()
        }
    }
}
