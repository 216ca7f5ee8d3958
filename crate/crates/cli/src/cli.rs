use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "fpn", version, about = "Arithmetic patterns, regularity and removal over F_p^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide partition regularity of a pattern's system.
    CheckPr {
        pattern: PathBuf,
    },
    /// Write a seeded random colouring.
    Gen {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `uniform` or `sparse:<colour>:<num/den>`.
        #[arg(long, default_value = "uniform")]
        mode: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Exact pattern density of a colouring.
    Density {
        pattern: PathBuf,
        colouring: PathBuf,
    },
    /// Regularity partition for the colour classes.
    Arl {
        colouring: PathBuf,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        max_codim: Option<usize>,
    },
    /// Recolour so that no instance of the pattern remains.
    Recolour {
        pattern: PathBuf,
        colouring: PathBuf,
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check a recolouring from the two files alone.
    Verify {
        pattern: PathBuf,
        original: PathBuf,
        recoloured: PathBuf,
        #[arg(long)]
        epsilon: String,
    },
}
