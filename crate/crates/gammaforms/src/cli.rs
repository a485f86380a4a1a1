use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "gammaforms", version, about = "Binary quadratic forms under Γ₀(N)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce one form, or list the reduced forms of (D, N) with their SL₂ classes
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<String>,
        #[arg(long, default_value = "1")]
        level: String,
        /// Form to reduce, as a,b,c
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// List Γ₀(N)-reduced forms of discriminant D
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, default_value = "1")]
        level: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Same as --format json
        #[arg(long)]
        json: bool,
    },
    /// Decide Γ₀(N)-equivalence of two forms
    Equiv {
        #[arg(long, allow_hyphen_values = true)]
        form1: String,
        #[arg(long, allow_hyphen_values = true)]
        form2: String,
        #[arg(long, default_value = "1")]
        level: String,
        #[arg(long)]
        json: bool,
    },
    /// The class group 𝒞(D, Γ₀(N))
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, default_value = "1")]
        level: String,
        /// Include the Cayley table
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare 𝒞(D, Γ₀(N)) with 𝒞(DN²)
    VerifyIso {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, default_value = "1")]
        level: String,
        /// Also check composition against ideal multiplication
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Genus table: ker(χ), H, its cosets and the genus of each form
    Genus {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, default_value = "1")]
        level: String,
        #[arg(long)]
        json: bool,
    },
    /// Locate an odd prime in the genus theory of (D, N)
    Classify {
        #[arg(long)]
        prime: String,
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, default_value = "1")]
        level: String,
        /// Plain text instead of JSON
        #[arg(long)]
        text: bool,
    },
    /// All N-representations of M by a form
    Represent {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        value: String,
        #[arg(long, default_value = "1")]
        level: String,
        #[arg(long)]
        json: bool,
    },
    /// Boundary of the Γ₀(p) fundamental region, p ≥ 5 prime
    Fundomain {
        #[arg(long)]
        p: String,
        /// Write a static SVG drawing here
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Recompute the worked examples and compare with the stored values
    PaperTables {
        /// Run one table only
        #[arg(long)]
        table: Option<String>,
        /// List table names
        #[arg(long)]
        list: bool,
    },
}
