use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "iexg", version, about = "Exact interval exchange groups")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Args)]
pub struct Opts {
    /// Spec document path, or the name of a builtin spec.
    #[arg(long, global = true, conflicts_with = "inline")]
    pub spec: Option<String>,
    /// Spec document given inline as JSON.
    #[arg(long, global = true)]
    pub inline: Option<String>,
    #[arg(long, global = true)]
    pub radius: Option<u32>,
    #[arg(long, global = true)]
    pub depth: Option<u32>,
    #[arg(long, global = true)]
    pub max_elements: Option<usize>,
    /// Precision budget for sign decisions, in bits.
    #[arg(long, global = true)]
    pub precision_bits: Option<u32>,
    /// Include the word table in ball reports.
    #[arg(long, global = true)]
    pub emit_words: bool,
    #[arg(short = 'f', global = true)]
    pub first: Option<PathBuf>,
    #[arg(short = 'g', global = true)]
    pub second: Option<PathBuf>,
    /// Write the output document here instead of standard output.
    #[arg(short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Arithmetic and order in Γ.
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Interval exchange elements.
    #[command(subcommand)]
    Iet(IetCmd),
    /// Cylinder sets and the T_π homeomorphisms.
    #[command(subcommand)]
    Subshift(SubshiftCmd),
    /// Cayley balls, point separation and orbit density.
    #[command(subcommand)]
    Explore(ExploreCmd),
    /// Homology, K-theory and abelianization tables.
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// Run the verification suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum GammaCmd {
    /// Print the resolved spec document.
    Show,
    /// List the builtin specs.
    Builtin,
    /// Sign of the element in -f.
    Sign,
    /// Compare -f against -g.
    Compare,
    Add,
    Sub,
    /// Fractional part of -f.
    Frac,
    /// Is -f in the subgroup generated by the element list in -g?
    Member,
}

#[derive(Debug, Subcommand)]
pub enum IetCmd {
    /// `f ∘ g` for -f and -g.
    Compose,
    Inverse,
    /// Re-emit -f in canonical form.
    Normalize,
    /// Apply -f to the point in -g.
    Apply,
    /// Order of -f, searching up to --depth (default 64).
    Order,
    Commutator,
    /// Parity of -f at its minimal grid level (rule-based specs).
    Sign,
    /// The standard generating set of the spec.
    Generators,
}

#[derive(Debug, Subcommand)]
pub enum SubshiftCmd {
    /// Cylinder set of the patch in -f.
    Cylinder,
    /// Well-definedness diagnosis for the patch in -f.
    Check,
    /// T_π of the patch in -f as an interval exchange.
    TPi,
    /// Every labelling of the key list in -f with its diagnosis.
    Enumerate,
    /// A key where the configurations at -f and -g differ.
    Separate,
}

#[derive(Debug, Subcommand)]
pub enum ExploreCmd {
    /// Cayley ball of the generator list in -f (default: the standard set).
    Ball,
    /// Does the orbit of -f meet every cell of width 1/100?
    Density,
}

#[derive(Debug, Subcommand)]
pub enum InvariantsCmd {
    /// Table of every invariant; -o also writes the structured report.
    Report,
    /// Rational homology dimensions up to --depth (default 6).
    Homology,
    /// Do the element lists in -f and -g generate the same subgroup?
    GroupEqual,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Every acceptance criterion, one line each.
    PaperLemmas,
}
