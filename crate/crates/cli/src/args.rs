use clap::{Args, Parser, Subcommand, ValueEnum};

/// Ordinary and symmetric cohomology of finite groups.
///
/// Groups are given as specs (`cyclic:n`, `dihedral:n`, `sym:n`, `klein4`,
/// `trivial`, `product:<spec>,<spec>`) or as paths to group JSON files.
/// Modules are given as specs (`Z`, `Zmod:m`, optionally `^k` and
/// `@sign` / `@natural`) or as paths to module JSON files.
///
/// Exit status: 0 on success, 2 when input fails validation, 3 when a
/// computation is refused because its hypotheses do not hold.
#[derive(Debug, Parser)]
#[command(name = "symcoh", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads; output does not depend on this.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Ordinary,
    Symmetric,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a group and print its basic data.
    Group {
        #[arg(long)]
        group: String,
    },
    /// H^k and HS^k for k up to --degree, with the comparison map h*.
    Cohom(CohomArgs),
    /// Build, search sections of, or classify extensions.
    Ext {
        #[command(subcommand)]
        action: ExtAction,
    },
    /// Cohomology along a tower of finite quotients and its direct limit.
    Tower(TowerArgs),
    /// Long exact sequence of a short exact sequence of modules.
    Les(LesArgs),
    /// Cohomology in one degree by exhaustive enumeration.
    Oracle(CohomArgs),
}

#[derive(Debug, Args)]
pub struct CohomArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub module: String,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Both)]
    pub variant: VariantArg,
}

#[derive(Debug, Args, Clone)]
pub struct ExtSource {
    /// Named extension (repeatable): z-times-z2, z-index-4, z4-over-z2.
    #[arg(long)]
    pub preset: Vec<String>,
    /// Extension JSON file (repeatable).
    #[arg(long)]
    pub extension: Vec<String>,
    /// 2-cochain JSON file (repeatable); needs --group and --module.
    #[arg(long)]
    pub cocycle: Vec<String>,
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub module: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum ExtAction {
    /// Build the extension and verify its axioms, conjugation law and round trip.
    Build {
        #[command(flatten)]
        source: ExtSource,
        /// Section JSON file to verify instead of the built-in one.
        #[arg(long)]
        section: Option<String>,
        /// Normalize a cocycle file before building.
        #[arg(long)]
        normalize: bool,
    },
    /// Search for a normalized symmetric section.
    Section {
        #[command(flatten)]
        source: ExtSource,
    },
    /// Class in H^2 and membership in the image of HS^2; with two inputs,
    /// whether they are equivalent.
    Classify {
        #[command(flatten)]
        source: ExtSource,
    },
}

#[derive(Debug, Args)]
pub struct TowerArgs {
    /// `cyclic-p:<p>[:<levels>]`, `constant:<group>[:<levels>]` or a tower JSON file.
    #[arg(long)]
    pub tower: Option<String>,
    /// Constant tower over this group (alternative to --tower).
    #[arg(long)]
    pub group: Option<String>,
    /// Coefficient module over the top level, for built-in towers.
    #[arg(long, default_value = "Zmod:2")]
    pub module: String,
    /// Number of levels when the tower spec leaves it out.
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Both)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = symcoh::abelian::DEFAULT_WINDOW)]
    pub window: usize,
}

#[derive(Debug, Args)]
pub struct LesArgs {
    /// Short exact sequence JSON file.
    #[arg(long, conflicts_with = "preset")]
    pub ses: Option<String>,
    /// Named sequence of trivial modules: z3-z6-z2 or z2-z4-z2.
    #[arg(long)]
    pub preset: Option<String>,
    /// Group for --preset.
    #[arg(long, default_value = "cyclic:2")]
    pub group: String,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Both)]
    pub variant: VariantArg,
}
