use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use barlang::inclusion::{DEFAULT_BUDGET, InclusionVerdict};
use barlang::oracle::{self, NamePool};
use barlang::rnna::Input;
use barlang::{
    compile, equivalence, inclusion, BarNfa, BarString, DataWord, Error, ForgetfulRa, Fsuba, InclusionOptions,
    InclusionSemantics, Rbe, Semantics, SymbolicRnna,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Regular bar languages: compile, test membership, decide inclusion.
#[derive(Parser)]
#[command(name = "barlang", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a regular bar expression into a bar NFA file.
    Compile {
        /// Expression text given inline.
        #[arg(long, short, conflicts_with = "file")]
        expr: Option<String>,
        /// File holding the expression.
        #[arg(required_unless_present = "expr")]
        file: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Decide membership of a word.
    Member {
        #[arg(long, short, value_enum)]
        semantics: SemanticsArg,
        automaton: PathBuf,
        /// Bar-string tokens (`a`, `|a`) for literal and bar semantics,
        /// plain names otherwise.
        word: Vec<String>,
    },
    /// Decide inclusion of the first language in the second.
    Include(PairArgs),
    /// Decide equality of two languages.
    Equiv(PairArgs),
    /// Print the canonical α-representative of a bar string.
    Canon { word: Vec<String> },
    /// List members up to a length, over the automaton's names plus fresh ones.
    Sample {
        #[arg(long, short, value_enum)]
        semantics: SemanticsArg,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Number of names added to those of the automaton.
        #[arg(long, default_value_t = 2)]
        fresh: usize,
        automaton: PathBuf,
    },
    /// Translate a register automaton into a bar NFA.
    Convert {
        #[arg(long, value_enum)]
        from: ModelKind,
        file: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print a bar NFA in DOT syntax.
    Dot { file: PathBuf },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, short, value_enum)]
    semantics: InclusionArg,
    left: PathBuf,
    right: PathBuf,
    /// Maximum number of product configurations to explore.
    #[arg(long, env = "BARLANG_BUDGET")]
    budget: Option<NonZeroUsize>,
    /// Track every successor instead of only the maximal ones.
    #[arg(long)]
    all_successors: bool,
    /// Also print the path through the left automaton.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Literal,
    Bar,
    Global,
    Local,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Literal => Semantics::Literal,
            SemanticsArg::Bar => Semantics::Bar,
            SemanticsArg::Global => Semantics::Global,
            SemanticsArg::Local => Semantics::Local,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InclusionArg {
    Bar,
    Global,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Fsuba,
    Fra,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<BarNfa> {
    BarNfa::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn is_closed(a: &BarNfa) -> bool {
    let r = SymbolicRnna::new(a.clone());
    r.support_of(a.initial()).is_empty()
}

fn print_witness(v: &InclusionVerdict, trace: bool, a: &BarNfa) {
    if let Some(w) = &v.witness {
        println!("{w}");
    }
    if let (true, Some(path)) = (trace, &v.trace) {
        let mut line = a.state_name(a.initial()).to_string();
        for t in path {
            line.push_str(&format!(" -{}-> {}", t.label, a.state_name(t.target)));
        }
        println!("trace: {line}");
    }
}

fn pair_setup(args: &PairArgs) -> Result<(BarNfa, BarNfa, InclusionSemantics, InclusionOptions)> {
    let (l, r) = (load(&args.left)?, load(&args.right)?);
    let semantics = match args.semantics {
        InclusionArg::Bar => InclusionSemantics::Bar,
        InclusionArg::Local => InclusionSemantics::Local,
        InclusionArg::Global => {
            for (a, p) in [(&l, &args.left), (&r, &args.right)] {
                if !is_closed(a) {
                    eprintln!(
                        "warning: {} accepts open bar strings; global freshness is decided as bar inclusion, \
                         which can be stricter",
                        p.display()
                    );
                }
            }
            InclusionSemantics::Bar
        }
    };
    let options = InclusionOptions {
        maximal_only: !args.all_successors,
        budget: args.budget.map_or(DEFAULT_BUDGET, NonZeroUsize::get),
    };
    Ok((l, r, semantics, options))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compile { expr, file, output } => {
            let text = match (expr, file) {
                (Some(e), _) => e,
                (None, Some(f)) => read(&f)?,
                (None, None) => bail!("give an expression or a file"),
            };
            let e = Rbe::parse(text.trim())?;
            write_out(output.as_deref(), &compile(&e).to_string())?;
        }
        Command::Member { semantics, automaton, word } => {
            let r = SymbolicRnna::new(load(&automaton)?);
            let text = word.join(" ");
            let input = match semantics {
                SemanticsArg::Literal | SemanticsArg::Bar => Input::Bar(BarString::parse(&text)?),
                SemanticsArg::Global | SemanticsArg::Local => Input::Data(DataWord::parse(&text)?),
            };
            let yes = r.accepts(&input, semantics.into())?;
            println!("{}", if yes { "yes" } else { "no" });
            return Ok(if yes { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Include(args) => {
            let (l, r, semantics, options) = pair_setup(&args)?;
            let v = inclusion(&l, &r, semantics, &options)?;
            println!("{}", if v.included { "included" } else { "not included" });
            print_witness(&v, args.trace, &l);
            return Ok(if v.included { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Equiv(args) => {
            let (l, r, semantics, options) = pair_setup(&args)?;
            let eq = equivalence(&l, &r, semantics, &options)?;
            if eq.equal() {
                println!("equal");
                return Ok(ExitCode::SUCCESS);
            }
            if !eq.forward.included {
                println!("not equal: left has a word the right lacks");
                print_witness(&eq.forward, args.trace, &l);
            } else {
                println!("not equal: right has a word the left lacks");
                print_witness(&eq.backward, args.trace, &r);
            }
            return Ok(ExitCode::from(1));
        }
        Command::Canon { word } => {
            println!("{}", BarString::parse(&word.join(" "))?.canonical_form());
        }
        Command::Sample { semantics, max_len, fresh, automaton } => {
            let a = load(&automaton)?;
            let names = a.names();
            let pool = NamePool::covering(&names, names.len() + fresh.max(1))?;
            let literal = a.enumerate_literal(max_len);
            let mut lines: Vec<(usize, String)> = match semantics {
                SemanticsArg::Literal => literal.iter().map(|w| (w.len(), w.to_string())).collect(),
                SemanticsArg::Bar => {
                    oracle::bar_language(&a, max_len, &pool).iter().map(|w| (w.len(), w.to_string())).collect()
                }
                SemanticsArg::Global => {
                    oracle::n_operator(&literal, &pool).iter().map(|u| (u.len(), u.to_string())).collect()
                }
                SemanticsArg::Local => {
                    oracle::d_operator(&literal, &pool).iter().map(|u| (u.len(), u.to_string())).collect()
                }
            };
            lines.sort();
            for (_, l) in lines {
                println!("{l}");
            }
        }
        Command::Convert { from, file, output } => {
            let text = read(&file)?;
            let nfa = match from {
                ModelKind::Fsuba => Fsuba::parse(&text)?.to_barnfa(),
                ModelKind::Fra => ForgetfulRa::parse(&text)?.to_barnfa(),
            };
            write_out(output.as_deref(), &nfa.to_string())?;
        }
        Command::Dot { file } => {
            print!("{}", load(&file)?.to_dot());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(Error::BudgetExceeded { .. }) = e.downcast_ref::<Error>() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
