use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bridging::corpus::{parse_corpus, Discourse, PhraseId};
use bridging::dict::{build_dictionary, CategoryTable};
use bridging::error::{read_file, Error, Result};
use bridging::eval::{evaluate, parse_predictions, Prediction};
use bridging::explain::explain;
use bridging::lexicon::{AttributeLexicon, LexiconSet, Thesaurus, XnoYStore};
use bridging::resolver::{Mode, Resolver, ResolverConfig};

#[derive(Parser)]
#[command(
    version,
    about = "Indirect anaphora resolution for annotated Japanese discourse"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ResolverArgs {
    /// Annotated corpus (ADC format).
    #[arg(long)]
    corpus: PathBuf,
    /// Directory holding thesaurus.tsv, caseframes.txt, xnoy.tsv and attrs.tsv.
    #[arg(long)]
    lexicons: PathBuf,
    /// Resolver configuration (`key=value`).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Fix every similarity score to 0 and ignore case-frame constraints.
    #[arg(long)]
    no_semantics: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve every anaphor and write one prediction line per anaphor and slot.
    Resolve {
        #[command(flatten)]
        args: ResolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the score table of one anaphor (one table per case slot).
    Explain {
        #[command(flatten)]
        args: ResolverArgs,
        /// `DOC:ID`
        #[arg(long)]
        anaphor: String,
    },
    /// Score a prediction file against the gold annotations.
    Eval {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        predictions: PathBuf,
    },
    /// Arrange "X no Y" examples into draft noun case frames.
    BuildDict {
        #[arg(long)]
        xnoy: PathBuf,
        #[arg(long)]
        thesaurus: PathBuf,
        #[arg(long)]
        attrs: PathBuf,
        /// `Y:Y'` adds the examples of Y' to Y.
        #[arg(long = "merge")]
        merges: Vec<String>,
        /// `prefix<TAB>label` category table.
        #[arg(long)]
        categories: Option<PathBuf>,
    },
}

struct Setup {
    corpus: Vec<Discourse>,
    lex: LexiconSet,
    config: ResolverConfig,
}

fn setup(args: &ResolverArgs) -> Result<Setup> {
    let mut config = match &args.config {
        Some(path) => ResolverConfig::load(path)?,
        None => ResolverConfig::default(),
    };
    if args.no_semantics {
        config.semantics = false;
    }
    let lex = LexiconSet::load_dir(&args.lexicons)?;
    config.check(&lex)?;
    let corpus = parse_corpus(&read_file(&args.corpus)?)?;
    Ok(Setup {
        corpus,
        lex,
        config,
    })
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Resolve { args, out } => {
            let s = setup(&args)?;
            let resolver = Resolver::new(&s.lex, &s.config);
            let mut text = String::new();
            for d in &s.corpus {
                for r in resolver.resolve_document(d)? {
                    text.push_str(&format!("{}\n", Prediction::from_result(&d.doc_id, &r)));
                }
            }
            write_or_print(out.as_deref(), &text)
        }
        Command::Explain { args, anaphor } => {
            let (doc, id) = anaphor
                .rsplit_once(':')
                .and_then(|(doc, id)| Some((doc, id.parse::<u32>().ok()?)))
                .ok_or_else(|| {
                    Error::Config(format!("--anaphor expects DOC:ID, got `{anaphor}`"))
                })?;
            let s = setup(&args)?;
            let d = s
                .corpus
                .iter()
                .find(|d| d.doc_id == doc)
                .ok_or_else(|| Error::Contract(format!("no document `{doc}`")))?;
            let id = PhraseId(id);
            let phrase = d
                .phrase(id)
                .ok_or_else(|| Error::Contract(format!("no phrase {doc}:{id}")))?;
            let resolver = Resolver::new(&s.lex, &s.config);
            let slots = match resolver.mode(phrase) {
                Mode::Verbal(slots) => slots.into_iter().map(Some).collect(),
                Mode::Relational | Mode::Nominal => vec![None],
                Mode::Skip => {
                    return Err(Error::Contract(format!(
                        "{doc}:{id} is not an anaphor candidate"
                    )))
                }
            };
            let tables: Vec<String> = slots
                .into_iter()
                .map(|slot| resolver.resolve(id, slot, d).map(|r| explain(&r, d)))
                .collect::<Result<_>>()?;
            print!("{}", tables.join("\n"));
            Ok(())
        }
        Command::Eval {
            corpus,
            predictions,
        } => {
            let corpus = parse_corpus(&read_file(&corpus)?)?;
            let preds = parse_predictions(&read_file(&predictions)?)?;
            println!("{}", evaluate(&preds, &corpus)?);
            Ok(())
        }
        Command::BuildDict {
            xnoy,
            thesaurus,
            attrs,
            merges,
            categories,
        } => {
            let name = |p: &Path| p.display().to_string();
            let store = XnoYStore::parse(&read_file(&xnoy)?, &name(&xnoy))?;
            let t = Thesaurus::parse(&read_file(&thesaurus)?, &name(&thesaurus))?;
            let attrs = AttributeLexicon::parse(&read_file(&attrs)?, &name(&attrs))?;
            let categories = match categories {
                Some(path) => CategoryTable::parse(&read_file(&path)?, &name(&path))
                    .map_err(|e| Error::Config(e.to_string()))?,
                None => CategoryTable::default(),
            };
            let merges = merges
                .iter()
                .map(|m| {
                    m.split_once(':')
                        .map(|(a, b)| (a.to_string(), b.to_string()))
                        .ok_or_else(|| Error::Config(format!("--merge expects Y:Y', got `{m}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let frames = build_dictionary(&store, &t, &attrs, &categories, &merges)?;
            let blocks: Vec<String> = frames.iter().map(|f| f.to_string()).collect();
            println!("{}", blocks.join("\n\n"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 1 })
        }
    }
}
