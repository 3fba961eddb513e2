use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use wordmap::arith::PrimePower;
use wordmap::counting::{
    abelian_count, distribution, distribution_via_sylow, power_count, ratio, semidirect_count,
    Budget,
};
use wordmap::groups::{evaluate, parse_group_spec, FiniteGroup, GroupSpec};
use wordmap::normal_form::collect;
use wordmap::reduction::canonicalize;
use wordmap::verification::{
    dedupe_by_collection, enumerate_words, g_equivalent, random_words, run_census,
    verify_canonicalization, CensusConfig, CensusGroup,
};
use wordmap::words::{parse_word, Word};
use wordmap::{Error, Result};

#[derive(Parser)]
#[command(name = "wordmap", version, about = "Word maps on finite groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Maximum number of word evaluations per enumeration.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    budget: u128,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct WordArg {
    #[arg(long)]
    word: String,
    /// Number of variables (default: largest index in the word).
    #[arg(long)]
    rank: Option<usize>,
}

impl WordArg {
    fn parse(&self) -> Result<Word> {
        parse_word(&self.word, self.rank)
    }
}

#[derive(Args)]
struct Modulus {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
}

impl Modulus {
    fn get(&self) -> Result<Option<PrimePower>> {
        match (self.p, self.m) {
            (Some(p), Some(m)) => PrimePower::new(p, m).map(Some),
            (None, None) => Ok(None),
            _ => Err(Error::Precondition("--p and --m go together".into())),
        }
    }

    fn require(&self) -> Result<PrimePower> {
        self.get()?
            .ok_or_else(|| Error::Precondition("--p and --m are required".into()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Abelian,
    Sylow,
    Semidirect,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word at a tuple of elements.
    Eval {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        word: WordArg,
        /// Comma-separated element labels or indices.
        #[arg(long)]
        tuple: String,
    },
    /// Collected form modulo the third term of the lower central series.
    Collect {
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        modulus: Modulus,
    },
    /// Canonical form for class-2 groups of exponent dividing p^m.
    Canon {
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        modulus: Modulus,
    },
    /// N(G, w = c) and P(G, w = c).
    Count {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        word: WordArg,
        /// Target element (default: identity).
        #[arg(long)]
        element: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
    },
    /// Full distribution of the word map.
    Dist {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        word: WordArg,
    },
    /// Compare the distributions of two words.
    Equiv {
        #[arg(long)]
        group: String,
        /// Give exactly twice.
        #[arg(long = "word", num_args = 1, required = true)]
        words: Vec<String>,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Check a canonicalization against the group by enumeration.
    Verify {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        word: WordArg,
        /// Defaults to the prime and exponent of the group.
        #[command(flatten)]
        modulus: Modulus,
    },
    /// Bound and canonicalization checks over groups and words.
    Census {
        /// Repeat for several groups.
        #[arg(long = "group", required = true)]
        groups: Vec<String>,
        /// Explicit words; repeatable.
        #[arg(long = "word")]
        words: Vec<String>,
        /// Enumerate all words up to this many syllables.
        #[arg(long)]
        length: Option<usize>,
        /// Number of variables for enumerated words, maximum rank for
        /// random ones.
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 4)]
        max_exp: i64,
        /// Sample this many random words.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override p^m for the canonicalization check.
        #[command(flatten)]
        modulus: Modulus,
        /// Record the wall time of each row.
        #[arg(long)]
        timings: bool,
    },
}

/// A report plus whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

fn build_group(spec: &str) -> Result<(GroupSpec, FiniteGroup)> {
    let parsed = parse_group_spec(spec)?;
    let g = parsed.build()?;
    Ok((parsed, g))
}

fn element(g: &FiniteGroup, text: &str) -> Result<usize> {
    g.find(text.trim()).ok_or_else(|| Error::Precondition(format!("no element `{text}`")))
}

fn render(value: serde_json::Value, format: Format, text: String) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&value)? + "\n"),
        Format::Csv | Format::Text => Ok(text),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let budget = Budget(cli.common.budget);
    let format = cli.common.format;
    let pass = |text: String| Outcome { text, ok: true };
    match &cli.command {
        Command::Eval { group, word, tuple } => {
            let (_, g) = build_group(group)?;
            let w = word.parse()?;
            let xs = if tuple.trim().is_empty() {
                Vec::new()
            } else {
                tuple.split(',').map(|t| element(&g, t)).collect::<Result<Vec<_>>>()?
            };
            let v = evaluate(&w, &g, &xs)?;
            let value = json!({"group": group, "word": w.to_string(), "value": g.label(v)});
            render(value, format, format!("{}\n", g.label(v))).map(pass)
        }
        Command::Collect { word, modulus } => {
            let w = word.parse()?;
            let mut nf = collect(&w);
            if let Some(q) = modulus.get()? {
                nf = nf.reduce_mod_r(q);
            }
            let value = json!({
                "word": w.to_string(),
                "rank": w.rank(),
                "alpha": nf.alpha().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "beta": nf.beta_entries()
                    .map(|(i, j, b)| json!({"i": i, "j": j, "exponent": b.to_string()}))
                    .collect::<Vec<_>>(),
                "normal_form": nf.render(),
            });
            render(value, format, format!("{}\n", nf.render())).map(pass)
        }
        Command::Canon { word, modulus } => {
            let w = word.parse()?;
            let c = canonicalize(&w, modulus.require()?)?;
            let value = serde_json::to_value(c.report())?;
            let mut text = format!("{}\n", c.render());
            for (i, img) in c.substitution.images().iter().enumerate() {
                text += &format!("  x{} -> {}\n", i + 1, img);
            }
            render(value, format, text).map(pass)
        }
        Command::Count {
            group,
            word,
            element: target,
            method,
        } => {
            let (spec, g) = build_group(group)?;
            let w = word.parse()?;
            let c = match target {
                Some(t) => element(&g, t)?,
                None => 0,
            };
            let mut extra = serde_json::Map::new();
            let n = match method {
                Method::Oracle => distribution(&g, &w, budget)?.at(c),
                Method::Abelian => abelian_count(&g, &w)?.at(c),
                Method::Sylow => distribution_via_sylow(&g, &w, budget)?.at(c),
                Method::Semidirect => {
                    if c != 0 {
                        return Err(Error::Precondition(
                            "the semidirect method counts w = 1 only".into(),
                        ));
                    }
                    let r = semidirect_count(&spec.build_semidirect()?, &w, budget)?;
                    extra.insert("satisfying".into(), r.satisfying.to_string().into());
                    extra.insert("certificate".into(), r.certificate.to_string().into());
                    r.count
                }
            };
            let total = power_count(g.order(), w.rank())?;
            let p = ratio(n, total).to_string();
            let mut value = json!({
                "group": group,
                "word": w.to_string(),
                "rank": w.rank(),
                "element": g.label(c),
                "count": n.to_string(),
                "total": total.to_string(),
                "probability": p,
            });
            value.as_object_mut().expect("object").extend(extra);
            let text = match format {
                Format::Csv => format!("group,word,element,count,total,probability\n\"{group}\",\"{w}\",{},{n},{total},{p}\n", g.label(c)),
                _ => format!("N = {n}\nP = {p}\n"),
            };
            render(value, format, text).map(pass)
        }
        Command::Dist { group, word } => {
            let (_, g) = build_group(group)?;
            let w = word.parse()?;
            let d = distribution(&g, &w, budget)?;
            let report = d.report(&g, group, &w.to_string());
            let text = match format {
                Format::Csv => d.to_csv(&g)?,
                _ => {
                    let mut t = String::new();
                    for (l, c) in g.labels().iter().zip(&d.counts) {
                        t += &format!("{l}\t{c}\n");
                    }
                    t + &format!("P(w = 1) = {}\n", report.probability_identity)
                }
            };
            render(serde_json::to_value(&report)?, format, text).map(pass)
        }
        Command::Equiv { group, words, rank } => {
            if words.len() != 2 {
                return Err(Error::Precondition("equiv needs --word twice".into()));
            }
            let (_, g) = build_group(group)?;
            let w1 = parse_word(&words[0], *rank)?;
            let w2 = parse_word(&words[1], *rank)?;
            let eq = g_equivalent(&g, &w1, &w2, budget)?;
            let value = json!({"group": group, "words": [w1.to_string(), w2.to_string()], "equivalent": eq});
            let text = format!("{}\n", if eq { "equivalent" } else { "not equivalent" });
            Ok(Outcome {
                text: render(value, format, text)?,
                ok: eq,
            })
        }
        Command::Verify {
            group,
            word,
            modulus,
        } => {
            let (_, g) = build_group(group)?;
            let w = word.parse()?;
            let q = match modulus.get()? {
                Some(q) => q,
                None => PrimePower::from_exponent(g.exponent()).ok_or_else(|| {
                    Error::Precondition(format!(
                        "exponent {} is not a prime power; pass --p and --m",
                        g.exponent()
                    ))
                })?,
            };
            let r = verify_canonicalization(&g, &w, q, budget)?;
            let text = format!(
                "{} ~ {}\nequivalent: {}\nN = {} >= {}: {}\n{}\n",
                r.word,
                r.canonical,
                r.equivalent,
                r.bound.count,
                r.bound.bound,
                r.bound.holds,
                if r.passed { "PASS" } else { "FAIL" }
            );
            Ok(Outcome {
                ok: r.passed,
                text: render(serde_json::to_value(&r)?, format, text)?,
            })
        }
        Command::Census {
            groups,
            words,
            length,
            vars,
            max_exp,
            random,
            seed,
            modulus,
            timings,
        } => {
            let q = modulus.get()?;
            let groups = groups
                .iter()
                .map(|s| {
                    let (_, g) = build_group(s)?;
                    Ok(CensusGroup {
                        modulus: q,
                        ..CensusGroup::new(s.clone(), g)
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let mut source: Vec<Word> = words
                .iter()
                .map(|w| parse_word(w, None))
                .collect::<Result<_>>()?;
            if let Some(l) = length {
                source.extend(dedupe_by_collection(enumerate_words(*vars, *l, *max_exp)));
            }
            if let Some(k) = random {
                source.extend(random_words(*k, *vars, 10, *max_exp, *seed));
            }
            if source.is_empty() {
                return Err(Error::Precondition(
                    "no words: use --word, --length or --random".into(),
                ));
            }
            let report = run_census(
                &groups,
                &source,
                CensusConfig {
                    budget,
                    timings: *timings,
                },
            );
            let text = match format {
                Format::Json => report.to_json()? + "\n",
                Format::Csv => report.to_csv()?,
                Format::Text => report.to_text(),
            };
            if report.summary.violations == 0 && report.summary.errors > 0 {
                let first = report.rows.iter().find_map(|r| r.error.clone());
                emit(&cli.common, &text)?;
                return Err(Error::Precondition(format!(
                    "{} rows failed, first: {}",
                    report.summary.errors,
                    first.unwrap_or_default()
                )));
            }
            Ok(Outcome {
                ok: report.summary.violations == 0,
                text,
            })
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli).and_then(|o| emit(&cli.common, &o.text).map(|_| o.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
