//! `bsq`: command-line access to the Baumslag-Solitar quandle toolkit.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict,
//! 2 usage, parse or precondition error, 3 resource limit.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bsq_core::bs::{abelian_image, equal, pinch_reduce_with, BsPresentation, PinchStrategy};
use bsq_core::classify::classify;
use bsq_core::closure::{bounded_closure_bs, ClosureLimits};
use bsq_core::perm::{find_perm_quotients, separate};
use bsq_core::quandle::{
    check_axioms, conj_quandle, dehn_quandle_finite, parse_quandle_file, render_quandle_file,
    trivial_quandle, FiniteGroupTable,
};
use bsq_core::term::{expand_term, parse_term, AtomAssignment};
use bsq_core::witness::{conj_z_demo, verify_case1_witness, verify_case2_witness};
use bsq_core::word::{parse_word, GroupWord};
use bsq_core::Error;

#[derive(Parser)]
#[command(
    name = "bsq",
    version,
    about = "Word problem, quandle and classification tools for BS(m,n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct Params {
    /// Exponent on the left of the relation b^-1 a^m b = a^n.
    #[arg(short, allow_negative_numbers = true)]
    m: i64,
    /// Exponent on the right of the relation.
    #[arg(short, allow_negative_numbers = true)]
    n: i64,
}

impl Params {
    fn presentation(self) -> Result<BsPresentation, Error> {
        BsPresentation::new(self.m, self.n)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Subcommand)]
enum Command {
    /// Pinch-reduce a word; the identity prints as 1.
    Reduce {
        #[command(flatten)]
        params: Params,
        /// Word such as "b^-1 a^4 b".
        word: Option<String>,
        /// Reduce every nonblank line of a file instead ("-" for stdin).
        #[arg(long, conflicts_with = "word")]
        file: Option<String>,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: Strategy,
    },
    /// Decide whether two words are equal; exit 0 if equal, 1 if not.
    Eq {
        #[command(flatten)]
        params: Params,
        u: String,
        v: String,
    },
    /// Expand a quandle term into a word, u * v = v^-1 u v.
    Expand {
        /// Term such as "a * b * a *^-1 b".
        term: String,
        /// Rebind an atom, NAME=WORD; atoms that are words denote themselves.
        #[arg(long = "bind", value_name = "NAME=WORD")]
        bindings: Vec<String>,
        /// Also pinch-reduce the result in BS(m,n).
        #[arg(short, allow_negative_numbers = true, requires = "n")]
        m: Option<i64>,
        #[arg(short, allow_negative_numbers = true, requires = "m")]
        n: Option<i64>,
    },
    /// Abelianization image (a mod |n-m|, b).
    Abelian {
        #[command(flatten)]
        params: Params,
        word: String,
    },
    /// Residual finiteness and Hopf status of BS(m,n) and Conj(BS(m,n)).
    Classify {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Find a permutation quotient separating two distinct words.
    Separate {
        #[command(flatten)]
        params: Params,
        u: String,
        v: String,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
    },
    /// List permutation pairs of degree d satisfying the relation.
    Quotients {
        #[command(flatten)]
        params: Params,
        #[arg(short)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Verify an explicit non-injective surjection.
    Witness {
        #[command(subcommand)]
        case: WitnessArg,
    },
    /// Check the three quandle axioms on a table file ("-" for stdin).
    Axioms {
        file: String,
        /// Print at most this many failures.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Print the table of a standard finite quandle.
    Genquandle {
        #[command(subcommand)]
        kind: QuandleKind,
    },
    /// Bounded-depth closure of words under conjugation in BS(m,n).
    Closure {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Stop with exit code 3 past this many elements.
        #[arg(long, default_value_t = 50_000)]
        limit: usize,
        #[arg(required = true)]
        generators: Vec<String>,
    },
}

#[derive(Subcommand)]
enum WitnessArg {
    /// a -> a^m, b -> b, a^m -> a.
    Case1 {
        #[command(flatten)]
        params: Params,
    },
    /// a -> a, b -> b, a^m -> a^m * b.
    Case2 {
        #[command(flatten)]
        params: Params,
    },
    /// The shift toward zero on Conj(Z), on the window [-N, N].
    Conjz {
        #[arg(short = 'N')]
        radius: i64,
    },
}

#[derive(Subcommand)]
enum QuandleKind {
    /// x * y = x on k elements.
    Trivial { k: usize },
    /// Conjugation quandle of the cyclic group of order k.
    ConjCyclic { k: usize },
    /// Conjugation quandle of the symmetric group of degree d.
    ConjSym { d: usize },
    /// Transpositions of the symmetric group of degree d.
    DehnSym { d: usize },
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn word(text: &str) -> Result<GroupWord, Failure> {
    parse_word(text).map_err(|e| Failure::Usage(format!("in `{text}`: {e}")))
}

fn verdict(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Reduce {
            params,
            word: text,
            file,
            strategy,
        } => {
            let p = params.presentation()?;
            let strategy = match strategy {
                Strategy::Leftmost => PinchStrategy::Leftmost,
                Strategy::Rightmost => PinchStrategy::Rightmost,
            };
            let lines: Vec<String> = match (text, file) {
                (Some(t), _) => vec![t],
                (None, Some(path)) => read_input(&path)?
                    .lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(str::to_string)
                    .collect(),
                (None, None) => return Err(Failure::Usage("give a word or --file".into())),
            };
            for line in lines {
                println!("{}", pinch_reduce_with(&word(&line)?, &p, strategy)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eq { params, u, v } => {
            let p = params.presentation()?;
            let same = equal(&word(&u)?, &word(&v)?, &p)?;
            println!("{}", if same { "equal" } else { "not-equal" });
            Ok(verdict(same))
        }
        Command::Expand {
            term,
            bindings,
            m,
            n,
        } => {
            let t = parse_term(&term).map_err(|e| Failure::Usage(format!("in `{term}`: {e}")))?;
            let mut sigma = AtomAssignment::literal();
            for b in &bindings {
                let (name, w) = b
                    .split_once('=')
                    .ok_or_else(|| Failure::Usage(format!("binding `{b}` is not NAME=WORD")))?;
                sigma.insert(name.trim(), word(w)?);
            }
            let mut w = expand_term(&t, &sigma)?;
            if let (Some(m), Some(n)) = (m, n) {
                w = pinch_reduce_with(&w, &BsPresentation::new(m, n)?, PinchStrategy::Leftmost)?;
            }
            println!("{w}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Abelian { params, word: text } => {
            let p = params.presentation()?;
            println!("{}", abelian_image(&word(&text)?, &p));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { m, n } => {
            print!("{}", classify(m, n)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Separate { params, u, v, dmax } => {
            let p = params.presentation()?;
            match separate(&word(&u)?, &word(&v)?, &p, dmax)? {
                Some(s) => {
                    println!("degree={}", s.pair.degree());
                    println!("alpha={}", s.pair.alpha());
                    println!("beta={}", s.pair.beta());
                    println!("image_u={}", s.image_u);
                    println!("image_v={}", s.image_v);
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("none found");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Quotients { params, d, limit } => {
            let p = params.presentation()?;
            let pairs = find_perm_quotients(&p, d, limit)?;
            for pp in &pairs {
                println!("alpha={} beta={}", pp.alpha(), pp.beta());
            }
            println!("count={}", pairs.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { case } => {
            let (text, ok) = match case {
                WitnessArg::Case1 { params } => {
                    let r = verify_case1_witness(&params.presentation()?)?;
                    (r.to_string(), r.passed())
                }
                WitnessArg::Case2 { params } => {
                    let r = verify_case2_witness(&params.presentation()?)?;
                    (r.to_string(), r.passed())
                }
                WitnessArg::Conjz { radius } => {
                    let r = conj_z_demo(radius)?;
                    (r.to_string(), r.passed())
                }
            };
            print!("{text}");
            Ok(verdict(ok))
        }
        Command::Axioms { file, limit } => {
            let rows = parse_quandle_file(&read_input(&file)?)?;
            let report = check_axioms(&rows)?;
            println!("size={}", rows.len());
            println!("failures={}", report.failures.len());
            for f in report.failures.iter().take(limit) {
                println!("failure {f}");
            }
            println!("status={}", if report.passed() { "pass" } else { "fail" });
            Ok(verdict(report.passed()))
        }
        Command::Genquandle { kind } => {
            let q = match kind {
                QuandleKind::Trivial { k } => trivial_quandle(k)?,
                QuandleKind::ConjCyclic { k } => conj_quandle(&FiniteGroupTable::cyclic(k)?),
                QuandleKind::ConjSym { d } => {
                    check_degree(d)?;
                    conj_quandle(&FiniteGroupTable::symmetric(d)?.0)
                }
                QuandleKind::DehnSym { d } => {
                    check_degree(d)?;
                    if d < 2 {
                        return Err(Failure::Usage("degree must be at least 2".into()));
                    }
                    let (g, perms) = FiniteGroupTable::symmetric(d)?;
                    // the transposition swapping the first two points
                    let mut swap: Vec<usize> = (0..d).collect();
                    swap.swap(0, 1);
                    let t = perms
                        .iter()
                        .position(|p| *p == swap)
                        .expect("S_d contains (1 2)");
                    dehn_quandle_finite(&g, &[t])?.quandle
                }
            };
            print!("{}", render_quandle_file(&q));
            Ok(ExitCode::SUCCESS)
        }
        Command::Closure {
            params,
            depth,
            limit,
            generators,
        } => {
            let p = params.presentation()?;
            let gens: Vec<GroupWord> = generators
                .iter()
                .map(|g| word(g))
                .collect::<Result<_, _>>()?;
            let limits = ClosureLimits {
                max_elements: limit,
                ..ClosureLimits::default()
            };
            let c = bounded_closure_bs(&p, &gens, depth, limits)?;
            let names: Vec<String> = gens.iter().map(GroupWord::to_string).collect();
            for (i, e) in c.elements.iter().enumerate() {
                println!(
                    "{i} depth={} {} = {}",
                    e.depth,
                    e.word,
                    c.derivation_text(i, &names)
                );
            }
            println!("count={}", c.len());
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// The symmetric group table has d! squared entries.
fn check_degree(d: usize) -> Result<(), Failure> {
    const MAX: usize = 5;
    if d == 0 {
        return Err(Failure::Usage("degree must be positive".into()));
    }
    if d > MAX {
        return Err(Failure::Core(Error::ResourceLimit(format!(
            "symmetric group tables are limited to degree {MAX}"
        ))));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
    }
}
