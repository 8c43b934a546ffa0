use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use cellgame::constructions::{g1_witness, g2_witness, gn_witness, random_equilibrium, MatrixProfile};
use cellgame::engine::Engine;
use cellgame::games::{Game, GameSpec};
use cellgame::logic::{check_proof, decide, parse_formula, ProofScript, Verdict};
use cellgame::{Caps, Error};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "cellgame", version, about = "Interchangeability of equilibria in cellular games")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest strategy set the engine analyses as one relation.
    #[arg(long, global = true, env = "CELLGAME_MAX_STRATEGIES")]
    max_strategies: Option<u64>,
    /// Largest number of distinct atoms or distances.
    #[arg(long, global = true, env = "CELLGAME_MAX_ATOMS")]
    max_atoms: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Lines,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a formula holds in every cellular game.
    Decide { formula: String },
    /// Check a proof script and print its conclusion.
    CheckProof { path: PathBuf },
    /// Analyse a game.
    Game {
        spec: String,
        #[command(subcommand)]
        action: Action,
    },
    /// Decide a formula and confirm a countermodel on the engine.
    Synth { formula: String },
    /// Build an equilibrium joining two random equilibria at players `a` and `b`.
    Witness {
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
}

#[derive(Subcommand)]
enum Action {
    /// Equilibrium existence and the number of realizable strategies.
    Ne,
    /// Whether players `a` and `b` are interchangeable.
    Interchange {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// All windows of `length` cells that extend to an equilibrium.
    Windows {
        #[arg(long)]
        length: usize,
    },
    /// An equilibrium through `--at player=label` constraints.
    Constrain {
        #[arg(long = "at", value_name = "PLAYER=LABEL", allow_hyphen_values = true)]
        at: Vec<String>,
    },
}

/// What a command reports when it does not fail.
enum Outcome {
    Yes,
    No,
}

struct Out {
    format: Format,
    buf: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let line = match self.format {
            Format::Text => format!("{key}: {value}"),
            Format::Lines => format!("{key}={value}"),
        };
        self.line(line);
    }
}

fn caps(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(m) = cli.max_strategies {
        caps.engine_strategies = m;
        caps.build_strategies = caps.build_strategies.max(m);
    }
    if let Some(a) = cli.max_atoms {
        caps.atoms = a;
    }
    caps
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Cap { .. } => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn verdict_lines(out: &mut Out, v: &Verdict) {
    match v {
        Verdict::Valid => out.line("VALID"),
        Verdict::Invalid { countermodel, assignment } => {
            out.line("INVALID");
            out.kv("countermodel", countermodel);
            out.kv("assignment", assignment);
        }
    }
}

fn cmd_decide(out: &mut Out, formula: &str, caps: &Caps) -> Result<Outcome, Error> {
    let v = decide(&parse_formula(formula)?, caps.atoms)?;
    verdict_lines(out, &v);
    Ok(if v.is_valid() { Outcome::Yes } else { Outcome::No })
}

fn cmd_check_proof(out: &mut Out, path: &PathBuf, caps: &Caps) -> Result<Outcome, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let script = ProofScript::parse(&text)?;
    match check_proof(&script, caps.atoms) {
        Ok(conclusion) => {
            out.line(conclusion.to_string());
            Ok(Outcome::Yes)
        }
        Err(e @ Error::Proof { .. }) => {
            out.line("REJECTED");
            out.kv("reason", &e);
            Ok(Outcome::No)
        }
        Err(e) => Err(e),
    }
}

fn engine_for(spec: &GameSpec, caps: &Caps) -> Result<Engine, Error> {
    Engine::new(Arc::new(Game::build(spec, caps)?), caps)
}

fn cmd_game(out: &mut Out, spec: &str, action: &Action, caps: &Caps) -> Result<Outcome, Error> {
    let spec: GameSpec = spec.parse()?;
    let engine = engine_for(&spec, caps)?;
    let game = engine.game().clone();
    match action {
        Action::Ne => {
            let realizable = engine.realizable();
            out.kv("has_equilibrium", engine.has_equilibrium());
            out.kv("realizable", realizable.len());
            Ok(if engine.has_equilibrium() { Outcome::Yes } else { Outcome::No })
        }
        Action::Interchange { a, b } => {
            let yes = engine.interchangeable(*a, *b);
            out.line(yes.to_string());
            Ok(if yes { Outcome::Yes } else { Outcome::No })
        }
        Action::Windows { length } => {
            for w in engine.enumerate_ne_windows(*length)? {
                match out.format {
                    Format::Text => out.line(engine.window_text(&w)),
                    Format::Lines => {
                        let labels: Vec<&str> = w.cells.iter().map(|&s| game.label(s)).collect();
                        out.line(labels.join(" "));
                    }
                }
            }
            Ok(Outcome::Yes)
        }
        Action::Constrain { at } => {
            let constraints = at
                .iter()
                .map(|c| {
                    let (p, label) = c
                        .split_once('=')
                        .ok_or_else(|| Error::Precondition(format!("constraint `{c}` is not PLAYER=LABEL")))?;
                    let p: i64 =
                        p.trim().parse().map_err(|_| Error::Precondition(format!("bad player index `{p}`")))?;
                    Ok((p, game.parse_strategy(label)?))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            match engine.constrained_equilibrium(&constraints)? {
                Some(p) => {
                    out.line(engine.profile_text(&p));
                    Ok(Outcome::Yes)
                }
                None => {
                    out.line("NONE");
                    Ok(Outcome::No)
                }
            }
        }
    }
}

/// Interchangeability of `a` and `b` in the single game `G_d` or its symbolic
/// value when the engine cannot hold it.
fn component_atom(engine: Option<&Engine>, spec: &GameSpec, a: i64, b: i64) -> bool {
    match (engine, spec) {
        (Some(e), _) => e.interchangeable(a, b),
        (None, GameSpec::Gn(n)) => a != b && a.abs_diff(b) != *n,
        (None, _) => unreachable!("only GN components are left symbolic"),
    }
}

fn cmd_synth(out: &mut Out, formula: &str, caps: &Caps) -> Result<Outcome, Error> {
    let f = parse_formula(formula)?;
    let v = decide(&f, caps.atoms)?;
    verdict_lines(out, &v);
    let Verdict::Invalid { countermodel, assignment } = v else {
        return Ok(Outcome::Yes);
    };
    let factors: Vec<GameSpec> = countermodel.factors().to_vec();
    let mut engines = Vec::with_capacity(factors.len());
    for spec in &factors {
        let small = !matches!(spec, GameSpec::Gn(n) if *n > 3);
        if small {
            out.kv("component", format!("{spec} engine"));
            engines.push(Some(engine_for(spec, caps)?));
        } else {
            out.kv("component", format!("{spec} symbolic (engine cap)"));
            engines.push(None);
        }
    }
    let mut atoms = f.atoms();
    atoms.sort();
    let mut confirmed = true;
    for &(a, b) in &atoms {
        let holds = engines.iter().zip(&factors).all(|(e, s)| component_atom(e.as_ref(), s, a, b));
        confirmed &= holds == assignment.atom(a, b);
        out.kv(&format!("atom {a}||{b}"), if holds { "T" } else { "F" });
    }
    let falsified = !f.eval_with(&mut |a, b| {
        engines.iter().zip(&factors).all(|(e, s)| component_atom(e.as_ref(), s, a, b))
    });
    confirmed &= falsified;
    out.kv("confirmed", confirmed);
    if !confirmed {
        return Err(Error::Internal(format!("countermodel {countermodel} does not falsify {f}")));
    }
    Ok(Outcome::No)
}

fn profile_line(out: &mut Out, key: &str, p: &MatrixProfile) {
    out.kv(key, p.to_text(|m| m.to_string()));
}

fn cmd_witness(out: &mut Out, spec: &str, a: i64, b: i64, seed: u64, caps: &Caps) -> Result<Outcome, Error> {
    let spec: GameSpec = spec.parse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = match &spec {
        GameSpec::G1 => {
            let (s, t) = (rng.random_range(0..3), rng.random_range(0..3));
            out.kv("f", format!("constant {s}"));
            out.kv("g", format!("constant {t}"));
            g1_witness(s, t, a, b).map(|e| e.to_text(|s| s.to_string()))
        }
        GameSpec::G2 => {
            let engine = engine_for(&spec, caps)?;
            let sample = |rng: &mut ChaCha8Rng| -> Result<_, Error> {
                let constraints = [(0, rng.random_range(0..3)), (3, rng.random_range(0..3))];
                engine
                    .constrained_equilibrium(&constraints)?
                    .ok_or_else(|| Error::Internal("G2 has no equilibrium through residues 3 apart".into()))
            };
            let (f, g) = (sample(&mut rng)?, sample(&mut rng)?);
            out.kv("f", engine.profile_text(&f));
            out.kv("g", engine.profile_text(&g));
            g2_witness(&f, &g, a, b).map(|e| engine.profile_text(&e))
        }
        GameSpec::Gn(n) => {
            let n = *n as usize;
            let (f, g) = (random_equilibrium(n, &mut rng)?, random_equilibrium(n, &mut rng)?);
            profile_line(out, "f", &f);
            profile_line(out, "g", &g);
            gn_witness(n, &f, &g, a, b).map(|e| e.to_text(|m| m.to_string()))
        }
        other => return Err(Error::Spec(format!("no witness construction for {other}"))),
    };
    match result {
        Ok(e) => {
            out.kv("e", e);
            Ok(Outcome::Yes)
        }
        Err(Error::Precondition(msg)) => {
            out.line("NONE");
            out.kv("reason", msg);
            Ok(Outcome::No)
        }
        Err(e) => Err(e),
    }
}

fn run(cli: &Cli, out: &mut Out) -> Result<Outcome, Error> {
    let caps = caps(cli);
    match &cli.command {
        Command::Decide { formula } => cmd_decide(out, formula, &caps),
        Command::CheckProof { path } => cmd_check_proof(out, path, &caps),
        Command::Game { spec, action } => cmd_game(out, spec, action, &caps),
        Command::Synth { formula } => cmd_synth(out, formula, &caps),
        Command::Witness { spec, a, b } => cmd_witness(out, spec, *a, *b, cli.seed, &caps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out { format: cli.format, buf: String::new() };
    let result = run(&cli, &mut out);
    let _ = std::io::stdout().write_all(out.buf.as_bytes());
    match result {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
