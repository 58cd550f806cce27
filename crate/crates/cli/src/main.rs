use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use acdkit::acd::{build_acd, parity_index_of_ts};
use acdkit::analysis::{
    is_history_deterministic, language_equiv_det, minimize_muller_dpa, solve_muller_game, typeness, TypeKind,
};
use acdkit::morphisms::{check_acceptance_preservation, check_hd_mapping, check_local_properties, check_weak_morphism, Direction};
use acdkit::transforms::{
    acd_hd_rabin_transform, acd_hd_rabin_transform_for_games, acd_parity_transform, make_suitable_for_transformations,
    normalize_parity,
};
use acdkit::zielonka::{build_zielonka_tree, remove_duplicate_edges, zt_hd_rabin_automaton, zt_parity_automaton};
use acdkit::{Automaton, Player};
use acdkit_io::{dot, emit_game, emit_hoa, emit_morphism, load, parse_condition, parse_hoa, parse_morphism, IoError, Loaded};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "acdkit", version, about = "Zielonka trees, ACDs and optimal transformations of omega-automata")]
struct Cli {
    /// Seed for commands that generate random instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerations (cycles, subsets, tree nodes).
    #[arg(long, global = true, env = "ACDKIT_BUDGET")]
    budget: Option<usize>,
    /// Output format where several are available.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Hoa,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Parity,
    Rabin,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Automaton,
    Game,
    Condition,
}

#[derive(Subcommand)]
enum Cmd {
    /// Zielonka tree of a condition file.
    Zielonka { condition: String },
    /// Deterministic parity automaton of a condition file, as HOA.
    ZtParity { condition: String },
    /// History-deterministic Rabin automaton of a condition file, as HOA.
    ZtRabin {
        condition: String,
        /// Merge parallel edges with the same letter.
        #[arg(long)]
        dedup: bool,
    },
    /// Alternating cycle decomposition of an automaton or game.
    Acd { input: String },
    /// ACD-based transformation of an automaton or game.
    Transform {
        #[arg(long, value_enum)]
        to: Target,
        input: String,
        /// Also write the witness morphism to this file.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Normal form of a parity automaton or game.
    Normalize { input: String },
    /// Which acceptance conditions the graph supports.
    Typeness { input: String },
    /// Optimal parity index.
    Index { input: String },
    /// Minimal parity automaton for a deterministic automaton recognising a
    /// Muller language.
    Minimize { input: String },
    /// Language equivalence of two deterministic automata (exit 1 if not).
    Equiv { left: String, right: String },
    /// History-determinism by the letter game (exit 1 if not).
    HdCheck { input: String },
    /// Winning regions of a game.
    Solve { game: String },
    /// Properties of a morphism between two systems (exit 1 if it is not a
    /// weak morphism).
    CheckMorphism { source: String, target: String, morphism: String },
    /// DOT rendering of an automaton, game or condition file.
    Dot { input: String },
    /// Generate a random instance (uses --seed).
    Random {
        #[arg(value_enum)]
        kind: RandomKind,
        #[arg(long, default_value_t = 4)]
        states: usize,
        #[arg(long, default_value_t = 3)]
        marks: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Core(#[from] acdkit::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(acdkit::Error::BudgetExceeded { .. })
            | CliError::Io(IoError::InvariantViolation(acdkit::Error::BudgetExceeded { .. })) => 3,
            _ => 2,
        }
    }
}

type Res<T> = Result<T, CliError>;

/// Output of a command and whether its verdict was positive.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn yes(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn read(path: &str) -> Res<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::File { path: path.into(), source: e })?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::File { path: path.into(), source: e })
    }
}

fn automaton(path: &str) -> Res<Automaton> {
    Ok(parse_hoa(&read(path)?)?)
}

fn zielonka_text(zt: &acdkit::zielonka::ZielonkaTree, names: &[String]) -> String {
    let t = zt.tree();
    let lv = zt.parity_levels();
    let mut s = String::new();
    let mut stack = vec![0];
    while let Some(n) = stack.pop() {
        stack.extend(t.children(n).iter().rev());
        let lab: Vec<&str> = t.label(n).iter().map(|m| names[m].as_str()).collect();
        let pol = if t.is_round(n) { "round" } else { "square" };
        writeln!(s, "{}{n} {pol} p={} {{{}}}", "  ".repeat(t.depth(n)), lv.p[n], lab.join(",")).unwrap();
    }
    writeln!(s, "colours [{}, {}], round-branching width {}", lv.min_p, lv.max_p, zt.round_branching_width()).unwrap();
    s
}

fn acd_text(acd: &acdkit::acd::Acd) -> String {
    let mut s = String::new();
    for (i, t) in acd.trees().iter().enumerate() {
        writeln!(s, "tree {i}").unwrap();
        let mut stack = vec![0];
        while let Some(n) = stack.pop() {
            stack.extend(t.children(n).iter().rev());
            let l = t.label(n);
            let es: Vec<String> = l.edges.iter().map(|e| e.to_string()).collect();
            let vs: Vec<String> = l.states.iter().map(|v| v.to_string()).collect();
            let pol = if t.is_round(n) { "round" } else { "square" };
            writeln!(
                s,
                "{}{n} {pol} p={} edges {{{}}} states {{{}}}",
                "  ".repeat(t.depth(n) + 1),
                acd.p(i, n),
                es.join(","),
                vs.join(",")
            )
            .unwrap();
        }
    }
    let lv = acd.levels();
    writeln!(s, "transient {:?}", acd.transient()).unwrap();
    writeln!(s, "polarity {:?}, colours [{}, {}]", lv.polarity, lv.min_p, lv.max_p).unwrap();
    s
}

fn run(cli: &Cli) -> Res<Outcome> {
    let fmt = cli.format;
    Ok(match &cli.cmd {
        Cmd::Zielonka { condition } => {
            let c = parse_condition(&read(condition)?)?;
            let zt = build_zielonka_tree(&c.alphabet(), &c.family)?;
            Outcome::yes(match fmt {
                Some(Format::Dot) => dot::zielonka_dot(&zt, Some(&c.names)),
                _ => zielonka_text(&zt, &c.names),
            })
        }
        Cmd::ZtParity { condition } => {
            let c = parse_condition(&read(condition)?)?;
            let zt = build_zielonka_tree(&c.alphabet(), &c.family)?;
            let a = zt_parity_automaton(&zt)?.automaton.with_letter_names(c.names.clone());
            Outcome::yes(render_automaton(&a, fmt))
        }
        Cmd::ZtRabin { condition, dedup } => {
            let c = parse_condition(&read(condition)?)?;
            let zt = build_zielonka_tree(&c.alphabet(), &c.family)?;
            let mut a = zt_hd_rabin_automaton(&zt)?.automaton.with_letter_names(c.names.clone());
            if *dedup {
                a = remove_duplicate_edges(&a)?.automaton;
            }
            Outcome::yes(render_automaton(&a, fmt))
        }
        Cmd::Acd { input } => {
            let l = load(&read(input)?)?;
            let acd = build_acd(l.ts())?;
            Outcome::yes(match fmt {
                Some(Format::Dot) => dot::acd_dot(&acd),
                _ => acd_text(&acd),
            })
        }
        Cmd::Transform { to, input, witness } => {
            let l = load(&read(input)?)?;
            let (text, phi) = match (&l, to) {
                (Loaded::Automaton(a), Target::Parity) => {
                    let out = acd_parity_transform(&a.ts)?;
                    (render_automaton(&out.lift_automaton(a)?, fmt), out.witness)
                }
                (Loaded::Automaton(a), Target::Rabin) => {
                    let out = acd_hd_rabin_transform(&a.ts)?;
                    (render_automaton(&out.lift_automaton(a)?, fmt), out.witness)
                }
                (Loaded::Game(g), Target::Parity) => {
                    let out = acd_parity_transform(&g.ts)?;
                    (render_game(&out.lift_game(g)?, fmt), out.witness)
                }
                (Loaded::Game(g), Target::Rabin) => {
                    let s = make_suitable_for_transformations(g)?;
                    let (rg, out) = acd_hd_rabin_transform_for_games(&s.game)?;
                    (render_game(&rg, fmt), out.witness)
                }
            };
            if let Some(path) = witness {
                std::fs::write(path, emit_morphism(&phi)).map_err(|e| CliError::File { path: path.clone(), source: e })?;
            }
            Outcome::yes(text)
        }
        Cmd::Normalize { input } => match load(&read(input)?)? {
            Loaded::Automaton(a) => Outcome::yes(render_automaton(&a.with_ts(normalize_parity(&a.ts)?)?, fmt)),
            Loaded::Game(g) => {
                let g2 = acdkit::Game::new(normalize_parity(&g.ts)?, g.owners().to_vec())?;
                Outcome::yes(render_game(&g2, fmt))
            }
        },
        Cmd::Typeness { input } => {
            let l = load(&read(input)?)?;
            let r = typeness(l.ts())?;
            let mut s = String::new();
            for k in TypeKind::ALL {
                writeln!(s, "{k}: {}", r.flag(k)).unwrap();
            }
            if let Some(d) = r.weak_d {
                writeln!(s, "weak degree: {d}").unwrap();
            }
            Outcome::yes(s)
        }
        Cmd::Index { input } => {
            let l = load(&read(input)?)?;
            Outcome::yes(format!("{}\n", parity_index_of_ts(l.ts())?))
        }
        Cmd::Minimize { input } => {
            let a = automaton(input)?;
            match minimize_muller_dpa(&a) {
                Ok(m) => Outcome::yes(render_automaton(&m, fmt)),
                Err(acdkit::Error::NotMullerLanguage) => Outcome {
                    text: "not a Muller language\n".into(),
                    ok: false,
                },
                Err(e) => return Err(e.into()),
            }
        }
        Cmd::Equiv { left, right } => {
            let eq = language_equiv_det(&automaton(left)?, &automaton(right)?)?;
            Outcome {
                text: if eq { "equivalent\n".into() } else { "not equivalent\n".into() },
                ok: eq,
            }
        }
        Cmd::HdCheck { input } => {
            let hd = is_history_deterministic(&automaton(input)?)?;
            Outcome {
                text: if hd { "history-deterministic\n".into() } else { "not history-deterministic\n".into() },
                ok: hd,
            }
        }
        Cmd::Solve { game } => {
            let g = acdkit_io::parse_game(&read(game)?)?;
            let sol = solve_muller_game(&g)?;
            let mut s = String::new();
            let j = |set: &acdkit::VertexSet| set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            writeln!(s, "eve: {}", j(&sol.eve_region)).unwrap();
            writeln!(s, "adam: {}", j(&sol.adam_region)).unwrap();
            for v in 0..g.num_vertices() {
                if g.owner(v) == Player::Eve {
                    if let Some(e) = sol.eve_strategy[v] {
                        writeln!(s, "move {v} -> {} (edge {e})", g.ts.edge(e).tgt).unwrap();
                    }
                }
            }
            Outcome::yes(s)
        }
        Cmd::CheckMorphism { source, target, morphism } => {
            let src = load(&read(source)?)?;
            let tgt = load(&read(target)?)?;
            let phi = parse_morphism(&read(morphism)?)?;
            let (s, t) = (src.ts(), tgt.ts());
            if !check_weak_morphism(s, t, &phi)? {
                return Ok(Outcome {
                    text: "weak morphism: false\n".into(),
                    ok: false,
                });
            }
            if fmt == Some(Format::Dot) {
                return Ok(Outcome::yes(dot::morphism_dot(s, t, &phi)));
            }
            let lp = check_local_properties(s, t, &phi)?;
            let fwd = check_acceptance_preservation(s, t, &phi, Direction::Forward)?;
            let both = check_acceptance_preservation(s, t, &phi, Direction::Both)?;
            let mut out = String::from("weak morphism: true\n");
            writeln!(out, "locally surjective: {}", lp.locally_surjective).unwrap();
            writeln!(out, "locally injective: {}", lp.locally_injective).unwrap();
            writeln!(out, "locally bijective: {}", lp.locally_bijective).unwrap();
            writeln!(out, "preserves accepting runs: {fwd}").unwrap();
            writeln!(out, "preserves acceptance: {both}").unwrap();
            let hd = if fwd { check_hd_mapping(s, t, &phi)?.is_hd } else { false };
            writeln!(out, "hd mapping: {hd}").unwrap();
            Outcome::yes(out)
        }
        Cmd::Dot { input } => {
            let text = read(input)?;
            let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
            if first.is_some_and(|l| l.starts_with("alphabet")) {
                let c = parse_condition(&text)?;
                let zt = build_zielonka_tree(&c.alphabet(), &c.family)?;
                Outcome::yes(dot::zielonka_dot(&zt, Some(&c.names)))
            } else {
                Outcome::yes(match load(&text)? {
                    Loaded::Automaton(a) => dot::automaton_dot(&a),
                    Loaded::Game(g) => dot::game_dot(&g),
                })
            }
        }
        Cmd::Random { kind, states, marks } => {
            if *states == 0 || *marks == 0 {
                return Err(CliError::Usage("--states and --marks must be positive".into()));
            }
            let mut rng = acdkit::random::rng(cli.seed);
            Outcome::yes(match kind {
                RandomKind::Automaton => {
                    let a = acdkit::random::random_det_automaton(&mut rng, *states, 2, *marks, true)?;
                    emit_hoa(&a)
                }
                RandomKind::Game => render_game(&acdkit::random::random_game(&mut rng, *states, *marks, 2, false)?, fmt),
                RandomKind::Condition => {
                    let fam = acdkit::random::random_family(&mut rng, *marks, 0.35);
                    let names = (0..*marks).map(|i| format!("c{i}")).collect();
                    acdkit_io::emit_condition(&acdkit_io::Condition { names, family: fam })
                }
            })
        }
    })
}

fn render_automaton(a: &Automaton, fmt: Option<Format>) -> String {
    match fmt {
        Some(Format::Dot) => dot::automaton_dot(a),
        _ => emit_hoa(a),
    }
}

fn render_game(g: &acdkit::Game, fmt: Option<Format>) -> String {
    match fmt {
        Some(Format::Dot) => dot::game_dot(g),
        _ => emit_game(g),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(b) = cli.budget {
        // Read once by the library; must be set before any call into it.
        std::env::set_var("ACDKIT_BUDGET", b.to_string());
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
