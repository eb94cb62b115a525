use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use braces::catalog::store::{write_catalog, CATALOG_DIR_ENV};
use braces::catalog::{enumerate_braces, parse_brace, serialize_brace, serialize_solution, BraceFile, Invariants};
use braces::engel::{self, engel_witness, s_grading, word_w, z_w_certificate, WitnessMethod};
use braces::group::{adjoint_group, nilpotency_bound_check, p_decomposition};
use braces::ybe::{multipermutation_level, solution_from_brace};
use braces::{canonical_form, chain, socle, BraceError, Chirality, QPoly, SeriesKind};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "braces", version, about = "Finite braces, Yang-Baxter solutions and free-algebra identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a brace file satisfies the axioms.
    Validate { file: PathBuf },
    /// Print every catalogued invariant of a brace.
    Info { file: PathBuf },
    /// Print the terms of one radical chain.
    Series {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Split a left brace with nilpotent adjoint group into its Sylow parts.
    Decompose { file: PathBuf },
    /// Work with the set-theoretic solution of a left brace.
    #[command(group(ArgGroup::new("mode").required(true).args(["check", "export", "mpl"])))]
    Ybe {
        file: PathBuf,
        /// Check braid, involutivity and non-degeneracy.
        #[arg(long)]
        check: bool,
        /// Print the solution in `solution <size>` format.
        #[arg(long)]
        export: bool,
        /// Print the multipermutation level.
        #[arg(long)]
        mpl: bool,
    },
    /// List left braces of an order up to isomorphism.
    ///
    /// With `--out`, or when BRACE_CATALOG_DIR is set, the braces and an
    /// index are also written to that directory.
    Enumerate {
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Enumerate right braces instead.
        #[arg(long)]
        right: bool,
    },
    /// Words and identities in the free algebra modulo a², b³.
    #[command(group(ArgGroup::new("task").required(true).args(["witness", "word", "identity"])))]
    Engel {
        /// Establish v_n ≠ 1.
        #[arg(long, value_name = "N")]
        witness: Option<usize>,
        /// Print the word W_n and its statistics.
        #[arg(long, value_name = "N")]
        word: Option<usize>,
        /// Verify a named identity; only `z-w-t` is known.
        #[arg(long, num_args = 2, value_names = ["NAME", "N"])]
        identity: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Left,
    Right,
    Bracket,
}

impl From<Kind> for SeriesKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Left => SeriesKind::LeftPowers,
            Kind::Right => SeriesKind::RightPowers,
            Kind::Bracket => SeriesKind::Bracket,
        }
    }
}

enum Failure {
    /// Exit 1: the input was fine but a property does not hold.
    Verify(String),
    /// Exit 2: unreadable or malformed input, or arguments out of range.
    Input(String),
}

fn input(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

type Outcome = Result<(), Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<BraceFile, Failure> {
    parse_brace(&read_file(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn validate(path: &Path) -> Outcome {
    match parse_brace(&read_file(path)?) {
        Ok(f) => {
            println!("valid {} brace of order {}", f.brace.chirality(), f.brace.order());
            Ok(())
        }
        Err(BraceError::Invalid(report)) => Err(Failure::Verify(format!("invalid: {report}"))),
        Err(e) => Err(Failure::Input(format!("{}: {e}", path.display()))),
    }
}

fn info(path: &Path) -> Outcome {
    let b = load(path)?.brace;
    let inv = Invariants::of(&b).map_err(input)?;
    println!("order: {}", inv.order);
    println!("chirality: {}", inv.chirality);
    println!("additive group: {}", inv.additive_type);
    match inv.adjoint_class {
        Some(c) => println!("adjoint group: nilpotent of class {c}"),
        None => println!("adjoint group: not nilpotent"),
    }
    println!("adjoint abelian: {}", yes_no(adjoint_group(&b).is_abelian()));
    for kind in SeriesKind::ALL {
        let ch = chain(&b, kind);
        match ch.vanishes_at() {
            Some(k) => println!("{kind} series: vanishes at {k}"),
            None => println!("{kind} series: stabilises at {} elements", ch.stable_term().len()),
        }
    }
    if let Some(level) = inv.multipermutation_level {
        println!("multipermutation level: {level}");
    }
    println!("two-sided: {}", yes_no(inv.two_sided));
    if b.chirality() == Chirality::Left {
        println!("socle: {}", socle(&b).map_err(input)?);
        if inv.adjoint_nilpotent {
            let ok = nilpotency_bound_check(&b).map_err(input)?;
            println!("left powers within prime-power bound: {}", yes_no(ok));
        }
    }
    println!("fingerprint: {}", canonical_form(&b).fingerprint());
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn series(path: &Path, kind: SeriesKind) -> Outcome {
    let b = load(path)?.brace;
    let ch = chain(&b, kind);
    for (i, t) in ch.terms().iter().enumerate() {
        println!("{kind}[{}] = {t} ({:?})", i + 1, t.certification());
    }
    match ch.vanishes_at() {
        Some(k) => println!("vanishes at {k}"),
        None => println!("does not vanish"),
    }
    Ok(())
}

fn decompose(path: &Path) -> Outcome {
    let b = load(path)?.brace;
    let parts = match p_decomposition(&b) {
        Ok(parts) => parts,
        Err(BraceError::AdjointNotNilpotent) => {
            return Err(Failure::Verify("adjoint group is not nilpotent; no Sylow decomposition".into()))
        }
        Err(e) => return Err(input(e)),
    };
    for (p, part) in &parts {
        println!("# {p}-part, order {}", part.order());
        print!("{}", serialize_brace(part, &[]));
    }
    Ok(())
}

fn ybe(path: &Path, check: bool, export: bool) -> Outcome {
    let b = load(path)?.brace;
    let sol = solution_from_brace(&b).map_err(input)?;
    if check {
        let mut failed = Vec::new();
        match sol.check_braid() {
            Ok(()) => println!("braid: ok"),
            Err((x, y, z)) => failed.push(format!("braid fails at ({x}, {y}, {z})")),
        }
        match sol.check_involutive() {
            Ok(()) => println!("involutive: ok"),
            Err((x, y)) => failed.push(format!("r² ≠ id at ({x}, {y})")),
        }
        match sol.check_nondegenerate() {
            Ok(()) => println!("non-degenerate: ok"),
            Err(d) => failed.push(format!("degenerate: {d:?}")),
        }
        return if failed.is_empty() { Ok(()) } else { Err(Failure::Verify(failed.join("\n"))) };
    }
    if export {
        print!("{}", serialize_solution(&sol));
        return Ok(());
    }
    match multipermutation_level(&sol).map_err(input)?.level() {
        Some(m) => println!("{m}"),
        None => println!("inf"),
    }
    Ok(())
}

fn enumerate(order: usize, out: Option<PathBuf>, chirality: Chirality) -> Outcome {
    let entries = enumerate_braces(order, chirality).map_err(input)?;
    for e in &entries {
        println!("{}", e.index_line());
    }
    let dir = out.or_else(|| std::env::var_os(CATALOG_DIR_ENV).map(PathBuf::from));
    if let Some(dir) = dir {
        write_catalog(&dir, &entries).map_err(input)?;
        eprintln!("wrote {} braces to {}", entries.len(), dir.display());
    }
    Ok(())
}

fn engel_word(n: usize) -> Outcome {
    let w = word_w(n).map_err(input)?;
    let c = w.letter_counts();
    println!("W_{n} = {w}");
    println!("length {}", w.len());
    println!("A {} B {} A' {} B' {}", c.a, c.b, c.a_prime, c.b_prime);
    Ok(())
}

fn engel_witness_cmd(n: usize) -> Outcome {
    let w = engel_witness(n).map_err(input)?;
    match &w.method {
        WitnessMethod::Expansion { terms, term } => {
            println!("v_{n}: exact expansion with {terms} terms; first nonconstant term {term}")
        }
        WitnessMethod::MatrixImage { dim, seed, entry, value } => println!(
            "v_{n}: image in {dim}x{dim} matrices mod 2^61-1 (seed {seed}) differs from the identity at {entry:?}: {value}"
        ),
    }
    if w.nontrivial {
        println!("v_{n} ≠ 1");
        Ok(())
    } else {
        Err(Failure::Verify(format!("could not separate v_{n} from 1")))
    }
}

fn engel_identity(args: &[String]) -> Outcome {
    let [name, n] = args else { unreachable!("clap enforces two values") };
    if name != "z-w-t" {
        return Err(Failure::Input(format!("unknown identity `{name}` (expected z-w-t)")));
    }
    let n: usize = n.parse().map_err(|_| Failure::Input(format!("bad index `{n}`")))?;
    let mut ok = true;
    for inverse in [false, true] {
        let c = z_w_certificate(n, inverse).map_err(input)?;
        let lhs = if inverse { format!("z_{n}⁻¹ - w̄_{n} - 1") } else { format!("z_{n} - w_{n} - 1") };
        let worst = c.membership.worst.map_or("none".to_string(), |(m, a)| format!("{a} ({m})"));
        println!(
            "{lhs} ∈ T({}): {} [{:?}, {} terms, max alternations {worst}]",
            c.bound,
            if c.membership.holds { "holds" } else { "FAILS" },
            c.method,
            c.terms_computed,
        );
        ok &= c.membership.holds;
    }
    let w: QPoly = engel::compute_w(n).map_err(input)?;
    let degree = s_grading(&w).pure_degree();
    println!("w_{n} S-degree: {}", degree.map_or("mixed".to_string(), |d| d.to_string()));
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify("membership fails".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Info { file } => info(&file),
        Command::Series { file, kind } => series(&file, kind.into()),
        Command::Decompose { file } => decompose(&file),
        Command::Ybe { file, check, export, .. } => ybe(&file, check, export),
        Command::Enumerate { order, out, right } => {
            enumerate(order, out, if right { Chirality::Right } else { Chirality::Left })
        }
        Command::Engel { witness, word, identity } => match (witness, word, identity) {
            (Some(n), _, _) => engel_witness_cmd(n),
            (_, Some(n), _) => engel_word(n),
            (_, _, Some(args)) => engel_identity(&args),
            _ => unreachable!("clap requires one task"),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ybe_needs_one_mode() {
        assert!(Cli::try_parse_from(["braces", "ybe", "f"]).is_err());
        assert!(Cli::try_parse_from(["braces", "ybe", "f", "--check", "--mpl"]).is_err());
        assert!(Cli::try_parse_from(["braces", "ybe", "f", "--mpl"]).is_ok());
    }

    #[test]
    fn identity_takes_name_and_index() {
        let cli = Cli::try_parse_from(["braces", "engel", "--identity", "z-w-t", "4"]).unwrap();
        let Command::Engel { identity, .. } = cli.command else { panic!() };
        assert_eq!(identity.unwrap(), ["z-w-t", "4"]);
    }
}
