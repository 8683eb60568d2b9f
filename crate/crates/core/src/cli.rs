//! The `ndmu` command-line front end.
//!
//! Every subcommand produces a [`Report`] holding a text rendering, a JSON
//! document with the same verdicts, and an outcome. Exit status is 0 on
//! success, 1 when a verdict fails (a disagreement, a violated condition, a
//! failed fixed-point check) and 2 on usage, input or parse errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bisim::{self, Bisimilarity, SimulationPair};
use crate::error::{Error, Result};
use crate::evalgame::{self, Side};
use crate::formula::{parse, Binder, Formula};
use crate::gamecore::{GameDocument, Player};
use crate::modelfile;
use crate::polarity::{Concept, ConceptLattice, Polarity, DEFAULT_CONTEXT_BOUND};
use crate::random;
use crate::semantics::Model;
use crate::unfolding::{
    self, BoardOptions, FixpointKind, Generators, LatticeMap, UnfoldSpec, Variant,
};

#[derive(Parser, Debug)]
#[command(
    name = "ndmu",
    version,
    about = "Lattice-based modal mu-calculus toolkit"
)]
pub struct RunConfig {
    /// Output format: human-readable text or a single JSON document.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest number of objects or attributes accepted for lattice construction.
    #[arg(long, default_value_t = DEFAULT_CONTEXT_BOUND, global = true, value_parser = positive)]
    pub max_context: usize,
    #[command(subcommand)]
    pub command: Command,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and show its structure.
    Parse {
        /// Formula text, or `@path` to read it from a file.
        formula: String,
    },
    /// List the concept lattice of a model with the modal operators.
    Lattice { model: PathBuf },
    /// Evaluate a closed formula on a model.
    Eval { model: PathBuf, formula: String },
    /// Compare the evaluation game with the evaluator at every object and attribute.
    Check {
        model: Option<PathBuf>,
        formula: Option<String>,
        /// Instead of a model file, run this many random models.
        #[arg(long, value_parser = positive)]
        random: Option<usize>,
        /// Seed for `--random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve the evaluation game from one start position.
    Game {
        model: PathBuf,
        formula: String,
        /// Object or attribute to start from (default: the first object).
        #[arg(long)]
        start: Option<String>,
        /// Print the solved board as a JSON document.
        #[arg(long)]
        emit_game: bool,
    },
    /// Solve an unfolding game for the map induced by a formula with one free variable.
    Unfold {
        model: PathBuf,
        /// Formula with a free variable, e.g. "box v & q".
        #[arg(long)]
        map: String,
        /// The free variable (default: the one identifier without a valuation).
        #[arg(long)]
        var: Option<String>,
        #[arg(long, value_enum, default_value_t = GeneratorArg::Join)]
        generators: GeneratorArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = PlayerArg::Exists)]
        infinite_winner: PlayerArg,
        /// Generator index to start the emitted board from.
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Print the solved explicit board as a JSON document.
        #[arg(long)]
        emit_game: bool,
    },
    /// Check or compute simulations between two models.
    Bisim {
        model1: PathBuf,
        model2: PathBuf,
        /// Pair file with `S:` and `T:` lines.
        #[arg(long)]
        pairs: Option<PathBuf>,
        /// Check the pair file against the six conditions.
        #[arg(long)]
        check: bool,
        /// Compute the largest simulations in both directions.
        #[arg(long)]
        largest: bool,
        /// Check preservation of every formula in this corpus file.
        #[arg(long)]
        invariance: Option<PathBuf>,
    },
    /// Run a built-in fixed-point scenario and verify it by a lattice scan.
    Scenarios { model: PathBuf, which: Scenario },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    Join,
    Meet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    Gprime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlayerArg {
    Exists,
    Forall,
}

impl From<PlayerArg> for Player {
    fn from(p: PlayerArg) -> Player {
        match p {
            PlayerArg::Exists => Player::Exists,
            PlayerArg::Forall => Player::Forall,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    CoalitionExpand,
    CoalitionSharpen,
    Rough,
    Community,
}

/// Output of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    /// False when a verdict failed.
    pub ok: bool,
}

impl Report {
    fn new(text: String, json: Value, ok: bool) -> Report {
        Report { text, json, ok }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&config) {
        Ok(report) => {
            let _ = match config.format {
                Format::Text => write!(out, "{}", report.text),
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report.json).unwrap()
                ),
            };
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if config.format == Format::Json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn execute(config: &RunConfig) -> Result<Report> {
    let bound = config.max_context;
    match &config.command {
        Command::Parse { formula } => cmd_parse(&formula_text(formula)?),
        Command::Lattice { model } => cmd_lattice(&modelfile::read_model(model)?, bound),
        Command::Eval { model, formula } => {
            cmd_eval(&modelfile::read_model(model)?, &formula_text(formula)?)
        }
        Command::Check {
            model,
            formula,
            random,
            seed,
        } => match (random, model, formula) {
            (Some(n), None, None) => Ok(cmd_check_random(*n, *seed)),
            (None, Some(m), Some(f)) => cmd_check(&modelfile::read_model(m)?, &formula_text(f)?),
            _ => Err(Error::Precondition(
                "check needs either MODEL and FORMULA or --random N".into(),
            )),
        },
        Command::Game {
            model,
            formula,
            start,
            emit_game,
        } => cmd_game(
            &modelfile::read_model(model)?,
            &formula_text(formula)?,
            start.as_deref(),
            *emit_game,
        ),
        Command::Unfold {
            model,
            map,
            var,
            generators,
            variant,
            infinite_winner,
            start,
            emit_game,
        } => {
            let spec = UnfoldSpec {
                generators: match generators {
                    GeneratorArg::Join => Generators::Join,
                    GeneratorArg::Meet => Generators::Meet,
                },
                infinite_winner: (*infinite_winner).into(),
                variant: match variant {
                    VariantArg::Standard => Variant::Standard,
                    VariantArg::Gprime => Variant::AlternativeGPrime,
                },
            };
            let model = modelfile::read_model(model)?;
            cmd_unfold(&model, map, var.as_deref(), spec, *start, *emit_game, bound)
        }
        Command::Bisim {
            model1,
            model2,
            pairs,
            check,
            largest,
            invariance,
        } => cmd_bisim(
            &modelfile::read_model(model1)?,
            &modelfile::read_model(model2)?,
            pairs.as_deref(),
            *check,
            *largest,
            invariance.as_deref(),
        ),
        Command::Scenarios { model, which } => {
            cmd_scenarios(&modelfile::read_model(model)?, *which, bound)
        }
    }
}

fn formula_text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?.trim().to_string()),
        None => Ok(arg.to_string()),
    }
}

fn concept_json(p: &Polarity, c: &Concept) -> Value {
    json!({ "extent": p.object_names(c.extent), "intent": p.attribute_names(c.intent) })
}

fn player_name(p: Player) -> &'static str {
    match p {
        Player::Exists => "exists",
        Player::Forall => "forall",
    }
}

pub fn cmd_parse(text: &str) -> Result<Report> {
    let f = parse(text)?;
    let ranks = f.dependency_order().ranks();
    let mut binders = Vec::new();
    f.visit(&mut |g| {
        if let Some((b, x, _)) = g.as_binder() {
            binders.push((x.to_string(), b));
        }
    });
    let mut text = String::new();
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    writeln!(text, "formula: {f}").unwrap();
    writeln!(text, "size: {}  depth: {}", f.size(), f.depth()).unwrap();
    writeln!(
        text,
        "atoms: {}",
        if atoms.is_empty() {
            "-".into()
        } else {
            atoms.join(", ")
        }
    )
    .unwrap();
    let mut bjson = Vec::new();
    for (x, b) in &binders {
        let rank = ranks.get(x).copied();
        let priority = rank.map(|r| match b {
            Binder::Nu => 2 * r,
            Binder::Mu => 2 * r + 1,
        });
        match (rank, priority) {
            (Some(r), Some(p)) => {
                writeln!(text, "binder {x}: {} rank {r} priority {p}", b.keyword()).unwrap()
            }
            _ => writeln!(text, "binder {x}: {}", b.keyword()).unwrap(),
        }
        bjson.push(json!({ "var": x, "kind": b.keyword(), "rank": rank, "priority": priority }));
    }
    if !f.is_hygienic() {
        writeln!(text, "renamed apart: {}", f.rename_apart()).unwrap();
    }
    let json = json!({
        "formula": f.to_string(),
        "size": f.size(),
        "depth": f.depth(),
        "atoms": atoms,
        "binders": bjson,
        "hygienic": f.is_hygienic(),
    });
    Ok(Report::new(text, json, true))
}

pub fn cmd_lattice(model: &Model, bound: usize) -> Result<Report> {
    let ctx = model.context();
    let p = ctx.polarity();
    let l = ConceptLattice::with_bound(p, bound)?;
    let mut text = format!("concepts: {}\n", l.len());
    let mut rows = Vec::new();
    for (i, c) in l.concepts().iter().enumerate() {
        let bx = l.index_of(&ctx.box_op(c)?).expect("box image is a concept");
        let dx = l.index_of(&ctx.dia_op(c)?).expect("dia image is a concept");
        let atoms: Vec<&str> = model
            .valuation()
            .iter()
            .filter(|(_, v)| *v == c)
            .map(|(a, _)| a.as_str())
            .collect();
        let mut tags = Vec::new();
        if *c == l.bottom() {
            tags.push("bottom".to_string());
        }
        if *c == l.top() {
            tags.push("top".to_string());
        }
        if !atoms.is_empty() {
            tags.push(format!("val {}", atoms.join(" ")));
        }
        let tags = if tags.is_empty() {
            String::new()
        } else {
            format!("  [{}]", tags.join(", "))
        };
        writeln!(text, "c{i} {}  box -> c{bx}  dia -> c{dx}{tags}", l.show(c)).unwrap();
        let mut row = concept_json(p, c);
        row["id"] = json!(i);
        row["box"] = json!(bx);
        row["dia"] = json!(dx);
        row["atoms"] = json!(atoms);
        rows.push(row);
    }
    Ok(Report::new(text, json!({ "concepts": rows }), true))
}

fn closed_formula(model: &Model, text: &str) -> Result<Formula> {
    let f = parse(text)?;
    if let Some(a) = f
        .atoms()
        .into_iter()
        .find(|a| !model.valuation().contains_key(a))
    {
        return Err(Error::UnboundAtom(a));
    }
    Ok(f)
}

pub fn cmd_eval(model: &Model, text: &str) -> Result<Report> {
    let f = closed_formula(model, text)?;
    let p = model.context().polarity();
    let v = model.evaluate_closed(&f)?;
    let mut out = format!("formula: {f}\nvalue: {}\n", p.show(&v));
    writeln!(out, "forced by: {}", p.object_names(v.extent).join(" ")).unwrap();
    writeln!(
        out,
        "described by: {}",
        p.attribute_names(v.intent).join(" ")
    )
    .unwrap();
    let json = json!({ "formula": f.to_string(), "value": concept_json(p, &v) });
    Ok(Report::new(out, json, true))
}

pub fn cmd_check(model: &Model, text: &str) -> Result<Report> {
    let f = closed_formula(model, text)?;
    let p = model.context().polarity();
    let v = evalgame::verdicts(model, &f)?;
    let value = model.evaluate_closed(&f)?;
    let mut out = format!("formula: {f}\nvalue: {}\n", p.show(&value));
    let mut rows = Vec::new();
    let mut disagree = 0;
    let mut line =
        |name: &str, kind: &str, holds: bool, sym: (&str, &str), winner: Player, agree: bool| {
            if !agree {
                disagree += 1;
            }
            writeln!(
                out,
                "{name}  {}  {winner}-wins  {}",
                if holds { sym.0 } else { sym.1 },
                if agree { "AGREE" } else { "DISAGREE" }
            )
            .unwrap();
            rows.push(json!({
                "element": name, "kind": kind, "holds": holds,
                "game_winner": player_name(winner), "agree": agree,
            }));
        };
    for (g, &(forced, w)) in v.objects.iter().enumerate() {
        line(
            &p.objects()[g],
            "object",
            forced,
            ("⊩", "⊮"),
            w,
            forced == (w == Player::Exists),
        );
    }
    for (m, &(described, w)) in v.attributes.iter().enumerate() {
        line(
            &p.attributes()[m],
            "attribute",
            described,
            ("≻", "⊁"),
            w,
            described == (w == Player::Forall),
        );
    }
    writeln!(out, "disagreements: {disagree}").unwrap();
    let json = json!({
        "formula": f.to_string(),
        "value": concept_json(p, &value),
        "rows": rows,
        "disagreements": disagree,
    });
    Ok(Report::new(out, json, disagree == 0))
}

/// Adequacy regression on random models and formulas.
pub fn cmd_check_random(models: usize, seed: u64) -> Report {
    let mut rng = random::rng(seed);
    let atoms = random::atom_names(3);
    let (mut checked, mut mismatches) = (0usize, Vec::new());
    for _ in 0..models {
        let model = random::random_model(&mut rng, 4, 4, &atoms);
        for k in 0..20 {
            let f = if k % 3 == 0 {
                random::random_alternating_formula(&mut rng, &atoms)
            } else {
                random::random_formula(&mut rng, &atoms, random::FormulaShape::default())
            };
            checked += 1;
            let found = evalgame::adequacy_check(&model, &f).expect("random formulas are closed");
            mismatches.extend(found.into_iter().map(|m| format!("{f}: {m}")));
        }
    }
    let mut text = format!("seed: {seed}\nmodels: {models}\nformulas checked: {checked}\n");
    for m in &mismatches {
        writeln!(text, "DISAGREE {m}").unwrap();
    }
    writeln!(text, "disagreements: {}", mismatches.len()).unwrap();
    let json = json!({
        "seed": seed, "models": models, "formulas": checked,
        "disagreements": mismatches.len(), "details": mismatches,
    });
    Report::new(text, json, mismatches.is_empty())
}

fn resolve_side(model: &Model, name: Option<&str>) -> Result<Side> {
    match name {
        None => Ok(Side::Object(0)),
        Some(n) => model
            .object(n)
            .map(Side::Object)
            .or_else(|_| model.attribute(n).map(Side::Attribute)),
    }
}

pub fn cmd_game(model: &Model, text: &str, start: Option<&str>, emit: bool) -> Result<Report> {
    let f = closed_formula(model, text)?;
    let side = resolve_side(model, start)?;
    let gc = evalgame::game_check(model, &f, side)?;
    let b = gc.game.board();
    let doc = GameDocument::new(b, &gc.solution, Some(gc.start));
    let json = serde_json::to_value(&doc).expect("document serializes");
    if emit {
        let text = serde_json::to_string_pretty(&doc).expect("document serializes") + "\n";
        return Ok(Report::new(text, json, true));
    }
    let mut out = format!("formula: {f}\n");
    writeln!(out, "positions: {}  moves: {}", b.len(), b.edge_count()).unwrap();
    writeln!(out, "start: {}", b.label(gc.start)).unwrap();
    writeln!(out, "winner: {}", gc.winner).unwrap();
    writeln!(out, "play: {}", gc.witness.render(b)).unwrap();
    writeln!(out, "strategy of {}:", gc.winner).unwrap();
    for (v, t) in gc.winner_strategy() {
        writeln!(out, "  {} => {}", b.label(v), b.label(t)).unwrap();
    }
    Ok(Report::new(out, json, true))
}

/// The variable of an unfolding map: `--var`, or the single identifier of
/// the map without a valuation.
fn map_variable(model: &Model, f: &Formula, var: Option<&str>) -> Result<String> {
    if let Some(v) = var {
        return Ok(v.to_string());
    }
    let unbound: Vec<String> = f
        .atoms()
        .into_iter()
        .filter(|a| !model.valuation().contains_key(a))
        .collect();
    match unbound.as_slice() {
        [v] => Ok(v.clone()),
        [] => Err(Error::Precondition(
            "the map has no free variable; every identifier has a valuation (use --var)".into(),
        )),
        _ => Err(Error::FreeVariables(unbound)),
    }
}

pub fn cmd_unfold(
    model: &Model,
    map: &str,
    var: Option<&str>,
    spec: UnfoldSpec,
    start: usize,
    emit: bool,
    bound: usize,
) -> Result<Report> {
    spec.validate()?;
    let f = parse(map)?;
    let var = map_variable(model, &f, var)?;
    let open = f.open_var(&var);
    let free: BTreeSet<String> = open.free_vars();
    if let Some(a) = open
        .atoms()
        .into_iter()
        .find(|a| !model.valuation().contains_key(a))
    {
        return Err(Error::UnboundAtom(a));
    }
    if !free.contains(&var) {
        return Err(Error::UnknownVariable(var));
    }
    let lattice = ConceptLattice::with_bound(model.context().polarity(), bound)?;
    let lmap = LatticeMap::from_fn(lattice, model.formula_map(&open, &var))?;
    let l = lmap.lattice();
    let p = l.polarity();
    let result = unfolding::solve_unfolding_symbolic(&lmap, spec)?;
    let gens = result.generators.len();
    let opts = BoardOptions::for_size(gens);
    let board = if gens <= opts.max_generators {
        Some(unfolding::build_unfolding_board(
            &lmap,
            spec,
            start.min(gens.saturating_sub(1)),
            opts,
        )?)
    } else {
        None
    };
    if emit {
        let b = board.ok_or(Error::SizeBound {
            what: "generator set",
            limit: opts.max_generators,
            actual: gens,
        })?;
        let doc = GameDocument::new(&b.board, &b.solve(), Some(b.start));
        let text = serde_json::to_string_pretty(&doc).expect("document serializes") + "\n";
        return Ok(Report::new(text, serde_json::to_value(&doc).unwrap(), true));
    }
    let (expected_kind, expected) = match (spec.variant, spec.expected_fixpoint()) {
        (Variant::AlternativeGPrime, _) | (_, FixpointKind::Least) => ("lfp", lmap.lfp()?),
        (_, FixpointKind::Greatest) => ("gfp", lmap.gfp()?),
    };
    let owner = match spec.variant {
        Variant::Standard => spec.generator_owner(),
        Variant::AlternativeGPrime => Player::Exists,
    };
    let mut out = format!("map: {f}  (variable {var})\n");
    writeln!(
        out,
        "game: {} generators, infinite plays won by {}, {}",
        match spec.generators {
            Generators::Join => "join",
            Generators::Meet => "meet",
        },
        spec.infinite_winner,
        match spec.variant {
            Variant::Standard => "standard",
            Variant::AlternativeGPrime => "G'",
        }
    )
    .unwrap();
    let mut gen_rows = Vec::new();
    for (g, &won) in result.generators.iter().zip(&result.owner_wins) {
        let winner = if won { owner } else { owner.opponent() };
        writeln!(out, "  {}  {winner}", l.show(g)).unwrap();
        let mut row = concept_json(p, g);
        row["winner"] = json!(player_name(winner));
        gen_rows.push(row);
    }
    let matches = result.fixpoint == expected;
    writeln!(out, "fixpoint: {}", l.show(&result.fixpoint)).unwrap();
    writeln!(
        out,
        "{expected_kind}: {}  {}",
        l.show(&expected),
        if matches { "MATCH" } else { "MISMATCH" }
    )
    .unwrap();
    let mut explicit_agrees = Value::Null;
    if let Some(b) = &board {
        let agrees = b.result(l) == result;
        writeln!(
            out,
            "explicit board: {} positions, {}",
            b.board.len(),
            if agrees { "agrees" } else { "DISAGREES" }
        )
        .unwrap();
        explicit_agrees = json!(agrees);
    }
    let ok = matches && explicit_agrees != json!(false);
    let json = json!({
        "map": f.to_string(),
        "variable": var,
        "generators": gen_rows,
        "fixpoint": concept_json(p, &result.fixpoint),
        "expected": { "kind": expected_kind, "concept": concept_json(p, &expected) },
        "matches": matches,
        "explicit_agrees": explicit_agrees,
    });
    Ok(Report::new(out, json, ok))
}

fn relation_names(r: &crate::polarity::Relation, rows: &[String], cols: &[String]) -> Vec<String> {
    r.pairs()
        .map(|(i, j)| format!("{} {}", rows[i], cols[j]))
        .collect()
}

fn pair_json(pair: &SimulationPair, m1: &Model, m2: &Model) -> Value {
    let (p1, p2) = (m1.context().polarity(), m2.context().polarity());
    json!({
        "S": relation_names(&pair.s, p1.objects(), p2.objects()),
        "T": relation_names(&pair.t, p1.attributes(), p2.attributes()),
    })
}

pub fn cmd_bisim(
    m1: &Model,
    m2: &Model,
    pairs: Option<&Path>,
    check: bool,
    largest: bool,
    invariance: Option<&Path>,
) -> Result<Report> {
    let explicit = match pairs {
        Some(path) => Some(modelfile::parse_pairs(
            &std::fs::read_to_string(path)?,
            m1,
            m2,
        )?),
        None => None,
    };
    if check && explicit.is_none() {
        return Err(Error::Precondition("--check needs --pairs".into()));
    }
    let largest = largest || !(check || invariance.is_some());
    let mut out = String::new();
    let mut doc = serde_json::Map::new();
    let mut ok = true;
    if check {
        let p = explicit.as_ref().expect("checked above");
        let violations = bisim::check_simulation(m1, m2, p)?;
        writeln!(out, "simulation check: {} violation(s)", violations.len()).unwrap();
        for v in &violations {
            writeln!(out, "  {v}").unwrap();
        }
        ok &= violations.is_empty();
        doc.insert(
            "violations".into(),
            json!(violations
                .iter()
                .map(|v| json!({ "condition": v.condition, "message": v.message }))
                .collect::<Vec<_>>()),
        );
    }
    let mut computed = None;
    if largest || (invariance.is_some() && explicit.is_none()) {
        computed = Some(Bisimilarity::compute(m1, m2)?);
    }
    if largest {
        let b = computed.as_ref().expect("computed above");
        let (p1, p2) = (m1.context().polarity(), m2.context().polarity());
        let objs: Vec<String> = b
            .object_pairs()
            .into_iter()
            .map(|(a, c)| format!("{} {}", p1.objects()[a], p2.objects()[c]))
            .collect();
        let atts: Vec<String> = b
            .attribute_pairs()
            .into_iter()
            .map(|(a, c)| format!("{} {}", p1.attributes()[a], p2.attributes()[c]))
            .collect();
        writeln!(
            out,
            "largest simulation forward:\n{}",
            indent(&modelfile::pairs_to_text(&b.forward, m1, m2))
        )
        .unwrap();
        writeln!(
            out,
            "largest simulation backward:\n{}",
            indent(&modelfile::pairs_to_text(&b.backward, m2, m1))
        )
        .unwrap();
        writeln!(out, "bisimilar objects: {}", objs.join("; ")).unwrap();
        writeln!(out, "bisimilar attributes: {}", atts.join("; ")).unwrap();
        doc.insert("forward".into(), pair_json(&b.forward, m1, m2));
        doc.insert("backward".into(), pair_json(&b.backward, m2, m1));
        doc.insert("bisimilar_objects".into(), json!(objs));
        doc.insert("bisimilar_attributes".into(), json!(atts));
    }
    if let Some(path) = invariance {
        let corpus = modelfile::parse_corpus(&std::fs::read_to_string(path)?)?;
        let pair = match &explicit {
            Some(p) => p.clone(),
            None => computed.as_ref().expect("computed above").forward.clone(),
        };
        let found = bisim::invariance_test(m1, m2, &pair, &corpus)?;
        writeln!(
            out,
            "invariance: {} formula(s), {} counterexample(s)",
            corpus.len(),
            found.len()
        )
        .unwrap();
        for c in &found {
            writeln!(out, "  {c:?}").unwrap();
        }
        ok &= found.is_empty();
        doc.insert("corpus_size".into(), json!(corpus.len()));
        doc.insert(
            "counterexamples".into(),
            json!(found.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>()),
        );
    }
    Ok(Report::new(out, Value::Object(doc), ok))
}

fn indent(s: &str) -> String {
    s.lines()
        .map(|l| format!("  {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Fixed-point formulas of a scenario with the variable `c`.
pub fn scenario_formulas(which: Scenario) -> Vec<&'static str> {
    match which {
        Scenario::CoalitionExpand => vec!["mu c. c0 | box c"],
        Scenario::CoalitionSharpen => vec!["nu c. c0 & dia c"],
        Scenario::Rough => vec!["nu c. c0 & box c", "mu c. c0 | dia c"],
        Scenario::Community => vec!["nu c. box dia c", "mu c. box dia c"],
    }
}

fn check_scenario_precondition(model: &Model, which: Scenario) -> Result<()> {
    let ctx = model.context();
    let p = ctx.polarity();
    let needs_c0 = which != Scenario::Community;
    if needs_c0 && !model.valuation().contains_key("c0") {
        return Err(Error::Precondition(
            "the scenario needs a valuation for `c0`".into(),
        ));
    }
    let incidence = p.incidence();
    match which {
        Scenario::CoalitionExpand => {
            if let Some((g, m)) = incidence.pairs().find(|&(g, m)| !ctx.rbox().contains(g, m)) {
                return Err(Error::Precondition(format!(
                    "coalition-expand needs I ⊆ Rbox: {} I {} but not {} Rbox {}",
                    p.objects()[g],
                    p.attributes()[m],
                    p.objects()[g],
                    p.attributes()[m]
                )));
            }
        }
        Scenario::CoalitionSharpen => {
            if let Some((g, m)) = incidence.pairs().find(|&(g, m)| !ctx.rdia().contains(m, g)) {
                return Err(Error::Precondition(format!(
                    "coalition-sharpen needs I ⊆ Rdia⁻¹: {} I {} but not {} Rdia {}",
                    p.objects()[g],
                    p.attributes()[m],
                    p.attributes()[m],
                    p.objects()[g]
                )));
            }
        }
        _ => {}
    }
    Ok(())
}

/// Result of checking one scenario formula against a lattice scan.
#[derive(Clone, Debug)]
pub struct ScenarioCheck {
    pub formula: String,
    pub value: Concept,
    pub is_fixpoint: bool,
    /// ν: every post-fixed point is below the value; μ: every pre-fixed
    /// point is above it.
    pub is_extremal: bool,
}

pub fn run_scenario(model: &Model, which: Scenario, bound: usize) -> Result<Vec<ScenarioCheck>> {
    check_scenario_precondition(model, which)?;
    let lattice = ConceptLattice::with_bound(model.context().polarity(), bound)?;
    let mut out = Vec::new();
    for text in scenario_formulas(which) {
        let f = parse(text)?;
        let (binder, var, body) = f.as_binder().expect("scenario formulas are binders");
        let body = body.open_var(var);
        let value = model.evaluate_closed(&f)?;
        let step = model.formula_map(&body, var);
        let is_fixpoint = step(&value)? == value;
        let mut is_extremal = true;
        for c in lattice.concepts() {
            let image = step(c)?;
            is_extremal &= match binder {
                Binder::Nu => !c.leq(&image) || c.leq(&value),
                Binder::Mu => !image.leq(c) || value.leq(c),
            };
        }
        out.push(ScenarioCheck {
            formula: f.to_string(),
            value,
            is_fixpoint,
            is_extremal,
        });
    }
    Ok(out)
}

pub fn cmd_scenarios(model: &Model, which: Scenario, bound: usize) -> Result<Report> {
    let checks = run_scenario(model, which, bound)?;
    let p = model.context().polarity();
    let mut out = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for c in &checks {
        let verdict = c.is_fixpoint && c.is_extremal;
        ok &= verdict;
        writeln!(out, "{}", c.formula).unwrap();
        writeln!(out, "  value: {}", p.show(&c.value)).unwrap();
        writeln!(
            out,
            "  fixed point: {}",
            if c.is_fixpoint { "yes" } else { "NO" }
        )
        .unwrap();
        writeln!(
            out,
            "  extremal in lattice scan: {}",
            if c.is_extremal { "yes" } else { "NO" }
        )
        .unwrap();
        let mut row = concept_json(p, &c.value);
        row["formula"] = json!(c.formula);
        row["fixpoint"] = json!(c.is_fixpoint);
        row["extremal"] = json!(c.is_extremal);
        rows.push(row);
    }
    writeln!(out, "verdict: {}", if ok { "PASS" } else { "FAIL" }).unwrap();
    Ok(Report::new(out, json!({ "results": rows, "pass": ok }), ok))
}
