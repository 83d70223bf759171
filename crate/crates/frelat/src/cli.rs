//! Command-line interface: argument definitions and command runners.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use frelat_core::approx::diagnose_with_threshold;
use frelat_core::dual::{build_dual_lattice, dual_enumerate_reducts, dual_is_consistent, DualFreInstance};
use frelat_core::{
    approximate_by_reduct, build_concept_lattice, enumerate_reducts, find_feasible_reducts,
    is_consistent, pessimistic_approximation, ConceptLattice, FreInstance, FuzzySet, Matrix,
    SolutionSet,
};
use serde_json::{json, Value};

use crate::dot::to_dot;
use crate::error::{exit, CliError};
use crate::problem::{Problem, ProblemFile, TripleSpec};
use crate::report::{gaps, DiagnosisJson, SolutionSetJson};

#[derive(Debug, Parser)]
#[command(name = "frelat", version, about = "Solve, reduce and repair fuzzy relation equations on [0,1]_n")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a problem file and verify its triples.
    Check { file: PathBuf },
    /// Decide solvability; report the maximum solution and the solution set.
    Solve {
        file: PathBuf,
        /// List every solution.
        #[arg(long)]
        enumerate: bool,
        /// Refuse to enumerate more than this many solutions per part.
        #[arg(long, default_value_t = 100_000)]
        max_count: u64,
    },
    /// List the reducts, or test whether `--set` is consistent.
    Reducts {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<String>>,
    },
    /// Write the system restricted to `--set`.
    Reduce {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        /// Allow a set that is not consistent.
        #[arg(long)]
        force: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Feasible reducts, repaired right-hand sides and a diagnosis.
    Approximate {
        file: PathBuf,
        /// Replace the right-hand side by its interior instead.
        #[arg(long)]
        pessimistic: bool,
        /// Deviations above this many steps are reported as notable.
        #[arg(long, default_value_t = 1)]
        threshold: u32,
    },
    /// Print the concept lattice of the associated context.
    Lattice {
        file: PathBuf,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
        /// Include intents in node labels.
        #[arg(long)]
        intents: bool,
        /// Restrict the context first.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<String>>,
    },
    /// Solve by exhaustive search and compare with the analytic solver.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

/// What a command produced: text for humans, JSON for machines, an exit
/// code for both.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, code: exit::OK }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n"
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Check { file } => check(file),
        Command::Solve { file, enumerate, max_count } => solve(file, *enumerate, *max_count),
        Command::Reducts { file, set } => reducts(file, set.as_deref()),
        Command::Reduce { file, set, force, output } => reduce(file, set, *force, output.as_ref()),
        Command::Approximate { file, pessimistic, threshold } => approximate(file, *pessimistic, *threshold),
        Command::Lattice { file, dot, intents, set } => lattice(file, *dot, *intents, set.as_deref()),
        Command::Oracle { file, budget } => oracle(file, *budget),
    };
    result.unwrap_or_else(|e| Outcome {
        text: format!("error: {e}\n"),
        json: json!({ "error": e.to_string() }),
        code: e.exit_code(),
    })
}

fn load(file: &Path) -> Result<(ProblemFile, Problem), CliError> {
    let parsed = ProblemFile::read(file)?;
    let problem = parsed.to_problem()?;
    Ok((parsed, problem))
}

fn show(n: u32, levels: &[u32]) -> String {
    FuzzySet::from_levels(n, levels.to_vec())
        .expect("levels within range")
        .to_string()
}

fn resolve(names: &[String], wanted: &[String], what: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for w in wanted {
        let w = w.trim();
        let index = names
            .iter()
            .position(|n| n == w)
            .ok_or_else(|| CliError::Input(format!("unknown {what} `{w}`")))?;
        out.push(index);
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(CliError::Input(format!("empty {what} set")));
    }
    Ok(out)
}

fn named(names: &[String], indices: &[usize]) -> Vec<String> {
    indices.iter().map(|&i| names[i].clone()).collect()
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn plural(count: usize, noun: &str) -> String {
    format!("{count} {noun}{}", if count == 1 { "" } else { "s" })
}

fn check(file: &Path) -> Result<Outcome, CliError> {
    let (parsed, problem) = load(file)?;
    let frame = problem.frame();
    let triples: Vec<String> = frame.triples().iter().map(|t| t.name().to_string()).collect();
    let tables = parsed
        .triples
        .iter()
        .filter(|t| matches!(t, TripleSpec::Table { .. }))
        .count();
    let (orientation, rows, unknowns, columns) = match &problem {
        Problem::Primal(p) => ("primal", p.rows().len(), p.unknowns().len(), p.columns().len()),
        Problem::Dual(d) => ("dual", d.rows().len(), d.unknowns().len(), d.columns().len()),
    };
    let mut text = format!(
        "valid: {} triple{} verified on [0,1]_{} ({})\n",
        triples.len(),
        if triples.len() == 1 { "" } else { "s" },
        frame.granularity(),
        triples.join(", ")
    );
    if tables > 0 {
        writeln!(text, "{tables} supplied as explicit tables").unwrap();
    }
    writeln!(
        text,
        "{orientation} system: {}, {}, {}",
        plural(rows, "row"),
        plural(unknowns, "unknown"),
        plural(columns, "column")
    )
    .unwrap();
    Ok(Outcome::ok(
        text,
        json!({
            "valid": true,
            "granularity": frame.granularity(),
            "triples": triples,
            "orientation": orientation,
            "rows": rows,
            "unknowns": unknowns,
            "columns": columns,
        }),
    ))
}

struct Labels<'a> {
    /// Names along each solution vector.
    parts: &'a [String],
    /// What each independent part is called.
    part_kind: &'static str,
    /// Names of the equations inside a part.
    equations: &'a [String],
}

fn labels_of(problem: &Problem) -> Labels<'_> {
    match problem {
        Problem::Primal(p) => Labels {
            parts: p.columns(),
            part_kind: "column",
            equations: p.rows(),
        },
        Problem::Dual(d) => Labels {
            parts: d.rows(),
            part_kind: "row",
            equations: d.columns(),
        },
    }
}

fn solution_set(problem: &Problem, materialize: bool) -> Result<SolutionSet, frelat_core::Error> {
    match problem {
        Problem::Primal(p) => p.enumerate_solutions(materialize),
        Problem::Dual(d) => d.solutions(materialize),
    }
}

fn solve(file: &Path, enumerate: bool, max_count: u64) -> Result<Outcome, CliError> {
    let (_, problem) = load(file)?;
    let n = problem.frame().granularity();
    let labels = labels_of(&problem);
    let summary = match solution_set(&problem, false) {
        Ok(set) => set,
        Err(frelat_core::Error::Unsolvable(list)) => {
            let mut text = String::from("solvable: no\n");
            for gap in &list {
                writeln!(
                    text,
                    "{} {}: the right-hand side is not reproduced by its interior",
                    labels.part_kind, labels.parts[gap.column]
                )
                .unwrap();
                for &(eq, rhs, interior) in &gap.entries {
                    writeln!(
                        text,
                        "  {}: rhs {} but interior {}",
                        labels.equations[eq],
                        show(n, &[rhs]).trim_matches(|c| c == '(' || c == ')'),
                        show(n, &[interior]).trim_matches(|c| c == '(' || c == ')')
                    )
                    .unwrap();
                }
            }
            return Ok(Outcome {
                text,
                json: json!({ "solvable": false, "gaps": gaps(&list) }),
                code: exit::UNSOLVABLE,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let set = if enumerate {
        if let Some(big) = summary.parts.iter().find(|p| p.count > u128::from(max_count)) {
            return Err(CliError::Budget {
                candidates: big.count,
                budget: u128::from(max_count),
            });
        }
        solution_set(&problem, true)?
    } else {
        summary
    };
    let mut text = String::from("solvable: yes\n");
    for (i, part) in set.parts.iter().enumerate() {
        writeln!(text, "{} {}:", labels.part_kind, labels.parts[i]).unwrap();
        writeln!(text, "  maximum solution: {}", part.max_solution).unwrap();
        let preds: Vec<String> = part.excluded_predecessors.iter().map(|p| p.to_string()).collect();
        writeln!(
            text,
            "  excluded predecessors: {}",
            if preds.is_empty() { "none".into() } else { preds.join(" ") }
        )
        .unwrap();
        for m in part.minimal_solutions() {
            writeln!(text, "  minimal solution: {m}").unwrap();
        }
        writeln!(text, "  solutions: {}", part.count).unwrap();
        if let Some(list) = &part.enumerated {
            for s in list {
                writeln!(text, "    {s}").unwrap();
            }
        }
    }
    writeln!(text, "total solutions: {}", set.count()).unwrap();
    Ok(Outcome::ok(
        text,
        json!({ "solvable": true, "solutions": SolutionSetJson::from(&set) }),
    ))
}

fn reducts(file: &Path, set: Option<&[String]>) -> Result<Outcome, CliError> {
    let (_, problem) = load(file)?;
    let (names, what, found) = match &problem {
        Problem::Primal(p) => (p.rows(), "row", enumerate_reducts(p.associated_context())),
        Problem::Dual(d) => (d.columns(), "column", dual_enumerate_reducts(d.context())),
    };
    if let Some(wanted) = set {
        let keep = resolve(names, wanted, what)?;
        let consistent = match &problem {
            Problem::Primal(p) => is_consistent(p.associated_context(), &keep)?,
            Problem::Dual(d) => dual_is_consistent(d.context(), &keep)?,
        };
        let is_reduct = found.contains(&keep);
        let shown = braces(&named(names, &keep));
        let verdict = match (consistent, is_reduct) {
            (true, true) => "consistent and a reduct",
            (true, false) => "consistent but not minimal",
            _ => "not consistent",
        };
        return Ok(Outcome::ok(
            format!("{shown}: {verdict}\n"),
            json!({ "set": named(names, &keep), "consistent": consistent, "reduct": is_reduct }),
        ));
    }
    let listed: Vec<Vec<String>> = found.iter().map(|r| named(names, r)).collect();
    let mut text = format!("{} reduct{}:\n", listed.len(), if listed.len() == 1 { "" } else { "s" });
    for r in &listed {
        writeln!(text, "  {}", braces(r)).unwrap();
    }
    Ok(Outcome::ok(text, json!({ "reducts": listed })))
}

fn reduce(file: &Path, set: &[String], force: bool, output: Option<&PathBuf>) -> Result<Outcome, CliError> {
    let (_, problem) = load(file)?;
    let reduced = match &problem {
        Problem::Primal(p) => {
            let keep = resolve(p.rows(), set, "row")?;
            if !force && !is_consistent(p.associated_context(), &keep)? {
                return Err(CliError::Input(format!(
                    "{} is not a consistent set; pass --force to reduce anyway",
                    braces(&named(p.rows(), &keep))
                )));
            }
            Problem::Primal(p.reduce(&keep, false)?)
        }
        Problem::Dual(d) => {
            let keep = resolve(d.columns(), set, "column")?;
            if !force && !dual_is_consistent(d.context(), &keep)? {
                return Err(CliError::Input(format!(
                    "{} is not a consistent set; pass --force to reduce anyway",
                    braces(&named(d.columns(), &keep))
                )));
            }
            Problem::Dual(d.reduce(&keep)?)
        }
    };
    let file_text = ProblemFile::from_problem(&reduced).to_json() + "\n";
    match output {
        Some(path) => {
            std::fs::write(path, &file_text)?;
            Ok(Outcome::ok(
                format!("wrote {}\n", path.display()),
                json!({ "written": path.display().to_string() }),
            ))
        }
        None => {
            let value: Value = serde_json::from_str(&file_text)?;
            Ok(Outcome::ok(file_text, value))
        }
    }
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_rows())
}

fn show_matrix(m: &Matrix, row_names: &[String]) -> String {
    let mut text = String::new();
    for (r, name) in row_names.iter().enumerate() {
        writeln!(text, "  {name}: {}", m.row(r)).unwrap();
    }
    text
}

fn approximate(file: &Path, pessimistic: bool, threshold: u32) -> Result<Outcome, CliError> {
    let (_, problem) = load(file)?;
    match &problem {
        Problem::Primal(p) => approximate_primal(p, pessimistic, threshold),
        Problem::Dual(d) => approximate_dual(d, pessimistic),
    }
}

fn approximate_primal(fre: &FreInstance, pessimistic: bool, threshold: u32) -> Result<Outcome, CliError> {
    if pessimistic {
        let lowered = pessimistic_approximation(fre);
        let text = format!("pessimistic right-hand side:\n{}", show_matrix(&lowered, fre.rows()));
        return Ok(Outcome::ok(text, json!({ "pessimistic_rhs": matrix_json(&lowered) })));
    }
    let diagnosis = diagnose_with_threshold(fre, threshold);
    let mut text = String::new();
    let mut repairs = Vec::new();
    if !fre.is_solvable() {
        let feasible = find_feasible_reducts(fre);
        if feasible.is_empty() {
            text.push_str("no feasible reduct\n");
        }
        for keep in &feasible {
            let result = approximate_by_reduct(fre, keep)?;
            writeln!(text, "feasible reduct {}", braces(&named(fre.rows(), keep))).unwrap();
            writeln!(text, "repaired right-hand side:").unwrap();
            text.push_str(&show_matrix(&result.t_star, fre.rows()));
            writeln!(
                text,
                "repaired system: maximum solution {}, {} solutions",
                result.solution_summary.max_solution().transpose().row(0),
                result.solution_summary.count()
            )
            .unwrap();
            repairs.push(json!({
                "reduct": named(fre.rows(), keep),
                "t_star": matrix_json(&result.t_star),
                "solutions": SolutionSetJson::from(&result.solution_summary),
            }));
        }
    }
    text.push_str(&diagnosis.to_string());
    Ok(Outcome::ok(
        text,
        json!({
            "solvable": fre.is_solvable(),
            "repairs": repairs,
            "diagnosis": DiagnosisJson::from(&diagnosis),
        }),
    ))
}

fn approximate_dual(fre: &DualFreInstance, pessimistic: bool) -> Result<Outcome, CliError> {
    if pessimistic {
        let lowered = fre.interior();
        let text = format!("pessimistic right-hand side:\n{}", show_matrix(&lowered, fre.rows()));
        return Ok(Outcome::ok(text, json!({ "pessimistic_rhs": matrix_json(&lowered) })));
    }
    if fre.is_solvable() {
        return Ok(Outcome::ok(
            "The system is solvable: no incoherence detected.\n".into(),
            json!({ "solvable": true, "repairs": [] }),
        ));
    }
    let feasible = fre.find_feasible_reducts();
    let mut text = String::from("The system is unsolvable.\n");
    if feasible.is_empty() {
        text.push_str("No feasible reduct exists, so no reduct-based repair is available.\n");
    }
    let mut repairs = Vec::new();
    for keep in &feasible {
        let result = fre.approximate(keep)?;
        writeln!(text, "feasible reduct {}", braces(&named(fre.columns(), keep))).unwrap();
        text.push_str(&show_matrix(&result.t_star, fre.rows()));
        for &(u, w, old, new) in &result.modified_entries {
            writeln!(
                text,
                "  {} [{}]: {} -> {} ({} step{})",
                fre.rows()[u],
                fre.columns()[w],
                show(fre.granularity(), &[old]).trim_matches(|c| c == '(' || c == ')'),
                show(fre.granularity(), &[new]).trim_matches(|c| c == '(' || c == ')'),
                old.abs_diff(new),
                if old.abs_diff(new) == 1 { "" } else { "s" }
            )
            .unwrap();
        }
        repairs.push(json!({
            "reduct": named(fre.columns(), keep),
            "t_star": matrix_json(&result.t_star),
            "modified": result.modified_entries,
        }));
    }
    Ok(Outcome::ok(text, json!({ "solvable": false, "repairs": repairs })))
}

fn lattice(file: &Path, dot: bool, intents: bool, set: Option<&[String]>) -> Result<Outcome, CliError> {
    let (_, problem) = load(file)?;
    let lattice: ConceptLattice = match &problem {
        Problem::Primal(p) => {
            let ctx = p.associated_context();
            match set {
                Some(wanted) => build_concept_lattice(&ctx.restrict(&resolve(p.rows(), wanted, "row")?)?),
                None => build_concept_lattice(ctx),
            }
        }
        Problem::Dual(d) => {
            let ctx = d.context();
            match set {
                Some(wanted) => {
                    build_dual_lattice(&ctx.restrict_objects(&resolve(d.columns(), wanted, "column")?)?)
                }
                None => build_dual_lattice(ctx),
            }
        }
    };
    let concepts: Vec<Value> = lattice
        .concepts()
        .iter()
        .map(|c| json!({ "extent": c.extent.levels(), "intent": c.intent.levels() }))
        .collect();
    let value = json!({ "concepts": concepts, "covers": lattice.covers() });
    if dot {
        return Ok(Outcome::ok(to_dot(&lattice, intents), value));
    }
    let mut text = format!("{} concepts, {} covers\n", lattice.len(), lattice.covers().len());
    for c in lattice.concepts() {
        if intents {
            writeln!(text, "  {} | {}", c.extent, c.intent).unwrap();
        } else {
            writeln!(text, "  {}", c.extent).unwrap();
        }
    }
    Ok(Outcome::ok(text, value))
}

fn oracle(file: &Path, budget: u64) -> Result<Outcome, CliError> {
    let (_, problem) = load(file)?;
    let budget = u128::from(budget);
    let brute: BTreeSet<Vec<u32>> = match &problem {
        Problem::Primal(p) => p.brute_force_solutions(budget)?,
        Problem::Dual(d) => d.brute_force_solutions(budget)?,
    }
    .into_iter()
    .map(|m| m.levels().to_vec())
    .collect();
    let analytic: BTreeSet<Vec<u32>> = match solution_set(&problem, true) {
        Ok(set) => set
            .matrices()
            .expect("materialized")
            .into_iter()
            .map(|m| m.levels().to_vec())
            .collect(),
        Err(frelat_core::Error::Unsolvable(_)) => BTreeSet::new(),
        Err(e) => return Err(e.into()),
    };
    let matched = brute == analytic;
    let text = if matched {
        format!("MATCH ({} solutions)\n", brute.len())
    } else {
        format!(
            "MISMATCH (exhaustive {}, analytic {}, only exhaustive {}, only analytic {})\n",
            brute.len(),
            analytic.len(),
            brute.difference(&analytic).count(),
            analytic.difference(&brute).count()
        )
    };
    Ok(Outcome {
        text,
        json: json!({ "match": matched, "exhaustive": brute.len(), "analytic": analytic.len() }),
        code: if matched { exit::OK } else { exit::UNSOLVABLE },
    })
}
