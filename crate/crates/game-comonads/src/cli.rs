//! The command-line surface: parse a structure file, dispatch one command,
//! print a deterministic report.
//!
//! Exit codes: 0 relation holds / check ok, 1 relation fails / violation
//! found, 2 usage or parse error, 3 unsupported query, 4 resource budget
//! exceeded.

use std::collections::BTreeMap;
use std::io::Write;

use crate::comonad::{
    coalgebra_number, modal_coalgebra_number, try_ef_build, try_modal_build, CoverKind,
};
use crate::dot::{forest_dot, game_dot};
use crate::equivalence::{
    relate, relate_pointed, solve_pebble_game, trace_pebble_game, Flavor, GameComonad,
    RelationQuery, DEFAULT_BUDGET,
};
use crate::error::Error;
use crate::forest::{validate_object, ForestStructure};
use crate::game::{
    build_span, check_bisimulation_span, extract_bf_system, solve_game, trace_game, Variant,
};
use crate::oracle::{modal_depth_oracle, tree_depth, tree_width};
use crate::parse::{emit, parse_input, ForestDecl, InputDocument};
use crate::structure::{validate_structure, PointedStructure, Structure};

const USAGE: &str = "usage: game-comonads COMMAND [OPTIONS] FILE ...
commands:
  check FILE
  equiv --comonad ef|pebble|modal --k K --flavor arrow|hom|strong|bisim|iso [--eq] [--budget N] FILE A B
  param --kind tree-depth|tree-width|modal-depth FILE A
  game --comonad ef|pebble|modal --k K [--variant g|e|ep] [--trace] [--dot FILE] [--budget N] FILE A B
  materialize --comonad ef|modal --k K [--dot FILE] [--budget N] FILE A
  span --k K [--comonad ef|modal] [--dot FILE] [--budget N] FILE A B
exit codes: 0 holds/ok, 1 fails/violation, 2 usage or parse error, 3 unsupported query, 4 budget exceeded";

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedQuery(_) => 3,
        Error::BudgetExceeded { .. } => 4,
        _ => 2,
    }
}

struct Parsed {
    positional: Vec<String>,
    values: BTreeMap<String, String>,
    switches: Vec<String>,
}

fn scan_args(args: &[String], value_flags: &[&str], switch_flags: &[&str]) -> Result<Parsed, String> {
    let mut parsed = Parsed { positional: Vec::new(), values: BTreeMap::new(), switches: Vec::new() };
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        if let Some(name) = arg.strip_prefix("--") {
            if switch_flags.contains(&name) {
                parsed.switches.push(name.to_string());
            } else if value_flags.contains(&name) {
                i += 1;
                let value = args.get(i).ok_or_else(|| format!("--{name} needs a value"))?;
                parsed.values.insert(name.to_string(), value.clone());
            } else {
                return Err(format!("unknown option --{name}"));
            }
        } else {
            parsed.positional.push(arg.clone());
        }
        i += 1;
    }
    Ok(parsed)
}

fn load(path: &str) -> Result<InputDocument, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
    parse_input(&text)
}

fn named<'d>(doc: &'d InputDocument, name: &str) -> Result<&'d Structure, Error> {
    doc.structure(name)
        .ok_or_else(|| Error::InvalidInput(format!("no structure named {name}")))
}

fn pointed(doc: &InputDocument, name: &str) -> Result<PointedStructure, Error> {
    let s = named(doc, name)?;
    let point = doc
        .point_of(name)
        .ok_or_else(|| Error::InvalidInput(format!("no point declared for {name}")))?;
    PointedStructure::new(s.clone(), point)
}

fn parse_budget(p: &Parsed) -> Result<usize, String> {
    match p.values.get("budget") {
        Some(v) => v.parse::<usize>().map_err(|_| format!("bad budget: {v}")),
        None => Ok(DEFAULT_BUDGET),
    }
}

fn write_dot(p: &Parsed, content: &str) -> Result<(), Error> {
    if let Some(path) = p.values.get("dot") {
        std::fs::write(path, content)
            .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))?;
    }
    Ok(())
}

pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    match run_inner(args, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            let _ = writeln!(out, "{USAGE}");
            2
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(out, "error: {e}");
            exit_code(&e)
        }
    }
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Usage(s)
    }
}

fn run_inner(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let Some(command) = args.first() else {
        return Err(CliError::Usage("no command".to_string()));
    };
    let rest = &args[1..];
    match command.as_str() {
        "check" => cmd_check(rest, out),
        "equiv" => cmd_equiv(rest, out),
        "param" => cmd_param(rest, out),
        "game" => cmd_game(rest, out),
        "materialize" => cmd_materialize(rest, out),
        "span" => cmd_span(rest, out),
        "help" | "--help" | "-h" => {
            let _ = writeln!(out, "{USAGE}");
            Ok(0)
        }
        other => Err(CliError::Usage(format!("unknown command {other}"))),
    }
}

fn cmd_check(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let p = scan_args(args, &[], &[])?;
    let [file] = p.positional.as_slice() else {
        return Err(CliError::Usage("check takes one file".to_string()));
    };
    let doc = load(file)?;
    let mut ok = true;
    for (name, s) in &doc.structures {
        let violations = validate_structure(s);
        if violations.is_empty() {
            let _ = writeln!(out, "structure {name}: ok");
        } else {
            ok = false;
            let _ = writeln!(out, "structure {name}: {} violation(s)", violations.len());
            for v in violations {
                let _ = writeln!(out, "  {v}");
            }
        }
    }
    for ForestDecl { name, forest, .. } in &doc.forests {
        let violations = validate_object(forest);
        if violations.is_empty() {
            let _ = writeln!(out, "forest {name}: ok (tag {}, height {})", forest.tag, forest.height());
        } else {
            ok = false;
            let _ = writeln!(out, "forest {name}: {} violation(s)", violations.len());
            for v in violations {
                let _ = writeln!(out, "  {v}");
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn parse_comonad(p: &Parsed) -> Result<GameComonad, String> {
    match p.values.get("comonad").map(String::as_str) {
        Some("ef") => Ok(GameComonad::Ef),
        Some("pebble") => Ok(GameComonad::Pebble),
        Some("modal") => Ok(GameComonad::Modal),
        Some(other) => Err(format!("unknown comonad {other}")),
        None => Err("--comonad is required".to_string()),
    }
}

fn parse_k(p: &Parsed) -> Result<usize, String> {
    match p.values.get("k") {
        Some(v) => match v.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(format!("bad resource index: {v}")),
        },
        None => Err("--k is required".to_string()),
    }
}

fn cmd_equiv(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let p = scan_args(args, &["comonad", "k", "flavor", "budget"], &["eq"])?;
    let [file, a_name, b_name] = p.positional.as_slice() else {
        return Err(CliError::Usage("equiv takes FILE A B".to_string()));
    };
    let comonad = parse_comonad(&p)?;
    let k = parse_k(&p)?;
    let flavor = match p.values.get("flavor").map(String::as_str) {
        Some("arrow") => Flavor::Arrow,
        Some("hom") => Flavor::HomEq,
        Some("strong") => Flavor::StrongEq,
        Some("bisim") => Flavor::Bisim,
        Some("iso") => Flavor::Iso,
        Some(other) => return Err(CliError::Usage(format!("unknown flavor {other}"))),
        None => return Err(CliError::Usage("--flavor is required".to_string())),
    };
    let with_eq = p.switches.iter().any(|s| s == "eq");
    let budget = parse_budget(&p)?;
    let doc = load(file)?;
    let mut query = RelationQuery::new(comonad, k, flavor).budget(budget);
    if with_eq {
        query = query.with_equality();
    }
    let holds = match comonad {
        GameComonad::Modal => {
            let pa = pointed(&doc, a_name)?;
            let pb = pointed(&doc, b_name)?;
            relate_pointed(&pa, &pb, &query)?
        }
        _ => relate(named(&doc, a_name)?, named(&doc, b_name)?, &query)?,
    };
    // Witness summary from the primary direction of the underlying game.
    match comonad {
        GameComonad::Pebble => {
            let a = named(&doc, a_name)?;
            let b = named(&doc, b_name)?;
            let (ea, eb);
            let (a, b) = if with_eq {
                ea = crate::structure::expand_identity(a)?;
                eb = crate::structure::expand_identity(b)?;
                (&ea, &eb)
            } else {
                (a, b)
            };
            let variant = match flavor {
                Flavor::Bisim => Variant::Full,
                Flavor::StrongEq => Variant::Existential,
                _ => Variant::ExistentialPositive,
            };
            let outcome = solve_pebble_game(a, b, k, variant, budget)?;
            let _ = writeln!(
                out,
                "placement game: {} winning of {} positions",
                outcome.winning_positions, outcome.total_positions
            );
        }
        GameComonad::Ef => {
            let a = named(&doc, a_name)?;
            let b = named(&doc, b_name)?;
            let (ea, eb);
            let (a, b) = if with_eq {
                ea = crate::structure::expand_identity(a)?;
                eb = crate::structure::expand_identity(b)?;
                (&ea, &eb)
            } else {
                (a, b)
            };
            let ca = try_ef_build(a, k, budget)?;
            let cb = try_ef_build(b, k, budget)?;
            let _ = writeln!(out, "carriers: {} and {} plays", ca.plays.len(), cb.plays.len());
            if flavor != Flavor::Iso {
                let variant = match flavor {
                    Flavor::Bisim => Variant::Full,
                    Flavor::StrongEq => Variant::Existential,
                    _ => Variant::ExistentialPositive,
                };
                let region = solve_game(&ca.carrier, &cb.carrier, variant)?;
                let _ = writeln!(out, "winning region: {} positions", region.positions.len());
            }
        }
        GameComonad::Modal => {
            let pa = pointed(&doc, a_name)?;
            let pb = pointed(&doc, b_name)?;
            let (pa, pb) = if with_eq {
                (
                    PointedStructure::new(crate::structure::expand_identity(&pa.base)?, pa.point)?,
                    PointedStructure::new(crate::structure::expand_identity(&pb.base)?, pb.point)?,
                )
            } else {
                (pa, pb)
            };
            let ca = try_modal_build(&pa, k, budget)?;
            let cb = try_modal_build(&pb, k, budget)?;
            let _ = writeln!(out, "carriers: {} and {} traces", ca.traces.len(), cb.traces.len());
            if flavor != Flavor::Iso {
                let variant = match flavor {
                    Flavor::Bisim => Variant::Full,
                    Flavor::StrongEq => Variant::Existential,
                    _ => Variant::ExistentialPositive,
                };
                let region = solve_game(&ca.carrier, &cb.carrier, variant)?;
                let _ = writeln!(out, "winning region: {} positions", region.positions.len());
            }
        }
    }
    let _ = writeln!(out, "{}", if holds { "holds" } else { "fails" });
    Ok(if holds { 0 } else { 1 })
}

fn cmd_param(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let p = scan_args(args, &["kind"], &[])?;
    let [file, a_name] = p.positional.as_slice() else {
        return Err(CliError::Usage("param takes FILE A".to_string()));
    };
    let doc = load(file)?;
    let kind = p
        .values
        .get("kind")
        .ok_or_else(|| CliError::Usage("--kind is required".to_string()))?;
    let show = |v: Option<usize>| v.map_or("none".to_string(), |k| k.to_string());
    let (search, oracle, note) = match kind.as_str() {
        "tree-depth" => {
            let a = named(&doc, a_name)?;
            let cap = a.size().max(1);
            let search = coalgebra_number(a, CoverKind::Ef, cap);
            let oracle = Some(tree_depth(a));
            (search, oracle, String::new())
        }
        "tree-width" => {
            let a = named(&doc, a_name)?;
            let cap = a.size().max(1);
            let search = coalgebra_number(a, CoverKind::Pebble, cap);
            let tw = tree_width(a);
            // The coalgebra number sits one above the width itself.
            (search, Some((tw + 1) as usize), format!(" (tree-width {tw})"))
        }
        "modal-depth" => {
            let pa = pointed(&doc, a_name)?;
            let cap = pa.base.size().max(1);
            let search = modal_coalgebra_number(&pa, cap);
            let oracle = modal_depth_oracle(&pa);
            (search, oracle, String::new())
        }
        other => return Err(CliError::Usage(format!("unknown kind {other}"))),
    };
    let agree = search == oracle;
    let _ = writeln!(
        out,
        "{kind} {a_name}: search={} oracle={}{note} -> {}",
        show(search),
        show(oracle),
        if agree { "agree" } else { "MISMATCH" }
    );
    Ok(if agree { 0 } else { 1 })
}

fn cmd_game(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let p = scan_args(args, &["comonad", "k", "variant", "dot", "budget"], &["trace"])?;
    let [file, a_name, b_name] = p.positional.as_slice() else {
        return Err(CliError::Usage("game takes FILE A B".to_string()));
    };
    let comonad = parse_comonad(&p)?;
    let k = parse_k(&p)?;
    let variant = match p.values.get("variant").map(String::as_str) {
        None | Some("g") => Variant::Full,
        Some("e") => Variant::Existential,
        Some("ep") => Variant::ExistentialPositive,
        Some(other) => return Err(CliError::Usage(format!("unknown variant {other}"))),
    };
    let budget = parse_budget(&p)?;
    let trace = p.switches.iter().any(|s| s == "trace");
    let doc = load(file)?;
    match comonad {
        GameComonad::Pebble => {
            if p.values.contains_key("dot") {
                return Err(CliError::Usage("dot output supports ef and modal games".to_string()));
            }
            let a = named(&doc, a_name)?;
            let b = named(&doc, b_name)?;
            let outcome = solve_pebble_game(a, b, k, variant, budget)?;
            let _ = writeln!(
                out,
                "placement game: {} winning of {} positions",
                outcome.winning_positions, outcome.total_positions
            );
            if trace {
                let _ = write!(out, "{}", trace_pebble_game(a, b, k, variant, budget)?);
            }
            let _ = writeln!(out, "duplicator {}", if outcome.duplicator_wins { "wins" } else { "loses" });
            Ok(if outcome.duplicator_wins { 0 } else { 1 })
        }
        _ => {
            let (ca, cb): (ForestStructure, ForestStructure) = match comonad {
                GameComonad::Ef => {
                    let a = named(&doc, a_name)?;
                    let b = named(&doc, b_name)?;
                    (
                        try_ef_build(a, k, budget)?.carrier,
                        try_ef_build(b, k, budget)?.carrier,
                    )
                }
                GameComonad::Modal => {
                    let pa = pointed(&doc, a_name)?;
                    let pb = pointed(&doc, b_name)?;
                    (
                        try_modal_build(&pa, k, budget)?.carrier,
                        try_modal_build(&pb, k, budget)?.carrier,
                    )
                }
                GameComonad::Pebble => unreachable!(),
            };
            let region = solve_game(&ca, &cb, variant)?;
            let _ = writeln!(
                out,
                "carriers: {} and {} nodes; winning region: {} positions",
                ca.size(),
                cb.size(),
                region.positions.len()
            );
            if trace {
                let _ = write!(out, "{}", trace_game(&ca, &cb, &region));
            }
            write_dot(&p, &game_dot(&ca, &cb, &region, "game"))?;
            let _ = writeln!(out, "duplicator {}", if region.duplicator_wins { "wins" } else { "loses" });
            Ok(if region.duplicator_wins { 0 } else { 1 })
        }
    }
}

fn cmd_materialize(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let p = scan_args(args, &["comonad", "k", "dot", "budget"], &[])?;
    let [file, a_name] = p.positional.as_slice() else {
        return Err(CliError::Usage("materialize takes FILE A".to_string()));
    };
    let comonad = parse_comonad(&p)?;
    let k = parse_k(&p)?;
    let budget = parse_budget(&p)?;
    let doc = load(file)?;
    let (carrier, suffix) = match comonad {
        GameComonad::Ef => {
            let a = named(&doc, a_name)?;
            (try_ef_build(a, k, budget)?.carrier, format!("ef{k}"))
        }
        GameComonad::Modal => {
            let pa = pointed(&doc, a_name)?;
            (try_modal_build(&pa, k, budget)?.carrier, format!("modal{k}"))
        }
        GameComonad::Pebble => {
            return Err(CliError::Lib(Error::UnsupportedQuery(
                "the pebbling carrier is infinite and never materialized".to_string(),
            )))
        }
    };
    let name = format!("{a_name}_{suffix}");
    let emitted = emit(&InputDocument {
        vocab: carrier.base.vocab().clone(),
        structures: vec![(name.clone(), carrier.base.clone())],
        forests: vec![ForestDecl {
            name: format!("{name}_order"),
            over: name.clone(),
            forest: carrier.clone(),
        }],
        points: Vec::new(),
    });
    let _ = write!(out, "{emitted}");
    write_dot(&p, &forest_dot(&carrier, &name))?;
    Ok(0)
}

fn cmd_span(args: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let p = scan_args(args, &["comonad", "k", "dot", "budget"], &[])?;
    let [file, a_name, b_name] = p.positional.as_slice() else {
        return Err(CliError::Usage("span takes FILE A B".to_string()));
    };
    let comonad = match p.values.get("comonad").map(String::as_str) {
        None | Some("ef") => GameComonad::Ef,
        Some("modal") => GameComonad::Modal,
        Some(other) => return Err(CliError::Usage(format!("span does not support comonad {other}"))),
    };
    let k = parse_k(&p)?;
    let budget = parse_budget(&p)?;
    let doc = load(file)?;
    let (ca, cb) = match comonad {
        GameComonad::Ef => (
            try_ef_build(named(&doc, a_name)?, k, budget)?.carrier,
            try_ef_build(named(&doc, b_name)?, k, budget)?.carrier,
        ),
        GameComonad::Modal => (
            try_modal_build(&pointed(&doc, a_name)?, k, budget)?.carrier,
            try_modal_build(&pointed(&doc, b_name)?, k, budget)?.carrier,
        ),
        GameComonad::Pebble => unreachable!(),
    };
    let region = solve_game(&ca, &cb, Variant::Full)?;
    if !region.duplicator_wins {
        let _ = writeln!(out, "fails: the structures are not bisimilar at k={k}");
        return Ok(1);
    }
    let system = extract_bf_system(&region, &ca, &cb)?;
    let span = build_span(&ca, &cb, &system)?;
    let verified = check_bisimulation_span(&span, &ca, &cb);
    let name = format!("span_{a_name}_{b_name}");
    let emitted = emit(&InputDocument {
        vocab: span.z.base.vocab().clone(),
        structures: vec![(name.clone(), span.z.base.clone())],
        forests: vec![ForestDecl {
            name: format!("{name}_order"),
            over: name.clone(),
            forest: span.z.clone(),
        }],
        points: Vec::new(),
    });
    let _ = writeln!(
        out,
        "# span of {} pairs; legs verified: {}",
        system.pairs.len(),
        if verified { "yes" } else { "NO" }
    );
    for e in 0..span.z.size() {
        let _ = writeln!(
            out,
            "# leg f: {} -> {}; leg g: {} -> {}",
            span.z.base.name(e),
            span.f.target.name(span.f.apply(e)),
            span.z.base.name(e),
            span.g.target.name(span.g.apply(e)),
        );
    }
    let _ = write!(out, "{emitted}");
    write_dot(&p, &forest_dot(&span.z, &name))?;
    Ok(if verified { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut buf = Vec::new();
        let code = run(&args, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    fn fixture(content: &str) -> tempfile::NamedTempFile {
        use std::io::Write as _;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    const DOC: &str = "vocabulary\nE 2\n
structure K2\nelements a b\nE a b\nE b a\n
structure K3\nelements x y z\nE x y\nE y x\nE y z\nE z y\nE x z\nE z x\n";

    #[test]
    fn usage_error_is_exit_2() {
        let (code, output) = run_str(&["equiv"]);
        assert_eq!(code, 2);
        assert!(output.contains("usage"));
        let (code, _) = run_str(&["nonsense"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn equiv_k2_k3_bisim_eq_fails() {
        let f = fixture(DOC);
        let (code, output) = run_str(&[
            "equiv", "--comonad", "ef", "--k", "3", "--flavor", "bisim", "--eq",
            f.path().to_str().unwrap(), "K2", "K3",
        ]);
        assert_eq!(code, 1, "{output}");
        assert!(output.trim_end().ends_with("fails"));
    }

    #[test]
    fn param_tree_depth_k3() {
        let f = fixture(DOC);
        let (code, output) =
            run_str(&["param", "--kind", "tree-depth", f.path().to_str().unwrap(), "K3"]);
        assert_eq!(code, 0, "{output}");
        assert!(output.contains("search=3 oracle=3"));
    }

    #[test]
    fn pebble_iso_is_exit_3() {
        let f = fixture(DOC);
        let (code, output) = run_str(&[
            "equiv", "--comonad", "pebble", "--k", "2", "--flavor", "iso",
            f.path().to_str().unwrap(), "K2", "K3",
        ]);
        assert_eq!(code, 3, "{output}");
    }

    #[test]
    fn tiny_budget_is_exit_4() {
        let f = fixture(DOC);
        let (code, output) = run_str(&[
            "equiv", "--comonad", "ef", "--k", "3", "--flavor", "bisim", "--budget", "5",
            f.path().to_str().unwrap(), "K2", "K3",
        ]);
        assert_eq!(code, 4, "{output}");
    }

    #[test]
    fn check_reports_violations() {
        let good = fixture(DOC);
        let (code, _) = run_str(&["check", good.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        let bad = fixture(
            "vocabulary\nE 2\nstructure A\nelements a b\nE a b\nforest F over A k 2 tag RE\n",
        );
        // a and b are adjacent but incomparable: condition (E) fails
        let (code, output) = run_str(&["check", bad.path().to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(output.contains("(E)"));
    }

    #[test]
    fn materialize_output_reparses() {
        let f = fixture(DOC);
        let (code, output) = run_str(&[
            "materialize", "--comonad", "ef", "--k", "2", f.path().to_str().unwrap(), "K2",
        ]);
        assert_eq!(code, 0);
        let doc = parse_input(&output).unwrap();
        assert_eq!(doc.structures.len(), 1);
        assert_eq!(doc.structures[0].1.size(), 6);
        assert!(doc.forests[0].forest.is_valid());
    }

    #[test]
    fn game_trace_and_span() {
        let f = fixture(DOC);
        let (code, output) = run_str(&[
            "game", "--comonad", "ef", "--k", "2", "--trace", f.path().to_str().unwrap(), "K2", "K2",
        ]);
        assert_eq!(code, 0, "{output}");
        assert!(output.contains("round 0"));
        assert!(output.contains("duplicator wins"));
        let (code, output) = run_str(&[
            "span", "--k", "2", f.path().to_str().unwrap(), "K2", "K2",
        ]);
        assert_eq!(code, 0, "{output}");
        assert!(output.contains("legs verified: yes"));
        // The emitted block after the comment lines reparses.
        let body: String =
            output.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
        assert!(parse_input(&body).is_ok(), "{body}");
    }

    #[test]
    fn modal_game_needs_point() {
        let f = fixture(DOC);
        let (code, output) = run_str(&[
            "game", "--comonad", "modal", "--k", "2", f.path().to_str().unwrap(), "K2", "K3",
        ]);
        assert_eq!(code, 2, "{output}");
        assert!(output.contains("point"));
    }
}
