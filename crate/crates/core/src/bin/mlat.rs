//! Command-line frontend: verification, lattice export, constants queries,
//! orbit and relation-table reports, and Chein doubling.

use std::process::ExitCode;

use mlat::chein::{emit_group_report, GroupCatalog};
use mlat::lattice::{export_dot, export_json, figure2};
use mlat::loopcore::IsoType;
use mlat::pipeline::Pipeline;
use mlat::verify::{run_verify, Section};

const USAGE: &str = "\
mlat - subloop lattice of the 120-element simple Moufang loop

USAGE:
    mlat verify [--section SECTION]
    mlat lattice --out {json|dot} --path FILE
    mlat constants --sub SUB --sup TYPE
    mlat constants --csv
    mlat orbits
    mlat table1 [--csv]
    mlat chein --group {C2|C3|C4|E4|C2xC4|S3|E8|A4}

SECTIONS:
    construction table1 census orbits autgroup hasse global chein c2xc4
    determinism

SUB is a type name (C2, E4, ...), an orbit label (E4+, E4-), or a
comma-separated element list such as `x0,u1` or `inv(111,111),tri(011,110,1)`.

The environment variable MLAT_THREADS caps worker threads (0 = auto).
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn init_threads() -> Result<(), String> {
    if let Ok(value) = std::env::var("MLAT_THREADS") {
        let threads: usize = value
            .parse()
            .map_err(|_| format!("MLAT_THREADS must be a number, got `{value}`"))?;
        if threads > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| format!("thread pool: {e}"))?;
        }
    }
    Ok(())
}

fn flag_value<'a>(args: &'a [String], name: &str) -> Result<Option<&'a str>, String> {
    match args.iter().position(|a| a == name) {
        None => Ok(None),
        Some(i) => args
            .get(i + 1)
            .map(|s| Some(s.as_str()))
            .ok_or_else(|| format!("{name} needs a value")),
    }
}

fn run(args: &[String]) -> Result<ExitCode, String> {
    let Some(command) = args.first() else {
        print!("{USAGE}");
        return Ok(ExitCode::from(2));
    };
    init_threads()?;
    match command.as_str() {
        "verify" => cmd_verify(&args[1..]),
        "lattice" => cmd_lattice(&args[1..]),
        "constants" => cmd_constants(&args[1..]),
        "orbits" => cmd_orbits(),
        "table1" => cmd_table1(&args[1..]),
        "chein" => cmd_chein(&args[1..]),
        "--help" | "-h" | "help" => {
            print!("{USAGE}");
            Ok(ExitCode::SUCCESS)
        }
        other => Err(format!("unknown command `{other}`; run `mlat help`")),
    }
}

fn cmd_verify(args: &[String]) -> Result<ExitCode, String> {
    let section = match flag_value(args, "--section")? {
        Some(name) => Some(name.parse::<Section>()?),
        None => None,
    };
    let pipeline = Pipeline::build();
    let report = run_verify(&pipeline, section);
    print!("{}", report.render());
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_lattice(args: &[String]) -> Result<ExitCode, String> {
    let out = flag_value(args, "--out")?.ok_or("lattice needs --out json|dot")?;
    let path = flag_value(args, "--path")?.ok_or("lattice needs --path FILE")?;
    let pipeline = Pipeline::build();
    let graph = figure2(&pipeline);
    let text = match out {
        "json" => export_json(&graph),
        "dot" => export_dot(&graph),
        other => return Err(format!("unknown output format `{other}`; use json or dot")),
    };
    std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}"))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_constants(args: &[String]) -> Result<ExitCode, String> {
    if args.iter().any(|a| a == "--csv") {
        let p = Pipeline::build();
        print!("{}", p.hasse().constants_csv());
        return Ok(ExitCode::SUCCESS);
    }
    let sub = flag_value(args, "--sub")?.ok_or("constants needs --sub (or --csv)")?;
    let sup = flag_value(args, "--sup")?.ok_or("constants needs --sup")?;
    let sup_type = IsoType::parse_name(sup).ok_or_else(|| format!("unknown type `{sup}`"))?;
    let p = Pipeline::build();
    let h = p.hasse();

    // Resolve the sub side: an orbit label, a type name, or elements.
    let mut sub_orbits: Vec<usize> = Vec::new();
    if let Some(orbit) = p.orbit_by_label(sub) {
        sub_orbits.push(orbit);
    } else if let Some(ty) = IsoType::parse_name(sub) {
        sub_orbits.extend((0..p.orbits.orbits.len()).filter(|&o| p.orbit_types[o] == ty));
        if sub_orbits.is_empty() {
            return Err(format!("no subloops of type `{sub}`"));
        }
    } else {
        let mut seed = Vec::new();
        for part in sub.split(',') {
            let index = p
                .paige
                .element_index(part.trim())
                .map_err(|e| e.to_string())?;
            seed.push(index);
        }
        let subloop = p
            .subloop_of(&seed)
            .ok_or("generated set is not an enumerated subloop")?;
        sub_orbits.push(p.orbits.orbit_of[subloop]);
    }

    let sup_orbits: Vec<usize> = (0..p.orbits.orbits.len())
        .filter(|&o| p.orbit_types[o] == sup_type)
        .collect();
    for &a in &sub_orbits {
        let a_type = &p.orbit_types[a];
        println!(
            "sub = {} (type {}), sup = {}",
            p.orbit_labels[a], a_type, sup_type
        );
        println!(
            "  l[{a_type}:{sup_type}] = {}",
            h.abstract_count(a_type, &sup_type)
        );
        println!("  l[{sup_type}:C] = {}", p.census(&sup_type));
        println!(
            "  l_iso[{}:{}:C] = {}",
            p.orbit_labels[a],
            sup_type,
            h.l_iso(a, &sup_type)
        );
        for &b in &sup_orbits {
            println!(
                "  l_orb[{}:{}:C] = {}",
                p.orbit_labels[a],
                p.orbit_labels[b],
                h.l_orb(a, b)
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_orbits() -> Result<ExitCode, String> {
    let p = Pipeline::build();
    // Reported representatives are the canonical named generating sets;
    // each is checked to lie in the orbit it names.
    let named_reps: [(&str, &str); 10] = [
        ("1", ""),
        ("C2", "x0"),
        ("C3", "y0"),
        ("E4+", "x0,u1"),
        ("E4-", "x0,u2"),
        ("S3", "x0,y0"),
        ("E8", "x0,u1,u2"),
        ("A4", "x0,z0"),
        ("M(S3)", "x0,y0,u0"),
        ("M(A4)", "x0,z0,u1"),
    ];
    // The proper-subloop orbits: trivial plus the nine nontrivial classes.
    let mut rows: Vec<usize> = (0..p.orbits.orbits.len())
        .filter(|&o| p.subloops[p.orbits.orbits[o].representative].len() < p.paige.n())
        .collect();
    rows.sort_by_key(|&o| {
        (
            p.subloops[p.orbits.orbits[o].representative].len(),
            p.orbit_labels[o].clone(),
        )
    });
    println!("orbit  type    order  size  representative");
    for oid in rows {
        let orbit = &p.orbits.orbits[oid];
        let label = &p.orbit_labels[oid];
        let shown = match named_reps.iter().find(|(l, _)| l == label) {
            Some((_, gens)) => {
                let seed: Vec<usize> = gens
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(|name| p.paige.named(name).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?;
                let sub = p
                    .subloop_of(&seed)
                    .ok_or("named representative is not an enumerated subloop")?;
                if p.orbits.orbit_of[sub] != oid {
                    return Err(format!("representative <{gens}> is not in orbit {label}"));
                }
                format!("<{gens}>")
            }
            None => format!(
                "{{{}}}",
                p.subloops[orbit.representative]
                    .iter()
                    .map(|e| p.paige.element(e).shorthand())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        };
        println!(
            "{:<6} {:<7} {:<6} {:<5} {}",
            label,
            p.orbit_types[oid].to_string(),
            p.subloops[orbit.representative].len(),
            orbit.size(),
            shown
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table1(args: &[String]) -> Result<ExitCode, String> {
    let csv = args.iter().any(|a| a == "--csv");
    let paige = mlat::paige::PaigeLoop::build();
    let table = paige.table1();
    if csv {
        print!("{}", table.to_csv());
    } else {
        print!("{}", table.to_grid());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_chein(args: &[String]) -> Result<ExitCode, String> {
    let group = flag_value(args, "--group")?.ok_or("chein needs --group NAME")?;
    let catalog = GroupCatalog::load();
    let table = catalog.group_by_name(group).ok_or_else(|| {
        format!(
            "unknown group `{group}`; choices: {}",
            GroupCatalog::group_names().join(", ")
        )
    })?;
    print!(
        "{}",
        emit_group_report(table, group).map_err(|e| e.to_string())?
    );
    Ok(ExitCode::SUCCESS)
}
