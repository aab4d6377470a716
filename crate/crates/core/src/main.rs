//! Command-line surface: graph generation, Cartesian products, construction
//! and solver runs, coloring verification, homomorphism search, and the
//! corpus census.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a search comes
//! back empty, 2 for usage errors and unusable inputs (clap reports its own
//! parse errors with 2 as well).

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use icg::census::{census, CensusOptions, Predicate};
use icg::constructions::{
    hamming_coloring, hypercube_coloring, peradj_coloring, prism_coloring, product_coloring_delta1,
    ConstructionError,
};
use icg::graph::{cartesian_product, Family, Graph};
use icg::graph6::{emit_graph6, parse_graph6};
use icg::hom::{
    complete_minus_matching_target, find_loc_inj_hom, is_sub_2_permutable, looped_complete,
    Homomorphism, TargetGraph,
};
use icg::incidence::{verify_coloring, verify_kp, IncidenceColoring, Verdict};
use icg::json::{ColoringJson, GraphJson, HomJson, PartitionJson, VertexColoringJson};
use icg::solver::{
    chi_i, chi_ip, chromatic_number, dominating_partition, exists_adjustable, SolveError,
};

#[derive(Parser)]
#[command(
    name = "icg",
    version,
    about = "Incidence colorings: solvers, constructions, census"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph from a parametric family
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Family parameters (one integer for most, two for complete-bipartite)
        params: Vec<usize>,
        /// Emit JSON instead of graph6
        #[arg(long)]
        json: bool,
        /// Present vertex ids 1-based in JSON output
        #[arg(long)]
        one_based: bool,
    },
    /// Cartesian product of two graphs (files, or `-` for stdin)
    Product {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        one_based: bool,
    },
    /// Build a coloring by a named construction
    Color {
        #[arg(long, value_enum)]
        strategy: Strategy,
        /// Strategy inputs; see long help of each strategy
        inputs: Vec<String>,
        /// Write the coloring JSON here instead of stdout
        #[arg(short, long)]
        output: Option<String>,
        #[arg(long)]
        one_based: bool,
    },
    /// Run an exact solver on a graph (file, `-`, or stdin)
    Solve {
        #[arg(long, value_enum)]
        mode: Mode,
        input: Option<String>,
        /// Incoming-spectrum budget for chi-ip (default 1)
        #[arg(long)]
        p: Option<usize>,
        /// Largest palette to try
        #[arg(long)]
        max: Option<usize>,
        /// Class count for dom-partition (default max degree + 1)
        #[arg(long)]
        classes: Option<usize>,
        /// Write the witness JSON here
        #[arg(short, long)]
        output: Option<String>,
        #[arg(long)]
        one_based: bool,
    },
    /// Check a coloring JSON (file, `-`, or stdin)
    Verify {
        input: Option<String>,
        /// Also require at most P distinct incoming colors per vertex
        #[arg(long)]
        p: Option<usize>,
        /// Require this exact palette size
        #[arg(long)]
        expect_palette: Option<usize>,
        /// Interpret the input as 1-based
        #[arg(long)]
        one_based: bool,
    },
    /// Search for a locally injective homomorphism from a source graph
    Hom {
        #[arg(long, value_enum)]
        target: TargetKind,
        /// Order of the target for kminus / kloop
        #[arg(long)]
        k: Option<usize>,
        /// Target graph file for --target graph
        #[arg(long)]
        target_file: Option<String>,
        /// Source graph (file, `-`, or stdin)
        source: Option<String>,
        #[arg(long)]
        one_based: bool,
    },
    /// Classify a graph6 corpus against predicates
    Census {
        #[arg(long)]
        input: String,
        /// Comma-separated: 2-permutable, sub-2-permutable, 2-adjustable, chi-i, chi-i1
        #[arg(long)]
        predicates: String,
        /// Worker threads (default: ICG_JOBS env var, then all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Report file (default stdout); JSON lines plus a summary line
        #[arg(long)]
        report: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum FamilyArg {
    Cycle,
    Path,
    Complete,
    CompleteBipartite,
    Hypercube,
    CompleteMinusMatching,
}

#[derive(ValueEnum, Clone, Copy)]
enum Strategy {
    /// inputs: M (builds the syndrome coloring of Q_{2^M-1})
    Hamming,
    /// inputs: N (colors Q_N)
    Hypercube,
    /// inputs: GRAPH (certificate found internally)
    Prism,
    /// inputs: G COLORING_G H_PRIME COLORING_H_PRIME [EMBEDDING like 0,1,2]
    ProductDelta1,
    /// inputs: G H (certificate and adjustable coloring found internally)
    Peradj,
    /// inputs: G HOM_JSON TARGET_COLORING_JSON
    Pullback,
}

#[derive(ValueEnum, Clone, Copy)]
enum Mode {
    ChiI,
    ChiIp,
    Chromatic,
    Adjustable,
    DomPartition,
}

#[derive(ValueEnum, Clone, Copy)]
enum TargetKind {
    /// Complete graph minus a perfect matching, order --k (even)
    Kminus,
    /// Complete graph of order --k with a loop at vertex 0
    Kloop,
    /// Arbitrary simple target from --target-file
    Graph,
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

fn negative(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("icg: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn read_source(path: Option<&str>) -> Result<String, Failure> {
    match path {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| usage(format!("reading stdin: {e}")))?;
            Ok(buf)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| usage(format!("reading {p}: {e}"))),
    }
}

/// Accept either a JSON graph object or a graph6 line.
fn graph_from_text(text: &str, one_based: bool) -> Result<Graph, Failure> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let mut j: GraphJson =
            serde_json::from_str(trimmed).map_err(|e| usage(format!("graph JSON: {e}")))?;
        if one_based {
            j = j.zero_based().map_err(usage)?;
        }
        j.to_graph().map_err(|e| usage(format!("graph JSON: {e}")))
    } else {
        let line = trimmed.lines().next().unwrap_or("");
        parse_graph6(line).map_err(|e| usage(format!("graph6: {e}")))
    }
}

fn load_graph(path: Option<&str>, one_based: bool) -> Result<Graph, Failure> {
    graph_from_text(&read_source(path)?, one_based)
}

fn load_coloring(path: Option<&str>, one_based: bool) -> Result<IncidenceColoring, Failure> {
    let text = read_source(path)?;
    let mut j: ColoringJson =
        serde_json::from_str(text.trim()).map_err(|e| usage(format!("coloring JSON: {e}")))?;
    if one_based {
        j = j.zero_based().map_err(usage)?;
    }
    j.to_coloring()
        .map_err(|e| usage(format!("coloring JSON: {e}")))
}

fn write_out(output: Option<&str>, content: &str) -> Result<(), Failure> {
    match output {
        None | Some("-") => {
            print!("{content}");
            Ok(())
        }
        Some(p) => fs::write(p, content).map_err(|e| usage(format!("writing {p}: {e}"))),
    }
}

fn emit_graph(g: &Graph, json: bool, one_based: bool) -> Result<(), Failure> {
    if json {
        let mut j = GraphJson::from_graph(g);
        if one_based {
            j = j.one_based();
        }
        println!("{}", serde_json::to_string(&j).expect("graph serializes"));
    } else {
        println!("{}", emit_graph6(g).map_err(|e| usage(e.to_string()))?);
    }
    Ok(())
}

fn coloring_json(c: &IncidenceColoring, one_based: bool) -> String {
    let mut j = ColoringJson::from_coloring(c);
    if one_based {
        j = j.one_based();
    }
    serde_json::to_string(&j).expect("coloring serializes") + "\n"
}

fn construction_failure(e: ConstructionError) -> Failure {
    match e {
        ConstructionError::Internal(_) => negative(e.to_string()),
        _ => usage(e.to_string()),
    }
}

fn solve_failure(e: SolveError) -> Failure {
    match e {
        SolveError::ExceedsBound { .. } => negative(e.to_string()),
        SolveError::PaletteTooLarge | SolveError::InvalidParameter(_) => usage(e.to_string()),
    }
}

/// Certificate for prism/peradj: sub-permutability covers the regular case.
fn permutable_certificate(g: &Graph) -> Result<Homomorphism, Failure> {
    match is_sub_2_permutable(g) {
        Ok(Some(h)) => Ok(h),
        Ok(None) => Err(negative("graph is not sub-2-permutable")),
        Err(e) => Err(negative(e.to_string())),
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Gen {
            family,
            params,
            json,
            one_based,
        } => {
            let fam = match (family, params.as_slice()) {
                (FamilyArg::Cycle, &[n]) => Family::Cycle(n),
                (FamilyArg::Path, &[n]) => Family::Path(n),
                (FamilyArg::Complete, &[n]) => Family::Complete(n),
                (FamilyArg::CompleteBipartite, &[a, b]) => Family::CompleteBipartite(a, b),
                (FamilyArg::Hypercube, &[d]) => Family::Hypercube(d),
                (FamilyArg::CompleteMinusMatching, &[h]) => Family::CompleteMinusMatching(h),
                (FamilyArg::CompleteBipartite, _) => {
                    return Err(usage("complete-bipartite takes two parameters"));
                }
                _ => return Err(usage("this family takes exactly one parameter")),
            };
            let g = icg::graph::gen_family(fam).map_err(|e| usage(e.to_string()))?;
            emit_graph(&g, json, one_based)
        }

        Cmd::Product {
            a,
            b,
            json,
            one_based,
        } => {
            if a == "-" && b == "-" {
                return Err(usage("at most one factor can come from stdin"));
            }
            let ga = load_graph(Some(&a), one_based)?;
            let gb = load_graph(Some(&b), one_based)?;
            let prod = cartesian_product(&ga, &gb);
            emit_graph(&prod.graph, json, one_based)
        }

        Cmd::Color {
            strategy,
            inputs,
            output,
            one_based,
        } => {
            let coloring = build_coloring(strategy, &inputs, one_based)?;
            write_out(output.as_deref(), &coloring_json(&coloring, one_based))
        }

        Cmd::Solve {
            mode,
            input,
            p,
            max,
            classes,
            output,
            one_based,
        } => {
            let g = load_graph(input.as_deref(), one_based)?;
            match mode {
                Mode::ChiI => {
                    let r = chi_i(&g, max).map_err(solve_failure)?;
                    println!("{}", r.optimum);
                    if let Some(out) = output.as_deref() {
                        write_out(Some(out), &coloring_json(&r.witness, one_based))?;
                    }
                }
                Mode::ChiIp => {
                    let r = chi_ip(&g, p.unwrap_or(1), max).map_err(solve_failure)?;
                    println!("{}", r.optimum);
                    if let Some(out) = output.as_deref() {
                        write_out(Some(out), &coloring_json(&r.witness, one_based))?;
                    }
                }
                Mode::Chromatic => {
                    let r = chromatic_number(&g, max).map_err(solve_failure)?;
                    println!("{}", r.optimum);
                    if let Some(out) = output.as_deref() {
                        let mut j = VertexColoringJson {
                            n: g.n(),
                            colors: r.witness,
                        };
                        if one_based {
                            j = j.one_based();
                        }
                        let text = serde_json::to_string(&j).expect("witness serializes") + "\n";
                        write_out(Some(out), &text)?;
                    }
                }
                Mode::Adjustable => match exists_adjustable(&g) {
                    Some(c) => write_out(output.as_deref(), &coloring_json(&c, one_based))?,
                    None => {
                        return Err(negative(
                            "no adjustable coloring with palette max degree + 2",
                        ))
                    }
                },
                Mode::DomPartition => {
                    let k = classes.unwrap_or(g.max_degree() + 1);
                    match dominating_partition(&g, k) {
                        Some(parts) => {
                            let mut j = PartitionJson { classes: parts };
                            if one_based {
                                j = j.one_based();
                            }
                            let text =
                                serde_json::to_string(&j).expect("partition serializes") + "\n";
                            write_out(output.as_deref(), &text)?;
                        }
                        None => {
                            return Err(negative(format!("no partition into {k} dominating sets")));
                        }
                    }
                }
            }
            Ok(())
        }

        Cmd::Verify {
            input,
            p,
            expect_palette,
            one_based,
        } => {
            let c = load_coloring(input.as_deref(), one_based)?;
            let shift = usize::from(one_based);
            if let Verdict::Violation(a, b) = verify_coloring(&c) {
                let ca = c.color_of(a).expect("reported incidence exists");
                return Err(negative(format!(
                    "conflict: incidences ({}, {}) and ({}, {}) share color {}",
                    a.v + shift,
                    a.w + shift,
                    b.v + shift,
                    b.w + shift,
                    ca + shift,
                )));
            }
            if let Some(k) = expect_palette {
                if c.palette_size() != k {
                    return Err(negative(format!(
                        "palette is {}, expected {k}",
                        c.palette_size()
                    )));
                }
            }
            if let Some(p) = p {
                if !verify_kp(&c, p) {
                    return Err(negative(format!(
                        "some vertex sees more than {p} distinct incoming colors"
                    )));
                }
            }
            println!(
                "valid: {} incidences, palette {}",
                c.colors().len(),
                c.palette_size()
            );
            Ok(())
        }

        Cmd::Hom {
            target,
            k,
            target_file,
            source,
            one_based,
        } => {
            let g = load_graph(source.as_deref(), one_based)?;
            let tg: TargetGraph = match target {
                TargetKind::Kminus => {
                    let k = k.ok_or_else(|| usage("--target kminus needs --k"))?;
                    if k < 2 || k % 2 != 0 {
                        return Err(usage("kminus targets have even order at least 2"));
                    }
                    complete_minus_matching_target(k / 2)
                }
                TargetKind::Kloop => {
                    let k = k.ok_or_else(|| usage("--target kloop needs --k"))?;
                    if k == 0 {
                        return Err(usage("kloop targets need at least one vertex"));
                    }
                    looped_complete(k)
                }
                TargetKind::Graph => {
                    let path =
                        target_file.ok_or_else(|| usage("--target graph needs --target-file"))?;
                    TargetGraph::simple(load_graph(Some(&path), one_based)?)
                }
            };
            match find_loc_inj_hom(&g, &tg) {
                Some(h) => {
                    let mut j = HomJson { map: h.map };
                    if one_based {
                        j = j.one_based();
                    }
                    println!("{}", serde_json::to_string(&j).expect("map serializes"));
                    Ok(())
                }
                None => Err(negative("no locally injective homomorphism")),
            }
        }

        Cmd::Census {
            input,
            predicates,
            jobs,
            report,
        } => {
            let text =
                fs::read_to_string(&input).map_err(|e| usage(format!("reading {input}: {e}")))?;
            let preds: Vec<Predicate> = predicates
                .split(',')
                .map(|s| s.trim().parse().map_err(usage))
                .collect::<Result<_, _>>()?;
            let jobs = jobs
                .or_else(|| std::env::var("ICG_JOBS").ok().and_then(|v| v.parse().ok()))
                .unwrap_or(0);
            let opts = CensusOptions {
                predicates: preds,
                jobs,
            };
            let rep = census(&text, &opts);
            eprintln!(
                "census: {} graphs, {} malformed, {:.2?} total solver time",
                rep.summary.total,
                rep.summary.malformed,
                rep.total_elapsed()
            );
            write_out(report.as_deref(), &rep.to_json_lines())
        }
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize, Failure> {
    s.parse()
        .map_err(|_| usage(format!("{what}: expected an integer, got {s:?}")))
}

fn build_coloring(
    strategy: Strategy,
    inputs: &[String],
    one_based: bool,
) -> Result<IncidenceColoring, Failure> {
    match strategy {
        Strategy::Hamming => {
            let [m] = inputs else {
                return Err(usage("hamming takes one parameter M"));
            };
            let m = parse_usize(m, "M")?;
            if m == 0 || m > 4 {
                return Err(usage("hamming supports 1 <= M <= 4"));
            }
            Ok(hamming_coloring(m as u32))
        }
        Strategy::Hypercube => {
            let [n] = inputs else {
                return Err(usage("hypercube takes one parameter N"));
            };
            let n = parse_usize(n, "N")?;
            if n == 0 || n > 16 {
                return Err(usage("hypercube supports 1 <= N <= 16"));
            }
            Ok(hypercube_coloring(n))
        }
        Strategy::Prism => {
            let [path] = inputs else {
                return Err(usage("prism takes one graph input"));
            };
            let g = load_graph(Some(path), one_based)?;
            let h = permutable_certificate(&g)?;
            prism_coloring(&g, &h).map_err(construction_failure)
        }
        Strategy::ProductDelta1 => {
            if inputs.len() != 4 && inputs.len() != 5 {
                return Err(usage(
                    "product-delta1 takes G COLORING_G H_PRIME COLORING_H_PRIME [EMBEDDING]",
                ));
            }
            let g = load_graph(Some(&inputs[0]), one_based)?;
            let c = load_coloring(Some(&inputs[1]), one_based)?;
            let hp = load_graph(Some(&inputs[2]), one_based)?;
            let dp = load_coloring(Some(&inputs[3]), one_based)?;
            let embedding: Vec<usize> = match inputs.get(4) {
                Some(list) => {
                    let shift = usize::from(one_based);
                    let vals: Result<Vec<usize>, Failure> = list
                        .split(',')
                        .map(|s| {
                            let v = parse_usize(s.trim(), "embedding entry")?;
                            v.checked_sub(shift)
                                .ok_or_else(|| usage("one-based embedding contains a zero"))
                        })
                        .collect();
                    vals?
                }
                None => (0..hp.n()).collect(),
            };
            product_coloring_delta1(&g, &c, &hp, &dp, &embedding).map_err(construction_failure)
        }
        Strategy::Peradj => {
            let [gp, hp] = inputs else {
                return Err(usage("peradj takes two graph inputs G H"));
            };
            let g = load_graph(Some(gp), one_based)?;
            let h = load_graph(Some(hp), one_based)?;
            let hg = permutable_certificate(&g)?;
            let d = exists_adjustable(&h)
                .ok_or_else(|| negative("second factor has no adjustable coloring"))?;
            peradj_coloring(&g, &hg, &h, &d).map_err(construction_failure)
        }
        Strategy::Pullback => {
            let [gp, homp, colp] = inputs else {
                return Err(usage("pullback takes G HOM_JSON TARGET_COLORING_JSON"));
            };
            let g = load_graph(Some(gp), one_based)?;
            let text = read_source(Some(homp))?;
            let mut hj: HomJson =
                serde_json::from_str(text.trim()).map_err(|e| usage(format!("hom JSON: {e}")))?;
            if one_based {
                hj = hj.zero_based().map_err(usage)?;
            }
            let c = load_coloring(Some(colp), one_based)?;
            icg::hom::pullback_coloring(&g, &Homomorphism { map: hj.map }, &c)
                .map_err(|e| usage(e.to_string()))
        }
    }
}
