//! `msord` command-line front end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use serde_json::{json, Value};

use msord::decomposition::{cotree, cotree_stats, cut_witness};
use msord::forests::{is_chordal, perfect_spanning_forest, split_partition};
use msord::graph::{connected_components, generate, parse_graph, write_graph, FamilySpec, Graph};
use msord::measures::{has_minor, is_r_sparse, sep};
use msord::mso::{evaluate, parse_formula, Assignment, Encoding, Structure};
use msord::order::{
    order_bipartite_supergraph, order_chordal, order_cograph, order_minor_free, order_multipartite, order_split,
    order_tree_bounded_degree, verify_certificate, OrderCertificate, Scheme,
};
use msord::reductions::{bp_graph, bp_is_bipartite_by_layer, incidence_split_graph, reduction_invariant_report, Transform};
use msord::{Budget, Error};

#[derive(Parser)]
#[command(name = "msord", version, about = "Separation measures, decompositions and definable orders on graphs")]
struct Cli {
    /// Raise or lower every vertex-count budget to N.
    #[arg(long, global = true)]
    budget_n: Option<usize>,
    /// Largest universe over which set quantifiers are expanded.
    #[arg(long, global = true)]
    budget_sets: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON, and report errors as JSON on stderr.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph: clique N | edgeless N | path N | cycle N |
    /// complete_bipartite A B | complete_multipartite M.. | tree_closure H B.. |
    /// hp P | random N PROB
    Gen {
        family: String,
        args: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compute sep, cut, sparse, minor, cotree, chordal or split.
    Measure {
        graph: PathBuf,
        measure: String,
        #[command(flatten)]
        p: SchemeArgs,
        /// Ratio p/q for `sparse`.
        #[arg(long)]
        ratio: Option<String>,
        /// Pattern graph file for `minor`.
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
    /// Build an order certificate.
    Order {
        graph: PathBuf,
        scheme: String,
        #[command(flatten)]
        p: SchemeArgs,
        /// A-side vertices for the bipartite scheme, comma separated.
        #[arg(long, value_delimiter = ',')]
        a_side: Vec<usize>,
        /// Parts for the multipartite scheme: `0,1;2,3;4`.
        #[arg(long)]
        parts: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Evaluate a formula; `--assign x=v:0` or `--assign X=v:0,e:0-1`.
    Eval {
        graph: PathBuf,
        formula: PathBuf,
        #[arg(long, default_value = "floor")]
        encoding: String,
        #[arg(long)]
        assign: Vec<String>,
    },
    /// Apply inc, is or bp; for inc also report the measure inequalities at `--k`.
    Reduce {
        graph: PathBuf,
        transform: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the structural checks and every applicable builder on each
    /// `*.graph` file of a directory.
    Suite {
        corpus: PathBuf,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
}

#[derive(Args, Clone, Copy)]
struct SchemeArgs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
}

/// Command result: a value to print and whether the verdict was positive.
struct Outcome {
    value: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value, text: impl Into<String>) -> Outcome {
        Outcome { value, text: text.into(), ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budget = Budget::default();
    if let Some(n) = cli.budget_n {
        budget = budget.with_max_n(n);
    }
    if let Some(n) = cli.budget_sets {
        budget = budget.with_set_universe(n);
    }
    match run(&cli, &budget) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("values serialize"));
            } else if !out.text.is_empty() {
                println!("{}", out.text.trim_end());
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            let (code, kind) = match &e {
                Error::Budget(_) => (3, "budget"),
                Error::Precondition(_) => (2, "precondition"),
                Error::Parse { .. } => (2, "parse"),
                Error::Io(_) => (2, "io"),
                _ => (2, "input"),
            };
            if cli.json {
                eprintln!("{}", json!({ "error": kind, "message": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli, budget: &Budget) -> msord::Result<Outcome> {
    match &cli.cmd {
        Cmd::Gen { family, args, out } => cmd_gen(family, args, cli.seed, out.as_deref()),
        Cmd::Measure { graph, measure, p, ratio, pattern } => {
            cmd_measure(&read_graph(graph)?, measure, p, ratio.as_deref(), pattern.as_deref(), budget)
        }
        Cmd::Order { graph, scheme, p, a_side, parts, out } => {
            let g = read_graph(graph)?;
            let cert = build(&g, scheme.parse()?, p, a_side, parts.as_deref(), budget)?;
            let text = cert.to_json();
            if let Some(path) = out {
                fs::write(path, format!("{text}\n"))?;
            }
            let ok = cert.verified;
            Ok(Outcome { value: serde_json::to_value(&cert)?, text, ok })
        }
        Cmd::Verify { graph, certificate } => {
            let g = read_graph(graph)?;
            let cert = OrderCertificate::from_json(&fs::read_to_string(certificate)?)?;
            let v = verify_certificate(&g, &cert, budget)?;
            let text = match &v.reason {
                None => "verified".to_string(),
                Some(r) => format!("rejected: {r}"),
            };
            Ok(Outcome { value: serde_json::to_value(&v)?, text, ok: v.ok })
        }
        Cmd::Eval { graph, formula, encoding, assign } => {
            let g = read_graph(graph)?;
            let s = Structure::from_graph(&g, encoding.parse::<Encoding>()?);
            let f = parse_formula(&fs::read_to_string(formula)?)?;
            let mut a = Assignment::new();
            for item in assign {
                let (name, value) =
                    item.split_once('=').ok_or_else(|| Error::input(format!("assignment `{item}` lacks `=`")))?;
                if name.starts_with(|c: char| c.is_ascii_uppercase()) {
                    let names: Vec<&str> = value.split(',').filter(|x| !x.is_empty()).collect();
                    a = a.set(name, s.named_set(&names)?);
                } else {
                    a = a.individual(name, s.lookup(value)?);
                }
            }
            let v = evaluate(&s, &f, &a, budget)?;
            Ok(Outcome { value: json!({ "value": v }), text: v.to_string(), ok: v })
        }
        Cmd::Reduce { graph, transform, k, out } => cmd_reduce(&read_graph(graph)?, graph, transform, *k, out.as_deref(), budget),
        Cmd::Suite { corpus, s } => cmd_suite(corpus, *s, budget),
    }
}

fn read_graph(path: &Path) -> msord::Result<Graph> {
    Ok(parse_graph(&fs::read_to_string(path)?)?.graph)
}

fn num<T: std::str::FromStr>(args: &[String], i: usize, what: &str) -> msord::Result<T> {
    let s = args.get(i).ok_or_else(|| Error::input(format!("missing {what}")))?;
    s.parse().map_err(|_| Error::input(format!("{what} `{s}` is not a number")))
}

fn family_spec(family: &str, args: &[String], seed: u64) -> msord::Result<FamilySpec> {
    let all = |what: &str| args.iter().map(|a| a.parse::<usize>().map_err(|_| Error::input(format!("{what} `{a}`")))).collect::<msord::Result<Vec<_>>>();
    Ok(match family {
        "clique" => FamilySpec::Clique(num(args, 0, "n")?),
        "edgeless" => FamilySpec::Edgeless(num(args, 0, "n")?),
        "path" => FamilySpec::Path(num(args, 0, "n")?),
        "cycle" => FamilySpec::Cycle(num(args, 0, "n")?),
        "complete_bipartite" => FamilySpec::CompleteBipartite(num(args, 0, "a")?, num(args, 1, "b")?),
        "complete_multipartite" => FamilySpec::CompleteMultipartite(all("part size")?),
        "tree_closure" => {
            let v = all("tree parameter")?;
            let (&height, branching) = v.split_first().ok_or_else(|| Error::input("missing height"))?;
            FamilySpec::TreeClosure { height, branching: branching.to_vec() }
        }
        "hp" => FamilySpec::Hp(num(args, 0, "p")?),
        "random" => FamilySpec::Random { n: num(args, 0, "n")?, prob: num(args, 1, "probability")?, seed },
        other => return Err(Error::input(format!("unknown family `{other}`"))),
    })
}

fn cmd_gen(family: &str, args: &[String], seed: u64, out: Option<&Path>) -> msord::Result<Outcome> {
    let g = generate(&family_spec(family, args, seed)?)?;
    let text = write_graph(&g);
    if let Some(path) = out {
        fs::write(path, &text)?;
    }
    Ok(Outcome::ok(json!({ "n": g.n(), "edges": g.edges(), "text": text }), text))
}

fn need(v: Option<usize>, flag: &str) -> msord::Result<usize> {
    v.ok_or_else(|| Error::input(format!("--{flag} is required")))
}

fn cmd_measure(
    g: &Graph,
    measure: &str,
    p: &SchemeArgs,
    ratio: Option<&str>,
    pattern: Option<&Path>,
    budget: &Budget,
) -> msord::Result<Outcome> {
    Ok(match measure {
        "sep" => {
            let r = sep(g, need(p.k, "k")?, budget)?;
            Outcome::ok(serde_json::to_value(&r)?, format!("{}\nwitness {:?}", r.value, r.witness))
        }
        "cut" => {
            let w = cut_witness(g, need(p.k, "k")?, budget)?;
            let value = w.as_ref().map_or(0, |w| w.parts.len());
            Outcome::ok(json!({ "value": value, "witness": w }), value.to_string())
        }
        "sparse" => {
            let text = ratio.ok_or_else(|| Error::input("--ratio p/q is required"))?;
            let r: Ratio<u64> = text.parse().map_err(|_| Error::input(format!("bad ratio `{text}`")))?;
            let res = is_r_sparse(g, r, budget)?;
            let ok = res.sparse;
            Outcome { value: serde_json::to_value(&res)?, text: ok.to_string(), ok }
        }
        "minor" => {
            let h = read_graph(pattern.ok_or_else(|| Error::input("--pattern FILE is required"))?)?;
            let v = has_minor(g, &h, budget)?;
            Outcome { value: json!({ "value": v }), text: v.to_string(), ok: v }
        }
        "components" => {
            let c = connected_components(g);
            Outcome::ok(json!({ "value": c.len(), "components": c }), c.len().to_string())
        }
        "cotree" => match cotree(g) {
            Some(t) => {
                let st = cotree_stats(&t.term);
                Outcome::ok(
                    json!({ "cotree": t.term.to_string(), "leaves": t.leaves, "depth": st.depth, "max_outdegree": st.max_outdegree }),
                    format!("{}\nleaves {:?}", t.term, t.leaves),
                )
            }
            None => Outcome { value: json!({ "cotree": null }), text: "not a cograph".into(), ok: false },
        },
        "chordal" => {
            let v = is_chordal(g);
            let f = perfect_spanning_forest(g);
            Outcome { value: json!({ "value": v, "forest": f }), text: v.to_string(), ok: v }
        }
        "split" => {
            let sp = split_partition(g);
            let v = sp.is_some();
            Outcome { value: json!({ "value": v, "partition": sp }), text: v.to_string(), ok: v }
        }
        other => return Err(Error::input(format!("unknown measure `{other}`"))),
    })
}

fn build(
    g: &Graph,
    scheme: Scheme,
    p: &SchemeArgs,
    a_side: &[usize],
    parts: Option<&str>,
    budget: &Budget,
) -> msord::Result<OrderCertificate> {
    match scheme {
        Scheme::TreeBoundedDegree => order_tree_bounded_degree(g, need(p.d, "d")?, budget),
        Scheme::MinorFree => order_minor_free(g, need(p.p, "p")?, need(p.d, "d")?, budget),
        Scheme::BipartiteSupergraph => {
            let b: Vec<usize> = (0..g.n()).filter(|v| !a_side.contains(v)).collect();
            order_bipartite_supergraph(g, a_side, &b, need(p.s, "s")?, need(p.r, "r")?, budget)
        }
        Scheme::Multipartite => {
            let text = parts.ok_or_else(|| Error::input("--parts is required, e.g. 0,1;2,3;4"))?;
            let parts = text
                .split(';')
                .map(|part| {
                    part.split(',')
                        .map(|v| v.trim().parse::<usize>().map_err(|_| Error::input(format!("bad vertex `{v}`"))))
                        .collect()
                })
                .collect::<msord::Result<Vec<Vec<usize>>>>()?;
            order_multipartite(g, &parts, budget)
        }
        Scheme::Split => order_split(g, need(p.s, "s")?, budget),
        Scheme::Chordal => order_chordal(g, need(p.s, "s")?, budget),
        Scheme::Cograph => order_cograph(g, need(p.d, "d")?, budget),
    }
}

fn cmd_reduce(
    g: &Graph,
    path: &Path,
    transform: &str,
    k: usize,
    out: Option<&Path>,
    budget: &Budget,
) -> msord::Result<Outcome> {
    let t: Transform = transform.parse()?;
    let h = t.apply(g);
    if let Some(o) = out {
        fs::write(o, write_graph(&h))?;
    }
    let summary = json!({ "transform": t, "vertices": h.n(), "edges": h.edge_count() });
    match t {
        Transform::Inc => {
            let name = path.file_stem().map_or_else(|| "graph".to_string(), |s| s.to_string_lossy().into_owned());
            let report = reduction_invariant_report(g, &name, k, budget)?;
            let mut text = format!("Inc(G): {} vertices, {} edges\n", h.n(), h.edge_count());
            for v in &report.verdicts {
                text.push_str(&format!("{} : {} vs {} -> {}\n", v.statement, v.lhs, v.rhs, if v.holds { "holds" } else { "FAILS" }));
            }
            for s in &report.skipped {
                text.push_str(&format!("skipped: {s}\n"));
            }
            let ok = report.all_hold();
            Ok(Outcome { value: json!({ "graph": summary, "report": report }), text, ok })
        }
        Transform::IS => {
            let ok = split_partition(&incidence_split_graph(g)).is_some_and(|sp| (0..g.n()).all(|v| sp.a.contains(&v)));
            let text = format!("IS(G): {} vertices, {} edges, split with V on the clique side: {ok}", h.n(), h.edge_count());
            Ok(Outcome { value: json!({ "graph": summary, "split": ok }), text, ok })
        }
        Transform::BP => {
            let h = bp_graph(g);
            let ok = bp_is_bipartite_by_layer(&h) && h.n() == 4 * g.n() && h.edge_count() == 3 * g.n() + 2 * g.edge_count();
            let text = format!("BP(G): {} vertices, {} edges, bipartite by layer parity: {ok}", h.n(), h.edge_count());
            Ok(Outcome { value: json!({ "graph": summary, "bipartite": ok }), text, ok })
        }
    }
}

/// Builders tried by the suite on every graph they apply to.
fn suite_entry(g: &Graph, s: usize, budget: &Budget) -> Value {
    let mut schemes = serde_json::Map::new();
    let mut record = |name: &str, r: msord::Result<OrderCertificate>| {
        let v = match r {
            Ok(c) if c.verified => json!("verified"),
            Ok(_) => json!("unverified"),
            Err(Error::Precondition(_)) => json!("not applicable"),
            Err(e) if e.is_budget() => json!("budget"),
            Err(e) => json!(format!("error: {e}")),
        };
        schemes.insert(name.to_string(), v);
    };
    let max_deg = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    record("tree-bounded-degree", order_tree_bounded_degree(g, max_deg, budget));
    record("chordal", order_chordal(g, s, budget));
    record("split", order_split(g, s, budget));
    let out = cotree(g).map_or(0, |t| t.term.max_outdegree());
    record("cograph", order_cograph(g, out, budget));
    json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "components": connected_components(g).len(),
        "chordal": is_chordal(g),
        "split": split_partition(g).is_some(),
        "cograph": cotree(g).is_some(),
        "schemes": schemes,
    })
}

fn cmd_suite(dir: &Path, s: usize, budget: &Budget) -> msord::Result<Outcome> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    files.sort();
    let mut entries = serde_json::Map::new();
    let mut text = String::new();
    let (mut verified, mut unverified) = (0usize, 0usize);
    for f in &files {
        let g = read_graph(f)?;
        let e = suite_entry(&g, s, budget);
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        let mut line = format!("{name}: n={} m={}", g.n(), g.edge_count());
        for (scheme, v) in e["schemes"].as_object().unwrap() {
            match v.as_str() {
                Some("verified") => verified += 1,
                Some("unverified") => unverified += 1,
                _ => {}
            }
            line.push_str(&format!(" {scheme}={}", v.as_str().unwrap_or("?")));
        }
        text.push_str(&line);
        text.push('\n');
        entries.insert(name, e);
    }
    text.push_str(&format!("{} graphs, {verified} certificates verified, {unverified} unverified\n", files.len()));
    let value = json!({ "graphs": entries, "verified": verified, "unverified": unverified });
    Ok(Outcome { value, text, ok: unverified == 0 })
}
