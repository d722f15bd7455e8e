use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use coble_core::catalog::{self, coble_mukai, r_invariant_check, row_r_invariant, RContext, Table1Row, TABLE1};
use coble_core::fibrations::{self, admissible_assignments, fibers_to_string, lookup_kinds, CharClass, FibrationKind};
use coble_core::lattice::{
    discriminant_group, disc_b, disc_q, make_named, mod2_nullity, overlattice, parse_qvec, qvec_to_string, Lattice,
};
use coble_core::rootgraph::{
    automorphisms, connected_parabolics, default_target_rank, is_minus_power_of_two, join_types, maximal_parabolics,
    span_check, span_det, vinberg_check, DiagramType, ParabolicSubdiagram, RootGraph, VertexKind, VertexSet,
};

use crate::report::Report;
use crate::{CatalogCmd, Command, FiberCmd, GraphCmd, LatticeCmd};

pub fn run(cmd: &Command, echo: &str) -> Result<Report> {
    let mut r = Report::new(echo);
    match cmd {
        Command::Graph(g) => graph(g, &mut r)?,
        Command::Lattice(l) => lattice(l, &mut r)?,
        Command::Catalog(c) => catalog_cmd(c, &mut r)?,
        Command::Fiber(f) => fiber(f, &mut r)?,
    }
    Ok(r)
}

fn load_graph(source: &str) -> Result<RootGraph> {
    match source.strip_prefix("builtin:") {
        Some(name) => Ok(catalog::build_graph(name)?),
        None => RootGraph::load(Path::new(source)).with_context(|| format!("loading graph `{source}`")),
    }
}

fn labels(g: &RootGraph, set: VertexSet) -> Value {
    json!(g.set_labels(set))
}

fn parabolic_json(g: &RootGraph, p: &ParabolicSubdiagram) -> Value {
    json!({
        "type": p.type_string(),
        "components": p.components.iter().map(|c| labels(g, c.set)).collect::<Vec<_>>(),
    })
}

fn graph(cmd: &GraphCmd, r: &mut Report) -> Result<()> {
    match cmd {
        GraphCmd::Info { source } => {
            let g = load_graph(source)?;
            let span = span_check(&g);
            let roots = (0..g.len()).filter(|&v| g.kind(v) == VertexKind::Root).count();
            r.set("name", g.name())
                .set("vertices", g.len())
                .set("edges", g.edge_count())
                .set("curves", g.len() - roots)
                .set("minus_one_roots", roots)
                .set("max_multiplicity", g.max_mult())
                .set("connected", g.is_connected(g.all()))
                .set("span_rank", span.rank)
                .set(
                    "span_signature",
                    json!({
                        "positive": span.signature.positive,
                        "negative": span.signature.negative,
                        "zero": span.signature.zero,
                    }),
                );
            match span_det(&g) {
                Ok(d) => {
                    r.set("span_det", d.to_string())
                        .set("span_det_minus_power_of_two", json!(is_minus_power_of_two(&d)));
                }
                Err(_) => {
                    r.set("span_det", Value::Null);
                }
            }
            let parity: Vec<String> = g
                .parity_violations()
                .iter()
                .map(|&(a, b)| format!("{}--{}", g.label(a), g.label(b)))
                .collect();
            r.set("parity_violations", parity);
        }
        GraphCmd::Aut { source } => {
            let g = load_graph(source)?;
            let a = automorphisms(&g);
            let gens: Vec<String> = a.generators.iter().map(|p| cycles(&g, p)).collect();
            r.set("order", a.order.to_string())
                .set("orbit_lengths", a.orbit_lengths.clone())
                .set("base", a.base.iter().map(|&v| g.label(v)).collect::<Vec<_>>())
                .set("generators", gens);
        }
        GraphCmd::Parabolics { maximal, rank, source } => {
            let g = load_graph(source)?;
            if *maximal || rank.is_some() {
                let target = rank.unwrap_or_else(|| default_target_rank(&g));
                let max = maximal_parabolics(&g, target)?;
                let mut types: Vec<String> = max.iter().map(ParabolicSubdiagram::type_string).collect();
                types.sort();
                types.dedup();
                r.set("target_rank", target)
                    .set("count", max.len())
                    .set("types", types)
                    .set("maximal", max.iter().map(|p| parabolic_json(&g, p)).collect::<Vec<_>>());
            } else {
                let conn = connected_parabolics(&g)?;
                let list: Vec<Value> = conn
                    .iter()
                    .map(|c| json!({"type": c.kind.to_string(), "vertices": labels(&g, c.set)}))
                    .collect();
                r.set("count", conn.len()).set("connected", list);
            }
        }
        GraphCmd::Vinberg { rank, source } => {
            let g = load_graph(source)?;
            let target = rank.unwrap_or_else(|| default_target_rank(&g));
            let rep = vinberg_check(&g, target)?;
            let types: Vec<String> = rep.maximal_types().iter().map(|t| join_types(t)).collect();
            let witnesses: Vec<Value> = rep
                .witnesses
                .iter()
                .map(|c| json!({"type": c.kind.to_string(), "vertices": labels(&g, c.set)}))
                .collect();
            r.pass = rep.pass;
            r.set("target_rank", target)
                .set("connected_parabolics", rep.connected.len())
                .set("maximal_parabolics", rep.maximal.len())
                .set("maximal_types", types)
                .set("uncovered", witnesses);
        }
        GraphCmd::Dot { source } => {
            let g = load_graph(source)?;
            let dot = g.export_dot();
            r.set("dot", dot.clone());
            r.raw_text = Some(dot);
        }
    }
    Ok(())
}

/// Cycle notation on vertex labels, fixed points omitted.
fn cycles(g: &RootGraph, p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cyc.push(g.label(v));
            v = p[v];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn load_lattice(spec: &str) -> Result<Lattice> {
    match spec.strip_prefix("file:") {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading `{path}`"))?;
            Ok(Lattice::parse_gram_file(&text)?)
        }
        None => Ok(make_named(spec)?),
    }
}

fn gram_rows(l: &Lattice) -> Vec<String> {
    let g = l.gram();
    (0..g.rows())
        .map(|i| g.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect()
}

fn lattice(cmd: &LatticeCmd, r: &mut Report) -> Result<()> {
    match cmd {
        LatticeCmd::Det { spec } => {
            let l = load_lattice(spec)?;
            let s = l.signature();
            r.set("rank", l.rank())
                .set("det", l.det().to_string())
                .set("signature", json!({"positive": s.positive, "negative": s.negative, "zero": s.zero}))
                .set("even", l.is_even());
        }
        LatticeCmd::Disc { spec } => {
            let l = load_lattice(spec)?;
            let d = discriminant_group(&l)?;
            let gens = &d.generator_lifts;
            let q: Option<Vec<String>> = l
                .is_even()
                .then(|| gens.iter().map(|x| disc_q(&l, x).map(|v| v.to_string())).collect())
                .transpose()?;
            let b: Vec<Vec<String>> = gens
                .iter()
                .map(|x| gens.iter().map(|y| disc_b(&l, x, y).map(|v| v.to_string())).collect())
                .collect::<Result<_, _>>()?;
            r.set("order", d.order().to_string())
                .set(
                    "invariant_factors",
                    d.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                )
                .set("generators", gens.iter().map(|x| qvec_to_string(x)).collect::<Vec<_>>())
                .set("q", json!(q))
                .set("b", json!(b));
        }
        LatticeCmd::Mod2 { spec } => {
            let l = load_lattice(spec)?;
            let m = mod2_nullity(&l)?;
            let n = l.rank();
            let bits = |x: u64| (0..n).map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect::<String>();
            r.set("dimension", n)
                .set("nullity", m.nullity)
                .set("f_rank", m.rank)
                .set("kernel_basis", m.kernel_basis.iter().map(|&x| bits(x)).collect::<Vec<_>>());
        }
        LatticeCmd::Overlattice { spec, glue } => {
            let l = load_lattice(spec)?;
            let vs = glue.iter().map(|g| parse_qvec(g)).collect::<Result<Vec<_>, _>>()?;
            let ext = overlattice(&l, &vs)?;
            r.set("det", ext.lattice.det().to_string())
                .set("original_det", l.det().to_string())
                .set("even", ext.lattice.is_even())
                .set("gram", gram_rows(&ext.lattice))
                .set("basis", ext.basis.iter().map(|x| qvec_to_string(x)).collect::<Vec<_>>());
        }
    }
    Ok(())
}

fn row_json(row: &Table1Row) -> Value {
    json!({
        "key": row.key,
        "type": row.type_name,
        "p": row.p,
        "n": row.n,
        "k": row.k,
        "aut": row.aut,
        "r_invariant": row.r_invariant,
    })
}

fn check(pass: bool, mut fields: Map<String, Value>) -> Value {
    fields.insert("pass".into(), json!(pass));
    Value::Object(fields)
}

fn fields(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn catalog_cmd(cmd: &CatalogCmd, r: &mut Report) -> Result<()> {
    match cmd {
        CatalogCmd::Build { name } => {
            let g = catalog::build_graph(name)?;
            let text = g.serialize();
            r.set("name", name.as_str()).set("vertices", g.len()).set("text", text.clone());
            r.raw_text = Some(text);
        }
        CatalogCmd::Model { name } => {
            let m = catalog::build_model(name)?;
            let boundaries: Map<String, Value> =
                m.boundaries.iter().map(|(l, v)| (l.clone(), json!(qvec_to_string(v)))).collect();
            let roots: Map<String, Value> = m.roots.iter().map(|(l, v)| (l.clone(), json!(qvec_to_string(v)))).collect();
            r.set("name", name.as_str())
                .set("basis", m.basis_labels.clone())
                .set("boundaries", boundaries)
                .set("roots", roots);
            r.raw_text = Some(m.to_text());
        }
        CatalogCmd::Check { name } => catalog_check(name, r)?,
        CatalogCmd::Table => {
            r.set("rows", TABLE1.iter().map(row_json).collect::<Vec<_>>());
        }
    }
    Ok(())
}

fn catalog_check(name: &str, r: &mut Report) -> Result<()> {
    let e = catalog::entry(name)?;
    let g = &e.graph;
    let mut checks = Map::new();
    checks.insert(
        "vertex_count".into(),
        check(g.len() == e.row.k, fields(&[("vertices", json!(g.len())), ("k", json!(e.row.k))])),
    );
    let parity = g.parity_violations();
    checks.insert("parity".into(), check(parity.is_empty(), fields(&[("violations", json!(parity.len()))])));
    if let Some(model) = &e.model {
        let rep = catalog::verify_realization(g, model);
        checks.insert(
            "realization".into(),
            check(
                rep.pass,
                fields(&[("pairs_checked", json!(rep.pairs_checked)), ("summary", json!(rep.summary()))]),
            ),
        );
        let cm = coble_mukai(model)?;
        let l = &cm.lattice;
        let s = l.signature();
        let det = l.det();
        let ok = l.rank() == 10 && l.is_even() && (s.positive, s.negative) == (1, 9) && is_minus_power_of_two(&det).is_some();
        checks.insert(
            "coble_mukai".into(),
            check(
                ok,
                fields(&[
                    ("rank", json!(l.rank())),
                    ("even", json!(l.is_even())),
                    ("signature", json!([s.positive, s.negative])),
                    ("det", json!(det.to_string())),
                ]),
            ),
        );
    }
    let vin = vinberg_check(g, 8)?;
    let types: Vec<String> = vin.maximal_types().iter().map(|t| join_types(t)).collect();
    checks.insert(
        "vinberg".into(),
        check(
            vin.pass,
            fields(&[
                ("target_rank", json!(8)),
                ("maximal_parabolics", json!(vin.maximal.len())),
                ("maximal_types", json!(types)),
            ]),
        ),
    );
    let aut = automorphisms(g);
    let aut_ok = e.aut_order.map_or(true, |o| aut.order == o.into());
    checks.insert(
        "automorphisms".into(),
        check(
            aut_ok,
            fields(&[("order", json!(aut.order.to_string())), ("expected", json!(e.aut_order))]),
        ),
    );
    let rinv = row_r_invariant(e.row)?;
    let rep = r_invariant_check(
        &rinv,
        &RContext {
            p: e.row.characteristic(),
            expect_nullity: None,
        },
    )?;
    checks.insert(
        "r_invariant".into(),
        check(
            rep.pass,
            fields(&[
                ("lattice", json!(e.row.k_lattice)),
                ("dim_h", json!(rep.dim_h)),
                ("nullity", json!(rep.nullity)),
                ("det_abs", json!(rep.det_abs.to_string())),
                ("p_valuation", json!(rep.p_valuation)),
            ]),
        ),
    );
    r.pass = checks.values().all(|c| c["pass"] == json!(true));
    let span = span_det(g)?;
    r.set("name", name)
        .set("row", row_json(e.row))
        .set("span_det", span.to_string())
        .set("checks", checks);
    Ok(())
}

fn parse_char(s: &str) -> Result<CharClass> {
    s.parse().map_err(|e: String| anyhow!(e))
}

fn kind_name(k: FibrationKind) -> &'static str {
    match k {
        FibrationKind::Elliptic => "elliptic",
        FibrationKind::QuasiElliptic => "quasi-elliptic",
    }
}

fn fiber(cmd: &FiberCmd, r: &mut Report) -> Result<()> {
    match cmd {
        FiberCmd::Lookup(args) => {
            let c = parse_char(&args.char_class)?;
            let fibers = fibrations::parse_fibers(&args.fibers.join(" ")).map_err(|e| anyhow!(e))?;
            let kinds = lookup_kinds(&fibers, c);
            r.pass = !kinds.is_empty();
            r.set("char", c.to_string())
                .set("fibers", fibers_to_string(&fibers))
                .set("found", !kinds.is_empty())
                .set("kinds", kinds.into_iter().map(kind_name).collect::<Vec<_>>());
        }
        FiberCmd::Candidates { diagram, char_class } => {
            let types: Vec<DiagramType> = diagram
                .split('+')
                .map(|t| t.parse::<DiagramType>().map_err(|e| anyhow!(e)))
                .collect::<Result<_>>()?;
            if let Some(t) = types.iter().find(|t| !t.is_affine()) {
                bail!("`{t}` is not an extended Dynkin type");
            }
            let classes = match char_class {
                Some(c) => vec![parse_char(c)?],
                None => CharClass::ALL.to_vec(),
            };
            let mut by_class = Map::new();
            for c in classes {
                let a: Vec<String> = admissible_assignments(&types, c).iter().map(ToString::to_string).collect();
                by_class.insert(c.to_string(), json!(a));
            }
            r.pass = by_class.values().any(|v| v.as_array().is_some_and(|a| !a.is_empty()));
            r.set("diagram", join_types(&types)).set("assignments", by_class);
        }
    }
    Ok(())
}
