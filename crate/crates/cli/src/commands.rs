//! One function per subcommand, each returning the full report text.

use std::borrow::Cow;
use std::fmt::Write as _;
use std::path::Path;

use omega_core::algebra::{ElementSet, FiniteAlgebra};
use omega_core::diagram::{
    diagram_automorphism_group, diagram_closure, diagram_quasibasis, is_commutative, validate_diagram, Diagram,
    TupleOfSets,
};
use omega_core::representation::{automorphism_group, orbits_and_stabilizers};
use omega_core::search::automorphisms;
use omega_core::structures::{classify, interchange};
use omega_core::tensor::{check_tensor_laws, tensor_abelian};
use omega_core::words::{closure, is_minimal_generating, quasibasis};
use omega_core::zoo::{build, check_laws, cyclic_group, ZooItem, ZooKind, ZooObject};
use omega_core::{Representation, Side};

use crate::document::{check_carrier, list, DocError, Document, Entry, GenSets, Object};
use crate::{budget, CliError, Command};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }

    fn failing_if(text: String, failed: bool) -> Self {
        Report { text, code: if failed { 2 } else { 0 } }
    }
}

pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { file } => validate(&load(file)?),
        Command::Props { file, object } => props(&load(file)?, object.as_deref()),
        Command::Closure { file, object, gens } => closure_report(&load(file)?, object.as_deref(), gens),
        Command::Quasibasis { file, object, gens } => quasibasis_report(&load(file)?, object.as_deref(), gens),
        Command::Orbits { file, object, product } => orbits(&load(file)?, object.as_deref(), product),
        Command::Autgroup { file, object } => autgroup(&load(file)?, object.as_deref()),
        Command::Classify { file, object, add, mul } => {
            let pair = add.as_deref().zip(mul.as_deref());
            classify_report(&load(file)?, object.as_deref(), pair)
        }
        Command::Interchange { file, op1, op2, object } => {
            interchange_report(&load(file)?, object.as_deref(), op1, op2)
        }
        Command::Tensor { moduli } => tensor(moduli),
        Command::DiagramCheck { file, object } => diagram_check(&load(file)?, object.as_deref()),
        Command::Zoo { kind, params, check, emit } => zoo(kind, params, *check, *emit),
        Command::Format { file } => Ok(Report::ok(load(file)?.doc.to_string())),
    }
}

/// A parsed document and the path it came from, for error context.
pub struct Loaded {
    pub path: String,
    pub doc: Document,
}

impl Loaded {
    fn context(&self, name: &str) -> String {
        format!("{}: {name}", self.path)
    }
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{shown}: {e}")))?;
    let doc = Document::parse(&text).map_err(|e| match e {
        DocError::Syntax { line, col, message } => CliError::Input(format!("{shown}:{line}:{col}: {message}")),
        DocError::Semantic { line, object, message } => CliError::semantic(format!("{shown}:{line}: {object}"), message),
    })?;
    Ok(Loaded { path: shown, doc })
}

/// The named object, or the only object of the first kind in `kinds` that
/// the document has.
fn select<'a>(l: &'a Loaded, object: Option<&str>, kinds: &[&str]) -> Result<&'a Entry, CliError> {
    let wanted = kinds.join(" or ");
    if let Some(name) = object {
        let entry = l
            .doc
            .entries()
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| CliError::semantic(&l.path, format!("no object named {name}")))?;
        if !kinds.contains(&entry.object.kind()) {
            return Err(CliError::semantic(
                l.context(name),
                format!("is a {}, expected {wanted}", entry.object.kind()),
            ));
        }
        return Ok(entry);
    }
    for kind in kinds {
        let found: Vec<&Entry> = l.doc.entries().iter().filter(|e| e.object.kind() == *kind).collect();
        match found.as_slice() {
            [] => continue,
            [one] => return Ok(one),
            many => {
                let names: Vec<&str> = many.iter().map(|e| e.name.as_str()).collect();
                return Err(CliError::semantic(
                    &l.path,
                    format!("several {kind} objects ({}); choose one with --object", names.join(", ")),
                ));
            }
        }
    }
    Err(CliError::semantic(&l.path, format!("no {wanted} in the document")))
}

fn set(s: &ElementSet) -> String {
    let entries: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", entries.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The identity action of a one-element actor with no operators, so a bare
/// algebra can be used wherever a representation is expected.
fn bare(a: &FiniteAlgebra) -> Result<Representation, CliError> {
    let actor = FiniteAlgebra::set(1).map_err(|e| CliError::core("bare representation", e))?;
    Representation::new(actor, a.clone(), vec![(0..a.size()).collect()], Vec::new(), Side::Left)
        .map_err(|e| CliError::core("bare representation", e))
}

enum Target<'a> {
    Rep { heading: String, name: &'a str, rep: Cow<'a, Representation> },
    Diagram { name: &'a str, vertices: &'a [(String, String)], diagram: &'a Diagram },
}

fn target<'a>(l: &'a Loaded, object: Option<&str>) -> Result<Target<'a>, CliError> {
    let entry = select(l, object, &["diagram", "representation", "algebra"])?;
    let name = entry.name.as_str();
    Ok(match &entry.object {
        Object::Algebra(a) => Target::Rep {
            heading: format!("algebra {name} (bare representation)"),
            name,
            rep: Cow::Owned(bare(a)?),
        },
        Object::Representation { representation, .. } => Target::Rep {
            heading: format!("representation {name}"),
            name,
            rep: Cow::Borrowed(representation),
        },
        Object::Diagram { vertices, diagram, .. } => Target::Diagram { name, vertices, diagram },
        Object::Gens { .. } => unreachable!("gens are never selected"),
    })
}

/// `2,3`, `{2, 3}` or an empty string; `None` when `s` names an object.
fn parse_elements(s: &str) -> Result<Option<ElementSet>, CliError> {
    let t = s.trim();
    let braced = t.strip_prefix('{').and_then(|r| r.strip_suffix('}'));
    if braced.is_none() && t.starts_with(|c: char| !c.is_ascii_digit()) {
        return Ok(None);
    }
    braced
        .unwrap_or(t)
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| CliError::Input(format!("--gens: {p:?} is not an element index"))))
        .collect::<Result<ElementSet, _>>()
        .map(Some)
}

fn rep_gens(l: &Loaded, name: &str, specs: &[String], size: usize) -> Result<Option<ElementSet>, CliError> {
    let spec = match specs {
        [] => return Ok(None),
        [one] => one,
        _ => return Err(CliError::Input("--gens may be given once for a representation".into())),
    };
    let s = match parse_elements(spec)? {
        Some(s) => s,
        None => match l.doc.get(spec) {
            Some(Object::Gens { of, sets: GenSets::Elements(s) }) if of == name => s.clone(),
            _ => return Err(CliError::semantic(l.context(spec), format!("is not a gens object of {name}"))),
        },
    };
    check_carrier(&s, size).map_err(|m| CliError::semantic(l.context(name), m))?;
    Ok(Some(s))
}

fn diagram_gens(
    l: &Loaded,
    name: &str,
    vertices: &[(String, String)],
    diagram: &Diagram,
    specs: &[String],
) -> Result<Option<TupleOfSets>, CliError> {
    if specs.is_empty() {
        return Ok(None);
    }
    let mut tuple = vec![ElementSet::new(); vertices.len()];
    let mut add = |v: &str, s: &ElementSet| -> Result<(), CliError> {
        let i = vertices
            .iter()
            .position(|(w, _)| w == v)
            .ok_or_else(|| CliError::semantic(l.context(name), format!("no vertex {v}")))?;
        check_carrier(s, diagram.algebra_at(i).size()).map_err(|m| CliError::semantic(l.context(name), m))?;
        tuple[i].extend(s.iter().copied());
        Ok(())
    };
    for spec in specs {
        if let Some((v, elements)) = spec.split_once('=') {
            let s = parse_elements(elements)?
                .ok_or_else(|| CliError::Input(format!("--gens {spec}: expected VERTEX=ELEMENTS")))?;
            add(v.trim(), &s)?;
        } else {
            match l.doc.get(spec) {
                Some(Object::Gens { of, sets: GenSets::PerVertex(per) }) if of == name => {
                    for (v, s) in per {
                        add(v, s)?;
                    }
                }
                _ => {
                    return Err(CliError::semantic(
                        l.context(spec),
                        format!("is not a gens object of {name}; use VERTEX=ELEMENTS"),
                    ))
                }
            }
        }
    }
    Ok(Some(tuple))
}

fn tuple(vertices: &[(String, String)], sets: &TupleOfSets) -> String {
    let parts: Vec<String> = vertices.iter().zip(sets).map(|((v, _), s)| format!("{v} {}", set(s))).collect();
    parts.join("; ")
}

/// Distinct algebra names in order of first appearance, matching the
/// diagram's algebra indices.
fn algebra_names(vertices: &[(String, String)]) -> Vec<&str> {
    let mut names: Vec<&str> = Vec::new();
    for (_, a) in vertices {
        if !names.contains(&a.as_str()) {
            names.push(a);
        }
    }
    names
}

fn layers(vertices: &[(String, String)], layers: &[Vec<usize>]) -> String {
    let parts: Vec<String> = layers
        .iter()
        .map(|l| {
            let names: Vec<&str> = l.iter().map(|&v| vertices[v].0.as_str()).collect();
            format!("{{{}}}", names.join(", "))
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn validate(l: &Loaded) -> Result<Report, CliError> {
    let mut out = String::new();
    let mut invalid = 0;
    for entry in l.doc.entries() {
        let name = &entry.name;
        let line = match &entry.object {
            Object::Algebra(a) => format!("valid; carrier size {}", a.size()),
            Object::Representation { actor, space, representation } => match representation.validate() {
                Ok(()) => format!(
                    "valid; actor {actor} ({}), space {space} ({})",
                    representation.actor().size(),
                    representation.space().size()
                ),
                Err(v) => {
                    invalid += 1;
                    format!("invalid; {v}")
                }
            },
            Object::Diagram { vertices, edges, diagram } => match validate_diagram(diagram) {
                Ok(ls) => {
                    let broken = edges
                        .iter()
                        .zip(diagram.edges())
                        .find(|(_, e)| !e.representation.is_valid());
                    match broken {
                        Some(((from, to, r), _)) => {
                            invalid += 1;
                            format!("invalid; edge {from} -> {to} uses invalid representation {r}")
                        }
                        None => format!(
                            "valid; {} vertices, {} edges, layers {}",
                            vertices.len(),
                            edges.len(),
                            layers(vertices, &ls)
                        ),
                    }
                }
                Err(e) if e.is_resource() => return Err(CliError::core(l.context(name), e)),
                Err(e) => {
                    invalid += 1;
                    format!("invalid; {e}")
                }
            },
            Object::Gens { of, sets } => match sets {
                GenSets::Elements(s) => format!("valid; {} elements of {of}", s.len()),
                GenSets::PerVertex(per) => format!("valid; {} vertex sets of {of}", per.len()),
            },
        };
        writeln!(out, "{} {name}: {line}", entry.object.kind()).unwrap();
    }
    if l.doc.entries().is_empty() {
        writeln!(out, "empty document").unwrap();
    }
    if invalid > 0 {
        writeln!(out, "{invalid} invalid object(s)").unwrap();
    }
    Ok(Report::failing_if(out, invalid > 0))
}

fn props(l: &Loaded, object: Option<&str>) -> Result<Report, CliError> {
    let entry = select(l, object, &["representation"])?;
    let Object::Representation { actor, space, representation: rep } = &entry.object else {
        unreachable!()
    };
    let p = rep.properties().map_err(|e| CliError::core(l.context(&entry.name), e))?;
    let side = match rep.side() {
        Side::Left => "left",
        Side::Right => "right",
    };
    let kernel: ElementSet = (0..rep.actor().size())
        .filter(|&a| (0..rep.space().size()).all(|x| rep.act(a, x) == x))
        .collect();
    let mut out = String::new();
    writeln!(
        out,
        "representation {}: actor {actor} ({}), space {space} ({}), {side} side",
        entry.name,
        rep.actor().size(),
        rep.space().size()
    )
    .unwrap();
    writeln!(out, "effective: {}", yes(p.effective)).unwrap();
    writeln!(out, "free: {}", yes(p.free)).unwrap();
    writeln!(out, "transitive: {}", yes(p.transitive)).unwrap();
    writeln!(out, "single transitive: {}", yes(p.single_transitive)).unwrap();
    writeln!(out, "kernel of inefficiency: {}", set(&kernel)).unwrap();
    Ok(Report::ok(out))
}

fn closure_report(l: &Loaded, object: Option<&str>, gens: &[String]) -> Result<Report, CliError> {
    let mut out = String::new();
    match target(l, object)? {
        Target::Rep { heading, name, rep } => {
            let x = rep_gens(l, name, gens, rep.space().size())?.unwrap_or_default();
            let c = closure(&rep, &x).map_err(|e| CliError::core(l.context(name), e))?;
            writeln!(out, "object: {heading}").unwrap();
            writeln!(out, "generators: {}", set(&x)).unwrap();
            writeln!(
                out,
                "closure: {} ({} of {} elements)",
                set(&c.members),
                c.members.len(),
                rep.space().size()
            )
            .unwrap();
            writeln!(out, "witnesses:").unwrap();
            for (e, w) in &c.witness {
                writeln!(out, "  {e} = {w}").unwrap();
            }
        }
        Target::Diagram { name, vertices, diagram } => {
            let x = diagram_gens(l, name, vertices, diagram, gens)?
                .unwrap_or_else(|| vec![ElementSet::new(); vertices.len()]);
            let c = diagram_closure(diagram, &x).map_err(|e| CliError::core(l.context(name), e))?;
            writeln!(out, "object: diagram {name}").unwrap();
            writeln!(out, "generators: {}", tuple(vertices, &x)).unwrap();
            writeln!(out, "closure:").unwrap();
            for (v, ((vn, _), s)) in vertices.iter().zip(&c.members).enumerate() {
                let size = diagram.algebra_at(v).size();
                writeln!(out, "  {vn}: {} ({} of {size} elements)", set(s), s.len()).unwrap();
            }
            let names: Vec<String> = algebra_names(vertices)
                .iter()
                .enumerate()
                .map(|(i, a)| format!("{i} = {a}"))
                .collect();
            writeln!(out, "algebras: {}", names.join(", ")).unwrap();
            writeln!(out, "witnesses:").unwrap();
            for ((a, e), w) in &c.witness {
                writeln!(out, "  {a}.{e} = {w}").unwrap();
            }
        }
    }
    Ok(Report::ok(out))
}

fn quasibasis_report(l: &Loaded, object: Option<&str>, gens: &[String]) -> Result<Report, CliError> {
    let mut out = String::new();
    match target(l, object)? {
        Target::Rep { heading, name, rep } => {
            let n = rep.space().size();
            let x = rep_gens(l, name, gens, n)?.unwrap_or_else(|| (0..n).collect());
            let core = |e| CliError::core(l.context(name), e);
            let q = quasibasis(&rep, &x).map_err(core)?;
            let minimal = is_minimal_generating(&rep, &q).map_err(core)?;
            let removed: ElementSet = x.difference(&q).copied().collect();
            writeln!(out, "object: {heading}").unwrap();
            writeln!(out, "generators: {}", set(&x)).unwrap();
            if !removed.is_empty() {
                writeln!(out, "removed: {}", set(&removed)).unwrap();
            }
            let tag = if minimal { "minimal" } else { "not minimal" };
            writeln!(out, "quasibasis: {} ({tag})", set(&q)).unwrap();
        }
        Target::Diagram { name, vertices, diagram } => {
            let x = diagram_gens(l, name, vertices, diagram, gens)?.unwrap_or_else(|| {
                (0..vertices.len())
                    .map(|v| (0..diagram.algebra_at(v).size()).collect())
                    .collect()
            });
            let q = diagram_quasibasis(diagram, &x).map_err(|e| CliError::core(l.context(name), e))?;
            writeln!(out, "object: diagram {name}").unwrap();
            writeln!(out, "generators: {}", tuple(vertices, &x)).unwrap();
            writeln!(out, "quasibasis: {}", tuple(vertices, &q)).unwrap();
        }
    }
    Ok(Report::ok(out))
}

fn orbits(l: &Loaded, object: Option<&str>, product: &str) -> Result<Report, CliError> {
    let entry = select(l, object, &["representation"])?;
    let Object::Representation { representation: rep, .. } = &entry.object else {
        unreachable!()
    };
    let o = orbits_and_stabilizers(rep, product).map_err(|e| CliError::core(l.context(&entry.name), e))?;
    let blocks = o.partition.blocks();
    let mut out = String::new();
    writeln!(out, "orbits of representation {} under {product}: {}", entry.name, blocks.len()).unwrap();
    for b in &blocks {
        writeln!(out, "orbit {}", set(&b.iter().copied().collect())).unwrap();
        for &x in b {
            writeln!(out, "  stabilizer of {x}: {}", set(&o.stabilizers[x])).unwrap();
        }
    }
    Ok(Report::ok(out))
}

fn autgroup(l: &Loaded, object: Option<&str>) -> Result<Report, CliError> {
    let entry = select(l, object, &["diagram", "representation", "algebra"])?;
    let b = budget()?;
    let core = |e| CliError::core(l.context(&entry.name), e);
    let mut lines = Vec::new();
    match &entry.object {
        Object::Algebra(a) => {
            for img in automorphisms(a, b).map_err(core)? {
                lines.push(list(&img));
            }
        }
        Object::Representation { representation, .. } => {
            for m in automorphism_group(representation, b).map_err(core)? {
                lines.push(list(m.image()));
            }
        }
        Object::Diagram { vertices, diagram, .. } => {
            for maps in diagram_automorphism_group(diagram, b).map_err(core)? {
                let parts: Vec<String> = vertices
                    .iter()
                    .zip(&maps)
                    .map(|((v, _), m)| format!("{v} {}", list(m.image())))
                    .collect();
                lines.push(parts.join("; "));
            }
        }
        Object::Gens { .. } => unreachable!(),
    }
    let mut out = String::new();
    writeln!(out, "automorphisms of {} {}: {}", entry.object.kind(), entry.name, lines.len()).unwrap();
    for line in lines {
        writeln!(out, "  {line}").unwrap();
    }
    Ok(Report::ok(out))
}

fn classify_report(l: &Loaded, object: Option<&str>, pair: Option<(&str, &str)>) -> Result<Report, CliError> {
    let entry = select(l, object, &["algebra"])?;
    let Object::Algebra(a) = &entry.object else { unreachable!() };
    let flags = classify(a, pair).map_err(|e| CliError::core(l.context(&entry.name), e))?;
    let mut out = String::new();
    writeln!(out, "algebra {}: carrier size {}", entry.name, a.size()).unwrap();
    for (op, g) in &flags.is_group_under {
        let abelian = flags.abelian_wrt.get(op).copied().unwrap_or(false);
        writeln!(out, "under {op}: group {}, commutative {}", yes(*g), yes(abelian)).unwrap();
    }
    let or_none = |s: &Option<String>| s.clone().unwrap_or_else(|| "none".into());
    writeln!(out, "Omega-group with respect to: {}", or_none(&flags.omega_group_wrt)).unwrap();
    writeln!(
        out,
        "multiplicative Omega-group with respect to: {}",
        or_none(&flags.multiplicative_omega_group_wrt)
    )
    .unwrap();
    let ring = flags.omega_ring_wrt.as_ref().map(|(p, m)| format!("({p}, {m})"));
    writeln!(out, "Omega-ring with respect to: {}", or_none(&ring)).unwrap();
    Ok(Report::ok(out))
}

fn interchange_report(l: &Loaded, object: Option<&str>, op1: &str, op2: &str) -> Result<Report, CliError> {
    let entry = select(l, object, &["algebra"])?;
    let Object::Algebra(a) = &entry.object else { unreachable!() };
    let found = interchange(a, op1, op2).map_err(|e| CliError::core(l.context(&entry.name), e))?;
    let mut out = String::new();
    match found {
        None => writeln!(out, "interchange of {op1} and {op2} on {}: holds", entry.name).unwrap(),
        Some(rows) => {
            writeln!(out, "interchange of {op1} and {op2} on {}: fails", entry.name).unwrap();
            let flat: Vec<String> = rows.iter().flatten().map(usize::to_string).collect();
            let shown: Vec<String> = rows.iter().map(list).collect();
            writeln!(out, "counterexample: ({}) as rows [{}]", flat.join(", "), shown.join(", ")).unwrap();
        }
    }
    Ok(Report::ok(out))
}

fn tensor(moduli: &[u64]) -> Result<Report, CliError> {
    let b = budget()?;
    let title: Vec<String> = moduli.iter().map(|m| format!("Z_{m}")).collect();
    let title = title.join(" (x) ");
    let mut factors = Vec::new();
    for &m in moduli {
        if m.saturating_mul(m) > b {
            return Err(CliError::Resource {
                context: title,
                message: format!("Z_{m} needs a table of {m}^2 entries, budget {b}"),
            });
        }
        factors.push(cyclic_group(m as usize).map_err(|e| CliError::core(&title, e))?);
    }
    let t = tensor_abelian(&factors, "+").map_err(|e| CliError::core(&title, e))?;
    let laws = check_tensor_laws(&t, b).map_err(|e| CliError::core(&title, e))?;
    let ok = |h: bool| if h { "ok" } else { "FAILED" };
    let mut out = String::new();
    writeln!(out, "{title}").unwrap();
    writeln!(out, "order: {}", t.order()).unwrap();
    let factors: Vec<String> = t.invariant_factors.iter().map(u64::to_string).collect();
    writeln!(out, "invariant factors: [{}]", factors.join(", ")).unwrap();
    writeln!(out, "additivity: {}", ok(laws.additivity)).unwrap();
    writeln!(out, "balancing: {}", ok(laws.balancing)).unwrap();
    if let Some(a) = laws.associativity {
        writeln!(out, "associativity: {}", ok(a)).unwrap();
    }
    Ok(Report::failing_if(out, !laws.all_hold()))
}

fn diagram_check(l: &Loaded, object: Option<&str>) -> Result<Report, CliError> {
    let entry = select(l, object, &["diagram"])?;
    let Object::Diagram { vertices, edges, diagram } = &entry.object else {
        unreachable!()
    };
    let core = |e| CliError::core(l.context(&entry.name), e);
    let ls = validate_diagram(diagram).map_err(core)?;
    let failure = is_commutative(diagram).map_err(core)?;
    let mut out = String::new();
    writeln!(out, "diagram {}: {} vertices, {} edges", entry.name, vertices.len(), edges.len()).unwrap();
    writeln!(out, "layers: {}", layers(vertices, &ls)).unwrap();
    for (i, (from, to, r)) in edges.iter().enumerate() {
        let valid = diagram.edges()[i].representation.is_valid();
        writeln!(out, "edge {i}: {from} -> {to} by {r} ({})", if valid { "valid" } else { "invalid" }).unwrap();
    }
    match failure {
        None => writeln!(out, "commutative: yes").unwrap(),
        Some(f) => writeln!(
            out,
            "commutative: no; edges {} and {} into {} disagree at actor elements ({}, {}), point {}",
            f.edges.0, f.edges.1, vertices[f.vertex].0, f.actor_elements.0, f.actor_elements.1, f.point
        )
        .unwrap(),
    }
    Ok(Report::ok(out))
}

fn zoo(name: &str, params: &[usize], check: bool, emit: bool) -> Result<Report, CliError> {
    let kind = ZooKind::parse(name, params).map_err(|e| CliError::Input(format!("zoo: {e}")))?;
    let context = format!("zoo {kind}");
    let item = build(kind).map_err(|e| CliError::core(&context, e))?;
    if emit {
        let doc = zoo_document(&item).map_err(|m| CliError::semantic(&context, m))?;
        return Ok(Report::ok(doc.to_string()));
    }
    let mut out = String::new();
    writeln!(out, "zoo: {kind}").unwrap();
    writeln!(out, "object: {}", describe(&item).map_err(|e| CliError::core(&context, e))?).unwrap();
    for note in &item.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    if !check {
        return Ok(Report::ok(out));
    }
    let report = check_laws(&item).map_err(|e| CliError::core(&context, e))?;
    writeln!(out, "laws:").unwrap();
    for c in &report.checks {
        writeln!(out, "  {c}").unwrap();
    }
    let failed = report.checks.iter().filter(|c| c.failure.is_some()).count();
    if failed == 0 {
        writeln!(out, "all laws hold").unwrap();
    } else {
        writeln!(out, "{failed} law(s) failed").unwrap();
    }
    Ok(Report::failing_if(out, failed > 0))
}

fn describe(item: &ZooItem) -> omega_core::Result<String> {
    Ok(match &item.object {
        ZooObject::Algebra(a) => {
            let ops: Vec<String> = (0..a.domain().len())
                .map(|op| format!("{} ({})", a.domain().symbol(op), a.domain().arity(op)))
                .collect();
            format!("algebra of size {}; operators {}", a.size(), ops.join(", "))
        }
        ZooObject::Representation(r) => format!(
            "representation of an actor of size {} on a space of size {}",
            r.actor().size(),
            r.space().size()
        ),
        ZooObject::Diagram(d) => {
            let ls: Vec<String> = validate_diagram(d)?
                .iter()
                .map(|l| set(&l.iter().copied().collect()))
                .collect();
            format!(
                "diagram with {} vertices and {} edges; layers [{}]",
                d.vertex_count(),
                d.edges().len(),
                ls.join(", ")
            )
        }
        ZooObject::Extension(ext) => format!(
            "ring of {} maps; images of D at positions {}",
            ext.maps.len(),
            set(&ext.image_of_d.iter().copied().collect())
        ),
    })
}

/// The built object as a document: algebras `a0`, `a1`, ... and
/// representations `e0`, `e1`, ... for diagrams, vertices `v0`, `v1`, ...
fn zoo_document(item: &ZooItem) -> Result<Document, String> {
    let kind = item.kind.to_string();
    let name = kind.split(' ').next().unwrap_or("zoo").to_string();
    let mut doc = Document::new();
    match &item.object {
        ZooObject::Algebra(a) => doc.insert(name, Object::Algebra(a.clone()))?,
        ZooObject::Extension(ext) => doc.insert(name, Object::Algebra(ext.ring.clone()))?,
        ZooObject::Representation(r) => {
            doc.insert("actor".into(), Object::Algebra(r.actor().clone()))?;
            doc.insert("space".into(), Object::Algebra(r.space().clone()))?;
            doc.insert(
                name,
                Object::Representation {
                    actor: "actor".into(),
                    space: "space".into(),
                    representation: r.clone(),
                },
            )?;
        }
        ZooObject::Diagram(d) => {
            for (i, a) in d.algebras().iter().enumerate() {
                doc.insert(format!("a{i}"), Object::Algebra(a.clone()))?;
            }
            let vertices: Vec<(String, String)> = d
                .vertices()
                .iter()
                .enumerate()
                .map(|(v, a)| (format!("v{v}"), format!("a{a}")))
                .collect();
            let mut edges = Vec::new();
            for (i, e) in d.edges().iter().enumerate() {
                doc.insert(
                    format!("e{i}"),
                    Object::Representation {
                        actor: vertices[e.from].1.clone(),
                        space: vertices[e.to].1.clone(),
                        representation: e.representation.clone(),
                    },
                )?;
                edges.push((vertices[e.from].0.clone(), vertices[e.to].0.clone(), format!("e{i}")));
            }
            doc.insert(
                name,
                Object::Diagram {
                    vertices,
                    edges,
                    diagram: d.clone(),
                },
            )?;
        }
    }
    Ok(doc)
}
