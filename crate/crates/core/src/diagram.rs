//! Diagrams of representations: connected directed graphs without cycles
//! whose vertices are algebras and whose edges are representations.
//!
//! Several vertices may refer to the same algebra. Generating sets and
//! morphism components are then shared between those vertices.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::algebra::{is_homomorphism, ElementMap, ElementSet, FiniteAlgebra, Odometer};
use crate::error::{Error, Result};
use crate::representation::{verify_group, Representation};
use crate::search::automorphisms;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub representation: Representation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    algebras: Vec<FiniteAlgebra>,
    vertices: Vec<usize>,
    edges: Vec<Edge>,
}

/// One subset per vertex.
pub type TupleOfSets = Vec<ElementSet>;

impl Diagram {
    /// `vertices[v]` is the index of the algebra at vertex `v`.
    pub fn new(algebras: Vec<FiniteAlgebra>, vertices: Vec<usize>, edges: Vec<Edge>) -> Result<Self> {
        if let Some(&a) = vertices.iter().find(|&&a| a >= algebras.len()) {
            return Err(Error::Index(format!("vertex refers to missing algebra {a}")));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.from >= vertices.len() || e.to >= vertices.len() {
                return Err(Error::Index(format!("edge {i} leaves the vertex range")));
            }
            if e.representation.actor() != &algebras[vertices[e.from]] {
                return Err(Error::DomainMismatch(format!(
                    "edge {i}: actor differs from the algebra at vertex {}",
                    e.from
                )));
            }
            if e.representation.space() != &algebras[vertices[e.to]] {
                return Err(Error::DomainMismatch(format!(
                    "edge {i}: space differs from the algebra at vertex {}",
                    e.to
                )));
            }
        }
        Ok(Diagram {
            algebras,
            vertices,
            edges,
        })
    }

    /// A single vertex holding `a`.
    pub fn single(a: FiniteAlgebra) -> Self {
        Diagram {
            algebras: vec![a],
            vertices: vec![0],
            edges: Vec::new(),
        }
    }

    pub fn algebras(&self) -> &[FiniteAlgebra] {
        &self.algebras
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn algebra_at(&self, v: usize) -> &FiniteAlgebra {
        &self.algebras[self.vertices[v]]
    }

    /// Edges ending at `v`.
    pub fn incoming(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.to == v)
    }

    /// Edges `i -> j` and `j -> k` forming a path, if both exist.
    pub fn path(&self, first: usize, second: usize) -> Result<(&Edge, &Edge)> {
        let e1 = self
            .edges
            .get(first)
            .ok_or_else(|| Error::Index(format!("no edge {first}")))?;
        let e2 = self
            .edges
            .get(second)
            .ok_or_else(|| Error::Index(format!("no edge {second}")))?;
        if e1.to != e2.from {
            return Err(Error::Shape(format!("edges {first} and {second} do not form a path")));
        }
        Ok((e1, e2))
    }
}

/// Checks the diagram and returns its layers: vertices grouped by the length
/// of the longest path reaching them from a source.
pub fn validate_diagram(d: &Diagram) -> Result<Vec<Vec<usize>>> {
    let n = d.vertex_count();
    if n == 0 {
        return Err(Error::Structure("diagram has no vertices".into()));
    }
    for (i, e) in d.edges.iter().enumerate() {
        if e.from == e.to {
            return Err(Error::Structure(format!("edge {i} is a loop")));
        }
        if let Err(v) = e.representation.validate() {
            return Err(Error::Structure(format!("edge {i}: {v}")));
        }
    }
    // Undirected connectivity.
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for e in &d.edges {
            for (a, b) in [(e.from, e.to), (e.to, e.from)] {
                if a == v && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::Structure(format!("vertex {v} is disconnected from vertex 0")));
    }
    // Kahn's order, tracking longest path lengths.
    let mut indegree = vec![0usize; n];
    for e in &d.edges {
        indegree[e.to] += 1;
    }
    let mut depth = vec![0usize; n];
    let mut ready: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut done = 0;
    while let Some(v) = ready.pop_front() {
        done += 1;
        for e in d.edges.iter().filter(|e| e.from == v) {
            depth[e.to] = depth[e.to].max(depth[v] + 1);
            indegree[e.to] -= 1;
            if indegree[e.to] == 0 {
                ready.push_back(e.to);
            }
        }
    }
    if done < n {
        return Err(Error::Structure("diagram contains a directed cycle".into()));
    }
    let height = depth.iter().max().copied().unwrap_or(0);
    let mut layers = vec![Vec::new(); height + 1];
    for (v, &k) in depth.iter().enumerate() {
        layers[k].push(v);
    }
    Ok(layers)
}

/// Two actions on one vertex that fail to commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationFailure {
    pub vertex: usize,
    pub edges: (usize, usize),
    pub actor_elements: (usize, usize),
    pub point: usize,
}

impl fmt::Display for CommutationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "edges {} and {} into vertex {} do not commute at actor elements ({}, {}), point {}",
            self.edges.0, self.edges.1, self.vertex, self.actor_elements.0, self.actor_elements.1, self.point
        )
    }
}

/// Every pair of edges into a common vertex acts by commuting maps.
pub fn is_commutative(d: &Diagram) -> Result<Option<CommutationFailure>> {
    validate_diagram(d)?;
    for v in 0..d.vertex_count() {
        let incoming: Vec<(usize, &Edge)> = d.incoming(v).collect();
        for (x, &(i, ei)) in incoming.iter().enumerate() {
            for &(j, ej) in &incoming[x + 1..] {
                let (fi, fj) = (&ei.representation, &ej.representation);
                for a in 0..fi.actor().size() {
                    for b in 0..fj.actor().size() {
                        for p in 0..d.algebra_at(v).size() {
                            if fi.act(a, fj.act(b, p)) != fj.act(b, fi.act(a, p)) {
                                return Ok(Some(CommutationFailure {
                                    vertex: v,
                                    edges: (i, j),
                                    actor_elements: (a, b),
                                    point: p,
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The representation induced along a path `A_i -> A_j -> A_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedTower {
    /// The distinct transformations `f_jk(a_j)` of `A_k`, sorted.
    pub tables: Vec<Vec<usize>>,
    /// `table_of[a_j]`: position of `f_jk(a_j)` in `tables`.
    pub table_of: Vec<usize>,
    /// `action[a_i]` sends table `t` of `f_jk(a_j)` to the table of `f_jk(f_ij(a_i)(a_j))`.
    pub action: Vec<ElementMap>,
    /// `pair_action[a_i * |A_j| + a_j] = f_jk(f_ij(a_i)(a_j))`.
    pub pair_action: Vec<ElementMap>,
}

pub fn compose_tower(d: &Diagram, first: usize, second: usize) -> Result<ComposedTower> {
    validate_diagram(d)?;
    let (e1, e2) = d.path(first, second)?;
    let (fij, fjk) = (&e1.representation, &e2.representation);
    if !fjk.properties()?.effective {
        return Err(Error::Structure(format!("edge {second} is not effective")));
    }
    if !fij.properties()?.free {
        return Err(Error::Structure(format!("edge {first} is not free")));
    }
    let mut tables = fjk.action_tables();
    tables.sort();
    tables.dedup();
    let table_of: Vec<usize> = fjk
        .actions()
        .iter()
        .map(|m| tables.binary_search(&m.image().to_vec()).expect("table present"))
        .collect();
    let nj = fij.space().size();
    let mut action = Vec::new();
    let mut pair_action = Vec::new();
    for ai in 0..fij.actor().size() {
        let mut image = vec![0; tables.len()];
        for aj in 0..nj {
            image[table_of[aj]] = table_of[fij.act(ai, aj)];
            pair_action.push(fjk.action(fij.act(ai, aj)).clone());
        }
        action.push(ElementMap::new(tables.len(), image)?);
    }
    Ok(ComposedTower {
        tables,
        table_of,
        action,
        pair_action,
    })
}

/// Where a tuple of maps fails to be a morphism of diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramMorphismFailure {
    NotHomomorphism { vertex: usize },
    Edge { edge: usize, actor_element: usize, point: usize },
}

impl fmt::Display for DiagramMorphismFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramMorphismFailure::NotHomomorphism { vertex } => {
                write!(f, "map at vertex {vertex} is not a homomorphism")
            }
            DiagramMorphismFailure::Edge {
                edge,
                actor_element,
                point,
            } => write!(f, "edge {edge} fails at actor element {actor_element}, point {point}"),
        }
    }
}

fn same_shape(d: &Diagram, e: &Diagram) -> Result<()> {
    let shape = |x: &Diagram| {
        (
            x.vertex_count(),
            x.edges.iter().map(|e| (e.from, e.to)).collect::<Vec<_>>(),
        )
    };
    if shape(d) != shape(e) {
        return Err(Error::Shape("diagrams have different shapes".into()));
    }
    Ok(())
}

/// First failure of `h` (one map per vertex) as a morphism `d -> e`.
pub fn diagram_morphism_failure(
    d: &Diagram,
    e: &Diagram,
    h: &[ElementMap],
) -> Result<Option<DiagramMorphismFailure>> {
    same_shape(d, e)?;
    if h.len() != d.vertex_count() {
        return Err(Error::Shape(format!(
            "{} maps for {} vertices",
            h.len(),
            d.vertex_count()
        )));
    }
    for v in 0..d.vertex_count() {
        let (a, b) = (d.algebra_at(v), e.algebra_at(v));
        if h[v].source_size() != a.size() || h[v].target_size() != b.size() {
            return Err(Error::Shape(format!("map at vertex {v} has the wrong shape")));
        }
        for w in 0..v {
            if d.vertices[w] == d.vertices[v] && e.vertices[w] == e.vertices[v] && h[w] != h[v] {
                return Err(Error::Precondition(format!(
                    "vertices {w} and {v} share an algebra but receive different maps"
                )));
            }
        }
    }
    for v in 0..d.vertex_count() {
        if !is_homomorphism(&h[v], d.algebra_at(v), e.algebra_at(v))? {
            return Ok(Some(DiagramMorphismFailure::NotHomomorphism { vertex: v }));
        }
    }
    for (k, (de, ee)) in d.edges.iter().zip(&e.edges).enumerate() {
        if let Some((a, x)) = edge_failure(&de.representation, &ee.representation, &h[de.from], &h[de.to]) {
            return Ok(Some(DiagramMorphismFailure::Edge {
                edge: k,
                actor_element: a,
                point: x,
            }));
        }
    }
    Ok(None)
}

/// `h_j(f(a)(x)) = g(h_i(a))(h_j(x))` for all `a`, `x`.
fn edge_failure(
    f: &Representation,
    g: &Representation,
    hi: &ElementMap,
    hj: &ElementMap,
) -> Option<(usize, usize)> {
    for a in 0..f.actor().size() {
        for x in 0..f.space().size() {
            if hj.apply(f.act(a, x)) != g.act(hi.apply(a), hj.apply(x)) {
                return Some((a, x));
            }
        }
    }
    None
}

pub fn is_diagram_morphism(d: &Diagram, e: &Diagram, h: &[ElementMap]) -> Result<bool> {
    Ok(diagram_morphism_failure(d, e, h)?.is_none())
}

/// A word in a diagram: generators, vertex operations, and edge actions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagramWord {
    /// The `index`-th generator (ascending order) of an algebra.
    Gen { algebra: usize, index: usize },
    Op(String, Vec<DiagramWord>),
    /// `f_edge(actor)(argument)`.
    Act { edge: usize, actor: Box<DiagramWord>, argument: Box<DiagramWord> },
}

impl DiagramWord {
    pub fn size(&self) -> usize {
        match self {
            DiagramWord::Gen { .. } => 1,
            DiagramWord::Op(_, ch) => 1 + ch.iter().map(DiagramWord::size).sum::<usize>(),
            DiagramWord::Act { actor, argument, .. } => 1 + actor.size() + argument.size(),
        }
    }
}

impl fmt::Display for DiagramWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramWord::Gen { algebra, index } => write!(f, "Gen({algebra}.{index})"),
            DiagramWord::Op(s, ch) => {
                write!(f, "Op({s},[")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "])")
            }
            DiagramWord::Act { edge, actor, argument } => write!(f, "Act({edge},{actor},{argument})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramClosure {
    /// Closed set per vertex.
    pub members: TupleOfSets,
    /// Smallest witness words, keyed by (algebra, element).
    pub witness: BTreeMap<(usize, usize), DiagramWord>,
}

/// Merges per-vertex sets into per-algebra sets.
fn shared_sets(d: &Diagram, x: &TupleOfSets) -> Result<Vec<ElementSet>> {
    if x.len() != d.vertex_count() {
        return Err(Error::Shape(format!("{} sets for {} vertices", x.len(), d.vertex_count())));
    }
    let mut sets = vec![ElementSet::new(); d.algebras.len()];
    for (v, s) in x.iter().enumerate() {
        let size = d.algebra_at(v).size();
        if let Some(e) = s.iter().find(|&&e| e >= size) {
            return Err(Error::Index(format!("element {e} outside vertex {v} of size {size}")));
        }
        sets[d.vertices[v]].extend(s.iter().copied());
    }
    Ok(sets)
}

fn spread(d: &Diagram, sets: &[ElementSet]) -> TupleOfSets {
    d.vertices.iter().map(|&a| sets[a].clone()).collect()
}

/// Simultaneous fixpoint of vertex operations and edge actions, per algebra.
fn closure_sets(d: &Diagram, start: &[ElementSet]) -> Vec<ElementSet> {
    let mut member: Vec<Vec<bool>> = d.algebras.iter().map(|a| vec![false; a.size()]).collect();
    let mut list: Vec<Vec<usize>> = start.iter().map(|s| s.iter().copied().collect()).collect();
    for (m, l) in member.iter_mut().zip(&list) {
        for &e in l {
            m[e] = true;
        }
    }
    loop {
        let mut fresh: Vec<Vec<usize>> = vec![Vec::new(); d.algebras.len()];
        for (ai, a) in d.algebras.iter().enumerate() {
            for op in 0..a.domain().len() {
                let k = a.domain().arity(op);
                let mut odo = Odometer::new(list[ai].len(), k);
                let mut args = vec![0; k];
                while let Some(idx) = odo.next() {
                    for (slot, &i) in args.iter_mut().zip(idx) {
                        *slot = list[ai][i];
                    }
                    let v = a.apply(op, &args);
                    if !member[ai][v] {
                        member[ai][v] = true;
                        fresh[ai].push(v);
                    }
                }
            }
        }
        for e in &d.edges {
            let (ai, aj) = (d.vertices[e.from], d.vertices[e.to]);
            for &a in &list[ai] {
                for &x in &list[aj] {
                    let v = e.representation.act(a, x);
                    if !member[aj][v] {
                        member[aj][v] = true;
                        fresh[aj].push(v);
                    }
                }
            }
        }
        if fresh.iter().all(Vec::is_empty) {
            break;
        }
        for (l, f) in list.iter_mut().zip(fresh) {
            l.extend(f);
        }
    }
    list.into_iter().map(|l| l.into_iter().collect()).collect()
}

fn is_full(d: &Diagram, sets: &[ElementSet]) -> bool {
    sets.iter().zip(&d.algebras).all(|(s, a)| s.len() == a.size())
}

/// The subdiagram generated by `x`, with a smallest word for each element.
///
/// Vertices sharing an algebra share one generated set.
pub fn diagram_closure(d: &Diagram, x: &TupleOfSets) -> Result<DiagramClosure> {
    validate_diagram(d)?;
    let start = shared_sets(d, x)?;
    let closed = closure_sets(d, &start);
    let na = d.algebras.len();
    let mut size_of: Vec<Vec<usize>> = d.algebras.iter().map(|a| vec![0; a.size()]).collect();
    let mut word: Vec<Vec<Option<DiagramWord>>> = d.algebras.iter().map(|a| vec![None; a.size()]).collect();
    let target: usize = closed.iter().map(ElementSet::len).sum();
    let mut found = 0;
    for (ai, s) in start.iter().enumerate() {
        for (index, &g) in s.iter().enumerate() {
            word[ai][g] = Some(DiagramWord::Gen { algebra: ai, index });
            size_of[ai][g] = 1;
            found += 1;
        }
    }
    for (ai, a) in d.algebras.iter().enumerate() {
        for op in 0..a.domain().len() {
            if a.domain().arity(op) == 0 {
                let c = a.constant(op);
                if word[ai][c].is_none() {
                    word[ai][c] = Some(DiagramWord::Op(a.domain().symbol(op).to_string(), Vec::new()));
                    size_of[ai][c] = 1;
                    found += 1;
                }
            }
        }
    }
    let growth = d
        .algebras
        .iter()
        .map(|a| a.domain().max_arity())
        .max()
        .unwrap_or(0)
        .max(2);
    let mut last_new = 1;
    let mut s = 1;
    while found < target {
        s += 1;
        if s > growth * last_new + 1 {
            return Err(Error::Structure("witness search stalled".into()));
        }
        let known: Vec<Vec<usize>> = (0..na)
            .map(|ai| {
                (0..d.algebras[ai].size())
                    .filter(|&v| word[ai][v].is_some() && size_of[ai][v] < s)
                    .collect()
            })
            .collect();
        let mut added: Vec<(usize, usize, DiagramWord)> = Vec::new();
        let mut claimed: Vec<Vec<bool>> = word
            .iter()
            .map(|w| w.iter().map(Option::is_some).collect())
            .collect();
        for (ai, a) in d.algebras.iter().enumerate() {
            for op in 0..a.domain().len() {
                let k = a.domain().arity(op);
                if k == 0 {
                    continue;
                }
                let mut odo = Odometer::new(known[ai].len(), k);
                let mut args = vec![0; k];
                while let Some(idx) = odo.next() {
                    let mut total = 1;
                    for (slot, &i) in args.iter_mut().zip(idx) {
                        *slot = known[ai][i];
                        total += size_of[ai][*slot];
                    }
                    if total != s {
                        continue;
                    }
                    let v = a.apply(op, &args);
                    if !claimed[ai][v] {
                        claimed[ai][v] = true;
                        let children = args.iter().map(|&c| word[ai][c].clone().expect("known")).collect();
                        added.push((ai, v, DiagramWord::Op(a.domain().symbol(op).to_string(), children)));
                    }
                }
            }
        }
        for (k, e) in d.edges.iter().enumerate() {
            let (ai, aj) = (d.vertices[e.from], d.vertices[e.to]);
            for &a in &known[ai] {
                for &x in &known[aj] {
                    if size_of[ai][a] + size_of[aj][x] + 1 != s {
                        continue;
                    }
                    let v = e.representation.act(a, x);
                    if !claimed[aj][v] {
                        claimed[aj][v] = true;
                        added.push((
                            aj,
                            v,
                            DiagramWord::Act {
                                edge: k,
                                actor: Box::new(word[ai][a].clone().expect("known")),
                                argument: Box::new(word[aj][x].clone().expect("known")),
                            },
                        ));
                    }
                }
            }
        }
        if !added.is_empty() {
            found += added.len();
            last_new = s;
        }
        for (ai, v, w) in added {
            word[ai][v] = Some(w);
            size_of[ai][v] = s;
        }
    }
    let mut witness = BTreeMap::new();
    for (ai, set) in closed.iter().enumerate() {
        for &m in set {
            witness.insert((ai, m), word[ai][m].clone().expect("every member has a witness"));
        }
    }
    Ok(DiagramClosure {
        members: spread(d, &closed),
        witness,
    })
}

/// Value of a diagram word for generators `gens` (per algebra, ascending).
pub fn eval_diagram_word(d: &Diagram, gens: &[ElementSet], algebra: usize, w: &DiagramWord) -> Result<usize> {
    match w {
        DiagramWord::Gen { algebra: a, index } => {
            if *a != algebra {
                return Err(Error::DomainMismatch(format!("generator of algebra {a} used in algebra {algebra}")));
            }
            gens.get(*a)
                .and_then(|s| s.iter().nth(*index))
                .copied()
                .ok_or_else(|| Error::Index(format!("no generator {a}.{index}")))
        }
        DiagramWord::Op(sym, ch) => {
            let alg = &d.algebras[algebra];
            let op = alg.op(sym)?;
            if ch.len() != alg.domain().arity(op) {
                return Err(Error::Shape(format!("{sym} applied to {} arguments", ch.len())));
            }
            let args = ch
                .iter()
                .map(|c| eval_diagram_word(d, gens, algebra, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(alg.apply(op, &args))
        }
        DiagramWord::Act { edge, actor, argument } => {
            let e = d.edges.get(*edge).ok_or_else(|| Error::Index(format!("no edge {edge}")))?;
            if d.vertices[e.to] != algebra {
                return Err(Error::DomainMismatch(format!("edge {edge} does not act on algebra {algebra}")));
            }
            let a = eval_diagram_word(d, gens, d.vertices[e.from], actor)?;
            let x = eval_diagram_word(d, gens, algebra, argument)?;
            Ok(e.representation.act(a, x))
        }
    }
}

/// Shrinks a generating tuple layer by layer.
///
/// Algebras are visited in the order of the first layer they appear in, then
/// by vertex; within one algebra elements are tried in descending order.
pub fn diagram_quasibasis(d: &Diagram, x: &TupleOfSets) -> Result<TupleOfSets> {
    let layers = validate_diagram(d)?;
    let mut sets = shared_sets(d, x)?;
    if !is_full(d, &closure_sets(d, &sets)) {
        return Err(Error::Precondition("tuple does not generate the diagram".into()));
    }
    let mut visited = vec![false; d.algebras.len()];
    for layer in &layers {
        for &v in layer {
            let ai = d.vertices[v];
            if visited[ai] {
                continue;
            }
            visited[ai] = true;
            let candidates: Vec<usize> = sets[ai].iter().rev().copied().collect();
            for e in candidates {
                sets[ai].remove(&e);
                if !is_full(d, &closure_sets(d, &sets)) {
                    sets[ai].insert(e);
                }
            }
        }
    }
    Ok(spread(d, &sets))
}

/// All automorphisms of `d`, one map per vertex, in lexicographic order of
/// the per-algebra components.
pub fn diagram_automorphism_group(d: &Diagram, budget: u64) -> Result<Vec<Vec<ElementMap>>> {
    validate_diagram(d)?;
    let per_algebra: Vec<Vec<ElementMap>> = d
        .algebras
        .iter()
        .map(|a| {
            automorphisms(a, budget)?
                .into_iter()
                .map(|img| ElementMap::new(a.size(), img))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let na = d.algebras.len();
    // Edges checkable once algebras 0..=k are fixed.
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); na];
    for (k, e) in d.edges.iter().enumerate() {
        ready[d.vertices[e.from].max(d.vertices[e.to])].push(k);
    }
    let mut search = AutSearch {
        d,
        per_algebra: &per_algebra,
        ready: &ready,
        choice: vec![0; na],
        nodes: 0,
        budget,
        out: Vec::new(),
    };
    search.extend(0)?;
    let mut out = search.out;
    out.sort();
    for (v, &a) in d.vertices.iter().enumerate() {
        let mut comp: Vec<ElementMap> = out.iter().map(|t| t[v].clone()).collect();
        comp.sort();
        comp.dedup();
        verify_group(&comp, d.algebras[a].size())?;
    }
    verify_tuple_group(&out)?;
    Ok(out)
}

struct AutSearch<'a> {
    d: &'a Diagram,
    per_algebra: &'a [Vec<ElementMap>],
    ready: &'a [Vec<usize>],
    choice: Vec<usize>,
    nodes: u64,
    budget: u64,
    out: Vec<Vec<ElementMap>>,
}

impl AutSearch<'_> {
    fn extend(&mut self, depth: usize) -> Result<()> {
        if depth == self.choice.len() {
            let maps = self
                .d
                .vertices
                .iter()
                .map(|&a| self.per_algebra[a][self.choice[a]].clone())
                .collect();
            self.out.push(maps);
            return Ok(());
        }
        for c in 0..self.per_algebra[depth].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget(format!(
                    "diagram automorphism search exceeded {} nodes",
                    self.budget
                )));
            }
            self.choice[depth] = c;
            let ok = self.ready[depth].iter().all(|&k| {
                let e = &self.d.edges[k];
                let (ai, aj) = (self.d.vertices[e.from], self.d.vertices[e.to]);
                let hi = &self.per_algebra[ai][self.choice[ai]];
                let hj = &self.per_algebra[aj][self.choice[aj]];
                edge_failure(&e.representation, &e.representation, hi, hj).is_none()
            });
            if ok {
                self.extend(depth + 1)?;
            }
        }
        Ok(())
    }
}

fn verify_tuple_group(group: &[Vec<ElementMap>]) -> Result<()> {
    let contains = |t: &Vec<ElementMap>| group.binary_search(t).is_ok();
    for x in group {
        for y in group {
            let c = x
                .iter()
                .zip(y)
                .map(|(a, b)| a.then(b))
                .collect::<Result<Vec<_>>>()?;
            if !contains(&c) {
                return Err(Error::Structure("automorphisms not closed under composition".into()));
            }
        }
        let inv: Option<Vec<ElementMap>> = x.iter().map(ElementMap::inverse).collect();
        if !inv.is_some_and(|i| contains(&i)) {
            return Err(Error::Structure("automorphisms not closed under inverse".into()));
        }
    }
    Ok(())
}
