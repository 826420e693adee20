//! The `.ua` document format.
//!
//! A document is a sequence of blocks. Each block opens with a kind and a
//! name on one line, holds one field per line and closes with `end`:
//!
//! ```text
//! # the cyclic group of order 3
//! algebra c3
//!   size 3
//!   op * 2 [
//!     0, 1, 2,
//!     1, 2, 0,
//!     2, 0, 1
//!   ]
//! end
//! ```
//!
//! Lists may span lines; commas inside lists are optional. Operation tables
//! are flat and row-major with the first argument most significant. A block
//! may only refer to names declared above it.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use omega_core::algebra::{product, ElementSet};
use omega_core::diagram::{Diagram, Edge};
use omega_core::{EndCombiner, FiniteAlgebra, OperatorDomain, Representation, Side};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}: {object}: {message}")]
    Semantic { line: usize, object: String, message: String },
}

/// Generating elements, for a representation or algebra, or per vertex of a
/// diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSets {
    Elements(ElementSet),
    PerVertex(Vec<(String, ElementSet)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Algebra(FiniteAlgebra),
    Representation {
        actor: String,
        space: String,
        representation: Representation,
    },
    Diagram {
        /// `(vertex, algebra)` in vertex order.
        vertices: Vec<(String, String)>,
        /// `(from, to, representation)` by vertex name.
        edges: Vec<(String, String, String)>,
        diagram: Diagram,
    },
    Gens {
        of: String,
        sets: GenSets,
    },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "algebra",
            Object::Representation { .. } => "representation",
            Object::Diagram { .. } => "diagram",
            Object::Gens { .. } => "gens",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub object: Object,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    entries: Vec<Entry>,
    index: BTreeMap<String, usize>,
}

impl Document {
    pub fn new() -> Self {
        Document::default()
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        let tokens = lex(text);
        let blocks = Parser { tokens, pos: 0 }.blocks()?;
        let mut doc = Document::new();
        for block in blocks {
            let object = doc.interpret(&block)?;
            doc.insert(block.name.text.clone(), object)
                .map_err(|message| block.semantic(message))?;
        }
        Ok(doc)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.index.get(name).map(|&i| &self.entries[i].object)
    }

    /// Appends an object after checking that its name is fresh and its
    /// references resolve to objects of the right kind.
    pub fn insert(&mut self, name: String, object: Object) -> Result<(), String> {
        if self.index.contains_key(&name) {
            return Err(format!("name {name} is already declared"));
        }
        match &object {
            Object::Algebra(_) => {}
            Object::Representation { actor, space, representation } => {
                self.expect_algebra(actor, representation.actor())?;
                self.expect_algebra(space, representation.space())?;
            }
            Object::Diagram { vertices, edges, .. } => {
                for (_, a) in vertices {
                    self.algebra(a)?;
                }
                for (_, _, r) in edges {
                    self.representation(r)?;
                }
            }
            Object::Gens { of, .. } => {
                self.get(of).ok_or_else(|| format!("unknown object {of}"))?;
            }
        }
        self.index.insert(name.clone(), self.entries.len());
        self.entries.push(Entry { name, object });
        Ok(())
    }

    fn expect_algebra(&self, name: &str, actual: &FiniteAlgebra) -> Result<(), String> {
        if self.algebra(name)? != actual {
            return Err(format!("algebra {name} differs from the one in use"));
        }
        Ok(())
    }

    pub fn algebra(&self, name: &str) -> Result<&FiniteAlgebra, String> {
        match self.get(name) {
            Some(Object::Algebra(a)) => Ok(a),
            Some(other) => Err(format!("{name} is a {}, not an algebra", other.kind())),
            None => Err(format!("unknown algebra {name}")),
        }
    }

    pub fn representation(&self, name: &str) -> Result<(&str, &str, &Representation), String> {
        match self.get(name) {
            Some(Object::Representation { actor, space, representation }) => Ok((actor, space, representation)),
            Some(other) => Err(format!("{name} is a {}, not a representation", other.kind())),
            None => Err(format!("unknown representation {name}")),
        }
    }

    fn interpret(&self, block: &Block) -> Result<Object, DocError> {
        match block.kind.text.as_str() {
            "algebra" => self.interpret_algebra(block),
            "representation" => self.interpret_representation(block),
            "diagram" => self.interpret_diagram(block),
            "gens" => self.interpret_gens(block),
            other => Err(block.kind.syntax(format!(
                "unknown block kind {other}; expected algebra, representation, diagram or gens"
            ))),
        }
    }

    fn interpret_algebra(&self, block: &Block) -> Result<Object, DocError> {
        block.allow(&["size", "op", "product"])?;
        if let Some(field) = block.single("product")? {
            if let Some(other) = block.fields.iter().find(|f| f.key.text != "product") {
                return Err(other.key.syntax("a product algebra takes no size or op fields".into()));
            }
            let [list] = field.values(["list of algebra names"])?;
            let factors = list
                .list()?
                .iter()
                .map(|v| {
                    let name = v.word()?;
                    self.algebra(&name.text).cloned().map_err(|m| block.semantic(m))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let (a, _) = product(&factors).map_err(|e| block.semantic(e.to_string()))?;
            return Ok(Object::Algebra(a));
        }
        let size = block
            .single("size")?
            .ok_or_else(|| block.name.syntax("algebra needs a size or a product field".into()))?;
        let [n] = size.values(["carrier size"])?;
        let n = n.number()?;
        let mut ops = Vec::new();
        let mut tables = Vec::new();
        for field in block.all("op") {
            let [symbol, arity, table] = field.values(["operator symbol", "arity", "table"])?;
            ops.push((symbol.word()?.text.clone(), arity.number()?));
            tables.push(table.numbers()?);
        }
        let domain = OperatorDomain::new(ops).map_err(|e| block.semantic(e.to_string()))?;
        let a = FiniteAlgebra::new(domain, n, tables).map_err(|e| block.semantic(e.to_string()))?;
        Ok(Object::Algebra(a))
    }

    fn interpret_representation(&self, block: &Block) -> Result<Object, DocError> {
        block.allow(&["actor", "space", "side", "combine", "action"])?;
        let name_of = |key: &str| -> Result<String, DocError> {
            let field = block
                .single(key)?
                .ok_or_else(|| block.name.syntax(format!("representation needs an {key} field")))?;
            let [v] = field.values(["algebra name"])?;
            Ok(v.word()?.text.clone())
        };
        let actor_name = name_of("actor")?;
        let space_name = name_of("space")?;
        let actor = self.algebra(&actor_name).map_err(|m| block.semantic(m))?.clone();
        let space = self.algebra(&space_name).map_err(|m| block.semantic(m))?.clone();
        let side = match block.single("side")? {
            None => Side::Left,
            Some(field) => {
                let [v] = field.values(["left or right"])?;
                let w = v.word()?;
                match w.text.as_str() {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    _ => return Err(w.syntax("side must be left or right".into())),
                }
            }
        };
        let mut combiners: Vec<Option<EndCombiner>> = vec![None; actor.domain().len()];
        for field in block.all("combine") {
            let words = field
                .values
                .iter()
                .map(Value::word)
                .collect::<Result<Vec<_>, _>>()?;
            let combiner = match words.as_slice() {
                [_, c] if c.text == "composition" => EndCombiner::Composition,
                [_, c, s] if c.text == "pointwise" => EndCombiner::Pointwise(s.text.clone()),
                [_, c, s] if c.text == "commutator" => EndCombiner::Commutator(s.text.clone()),
                _ => {
                    return Err(field.key.syntax(
                        "expected combine OP composition, combine OP pointwise SPACE_OP or combine OP commutator SPACE_OP"
                            .into(),
                    ))
                }
            };
            let op = actor
                .domain()
                .index_of(&words[0].text)
                .ok_or_else(|| block.semantic(format!("actor {actor_name} has no operator {}", words[0].text)))?;
            if combiners[op].replace(combiner).is_some() {
                return Err(block.semantic(format!("operator {} is combined twice", words[0].text)));
            }
        }
        let combiners = combiners
            .into_iter()
            .enumerate()
            .map(|(op, c)| {
                c.ok_or_else(|| {
                    block.semantic(format!("no combine field for actor operator {}", actor.domain().symbol(op)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let action = block
            .single("action")?
            .ok_or_else(|| block.name.syntax("representation needs an action field".into()))?;
        let [tables] = action.values(["list of action tables"])?;
        let tables = tables
            .list()?
            .iter()
            .map(Value::numbers)
            .collect::<Result<Vec<_>, _>>()?;
        let representation =
            Representation::new(actor, space, tables, combiners, side).map_err(|e| block.semantic(e.to_string()))?;
        Ok(Object::Representation {
            actor: actor_name,
            space: space_name,
            representation,
        })
    }

    fn interpret_diagram(&self, block: &Block) -> Result<Object, DocError> {
        block.allow(&["vertex", "edge"])?;
        let mut vertices: Vec<(String, String)> = Vec::new();
        for field in block.all("vertex") {
            let [v, a] = field.values(["vertex name", "algebra name"])?;
            let (v, a) = (v.word()?.text.clone(), a.word()?.text.clone());
            if vertices.iter().any(|(w, _)| *w == v) {
                return Err(block.semantic(format!("vertex {v} is declared twice")));
            }
            self.algebra(&a).map_err(|m| block.semantic(m))?;
            vertices.push((v, a));
        }
        let mut algebra_names: Vec<&str> = Vec::new();
        let mut vertex_algebra = Vec::new();
        for (_, a) in &vertices {
            let i = match algebra_names.iter().position(|n| n == a) {
                Some(i) => i,
                None => {
                    algebra_names.push(a);
                    algebra_names.len() - 1
                }
            };
            vertex_algebra.push(i);
        }
        let vertex_index = |name: &str| {
            vertices
                .iter()
                .position(|(v, _)| v == name)
                .ok_or_else(|| block.semantic(format!("unknown vertex {name}")))
        };
        let mut edges = Vec::new();
        let mut named_edges = Vec::new();
        for field in block.all("edge") {
            let [from, to, rep] = field.values(["source vertex", "target vertex", "representation name"])?;
            let (from, to, rep) = (from.word()?, to.word()?, rep.word()?);
            let (_, _, representation) = self.representation(&rep.text).map_err(|m| block.semantic(m))?;
            edges.push(Edge {
                from: vertex_index(&from.text)?,
                to: vertex_index(&to.text)?,
                representation: representation.clone(),
            });
            named_edges.push((from.text.clone(), to.text.clone(), rep.text.clone()));
        }
        let algebras = algebra_names
            .iter()
            .map(|a| self.algebra(a).cloned().map_err(|m| block.semantic(m)))
            .collect::<Result<Vec<_>, _>>()?;
        let diagram = Diagram::new(algebras, vertex_algebra, edges).map_err(|e| block.semantic(e.to_string()))?;
        Ok(Object::Diagram {
            vertices,
            edges: named_edges,
            diagram,
        })
    }

    fn interpret_gens(&self, block: &Block) -> Result<Object, DocError> {
        block.allow(&["of", "elements", "at"])?;
        let of = block
            .single("of")?
            .ok_or_else(|| block.name.syntax("gens needs an of field".into()))?;
        let [target] = of.values(["object name"])?;
        let target = target.word()?.text.clone();
        let to_set = |v: &Value| -> Result<ElementSet, DocError> { Ok(v.numbers()?.into_iter().collect()) };
        let sets = match self.get(&target) {
            Some(Object::Diagram { vertices, diagram, .. }) => {
                if let Some(f) = block.single("elements")? {
                    return Err(f.key.syntax("generators of a diagram are given per vertex with at".into()));
                }
                let mut per = Vec::new();
                for field in block.all("at") {
                    let [v, list] = field.values(["vertex name", "element list"])?;
                    let v = v.word()?.text.clone();
                    let i = vertices
                        .iter()
                        .position(|(w, _)| *w == v)
                        .ok_or_else(|| block.semantic(format!("diagram {target} has no vertex {v}")))?;
                    let set = to_set(list)?;
                    check_carrier(&set, diagram.algebra_at(i).size()).map_err(|m| block.semantic(m))?;
                    per.push((v, set));
                }
                GenSets::PerVertex(per)
            }
            Some(object @ (Object::Algebra(_) | Object::Representation { .. })) => {
                if let Some(f) = block.all("at").next() {
                    return Err(f.key.syntax("at applies to diagrams only".into()));
                }
                let field = block
                    .single("elements")?
                    .ok_or_else(|| block.name.syntax("gens needs an elements field".into()))?;
                let [list] = field.values(["element list"])?;
                let set = to_set(list)?;
                let size = match object {
                    Object::Algebra(a) => a.size(),
                    Object::Representation { representation, .. } => representation.space().size(),
                    _ => unreachable!(),
                };
                check_carrier(&set, size).map_err(|m| block.semantic(m))?;
                GenSets::Elements(set)
            }
            Some(other) => return Err(block.semantic(format!("{target} is a {}; gens need a target", other.kind()))),
            None => return Err(block.semantic(format!("unknown object {target}"))),
        };
        Ok(Object::Gens { of: target, sets })
    }
}

pub fn check_carrier(set: &ElementSet, size: usize) -> Result<(), String> {
    match set.iter().find(|&&e| e >= size) {
        Some(e) => Err(format!("element {e} outside a carrier of size {size}")),
        None => Ok(()),
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, entry) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let mut body = String::new();
            write_object(&mut body, &entry.object)?;
            writeln!(f, "{} {}", entry.object.kind(), entry.name)?;
            f.write_str(&body)?;
            writeln!(f, "end")?;
        }
        Ok(())
    }
}

fn write_object(out: &mut String, object: &Object) -> fmt::Result {
    match object {
        Object::Algebra(a) => {
            writeln!(out, "  size {}", a.size())?;
            for op in 0..a.domain().len() {
                let arity = a.domain().arity(op);
                write!(out, "  op {} {arity} ", a.domain().symbol(op))?;
                let row = if arity >= 2 { a.size() } else { 0 };
                write_table(out, a.table(op), row)?;
            }
        }
        Object::Representation { actor, space, representation } => {
            writeln!(out, "  actor {actor}")?;
            writeln!(out, "  space {space}")?;
            let side = match representation.side() {
                Side::Left => "left",
                Side::Right => "right",
            };
            writeln!(out, "  side {side}")?;
            for (op, c) in representation.combiners().iter().enumerate() {
                writeln!(out, "  combine {} {c}", representation.actor().domain().symbol(op))?;
            }
            writeln!(out, "  action [")?;
            let tables = representation.action_tables();
            for (i, t) in tables.iter().enumerate() {
                let sep = if i + 1 < tables.len() { "," } else { "" };
                writeln!(out, "    {}{sep}", list(t))?;
            }
            writeln!(out, "  ]")?;
        }
        Object::Diagram { vertices, edges, .. } => {
            for (v, a) in vertices {
                writeln!(out, "  vertex {v} {a}")?;
            }
            for (from, to, r) in edges {
                writeln!(out, "  edge {from} {to} {r}")?;
            }
        }
        Object::Gens { of, sets } => {
            writeln!(out, "  of {of}")?;
            match sets {
                GenSets::Elements(s) => writeln!(out, "  elements {}", list(s))?,
                GenSets::PerVertex(per) => {
                    for (v, s) in per {
                        writeln!(out, "  at {v} {}", list(s))?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// One line for short tables, one row per line when `row > 0`.
fn write_table(out: &mut String, table: &[usize], row: usize) -> fmt::Result {
    if row == 0 || table.len() <= row {
        return writeln!(out, "{}", list(table));
    }
    writeln!(out, "[")?;
    let rows: Vec<&[usize]> = table.chunks(row).collect();
    for (i, r) in rows.iter().enumerate() {
        let entries: Vec<String> = r.iter().map(usize::to_string).collect();
        let sep = if i + 1 < rows.len() { "," } else { "" };
        writeln!(out, "    {}{sep}", entries.join(", "))?;
    }
    writeln!(out, "  ]")
}

pub fn list<'a>(items: impl IntoIterator<Item = &'a usize>) -> String {
    let entries: Vec<String> = items.into_iter().map(usize::to_string).collect();
    format!("[{}]", entries.join(", "))
}

// Lexing and block structure.

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Open,
    Close,
    Comma,
    Newline,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut c = 0;
        while c < chars.len() {
            let ch = chars[c];
            let col = c + 1;
            match ch {
                '#' => break,
                '[' | ']' | ',' => {
                    let tok = match ch {
                        '[' => Tok::Open,
                        ']' => Tok::Close,
                        _ => Tok::Comma,
                    };
                    tokens.push(Token { tok, line, col });
                    c += 1;
                }
                _ if ch.is_whitespace() => c += 1,
                _ => {
                    let start = c;
                    while c < chars.len() && !chars[c].is_whitespace() && !matches!(chars[c], '[' | ']' | ',') {
                        c += 1;
                    }
                    let word: String = chars[start..c].iter().collect();
                    tokens.push(Token { tok: Tok::Word(word), line, col });
                }
            }
        }
        tokens.push(Token {
            tok: Tok::Newline,
            line,
            col: chars.len() + 1,
        });
    }
    tokens
}

#[derive(Debug, Clone)]
struct Word {
    text: String,
    line: usize,
    col: usize,
}

impl Word {
    fn syntax(&self, message: String) -> DocError {
        DocError::Syntax { line: self.line, col: self.col, message }
    }
}

#[derive(Debug, Clone)]
enum Value {
    Word(Word),
    List(Vec<Value>, usize, usize),
}

impl Value {
    fn position(&self) -> (usize, usize) {
        match self {
            Value::Word(w) => (w.line, w.col),
            Value::List(_, line, col) => (*line, *col),
        }
    }

    fn error(&self, message: String) -> DocError {
        let (line, col) = self.position();
        DocError::Syntax { line, col, message }
    }

    fn word(&self) -> Result<&Word, DocError> {
        match self {
            Value::Word(w) => Ok(w),
            Value::List(..) => Err(self.error("expected a name, found a list".into())),
        }
    }

    fn number(&self) -> Result<usize, DocError> {
        let w = self.word()?;
        w.text
            .parse()
            .map_err(|_| w.syntax(format!("expected a nonnegative integer, found {}", w.text)))
    }

    fn list(&self) -> Result<&[Value], DocError> {
        match self {
            Value::List(items, ..) => Ok(items),
            Value::Word(w) => Err(w.syntax(format!("expected a list, found {}", w.text))),
        }
    }

    fn numbers(&self) -> Result<Vec<usize>, DocError> {
        self.list()?.iter().map(Value::number).collect()
    }
}

#[derive(Debug)]
struct Field {
    key: Word,
    values: Vec<Value>,
}

impl Field {
    fn values<const N: usize>(&self, names: [&str; N]) -> Result<[&Value; N], DocError> {
        if self.values.len() != N {
            return Err(self.key.syntax(format!(
                "{} expects {N} value(s): {}",
                self.key.text,
                names.join(", ")
            )));
        }
        Ok(std::array::from_fn(|i| &self.values[i]))
    }
}

#[derive(Debug)]
struct Block {
    kind: Word,
    name: Word,
    fields: Vec<Field>,
}

impl Block {
    fn semantic(&self, message: String) -> DocError {
        DocError::Semantic {
            line: self.kind.line,
            object: self.name.text.clone(),
            message,
        }
    }

    fn allow(&self, keys: &[&str]) -> Result<(), DocError> {
        match self.fields.iter().find(|f| !keys.contains(&f.key.text.as_str())) {
            Some(f) => Err(f.key.syntax(format!(
                "unknown field {} in {}; expected one of {}",
                f.key.text,
                self.kind.text,
                keys.join(", ")
            ))),
            None => Ok(()),
        }
    }

    fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Field> + 'a {
        self.fields.iter().filter(move |f| f.key.text == key)
    }

    fn single<'a>(&'a self, key: &'a str) -> Result<Option<&'a Field>, DocError> {
        let mut found = self.all(key);
        let first = found.next();
        if let Some(second) = found.next() {
            return Err(second.key.syntax(format!("field {key} given twice")));
        }
        Ok(first)
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek(), Some(Token { tok: Tok::Newline, .. })) {
            self.pos += 1;
        }
    }

    fn unexpected(t: &Token, wanted: &str) -> DocError {
        let found = match &t.tok {
            Tok::Word(w) => w.clone(),
            Tok::Open => "[".into(),
            Tok::Close => "]".into(),
            Tok::Comma => ",".into(),
            Tok::Newline => "end of line".into(),
        };
        DocError::Syntax {
            line: t.line,
            col: t.col,
            message: format!("expected {wanted}, found {found}"),
        }
    }

    fn blocks(mut self) -> Result<Vec<Block>, DocError> {
        let mut blocks = Vec::new();
        loop {
            self.skip_newlines();
            let Some(t) = self.next() else { return Ok(blocks) };
            let kind = match t.tok {
                Tok::Word(text) if text != "end" => Word { text, line: t.line, col: t.col },
                _ => return Err(Self::unexpected(&t, "a block kind")),
            };
            let name = match self.next() {
                Some(Token { tok: Tok::Word(text), line, col }) => Word { text, line, col },
                Some(t) => return Err(Self::unexpected(&t, "a name")),
                None => unreachable!("every line ends in a newline token"),
            };
            match self.next() {
                Some(Token { tok: Tok::Newline, .. }) => {}
                Some(t) => return Err(Self::unexpected(&t, "end of line after the block name")),
                None => unreachable!(),
            }
            let mut fields = Vec::new();
            loop {
                self.skip_newlines();
                let Some(t) = self.next() else {
                    return Err(DocError::Syntax {
                        line: kind.line,
                        col: kind.col,
                        message: format!("{} {} is missing its end line", kind.text, name.text),
                    });
                };
                let key = match t.tok {
                    Tok::Word(ref text) if text == "end" => {
                        match self.next() {
                            Some(Token { tok: Tok::Newline, .. }) => {}
                            Some(t) => return Err(Self::unexpected(&t, "end of line after end")),
                            None => unreachable!(),
                        }
                        break;
                    }
                    Tok::Word(text) => Word { text, line: t.line, col: t.col },
                    _ => return Err(Self::unexpected(&t, "a field name")),
                };
                let mut values = Vec::new();
                loop {
                    let t = self.next().expect("every line ends in a newline token");
                    match t.tok {
                        Tok::Newline => break,
                        Tok::Word(text) => values.push(Value::Word(Word { text, line: t.line, col: t.col })),
                        Tok::Open => values.push(self.list(t.line, t.col)?),
                        _ => return Err(Self::unexpected(&t, "a value")),
                    }
                }
                fields.push(Field { key, values });
            }
            blocks.push(Block { kind, name, fields });
        }
    }

    fn list(&mut self, line: usize, col: usize) -> Result<Value, DocError> {
        let mut items = Vec::new();
        loop {
            let Some(t) = self.next() else {
                return Err(DocError::Syntax { line, col, message: "unclosed list".into() });
            };
            match t.tok {
                Tok::Close => return Ok(Value::List(items, line, col)),
                Tok::Comma | Tok::Newline => {}
                Tok::Open => items.push(self.list(t.line, t.col)?),
                Tok::Word(text) => items.push(Value::Word(Word { text, line: t.line, col: t.col })),
            }
        }
    }
}
