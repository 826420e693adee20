//! Ω-words over a generating list, generated subrepresentations, quasibases
//! and extension of maps from generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{ElementMap, ElementSet, Odometer};
use crate::error::{Error, Result};
use crate::representation::{automorphism_group, morphism_check, MorphismKind, Representation};

/// A term built from generator leaves, space operations and actor actions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaWord {
    /// Index into the generating list.
    Gen(usize),
    /// Space operator applied to subwords.
    Op(String, Vec<OmegaWord>),
    /// Action of an actor element on a subword.
    Act(usize, Box<OmegaWord>),
}

impl OmegaWord {
    pub fn op(symbol: &str, children: Vec<OmegaWord>) -> Self {
        OmegaWord::Op(symbol.to_string(), children)
    }

    pub fn act(a: usize, child: OmegaWord) -> Self {
        OmegaWord::Act(a, Box::new(child))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            OmegaWord::Gen(_) => 1,
            OmegaWord::Op(_, ch) => 1 + ch.iter().map(OmegaWord::size).sum::<usize>(),
            OmegaWord::Act(_, ch) => 1 + ch.size(),
        }
    }
}

impl fmt::Display for OmegaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaWord::Gen(i) => write!(f, "Gen({i})"),
            OmegaWord::Op(s, ch) => {
                write!(f, "Op({s},[")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "])")
            }
            OmegaWord::Act(a, ch) => write!(f, "Act({a},{ch})"),
        }
    }
}

pub fn eval_word(rep: &Representation, gens: &[usize], w: &OmegaWord) -> Result<usize> {
    match w {
        OmegaWord::Gen(i) => gens.get(*i).copied().ok_or_else(|| {
            Error::Shape(format!("generator index {i} with {} generators", gens.len()))
        }),
        OmegaWord::Op(s, ch) => {
            let space = rep.space();
            let op = space
                .domain()
                .index_of(s)
                .ok_or_else(|| Error::Shape(format!("unknown space operator {s}")))?;
            if space.domain().arity(op) != ch.len() {
                return Err(Error::Shape(format!(
                    "{s} has arity {}, word gives {} arguments",
                    space.domain().arity(op),
                    ch.len()
                )));
            }
            let args = ch
                .iter()
                .map(|c| eval_word(rep, gens, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(space.apply(op, &args))
        }
        OmegaWord::Act(a, ch) => {
            if *a >= rep.actor().size() {
                return Err(Error::Shape(format!("actor element {a} out of range")));
            }
            Ok(rep.act(*a, eval_word(rep, gens, ch)?))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    /// The generating list: the input set in ascending order.
    pub gens: Vec<usize>,
    pub members: ElementSet,
    /// A smallest word for each member.
    pub witness: BTreeMap<usize, OmegaWord>,
}

fn check_subset(rep: &Representation, x: &ElementSet) -> Result<()> {
    match x.iter().find(|&&e| e >= rep.space().size()) {
        Some(e) => Err(Error::Index(format!(
            "element {e} outside a space of size {}",
            rep.space().size()
        ))),
        None => Ok(()),
    }
}

/// The least subset containing `x` that is closed under space operations and
/// every action.
pub fn closure_members(rep: &Representation, x: &ElementSet) -> Result<ElementSet> {
    check_subset(rep, x)?;
    let space = rep.space();
    let mut member = vec![false; space.size()];
    let mut list: Vec<usize> = x.iter().copied().collect();
    for &e in &list {
        member[e] = true;
    }
    let push = |v: usize, member: &mut Vec<bool>, fresh: &mut Vec<usize>| {
        if !member[v] {
            member[v] = true;
            fresh.push(v);
        }
    };
    loop {
        let mut fresh = Vec::new();
        for op in 0..space.domain().len() {
            let k = space.domain().arity(op);
            let mut odo = Odometer::new(list.len(), k);
            let mut args = vec![0; k];
            while let Some(idx) = odo.next() {
                for (slot, &i) in args.iter_mut().zip(idx) {
                    *slot = list[i];
                }
                push(space.apply(op, &args), &mut member, &mut fresh);
            }
        }
        for a in 0..rep.actor().size() {
            for &e in &list {
                push(rep.act(a, e), &mut member, &mut fresh);
            }
        }
        if fresh.is_empty() {
            break;
        }
        list.extend(fresh);
    }
    Ok(list.into_iter().collect())
}

/// Members of `J[f, X]` with a witness word for each.
///
/// Witnesses are found level by level in increasing word size. Within a size,
/// operator nodes come first in signature order with argument tuples in
/// ascending order, then actions by actor element and argument.
pub fn closure(rep: &Representation, x: &ElementSet) -> Result<ClosureResult> {
    let members = closure_members(rep, x)?;
    let gens: Vec<usize> = x.iter().copied().collect();
    let space = rep.space();
    let n = space.size();
    let mut size_of: Vec<usize> = vec![0; n];
    let mut word: Vec<Option<OmegaWord>> = vec![None; n];
    let mut found = 0;
    let record = |v: usize, s: usize, w: OmegaWord, size_of: &mut Vec<usize>, word: &mut Vec<Option<OmegaWord>>| {
        if word[v].is_none() {
            word[v] = Some(w);
            size_of[v] = s;
            true
        } else {
            false
        }
    };
    for (i, &g) in gens.iter().enumerate() {
        if record(g, 1, OmegaWord::Gen(i), &mut size_of, &mut word) {
            found += 1;
        }
    }
    for op in 0..space.domain().len() {
        if space.domain().arity(op) == 0 {
            let c = space.constant(op);
            let w = OmegaWord::op(space.domain().symbol(op), Vec::new());
            if record(c, 1, w, &mut size_of, &mut word) {
                found += 1;
            }
        }
    }
    let max_arity = space.domain().max_arity().max(1);
    let mut last_new = 1;
    let mut s = 1;
    while found < members.len() {
        s += 1;
        if s > max_arity * last_new + 1 {
            return Err(Error::Structure("witness search stalled".into()));
        }
        let known: Vec<usize> = (0..n)
            .filter(|&v| word[v].is_some() && size_of[v] < s)
            .collect();
        let mut added = Vec::new();
        for op in 0..space.domain().len() {
            let k = space.domain().arity(op);
            if k == 0 {
                continue;
            }
            let mut odo = Odometer::new(known.len(), k);
            let mut args = vec![0; k];
            while let Some(idx) = odo.next() {
                let mut total = 1;
                for (slot, &i) in args.iter_mut().zip(idx) {
                    *slot = known[i];
                    total += size_of[known[i]];
                }
                if total != s {
                    continue;
                }
                let v = space.apply(op, &args);
                if word[v].is_none() {
                    let children = args
                        .iter()
                        .map(|&c| word[c].clone().expect("known child"))
                        .collect();
                    record(v, s, OmegaWord::op(space.domain().symbol(op), children), &mut size_of, &mut word);
                    added.push(v);
                }
            }
        }
        for a in 0..rep.actor().size() {
            for &c in &known {
                if size_of[c] + 1 != s {
                    continue;
                }
                let v = rep.act(a, c);
                if word[v].is_none() {
                    let child = word[c].clone().expect("known child");
                    record(v, s, OmegaWord::act(a, child), &mut size_of, &mut word);
                    added.push(v);
                }
            }
        }
        if !added.is_empty() {
            found += added.len();
            last_new = s;
        }
    }
    let witness = members
        .iter()
        .map(|&m| (m, word[m].clone().expect("every member has a witness")))
        .collect();
    Ok(ClosureResult {
        gens,
        members,
        witness,
    })
}

pub fn is_generating(rep: &Representation, x: &ElementSet) -> Result<bool> {
    Ok(closure_members(rep, x)?.len() == rep.space().size())
}

/// Generating, and no single element can be dropped.
pub fn is_minimal_generating(rep: &Representation, x: &ElementSet) -> Result<bool> {
    if !is_generating(rep, x)? {
        return Ok(false);
    }
    for &e in x {
        let mut rest = x.clone();
        rest.remove(&e);
        if is_generating(rep, &rest)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drops elements of `x` in descending order while the rest still generates.
pub fn quasibasis(rep: &Representation, x: &ElementSet) -> Result<ElementSet> {
    if !is_generating(rep, x)? {
        return Err(Error::Precondition("set does not generate the representation".into()));
    }
    let mut current = x.clone();
    for &e in x.iter().rev() {
        current.remove(&e);
        if !is_generating(rep, &current)? {
            current.insert(e);
        }
    }
    Ok(current)
}

/// Replaces each `Gen(i)` by `assignment[i]`.
pub fn substitute(w: &OmegaWord, assignment: &[OmegaWord]) -> Result<OmegaWord> {
    Ok(match w {
        OmegaWord::Gen(i) => assignment
            .get(*i)
            .cloned()
            .ok_or_else(|| Error::Index(format!("no assignment for Gen({i})")))?,
        OmegaWord::Op(s, ch) => OmegaWord::Op(
            s.clone(),
            ch.iter()
                .map(|c| substitute(c, assignment))
                .collect::<Result<Vec<_>>>()?,
        ),
        OmegaWord::Act(a, ch) => OmegaWord::act(*a, substitute(ch, assignment)?),
    })
}

fn relation_error(left: OmegaWord, right: OmegaWord, lhs: usize, rhs: usize) -> Error {
    Error::Relation {
        left: left.to_string(),
        right: right.to_string(),
        lhs,
        rhs,
    }
}

/// Extends `images` (aligned with `x` in ascending order) from the generating
/// set `x` of `f` to a reduced morphism into `g`.
pub fn extend_map(
    f: &Representation,
    g: &Representation,
    x: &ElementSet,
    images: &[usize],
) -> Result<ElementMap> {
    if f.actor() != g.actor() {
        return Err(Error::Precondition("representations need a shared actor".into()));
    }
    if images.len() != x.len() {
        return Err(Error::Shape(format!(
            "{} images for {} generators",
            images.len(),
            x.len()
        )));
    }
    if let Some(&v) = images.iter().find(|&&v| v >= g.space().size()) {
        return Err(Error::Index(format!("image {v} outside the target space")));
    }
    let cl = closure(f, x)?;
    if cl.members.len() != f.space().size() {
        return Err(Error::Precondition("set does not generate the representation".into()));
    }
    let gens = &cl.gens;
    let position = |v: usize| gens.binary_search(&v).ok();
    let space = f.space();

    for a in 0..f.actor().size() {
        for (i, &xi) in gens.iter().enumerate() {
            if let Some(j) = position(f.act(a, xi)) {
                let lhs = g.act(a, images[i]);
                if lhs != images[j] {
                    let left = OmegaWord::act(a, OmegaWord::Gen(i));
                    return Err(relation_error(left, OmegaWord::Gen(j), lhs, images[j]));
                }
            }
        }
    }
    for op in 0..space.domain().len() {
        let k = space.domain().arity(op);
        let mut odo = Odometer::new(gens.len(), k);
        let mut args = vec![0; k];
        let mut mapped = vec![0; k];
        while let Some(idx) = odo.next() {
            for s in 0..k {
                args[s] = gens[idx[s]];
                mapped[s] = images[idx[s]];
            }
            if let Some(j) = position(space.apply(op, &args)) {
                let lhs = g.space().apply(op, &mapped);
                if lhs != images[j] {
                    let left = OmegaWord::op(
                        space.domain().symbol(op),
                        idx.iter().map(|&i| OmegaWord::Gen(i)).collect(),
                    );
                    return Err(relation_error(left, OmegaWord::Gen(j), lhs, images[j]));
                }
            }
        }
    }

    let mut image = vec![0; space.size()];
    for (&m, w) in &cl.witness {
        image[m] = eval_word(g, images, w)?;
    }
    let witness = |m: usize| cl.witness[&m].clone();
    for a in 0..f.actor().size() {
        for m in 0..space.size() {
            let target = f.act(a, m);
            let lhs = g.act(a, image[m]);
            if lhs != image[target] {
                let left = OmegaWord::act(a, witness(m));
                return Err(relation_error(left, witness(target), lhs, image[target]));
            }
        }
    }
    for op in 0..space.domain().len() {
        let k = space.domain().arity(op);
        let mut odo = Odometer::new(space.size(), k);
        let mut mapped = vec![0; k];
        while let Some(args) = odo.next() {
            for (v, &e) in mapped.iter_mut().zip(args) {
                *v = image[e];
            }
            let target = space.apply(op, args);
            let lhs = g.space().apply(op, &mapped);
            if lhs != image[target] {
                let left = OmegaWord::op(
                    space.domain().symbol(op),
                    args.iter().map(|&e| witness(e)).collect(),
                );
                return Err(relation_error(left, witness(target), lhs, image[target]));
            }
        }
    }
    ElementMap::new(g.space().size(), image)
}

/// Whether the reduced endomorphism `r` maps the generating set `x` onto a
/// generating set.
pub fn regular_on(rep: &Representation, x: &ElementSet, r: &ElementMap) -> Result<bool> {
    if !morphism_check(MorphismKind::Reduced, rep, rep, None, r)? {
        return Err(Error::Precondition("map is not a reduced endomorphism".into()));
    }
    if !is_generating(rep, x)? {
        return Err(Error::Precondition("set does not generate the representation".into()));
    }
    let image: ElementSet = x.iter().map(|&e| r.apply(e)).collect();
    is_generating(rep, &image)
}

/// Images of the quasibasis `b` under every automorphism, sorted.
pub fn basis_orbit(rep: &Representation, b: &ElementSet, budget: u64) -> Result<Vec<ElementSet>> {
    if !is_minimal_generating(rep, b)? {
        return Err(Error::Precondition("set is not a quasibasis".into()));
    }
    let mut orbit = BTreeSet::new();
    for r in automorphism_group(rep, budget)? {
        let image: ElementSet = b.iter().map(|&e| r.apply(e)).collect();
        if !is_minimal_generating(rep, &image)? {
            return Err(Error::Structure(
                "automorphic image of a quasibasis is not minimal".into(),
            ));
        }
        orbit.insert(image);
    }
    Ok(orbit.into_iter().collect())
}
