//! Representations of one finite algebra (the actor) by endomorphisms of
//! another (the space).

use std::fmt;

use crate::algebra::{
    homomorphism_violation, is_congruence, kernel_and_quotient, quotient, ElementMap, ElementSet,
    EquivalenceRelation, FiniteAlgebra, FirstIsomorphism, Odometer,
};
use crate::error::{Error, Result};
use crate::search::MapSearch;
use crate::structures::{distributes_over, group_data, is_multiplicative_omega_group};

/// How an actor operator combines the endomorphisms of its arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EndCombiner {
    /// `(f_1 .. f_k ω)(x) = ω'(f_1(x), .., f_k(x))` for a space operator `ω'`.
    Pointwise(String),
    /// `f(a * b) = f(a) ∘ f(b)`, reversed on the right side.
    Composition,
    /// `f([a, b]) = f(a)∘f(b) ⊖ f(b)∘f(a)` using a group operation of the space.
    Commutator(String),
}

impl fmt::Display for EndCombiner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndCombiner::Pointwise(s) => write!(f, "pointwise {s}"),
            EndCombiner::Composition => write!(f, "composition"),
            EndCombiner::Commutator(s) => write!(f, "commutator {s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Resolved {
    Pointwise(usize),
    Composition,
    Commutator { op: usize, inverse: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    actor: FiniteAlgebra,
    space: FiniteAlgebra,
    action: Vec<ElementMap>,
    combiners: Vec<EndCombiner>,
    side: Side,
    resolved: Vec<Resolved>,
}

/// The first place where a representation breaks its defining conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `f(actor_element)` does not preserve `operator` at `tuple`.
    NotEndomorphism {
        actor_element: usize,
        operator: String,
        tuple: Vec<usize>,
    },
    /// `f(operator(tuple))(point)` differs from the combined value.
    NotHomomorphism {
        operator: String,
        tuple: Vec<usize>,
        point: usize,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotEndomorphism {
                actor_element,
                operator,
                tuple,
            } => write!(
                f,
                "action of {actor_element} does not preserve {operator} at {tuple:?}"
            ),
            Violation::NotHomomorphism {
                operator,
                tuple,
                point,
                expected,
                found,
            } => write!(
                f,
                "operator {operator} at {tuple:?}, point {point}: combined action gives {expected}, table gives {found}"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Properties {
    pub effective: bool,
    pub free: bool,
    pub transitive: bool,
    pub single_transitive: bool,
}

impl Representation {
    pub fn new(
        actor: FiniteAlgebra,
        space: FiniteAlgebra,
        action: Vec<Vec<usize>>,
        combiners: Vec<EndCombiner>,
        side: Side,
    ) -> Result<Self> {
        if action.len() != actor.size() {
            return Err(Error::Shape(format!(
                "{} action maps for an actor of size {}",
                action.len(),
                actor.size()
            )));
        }
        let mut maps = Vec::with_capacity(action.len());
        for (a, image) in action.into_iter().enumerate() {
            if image.len() != space.size() {
                return Err(Error::Shape(format!(
                    "action of {a} has {} entries for a space of size {}",
                    image.len(),
                    space.size()
                )));
            }
            maps.push(ElementMap::new(space.size(), image)?);
        }
        if combiners.len() != actor.domain().len() {
            return Err(Error::Shape(format!(
                "{} combiners for {} actor operators",
                combiners.len(),
                actor.domain().len()
            )));
        }
        let mut resolved = Vec::with_capacity(combiners.len());
        for (op, c) in combiners.iter().enumerate() {
            let arity = actor.domain().arity(op);
            let sym = actor.domain().symbol(op);
            resolved.push(match c {
                EndCombiner::Pointwise(s) => {
                    let w = space.domain().index_of(s).ok_or_else(|| {
                        Error::Construction(format!("space has no operator {s} for {sym}"))
                    })?;
                    if space.domain().arity(w) != arity {
                        return Err(Error::Construction(format!(
                            "pointwise {s} has arity {}, actor operator {sym} has arity {arity}",
                            space.domain().arity(w)
                        )));
                    }
                    Resolved::Pointwise(w)
                }
                EndCombiner::Composition => {
                    if arity != 2 {
                        return Err(Error::Construction(format!(
                            "composition needs a binary operator, {sym} has arity {arity}"
                        )));
                    }
                    Resolved::Composition
                }
                EndCombiner::Commutator(s) => {
                    if arity != 2 {
                        return Err(Error::Construction(format!(
                            "commutator needs a binary operator, {sym} has arity {arity}"
                        )));
                    }
                    let w = space.domain().index_of(s).ok_or_else(|| {
                        Error::Construction(format!("space has no operator {s} for {sym}"))
                    })?;
                    if space.domain().arity(w) != 2 {
                        return Err(Error::Construction(format!("{s} is not binary")));
                    }
                    let g = group_data(&space, w).ok_or_else(|| {
                        Error::Construction(format!("{s} is not a group operation on the space"))
                    })?;
                    Resolved::Commutator {
                        op: w,
                        inverse: g.inverse,
                    }
                }
            });
        }
        Ok(Representation {
            actor,
            space,
            action: maps,
            combiners,
            side,
            resolved,
        })
    }

    pub fn actor(&self) -> &FiniteAlgebra {
        &self.actor
    }

    pub fn space(&self) -> &FiniteAlgebra {
        &self.space
    }

    pub fn action(&self, a: usize) -> &ElementMap {
        &self.action[a]
    }

    pub fn actions(&self) -> &[ElementMap] {
        &self.action
    }

    /// `f(a)(x)`.
    #[inline]
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a].apply(x)
    }

    pub fn combiners(&self) -> &[EndCombiner] {
        &self.combiners
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Action tables as plain vectors, for rebuilding.
    pub fn action_tables(&self) -> Vec<Vec<usize>> {
        self.action.iter().map(|m| m.image().to_vec()).collect()
    }

    /// Value at `x` of the endomorphism that the combiner of `op` builds from
    /// the actions of `args`.
    pub fn combine(&self, op: usize, args: &[usize], x: usize) -> usize {
        match &self.resolved[op] {
            Resolved::Pointwise(w) => {
                let vals: Vec<usize> = args.iter().map(|&a| self.act(a, x)).collect();
                self.space.apply(*w, &vals)
            }
            Resolved::Composition => {
                let (outer, inner) = self.ordered(args);
                self.act(outer, self.act(inner, x))
            }
            Resolved::Commutator { op: w, inverse } => {
                let (p, q) = self.ordered(args);
                let u = self.act(p, self.act(q, x));
                let v = self.act(q, self.act(p, x));
                self.space.binary(*w, u, inverse[v])
            }
        }
    }

    fn ordered(&self, args: &[usize]) -> (usize, usize) {
        match self.side {
            Side::Left => (args[0], args[1]),
            Side::Right => (args[1], args[0]),
        }
    }

    /// Checks that every action is an endomorphism and that the actor
    /// operations are carried to the combined endomorphisms.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (a, map) in self.action.iter().enumerate() {
            if let Some((op, tuple)) = homomorphism_violation(map, &self.space, &self.space)
                .expect("action maps fit the space")
            {
                return Err(Violation::NotEndomorphism {
                    actor_element: a,
                    operator: self.space.domain().symbol(op).to_string(),
                    tuple,
                });
            }
        }
        for op in 0..self.actor.domain().len() {
            let k = self.actor.domain().arity(op);
            let mut odo = Odometer::new(self.actor.size(), k);
            while let Some(args) = odo.next() {
                let c = self.actor.apply(op, args);
                for x in 0..self.space.size() {
                    let expected = self.combine(op, args, x);
                    let found = self.act(c, x);
                    if expected != found {
                        return Err(Violation::NotHomomorphism {
                            operator: self.actor.domain().symbol(op).to_string(),
                            tuple: args.to_vec(),
                            point: x,
                            expected,
                            found,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        self.validate()
            .map_err(|v| Error::Precondition(format!("invalid representation: {v}")))
    }

    pub fn properties(&self) -> Result<Properties> {
        self.require_valid()?;
        let n = self.space.size();
        let mut distinct: Vec<&[usize]> = self.action.iter().map(|m| m.image()).collect();
        distinct.sort();
        distinct.dedup();
        let effective = distinct.len() == self.action.len();
        let mut transitive = true;
        let mut unique = true;
        for x in 0..n {
            let mut hits = vec![0usize; n];
            for a in 0..self.actor.size() {
                hits[self.act(a, x)] += 1;
            }
            transitive &= hits.iter().all(|&h| h > 0);
            unique &= hits.iter().all(|&h| h == 1);
        }
        Ok(Properties {
            effective,
            free: effective,
            transitive,
            single_transitive: transitive && unique,
        })
    }

    /// Index of the first actor operator combined by composition.
    pub fn composition_operator(&self) -> Option<usize> {
        self.resolved
            .iter()
            .position(|r| matches!(r, Resolved::Composition))
    }

    /// Rebuilds with new tables but the same combiners and side.
    fn rebuild(
        &self,
        actor: FiniteAlgebra,
        space: FiniteAlgebra,
        action: Vec<Vec<usize>>,
    ) -> Result<Representation> {
        Representation::new(actor, space, action, self.combiners.clone(), self.side)
    }
}

fn require_group_actor(rep: &Representation, product_op: &str) -> Result<usize> {
    let op = rep.actor().op(product_op)?;
    if !is_multiplicative_omega_group(rep.actor(), op) {
        return Err(Error::Structure(format!(
            "actor is not a multiplicative group under {product_op}"
        )));
    }
    if rep.combiners()[op] != EndCombiner::Composition {
        return Err(Error::Structure(format!(
            "{product_op} is not combined by composition"
        )));
    }
    rep.require_valid()?;
    Ok(op)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbits {
    pub partition: EquivalenceRelation,
    /// Stabilizer of each space element.
    pub stabilizers: Vec<ElementSet>,
}

pub fn orbits_and_stabilizers(rep: &Representation, product_op: &str) -> Result<Orbits> {
    require_group_actor(rep, product_op)?;
    let n = rep.space().size();
    let mut label = vec![usize::MAX; n];
    for x in 0..n {
        if label[x] != usize::MAX {
            continue;
        }
        for a in 0..rep.actor().size() {
            label[rep.act(a, x)] = x;
        }
    }
    let stabilizers = (0..n)
        .map(|x| {
            (0..rep.actor().size())
                .filter(|&a| rep.act(a, x) == x)
                .collect()
        })
        .collect();
    Ok(Orbits {
        partition: EquivalenceRelation::from_labels(&label),
        stabilizers,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    Full,
    Reduced,
}

/// Checks the commuting square `r2(f(a)(m)) = g(r1(a))(r2(m))`. Failed
/// homomorphism preconditions are errors, a failed square is `Ok(false)`.
pub fn morphism_check(
    kind: MorphismKind,
    f: &Representation,
    g: &Representation,
    r1: Option<&ElementMap>,
    r2: &ElementMap,
) -> Result<bool> {
    Ok(morphism_violation(kind, f, g, r1, r2)?.is_none())
}

/// First `(a, m)` where the square fails.
pub fn morphism_violation(
    kind: MorphismKind,
    f: &Representation,
    g: &Representation,
    r1: Option<&ElementMap>,
    r2: &ElementMap,
) -> Result<Option<(usize, usize)>> {
    let identity;
    let r1 = match kind {
        MorphismKind::Full => {
            let r1 = r1.ok_or_else(|| {
                Error::Precondition("full morphism check needs an actor map".into())
            })?;
            if let Some((op, args)) = homomorphism_violation(r1, f.actor(), g.actor())? {
                return Err(Error::Precondition(format!(
                    "actor map is not a homomorphism: {} at {:?}",
                    f.actor().domain().symbol(op),
                    args
                )));
            }
            r1
        }
        MorphismKind::Reduced => {
            if f.actor() != g.actor() {
                return Err(Error::Precondition(
                    "reduced morphism needs a shared actor".into(),
                ));
            }
            identity = ElementMap::identity(f.actor().size());
            &identity
        }
    };
    if let Some((op, args)) = homomorphism_violation(r2, f.space(), g.space())? {
        return Err(Error::Precondition(format!(
            "space map is not a homomorphism: {} at {:?}",
            f.space().domain().symbol(op),
            args
        )));
    }
    for a in 0..f.actor().size() {
        let b = r1.apply(a);
        for m in 0..f.space().size() {
            if r2.apply(f.act(a, m)) != g.act(b, r2.apply(m)) {
                return Ok(Some((a, m)));
            }
        }
    }
    Ok(None)
}

/// Space automorphisms commuting with every action, sorted lexicographically.
pub fn automorphism_group(rep: &Representation, budget: u64) -> Result<Vec<ElementMap>> {
    rep.require_valid()?;
    let space = rep.space();
    let mut search = MapSearch::homomorphisms(space, space)?;
    for map in rep.actions() {
        search.constrain(1, map.image().to_vec(), map.image().to_vec());
    }
    let found = search.injective(true).budget(budget).all()?;
    let group = found
        .into_iter()
        .map(|image| ElementMap::new(space.size(), image))
        .collect::<Result<Vec<_>>>()?;
    verify_group(&group, space.size())?;
    Ok(group)
}

/// Identity, composition and inverse closure for a sorted list of permutations.
pub(crate) fn verify_group(group: &[ElementMap], n: usize) -> Result<()> {
    let has = |m: &ElementMap| group.binary_search(m).is_ok();
    if !has(&ElementMap::identity(n)) {
        return Err(Error::Structure("automorphisms miss the identity".into()));
    }
    for p in group {
        let inv = p.inverse().ok_or_else(|| Error::Structure("non-bijective automorphism".into()))?;
        if !has(&inv) {
            return Err(Error::Structure("automorphisms not closed under inverse".into()));
        }
        for q in group {
            if !has(&q.then(p)?) {
                return Err(Error::Structure(
                    "automorphisms not closed under composition".into(),
                ));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Effectivized {
    /// Actor elements acting as the identity.
    pub kernel: ElementSet,
    pub representation: Representation,
    /// Actor projection onto the quotient actor.
    pub projection: ElementMap,
}

/// Quotients the actor by `a ~ b ⇔ f(a) = f(b)`.
pub fn effectivize(rep: &Representation, product_op: &str) -> Result<Effectivized> {
    require_group_actor(rep, product_op)?;
    let id = ElementMap::identity(rep.space().size());
    let kernel = (0..rep.actor().size())
        .filter(|&a| *rep.action(a) == id)
        .collect();
    let same_action = EquivalenceRelation::from_labels(rep.actions());
    let (actor, projection) = quotient(rep.actor(), &same_action)?;
    let action = same_action
        .representatives()
        .iter()
        .map(|&a| rep.action(a).image().to_vec())
        .collect();
    let representation = rep.rebuild(actor, rep.space().clone(), action)?;
    representation.require_valid()?;
    Ok(Effectivized {
        kernel,
        representation,
        projection,
    })
}

/// Replaces the space by its quotient by `n`; returns the natural map too.
pub fn quotient_representation(
    rep: &Representation,
    n: &EquivalenceRelation,
) -> Result<(Representation, ElementMap)> {
    if n.carrier_size() != rep.space().size() {
        return Err(Error::Shape("relation does not fit the space".into()));
    }
    if !is_congruence(n, rep.space())? {
        return Err(Error::Precondition("not a congruence on the space".into()));
    }
    let blocks = n.blocks();
    for a in 0..rep.actor().size() {
        for block in &blocks {
            let x = block[0];
            for &y in &block[1..] {
                if !n.same(rep.act(a, x), rep.act(a, y)) {
                    return Err(Error::Precondition(format!(
                        "action of {a} is not coordinated with the congruence: {x} and {y} map to different blocks"
                    )));
                }
            }
        }
    }
    let (space, nat) = quotient(rep.space(), n)?;
    let reps = n.representatives();
    let action = (0..rep.actor().size())
        .map(|a| reps.iter().map(|&x| nat.apply(rep.act(a, x))).collect())
        .collect();
    let out = rep.rebuild(rep.actor().clone(), space, action)?;
    Ok((out, nat))
}

/// Transports the actor's operations to the space through `a ↦ f(a)(base)`.
pub fn induce_structure(rep: &Representation, base: usize) -> Result<FiniteAlgebra> {
    if base >= rep.space().size() {
        return Err(Error::Index(format!("base point {base} outside the space")));
    }
    if !rep.properties()?.single_transitive {
        return Err(Error::Structure("representation is not single transitive".into()));
    }
    let mut lift = vec![0; rep.space().size()];
    for a in 0..rep.actor().size() {
        lift[rep.act(a, base)] = a;
    }
    let mut lifted = Vec::new();
    FiniteAlgebra::from_fn(rep.actor().domain().clone(), rep.space().size(), |op, args| {
        lifted.clear();
        lifted.extend(args.iter().map(|&b| lift[b]));
        rep.act(rep.actor().apply(op, &lifted), base)
    })
}

/// Addition on the actor defined by pointwise sums of actions, when every
/// such sum is again an action.
pub fn induce_sum(rep: &Representation, add_op: &str) -> Result<Option<Vec<usize>>> {
    let props = rep.properties()?;
    if !props.effective {
        return Err(Error::Structure("representation is not effective".into()));
    }
    let space = rep.space();
    let add = space.op(add_op)?;
    if space.domain().arity(add) != 2 {
        return Err(Error::Shape(format!("{add_op} is not binary")));
    }
    let n = space.size();
    for x in 0..n {
        for y in 0..n {
            if space.binary(add, x, y) != space.binary(add, y, x) {
                return Err(Error::Structure(format!("{add_op} is not commutative")));
            }
            for z in 0..n {
                if space.binary(add, space.binary(add, x, y), z)
                    != space.binary(add, x, space.binary(add, y, z))
                {
                    return Err(Error::Structure(format!("{add_op} is not associative")));
                }
            }
        }
    }
    let index: std::collections::HashMap<&[usize], usize> = rep
        .actions()
        .iter()
        .enumerate()
        .map(|(a, m)| (m.image(), a))
        .collect();
    let k = rep.actor().size();
    let mut table = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            let sum: Vec<usize> = (0..n)
                .map(|m| space.binary(add, rep.act(a, m), rep.act(b, m)))
                .collect();
            match index.get(sum.as_slice()) {
                Some(&c) => table.push(c),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(table))
}

/// Space operators over which `op` distributes on both sides.
fn distributive_part(g: &FiniteAlgebra, op: usize) -> Vec<String> {
    (0..g.domain().len())
        .filter(|&w| w != op && distributes_over(g, op, w))
        .map(|w| g.domain().symbol(w).to_string())
        .collect()
}

/// Left shifts `L(b)(a) = b*a` and right shifts `R(b)(a) = a*b`.
///
/// The space keeps the operators the product distributes over; the actor keeps
/// those plus the product.
pub fn shifts(g: &FiniteAlgebra, product_op: &str) -> Result<(Representation, Representation)> {
    let op = g.op(product_op)?;
    if g.domain().arity(op) != 2 || group_data(g, op).is_none() {
        return Err(Error::Structure(format!("not a group under {product_op}")));
    }
    let kept = distributive_part(g, op);
    let kept_refs: Vec<&str> = kept.iter().map(String::as_str).collect();
    let space = g.restrict(&kept_refs)?;
    let mut actor_ops = vec![product_op];
    actor_ops.extend(kept_refs.iter().copied());
    let actor = g.restrict(&actor_ops)?;
    let mut combiners = vec![EndCombiner::Composition];
    combiners.extend(kept.iter().map(|s| EndCombiner::Pointwise(s.clone())));
    let n = g.size();
    let left = (0..n)
        .map(|b| (0..n).map(|a| g.binary(op, b, a)).collect())
        .collect();
    let right = (0..n)
        .map(|b| (0..n).map(|a| g.binary(op, a, b)).collect())
        .collect();
    let l = Representation::new(actor.clone(), space.clone(), left, combiners.clone(), Side::Left)?;
    let r = Representation::new(actor, space, right, combiners, Side::Right)?;
    for rep in [&l, &r] {
        rep.require_valid()?;
    }
    Ok((l, r))
}

/// The right-side representation commuting with a single transitive left one,
/// anchored at space element 0.
pub fn twin(left: &Representation) -> Result<Representation> {
    twin_at(left, 0)
}

/// [`twin`] anchored at `base`: `h(b)(f(a)(base)) = f(a)(f(b)(base))`.
pub fn twin_at(left: &Representation, base: usize) -> Result<Representation> {
    if left.side() != Side::Left {
        return Err(Error::Precondition("twin needs a left-side representation".into()));
    }
    if base >= left.space().size() {
        return Err(Error::Index(format!("base point {base} outside the space")));
    }
    if !left.properties()?.single_transitive {
        return Err(Error::Structure("representation is not single transitive".into()));
    }
    let n = left.space().size();
    let mut lift = vec![0; n];
    for a in 0..left.actor().size() {
        lift[left.act(a, base)] = a;
    }
    let action = (0..left.actor().size())
        .map(|b| {
            let fb = left.act(b, base);
            (0..n).map(|x| left.act(lift[x], fb)).collect()
        })
        .collect();
    let out = Representation::new(
        left.actor().clone(),
        left.space().clone(),
        action,
        left.combiners().to_vec(),
        Side::Right,
    )?;
    out.require_valid()?;
    Ok(out)
}

/// Factorization of a full morphism `(t1, t2)` through the quotient
/// representation and the image representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDecomposition {
    pub actor: FirstIsomorphism,
    pub space: FirstIsomorphism,
    /// Source modulo the kernels.
    pub quotient: Representation,
    /// Target restricted to the images.
    pub image: Representation,
}

pub fn decompose_morphism(
    f: &Representation,
    g: &Representation,
    t1: &ElementMap,
    t2: &ElementMap,
) -> Result<MorphismDecomposition> {
    if !morphism_check(MorphismKind::Full, f, g, Some(t1), t2)? {
        return Err(Error::Precondition("maps do not form a morphism".into()));
    }
    let actor = kernel_and_quotient(t1, f.actor(), g.actor())?;
    let space = kernel_and_quotient(t2, f.space(), g.space())?;
    let actor_reps = actor.kernel.representatives();
    let space_reps = space.kernel.representatives();
    let quotient_action = actor_reps
        .iter()
        .map(|&a| {
            space_reps
                .iter()
                .map(|&m| space.p.apply(f.act(a, m)))
                .collect()
        })
        .collect();
    let quotient = f.rebuild(actor.quotient.clone(), space.quotient.clone(), quotient_action)?;
    let image_members = space.r.image();
    let image_action = actor
        .r
        .image()
        .iter()
        .map(|&b| {
            image_members
                .iter()
                .map(|&y| {
                    image_members
                        .binary_search(&g.act(b, y))
                        .expect("image is stable under the image actor")
                })
                .collect()
        })
        .collect();
    let image = g.rebuild(actor.image.clone(), space.image.clone(), image_action)?;
    Ok(MorphismDecomposition {
        actor,
        space,
        quotient,
        image,
    })
}
