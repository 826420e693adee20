//! Finite Ω-algebras on the carrier `{0..n-1}` and the maps between them.
//!
//! An operation of arity `k` is stored as a dense table of length `n^k`. A tuple
//! `(a_1, .., a_k)` lives at index `((a_1 * n + a_2) * n + ..) * n + a_k`, so the
//! leftmost argument is the most significant digit. Document files rely on the
//! same order.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::search::MapSearch;

/// A set of carrier elements, always iterated in ascending order.
pub type ElementSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operator {
    pub symbol: String,
    pub arity: usize,
}

/// The signature Ω: an ordered list of operator symbols with arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OperatorDomain {
    operators: Vec<Operator>,
}

impl OperatorDomain {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut operators: Vec<Operator> = Vec::new();
        for (symbol, arity) in ops {
            let symbol = symbol.into();
            if symbol.is_empty() || symbol.chars().any(|c| c.is_whitespace() || c == ',') {
                return Err(Error::Construction(format!("invalid operator symbol {symbol:?}")));
            }
            if operators.iter().any(|o| o.symbol == symbol) {
                return Err(Error::Construction(format!("duplicate operator symbol {symbol}")));
            }
            operators.push(Operator { symbol, arity });
        }
        Ok(OperatorDomain { operators })
    }

    pub fn empty() -> Self {
        OperatorDomain::default()
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.operators.iter().position(|o| o.symbol == symbol)
    }

    /// Like [`index_of`](Self::index_of) but with a shape error for unknown symbols.
    pub fn require(&self, symbol: &str) -> Result<usize> {
        self.index_of(symbol)
            .ok_or_else(|| Error::Shape(format!("unknown operator {symbol}")))
    }

    pub fn arity(&self, op: usize) -> usize {
        self.operators[op].arity
    }

    pub fn symbol(&self, op: usize) -> &str {
        &self.operators[op].symbol
    }

    pub fn max_arity(&self) -> usize {
        self.operators.iter().map(|o| o.arity).max().unwrap_or(0)
    }
}

impl fmt::Display for OperatorDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, o) in self.operators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}/{}", o.symbol, o.arity)?;
        }
        write!(f, "}}")
    }
}

/// `n^k`, or `None` on overflow.
pub fn checked_power(n: usize, k: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..k {
        acc = acc.checked_mul(n)?;
    }
    Some(acc)
}

/// Row-major index of a tuple over `{0..n-1}`.
#[inline]
pub fn encode_tuple(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// Inverse of [`encode_tuple`].
pub fn decode_tuple(n: usize, mut index: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
}

/// Mixed-radix index with the first digit most significant.
pub fn encode_mixed(radices: &[usize], digits: &[usize]) -> usize {
    radices.iter().zip(digits).fold(0, |acc, (&r, &d)| acc * r + d)
}

pub fn decode_mixed(radices: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    out
}

/// Counts through `{0..n-1}^k` in ascending lexicographic order.
#[derive(Debug, Clone)]
pub struct Odometer {
    radices: Vec<usize>,
    digits: Vec<usize>,
    started: bool,
    done: bool,
}

impl Odometer {
    pub fn new(n: usize, k: usize) -> Self {
        Self::mixed(vec![n; k])
    }

    pub fn mixed(radices: Vec<usize>) -> Self {
        let done = radices.contains(&0);
        Odometer {
            digits: vec![0; radices.len()],
            radices,
            started: false,
            done,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                return Some(&self.digits);
            }
            self.digits[i] = 0;
        }
        self.done = true;
        None
    }
}

/// A carrier `{0..size-1}` with one dense table per operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    domain: OperatorDomain,
    size: usize,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(domain: OperatorDomain, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Shape("carrier must be nonempty".into()));
        }
        if tables.len() != domain.len() {
            return Err(Error::Shape(format!(
                "{} tables for {} operators",
                tables.len(),
                domain.len()
            )));
        }
        for (i, table) in tables.iter().enumerate() {
            let expected = checked_power(size, domain.arity(i))
                .ok_or_else(|| Error::Shape("table size overflows".into()))?;
            if table.len() != expected {
                return Err(Error::Shape(format!(
                    "table of {} has length {}, expected {}",
                    domain.symbol(i),
                    table.len(),
                    expected
                )));
            }
            if let Some(pos) = table.iter().position(|&v| v >= size) {
                return Err(Error::Index(format!(
                    "table of {} has entry {} at position {} outside carrier of size {}",
                    domain.symbol(i),
                    table[pos],
                    pos,
                    size
                )));
            }
        }
        Ok(FiniteAlgebra { domain, size, tables })
    }

    /// Builds every table from `f(op_index, args)`.
    pub fn from_fn(
        domain: OperatorDomain,
        size: usize,
        mut f: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(domain.len());
        for op in 0..domain.len() {
            let k = domain.arity(op);
            let len = checked_power(size, k)
                .ok_or_else(|| Error::Shape("table size overflows".into()))?;
            let mut table = Vec::with_capacity(len);
            let mut odo = Odometer::new(size, k);
            while let Some(args) = odo.next() {
                table.push(f(op, args));
            }
            tables.push(table);
        }
        FiniteAlgebra::new(domain, size, tables)
    }

    /// A bare set: empty signature.
    pub fn set(size: usize) -> Result<Self> {
        FiniteAlgebra::new(OperatorDomain::empty(), size, Vec::new())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> &OperatorDomain {
        &self.domain
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn op(&self, symbol: &str) -> Result<usize> {
        self.domain.require(symbol)
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][encode_tuple(self.size, args)]
    }

    #[inline]
    pub fn binary(&self, op: usize, a: usize, b: usize) -> usize {
        self.tables[op][a * self.size + b]
    }

    /// Value of an arity-0 operator.
    pub fn constant(&self, op: usize) -> usize {
        self.tables[op][0]
    }

    /// Keeps only the listed operators, in the listed order.
    pub fn restrict(&self, symbols: &[&str]) -> Result<Self> {
        let mut ops = Vec::new();
        let mut tables = Vec::new();
        for s in symbols {
            let i = self.op(s)?;
            ops.push((s.to_string(), self.domain.arity(i)));
            tables.push(self.tables[i].clone());
        }
        FiniteAlgebra::new(OperatorDomain::new(ops)?, self.size, tables)
    }

    pub fn carrier(&self) -> ElementSet {
        (0..self.size).collect()
    }
}

pub(crate) fn same_domain(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<()> {
    if a.domain != b.domain {
        return Err(Error::DomainMismatch(format!(
            "signatures {} and {} differ",
            a.domain, b.domain
        )));
    }
    Ok(())
}

/// A map between finite carriers given by its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementMap {
    source_size: usize,
    target_size: usize,
    image: Vec<usize>,
}

impl ElementMap {
    pub fn new(target_size: usize, image: Vec<usize>) -> Result<Self> {
        if let Some(pos) = image.iter().position(|&v| v >= target_size) {
            return Err(Error::Index(format!(
                "image of {} is {}, outside target of size {}",
                pos, image[pos], target_size
            )));
        }
        Ok(ElementMap {
            source_size: image.len(),
            target_size,
            image,
        })
    }

    pub fn identity(n: usize) -> Self {
        ElementMap {
            source_size: n,
            target_size: n,
            image: (0..n).collect(),
        }
    }

    pub fn constant(source_size: usize, target_size: usize, value: usize) -> Result<Self> {
        ElementMap::new(target_size, vec![value; source_size])
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `outer ∘ self`: first `self`, then `outer`.
    pub fn then(&self, outer: &ElementMap) -> Result<ElementMap> {
        if self.target_size != outer.source_size {
            return Err(Error::Shape(format!(
                "cannot compose map into {} elements with map from {}",
                self.target_size, outer.source_size
            )));
        }
        Ok(ElementMap {
            source_size: self.source_size,
            target_size: outer.target_size,
            image: self.image.iter().map(|&x| outer.image[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set().len() == self.target_size
    }

    pub fn is_bijective(&self) -> bool {
        self.source_size == self.target_size && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ElementMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.source_size];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(ElementMap {
            source_size: self.target_size,
            target_size: self.source_size,
            image: inv,
        })
    }

    pub fn image_set(&self) -> ElementSet {
        self.image.iter().copied().collect()
    }
}

/// A partition of `{0..n-1}`; each element records the least member of its block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquivalenceRelation {
    block_of: Vec<usize>,
}

impl EquivalenceRelation {
    /// Accepts only canonical block identifiers.
    pub fn new(block_of: Vec<usize>) -> Result<Self> {
        for (x, &b) in block_of.iter().enumerate() {
            if b > x || block_of[b] != b {
                return Err(Error::Shape(format!(
                    "block identifier {b} of element {x} is not canonical"
                )));
            }
        }
        Ok(EquivalenceRelation { block_of })
    }

    /// Canonicalizes an arbitrary labelling: equal labels share a block.
    pub fn from_labels<L: Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut first: std::collections::HashMap<&L, usize> = std::collections::HashMap::new();
        let block_of = labels
            .iter()
            .enumerate()
            .map(|(x, l)| *first.entry(l).or_insert(x))
            .collect();
        EquivalenceRelation { block_of }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n {
                    return Err(Error::Index(format!("element {x} outside carrier of size {n}")));
                }
                if label[x] != usize::MAX {
                    return Err(Error::Shape(format!("element {x} appears in two blocks")));
                }
                label[x] = i;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Shape(format!("element {x} is in no block")));
        }
        Ok(EquivalenceRelation::from_labels(&label))
    }

    pub fn discrete(n: usize) -> Self {
        EquivalenceRelation {
            block_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        EquivalenceRelation {
            block_of: vec![0; n],
        }
    }

    pub fn carrier_size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Block identifiers in ascending order.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.block_of.len())
            .filter(|&x| self.block_of[x] == x)
            .collect()
    }

    pub fn block_count(&self) -> usize {
        self.representatives().len()
    }

    /// Blocks sorted by their least element, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let reps = self.representatives();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); reps.len()];
        let pos = self.block_positions();
        for x in 0..self.block_of.len() {
            out[pos[x]].push(x);
        }
        out
    }

    /// Position of each element's block among the representatives.
    pub fn block_positions(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.block_of.len()];
        let mut next = 0;
        for x in 0..self.block_of.len() {
            if self.block_of[x] == x {
                index[x] = next;
                next += 1;
            }
        }
        self.block_of.iter().map(|&b| index[b]).collect()
    }
}

/// First operator and argument tuple where `f` fails to commute, if any.
pub fn homomorphism_violation(
    f: &ElementMap,
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<Option<(usize, Vec<usize>)>> {
    same_domain(a, b)?;
    if f.source_size() != a.size() || f.target_size() != b.size() {
        return Err(Error::Shape(format!(
            "map {}→{} does not fit algebras of sizes {} and {}",
            f.source_size(),
            f.target_size(),
            a.size(),
            b.size()
        )));
    }
    let mut mapped = Vec::new();
    for op in 0..a.domain().len() {
        let k = a.domain().arity(op);
        let mut odo = Odometer::new(a.size(), k);
        let mut idx = 0;
        while let Some(args) = odo.next() {
            mapped.clear();
            mapped.extend(args.iter().map(|&x| f.apply(x)));
            if f.apply(a.table(op)[idx]) != b.apply(op, &mapped) {
                return Ok(Some((op, args.to_vec())));
            }
            idx += 1;
        }
    }
    Ok(None)
}

pub fn is_homomorphism(f: &ElementMap, a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<bool> {
    Ok(homomorphism_violation(f, a, b)?.is_none())
}

/// The kernel partition of a map (blocks are fibres).
pub fn kernel(f: &ElementMap) -> EquivalenceRelation {
    EquivalenceRelation::from_labels(f.image())
}

pub fn is_congruence(e: &EquivalenceRelation, a: &FiniteAlgebra) -> Result<bool> {
    Ok(congruence_violation(e, a)?.is_none())
}

/// An operator index with two argument tuples.
pub type TuplePair = (usize, Vec<usize>, Vec<usize>);

/// An operator and two related tuples whose images fall in different blocks.
pub fn congruence_violation(e: &EquivalenceRelation, a: &FiniteAlgebra) -> Result<Option<TuplePair>> {
    if e.carrier_size() != a.size() {
        return Err(Error::Shape(format!(
            "relation on {} elements, algebra of size {}",
            e.carrier_size(),
            a.size()
        )));
    }
    // Changing one argument at a time within its block suffices, by transitivity.
    let n = a.size();
    let blocks = e.blocks();
    let pos = e.block_positions();
    for op in 0..a.domain().len() {
        let k = a.domain().arity(op);
        let table = a.table(op);
        let mut odo = Odometer::new(n, k);
        let mut other = vec![0; k];
        while let Some(args) = odo.next() {
            let here = e.block_of(table[encode_tuple(n, args)]);
            for slot in 0..k {
                other.copy_from_slice(args);
                for &y in &blocks[pos[args[slot]]] {
                    if y <= args[slot] {
                        continue;
                    }
                    other[slot] = y;
                    if e.block_of(table[encode_tuple(n, &other)]) != here {
                        return Ok(Some((op, args.to_vec(), other.clone())));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Quotient algebra with carrier numbered by ascending block identifier, and
/// the natural projection.
pub fn quotient(a: &FiniteAlgebra, e: &EquivalenceRelation) -> Result<(FiniteAlgebra, ElementMap)> {
    if let Some((op, s, t)) = congruence_violation(e, a)? {
        return Err(Error::Precondition(format!(
            "not a congruence: {} separates {:?} and {:?}",
            a.domain().symbol(op),
            s,
            t
        )));
    }
    let reps = e.representatives();
    let pos = e.block_positions();
    let mut lifted = Vec::new();
    let q = FiniteAlgebra::from_fn(a.domain().clone(), reps.len(), |op, args| {
        lifted.clear();
        lifted.extend(args.iter().map(|&i| reps[i]));
        pos[a.apply(op, &lifted)]
    })?;
    let p = ElementMap::new(reps.len(), pos)?;
    Ok((q, p))
}

/// The subalgebra on a closed subset, numbered ascending, with its inclusion.
pub fn subalgebra(a: &FiniteAlgebra, set: &ElementSet) -> Result<(FiniteAlgebra, ElementMap)> {
    let members: Vec<usize> = set.iter().copied().collect();
    if members.is_empty() {
        return Err(Error::Shape("subalgebra carrier must be nonempty".into()));
    }
    if let Some(&x) = members.iter().find(|&&x| x >= a.size()) {
        return Err(Error::Index(format!("element {x} outside carrier")));
    }
    let mut index = vec![usize::MAX; a.size()];
    for (i, &x) in members.iter().enumerate() {
        index[x] = i;
    }
    let mut lifted = Vec::new();
    let mut escaped = None;
    let sub = FiniteAlgebra::from_fn(a.domain().clone(), members.len(), |op, args| {
        lifted.clear();
        lifted.extend(args.iter().map(|&i| members[i]));
        let v = a.apply(op, &lifted);
        if index[v] == usize::MAX {
            escaped.get_or_insert((op, v));
            0
        } else {
            index[v]
        }
    })?;
    if let Some((op, v)) = escaped {
        return Err(Error::Precondition(format!(
            "subset is not closed: {} produces {}",
            a.domain().symbol(op),
            v
        )));
    }
    Ok((sub, ElementMap::new(a.size(), members)?))
}

/// The factorization `f = r ∘ q ∘ p` through the quotient by the kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstIsomorphism {
    pub kernel: EquivalenceRelation,
    pub quotient: FiniteAlgebra,
    pub image: FiniteAlgebra,
    /// Projection onto the quotient.
    pub p: ElementMap,
    /// Bijection from the quotient onto the image.
    pub q: ElementMap,
    /// Inclusion of the image into the target.
    pub r: ElementMap,
}

pub fn kernel_and_quotient(
    f: &ElementMap,
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<FirstIsomorphism> {
    if let Some((op, args)) = homomorphism_violation(f, a, b)? {
        return Err(Error::Precondition(format!(
            "map is not a homomorphism: {} at {:?}",
            a.domain().symbol(op),
            args
        )));
    }
    let kernel = kernel(f);
    let (quotient, p) = quotient(a, &kernel)?;
    let (image, r) = subalgebra(b, &f.image_set())?;
    let members = r.image();
    let q_image = kernel
        .representatives()
        .iter()
        .map(|&rep| members.binary_search(&f.apply(rep)).expect("image member"))
        .collect();
    let q = ElementMap::new(image.size(), q_image)?;
    Ok(FirstIsomorphism {
        kernel,
        quotient,
        image,
        p,
        q,
        r,
    })
}

/// Cartesian product with carrier in mixed-radix order (first factor most
/// significant) and the projections.
pub fn product(factors: &[FiniteAlgebra]) -> Result<(FiniteAlgebra, Vec<ElementMap>)> {
    let domain = factors
        .first()
        .map(|f| f.domain().clone())
        .unwrap_or_default();
    product_over(&domain, factors)
}

/// [`product`] with the signature given explicitly, so an empty list still
/// yields a one-element algebra of the right signature.
pub fn product_over(
    domain: &OperatorDomain,
    factors: &[FiniteAlgebra],
) -> Result<(FiniteAlgebra, Vec<ElementMap>)> {
    for f in factors {
        if f.domain() != domain {
            return Err(Error::DomainMismatch(format!(
                "factor signature {} differs from {}",
                f.domain(),
                domain
            )));
        }
    }
    let radices: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let size = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .ok_or_else(|| Error::Shape("product carrier overflows".into()))?;
    let decoded: Vec<Vec<usize>> = (0..size).map(|x| decode_mixed(&radices, x)).collect();
    let mut column = Vec::new();
    let mut digits = vec![0; factors.len()];
    let algebra = FiniteAlgebra::from_fn(domain.clone(), size, |op, args| {
        for (i, factor) in factors.iter().enumerate() {
            column.clear();
            column.extend(args.iter().map(|&x| decoded[x][i]));
            digits[i] = factor.apply(op, &column);
        }
        encode_mixed(&radices, &digits)
    })?;
    let projections = (0..factors.len())
        .map(|i| ElementMap::new(radices[i], decoded.iter().map(|d| d[i]).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok((algebra, projections))
}

/// Least subset containing `x` and closed under every operation.
pub fn generated_subalgebra(a: &FiniteAlgebra, x: &ElementSet) -> Result<ElementSet> {
    if let Some(&bad) = x.iter().find(|&&e| e >= a.size()) {
        return Err(Error::Index(format!(
            "generator {bad} outside carrier of size {}",
            a.size()
        )));
    }
    let mut member = vec![false; a.size()];
    let mut list: Vec<usize> = x.iter().copied().collect();
    for &e in &list {
        member[e] = true;
    }
    loop {
        let mut fresh = Vec::new();
        for op in 0..a.domain().len() {
            let k = a.domain().arity(op);
            let mut odo = Odometer::new(list.len(), k);
            let mut args = vec![0; k];
            while let Some(idx) = odo.next() {
                for (slot, &i) in args.iter_mut().zip(idx) {
                    *slot = list[i];
                }
                let v = a.apply(op, &args);
                if !member[v] {
                    member[v] = true;
                    fresh.push(v);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        list.extend(fresh);
    }
    Ok(list.into_iter().collect())
}

/// Per-element invariants preserved by isomorphisms.
fn element_invariants(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = a.size();
    let mut inv = vec![Vec::new(); n];
    for op in 0..a.domain().len() {
        let table = a.table(op);
        let mut hits = vec![0usize; n];
        for &v in table {
            hits[v] += 1;
        }
        for x in 0..n {
            inv[x].push(hits[x]);
            match a.domain().arity(op) {
                1 => inv[x].push(usize::from(table[x] == x)),
                2 => inv[x].push(usize::from(table[x * n + x] == x)),
                _ => {}
            }
        }
    }
    inv
}

/// The lexicographically least isomorphism `a → b`, if any.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<ElementMap>> {
    same_domain(a, b)?;
    if a.size() != b.size() {
        return Ok(None);
    }
    let ia = element_invariants(a);
    let ib = element_invariants(b);
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let allowed = ia
        .iter()
        .map(|x| ib.iter().map(|y| x == y).collect())
        .collect();
    let found = MapSearch::homomorphisms(a, b)?
        .injective(true)
        .allowed(allowed)
        .budget(u64::MAX)
        .first()?;
    match found {
        None => Ok(None),
        Some(image) => {
            let map = ElementMap::new(b.size(), image)?;
            let inverse = map.inverse().expect("injective on equal sizes");
            debug_assert!(is_homomorphism(&inverse, b, a)?);
            Ok(Some(map))
        }
    }
}
