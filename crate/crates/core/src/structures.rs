//! Group-like structure of an algebra, the interchange law, closure of Hom
//! sets, reduced polymorphisms and matrices over a finite ring.

use std::collections::{BTreeMap, HashSet};

use crate::algebra::{decode_mixed, encode_mixed, encode_tuple, FiniteAlgebra, Odometer};
use crate::error::{Error, Result};
use crate::representation::Representation;
use crate::search::MapSearch;

/// Identity and inverse table of a group operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub identity: usize,
    pub inverse: Vec<usize>,
}

/// Identity and inverses when `op` is a group operation, checked by exhaustion.
pub fn group_data(a: &FiniteAlgebra, op: usize) -> Option<GroupData> {
    if a.domain().arity(op) != 2 || !is_associative(a, op) {
        return None;
    }
    let n = a.size();
    let identity = (0..n).find(|&e| (0..n).all(|x| a.binary(op, e, x) == x && a.binary(op, x, e) == x))?;
    let mut inverse = Vec::with_capacity(n);
    for x in 0..n {
        let y = (0..n).find(|&y| a.binary(op, x, y) == identity && a.binary(op, y, x) == identity)?;
        inverse.push(y);
    }
    Some(GroupData { identity, inverse })
}

pub fn is_associative(a: &FiniteAlgebra, op: usize) -> bool {
    let n = a.size();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = a.binary(op, x, y);
            (0..n).all(|z| a.binary(op, xy, z) == a.binary(op, x, a.binary(op, y, z)))
        })
    })
}

pub fn is_commutative(a: &FiniteAlgebra, op: usize) -> bool {
    let n = a.size();
    (0..n).all(|x| (0..n).all(|y| a.binary(op, x, y) == a.binary(op, y, x)))
}

/// `w` is additive in each argument separately with respect to `add`.
pub fn is_polyadditive(a: &FiniteAlgebra, add: usize, w: usize) -> bool {
    let n = a.size();
    let k = a.domain().arity(w);
    let mut odo = Odometer::new(n, k);
    let mut t = vec![0; k];
    while let Some(args) = odo.next() {
        let base = a.apply(w, args);
        for slot in 0..k {
            for y in 0..n {
                t.copy_from_slice(args);
                t[slot] = y;
                let with_y = a.apply(w, &t);
                t[slot] = a.binary(add, args[slot], y);
                if a.apply(w, &t) != a.binary(add, base, with_y) {
                    return false;
                }
            }
        }
    }
    true
}

/// `prod` distributes over `w` from both sides.
pub fn distributes_over(a: &FiniteAlgebra, prod: usize, w: usize) -> bool {
    let n = a.size();
    let k = a.domain().arity(w);
    let mut odo = Odometer::new(n, k);
    let mut left = vec![0; k];
    let mut right = vec![0; k];
    while let Some(args) = odo.next() {
        let v = a.apply(w, args);
        for x in 0..n {
            for i in 0..k {
                left[i] = a.binary(prod, x, args[i]);
                right[i] = a.binary(prod, args[i], x);
            }
            if a.binary(prod, x, v) != a.apply(w, &left) || a.binary(prod, v, x) != a.apply(w, &right)
            {
                return false;
            }
        }
    }
    true
}

/// Group under `add` with every other operator polyadditive.
pub fn is_omega_group(a: &FiniteAlgebra, add: usize) -> bool {
    group_data(a, add).is_some()
        && (0..a.domain().len()).all(|w| w == add || is_polyadditive(a, add, w))
}

/// Group under `prod` with `prod` distributing over every other operator.
pub fn is_multiplicative_omega_group(a: &FiniteAlgebra, prod: usize) -> bool {
    group_data(a, prod).is_some()
        && (0..a.domain().len()).all(|w| w == prod || distributes_over(a, prod, w))
}

/// Ω-group under `add` whose `prod` distributes over every other operator.
/// The product is not required to be invertible.
pub fn is_omega_ring(a: &FiniteAlgebra, add: usize, prod: usize) -> bool {
    add != prod
        && a.domain().arity(prod) == 2
        && is_omega_group(a, add)
        && (0..a.domain().len()).all(|w| w == prod || distributes_over(a, prod, w))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StructureFlags {
    pub is_group_under: BTreeMap<String, bool>,
    pub omega_group_wrt: Option<String>,
    pub multiplicative_omega_group_wrt: Option<String>,
    pub omega_ring_wrt: Option<(String, String)>,
    pub abelian_wrt: BTreeMap<String, bool>,
}

fn binary_symbol(a: &FiniteAlgebra, s: &str) -> Result<usize> {
    let op = a.op(s)?;
    if a.domain().arity(op) != 2 {
        return Err(Error::Shape(format!("{s} is not binary")));
    }
    Ok(op)
}

/// Classifies `a`. With `designated = (add, product)` only that pair is tried
/// for the Ω-group, multiplicative Ω-group and Ω-ring flags; otherwise the
/// first qualifying operators in signature order are reported.
pub fn classify(a: &FiniteAlgebra, designated: Option<(&str, &str)>) -> Result<StructureFlags> {
    let binary: Vec<usize> = (0..a.domain().len())
        .filter(|&w| a.domain().arity(w) == 2)
        .collect();
    let sym = |w: usize| a.domain().symbol(w).to_string();
    let mut flags = StructureFlags::default();
    for &w in &binary {
        flags.is_group_under.insert(sym(w), group_data(a, w).is_some());
        flags.abelian_wrt.insert(sym(w), is_commutative(a, w));
    }
    let (adds, prods) = match designated {
        Some((add, prod)) => (vec![binary_symbol(a, add)?], vec![binary_symbol(a, prod)?]),
        None => (binary.clone(), binary.clone()),
    };
    flags.omega_group_wrt = adds.iter().copied().find(|&w| is_omega_group(a, w)).map(sym);
    flags.multiplicative_omega_group_wrt = prods
        .iter()
        .copied()
        .find(|&w| is_multiplicative_omega_group(a, w))
        .map(sym);
    'ring: for &add in &adds {
        for &prod in &prods {
            if is_omega_ring(a, add, prod) {
                flags.omega_ring_wrt = Some((sym(add), sym(prod)));
                break 'ring;
            }
        }
    }
    Ok(flags)
}

/// First matrix, in descending lexicographic order of its row-major entries,
/// that breaks the interchange of `w1` (applied down columns) and `w2`
/// (applied along rows). `None` when the law holds.
pub fn interchange(b: &FiniteAlgebra, w1: &str, w2: &str) -> Result<Option<Vec<Vec<usize>>>> {
    let o1 = b.op(w1)?;
    let o2 = b.op(w2)?;
    let m = b.domain().arity(o1);
    let n = b.domain().arity(o2);
    let size = b.size();
    let mut odo = Odometer::new(size, m * n);
    let mut row = vec![0; n];
    let mut col = vec![0; m];
    let mut inner = vec![0; m];
    let mut outer = vec![0; n];
    while let Some(digits) = odo.next() {
        // Reflect the ascending odometer to scan in descending order.
        let a: Vec<usize> = digits.iter().map(|&d| size - 1 - d).collect();
        for i in 0..m {
            row.copy_from_slice(&a[i * n..(i + 1) * n]);
            inner[i] = b.apply(o2, &row);
        }
        let lhs = b.apply(o1, &inner);
        for j in 0..n {
            for i in 0..m {
                col[i] = a[i * n + j];
            }
            outer[j] = b.apply(o1, &col);
        }
        let rhs = b.apply(o2, &outer);
        if lhs != rhs {
            return Ok(Some((0..m).map(|i| a[i * n..(i + 1) * n].to_vec()).collect()));
        }
    }
    Ok(None)
}

/// Whether `Hom(a → b)` is closed under the pointwise operation `w`.
pub fn hom_set_closed(a: &FiniteAlgebra, b: &FiniteAlgebra, w: &str, budget: u64) -> Result<bool> {
    let op = b.op(w)?;
    let k = b.domain().arity(op);
    let mut homs = Vec::new();
    let nodes = MapSearch::homomorphisms(a, b)?
        .budget(budget)
        .run(|h| {
            homs.push(h.to_vec());
            true
        })?;
    let tuples = u64::try_from(homs.len())
        .ok()
        .and_then(|h| h.checked_pow(k as u32))
        .unwrap_or(u64::MAX);
    if nodes.saturating_add(tuples) > budget {
        return Err(Error::Budget(format!(
            "{} homomorphisms give {} tuples, budget {}",
            homs.len(),
            tuples,
            budget
        )));
    }
    let set: HashSet<&[usize]> = homs.iter().map(Vec::as_slice).collect();
    let mut odo = Odometer::new(homs.len(), k);
    let mut vals = vec![0; k];
    let mut combined = vec![0; a.size()];
    while let Some(idx) = odo.next() {
        for (x, slot) in combined.iter_mut().enumerate() {
            for (v, &i) in vals.iter_mut().zip(idx) {
                *v = homs[i][x];
            }
            *slot = b.apply(op, &vals);
        }
        if !set.contains(combined.as_slice()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of an open-ended witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NoneWithinBudget,
}

/// Looks for an algebra in `family` where every pair of operators satisfies
/// the interchange law while some binary operator is not commutative and
/// associative.
pub fn search_interchange_non_abelian(
    family: &[FiniteAlgebra],
) -> Result<SearchOutcome<(usize, String)>> {
    for (i, b) in family.iter().enumerate() {
        let ops: Vec<&str> = b.domain().operators().iter().map(|o| o.symbol.as_str()).collect();
        let mut holds = true;
        'pairs: for w1 in &ops {
            for w2 in &ops {
                if interchange(b, w1, w2)?.is_some() {
                    holds = false;
                    break 'pairs;
                }
            }
        }
        if !holds {
            continue;
        }
        for (w, o) in b.domain().operators().iter().enumerate() {
            if o.arity == 2 && !(is_commutative(b, w) && is_associative(b, w)) {
                return Ok(SearchOutcome::Found((i, o.symbol.clone())));
            }
        }
    }
    Ok(SearchOutcome::NoneWithinBudget)
}

/// Looks for a pair `(a, b)` in `family` and a binary operator under which
/// `Hom(a → b)` is closed although the operator is not commutative and
/// associative on `b`. Pairs that exceed the budget are skipped.
pub fn search_closed_non_abelian(
    family: &[FiniteAlgebra],
    budget: u64,
) -> Result<SearchOutcome<(usize, usize, String)>> {
    for (j, b) in family.iter().enumerate() {
        for (w, o) in b.domain().operators().iter().enumerate() {
            if o.arity != 2 || (is_commutative(b, w) && is_associative(b, w)) {
                continue;
            }
            for (i, a) in family.iter().enumerate() {
                if a.domain() != b.domain() {
                    continue;
                }
                match hom_set_closed(a, b, &o.symbol, budget) {
                    Ok(true) => return Ok(SearchOutcome::Found((i, j, o.symbol.clone()))),
                    Ok(false) | Err(Error::Budget(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(SearchOutcome::NoneWithinBudget)
}

/// A failed reduced-polymorphism condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolymorphismViolation {
    /// Slot `slot` is not a homomorphism for `operator` at the given point.
    Operation {
        slot: usize,
        operator: String,
        point: Vec<usize>,
        arguments: Vec<usize>,
    },
    /// Slot `slot` does not commute with the action of `actor_element`.
    Action {
        slot: usize,
        actor_element: usize,
        point: Vec<usize>,
    },
}

fn polymorphism_shapes(fs: &[Representation], f: &Representation, r2: &[usize]) -> Result<Vec<usize>> {
    if fs.is_empty() {
        return Err(Error::Shape("no source representations".into()));
    }
    for (k, fk) in fs.iter().enumerate() {
        if fk.actor() != f.actor() {
            return Err(Error::Shape(format!("source {k} has a different actor")));
        }
        if fk.space().domain() != f.space().domain() {
            return Err(Error::DomainMismatch(format!(
                "source {k} space signature differs from the target"
            )));
        }
    }
    let radices: Vec<usize> = fs.iter().map(|fk| fk.space().size()).collect();
    let total = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .ok_or_else(|| Error::Shape("product overflows".into()))?;
    if r2.len() != total {
        return Err(Error::Shape(format!(
            "map has {} entries, product has {}",
            r2.len(),
            total
        )));
    }
    if let Some(&v) = r2.iter().find(|&&v| v >= f.space().size()) {
        return Err(Error::Index(format!("map value {v} outside the target")));
    }
    Ok(radices)
}

/// First violation of the reduced-polymorphism conditions, if any.
pub fn reduced_polymorphism_violation(
    fs: &[Representation],
    f: &Representation,
    r2: &[usize],
) -> Result<Option<PolymorphismViolation>> {
    let radices = polymorphism_shapes(fs, f, r2)?;
    let target = f.space();
    let total = r2.len();
    let mut point_digits;
    for (slot, fk) in fs.iter().enumerate() {
        let src = fk.space();
        for p in 0..total {
            point_digits = decode_mixed(&radices, p);
            if point_digits[slot] != 0 {
                continue;
            }
            let at = |v: usize| {
                let mut d = point_digits.clone();
                d[slot] = v;
                r2[encode_mixed(&radices, &d)]
            };
            for w in 0..src.domain().len() {
                let k = src.domain().arity(w);
                let mut odo = Odometer::new(src.size(), k);
                let mut vals = vec![0; k];
                while let Some(xs) = odo.next() {
                    for (v, &x) in vals.iter_mut().zip(xs) {
                        *v = at(x);
                    }
                    if at(src.apply(w, xs)) != target.apply(w, &vals) {
                        return Ok(Some(PolymorphismViolation::Operation {
                            slot,
                            operator: src.domain().symbol(w).to_string(),
                            point: point_digits.clone(),
                            arguments: xs.to_vec(),
                        }));
                    }
                }
            }
            for a in 0..f.actor().size() {
                for m in 0..src.size() {
                    if at(fk.act(a, m)) != f.act(a, at(m)) {
                        let mut d = point_digits.clone();
                        d[slot] = m;
                        return Ok(Some(PolymorphismViolation::Action {
                            slot,
                            actor_element: a,
                            point: d,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn reduced_polymorphism_check(
    fs: &[Representation],
    f: &Representation,
    r2: &[usize],
) -> Result<bool> {
    let ok = reduced_polymorphism_violation(fs, f, r2)?.is_none();
    if ok {
        debug_assert!(slot_swap_holds(fs, r2)?);
    }
    Ok(ok)
}

/// Moving an actor element from one slot to another leaves the value unchanged.
pub fn slot_swap_holds(fs: &[Representation], r2: &[usize]) -> Result<bool> {
    let radices: Vec<usize> = fs.iter().map(|fk| fk.space().size()).collect();
    let actor = fs
        .first()
        .map(|f| f.actor().size())
        .ok_or_else(|| Error::Shape("no source representations".into()))?;
    for p in 0..r2.len() {
        let d = decode_mixed(&radices, p);
        for a in 0..actor {
            for k in 0..fs.len() {
                for l in k + 1..fs.len() {
                    let mut dk = d.clone();
                    dk[k] = fs[k].act(a, d[k]);
                    let mut dl = d.clone();
                    dl[l] = fs[l].act(a, d[l]);
                    if r2[encode_mixed(&radices, &dk)] != r2[encode_mixed(&radices, &dl)] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// A finite ring with designated addition and product.
#[derive(Debug, Clone)]
pub struct MatrixRing<'a> {
    ring: &'a FiniteAlgebra,
    add: usize,
    mul: usize,
    zero: usize,
}

impl<'a> MatrixRing<'a> {
    pub fn new(ring: &'a FiniteAlgebra, add: &str, mul: &str) -> Result<Self> {
        let add = binary_symbol(ring, add)?;
        let mul = binary_symbol(ring, mul)?;
        let zero = group_data(ring, add)
            .ok_or_else(|| Error::Structure("addition is not a group operation".into()))?
            .identity;
        Ok(MatrixRing { ring, add, mul, zero })
    }

    fn plus(&self, x: usize, y: usize) -> usize {
        self.ring.binary(self.add, x, y)
    }

    fn times(&self, x: usize, y: usize) -> usize {
        self.ring.binary(self.mul, x, y)
    }

    fn check(&self, m: &Matrix) -> Result<()> {
        match m.entries.iter().find(|&&v| v >= self.ring.size()) {
            Some(v) => Err(Error::Index(format!("entry {v} outside the ring"))),
            None => Ok(()),
        }
    }

    /// `(a rc b)_ij = Σ_k a_ik b_kj`; needs `cols(a) = rows(b)`.
    pub fn rc_product(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        self.check(a)?;
        self.check(b)?;
        if a.cols != b.rows {
            return Err(Error::Shape(format!(
                "rc product of {}x{} and {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let mut entries = Vec::with_capacity(a.rows * b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let s = (0..a.cols).fold(self.zero, |s, k| self.plus(s, self.times(a.get(i, k), b.get(k, j))));
                entries.push(s);
            }
        }
        Matrix::new(a.rows, b.cols, entries)
    }

    /// `(a cr b)_ij = Σ_k a_kj b_ik`; needs `rows(a) = cols(b)` and has
    /// shape `rows(b) x cols(a)`.
    pub fn cr_product(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        self.check(a)?;
        self.check(b)?;
        if a.rows != b.cols {
            return Err(Error::Shape(format!(
                "cr product of {}x{} and {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let mut entries = Vec::with_capacity(b.rows * a.cols);
        for i in 0..b.rows {
            for j in 0..a.cols {
                let s = (0..a.rows).fold(self.zero, |s, k| self.plus(s, self.times(a.get(k, j), b.get(i, k))));
                entries.push(s);
            }
        }
        Matrix::new(b.rows, a.cols, entries)
    }

    pub fn sum(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        self.check(a)?;
        self.check(b)?;
        if a.rows != b.rows || a.cols != b.cols {
            return Err(Error::Shape("sum of matrices of different shapes".into()));
        }
        let entries = a.entries.iter().zip(&b.entries).map(|(&x, &y)| self.plus(x, y)).collect();
        Matrix::new(a.rows, a.cols, entries)
    }

    /// The matrix with the product's two-sided identity on the diagonal.
    pub fn identity(&self, n: usize) -> Result<Matrix> {
        let r = self.ring;
        let one = (0..r.size())
            .find(|&e| (0..r.size()).all(|x| self.times(e, x) == x && self.times(x, e) == x))
            .ok_or_else(|| Error::Structure("product has no identity".into()))?;
        let entries = (0..n * n)
            .map(|p| if p / n == p % n { one } else { self.zero })
            .collect();
        Matrix::new(n, n, entries)
    }

    /// `(a rc b)^T = a^T cr b^T`.
    pub fn transpose_law_holds(&self, a: &Matrix, b: &Matrix) -> Result<bool> {
        Ok(self.rc_product(a, b)?.transpose() == self.cr_product(&a.transpose(), &b.transpose())?)
    }

    /// All four operations at once; products are absent when shapes do not fit.
    pub fn evaluate(&self, a: &Matrix, b: &Matrix) -> Result<MatrixReport> {
        self.check(a)?;
        self.check(b)?;
        Ok(MatrixReport {
            rc_product: self.rc_product(a, b).ok(),
            cr_product: self.cr_product(a, b).ok(),
            transpose: (a.transpose(), b.transpose()),
            sum: self.sum(a, b).ok(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixReport {
    pub rc_product: Option<Matrix>,
    pub cr_product: Option<Matrix>,
    pub transpose: (Matrix, Matrix),
    pub sum: Option<Matrix>,
}

/// A row-major matrix of ring elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[encode_tuple(self.cols, &[i, j])]
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }
}
