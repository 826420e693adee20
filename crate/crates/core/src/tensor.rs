//! Tensor products of finite abelian groups, viewed as representations of the
//! integer ring acting through each group's exponent.
//!
//! The product is presented with one generator per tuple of factor elements
//! and the slot-additivity relations. The relation lattice always contains
//! `g · Z^N` where `g` is the gcd of the factor exponents, so elimination runs
//! with entries reduced mod `g`. A small Smith reduction over the surviving
//! generators gives the invariant factors and the canonical map.

use std::collections::VecDeque;

use num_integer::Integer;

use crate::algebra::{
    decode_mixed, encode_mixed, find_isomorphism, generated_subalgebra, ElementMap, ElementSet,
    FiniteAlgebra, OperatorDomain,
};
use crate::error::{Error, Result};
use crate::representation::{EndCombiner, Representation, Side};
use crate::search::MapSearch;
use crate::smith::smith_normal_form;
use crate::structures::{group_data, is_commutative, reduced_polymorphism_check};

/// Largest presentation (number of generator tuples) the builder accepts.
pub const MAX_GENERATORS: usize = 4096;

/// A finite abelian group restricted to its addition, with element orders.
#[derive(Debug, Clone)]
struct AbelianView {
    group: FiniteAlgebra,
    zero: usize,
    exponent: u64,
}

impl AbelianView {
    fn new(g: &FiniteAlgebra, add: &str, which: &str) -> Result<Self> {
        let group = g.restrict(&[add])?;
        if group.domain().arity(0) != 2 {
            return Err(Error::Shape(format!("{add} is not binary")));
        }
        let data = group_data(&group, 0)
            .ok_or_else(|| Error::Structure(format!("{which} is not a group under {add}")))?;
        if !is_commutative(&group, 0) {
            return Err(Error::Structure(format!("{which} is not abelian")));
        }
        let mut exponent = 1u64;
        for x in 0..group.size() {
            let mut order = 1u64;
            let mut y = x;
            while y != data.identity {
                y = group.binary(0, y, x);
                order += 1;
            }
            exponent = exponent.lcm(&order);
        }
        Ok(AbelianView {
            group,
            zero: data.identity,
            exponent,
        })
    }

    fn plus(&self, x: usize, y: usize) -> usize {
        self.group.binary(0, x, y)
    }

    fn times(&self, n: u64, x: usize) -> usize {
        (0..n).fold(self.zero, |acc, _| self.plus(acc, x))
    }

    /// Elements added greedily in ascending order while they enlarge the span.
    fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: ElementSet = [self.zero].into_iter().collect();
        for x in 0..self.group.size() {
            if !span.contains(&x) {
                gens.push(x);
                span = generated_subalgebra(&self.group, &gens.iter().copied().collect())
                    .expect("elements in range");
                span.insert(self.zero);
            }
        }
        gens
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorProduct {
    pub factors: Vec<FiniteAlgebra>,
    /// Symbol of the addition in every factor and in the result.
    pub add: String,
    /// Direct sum of cyclic groups `Z/d_1 ⊕ Z/d_2 ⊕ ..` in mixed-radix order.
    pub group: FiniteAlgebra,
    /// `d_1 | d_2 | ..`, all greater than one.
    pub invariant_factors: Vec<u64>,
    /// `(b_1, .., b_n) ↦ b_1 ⊗ .. ⊗ b_n`, from the factor product in mixed-radix order.
    pub canonical: ElementMap,
}

impl TensorProduct {
    pub fn order(&self) -> usize {
        self.group.size()
    }

    pub fn radices(&self) -> Vec<usize> {
        self.factors.iter().map(FiniteAlgebra::size).collect()
    }

    /// `b_1 ⊗ .. ⊗ b_n`.
    pub fn tensor(&self, elements: &[usize]) -> usize {
        self.canonical.apply(encode_mixed(&self.radices(), elements))
    }
}

/// Echelon rows over `Z/g`, keyed by leading column.
struct Echelon {
    g: i64,
    rows: Vec<Option<Vec<i64>>>,
}

impl Echelon {
    fn reduce(&self, row: &mut [i64]) {
        for v in row.iter_mut() {
            *v = v.rem_euclid(self.g);
        }
    }

    fn combine(&self, a: i64, x: &[i64], b: i64, y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .map(|(&p, &q)| (a * p + b * q).rem_euclid(self.g))
            .collect()
    }

    fn insert(&mut self, mut row: Vec<i64>) {
        self.reduce(&mut row);
        while let Some(c) = row.iter().position(|&v| v != 0) {
            let a = row[c];
            match self.rows[c].take() {
                None => {
                    // Pair the row with the implicit relation g·e_c.
                    let e = a.extended_gcd(&self.g);
                    let d = e.gcd;
                    let pivot: Vec<i64> = row.iter().map(|&v| (e.x * v).rem_euclid(self.g)).collect();
                    let rest: Vec<i64> = row.iter().map(|&v| ((self.g / d) * v).rem_euclid(self.g)).collect();
                    debug_assert_eq!(pivot[c], d % self.g);
                    self.rows[c] = Some(pivot);
                    row = rest;
                }
                Some(p) => {
                    let d0 = p[c];
                    if a % d0 == 0 {
                        row = self.combine(1, &row, -(a / d0), &p);
                        self.rows[c] = Some(p);
                    } else {
                        let e = a.extended_gcd(&d0);
                        let dd = e.gcd;
                        let pivot = self.combine(e.x, &row, e.y, &p);
                        row = self.combine(d0 / dd, &row, -(a / dd), &p);
                        self.rows[c] = Some(pivot);
                    }
                }
            }
        }
    }
}

/// Builds `G_1 ⊗ .. ⊗ G_n` for finite abelian groups under `add`.
pub fn tensor_abelian(factors: &[FiniteAlgebra], add: &str) -> Result<TensorProduct> {
    if factors.len() < 2 {
        return Err(Error::Precondition("tensor product needs at least two factors".into()));
    }
    let views = factors
        .iter()
        .enumerate()
        .map(|(i, g)| AbelianView::new(g, add, &format!("factor {i}")))
        .collect::<Result<Vec<_>>>()?;
    let radices: Vec<usize> = views.iter().map(|v| v.group.size()).collect();
    let total = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .filter(|&t| t <= MAX_GENERATORS)
        .ok_or_else(|| Error::Budget(format!("more than {MAX_GENERATORS} generators")))?;
    let g = views.iter().fold(0u64, |acc, v| acc.gcd(&v.exponent));
    let domain = OperatorDomain::new([(add, 2)])?;
    let views_restricted: Vec<FiniteAlgebra> = views.iter().map(|v| v.group.clone()).collect();

    let (invariant_factors, canonical_digits) = if g == 1 {
        (Vec::new(), vec![Vec::new(); total])
    } else {
        present(&views, &radices, total, g as i64)
    };
    let group = FiniteAlgebra::from_fn(
        domain,
        invariant_factors.iter().map(|&d| d as usize).product(),
        |_, args| {
            let r: Vec<usize> = invariant_factors.iter().map(|&d| d as usize).collect();
            let x = decode_mixed(&r, args[0]);
            let y = decode_mixed(&r, args[1]);
            let s: Vec<usize> = x.iter().zip(&y).zip(&r).map(|((a, b), m)| (a + b) % m).collect();
            encode_mixed(&r, &s)
        },
    )?;
    let r: Vec<usize> = invariant_factors.iter().map(|&d| d as usize).collect();
    let canonical = ElementMap::new(
        group.size(),
        canonical_digits.iter().map(|d| encode_mixed(&r, d)).collect(),
    )?;
    Ok(TensorProduct {
        factors: views_restricted,
        add: add.to_string(),
        group,
        invariant_factors,
        canonical,
    })
}

/// Invariant factors and, per generator tuple, its coordinates in
/// `Z/d_1 ⊕ ..`.
fn present(views: &[AbelianView], radices: &[usize], total: usize, g: i64) -> (Vec<u64>, Vec<Vec<usize>>) {
    let mut ech = Echelon {
        g,
        rows: vec![None; total],
    };
    let gens: Vec<Vec<usize>> = views.iter().map(AbelianView::generators).collect();
    for p in 0..total {
        let t = decode_mixed(radices, p);
        for (slot, view) in views.iter().enumerate() {
            if t[slot] == view.zero {
                let mut row = vec![0i64; total];
                row[p] = 1;
                ech.insert(row);
            }
            for &y in &gens[slot] {
                let mut with_y = t.clone();
                with_y[slot] = y;
                let mut sum = t.clone();
                sum[slot] = view.plus(t[slot], y);
                let mut row = vec![0i64; total];
                row[encode_mixed(radices, &sum)] += 1;
                row[p] -= 1;
                row[encode_mixed(radices, &with_y)] -= 1;
                ech.insert(row);
            }
        }
    }

    // Columns whose pivot is a unit are eliminated; the rest survive.
    let unit: Vec<bool> = (0..total)
        .map(|c| matches!(&ech.rows[c], Some(r) if r[c] == 1))
        .collect();
    let kept: Vec<usize> = (0..total).filter(|&c| !unit[c]).collect();
    let mut kpos = vec![usize::MAX; total];
    for (i, &c) in kept.iter().enumerate() {
        kpos[c] = i;
    }
    let k = kept.len();
    // expr[c]: coordinates over the kept columns that generator c equals.
    let mut expr: Vec<Vec<i64>> = vec![Vec::new(); total];
    let mut relations: Vec<Vec<i128>> = Vec::new();
    for c in (0..total).rev() {
        let Some(row) = &ech.rows[c] else { continue };
        let mut red = vec![0i64; k];
        for j in c + 1..total {
            let coef = row[j];
            if coef == 0 {
                continue;
            }
            if unit[j] {
                for (r, &e) in red.iter_mut().zip(&expr[j]) {
                    *r = (*r + coef * e).rem_euclid(g);
                }
            } else {
                red[kpos[j]] = (red[kpos[j]] + coef).rem_euclid(g);
            }
        }
        if unit[c] {
            expr[c] = red.iter().map(|&v| (-v).rem_euclid(g)).collect();
        } else {
            let mut rel: Vec<i128> = red.iter().map(|&v| v as i128).collect();
            rel[kpos[c]] += row[c] as i128;
            relations.push(rel);
        }
    }
    for i in 0..k {
        let mut rel = vec![0i128; k];
        rel[i] = g as i128;
        relations.push(rel);
    }
    for &c in &kept {
        let mut e = vec![0i64; k];
        e[kpos[c]] = 1;
        expr[c] = e;
    }

    let snf = smith_normal_form(&relations, k);
    let diag: Vec<i128> = snf.diagonal.clone();
    debug_assert_eq!(diag.len(), k);
    let keep: Vec<usize> = (0..k).filter(|&i| diag[i] > 1).collect();
    let factors: Vec<u64> = keep.iter().map(|&i| diag[i] as u64).collect();
    let coords = expr
        .iter()
        .map(|x| {
            keep.iter()
                .map(|&col| {
                    let d = diag[col];
                    let s: i128 = x
                        .iter()
                        .zip(&snf.v)
                        .map(|(&xi, vrow)| xi as i128 * vrow[col].rem_euclid(d))
                        .sum();
                    s.rem_euclid(d) as usize
                })
                .collect()
        })
        .collect();
    (factors, coords)
}

/// The ring `Z_e` acting on an abelian group by repeated addition.
pub fn integer_action(group: &FiniteAlgebra, add: &str, e: u64) -> Result<Representation> {
    let view = AbelianView::new(group, add, "group")?;
    if !e.is_multiple_of(view.exponent) {
        return Err(Error::Precondition(format!(
            "{e} is not a multiple of the exponent {}",
            view.exponent
        )));
    }
    let n = e as usize;
    let actor = FiniteAlgebra::from_fn(OperatorDomain::new([("+", 2), ("*", 2)])?, n, |op, a| {
        if op == 0 {
            (a[0] + a[1]) % n
        } else {
            (a[0] * a[1]) % n
        }
    })?;
    let action = (0..n)
        .map(|k| (0..view.group.size()).map(|x| view.times(k as u64, x)).collect())
        .collect();
    Representation::new(
        actor,
        view.group.clone(),
        action,
        vec![EndCombiner::Pointwise(add.to_string()), EndCombiner::Composition],
        Side::Left,
    )
}

/// The unique homomorphism `h` with `h ∘ canonical = g` for a multilinear
/// `g` into the abelian group `v`.
pub fn verify_universal(t: &TensorProduct, g: &[usize], v: &FiniteAlgebra) -> Result<ElementMap> {
    let target = AbelianView::new(v, &t.add, "target")?;
    let mut e = target.exponent;
    let factor_views = t
        .factors
        .iter()
        .map(|f| AbelianView::new(f, &t.add, "factor"))
        .collect::<Result<Vec<_>>>()?;
    for fv in &factor_views {
        e = e.lcm(&fv.exponent);
    }
    let reps = t
        .factors
        .iter()
        .map(|f| integer_action(f, &t.add, e))
        .collect::<Result<Vec<_>>>()?;
    let target_rep = integer_action(&target.group, &t.add, e)?;
    if !reduced_polymorphism_check(&reps, &target_rep, g)? {
        return Err(Error::Precondition("map is not a reduced polymorphism".into()));
    }

    let tz = group_data(&t.group, 0).expect("tensor group").identity;
    let mut h = vec![usize::MAX; t.order()];
    h[tz] = target.zero;
    let mut queue = VecDeque::from([tz]);
    while let Some(x) = queue.pop_front() {
        for (p, &c) in t.canonical.image().iter().enumerate() {
            let y = t.group.binary(0, x, c);
            if h[y] == usize::MAX {
                h[y] = target.plus(h[x], g[p]);
                queue.push_back(y);
            }
        }
    }
    if h.contains(&usize::MAX) {
        return Err(Error::Structure("canonical image does not generate the tensor product".into()));
    }
    let h = ElementMap::new(v.size(), h)?;
    let hom = crate::algebra::is_homomorphism(&h, &t.group, &target.group)?;
    let factors = t.canonical.then(&h)?;
    if !hom || factors.image() != g {
        return Err(Error::Structure("no homomorphism factors the polymorphism".into()));
    }
    if t.order() <= 16 {
        let mut count = 0;
        MapSearch::homomorphisms(&t.group, &target.group)?
            .budget(u64::MAX)
            .run(|cand| {
                if t.canonical.image().iter().zip(g).all(|(&c, &gv)| cand[c] == gv) {
                    count += 1;
                }
                true
            })?;
        if count != 1 {
            return Err(Error::Structure(format!("{count} homomorphisms factor the polymorphism")));
        }
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorLaws {
    /// `⊗` is additive in each slot.
    pub additivity: bool,
    /// Integers move freely between slots and out of the product.
    pub balancing: bool,
    /// For three or more factors: nesting the first two agrees up to isomorphism.
    pub associativity: Option<bool>,
}

impl TensorLaws {
    pub fn all_hold(&self) -> bool {
        self.additivity && self.balancing && self.associativity.unwrap_or(true)
    }
}

pub fn check_tensor_laws(t: &TensorProduct, budget: u64) -> Result<TensorLaws> {
    let radices = t.radices();
    let total = t.canonical.source_size();
    let views = t
        .factors
        .iter()
        .map(|f| AbelianView::new(f, &t.add, "factor"))
        .collect::<Result<Vec<_>>>()?;
    let e = views.iter().fold(1u64, |acc, v| acc.lcm(&v.exponent));
    let work = (total as u64)
        .saturating_mul(radices.iter().map(|&r| r as u64).sum::<u64>() + e * radices.len() as u64);
    if work > budget {
        return Err(Error::Budget(format!("law check needs {work} steps, budget {budget}")));
    }
    let tg = AbelianView::new(&t.group, &t.add, "tensor")?;
    let at = |d: &[usize]| t.canonical.apply(encode_mixed(&radices, d));
    let mut additivity = true;
    let mut balancing = true;
    for p in 0..total {
        let d = decode_mixed(&radices, p);
        let base = at(&d);
        for (slot, view) in views.iter().enumerate() {
            for y in 0..radices[slot] {
                let mut with_y = d.clone();
                with_y[slot] = y;
                let mut sum = d.clone();
                sum[slot] = view.plus(d[slot], y);
                additivity &= at(&sum) == tg.plus(base, at(&with_y));
            }
            for n in 0..e {
                let mut scaled = d.clone();
                scaled[slot] = view.times(n, d[slot]);
                let v = at(&scaled);
                balancing &= v == tg.times(n, base);
                for (other, oview) in views.iter().enumerate().skip(slot + 1) {
                    let mut moved = d.clone();
                    moved[other] = oview.times(n, d[other]);
                    balancing &= at(&moved) == v;
                }
            }
        }
    }
    let associativity = if t.factors.len() >= 3 {
        let mut nested = tensor_abelian(&t.factors[..2], &t.add)?;
        for f in &t.factors[2..] {
            nested = tensor_abelian(&[nested.group.clone(), f.clone()], &t.add)?;
        }
        Some(find_isomorphism(&nested.group, &t.group)?.is_some())
    } else {
        None
    };
    Ok(TensorLaws {
        additivity,
        balancing,
        associativity,
    })
}
