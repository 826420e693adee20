//! Slow, obviously-correct reference implementations and seeded generators
//! for checking the library against.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use omega_core::algebra::{Odometer, OperatorDomain};
use omega_core::search::MapSearch;
use omega_core::{EndCombiner, FiniteAlgebra, Representation, Side};
use rand::Rng;

/// Nonzero diagonal of the Smith form, by plain gcd elimination with checked
/// `i128` arithmetic. Panics on overflow rather than returning a wrong answer.
pub fn smith_diagonal(rows: &[Vec<i128>], cols: usize) -> Vec<i128> {
    let mut m = row_echelon(rows, cols, None);
    let mut diag = Vec::new();
    loop {
        // Smallest nonzero entry anywhere becomes the pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for (i, r) in m.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v != 0 && pivot.is_none_or(|(pi, pj)| v.abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        let p = m[pi][pj];
        let mut reduced = true;
        for i in 0..m.len() {
            if i != pi && m[i][pj] != 0 {
                let q = m[i][pj] / p;
                for j in 0..cols {
                    let s = q.checked_mul(m[pi][j]).expect("overflow");
                    m[i][j] = m[i][j].checked_sub(s).expect("overflow");
                }
                reduced &= m[i][pj] == 0;
            }
        }
        for j in 0..cols {
            if j != pj && m[pi][j] != 0 {
                let q = m[pi][j] / p;
                for r in m.iter_mut() {
                    let s = q.checked_mul(r[pj]).expect("overflow");
                    r[j] = r[j].checked_sub(s).expect("overflow");
                }
                reduced &= m[pi][j] == 0;
            }
        }
        if !reduced {
            continue;
        }
        // Pivot is alone in its row and column: it must divide everything left.
        if let Some(i) = (0..m.len()).find(|&i| i != pi && m[i].iter().any(|&v| v % p != 0)) {
            for j in 0..cols {
                m[pi][j] = m[pi][j].checked_add(m[i][j]).expect("overflow");
            }
            continue;
        }
        diag.push(p.abs());
        m.remove(pi);
        for r in m.iter_mut() {
            r[pj] = 0;
        }
        m.retain(|r| r.iter().any(|&v| v != 0));
    }
    diag.sort();
    diag
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Integer row echelon form spanning the same row lattice, built by
/// unimodular gcd combinations. At most `cols` rows survive.
///
/// With a modulus `e`, entries are reduced mod `e`; the result then spans the
/// original lattice only together with `e Z^cols`.
fn row_echelon(rows: &[Vec<i128>], cols: usize, modulus: Option<i128>) -> Vec<Vec<i128>> {
    let mut pivots: Vec<Option<Vec<i128>>> = vec![None; cols];
    for r in rows {
        let mut row = r.clone();
        while let Some(c) = row.iter().position(|&v| v != 0) {
            match pivots[c].take() {
                None => {
                    pivots[c] = Some(row);
                    break;
                }
                Some(p) => {
                    let (g, x, y) = ext_gcd(row[c], p[c]);
                    let (a, b) = (row[c] / g, p[c] / g);
                    let combine = |s: i128, u: &[i128], t: i128, v: &[i128]| -> Vec<i128> {
                        u.iter()
                            .zip(v)
                            .map(|(&ui, &vi)| {
                                s.checked_mul(ui)
                                    .and_then(|l| t.checked_mul(vi).and_then(|rr| l.checked_add(rr)))
                                    .expect("overflow")
                            })
                            .collect()
                    };
                    let reduce = |mut v: Vec<i128>| {
                        if let Some(e) = modulus {
                            v.iter_mut().for_each(|x| *x = x.rem_euclid(e));
                        }
                        v
                    };
                    // [x y; -b a] has determinant 1.
                    pivots[c] = Some(reduce(combine(x, &row, y, &p)));
                    row = reduce(combine(-b, &row, a, &p));
                }
            }
        }
    }
    pivots.into_iter().flatten().collect()
}

/// Torsion invariant factors of `Z_{m_1} ⊗ .. ⊗ Z_{m_k}` from the full
/// presentation: one generator per tuple, additivity in every slot for every
/// element, and integers moved between slots.
pub fn cyclic_tensor_invariants(moduli: &[usize]) -> Vec<i128> {
    let total: usize = moduli.iter().product();
    let encode = |t: &[usize]| t.iter().zip(moduli).fold(0, |acc, (&d, &m)| acc * m + d);
    let mut rows = Vec::new();
    let mut odo = Odometer::mixed(moduli.to_vec());
    let e = moduli.iter().fold(1, |a, &m| lcm(a, m));
    while let Some(t) = odo.next() {
        let t = t.to_vec();
        for (slot, &m) in moduli.iter().enumerate() {
            for y in 0..m {
                let mut row = vec![0i128; total];
                let mut sum = t.clone();
                sum[slot] = (t[slot] + y) % m;
                let mut with_y = t.clone();
                with_y[slot] = y;
                row[encode(&sum)] += 1;
                row[encode(&t)] -= 1;
                row[encode(&with_y)] -= 1;
                rows.push(row);
            }
            for n in 0..e {
                for (other, &mo) in moduli.iter().enumerate() {
                    if other == slot {
                        continue;
                    }
                    let mut a = t.clone();
                    a[slot] = (t[slot] * n) % m;
                    let mut b = t.clone();
                    b[other] = (t[other] * n) % mo;
                    let mut row = vec![0i128; total];
                    row[encode(&a)] += 1;
                    row[encode(&b)] -= 1;
                    if row.iter().any(|&v| v != 0) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    // The tensor product has exponent dividing e, so e Z^total lies in the
    // relation lattice and entries may be taken mod e.
    let e = e as i128;
    let mut rows = row_echelon(&rows, total, Some(e));
    rows.extend((0..total).map(|j| {
        let mut r = vec![0; total];
        r[j] = e;
        r
    }));
    let diag = smith_diagonal(&rows, total);
    assert_eq!(diag.len(), total, "tensor of finite groups is finite");
    diag.into_iter().filter(|&d| d != 1).collect()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Closure by repeating every operation and action on the whole current set
/// until nothing changes.
pub fn naive_closure(rep: &Representation, x: &BTreeSet<usize>) -> BTreeSet<usize> {
    let space = rep.space();
    let mut set = x.clone();
    loop {
        let elems: Vec<usize> = set.iter().copied().collect();
        let mut next = set.clone();
        for op in 0..space.domain().len() {
            let k = space.domain().arity(op);
            let mut odo = Odometer::new(elems.len(), k);
            while let Some(idx) = odo.next() {
                let args: Vec<usize> = idx.iter().map(|&i| elems[i]).collect();
                next.insert(space.apply(op, &args));
            }
        }
        for a in 0..rep.actor().size() {
            for &e in &elems {
                next.insert(rep.act(a, e));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Whether `f` is a homomorphism, checked on every tuple.
pub fn brute_is_homomorphism(f: &[usize], a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    (0..a.domain().len()).all(|op| {
        let k = a.domain().arity(op);
        let mut odo = Odometer::new(a.size(), k);
        while let Some(args) = odo.next() {
            let mapped: Vec<usize> = args.iter().map(|&x| f[x]).collect();
            if f[a.apply(op, args)] != b.apply(op, &mapped) {
                return false;
            }
        }
        true
    })
}

/// The lexicographically least isomorphism, by trying every permutation.
pub fn brute_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.size() != b.size() || a.domain() != b.domain() {
        return None;
    }
    let mut p: Vec<usize> = (0..a.size()).collect();
    loop {
        if brute_is_homomorphism(&p, a, b) {
            return Some(p);
        }
        if !next_permutation(&mut p) {
            return None;
        }
    }
}

/// Every map `a -> b` passing [`brute_is_homomorphism`], in lexicographic order.
pub fn brute_homomorphisms(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut odo = Odometer::new(b.size(), a.size());
    while let Some(f) = odo.next() {
        if brute_is_homomorphism(f, a, b) {
            out.push(f.to_vec());
        }
    }
    out
}

/// A random algebra of size `n` over `domain`.
pub fn random_algebra<R: Rng>(rng: &mut R, domain: &OperatorDomain, n: usize) -> FiniteAlgebra {
    let tables = (0..domain.len())
        .map(|op| {
            let len = n.pow(domain.arity(op) as u32);
            (0..len).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    FiniteAlgebra::new(domain.clone(), n, tables).expect("random tables are in range")
}

/// Every magma on `n` elements with one binary operation `*`.
pub fn all_magmas(n: usize) -> Vec<FiniteAlgebra> {
    let domain = OperatorDomain::new([("*", 2)]).expect("valid");
    let mut out = Vec::new();
    let mut odo = Odometer::new(n, n * n);
    while let Some(t) = odo.next() {
        out.push(FiniteAlgebra::new(domain.clone(), n, vec![t.to_vec()]).expect("valid"));
    }
    out
}

/// A random space with up to two operators, and an actor formed by the
/// monoid under composition generated by a few random endomorphisms.
///
/// The result is a valid representation by construction. Returns `None` when
/// the generated monoid would exceed `max_actor` elements.
pub fn random_representation<R: Rng>(rng: &mut R, max_space: usize, max_actor: usize) -> Option<Representation> {
    let n = rng.gen_range(1..=max_space);
    let ops: Vec<(String, usize)> = (0..rng.gen_range(0..=2))
        .map(|i| (format!("w{i}"), rng.gen_range(0..=2)))
        .collect();
    let domain = OperatorDomain::new(ops).expect("distinct symbols");
    // Sparse tables keep more endomorphisms around: mostly projections.
    let tables = (0..domain.len())
        .map(|op| {
            let k = domain.arity(op);
            let len = n.pow(k as u32);
            let proj = if k > 0 { Some(rng.gen_range(0..k)) } else { None };
            let mut args = vec![0; k];
            (0..len)
                .map(|idx| {
                    omega_core::algebra::decode_tuple(n, idx, &mut args);
                    match proj {
                        Some(p) if rng.gen_bool(0.7) => args[p],
                        _ => rng.gen_range(0..n),
                    }
                })
                .collect()
        })
        .collect();
    let space = FiniteAlgebra::new(domain, n, tables).expect("in range");
    let endos = MapSearch::homomorphisms(&space, &space).ok()?.budget(1_000_000).all().ok()?;
    let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=3))
        .map(|_| endos[rng.gen_range(0..endos.len())].clone())
        .collect();
    let mut monoid: BTreeSet<Vec<usize>> = gens.iter().cloned().collect();
    loop {
        let cur: Vec<Vec<usize>> = monoid.iter().cloned().collect();
        let before = monoid.len();
        for f in &cur {
            for g in &cur {
                monoid.insert((0..n).map(|x| f[g[x]]).collect());
            }
        }
        if monoid.len() > max_actor {
            return None;
        }
        if monoid.len() == before {
            break;
        }
    }
    let elems: Vec<Vec<usize>> = monoid.into_iter().collect();
    let pos = |m: &Vec<usize>| elems.binary_search(m).expect("closed");
    let actor = FiniteAlgebra::from_fn(OperatorDomain::new([("*", 2)]).expect("valid"), elems.len(), |_, a| {
        let (f, g) = (&elems[a[0]], &elems[a[1]]);
        pos(&(0..n).map(|x| f[g[x]]).collect())
    })
    .expect("closed");
    let rep = Representation::new(actor, space, elems.clone(), vec![EndCombiner::Composition], Side::Left).ok()?;
    assert!(rep.is_valid(), "monoid of endomorphisms acts validly");
    Some(rep)
}

/// An algebra seen as a representation of the one-element actor.
pub fn bare(a: &FiniteAlgebra) -> Representation {
    Representation::new(
        FiniteAlgebra::set(1).expect("valid"),
        a.clone(),
        vec![(0..a.size()).collect()],
        Vec::new(),
        Side::Left,
    )
    .expect("identity action")
}

type MagmaRule = fn(usize, usize, usize) -> usize;

/// Every magma of size one and two, then named and seeded random magmas of
/// sizes three and four.
pub fn magma_catalog(seed: u64) -> Vec<(String, FiniteAlgebra)> {
    use rand::SeedableRng;
    let domain = OperatorDomain::new([("*", 2)]).expect("valid");
    let mut out = Vec::new();
    for n in 1..=2 {
        for (i, m) in all_magmas(n).into_iter().enumerate() {
            out.push((format!("M{n}.{i}"), m));
        }
    }
    for n in 3..=4 {
        let named: [(&str, MagmaRule); 6] = [
            ("cyclic", |n, a, b| (a + b) % n),
            ("max", |_, a, b| a.max(b)),
            ("min", |_, a, b| a.min(b)),
            ("left-zero", |_, a, _| a),
            ("right-zero", |_, _, b| b),
            ("constant", |_, _, _| 0),
        ];
        for (name, f) in named {
            let m = FiniteAlgebra::from_fn(domain.clone(), n, |_, a| f(n, a[0], a[1])).expect("valid");
            out.push((format!("{name}{n}"), m));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(n as u64));
        for i in 0..8 {
            out.push((format!("random{n}.{i}"), random_algebra(&mut rng, &domain, n)));
        }
    }
    out.push((
        "klein4".into(),
        FiniteAlgebra::from_fn(domain, 4, |_, a| a[0] ^ a[1]).expect("valid"),
    ));
    out
}
