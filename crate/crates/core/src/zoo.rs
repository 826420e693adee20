//! Builders for the standard worked examples and exhaustive checks of the
//! laws each one is expected to satisfy.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::algebra::{
    decode_mixed, encode_mixed, product, ElementMap, FiniteAlgebra, OperatorDomain,
};
use crate::diagram::{is_commutative, validate_diagram, Diagram, Edge};
use crate::error::{Error, Result};
use crate::representation::{EndCombiner, Representation, Side};
use crate::structures::{
    distributes_over, group_data, is_associative, is_commutative as op_commutative,
};
use crate::tensor::integer_action;

pub const MAX_MODULUS: usize = 12;
pub const MAX_DIMENSION: usize = 3;
pub const PRIMES: [usize; 3] = [2, 3, 5];

fn check_modulus(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Construction("modulus must be positive".into()));
    }
    if n > MAX_MODULUS {
        return Err(Error::Budget(format!("modulus {n} exceeds {MAX_MODULUS}")));
    }
    Ok(())
}

fn check_prime(p: usize) -> Result<()> {
    if !PRIMES.contains(&p) {
        return Err(Error::Budget(format!("prime {p} outside {PRIMES:?}")));
    }
    Ok(())
}

fn check_dimension(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIMENSION {
        return Err(Error::Budget(format!("dimension {dim} outside 1..={MAX_DIMENSION}")));
    }
    Ok(())
}

/// `Z_n` under `+`.
pub fn cyclic_group(n: usize) -> Result<FiniteAlgebra> {
    FiniteAlgebra::from_fn(OperatorDomain::new([("+", 2)])?, n, |_, a| (a[0] + a[1]) % n)
}

/// `Z_n` written multiplicatively: element `k` stands for `a^k`.
pub fn cyclic_group_mul(n: usize) -> Result<FiniteAlgebra> {
    FiniteAlgebra::from_fn(OperatorDomain::new([("*", 2)])?, n, |_, a| (a[0] + a[1]) % n)
}

/// `C_n` in the full group signature `*`, `inv`, `e`; element `k` is `a^k`.
pub fn cyclic_group_full(n: usize) -> Result<FiniteAlgebra> {
    let domain = OperatorDomain::new([("*", 2), ("inv", 1), ("e", 0)])?;
    FiniteAlgebra::from_fn(domain, n, |op, a| match op {
        0 => (a[0] + a[1]) % n,
        1 => (n - a[0]) % n,
        _ => 0,
    })
}

/// The ring `Z_n` with `+` and `*`.
pub fn zn_ring(n: usize) -> Result<FiniteAlgebra> {
    FiniteAlgebra::from_fn(OperatorDomain::new([("+", 2), ("*", 2)])?, n, |op, a| {
        if op == 0 {
            (a[0] + a[1]) % n
        } else {
            (a[0] * a[1]) % n
        }
    })
}

/// `Z_p^dim` under `+`, first coordinate most significant.
pub fn vector_group(p: usize, dim: usize) -> Result<FiniteAlgebra> {
    let radices = vec![p; dim];
    let size = p.pow(dim as u32);
    FiniteAlgebra::from_fn(OperatorDomain::new([("+", 2)])?, size, |_, a| {
        let (x, y) = (decode_mixed(&radices, a[0]), decode_mixed(&radices, a[1]));
        let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
        encode_mixed(&radices, &s)
    })
}

/// The group of permutations generated by `gens`, elements sorted
/// lexicographically, with `(p * q)(i) = p(q(i))`.
pub fn permutation_group(degree: usize, gens: &[Vec<usize>]) -> Result<FiniteAlgebra> {
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: BTreeSet<Vec<usize>> = [identity.clone()].into_iter().collect();
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            if g.len() != degree {
                return Err(Error::Construction("generator of the wrong degree".into()));
            }
            let q: Vec<usize> = (0..degree).map(|i| p[g[i]]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let elems: Vec<Vec<usize>> = seen.into_iter().collect();
    let index = |p: &Vec<usize>| elems.binary_search(p).expect("closed set");
    FiniteAlgebra::from_fn(OperatorDomain::new([("*", 2)])?, elems.len(), |_, a| {
        let (p, q) = (&elems[a[0]], &elems[a[1]]);
        index(&(0..degree).map(|i| p[q[i]]).collect())
    })
}

pub fn symmetric_group_s3() -> Result<FiniteAlgebra> {
    permutation_group(3, &[vec![1, 0, 2], vec![1, 2, 0]])
}

pub fn dihedral_group_d4() -> Result<FiniteAlgebra> {
    permutation_group(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])
}

/// `±1, ±i, ±j, ±k`; element `2u + s` is `(-1)^s` times unit `u`.
pub fn quaternion_group() -> Result<FiniteAlgebra> {
    FiniteAlgebra::from_fn(OperatorDomain::new([("*", 2)])?, 8, |_, a| {
        let (u, s) = (a[0] / 2, a[0] % 2);
        let (v, t) = (a[1] / 2, a[1] % 2);
        let (w, sign) = unit_product(u, v);
        2 * w + (s + t + sign) % 2
    })
}

/// Product of basis units `1, i, j, k`: the unit and a sign bit.
fn unit_product(u: usize, v: usize) -> (usize, usize) {
    const TABLE: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    TABLE[u][v]
}

fn rename(a: &FiniteAlgebra, symbol: &str) -> Result<FiniteAlgebra> {
    FiniteAlgebra::new(OperatorDomain::new([(symbol, 2)])?, a.size(), a.tables().to_vec())
}

fn group_product(factors: &[FiniteAlgebra]) -> Result<FiniteAlgebra> {
    Ok(product(factors)?.0)
}

/// Every group of order at most `max_order` (at most 8) up to isomorphism,
/// written with `*`.
pub fn small_groups(max_order: usize) -> Result<Vec<(String, FiniteAlgebra)>> {
    if max_order > 8 {
        return Err(Error::Budget("groups are listed up to order 8".into()));
    }
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push((format!("C{n}"), cyclic_group_mul(n)?));
        match n {
            4 => out.push(("C2xC2".into(), group_product(&[cyclic_group_mul(2)?, cyclic_group_mul(2)?])?)),
            6 => out.push(("S3".into(), symmetric_group_s3()?)),
            8 => {
                out.push(("C4xC2".into(), group_product(&[cyclic_group_mul(4)?, cyclic_group_mul(2)?])?));
                out.push((
                    "C2xC2xC2".into(),
                    group_product(&[cyclic_group_mul(2)?, cyclic_group_mul(2)?, cyclic_group_mul(2)?])?,
                ));
                out.push(("D4".into(), dihedral_group_d4()?));
                out.push(("Q8".into(), quaternion_group()?));
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Every abelian group of order at most `max_order` (at most 8), written with `+`.
pub fn small_abelian_groups(max_order: usize) -> Result<Vec<(String, FiniteAlgebra)>> {
    small_groups(max_order)?
        .into_iter()
        .filter(|(_, g)| op_commutative(g, 0))
        .map(|(name, g)| Ok((name, rename(&g, "+")?)))
        .collect()
}

/// The integers acting on an abelian group through `Z_e`, `e` its exponent.
pub fn z_action(group: &FiniteAlgebra) -> Result<Representation> {
    let add = group.op("+")?;
    let zero = group_data(group, add)
        .ok_or_else(|| Error::Structure("not a group under +".into()))?
        .identity;
    let mut e = 1usize;
    for x in 0..group.size() {
        let (mut y, mut order) = (x, 1usize);
        while y != zero {
            y = group.binary(add, y, x);
            order += 1;
        }
        e = num_integer::lcm(e, order);
    }
    integer_action(group, "+", e as u64)
}

/// `Z_n` acting on `Z_n^dim` by scalar multiplication.
pub fn scalar_action(n: usize, dim: usize) -> Result<Representation> {
    integer_action(&vector_group(n, dim)?, "+", n as u64)
}

/// The module diagram `D -> V <- Z` for `D = Z_n`, `V = Z_n^dim`, the integers
/// acting through `Z_n`.
pub fn module(n: usize, dim: usize) -> Result<Diagram> {
    check_modulus(n)?;
    check_dimension(dim)?;
    if n.pow(dim as u32) > 1000 {
        return Err(Error::Budget("module carrier exceeds 1000 elements".into()));
    }
    let ring_action = scalar_action(n, dim)?;
    let int_action = integer_action(ring_action.space(), "+", n as u64)?;
    let d = Diagram::new(
        vec![
            ring_action.actor().clone(),
            ring_action.space().clone(),
            int_action.actor().clone(),
        ],
        vec![0, 1, 2],
        vec![
            Edge {
                from: 0,
                to: 1,
                representation: ring_action,
            },
            Edge {
                from: 2,
                to: 1,
                representation: int_action,
            },
        ],
    )?;
    validate_diagram(&d)?;
    Ok(d)
}

/// The ring of maps on `Z_n` generated by multiplication by elements of
/// `dZ_n` and by integer multiples of the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitalExtension {
    /// The generated maps, sorted.
    pub maps: Vec<ElementMap>,
    /// The maps as a ring under pointwise `+` and composition `*`.
    pub ring: FiniteAlgebra,
    /// Positions in `maps` of the images of `D`.
    pub image_of_d: Vec<usize>,
}

pub fn unital_extension(n: usize, d: usize) -> Result<UnitalExtension> {
    check_modulus(n)?;
    let rng: BTreeSet<usize> = (0..n).map(|k| (k * d) % n).collect();
    let mul = |c: usize| ElementMap::new(n, (0..n).map(|x| (c * x) % n).collect());
    let mut seeds: Vec<ElementMap> = rng.iter().map(|&c| mul(c)).collect::<Result<_>>()?;
    seeds.extend((0..n).map(&mul).collect::<Result<Vec<_>>>()?);
    let plus = |f: &ElementMap, g: &ElementMap| {
        ElementMap::new(n, (0..n).map(|x| (f.apply(x) + g.apply(x)) % n).collect())
    };
    let mut maps: BTreeSet<ElementMap> = seeds.iter().cloned().collect();
    loop {
        let current: Vec<ElementMap> = maps.iter().cloned().collect();
        let before = maps.len();
        for f in &current {
            for g in &current {
                maps.insert(plus(f, g)?);
                maps.insert(g.then(f)?);
            }
        }
        if maps.len() == before {
            break;
        }
    }
    let maps: Vec<ElementMap> = maps.into_iter().collect();
    let pos = |m: &ElementMap| maps.binary_search(m).expect("closed");
    let mut tables = vec![Vec::new(), Vec::new()];
    for f in &maps {
        for g in &maps {
            tables[0].push(pos(&plus(f, g)?));
            tables[1].push(pos(&g.then(f)?));
        }
    }
    let ring = FiniteAlgebra::new(OperatorDomain::new([("+", 2), ("*", 2)])?, maps.len(), tables)?;
    let image_of_d = rng.iter().map(|&c| Ok(pos(&mul(c)?))).collect::<Result<Vec<_>>>()?;
    Ok(UnitalExtension {
        maps,
        ring,
        image_of_d,
    })
}

/// Quaternions over `Z_p`: element `c0 p³ + c1 p² + c2 p + c3` is
/// `c0 e0 + c1 e1 + c2 e2 + c3 e3`, with `e1 e2 = e3` and `e1 e1 = -e0`.
pub fn quaternion(p: usize) -> Result<FiniteAlgebra> {
    check_prime(p)?;
    let radices = [p; 4];
    FiniteAlgebra::from_fn(OperatorDomain::new([("+", 2), ("*", 2)])?, p.pow(4), |op, a| {
        let (x, y) = (decode_mixed(&radices, a[0]), decode_mixed(&radices, a[1]));
        let mut z = [0usize; 4];
        if op == 0 {
            for i in 0..4 {
                z[i] = (x[i] + y[i]) % p;
            }
        } else {
            for u in 0..4 {
                for v in 0..4 {
                    let (w, sign) = unit_product(u, v);
                    let c = x[u] * y[v] % p;
                    z[w] = if sign == 0 { (z[w] + c) % p } else { (z[w] + p - c) % p };
                }
            }
        }
        encode_mixed(&radices, &z)
    })
}

/// Basis vector `e_i` of [`quaternion`].
pub fn quaternion_unit(p: usize, i: usize) -> usize {
    p.pow(3 - i as u32)
}

/// Cross product on `Z_p^3` under the symbol `br`, with `+`.
pub fn cross_algebra(p: usize) -> Result<FiniteAlgebra> {
    check_prime(p)?;
    let radices = [p; 3];
    FiniteAlgebra::from_fn(OperatorDomain::new([("+", 2), ("br", 2)])?, p.pow(3), |op, a| {
        let (x, y) = (decode_mixed(&radices, a[0]), decode_mixed(&radices, a[1]));
        let z: Vec<usize> = if op == 0 {
            (0..3).map(|i| (x[i] + y[i]) % p).collect()
        } else {
            (0..3)
                .map(|i| {
                    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                    (x[j] * y[k] % p + p - x[k] * y[j] % p) % p
                })
                .collect()
        };
        encode_mixed(&radices, &z)
    })
}

/// Multiplication by an algebra element on one side, acting on the additive group.
fn shift_action(a: &FiniteAlgebra, mul: &str, side: Side) -> Result<Vec<Vec<usize>>> {
    let m = a.op(mul)?;
    Ok((0..a.size())
        .map(|b| {
            (0..a.size())
                .map(|x| match side {
                    Side::Left => a.binary(m, b, x),
                    Side::Right => a.binary(m, x, b),
                })
                .collect()
        })
        .collect())
}

/// The algebra diagram over `Z_p` for quaternions:
/// `D -> A`, `A -> A` by left shifts, `D -> A`, with both `A` vertices
/// sharing one additive group.
pub fn d_algebra(p: usize) -> Result<Diagram> {
    check_prime(p)?;
    if p > 3 {
        return Err(Error::Budget("quaternion diagrams are limited to p <= 3".into()));
    }
    let q = quaternion(p)?;
    let a = q.restrict(&["+"])?;
    let scalars = integer_action(&a, "+", p as u64)?;
    let shift = Representation::new(
        a.clone(),
        a.clone(),
        shift_action(&q, "*", Side::Left)?,
        vec![EndCombiner::Pointwise("+".into())],
        Side::Left,
    )?;
    let d = Diagram::new(
        vec![scalars.actor().clone(), a],
        vec![0, 1, 1],
        vec![
            Edge {
                from: 0,
                to: 1,
                representation: scalars.clone(),
            },
            Edge {
                from: 1,
                to: 2,
                representation: shift,
            },
            Edge {
                from: 0,
                to: 2,
                representation: scalars,
            },
        ],
    )?;
    validate_diagram(&d)?;
    Ok(d)
}

/// A module diagram over an algebra, and whether it had to use the bilinear
/// reading of the action because the algebra is not associative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDiagram {
    pub diagram: Diagram,
    pub nonstandard: bool,
}

/// `A` acting on itself on `side`, over the scalars `Z_p`.
///
/// For an associative `A` the action keeps the product: vertices are `D`,
/// `A(+)`, `A(+, *)`, `V`, with edges `D -> A(+)`, `A(+, *) -> A(+)` (shifts),
/// `A(+, *) -> V` and `D -> V`. Otherwise the product edge and the action are
/// both typed as additive maps: vertices `D`, `A(+)`, `A(+)`, `V` with the two
/// middle vertices sharing one algebra.
pub fn algebra_module(algebra: &FiniteAlgebra, mul: &str, p: usize, side: Side) -> Result<ModuleDiagram> {
    let a = algebra.restrict(&["+"])?;
    let v = a.clone();
    let scalars_a = integer_action(&a, "+", p as u64)?;
    let scalars_v = integer_action(&v, "+", p as u64)?;
    let d_ring = scalars_a.actor().clone();
    let shifts = shift_action(algebra, mul, side)?;
    let full = algebra.restrict(&["+", mul])?;
    let combiners = vec![EndCombiner::Pointwise("+".into()), EndCombiner::Composition];
    let product_edge = Representation::new(full.clone(), a.clone(), shifts.clone(), combiners.clone(), side)?;
    let action = Representation::new(full.clone(), v.clone(), shifts.clone(), combiners, side)?;
    let (diagram, nonstandard) = if product_edge.is_valid() && action.is_valid() {
        let d = Diagram::new(
            vec![d_ring, a, full, v],
            vec![0, 1, 2, 3],
            vec![
                Edge { from: 0, to: 1, representation: scalars_a },
                Edge { from: 2, to: 1, representation: product_edge },
                Edge { from: 2, to: 3, representation: action },
                Edge { from: 0, to: 3, representation: scalars_v },
            ],
        )?;
        (d, false)
    } else {
        let additive = vec![EndCombiner::Pointwise("+".into())];
        let product_edge = Representation::new(a.clone(), a.clone(), shifts.clone(), additive.clone(), side)?;
        let action = Representation::new(a.clone(), v.clone(), shifts, additive, side)?;
        let d = Diagram::new(
            vec![d_ring, a, v],
            vec![0, 1, 1, 2],
            vec![
                Edge { from: 0, to: 1, representation: scalars_a },
                Edge { from: 1, to: 2, representation: product_edge },
                Edge { from: 2, to: 3, representation: action },
                Edge { from: 0, to: 3, representation: scalars_v },
            ],
        )?;
        (d, true)
    };
    validate_diagram(&diagram)?;
    Ok(ModuleDiagram {
        diagram,
        nonstandard,
    })
}

pub fn left_module(algebra: &FiniteAlgebra, mul: &str, p: usize) -> Result<ModuleDiagram> {
    algebra_module(algebra, mul, p, Side::Left)
}

pub fn right_module(algebra: &FiniteAlgebra, mul: &str, p: usize) -> Result<ModuleDiagram> {
    algebra_module(algebra, mul, p, Side::Right)
}

/// `Z_p^3` with the cross product `br` acting on `Z_p^3` by left shifts, the
/// bracket combined by commutators.
pub fn lie_cross(p: usize) -> Result<Representation> {
    let actor = cross_algebra(p)?;
    let space = actor.restrict(&["+"])?;
    let rep = Representation::new(
        actor.clone(),
        space,
        shift_action(&actor, "br", Side::Left)?,
        vec![EndCombiner::Pointwise("+".into()), EndCombiner::Commutator("+".into())],
        Side::Left,
    )?;
    rep.require_valid()?;
    Ok(rep)
}

/// `Z_n` acting by translation on `copies` disjoint copies of itself;
/// point `c n + i` is point `i` of copy `c`.
pub fn group_on_set(n: usize, copies: usize) -> Result<Representation> {
    check_modulus(n)?;
    if copies == 0 || copies > MAX_MODULUS {
        return Err(Error::Budget(format!("copies must lie in 1..={MAX_MODULUS}")));
    }
    let action = (0..n)
        .map(|a| {
            (0..n * copies)
                .map(|x| (x / n) * n + (x % n + a) % n)
                .collect()
        })
        .collect();
    let rep = Representation::new(
        cyclic_group(n)?,
        FiniteAlgebra::set(n * copies)?,
        action,
        vec![EndCombiner::Composition],
        Side::Right,
    )?;
    rep.require_valid()?;
    Ok(rep)
}

/// Affine space `D -> V -> V̊` over `D = Z_p`, `V = Z_p^dim`; the points are
/// a bare set of the same size, translated by `A + v`.
pub fn affine_space(p: usize, dim: usize) -> Result<Diagram> {
    check_prime(p)?;
    check_dimension(dim)?;
    let scalars = scalar_action(p, dim)?;
    let v = scalars.space().clone();
    let add = v.op("+")?;
    let points = FiniteAlgebra::set(v.size())?;
    let translate = Representation::new(
        v.clone(),
        points.clone(),
        (0..v.size())
            .map(|a| (0..v.size()).map(|x| v.binary(add, x, a)).collect())
            .collect(),
        vec![EndCombiner::Composition],
        Side::Right,
    )?;
    let d = Diagram::new(
        vec![scalars.actor().clone(), v, points],
        vec![0, 1, 2],
        vec![
            Edge { from: 0, to: 1, representation: scalars },
            Edge { from: 1, to: 2, representation: translate },
        ],
    )?;
    validate_diagram(&d)?;
    Ok(d)
}

/// A built example.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZooObject {
    Algebra(FiniteAlgebra),
    Representation(Representation),
    Diagram(Diagram),
    Extension(UnitalExtension),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZooKind {
    /// `Z_n^dim` with the integer action.
    ZAction { n: usize, dim: usize },
    Module { n: usize, dim: usize },
    UnitalExtension { n: usize, d: usize },
    DAlgebra { p: usize },
    LeftModule { p: usize, cross: bool },
    RightModule { p: usize, cross: bool },
    Quaternion { p: usize },
    LieCross { p: usize },
    GroupOnSet { n: usize, copies: usize },
    AffineSpace { p: usize, dim: usize },
}

impl ZooKind {
    pub const NAMES: [&'static str; 10] = [
        "z_action",
        "module",
        "unital_extension",
        "d_algebra",
        "left_module",
        "right_module",
        "quaternion",
        "lie_cross",
        "group_on_set",
        "affine_space",
    ];

    /// Parses a kind name and its integer parameters; missing parameters take
    /// their defaults.
    pub fn parse(name: &str, params: &[usize]) -> Result<Self> {
        let get = |i: usize, default: usize| params.get(i).copied().unwrap_or(default);
        let kind = match name {
            "z_action" => ZooKind::ZAction { n: get(0, 4), dim: get(1, 1) },
            "module" => ZooKind::Module { n: get(0, 6), dim: get(1, 1) },
            "unital_extension" => ZooKind::UnitalExtension { n: get(0, 4), d: get(1, 2) },
            "d_algebra" => ZooKind::DAlgebra { p: get(0, 3) },
            "left_module" => ZooKind::LeftModule { p: get(0, 3), cross: get(1, 0) != 0 },
            "right_module" => ZooKind::RightModule { p: get(0, 3), cross: get(1, 0) != 0 },
            "quaternion" => ZooKind::Quaternion { p: get(0, 3) },
            "lie_cross" => ZooKind::LieCross { p: get(0, 3) },
            "group_on_set" => ZooKind::GroupOnSet { n: get(0, 4), copies: get(1, 1) },
            "affine_space" => ZooKind::AffineSpace { p: get(0, 5), dim: get(1, 1) },
            other => {
                return Err(Error::Construction(format!(
                    "unknown kind {other}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        let limit = match kind {
            ZooKind::LeftModule { .. } | ZooKind::RightModule { .. } => 2,
            ZooKind::Quaternion { .. }
            | ZooKind::LieCross { .. }
            | ZooKind::DAlgebra { .. } => 1,
            _ => 2,
        };
        if params.len() > limit {
            return Err(Error::Construction(format!("{name} takes at most {limit} parameters")));
        }
        Ok(kind)
    }
}

impl fmt::Display for ZooKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ZooKind::ZAction { n, dim } => write!(f, "z_action {n} {dim}"),
            ZooKind::Module { n, dim } => write!(f, "module {n} {dim}"),
            ZooKind::UnitalExtension { n, d } => write!(f, "unital_extension {n} {d}"),
            ZooKind::DAlgebra { p } => write!(f, "d_algebra {p}"),
            ZooKind::LeftModule { p, cross } => write!(f, "left_module {p} {}", cross as u8),
            ZooKind::RightModule { p, cross } => write!(f, "right_module {p} {}", cross as u8),
            ZooKind::Quaternion { p } => write!(f, "quaternion {p}"),
            ZooKind::LieCross { p } => write!(f, "lie_cross {p}"),
            ZooKind::GroupOnSet { n, copies } => write!(f, "group_on_set {n} {copies}"),
            ZooKind::AffineSpace { p, dim } => write!(f, "affine_space {p} {dim}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZooItem {
    pub kind: ZooKind,
    pub object: ZooObject,
    /// Facts about the construction worth reporting, such as reductions.
    pub notes: Vec<String>,
}

pub fn build(kind: ZooKind) -> Result<ZooItem> {
    let mut notes = Vec::new();
    let object = match kind {
        ZooKind::ZAction { n, dim } => {
            check_modulus(n)?;
            check_dimension(dim)?;
            let rep = z_action(&vector_group(n, dim)?)?;
            notes.push(format!(
                "integers act through Z_{} (the group exponent)",
                rep.actor().size()
            ));
            ZooObject::Representation(rep)
        }
        ZooKind::Module { n, dim } => ZooObject::Diagram(module(n, dim)?),
        ZooKind::UnitalExtension { n, d } => {
            let ext = unital_extension(n, d)?;
            notes.push(format!("{} maps generated", ext.maps.len()));
            ZooObject::Extension(ext)
        }
        ZooKind::DAlgebra { p } => ZooObject::Diagram(d_algebra(p)?),
        ZooKind::LeftModule { p, cross } | ZooKind::RightModule { p, cross } => {
            check_prime(p)?;
            if p > 3 {
                return Err(Error::Budget("algebra modules are limited to p <= 3".into()));
            }
            let (algebra, mul) = if cross {
                (cross_algebra(p)?, "br")
            } else {
                (quaternion(p)?, "*")
            };
            let m = if matches!(kind, ZooKind::LeftModule { .. }) {
                left_module(&algebra, mul, p)?
            } else {
                right_module(&algebra, mul, p)?
            };
            if m.nonstandard {
                notes.push("nonstandard: algebra is not associative, action typed as a bilinear map".into());
            }
            ZooObject::Diagram(m.diagram)
        }
        ZooKind::Quaternion { p } => ZooObject::Algebra(quaternion(p)?),
        ZooKind::LieCross { p } => ZooObject::Representation(lie_cross(p)?),
        ZooKind::GroupOnSet { n, copies } => ZooObject::Representation(group_on_set(n, copies)?),
        ZooKind::AffineSpace { p, dim } => ZooObject::Diagram(affine_space(p, dim)?),
    };
    Ok(ZooItem {
        kind,
        object,
        notes,
    })
}

/// Outcome of one law over an exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub law: String,
    pub cases: usize,
    /// Description of the first failing case.
    pub failure: Option<String>,
}

impl fmt::Display for LawCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None if self.cases == 1 => write!(f, "{}: ok (1 case)", self.law),
            None => write!(f, "{}: ok ({} cases)", self.law, self.cases),
            Some(w) => write!(f, "{}: FAILED at {w}", self.law),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub kind: ZooKind,
    pub checks: Vec<LawCheck>,
    pub notes: Vec<String>,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn check(&self, law: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }
}

/// Accumulates cases for one law, keeping the first failure.
struct Law {
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl Law {
    fn new(name: &str) -> Self {
        Law {
            name: name.to_string(),
            cases: 0,
            failure: None,
        }
    }

    fn case(&mut self, holds: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !holds && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn done(self) -> LawCheck {
        LawCheck {
            law: self.name,
            cases: self.cases,
            failure: self.failure,
        }
    }
}

fn flag(name: &str, holds: bool, witness: &str) -> LawCheck {
    let mut law = Law::new(name);
    law.case(holds, || witness.to_string());
    law.done()
}

pub fn check_laws(item: &ZooItem) -> Result<LawReport> {
    let checks = match (&item.kind, &item.object) {
        (ZooKind::ZAction { .. }, ZooObject::Representation(rep)) => integer_action_laws(rep)?,
        (ZooKind::Module { .. }, ZooObject::Diagram(d)) => module_laws(d)?,
        (ZooKind::UnitalExtension { .. }, ZooObject::Extension(ext)) => extension_laws(ext)?,
        (ZooKind::Quaternion { p }, ZooObject::Algebra(q)) => quaternion_laws(q, *p)?,
        (ZooKind::DAlgebra { .. }, ZooObject::Diagram(d)) => {
            let mut checks = diagram_laws(d)?;
            checks.push(bilinearity(d.edges()[1].representation.actor(), &d.edges()[1].representation)?);
            checks
        }
        (ZooKind::LeftModule { .. } | ZooKind::RightModule { .. }, ZooObject::Diagram(d)) => {
            let nonstandard = item.notes.iter().any(|n| n.starts_with("nonstandard"));
            let mut checks = diagram_laws(d)?;
            let action = &d.edges()[2].representation;
            if nonstandard {
                checks.push(bilinearity(action.actor(), action)?);
            } else {
                checks.push(flag(
                    "action respects the product",
                    action.is_valid(),
                    "algebra is not associative",
                ));
            }
            checks
        }
        (ZooKind::LieCross { .. }, ZooObject::Representation(rep)) => lie_laws(rep)?,
        (ZooKind::GroupOnSet { .. }, ZooObject::Representation(rep)) => group_on_set_laws(rep)?,
        (ZooKind::AffineSpace { .. }, ZooObject::Diagram(d)) => affine_laws(d)?,
        _ => return Err(Error::Precondition("object was not built by its kind".into())),
    };
    Ok(LawReport {
        kind: item.kind,
        checks,
        notes: item.notes.clone(),
    })
}

fn diagram_laws(d: &Diagram) -> Result<Vec<LawCheck>> {
    let failure = is_commutative(d)?;
    Ok(vec![LawCheck {
        law: "commutativity of representations".into(),
        cases: 1,
        failure: failure.map(|f| f.to_string()),
    }])
}

/// Integer action laws for `Z_e` acting on a group.
fn integer_action_laws(rep: &Representation) -> Result<Vec<LawCheck>> {
    let z = rep.actor();
    let g = rep.space();
    let (zp, zm) = (z.op("+")?, z.op("*")?);
    let gp = g.op("+")?;
    let ginv = group_data(g, gp).ok_or_else(|| Error::Structure("space is not a group".into()))?.inverse;
    let zneg = group_data(z, zp).ok_or_else(|| Error::Structure("actor is not a group".into()))?.inverse;
    let e = z.size();
    let mut unit = Law::new("1a = a");
    let mut assoc = Law::new("(nm)a = n(ma)");
    let mut add = Law::new("(m+n)a = ma + na");
    let mut sub = Law::new("(m-n)a = ma - na");
    let mut dist = Law::new("n(a+b) = na + nb");
    for a in 0..g.size() {
        unit.case(e == 1 || rep.act(1, a) == a, || format!("a = {a}"));
        for n in 0..e {
            for m in 0..e {
                let w = || format!("n = {n}, m = {m}, a = {a}");
                assoc.case(rep.act(z.binary(zm, n, m), a) == rep.act(n, rep.act(m, a)), w);
                add.case(
                    rep.act(z.binary(zp, m, n), a) == g.binary(gp, rep.act(m, a), rep.act(n, a)),
                    w,
                );
                sub.case(
                    rep.act(z.binary(zp, m, zneg[n]), a) == g.binary(gp, rep.act(m, a), ginv[rep.act(n, a)]),
                    w,
                );
            }
            for b in 0..g.size() {
                dist.case(
                    rep.act(n, g.binary(gp, a, b)) == g.binary(gp, rep.act(n, a), rep.act(n, b)),
                    || format!("n = {n}, a = {a}, b = {b}"),
                );
            }
        }
    }
    Ok(vec![unit.done(), assoc.done(), add.done(), sub.done(), dist.done()])
}

/// Module laws for the ring edge (edge 0) of a module diagram.
fn module_laws(d: &Diagram) -> Result<Vec<LawCheck>> {
    let rep = &d.edges()[0].representation;
    let r = rep.actor();
    let v = rep.space();
    let (rp, rm) = (r.op("+")?, r.op("*")?);
    let vp = v.op("+")?;
    let one = (0..r.size()).find(|&u| (0..r.size()).all(|x| r.binary(rm, u, x) == x));
    let mut assoc = Law::new("associative law (pq)v = p(qv)");
    let mut dist_v = Law::new("distributive law p(v + w) = pv + pw");
    let mut dist_p = Law::new("distributive law (p + q)v = pv + qv");
    let mut unit = Law::new("unitarity law 1v = v");
    for x in 0..v.size() {
        unit.case(one.is_some_and(|u| rep.act(u, x) == x), || format!("v = {x}"));
        for p in 0..r.size() {
            for q in 0..r.size() {
                let w = || format!("p = {p}, q = {q}, v = {x}");
                assoc.case(rep.act(r.binary(rm, p, q), x) == rep.act(p, rep.act(q, x)), w);
                dist_p.case(
                    rep.act(r.binary(rp, p, q), x) == v.binary(vp, rep.act(p, x), rep.act(q, x)),
                    w,
                );
            }
            for y in 0..v.size() {
                dist_v.case(
                    rep.act(p, v.binary(vp, x, y)) == v.binary(vp, rep.act(p, x), rep.act(p, y)),
                    || format!("p = {p}, v = {x}, w = {y}"),
                );
            }
        }
    }
    let mut checks = vec![assoc.done(), dist_v.done(), dist_p.done(), unit.done()];
    checks.extend(diagram_laws(d)?);
    Ok(checks)
}

fn extension_laws(ext: &UnitalExtension) -> Result<Vec<LawCheck>> {
    let r = &ext.ring;
    let (rp, rm) = (r.op("+")?, r.op("*")?);
    let n = ext.maps.first().map(ElementMap::source_size).unwrap_or(0);
    let identity = ElementMap::identity(n);
    let mut ideal = Law::new("image of D is an ideal");
    for &a in &ext.image_of_d {
        for x in 0..r.size() {
            let (left, right) = (r.binary(rm, x, a), r.binary(rm, a, x));
            ideal.case(
                ext.image_of_d.contains(&left) && ext.image_of_d.contains(&right),
                || format!("D element at {a}, map {x}"),
            );
        }
    }
    Ok(vec![
        flag("associative law", is_associative(r, rm), "product is not associative"),
        flag("distributive law", distributes_over(r, rm, rp), "product does not distribute"),
        flag("unitarity law", ext.maps.contains(&identity), "identity missing"),
        ideal.done(),
    ])
}

fn quaternion_laws(q: &FiniteAlgebra, p: usize) -> Result<Vec<LawCheck>> {
    let m = q.op("*")?;
    let a = q.op("+")?;
    let e = |i| quaternion_unit(p, i);
    let minus_e0 = (p - 1) * e(0);
    Ok(vec![
        flag("e1 e2 = e3", q.binary(m, e(1), e(2)) == e(3), "product differs"),
        flag("e1 e1 = -e0", q.binary(m, e(1), e(1)) == minus_e0, "product differs"),
        flag("e0 is a unit", (0..q.size()).all(|x| q.binary(m, e(0), x) == x && q.binary(m, x, e(0)) == x), "unit fails"),
        flag("associative law", is_associative(q, m), "product is not associative"),
        flag("distributive law", distributes_over(q, m, a), "product does not distribute"),
    ])
}

/// The shift edge is additive in the acting element.
fn bilinearity(actor: &FiniteAlgebra, rep: &Representation) -> Result<LawCheck> {
    let plus = actor.op("+")?;
    let s = rep.space().op("+")?;
    let mut law = Law::new("product is bilinear");
    for a in 0..actor.size() {
        for b in 0..actor.size() {
            let c = actor.binary(plus, a, b);
            for x in 0..rep.space().size() {
                law.case(
                    rep.act(c, x) == rep.space().binary(s, rep.act(a, x), rep.act(b, x)),
                    || format!("a = {a}, b = {b}, x = {x}"),
                );
            }
        }
    }
    Ok(law.done())
}

fn lie_laws(rep: &Representation) -> Result<Vec<LawCheck>> {
    let a = rep.actor();
    let br = a.op("br")?;
    let plus = a.op("+")?;
    let neg = group_data(a, plus).ok_or_else(|| Error::Structure("not a group".into()))?.inverse;
    let n = a.size();
    let mut shift = Law::new("[L(c), L(b)] a = L([c, b]) a");
    let mut anti = Law::new("[a, b] = -[b, a]");
    let mut jacobi = Law::new("Jacobi identity");
    for c in 0..n {
        for b in 0..n {
            anti.case(a.binary(br, c, b) == neg[a.binary(br, b, c)], || format!("a = {c}, b = {b}"));
            let cb = a.binary(br, c, b);
            let mut holds = true;
            for x in 0..n {
                let lhs = a.binary(plus, rep.act(c, rep.act(b, x)), neg[rep.act(b, rep.act(c, x))]);
                holds &= lhs == rep.act(cb, x);
                let j = a.binary(
                    plus,
                    a.binary(plus, a.binary(br, c, a.binary(br, b, x)), a.binary(br, b, a.binary(br, x, c))),
                    a.binary(br, x, a.binary(br, c, b)),
                );
                jacobi.case(j == 0, || format!("c = {c}, b = {b}, a = {x}"));
            }
            shift.case(holds, || format!("c = {c}, b = {b}"));
        }
    }
    Ok(vec![shift.done(), anti.done(), jacobi.done()])
}

/// The unique `v` with `A + v = B`, if there is one.
fn vector(rep: &Representation, from: usize, to: usize) -> Option<usize> {
    (0..rep.actor().size()).find(|&v| rep.act(v, from) == to)
}

fn group_on_set_laws(rep: &Representation) -> Result<Vec<LawCheck>> {
    let g = rep.actor();
    let plus = g.op("+")?;
    let props = rep.properties()?;
    let mut swap = Law::new("(A + a) + b = (A + b) + a");
    for x in 0..rep.space().size() {
        for a in 0..g.size() {
            for b in 0..g.size() {
                swap.case(
                    rep.act(b, rep.act(a, x)) == rep.act(a, rep.act(b, x)),
                    || format!("A = {x}, a = {a}, b = {b}"),
                );
            }
        }
    }
    let mut checks = vec![
        flag("action is effective", props.effective, "two vectors act alike"),
        swap.done(),
    ];
    if props.single_transitive {
        checks.push(triangle_law(rep, plus)?);
    }
    Ok(checks)
}

fn triangle_law(rep: &Representation, plus: usize) -> Result<LawCheck> {
    let g = rep.actor();
    let n = rep.space().size();
    let mut law = Law::new("triangle law AB + BC = AC");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let holds = match (vector(rep, a, b), vector(rep, b, c), vector(rep, a, c)) {
                    (Some(ab), Some(bc), Some(ac)) => g.binary(plus, ab, bc) == ac,
                    _ => false,
                };
                law.case(holds, || format!("A = {a}, B = {b}, C = {c}"));
            }
        }
    }
    Ok(law.done())
}

fn affine_laws(d: &Diagram) -> Result<Vec<LawCheck>> {
    let scalars = &d.edges()[0].representation;
    let translate = &d.edges()[1].representation;
    let v = translate.actor();
    let plus = v.op("+")?;
    let zero = group_data(v, plus).ok_or_else(|| Error::Structure("vectors do not form a group".into()))?;
    let n = translate.space().size();
    let props = translate.properties()?;
    let mut parallelogram = Law::new("parallelogram: AB = CD implies AC = BD");
    for a in 0..n {
        for b in 0..n {
            let ab = vector(translate, a, b);
            for c in 0..n {
                for dd in 0..n {
                    if ab.is_none() || ab != vector(translate, c, dd) {
                        continue;
                    }
                    let holds = vector(translate, a, c).is_some() && vector(translate, a, c) == vector(translate, b, dd);
                    parallelogram.case(holds, || format!("A = {a}, B = {b}, C = {c}, D = {dd}"));
                }
            }
        }
    }
    let mut zero_law = Law::new("AA is the zero vector");
    for a in 0..n {
        zero_law.case(vector(translate, a, a) == Some(zero.identity), || format!("A = {a}"));
    }
    let mut checks = vec![
        triangle_law(translate, plus)?,
        parallelogram.done(),
        zero_law.done(),
        flag(
            "vectors form an abelian group",
            op_commutative(v, plus) && is_associative(v, plus),
            "vector addition",
        ),
        flag("point representation is single transitive", props.single_transitive, "not single transitive"),
        flag("scalar representation is effective", scalars.properties()?.effective, "not effective"),
    ];
    checks.extend(diagram_laws(d)?);
    Ok(checks)
}
