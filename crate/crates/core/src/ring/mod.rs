//! Finite commutative unital rings given by explicit operation tables.
//!
//! Elements are dense indices `0..n` with `0` the additive zero. Every
//! constructor runs the full axiom suite (quantified over all element pairs
//! and triples) before handing out a ring, so downstream code may assume the
//! tables are lawful.

mod hom;
mod enumerate;
mod tensor;

pub use enumerate::{
    abelian_groups, enumerate_rings, enumerate_rings_of_order, reference_rings_of_order,
    ring_classes_of_order, AbelianGroup,
};
pub use hom::{automorphisms, brute_force_homs, first_isomorphism, homs, homs_seeded, isomorphisms};
pub use tensor::{
    fiber_product, is_ring_epi, ring_coequalizer, surjection_dual_is_regular_mono, tensor,
    verify_fiber_product_universal, verify_tensor_universal, TensorProduct,
};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

pub type Elem = usize;

/// A finite commutative unital ring with explicit addition and
/// multiplication tables. Index 0 is the additive zero.
#[derive(Clone)]
pub struct FinRing {
    add: Vec<Vec<Elem>>,
    mul: Vec<Vec<Elem>>,
    one: Elem,
    neg: Vec<Elem>,
    label: String,
}

impl PartialEq for FinRing {
    fn eq(&self, other: &Self) -> bool {
        self.one == other.one && self.add == other.add && self.mul == other.mul
    }
}
impl Eq for FinRing {}

impl std::hash::Hash for FinRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.add.hash(state);
        self.mul.hash(state);
        self.one.hash(state);
    }
}

impl fmt::Debug for FinRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinRing({}, order {})", self.label, self.order())
    }
}

fn check_tables(add: &[Vec<Elem>], mul: &[Vec<Elem>], one: Elem) -> Result<Vec<Elem>> {
    let n = add.len();
    if n == 0 {
        return Err(Error::NotARing("empty carrier".into()));
    }
    if mul.len() != n || one >= n {
        return Err(Error::NotARing("table sizes and unit index must match the carrier".into()));
    }
    for (name, t) in [("add", add), ("mul", mul)] {
        for (i, row) in t.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotARing(format!("{name} row {i} has wrong length")));
            }
            if let Some(j) = row.iter().position(|&x| x >= n) {
                return Err(Error::NotARing(format!(
                    "{name}[{i}][{j}] = {} out of range",
                    row[j]
                )));
            }
        }
    }
    if one == 0 && n > 1 {
        return Err(Error::NotARing("zero = one in a ring with more than one element".into()));
    }
    for x in 0..n {
        if add[0][x] != x {
            return Err(Error::NotARing(format!("0 + {x} != {x}")));
        }
        if mul[one][x] != x {
            return Err(Error::NotARing(format!("1 * {x} != {x}")));
        }
    }
    let mut neg = vec![0; n];
    for x in 0..n {
        match (0..n).find(|&y| add[x][y] == 0) {
            Some(y) => neg[x] = y,
            None => return Err(Error::NotARing(format!("{x} has no additive inverse"))),
        }
    }
    for x in 0..n {
        for y in 0..n {
            if add[x][y] != add[y][x] {
                return Err(Error::NotARing(format!("addition not commutative at ({x},{y})")));
            }
            if mul[x][y] != mul[y][x] {
                return Err(Error::NotARing(format!(
                    "multiplication not commutative at ({x},{y})"
                )));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if add[add[x][y]][z] != add[x][add[y][z]] {
                    return Err(Error::NotARing(format!(
                        "addition not associative at ({x},{y},{z})"
                    )));
                }
                if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                    return Err(Error::NotARing(format!(
                        "multiplication not associative at ({x},{y},{z})"
                    )));
                }
                if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]] {
                    return Err(Error::NotARing(format!(
                        "distributivity fails at ({x},{y},{z})"
                    )));
                }
            }
        }
    }
    Ok(neg)
}

impl FinRing {
    /// Builds a ring from raw tables, verifying the full axiom suite.
    pub fn new(add: Vec<Vec<Elem>>, mul: Vec<Vec<Elem>>, one: Elem) -> Result<FinRing> {
        Self::with_label(add, mul, one, String::new())
    }

    pub fn with_label(
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        one: Elem,
        label: impl Into<String>,
    ) -> Result<FinRing> {
        let neg = check_tables(&add, &mul, one)?;
        let mut label = label.into();
        if label.is_empty() {
            label = format!("ring#{}", add.len());
        }
        Ok(FinRing { add, mul, one, neg, label })
    }

    /// The integers mod `n`. `n = 1` gives the zero ring.
    pub fn cyclic(n: usize) -> Result<FinRing> {
        if n == 0 {
            return Err(Error::Precondition("cyclic ring of order 0".into()));
        }
        let add = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i * j) % n).collect()).collect();
        FinRing::with_label(add, mul, if n == 1 { 0 } else { 1 }, format!("Z/{n}"))
    }

    /// The one-element ring (terminal algebra, empty spectrum).
    pub fn zero_ring() -> FinRing {
        FinRing::cyclic(1).expect("the zero ring is a ring")
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.order() == 1
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x][y]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x][y]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add[x][self.neg[y]]
    }

    /// `k . x` in the additive group.
    pub fn scalar_mul(&self, k: usize, x: Elem) -> Elem {
        let mut acc = 0;
        let mut base = x;
        let mut k = k % self.additive_order(x);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn additive_order(&self, x: Elem) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    /// Additive order of 1 (the characteristic; 1 for the zero ring).
    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one)
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.mul[x].contains(&self.one)
    }

    pub fn inverse_of(&self, x: Elem) -> Option<Elem> {
        (0..self.order()).find(|&y| self.mul(x, y) == self.one)
    }

    pub fn is_nilpotent(&self, x: Elem) -> bool {
        let mut acc = x;
        for _ in 0..self.order() {
            if acc == 0 {
                return true;
            }
            acc = self.mul(acc, x);
        }
        false
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    pub fn nilpotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_nilpotent(x)).collect()
    }

    /// A field is a nonzero ring in which every nonzero element is a unit.
    pub fn is_field(&self) -> bool {
        !self.is_zero_ring() && (1..self.order()).all(|x| self.mul[x].contains(&self.one))
    }

    /// Local means the non-units are closed under addition (equivalently form
    /// the unique maximal ideal).
    pub fn is_local(&self) -> bool {
        if self.is_zero_ring() {
            return false;
        }
        let nonunits: Vec<Elem> = self.elements().filter(|&x| !self.is_unit(x)).collect();
        nonunits
            .iter()
            .all(|&x| nonunits.iter().all(|&y| !self.is_unit(self.add(x, y))))
    }

    /// Isomorphism-invariant fingerprint used to cut down isomorphism search.
    pub fn fingerprint(&self) -> Vec<u32> {
        let mut profile: Vec<[u32; 5]> = self
            .elements()
            .map(|x| {
                [
                    self.additive_order(x) as u32,
                    u32::from(self.is_unit(x)),
                    u32::from(self.is_nilpotent(x)),
                    self.additive_order(self.mul(x, x)) as u32,
                    u32::from(self.is_idempotent(x)),
                ]
            })
            .collect();
        profile.sort_unstable();
        let mut out = vec![self.order() as u32, self.characteristic() as u32];
        out.extend(profile.into_iter().flatten());
        out
    }

    /// Smallest subset containing `seed`, 0 and 1 that is closed under
    /// addition and multiplication. Returned sorted.
    pub fn subring_closure(&self, seed: &[Elem]) -> Vec<Elem> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        inside[self.one] = true;
        let mut stack: Vec<Elem> = vec![0, self.one];
        for &s in seed {
            if !inside[s] {
                inside[s] = true;
                stack.push(s);
            }
        }
        let mut members: Vec<Elem> = stack.clone();
        while let Some(x) = stack.pop() {
            for i in 0..members.len() {
                let y = members[i];
                for z in [self.add(x, y), self.mul(x, y)] {
                    if !inside[z] {
                        inside[z] = true;
                        stack.push(z);
                        members.push(z);
                    }
                }
            }
        }
        let mut out: Vec<Elem> = (0..n).filter(|&x| inside[x]).collect();
        out.sort_unstable();
        out
    }

    /// Quotient `base[x] / (p)` for a monic polynomial `p` handed over as its
    /// coefficient list `[a_0, ..., a_{d-1}, 1]`. Elements are tuples of
    /// `base` coefficients, little-endian in the carrier index.
    pub fn poly_quotient(base: &FinRing, monic: &[Elem]) -> Result<FinRing> {
        let d = monic.len().saturating_sub(1);
        if d == 0 || monic[d] != base.one() {
            return Err(Error::Precondition(
                "polynomial must be monic of positive degree".into(),
            ));
        }
        let b = base.order();
        let n = b.pow(d as u32);
        let idx = |coeffs: &[Elem]| -> usize {
            coeffs.iter().rev().fold(0, |acc, &c| acc * b + c)
        };
        let tup = |mut i: usize| -> Vec<Elem> {
            (0..d)
                .map(|_| {
                    let c = i % b;
                    i /= b;
                    c
                })
                .collect()
        };
        // x^k reduced mod p, for k up to 2d-2.
        let mut xpow: Vec<Vec<Elem>> = Vec::with_capacity(2 * d - 1);
        for k in 0..d {
            let mut v = vec![0; d];
            v[k] = base.one();
            xpow.push(v);
        }
        for _ in d..2 * d - 1 {
            let prev = xpow.last().expect("nonempty").clone();
            // multiply by x: shift, then reduce the overflow via
            // x^d = -(a_0 + ... + a_{d-1} x^{d-1}).
            let carry = prev[d - 1];
            let mut v = vec![0; d];
            for k in (1..d).rev() {
                v[k] = prev[k - 1];
            }
            for k in 0..d {
                let corr = base.mul(carry, base.neg(monic[k]));
                v[k] = base.add(v[k], corr);
            }
            xpow.push(v);
        }
        let add_t: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let ti = tup(i);
                (0..n)
                    .map(|j| {
                        let tj = tup(j);
                        let s: Vec<Elem> =
                            ti.iter().zip(&tj).map(|(&x, &y)| base.add(x, y)).collect();
                        idx(&s)
                    })
                    .collect()
            })
            .collect();
        let mul_t: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let ti = tup(i);
                (0..n)
                    .map(|j| {
                        let tj = tup(j);
                        let mut acc = vec![0; d];
                        for (p, &ci) in ti.iter().enumerate() {
                            if ci == 0 {
                                continue;
                            }
                            for (q, &cj) in tj.iter().enumerate() {
                                let c = base.mul(ci, cj);
                                if c == 0 {
                                    continue;
                                }
                                for k in 0..d {
                                    acc[k] = base.add(acc[k], base.mul(c, xpow[p + q][k]));
                                }
                            }
                        }
                        idx(&acc)
                    })
                    .collect()
            })
            .collect();
        let mut one = vec![0; d];
        one[0] = base.one();
        FinRing::with_label(add_t, mul_t, idx(&one), format!("{}[x]/<deg {}>", base.label, d))
    }

    /// The field with `p^k` elements, found by scanning monic polynomials of
    /// degree `k` over `Z/p` until the quotient is a field.
    pub fn galois_field(p: usize, k: usize) -> Result<FinRing> {
        if p < 2 || (2..p).any(|d| p % d == 0) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let base = FinRing::cyclic(p)?;
        if k == 1 {
            return Ok(base);
        }
        for tail in 0..p.pow(k as u32) {
            let mut monic: Vec<Elem> = Vec::with_capacity(k + 1);
            let mut t = tail;
            for _ in 0..k {
                monic.push(t % p);
                t /= p;
            }
            monic.push(1);
            let cand = FinRing::poly_quotient(&base, &monic)?;
            if cand.is_field() {
                let mut cand = cand;
                cand.set_label(format!("F_{}", p.pow(k as u32)));
                return Ok(cand);
            }
        }
        unreachable!("an irreducible monic polynomial of each degree exists over Z/p")
    }
}

/// Componentwise product ring with its two projections.
pub fn product(a: &Arc<FinRing>, b: &Arc<FinRing>) -> (Arc<FinRing>, RingHom, RingHom) {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let pair = |x: Elem, y: Elem| x * nb + y;
    let add = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| pair(a.add(i / nb, j / nb), b.add(i % nb, j % nb)))
                .collect()
        })
        .collect();
    let mul = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| pair(a.mul(i / nb, j / nb), b.mul(i % nb, j % nb)))
                .collect()
        })
        .collect();
    let prod = Arc::new(
        FinRing::with_label(
            add,
            mul,
            pair(a.one(), b.one()),
            format!("{} x {}", a.label, b.label),
        )
        .expect("product of rings is a ring"),
    );
    let p1 = RingHom::new(prod.clone(), a.clone(), (0..n).map(|i| i / nb).collect())
        .expect("projection is a homomorphism");
    let p2 = RingHom::new(prod.clone(), b.clone(), (0..n).map(|i| i % nb).collect())
        .expect("projection is a homomorphism");
    (prod, p1, p2)
}

/// The subring on `carrier` (which must be closed and contain 0 and 1),
/// together with its embedding.
pub fn subring(parent: &Arc<FinRing>, carrier: &[Elem]) -> Result<(Arc<FinRing>, RingHom)> {
    let mut sorted = carrier.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.first() != Some(&0) || !sorted.contains(&parent.one()) {
        return Err(Error::Precondition("subring must contain 0 and 1".into()));
    }
    let pos = |x: Elem| -> Result<usize> {
        sorted
            .binary_search(&x)
            .map_err(|_| Error::Precondition(format!("subset not closed: element {x} escapes")))
    };
    let n = sorted.len();
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            add[i][j] = pos(parent.add(sorted[i], sorted[j]))?;
            mul[i][j] = pos(parent.mul(sorted[i], sorted[j]))?;
        }
    }
    let one = pos(parent.one())?;
    let sub = Arc::new(FinRing::with_label(add, mul, one, format!("sub({})", parent.label))?);
    let emb = RingHom::new(sub.clone(), parent.clone(), sorted)?;
    Ok((sub, emb))
}

/// An ideal of a ring, by its underlying subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<FinRing>,
    elements: Vec<Elem>,
}

impl Ideal {
    pub fn new(ring: Arc<FinRing>, mut elements: Vec<Elem>) -> Result<Ideal> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NotAnIdeal("must contain 0".into()));
        }
        for &x in &elements {
            for &y in &elements {
                if elements.binary_search(&ring.add(x, y)).is_err() {
                    return Err(Error::NotAnIdeal(format!("not closed under addition: {x} + {y}")));
                }
            }
            for r in ring.elements() {
                if elements.binary_search(&ring.mul(r, x)).is_err() {
                    return Err(Error::NotAnIdeal(format!("does not absorb: {r} * {x}")));
                }
            }
        }
        Ok(Ideal { ring, elements })
    }

    /// Smallest ideal containing `gens`.
    pub fn generated_by(ring: &Arc<FinRing>, gens: &[Elem]) -> Ideal {
        let n = ring.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0];
        let mut stack = vec![0];
        for &g in gens {
            for r in ring.elements() {
                let x = ring.mul(r, g);
                if !inside[x] {
                    inside[x] = true;
                    members.push(x);
                    stack.push(x);
                }
            }
        }
        while let Some(x) = stack.pop() {
            for i in 0..members.len() {
                let s = ring.add(x, members[i]);
                if !inside[s] {
                    inside[s] = true;
                    members.push(s);
                    stack.push(s);
                }
            }
        }
        members.sort_unstable();
        Ideal { ring: ring.clone(), elements: members }
    }

    pub fn ring(&self) -> &Arc<FinRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_proper(&self) -> bool {
        self.elements.len() < self.ring.order()
    }

    /// True if `self . self = 0`.
    pub fn squares_to_zero(&self) -> bool {
        self.elements
            .iter()
            .all(|&x| self.elements.iter().all(|&y| self.ring.mul(x, y) == 0))
    }
}

/// Every ideal of the ring, found by closing each partial ideal under one
/// more generator. Sorted by (size, elements) for determinism.
pub fn all_ideals(ring: &Arc<FinRing>) -> Vec<Ideal> {
    let mut seen = std::collections::BTreeSet::<Vec<Elem>>::new();
    let zero = Ideal::generated_by(ring, &[]);
    let mut queue = vec![zero.elements.clone()];
    seen.insert(zero.elements.clone());
    while let Some(current) = queue.pop() {
        for x in ring.elements() {
            if current.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = current.clone();
            gens.push(x);
            let bigger = Ideal::generated_by(ring, &gens);
            if seen.insert(bigger.elements.clone()) {
                queue.push(bigger.elements);
            }
        }
    }
    let mut out: Vec<Vec<Elem>> = seen.into_iter().collect();
    out.sort_by_key(|e| (e.len(), e.clone()));
    out.into_iter()
        .map(|elements| Ideal { ring: ring.clone(), elements })
        .collect()
}

/// The coset ring `A / I` and the canonical surjection.
pub fn quotient(a: &Arc<FinRing>, ideal: &Ideal) -> (Arc<FinRing>, RingHom) {
    assert!(ideal.ring() == a, "ideal belongs to a different ring");
    let n = a.order();
    // Coset representative: smallest member.
    let mut rep = vec![usize::MAX; n];
    let mut reps: Vec<Elem> = Vec::new();
    for x in 0..n {
        if rep[x] != usize::MAX {
            continue;
        }
        let mut coset: Vec<Elem> = ideal.elements().iter().map(|&i| a.add(x, i)).collect();
        coset.sort_unstable();
        let r = coset[0];
        if rep[r] == usize::MAX {
            reps.push(r);
        }
        for &c in &coset {
            rep[c] = r;
        }
    }
    reps.sort_unstable();
    let index_of = |r: Elem| reps.binary_search(&r).expect("representative");
    let m = reps.len();
    let mut add = vec![vec![0; m]; m];
    let mut mul = vec![vec![0; m]; m];
    for i in 0..m {
        for j in 0..m {
            add[i][j] = index_of(rep[a.add(reps[i], reps[j])]);
            mul[i][j] = index_of(rep[a.mul(reps[i], reps[j])]);
        }
    }
    let one = index_of(rep[a.one()]);
    let q = Arc::new(
        FinRing::with_label(add, mul, one, format!("{}/I{}", a.label, ideal.len()))
            .expect("quotient by an ideal is a ring"),
    );
    let surj = RingHom::new(a.clone(), q.clone(), (0..n).map(|x| index_of(rep[x])).collect())
        .expect("canonical surjection is a homomorphism");
    (q, surj)
}

/// All maximal ideals with their residue fields and quotient maps. These are
/// the points of the spectrum; the zero ring has none and is rejected.
pub fn maximal_ideals(a: &Arc<FinRing>) -> Result<Vec<(Ideal, Arc<FinRing>, RingHom)>> {
    if a.is_zero_ring() {
        return Err(Error::EmptySpectrum);
    }
    let ideals = all_ideals(a);
    let proper: Vec<&Ideal> = ideals.iter().filter(|i| i.is_proper()).collect();
    let mut maximal = Vec::new();
    for i in &proper {
        let strictly_below_some = proper.iter().any(|j| {
            j.len() > i.len() && i.elements().iter().all(|&x| j.contains(x))
        });
        if !strictly_below_some {
            let (q, surj) = quotient(a, i);
            debug_assert!(q.is_field(), "quotient by a maximal ideal must be a field");
            maximal.push(((*i).clone(), q, surj));
        }
    }
    Ok(maximal)
}

/// A unital ring homomorphism given by its value table.
#[derive(Clone)]
pub struct RingHom {
    source: Arc<FinRing>,
    target: Arc<FinRing>,
    map: Vec<Elem>,
}

impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}
impl Eq for RingHom {}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingHom({} -> {}, {:?})",
            self.source.label, self.target.label, self.map
        )
    }
}

impl RingHom {
    pub fn new(source: Arc<FinRing>, target: Arc<FinRing>, map: Vec<Elem>) -> Result<RingHom> {
        if map.len() != source.order() {
            return Err(Error::NotAHom("map length differs from source order".into()));
        }
        if let Some(&x) = map.iter().find(|&&x| x >= target.order()) {
            return Err(Error::NotAHom(format!("value {x} out of range")));
        }
        if map[source.one()] != target.one() {
            return Err(Error::NotAHom("does not send 1 to 1".into()));
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.add(x, y)] != target.add(map[x], map[y]) {
                    return Err(Error::NotAHom(format!("additivity fails at ({x},{y})")));
                }
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotAHom(format!("multiplicativity fails at ({x},{y})")));
                }
            }
        }
        Ok(RingHom { source, target, map })
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinRing>,
        target: Arc<FinRing>,
        map: Vec<Elem>,
    ) -> RingHom {
        debug_assert!(RingHom::new(source.clone(), target.clone(), map.clone()).is_ok());
        RingHom { source, target, map }
    }

    pub fn identity(a: &Arc<FinRing>) -> RingHom {
        RingHom {
            source: a.clone(),
            target: a.clone(),
            map: (0..a.order()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<FinRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinRing> {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `g . f` (apply `f` first). Panics if the middle objects differ.
    pub fn compose(g: &RingHom, f: &RingHom) -> RingHom {
        assert!(
            f.target == g.source,
            "composition of homomorphisms with mismatched middle ring"
        );
        RingHom {
            source: f.source.clone(),
            target: g.target.clone(),
            map: f.map.iter().map(|&x| g.map[x]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<RingHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.order()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(RingHom {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }

    /// Elements mapped to zero.
    pub fn kernel_elements(&self) -> Vec<Elem> {
        self.source.elements().filter(|&x| self.map[x] == 0).collect()
    }

    pub fn kernel(&self) -> Ideal {
        Ideal {
            ring: self.source.clone(),
            elements: self.kernel_elements(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(r: FinRing) -> Arc<FinRing> {
        Arc::new(r)
    }

    #[test]
    fn cyclic_rings_behave_like_modular_arithmetic() {
        let z4 = FinRing::cyclic(4).unwrap();
        assert_eq!(z4.add(2, 3), 1);
        assert_eq!(z4.mul(2, 2), 0);
        assert_eq!(z4.characteristic(), 4);
        assert!(FinRing::cyclic(0).is_err());
        let zero = FinRing::cyclic(1).unwrap();
        assert!(zero.is_zero_ring());
        assert_eq!(zero.one(), 0);
    }

    #[test]
    fn poly_quotient_builds_the_dual_numbers() {
        let z2 = FinRing::cyclic(2).unwrap();
        let eps = FinRing::poly_quotient(&z2, &[0, 0, 1]).unwrap(); // x^2
        assert_eq!(eps.order(), 4);
        // x is the element with index 2 (little-endian tuple (0,1)).
        assert_eq!(eps.mul(2, 2), 0);
        assert!(!eps.is_field());
        assert!(eps.is_local());
    }

    #[test]
    fn galois_fields_are_fields() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let f = FinRing::galois_field(p, k).unwrap();
            assert_eq!(f.order(), p.pow(k as u32));
            assert!(f.is_field());
        }
    }

    #[test]
    fn product_has_componentwise_idempotents() {
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let (p, pr1, pr2) = product(&z2, &z2);
        assert_eq!(p.order(), 4);
        let nontrivial: Vec<Elem> = p
            .idempotents()
            .into_iter()
            .filter(|&e| e != 0 && e != p.one())
            .collect();
        assert_eq!(nontrivial.len(), 2);
        assert!(pr1.is_surjective() && pr2.is_surjective());
    }

    #[test]
    fn quotient_of_z4_by_even_ideal_is_z2() {
        let z4 = arc(FinRing::cyclic(4).unwrap());
        let ideal = Ideal::new(z4.clone(), vec![0, 2]).unwrap();
        let (q, surj) = quotient(&z4, &ideal);
        assert_eq!(q.order(), 2);
        assert_eq!(surj.apply(3), q.one());
        // Quotient by the zero ideal is the identity up to relabeling.
        let zero_ideal = Ideal::new(z4.clone(), vec![0]).unwrap();
        let (same, id_map) = quotient(&z4, &zero_ideal);
        assert_eq!(same.order(), 4);
        assert!(id_map.is_bijective());
    }

    #[test]
    fn maximal_ideals_of_z6_have_prime_residue_fields() {
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let points = maximal_ideals(&z6).unwrap();
        assert_eq!(points.len(), 2);
        let mut orders: Vec<usize> = points.iter().map(|(_, f, _)| f.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3]);
        assert!(maximal_ideals(&arc(FinRing::zero_ring())).is_err());
    }

    #[test]
    fn maximal_ideals_of_local_rings_are_unique() {
        let f4 = arc(FinRing::galois_field(2, 2).unwrap());
        assert_eq!(maximal_ideals(&f4).unwrap().len(), 1);
        let z2 = FinRing::cyclic(2).unwrap();
        let eps = arc(FinRing::poly_quotient(&z2, &[0, 0, 1]).unwrap());
        let pts = maximal_ideals(&eps).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].1.order(), 2);
    }

    #[test]
    fn bad_tables_are_rejected_with_a_reason() {
        // 0 = 1 in a two-element carrier.
        let t = vec![vec![0, 1], vec![1, 0]];
        assert!(FinRing::new(t.clone(), t.clone(), 0).is_err());
        // Non-associative multiplication.
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        assert!(FinRing::new(add, mul, 1).is_ok());
    }

    #[test]
    fn ideal_generation_absorbs_multiplication() {
        let z12 = arc(FinRing::cyclic(12).unwrap());
        let i = Ideal::generated_by(&z12, &[8]);
        assert_eq!(i.elements(), &[0, 4, 8]);
        assert!(Ideal::new(z12.clone(), vec![0, 4, 8]).is_ok());
        assert!(Ideal::new(z12, vec![0, 4]).is_err());
    }
}
