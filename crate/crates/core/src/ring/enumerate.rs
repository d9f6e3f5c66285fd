//! Enumeration of finite commutative unital rings up to isomorphism.
//!
//! The fast path works one additive group at a time. In a unital ring the
//! additive order of 1 equals the exponent of the additive group, and a
//! maximal-order cyclic subgroup is always a direct summand, so up to
//! isomorphism the unit can be pinned to the first generator of the
//! invariant-factor decomposition. That leaves the pairwise products of the
//! remaining generators as the only unknowns; a backtracking search with
//! on-the-fly associativity pruning fills them in, and survivors are
//! deduplicated by isomorphism search.
//!
//! [`reference_rings_of_order`] is the independent slow oracle: it enumerates
//! generator products without any unit normalization, scans for the
//! existence of a unit afterwards, and deduplicates by a canonical form over
//! the additive automorphism group. Tests pin the fast path against it.

use super::{first_isomorphism, Elem, FinRing};
use crate::par;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A finite abelian group in invariant-factor form: `Z/d_0 x ... x Z/d_{k-1}`
/// with `d_{i+1} | d_i`, so `d_0` is the exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub invariants: Vec<usize>,
}

impl AbelianGroup {
    pub fn order(&self) -> usize {
        self.invariants.iter().product()
    }

    pub fn num_gens(&self) -> usize {
        self.invariants.len()
    }

    pub fn exponent(&self) -> usize {
        self.invariants.first().copied().unwrap_or(1)
    }

    pub fn tuple(&self, mut index: Elem) -> Vec<usize> {
        self.invariants
            .iter()
            .rev()
            .map(|&d| {
                let c = index % d;
                index /= d;
                c
            })
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect()
    }

    pub fn index(&self, tuple: &[usize]) -> Elem {
        tuple
            .iter()
            .zip(&self.invariants)
            .fold(0, |acc, (&c, &d)| acc * d + (c % d))
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut t = vec![0; self.num_gens()];
        t[i] = 1;
        self.index(&t)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let (tx, ty) = (self.tuple(x), self.tuple(y));
        let sum: Vec<usize> = tx
            .iter()
            .zip(&ty)
            .zip(&self.invariants)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        self.index(&sum)
    }

    pub fn scalar(&self, k: usize, x: Elem) -> Elem {
        let t = self.tuple(x);
        let s: Vec<usize> = t
            .iter()
            .zip(&self.invariants)
            .map(|(&a, &d)| (a * k) % d)
            .collect();
        self.index(&s)
    }

    pub fn additive_order(&self, x: Elem) -> usize {
        let t = self.tuple(x);
        t.iter()
            .zip(&self.invariants)
            .map(|(&a, &d)| d / gcd(d, a))
            .fold(1, lcm)
    }

    /// Elements killed by `m`.
    pub fn torsion(&self, m: usize) -> Vec<Elem> {
        (0..self.order())
            .filter(|&x| self.scalar(m, x) == 0)
            .collect()
    }

    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        let n = self.order();
        (0..n).map(|i| (0..n).map(|j| self.add(i, j)).collect()).collect()
    }

    /// All additive automorphisms, by brute force over generator images.
    /// Meant for small groups (the reference oracle).
    pub fn automorphisms(&self) -> Vec<Vec<Elem>> {
        let n = self.order();
        let k = self.num_gens();
        let mut images: Vec<Vec<Elem>> = Vec::new();
        for i in 0..k {
            let d = self.invariants[i];
            images.push((0..n).filter(|&x| self.scalar(d, x) == 0).collect());
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; k];
        'outer: loop {
            let gens: Vec<Elem> = (0..k).map(|i| images[i][choice[i]]).collect();
            let mut map = vec![0; n];
            for x in 0..n {
                let t = self.tuple(x);
                let mut acc = 0;
                for (i, &c) in t.iter().enumerate() {
                    acc = self.add(acc, self.scalar(c, gens[i]));
                }
                map[x] = acc;
            }
            let mut seen = vec![false; n];
            if map.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                out.push(map);
            }
            for i in 0..k {
                choice[i] += 1;
                if choice[i] < images[i].len() {
                    continue 'outer;
                }
                choice[i] = 0;
                if i == k - 1 {
                    break 'outer;
                }
            }
            if k == 0 {
                break;
            }
        }
        out
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// All abelian groups of the given order, by invariant factor sequences.
pub fn abelian_groups(order: usize) -> Vec<AbelianGroup> {
    fn extend(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            out.push(prefix.clone());
            return;
        }
        let mut d = max.min(remaining);
        while d >= 2 {
            if remaining % d == 0 && max % d == 0 {
                prefix.push(d);
                extend(remaining / d, d, prefix, out);
                prefix.pop();
            }
            d -= 1;
        }
    }
    if order == 1 {
        return vec![AbelianGroup { invariants: vec![] }];
    }
    let mut seqs = Vec::new();
    extend(order, order, &mut Vec::new(), &mut seqs);
    seqs.sort();
    seqs.into_iter().map(|invariants| AbelianGroup { invariants }).collect()
}

/// Builds the multiplication table induced by generator products.
/// `products[i][j]` is `g_i * g_j`; the table is the biadditive extension.
fn bilinear_table(g: &AbelianGroup, products: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let n = g.order();
    let k = g.num_gens();
    let tuples: Vec<Vec<usize>> = (0..n).map(|x| g.tuple(x)).collect();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let mut acc = 0;
                    for i in 0..k {
                        if tuples[x][i] == 0 {
                            continue;
                        }
                        for j in 0..k {
                            if tuples[y][j] == 0 {
                                continue;
                            }
                            acc = g.add(
                                acc,
                                g.scalar(tuples[x][i] * tuples[y][j], products[i][j]),
                            );
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Partial product evaluation: `x * g_j` when every needed generator product
/// is already chosen.
fn eval_with_gen(
    g: &AbelianGroup,
    partial: &[Vec<Option<Elem>>],
    x: Elem,
    j: usize,
) -> Option<Elem> {
    let t = g.tuple(x);
    let mut acc = 0;
    for (i, &c) in t.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let p = partial[i][j]?;
        acc = g.add(acc, g.scalar(c, p));
    }
    Some(acc)
}

/// Checks every generator associativity triple that is currently evaluable.
fn partial_assoc_ok(g: &AbelianGroup, partial: &[Vec<Option<Elem>>]) -> bool {
    let k = g.num_gens();
    for i in 0..k {
        for j in 0..k {
            let Some(ij) = partial[i][j] else { continue };
            for l in 0..k {
                let Some(jl) = partial[j][l] else { continue };
                let lhs = eval_with_gen(g, partial, ij, l);
                let rhs = eval_with_gen(g, partial, jl, i);
                if let (Some(a), Some(b)) = (lhs, rhs) {
                    if a != b {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All unital commutative ring structures on `g` with the unit pinned to the
/// first generator, as raw multiplication tables.
fn unital_tables_on(g: &AbelianGroup) -> Vec<Vec<Vec<Elem>>> {
    let k = g.num_gens();
    if k == 0 {
        return vec![vec![vec![0]]];
    }
    // Unknown products: (i, j) with 1 <= i <= j < k. Products with the unit
    // generator are forced.
    let unknowns: Vec<(usize, usize)> = (1..k)
        .flat_map(|i| (i..k).map(move |j| (i, j)))
        .collect();
    let domains: Vec<Vec<Elem>> = unknowns
        .iter()
        .map(|&(i, j)| g.torsion(gcd(g.invariants[i], g.invariants[j])))
        .collect();

    fn dfs(
        g: &AbelianGroup,
        unknowns: &[(usize, usize)],
        domains: &[Vec<Elem>],
        depth: usize,
        partial: &mut Vec<Vec<Option<Elem>>>,
        out: &mut Vec<Vec<Vec<Elem>>>,
    ) {
        if depth == unknowns.len() {
            let products: Vec<Vec<Elem>> = partial
                .iter()
                .map(|row| row.iter().map(|p| p.expect("complete")).collect())
                .collect();
            let table = bilinear_table(g, &products);
            out.push(table);
            return;
        }
        let (i, j) = unknowns[depth];
        for &v in &domains[depth] {
            partial[i][j] = Some(v);
            partial[j][i] = Some(v);
            if partial_assoc_ok(g, partial) {
                dfs(g, unknowns, domains, depth + 1, partial, out);
            }
            partial[i][j] = None;
            partial[j][i] = None;
        }
    }

    let init = || -> Vec<Vec<Option<Elem>>> {
        // Products with the unit generator are the identity row.
        let mut partial: Vec<Vec<Option<Elem>>> = vec![vec![None; k]; k];
        for j in 0..k {
            let gj = g.generator(j);
            partial[0][j] = Some(gj);
            partial[j][0] = Some(gj);
        }
        partial
    };

    if unknowns.is_empty() {
        let mut partial = init();
        let mut out = Vec::new();
        dfs(g, &unknowns, &domains, 0, &mut partial, &mut out);
        return out;
    }

    // Parallel split over the first unknown's domain.
    let first_domain = domains[0].clone();
    par::flat_map_range(first_domain.len(), |idx| {
        let v = first_domain[idx];
        let mut partial = init();
        let (i, j) = unknowns[0];
        partial[i][j] = Some(v);
        partial[j][i] = Some(v);
        let mut out = Vec::new();
        if partial_assoc_ok(g, &partial) {
            dfs(g, &unknowns, &domains, 1, &mut partial, &mut out);
        }
        out
    })
}

/// Deduplicates verified rings up to isomorphism, keeping first
/// representatives in input order.
fn dedup_by_isomorphism(rings: Vec<FinRing>) -> Vec<FinRing> {
    let mut by_print: BTreeMap<Vec<u32>, Vec<Arc<FinRing>>> = BTreeMap::new();
    let mut order = Vec::new();
    for r in rings {
        let print = r.fingerprint();
        let arc = Arc::new(r);
        let bucket = by_print.entry(print.clone()).or_default();
        if bucket.iter().all(|seen| first_isomorphism(seen, &arc).is_none()) {
            bucket.push(arc.clone());
            order.push(arc);
        }
    }
    order
        .into_iter()
        .map(|a| Arc::try_unwrap(a).unwrap_or_else(|a| (*a).clone()))
        .collect()
}

/// One representative per isomorphism class of commutative unital rings of
/// exactly the given order.
pub fn enumerate_rings_of_order(order: usize) -> Vec<FinRing> {
    assert!(order >= 1);
    if order == 1 {
        return vec![FinRing::zero_ring()];
    }
    let groups = abelian_groups(order);
    let mut candidates = Vec::new();
    for g in &groups {
        let add = g.add_table();
        let one = g.generator(0);
        for mul in unital_tables_on(g) {
            // Generator associativity plus biadditive extension already
            // forces the axioms, but everything is re-verified here.
            if let Ok(r) = FinRing::with_label(add.clone(), mul, one, String::new()) {
                candidates.push(r);
            }
        }
    }
    let mut out = dedup_by_isomorphism(candidates);
    for (i, r) in out.iter_mut().enumerate() {
        r.set_label(format!("R{order}_{i}"));
    }
    out
}

/// One representative per isomorphism class of each order up to `max_order`,
/// zero ring included.
pub fn enumerate_rings(max_order: usize) -> Vec<FinRing> {
    assert!(max_order >= 1);
    let per_order = par::map_range(max_order, |i| ring_classes_of_order(i + 1));
    per_order
        .into_iter()
        .flat_map(|classes| classes.iter().map(|r| (**r).clone()).collect::<Vec<_>>())
        .collect()
}

/// Cached, shared representatives per order. Category builders hit the same
/// orders over and over; the enumeration is deterministic so sharing is
/// sound.
pub fn ring_classes_of_order(order: usize) -> Arc<Vec<Arc<FinRing>>> {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<Vec<Arc<FinRing>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().expect("ring cache poisoned").get(&order) {
        return hit.clone();
    }
    let computed: Arc<Vec<Arc<FinRing>>> =
        Arc::new(enumerate_rings_of_order(order).into_iter().map(Arc::new).collect());
    let mut guard = cache.lock().expect("ring cache poisoned");
    guard.entry(order).or_insert_with(|| computed.clone());
    guard[&order].clone()
}

/// Independent slow oracle: enumerate all generator-product assignments on
/// each additive group (no unit normalization), keep the tables that form a
/// commutative associative multiplication admitting some unit, and
/// deduplicate by a canonical form over the additive automorphisms.
pub fn reference_rings_of_order(order: usize) -> Vec<FinRing> {
    assert!(
        order <= 12,
        "reference oracle is exponential; use it only for small orders"
    );
    if order == 1 {
        return vec![FinRing::zero_ring()];
    }
    let mut out = Vec::new();
    for g in abelian_groups(order) {
        let n = g.order();
        let k = g.num_gens();
        let add = g.add_table();
        let autos = g.automorphisms();
        let unknowns: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (i..k).map(move |j| (i, j)))
            .collect();
        let domains: Vec<Vec<Elem>> = unknowns
            .iter()
            .map(|&(i, j)| g.torsion(gcd(g.invariants[i], g.invariants[j])))
            .collect();
        let mut canon_seen = std::collections::BTreeSet::new();
        let mut choice = vec![0usize; unknowns.len()];
        'outer: loop {
            let mut products = vec![vec![0; k]; k];
            for (idx, &(i, j)) in unknowns.iter().enumerate() {
                let v = domains[idx][choice[idx]];
                products[i][j] = v;
                products[j][i] = v;
            }
            let mul = bilinear_table(&g, &products);
            let assoc = (0..n).all(|x| {
                (0..n).all(|y| (0..n).all(|z| mul[mul[x][y]][z] == mul[x][mul[y][z]]))
            });
            if assoc {
                if let Some(one) = (0..n).find(|&u| (0..n).all(|x| mul[u][x] == x)) {
                    // Canonical form: minimal relabeled table over Aut(G).
                    let canon = autos
                        .iter()
                        .map(|phi| {
                            let mut inv = vec![0; n];
                            for (x, &y) in phi.iter().enumerate() {
                                inv[y] = x;
                            }
                            let mut t: Vec<Elem> = Vec::with_capacity(n * n);
                            for x in 0..n {
                                for y in 0..n {
                                    t.push(phi[mul[inv[x]][inv[y]]]);
                                }
                            }
                            t
                        })
                        .min()
                        .expect("at least the identity automorphism");
                    if canon_seen.insert(canon) {
                        out.push(
                            FinRing::with_label(add.clone(), mul, one, String::new())
                                .expect("oracle verified the axioms"),
                        );
                    }
                }
            }
            for idx in 0..unknowns.len() {
                choice[idx] += 1;
                if choice[idx] < domains[idx].len() {
                    continue 'outer;
                }
                choice[idx] = 0;
                if idx == unknowns.len() - 1 {
                    break 'outer;
                }
            }
            if unknowns.is_empty() {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_groups_by_invariant_factors() {
        assert_eq!(abelian_groups(1).len(), 1);
        assert_eq!(abelian_groups(12).len(), 2); // Z/12, Z/6 x Z/2
        assert_eq!(abelian_groups(16).len(), 5);
        let g = AbelianGroup { invariants: vec![4, 2] };
        assert_eq!(g.order(), 8);
        assert_eq!(g.additive_order(g.generator(0)), 4);
        assert_eq!(g.additive_order(g.generator(1)), 2);
        assert_eq!(g.torsion(2).len(), 4);
    }

    #[test]
    fn automorphism_counts_of_small_groups() {
        let v4 = AbelianGroup { invariants: vec![2, 2] };
        assert_eq!(v4.automorphisms().len(), 6); // GL(2, F_2)
        let z4 = AbelianGroup { invariants: vec![4] };
        assert_eq!(z4.automorphisms().len(), 2);
        let e8 = AbelianGroup { invariants: vec![2, 2, 2] };
        assert_eq!(e8.automorphisms().len(), 168); // GL(3, F_2)
    }

    #[test]
    fn ring_counts_for_prime_and_prime_square_orders() {
        assert_eq!(enumerate_rings_of_order(2).len(), 1);
        assert_eq!(enumerate_rings_of_order(3).len(), 1);
        assert_eq!(enumerate_rings_of_order(5).len(), 1);
        assert_eq!(enumerate_rings_of_order(7).len(), 1);
        // Z/4, Z/2 x Z/2, F_4, Z/2[x]/(x^2).
        assert_eq!(enumerate_rings_of_order(4).len(), 4);
        assert_eq!(enumerate_rings_of_order(9).len(), 4);
    }

    #[test]
    fn fast_and_reference_enumerations_agree_up_to_order_nine() {
        for order in 1..=9 {
            let fast = enumerate_rings_of_order(order);
            let slow = reference_rings_of_order(order);
            assert_eq!(
                fast.len(),
                slow.len(),
                "class count mismatch at order {order}"
            );
            // Every oracle ring is isomorphic to exactly one fast-path ring.
            for s in &slow {
                let s = Arc::new(s.clone());
                let hits = fast
                    .iter()
                    .filter(|f| first_isomorphism(&Arc::new((*f).clone()), &s).is_some())
                    .count();
                assert_eq!(hits, 1, "oracle ring matched {hits} representatives");
            }
        }
    }

    #[test]
    fn enumerate_rings_accumulates_all_orders() {
        let rings = enumerate_rings(4);
        assert_eq!(rings.len(), 1 + 1 + 1 + 4);
        assert!(rings[0].is_zero_ring());
    }
}
