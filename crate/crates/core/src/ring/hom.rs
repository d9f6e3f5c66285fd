//! Homomorphism search between finite rings.
//!
//! The search backtracks over images of a greedy generating sequence of the
//! source and propagates forced values through the addition and
//! multiplication tables after every choice. A completed assignment is
//! re-verified wholesale before being emitted, so the pruning logic cannot
//! cost correctness. Results come out in a canonical order determined by the
//! element indexing.

use super::{Elem, FinRing, RingHom};
use std::sync::Arc;

/// All unital homomorphisms `a -> b`.
pub fn homs(a: &Arc<FinRing>, b: &Arc<FinRing>) -> Vec<RingHom> {
    homs_seeded(a, b, &[])
}

/// All unital homomorphisms `a -> b` extending the partial assignment
/// `seed` (pairs `(x, f(x))`). Returns an empty list when the seed is
/// contradictory.
pub fn homs_seeded(a: &Arc<FinRing>, b: &Arc<FinRing>, seed: &[(Elem, Elem)]) -> Vec<RingHom> {
    Search::new(a, b, Mode::All).run(seed)
}

/// All ring isomorphisms `a -> b`.
pub fn isomorphisms(a: &Arc<FinRing>, b: &Arc<FinRing>) -> Vec<RingHom> {
    if a.order() != b.order() || a.fingerprint() != b.fingerprint() {
        return Vec::new();
    }
    Search::new(a, b, Mode::Bijective { stop_at_first: false }).run(&[])
}

/// A witness isomorphism, or `None` after an exhaustive (pruned) search.
pub fn first_isomorphism(a: &Arc<FinRing>, b: &Arc<FinRing>) -> Option<RingHom> {
    if a.order() != b.order() || a.fingerprint() != b.fingerprint() {
        return None;
    }
    Search::new(a, b, Mode::Bijective { stop_at_first: true })
        .run(&[])
        .into_iter()
        .next()
}

pub fn automorphisms(a: &Arc<FinRing>) -> Vec<RingHom> {
    Search::new(a, a, Mode::Bijective { stop_at_first: false }).run(&[])
}

/// Reference oracle: enumerates all `|b|^|a|` set maps and filters the
/// homomorphisms. Only usable for very small rings; the backtracking search
/// is cross-checked against this in tests.
pub fn brute_force_homs(a: &Arc<FinRing>, b: &Arc<FinRing>) -> Vec<RingHom> {
    let (na, nb) = (a.order(), b.order());
    let total = (nb as u128).checked_pow(na as u32).expect("oracle domain too large");
    assert!(total <= 200_000_000, "brute-force oracle is for small rings only");
    let mut out = Vec::new();
    for code in 0..total {
        let mut map = Vec::with_capacity(na);
        let mut c = code;
        for _ in 0..na {
            map.push((c % nb as u128) as Elem);
            c /= nb as u128;
        }
        if RingHom::new(a.clone(), b.clone(), map.clone()).is_ok() {
            out.push(RingHom::new_unchecked(a.clone(), b.clone(), map));
        }
    }
    out
}

enum Mode {
    All,
    Bijective { stop_at_first: bool },
}

struct Search<'r> {
    a: &'r Arc<FinRing>,
    b: &'r Arc<FinRing>,
    mode: Mode,
    a_order: Vec<usize>,
    b_order: Vec<usize>,
    a_unit: Vec<bool>,
    b_unit: Vec<bool>,
    a_nilp: Vec<bool>,
    b_nilp: Vec<bool>,
    map: Vec<Option<Elem>>,
    used: Vec<bool>,
    results: Vec<Vec<Elem>>,
    done: bool,
}

impl<'r> Search<'r> {
    fn new(a: &'r Arc<FinRing>, b: &'r Arc<FinRing>, mode: Mode) -> Self {
        Search {
            a,
            b,
            mode,
            a_order: a.elements().map(|x| a.additive_order(x)).collect(),
            b_order: b.elements().map(|x| b.additive_order(x)).collect(),
            a_unit: a.elements().map(|x| a.is_unit(x)).collect(),
            b_unit: b.elements().map(|x| b.is_unit(x)).collect(),
            a_nilp: a.elements().map(|x| a.is_nilpotent(x)).collect(),
            b_nilp: b.elements().map(|x| b.is_nilpotent(x)).collect(),
            map: vec![None; a.order()],
            used: vec![false; b.order()],
            results: Vec::new(),
            done: false,
        }
    }

    fn candidate_ok(&self, x: Elem, y: Elem) -> bool {
        if self.b_order[y] == 0 || self.a_order[x] % self.b_order[y] != 0 {
            return false;
        }
        if self.a_unit[x] && !self.b_unit[y] {
            return false;
        }
        if self.a_nilp[x] && !self.b_nilp[y] {
            return false;
        }
        if let Mode::Bijective { .. } = self.mode {
            if self.a_order[x] != self.b_order[y]
                || self.a_unit[x] != self.b_unit[y]
                || self.a_nilp[x] != self.b_nilp[y]
            {
                return false;
            }
        }
        true
    }

    /// Records `f(x) = y` and closes under + and *. Pushes every newly
    /// assigned source element onto `trail` so the caller can undo.
    fn assign(&mut self, x: Elem, y: Elem, trail: &mut Vec<Elem>) -> bool {
        let bij = matches!(self.mode, Mode::Bijective { .. });
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match self.map[x] {
                Some(prev) => {
                    if prev != y {
                        return false;
                    }
                    continue;
                }
                None => {
                    if !self.candidate_ok(x, y) {
                        return false;
                    }
                    if bij {
                        if self.used[y] {
                            return false;
                        }
                        self.used[y] = true;
                    }
                    self.map[x] = Some(y);
                    trail.push(x);
                }
            }
            for z in self.a.elements() {
                if let Some(mz) = self.map[z] {
                    queue.push((self.a.add(x, z), self.b.add(y, mz)));
                    queue.push((self.a.mul(x, z), self.b.mul(y, mz)));
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: &[Elem], from: usize) {
        let bij = matches!(self.mode, Mode::Bijective { .. });
        for &x in &trail[from..] {
            if bij {
                self.used[self.map[x].expect("assigned")] = false;
            }
            self.map[x] = None;
        }
    }

    fn next_unassigned(&self) -> Option<Elem> {
        // Smallest unassigned element; the propagation closure makes the
        // assigned set a subring, so this walks a generating sequence.
        self.map.iter().position(|m| m.is_none())
    }

    fn dfs(&mut self, trail: &mut Vec<Elem>) {
        if self.done {
            return;
        }
        let Some(x) = self.next_unassigned() else {
            let map: Vec<Elem> = self.map.iter().map(|m| m.expect("total")).collect();
            // Full re-verification: pruning must never decide membership.
            if RingHom::new(self.a.clone(), self.b.clone(), map.clone()).is_ok() {
                self.results.push(map);
                if let Mode::Bijective { stop_at_first: true } = self.mode {
                    self.done = true;
                }
            }
            return;
        };
        for y in self.b.elements() {
            if self.done {
                return;
            }
            let depth = trail.len();
            if self.assign(x, y, trail) {
                self.dfs(trail);
            }
            self.undo(trail, depth);
            trail.truncate(depth);
        }
    }

    fn run(mut self, seed: &[(Elem, Elem)]) -> Vec<RingHom> {
        let mut trail = Vec::new();
        if !self.assign(0, 0, &mut trail) || !self.assign(self.a.one(), self.b.one(), &mut trail) {
            return Vec::new();
        }
        for &(x, y) in seed {
            if !self.assign(x, y, &mut trail) {
                return Vec::new();
            }
        }
        self.dfs(&mut trail);
        let (a, b) = (self.a.clone(), self.b.clone());
        self.results
            .into_iter()
            .map(|map| RingHom::new_unchecked(a.clone(), b.clone(), map))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{product, FinRing};

    fn arc(r: FinRing) -> Arc<FinRing> {
        Arc::new(r)
    }

    #[test]
    fn hom_counts_match_the_brute_force_oracle() {
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let z4 = arc(FinRing::cyclic(4).unwrap());
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let f4 = arc(FinRing::galois_field(2, 2).unwrap());
        let eps = arc(FinRing::poly_quotient(&FinRing::cyclic(2).unwrap(), &[0, 0, 1]).unwrap());
        let pool = [&z2, &z4, &z6, &f4, &eps];
        for a in pool {
            for b in pool {
                let fast = homs(a, b);
                let slow = brute_force_homs(a, b);
                assert_eq!(
                    fast.len(),
                    slow.len(),
                    "hom count mismatch {} -> {}",
                    a.label(),
                    b.label()
                );
                for h in &slow {
                    assert!(fast.iter().any(|g| g.map() == h.map()));
                }
            }
        }
    }

    #[test]
    fn forbidden_directions_are_empty() {
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let z4 = arc(FinRing::cyclic(4).unwrap());
        assert_eq!(homs(&z4, &z2).len(), 1);
        assert_eq!(homs(&z2, &z4).len(), 0);
    }

    #[test]
    fn identity_is_always_found() {
        for r in [
            arc(FinRing::cyclic(8).unwrap()),
            arc(FinRing::galois_field(3, 2).unwrap()),
        ] {
            assert!(homs(&r, &r).iter().any(|h| h.map() == RingHom::identity(&r).map()));
        }
    }

    #[test]
    fn crt_isomorphism_is_recovered() {
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let z3 = arc(FinRing::cyclic(3).unwrap());
        let (p, _, _) = product(&z2, &z3);
        let iso = first_isomorphism(&z6, &p).expect("CRT");
        assert!(iso.is_bijective());
        assert_eq!(isomorphisms(&z6, &p).len(), 1);
    }

    #[test]
    fn z4_and_dual_numbers_are_not_isomorphic() {
        let z4 = arc(FinRing::cyclic(4).unwrap());
        let eps = arc(FinRing::poly_quotient(&FinRing::cyclic(2).unwrap(), &[0, 0, 1]).unwrap());
        assert!(first_isomorphism(&z4, &eps).is_none());
    }

    #[test]
    fn frobenius_generates_the_automorphisms_of_f4() {
        let f4 = arc(FinRing::galois_field(2, 2).unwrap());
        let autos = automorphisms(&f4);
        assert_eq!(autos.len(), 2);
        let f9 = arc(FinRing::galois_field(3, 2).unwrap());
        assert_eq!(automorphisms(&f9).len(), 2);
        let f8 = arc(FinRing::galois_field(2, 3).unwrap());
        assert_eq!(automorphisms(&f8).len(), 3);
    }

    #[test]
    fn seeded_search_respects_the_seed() {
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let z6 = arc(FinRing::cyclic(6).unwrap());
        // Z/6 -> Z/6 with 1 -> 1 is the identity; seeding 3 -> 0 contradicts it.
        assert_eq!(homs_seeded(&z6, &z6, &[(3, 0)]).len(), 0);
        // The unique map Z/6 -> Z/2 sends 3 to 1.
        assert_eq!(homs_seeded(&z6, &z2, &[(3, 1)]).len(), 1);
        assert_eq!(homs_seeded(&z6, &z2, &[(3, 0)]).len(), 0);
    }
}
