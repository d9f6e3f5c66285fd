//! Categorical predicates and (co)limits by exhaustive search.
//!
//! Absence of a limit in a finite category is a legitimate answer, not an
//! error: every candidate is scanned and each returned construction has been
//! verified against every competing cone or cocone in the category.

use super::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::par;

/// True iff `f . g = f . h` implies `g = h` for all parallel pairs.
/// Decided by composing `f` with every incoming morphism and checking the
/// post-composition map for collisions.
pub fn is_mono(c: &FinCategory, f: MorId) -> bool {
    let x = c.dom(f);
    !par::any_range(c.num_objects(), |w| {
        let incoming = c.hom(w, x);
        let mut images: Vec<MorId> = incoming.iter().map(|&g| c.compose(f, g)).collect();
        images.sort_unstable();
        images.windows(2).any(|w| w[0] == w[1])
    })
}

/// Dual of [`is_mono`].
pub fn is_epi(c: &FinCategory, f: MorId) -> bool {
    let y = c.cod(f);
    !par::any_range(c.num_objects(), |w| {
        let outgoing = c.hom(y, w);
        let mut images: Vec<MorId> = outgoing.iter().map(|&g| c.compose(g, f)).collect();
        images.sort_unstable();
        images.windows(2).any(|w| w[0] == w[1])
    })
}

/// The two-sided inverse of `f`, if it has one.
pub fn inverse(c: &FinCategory, f: MorId) -> Option<MorId> {
    let (x, y) = (c.dom(f), c.cod(f));
    c.hom(y, x)
        .iter()
        .copied()
        .find(|&u| c.compose(u, f) == c.identity(x) && c.compose(f, u) == c.identity(y))
}

pub fn is_isomorphism(c: &FinCategory, f: MorId) -> bool {
    inverse(c, f).is_some()
}

pub fn are_isomorphic(c: &FinCategory, x: ObjId, y: ObjId) -> Option<MorId> {
    c.hom(x, y).iter().copied().find(|&f| is_isomorphism(c, f))
}

/// Objects with exactly one morphism to every object.
pub fn initial_objects(c: &FinCategory) -> Vec<ObjId> {
    c.objects()
        .filter(|&x| c.objects().all(|y| c.hom(x, y).len() == 1))
        .collect()
}

pub fn terminal_objects(c: &FinCategory) -> Vec<ObjId> {
    c.objects()
        .filter(|&x| c.objects().all(|y| c.hom(y, x).len() == 1))
        .collect()
}

/// The canonical initial object (smallest index), or an error.
pub fn initial_object(c: &FinCategory) -> Result<ObjId> {
    initial_objects(c).into_iter().next().ok_or(Error::NoInitialObject)
}

/// All monomorphisms with codomain `x`.
pub fn monos_into(c: &FinCategory, x: ObjId) -> Vec<MorId> {
    let candidates = c.morphisms_into(x);
    let flags = par::map_slice(&candidates, |&m| is_mono(c, m));
    candidates
        .into_iter()
        .zip(flags)
        .filter_map(|(m, keep)| keep.then_some(m))
        .collect()
}

/// Groups monomorphisms into `x` by mutual factorization: `m ~ m'` iff each
/// factors through the other. Every class is one subobject of `x`.
pub fn subobject_classes(c: &FinCategory, x: ObjId) -> Vec<Vec<MorId>> {
    let monos = monos_into(c, x);
    let factors = |m: MorId, m2: MorId| -> bool {
        c.hom(c.dom(m), c.dom(m2))
            .iter()
            .any(|&u| c.compose(m2, u) == m)
    };
    let mut classes: Vec<Vec<MorId>> = Vec::new();
    for m in monos {
        match classes
            .iter_mut()
            .find(|cl| factors(m, cl[0]) && factors(cl[0], m))
        {
            Some(cl) => cl.push(m),
            None => classes.push(vec![m]),
        }
    }
    classes
}

/// Simple objects: non-initial objects whose monomorphisms all have initial
/// source or are isomorphisms. Requires an initial object.
pub fn simple_objects(c: &FinCategory) -> Result<Vec<ObjId>> {
    initial_object(c)?;
    let initials = initial_objects(c);
    let is_initial = |x: ObjId| initials.contains(&x);
    let flags = par::map_range(c.num_objects(), |x| {
        if is_initial(x) {
            return false;
        }
        monos_into(c, x)
            .into_iter()
            .all(|m| is_initial(c.dom(m)) || is_isomorphism(c, m))
    });
    Ok(c.objects().filter(|&x| flags[x]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cospan {
    pub apex: ObjId,
    pub left: MorId,
    pub right: MorId,
}

/// Verifies that `(apex, i1, i2)` is universal among cocones over
/// `(f: x -> y1, g: x -> y2)`.
fn cocone_is_universal(c: &FinCategory, f: MorId, g: MorId, cand: &Cospan) -> bool {
    let (y1, y2) = (c.cod(f), c.cod(g));
    par::all_range(c.num_objects(), |q| {
        for &j1 in c.hom(y1, q) {
            for &j2 in c.hom(y2, q) {
                if c.compose(j1, f) != c.compose(j2, g) {
                    continue;
                }
                let mediating = c
                    .hom(cand.apex, q)
                    .iter()
                    .filter(|&&u| {
                        c.compose(u, cand.left) == j1 && c.compose(u, cand.right) == j2
                    })
                    .count();
                if mediating != 1 {
                    return false;
                }
            }
        }
        true
    })
}

/// Pushout of `f: x -> y1` and `g: x -> y2`, certified against every cocone
/// in the category. `None` is a definitive "does not exist here".
pub fn pushout(c: &FinCategory, f: MorId, g: MorId) -> Option<Cospan> {
    assert_eq!(c.dom(f), c.dom(g), "pushout needs a common source");
    let (y1, y2) = (c.cod(f), c.cod(g));
    for apex in c.objects() {
        for &i1 in c.hom(y1, apex) {
            for &i2 in c.hom(y2, apex) {
                if c.compose(i1, f) != c.compose(i2, g) {
                    continue;
                }
                let cand = Cospan { apex, left: i1, right: i2 };
                if cocone_is_universal(c, f, g, &cand) {
                    return Some(cand);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub apex: ObjId,
    pub left: MorId,
    pub right: MorId,
}

fn cone_is_universal(c: &FinCategory, f: MorId, g: MorId, cand: &Span) -> bool {
    let (y1, y2) = (c.dom(f), c.dom(g));
    par::all_range(c.num_objects(), |q| {
        for &j1 in c.hom(q, y1) {
            for &j2 in c.hom(q, y2) {
                if c.compose(f, j1) != c.compose(g, j2) {
                    continue;
                }
                let mediating = c
                    .hom(q, cand.apex)
                    .iter()
                    .filter(|&&u| {
                        c.compose(cand.left, u) == j1 && c.compose(cand.right, u) == j2
                    })
                    .count();
                if mediating != 1 {
                    return false;
                }
            }
        }
        true
    })
}

/// Pullback of `f: y1 -> x` and `g: y2 -> x`, certified against every cone.
pub fn pullback(c: &FinCategory, f: MorId, g: MorId) -> Option<Span> {
    assert_eq!(c.cod(f), c.cod(g), "pullback needs a common target");
    let (y1, y2) = (c.dom(f), c.dom(g));
    for apex in c.objects() {
        for &p1 in c.hom(apex, y1) {
            for &p2 in c.hom(apex, y2) {
                if c.compose(f, p1) != c.compose(g, p2) {
                    continue;
                }
                let cand = Span { apex, left: p1, right: p2 };
                if cone_is_universal(c, f, g, &cand) {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// The unique mediating morphism from the cone `(q, u, v)` into a verified
/// pullback. `None` if the cone does not commute.
pub fn pullback_mediator(c: &FinCategory, f: MorId, g: MorId, pb: &Span, u: MorId, v: MorId) -> Option<MorId> {
    if c.compose(f, u) != c.compose(g, v) {
        return None;
    }
    let q = c.dom(u);
    c.hom(q, pb.apex)
        .iter()
        .copied()
        .find(|&w| c.compose(pb.left, w) == u && c.compose(pb.right, w) == v)
}

/// Equalizer of the parallel pair `(g1, g2): y -> z`, certified against
/// every fork in the category.
pub fn equalizer(c: &FinCategory, g1: MorId, g2: MorId) -> Option<(ObjId, MorId)> {
    assert_eq!(c.dom(g1), c.dom(g2), "equalizer needs a parallel pair");
    assert_eq!(c.cod(g1), c.cod(g2), "equalizer needs a parallel pair");
    let y = c.dom(g1);
    for e in c.objects() {
        for &m in c.hom(e, y) {
            if c.compose(g1, m) != c.compose(g2, m) {
                continue;
            }
            if equalizes_universally(c, g1, g2, m) {
                return Some((e, m));
            }
        }
    }
    None
}

fn equalizes_universally(c: &FinCategory, g1: MorId, g2: MorId, m: MorId) -> bool {
    if c.compose(g1, m) != c.compose(g2, m) {
        return false;
    }
    let y = c.dom(g1);
    let e = c.dom(m);
    par::all_range(c.num_objects(), |q| {
        for &h in c.hom(q, y) {
            if c.compose(g1, h) != c.compose(g2, h) {
                continue;
            }
            let mediating = c
                .hom(q, e)
                .iter()
                .filter(|&&u| c.compose(m, u) == h)
                .count();
            if mediating != 1 {
                return false;
            }
        }
        true
    })
}

/// True iff `f` is an equalizer of some parallel pair of the category.
///
/// First tries the cokernel-pair route: push out `f` along itself and test
/// `f` against the equalizer of the two injections. When the pushout does
/// not exist in this category, falls back to an exhaustive scan over all
/// parallel pairs out of the codomain.
pub fn is_regular_mono(c: &FinCategory, f: MorId) -> bool {
    if is_isomorphism(c, f) {
        return true;
    }
    if let Some(cp) = pushout(c, f, f) {
        return equalizes_universally(c, cp.left, cp.right, f);
    }
    let y = c.cod(f);
    for z in c.objects() {
        let outgoing = c.hom(y, z);
        for &g1 in outgoing {
            for &g2 in outgoing {
                if g1 == g2 {
                    continue;
                }
                if equalizes_universally(c, g1, g2, f) {
                    return true;
                }
            }
        }
    }
    false
}

/// Verifies that `(i1: a -> x, i2: b -> x)` exhibit `x` as the coproduct of
/// `a` and `b`.
pub fn is_coproduct_cocone(c: &FinCategory, i1: MorId, i2: MorId) -> bool {
    assert_eq!(c.cod(i1), c.cod(i2));
    let (a, b, x) = (c.dom(i1), c.dom(i2), c.cod(i1));
    par::all_range(c.num_objects(), |q| {
        for &j1 in c.hom(a, q) {
            for &j2 in c.hom(b, q) {
                let mediating = c
                    .hom(x, q)
                    .iter()
                    .filter(|&&u| c.compose(u, i1) == j1 && c.compose(u, i2) == j2)
                    .count();
                if mediating != 1 {
                    return false;
                }
            }
        }
        true
    })
}

/// Connectedness: `x` cannot be written as a coproduct of two non-initial
/// objects. Initial objects are not connected by convention.
pub fn is_connected(c: &FinCategory, x: ObjId) -> bool {
    let initials = initial_objects(c);
    if initials.contains(&x) {
        return false;
    }
    for a in c.objects() {
        if initials.contains(&a) {
            continue;
        }
        for b in a..c.num_objects() {
            if initials.contains(&b) {
                continue;
            }
            for &i1 in c.hom(a, x) {
                for &i2 in c.hom(b, x) {
                    if is_coproduct_cocone(c, i1, i2) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::build::{chain, one_object_group, poset};

    #[test]
    fn poset_morphisms_are_mono_and_epi_but_rarely_regular() {
        let c = chain(3);
        for m in c.morphisms() {
            assert!(is_mono(&c, m));
            assert!(is_epi(&c, m));
        }
        // Non-identity morphisms in a chain are not regular monos: the only
        // parallel pairs are equal pairs, whose equalizer is the identity.
        let f02 = c.hom(0, 2)[0];
        assert!(!is_regular_mono(&c, f02));
        assert!(is_regular_mono(&c, c.identity(1)));
    }

    #[test]
    fn identities_are_isomorphisms() {
        let c = chain(2);
        assert!(is_isomorphism(&c, c.identity(0)));
        let step = c.hom(0, 1)[0];
        assert!(!is_isomorphism(&c, step));
    }

    #[test]
    fn chain_has_initial_and_terminal_ends() {
        let c = chain(3);
        assert_eq!(initial_objects(&c), vec![0]);
        assert_eq!(terminal_objects(&c), vec![2]);
    }

    #[test]
    fn diamond_poset_pushout_is_the_top() {
        // 0 < 1, 0 < 2, 1 < 3, 2 < 3.
        let rel = vec![
            vec![true, true, true, true],
            vec![false, true, false, true],
            vec![false, false, true, true],
            vec![false, false, false, true],
        ];
        let c = poset(&rel).unwrap();
        let f = c.hom(0, 1)[0];
        let g = c.hom(0, 2)[0];
        let po = pushout(&c, f, g).expect("top of the diamond");
        assert_eq!(po.apex, 3);
        let pb = pullback(&c, c.hom(1, 3)[0], c.hom(2, 3)[0]).expect("bottom");
        assert_eq!(pb.apex, 0);
    }

    #[test]
    fn equalizer_of_identity_pair_is_the_object() {
        let c = chain(2);
        let id1 = c.identity(1);
        let (e, m) = equalizer(&c, id1, id1).expect("identity equalizer");
        assert_eq!(e, 1);
        assert!(is_isomorphism(&c, m));
    }

    #[test]
    fn group_morphisms_are_all_regular() {
        // Z/3 as a one-object category: every morphism is invertible.
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let c = one_object_group(&table, 0).unwrap();
        for m in c.morphisms() {
            assert!(is_isomorphism(&c, m));
            assert!(is_regular_mono(&c, m));
        }
    }
}
