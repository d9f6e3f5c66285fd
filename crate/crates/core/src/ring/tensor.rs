//! Tensor products, fiber products, and the collapse tests built on them.
//!
//! The tensor product `B (x)_A C` is computed as the quotient of the free
//! abelian group on pairs `(b, c)` by the biadditivity and balancing
//! relations, reduced by Smith normal form. Multiplication is induced on
//! canonical representatives through the tracked integral section, so the
//! construction is exact and independent of any truncation bound.

use super::{homs, isomorphisms, product, subring, Elem, FinRing, Ideal, RingHom};
use crate::error::{Error, Falsification, Result};
use crate::snf::FinitePresentation;
use std::sync::Arc;

/// Result of a tensor (pushout) construction.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub ring: Arc<FinRing>,
    /// `B -> B (x)_A C`, `b -> b (x) 1`.
    pub left: RingHom,
    /// `C -> B (x)_A C`, `c -> 1 (x) c`.
    pub right: RingHom,
    pres: FinitePresentation,
    invariants: Vec<i64>,
    c_order: usize,
}

impl TensorProduct {
    fn coords_to_index(&self, coords: &[i64]) -> Elem {
        coords
            .iter()
            .zip(&self.invariants)
            .fold(0, |acc, (&c, &m)| acc * m as usize + c.rem_euclid(m) as usize)
    }

    fn index_to_coords(&self, mut index: Elem) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .invariants
            .iter()
            .rev()
            .map(|&m| {
                let c = (index % m as usize) as i64;
                index /= m as usize;
                c
            })
            .collect();
        out.reverse();
        out
    }

    /// Index of the pure tensor `b (x) c`.
    pub fn pure(&self, b: Elem, c: Elem) -> Elem {
        let mut vec = vec![0i64; self.pres.ambient_rank()];
        vec[b * self.c_order + c] = 1;
        self.coords_to_index(&self.pres.project(&vec))
    }

    /// The multiplication map `B (x)_A B -> B` when both factors coincide.
    /// Its bijectivity is the collapse criterion for ring epimorphisms.
    pub fn fold_map(&self) -> Result<RingHom> {
        let b = self.left.source().clone();
        let c = self.right.source().clone();
        if b != c {
            return Err(Error::Precondition(
                "fold map requires both tensor factors to be the same ring".into(),
            ));
        }
        let t = self.ring.clone();
        let map: Vec<Elem> = (0..t.order())
            .map(|x| {
                let lift = self.pres.lift(&self.index_to_coords(x));
                let mut acc = 0;
                for (p, &coeff) in lift.iter().enumerate() {
                    if coeff == 0 {
                        continue;
                    }
                    let prod = b.mul(p / self.c_order, p % self.c_order);
                    let ord = b.additive_order(prod);
                    let k = coeff.rem_euclid(ord as i64) as usize;
                    acc = b.add(acc, b.scalar_mul(k, prod));
                }
                acc
            })
            .collect();
        RingHom::new(t, b, map)
    }
}

/// The pushout `B (x)_A C` of `f: A -> B` along `g: A -> C`.
pub fn tensor(f: &RingHom, g: &RingHom) -> Result<TensorProduct> {
    if f.source() != g.source() {
        return Err(Error::Precondition("tensor factors must share their source".into()));
    }
    let a = f.source();
    let b = f.target().clone();
    let c = g.target().clone();
    let (nb, nc) = (b.order(), c.order());
    let n = nb * nc;
    let col = |bb: Elem, cc: Elem| bb * nc + cc;

    let mut relations: Vec<Vec<i64>> = Vec::new();
    let mut rel3 = |p: usize, q: usize, r: usize| {
        let mut v = vec![0i64; n];
        v[p] += 1;
        v[q] -= 1;
        v[r] -= 1;
        if v.iter().any(|&x| x != 0) {
            relations.push(v);
        }
    };
    for x in 0..nb {
        for y in 0..nb {
            for z in 0..nc {
                rel3(col(b.add(x, y), z), col(x, z), col(y, z));
            }
        }
    }
    for x in 0..nb {
        for y in 0..nc {
            for z in 0..nc {
                rel3(col(x, c.add(y, z)), col(x, y), col(x, z));
            }
        }
    }
    for aa in a.elements() {
        for x in 0..nb {
            for y in 0..nc {
                let p = col(b.mul(f.apply(aa), x), y);
                let q = col(x, c.mul(g.apply(aa), y));
                if p != q {
                    let mut v = vec![0i64; n];
                    v[p] += 1;
                    v[q] -= 1;
                    relations.push(v);
                }
            }
        }
    }

    let pres = FinitePresentation::quotient(n, relations)?;
    let invariants = pres.invariants().to_vec();
    let m = pres.order().max(1);
    let k = invariants.len();

    let coords_to_index = |coords: &[i64]| -> Elem {
        coords
            .iter()
            .zip(&invariants)
            .fold(0, |acc, (&cc, &mm)| acc * mm as usize + cc.rem_euclid(mm) as usize)
    };
    let index_to_coords = |mut index: Elem| -> Vec<i64> {
        let mut out: Vec<i64> = invariants
            .iter()
            .rev()
            .map(|&mm| {
                let cc = (index % mm as usize) as i64;
                index /= mm as usize;
                cc
            })
            .collect();
        out.reverse();
        out
    };

    // Addition is coordinatewise in canonical coordinates.
    let add_t: Vec<Vec<Elem>> = (0..m)
        .map(|x| {
            let cx = index_to_coords(x);
            (0..m)
                .map(|y| {
                    let cy = index_to_coords(y);
                    let sum: Vec<i64> = cx.iter().zip(&cy).map(|(&p, &q)| p + q).collect();
                    coords_to_index(&sum)
                })
                .collect()
        })
        .collect();

    // Products of the canonical generators, via integral lifts and the
    // convolution of pure tensors.
    let lifts: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            let mut e = vec![0i64; k];
            e[i] = 1;
            pres.lift(&e)
        })
        .collect();
    let gen_products: Vec<Vec<Vec<i64>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut conv = vec![0i64; n];
                    for (p, &u) in lifts[i].iter().enumerate() {
                        if u == 0 {
                            continue;
                        }
                        for (q, &v) in lifts[j].iter().enumerate() {
                            if v == 0 {
                                continue;
                            }
                            let target =
                                col(b.mul(p / nc, q / nc), c.mul(p % nc, q % nc));
                            conv[target] += u * v;
                        }
                    }
                    pres.project(&conv)
                })
                .collect()
        })
        .collect();

    let mul_t: Vec<Vec<Elem>> = (0..m)
        .map(|x| {
            let cx = index_to_coords(x);
            (0..m)
                .map(|y| {
                    let cy = index_to_coords(y);
                    let mut acc = vec![0i64; k];
                    for i in 0..k {
                        if cx[i] == 0 {
                            continue;
                        }
                        for j in 0..k {
                            if cy[j] == 0 {
                                continue;
                            }
                            for (t, &gp) in gen_products[i][j].iter().enumerate() {
                                acc[t] += cx[i] * cy[j] * gp;
                            }
                        }
                    }
                    coords_to_index(&acc)
                })
                .collect()
        })
        .collect();

    let project_pure = |bb: Elem, cc: Elem| -> Elem {
        let mut v = vec![0i64; n];
        v[col(bb, cc)] = 1;
        coords_to_index(&pres.project(&v))
    };
    let one_t = project_pure(b.one(), c.one());
    let ring = Arc::new(FinRing::with_label(
        add_t,
        mul_t,
        one_t,
        format!("{} (x)_{} {}", b.label(), a.label(), c.label()),
    )?);
    let left = RingHom::new(
        b.clone(),
        ring.clone(),
        (0..nb).map(|bb| project_pure(bb, c.one())).collect(),
    )?;
    let right = RingHom::new(
        c.clone(),
        ring.clone(),
        (0..nc).map(|cc| project_pure(b.one(), cc)).collect(),
    )?;
    Ok(TensorProduct {
        ring,
        left,
        right,
        pres,
        invariants,
        c_order: nc,
    })
}

/// The fiber product `{(b, c) : f(b) = g(c)}` with its projections.
pub fn fiber_product(
    f: &RingHom,
    g: &RingHom,
) -> Result<(Arc<FinRing>, RingHom, RingHom)> {
    if f.target() != g.target() {
        return Err(Error::Precondition("fiber product factors must share their target".into()));
    }
    let b = f.source();
    let c = g.source();
    let (p, pr1, pr2) = product(b, c);
    let nc = c.order();
    let carrier: Vec<Elem> = p
        .elements()
        .filter(|&x| f.apply(x / nc) == g.apply(x % nc))
        .collect();
    let (sub, emb) = subring(&p, &carrier)?;
    let q1 = RingHom::compose(&pr1, &emb);
    let q2 = RingHom::compose(&pr2, &emb);
    Ok((sub, q1, q2))
}

/// Coequalizer of a parallel pair in commutative rings: the quotient of the
/// common target by the ideal generated by all differences.
pub fn ring_coequalizer(p1: &RingHom, p2: &RingHom) -> Result<(Arc<FinRing>, RingHom)> {
    if p1.source() != p2.source() || p1.target() != p2.target() {
        return Err(Error::Precondition("coequalizer needs a parallel pair".into()));
    }
    let b = p1.target();
    let diffs: Vec<Elem> = p1
        .source()
        .elements()
        .map(|x| b.sub(p1.apply(x), p2.apply(x)))
        .collect();
    let ideal = Ideal::generated_by(b, &diffs);
    let (q, surj) = super::quotient(b, &ideal);
    Ok((q, surj))
}

/// A homomorphism is an epimorphism of commutative rings exactly when the
/// fold map `B (x)_A B -> B` is an isomorphism.
pub fn is_ring_epi(f: &RingHom) -> Result<bool> {
    let t = tensor(f, f)?;
    if t.ring.order() != f.target().order() {
        return Ok(false);
    }
    Ok(t.fold_map()?.is_bijective())
}

/// Cokernel-pair test for the morphism dual to a ring surjection
/// `q: A ->> B`: form the fiber product `A x_B A`, coequalize its two
/// projections, and compare the result with `q`. True exactly when the dual
/// morphism is a regular monomorphism of affine schemes.
pub fn surjection_dual_is_regular_mono(q: &RingHom) -> Result<bool> {
    let (_, p1, p2) = fiber_product(q, q)?;
    let (coeq, c) = ring_coequalizer(&p1, &p2)?;
    // Regular exactly when the coequalizer is q itself up to a compatible
    // isomorphism.
    Ok(isomorphisms(&coeq, q.target())
        .into_iter()
        .any(|phi| RingHom::compose(&phi, &c) == *q))
}

/// Exhaustive pushout universal property check against every cocone whose
/// apex appears in `targets`.
pub fn verify_tensor_universal(
    t: &TensorProduct,
    f: &RingHom,
    g: &RingHom,
    targets: &[Arc<FinRing>],
) -> Result<(), Falsification> {
    for q in targets {
        let from_b = homs(f.target(), q);
        let from_c = homs(g.target(), q);
        let from_t = homs(&t.ring, q);
        for u in &from_b {
            for v in &from_c {
                if RingHom::compose(u, f) != RingHom::compose(v, g) {
                    continue;
                }
                let mediating = from_t
                    .iter()
                    .filter(|w| {
                        RingHom::compose(w, &t.left) == *u && RingHom::compose(w, &t.right) == *v
                    })
                    .count();
                if mediating != 1 {
                    return Err(Falsification::new(
                        "tensor-universal-property",
                        format!(
                            "cocone into {} has {} mediating maps",
                            q.label(),
                            mediating
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Exhaustive pullback universal property check against every cone whose
/// apex appears in `sources`.
pub fn verify_fiber_product_universal(
    p: &Arc<FinRing>,
    p1: &RingHom,
    p2: &RingHom,
    f: &RingHom,
    g: &RingHom,
    sources: &[Arc<FinRing>],
) -> Result<(), Falsification> {
    for q in sources {
        let to_b = homs(q, f.source());
        let to_c = homs(q, g.source());
        let to_p = homs(q, p);
        for u in &to_b {
            for v in &to_c {
                if RingHom::compose(f, u) != RingHom::compose(g, v) {
                    continue;
                }
                let mediating = to_p
                    .iter()
                    .filter(|w| {
                        RingHom::compose(p1, w) == *u && RingHom::compose(p2, w) == *v
                    })
                    .count();
                if mediating != 1 {
                    return Err(Falsification::new(
                        "fiber-product-universal-property",
                        format!("cone from {} has {} mediating maps", q.label(), mediating),
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{enumerate_rings, first_isomorphism};

    fn arc(r: FinRing) -> Arc<FinRing> {
        Arc::new(r)
    }

    fn canonical_hom(a: &Arc<FinRing>, b: &Arc<FinRing>) -> RingHom {
        homs(a, b).into_iter().next().expect("hom exists")
    }

    #[test]
    fn tensor_of_cyclic_rings_is_cyclic_of_the_gcd() {
        // Z/4 (x)_{Z/12} Z/6 = Z/2, matching Z/m (x)_Z Z/n = Z/gcd(m, n):
        // the balancing relations over Z/12 reduce to integer scaling.
        let z12 = arc(FinRing::cyclic(12).unwrap());
        let z4 = arc(FinRing::cyclic(4).unwrap());
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let f = canonical_hom(&z12, &z4);
        let g = canonical_hom(&z12, &z6);
        let t = tensor(&f, &g).unwrap();
        assert_eq!(t.ring.order(), 2);
        let z2 = arc(FinRing::cyclic(2).unwrap());
        assert!(first_isomorphism(&t.ring, &z2).is_some());
    }

    #[test]
    fn tensoring_with_the_base_is_the_identity() {
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let f = canonical_hom(&z6, &z2);
        let id = RingHom::identity(&z6);
        let t = tensor(&f, &id).unwrap();
        assert_eq!(t.ring.order(), 2);
        assert!(first_isomorphism(&t.ring, &z2).is_some());
    }

    #[test]
    fn collapse_certifies_ring_epimorphisms() {
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let quot = canonical_hom(&z6, &z2);
        assert!(is_ring_epi(&quot).unwrap());
        // An injective non-surjective map is not epi: Z/2 -> F_4.
        let f4 = arc(FinRing::galois_field(2, 2).unwrap());
        let incl = canonical_hom(&z2, &f4);
        assert!(!is_ring_epi(&incl).unwrap());
    }

    #[test]
    fn fiber_product_of_dual_number_augmentations_has_order_eight() {
        let z2 = FinRing::cyclic(2).unwrap();
        let eps = arc(FinRing::poly_quotient(&z2, &[0, 0, 1]).unwrap());
        let z2 = arc(z2);
        let aug = canonical_hom(&eps, &z2);
        let (p, p1, p2) = fiber_product(&aug, &aug).unwrap();
        assert_eq!(p.order(), 8);
        assert!(p1.is_surjective() && p2.is_surjective());
        // The result is local with a square-zero maximal ideal on two
        // generators.
        assert!(p.is_local());
        let nilp = p.nilpotents();
        assert_eq!(nilp.len(), 4);
        for &x in &nilp {
            for &y in &nilp {
                assert_eq!(p.mul(x, y), 0);
            }
        }
    }

    #[test]
    fn fiber_product_over_the_zero_ring_is_the_full_product() {
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let z3 = arc(FinRing::cyclic(3).unwrap());
        let zero = arc(FinRing::zero_ring());
        let f = canonical_hom(&z2, &zero);
        let g = canonical_hom(&z3, &zero);
        let (p, _, _) = fiber_product(&f, &g).unwrap();
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn diagonal_fiber_product_recovers_the_ring() {
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let id = RingHom::identity(&z6);
        let (p, _, _) = fiber_product(&id, &id).unwrap();
        assert_eq!(p.order(), 6);
        assert!(first_isomorphism(&p, &z6).is_some());
    }

    #[test]
    fn tensor_satisfies_its_universal_property_on_a_small_pool() {
        let z4 = arc(FinRing::cyclic(4).unwrap());
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let f = canonical_hom(&z4, &z2);
        let t = tensor(&f, &f).unwrap();
        let pool: Vec<Arc<FinRing>> = enumerate_rings(4).into_iter().map(Arc::new).collect();
        verify_tensor_universal(&t, &f, &f, &pool).unwrap();
    }

    #[test]
    fn fiber_product_satisfies_its_universal_property_on_a_small_pool() {
        let z2 = FinRing::cyclic(2).unwrap();
        let eps = arc(FinRing::poly_quotient(&z2, &[0, 0, 1]).unwrap());
        let z2 = arc(z2);
        let aug = canonical_hom(&eps, &z2);
        let (p, p1, p2) = fiber_product(&aug, &aug).unwrap();
        let pool: Vec<Arc<FinRing>> = enumerate_rings(4).into_iter().map(Arc::new).collect();
        verify_fiber_product_universal(&p, &p1, &p2, &aug, &aug, &pool).unwrap();
    }

    #[test]
    fn closed_quotients_pass_the_cokernel_pair_test() {
        let z4 = arc(FinRing::cyclic(4).unwrap());
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let q = canonical_hom(&z4, &z2);
        assert!(surjection_dual_is_regular_mono(&q).unwrap());
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let q2 = canonical_hom(&z6, &z2);
        assert!(surjection_dual_is_regular_mono(&q2).unwrap());
    }

    #[test]
    fn epi_collapse_also_certifies_z6_to_z2() {
        // Doubles as the example that the tensor over Z/6 of two copies of
        // Z/2 is Z/2 itself.
        let z6 = arc(FinRing::cyclic(6).unwrap());
        let z2 = arc(FinRing::cyclic(2).unwrap());
        let q = canonical_hom(&z6, &z2);
        let t = tensor(&q, &q).unwrap();
        assert_eq!(t.ring.order(), 2);
        assert!(is_ring_epi(&q).unwrap());
    }
}
