//! Functors, natural transformations, and equivalence checking.

use super::{limits, FinCategory, MorId, ObjId};
use crate::error::{Error, Result};
use std::sync::Arc;

/// A functor between finite categories, given by its object and morphism
/// tables.
#[derive(Clone, Debug)]
pub struct FunctorData {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
}

impl FunctorData {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<FunctorData> {
        let f = FunctorData { source, target, object_map, morphism_map };
        f.verify()?;
        Ok(f)
    }

    pub fn identity(c: &Arc<FinCategory>) -> FunctorData {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
        }
    }

    pub fn apply_obj(&self, x: ObjId) -> ObjId {
        self.object_map[x]
    }

    pub fn apply_mor(&self, m: MorId) -> MorId {
        self.morphism_map[m]
    }

    /// Endpoint compatibility, preservation of identities, and preservation
    /// of every composite (exhaustive).
    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.object_map.len() != s.num_objects() || self.morphism_map.len() != s.num_morphisms()
        {
            return Err(Error::NotAFunctor("table sizes do not match the source".into()));
        }
        if let Some(&bad) = self.object_map.iter().find(|&&x| x >= t.num_objects()) {
            return Err(Error::NotAFunctor(format!("object image {bad} out of range")));
        }
        for m in s.morphisms() {
            let fm = self.morphism_map[m];
            if fm >= t.num_morphisms()
                || t.dom(fm) != self.object_map[s.dom(m)]
                || t.cod(fm) != self.object_map[s.cod(m)]
            {
                return Err(Error::NotAFunctor(format!(
                    "image of morphism {m} has wrong endpoints"
                )));
            }
        }
        for x in s.objects() {
            if self.morphism_map[s.identity(x)] != t.identity(self.object_map[x]) {
                return Err(Error::NotAFunctor(format!("identity of {x} not preserved")));
            }
        }
        // Compare F(g . f) with F(g) . F(f) for every composable pair.
        let bad_pair = crate::par::find_first(s.num_morphisms(), |f| {
            for b in s.objects() {
                for &g in s.hom(s.cod(f), b) {
                    if self.morphism_map[s.compose(g, f)]
                        != t.compose(self.morphism_map[g], self.morphism_map[f])
                    {
                        return true;
                    }
                }
            }
            false
        });
        if let Some(f) = bad_pair {
            return Err(Error::NotAFunctor(format!(
                "composition not preserved at some pair through morphism {f}"
            )));
        }
        Ok(())
    }

    /// `G . F`, verified by construction of the tables.
    pub fn compose(g: &FunctorData, f: &FunctorData) -> FunctorData {
        FunctorData {
            source: f.source.clone(),
            target: g.target.clone(),
            object_map: f.object_map.iter().map(|&x| g.object_map[x]).collect(),
            morphism_map: f.morphism_map.iter().map(|&m| g.morphism_map[m]).collect(),
        }
    }
}

/// A natural transformation between two parallel functors, by components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransData {
    pub components: Vec<MorId>,
}

impl NatTransData {
    /// Checks every naturality square `G(m) . c_dom = c_cod . F(m)`.
    pub fn verify(&self, f: &FunctorData, g: &FunctorData) -> Result<()> {
        let s = &f.source;
        let t = &f.target;
        if self.components.len() != s.num_objects() {
            return Err(Error::NotNatural("one component per object required".into()));
        }
        for x in s.objects() {
            let c = self.components[x];
            if t.dom(c) != f.object_map[x] || t.cod(c) != g.object_map[x] {
                return Err(Error::NotNatural(format!("component at {x} has wrong endpoints")));
            }
        }
        for m in s.morphisms() {
            let (x, y) = (s.dom(m), s.cod(m));
            let lhs = t.compose(g.morphism_map[m], self.components[x]);
            let rhs = t.compose(self.components[y], f.morphism_map[m]);
            if lhs != rhs {
                return Err(Error::NotNatural(format!(
                    "naturality square fails at morphism {m}"
                )));
            }
        }
        Ok(())
    }
}

/// All natural transformations `F => G`, found by backtracking over
/// components with incremental naturality checks. With `invertible_only`,
/// restricts components to isomorphisms (natural isomorphisms).
pub fn natural_transformations(
    f: &FunctorData,
    g: &FunctorData,
    invertible_only: bool,
) -> Vec<NatTransData> {
    assert!(Arc::ptr_eq(&f.source, &g.source) && Arc::ptr_eq(&f.target, &g.target));
    let s = &f.source;
    let t = &f.target;
    let n = s.num_objects();
    // Component domains, pre-filtered by the naturality squares of
    // endomorphisms (cheap and often very restrictive).
    let domains: Vec<Vec<MorId>> = (0..n)
        .map(|x| {
            t.hom(f.object_map[x], g.object_map[x])
                .iter()
                .copied()
                .filter(|&c| !invertible_only || limits::is_isomorphism(t, c))
                .filter(|&c| {
                    s.hom(x, x).iter().all(|&m| {
                        t.compose(g.morphism_map[m], c) == t.compose(c, f.morphism_map[m])
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<MorId> = Vec::new();

    fn dfs(
        s: &FinCategory,
        t: &FinCategory,
        f: &FunctorData,
        g: &FunctorData,
        domains: &[Vec<MorId>],
        chosen: &mut Vec<MorId>,
        out: &mut Vec<NatTransData>,
    ) {
        let x = chosen.len();
        if x == domains.len() {
            out.push(NatTransData { components: chosen.clone() });
            return;
        }
        'cand: for &c in &domains[x] {
            for prev in 0..x {
                for &m in s.hom(prev, x) {
                    if t.compose(g.morphism_map[m], chosen[prev])
                        != t.compose(c, f.morphism_map[m])
                    {
                        continue 'cand;
                    }
                }
                for &m in s.hom(x, prev) {
                    if t.compose(g.morphism_map[m], c)
                        != t.compose(chosen[prev], f.morphism_map[m])
                    {
                        continue 'cand;
                    }
                }
            }
            chosen.push(c);
            dfs(s, t, f, g, domains, chosen, out);
            chosen.pop();
        }
    }

    dfs(s, t, f, g, &domains, &mut chosen, &mut out);
    for nt in &out {
        debug_assert!(nt.verify(f, g).is_ok());
    }
    out
}

/// All invertible natural transformations `id => id` of a category.
pub fn aut_of_identity(c: &Arc<FinCategory>) -> Vec<NatTransData> {
    let id = FunctorData::identity(c);
    natural_transformations(&id, &id, true)
}

/// Verdict of an equivalence check, with failure witnesses.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub faithful: bool,
    pub full: bool,
    /// `(a, b)` on which the hom-map failed, if any.
    pub hom_failure: Option<(ObjId, ObjId)>,
    pub essentially_surjective: bool,
    /// Target object missing from the essential image, if any.
    pub missing_object: Option<ObjId>,
    /// For each target object, a source object whose image is isomorphic.
    pub preimages: Vec<Option<ObjId>>,
}

impl EquivalenceReport {
    pub fn is_equivalence(&self) -> bool {
        self.faithful && self.full && self.essentially_surjective
    }
}

/// Fully-faithfulness (bijectivity of every hom-map) and essential
/// surjectivity, decided exhaustively.
pub fn check_equivalence(f: &FunctorData) -> EquivalenceReport {
    let s = &f.source;
    let t = &f.target;
    let mut faithful = true;
    let mut full = true;
    let mut hom_failure = None;
    'pairs: for a in s.objects() {
        for b in s.objects() {
            let images: Vec<MorId> = s.hom(a, b).iter().map(|&m| f.morphism_map[m]).collect();
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() < images.len() {
                faithful = false;
                hom_failure = Some((a, b));
                break 'pairs;
            }
            let target_hom = t.hom(f.object_map[a], f.object_map[b]);
            if sorted.len() != target_hom.len() {
                full = false;
                hom_failure = Some((a, b));
                break 'pairs;
            }
        }
    }
    let preimages: Vec<Option<ObjId>> = t
        .objects()
        .map(|y| {
            s.objects()
                .find(|&x| limits::are_isomorphic(t, f.object_map[x], y).is_some())
        })
        .collect();
    let missing_object = preimages.iter().position(|p| p.is_none());
    EquivalenceReport {
        faithful,
        full,
        hom_failure,
        essentially_surjective: missing_object.is_none(),
        missing_object,
        preimages,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::build::{chain, one_object_group};

    #[test]
    fn identity_functor_is_an_equivalence() {
        let c = Arc::new(chain(3));
        let id = FunctorData::identity(&c);
        id.verify().unwrap();
        let report = check_equivalence(&id);
        assert!(report.is_equivalence());
    }

    #[test]
    fn constant_functor_is_not_fully_faithful() {
        let c = Arc::new(chain(2));
        let pt = Arc::new(chain(1));
        let constant = FunctorData::new(
            c.clone(),
            pt.clone(),
            vec![0, 0],
            vec![0; c.num_morphisms()],
        )
        .unwrap();
        let report = check_equivalence(&constant);
        assert!(!report.faithful);
        assert!(!report.is_equivalence());
    }

    #[test]
    fn poset_identity_automorphisms_are_trivial() {
        let c = Arc::new(chain(4));
        let auts = aut_of_identity(&c);
        assert_eq!(auts.len(), 1);
        assert_eq!(auts[0].components, (0..4).map(|x| c.identity(x)).collect::<Vec<_>>());
    }

    #[test]
    fn one_object_group_identity_automorphisms_are_the_center() {
        // S_3: trivial center.
        // Elements: e=0, r=1, r2=2, s=3, rs=4, r2s=5 with r^3 = s^2 = e,
        // s r = r^2 s.
        let s3 = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 4, 5, 3],
            vec![2, 0, 1, 5, 3, 4],
            vec![3, 5, 4, 0, 2, 1],
            vec![4, 3, 5, 1, 0, 2],
            vec![5, 4, 3, 2, 1, 0],
        ];
        let c = Arc::new(one_object_group(&s3, 0).unwrap());
        assert_eq!(aut_of_identity(&c).len(), 1);

        // Z/4: center of order 4.
        let z4 = vec![
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 0],
            vec![2, 3, 0, 1],
            vec![3, 0, 1, 2],
        ];
        let c = Arc::new(one_object_group(&z4, 0).unwrap());
        assert_eq!(aut_of_identity(&c).len(), 4);
    }

    #[test]
    fn natural_transformations_between_chain_endofunctors() {
        // On the chain 0 <= 1, the constant-at-1 endofunctor receives a
        // unique transformation from the identity.
        let c = Arc::new(chain(2));
        let id1 = c.identity(1);
        let step = c.hom(0, 1)[0];
        let const1 = FunctorData::new(c.clone(), c.clone(), vec![1, 1], {
            let mut m = vec![0; c.num_morphisms()];
            for mor in c.morphisms() {
                m[mor] = id1;
            }
            m
        })
        .unwrap();
        let id = FunctorData::identity(&c);
        let nts = natural_transformations(&id, &const1, false);
        assert_eq!(nts.len(), 1);
        assert_eq!(nts[0].components, vec![step, id1]);
    }
}
