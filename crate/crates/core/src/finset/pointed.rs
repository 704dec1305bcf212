//! Finite pointed sets and basepoint-preserving maps.
//!
//! The coproduct is the wedge: a disjoint union with all basepoints glued to
//! a single point labeled [`WEDGE_POINT`]. The one-point set is a zero
//! object, so every copower of the terminal object collapses to a point and
//! the category is not extensive.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{BaseCategory, Cocone, CoconeOf, Cone, ConeOf, PullbackOf, PullbackSquare};

use super::{canonical_labels, odometer, tag_label, FinMap, FinSet, FinSetObj};

/// Label of the glued basepoint of a wedge.
pub const WEDGE_POINT: &str = "*";

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedObj {
    set: FinSetObj,
    base: u32,
}

impl PointedObj {
    pub fn new(set: FinSetObj, basepoint: &str) -> Result<Self> {
        let base = set.position(basepoint).ok_or_else(|| Error::UnknownLabel {
            label: basepoint.to_string(),
            context: format!("pointed set {}", set.id()),
        })? as u32;
        Ok(PointedObj { set, base })
    }

    pub fn set(&self) -> &FinSetObj {
        &self.set
    }

    pub fn basepoint(&self) -> &str {
        self.set.label(self.base as usize)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn id(&self) -> String {
        format!("{}@{}", self.set.id(), self.basepoint())
    }
}

impl fmt::Debug for PointedObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedMap {
    map: FinMap,
    src_base: u32,
    dst_base: u32,
}

impl PointedMap {
    pub fn new(src: &PointedObj, dst: &PointedObj, map: FinMap) -> Result<Self> {
        if map.src() != &src.set || map.dst() != &dst.set {
            return Err(Error::boundary("pointed map: underlying map has the wrong boundary"));
        }
        if map.image_index(src.base as usize) != dst.base as usize {
            return Err(Error::boundary(format!(
                "pointed map {map:?} does not preserve the basepoint"
            )));
        }
        Ok(PointedMap {
            map,
            src_base: src.base,
            dst_base: dst.base,
        })
    }

    pub fn underlying(&self) -> &FinMap {
        &self.map
    }

    pub fn src(&self) -> PointedObj {
        PointedObj {
            set: self.map.src().clone(),
            base: self.src_base,
        }
    }

    pub fn dst(&self) -> PointedObj {
        PointedObj {
            set: self.map.dst().clone(),
            base: self.dst_base,
        }
    }

    fn wrap(map: FinMap, src_base: u32, dst_base: u32) -> Self {
        debug_assert_eq!(map.image_index(src_base as usize), dst_base as usize);
        PointedMap {
            map,
            src_base,
            dst_base,
        }
    }
}

impl fmt::Debug for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (based)", self.map)
    }
}

/// The category of finite pointed sets; has a zero object and is not extensive.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FinPointedSet;

impl FinPointedSet {
    /// `{*, a, b, ...}` with `n` elements, based at `*`. `n` must be positive.
    pub fn standard(n: usize) -> PointedObj {
        assert!(n > 0, "a pointed set has at least its basepoint");
        let mut labels = vec![WEDGE_POINT.to_string()];
        labels.extend(canonical_labels(n - 1));
        let set = FinSetObj::new(labels).expect("standard labels are distinct");
        PointedObj::new(set, WEDGE_POINT).expect("basepoint present")
    }

    fn sets(family: &[PointedObj]) -> Vec<FinSetObj> {
        family.iter().map(|x| x.set.clone()).collect()
    }
}

impl BaseCategory for FinPointedSet {
    type Obj = PointedObj;
    type Mor = PointedMap;

    fn name(&self) -> String {
        "pointed".into()
    }

    fn obj_id(&self, x: &PointedObj) -> String {
        x.id()
    }

    fn size_hint(&self, x: &PointedObj) -> usize {
        x.len()
    }

    fn dom(&self, f: &PointedMap) -> PointedObj {
        f.src()
    }

    fn cod(&self, f: &PointedMap) -> PointedObj {
        f.dst()
    }

    fn identity(&self, x: &PointedObj) -> PointedMap {
        PointedMap::wrap(FinMap::identity(&x.set), x.base, x.base)
    }

    fn compose(&self, f: &PointedMap, g: &PointedMap) -> Result<PointedMap> {
        if f.dst() != g.src() {
            return Err(Error::boundary("pointed maps are not composable"));
        }
        Ok(PointedMap::wrap(f.map.then(&g.map)?, f.src_base, g.dst_base))
    }

    fn product(&self, family: &[PointedObj]) -> ConeOf<Self> {
        let cone = FinSet.product(&Self::sets(family));
        let base = (0..cone.apex.len())
            .find(|&e| {
                cone.legs
                    .iter()
                    .zip(family)
                    .all(|(p, x)| p.table()[e] == x.base)
            })
            .expect("tuple of basepoints exists") as u32;
        let legs = cone
            .legs
            .into_iter()
            .zip(family)
            .map(|(p, x)| PointedMap::wrap(p, base, x.base))
            .collect();
        Cone {
            apex: PointedObj { set: cone.apex, base },
            legs,
        }
    }

    fn tuple(&self, src: &PointedObj, product: &ConeOf<Self>, legs: &[PointedMap]) -> Result<PointedMap> {
        let cone = Cone {
            apex: product.apex.set.clone(),
            legs: product.legs.iter().map(|p| p.map.clone()).collect(),
        };
        let raw: Vec<FinMap> = legs.iter().map(|l| l.map.clone()).collect();
        let m = FinSet.tuple(&src.set, &cone, &raw)?;
        PointedMap::new(src, &product.apex, m)
    }

    fn coproduct(&self, family: &[PointedObj]) -> CoconeOf<Self> {
        let mut labels = vec![WEDGE_POINT.to_string()];
        for (k, x) in family.iter().enumerate() {
            for (i, l) in x.set.labels().iter().enumerate() {
                if i as u32 != x.base {
                    labels.push(tag_label(k, l));
                }
            }
        }
        let set = FinSetObj::new(labels).expect("wedge labels are distinct");
        let apex = PointedObj::new(set, WEDGE_POINT).expect("wedge point present");
        let legs = family
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let m = FinMap::from_fn(&x.set, &apex.set, |l| {
                    if x.set.position(l) == Some(x.base as usize) {
                        WEDGE_POINT.to_string()
                    } else {
                        tag_label(k, l)
                    }
                })
                .expect("coprojection lands in the wedge");
                PointedMap::wrap(m, x.base, apex.base)
            })
            .collect();
        Cocone { apex, legs }
    }

    fn cotuple(&self, coproduct: &CoconeOf<Self>, dst: &PointedObj, legs: &[PointedMap]) -> Result<PointedMap> {
        if legs.len() != coproduct.legs.len() {
            return Err(Error::boundary("cotuple: leg count differs from the wedge arity"));
        }
        let apex = &coproduct.apex;
        let mut table: Vec<Option<u32>> = vec![None; apex.len()];
        table[apex.base as usize] = Some(dst.base);
        for (l, i) in legs.iter().zip(&coproduct.legs) {
            if l.src() != i.src() || l.dst() != *dst {
                return Err(Error::boundary(format!("cotuple: leg {l:?} does not fit the wedge")));
            }
            for a in 0..l.map.src().len() {
                if a as u32 == l.src_base {
                    continue;
                }
                let slot = &mut table[i.map.image_index(a)];
                if slot.is_some() {
                    return Err(Error::internal("cotuple: wedge summands overlap"));
                }
                *slot = Some(l.map.table()[a]);
            }
        }
        let table = table
            .into_iter()
            .map(|t| t.ok_or_else(|| Error::internal("cotuple: summands do not cover the wedge")))
            .collect::<Result<Vec<_>>>()?;
        let m = FinMap::from_table(&apex.set, &dst.set, table)?;
        PointedMap::new(apex, dst, m)
    }

    fn pullback(&self, f: &PointedMap, g: &PointedMap) -> Result<PullbackOf<Self>> {
        if f.dst() != g.dst() {
            return Err(Error::boundary("pullback of pointed maps with different codomains"));
        }
        let pb = FinSet.pullback(&f.map, &g.map)?;
        let base = (0..pb.apex.len())
            .find(|&e| pb.left.table()[e] == f.src_base && pb.right.table()[e] == g.src_base)
            .ok_or_else(|| Error::internal("pullback lost the basepoint pair"))? as u32;
        Ok(PullbackSquare {
            apex: PointedObj { set: pb.apex, base },
            left: PointedMap::wrap(pb.left, base, f.src_base),
            right: PointedMap::wrap(pb.right, base, g.src_base),
        })
    }

    fn pullback_mediator(&self, pb: &PullbackOf<Self>, h: &PointedMap, k: &PointedMap) -> Result<PointedMap> {
        let raw = PullbackSquare {
            apex: pb.apex.set.clone(),
            left: pb.left.map.clone(),
            right: pb.right.map.clone(),
        };
        let m = FinSet.pullback_mediator(&raw, &h.map, &k.map)?;
        PointedMap::new(&h.src(), &pb.apex, m)
    }

    fn enumerate_objects(&self, bound: usize) -> Vec<PointedObj> {
        (1..=bound).map(FinPointedSet::standard).collect()
    }

    fn enumerate_morphisms(&self, src: &PointedObj, dst: &PointedObj, cap: usize) -> Result<Vec<PointedMap>> {
        let free = src.len() - 1;
        super::check_count(|| format!("based maps {} -> {}", src.id(), dst.id()), dst.len(), free, cap)?;
        let choices: Vec<Vec<u32>> = (0..src.len())
            .map(|k| {
                if k as u32 == src.base {
                    vec![dst.base]
                } else {
                    (0..dst.len() as u32).collect()
                }
            })
            .collect();
        odometer(&choices)
            .into_iter()
            .map(|t| {
                let m = FinMap::from_table(&src.set, &dst.set, t)?;
                Ok(PointedMap::wrap(m, src.base, dst.base))
            })
            .collect()
    }

    fn enumerate_slice_morphisms(&self, a: &PointedMap, b: &PointedMap, cap: usize) -> Result<Vec<PointedMap>> {
        if a.dst() != b.dst() {
            return Err(Error::boundary("slice morphisms need a common base"));
        }
        let raw = FinSet.enumerate_slice_morphisms(&a.map, &b.map, cap)?;
        Ok(raw
            .into_iter()
            .filter(|m| m.image_index(a.src_base as usize) == b.src_base as usize)
            .map(|m| PointedMap::wrap(m, a.src_base, b.src_base))
            .collect())
    }

    fn inverse(&self, f: &PointedMap) -> Option<PointedMap> {
        super::iso_check(&f.map).map(|m| PointedMap::wrap(m, f.dst_base, f.src_base))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{validate_instance, DEFAULT_ENUMERATION_CAP};

    #[test]
    fn point_is_a_zero_object() {
        let v = FinPointedSet;
        assert_eq!(v.terminal().len(), 1);
        assert_eq!(v.initial().len(), 1);
        for x in v.enumerate_objects(3) {
            assert_eq!(v.enumerate_morphisms(&x, &v.terminal(), 100).unwrap().len(), 1);
            assert_eq!(v.enumerate_morphisms(&v.initial(), &x, 100).unwrap().len(), 1);
        }
    }

    #[test]
    fn copowers_of_the_point_collapse() {
        let v = FinPointedSet;
        for n in 0..5 {
            let ones = vec![v.terminal(); n];
            assert_eq!(v.coproduct(&ones).apex.len(), 1, "copower of size {n}");
        }
    }

    #[test]
    fn wedge_of_two_two_point_sets() {
        let v = FinPointedSet;
        let s = FinPointedSet::standard(2);
        let w = v.coproduct(&[s.clone(), s.clone()]);
        assert_eq!(w.apex.set().labels(), &["*", "0.a", "1.a"]);
        assert_eq!(v.enumerate_morphisms(&s, &s, 100).unwrap().len(), 2);
        assert_eq!(v.enumerate_morphisms(&w.apex, &w.apex, 100).unwrap().len(), 9);
    }

    #[test]
    fn rejects_unbased_maps() {
        let s = FinPointedSet::standard(2);
        let swap = FinMap::new(s.set(), s.set(), [("*", "a"), ("a", "*")]).unwrap();
        assert!(PointedMap::new(&s, &s, swap).is_err());
    }

    #[test]
    fn pointed_validates_at_bound_three() {
        let report = validate_instance(&FinPointedSet, 3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}
