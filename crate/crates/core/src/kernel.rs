//! The contract a finite base category must satisfy, and an exhaustive
//! validator for it.
//!
//! Composition is written in diagrammatic order throughout the crate:
//! `compose(f, g)` is "first `f`, then `g`".

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Upper bound on the size of any single enumeration performed by a check.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 20;

/// A limit cone: an apex with one leg per member of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone<O, M> {
    pub apex: O,
    pub legs: Vec<M>,
}

/// A colimit cocone: an apex with one coprojection per member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone<O, M> {
    pub apex: O,
    pub legs: Vec<M>,
}

/// Pullback of a cospan `f: A -> C <- B: g`; `left: P -> A`, `right: P -> B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackSquare<O, M> {
    pub apex: O,
    pub left: M,
    pub right: M,
}

/// Exponential `target^base` with its evaluation `target^base × base -> target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exponential<O, M> {
    pub object: O,
    pub product: Cone<O, M>,
    pub eval: M,
}

pub type ConeOf<V> = Cone<<V as BaseCategory>::Obj, <V as BaseCategory>::Mor>;
pub type CoconeOf<V> = Cocone<<V as BaseCategory>::Obj, <V as BaseCategory>::Mor>;
pub type PullbackOf<V> = PullbackSquare<<V as BaseCategory>::Obj, <V as BaseCategory>::Mor>;
pub type ExponentialOf<V> = Exponential<<V as BaseCategory>::Obj, <V as BaseCategory>::Mor>;

/// Capability record of a finite base category `V`.
///
/// Products and coproducts of the empty family are the terminal and initial
/// objects. Every universal construction comes with its mediating-morphism
/// operation (`tuple`, `cotuple`, `pullback_mediator`); [`validate_instance`]
/// checks both against brute-force enumeration.
pub trait BaseCategory {
    type Obj: Clone + Debug + Eq + Ord + Hash;
    type Mor: Clone + Debug + Eq + Ord + Hash;

    fn name(&self) -> String;

    /// Stable identifier, unique within the instance.
    fn obj_id(&self, x: &Self::Obj) -> String;

    /// Enumeration rank.
    fn size_hint(&self, x: &Self::Obj) -> usize;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;

    /// `f` then `g`; fails unless `cod(f) == dom(g)`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;

    /// Equality of parallel morphisms.
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        f == g
    }

    /// Normal form with `mor_eq(f, g) <=> canonical(f) == canonical(g)`.
    /// Used to tally morphisms in ordered maps.
    fn canonical(&self, f: &Self::Mor) -> Self::Mor {
        f.clone()
    }

    fn describe(&self, f: &Self::Mor) -> String {
        format!("{f:?}")
    }

    fn product(&self, family: &[Self::Obj]) -> ConeOf<Self>;

    /// The mediating morphism `src -> product.apex` with the given legs.
    fn tuple(&self, src: &Self::Obj, product: &ConeOf<Self>, legs: &[Self::Mor])
        -> Result<Self::Mor>;

    fn coproduct(&self, family: &[Self::Obj]) -> CoconeOf<Self>;

    /// The mediating morphism `coproduct.apex -> dst` with the given legs.
    fn cotuple(&self, coproduct: &CoconeOf<Self>, dst: &Self::Obj, legs: &[Self::Mor])
        -> Result<Self::Mor>;

    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<PullbackOf<Self>>;

    /// Mediator `X -> pb.apex` for a commuting pair `h: X -> A`, `k: X -> B`.
    fn pullback_mediator(&self, pb: &PullbackOf<Self>, h: &Self::Mor, k: &Self::Mor)
        -> Result<Self::Mor>;

    /// All objects with rank at most `bound`, sorted by `(size_hint, obj_id)`.
    fn enumerate_objects(&self, bound: usize) -> Vec<Self::Obj>;

    /// Every morphism `src -> dst` in a deterministic order.
    fn enumerate_morphisms(&self, src: &Self::Obj, dst: &Self::Obj, cap: usize)
        -> Result<Vec<Self::Mor>>;

    /// Morphisms `h: dom(a) -> dom(b)` with `h ; b = a`.
    fn enumerate_slice_morphisms(&self, a: &Self::Mor, b: &Self::Mor, cap: usize)
        -> Result<Vec<Self::Mor>> {
        if self.cod(a) != self.cod(b) {
            return Err(Error::boundary("slice morphisms need a common base"));
        }
        let mut out = Vec::new();
        for h in self.enumerate_morphisms(&self.dom(a), &self.dom(b), cap)? {
            if self.mor_eq(&self.compose(&h, b)?, a) {
                out.push(h);
            }
        }
        Ok(out)
    }

    /// Two-sided inverse, if `f` is an isomorphism.
    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor> {
        let (src, dst) = (self.dom(f), self.cod(f));
        let candidates = self
            .enumerate_morphisms(&dst, &src, DEFAULT_ENUMERATION_CAP)
            .ok()?;
        let id_src = self.identity(&src);
        let id_dst = self.identity(&dst);
        candidates.into_iter().find(|g| {
            matches!(self.compose(f, g), Ok(fg) if self.mor_eq(&fg, &id_src))
                && matches!(self.compose(g, f), Ok(gf) if self.mor_eq(&gf, &id_dst))
        })
    }

    /// Optional cartesian-closed structure.
    fn exponential(&self, _base: &Self::Obj, _target: &Self::Obj) -> Option<ExponentialOf<Self>> {
        None
    }

    fn terminal(&self) -> Self::Obj {
        self.product(&[]).apex
    }

    fn initial(&self) -> Self::Obj {
        self.coproduct(&[]).apex
    }

    fn to_terminal(&self, x: &Self::Obj) -> Result<Self::Mor> {
        let one = self.product(&[]);
        self.tuple(x, &one, &[])
    }

    fn from_initial(&self, x: &Self::Obj) -> Result<Self::Mor> {
        let zero = self.coproduct(&[]);
        self.cotuple(&zero, x, &[])
    }

    fn compose_all(&self, fs: &[Self::Mor]) -> Result<Self::Mor> {
        let (first, rest) = fs
            .split_first()
            .ok_or_else(|| Error::internal("compose_all of an empty path"))?;
        rest.iter()
            .try_fold(first.clone(), |acc, g| self.compose(&acc, g))
    }

    /// `∏ f_k : ∏ dom(f_k) -> ∏ cod(f_k)` with both product cones.
    fn product_of_maps(&self, fs: &[Self::Mor]) -> Result<(ConeOf<Self>, ConeOf<Self>, Self::Mor)> {
        let src = self.product(&fs.iter().map(|f| self.dom(f)).collect::<Vec<_>>());
        let dst = self.product(&fs.iter().map(|f| self.cod(f)).collect::<Vec<_>>());
        let legs = src
            .legs
            .iter()
            .zip(fs)
            .map(|(p, f)| self.compose(p, f))
            .collect::<Result<Vec<_>>>()?;
        let m = self.tuple(&src.apex, &dst, &legs)?;
        Ok((src, dst, m))
    }

    /// `∐ f_k : ∐ dom(f_k) -> ∐ cod(f_k)` with both coproduct cocones.
    fn coproduct_of_maps(&self, fs: &[Self::Mor])
        -> Result<(CoconeOf<Self>, CoconeOf<Self>, Self::Mor)> {
        let src = self.coproduct(&fs.iter().map(|f| self.dom(f)).collect::<Vec<_>>());
        let dst = self.coproduct(&fs.iter().map(|f| self.cod(f)).collect::<Vec<_>>());
        let legs = fs
            .iter()
            .zip(&dst.legs)
            .map(|(f, i)| self.compose(f, i))
            .collect::<Result<Vec<_>>>()?;
        let m = self.cotuple(&src, &dst.apex, &legs)?;
        Ok((src, dst, m))
    }

    fn is_iso(&self, f: &Self::Mor) -> bool {
        self.inverse(f).is_some()
    }
}

/// Result of one family of checks in [`validate_instance`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub instance: String,
    pub bound: usize,
    pub objects: usize,
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.counterexample.is_none())
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.counterexample.is_some())
    }
}

struct Tracker {
    name: &'static str,
    cases: u64,
    counterexample: Option<Value>,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Tracker {
            name,
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name.to_string(),
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

/// Arity-3 limits and colimits are checked over objects of rank at most this,
/// binary and nullary ones over the full bound.
const TERNARY_RANK: usize = 2;

/// Checks the category axioms and every universal property of `v` over all
/// objects of rank at most `bound`.
///
/// Fails with [`Error::ResourceCap`] if any single hom-set enumeration would
/// exceed `cap`.
pub fn validate_instance<V: BaseCategory>(v: &V, bound: usize, cap: usize) -> Result<ValidationReport> {
    let objs = v.enumerate_objects(bound);
    let homs = HomTable::build(v, &objs, cap)?;

    let checks = vec![
        check_enumeration_order(v, &objs),
        check_canonical_forms(v, &objs, &homs),
        check_identities(v, &objs, &homs)?,
        check_associativity(v, &objs, &homs)?,
        check_terminal(v, &objs, cap)?,
        check_initial(v, &objs, cap)?,
        check_products(v, &objs, cap)?,
        check_coproducts(v, &objs, cap)?,
        check_pullbacks(v, &objs, &homs, cap)?,
        check_exponentials(v, &objs, cap)?,
    ];

    Ok(ValidationReport {
        instance: v.name(),
        bound,
        objects: objs.len(),
        checks,
    })
}

struct HomTable<M> {
    homs: Vec<Vec<Vec<M>>>,
}

impl<M> HomTable<M> {
    fn build<V: BaseCategory<Mor = M>>(v: &V, objs: &[V::Obj], cap: usize) -> Result<Self> {
        let mut homs = Vec::with_capacity(objs.len());
        for a in objs {
            let mut row = Vec::with_capacity(objs.len());
            for b in objs {
                row.push(v.enumerate_morphisms(a, b, cap)?);
            }
            homs.push(row);
        }
        Ok(HomTable { homs })
    }

    fn get(&self, a: usize, b: usize) -> &[M] {
        &self.homs[a][b]
    }
}

fn check_enumeration_order<V: BaseCategory>(v: &V, objs: &[V::Obj]) -> CheckOutcome {
    let mut t = Tracker::new("enumeration-order");
    for w in objs.windows(2) {
        let ka = (v.size_hint(&w[0]), v.obj_id(&w[0]));
        let kb = (v.size_hint(&w[1]), v.obj_id(&w[1]));
        t.record(ka < kb, || json!({ "before": ka.1, "after": kb.1 }));
    }
    t.finish()
}

fn check_canonical_forms<V: BaseCategory>(v: &V, objs: &[V::Obj], homs: &HomTable<V::Mor>) -> CheckOutcome {
    let mut t = Tracker::new("canonical-forms");
    for a in 0..objs.len() {
        for b in 0..objs.len() {
            let hs = homs.get(a, b);
            for f in hs {
                for g in hs {
                    let agree = v.mor_eq(f, g) == (v.canonical(f) == v.canonical(g));
                    t.record(agree, || json!({ "f": v.describe(f), "g": v.describe(g) }));
                }
            }
        }
    }
    t.finish()
}

fn check_identities<V: BaseCategory>(v: &V, objs: &[V::Obj], homs: &HomTable<V::Mor>) -> Result<CheckOutcome> {
    let mut t = Tracker::new("identity");
    for (a, x) in objs.iter().enumerate() {
        let id_x = v.identity(x);
        t.record(v.dom(&id_x) == *x && v.cod(&id_x) == *x, || {
            json!({ "object": v.obj_id(x), "reason": "identity has wrong boundary" })
        });
        for (b, y) in objs.iter().enumerate() {
            let id_y = v.identity(y);
            for f in homs.get(a, b) {
                let left = v.compose(&id_x, f)?;
                let right = v.compose(f, &id_y)?;
                t.record(v.mor_eq(&left, f) && v.mor_eq(&right, f), || {
                    json!({ "morphism": v.describe(f) })
                });
            }
        }
    }
    Ok(t.finish())
}

fn check_associativity<V: BaseCategory>(v: &V, objs: &[V::Obj], homs: &HomTable<V::Mor>) -> Result<CheckOutcome> {
    let mut t = Tracker::new("associativity");
    let n = objs.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for f in homs.get(a, b) {
                        for g in homs.get(b, c) {
                            let fg = v.compose(f, g)?;
                            for h in homs.get(c, d) {
                                let lhs = v.compose(&fg, h)?;
                                let rhs = v.compose(f, &v.compose(g, h)?)?;
                                t.record(v.mor_eq(&lhs, &rhs), || {
                                    json!({
                                        "f": v.describe(f),
                                        "g": v.describe(g),
                                        "h": v.describe(h),
                                    })
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

fn check_terminal<V: BaseCategory>(v: &V, objs: &[V::Obj], cap: usize) -> Result<CheckOutcome> {
    let mut t = Tracker::new("terminal");
    let one = v.terminal();
    for x in objs {
        let n = v.enumerate_morphisms(x, &one, cap)?.len();
        let bang = v.to_terminal(x)?;
        let ok = n == 1 && v.dom(&bang) == *x && v.cod(&bang) == one;
        t.record(ok, || json!({ "object": v.obj_id(x), "morphisms_to_terminal": n }));
    }
    Ok(t.finish())
}

fn check_initial<V: BaseCategory>(v: &V, objs: &[V::Obj], cap: usize) -> Result<CheckOutcome> {
    let mut t = Tracker::new("initial");
    let zero = v.initial();
    for x in objs {
        let n = v.enumerate_morphisms(&zero, x, cap)?.len();
        let bang = v.from_initial(x)?;
        let ok = n == 1 && v.dom(&bang) == zero && v.cod(&bang) == *x;
        t.record(ok, || json!({ "object": v.obj_id(x), "morphisms_from_initial": n }));
    }
    Ok(t.finish())
}

fn families<O: Clone>(objs: &[O], arity: usize) -> Vec<Vec<O>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                objs.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// All tuples picking one element from each list, in lexicographic order.
pub(crate) fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for item in list {
                let mut p = prefix.clone();
                p.push(item.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn limit_families<V: BaseCategory>(v: &V, objs: &[V::Obj]) -> Vec<Vec<V::Obj>> {
    let small: Vec<V::Obj> = objs
        .iter()
        .filter(|o| v.size_hint(o) <= TERNARY_RANK)
        .cloned()
        .collect();
    let mut fams = Vec::new();
    for arity in 1..=2 {
        fams.extend(families(objs, arity));
    }
    fams.extend(families(&small, 3));
    fams
}

fn ids<V: BaseCategory>(v: &V, fam: &[V::Obj]) -> Vec<String> {
    fam.iter().map(|o| v.obj_id(o)).collect()
}

fn check_products<V: BaseCategory>(v: &V, objs: &[V::Obj], cap: usize) -> Result<CheckOutcome> {
    let mut t = Tracker::new("product");
    for fam in limit_families(v, objs) {
        let cone = v.product(&fam);
        let shape_ok = cone.legs.len() == fam.len()
            && cone
                .legs
                .iter()
                .zip(&fam)
                .all(|(p, a)| v.dom(p) == cone.apex && v.cod(p) == *a);
        t.record(shape_ok, || json!({ "family": ids(v, &fam), "reason": "malformed cone" }));
        if !shape_ok {
            continue;
        }
        for x in objs {
            let mut tally: BTreeMap<Vec<V::Mor>, usize> = BTreeMap::new();
            for m in v.enumerate_morphisms(x, &cone.apex, cap)? {
                let key = cone
                    .legs
                    .iter()
                    .map(|p| v.compose(&m, p).map(|c| v.canonical(&c)))
                    .collect::<Result<Vec<_>>>()?;
                *tally.entry(key).or_default() += 1;
            }
            let leg_choices = fam
                .iter()
                .map(|a| v.enumerate_morphisms(x, a, cap))
                .collect::<Result<Vec<_>>>()?;
            for legs in cartesian(&leg_choices) {
                let key: Vec<V::Mor> = legs.iter().map(|l| v.canonical(l)).collect();
                let count = tally.get(&key).copied().unwrap_or(0);
                let m = v.tuple(x, &cone, &legs)?;
                let commutes = cone
                    .legs
                    .iter()
                    .zip(&legs)
                    .map(|(p, l)| v.compose(&m, p).map(|c| v.mor_eq(&c, l)))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|b| b);
                t.record(count == 1 && commutes, || {
                    json!({
                        "family": ids(v, &fam),
                        "cone_apex": v.obj_id(x),
                        "cone_legs": legs.iter().map(|l| v.describe(l)).collect::<Vec<_>>(),
                        "mediators": count,
                        "tuple_commutes": commutes,
                    })
                });
            }
        }
    }
    Ok(t.finish())
}

fn check_coproducts<V: BaseCategory>(v: &V, objs: &[V::Obj], cap: usize) -> Result<CheckOutcome> {
    let mut t = Tracker::new("coproduct");
    for fam in limit_families(v, objs) {
        let cocone = v.coproduct(&fam);
        let shape_ok = cocone.legs.len() == fam.len()
            && cocone
                .legs
                .iter()
                .zip(&fam)
                .all(|(i, a)| v.cod(i) == cocone.apex && v.dom(i) == *a);
        t.record(shape_ok, || json!({ "family": ids(v, &fam), "reason": "malformed cocone" }));
        if !shape_ok {
            continue;
        }
        for y in objs {
            let mut tally: BTreeMap<Vec<V::Mor>, usize> = BTreeMap::new();
            for m in v.enumerate_morphisms(&cocone.apex, y, cap)? {
                let key = cocone
                    .legs
                    .iter()
                    .map(|i| v.compose(i, &m).map(|c| v.canonical(&c)))
                    .collect::<Result<Vec<_>>>()?;
                *tally.entry(key).or_default() += 1;
            }
            let leg_choices = fam
                .iter()
                .map(|a| v.enumerate_morphisms(a, y, cap))
                .collect::<Result<Vec<_>>>()?;
            for legs in cartesian(&leg_choices) {
                let key: Vec<V::Mor> = legs.iter().map(|l| v.canonical(l)).collect();
                let count = tally.get(&key).copied().unwrap_or(0);
                let m = v.cotuple(&cocone, y, &legs)?;
                let commutes = cocone
                    .legs
                    .iter()
                    .zip(&legs)
                    .map(|(i, l)| v.compose(i, &m).map(|c| v.mor_eq(&c, l)))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|b| b);
                t.record(count == 1 && commutes, || {
                    json!({
                        "family": ids(v, &fam),
                        "cocone_apex": v.obj_id(y),
                        "cocone_legs": legs.iter().map(|l| v.describe(l)).collect::<Vec<_>>(),
                        "mediators": count,
                        "cotuple_commutes": commutes,
                    })
                });
            }
        }
    }
    Ok(t.finish())
}

fn check_pullbacks<V: BaseCategory>(
    v: &V,
    objs: &[V::Obj],
    homs: &HomTable<V::Mor>,
    cap: usize,
) -> Result<CheckOutcome> {
    let mut t = Tracker::new("pullback");
    let n = objs.len();
    for c in 0..n {
        for a in 0..n {
            for b in 0..n {
                for f in homs.get(a, c) {
                    for g in homs.get(b, c) {
                        let pb = v.pullback(f, g)?;
                        let square = v.compose(&pb.left, f)?;
                        let other = v.compose(&pb.right, g)?;
                        let commutes = v.mor_eq(&square, &other);
                        t.record(commutes, || {
                            json!({
                                "cospan": [v.describe(f), v.describe(g)],
                                "apex": v.obj_id(&pb.apex),
                                "reason": "returned square does not commute",
                                "witness_cone": [v.describe(&pb.left), v.describe(&pb.right)],
                            })
                        });
                        if !commutes {
                            continue;
                        }
                        for (xi, x) in objs.iter().enumerate() {
                            let mut tally: BTreeMap<(V::Mor, V::Mor), usize> = BTreeMap::new();
                            for m in v.enumerate_morphisms(x, &pb.apex, cap)? {
                                let key = (
                                    v.canonical(&v.compose(&m, &pb.left)?),
                                    v.canonical(&v.compose(&m, &pb.right)?),
                                );
                                *tally.entry(key).or_default() += 1;
                            }
                            for h in homs.get(xi, a) {
                                let hf = v.compose(h, f)?;
                                for k in homs.get(xi, b) {
                                    if !v.mor_eq(&hf, &v.compose(k, g)?) {
                                        continue;
                                    }
                                    let count = tally
                                        .get(&(v.canonical(h), v.canonical(k)))
                                        .copied()
                                        .unwrap_or(0);
                                    let m = v.pullback_mediator(&pb, h, k)?;
                                    let commutes = v.mor_eq(&v.compose(&m, &pb.left)?, h)
                                        && v.mor_eq(&v.compose(&m, &pb.right)?, k);
                                    t.record(count == 1 && commutes, || {
                                        json!({
                                            "cospan": [v.describe(f), v.describe(g)],
                                            "witness_cone": [v.describe(h), v.describe(k)],
                                            "cone_apex": v.obj_id(x),
                                            "existence": count >= 1,
                                            "uniqueness": count <= 1,
                                            "mediator_commutes": commutes,
                                        })
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

/// Currying bijection `hom(X × B, C) ≅ hom(X, C^B)` over small objects.
fn check_exponentials<V: BaseCategory>(v: &V, objs: &[V::Obj], cap: usize) -> Result<CheckOutcome> {
    let mut t = Tracker::new("exponential");
    let small: Vec<&V::Obj> = objs.iter().filter(|o| v.size_hint(o) <= TERNARY_RANK).collect();
    for base in &small {
        for target in &small {
            let Some(exp) = v.exponential(base, target) else {
                continue;
            };
            for x in &small {
                let curried = v.enumerate_morphisms(x, &exp.object, cap)?;
                let xb = v.product(&[(*x).clone(), (*base).clone()]);
                let uncurried_count = v.enumerate_morphisms(&xb.apex, target, cap)?.len();
                let mut images = BTreeMap::new();
                for m in &curried {
                    let (_, _, mb) = v.product_of_maps(&[m.clone(), v.identity(base)])?;
                    let u = v.compose(&mb, &exp.eval)?;
                    *images.entry(v.canonical(&u)).or_insert(0usize) += 1;
                }
                let bijective = curried.len() == uncurried_count
                    && images.len() == curried.len();
                t.record(bijective, || {
                    json!({
                        "base": v.obj_id(base),
                        "target": v.obj_id(target),
                        "test_object": v.obj_id(x),
                        "curried": curried.len(),
                        "uncurried": uncurried_count,
                        "distinct_images": images.len(),
                    })
                });
            }
        }
    }
    Ok(t.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A category with no objects at all.
    #[derive(Debug, Clone)]
    struct Empty;

    impl BaseCategory for Empty {
        type Obj = u8;
        type Mor = u8;
        fn name(&self) -> String {
            "empty".into()
        }
        fn obj_id(&self, x: &u8) -> String {
            x.to_string()
        }
        fn size_hint(&self, _: &u8) -> usize {
            0
        }
        fn dom(&self, f: &u8) -> u8 {
            *f
        }
        fn cod(&self, f: &u8) -> u8 {
            *f
        }
        fn identity(&self, x: &u8) -> u8 {
            *x
        }
        fn compose(&self, f: &u8, _: &u8) -> Result<u8> {
            Ok(*f)
        }
        fn product(&self, _: &[u8]) -> ConeOf<Self> {
            Cone { apex: 0, legs: vec![] }
        }
        fn tuple(&self, s: &u8, _: &ConeOf<Self>, _: &[u8]) -> Result<u8> {
            Ok(*s)
        }
        fn coproduct(&self, _: &[u8]) -> CoconeOf<Self> {
            Cocone { apex: 0, legs: vec![] }
        }
        fn cotuple(&self, _: &CoconeOf<Self>, d: &u8, _: &[u8]) -> Result<u8> {
            Ok(*d)
        }
        fn pullback(&self, f: &u8, _: &u8) -> Result<PullbackOf<Self>> {
            Ok(PullbackSquare { apex: *f, left: *f, right: *f })
        }
        fn pullback_mediator(&self, _: &PullbackOf<Self>, h: &u8, _: &u8) -> Result<u8> {
            Ok(*h)
        }
        fn enumerate_objects(&self, _: usize) -> Vec<u8> {
            vec![]
        }
        fn enumerate_morphisms(&self, _: &u8, _: &u8, _: usize) -> Result<Vec<u8>> {
            Ok(vec![])
        }
    }

    #[test]
    fn empty_enumeration_passes_vacuously() {
        let report = validate_instance(&Empty, 3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(report.passed());
        assert_eq!(report.objects, 0);
        assert!(report.checks.iter().all(|c| c.cases == 0));
    }

    #[test]
    fn cartesian_is_lexicographic() {
        let got = cartesian(&[vec![1, 2], vec![3], vec![4, 5]]);
        assert_eq!(got, vec![vec![1, 3, 4], vec![1, 3, 5], vec![2, 3, 4], vec![2, 3, 5]]);
        assert_eq!(cartesian::<u8>(&[]), vec![Vec::<u8>::new()]);
        assert!(cartesian(&[vec![1], vec![]]).is_empty());
    }
}
