//! Copowers `I•1`, the coproduct functor from families of slices to slices
//! over a coproduct, its right adjoint by pulling back along coprojections,
//! and a bounded decision procedure for extensivity.
//!
//! Equivalence of `∐ : ∏ V/X_i -> V/∐X_i` is decided as full faithfulness
//! (hom-set counts and injectivity of `∐` on morphisms) plus essential
//! surjectivity (every slice is isomorphic to the coproduct of its fibers
//! through the counit), quantified over all objects up to a size bound.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::index::{IndexMap, IndexSet};
use crate::kernel::{cartesian, BaseCategory, CoconeOf, PullbackOf};
use crate::verdict::{Verdict, Witness};

/// The coproduct `I•1` of one copy of the terminal object per index label.
pub struct Copower<V: BaseCategory> {
    pub index: IndexSet,
    pub cocone: CoconeOf<V>,
}

base_struct_impls!(Copower { index, cocone });

impl<V: BaseCategory> Copower<V> {
    pub fn carrier(&self) -> &V::Obj {
        &self.cocone.apex
    }

    /// All coprojections `1 -> I•1`, in index order.
    pub fn coprojections(&self) -> &[V::Mor] {
        &self.cocone.legs
    }

    pub fn coprojection(&self, label: &str) -> Result<&V::Mor> {
        Ok(&self.cocone.legs[self.index.require(label)?])
    }
}

pub fn copower<V: BaseCategory>(v: &V, index: &IndexSet) -> Copower<V> {
    let ones = vec![v.terminal(); index.len()];
    Copower {
        index: index.clone(),
        cocone: v.coproduct(&ones),
    }
}

/// `u•1 : I•1 -> K•1` for an index map `u : I -> K`.
pub fn copower_map<V: BaseCategory>(v: &V, u: &IndexMap) -> Result<V::Mor> {
    let src = copower(v, u.src());
    let dst = copower(v, u.dst());
    let legs: Vec<V::Mor> = u.table().iter().map(|&t| dst.cocone.legs[t].clone()).collect();
    v.cotuple(&src.cocone, dst.carrier(), &legs)
}

/// An object `total` with a map `anchor : total -> base`.
pub struct SliceObject<V: BaseCategory> {
    pub total: V::Obj,
    pub anchor: V::Mor,
}

base_struct_impls!(SliceObject { total, anchor });

impl<V: BaseCategory> SliceObject<V> {
    pub fn new(v: &V, anchor: V::Mor) -> Self {
        SliceObject {
            total: v.dom(&anchor),
            anchor,
        }
    }

    pub fn base(&self, v: &V) -> V::Obj {
        v.cod(&self.anchor)
    }
}

/// Coproduct of a family of slices, with the cocones on totals and bases.
pub struct Amalgam<V: BaseCategory> {
    pub slice: SliceObject<V>,
    pub totals: CoconeOf<V>,
    pub bases: CoconeOf<V>,
}

base_struct_impls!(Amalgam { slice, totals, bases });

/// `(f_i : A_i -> X_i)_i  |->  ∐ f_i : ∐ A_i -> ∐ X_i`.
pub fn amalg<V: BaseCategory>(v: &V, family: &[SliceObject<V>]) -> Result<Amalgam<V>> {
    let anchors: Vec<V::Mor> = family.iter().map(|s| s.anchor.clone()).collect();
    let (totals, bases, anchor) = v.coproduct_of_maps(&anchors)?;
    Ok(Amalgam {
        slice: SliceObject::new(v, anchor),
        totals,
        bases,
    })
}

/// Same as [`amalg`], but keyed by the labels of an index set.
pub fn amalg_indexed<V: BaseCategory>(
    v: &V,
    index: &IndexSet,
    family: &std::collections::BTreeMap<String, SliceObject<V>>,
) -> Result<Amalgam<V>> {
    if family.len() != index.len() || family.keys().any(|k| index.position(k).is_none()) {
        return Err(Error::boundary("family is not indexed by the given index set"));
    }
    let ordered: Vec<SliceObject<V>> = index.labels().iter().map(|l| family[l].clone()).collect();
    amalg(v, &ordered)
}

/// The slice `∐ A_i -> I•1` sending the `i`-th summand to the `i`-th point.
pub fn amalg_over_copower<V: BaseCategory>(
    v: &V,
    family: &[V::Obj],
    cp: &Copower<V>,
) -> Result<(SliceObject<V>, CoconeOf<V>)> {
    if family.len() != cp.index.len() {
        return Err(Error::boundary("family length differs from the index size"));
    }
    let totals = v.coproduct(family);
    let legs = family
        .iter()
        .zip(cp.coprojections())
        .map(|(a, s)| v.compose(&v.to_terminal(a)?, s))
        .collect::<Result<Vec<_>>>()?;
    let anchor = v.cotuple(&totals, cp.carrier(), &legs)?;
    Ok((SliceObject::new(v, anchor), totals))
}

/// Pullback of a slice along one coprojection into its base.
pub struct Fiber<V: BaseCategory> {
    pub square: PullbackOf<V>,
}

base_struct_impls!(Fiber { square });

impl<V: BaseCategory> Fiber<V> {
    pub fn total(&self) -> &V::Obj {
        &self.square.apex
    }

    /// The inclusion `fiber -> total`.
    pub fn inclusion(&self) -> &V::Mor {
        &self.square.left
    }

    /// The fiber as a slice over the coprojection's domain.
    pub fn slice(&self, v: &V) -> SliceObject<V> {
        SliceObject::new(v, self.square.right.clone())
    }
}

pub fn fiber_along<V: BaseCategory>(v: &V, f: &SliceObject<V>, coprojection: &V::Mor) -> Result<Fiber<V>> {
    Ok(Fiber {
        square: v.pullback(&f.anchor, coprojection)?,
    })
}

/// `σ_i^*(f)`: the part of `f` lying over the point `label` of `I•1`.
pub fn fiber<V: BaseCategory>(v: &V, f: &SliceObject<V>, cp: &Copower<V>, label: &str) -> Result<Fiber<V>> {
    if f.base(v) != *cp.carrier() {
        return Err(Error::boundary("slice is not anchored at the copower carrier"));
    }
    fiber_along(v, f, cp.coprojection(label)?)
}

pub fn fibers<V: BaseCategory>(v: &V, f: &SliceObject<V>, bases: &CoconeOf<V>) -> Result<Vec<Fiber<V>>> {
    if f.base(v) != bases.apex {
        return Err(Error::boundary("slice is not anchored at the coproduct"));
    }
    bases.legs.iter().map(|s| fiber_along(v, f, s)).collect()
}

/// Comparison `∐_i σ_i^*(A) -> A` against an arbitrary coproduct of bases.
pub fn counit_along<V: BaseCategory>(v: &V, f: &SliceObject<V>, bases: &CoconeOf<V>) -> Result<(V::Mor, Vec<Fiber<V>>)> {
    let fibs = fibers(v, f, bases)?;
    let totals: Vec<V::Obj> = fibs.iter().map(|p| p.total().clone()).collect();
    let cocone = v.coproduct(&totals);
    let legs: Vec<V::Mor> = fibs.iter().map(|p| p.inclusion().clone()).collect();
    let eps = v.cotuple(&cocone, &f.total, &legs)?;
    Ok((eps, fibs))
}

/// The counit of `∐ ⊣ ⟨σ_i^*⟩` at a slice over `I•1`.
pub fn counit_component<V: BaseCategory>(v: &V, f: &SliceObject<V>, cp: &Copower<V>) -> Result<V::Mor> {
    if f.base(v) != *cp.carrier() {
        return Err(Error::boundary("slice is not anchored at the copower carrier"));
    }
    Ok(counit_along(v, f, &cp.cocone)?.0)
}

/// The unit of `∐ ⊣ ⟨σ_i^*⟩` at a family of objects: `A_i -> σ_i^*(∐ A)`.
pub fn unit_component<V: BaseCategory>(v: &V, family: &[V::Obj], cp: &Copower<V>) -> Result<Vec<V::Mor>> {
    let (slice, totals) = amalg_over_copower(v, family, cp)?;
    family
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let fib = fiber_along(v, &slice, &cp.cocone.legs[i])?;
            v.pullback_mediator(&fib.square, &totals.legs[i], &v.to_terminal(a)?)
        })
        .collect()
}

/// Action of `σ_i^*` on a slice morphism `h : f -> g`.
pub fn fiber_map<V: BaseCategory>(v: &V, h: &V::Mor, from: &Fiber<V>, to: &Fiber<V>) -> Result<V::Mor> {
    let through = v.compose(from.inclusion(), h)?;
    v.pullback_mediator(&to.square, &through, &from.square.right)
}

fn ids<V: BaseCategory>(v: &V, objs: &[V::Obj]) -> Vec<String> {
    objs.iter().map(|o| v.obj_id(o)).collect()
}

/// Checks that every unit and counit component of `∐ ⊣ ⟨σ_i^*⟩` over `I•1`
/// is an isomorphism and that both triangle identities hold, for all slices
/// and families with members of rank at most `bound`.
pub fn check_adjoint_equivalence<V: BaseCategory>(v: &V, index: &IndexSet, bound: usize, cap: usize) -> Result<Verdict> {
    let cp = copower(v, index);
    let objs = v.enumerate_objects(bound);
    let mut verdict = Verdict::new();

    for a in &objs {
        for (rank, anchor) in v.enumerate_morphisms(a, cp.carrier(), cap)?.into_iter().enumerate() {
            verdict.case();
            let f = SliceObject::new(v, anchor);
            let (eps, fibs) = counit_along(v, &f, &cp.cocone)?;
            let witness = || {
                json!({
                    "index": index.labels(),
                    "total": v.obj_id(a),
                    "anchor": v.describe(&f.anchor),
                    "anchor_rank": rank,
                    "counit": v.describe(&eps),
                })
            };
            if !v.is_iso(&eps) {
                verdict.fail_once(Witness::new("counit-not-iso", witness()));
            }
            // σ_i^*(ε_f) after η at the family of fibers is the identity.
            let fib_totals: Vec<V::Obj> = fibs.iter().map(|p| p.total().clone()).collect();
            let eta = unit_component(v, &fib_totals, &cp)?;
            let (refolded, _) = amalg_over_copower(v, &fib_totals, &cp)?;
            for (i, p) in fibs.iter().enumerate() {
                let refib = fiber_along(v, &refolded, &cp.cocone.legs[i])?;
                let back = fiber_map(v, &eps, &refib, p)?;
                let round = v.compose(&eta[i], &back)?;
                if !v.mor_eq(&round, &v.identity(p.total())) {
                    verdict.fail_once(Witness::new("triangle-right-adjoint", witness()));
                }
            }
        }
    }

    for family in cartesian(&vec![objs.clone(); index.len()]) {
        verdict.case();
        let eta = unit_component(v, &family, &cp)?;
        let witness = || json!({ "index": index.labels(), "family": ids(v, &family) });
        if !eta.iter().all(|e| v.is_iso(e)) {
            verdict.fail_once(Witness::new("unit-not-iso", witness()));
        }
        // ε at ∐A after ∐η_A is the identity.
        let (slice, _) = amalg_over_copower(v, &family, &cp)?;
        let (eps, _) = counit_along(v, &slice, &cp.cocone)?;
        let (_, _, amalg_eta) = v.coproduct_of_maps(&eta)?;
        let round = v.compose(&amalg_eta, &eps)?;
        if !v.mor_eq(&round, &v.identity(&slice.total)) {
            verdict.fail_once(Witness::new("triangle-left-adjoint", witness()));
        }
    }

    Ok(verdict)
}

/// Which instances of the coproduct functor are tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensivityMode {
    /// `V^I -> V/(I•1)` for every index set; sufficient for extensivity.
    PointwiseTerminal,
    /// `∏ V/X_i -> V/∐X_i` for every family of objects.
    GeneralFamily,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensivityReport {
    pub instance: String,
    pub mode: ExtensivityMode,
    pub index_bound: usize,
    pub size_bound: usize,
    pub label: String,
    pub verdict: Verdict,
}

impl ExtensivityReport {
    pub fn extensive(&self) -> bool {
        self.verdict.holds
    }
}

/// Diagonal composites are checked for functoriality only while the
/// endomorphism set has at most this many elements.
const COMPOSITION_CHECK_LIMIT: usize = 64;

/// Compares the family hom-set `∏ hom(f_i, g_i)` with the slice hom-set
/// `hom(∐f, ∐g)`. Returns `(paired, amalgamated)` cardinalities together with
/// the number of distinct images of `∐` on morphisms.
pub fn compare_hom_sets<V: BaseCategory>(
    v: &V,
    domain: &[SliceObject<V>],
    codomain: &[SliceObject<V>],
    cap: usize,
) -> Result<HomComparison> {
    if domain.len() != codomain.len() {
        return Err(Error::boundary("families of different lengths"));
    }
    let a = amalg(v, domain)?;
    let b = amalg(v, codomain)?;
    if a.bases.apex != b.bases.apex {
        return Err(Error::boundary("families over different bases"));
    }
    let component_homs = domain
        .iter()
        .zip(codomain)
        .map(|(f, g)| v.enumerate_slice_morphisms(&f.anchor, &g.anchor, cap))
        .collect::<Result<Vec<_>>>()?;
    let paired = component_homs
        .iter()
        .try_fold(1u128, |acc, h| acc.checked_mul(h.len() as u128))
        .unwrap_or(u128::MAX);
    let amalgamated = v.enumerate_slice_morphisms(&a.slice.anchor, &b.slice.anchor, cap)?.len();
    let mut distinct = None;
    let mut functorial = true;
    if paired == amalgamated as u128 {
        if paired > cap as u128 {
            return Err(Error::ResourceCap {
                what: "family morphisms".into(),
                count: paired,
                cap,
            });
        }
        let amalg_of = |hs: &[V::Mor]| -> Result<V::Mor> {
            let legs = hs
                .iter()
                .zip(&b.totals.legs)
                .map(|(h, i)| v.compose(h, i))
                .collect::<Result<Vec<_>>>()?;
            v.cotuple(&a.totals, &b.slice.total, &legs)
        };
        let families = cartesian(&component_homs);
        let mut images = BTreeSet::new();
        for hs in &families {
            images.insert(v.canonical(&amalg_of(hs)?));
        }
        distinct = Some(images.len());

        if domain == codomain {
            let ids: Vec<V::Mor> = domain.iter().map(|f| v.identity(&f.total)).collect();
            functorial &= v.mor_eq(&amalg_of(&ids)?, &v.identity(&a.slice.total));
            if families.len() <= COMPOSITION_CHECK_LIMIT {
                for h in &families {
                    for k in &families {
                        let hk = h
                            .iter()
                            .zip(k)
                            .map(|(x, y)| v.compose(x, y))
                            .collect::<Result<Vec<_>>>()?;
                        let lhs = amalg_of(&hk)?;
                        let rhs = v.compose(&amalg_of(h)?, &amalg_of(k)?)?;
                        functorial &= v.mor_eq(&lhs, &rhs);
                    }
                }
            }
        }
    }
    Ok(HomComparison {
        paired,
        amalgamated: amalgamated as u128,
        distinct_images: distinct,
        functorial,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomComparison {
    pub paired: u128,
    pub amalgamated: u128,
    pub distinct_images: Option<usize>,
    pub functorial: bool,
}

impl HomComparison {
    pub fn fully_faithful(&self) -> bool {
        self.paired == self.amalgamated
            && self.distinct_images.map(|d| d as u128) == Some(self.paired)
            && self.functorial
    }
}

/// Slices `A -> 1` for a family of objects.
fn terminal_slices<V: BaseCategory>(v: &V, family: &[V::Obj]) -> Result<Vec<SliceObject<V>>> {
    family
        .iter()
        .map(|a| Ok(SliceObject::new(v, v.to_terminal(a)?)))
        .collect()
}

/// Decides, up to the given bounds, whether `v` is extensive.
///
/// Full faithfulness is tested first over every index size (endomorphism
/// hom-sets before all other pairs), then essential surjectivity; the first
/// counterexample of each phase is reported.
pub fn check_extensive<V: BaseCategory>(
    v: &V,
    index_bound: usize,
    size_bound: usize,
    mode: ExtensivityMode,
    cap: usize,
) -> Result<ExtensivityReport> {
    let verdict = match mode {
        ExtensivityMode::PointwiseTerminal => pointwise(v, index_bound, size_bound, cap)?,
        ExtensivityMode::GeneralFamily => general(v, index_bound, size_bound, cap)?,
    };
    let label = if verdict.holds {
        "extensive-up-to-bound"
    } else {
        "not-extensive"
    };
    Ok(ExtensivityReport {
        instance: v.name(),
        mode,
        index_bound,
        size_bound,
        label: label.into(),
        verdict,
    })
}

fn ff_witness<V: BaseCategory>(
    v: &V,
    n: usize,
    bases: &[V::Obj],
    dom: &[SliceObject<V>],
    cod: &[SliceObject<V>],
    cmp: &HomComparison,
) -> Witness {
    let check = if cmp.paired != cmp.amalgamated {
        "hom-count"
    } else if !cmp.functorial {
        "not-functorial"
    } else {
        "not-faithful"
    };
    Witness::new(
        check,
        json!({
            "index_size": n,
            "bases": ids(v, bases),
            "domain": dom.iter().map(|s| v.obj_id(&s.total)).collect::<Vec<_>>(),
            "domain_anchors": dom.iter().map(|s| v.describe(&s.anchor)).collect::<Vec<_>>(),
            "codomain": cod.iter().map(|s| v.obj_id(&s.total)).collect::<Vec<_>>(),
            "codomain_anchors": cod.iter().map(|s| v.describe(&s.anchor)).collect::<Vec<_>>(),
            "paired_maps": cmp.paired,
            "amalgamated_maps": cmp.amalgamated,
            "distinct_images": cmp.distinct_images,
        }),
    )
}

/// Runs the full-faithfulness phase over families of slices, diagonal pairs
/// first; stops at the first failure.
fn ff_phase<V: BaseCategory>(
    v: &V,
    n: usize,
    bases: &[V::Obj],
    families: &[Vec<SliceObject<V>>],
    verdict: &mut Verdict,
    cap: usize,
) -> Result<bool> {
    for f in families {
        verdict.case();
        let cmp = compare_hom_sets(v, f, f, cap)?;
        if !cmp.fully_faithful() {
            verdict.fail(ff_witness(v, n, bases, f, f, &cmp));
            return Ok(false);
        }
    }
    for f in families {
        for g in families {
            if f == g {
                continue;
            }
            verdict.case();
            let cmp = compare_hom_sets(v, f, g, cap)?;
            if !cmp.fully_faithful() {
                verdict.fail(ff_witness(v, n, bases, f, g, &cmp));
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn es_witness<V: BaseCategory>(v: &V, n: usize, bases: &[V::Obj], f: &SliceObject<V>, rank: usize, eps: &V::Mor) -> Witness {
    Witness::new(
        "not-essentially-surjective",
        json!({
            "index_size": n,
            "bases": ids(v, bases),
            "total": v.obj_id(&f.total),
            "anchor": v.describe(&f.anchor),
            "anchor_rank": rank,
            "comparison": v.describe(eps),
        }),
    )
}

fn pointwise<V: BaseCategory>(v: &V, index_bound: usize, size_bound: usize, cap: usize) -> Result<Verdict> {
    let objs = v.enumerate_objects(size_bound);
    let mut verdict = Verdict::new();

    'ff: for n in 0..=index_bound {
        let ones = vec![v.terminal(); n];
        let families = cartesian(&vec![objs.clone(); n])
            .iter()
            .map(|fam| terminal_slices(v, fam))
            .collect::<Result<Vec<_>>>()?;
        if !ff_phase(v, n, &ones, &families, &mut verdict, cap)? {
            break 'ff;
        }
    }

    'es: for n in 0..=index_bound {
        let cp = copower(v, &IndexSet::standard(n));
        let ones = vec![v.terminal(); n];
        for a in &objs {
            for (rank, anchor) in v.enumerate_morphisms(a, cp.carrier(), cap)?.into_iter().enumerate() {
                verdict.case();
                let f = SliceObject::new(v, anchor);
                let (eps, _) = counit_along(v, &f, &cp.cocone)?;
                if !v.is_iso(&eps) {
                    verdict.fail(es_witness(v, n, &ones, &f, rank, &eps));
                    break 'es;
                }
            }
        }
    }
    Ok(verdict)
}

/// Families of objects of length `n` whose ranks sum to at most `bound`.
fn bounded_families<V: BaseCategory>(v: &V, objs: &[V::Obj], n: usize, bound: usize) -> Vec<Vec<V::Obj>> {
    cartesian(&vec![objs.to_vec(); n])
        .into_iter()
        .filter(|fam| fam.iter().map(|o| v.size_hint(o)).sum::<usize>() <= bound)
        .collect()
}

fn general<V: BaseCategory>(v: &V, index_bound: usize, size_bound: usize, cap: usize) -> Result<Verdict> {
    let objs = v.enumerate_objects(size_bound);
    let mut verdict = Verdict::new();

    'ff: for n in 0..=index_bound {
        for bases in bounded_families(v, &objs, n, size_bound) {
            let mut slices_over = Vec::with_capacity(n);
            for x in &bases {
                let mut here = Vec::new();
                for a in &objs {
                    for f in v.enumerate_morphisms(a, x, cap)? {
                        here.push(SliceObject::new(v, f));
                    }
                }
                slices_over.push(here);
            }
            let families: Vec<Vec<SliceObject<V>>> = cartesian(&slices_over)
                .into_iter()
                .filter(|fam| fam.iter().map(|s| v.size_hint(&s.total)).sum::<usize>() <= size_bound)
                .collect();
            if !ff_phase(v, n, &bases, &families, &mut verdict, cap)? {
                break 'ff;
            }
        }
    }

    'es: for n in 0..=index_bound {
        for bases in bounded_families(v, &objs, n, size_bound) {
            let cocone = v.coproduct(&bases);
            for a in &objs {
                for (rank, anchor) in v.enumerate_morphisms(a, &cocone.apex, cap)?.into_iter().enumerate() {
                    verdict.case();
                    let f = SliceObject::new(v, anchor);
                    let (eps, _) = counit_along(v, &f, &cocone)?;
                    if !v.is_iso(&eps) {
                        verdict.fail(es_witness(v, n, &bases, &f, rank, &eps));
                        break 'es;
                    }
                }
            }
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinMap, FinPointedSet, FinSet, FinSetObj};
    use crate::kernel::DEFAULT_ENUMERATION_CAP as CAP;
    use std::collections::BTreeMap;

    fn set(labels: &[&str]) -> FinSetObj {
        FinSetObj::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn copower_examples() {
        assert!(copower(&FinSet, &IndexSet::empty()).carrier().is_empty());
        let one = copower(&FinSet, &IndexSet::new(["i"]).unwrap());
        assert_eq!(one.carrier().len(), 1);
        assert!(FinSet.is_iso(&one.coprojections()[0]));
        let pointed = copower(&FinPointedSet, &IndexSet::new(["i", "j"]).unwrap());
        assert_eq!(pointed.carrier().len(), 1);
    }

    #[test]
    fn amalg_examples() {
        let x = set(&["x"]);
        let single = SliceObject::new(&FinSet, FinMap::identity(&x));
        let a = amalg(&FinSet, &[single.clone()]).unwrap();
        assert!(FinSet.is_iso(&a.totals.legs[0]));

        let y = set(&["y"]);
        let pair = amalg(
            &FinSet,
            &[single, SliceObject::new(&FinSet, FinMap::identity(&y))],
        )
        .unwrap();
        assert_eq!(pair.slice.total, set(&["0.x", "1.y"]));
        assert_eq!(pair.slice.anchor, FinMap::identity(&set(&["0.x", "1.y"])));

        let ab = set(&["a", "b"]);
        let c = set(&["c"]);
        let mut family = BTreeMap::new();
        family.insert("i".to_string(), SliceObject::new(&FinSet, FinMap::new(&ab, &x, [("a", "x"), ("b", "x")]).unwrap()));
        family.insert("j".to_string(), SliceObject::new(&FinSet, FinMap::new(&c, &y, [("c", "y")]).unwrap()));
        let idx = IndexSet::new(["i", "j"]).unwrap();
        let m = amalg_indexed(&FinSet, &idx, &family).unwrap();
        assert_eq!(m.slice.total.len(), 3);
        let fiber_sizes: Vec<usize> = (0..m.bases.apex.len()).map(|j| m.slice.anchor.preimage(j).len()).collect();
        assert_eq!(fiber_sizes, vec![2, 1]);
    }

    #[test]
    fn fiber_examples() {
        let idx = IndexSet::new(["i", "j"]).unwrap();
        let cp = copower(&FinSet, &idx);
        let sigma_j = SliceObject::new(&FinSet, cp.coprojection("j").unwrap().clone());
        assert!(fiber(&FinSet, &sigma_j, &cp, "i").unwrap().total().is_empty());

        let id = SliceObject::new(&FinSet, FinSet.identity(cp.carrier()));
        assert_eq!(fiber(&FinSet, &id, &cp, "i").unwrap().total().len(), 1);

        let abc = set(&["a", "b", "c"]);
        let p0 = cp.carrier().label(0).to_string();
        let p1 = cp.carrier().label(1).to_string();
        let f = FinMap::new(&abc, cp.carrier(), [("a", &p0), ("b", &p0), ("c", &p1)]).unwrap();
        let f = SliceObject::new(&FinSet, f);
        assert_eq!(fiber(&FinSet, &f, &cp, "i").unwrap().total().len(), 2);
        assert!(matches!(fiber(&FinSet, &f, &cp, "k"), Err(Error::UnknownLabel { .. })));
    }

    #[test]
    fn counit_is_bijective_on_small_finset_slices() {
        for n in 0..=3 {
            let cp = copower(&FinSet, &IndexSet::standard(n));
            for a in FinSet.enumerate_objects(3) {
                for f in FinSet.enumerate_morphisms(&a, cp.carrier(), CAP).unwrap() {
                    let eps = counit_component(&FinSet, &SliceObject::new(&FinSet, f), &cp).unwrap();
                    assert!(FinSet.is_iso(&eps));
                }
            }
        }
    }

    #[test]
    fn counit_over_empty_index() {
        let cp = copower(&FinSet, &IndexSet::empty());
        let id = SliceObject::new(&FinSet, FinSet.identity(cp.carrier()));
        let eps = counit_component(&FinSet, &id, &cp).unwrap();
        assert!(FinSet.dom(&eps).is_empty());
        assert!(FinSet.is_iso(&eps));
    }

    #[test]
    fn pointed_counit() {
        let v = FinPointedSet;
        let cp = copower(&v, &IndexSet::new(["i", "j"]).unwrap());
        let id = SliceObject::new(&v, v.identity(cp.carrier()));
        let eps = counit_component(&v, &id, &cp).unwrap();
        assert_eq!(v.dom(&eps).len(), 1);

        let s = FinPointedSet::standard(2);
        let only = v.enumerate_morphisms(&s, cp.carrier(), CAP).unwrap();
        assert_eq!(only.len(), 1);
        let eps = counit_component(&v, &SliceObject::new(&v, only[0].clone()), &cp).unwrap();
        assert_eq!(v.dom(&eps).len(), 3);
        assert!(!eps.underlying().is_injective());
    }

    #[test]
    fn adjoint_equivalence_finset_and_pointed() {
        for n in 0..=3 {
            let verdict = check_adjoint_equivalence(&FinSet, &IndexSet::standard(n), 3, CAP).unwrap();
            assert!(verdict.holds, "{:?}", verdict.witnesses);
        }
        let verdict = check_adjoint_equivalence(&FinPointedSet, &IndexSet::standard(2), 2, CAP).unwrap();
        assert!(!verdict.holds);
        assert!(verdict.has_failed("counit-not-iso"));
        assert!(verdict.has_failed("unit-not-iso"));
    }

    #[test]
    fn empty_index_adjoint_equivalence() {
        let verdict = check_adjoint_equivalence(&FinSet, &IndexSet::empty(), 3, CAP).unwrap();
        assert!(verdict.holds);
        assert!(verdict.informative);
    }

    #[test]
    fn extensivity_verdicts() {
        let mode = ExtensivityMode::PointwiseTerminal;
        let fs = check_extensive(&FinSet, 2, 2, mode, CAP).unwrap();
        assert!(fs.extensive());
        assert_eq!(fs.label, "extensive-up-to-bound");

        let ps = check_extensive(&FinPointedSet, 2, 2, mode, CAP).unwrap();
        assert!(!ps.extensive());
        let w = ps.verdict.first().unwrap();
        assert_eq!(w.check, "hom-count");
        assert_eq!(w.detail["paired_maps"], 4);
        assert_eq!(w.detail["amalgamated_maps"], 9);
    }

    #[test]
    fn general_mode_verdicts() {
        let mode = ExtensivityMode::GeneralFamily;
        assert!(check_extensive(&FinSet, 2, 2, mode, CAP).unwrap().extensive());
        let ps = check_extensive(&FinPointedSet, 2, 2, mode, CAP).unwrap();
        assert!(!ps.extensive());
        assert!(ps.verdict.has_failed("not-essentially-surjective"));
    }

    #[test]
    fn zero_index_bound_is_the_empty_family_fragment() {
        let r = check_extensive(&FinSet, 0, 2, ExtensivityMode::PointwiseTerminal, CAP).unwrap();
        assert!(r.extensive());
        assert!(r.verdict.informative);
    }
}
