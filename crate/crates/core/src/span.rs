//! The pseudo-double category `Span_d(V)` of discrete spans.
//!
//! Objects are index sets, horizontal 1-cells `I -> J` are spans
//! `I•1 <- A -> J•1`, vertical 1-cells are index maps, and cells are
//! strictly commuting squares. Horizontal composition is by pullback, written
//! in diagrammatic order: `compose_spans(S, T)` is `S` followed by `T`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::copower::{copower, copower_map};
use crate::error::{Error, Result};
use crate::index::{IndexMap, IndexSet};
use crate::kernel::{BaseCategory, PullbackOf};
use crate::double::{self, PseudoDouble};
use crate::verdict::Verdict;

/// A span `I•1 <-a1- A -a2-> J•1`.
pub struct Span<V: BaseCategory> {
    pub left_index: IndexSet,
    pub right_index: IndexSet,
    pub apex: V::Obj,
    pub left_leg: V::Mor,
    pub right_leg: V::Mor,
}

base_struct_impls!(Span { left_index, right_index, apex, left_leg, right_leg });

impl<V: BaseCategory> Span<V> {
    pub fn new(v: &V, left_index: IndexSet, right_index: IndexSet, left_leg: V::Mor, right_leg: V::Mor) -> Result<Self> {
        let apex = v.dom(&left_leg);
        if v.dom(&right_leg) != apex {
            return Err(Error::boundary("span legs have different domains"));
        }
        if v.cod(&left_leg) != *copower(v, &left_index).carrier() {
            return Err(Error::boundary(format!("left leg does not land in {left_index:?}•1")));
        }
        if v.cod(&right_leg) != *copower(v, &right_index).carrier() {
            return Err(Error::boundary(format!("right leg does not land in {right_index:?}•1")));
        }
        Ok(Span {
            left_index,
            right_index,
            apex,
            left_leg,
            right_leg,
        })
    }

    pub fn describe(&self, v: &V) -> serde_json::Value {
        json!({
            "left_index": self.left_index,
            "right_index": self.right_index,
            "apex": v.obj_id(&self.apex),
            "left_leg": v.describe(&self.left_leg),
            "right_leg": v.describe(&self.right_leg),
        })
    }
}

/// A square from `top` to `bottom` over index maps `left` and `right`.
pub struct SpanCell<V: BaseCategory> {
    pub top: Span<V>,
    pub bottom: Span<V>,
    pub left: IndexMap,
    pub right: IndexMap,
    pub body: V::Mor,
}

base_struct_impls!(SpanCell { top, bottom, left, right, body });

impl<V: BaseCategory> SpanCell<V> {
    /// Builds a cell, checking both squares on the nose.
    pub fn new(v: &V, top: Span<V>, bottom: Span<V>, left: IndexMap, right: IndexMap, body: V::Mor) -> Result<Self> {
        if *left.src() != top.left_index || *left.dst() != bottom.left_index {
            return Err(Error::boundary("left index map does not match the spans"));
        }
        if *right.src() != top.right_index || *right.dst() != bottom.right_index {
            return Err(Error::boundary("right index map does not match the spans"));
        }
        if v.dom(&body) != top.apex || v.cod(&body) != bottom.apex {
            return Err(Error::boundary("cell body does not connect the apexes"));
        }
        let square = |leg: &V::Mor, u: &IndexMap, other: &V::Mor| -> Result<bool> {
            let lhs = v.compose(leg, &copower_map(v, u)?)?;
            let rhs = v.compose(&body, other)?;
            Ok(v.mor_eq(&lhs, &rhs))
        };
        if !square(&top.left_leg, &left, &bottom.left_leg)? {
            return Err(Error::boundary("left square of the cell does not commute"));
        }
        if !square(&top.right_leg, &right, &bottom.right_leg)? {
            return Err(Error::boundary("right square of the cell does not commute"));
        }
        Ok(SpanCell {
            top,
            bottom,
            left,
            right,
            body,
        })
    }

    /// Whether both vertical boundaries are identities.
    pub fn is_globular(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }
}

/// `I•1 <-id- I•1 -id-> I•1`.
pub fn identity_span<V: BaseCategory>(v: &V, index: &IndexSet) -> Span<V> {
    let carrier = copower(v, index).cocone.apex;
    let id = v.identity(&carrier);
    Span {
        left_index: index.clone(),
        right_index: index.clone(),
        apex: carrier,
        left_leg: id.clone(),
        right_leg: id,
    }
}

pub fn identity_cell<V: BaseCategory>(v: &V, s: &Span<V>) -> SpanCell<V> {
    SpanCell {
        top: s.clone(),
        bottom: s.clone(),
        left: IndexMap::identity(&s.left_index),
        right: IndexMap::identity(&s.right_index),
        body: v.identity(&s.apex),
    }
}

/// `S` then `T`, together with the pullback square whose apex is the
/// composite apex (`left` projects to `S`, `right` to `T`).
pub fn compose_spans<V: BaseCategory>(v: &V, s: &Span<V>, t: &Span<V>) -> Result<(Span<V>, PullbackOf<V>)> {
    if s.right_index != t.left_index {
        return Err(Error::boundary(format!(
            "spans meet at {:?} and {:?}",
            s.right_index, t.left_index
        )));
    }
    let pb = v.pullback(&s.right_leg, &t.left_leg)?;
    let span = Span {
        left_index: s.left_index.clone(),
        right_index: t.right_index.clone(),
        apex: pb.apex.clone(),
        left_leg: v.compose(&pb.left, &s.left_leg)?,
        right_leg: v.compose(&pb.right, &t.right_leg)?,
    };
    Ok((span, pb))
}

/// `α` then `β`, pasted vertically.
pub fn compose_cells_vertical<V: BaseCategory>(v: &V, alpha: &SpanCell<V>, beta: &SpanCell<V>) -> Result<SpanCell<V>> {
    if alpha.bottom != beta.top {
        return Err(Error::boundary("vertical composite needs alpha.bottom = beta.top"));
    }
    Ok(SpanCell {
        top: alpha.top.clone(),
        bottom: beta.bottom.clone(),
        left: alpha.left.then(&beta.left)?,
        right: alpha.right.then(&beta.right)?,
        body: v.compose(&alpha.body, &beta.body)?,
    })
}

/// `α` beside `β`: the body is the map between composite apexes induced by
/// the two bodies.
pub fn compose_cells_horizontal<V: BaseCategory>(v: &V, alpha: &SpanCell<V>, beta: &SpanCell<V>) -> Result<SpanCell<V>> {
    if alpha.right != beta.left {
        return Err(Error::boundary("horizontal composite needs a shared middle index map"));
    }
    let (top, p) = compose_spans(v, &alpha.top, &beta.top)?;
    let (bottom, q) = compose_spans(v, &alpha.bottom, &beta.bottom)?;
    let h = v.compose(&p.left, &alpha.body)?;
    let k = v.compose(&p.right, &beta.body)?;
    let body = v
        .pullback_mediator(&q, &h, &k)
        .map_err(|e| Error::internal(format!("no mediating map for the horizontal composite: {e}")))?;
    Ok(SpanCell {
        top,
        bottom,
        left: alpha.left.clone(),
        right: beta.right.clone(),
        body,
    })
}

fn globular<V: BaseCategory>(top: Span<V>, bottom: Span<V>, body: V::Mor) -> SpanCell<V> {
    SpanCell {
        left: IndexMap::identity(&top.left_index),
        right: IndexMap::identity(&top.right_index),
        top,
        bottom,
        body,
    }
}

/// The canonical isomorphism `(S∘T)∘U => S∘(T∘U)`.
pub fn associator<V: BaseCategory>(v: &V, s: &Span<V>, t: &Span<V>, u: &Span<V>) -> Result<SpanCell<V>> {
    let (st, p1) = compose_spans(v, s, t)?;
    let (lhs, q1) = compose_spans(v, &st, u)?;
    let (tu, p2) = compose_spans(v, t, u)?;
    let (rhs, q2) = compose_spans(v, s, &tu)?;
    let to_s = v.compose(&q1.left, &p1.left)?;
    let to_t = v.compose(&q1.left, &p1.right)?;
    let to_tu = v.pullback_mediator(&p2, &to_t, &q1.right)?;
    let body = v.pullback_mediator(&q2, &to_s, &to_tu)?;
    Ok(globular(lhs, rhs, body))
}

/// The inverse isomorphism `S∘(T∘U) => (S∘T)∘U`.
pub fn associator_inverse<V: BaseCategory>(v: &V, s: &Span<V>, t: &Span<V>, u: &Span<V>) -> Result<SpanCell<V>> {
    let (st, p1) = compose_spans(v, s, t)?;
    let (lhs, q1) = compose_spans(v, &st, u)?;
    let (tu, p2) = compose_spans(v, t, u)?;
    let (rhs, q2) = compose_spans(v, s, &tu)?;
    let to_t = v.compose(&q2.right, &p2.left)?;
    let to_u = v.compose(&q2.right, &p2.right)?;
    let to_st = v.pullback_mediator(&p1, &q2.left, &to_t)?;
    let body = v.pullback_mediator(&q1, &to_st, &to_u)?;
    Ok(globular(rhs, lhs, body))
}

/// `id_I ∘ S => S`; the body is the projection onto `S`.
pub fn left_unitor<V: BaseCategory>(v: &V, s: &Span<V>) -> Result<SpanCell<V>> {
    let (lhs, pb) = compose_spans(v, &identity_span(v, &s.left_index), s)?;
    Ok(globular(lhs, s.clone(), pb.right))
}

/// `S ∘ id_J => S`; the body is the projection onto `S`.
pub fn right_unitor<V: BaseCategory>(v: &V, s: &Span<V>) -> Result<SpanCell<V>> {
    let (lhs, pb) = compose_spans(v, s, &identity_span(v, &s.right_index))?;
    Ok(globular(lhs, s.clone(), pb.left))
}

/// The inverse of a cell with invertible body and identity boundaries.
pub fn invert_cell<V: BaseCategory>(v: &V, c: &SpanCell<V>) -> Option<SpanCell<V>> {
    if !c.is_globular() {
        return None;
    }
    let inv = v.inverse(&c.body)?;
    Some(globular(c.bottom.clone(), c.top.clone(), inv))
}

/// A uniformly chosen span `I -> J` whose apex has rank at most `apex_bound`.
pub fn random_span<V: BaseCategory>(
    v: &V,
    rng: &mut ChaCha8Rng,
    left: &IndexSet,
    right: &IndexSet,
    apex_bound: usize,
    cap: usize,
) -> Result<Span<V>> {
    let lc = copower(v, left).cocone.apex;
    let rc = copower(v, right).cocone.apex;
    let mut candidates = Vec::new();
    for a in v.enumerate_objects(apex_bound) {
        let ls = v.enumerate_morphisms(&a, &lc, cap)?;
        let rs = v.enumerate_morphisms(&a, &rc, cap)?;
        if !ls.is_empty() && !rs.is_empty() {
            candidates.push((ls, rs));
        }
    }
    let (ls, rs) = &candidates[rng.gen_range(0..candidates.len())];
    let l = ls[rng.gen_range(0..ls.len())].clone();
    let r = rs[rng.gen_range(0..rs.len())].clone();
    Span::new(v, left.clone(), right.clone(), l, r)
}

/// Every cell `top => bottom` over `(left, right)`: the maps of apexes over
/// `K•1 × L•1` between the reindexed top legs and the bottom legs.
pub fn cells_between<V: BaseCategory>(
    v: &V,
    top: &Span<V>,
    bottom: &Span<V>,
    left: &IndexMap,
    right: &IndexMap,
    cap: usize,
) -> Result<Vec<SpanCell<V>>> {
    if *left.src() != top.left_index || *left.dst() != bottom.left_index {
        return Err(Error::boundary("left index map does not match the spans"));
    }
    if *right.src() != top.right_index || *right.dst() != bottom.right_index {
        return Err(Error::boundary("right index map does not match the spans"));
    }
    let base = v.product(&[v.cod(&bottom.left_leg), v.cod(&bottom.right_leg)]);
    let moved = [
        v.compose(&top.left_leg, &copower_map(v, left)?)?,
        v.compose(&top.right_leg, &copower_map(v, right)?)?,
    ];
    let a = v.tuple(&top.apex, &base, &moved)?;
    let b = v.tuple(&bottom.apex, &base, &[bottom.left_leg.clone(), bottom.right_leg.clone()])?;
    v.enumerate_slice_morphisms(&a, &b, cap)?
        .into_iter()
        .map(|body| SpanCell::new(v, top.clone(), bottom.clone(), left.clone(), right.clone(), body))
        .collect()
}

/// Marker for the pseudo-double category of discrete spans.
#[derive(Debug, Clone, Copy, Default)]
pub struct Spans;

impl<V: BaseCategory> PseudoDouble<V> for Spans {
    type H = Span<V>;
    type Cell = SpanCell<V>;

    const KIND: &'static str = "span";

    fn source(h: &Span<V>) -> &IndexSet {
        &h.left_index
    }

    fn target(h: &Span<V>) -> &IndexSet {
        &h.right_index
    }

    fn unit(v: &V, index: &IndexSet) -> Span<V> {
        identity_span(v, index)
    }

    fn compose(v: &V, h: &Span<V>, k: &Span<V>) -> Result<Span<V>> {
        Ok(compose_spans(v, h, k)?.0)
    }

    fn top(c: &SpanCell<V>) -> &Span<V> {
        &c.top
    }

    fn bottom(c: &SpanCell<V>) -> &Span<V> {
        &c.bottom
    }

    fn boundaries(c: &SpanCell<V>) -> (&IndexMap, &IndexMap) {
        (&c.left, &c.right)
    }

    fn unit_cell(v: &V, u: &IndexMap) -> Result<SpanCell<V>> {
        let top = identity_span(v, u.src());
        let bottom = identity_span(v, u.dst());
        SpanCell::new(v, top, bottom, u.clone(), u.clone(), copower_map(v, u)?)
    }

    fn cells_between(
        v: &V,
        top: &Span<V>,
        bottom: &Span<V>,
        left: &IndexMap,
        right: &IndexMap,
        cap: usize,
    ) -> Result<Vec<SpanCell<V>>> {
        cells_between(v, top, bottom, left, right, cap)
    }

    fn identity_cell(v: &V, h: &Span<V>) -> SpanCell<V> {
        identity_cell(v, h)
    }

    fn vertical(v: &V, a: &SpanCell<V>, b: &SpanCell<V>) -> Result<SpanCell<V>> {
        compose_cells_vertical(v, a, b)
    }

    fn horizontal(v: &V, a: &SpanCell<V>, b: &SpanCell<V>) -> Result<SpanCell<V>> {
        compose_cells_horizontal(v, a, b)
    }

    fn associator(v: &V, h: &Span<V>, k: &Span<V>, l: &Span<V>) -> Result<SpanCell<V>> {
        associator(v, h, k, l)
    }

    fn left_unitor(v: &V, h: &Span<V>) -> Result<SpanCell<V>> {
        left_unitor(v, h)
    }

    fn right_unitor(v: &V, h: &Span<V>) -> Result<SpanCell<V>> {
        right_unitor(v, h)
    }

    fn invert(v: &V, c: &SpanCell<V>) -> Option<SpanCell<V>> {
        invert_cell(v, c)
    }

    fn describe(v: &V, h: &Span<V>) -> serde_json::Value {
        h.describe(v)
    }

    fn describe_cell(v: &V, c: &SpanCell<V>) -> serde_json::Value {
        json!({
            "top": c.top.describe(v),
            "bottom": c.bottom.describe(v),
            "left": format!("{:?}", c.left),
            "right": format!("{:?}", c.right),
            "body": v.describe(&c.body),
        })
    }

    fn random(v: &V, rng: &mut ChaCha8Rng, from: &IndexSet, to: &IndexSet, bound: usize, cap: usize) -> Result<Span<V>> {
        random_span(v, rng, from, to, bound, cap)
    }
}

/// Pentagon and triangle for `trials` seeded random quadruples of spans with
/// apexes of rank at most `apex_bound`.
pub fn check_coherence<V: BaseCategory>(v: &V, trials: usize, seed: u64, apex_bound: usize, cap: usize) -> Result<Verdict> {
    double::check_coherence::<V, Spans>(v, trials, seed, apex_bound, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinMap, FinPointedSet, FinSet, FinSetObj};
    use crate::kernel::DEFAULT_ENUMERATION_CAP as CAP;

    fn set(labels: &[&str]) -> FinSetObj {
        FinSetObj::new(labels.iter().copied()).unwrap()
    }

    fn pt(index: &IndexSet, label: &str) -> String {
        let cp = copower(&FinSet, index);
        cp.carrier().label(index.require(label).unwrap()).to_string()
    }

    /// A span given by `apex element -> (left label, right label)`.
    fn span(i: &IndexSet, j: &IndexSet, rows: &[(&str, &str, &str)]) -> Span<FinSet> {
        let apex = set(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
        let lc = copower(&FinSet, i).cocone.apex;
        let rc = copower(&FinSet, j).cocone.apex;
        let l = FinMap::new(&apex, &lc, rows.iter().map(|r| (r.0.to_string(), pt(i, r.1)))).unwrap();
        let r = FinMap::new(&apex, &rc, rows.iter().map(|r| (r.0.to_string(), pt(j, r.2)))).unwrap();
        Span::new(&FinSet, i.clone(), j.clone(), l, r).unwrap()
    }

    fn idx(labels: &[&str]) -> IndexSet {
        IndexSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn identity_span_examples() {
        assert!(identity_span(&FinSet, &IndexSet::empty()).apex.is_empty());
        assert_eq!(identity_span(&FinSet, &idx(&["i"])).apex.len(), 1);
        let ij = idx(&["i", "j"]);
        let id = identity_span(&FinSet, &ij);
        assert_eq!(id.apex.len(), 2);
        let s = span(&ij, &idx(&["k"]), &[("a", "i", "k"), ("b", "j", "k"), ("c", "j", "k")]);
        let (left, _) = compose_spans(&FinSet, &id, &s).unwrap();
        assert_eq!(left.apex.len(), s.apex.len());
        let t = span(&idx(&["k"]), &ij, &[("a", "k", "i"), ("b", "k", "i")]);
        let (right, _) = compose_spans(&FinSet, &t, &id).unwrap();
        assert_eq!(right.apex.len(), t.apex.len());
    }

    #[test]
    fn composition_examples() {
        let i = idx(&["i"]);
        let j = idx(&["j"]);
        let k = idx(&["k"]);
        let id = identity_span(&FinSet, &i);
        let (c, _) = compose_spans(&FinSet, &id, &id).unwrap();
        assert!(FinSet.is_iso(&left_unitor(&FinSet, &id).unwrap().body));
        assert_eq!(c.apex.len(), 1);

        let s = span(&i, &j, &[("a", "i", "j"), ("b", "i", "j")]);
        let t = span(&j, &k, &[("c", "j", "k")]);
        assert_eq!(compose_spans(&FinSet, &s, &t).unwrap().0.apex.len(), 2);

        let empty = span(&j, &k, &[]);
        assert!(compose_spans(&FinSet, &s, &empty).unwrap().0.apex.is_empty());
        assert!(matches!(compose_spans(&FinSet, &t, &s), Err(Error::Boundary(_))));
    }

    #[test]
    fn cells_check_their_squares() {
        let ij = idx(&["i", "j"]);
        let k = idx(&["k"]);
        let s = span(&ij, &k, &[("a", "i", "k"), ("b", "j", "k")]);
        let swap = FinMap::new(&s.apex, &s.apex, [("a", "b"), ("b", "a")]).unwrap();
        let bad = SpanCell::new(&FinSet, s.clone(), s.clone(), IndexMap::identity(&ij), IndexMap::identity(&k), swap.clone());
        assert!(matches!(bad, Err(Error::Boundary(_))));
        let flip = IndexMap::new(&ij, &ij, [("i", "j"), ("j", "i")]).unwrap();
        let good = SpanCell::new(&FinSet, s.clone(), s.clone(), flip, IndexMap::identity(&k), swap).unwrap();
        let twice = compose_cells_vertical(&FinSet, &good, &good).unwrap();
        assert_eq!(twice, identity_cell(&FinSet, &s));
    }

    #[test]
    fn vertical_composition_is_table_composition() {
        let i = idx(&["i"]);
        let s = span(&i, &i, &[("a", "i", "i"), ("b", "i", "i"), ("c", "i", "i")]);
        let f = FinMap::new(&s.apex, &s.apex, [("a", "b"), ("b", "c"), ("c", "c")]).unwrap();
        let g = FinMap::new(&s.apex, &s.apex, [("a", "a"), ("b", "a"), ("c", "b")]).unwrap();
        let ids = || IndexMap::identity(&i);
        let alpha = SpanCell::new(&FinSet, s.clone(), s.clone(), ids(), ids(), f).unwrap();
        let beta = SpanCell::new(&FinSet, s.clone(), s.clone(), ids(), ids(), g).unwrap();
        let c = compose_cells_vertical(&FinSet, &alpha, &beta).unwrap();
        let table: Vec<(String, String)> = c.body.pairs().map(|(a, b)| (a.into(), b.into())).collect();
        assert_eq!(table, [("a", "a"), ("b", "b"), ("c", "b")].map(|(a, b)| (a.to_string(), b.to_string())));
    }

    #[test]
    fn horizontal_composition_of_identities_and_bijections() {
        let i = idx(&["i"]);
        let jj = idx(&["j", "m"]);
        let s = span(&i, &jj, &[("a", "i", "j"), ("b", "i", "j"), ("c", "i", "m")]);
        let t = span(&jj, &i, &[("x", "j", "i"), ("y", "m", "i")]);
        let hid = compose_cells_horizontal(&FinSet, &identity_cell(&FinSet, &s), &identity_cell(&FinSet, &t)).unwrap();
        let (st, _) = compose_spans(&FinSet, &s, &t).unwrap();
        assert_eq!(hid, identity_cell(&FinSet, &st));

        let swap = FinMap::new(&s.apex, &s.apex, [("a", "b"), ("b", "a"), ("c", "c")]).unwrap();
        let alpha = SpanCell::new(&FinSet, s.clone(), s.clone(), IndexMap::identity(&i), IndexMap::identity(&jj), swap).unwrap();
        let h = compose_cells_horizontal(&FinSet, &alpha, &identity_cell(&FinSet, &t)).unwrap();
        assert!(FinSet.is_iso(&h.body));
        assert!(!h.body.pairs().all(|(a, b)| a == b));
    }

    #[test]
    fn associator_examples() {
        let i = idx(&["i", "j"]);
        let id = identity_span(&FinSet, &i);
        let a = associator(&FinSet, &id, &id, &id).unwrap();
        assert!(FinSet.is_iso(&a.body));
        assert_eq!(a.top.apex.len(), 2);

        let one = idx(&["p"]);
        let two = idx(&["q", "r"]);
        let s = span(&one, &two, &[("a", "p", "q"), ("b", "p", "r")]);
        let t = span(&two, &two, &[("c", "q", "q"), ("d", "q", "r"), ("e", "r", "r")]);
        let u = span(&two, &one, &[("f", "q", "p"), ("g", "r", "p")]);
        let a = associator(&FinSet, &s, &t, &u).unwrap();
        assert!(FinSet.is_iso(&a.body));
        // Oracle: triples (x, y, z) with matching middle labels.
        let rows_s = [("p", "q"), ("p", "r")];
        let rows_t = [("q", "q"), ("q", "r"), ("r", "r")];
        let rows_u = [("q", "p"), ("r", "p")];
        let mut count = 0;
        for x in rows_s {
            for y in rows_t {
                for z in rows_u {
                    count += usize::from(x.1 == y.0 && y.1 == z.0);
                }
            }
        }
        assert_eq!(a.top.apex.len(), count);
        assert_eq!(a.bottom.apex.len(), count);
        let inv = associator_inverse(&FinSet, &s, &t, &u).unwrap();
        assert_eq!(compose_cells_vertical(&FinSet, &a, &inv).unwrap(), identity_cell(&FinSet, &a.top));

        let empty = span(&two, &one, &[]);
        let a = associator(&FinSet, &s, &t, &empty).unwrap();
        assert!(a.top.apex.is_empty() && a.bottom.apex.is_empty());
    }

    #[test]
    fn unitor_bodies_are_projections() {
        let i = idx(&["i", "j"]);
        let s = span(&i, &i, &[("a", "i", "j"), ("b", "j", "j")]);
        let l = left_unitor(&FinSet, &s).unwrap();
        let r = right_unitor(&FinSet, &s).unwrap();
        assert!(FinSet.is_iso(&l.body) && FinSet.is_iso(&r.body));
        assert!(l.is_globular() && r.is_globular());
        assert!(invert_cell(&FinSet, &l).is_some());
    }

    #[test]
    fn coherence_holds_on_finset() {
        let verdict = check_coherence(&FinSet, 25, 7, 3, CAP).unwrap();
        assert!(verdict.holds, "{:?}", verdict.witnesses);
        assert_eq!(verdict.cases, 50);
    }

    #[test]
    fn coherence_holds_on_identities() {
        let ids: Vec<Span<FinSet>> = (0..4).map(|_| identity_span(&FinSet, &IndexSet::standard(2))).collect();
        assert!(double::check_tuple::<FinSet, Spans>(&FinSet, &ids, &associator, json!(null)).unwrap().holds);
    }

    #[test]
    fn coherence_holds_on_pointed_sets() {
        let verdict = check_coherence(&FinPointedSet, 10, 3, 3, CAP).unwrap();
        assert!(verdict.holds, "{:?}", verdict.witnesses);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = check_coherence(&FinSet, 5, 11, 3, CAP).unwrap();
        let b = check_coherence(&FinSet, 5, 11, 3, CAP).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn mutant_associator_is_rejected() {
        let verdict = double::check_coherence_with::<FinSet, Spans>(&FinSet, 100, 2024, 4, CAP, &crate::mutants::span_associator).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.first().unwrap().check, "pentagon");
    }
}
