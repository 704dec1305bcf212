//! The oplax functor `Int : V-Mat -> Span_d(V)` and the lax functor
//! `En : Span_d(V) -> V-Mat`, their comparison cells, round-trip witnesses,
//! and a bounded check that they form a double equivalence.
//!
//! `Int` sends a matrix to the span out of the coproduct of its entries;
//! `En` sends a span to the matrix of its fibers over pairs of points. Both
//! are the identity on index sets and index maps.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use crate::copower::{check_extensive, copower, ExtensivityMode};
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};
use crate::index::{IndexMap, IndexSet};
use crate::kernel::{cartesian, BaseCategory, CoconeOf, PullbackOf};
use crate::matrix::{self, composite_entry, compose_matrices, unit_matrix, Matrix, MatrixCell};
use crate::span::{self, compose_spans, identity_span, Span, SpanCell};
use crate::verdict::{Verdict, Witness};

/// `Int(M)` together with the coproduct cocone on its apex; summands are
/// ordered row-major.
pub fn int_data<V: BaseCategory>(v: &V, m: &Matrix<V>) -> Result<(Span<V>, CoconeOf<V>)> {
    let cocone = v.coproduct(&m.entries);
    let rows = copower(v, &m.rows);
    let cols = copower(v, &m.cols);
    let mut left = Vec::with_capacity(m.entries.len());
    let mut right = Vec::with_capacity(m.entries.len());
    for i in 0..m.rows.len() {
        for j in 0..m.cols.len() {
            let bang = v.to_terminal(m.entry(i, j))?;
            left.push(v.compose(&bang, &rows.cocone.legs[i])?);
            right.push(v.compose(&bang, &cols.cocone.legs[j])?);
        }
    }
    let span = Span {
        left_index: m.rows.clone(),
        right_index: m.cols.clone(),
        apex: cocone.apex.clone(),
        left_leg: v.cotuple(&cocone, rows.carrier(), &left)?,
        right_leg: v.cotuple(&cocone, cols.carrier(), &right)?,
    };
    Ok((span, cocone))
}

pub fn int_object<V: BaseCategory>(v: &V, m: &Matrix<V>) -> Result<Span<V>> {
    Ok(int_data(v, m)?.0)
}

/// The pullback of `⟨a1, a2⟩ : A -> I•1 × J•1` along the point `(i, j)`.
/// Its `left` leg includes the fiber into the apex.
pub fn en_entry<V: BaseCategory>(v: &V, s: &Span<V>, i: usize, j: usize) -> Result<PullbackOf<V>> {
    let rows = copower(v, &s.left_index);
    let cols = copower(v, &s.right_index);
    let base = v.product(&[rows.carrier().clone(), cols.carrier().clone()]);
    let paired = v.tuple(&s.apex, &base, &[s.left_leg.clone(), s.right_leg.clone()])?;
    let point = v.tuple(&v.terminal(), &base, &[rows.cocone.legs[i].clone(), cols.cocone.legs[j].clone()])?;
    v.pullback(&paired, &point)
}

/// All fibers of a span, row-major.
pub fn en_data<V: BaseCategory>(v: &V, s: &Span<V>) -> Result<Vec<PullbackOf<V>>> {
    let mut out = Vec::with_capacity(s.left_index.len() * s.right_index.len());
    for i in 0..s.left_index.len() {
        for j in 0..s.right_index.len() {
            out.push(en_entry(v, s, i, j)?);
        }
    }
    Ok(out)
}

pub fn en_object<V: BaseCategory>(v: &V, s: &Span<V>) -> Result<Matrix<V>> {
    let entries = en_data(v, s)?.into_iter().map(|pb| pb.apex).collect();
    Matrix::new(s.left_index.clone(), s.right_index.clone(), entries)
}

/// `Int` on cells: the coproduct of the components, retagged along the
/// boundary index maps.
pub fn int_cell<V: BaseCategory>(v: &V, c: &MatrixCell<V>) -> Result<SpanCell<V>> {
    let (top, src) = int_data(v, &c.top)?;
    let (bottom, dst) = int_data(v, &c.bottom)?;
    let cols = c.bottom.cols.len();
    let mut legs = Vec::with_capacity(c.components.len());
    for i in 0..c.top.rows.len() {
        for j in 0..c.top.cols.len() {
            let slot = c.left.at(i) * cols + c.right.at(j);
            legs.push(v.compose(c.component(i, j), &dst.legs[slot])?);
        }
    }
    let body = v.cotuple(&src, &bottom.apex, &legs)?;
    SpanCell::new(v, top, bottom, c.left.clone(), c.right.clone(), body)
}

/// `En` on cells: the maps between fibers induced by the body.
pub fn en_cell<V: BaseCategory>(v: &V, c: &SpanCell<V>) -> Result<MatrixCell<V>> {
    let src = en_data(v, &c.top)?;
    let top = Matrix::new(c.top.left_index.clone(), c.top.right_index.clone(), src.iter().map(|p| p.apex.clone()).collect())?;
    let bottom = en_object(v, &c.bottom)?;
    let mut components = Vec::with_capacity(src.len());
    for i in 0..c.top.left_index.len() {
        for j in 0..c.top.right_index.len() {
            let from = &src[i * c.top.right_index.len() + j];
            let to = en_entry(v, &c.bottom, c.left.at(i), c.right.at(j))?;
            let through = v.compose(&from.left, &c.body)?;
            components.push(
                v.pullback_mediator(&to, &through, &from.right)
                    .map_err(|e| Error::internal(format!("fiber map for en_cell: {e}")))?,
            );
        }
    }
    MatrixCell::new(v, top, bottom, c.left.clone(), c.right.clone(), components)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Oplax,
    Lax,
}

/// A structure cell of `Int` or `En` with its verified inverse, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonCell<C> {
    pub direction: Direction,
    pub cell: C,
    pub iso_witness: Option<C>,
}

impl<C> ComparisonCell<C> {
    pub fn is_iso(&self) -> bool {
        self.iso_witness.is_some()
    }
}

/// Inverse of a globular span cell, checked on both sides.
fn verified_span_inverse<V: BaseCategory>(v: &V, c: &SpanCell<V>) -> Result<Option<SpanCell<V>>> {
    let Some(inv) = span::invert_cell(v, c) else {
        return Ok(None);
    };
    let there = span::compose_cells_vertical(v, c, &inv)?;
    let back = span::compose_cells_vertical(v, &inv, c)?;
    let ok = there == span::identity_cell(v, &c.top) && back == span::identity_cell(v, &c.bottom);
    Ok(ok.then_some(inv))
}

fn verified_matrix_inverse<V: BaseCategory>(v: &V, c: &MatrixCell<V>) -> Result<Option<MatrixCell<V>>> {
    let Some(inv) = matrix::invert_cell(v, c) else {
        return Ok(None);
    };
    let there = matrix::compose_cells_vertical(v, c, &inv)?;
    let back = matrix::compose_cells_vertical(v, &inv, c)?;
    let ok = there == matrix::identity_cell(v, &c.top) && back == matrix::identity_cell(v, &c.bottom);
    Ok(ok.then_some(inv))
}

fn globular_span<V: BaseCategory>(v: &V, top: Span<V>, bottom: Span<V>, body: V::Mor) -> Result<SpanCell<V>> {
    let (l, r) = (IndexMap::identity(&top.left_index), IndexMap::identity(&top.right_index));
    SpanCell::new(v, top, bottom, l, r, body)
}

fn globular_matrix<V: BaseCategory>(v: &V, top: Matrix<V>, bottom: Matrix<V>, components: Vec<V::Mor>) -> Result<MatrixCell<V>> {
    let (l, r) = (IndexMap::identity(&top.rows), IndexMap::identity(&top.cols));
    MatrixCell::new(v, top, bottom, l, r, components)
}

/// `Int(M∘N) => Int(M)∘Int(N)`.
pub fn oplax_comparison<V: BaseCategory>(v: &V, m: &Matrix<V>, n: &Matrix<V>) -> Result<ComparisonCell<SpanCell<V>>> {
    let mn = compose_matrices(v, m, n)?;
    let (top, outer) = int_data(v, &mn)?;
    let (sm, cm) = int_data(v, m)?;
    let (sn, cn) = int_data(v, n)?;
    let (bottom, pb) = compose_spans(v, &sm, &sn)?;
    let (js, ks) = (m.cols.len(), n.cols.len());
    let mut legs = Vec::with_capacity(outer.legs.len());
    for i in 0..m.rows.len() {
        for k in 0..ks {
            let e = composite_entry(v, m, n, i, k);
            let inner = (0..js)
                .map(|j| {
                    let pr = &e.products[j];
                    let to_m = v.compose(&pr.legs[0], &cm.legs[i * js + j])?;
                    let to_n = v.compose(&pr.legs[1], &cn.legs[j * ks + k])?;
                    v.pullback_mediator(&pb, &to_m, &to_n)
                })
                .collect::<Result<Vec<_>>>()?;
            legs.push(v.cotuple(&e.sum, &bottom.apex, &inner)?);
        }
    }
    let body = v.cotuple(&outer, &bottom.apex, &legs)?;
    let cell = globular_span(v, top, bottom, body)?;
    let iso_witness = verified_span_inverse(v, &cell)?;
    Ok(ComparisonCell {
        direction: Direction::Oplax,
        cell,
        iso_witness,
    })
}

/// `Int(unit_I) => id_I`.
pub fn oplax_unit_comparison<V: BaseCategory>(v: &V, index: &IndexSet) -> Result<ComparisonCell<SpanCell<V>>> {
    let u = unit_matrix(v, index);
    let (top, cocone) = int_data(v, &u)?;
    let bottom = identity_span(v, index);
    let cp = copower(v, index);
    let n = index.len();
    let legs = (0..n * n)
        .map(|s| {
            let (i, j) = (s / n, s % n);
            if i == j {
                Ok(cp.cocone.legs[i].clone())
            } else {
                v.from_initial(&bottom.apex)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let body = v.cotuple(&cocone, &bottom.apex, &legs)?;
    let cell = globular_span(v, top, bottom, body)?;
    let iso_witness = verified_span_inverse(v, &cell)?;
    Ok(ComparisonCell {
        direction: Direction::Oplax,
        cell,
        iso_witness,
    })
}

/// `En(S)∘En(T) => En(S∘T)`.
pub fn lax_comparison<V: BaseCategory>(v: &V, s: &Span<V>, t: &Span<V>) -> Result<ComparisonCell<MatrixCell<V>>> {
    let es = en_object(v, s)?;
    let et = en_object(v, t)?;
    let fs = en_data(v, s)?;
    let ft = en_data(v, t)?;
    let top = compose_matrices(v, &es, &et)?;
    let (st, pb) = compose_spans(v, s, t)?;
    let bottom = en_object(v, &st)?;
    let (js, ks) = (s.right_index.len(), t.right_index.len());
    let mut components = Vec::with_capacity(top.entries.len());
    for i in 0..s.left_index.len() {
        for k in 0..ks {
            let e = composite_entry(v, &es, &et, i, k);
            let target = en_entry(v, &st, i, k)?;
            let legs = (0..js)
                .map(|j| {
                    let pr = &e.products[j];
                    let x = v.compose(&pr.legs[0], &fs[i * js + j].left)?;
                    let y = v.compose(&pr.legs[1], &ft[j * ks + k].left)?;
                    let into = v.pullback_mediator(&pb, &x, &y)?;
                    v.pullback_mediator(&target, &into, &v.to_terminal(&pr.apex)?)
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(v.cotuple(&e.sum, &target.apex, &legs)?);
        }
    }
    let cell = globular_matrix(v, top, bottom, components)?;
    let iso_witness = verified_matrix_inverse(v, &cell)?;
    Ok(ComparisonCell {
        direction: Direction::Lax,
        cell,
        iso_witness,
    })
}

/// `unit_I => En(id_I)`.
pub fn lax_unit_comparison<V: BaseCategory>(v: &V, index: &IndexSet) -> Result<ComparisonCell<MatrixCell<V>>> {
    let top = unit_matrix(v, index);
    let id = identity_span(v, index);
    let cp = copower(v, index);
    let fibers = en_data(v, &id)?;
    let n = index.len();
    let components = (0..n * n)
        .map(|s| {
            let (i, j) = (s / n, s % n);
            let target = &fibers[s];
            if i == j {
                v.pullback_mediator(target, &cp.cocone.legs[i], &v.identity(&v.terminal()))
            } else {
                v.from_initial(&target.apex)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let bottom = en_object(v, &id)?;
    let cell = globular_matrix(v, top, bottom, components)?;
    let iso_witness = verified_matrix_inverse(v, &cell)?;
    Ok(ComparisonCell {
        direction: Direction::Lax,
        cell,
        iso_witness,
    })
}

/// A comparison between an object and its image under `En∘Int` or
/// `Int∘En`, with a verified inverse when the comparison is invertible.
#[derive(Debug, Clone, PartialEq)]
pub struct Roundtrip<C> {
    pub comparison: C,
    pub inverse: Option<C>,
}

impl<C> Roundtrip<C> {
    pub fn holds(&self) -> bool {
        self.inverse.is_some()
    }
}

/// `M => En(Int(M))`, componentwise the inclusion of `M(i,j)` as the
/// `(i,j)` fiber of the coproduct.
pub fn roundtrip_matrix<V: BaseCategory>(v: &V, m: &Matrix<V>) -> Result<Roundtrip<MatrixCell<V>>> {
    let (s, cocone) = int_data(v, m)?;
    let fibers = en_data(v, &s)?;
    let components = fibers
        .iter()
        .zip(&m.entries)
        .zip(&cocone.legs)
        .map(|((pb, x), leg)| v.pullback_mediator(pb, leg, &v.to_terminal(x)?))
        .collect::<Result<Vec<_>>>()?;
    let bottom = Matrix::new(m.rows.clone(), m.cols.clone(), fibers.into_iter().map(|p| p.apex).collect())?;
    let comparison = globular_matrix(v, m.clone(), bottom, components)?;
    let inverse = verified_matrix_inverse(v, &comparison)?;
    Ok(Roundtrip { comparison, inverse })
}

/// `Int(En(S)) => S`, the coproduct of the fiber inclusions.
pub fn roundtrip_span<V: BaseCategory>(v: &V, s: &Span<V>) -> Result<Roundtrip<SpanCell<V>>> {
    let fibers = en_data(v, s)?;
    let em = Matrix::new(s.left_index.clone(), s.right_index.clone(), fibers.iter().map(|p| p.apex.clone()).collect())?;
    let (top, cocone) = int_data(v, &em)?;
    let legs: Vec<V::Mor> = fibers.iter().map(|p| p.left.clone()).collect();
    let body = v.cotuple(&cocone, &s.apex, &legs)?;
    let comparison = globular_span(v, top, s.clone(), body)?;
    let inverse = verified_span_inverse(v, &comparison)?;
    Ok(Roundtrip { comparison, inverse })
}

/// The argument of [`roundtrip_check`].
pub enum Horizontal<V: BaseCategory> {
    Matrix(Matrix<V>),
    Span(Span<V>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundtripReport {
    pub holds: bool,
    pub kind: &'static str,
    pub witness: serde_json::Value,
}

/// Runs the appropriate round trip and reports the comparison and its
/// inverse (or the comparison alone, if it is not invertible).
pub fn roundtrip_check<V: BaseCategory>(v: &V, x: &Horizontal<V>) -> Result<RoundtripReport> {
    use crate::double::PseudoDouble;
    Ok(match x {
        Horizontal::Matrix(m) => {
            let r = roundtrip_matrix(v, m)?;
            RoundtripReport {
                holds: r.holds(),
                kind: "matrix",
                witness: json!({
                    "comparison": matrix::Matrices::describe_cell(v, &r.comparison),
                    "inverse": r.inverse.as_ref().map(|c| matrix::Matrices::describe_cell(v, c)),
                }),
            }
        }
        Horizontal::Span(s) => {
            let r = roundtrip_span(v, s)?;
            RoundtripReport {
                holds: r.holds(),
                kind: "span",
                witness: json!({
                    "comparison": span::Spans::describe_cell(v, &r.comparison),
                    "inverse": r.inverse.as_ref().map(|c| span::Spans::describe_cell(v, c)),
                }),
            }
        }
    })
}

/// Every matrix `I -> J` whose entries have rank at most `bound`.
pub fn all_matrices<V: BaseCategory>(v: &V, rows: &IndexSet, cols: &IndexSet, bound: usize) -> Vec<Matrix<V>> {
    let objs = v.enumerate_objects(bound);
    cartesian(&vec![objs; rows.len() * cols.len()])
        .into_iter()
        .map(|entries| Matrix {
            rows: rows.clone(),
            cols: cols.clone(),
            entries,
        })
        .collect()
}

/// Every span `I -> J` whose apex is an enumerated object of rank at most
/// `bound`.
pub fn all_spans<V: BaseCategory>(v: &V, left: &IndexSet, right: &IndexSet, bound: usize, cap: usize) -> Result<Vec<Span<V>>> {
    let lc = copower(v, left).cocone.apex;
    let rc = copower(v, right).cocone.apex;
    let mut out = Vec::new();
    for a in v.enumerate_objects(bound) {
        let ls = v.enumerate_morphisms(&a, &lc, cap)?;
        let rs = v.enumerate_morphisms(&a, &rc, cap)?;
        for l in &ls {
            for r in &rs {
                out.push(Span::new(v, left.clone(), right.clone(), l.clone(), r.clone())?);
            }
        }
    }
    Ok(out)
}

/// One span `I -> J` of finite sets per isomorphism class with apex of size
/// at most `bound`: apex `{0,…,n-1}` with leg pairs assigned in
/// nondecreasing order.
pub fn finset_spans_up_to_iso(left: &IndexSet, right: &IndexSet, bound: usize) -> Result<Vec<Span<FinSet>>> {
    let v = &FinSet;
    let points = |index: &IndexSet| {
        let cp = copower(v, index);
        let pts: Vec<u32> = cp.coprojections().iter().map(|s| s.table()[0]).collect();
        (cp.cocone.apex, pts)
    };
    let (lc, lp) = points(left);
    let (rc, rp) = points(right);
    let pairs = left.len() * right.len();
    let mut out = Vec::new();
    for n in 0..=bound {
        if pairs == 0 && n > 0 {
            break;
        }
        let apex = FinSet::standard(n);
        let mut seq = vec![0usize; n];
        loop {
            let l = seq.iter().map(|&p| lp[p / right.len()]).collect();
            let r = seq.iter().map(|&p| rp[p % right.len()]).collect();
            out.push(Span::new(
                v,
                left.clone(),
                right.clone(),
                FinMap::from_table(&apex, &lc, l)?,
                FinMap::from_table(&apex, &rc, r)?,
            )?);
            // Next nondecreasing sequence over `0..pairs`.
            let Some(k) = (0..n).rev().find(|&k| seq[k] + 1 < pairs) else {
                break;
            };
            let next = seq[k] + 1;
            seq[k..].fill(next);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoubleEquivalenceReport {
    pub instance: String,
    pub index_bound: usize,
    pub size_bound: usize,
    pub label: String,
    pub verdict: Verdict,
    /// Verdict of the pointwise extensivity check at the same bounds.
    pub extensive: bool,
    pub agrees_with_extensivity: bool,
}

/// Round trips for every matrix and span within the bounds, and full
/// faithfulness of `Int` and `En` on cells between them. Data over an empty
/// index set are checked but not counted as informative cases.
pub fn check_double_equivalence<V: BaseCategory>(
    v: &V,
    index_bound: usize,
    size_bound: usize,
    cap: usize,
) -> Result<DoubleEquivalenceReport> {
    let mut verdict = Verdict::new();
    let sizes: Vec<IndexSet> = (0..=index_bound).map(IndexSet::standard).collect();
    let shapes: Vec<(&IndexSet, &IndexSet)> = sizes.iter().flat_map(|r| sizes.iter().map(move |c| (r, c))).collect();

    let mut matrices = Vec::new();
    let mut spans = Vec::new();
    for &(r, c) in &shapes {
        let counted = !r.is_empty() && !c.is_empty();
        for m in all_matrices(v, r, c, size_bound) {
            if counted {
                verdict.case();
            }
            if !roundtrip_matrix(v, &m)?.holds() {
                verdict.fail_once(Witness::new("matrix-roundtrip", json!({ "matrix": m.describe(v) })));
            }
            if v.size_hint(&int_object(v, &m)?.apex) <= size_bound {
                matrices.push(m);
            }
        }
        for s in all_spans(v, r, c, size_bound, cap)? {
            if counted {
                verdict.case();
            }
            if !roundtrip_span(v, &s)?.holds() {
                verdict.fail_once(Witness::new("span-roundtrip", json!({ "span": s.describe(v) })));
            }
            spans.push(s);
        }
    }

    'int: for m in &matrices {
        for n in &matrices {
            for u in IndexMap::enumerate(&m.rows, &n.rows) {
                for w in IndexMap::enumerate(&m.cols, &n.cols) {
                    if !m.entries.is_empty() {
                        verdict.case();
                    }
                    let (cells, images, spans_between) = int_faithfulness(v, m, n, &u, &w, cap)?;
                    if cells != images || cells != spans_between {
                        verdict.fail(Witness::new(
                            "int-not-fully-faithful",
                            json!({
                                "top": m.describe(v), "bottom": n.describe(v),
                                "left": format!("{u:?}"), "right": format!("{w:?}"),
                                "matrix_cells": cells, "distinct_images": images, "span_cells": spans_between,
                            }),
                        ));
                        break 'int;
                    }
                }
            }
        }
    }

    'en: for s in &spans {
        for t in &spans {
            for u in IndexMap::enumerate(&s.left_index, &t.left_index) {
                for w in IndexMap::enumerate(&s.right_index, &t.right_index) {
                    if v.size_hint(&s.apex) > 0 {
                        verdict.case();
                    }
                    let (cells, images, matrices_between) = en_faithfulness(v, s, t, &u, &w, cap)?;
                    if cells != images || cells != matrices_between {
                        verdict.fail(Witness::new(
                            "en-not-fully-faithful",
                            json!({
                                "top": s.describe(v), "bottom": t.describe(v),
                                "left": format!("{u:?}"), "right": format!("{w:?}"),
                                "span_cells": cells, "distinct_images": images, "matrix_cells": matrices_between,
                            }),
                        ));
                        break 'en;
                    }
                }
            }
        }
    }

    let extensive = check_extensive(v, index_bound, size_bound, ExtensivityMode::PointwiseTerminal, cap)?.extensive();
    let label = if !verdict.holds {
        "not-equivalent"
    } else if verdict.informative {
        "equivalent-up-to-bound"
    } else {
        "vacuous"
    };
    Ok(DoubleEquivalenceReport {
        instance: v.name(),
        index_bound,
        size_bound,
        label: label.into(),
        agrees_with_extensivity: extensive == verdict.holds,
        extensive,
        verdict,
    })
}

fn int_faithfulness<V: BaseCategory>(
    v: &V,
    m: &Matrix<V>,
    n: &Matrix<V>,
    u: &IndexMap,
    w: &IndexMap,
    cap: usize,
) -> Result<(usize, usize, usize)> {
    let cells = matrix::cells_between(v, m, n, u, w, cap)?;
    let mut images = BTreeSet::new();
    for c in &cells {
        images.insert(v.canonical(&int_cell(v, c)?.body));
    }
    let between = span::cells_between(v, &int_object(v, m)?, &int_object(v, n)?, u, w, cap)?.len();
    Ok((cells.len(), images.len(), between))
}

fn en_faithfulness<V: BaseCategory>(
    v: &V,
    s: &Span<V>,
    t: &Span<V>,
    u: &IndexMap,
    w: &IndexMap,
    cap: usize,
) -> Result<(usize, usize, usize)> {
    let cells = span::cells_between(v, s, t, u, w, cap)?;
    let mut images = BTreeSet::new();
    for c in &cells {
        let e = en_cell(v, c)?;
        images.insert(e.components.iter().map(|f| v.canonical(f)).collect::<Vec<_>>());
    }
    let between = matrix::cells_between(v, &en_object(v, s)?, &en_object(v, t)?, u, w, cap)?.len();
    Ok((cells.len(), images.len(), between))
}
