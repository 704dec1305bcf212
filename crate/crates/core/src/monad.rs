//! Monads in the double categories of spans and matrices, vertical monad
//! morphisms between them, and their correspondence with finite categories
//! and functors.
//!
//! Monads are strict: multiplication and unit are globular cells. The laws
//! are stated through the host's associator and unitors.
//!
//! In the matrix host the multiplication at `(x, z)` has summands
//! `M(x,y) × M(y,z)`, first factor composed first.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::category::{enumerate_functors, Arrow, FiniteCategory, Functor};
use crate::copower::copower;
use crate::double::{is_globular, paste, PseudoDouble};
use crate::error::{Error, Result};
use crate::finset::{tuple_label, FinMap, FinSet, FinSetObj};
use crate::index::{IndexMap, IndexSet};
use crate::kernel::BaseCategory;
use crate::matrix::{self, composite_entry, compose_matrices, unit_matrix, Matrices, Matrix, MatrixCell};
use crate::span::{self, compose_spans, identity_span, Span, SpanCell, Spans};
use crate::transport::{
    en_cell, en_object, int_cell, int_object, lax_comparison, lax_unit_comparison, oplax_comparison,
    oplax_unit_comparison,
};
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Host {
    Span,
    Matrix,
}

impl fmt::Display for Host {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Host::Span => "span",
            Host::Matrix => "matrix",
        })
    }
}

/// A strict monad on `index` in the double category `D` over `V`.
pub struct Monad<V: BaseCategory, D: PseudoDouble<V>> {
    pub index: IndexSet,
    pub carrier: D::H,
    /// `carrier∘carrier => carrier`.
    pub mu: D::Cell,
    /// `unit => carrier`.
    pub eta: D::Cell,
    base: PhantomData<fn() -> V>,
}

impl<V: BaseCategory, D: PseudoDouble<V>> Clone for Monad<V, D> {
    fn clone(&self) -> Self {
        Monad {
            index: self.index.clone(),
            carrier: self.carrier.clone(),
            mu: self.mu.clone(),
            eta: self.eta.clone(),
            base: PhantomData,
        }
    }
}

impl<V: BaseCategory, D: PseudoDouble<V>> fmt::Debug for Monad<V, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Monad")
            .field("index", &self.index)
            .field("carrier", &self.carrier)
            .field("mu", &self.mu)
            .field("eta", &self.eta)
            .finish()
    }
}

impl<V: BaseCategory, D: PseudoDouble<V>> PartialEq for Monad<V, D> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.carrier == other.carrier && self.mu == other.mu && self.eta == other.eta
    }
}

impl<V: BaseCategory, D: PseudoDouble<V>> Monad<V, D> {
    /// Checks the boundaries of `mu` and `eta`; the laws are checked by
    /// [`check_monad_laws`].
    pub fn new(v: &V, carrier: D::H, mu: D::Cell, eta: D::Cell) -> Result<Self> {
        let index = D::source(&carrier).clone();
        if *D::target(&carrier) != index {
            return Err(Error::boundary("monad carrier must be an endo 1-cell"));
        }
        if !is_globular::<V, D>(&mu) || !is_globular::<V, D>(&eta) {
            return Err(Error::boundary("monad structure cells must be globular"));
        }
        if *D::top(&mu) != D::compose(v, &carrier, &carrier)? || *D::bottom(&mu) != carrier {
            return Err(Error::boundary("multiplication must be carrier∘carrier => carrier"));
        }
        if *D::top(&eta) != D::unit(v, &index) || *D::bottom(&eta) != carrier {
            return Err(Error::boundary("unit must be unit => carrier"));
        }
        Ok(Monad {
            index,
            carrier,
            mu,
            eta,
            base: PhantomData,
        })
    }

    pub fn describe(&self, v: &V) -> Value {
        json!({
            "host": D::KIND,
            "index": self.index.labels(),
            "carrier": D::describe(v, &self.carrier),
            "mu": D::describe_cell(v, &self.mu),
            "eta": D::describe_cell(v, &self.eta),
        })
    }
}

/// Associativity and both unit laws, as exact equalities of pasted cells.
pub fn check_monad_laws<V: BaseCategory, D: PseudoDouble<V>>(v: &V, m: &Monad<V, D>) -> Result<Verdict> {
    let t = &m.carrier;
    let id = D::identity_cell(v, t);
    let mut verdict = Verdict::new();
    let mut check = |name: &str, lhs: D::Cell, rhs: D::Cell| {
        verdict.case();
        if lhs != rhs {
            verdict.fail(Witness::new(
                name,
                json!({
                    "host": D::KIND,
                    "carrier": D::describe(v, t),
                    "lhs": D::describe_cell(v, &lhs),
                    "rhs": D::describe_cell(v, &rhs),
                }),
            ));
        }
    };
    let left_first = paste::<V, D>(v, &[D::horizontal(v, &m.mu, &id)?, m.mu.clone()])?;
    let right_first = paste::<V, D>(
        v,
        &[D::associator(v, t, t, t)?, D::horizontal(v, &id, &m.mu)?, m.mu.clone()],
    )?;
    check("associativity", left_first, right_first);
    let left_unit = paste::<V, D>(v, &[D::horizontal(v, &m.eta, &id)?, m.mu.clone()])?;
    check("left-unit", left_unit, D::left_unitor(v, t)?);
    let right_unit = paste::<V, D>(v, &[D::horizontal(v, &id, &m.eta)?, m.mu.clone()])?;
    check("right-unit", right_unit, D::right_unitor(v, t)?);
    if m.index.is_empty() {
        verdict.informative = false;
    }
    Ok(verdict)
}

/// A monad in either host.
#[derive(Debug, Clone, PartialEq)]
pub enum DoubleMonad<V: BaseCategory> {
    Matrix(Monad<V, Matrices>),
    Span(Monad<V, Spans>),
}

impl<V: BaseCategory> DoubleMonad<V> {
    pub fn host(&self) -> Host {
        match self {
            DoubleMonad::Matrix(_) => Host::Matrix,
            DoubleMonad::Span(_) => Host::Span,
        }
    }

    pub fn index(&self) -> &IndexSet {
        match self {
            DoubleMonad::Matrix(m) => &m.index,
            DoubleMonad::Span(m) => &m.index,
        }
    }

    pub fn check_laws(&self, v: &V) -> Result<Verdict> {
        match self {
            DoubleMonad::Matrix(m) => check_monad_laws(v, m),
            DoubleMonad::Span(m) => check_monad_laws(v, m),
        }
    }

    pub fn describe(&self, v: &V) -> Value {
        match self {
            DoubleMonad::Matrix(m) => m.describe(v),
            DoubleMonad::Span(m) => m.describe(v),
        }
    }
}

fn lawful<V: BaseCategory, D: PseudoDouble<V>>(v: &V, m: Monad<V, D>, err: fn(String) -> Error) -> Result<Monad<V, D>> {
    let verdict = check_monad_laws(v, &m)?;
    match verdict.first() {
        None => Ok(m),
        Some(w) => Err(err(format!("{} law fails", w.check))),
    }
}

fn hom_object(c: &FiniteCategory, x: usize, y: usize) -> Result<FinSetObj> {
    FinSetObj::new(c.hom(x, y).into_iter().map(|f| c.arrows()[f].name.clone()))
}

fn name_position(obj: &FinSetObj, name: &str) -> Result<u32> {
    obj.position(name).map(|p| p as u32).ok_or_else(|| Error::UnknownLabel {
        label: name.to_string(),
        context: format!("{obj:?}"),
    })
}

fn arrow_of(c: &FiniteCategory, name: &str) -> Result<usize> {
    c.arrow_index(name).ok_or_else(|| Error::UnknownLabel {
        label: name.to_string(),
        context: "the arrows of the category".into(),
    })
}

fn composite(c: &FiniteCategory, f: usize, g: usize) -> Result<usize> {
    c.compose(f, g)
        .ok_or_else(|| Error::internal(format!("arrows {} and {} are not composable", c.arrows()[f].name, c.arrows()[g].name)))
}

/// Carrier positions of the coprojections `1 -> I•1`.
fn copower_points(v: &FinSet, index: &IndexSet) -> (FinSetObj, Vec<u32>) {
    let cp = copower(v, index);
    let points = cp.coprojections().iter().map(|s| s.table()[0]).collect();
    (cp.carrier().clone(), points)
}

/// The monad of `c` in the chosen host over finite sets.
pub fn encode(c: &FiniteCategory, host: Host) -> Result<DoubleMonad<FinSet>> {
    Ok(match host {
        Host::Matrix => DoubleMonad::Matrix(encode_matrix(c)?),
        Host::Span => DoubleMonad::Span(encode_span(c)?),
    })
}

/// Hom-sets as entries, composition tables as the multiplication and
/// identities as the unit.
pub fn encode_matrix(c: &FiniteCategory) -> Result<Monad<FinSet, Matrices>> {
    let v = &FinSet;
    let index = c.objects().clone();
    let n = index.len();
    let mut entries = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            entries.push(hom_object(c, x, y)?);
        }
    }
    let carrier = Matrix::new(index.clone(), index.clone(), entries)?;
    let top = compose_matrices(v, &carrier, &carrier)?;
    let mut components = Vec::with_capacity(n * n);
    for x in 0..n {
        for z in 0..n {
            let e = composite_entry(v, &carrier, &carrier, x, z);
            let target = carrier.entry(x, z);
            let legs = (0..n)
                .map(|y| {
                    let pr = &e.products[y];
                    let table = (0..pr.apex.len())
                        .map(|k| {
                            let f = arrow_of(c, carrier.entry(x, y).label(pr.legs[0].image_index(k)))?;
                            let g = arrow_of(c, carrier.entry(y, z).label(pr.legs[1].image_index(k)))?;
                            name_position(target, &c.arrows()[composite(c, f, g)?].name)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    FinMap::from_table(&pr.apex, target, table)
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(v.cotuple(&e.sum, target, &legs)?);
        }
    }
    let mu = MatrixCell::new(v, top, carrier.clone(), IndexMap::identity(&index), IndexMap::identity(&index), components)?;
    let unit = unit_matrix(v, &index);
    let mut components = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let target = carrier.entry(x, y);
            components.push(if x == y {
                let id = &c.arrows()[c.identity(x)].name;
                FinMap::from_table(&v.terminal(), target, vec![name_position(target, id)?])?
            } else {
                v.from_initial(target)?
            });
        }
    }
    let eta = MatrixCell::new(v, unit, carrier.clone(), IndexMap::identity(&index), IndexMap::identity(&index), components)?;
    lawful(v, Monad::new(v, carrier, mu, eta)?, Error::Encoding)
}

/// The arrow set over `O•1 × O•1` by source and target, composition on the
/// pullback of composable pairs, identities as the unit.
pub fn encode_span(c: &FiniteCategory) -> Result<Monad<FinSet, Spans>> {
    let v = &FinSet;
    let index = c.objects().clone();
    let (feet, points) = copower_points(v, &index);
    let apex = FinSetObj::new(c.arrows().iter().map(|a| a.name.clone()))?;
    let leg = |end: fn(&FiniteCategory, usize) -> usize| -> Result<FinMap> {
        let table = (0..apex.len())
            .map(|k| Ok(points[end(c, arrow_of(c, apex.label(k))?)]))
            .collect::<Result<Vec<_>>>()?;
        FinMap::from_table(&apex, &feet, table)
    };
    let carrier = Span::new(v, index.clone(), index.clone(), leg(FiniteCategory::src)?, leg(FiniteCategory::dst)?)?;
    let (top, pb) = compose_spans(v, &carrier, &carrier)?;
    let table = (0..pb.apex.len())
        .map(|k| {
            let f = arrow_of(c, apex.label(pb.left.image_index(k)))?;
            let g = arrow_of(c, apex.label(pb.right.image_index(k)))?;
            name_position(&apex, &c.arrows()[composite(c, f, g)?].name)
        })
        .collect::<Result<Vec<_>>>()?;
    let ids = IndexMap::identity(&index);
    let mu = SpanCell::new(v, top, carrier.clone(), ids.clone(), ids.clone(), FinMap::from_table(&pb.apex, &apex, table)?)?;
    let mut table = vec![0u32; feet.len()];
    for (x, &p) in points.iter().enumerate() {
        table[p as usize] = name_position(&apex, &c.arrows()[c.identity(x)].name)?;
    }
    let eta = SpanCell::new(
        v,
        identity_span(v, &index),
        carrier.clone(),
        ids.clone(),
        ids,
        FinMap::from_table(&feet, &apex, table)?,
    )?;
    lawful(v, Monad::new(v, carrier, mu, eta)?, Error::Encoding)
}

/// The finite category presented by a monad over finite sets.
///
/// Matrix-host arrows are named `(x,y,e)` for an element `e` of entry
/// `(x, y)`; span-host arrows keep the apex labels.
pub fn decode(m: &DoubleMonad<FinSet>) -> Result<FiniteCategory> {
    match m {
        DoubleMonad::Matrix(m) => decode_matrix(m),
        DoubleMonad::Span(m) => decode_span(m),
    }
}

pub fn decode_matrix(m: &Monad<FinSet, Matrices>) -> Result<FiniteCategory> {
    let v = &FinSet;
    let t = &m.carrier;
    let objects = m.index.labels();
    let n = objects.len();
    let name = |x: usize, y: usize, e: usize| tuple_label(&[objects[x].as_str(), objects[y].as_str(), t.entry(x, y).label(e)]);
    let mut arrows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for e in 0..t.entry(x, y).len() {
                arrows.push(Arrow {
                    name: name(x, y, e),
                    src: objects[x].clone(),
                    dst: objects[y].clone(),
                });
            }
        }
    }
    let identities = (0..n)
        .map(|x| (objects[x].clone(), name(x, x, m.eta.component(x, x).image_index(0))))
        .collect();
    let mut composition = Vec::new();
    for x in 0..n {
        for z in 0..n {
            let e = composite_entry(v, t, t, x, z);
            let mu = m.mu.component(x, z);
            for y in 0..n {
                let pr = &e.products[y];
                for k in 0..pr.apex.len() {
                    let h = mu.image_index(e.sum.legs[y].image_index(k));
                    composition.push([
                        name(x, y, pr.legs[0].image_index(k)),
                        name(y, z, pr.legs[1].image_index(k)),
                        name(x, z, h),
                    ]);
                }
            }
        }
    }
    FiniteCategory::new(objects.iter().cloned(), arrows, identities, composition)
}

pub fn decode_span(m: &Monad<FinSet, Spans>) -> Result<FiniteCategory> {
    let v = &FinSet;
    let t = &m.carrier;
    let objects = m.index.labels();
    let (feet, points) = copower_points(v, &m.index);
    if *t.left_leg.dst() != feet {
        return Err(Error::boundary("span legs must land in the copower of the index"));
    }
    let mut object_at = vec![0usize; feet.len()];
    for (x, &p) in points.iter().enumerate() {
        object_at[p as usize] = x;
    }
    let arrows = (0..t.apex.len())
        .map(|k| Arrow {
            name: t.apex.label(k).to_string(),
            src: objects[object_at[t.left_leg.image_index(k)]].clone(),
            dst: objects[object_at[t.right_leg.image_index(k)]].clone(),
        })
        .collect();
    let identities = points
        .iter()
        .enumerate()
        .map(|(x, &p)| (objects[x].clone(), t.apex.label(m.eta.body.image_index(p as usize)).to_string()))
        .collect();
    let (_, pb) = compose_spans(v, t, t)?;
    let composition = (0..pb.apex.len())
        .map(|k| {
            [pb.left.image_index(k), pb.right.image_index(k), m.mu.body.image_index(k)].map(|a| t.apex.label(a).to_string())
        })
        .collect();
    FiniteCategory::new(objects.iter().cloned(), arrows, identities, composition)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Along {
    Int,
    En,
}

fn unlawful_transport(msg: String) -> Error {
    Error::internal(format!("transported monad: {msg}"))
}

/// Transports a monad along `Int` (matrix host to span host) or `En` (span
/// host to matrix host), conjugating its structure cells by the comparison
/// cells of the functor.
pub fn transport_monad<V: BaseCategory>(v: &V, m: &DoubleMonad<V>, along: Along) -> Result<DoubleMonad<V>> {
    match (m, along) {
        (DoubleMonad::Matrix(m), Along::Int) => {
            let carrier = int_object(v, &m.carrier)?;
            let phi = oplax_comparison(v, &m.carrier, &m.carrier)?;
            let psi = oplax_unit_comparison(v, &m.index)?;
            let (Some(phi_inv), Some(psi_inv)) = (phi.iso_witness, psi.iso_witness) else {
                return Err(Error::Unsupported("the comparison cells of Int are not invertible".into()));
            };
            let mu = span::compose_cells_vertical(v, &phi_inv, &int_cell(v, &m.mu)?)?;
            let eta = span::compose_cells_vertical(v, &psi_inv, &int_cell(v, &m.eta)?)?;
            Ok(DoubleMonad::Span(lawful(v, Monad::new(v, carrier, mu, eta)?, unlawful_transport)?))
        }
        (DoubleMonad::Span(m), Along::En) => {
            let carrier = en_object(v, &m.carrier)?;
            let phi = lax_comparison(v, &m.carrier, &m.carrier)?;
            let psi = lax_unit_comparison(v, &m.index)?;
            if !(phi.is_iso() && psi.is_iso()) {
                return Err(Error::Unsupported("the comparison cells of En are not invertible".into()));
            }
            let mu = matrix::compose_cells_vertical(v, &phi.cell, &en_cell(v, &m.mu)?)?;
            let eta = matrix::compose_cells_vertical(v, &psi.cell, &en_cell(v, &m.eta)?)?;
            Ok(DoubleMonad::Matrix(lawful(v, Monad::new(v, carrier, mu, eta)?, unlawful_transport)?))
        }
        (m, along) => Err(Error::boundary(format!("cannot transport a {}-host monad along {along:?}", m.host()))),
    }
}

/// A cell over `(omega, omega)` compatible with multiplications and units.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalMonadMorphism<C> {
    pub omega: IndexMap,
    pub cell: C,
}

/// Whether `cell` is a vertical monad morphism `src -> dst` over `omega`.
pub fn is_monad_morphism<V: BaseCategory, D: PseudoDouble<V>>(
    v: &V,
    src: &Monad<V, D>,
    dst: &Monad<V, D>,
    omega: &IndexMap,
    cell: &D::Cell,
) -> Result<bool> {
    let (l, r) = D::boundaries(cell);
    if l != omega || r != omega || *D::top(cell) != src.carrier || *D::bottom(cell) != dst.carrier {
        return Ok(false);
    }
    let mu_then = paste::<V, D>(v, &[src.mu.clone(), cell.clone()])?;
    let then_mu = paste::<V, D>(v, &[D::horizontal(v, cell, cell)?, dst.mu.clone()])?;
    if mu_then != then_mu {
        return Ok(false);
    }
    let eta_then = paste::<V, D>(v, &[src.eta.clone(), cell.clone()])?;
    let then_eta = paste::<V, D>(v, &[D::unit_cell(v, omega)?, dst.eta.clone()])?;
    Ok(eta_then == then_eta)
}

/// Every vertical monad morphism `src -> dst`, ordered by index map and
/// then by cell enumeration order.
pub fn enumerate_vertical_morphisms<V: BaseCategory, D: PseudoDouble<V>>(
    v: &V,
    src: &Monad<V, D>,
    dst: &Monad<V, D>,
    cap: usize,
) -> Result<Vec<VerticalMonadMorphism<D::Cell>>> {
    let mut out = Vec::new();
    for omega in IndexMap::enumerate(&src.index, &dst.index) {
        for cell in D::cells_between(v, &src.carrier, &dst.carrier, &omega, &omega, cap)? {
            if is_monad_morphism(v, src, dst, &omega, &cell)? {
                if out.len() >= cap {
                    return Err(Error::ResourceCap {
                        what: "vertical monad morphisms".into(),
                        count: out.len() as u128 + 1,
                        cap,
                    });
                }
                out.push(VerticalMonadMorphism {
                    omega: omega.clone(),
                    cell,
                });
            }
        }
    }
    Ok(out)
}

fn object_map(c: &FiniteCategory, d: &FiniteCategory, f: &Functor) -> Result<IndexMap> {
    IndexMap::from_table(c.objects(), d.objects(), f.objects.clone())
}

fn arrow_table(c: &FiniteCategory, d: &FiniteCategory, f: &Functor, src: &FinSetObj, dst: &FinSetObj) -> Result<FinMap> {
    let table = src
        .labels()
        .iter()
        .map(|name| name_position(dst, &d.arrows()[f.arrows[arrow_of(c, name)?]].name))
        .collect::<Result<Vec<_>>>()?;
    FinMap::from_table(src, dst, table)
}

/// The matrix-host cell of a functor: its action on each hom-set.
pub fn functor_matrix_cell(
    c: &FiniteCategory,
    d: &FiniteCategory,
    f: &Functor,
    mc: &Monad<FinSet, Matrices>,
    md: &Monad<FinSet, Matrices>,
) -> Result<VerticalMonadMorphism<MatrixCell<FinSet>>> {
    let omega = object_map(c, d, f)?;
    let n = c.objects().len();
    let mut components = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let target = md.carrier.entry(omega.at(x), omega.at(y));
            components.push(arrow_table(c, d, f, mc.carrier.entry(x, y), target)?);
        }
    }
    let cell = MatrixCell::new(&FinSet, mc.carrier.clone(), md.carrier.clone(), omega.clone(), omega.clone(), components)?;
    Ok(VerticalMonadMorphism { omega, cell })
}

/// The span-host cell of a functor: its action on the arrow set.
pub fn functor_span_cell(
    c: &FiniteCategory,
    d: &FiniteCategory,
    f: &Functor,
    mc: &Monad<FinSet, Spans>,
    md: &Monad<FinSet, Spans>,
) -> Result<VerticalMonadMorphism<SpanCell<FinSet>>> {
    let omega = object_map(c, d, f)?;
    let body = arrow_table(c, d, f, &mc.carrier.apex, &md.carrier.apex)?;
    let cell = SpanCell::new(&FinSet, mc.carrier.clone(), md.carrier.clone(), omega.clone(), omega.clone(), body)?;
    Ok(VerticalMonadMorphism { omega, cell })
}

/// Functors `C -> D` against vertical monad morphisms between the encoded
/// monads.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrespondenceReport {
    pub host: Host,
    pub functors: usize,
    pub morphisms: usize,
    pub bijective: bool,
    pub respects_composition: bool,
    pub verdict: Verdict,
}

/// Sends every functor `C -> D` to its cell, checks the assignment is a
/// bijection onto the vertical monad morphisms, and checks it sends `F ; G`
/// to the vertical composite for every endofunctor `G` of `D`.
pub fn morphism_correspondence(c: &FiniteCategory, d: &FiniteCategory, host: Host, cap: usize) -> Result<CorrespondenceReport> {
    match host {
        Host::Matrix => {
            let (mc, md) = (encode_matrix(c)?, encode_matrix(d)?);
            correspondence::<Matrices>(c, d, host, &mc, &md, cap, &|x, y, f, a, b| functor_matrix_cell(x, y, f, a, b))
        }
        Host::Span => {
            let (mc, md) = (encode_span(c)?, encode_span(d)?);
            correspondence::<Spans>(c, d, host, &mc, &md, cap, &|x, y, f, a, b| functor_span_cell(x, y, f, a, b))
        }
    }
}

type CellOf<D> = <D as PseudoDouble<FinSet>>::Cell;
type FunctorCell<'a, D> = dyn Fn(
        &FiniteCategory,
        &FiniteCategory,
        &Functor,
        &Monad<FinSet, D>,
        &Monad<FinSet, D>,
    ) -> Result<VerticalMonadMorphism<CellOf<D>>>
    + 'a;

fn correspondence<D: PseudoDouble<FinSet>>(
    c: &FiniteCategory,
    d: &FiniteCategory,
    host: Host,
    mc: &Monad<FinSet, D>,
    md: &Monad<FinSet, D>,
    cap: usize,
    image: &FunctorCell<'_, D>,
) -> Result<CorrespondenceReport> {
    let v = &FinSet;
    let functors = enumerate_functors(c, d, false, cap)?;
    let morphisms = enumerate_vertical_morphisms(v, mc, md, cap)?;
    let mut verdict = Verdict::new();
    let mut bijective = true;
    let images = functors
        .iter()
        .map(|f| image(c, d, f, mc, md))
        .collect::<Result<Vec<_>>>()?;
    let mut hit = vec![false; morphisms.len()];
    for (f, img) in functors.iter().zip(&images) {
        verdict.case();
        match morphisms.iter().position(|m| *m == *img) {
            Some(k) if hit[k] => {
                bijective = false;
                verdict.fail(Witness::new("not-injective", json!({ "functor": f, "omega": img.omega.table() })));
            }
            Some(k) => hit[k] = true,
            None => {
                bijective = false;
                verdict.fail(Witness::new(
                    "not-a-morphism",
                    json!({ "functor": f, "cell": D::describe_cell(v, &img.cell) }),
                ));
            }
        }
    }
    for (m, _) in morphisms.iter().zip(&hit).filter(|(_, &h)| !h) {
        verdict.case();
        bijective = false;
        verdict.fail(Witness::new(
            "not-surjective",
            json!({ "omega": m.omega.table(), "cell": D::describe_cell(v, &m.cell) }),
        ));
    }
    let mut respects_composition = true;
    let endos = enumerate_functors(d, d, false, cap)?;
    let endo_images = endos
        .iter()
        .map(|g| image(d, d, g, md, md))
        .collect::<Result<Vec<_>>>()?;
    if c == d {
        verdict.case();
        let id = image(c, c, &Functor::identity(c), mc, mc)?;
        if id.cell != D::identity_cell(v, &mc.carrier) {
            respects_composition = false;
            verdict.fail(Witness::new("identity", json!({ "cell": D::describe_cell(v, &id.cell) })));
        }
    }
    for (f, fi) in functors.iter().zip(&images) {
        for (g, gi) in endos.iter().zip(&endo_images) {
            verdict.case();
            let composite = image(c, d, &f.then(g), mc, md)?;
            let pasted = D::vertical(v, &fi.cell, &gi.cell)?;
            if composite.cell != pasted {
                respects_composition = false;
                verdict.fail_once(Witness::new("composition", json!({ "first": f, "second": g })));
            }
        }
    }
    Ok(CorrespondenceReport {
        host,
        functors: functors.len(),
        morphisms: morphisms.len(),
        bijective,
        respects_composition,
        verdict,
    })
}

/// Object and arrow tables of an isomorphism `c -> d`, keyed by name.
pub fn describe_isomorphism(c: &FiniteCategory, d: &FiniteCategory, f: &Functor) -> Value {
    let objects: BTreeMap<&str, &str> = (0..c.objects().len())
        .map(|x| (c.objects().label(x), d.objects().label(f.objects[x])))
        .collect();
    let arrows: BTreeMap<&str, &str> = c
        .arrows()
        .iter()
        .zip(&f.arrows)
        .map(|(a, &b)| (a.name.as_str(), d.arrows()[b].name.as_str()))
        .collect();
    json!({ "objects": objects, "arrows": arrows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::find_isomorphism;
    use crate::category::fixtures::{self, build};
    use crate::kernel::DEFAULT_ENUMERATION_CAP as CAP;
    use crate::transport::roundtrip_matrix;
    use proptest::prelude::*;

    fn isomorphic(a: &FiniteCategory, b: &FiniteCategory) -> bool {
        find_isomorphism(a, b, CAP).unwrap().is_some()
    }

    #[test]
    fn discrete_category_encodes_to_the_unit_matrix() {
        let c = build(&["i", "j"], &[], &[]);
        let m = encode_matrix(&c).unwrap();
        let unit = unit_matrix(&FinSet, c.objects());
        let sizes = |m: &Matrix<FinSet>| m.entries.iter().map(FinSetObj::len).collect::<Vec<_>>();
        assert_eq!(sizes(&m.carrier), sizes(&unit));
        assert!(m.eta.components.iter().all(|f| f.is_injective() && f.is_surjective()));
        assert!(m.mu.components.iter().all(|f| f.is_injective() && f.is_surjective()));
    }

    #[test]
    fn cyclic_group_multiplication_is_its_group_table() {
        let m = encode_matrix(&fixtures::cyclic(2)).unwrap();
        let entry = m.carrier.entry(0, 0);
        assert_eq!(entry.len(), 2);
        let parity = |name: &str| usize::from(name == "s1");
        let e = composite_entry(&FinSet, &m.carrier, &m.carrier, 0, 0);
        let pr = &e.products[0];
        for k in 0..pr.apex.len() {
            let a = entry.label(pr.legs[0].image_index(k));
            let b = entry.label(pr.legs[1].image_index(k));
            let h = entry.label(m.mu.components[0].image_index(e.sum.legs[0].image_index(k)));
            assert_eq!(parity(h), (parity(a) + parity(b)) % 2, "{a} ; {b}");
        }
        assert!(check_monad_laws(&FinSet, &m).unwrap().holds);
    }

    #[test]
    fn arrow_category_span_has_four_composable_pairs() {
        let c = fixtures::arrow();
        let m = encode_span(&c).unwrap();
        assert_eq!(m.carrier.apex.len(), 3);
        let pairs = c
            .arrows()
            .iter()
            .flat_map(|f| c.arrows().iter().map(move |g| (f, g)))
            .filter(|(f, g)| f.dst == g.src)
            .count();
        assert_eq!(pairs, 4);
        assert_eq!(m.mu.top.apex.len(), pairs);
    }

    #[test]
    fn decode_inverts_encode_on_every_fixture() {
        for (name, c) in fixtures::all() {
            for host in [Host::Matrix, Host::Span] {
                let d = decode(&encode(&c, host).unwrap()).unwrap();
                assert!(isomorphic(&c, &d), "{name} in the {host} host");
            }
        }
    }

    #[test]
    fn trivial_decodings() {
        let m = encode(&fixtures::discrete(2), Host::Matrix).unwrap();
        let d = decode(&m).unwrap();
        assert_eq!(d.arrow_count(), 2);
        assert!(isomorphic(&d, &fixtures::discrete(2)));
        let empty = encode(&fixtures::empty(), Host::Span).unwrap();
        assert_eq!(decode(&empty).unwrap().arrow_count(), 0);
        let laws = empty.check_laws(&FinSet).unwrap();
        assert!(laws.holds && !laws.informative);
    }

    fn magma(m: &Monad<FinSet, Matrices>, op: impl Fn(usize, usize) -> usize) -> Monad<FinSet, Matrices> {
        let e = composite_entry(&FinSet, &m.carrier, &m.carrier, 0, 0);
        let pr = &e.products[0];
        let mut table = vec![0u32; e.sum.apex.len()];
        for k in 0..pr.apex.len() {
            table[e.sum.legs[0].image_index(k)] = op(pr.legs[0].image_index(k), pr.legs[1].image_index(k)) as u32;
        }
        let mut mu = m.mu.clone();
        mu.components[0] = FinMap::from_table(&e.sum.apex, m.carrier.entry(0, 0), table).unwrap();
        Monad::new(&FinSet, m.carrier.clone(), mu, m.eta.clone()).unwrap()
    }

    #[test]
    fn non_associative_magma_fails_associativity() {
        let m = encode_matrix(&fixtures::cyclic(2)).unwrap();
        let mutant = magma(&m, |a, _| 1 - a);
        let verdict = check_monad_laws(&FinSet, &mutant).unwrap();
        assert!(verdict.has_failed("associativity"));
        let relabelled = magma(&m, |a, b| (a + b) % 2);
        assert_eq!(relabelled, m);
    }

    #[test]
    fn transport_preserves_the_decoded_category() {
        for (name, c) in fixtures::all() {
            let along_int = transport_monad(&FinSet, &encode(&c, Host::Matrix).unwrap(), Along::Int).unwrap();
            assert_eq!(along_int.host(), Host::Span);
            assert!(isomorphic(&decode(&along_int).unwrap(), &c), "{name} along Int");
            let along_en = transport_monad(&FinSet, &encode(&c, Host::Span).unwrap(), Along::En).unwrap();
            assert_eq!(along_en.host(), Host::Matrix);
            assert!(isomorphic(&decode(&along_en).unwrap(), &c), "{name} along En");
        }
    }

    #[test]
    fn transport_rejects_the_wrong_host() {
        let m = encode(&fixtures::terminal(), Host::Span).unwrap();
        assert!(matches!(transport_monad(&FinSet, &m, Along::Int), Err(Error::Boundary(_))));
    }

    #[test]
    fn en_after_int_returns_an_isomorphic_monad() {
        for c in [fixtures::cyclic(2), fixtures::chain3(), fixtures::isomorphism()] {
            let m = encode_matrix(&c).unwrap();
            let there = transport_monad(&FinSet, &DoubleMonad::Matrix(m.clone()), Along::Int).unwrap();
            let DoubleMonad::Matrix(back) = transport_monad(&FinSet, &there, Along::En).unwrap() else {
                panic!("En lands in the matrix host");
            };
            let rt = roundtrip_matrix(&FinSet, &m.carrier).unwrap();
            let inverse = rt.inverse.expect("componentwise inverse");
            let id = IndexMap::identity(&m.index);
            assert!(is_monad_morphism(&FinSet, &m, &back, &id, &rt.comparison).unwrap());
            assert!(is_monad_morphism(&FinSet, &back, &m, &id, &inverse).unwrap());
        }
    }

    #[test]
    fn correspondence_examples() {
        let one = fixtures::terminal();
        let r = morphism_correspondence(&one, &one, Host::Matrix, CAP).unwrap();
        assert_eq!((r.functors, r.morphisms), (1, 1));
        for host in [Host::Matrix, Host::Span] {
            let r = morphism_correspondence(&fixtures::arrow(), &fixtures::cyclic(2), host, CAP).unwrap();
            // Both objects go to the one object; `a` goes to either element.
            assert_eq!((r.functors, r.morphisms), (2, 2), "{host}");
            assert!(r.bijective && r.respects_composition);
            let r = morphism_correspondence(&fixtures::empty(), &fixtures::chain3(), host, CAP).unwrap();
            assert_eq!((r.functors, r.morphisms), (1, 1));
        }
    }

    #[test]
    fn correspondence_on_selected_pairs() {
        let cats = [fixtures::idempotent(), fixtures::chain3(), fixtures::parallel_pair(), fixtures::cyclic2_and_point()];
        for c in &cats {
            for d in &cats {
                for host in [Host::Matrix, Host::Span] {
                    let r = morphism_correspondence(c, d, host, CAP).unwrap();
                    assert!(r.verdict.holds, "{:?}", r.verdict.first());
                    assert_eq!(r.functors, r.morphisms);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn cyclic_groups_round_trip(n in 1usize..5, matrix_host in any::<bool>()) {
            let c = fixtures::cyclic(n);
            let host = if matrix_host { Host::Matrix } else { Host::Span };
            let m = encode(&c, host).unwrap();
            prop_assert!(m.check_laws(&FinSet).unwrap().holds);
            prop_assert!(isomorphic(&decode(&m).unwrap(), &c));
        }
    }
}
