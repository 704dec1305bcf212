//! The horizontal calculus shared by spans and matrices, and coherence
//! checks stated once for both.

use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::index::{IndexMap, IndexSet};
use crate::kernel::BaseCategory;
use crate::verdict::{Verdict, Witness};

/// Horizontal 1-cells and globular structure cells of a pseudo-double
/// category over `V`. Horizontal composition is diagrammatic.
pub trait PseudoDouble<V: BaseCategory> {
    type H: Clone + Debug + PartialEq;
    type Cell: Clone + Debug + PartialEq;

    const KIND: &'static str;

    fn source(h: &Self::H) -> &IndexSet;
    fn target(h: &Self::H) -> &IndexSet;
    fn unit(v: &V, index: &IndexSet) -> Self::H;
    fn compose(v: &V, h: &Self::H, k: &Self::H) -> Result<Self::H>;

    fn top(c: &Self::Cell) -> &Self::H;
    fn bottom(c: &Self::Cell) -> &Self::H;
    /// The vertical boundaries `(left, right)` of a cell.
    fn boundaries(c: &Self::Cell) -> (&IndexMap, &IndexMap);
    fn identity_cell(v: &V, h: &Self::H) -> Self::Cell;
    fn vertical(v: &V, a: &Self::Cell, b: &Self::Cell) -> Result<Self::Cell>;
    fn horizontal(v: &V, a: &Self::Cell, b: &Self::Cell) -> Result<Self::Cell>;

    /// `(h∘k)∘l => h∘(k∘l)`.
    fn associator(v: &V, h: &Self::H, k: &Self::H, l: &Self::H) -> Result<Self::Cell>;
    /// `unit∘h => h`.
    fn left_unitor(v: &V, h: &Self::H) -> Result<Self::Cell>;
    /// `h∘unit => h`.
    fn right_unitor(v: &V, h: &Self::H) -> Result<Self::Cell>;
    /// The cell `unit_I => unit_K` over `(u, u)` for `u : I -> K`.
    fn unit_cell(v: &V, u: &IndexMap) -> Result<Self::Cell>;
    /// Every cell `top => bottom` over `(left, right)`.
    fn cells_between(
        v: &V,
        top: &Self::H,
        bottom: &Self::H,
        left: &IndexMap,
        right: &IndexMap,
        cap: usize,
    ) -> Result<Vec<Self::Cell>>;
    /// Inverse of a globular cell, if it is invertible.
    fn invert(v: &V, c: &Self::Cell) -> Option<Self::Cell>;

    fn describe(v: &V, h: &Self::H) -> Value;
    fn describe_cell(v: &V, c: &Self::Cell) -> Value;

    /// A random horizontal 1-cell `I -> J` with data of rank at most `bound`.
    fn random(v: &V, rng: &mut ChaCha8Rng, from: &IndexSet, to: &IndexSet, bound: usize, cap: usize) -> Result<Self::H>;
}

pub fn is_globular<V: BaseCategory, D: PseudoDouble<V>>(c: &D::Cell) -> bool {
    let (l, r) = D::boundaries(c);
    l.is_identity() && r.is_identity()
}

/// An associator supplied to the coherence checks.
pub type AssociatorFn<'a, V, D> = dyn Fn(&V, &<D as PseudoDouble<V>>::H, &<D as PseudoDouble<V>>::H, &<D as PseudoDouble<V>>::H)
        -> Result<<D as PseudoDouble<V>>::Cell>
    + 'a;

/// Vertical pasting of a nonempty list of cells, top to bottom.
pub fn paste<V: BaseCategory, D: PseudoDouble<V>>(v: &V, cells: &[D::Cell]) -> Result<D::Cell> {
    let mut acc = cells[0].clone();
    for c in &cells[1..] {
        acc = D::vertical(v, &acc, c)?;
    }
    Ok(acc)
}

/// Both sides of the pentagon `((h∘k)∘l)∘m => h∘(k∘(l∘m))`.
pub fn pentagon_sides<V: BaseCategory, D: PseudoDouble<V>>(
    v: &V,
    [h, k, l, m]: [&D::H; 4],
    assoc: &AssociatorFn<'_, V, D>,
) -> Result<(D::Cell, D::Cell)> {
    let hk = D::compose(v, h, k)?;
    let kl = D::compose(v, k, l)?;
    let lm = D::compose(v, l, m)?;
    let long = [
        D::horizontal(v, &assoc(v, h, k, l)?, &D::identity_cell(v, m))?,
        assoc(v, h, &kl, m)?,
        D::horizontal(v, &D::identity_cell(v, h), &assoc(v, k, l, m)?)?,
    ];
    let short = [assoc(v, &hk, l, m)?, assoc(v, h, k, &lm)?];
    Ok((paste::<V, D>(v, &long)?, paste::<V, D>(v, &short)?))
}

/// Both sides of the triangle `(h∘unit)∘k => h∘k`.
pub fn triangle_sides<V: BaseCategory, D: PseudoDouble<V>>(
    v: &V,
    h: &D::H,
    k: &D::H,
    assoc: &AssociatorFn<'_, V, D>,
) -> Result<(D::Cell, D::Cell)> {
    let unit = D::unit(v, D::target(h));
    let direct = D::horizontal(v, &D::right_unitor(v, h)?, &D::identity_cell(v, k))?;
    let around = [
        assoc(v, h, &unit, k)?,
        D::horizontal(v, &D::identity_cell(v, h), &D::left_unitor(v, k)?)?,
    ];
    Ok((direct, paste::<V, D>(v, &around)?))
}

/// Pentagon on a composable quadruple and triangle on its first pair.
pub fn check_tuple<V: BaseCategory, D: PseudoDouble<V>>(
    v: &V,
    cells: &[D::H],
    assoc: &AssociatorFn<'_, V, D>,
    context: Value,
) -> Result<Verdict> {
    let mut verdict = Verdict::new();
    let detail = |lhs: &D::Cell, rhs: &D::Cell| {
        json!({
            "context": context,
            "kind": D::KIND,
            "cells": cells.iter().map(|h| D::describe(v, h)).collect::<Vec<_>>(),
            "lhs": D::describe_cell(v, lhs),
            "rhs": D::describe_cell(v, rhs),
        })
    };
    verdict.case();
    let (lhs, rhs) = pentagon_sides::<V, D>(v, [&cells[0], &cells[1], &cells[2], &cells[3]], assoc)?;
    if lhs != rhs {
        verdict.fail(Witness::new("pentagon", detail(&lhs, &rhs)));
    }
    verdict.case();
    let (lhs, rhs) = triangle_sides::<V, D>(v, &cells[0], &cells[1], assoc)?;
    if lhs != rhs {
        verdict.fail(Witness::new("triangle", detail(&lhs, &rhs)));
    }
    Ok(verdict)
}

/// Largest index set drawn by the coherence sampler.
pub const SAMPLE_INDEX_MAX: usize = 3;

/// Samples `trials` composable quadruples with index sets of at most
/// [`SAMPLE_INDEX_MAX`] labels and data of rank at most `bound`, and checks
/// the pentagon and triangle exactly.
pub fn check_coherence_with<V: BaseCategory, D: PseudoDouble<V>>(
    v: &V,
    trials: usize,
    seed: u64,
    bound: usize,
    cap: usize,
    assoc: &AssociatorFn<'_, V, D>,
) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verdict = Verdict::new();
    for trial in 0..trials {
        let idx: Vec<IndexSet> = (0..5)
            .map(|_| IndexSet::standard(rng.gen_range(0..=SAMPLE_INDEX_MAX)))
            .collect();
        let cells = (0..4)
            .map(|k| D::random(v, &mut rng, &idx[k], &idx[k + 1], bound, cap))
            .collect::<Result<Vec<_>>>()?;
        verdict.absorb(check_tuple::<V, D>(v, &cells, assoc, json!({ "trial": trial, "seed": seed }))?);
    }
    Ok(verdict)
}

pub fn check_coherence<V: BaseCategory, D: PseudoDouble<V>>(
    v: &V,
    trials: usize,
    seed: u64,
    bound: usize,
    cap: usize,
) -> Result<Verdict> {
    check_coherence_with::<V, D>(v, trials, seed, bound, cap, &D::associator)
}
