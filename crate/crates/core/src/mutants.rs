//! Deliberately wrong structure maps that the coherence and law checks must
//! reject.

use crate::category::fixtures;
use crate::error::Result;
use crate::finset::{FinMap, FinSet, FinSetObj};
use crate::matrix::{composite_entry, dist_inverse, Matrices};
use crate::monad::{encode_matrix, Monad};
use crate::span::{associator, Span, SpanCell};

fn swap_first_two(x: &FinSetObj) -> Result<FinMap> {
    let mut t: Vec<u32> = (0..x.len() as u32).collect();
    if t.len() >= 2 {
        t.swap(0, 1);
    }
    FinMap::from_table(x, x, t)
}

/// The span associator followed by a swap of the first two apex elements
/// that no leg tells apart.
pub fn span_associator(v: &FinSet, s: &Span<FinSet>, t: &Span<FinSet>, u: &Span<FinSet>) -> Result<SpanCell<FinSet>> {
    let mut cell = associator(v, s, t, u)?;
    let apex = &cell.bottom.apex;
    let key = |k: usize| (cell.bottom.left_leg.table()[k], cell.bottom.right_leg.table()[k]);
    let pair = (0..apex.len())
        .flat_map(|a| (a + 1..apex.len()).map(move |b| (a, b)))
        .find(|&(a, b)| key(a) == key(b));
    if let Some((a, b)) = pair {
        let mut table: Vec<u32> = (0..apex.len() as u32).collect();
        table.swap(a, b);
        cell.body = cell.body.then(&FinMap::from_table(apex, apex, table)?)?;
    }
    Ok(cell)
}

/// The distributivity inverse followed by a swap of the first two elements
/// of the spread coproduct.
pub fn matrix_dist(v: &FinSet, delta: &FinMap) -> Result<FinMap> {
    let inv = dist_inverse(v, delta)?;
    inv.then(&swap_first_two(inv.dst())?)
}

/// The one-object monad on `{1x, s1}` whose multiplication is `a * b = ¬a`,
/// which is not associative.
pub fn magma() -> Result<Monad<FinSet, Matrices>> {
    let m = encode_matrix(&fixtures::cyclic(2))?;
    let e = composite_entry(&FinSet, &m.carrier, &m.carrier, 0, 0);
    let pr = &e.products[0];
    let mut table = vec![0u32; e.sum.apex.len()];
    for k in 0..pr.apex.len() {
        table[e.sum.legs[0].image_index(k)] = 1 - pr.legs[0].image_index(k) as u32;
    }
    let mut mu = m.mu.clone();
    mu.components[0] = FinMap::from_table(&e.sum.apex, m.carrier.entry(0, 0), table)?;
    Monad::new(&FinSet, m.carrier, mu, m.eta)
}
