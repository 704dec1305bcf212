//! The pseudo-double category `V-Mat` of matrices of objects.
//!
//! A matrix `M : I -> J` holds an object `M(i,j)` per pair of labels and
//! composes with `N : J -> K` as `(M∘N)(i,k) = ∐_j M(i,j) × N(j,k)`.
//! Associators are assembled from the inverse of the distributivity
//! comparison `∐_j (X_j × Y) -> (∐_j X_j) × Y`, which is required to exist.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::double::{self, PseudoDouble};
use crate::error::{Error, Result};
use crate::index::{IndexMap, IndexSet};
use crate::kernel::{cartesian, BaseCategory, CoconeOf, ConeOf};
use crate::verdict::Verdict;

/// An `I × J` grid of objects, stored row-major.
pub struct Matrix<V: BaseCategory> {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub entries: Vec<V::Obj>,
}

base_struct_impls!(Matrix { rows, cols, entries });

impl<V: BaseCategory> Matrix<V> {
    pub fn new(rows: IndexSet, cols: IndexSet, entries: Vec<V::Obj>) -> Result<Self> {
        if entries.len() != rows.len() * cols.len() {
            return Err(Error::boundary(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows.len(),
                cols.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_fn(rows: &IndexSet, cols: &IndexSet, mut f: impl FnMut(usize, usize) -> V::Obj) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for i in 0..rows.len() {
            for j in 0..cols.len() {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows: rows.clone(),
            cols: cols.clone(),
            entries,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &V::Obj {
        &self.entries[i * self.cols.len() + j]
    }

    pub fn entry_at(&self, row: &str, col: &str) -> Result<&V::Obj> {
        Ok(self.entry(self.rows.require(row)?, self.cols.require(col)?))
    }

    pub fn describe(&self, v: &V) -> serde_json::Value {
        let mut entries = serde_json::Map::new();
        for (i, r) in self.rows.labels().iter().enumerate() {
            for (j, c) in self.cols.labels().iter().enumerate() {
                entries.insert(format!("{r},{c}"), json!(v.obj_id(self.entry(i, j))));
            }
        }
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }
}

/// A family of maps `f_{i,j} : M(i,j) -> N(u i, v j)`.
pub struct MatrixCell<V: BaseCategory> {
    pub top: Matrix<V>,
    pub bottom: Matrix<V>,
    pub left: IndexMap,
    pub right: IndexMap,
    pub components: Vec<V::Mor>,
}

base_struct_impls!(MatrixCell { top, bottom, left, right, components });

impl<V: BaseCategory> MatrixCell<V> {
    pub fn new(
        v: &V,
        top: Matrix<V>,
        bottom: Matrix<V>,
        left: IndexMap,
        right: IndexMap,
        components: Vec<V::Mor>,
    ) -> Result<Self> {
        if *left.src() != top.rows || *left.dst() != bottom.rows {
            return Err(Error::boundary("left index map does not match the row sets"));
        }
        if *right.src() != top.cols || *right.dst() != bottom.cols {
            return Err(Error::boundary("right index map does not match the column sets"));
        }
        if components.len() != top.entries.len() {
            return Err(Error::boundary("cell is missing components"));
        }
        for i in 0..top.rows.len() {
            for j in 0..top.cols.len() {
                let f = &components[i * top.cols.len() + j];
                if v.dom(f) != *top.entry(i, j) || v.cod(f) != *bottom.entry(left.at(i), right.at(j)) {
                    return Err(Error::boundary(format!(
                        "component ({},{}) has the wrong boundary",
                        top.rows.label(i),
                        top.cols.label(j)
                    )));
                }
            }
        }
        Ok(MatrixCell {
            top,
            bottom,
            left,
            right,
            components,
        })
    }

    pub fn component(&self, i: usize, j: usize) -> &V::Mor {
        &self.components[i * self.top.cols.len() + j]
    }

    pub fn is_globular(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }
}

/// Terminal objects on the diagonal, initial objects elsewhere.
pub fn unit_matrix<V: BaseCategory>(v: &V, index: &IndexSet) -> Matrix<V> {
    let (one, zero) = (v.terminal(), v.initial());
    Matrix::from_fn(index, index, |i, j| if i == j { one.clone() } else { zero.clone() })
}

pub fn identity_cell<V: BaseCategory>(v: &V, m: &Matrix<V>) -> MatrixCell<V> {
    MatrixCell {
        top: m.clone(),
        bottom: m.clone(),
        left: IndexMap::identity(&m.rows),
        right: IndexMap::identity(&m.cols),
        components: m.entries.iter().map(|x| v.identity(x)).collect(),
    }
}

/// The universal data of one composite entry `∐_j M(i,j) × N(j,k)`.
pub struct CompositeEntry<V: BaseCategory> {
    pub products: Vec<ConeOf<V>>,
    pub sum: CoconeOf<V>,
}

base_struct_impls!(CompositeEntry { products, sum });

pub fn composite_entry<V: BaseCategory>(v: &V, m: &Matrix<V>, n: &Matrix<V>, i: usize, k: usize) -> CompositeEntry<V> {
    let products: Vec<ConeOf<V>> = (0..m.cols.len())
        .map(|j| v.product(&[m.entry(i, j).clone(), n.entry(j, k).clone()]))
        .collect();
    let apexes: Vec<V::Obj> = products.iter().map(|p| p.apex.clone()).collect();
    let sum = v.coproduct(&apexes);
    CompositeEntry { products, sum }
}

/// `M` then `N`.
pub fn compose_matrices<V: BaseCategory>(v: &V, m: &Matrix<V>, n: &Matrix<V>) -> Result<Matrix<V>> {
    if m.cols != n.rows {
        return Err(Error::boundary(format!("matrices meet at {:?} and {:?}", m.cols, n.rows)));
    }
    Ok(Matrix::from_fn(&m.rows, &n.cols, |i, k| composite_entry(v, m, n, i, k).sum.apex))
}

/// `α` then `β`, componentwise.
pub fn compose_cells_vertical<V: BaseCategory>(v: &V, alpha: &MatrixCell<V>, beta: &MatrixCell<V>) -> Result<MatrixCell<V>> {
    if alpha.bottom != beta.top {
        return Err(Error::boundary("vertical composite needs alpha.bottom = beta.top"));
    }
    let mut components = Vec::with_capacity(alpha.components.len());
    for i in 0..alpha.top.rows.len() {
        for j in 0..alpha.top.cols.len() {
            let next = beta.component(alpha.left.at(i), alpha.right.at(j));
            components.push(v.compose(alpha.component(i, j), next)?);
        }
    }
    Ok(MatrixCell {
        top: alpha.top.clone(),
        bottom: beta.bottom.clone(),
        left: alpha.left.then(&beta.left)?,
        right: alpha.right.then(&beta.right)?,
        components,
    })
}

/// `α` beside `β`: the `(i,k)` component sends the `j`-th summand through
/// `f_{i,j} × g_{j,k}` into the summand indexed by the image of `j`.
pub fn compose_cells_horizontal<V: BaseCategory>(v: &V, alpha: &MatrixCell<V>, beta: &MatrixCell<V>) -> Result<MatrixCell<V>> {
    if alpha.right != beta.left {
        return Err(Error::boundary("horizontal composite needs a shared middle index map"));
    }
    let top = compose_matrices(v, &alpha.top, &beta.top)?;
    let bottom = compose_matrices(v, &alpha.bottom, &beta.bottom)?;
    let middle = &alpha.right;
    let mut components = Vec::with_capacity(top.entries.len());
    for i in 0..top.rows.len() {
        for k in 0..top.cols.len() {
            let src = composite_entry(v, &alpha.top, &beta.top, i, k);
            let dst = composite_entry(v, &alpha.bottom, &beta.bottom, alpha.left.at(i), beta.right.at(k));
            let legs = (0..middle.src().len())
                .map(|j| {
                    let t = middle.at(j);
                    let f = alpha.component(i, j);
                    let g = beta.component(j, k);
                    let fg = pair_map(v, &src.products[j], &dst.products[t], f, g)?;
                    v.compose(&fg, &dst.sum.legs[t])
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(v.cotuple(&src.sum, &dst.sum.apex, &legs)?);
        }
    }
    Ok(MatrixCell {
        top,
        bottom,
        left: alpha.left.clone(),
        right: beta.right.clone(),
        components,
    })
}

/// `f × g` between two given binary product cones.
fn pair_map<V: BaseCategory>(v: &V, src: &ConeOf<V>, dst: &ConeOf<V>, f: &V::Mor, g: &V::Mor) -> Result<V::Mor> {
    let legs = [v.compose(&src.legs[0], f)?, v.compose(&src.legs[1], g)?];
    v.tuple(&src.apex, dst, &legs)
}

/// Inverts the distributivity comparison `∐_j (X_j × Y) -> (∐_j X_j) × Y`.
pub type DistInverse<'a, V> = dyn Fn(&V, &<V as BaseCategory>::Mor) -> Result<<V as BaseCategory>::Mor> + 'a;

/// The inverse of the distributivity comparison, found by the base's
/// inverse search; fails with a capability error if there is none.
pub fn dist_inverse<V: BaseCategory>(v: &V, delta: &V::Mor) -> Result<V::Mor> {
    v.inverse(delta).ok_or_else(|| {
        Error::Capability(format!(
            "{} does not distribute products over coproducts at {}",
            v.name(),
            v.describe(delta)
        ))
    })
}

/// The canonical iso `(M∘N)∘P => M∘(N∘P)`.
pub fn matrix_associator<V: BaseCategory>(v: &V, m: &Matrix<V>, n: &Matrix<V>, p: &Matrix<V>) -> Result<MatrixCell<V>> {
    matrix_associator_with(v, m, n, p, &dist_inverse)
}

/// [`matrix_associator`] with a caller-supplied distributivity inverse.
pub fn matrix_associator_with<V: BaseCategory>(
    v: &V,
    m: &Matrix<V>,
    n: &Matrix<V>,
    p: &Matrix<V>,
    dist_inv: &DistInverse<'_, V>,
) -> Result<MatrixCell<V>> {
    let mn = compose_matrices(v, m, n)?;
    let np = compose_matrices(v, n, p)?;
    let top = compose_matrices(v, &mn, p)?;
    let bottom = compose_matrices(v, m, &np)?;
    let (js, ks) = (m.cols.len(), n.cols.len());
    let mut components = Vec::with_capacity(top.entries.len());
    for i in 0..m.rows.len() {
        for l in 0..p.cols.len() {
            let outer_src = composite_entry(v, &mn, p, i, l);
            let outer_dst = composite_entry(v, m, &np, i, l);
            let inner_dst: Vec<CompositeEntry<V>> = (0..js).map(|j| composite_entry(v, n, p, j, l)).collect();
            let mut legs = Vec::with_capacity(ks);
            for k in 0..ks {
                // (∐_j M_ij × N_jk) × P_kl
                let mn_ik = composite_entry(v, m, n, i, k);
                let summand = &outer_src.products[k];
                let pkl = p.entry(k, l);
                let spread: Vec<ConeOf<V>> = mn_ik
                    .products
                    .iter()
                    .map(|c| v.product(&[c.apex.clone(), pkl.clone()]))
                    .collect();
                let spread_sum = v.coproduct(&spread.iter().map(|c| c.apex.clone()).collect::<Vec<_>>());
                let id_p = v.identity(pkl);
                let delta_legs = (0..js)
                    .map(|j| pair_map(v, &spread[j], summand, &mn_ik.sum.legs[j], &id_p))
                    .collect::<Result<Vec<_>>>()?;
                let delta = v.cotuple(&spread_sum, &summand.apex, &delta_legs)?;
                let undelta = dist_inv(v, &delta)?;
                if v.dom(&undelta) != summand.apex || v.cod(&undelta) != spread_sum.apex {
                    return Err(Error::boundary("distributivity inverse has the wrong boundary"));
                }
                // (M_ij × N_jk) × P_kl -> M_ij × (N_jk × P_kl) -> M_ij × (N∘P)_jl
                let routes = (0..js)
                    .map(|j| {
                        let c = &spread[j];
                        let mnj = &mn_ik.products[j];
                        let to_m = v.compose(&c.legs[0], &mnj.legs[0])?;
                        let to_n = v.compose(&c.legs[0], &mnj.legs[1])?;
                        let np_jk = &inner_dst[j].products[k];
                        let to_np = v.tuple(&c.apex, np_jk, &[to_n, c.legs[1].clone()])?;
                        let into_np = v.compose(&to_np, &inner_dst[j].sum.legs[k])?;
                        let target = &outer_dst.products[j];
                        let reassoc = v.tuple(&c.apex, target, &[to_m, into_np])?;
                        v.compose(&reassoc, &outer_dst.sum.legs[j])
                    })
                    .collect::<Result<Vec<_>>>()?;
                let spread_out = v.cotuple(&spread_sum, &outer_dst.sum.apex, &routes)?;
                legs.push(v.compose(&undelta, &spread_out)?);
            }
            components.push(v.cotuple(&outer_src.sum, &outer_dst.sum.apex, &legs)?);
        }
    }
    Ok(globular(top, bottom, components))
}

fn globular<V: BaseCategory>(top: Matrix<V>, bottom: Matrix<V>, components: Vec<V::Mor>) -> MatrixCell<V> {
    MatrixCell {
        left: IndexMap::identity(&top.rows),
        right: IndexMap::identity(&top.cols),
        top,
        bottom,
        components,
    }
}

/// `unit∘M => M`: projection on the diagonal summand, and the unique map
/// out of `0 × M(j,k)` elsewhere.
pub fn left_unitor<V: BaseCategory>(v: &V, m: &Matrix<V>) -> Result<MatrixCell<V>> {
    let u = unit_matrix(v, &m.rows);
    let top = compose_matrices(v, &u, m)?;
    let mut components = Vec::with_capacity(m.entries.len());
    for i in 0..m.rows.len() {
        for k in 0..m.cols.len() {
            let e = composite_entry(v, &u, m, i, k);
            let legs = (0..m.rows.len())
                .map(|j| {
                    let pr = &e.products[j];
                    if j == i {
                        Ok(pr.legs[1].clone())
                    } else {
                        v.compose(&pr.legs[0], &v.from_initial(m.entry(i, k))?)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(v.cotuple(&e.sum, m.entry(i, k), &legs)?);
        }
    }
    Ok(globular(top, m.clone(), components))
}

/// `M∘unit => M`, symmetric to [`left_unitor`].
pub fn right_unitor<V: BaseCategory>(v: &V, m: &Matrix<V>) -> Result<MatrixCell<V>> {
    let u = unit_matrix(v, &m.cols);
    let top = compose_matrices(v, m, &u)?;
    let mut components = Vec::with_capacity(m.entries.len());
    for i in 0..m.rows.len() {
        for k in 0..m.cols.len() {
            let e = composite_entry(v, m, &u, i, k);
            let legs = (0..m.cols.len())
                .map(|j| {
                    let pr = &e.products[j];
                    if j == k {
                        Ok(pr.legs[0].clone())
                    } else {
                        v.compose(&pr.legs[1], &v.from_initial(m.entry(i, k))?)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(v.cotuple(&e.sum, m.entry(i, k), &legs)?);
        }
    }
    Ok(globular(top, m.clone(), components))
}

pub fn invert_cell<V: BaseCategory>(v: &V, c: &MatrixCell<V>) -> Option<MatrixCell<V>> {
    if !c.is_globular() {
        return None;
    }
    let components = c.components.iter().map(|f| v.inverse(f)).collect::<Option<Vec<_>>>()?;
    Some(globular(c.bottom.clone(), c.top.clone(), components))
}

/// `unit_I => unit_K` over `(u, u)`: identities of the terminal on the
/// diagonal, maps out of the initial object elsewhere.
pub fn unit_cell<V: BaseCategory>(v: &V, u: &IndexMap) -> Result<MatrixCell<V>> {
    let top = unit_matrix(v, u.src());
    let bottom = unit_matrix(v, u.dst());
    let n = u.src().len();
    let mut components = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            components.push(if i == j {
                v.identity(&v.terminal())
            } else {
                v.from_initial(bottom.entry(u.at(i), u.at(j)))?
            });
        }
    }
    MatrixCell::new(v, top, bottom, u.clone(), u.clone(), components)
}

/// Every cell `top => bottom` over `(left, right)`.
pub fn cells_between<V: BaseCategory>(
    v: &V,
    top: &Matrix<V>,
    bottom: &Matrix<V>,
    left: &IndexMap,
    right: &IndexMap,
    cap: usize,
) -> Result<Vec<MatrixCell<V>>> {
    if *left.src() != top.rows || *left.dst() != bottom.rows || *right.src() != top.cols || *right.dst() != bottom.cols {
        return Err(Error::boundary("index maps do not match the matrices"));
    }
    let mut homs = Vec::with_capacity(top.entries.len());
    for i in 0..top.rows.len() {
        for j in 0..top.cols.len() {
            homs.push(v.enumerate_morphisms(top.entry(i, j), bottom.entry(left.at(i), right.at(j)), cap)?);
        }
    }
    let total = homs
        .iter()
        .try_fold(1u128, |acc, h| acc.checked_mul(h.len() as u128))
        .unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::ResourceCap {
            what: "matrix cells".into(),
            count: total,
            cap,
        });
    }
    Ok(cartesian(&homs)
        .into_iter()
        .map(|components| MatrixCell {
            top: top.clone(),
            bottom: bottom.clone(),
            left: left.clone(),
            right: right.clone(),
            components,
        })
        .collect())
}

/// A matrix `I -> J` with entries drawn uniformly among objects of rank at
/// most `bound`.
pub fn random_matrix<V: BaseCategory>(v: &V, rng: &mut ChaCha8Rng, rows: &IndexSet, cols: &IndexSet, bound: usize) -> Matrix<V> {
    let objs = v.enumerate_objects(bound);
    Matrix::from_fn(rows, cols, |_, _| objs[rng.gen_range(0..objs.len())].clone())
}

/// Marker for the pseudo-double category of matrices.
#[derive(Debug, Clone, Copy, Default)]
pub struct Matrices;

impl<V: BaseCategory> PseudoDouble<V> for Matrices {
    type H = Matrix<V>;
    type Cell = MatrixCell<V>;

    const KIND: &'static str = "matrix";

    fn source(h: &Matrix<V>) -> &IndexSet {
        &h.rows
    }

    fn target(h: &Matrix<V>) -> &IndexSet {
        &h.cols
    }

    fn unit(v: &V, index: &IndexSet) -> Matrix<V> {
        unit_matrix(v, index)
    }

    fn compose(v: &V, h: &Matrix<V>, k: &Matrix<V>) -> Result<Matrix<V>> {
        compose_matrices(v, h, k)
    }

    fn top(c: &MatrixCell<V>) -> &Matrix<V> {
        &c.top
    }

    fn bottom(c: &MatrixCell<V>) -> &Matrix<V> {
        &c.bottom
    }

    fn boundaries(c: &MatrixCell<V>) -> (&IndexMap, &IndexMap) {
        (&c.left, &c.right)
    }

    fn unit_cell(v: &V, u: &IndexMap) -> Result<MatrixCell<V>> {
        unit_cell(v, u)
    }

    fn cells_between(
        v: &V,
        top: &Matrix<V>,
        bottom: &Matrix<V>,
        left: &IndexMap,
        right: &IndexMap,
        cap: usize,
    ) -> Result<Vec<MatrixCell<V>>> {
        cells_between(v, top, bottom, left, right, cap)
    }

    fn identity_cell(v: &V, h: &Matrix<V>) -> MatrixCell<V> {
        identity_cell(v, h)
    }

    fn vertical(v: &V, a: &MatrixCell<V>, b: &MatrixCell<V>) -> Result<MatrixCell<V>> {
        compose_cells_vertical(v, a, b)
    }

    fn horizontal(v: &V, a: &MatrixCell<V>, b: &MatrixCell<V>) -> Result<MatrixCell<V>> {
        compose_cells_horizontal(v, a, b)
    }

    fn associator(v: &V, h: &Matrix<V>, k: &Matrix<V>, l: &Matrix<V>) -> Result<MatrixCell<V>> {
        matrix_associator(v, h, k, l)
    }

    fn left_unitor(v: &V, h: &Matrix<V>) -> Result<MatrixCell<V>> {
        left_unitor(v, h)
    }

    fn right_unitor(v: &V, h: &Matrix<V>) -> Result<MatrixCell<V>> {
        right_unitor(v, h)
    }

    fn invert(v: &V, c: &MatrixCell<V>) -> Option<MatrixCell<V>> {
        invert_cell(v, c)
    }

    fn describe(v: &V, h: &Matrix<V>) -> serde_json::Value {
        h.describe(v)
    }

    fn describe_cell(v: &V, c: &MatrixCell<V>) -> serde_json::Value {
        json!({
            "top": c.top.describe(v),
            "bottom": c.bottom.describe(v),
            "left": format!("{:?}", c.left),
            "right": format!("{:?}", c.right),
            "components": c.components.iter().map(|f| v.describe(f)).collect::<Vec<_>>(),
        })
    }

    fn random(v: &V, rng: &mut ChaCha8Rng, from: &IndexSet, to: &IndexSet, bound: usize, _cap: usize) -> Result<Matrix<V>> {
        Ok(random_matrix(v, rng, from, to, bound))
    }
}

/// Pentagon and triangle for `trials` seeded random quadruples of matrices
/// with entries of rank at most `entry_bound`.
pub fn check_coherence<V: BaseCategory>(v: &V, trials: usize, seed: u64, entry_bound: usize, cap: usize) -> Result<Verdict> {
    double::check_coherence::<V, Matrices>(v, trials, seed, entry_bound, cap)
}

/// [`check_coherence`] with associators built from a caller-supplied
/// distributivity inverse.
pub fn check_coherence_with_dist<V: BaseCategory>(
    v: &V,
    trials: usize,
    seed: u64,
    entry_bound: usize,
    cap: usize,
    dist_inv: &DistInverse<'_, V>,
) -> Result<Verdict> {
    let assoc = |v: &V, m: &Matrix<V>, n: &Matrix<V>, p: &Matrix<V>| matrix_associator_with(v, m, n, p, dist_inv);
    double::check_coherence_with::<V, Matrices>(v, trials, seed, entry_bound, cap, &assoc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinMap, FinPointedSet, FinSet, FinSetObj};
    use crate::kernel::DEFAULT_ENUMERATION_CAP as CAP;
    use rand::SeedableRng;

    fn sized(n: usize) -> FinSetObj {
        FinSet::standard(n)
    }

    fn sizes(rows: usize, cols: usize, s: &[usize]) -> Matrix<FinSet> {
        let r = IndexSet::standard(rows);
        let c = IndexSet::new((0..cols).map(|k| format!("j{k}"))).unwrap();
        Matrix::new(r, c, s.iter().map(|&n| sized(n)).collect()).unwrap()
    }

    fn reindex(m: Matrix<FinSet>, rows: &IndexSet, cols: &IndexSet) -> Matrix<FinSet> {
        Matrix::new(rows.clone(), cols.clone(), m.entries).unwrap()
    }

    #[test]
    fn unit_matrix_examples() {
        assert!(unit_matrix(&FinSet, &IndexSet::empty()).entries.is_empty());
        let one = unit_matrix(&FinSet, &IndexSet::standard(1));
        assert_eq!(one.entries, vec![FinSet.terminal()]);
        let two = unit_matrix(&FinSet, &IndexSet::new(["i", "j"]).unwrap());
        let lens: Vec<usize> = two.entries.iter().map(FinSetObj::len).collect();
        assert_eq!(lens, vec![1, 0, 0, 1]);
    }

    #[test]
    fn composite_sizes() {
        let m = sizes(1, 2, &[1, 2]);
        let n = reindex(sizes(2, 1, &[3, 0]), &m.cols, &IndexSet::new(["k"]).unwrap());
        let c = compose_matrices(&FinSet, &m, &n).unwrap();
        assert_eq!(c.entries[0].len(), 1 * 3 + 2 * 0);

        let u = unit_matrix(&FinSet, &m.rows);
        let c = compose_matrices(&FinSet, &u, &m).unwrap();
        assert!(c.entries.iter().zip(&m.entries).all(|(a, b)| a.len() == b.len()));

        let z = sizes(2, 2, &[0, 0, 1, 2]);
        let w = reindex(sizes(2, 2, &[1, 2, 3, 1]), &z.cols, &IndexSet::standard(2));
        let c = compose_matrices(&FinSet, &z, &w).unwrap();
        assert!(c.entry(0, 0).is_empty() && c.entry(0, 1).is_empty());
        assert!(matches!(compose_matrices(&FinSet, &z, &z), Err(Error::Boundary(_))));
    }

    proptest::proptest! {
        #[test]
        fn composite_cardinality(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b, c) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
            let m = random_matrix(&FinSet, &mut rng, &IndexSet::standard(a), &IndexSet::standard(b), 3);
            let n = random_matrix(&FinSet, &mut rng, &IndexSet::standard(b), &IndexSet::standard(c), 3);
            let mn = compose_matrices(&FinSet, &m, &n).unwrap();
            for i in 0..a {
                for k in 0..c {
                    let expected: usize = (0..b).map(|j| m.entry(i, j).len() * n.entry(j, k).len()).sum();
                    proptest::prop_assert_eq!(mn.entry(i, k).len(), expected);
                }
            }
        }
    }

    fn swap_first_two(x: &FinSetObj) -> FinMap {
        let mut t: Vec<u32> = (0..x.len() as u32).collect();
        if t.len() >= 2 {
            t.swap(0, 1);
        }
        FinMap::from_table(x, x, t).unwrap()
    }

    #[test]
    fn vertical_composite_with_inverse_is_identity() {
        let m = sizes(2, 2, &[2, 3, 0, 1]);
        let comps: Vec<FinMap> = m.entries.iter().map(swap_first_two).collect();
        let ids = || IndexMap::identity(&m.rows);
        let idc = || IndexMap::identity(&m.cols);
        let c = MatrixCell::new(&FinSet, m.clone(), m.clone(), ids(), idc(), comps).unwrap();
        let inv = invert_cell(&FinSet, &c).unwrap();
        assert_eq!(compose_cells_vertical(&FinSet, &c, &inv).unwrap(), identity_cell(&FinSet, &m));
        let id = identity_cell(&FinSet, &m);
        assert_eq!(compose_cells_vertical(&FinSet, &id, &id).unwrap(), id);
    }

    #[test]
    fn cell_boundaries_are_checked() {
        let m = sizes(1, 1, &[2]);
        let bad = MatrixCell::new(&FinSet, m.clone(), m.clone(), IndexMap::identity(&m.rows), IndexMap::identity(&m.cols), vec![FinMap::identity(&sized(3))]);
        assert!(matches!(bad, Err(Error::Boundary(_))));
    }

    #[test]
    fn horizontal_composite_matches_tagged_pairs() {
        let m = sizes(1, 2, &[2, 1]);
        let n = reindex(sizes(2, 1, &[2, 3]), &m.cols, &IndexSet::new(["k"]).unwrap());
        let idr = IndexMap::identity(&m.rows);
        let idm = IndexMap::identity(&m.cols);
        let idk = IndexMap::identity(&n.cols);
        let f: Vec<FinMap> = m.entries.iter().map(swap_first_two).collect();
        let g: Vec<FinMap> = n.entries.iter().map(swap_first_two).collect();
        let alpha = MatrixCell::new(&FinSet, m.clone(), m.clone(), idr, idm.clone(), f.clone()).unwrap();
        let beta = MatrixCell::new(&FinSet, n.clone(), n.clone(), idm, idk, g.clone()).unwrap();
        let h = compose_cells_horizontal(&FinSet, &alpha, &beta).unwrap();
        // Oracle: the tagged pair "j.(x,y)" goes to "j.(f x, g y)".
        let comp = &h.components[0];
        let mut checked = 0;
        for (a, b) in comp.pairs() {
            let (tag, rest) = a.split_once('.').unwrap();
            let j: usize = tag.parse().unwrap();
            let inner = &rest[1..rest.len() - 1];
            let (x, y) = inner.split_once(',').unwrap();
            let fx = f[j].apply(x).unwrap();
            let gy = g[j].apply(y).unwrap();
            assert_eq!(b, format!("{j}.({fx},{gy})"));
            checked += 1;
        }
        assert_eq!(checked, 2 * 2 + 1 * 3);
        let hid = compose_cells_horizontal(&FinSet, &identity_cell(&FinSet, &m), &identity_cell(&FinSet, &n)).unwrap();
        assert_eq!(hid, identity_cell(&FinSet, &compose_matrices(&FinSet, &m, &n).unwrap()));
    }

    #[test]
    fn associator_examples() {
        let i = IndexSet::standard(2);
        let u = unit_matrix(&FinSet, &i);
        let a = matrix_associator(&FinSet, &u, &u, &u).unwrap();
        assert!(a.components.iter().all(|f| FinSet.is_iso(f)));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (x, j, k, y) = (IndexSet::standard(1), IndexSet::standard(2), IndexSet::standard(2), IndexSet::standard(2));
        let m = random_matrix(&FinSet, &mut rng, &x, &j, 2);
        let n = random_matrix(&FinSet, &mut rng, &j, &k, 2);
        let p = random_matrix(&FinSet, &mut rng, &k, &y, 2);
        let a = matrix_associator(&FinSet, &m, &n, &p).unwrap();
        for (c, f) in a.components.iter().enumerate() {
            let l = c % 2;
            let expected: usize = (0..2)
                .flat_map(|jj| (0..2).map(move |kk| (jj, kk)))
                .map(|(jj, kk)| m.entry(0, jj).len() * n.entry(jj, kk).len() * p.entry(kk, l).len())
                .sum();
            assert_eq!(f.src().len(), expected);
            assert_eq!(f.dst().len(), expected);
            assert!(FinSet.is_iso(f));
        }

        let zero = Matrix::from_fn(&j, &k, |_, _| FinSet.initial());
        let a = matrix_associator(&FinSet, &m, &zero, &p).unwrap();
        assert!(a.top.entries.iter().chain(&a.bottom.entries).all(FinSetObj::is_empty));
    }

    #[test]
    fn unitors_are_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_matrix(&FinSet, &mut rng, &IndexSet::standard(2), &IndexSet::standard(3), 3);
        assert!(invert_cell(&FinSet, &left_unitor(&FinSet, &m).unwrap()).is_some());
        assert!(invert_cell(&FinSet, &right_unitor(&FinSet, &m).unwrap()).is_some());
    }

    #[test]
    fn coherence_on_finset() {
        let verdict = check_coherence(&FinSet, 20, 1, 3, CAP).unwrap();
        assert!(verdict.holds, "{:?}", verdict.witnesses);
    }

    #[test]
    fn coherence_on_units() {
        let u = unit_matrix(&FinSet, &IndexSet::standard(2));
        let units = vec![u.clone(), u.clone(), u.clone(), u];
        assert!(double::check_tuple::<FinSet, Matrices>(&FinSet, &units, &matrix_associator, json!(null)).unwrap().holds);
    }

    #[test]
    fn pointed_associator_needs_distributivity() {
        let v = FinPointedSet;
        let two = FinPointedSet::standard(2);
        let j = IndexSet::standard(2);
        let one = IndexSet::standard(1);
        let m = Matrix::from_fn(&one, &j, |_, _| two.clone());
        let n = Matrix::from_fn(&j, &one, |_, _| two.clone());
        let p = Matrix::from_fn(&one, &one, |_, _| two.clone());
        assert!(matches!(matrix_associator(&v, &m, &n, &p), Err(Error::Capability(_))));
        assert!(matches!(check_coherence(&v, 20, 1, 2, CAP), Err(Error::Capability(_))));
    }

    #[test]
    fn mutant_distributivity_is_rejected() {
        let verdict = check_coherence_with_dist(&FinSet, 100, 2024, 4, CAP, &crate::mutants::matrix_dist).unwrap();
        assert!(!verdict.holds);
    }
}
