//! Finite labeled sets and functions.
//!
//! Element labels are kept sorted. Products and pullbacks label their
//! elements `(a,b)`, coproducts tag the member index as `i.x`, and
//! exponentials label a function by its graph `{b:c,...}`.

mod pointed;

pub use pointed::{FinPointedSet, PointedMap, PointedObj, WEDGE_POINT};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{
    BaseCategory, Cocone, CoconeOf, Cone, ConeOf, Exponential, ExponentialOf, PullbackOf,
    PullbackSquare,
};

/// Label of a tuple element of a product or pullback.
pub fn tuple_label<S: AsRef<str>>(parts: &[S]) -> String {
    let mut s = String::from("(");
    for (k, p) in parts.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        s.push_str(p.as_ref());
    }
    s.push(')');
    s
}

/// Label of the element `x` of member `index` of a coproduct.
pub fn tag_label(index: usize, x: &str) -> String {
    format!("{index}.{x}")
}

/// A label is well formed if it is nonempty, its brackets balance and it
/// has no comma outside brackets. This keeps tuple labels unambiguous.
pub fn check_label(label: &str) -> Result<()> {
    let mut stack = Vec::new();
    let bad = || Error::InvalidLabel(label.to_string());
    if label.is_empty() {
        return Err(bad());
    }
    for ch in label.chars() {
        match ch {
            '(' | '[' | '{' => stack.push(ch),
            ')' | ']' | '}' => {
                let open = stack.pop().ok_or_else(bad)?;
                if !matches!((open, ch), ('(', ')') | ('[', ']') | ('{', '}')) {
                    return Err(bad());
                }
            }
            ',' if stack.is_empty() => return Err(bad()),
            _ => {}
        }
    }
    if stack.is_empty() {
        Ok(())
    } else {
        Err(bad())
    }
}

/// A finite set of distinct labels, stored sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSetObj(Arc<[String]>);

impl FinSetObj {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = labels.into_iter().map(Into::into).collect();
        for l in &v {
            check_label(l)?;
        }
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
        Ok(FinSetObj(v.into()))
    }

    /// Builds from labels known to be distinct; returns the sorting
    /// permutation `perm` with `sorted[k] = labels[perm[k]]`.
    fn from_distinct(labels: Vec<String>) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        debug_assert!(order.windows(2).all(|w| labels[w[0]] != labels[w[1]]));
        let sorted: Vec<String> = order.iter().map(|&k| labels[k].clone()).collect();
        (FinSetObj(sorted.into()), order)
    }

    pub fn empty() -> Self {
        FinSetObj(Vec::new().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.0.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_some()
    }

    pub fn id(&self) -> String {
        format!("{{{}}}", self.0.join(","))
    }
}

impl fmt::Debug for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// A total function between finite sets; `table[k]` is the position in
/// `dst` of the image of the `k`-th element of `src`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinMap {
    src: FinSetObj,
    dst: FinSetObj,
    table: Arc<[u32]>,
}

impl FinMap {
    /// Builds a map from `(source label, image label)` pairs.
    pub fn new<I, A, B>(src: &FinSetObj, dst: &FinSetObj, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut table: Vec<Option<u32>> = vec![None; src.len()];
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = src.position(a).ok_or_else(|| Error::UnknownLabel {
                label: a.to_string(),
                context: format!("map source {}", src.id()),
            })?;
            let j = dst.position(b).ok_or_else(|| Error::UnknownLabel {
                label: b.to_string(),
                context: format!("map target {}", dst.id()),
            })?;
            if table[i].replace(j as u32).is_some() {
                return Err(Error::DuplicateLabel(a.to_string()));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::boundary(format!("map undefined at `{}`", src.label(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinMap {
            src: src.clone(),
            dst: dst.clone(),
            table: table.into(),
        })
    }

    pub fn from_table(src: &FinSetObj, dst: &FinSetObj, table: Vec<u32>) -> Result<Self> {
        if table.len() != src.len() || table.iter().any(|&t| t as usize >= dst.len()) {
            return Err(Error::boundary("table does not fit the given sets"));
        }
        Ok(FinMap {
            src: src.clone(),
            dst: dst.clone(),
            table: table.into(),
        })
    }

    pub fn from_fn(src: &FinSetObj, dst: &FinSetObj, f: impl Fn(&str) -> String) -> Result<Self> {
        FinMap::new(src, dst, src.labels().iter().map(|a| (a.clone(), f(a))))
    }

    pub fn identity(x: &FinSetObj) -> Self {
        FinMap {
            src: x.clone(),
            dst: x.clone(),
            table: (0..x.len() as u32).collect::<Vec<_>>().into(),
        }
    }

    pub fn src(&self) -> &FinSetObj {
        &self.src
    }

    pub fn dst(&self) -> &FinSetObj {
        &self.dst
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn image_index(&self, k: usize) -> usize {
        self.table[k] as usize
    }

    pub fn apply(&self, label: &str) -> Option<&str> {
        self.src.position(label).map(|k| self.dst.label(self.image_index(k)))
    }

    /// `self` then `other`.
    pub fn then(&self, other: &FinMap) -> Result<FinMap> {
        if self.dst != other.src {
            return Err(Error::boundary(format!(
                "cannot compose {:?} with {:?}",
                self, other
            )));
        }
        let table: Vec<u32> = self.table.iter().map(|&t| other.table[t as usize]).collect();
        Ok(FinMap {
            src: self.src.clone(),
            dst: other.dst.clone(),
            table: table.into(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.dst.len()];
        self.table
            .iter()
            .all(|&t| !std::mem::replace(&mut seen[t as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.dst.len()];
        for &t in self.table.iter() {
            seen[t as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Elements of `src` sent to the `j`-th element of `dst`.
    pub fn preimage(&self, j: usize) -> Vec<usize> {
        (0..self.src.len()).filter(|&k| self.image_index(k) == j).collect()
    }

    /// `label -> image` pairs in source order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.src
            .labels()
            .iter()
            .zip(self.table.iter())
            .map(|(a, &t)| (a.as_str(), self.dst.label(t as usize)))
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}->{b}")?;
        }
        write!(f, "}}: {} -> {}", self.src.id(), self.dst.id())
    }
}

/// The two-sided inverse of `f`, if `f` is a bijection.
pub fn iso_check(f: &FinMap) -> Option<FinMap> {
    if f.src.len() != f.dst.len() || !f.is_injective() {
        return None;
    }
    let mut inv = vec![0u32; f.dst.len()];
    for (k, &t) in f.table.iter().enumerate() {
        inv[t as usize] = k as u32;
    }
    Some(FinMap {
        src: f.dst.clone(),
        dst: f.src.clone(),
        table: inv.into(),
    })
}

fn check_count(what: impl FnOnce() -> String, base: usize, exp: usize, cap: usize) -> Result<()> {
    let count = (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::ResourceCap {
            what: what(),
            count,
            cap,
        });
    }
    Ok(())
}

/// Lexicographic enumeration of all tuples in `∏ choices[k]`.
pub(crate) fn odometer(choices: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if choices.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cursor = vec![0usize; choices.len()];
    loop {
        out.push(cursor.iter().zip(choices).map(|(&c, ch)| ch[c]).collect());
        let mut k = choices.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < choices[k].len() {
                break;
            }
            cursor[k] = 0;
        }
    }
}

fn canonical_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| {
            if n <= 26 {
                ((b'a' + k as u8) as char).to_string()
            } else {
                format!("e{k}")
            }
        })
        .collect()
}

/// The category of finite sets: extensive and cartesian closed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FinSet;

impl FinSet {
    /// The canonical set `{a, b, ...}` with `n` elements.
    pub fn standard(n: usize) -> FinSetObj {
        FinSetObj::from_distinct(canonical_labels(n)).0
    }
}

impl BaseCategory for FinSet {
    type Obj = FinSetObj;
    type Mor = FinMap;

    fn name(&self) -> String {
        "finset".into()
    }

    fn obj_id(&self, x: &FinSetObj) -> String {
        x.id()
    }

    fn size_hint(&self, x: &FinSetObj) -> usize {
        x.len()
    }

    fn dom(&self, f: &FinMap) -> FinSetObj {
        f.src.clone()
    }

    fn cod(&self, f: &FinMap) -> FinSetObj {
        f.dst.clone()
    }

    fn identity(&self, x: &FinSetObj) -> FinMap {
        FinMap::identity(x)
    }

    fn compose(&self, f: &FinMap, g: &FinMap) -> Result<FinMap> {
        f.then(g)
    }

    fn product(&self, family: &[FinSetObj]) -> ConeOf<Self> {
        let choices: Vec<Vec<u32>> = family.iter().map(|x| (0..x.len() as u32).collect()).collect();
        let tuples = odometer(&choices);
        let labels: Vec<String> = tuples
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t
                    .iter()
                    .zip(family)
                    .map(|(&i, x)| x.label(i as usize))
                    .collect();
                tuple_label(&parts)
            })
            .collect();
        let (apex, order) = FinSetObj::from_distinct(labels);
        let legs = family
            .iter()
            .enumerate()
            .map(|(k, x)| FinMap {
                src: apex.clone(),
                dst: x.clone(),
                table: order.iter().map(|&o| tuples[o][k]).collect::<Vec<_>>().into(),
            })
            .collect();
        Cone { apex, legs }
    }

    fn tuple(&self, src: &FinSetObj, product: &ConeOf<Self>, legs: &[FinMap]) -> Result<FinMap> {
        if legs.len() != product.legs.len() {
            return Err(Error::boundary("tuple: leg count differs from the product arity"));
        }
        for (l, p) in legs.iter().zip(&product.legs) {
            if l.src != *src || l.dst != p.dst {
                return Err(Error::boundary(format!("tuple: leg {l:?} does not fit the product")));
            }
        }
        let mut index: HashMap<Vec<u32>, u32> = HashMap::with_capacity(product.apex.len());
        for e in 0..product.apex.len() {
            let key: Vec<u32> = product.legs.iter().map(|p| p.table[e]).collect();
            index.insert(key, e as u32);
        }
        let table = (0..src.len())
            .map(|x| {
                let key: Vec<u32> = legs.iter().map(|l| l.table[x]).collect();
                index
                    .get(&key)
                    .copied()
                    .ok_or_else(|| Error::internal("tuple: no product element over the given legs"))
            })
            .collect::<Result<Vec<_>>>()?;
        FinMap::from_table(src, &product.apex, table)
    }

    fn coproduct(&self, family: &[FinSetObj]) -> CoconeOf<Self> {
        let mut labels = Vec::new();
        let mut origin = Vec::new();
        for (k, x) in family.iter().enumerate() {
            for (i, l) in x.labels().iter().enumerate() {
                labels.push(tag_label(k, l));
                origin.push((k, i));
            }
        }
        let (apex, order) = FinSetObj::from_distinct(labels);
        let mut tables: Vec<Vec<u32>> = family.iter().map(|x| vec![0; x.len()]).collect();
        for (pos, &o) in order.iter().enumerate() {
            let (k, i) = origin[o];
            tables[k][i] = pos as u32;
        }
        let legs = family
            .iter()
            .zip(tables)
            .map(|(x, t)| FinMap {
                src: x.clone(),
                dst: apex.clone(),
                table: t.into(),
            })
            .collect();
        Cocone { apex, legs }
    }

    fn cotuple(&self, coproduct: &CoconeOf<Self>, dst: &FinSetObj, legs: &[FinMap]) -> Result<FinMap> {
        if legs.len() != coproduct.legs.len() {
            return Err(Error::boundary("cotuple: leg count differs from the coproduct arity"));
        }
        let mut table: Vec<Option<u32>> = vec![None; coproduct.apex.len()];
        for (l, i) in legs.iter().zip(&coproduct.legs) {
            if l.src != i.src || l.dst != *dst {
                return Err(Error::boundary(format!("cotuple: leg {l:?} does not fit the coproduct")));
            }
            for a in 0..l.src.len() {
                let slot = &mut table[i.table[a] as usize];
                if slot.is_some() {
                    return Err(Error::internal("cotuple: coprojection images overlap"));
                }
                *slot = Some(l.table[a]);
            }
        }
        let table = table
            .into_iter()
            .map(|t| t.ok_or_else(|| Error::internal("cotuple: coprojections do not cover the apex")))
            .collect::<Result<Vec<_>>>()?;
        FinMap::from_table(&coproduct.apex, dst, table)
    }

    fn pullback(&self, f: &FinMap, g: &FinMap) -> Result<PullbackOf<Self>> {
        if f.dst != g.dst {
            return Err(Error::boundary(format!(
                "pullback of maps with different codomains {} and {}",
                f.dst.id(),
                g.dst.id()
            )));
        }
        let mut pairs = Vec::new();
        for a in 0..f.src.len() {
            for b in 0..g.src.len() {
                if f.table[a] == g.table[b] {
                    pairs.push((a as u32, b as u32));
                }
            }
        }
        let labels = pairs
            .iter()
            .map(|&(a, b)| tuple_label(&[f.src.label(a as usize), g.src.label(b as usize)]))
            .collect();
        let (apex, order) = FinSetObj::from_distinct(labels);
        let left = FinMap {
            src: apex.clone(),
            dst: f.src.clone(),
            table: order.iter().map(|&o| pairs[o].0).collect::<Vec<_>>().into(),
        };
        let right = FinMap {
            src: apex.clone(),
            dst: g.src.clone(),
            table: order.iter().map(|&o| pairs[o].1).collect::<Vec<_>>().into(),
        };
        Ok(PullbackSquare { apex, left, right })
    }

    fn pullback_mediator(&self, pb: &PullbackOf<Self>, h: &FinMap, k: &FinMap) -> Result<FinMap> {
        if h.src != k.src || h.dst != pb.left.dst || k.dst != pb.right.dst {
            return Err(Error::boundary("pullback mediator: cone does not fit the square"));
        }
        let index: HashMap<(u32, u32), u32> = (0..pb.apex.len())
            .map(|e| ((pb.left.table[e], pb.right.table[e]), e as u32))
            .collect();
        let table = (0..h.src.len())
            .map(|x| {
                index
                    .get(&(h.table[x], k.table[x]))
                    .copied()
                    .ok_or_else(|| Error::internal("pullback mediator: cone does not commute"))
            })
            .collect::<Result<Vec<_>>>()?;
        FinMap::from_table(&h.src, &pb.apex, table)
    }

    fn enumerate_objects(&self, bound: usize) -> Vec<FinSetObj> {
        (0..=bound).map(FinSet::standard).collect()
    }

    fn enumerate_morphisms(&self, src: &FinSetObj, dst: &FinSetObj, cap: usize) -> Result<Vec<FinMap>> {
        check_count(|| format!("maps {} -> {}", src.id(), dst.id()), dst.len(), src.len(), cap)?;
        let choices: Vec<Vec<u32>> = vec![(0..dst.len() as u32).collect(); src.len()];
        Ok(odometer(&choices)
            .into_iter()
            .map(|t| FinMap {
                src: src.clone(),
                dst: dst.clone(),
                table: t.into(),
            })
            .collect())
    }

    fn enumerate_slice_morphisms(&self, a: &FinMap, b: &FinMap, cap: usize) -> Result<Vec<FinMap>> {
        if a.dst != b.dst {
            return Err(Error::boundary("slice morphisms need a common base"));
        }
        let choices: Vec<Vec<u32>> = (0..a.src.len())
            .map(|x| b.preimage(a.image_index(x)).into_iter().map(|k| k as u32).collect())
            .collect();
        let count = choices
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
            .unwrap_or(u128::MAX);
        if count > cap as u128 {
            return Err(Error::ResourceCap {
                what: format!("slice maps {:?} -> {:?}", a, b),
                count,
                cap,
            });
        }
        Ok(odometer(&choices)
            .into_iter()
            .map(|t| FinMap {
                src: a.src.clone(),
                dst: b.src.clone(),
                table: t.into(),
            })
            .collect())
    }

    fn inverse(&self, f: &FinMap) -> Option<FinMap> {
        iso_check(f)
    }

    fn exponential(&self, base: &FinSetObj, target: &FinSetObj) -> Option<ExponentialOf<Self>> {
        let choices: Vec<Vec<u32>> = vec![(0..target.len() as u32).collect(); base.len()];
        let graphs = odometer(&choices);
        let labels: Vec<String> = graphs
            .iter()
            .map(|g| {
                let body: Vec<String> = g
                    .iter()
                    .enumerate()
                    .map(|(b, &c)| format!("{}:{}", base.label(b), target.label(c as usize)))
                    .collect();
                format!("{{{}}}", body.join(","))
            })
            .collect();
        let (object, order) = FinSetObj::from_distinct(labels);
        let product = self.product(&[object.clone(), base.clone()]);
        let table: Vec<u32> = (0..product.apex.len())
            .map(|e| {
                let phi = order[product.legs[0].table[e] as usize];
                let b = product.legs[1].table[e] as usize;
                graphs[phi][b]
            })
            .collect();
        let eval = FinMap {
            src: product.apex.clone(),
            dst: target.clone(),
            table: table.into(),
        };
        Some(Exponential { object, product, eval })
    }
}
