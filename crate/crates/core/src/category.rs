//! Finite categories given by explicit composition tables, functors between
//! them, and isomorphism search.
//!
//! Composition is diagrammatic throughout: the entry `(f, g) -> h` means
//! `h = f ; g`, defined when the target of `f` is the source of `g`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::check_label;
use crate::index::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// A validated finite category. Arrows are kept sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: IndexSet,
    arrows: Vec<Arrow>,
    src: Vec<usize>,
    dst: Vec<usize>,
    identities: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

/// The serialized form of a [`FiniteCategory`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryData {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: BTreeMap<String, String>,
    /// Triples `[f, g, f;g]`.
    pub composition: Vec<[String; 3]>,
}

impl FiniteCategory {
    pub fn new<O, S>(objects: O, arrows: Vec<Arrow>, identities: BTreeMap<String, String>, composition: Vec<[String; 3]>) -> Result<Self>
    where
        O: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let objects = IndexSet::new(objects)?;
        for o in objects.labels() {
            check_label(o)?;
        }
        let mut arrows = arrows;
        arrows.sort();
        for w in arrows.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::DuplicateLabel(w[0].name.clone()));
            }
        }
        let names: BTreeMap<&str, usize> = arrows.iter().enumerate().map(|(k, a)| (a.name.as_str(), k)).collect();
        let arrow = |name: &str| {
            names.get(name).copied().ok_or_else(|| Error::UnknownLabel {
                label: name.to_string(),
                context: "arrows".into(),
            })
        };
        let mut src = Vec::with_capacity(arrows.len());
        let mut dst = Vec::with_capacity(arrows.len());
        for a in &arrows {
            check_label(&a.name)?;
            src.push(objects.require(&a.src)?);
            dst.push(objects.require(&a.dst)?);
        }

        let mut ids = vec![None; objects.len()];
        for (o, a) in &identities {
            let x = objects.require(o)?;
            let f = arrow(a)?;
            if src[f] != x || dst[f] != x {
                return Err(Error::InvalidCategory(format!("identity `{a}` of `{o}` is not an endomorphism of it")));
            }
            ids[x] = Some(f);
        }
        let identities = ids
            .into_iter()
            .enumerate()
            .map(|(x, f)| f.ok_or_else(|| Error::InvalidCategory(format!("object `{}` has no identity", objects.label(x)))))
            .collect::<Result<Vec<_>>>()?;

        let mut comp = BTreeMap::new();
        for [f, g, h] in &composition {
            let (f, g, h) = (arrow(f)?, arrow(g)?, arrow(h)?);
            if dst[f] != src[g] {
                return Err(Error::InvalidCategory(format!(
                    "`{}` and `{}` are not composable",
                    arrows[f].name, arrows[g].name
                )));
            }
            if src[h] != src[f] || dst[h] != dst[g] {
                return Err(Error::InvalidCategory(format!(
                    "`{}` ; `{}` = `{}` has the wrong type",
                    arrows[f].name, arrows[g].name, arrows[h].name
                )));
            }
            if comp.insert((f, g), h).is_some_and(|old| old != h) {
                return Err(Error::InvalidCategory(format!(
                    "`{}` ; `{}` is defined twice",
                    arrows[f].name, arrows[g].name
                )));
            }
        }
        let c = FiniteCategory {
            objects,
            arrows,
            src,
            dst,
            identities,
            comp,
        };
        c.check_laws()?;
        Ok(c)
    }

    pub fn from_data(data: &CategoryData) -> Result<Self> {
        FiniteCategory::new(
            data.objects.iter().cloned(),
            data.arrows.clone(),
            data.identities.clone(),
            data.composition.clone(),
        )
    }

    pub fn to_data(&self) -> CategoryData {
        CategoryData {
            objects: self.objects.labels().to_vec(),
            arrows: self.arrows.clone(),
            identities: (0..self.objects.len())
                .map(|x| (self.objects.label(x).to_string(), self.arrows[self.identities[x]].name.clone()))
                .collect(),
            composition: self
                .comp
                .iter()
                .map(|(&(f, g), &h)| [f, g, h].map(|k| self.arrows[k].name.clone()))
                .collect(),
        }
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.arrows.len();
        for f in 0..n {
            for g in 0..n {
                if self.dst[f] == self.src[g] && !self.comp.contains_key(&(f, g)) {
                    return Err(Error::InvalidCategory(format!(
                        "`{}` ; `{}` is missing",
                        self.arrows[f].name, self.arrows[g].name
                    )));
                }
            }
            if self.comp[&(self.identities[self.src[f]], f)] != f || self.comp[&(f, self.identities[self.dst[f]])] != f {
                return Err(Error::InvalidCategory(format!("identity law fails at `{}`", self.arrows[f].name)));
            }
        }
        for (&(f, g), &fg) in &self.comp {
            for h in 0..n {
                if self.dst[g] == self.src[h] {
                    let gh = self.comp[&(g, h)];
                    if self.comp[&(fg, h)] != self.comp[&(f, gh)] {
                        return Err(Error::InvalidCategory(format!(
                            "associativity fails at `{}`, `{}`, `{}`",
                            self.arrows[f].name, self.arrows[g].name, self.arrows[h].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &IndexSet {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.binary_search_by(|a| a.name.as_str().cmp(name)).ok()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn dst(&self, f: usize) -> usize {
        self.dst[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    /// `f ; g`, if composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp.get(&(f, g)).copied()
    }

    /// Arrows `x -> y`, in name order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.src[f] == x && self.dst[f] == y).collect()
    }
}

/// A functor, as tables on object and arrow indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Functor {
            objects: (0..c.objects.len()).collect(),
            arrows: (0..c.arrows.len()).collect(),
        }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            objects: self.objects.iter().map(|&x| other.objects[x]).collect(),
            arrows: self.arrows.iter().map(|&f| other.arrows[f]).collect(),
        }
    }

    pub fn is_functor(&self, c: &FiniteCategory, d: &FiniteCategory) -> bool {
        self.objects.len() == c.objects.len()
            && self.arrows.len() == c.arrows.len()
            && (0..c.arrows.len()).all(|f| {
                let g = self.arrows[f];
                d.src[g] == self.objects[c.src[f]] && d.dst[g] == self.objects[c.dst[f]]
            })
            && (0..c.objects.len()).all(|x| self.arrows[c.identities[x]] == d.identities[self.objects[x]])
            && c.comp.iter().all(|(&(f, g), &h)| d.compose(self.arrows[f], self.arrows[g]) == Some(self.arrows[h]))
    }
}

/// Every functor `c -> d`, in lexicographic order of (object table, arrow
/// table). With `bijective`, only isomorphisms.
pub fn enumerate_functors(c: &FiniteCategory, d: &FiniteCategory, bijective: bool, cap: usize) -> Result<Vec<Functor>> {
    let mut out = Vec::new();
    let mut objects = Vec::with_capacity(c.objects.len());
    if bijective && (c.objects.len() != d.objects.len() || c.arrows.len() != d.arrows.len()) {
        return Ok(out);
    }
    object_maps(c, d, bijective, &mut objects, &mut out, cap)?;
    Ok(out)
}

fn object_maps(
    c: &FiniteCategory,
    d: &FiniteCategory,
    bijective: bool,
    objects: &mut Vec<usize>,
    out: &mut Vec<Functor>,
    cap: usize,
) -> Result<()> {
    if objects.len() == c.objects.len() {
        let mut arrows = vec![usize::MAX; c.arrows.len()];
        return arrow_maps(c, d, bijective, objects, &mut arrows, 0, out, cap);
    }
    for y in 0..d.objects.len() {
        if bijective && objects.contains(&y) {
            continue;
        }
        objects.push(y);
        object_maps(c, d, bijective, objects, out, cap)?;
        objects.pop();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arrow_maps(
    c: &FiniteCategory,
    d: &FiniteCategory,
    bijective: bool,
    objects: &[usize],
    arrows: &mut Vec<usize>,
    next: usize,
    out: &mut Vec<Functor>,
    cap: usize,
) -> Result<()> {
    if next == c.arrows.len() {
        if out.len() >= cap {
            return Err(Error::ResourceCap {
                what: "functors".into(),
                count: out.len() as u128 + 1,
                cap,
            });
        }
        out.push(Functor {
            objects: objects.to_vec(),
            arrows: arrows.clone(),
        });
        return Ok(());
    }
    let (x, y) = (objects[c.src[next]], objects[c.dst[next]]);
    let forced = c.identities.iter().position(|&i| i == next).map(|o| d.identities[objects[o]]);
    for g in d.hom(x, y) {
        if forced.is_some_and(|h| h != g) || (bijective && arrows[..next].contains(&g)) {
            continue;
        }
        arrows[next] = g;
        let consistent = c.comp.iter().all(|(&(f1, f2), &h)| {
            let known = |k: usize| k <= next;
            if !(known(f1) && known(f2) && known(h)) {
                return true;
            }
            d.compose(arrows[f1], arrows[f2]) == Some(arrows[h])
        });
        if consistent {
            arrow_maps(c, d, bijective, objects, arrows, next + 1, out, cap)?;
        }
    }
    arrows[next] = usize::MAX;
    Ok(())
}

/// The first isomorphism `c -> d` in enumeration order, if any.
pub fn find_isomorphism(c: &FiniteCategory, d: &FiniteCategory, cap: usize) -> Result<Option<Functor>> {
    Ok(enumerate_functors(c, d, true, cap)?.into_iter().next())
}

/// Builds categories from compact tables; arrows are written
/// `name: src -> dst` and identities are named `1x` for object `x`.
pub mod fixtures {
    use super::*;

    /// `arrows` lists non-identity arrows; `comp` lists non-identity
    /// composites `(f, g, f;g)`.
    pub fn build(objects: &[&str], arrows: &[(&str, &str, &str)], comp: &[(&str, &str, &str)]) -> FiniteCategory {
        let mut all: Vec<Arrow> = objects
            .iter()
            .map(|o| Arrow {
                name: format!("1{o}"),
                src: o.to_string(),
                dst: o.to_string(),
            })
            .collect();
        all.extend(arrows.iter().map(|(n, s, d)| Arrow {
            name: n.to_string(),
            src: s.to_string(),
            dst: d.to_string(),
        }));
        let identities = objects.iter().map(|o| (o.to_string(), format!("1{o}"))).collect();
        let mut table: Vec<[String; 3]> = comp.iter().map(|(f, g, h)| [f, g, h].map(|s| s.to_string())).collect();
        for a in &all {
            table.push([format!("1{}", a.src), a.name.clone(), a.name.clone()]);
            table.push([a.name.clone(), format!("1{}", a.dst), a.name.clone()]);
        }
        FiniteCategory::new(objects.iter().copied(), all, identities, table).expect("fixture is a category")
    }

    pub fn empty() -> FiniteCategory {
        build(&[], &[], &[])
    }

    pub fn terminal() -> FiniteCategory {
        build(&["x"], &[], &[])
    }

    pub fn discrete(n: usize) -> FiniteCategory {
        let names: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        build(&refs, &[], &[])
    }

    /// `x -> y`.
    pub fn arrow() -> FiniteCategory {
        build(&["x", "y"], &[("a", "x", "y")], &[])
    }

    /// The cyclic group of order `n` on one object, generated by `s`.
    pub fn cyclic(n: usize) -> FiniteCategory {
        let name = |k: usize| if k == 0 { "1x".to_string() } else { format!("s{k}") };
        let names: Vec<String> = (1..n).map(name).collect();
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|s| (s.as_str(), "x", "x")).collect();
        let mut comp = Vec::new();
        for a in 1..n {
            for b in 1..n {
                comp.push((name(a), name(b), name((a + b) % n)));
            }
        }
        let comp_refs: Vec<(&str, &str, &str)> = comp.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        build(&["x"], &arrows, &comp_refs)
    }

    /// The monoid `{1, e}` with `e;e = e`.
    pub fn idempotent() -> FiniteCategory {
        build(&["x"], &[("e", "x", "x")], &[("e", "e", "e")])
    }

    /// `x -> y -> z` with the composite.
    pub fn chain3() -> FiniteCategory {
        build(&["x", "y", "z"], &[("a", "x", "y"), ("b", "y", "z"), ("ab", "x", "z")], &[("a", "b", "ab")])
    }

    /// Two parallel arrows `x => y`.
    pub fn parallel_pair() -> FiniteCategory {
        build(&["x", "y"], &[("p", "x", "y"), ("q", "x", "y")], &[])
    }

    /// `l <- c -> r`.
    pub fn span_shape() -> FiniteCategory {
        build(&["c", "l", "r"], &[("f", "c", "l"), ("g", "c", "r")], &[])
    }

    /// Two objects and a pair of mutually inverse arrows.
    pub fn isomorphism() -> FiniteCategory {
        build(&["x", "y"], &[("f", "x", "y"), ("h", "y", "x")], &[("f", "h", "1x"), ("h", "f", "1y")])
    }

    /// The cyclic group of order two beside a second, trivial object.
    pub fn cyclic2_and_point() -> FiniteCategory {
        build(&["x", "y"], &[("s1", "x", "x")], &[("s1", "s1", "1x")])
    }

    /// Every fixture, with a name.
    pub fn all() -> Vec<(&'static str, FiniteCategory)> {
        vec![
            ("empty", empty()),
            ("terminal", terminal()),
            ("discrete2", discrete(2)),
            ("discrete3", discrete(3)),
            ("arrow", arrow()),
            ("cyclic2", cyclic(2)),
            ("cyclic3", cyclic(3)),
            ("idempotent", idempotent()),
            ("chain3", chain3()),
            ("parallel-pair", parallel_pair()),
            ("span-shape", span_shape()),
            ("isomorphism", isomorphism()),
            ("cyclic2-and-point", cyclic2_and_point()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::kernel::DEFAULT_ENUMERATION_CAP as CAP;

    #[test]
    fn fixtures_are_small_categories() {
        for (name, c) in all() {
            assert!(c.objects().len() <= 3 && c.arrow_count() <= 6, "{name}");
            let round = FiniteCategory::from_data(&c.to_data()).unwrap();
            assert_eq!(round, c);
        }
        assert_eq!(arrow().arrow_count(), 3);
        assert_eq!(chain3().arrow_count(), 6);
    }

    #[test]
    fn rejects_broken_tables() {
        let mut data = cyclic(2).to_data();
        data.composition.retain(|[f, g, _]| !(f == "s1" && g == "s1"));
        assert!(matches!(FiniteCategory::from_data(&data), Err(Error::InvalidCategory(_))));

        let mut data = idempotent().to_data();
        for t in &mut data.composition {
            if t[0] == "e" && t[1] == "e" {
                t[2] = "1x".into();
            }
        }
        // {1, e} with e;e = 1 is the group of order two: still a category.
        assert!(FiniteCategory::from_data(&data).is_ok());

        let mut data = chain3().to_data();
        data.arrows[0].src = "w".into();
        assert!(matches!(FiniteCategory::from_data(&data), Err(Error::UnknownLabel { .. })));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // a;a = b, a;b = a, b;a = b, b;b = a: (a;a);b = a but a;(a;b) = b.
        let names = ["1x", "a", "b"];
        let arrows: Vec<Arrow> = names
            .iter()
            .map(|n| Arrow { name: n.to_string(), src: "x".into(), dst: "x".into() })
            .collect();
        let ids = [("x".to_string(), "1x".to_string())].into_iter().collect();
        let mut comp = Vec::new();
        for f in names {
            for g in names {
                let h = match (f, g) {
                    ("1x", _) => g,
                    (_, "1x") => f,
                    ("a", "a") => "b",
                    ("a", "b") => "a",
                    ("b", "a") => "b",
                    _ => "a",
                };
                comp.push([f, g, h].map(String::from));
            }
        }
        assert!(matches!(FiniteCategory::new(["x"], arrows, ids, comp), Err(Error::InvalidCategory(_))));
    }

    #[test]
    fn functor_counts() {
        // Oracle: functors from the arrow category pick an arrow of the target.
        for (_, d) in all() {
            let n = enumerate_functors(&arrow(), &d, false, CAP).unwrap().len();
            assert_eq!(n, d.arrow_count());
        }
        assert_eq!(enumerate_functors(&empty(), &cyclic(3), false, CAP).unwrap().len(), 1);
        // Group homomorphisms Z/2 -> Z/2 and Z/3 -> Z/3.
        assert_eq!(enumerate_functors(&cyclic(2), &cyclic(2), false, CAP).unwrap().len(), 2);
        assert_eq!(enumerate_functors(&cyclic(3), &cyclic(3), false, CAP).unwrap().len(), 3);
        assert_eq!(enumerate_functors(&cyclic(2), &cyclic(3), false, CAP).unwrap().len(), 1);
        for f in enumerate_functors(&chain3(), &chain3(), false, CAP).unwrap() {
            assert!(f.is_functor(&chain3(), &chain3()));
        }
    }

    #[test]
    fn isomorphism_search() {
        assert!(find_isomorphism(&cyclic(2), &cyclic2_and_point(), CAP).unwrap().is_none());
        assert!(find_isomorphism(&parallel_pair(), &isomorphism(), CAP).unwrap().is_none());
        let relabeled = build(&["p", "q"], &[("t", "q", "p")], &[]);
        let iso = find_isomorphism(&arrow(), &relabeled, CAP).unwrap().unwrap();
        assert!(iso.is_functor(&arrow(), &relabeled));
        assert_eq!(enumerate_functors(&isomorphism(), &isomorphism(), true, CAP).unwrap().len(), 2);
    }
}
