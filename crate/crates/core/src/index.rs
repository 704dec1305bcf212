//! Index sets (0-cells) and maps between them (vertical 1-cells).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite set of distinct labels, kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<String>);

impl IndexSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = labels.into_iter().map(Into::into).collect();
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
        Ok(IndexSet(v))
    }

    /// `{i0, i1, ...}` with `n` labels.
    pub fn standard(n: usize) -> Self {
        IndexSet::new((0..n).map(|k| format!("i{k}"))).expect("distinct")
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
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

    pub fn label(&self, k: usize) -> &str {
        &self.0[k]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.0.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.position(label).ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
            context: format!("index set {self:?}"),
        })
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

/// A total function between index sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexMap {
    src: IndexSet,
    dst: IndexSet,
    table: Vec<usize>,
}

impl IndexMap {
    pub fn new<I, A, B>(src: &IndexSet, dst: &IndexSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut table = vec![None; src.len()];
        for (a, b) in pairs {
            let i = src.require(a.as_ref())?;
            let j = dst.require(b.as_ref())?;
            if table[i].replace(j).is_some() {
                return Err(Error::DuplicateLabel(a.as_ref().to_string()));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::boundary(format!("index map undefined at `{}`", src.label(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IndexMap {
            src: src.clone(),
            dst: dst.clone(),
            table,
        })
    }

    pub fn from_table(src: &IndexSet, dst: &IndexSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != src.len() || table.iter().any(|&t| t >= dst.len()) {
            return Err(Error::boundary("index table does not fit the given sets"));
        }
        Ok(IndexMap {
            src: src.clone(),
            dst: dst.clone(),
            table,
        })
    }

    pub fn identity(x: &IndexSet) -> Self {
        IndexMap {
            src: x.clone(),
            dst: x.clone(),
            table: (0..x.len()).collect(),
        }
    }

    /// Every map `src -> dst`, lexicographically by table.
    pub fn enumerate(src: &IndexSet, dst: &IndexSet) -> Vec<IndexMap> {
        let mut out = Vec::new();
        if src.is_empty() {
            out.push(IndexMap::from_table(src, dst, Vec::new()).expect("empty map"));
            return out;
        }
        if dst.is_empty() {
            return out;
        }
        let mut cursor = vec![0usize; src.len()];
        loop {
            out.push(IndexMap {
                src: src.clone(),
                dst: dst.clone(),
                table: cursor.clone(),
            });
            let mut k = src.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                cursor[k] += 1;
                if cursor[k] < dst.len() {
                    break;
                }
                cursor[k] = 0;
            }
        }
    }

    pub fn src(&self) -> &IndexSet {
        &self.src
    }

    pub fn dst(&self) -> &IndexSet {
        &self.dst
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn at(&self, k: usize) -> usize {
        self.table[k]
    }

    pub fn apply(&self, label: &str) -> Option<&str> {
        self.src.position(label).map(|k| self.dst.label(self.table[k]))
    }

    /// `self` then `other`.
    pub fn then(&self, other: &IndexMap) -> Result<IndexMap> {
        if self.dst != other.src {
            return Err(Error::boundary(format!(
                "index maps {self:?} and {other:?} are not composable"
            )));
        }
        Ok(IndexMap {
            src: self.src.clone(),
            dst: other.dst.clone(),
            table: self.table.iter().map(|&t| other.table[t]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.table.iter().enumerate().all(|(k, &t)| k == t)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.src
            .labels()
            .iter()
            .zip(&self.table)
            .map(|(a, &t)| (a.as_str(), self.dst.label(t)))
    }
}

impl fmt::Debug for IndexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pairs().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_maps() {
        let two = IndexSet::standard(2);
        let three = IndexSet::standard(3);
        assert_eq!(IndexMap::enumerate(&two, &three).len(), 9);
        assert_eq!(IndexMap::enumerate(&IndexSet::empty(), &IndexSet::empty()).len(), 1);
        assert!(IndexMap::enumerate(&two, &IndexSet::empty()).is_empty());
    }

    #[test]
    fn composition_and_identity() {
        let i = IndexSet::new(["x", "y"]).unwrap();
        let j = IndexSet::new(["p"]).unwrap();
        let u = IndexMap::new(&i, &j, [("x", "p"), ("y", "p")]).unwrap();
        assert_eq!(IndexMap::identity(&i).then(&u).unwrap(), u);
        assert!(u.then(&IndexMap::identity(&i)).is_err());
        assert!(IndexMap::new(&i, &j, [("x", "p")]).is_err());
        assert!(matches!(
            IndexMap::new(&i, &j, [("x", "q"), ("y", "p")]),
            Err(Error::UnknownLabel { .. })
        ));
    }
}
