//! JSON instance documents: parsing with label resolution, and canonical
//! serialization.

use std::collections::BTreeMap;

use dblcat::copower::copower;
use dblcat::matrix::{compose_matrices, unit_matrix, Matrices, Matrix, MatrixCell};
use dblcat::monad::{DoubleMonad, Host, Monad};
use dblcat::span::{compose_spans, identity_span, Span, SpanCell, Spans};
use dblcat::{
    BaseCategory, CategoryData, FinMap, FinPointedSet, FinSet, FinSetObj, FiniteCategory, IndexMap, IndexSet, PointedMap,
    PointedObj,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    /// `line` and `column` point at the offending label when it can be
    /// located in the text.
    #[error("{}{path}: {message}", position(*.line, *.column))]
    Invalid {
        path: String,
        message: String,
        line: Option<usize>,
        column: Option<usize>,
    },
}

fn position(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!("{l}:{c}: "),
        _ => String::new(),
    }
}

impl ParseError {
    fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError::Invalid {
            path: path.into(),
            message: message.into(),
            line: None,
            column: None,
        }
    }

    fn library(path: impl Into<String>, e: dblcat::Error) -> Self {
        ParseError::invalid(path, e.to_string())
    }

    /// Points a semantic error at the occurrence of its label in `text`:
    /// the first for a dangling label, the second for a duplicate.
    fn locate(self, text: &str) -> Self {
        let ParseError::Invalid { path, message, .. } = self else {
            return self;
        };
        let quoted = |label: &str| format!("\"{label}\"");
        let needle = message
            .strip_prefix("label `")
            .and_then(|m| m.split('`').next())
            .map(|l| (quoted(l), 0))
            .or_else(|| {
                message
                    .strip_prefix("duplicate label `")
                    .and_then(|m| m.split('`').next())
                    .map(|l| (quoted(l), 1))
            });
        let offset = needle.and_then(|(n, skip)| text.match_indices(&n).nth(skip).map(|(k, _)| k));
        let (line, column) = match offset {
            Some(k) => {
                let before = &text[..k];
                let line = before.matches('\n').count() + 1;
                let column = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
                (Some(line), Some(column))
            }
            None => (None, None),
        };
        ParseError::Invalid {
            path,
            message,
            line,
            column,
        }
    }
}

type Parsed<T> = Result<T, ParseError>;

/// A value that exists over either shipped base category.
#[derive(Debug, Clone, PartialEq)]
pub enum Based<A, B> {
    FinSet(A),
    Pointed(B),
}

impl<A, B> Based<A, B> {
    pub fn base_name(&self) -> &'static str {
        match self {
            Based::FinSet(_) => FinSet::NAME,
            Based::Pointed(_) => FinPointedSet::NAME,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseName {
    FinSet,
    Pointed,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Category { base: BaseName, bound: usize },
    FiniteCategory(FiniteCategory),
    Matrix(Based<Matrix<FinSet>, Matrix<FinPointedSet>>),
    Span(Based<Span<FinSet>, Span<FinPointedSet>>),
    MatrixCell(Based<MatrixCell<FinSet>, MatrixCell<FinPointedSet>>),
    SpanCell(Based<SpanCell<FinSet>, SpanCell<FinPointedSet>>),
    Monad(Based<DoubleMonad<FinSet>, DoubleMonad<FinPointedSet>>),
}

/// Bound used by `validate` when a category document gives none.
pub const DEFAULT_VALIDATION_BOUND: usize = 3;

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category { base: BaseName::FinSet, .. } => "finset-category",
            Document::Category { base: BaseName::Pointed, .. } => "pointed-category",
            Document::FiniteCategory(_) => "finite-category",
            Document::Matrix(_) => "matrix",
            Document::Span(_) => "span",
            Document::MatrixCell(_) => "matrix-cell",
            Document::SpanCell(_) => "span-cell",
            Document::Monad(_) => "monad",
        }
    }

    pub fn to_value(&self) -> Value {
        let mut body = match self {
            Document::Category { bound, .. } => json!({ "bound": bound }),
            Document::FiniteCategory(c) => serde_json::to_value(c.to_data()).expect("category data serializes"),
            Document::Matrix(Based::FinSet(m)) => with_base(matrix_value(&FinSet, m), FinSet::NAME),
            Document::Matrix(Based::Pointed(m)) => with_base(matrix_value(&FinPointedSet, m), FinPointedSet::NAME),
            Document::Span(Based::FinSet(s)) => with_base(span_value(&FinSet, s), FinSet::NAME),
            Document::Span(Based::Pointed(s)) => with_base(span_value(&FinPointedSet, s), FinPointedSet::NAME),
            Document::MatrixCell(Based::FinSet(c)) => with_base(matrix_cell_value(&FinSet, c), FinSet::NAME),
            Document::MatrixCell(Based::Pointed(c)) => with_base(matrix_cell_value(&FinPointedSet, c), FinPointedSet::NAME),
            Document::SpanCell(Based::FinSet(c)) => with_base(span_cell_value(&FinSet, c), FinSet::NAME),
            Document::SpanCell(Based::Pointed(c)) => with_base(span_cell_value(&FinPointedSet, c), FinPointedSet::NAME),
            Document::Monad(Based::FinSet(m)) => with_base(monad_value(&FinSet, m), FinSet::NAME),
            Document::Monad(Based::Pointed(m)) => with_base(monad_value(&FinPointedSet, m), FinPointedSet::NAME),
        };
        body.as_object_mut()
            .expect("documents are objects")
            .insert("kind".into(), Value::String(self.kind().into()));
        body
    }
}

fn with_base(mut v: Value, base: &str) -> Value {
    v.as_object_mut()
        .expect("documents are objects")
        .insert("base".into(), Value::String(base.into()));
    v
}

/// Document encoding of objects and morphisms of a base category.
pub trait DocBase: BaseCategory + Sized {
    const NAME: &'static str;

    fn parse_object(&self, v: &Value, path: &str) -> Parsed<Self::Obj>;
    fn object_value(&self, x: &Self::Obj) -> Value;
    fn elements<'a>(&self, x: &'a Self::Obj) -> &'a [String];
    fn from_table(&self, src: &Self::Obj, dst: &Self::Obj, table: Vec<u32>) -> dblcat::Result<Self::Mor>;
    fn table<'a>(&self, f: &'a Self::Mor) -> &'a [u32];
}

impl DocBase for FinSet {
    const NAME: &'static str = "finset";

    fn parse_object(&self, v: &Value, path: &str) -> Parsed<FinSetObj> {
        FinSetObj::new(labels(v, path)?).map_err(|e| ParseError::library(path, e))
    }

    fn object_value(&self, x: &FinSetObj) -> Value {
        json!(x.labels())
    }

    fn elements<'a>(&self, x: &'a FinSetObj) -> &'a [String] {
        x.labels()
    }

    fn from_table(&self, src: &FinSetObj, dst: &FinSetObj, table: Vec<u32>) -> dblcat::Result<FinMap> {
        FinMap::from_table(src, dst, table)
    }

    fn table<'a>(&self, f: &'a FinMap) -> &'a [u32] {
        f.table()
    }
}

impl DocBase for FinPointedSet {
    const NAME: &'static str = "pointed";

    fn parse_object(&self, v: &Value, path: &str) -> Parsed<PointedObj> {
        let obj = object(v, path)?;
        let elements = field(obj, "elements", path)?;
        let set = FinSetObj::new(labels(elements, &format!("{path}.elements"))?)
            .map_err(|e| ParseError::library(format!("{path}.elements"), e))?;
        let base_path = format!("{path}.basepoint");
        let base = string(field(obj, "basepoint", path)?, &base_path)?;
        PointedObj::new(set, base).map_err(|e| ParseError::library(base_path, e))
    }

    fn object_value(&self, x: &PointedObj) -> Value {
        json!({ "elements": x.set().labels(), "basepoint": x.basepoint() })
    }

    fn elements<'a>(&self, x: &'a PointedObj) -> &'a [String] {
        x.set().labels()
    }

    fn from_table(&self, src: &PointedObj, dst: &PointedObj, table: Vec<u32>) -> dblcat::Result<PointedMap> {
        PointedMap::new(src, dst, FinMap::from_table(src.set(), dst.set(), table)?)
    }

    fn table<'a>(&self, f: &'a PointedMap) -> &'a [u32] {
        f.underlying().table()
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Parsed<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| ParseError::invalid(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Parsed<&'a Value> {
    obj.get(key).ok_or_else(|| ParseError::invalid(path, format!("missing field `{key}`")))
}

fn string<'a>(v: &'a Value, path: &str) -> Parsed<&'a str> {
    v.as_str().ok_or_else(|| ParseError::invalid(path, "expected a string"))
}

fn labels(v: &Value, path: &str) -> Parsed<Vec<String>> {
    let items = v.as_array().ok_or_else(|| ParseError::invalid(path, "expected an array of labels"))?;
    items
        .iter()
        .enumerate()
        .map(|(k, x)| string(x, &format!("{path}[{k}]")).map(str::to_string))
        .collect()
}

fn index_set(v: &Value, path: &str) -> Parsed<IndexSet> {
    IndexSet::new(labels(v, path)?).map_err(|e| ParseError::library(path, e))
}

fn string_map(v: &Value, path: &str) -> Parsed<BTreeMap<String, String>> {
    object(v, path)?
        .iter()
        .map(|(k, x)| Ok((k.clone(), string(x, &format!("{path}.{k}"))?.to_string())))
        .collect()
}

fn index_map(v: &Value, src: &IndexSet, dst: &IndexSet, path: &str) -> Parsed<IndexMap> {
    let pairs = string_map(v, path)?;
    IndexMap::new(src, dst, pairs).map_err(|e| ParseError::library(path, e))
}

fn index_map_value(u: &IndexMap) -> Value {
    json!(u.pairs().collect::<BTreeMap<_, _>>())
}

/// A morphism given as a total map of element labels.
fn morphism<V: DocBase>(v: &V, value: &Value, src: &V::Obj, dst: &V::Obj, path: &str) -> Parsed<V::Mor> {
    let pairs = string_map(value, path)?;
    let (from, to) = (v.elements(src), v.elements(dst));
    for k in pairs.keys() {
        if !from.contains(k) {
            return Err(ParseError::invalid(path, format!("label `{k}` is not a member of the domain")));
        }
    }
    let table = from
        .iter()
        .map(|x| {
            let y = pairs
                .get(x)
                .ok_or_else(|| ParseError::invalid(path, format!("no image for `{x}`")))?;
            to.iter()
                .position(|t| t == y)
                .map(|p| p as u32)
                .ok_or_else(|| ParseError::invalid(path, format!("label `{y}` is not a member of the codomain")))
        })
        .collect::<Parsed<Vec<_>>>()?;
    v.from_table(src, dst, table).map_err(|e| ParseError::library(path, e))
}

fn morphism_value<V: DocBase>(v: &V, f: &V::Mor) -> Value {
    let (src, dst) = (v.dom(f), v.cod(f));
    let (from, to) = (v.elements(&src), v.elements(&dst));
    let map: BTreeMap<&str, &str> = from
        .iter()
        .zip(v.table(f))
        .map(|(x, &t)| (x.as_str(), to[t as usize].as_str()))
        .collect();
    json!(map)
}

/// Splits an entry key `row,col`, where labels may themselves contain
/// commas.
fn entry_key(key: &str, rows: &IndexSet, cols: &IndexSet, path: &str) -> Parsed<(usize, usize)> {
    let mut found = None;
    for (i, r) in rows.labels().iter().enumerate() {
        if let Some(c) = key.strip_prefix(r.as_str()).and_then(|rest| rest.strip_prefix(',')) {
            if let Some(j) = cols.position(c) {
                if found.is_some() {
                    return Err(ParseError::invalid(path, format!("entry key `{key}` is ambiguous")));
                }
                found = Some((i, j));
            }
        }
    }
    found.ok_or_else(|| ParseError::invalid(path, format!("label `{key}` is not a member of the entry keys")))
}

fn entry_name(rows: &IndexSet, cols: &IndexSet, i: usize, j: usize) -> String {
    format!("{},{}", rows.label(i), cols.label(j))
}

fn parse_matrix<V: DocBase>(v: &V, value: &Value, path: &str) -> Parsed<Matrix<V>> {
    let obj = object(value, path)?;
    let rows = index_set(field(obj, "rows", path)?, &format!("{path}.rows"))?;
    let cols = index_set(field(obj, "cols", path)?, &format!("{path}.cols"))?;
    let mut entries = vec![v.coproduct(&[]).apex; rows.len() * cols.len()];
    let epath = format!("{path}.entries");
    if let Some(given) = obj.get("entries") {
        for (key, x) in object(given, &epath)? {
            let (i, j) = entry_key(key, &rows, &cols, &epath)?;
            entries[i * cols.len() + j] = v.parse_object(x, &format!("{epath}.{key}"))?;
        }
    }
    Matrix::new(rows, cols, entries).map_err(|e| ParseError::library(path, e))
}

fn matrix_value<V: DocBase>(v: &V, m: &Matrix<V>) -> Value {
    let mut entries = Map::new();
    for i in 0..m.rows.len() {
        for j in 0..m.cols.len() {
            entries.insert(entry_name(&m.rows, &m.cols, i, j), v.object_value(m.entry(i, j)));
        }
    }
    json!({ "rows": m.rows.labels(), "cols": m.cols.labels(), "entries": entries })
}

/// A leg into `I•1`, with images given as index labels or as elements of
/// the copower.
fn parse_leg<V: DocBase>(v: &V, value: &Value, apex: &V::Obj, index: &IndexSet, path: &str) -> Parsed<V::Mor> {
    let cp = copower(v, index);
    let carrier = cp.carrier();
    let pairs = string_map(value, path)?;
    let names = v.elements(carrier);
    let resolved: BTreeMap<String, Value> = pairs
        .into_iter()
        .map(|(k, y)| {
            let element = match index.position(&y) {
                Some(i) => names[v.table(&cp.coprojections()[i])[0] as usize].clone(),
                None if names.contains(&y) => y,
                None => {
                    return Err(ParseError::invalid(
                        path,
                        format!("label `{y}` is not a member of the index or its copower"),
                    ))
                }
            };
            Ok((k, Value::String(element)))
        })
        .collect::<Parsed<_>>()?;
    morphism(v, &json!(resolved), apex, carrier, path)
}

/// Leg images are written as index labels when a single coprojection hits
/// them, and as copower elements otherwise.
fn leg_value<V: DocBase>(v: &V, leg: &V::Mor, index: &IndexSet) -> Value {
    let cp = copower(v, index);
    let names = v.elements(cp.carrier());
    let hits = |e: u32| -> Vec<usize> {
        (0..index.len())
            .filter(|&i| v.table(&cp.coprojections()[i])[0] == e)
            .collect()
    };
    let apex = v.dom(leg);
    let map: BTreeMap<&str, String> = v
        .elements(&apex)
        .iter()
        .zip(v.table(leg))
        .map(|(x, &e)| {
            let name = match hits(e).as_slice() {
                [i] => index.label(*i).to_string(),
                _ => names[e as usize].clone(),
            };
            (x.as_str(), name)
        })
        .collect();
    json!(map)
}

fn parse_span<V: DocBase>(v: &V, value: &Value, path: &str) -> Parsed<Span<V>> {
    let obj = object(value, path)?;
    let left = index_set(field(obj, "left", path)?, &format!("{path}.left"))?;
    let right = index_set(field(obj, "right", path)?, &format!("{path}.right"))?;
    let apex = v.parse_object(field(obj, "apex", path)?, &format!("{path}.apex"))?;
    let l = parse_leg(v, field(obj, "left_leg", path)?, &apex, &left, &format!("{path}.left_leg"))?;
    let r = parse_leg(v, field(obj, "right_leg", path)?, &apex, &right, &format!("{path}.right_leg"))?;
    Span::new(v, left, right, l, r).map_err(|e| ParseError::library(path, e))
}

fn span_value<V: DocBase>(v: &V, s: &Span<V>) -> Value {
    json!({
        "left": s.left_index.labels(),
        "right": s.right_index.labels(),
        "apex": v.object_value(&s.apex),
        "left_leg": leg_value(v, &s.left_leg, &s.left_index),
        "right_leg": leg_value(v, &s.right_leg, &s.right_index),
    })
}

fn components<V: DocBase>(v: &V, value: &Value, top: &Matrix<V>, bottom: &Matrix<V>, left: &IndexMap, right: &IndexMap, path: &str) -> Parsed<Vec<V::Mor>> {
    let given = object(value, path)?;
    let mut out = Vec::with_capacity(top.entries.len());
    for i in 0..top.rows.len() {
        for j in 0..top.cols.len() {
            let key = entry_name(&top.rows, &top.cols, i, j);
            let (src, dst) = (top.entry(i, j), bottom.entry(left.at(i), right.at(j)));
            out.push(match given.get(&key) {
                Some(x) => morphism(v, x, src, dst, &format!("{path}.{key}"))?,
                None if v.elements(src).is_empty() => v.from_initial(dst).map_err(|e| ParseError::library(path, e))?,
                None => return Err(ParseError::invalid(path, format!("missing component `{key}`"))),
            });
        }
    }
    for key in given.keys() {
        entry_key(key, &top.rows, &top.cols, path)?;
    }
    Ok(out)
}

fn components_value<V: DocBase>(v: &V, c: &MatrixCell<V>) -> Value {
    let mut out = Map::new();
    for i in 0..c.top.rows.len() {
        for j in 0..c.top.cols.len() {
            out.insert(entry_name(&c.top.rows, &c.top.cols, i, j), morphism_value(v, c.component(i, j)));
        }
    }
    Value::Object(out)
}

fn parse_matrix_cell<V: DocBase>(v: &V, value: &Value, path: &str) -> Parsed<MatrixCell<V>> {
    let obj = object(value, path)?;
    let top = parse_matrix(v, field(obj, "top", path)?, &format!("{path}.top"))?;
    let bottom = parse_matrix(v, field(obj, "bottom", path)?, &format!("{path}.bottom"))?;
    let left = index_map(field(obj, "left", path)?, &top.rows, &bottom.rows, &format!("{path}.left"))?;
    let right = index_map(field(obj, "right", path)?, &top.cols, &bottom.cols, &format!("{path}.right"))?;
    let comps = components(v, field(obj, "components", path)?, &top, &bottom, &left, &right, &format!("{path}.components"))?;
    MatrixCell::new(v, top, bottom, left, right, comps).map_err(|e| ParseError::library(path, e))
}

fn matrix_cell_value<V: DocBase>(v: &V, c: &MatrixCell<V>) -> Value {
    json!({
        "top": matrix_value(v, &c.top),
        "bottom": matrix_value(v, &c.bottom),
        "left": index_map_value(&c.left),
        "right": index_map_value(&c.right),
        "components": components_value(v, c),
    })
}

fn parse_span_cell<V: DocBase>(v: &V, value: &Value, path: &str) -> Parsed<SpanCell<V>> {
    let obj = object(value, path)?;
    let top = parse_span(v, field(obj, "top", path)?, &format!("{path}.top"))?;
    let bottom = parse_span(v, field(obj, "bottom", path)?, &format!("{path}.bottom"))?;
    let left = index_map(field(obj, "left", path)?, &top.left_index, &bottom.left_index, &format!("{path}.left"))?;
    let right = index_map(field(obj, "right", path)?, &top.right_index, &bottom.right_index, &format!("{path}.right"))?;
    let body = morphism(v, field(obj, "body", path)?, &top.apex, &bottom.apex, &format!("{path}.body"))?;
    SpanCell::new(v, top, bottom, left, right, body).map_err(|e| ParseError::library(path, e))
}

fn span_cell_value<V: DocBase>(v: &V, c: &SpanCell<V>) -> Value {
    json!({
        "top": span_value(v, &c.top),
        "bottom": span_value(v, &c.bottom),
        "left": index_map_value(&c.left),
        "right": index_map_value(&c.right),
        "body": morphism_value(v, &c.body),
    })
}

/// Monad documents give the carrier and the data of `mu` and `eta`; their
/// boundaries are determined by the carrier.
fn parse_monad<V: DocBase>(v: &V, value: &Value, path: &str) -> Parsed<DoubleMonad<V>> {
    let obj = object(value, path)?;
    let host: Host = serde_json::from_value(field(obj, "host", path)?.clone())
        .map_err(|e| ParseError::invalid(format!("{path}.host"), e.to_string()))?;
    let carrier = field(obj, "carrier", path)?;
    let cpath = format!("{path}.carrier");
    let lib = |e| ParseError::library(path, e);
    let (mu, eta) = (field(obj, "mu", path)?, field(obj, "eta", path)?);
    Ok(match host {
        Host::Matrix => {
            let t = parse_matrix(v, carrier, &cpath)?;
            let ids = IndexMap::identity(&t.rows);
            let tt = compose_matrices(v, &t, &t).map_err(lib)?;
            let unit = unit_matrix(v, &t.rows);
            let mu_path = format!("{path}.mu.components");
            let eta_path = format!("{path}.eta.components");
            let mu_c = components(v, field(object(mu, path)?, "components", path)?, &tt, &t, &ids, &ids, &mu_path)?;
            let eta_c = components(v, field(object(eta, path)?, "components", path)?, &unit, &t, &ids, &ids, &eta_path)?;
            let mu = MatrixCell::new(v, tt, t.clone(), ids.clone(), ids.clone(), mu_c).map_err(lib)?;
            let eta = MatrixCell::new(v, unit, t.clone(), ids.clone(), ids, eta_c).map_err(lib)?;
            DoubleMonad::Matrix(Monad::<V, Matrices>::new(v, t, mu, eta).map_err(lib)?)
        }
        Host::Span => {
            let t = parse_span(v, carrier, &cpath)?;
            let ids = IndexMap::identity(&t.left_index);
            let (tt, _) = compose_spans(v, &t, &t).map_err(lib)?;
            let unit = identity_span(v, &t.left_index);
            let mu_b = morphism(v, field(object(mu, path)?, "body", path)?, &tt.apex, &t.apex, &format!("{path}.mu.body"))?;
            let eta_b = morphism(v, field(object(eta, path)?, "body", path)?, &unit.apex, &t.apex, &format!("{path}.eta.body"))?;
            let mu = SpanCell::new(v, tt, t.clone(), ids.clone(), ids.clone(), mu_b).map_err(lib)?;
            let eta = SpanCell::new(v, unit, t.clone(), ids.clone(), ids, eta_b).map_err(lib)?;
            DoubleMonad::Span(Monad::<V, Spans>::new(v, t, mu, eta).map_err(lib)?)
        }
    })
}

fn monad_value<V: DocBase>(v: &V, m: &DoubleMonad<V>) -> Value {
    match m {
        DoubleMonad::Matrix(m) => json!({
            "host": "matrix",
            "carrier": matrix_value(v, &m.carrier),
            "mu": { "components": components_value(v, &m.mu) },
            "eta": { "components": components_value(v, &m.eta) },
        }),
        DoubleMonad::Span(m) => json!({
            "host": "span",
            "carrier": span_value(v, &m.carrier),
            "mu": { "body": morphism_value(v, &m.mu.body) },
            "eta": { "body": morphism_value(v, &m.eta.body) },
        }),
    }
}

fn base_of(obj: &Map<String, Value>) -> Parsed<BaseName> {
    match obj.get("base").map(|b| string(b, "base")).transpose()? {
        None | Some("finset") => Ok(BaseName::FinSet),
        Some("pointed") => Ok(BaseName::Pointed),
        Some(other) => Err(ParseError::invalid("base", format!("unknown base `{other}`"))),
    }
}

macro_rules! based {
    ($base:expr, $variant:path, $parse:ident, $value:expr) => {
        match $base {
            BaseName::FinSet => $variant(Based::FinSet($parse(&FinSet, $value, "$")?)),
            BaseName::Pointed => $variant(Based::Pointed($parse(&FinPointedSet, $value, "$")?)),
        }
    };
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Parsed<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    parse_value(&value).map_err(|e| e.locate(text))
}

pub fn parse_value(value: &Value) -> Parsed<Document> {
    let obj = object(value, "$")?;
    let kind = string(field(obj, "kind", "$")?, "$.kind")?;
    let base = base_of(obj)?;
    Ok(match kind {
        "finset-category" | "pointed-category" => Document::Category {
            base: if kind == "finset-category" { BaseName::FinSet } else { BaseName::Pointed },
            bound: match obj.get("bound") {
                None => DEFAULT_VALIDATION_BOUND,
                Some(b) => b
                    .as_u64()
                    .ok_or_else(|| ParseError::invalid("$.bound", "expected a nonnegative integer"))?
                    as usize,
            },
        },
        "finite-category" => {
            let mut body = value.clone();
            body.as_object_mut().map(|o| o.remove("kind"));
            let data: CategoryData =
                serde_json::from_value(body).map_err(|e| ParseError::invalid("$", e.to_string()))?;
            Document::FiniteCategory(FiniteCategory::from_data(&data).map_err(|e| ParseError::library("$", e))?)
        }
        "matrix" => based!(base, Document::Matrix, parse_matrix, value),
        "span" => based!(base, Document::Span, parse_span, value),
        "matrix-cell" => based!(base, Document::MatrixCell, parse_matrix_cell, value),
        "span-cell" => based!(base, Document::SpanCell, parse_span_cell, value),
        "monad" => based!(base, Document::Monad, parse_monad, value),
        other => return Err(ParseError::invalid("$.kind", format!("unknown kind `{other}`"))),
    })
}

/// Canonical text of a document.
pub fn serialize(doc: &Document) -> String {
    serde_json::to_string_pretty(&doc.to_value()).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_matrix() {
        let doc = parse_instance(r#"{"kind":"matrix","rows":["i"],"cols":["j"],"entries":{"i,j":["a","b"]}}"#).unwrap();
        let Document::Matrix(Based::FinSet(m)) = doc else { panic!("expected a matrix") };
        assert_eq!(m.entry(0, 0).len(), 2);
    }

    #[test]
    fn dangling_leg_image_is_located() {
        let text = "{\"kind\":\"span\",\"left\":[\"i\"],\"right\":[\"j\"],\"apex\":[\"a\"],\n \"left_leg\":{\"a\":\"k\"},\"right_leg\":{\"a\":\"j\"}}";
        let err = parse_instance(text).unwrap_err();
        let ParseError::Invalid { line, column, message, .. } = err else { panic!("expected a semantic error") };
        assert!(message.contains("`k`"), "{message}");
        assert_eq!((line, column), (Some(2), Some(18)));
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let err = parse_instance(r#"{"kind":"matrix","rows":["i","i"],"cols":[],"entries":{}}"#).unwrap_err();
        assert!(err.to_string().contains("duplicate label"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_instance("{\n  \"kind\": \"matrix\",\n  oops\n}").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }), "{err}");
    }

    #[test]
    fn entry_keys_with_commas_resolve() {
        let rows = IndexSet::new(["(a,b)", "a"]).unwrap();
        let cols = IndexSet::new(["b", "b,c"]).unwrap();
        assert_eq!(entry_key("(a,b),b,c", &rows, &cols, "$").unwrap(), (0, 1));
        assert_eq!(entry_key("a,b", &rows, &cols, "$").unwrap(), (1, 0));
    }
}
