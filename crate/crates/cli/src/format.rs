//! Canonical text files for structures, loops, twists and actions.
//!
//! Files are JSON laid out one sparse entry per line. Scalars are exact
//! strings (`"3"`, `"-1/2"`, `"4 mod 7"`). Map entries are
//! `[row, column, value]` with flat indices over the tensor factors,
//! left factor most significant, sorted by `(row, column)` with no zeros.

use std::fmt::{self, Write as _};
use std::path::{Component, Path, PathBuf};

use hopfq_core::{
    validate_loop, Field, HopfCoquasigroupData, HopfData, HopfQuasigroupData, LinearMap, LoopTable, Part,
    QuasimoduleAction, Scalar, TwistMap,
};
use serde::de::{Deserialize, Deserializer, MapAccess, Visitor};
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const FORMAT: &str = "hopfq/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    HopfQuasigroup,
    HopfCoquasigroup,
    Loop,
    Twist,
    Action,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::HopfQuasigroup,
        Kind::HopfCoquasigroup,
        Kind::Loop,
        Kind::Twist,
        Kind::Action,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::HopfQuasigroup => "hopf_quasigroup",
            Kind::HopfCoquasigroup => "hopf_coquasigroup",
            Kind::Loop => "loop",
            Kind::Twist => "twist",
            Kind::Action => "action",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A structure file referenced from a twist or action file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorRef {
    /// As written in the file: relative to the referencing file, `/`-separated.
    pub path: String,
    pub sha256: String,
    /// Where the factor was found on disk.
    pub resolved: PathBuf,
    pub kind: Kind,
}

impl FactorRef {
    /// A reference from a file about to be written at `from` to the
    /// structure file at `factor`, hashing its current contents.
    pub fn to_file(from: &Path, factor: &Path, kind: Kind) -> Result<FactorRef> {
        let bytes = std::fs::read(factor).map_err(|e| CliError::io(factor, e))?;
        let dir = from.parent().unwrap_or(Path::new(""));
        Ok(FactorRef {
            path: relative_path(dir, factor)?,
            sha256: sha256_hex(&bytes),
            resolved: factor.to_path_buf(),
            kind,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    HopfQuasigroup(HopfQuasigroupData),
    HopfCoquasigroup(HopfCoquasigroupData),
    Loop(LoopTable),
    Twist {
        h: FactorRef,
        a: FactorRef,
        twist: TwistMap,
    },
    Action {
        h: FactorRef,
        a: FactorRef,
        action: QuasimoduleAction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFile {
    pub name: String,
    pub body: Body,
}

impl StructureFile {
    pub fn kind(&self) -> Kind {
        match self.body {
            Body::HopfQuasigroup(_) => Kind::HopfQuasigroup,
            Body::HopfCoquasigroup(_) => Kind::HopfCoquasigroup,
            Body::Loop(_) => Kind::Loop,
            Body::Twist { .. } => Kind::Twist,
            Body::Action { .. } => Kind::Action,
        }
    }

    /// The structure maps of a Hopf (co)quasigroup file.
    pub fn hopf_data(&self) -> Option<&HopfData> {
        match &self.body {
            Body::HopfQuasigroup(x) => Some(x.data()),
            Body::HopfCoquasigroup(x) => Some(x.data()),
            _ => None,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `to` relative to the directory `from_dir`, both taken relative to the
/// current directory when not absolute.
pub fn relative_path(from_dir: &Path, to: &Path) -> Result<String> {
    let from = normalized(from_dir)?;
    let to = normalized(to)?;
    let common = from.iter().zip(&to).take_while(|(x, y)| x == y).count();
    let mut parts: Vec<String> = vec!["..".into(); from.len() - common];
    for c in &to[common..] {
        parts.push(
            c.to_str()
                .ok_or_else(|| CliError::usage(format!("path {} is not valid UTF-8", to_display(&to))))?
                .to_string(),
        );
    }
    Ok(parts.join("/"))
}

fn to_display(parts: &[std::ffi::OsString]) -> String {
    parts.iter().map(|p| p.to_string_lossy()).collect::<Vec<_>>().join("/")
}

fn normalized(p: &Path) -> Result<Vec<std::ffi::OsString>> {
    let p = if p.as_os_str().is_empty() { Path::new(".") } else { p };
    let abs = std::path::absolute(p).map_err(|e| CliError::io(p, e))?;
    let mut out: Vec<std::ffi::OsString> = vec![];
    for c in abs.components() {
        match c {
            Component::Prefix(x) => out.push(x.as_os_str().to_owned()),
            Component::RootDir => out.push("/".into()),
            Component::CurDir => {}
            Component::ParentDir => {
                if out.len() > 1 {
                    out.pop();
                }
            }
            Component::Normal(x) => out.push(x.to_owned()),
        }
    }
    Ok(out)
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Reads a file of any kind. Twist and action files also load their factor
/// files and check the recorded hashes.
pub fn parse_structure(path: &Path) -> Result<StructureFile> {
    parse_str(&read_file(path)?, path)
}

/// Parses `text` as the contents of `path`; factor references resolve
/// against the directory of `path`.
pub fn parse_str(text: &str, path: &Path) -> Result<StructureFile> {
    let src = Src { text, path };
    let top: &RawValue = src.de(text, 1, "file")?;
    let mut obj = src.object(top)?;
    let format: String = obj.field("format")?;
    if format != FORMAT {
        return Err(src.err(obj.last, format!("unsupported format {format:?}, expected {FORMAT:?}")));
    }
    let kind_text: String = obj.field("kind")?;
    let kind = Kind::ALL
        .into_iter()
        .find(|k| k.as_str() == kind_text)
        .ok_or_else(|| src.err(obj.last, format!("unknown kind {kind_text:?}")))?;
    let name: String = obj.field("name")?;
    let body = match kind {
        Kind::HopfQuasigroup => Body::HopfQuasigroup(HopfQuasigroupData::new(src.hopf(&mut obj)?)),
        Kind::HopfCoquasigroup => Body::HopfCoquasigroup(HopfCoquasigroupData::new(src.hopf(&mut obj)?)),
        Kind::Loop => {
            let order: usize = obj.field("order")?;
            let labels: Option<Vec<String>> = obj.optional("labels")?;
            let labels_line = obj.last;
            let table: Vec<Vec<usize>> = obj.field("table")?;
            let table_line = obj.last;
            if table.len() != order {
                return Err(src.err(table_line, format!("table has {} rows, order is {order}", table.len())));
            }
            let l = validate_loop(table).map_err(|e| src.err(table_line, e.to_string()))?;
            Body::Loop(l.with_labels(labels).map_err(|e| src.err(labels_line, e.to_string()))?)
        }
        Kind::Twist | Kind::Action => {
            let field = src.field_descriptor(&mut obj)?;
            let h = src.factor(&mut obj, "H", field)?;
            let a = src.factor(&mut obj, "A", field)?;
            let (hd, ad) = (factor_data(&h)?, factor_data(&a)?);
            let (dh, da) = (hd.dim(), ad.dim());
            if kind == Kind::Twist {
                let raw = obj.raw("map")?;
                let m = src.entries(raw, field, &[dh, da], &[da, dh])?;
                Body::Twist {
                    twist: TwistMap::new(hd, ad, m)?,
                    h: h.reference,
                    a: a.reference,
                }
            } else {
                let raw = obj.raw("action")?;
                let m = src.entries(raw, field, &[dh, da], &[da])?;
                Body::Action {
                    action: QuasimoduleAction::new(hd, ad, m)?,
                    h: h.reference,
                    a: a.reference,
                }
            }
        }
    };
    obj.finish()?;
    Ok(StructureFile { name, body })
}

fn factor_data(f: &LoadedFactor) -> Result<HopfData> {
    f.file
        .hopf_data()
        .cloned()
        .ok_or_else(|| CliError::usage(format!("{} is not a structure file", f.reference.resolved.display())))
}

struct LoadedFactor {
    reference: FactorRef,
    file: StructureFile,
}

struct Src<'a> {
    text: &'a str,
    path: &'a Path,
}

/// Object fields in file order, consumed as they are read.
struct Obj<'a> {
    fields: Vec<(String, &'a RawValue)>,
    start: usize,
    /// Line of the most recently read field.
    last: usize,
    src: &'a Src<'a>,
}

struct Fields<'a>(Vec<(String, &'a RawValue)>);

impl<'de> Deserialize<'de> for Fields<'de> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Fields<'de>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object")
            }

            fn visit_map<M: MapAccess<'de>>(self, mut m: M) -> std::result::Result<Fields<'de>, M::Error> {
                let mut out = vec![];
                while let Some(entry) = m.next_entry::<String, &'de RawValue>()? {
                    out.push(entry);
                }
                Ok(Fields(out))
            }
        }
        d.deserialize_map(V)
    }
}

impl<'a> Src<'a> {
    fn line_of(&self, s: &str) -> usize {
        let offset = (s.as_ptr() as usize).saturating_sub(self.text.as_ptr() as usize);
        self.text[..offset.min(self.text.len())].matches('\n').count() + 1
    }

    fn err(&self, line: usize, reason: impl Into<String>) -> CliError {
        CliError::Parse {
            path: self.path.to_path_buf(),
            line,
            reason: reason.into(),
        }
    }

    /// Deserializes `s`, which starts on line `line` of the file.
    fn de<T: Deserialize<'a>>(&self, s: &'a str, line: usize, what: &str) -> Result<T> {
        serde_json::from_str(s).map_err(|e| {
            let msg = e.to_string();
            let reason = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(r, _)| r);
            self.err(line + e.line().max(1) - 1, format!("{what}: {reason}"))
        })
    }

    fn de_raw<T: Deserialize<'a>>(&self, raw: &'a RawValue, what: &str) -> Result<T> {
        self.de(raw.get(), self.line_of(raw.get()), what)
    }

    fn object(&'a self, raw: &'a RawValue) -> Result<Obj<'a>> {
        let Fields(fields) = self.de_raw(raw, "object")?;
        let start = self.line_of(raw.get());
        for (i, (k, v)) in fields.iter().enumerate() {
            if fields[..i].iter().any(|(j, _)| j == k) {
                return Err(self.err(self.line_of(v.get()), format!("duplicate key {k:?}")));
            }
        }
        Ok(Obj {
            fields,
            start,
            last: start,
            src: self,
        })
    }

    fn field_descriptor(&self, obj: &mut Obj<'a>) -> Result<Field> {
        let text: String = obj.field("field")?;
        text.parse().map_err(|e: hopfq_core::Error| self.err(obj.last, e.to_string()))
    }

    fn hopf(&self, obj: &mut Obj<'a>) -> Result<HopfData> {
        let field = self.field_descriptor(obj)?;
        let dim: usize = obj.field("dim")?;
        if dim == 0 {
            return Err(self.err(obj.last, "dim must be positive"));
        }
        let labels: Option<Vec<String>> = obj.optional("basis")?;
        let labels_line = obj.last;
        let mut maps = vec![];
        for part in Part::ALL {
            let (dom, cod) = part_shapes(part, dim);
            let raw = obj.raw(part.name())?;
            maps.push(self.entries(raw, field, &dom, &cod)?);
        }
        let [mul, unit, comul, counit, antipode]: [LinearMap; 5] = maps.try_into().expect("five parts");
        HopfData::new(field, dim, mul, unit, comul, counit, antipode)?
            .with_labels(labels)
            .map_err(|e| self.err(labels_line, e.to_string()))
    }

    fn factor(&self, obj: &mut Obj<'a>, key: &str, field: Field) -> Result<LoadedFactor> {
        let raw = obj.raw(key)?;
        let line = self.line_of(raw.get());
        let mut r = self.object(raw)?;
        let path: String = r.field("path")?;
        let sha256: String = r.field("sha256")?;
        r.finish()?;
        let resolved = self.path.parent().unwrap_or(Path::new("")).join(&path);
        let bytes = std::fs::read(&resolved).map_err(|e| CliError::io(&resolved, e))?;
        let found = sha256_hex(&bytes);
        if found != sha256 {
            return Err(CliError::HashMismatch {
                path: self.path.to_path_buf(),
                factor: resolved,
                expected: sha256,
                found,
            });
        }
        let text = String::from_utf8(bytes).map_err(|_| self.err(line, format!("{path} is not UTF-8 text")))?;
        let file = parse_str(&text, &resolved)?;
        let Some(data) = file.hopf_data() else {
            return Err(self.err(line, format!("{path} is a {} file, not a structure", file.kind())));
        };
        if data.field() != field {
            return Err(self.err(line, format!("{path} is over {}, this file over {field}", data.field())));
        }
        Ok(LoadedFactor {
            reference: FactorRef {
                path,
                sha256,
                resolved,
                kind: file.kind(),
            },
            file,
        })
    }

    fn entries(&self, raw: &'a RawValue, field: Field, domain: &[usize], codomain: &[usize]) -> Result<LinearMap> {
        let items: Vec<&'a RawValue> = self.de_raw(raw, "entries")?;
        let rows: usize = codomain.iter().product();
        let cols: usize = domain.iter().product();
        let mut out = Vec::with_capacity(items.len());
        let mut prev: Option<(usize, usize)> = None;
        for item in items {
            let line = self.line_of(item.get());
            let (r, c, text): (usize, usize, String) = self.de_raw(item, "entry")?;
            if r >= rows || c >= cols {
                return Err(self.err(line, format!("entry ({r}, {c}) out of range for a {rows}x{cols} map")));
            }
            if let Some(p) = prev {
                if p == (r, c) {
                    return Err(self.err(line, format!("duplicate entry ({r}, {c})")));
                }
                if p > (r, c) {
                    return Err(self.err(line, "entries not sorted by (row, column)"));
                }
            }
            prev = Some((r, c));
            let v = Scalar::parse(&text, field).map_err(|e| match e {
                hopfq_core::Error::NonCanonicalScalar(text) => CliError::NonCanonicalScalar {
                    path: self.path.to_path_buf(),
                    line,
                    text,
                },
                other => self.err(line, other.to_string()),
            })?;
            if v.is_zero() {
                return Err(self.err(line, "explicit zero entry"));
            }
            out.push((r, c, v));
        }
        Ok(LinearMap::from_entries(field, domain, codomain, out)?)
    }
}

impl<'a> Obj<'a> {
    fn take(&mut self, key: &str) -> Option<&'a RawValue> {
        let i = self.fields.iter().position(|(k, _)| k == key)?;
        let (_, v) = self.fields.remove(i);
        self.last = self.src.line_of(v.get());
        Some(v)
    }

    fn raw(&mut self, key: &str) -> Result<&'a RawValue> {
        self.take(key)
            .ok_or_else(|| self.src.err(self.start, format!("missing key {key:?}")))
    }

    fn field<T: Deserialize<'a>>(&mut self, key: &str) -> Result<T> {
        let raw = self.raw(key)?;
        self.src.de_raw(raw, key)
    }

    fn optional<T: Deserialize<'a>>(&mut self, key: &str) -> Result<Option<T>> {
        match self.take(key) {
            Some(raw) => self.src.de_raw(raw, key).map(Some),
            None => Ok(None),
        }
    }

    fn finish(self) -> Result<()> {
        match self.fields.first() {
            Some((k, v)) => Err(self.src.err(self.src.line_of(v.get()), format!("unknown key {k:?}"))),
            None => Ok(()),
        }
    }
}

fn part_shapes(part: Part, d: usize) -> (Vec<usize>, Vec<usize>) {
    match part {
        Part::Mul => (vec![d, d], vec![d]),
        Part::Unit => (vec![1], vec![d]),
        Part::Comul => (vec![d], vec![d, d]),
        Part::Counit => (vec![d], vec![1]),
        Part::Antipode => (vec![d], vec![d]),
    }
}

/// Canonical text of `x`. Parsing the result gives back `x`.
pub fn serialize_structure(x: &StructureFile) -> String {
    let mut w = Writer::default();
    w.line("{");
    w.key("format", &json_str(FORMAT));
    w.key("kind", &json_str(x.kind().as_str()));
    w.key("name", &json_str(&x.name));
    match &x.body {
        Body::HopfQuasigroup(h) => write_hopf(&mut w, h),
        Body::HopfCoquasigroup(h) => write_hopf(&mut w, h),
        Body::Loop(l) => {
            w.key("order", &l.order().to_string());
            if let Some(labels) = l.labels() {
                w.key("labels", &json_list(labels.iter().map(|s| json_str(s))));
            }
            w.block(
                "table",
                l.table().iter().map(|row| json_list(row.iter().map(|v| v.to_string()))),
            );
        }
        Body::Twist { h, a, twist } => {
            write_factors(&mut w, twist.field(), h, a);
            write_entries(&mut w, "map", twist.map());
        }
        Body::Action { h, a, action } => {
            write_factors(&mut w, action.field(), h, a);
            write_entries(&mut w, "action", action.action());
        }
    }
    w.close();
    w.out
}

fn write_hopf(w: &mut Writer, h: &HopfData) {
    w.key("field", &json_str(&h.field().to_string()));
    w.key("dim", &h.dim().to_string());
    if let Some(labels) = h.basis_labels() {
        w.key("basis", &json_list(labels.iter().map(|s| json_str(s))));
    }
    for part in Part::ALL {
        write_entries(w, part.name(), h.part(part));
    }
}

fn write_factors(w: &mut Writer, field: Field, h: &FactorRef, a: &FactorRef) {
    w.key("field", &json_str(&field.to_string()));
    for (k, r) in [("H", h), ("A", a)] {
        w.key(
            k,
            &format!("{{\"path\": {}, \"sha256\": {}}}", json_str(&r.path), json_str(&r.sha256)),
        );
    }
}

fn write_entries(w: &mut Writer, key: &str, m: &LinearMap) {
    let mut e = m.entries();
    e.sort_by_key(|(r, c, _)| (*r, *c));
    w.block(
        key,
        e.into_iter()
            .map(|(r, c, v)| format!("[{r}, {c}, {}]", json_str(&v.to_string()))),
    );
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn json_list(items: impl Iterator<Item = String>) -> String {
    format!("[{}]", items.collect::<Vec<_>>().join(", "))
}

/// Top-level object writer; commas go in front of every key but the first.
#[derive(Default)]
struct Writer {
    out: String,
    keys: usize,
}

impl Writer {
    fn line(&mut self, s: &str) {
        self.out.push_str(s);
        self.out.push('\n');
    }

    fn sep(&mut self) {
        if self.keys > 0 {
            self.out.pop();
            self.out.push_str(",\n");
        }
        self.keys += 1;
    }

    fn key(&mut self, k: &str, v: &str) {
        self.sep();
        let _ = writeln!(self.out, "  {}: {v}", json_str(k));
    }

    fn block(&mut self, k: &str, items: impl Iterator<Item = String>) {
        self.sep();
        let items: Vec<String> = items.collect();
        if items.is_empty() {
            let _ = writeln!(self.out, "  {}: []", json_str(k));
            return;
        }
        let _ = writeln!(self.out, "  {}: [", json_str(k));
        let n = items.len();
        for (i, it) in items.into_iter().enumerate() {
            let comma = if i + 1 < n { "," } else { "" };
            let _ = writeln!(self.out, "    {it}{comma}");
        }
        self.out.push_str("  ]\n");
    }

    fn close(&mut self) {
        self.line("}");
    }
}
