//! Code files.
//!
//! Two encodings are accepted. The text form is line oriented:
//!
//! ```text
//! # comment
//! p 2
//! s 1
//! m 3
//! l_poly [1,1,0,1]
//! n 4
//! row [1] [0,1] [0,0,1] [1,1]
//! row [1] [0,1] [0,0,1] [0,1,1]
//! ```
//!
//! The JSON form carries the same data:
//! `{"field": {"p":2,"s":1,"m":3,"l_poly":[1,1,0,1]}, "n":4, "generators":[[...]]}`.
//!
//! An element of `L` is the list of its coordinates over `K` in the basis
//! `1, α, …, α^{m-1}`. A `K`-coordinate is an integer `0..p` when `s = 1` and
//! the list of its `GF(p)`-coordinates otherwise. Trailing zero coordinates
//! may be omitted.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::code::RankCode;
use crate::error::{Error, Result};
use crate::gf::{digits, undigits, Elem, ExtensionField, FieldSpec};
use crate::kspace::Matrix;

/// A parsed but not yet validated code file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub field: FieldSpec,
    pub n: usize,
    /// Generator rows in the integer encoding of `L`.
    pub rows: Vec<Vec<Elem>>,
}

impl CodeFile {
    pub fn to_code(&self) -> Result<RankCode> {
        let field = Arc::new(ExtensionField::new(self.field.clone())?);
        if self.n == 0 {
            return Err(Error::EmptyLength);
        }
        let mut gen = Matrix::zeros(0, self.n);
        for row in &self.rows {
            gen.push_row(row);
        }
        RankCode::new(field, &gen)
    }
}

/// Where a value sits in the file, for diagnostics.
#[derive(Clone, Debug)]
enum Loc {
    Text { line: usize, col: usize },
    Json(String),
}

impl Loc {
    fn err(&self, msg: impl Into<String>) -> Error {
        match self {
            Loc::Text { line, col } => Error::Parse {
                line: *line,
                col: *col,
                msg: msg.into(),
            },
            Loc::Json(path) => Error::Malformed {
                path: path.clone(),
                msg: msg.into(),
            },
        }
    }
}

fn small_int(v: &Value, loc: &Loc, what: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| {
            loc.err(format!(
                "expected a nonnegative integer for {what}, found {v}"
            ))
        })
}

fn list<'a>(v: &'a Value, loc: &Loc, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| loc.err(format!("expected a list for {what}, found {v}")))
}

fn prime_digit(v: &Value, p: u32, loc: &Loc) -> Result<u32> {
    let d = small_int(v, loc, "a coefficient")?;
    if d >= p {
        return Err(loc.err(format!("coefficient {d} is not below p = {p}")));
    }
    Ok(d)
}

fn base_elem(v: &Value, spec: &FieldSpec, loc: &Loc) -> Result<Elem> {
    if spec.s == 1 {
        return prime_digit(v, spec.p, loc);
    }
    let ds = list(v, loc, "an element of K")?;
    if ds.len() > spec.s as usize {
        return Err(loc.err(format!(
            "element of K has {} > s = {} coordinates",
            ds.len(),
            spec.s
        )));
    }
    let ds = ds
        .iter()
        .map(|d| prime_digit(d, spec.p, loc))
        .collect::<Result<Vec<_>>>()?;
    Ok(undigits(&ds, spec.p))
}

fn ext_elem(v: &Value, spec: &FieldSpec, loc: &Loc) -> Result<Elem> {
    let cs = list(v, loc, "an element of L")?;
    if cs.len() > spec.m as usize {
        return Err(loc.err(format!(
            "element of L has {} > m = {} coordinates",
            cs.len(),
            spec.m
        )));
    }
    let cs = cs
        .iter()
        .map(|c| base_elem(c, spec, loc))
        .collect::<Result<Vec<_>>>()?;
    Ok(undigits(&cs, spec.q() as u32))
}

pub fn encode_base(x: Elem, spec: &FieldSpec) -> Value {
    if spec.s == 1 {
        Value::from(x)
    } else {
        Value::from(digits(x, spec.p, spec.s as usize))
    }
}

/// An `L`-element as its coordinate list.
pub fn encode_elem(x: Elem, spec: &FieldSpec) -> Value {
    let cs = digits(x, spec.q() as u32, spec.m as usize);
    Value::Array(cs.into_iter().map(|c| encode_base(c, spec)).collect())
}

fn encode_k_poly(spec: &FieldSpec) -> Option<Value> {
    spec.k_poly
        .as_ref()
        .filter(|p| !p.is_empty())
        .map(|p| Value::from(p.clone()))
}

fn encode_l_poly(spec: &FieldSpec) -> Option<Value> {
    spec.l_poly
        .as_ref()
        .map(|p| Value::Array(p.iter().map(|&c| encode_base(c, spec)).collect()))
}

/// Field description in the file encoding, with polynomials as coefficient
/// lists. Serializes with keys in the order `p, s, m, k_poly, l_poly`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldJson {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_poly: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_poly: Option<Value>,
}

pub fn field_json(spec: &FieldSpec) -> FieldJson {
    FieldJson {
        p: spec.p,
        s: spec.s,
        m: spec.m,
        k_poly: encode_k_poly(spec),
        l_poly: encode_l_poly(spec),
    }
}

#[derive(Default)]
struct Header {
    p: Option<u32>,
    s: Option<u32>,
    m: Option<u32>,
    n: Option<usize>,
    k_poly: Option<(Value, Loc)>,
    l_poly: Option<(Value, Loc)>,
}

impl Header {
    fn spec(&self, at: &Loc) -> Result<FieldSpec> {
        let p = self.p.ok_or_else(|| at.err("missing `p`"))?;
        let s = self.s.unwrap_or(1);
        let m = self.m.ok_or_else(|| at.err("missing `m`"))?;
        if !(1..=20).contains(&s) || !(1..=20).contains(&m) || p < 2 {
            return Err(at.err("p must be at least 2 and s, m between 1 and 20"));
        }
        let mut spec = FieldSpec::new(p, s, m);
        if let Some((v, loc)) = &self.k_poly {
            let cs = list(v, loc, "k_poly")?;
            spec.k_poly = Some(
                cs.iter()
                    .map(|c| prime_digit(c, p, loc))
                    .collect::<Result<_>>()?,
            );
        }
        if let Some((v, loc)) = &self.l_poly {
            let cs = list(v, loc, "l_poly")?;
            spec.l_poly = Some(
                cs.iter()
                    .map(|c| base_elem(c, &spec, loc))
                    .collect::<Result<_>>()?,
            );
        }
        Ok(spec)
    }
}

/// Parses either encoding, chosen by the first non-blank character.
pub fn parse(src: &str) -> Result<CodeFile> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

pub fn parse_code(src: &str) -> Result<RankCode> {
    parse(src)?.to_code()
}

pub fn parse_text(src: &str) -> Result<CodeFile> {
    let mut header = Header::default();
    let mut raw_rows: Vec<Vec<(Value, Loc)>> = Vec::new();
    let mut last_line = 1;

    for (i, full) in src.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let text = full.split('#').next().unwrap_or("");
        let Some(key_start) = text.find(|c: char| !c.is_whitespace()) else {
            continue;
        };
        let key_end = text[key_start..]
            .find(char::is_whitespace)
            .map_or(text.len(), |e| key_start + e);
        let key = &text[key_start..key_end];
        let key_loc = Loc::Text {
            line,
            col: text[..key_start].chars().count() + 1,
        };
        let values = line_values(&text[key_end..], line, text[..key_end].chars().count())?;

        let single = |what: &str| -> Result<(Value, Loc)> {
            match <[_; 1]>::try_from(values.clone()) {
                Ok([one]) => Ok(one),
                Err(v) => Err(key_loc.err(format!("`{what}` takes one value, found {}", v.len()))),
            }
        };
        let duplicate = || key_loc.err(format!("duplicate key `{key}`"));
        match key {
            "p" | "s" | "m" | "n" => {
                let (v, loc) = single(key)?;
                let x = small_int(&v, &loc, key)?;
                let slot_taken = match key {
                    "p" => header.p.replace(x).is_some(),
                    "s" => header.s.replace(x).is_some(),
                    "m" => header.m.replace(x).is_some(),
                    _ => header.n.replace(x as usize).is_some(),
                };
                if slot_taken {
                    return Err(duplicate());
                }
            }
            "k_poly" => {
                if header.k_poly.replace(single(key)?).is_some() {
                    return Err(duplicate());
                }
            }
            "l_poly" => {
                if header.l_poly.replace(single(key)?).is_some() {
                    return Err(duplicate());
                }
            }
            "row" => raw_rows.push(values),
            _ => return Err(key_loc.err(format!("unknown key `{key}`"))),
        }
    }

    let end = Loc::Text {
        line: last_line,
        col: 1,
    };
    let spec = header.spec(&end)?;
    let n = header.n.ok_or_else(|| end.err("missing `n`"))?;
    let mut rows = Vec::with_capacity(raw_rows.len());
    for raw in raw_rows {
        if raw.len() != n {
            let loc = raw.first().map_or(end.clone(), |(_, l)| l.clone());
            return Err(loc.err(format!("row has {} entries, expected n = {n}", raw.len())));
        }
        rows.push(
            raw.iter()
                .map(|(v, loc)| ext_elem(v, &spec, loc))
                .collect::<Result<_>>()?,
        );
    }
    Ok(CodeFile {
        field: spec,
        n,
        rows,
    })
}

/// JSON values following a key, each with its 1-based column.
fn line_values(rest: &str, line: usize, offset_chars: usize) -> Result<Vec<(Value, Loc)>> {
    let col_of = |byte: usize| offset_chars + rest[..byte].chars().count() + 1;
    let mut out = Vec::new();
    let mut stream = serde_json::Deserializer::from_str(rest).into_iter::<Value>();
    loop {
        let before = stream.byte_offset();
        let start = before + rest[before..].len() - rest[before..].trim_start().len();
        match stream.next() {
            None => return Ok(out),
            Some(Ok(v)) => out.push((
                v,
                Loc::Text {
                    line,
                    col: col_of(start),
                },
            )),
            Some(Err(e)) => {
                return Err(Error::Parse {
                    line,
                    col: offset_chars + e.column(),
                    msg: e
                        .to_string()
                        .split(" at line")
                        .next()
                        .unwrap_or("")
                        .to_string(),
                })
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonField {
    p: u32,
    #[serde(default = "one")]
    s: u32,
    m: u32,
    #[serde(default)]
    k_poly: Option<Value>,
    #[serde(default)]
    l_poly: Option<Value>,
}

fn one() -> u32 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFile {
    field: JsonField,
    n: usize,
    #[serde(default)]
    generators: Vec<Vec<Value>>,
}

pub fn parse_json(src: &str) -> Result<CodeFile> {
    let file: JsonFile = serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        msg: e
            .to_string()
            .split(" at line")
            .next()
            .unwrap_or("")
            .to_string(),
    })?;
    let f = file.field;
    let header = Header {
        p: Some(f.p),
        s: Some(f.s),
        m: Some(f.m),
        n: Some(file.n),
        k_poly: f
            .k_poly
            .filter(|v| !v.is_null())
            .map(|v| (v, Loc::Json("field.k_poly".into()))),
        l_poly: f
            .l_poly
            .filter(|v| !v.is_null())
            .map(|v| (v, Loc::Json("field.l_poly".into()))),
    };
    let spec = header.spec(&Loc::Json("field".into()))?;
    let mut rows = Vec::with_capacity(file.generators.len());
    for (i, raw) in file.generators.iter().enumerate() {
        if raw.len() != file.n {
            return Err(Loc::Json(format!("generators[{i}]")).err(format!(
                "row has {} entries, expected n = {}",
                raw.len(),
                file.n
            )));
        }
        let row = raw
            .iter()
            .enumerate()
            .map(|(j, v)| ext_elem(v, &spec, &Loc::Json(format!("generators[{i}][{j}]"))))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    Ok(CodeFile {
        field: spec,
        n: file.n,
        rows,
    })
}

fn row_text(row: &[Elem], spec: &FieldSpec) -> String {
    row.iter()
        .map(|&x| encode_elem(x, spec).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text form: resolved polynomials and the RREF generator.
pub fn to_text(c: &RankCode) -> String {
    let spec = c.field().spec();
    let mut out = format!("p {}\ns {}\nm {}\n", spec.p, spec.s, spec.m);
    if let Some(v) = encode_k_poly(spec) {
        out += &format!("k_poly {v}\n");
    }
    if let Some(v) = encode_l_poly(spec) {
        out += &format!("l_poly {v}\n");
    }
    out += &format!("n {}\n", c.n());
    for row in c.generator().iter_rows() {
        out += &format!("row {}\n", row_text(row, spec));
    }
    out
}

#[derive(Serialize)]
struct FileJson {
    field: FieldJson,
    n: usize,
    generators: Vec<Vec<Value>>,
}

/// Canonical JSON form.
pub fn to_json(c: &RankCode) -> String {
    let spec = c.field().spec();
    let doc = FileJson {
        field: field_json(spec),
        n: c.n(),
        generators: c
            .generator()
            .iter_rows()
            .map(|row| row.iter().map(|&x| encode_elem(x, spec)).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("JSON values serialize")
}

/// The built-in example: `K = GF(2)`, `L = GF(8)` with `α³ = 1 + α`, and
/// generators `(1, α, α², α³)`, `(1, α, α², α⁴)`.
pub fn example_text() -> &'static str {
    "# K = GF(2), L = GF(8) = K[a]/(a^3 + a + 1)\n\
     # generators (1, a, a^2, a^3) and (1, a, a^2, a^4)\n\
     p 2\n\
     s 1\n\
     m 3\n\
     l_poly [1,1,0,1]\n\
     n 4\n\
     row [1] [0,1] [0,0,1] [1,1]\n\
     row [1] [0,1] [0,0,1] [0,1,1]\n"
}
