//! Flat, ordered records printed as one JSON object or a two-line CSV.

use moya_core::Interval;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Interval(Interval),
    Real(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    List(Vec<String>),
    /// An absent interval; keeps the two CSV columns.
    NoInterval,
    Null,
}

impl From<Interval> for Field {
    fn from(x: Interval) -> Self {
        Field::Interval(x)
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Real(x)
    }
}

impl From<usize> for Field {
    fn from(x: usize) -> Self {
        Field::Int(x as u64)
    }
}

impl From<u32> for Field {
    fn from(x: u32) -> Self {
        Field::Int(u64::from(x))
    }
}

impl From<bool> for Field {
    fn from(x: bool) -> Self {
        Field::Bool(x)
    }
}

impl From<&str> for Field {
    fn from(x: &str) -> Self {
        Field::Text(x.to_owned())
    }
}

impl From<Option<Interval>> for Field {
    fn from(x: Option<Interval>) -> Self {
        x.map_or(Field::NoInterval, Field::Interval)
    }
}

impl From<Option<f64>> for Field {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Field::Null, Field::Real)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(&'static str, Field)>);

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Field>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    /// Header and one data row; intervals become `key_lo,key_hi`.
    pub fn to_csv(&self) -> String {
        let mut header = Vec::new();
        let mut row = Vec::new();
        for (key, value) in &self.0 {
            match value {
                Field::Interval(x) => {
                    header.push(format!("{key}_lo"));
                    header.push(format!("{key}_hi"));
                    row.push(real(x.lo()));
                    row.push(real(x.hi()));
                }
                Field::NoInterval => {
                    header.push(format!("{key}_lo"));
                    header.push(format!("{key}_hi"));
                    row.push(String::new());
                    row.push(String::new());
                }
                other => {
                    header.push((*key).to_owned());
                    row.push(match other {
                        Field::Real(v) => real(*v),
                        Field::Int(v) => v.to_string(),
                        Field::Bool(v) => v.to_string(),
                        Field::Text(s) => quote(s),
                        Field::List(items) => quote(&items.join(";")),
                        Field::Null => String::new(),
                        Field::Interval(_) | Field::NoInterval => unreachable!(),
                    });
                }
            }
        }
        format!("{}\n{}", header.join(","), row.join(","))
    }
}

/// Same digits as the JSON output.
fn real(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite floats serialize")
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Interval(x) => x.serialize(s),
            Field::Real(v) if v.is_finite() => s.serialize_f64(*v),
            Field::Real(v) => s.serialize_str(if *v > 0.0 { "inf" } else { "-inf" }),
            Field::Int(v) => s.serialize_u64(*v),
            Field::Bool(v) => s.serialize_bool(*v),
            Field::Text(v) => s.serialize_str(v),
            Field::List(v) => v.serialize(s),
            Field::NoInterval | Field::Null => s.serialize_unit(),
        }
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}
