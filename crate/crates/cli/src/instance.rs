//! Instance files.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;
use wil_core::{CircleItem, RectItem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Circles,
    Rects,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Circles => "circles",
            Kind::Rects => "rects",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Items {
    Circles(Vec<CircleItem>),
    Rects(Vec<RectItem>),
}

impl Items {
    pub fn kind(&self) -> Kind {
        match self {
            Items::Circles(_) => Kind::Circles,
            Items::Rects(_) => Kind::Rects,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Items::Circles(c) => c.len(),
            Items::Rects(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: Option<String>,
    /// Generator seed, when the instance was generated.
    pub seed: Option<u64>,
    pub items: Items,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed instance: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("empty item list")]
    Empty,
    #[error("items[{index}]: {message}")]
    Item { index: usize, message: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    kind: Kind,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    items: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCircle {
    r: f64,
    m: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRect {
    a: f64,
    b: f64,
    m: f64,
}

fn positive(index: usize, field: &str, v: f64) -> Result<f64, InstanceError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(InstanceError::Item {
            index,
            message: format!("field `{field}` must be positive, got {v}"),
        })
    }
}

fn item<T: for<'de> Deserialize<'de>>(index: usize, v: Value) -> Result<T, InstanceError> {
    serde_json::from_value(v).map_err(|e| InstanceError::Item {
        index,
        message: e.to_string(),
    })
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance, InstanceError> {
        let raw: RawInstance = serde_json::from_str(text)?;
        if raw.items.is_empty() {
            return Err(InstanceError::Empty);
        }
        let items = match raw.kind {
            Kind::Circles => Items::Circles(
                raw.items
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let c: RawCircle = item(i, v)?;
                        Ok(CircleItem {
                            radius: positive(i, "r", c.r)?,
                            mass: positive(i, "m", c.m)?,
                        })
                    })
                    .collect::<Result<_, InstanceError>>()?,
            ),
            Kind::Rects => Items::Rects(
                raw.items
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let r: RawRect = item(i, v)?;
                        Ok(RectItem {
                            edge_a: positive(i, "a", r.a)?,
                            edge_b: positive(i, "b", r.b)?,
                            mass: positive(i, "m", r.m)?,
                        })
                    })
                    .collect::<Result<_, InstanceError>>()?,
            ),
        };
        Ok(Instance {
            name: raw.name,
            seed: raw.seed,
            items,
        })
    }

    pub fn load(path: &Path) -> Result<Instance, InstanceError> {
        let text = fs::read_to_string(path).map_err(|source| InstanceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Instance::parse(&text)
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = match &self.items {
            Items::Circles(c) => c.iter().map(|c| json!({"r": c.radius, "m": c.mass})).collect(),
            Items::Rects(r) => r
                .iter()
                .map(|r| json!({"a": r.edge_a, "b": r.edge_b, "m": r.mass}))
                .collect(),
        };
        let mut v = json!({"kind": self.items.kind()});
        if let Some(name) = &self.name {
            v["name"] = json!(name);
        }
        if let Some(seed) = self.seed {
            v["seed"] = json!(seed);
        }
        v["items"] = Value::Array(items);
        v
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("instance serializes");
        s.push('\n');
        s
    }

    /// Name used in reports: the stored name, else the file stem.
    pub fn display_name(&self, path: &Path) -> String {
        self.name.clone().unwrap_or_else(|| {
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()
        })
    }
}
