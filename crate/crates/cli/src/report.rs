//! Ordered key/value report trees, rendered as indented text or JSON.

use std::fmt::Display;

use serde_json::{Map as JsonMap, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Bool(bool),
    Int(i64),
    Text(String),
    List(Vec<Node>),
    Map(Vec<(String, Node)>),
}

impl Node {
    pub fn text(v: impl Display) -> Node {
        Node::Text(v.to_string())
    }

    /// One leaf per item, each rendered with `Display`.
    pub fn texts<T: Display>(items: impl IntoIterator<Item = T>) -> Node {
        Node::List(items.into_iter().map(Node::text).collect())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Node::Bool(b) => Value::Bool(*b),
            Node::Int(n) => Value::from(*n),
            Node::Text(s) => Value::String(s.clone()),
            Node::List(items) => Value::Array(items.iter().map(Node::to_json).collect()),
            Node::Map(fields) => {
                let mut m = JsonMap::new();
                for (k, v) in fields {
                    m.insert(k.clone(), v.to_json());
                }
                Value::Object(m)
            }
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match self {
            Node::Map(fields) => write_fields(&mut out, fields, 0),
            Node::List(items) => write_items(&mut out, items, 0),
            leaf => {
                out.push_str(&scalar(leaf));
                out.push('\n');
            }
        }
        out
    }

    fn is_scalar(&self) -> bool {
        !matches!(self, Node::List(_) | Node::Map(_))
    }
}

fn scalar(node: &Node) -> String {
    match node {
        Node::Bool(b) => b.to_string(),
        Node::Int(n) => n.to_string(),
        Node::Text(s) => s.clone(),
        Node::List(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        Node::Map(_) => String::new(),
    }
}

fn inline(node: &Node) -> bool {
    match node {
        Node::List(items) => items.iter().all(Node::is_scalar),
        other => other.is_scalar(),
    }
}

fn write_fields(out: &mut String, fields: &[(String, Node)], depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in fields {
        if inline(v) {
            out.push_str(&format!("{pad}{k}: {}\n", scalar(v)));
        } else {
            out.push_str(&format!("{pad}{k}:\n"));
            match v {
                Node::Map(inner) => write_fields(out, inner, depth + 1),
                Node::List(items) => write_items(out, items, depth + 1),
                _ => unreachable!(),
            }
        }
    }
}

fn write_items(out: &mut String, items: &[Node], depth: usize) {
    let pad = "  ".repeat(depth);
    for item in items {
        match item {
            Node::Map(fields) => {
                out.push_str(&format!("{pad}-\n"));
                write_fields(out, fields, depth + 1);
            }
            Node::List(inner) if !inline(item) => {
                out.push_str(&format!("{pad}-\n"));
                write_items(out, inner, depth + 1);
            }
            leaf => out.push_str(&format!("{pad}- {}\n", scalar(leaf))),
        }
    }
}

impl From<bool> for Node {
    fn from(b: bool) -> Node {
        Node::Bool(b)
    }
}

impl From<usize> for Node {
    fn from(n: usize) -> Node {
        Node::Int(n as i64)
    }
}

impl From<String> for Node {
    fn from(s: String) -> Node {
        Node::Text(s)
    }
}

impl From<&str> for Node {
    fn from(s: &str) -> Node {
        Node::Text(s.to_string())
    }
}

impl<T: Into<Node>, const N: usize> From<[T; N]> for Node {
    fn from(items: [T; N]) -> Node {
        Node::List(items.into_iter().map(Into::into).collect())
    }
}

impl<T: Into<Node>> From<Vec<T>> for Node {
    fn from(items: Vec<T>) -> Node {
        Node::List(items.into_iter().map(Into::into).collect())
    }
}

/// Builder for [`Node::Map`] that keeps insertion order.
#[derive(Default)]
pub struct Fields(Vec<(String, Node)>);

impl Fields {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(mut self, key: &str, value: impl Into<Node>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Node>) {
        self.0.push((key.to_string(), value.into()));
    }
}

impl From<Fields> for Node {
    fn from(f: Fields) -> Node {
        Node::Map(f.0)
    }
}
