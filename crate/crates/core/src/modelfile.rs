//! Text formats for models, simulation pairs and formula corpora.
//!
//! A model file lists the carriers, the three relations and a valuation:
//!
//! ```text
//! # the worked example
//! objects: g1 g2
//! attributes: m1 m2 m3
//! I: g1 m1; g1 m2; g2 m3
//! Rbox: g1 m1; g1 m2; g2 m3
//! Rdia:
//! val q: g1
//! ```
//!
//! `I` and `Rbox` pairs are `object attribute`, `Rdia` pairs are
//! `attribute object`. Missing or empty relation lines mean the empty
//! relation. `val NAME:` lists objects whose closure is the atom's concept.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use crate::bisim::SimulationPair;
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::formula::{parse, Formula};
use crate::polarity::{EnrichedContext, Polarity, Relation};
use crate::semantics::Model;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::ModelFile {
        line,
        msg: msg.into(),
    }
}

/// Non-blank lines with comments stripped, split at the first `:`.
fn entries(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| err(i + 1, format!("expected `key: value`, found `{line}`")))?;
        out.push((i + 1, key.trim().to_string(), rest.trim().to_string()));
    }
    Ok(out)
}

fn names(line: usize, what: &str, rest: &str) -> Result<Vec<String>> {
    let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    let mut seen = HashMap::new();
    for n in &list {
        if seen.insert(n.as_str(), ()).is_some() {
            return Err(err(line, format!("duplicate {what} `{n}`")));
        }
    }
    Ok(list)
}

fn index(line: usize, what: &str, list: &[String], name: &str) -> Result<usize> {
    list.iter()
        .position(|n| n == name)
        .ok_or_else(|| err(line, format!("unknown {what} `{name}`")))
}

/// `a b; c d; ..` as index pairs over the given row and column names.
fn pairs(
    line: usize,
    rest: &str,
    rows: (&str, &[String]),
    cols: (&str, &[String]),
) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for item in rest.split(';') {
        let parts: Vec<&str> = item.split_whitespace().collect();
        match parts.as_slice() {
            [] => continue,
            [a, b] => out.push((
                index(line, rows.0, rows.1, a)?,
                index(line, cols.0, cols.1, b)?,
            )),
            _ => {
                return Err(err(
                    line,
                    format!(
                        "expected a pair `{} {}`, found `{}`",
                        rows.0,
                        cols.0,
                        item.trim()
                    ),
                ))
            }
        }
    }
    Ok(out)
}

/// Parses a model file. Incompatible relations are rejected.
pub fn parse_model(text: &str) -> Result<Model> {
    let entries = entries(text)?;
    let mut objects = None;
    let mut attributes = None;
    let mut relations: HashMap<&str, (usize, &str)> = HashMap::new();
    let mut vals: Vec<(usize, String, &str)> = Vec::new();
    for (line, key, rest) in &entries {
        match key.as_str() {
            "objects" | "attributes" => {
                let slot = if key == "objects" {
                    &mut objects
                } else {
                    &mut attributes
                };
                if slot.is_some() {
                    return Err(err(*line, format!("`{key}` given twice")));
                }
                let what = if key == "objects" {
                    "object"
                } else {
                    "attribute"
                };
                *slot = Some((*line, names(*line, what, rest)?));
            }
            "I" | "Rbox" | "Rdia" => {
                if relations
                    .insert(key.as_str(), (*line, rest.as_str()))
                    .is_some()
                {
                    return Err(err(*line, format!("`{key}` given twice")));
                }
            }
            k if k.starts_with("val ") => {
                let name = k["val ".len()..].trim();
                let ok = !name.is_empty()
                    && name.chars().all(|c| c.is_alphanumeric() || c == '_')
                    && !["top", "bot", "box", "dia", "nu", "mu"].contains(&name);
                if !ok {
                    return Err(err(*line, format!("`{name}` is not a valid atom name")));
                }
                if vals.iter().any(|(_, n, _)| n == name) {
                    return Err(err(*line, format!("atom `{name}` given twice")));
                }
                vals.push((*line, name.to_string(), rest.as_str()));
            }
            other => return Err(err(*line, format!("unknown key `{other}`"))),
        }
    }
    let (gline, objects) = objects.ok_or(Error::EmptyCarrier("object"))?;
    let (mline, attributes) = attributes.ok_or(Error::EmptyCarrier("attribute"))?;
    if objects.is_empty() {
        return Err(err(gline, "empty object list"));
    }
    if attributes.is_empty() {
        return Err(err(mline, "empty attribute list"));
    }
    let g = ("object", objects.as_slice());
    let m = ("attribute", attributes.as_slice());
    let relation = |key: &str, rows, cols, shape: (usize, usize)| -> Result<Relation> {
        match relations.get(key) {
            None => Ok(Relation::empty(shape.0, shape.1)),
            Some((line, rest)) => Ok(Relation::from_pairs(
                shape.0,
                shape.1,
                pairs(*line, rest, rows, cols)?,
            )),
        }
    };
    let (ng, nm) = (objects.len(), attributes.len());
    let incidence = relation("I", g, m, (ng, nm))?;
    let rbox = relation("Rbox", g, m, (ng, nm))?;
    let rdia = relation("Rdia", m, g, (nm, ng))?;
    let polarity = Polarity::new(objects.clone(), attributes.clone(), incidence)?;
    let mut valuation = BTreeMap::new();
    for (line, name, rest) in vals {
        let mut seed = BitSet::EMPTY;
        for o in rest.split_whitespace() {
            seed.insert(index(line, "object", &objects, o)?);
        }
        valuation.insert(name, polarity.concept_of_extent(seed));
    }
    Model::new(EnrichedContext::new(polarity, rbox, rdia), valuation)
}

pub fn read_model(path: impl AsRef<Path>) -> Result<Model> {
    parse_model(&std::fs::read_to_string(path)?)
}

/// Writes a model in the file format. `parse_model` reads it back unchanged.
pub fn model_to_text(model: &Model) -> String {
    let ctx = model.context();
    let p = ctx.polarity();
    let (g, m) = (p.objects(), p.attributes());
    let list = |r: &Relation, rows: &[String], cols: &[String]| {
        r.pairs()
            .map(|(i, j)| format!("{} {}", rows[i], cols[j]))
            .collect::<Vec<_>>()
            .join("; ")
    };
    let mut out = String::new();
    out.push_str(&format!("objects: {}\n", g.join(" ")));
    out.push_str(&format!("attributes: {}\n", m.join(" ")));
    out.push_str(&format!("I: {}\n", list(p.incidence(), g, m)));
    out.push_str(&format!("Rbox: {}\n", list(ctx.rbox(), g, m)));
    out.push_str(&format!("Rdia: {}\n", list(ctx.rdia(), m, g)));
    for (name, c) in model.valuation() {
        out.push_str(&format!(
            "val {name}: {}\n",
            p.object_names(c.extent).join(" ")
        ));
    }
    out.replace(": \n", ":\n")
}

/// Parses a pair file (`S: g1 g2; ..` and `T: m1 m2; ..`) against two models.
pub fn parse_pairs(text: &str, m1: &Model, m2: &Model) -> Result<SimulationPair> {
    let (p1, p2) = (m1.context().polarity(), m2.context().polarity());
    let mut pair = SimulationPair::empty(m1, m2);
    let (mut seen_s, mut seen_t) = (false, false);
    for (line, key, rest) in entries(text)? {
        match key.as_str() {
            "S" if !seen_s => {
                seen_s = true;
                let rows = ("first-model object", p1.objects());
                let cols = ("second-model object", p2.objects());
                for (a, b) in pairs(line, &rest, rows, cols)? {
                    pair.s.insert(a, b);
                }
            }
            "T" if !seen_t => {
                seen_t = true;
                let rows = ("first-model attribute", p1.attributes());
                let cols = ("second-model attribute", p2.attributes());
                for (a, b) in pairs(line, &rest, rows, cols)? {
                    pair.t.insert(a, b);
                }
            }
            "S" | "T" => return Err(err(line, format!("`{key}` given twice"))),
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    Ok(pair)
}

pub fn pairs_to_text(pair: &SimulationPair, m1: &Model, m2: &Model) -> String {
    let (p1, p2) = (m1.context().polarity(), m2.context().polarity());
    let s: Vec<String> = pair
        .s
        .pairs()
        .map(|(a, b)| format!("{} {}", p1.objects()[a], p2.objects()[b]))
        .collect();
    let t: Vec<String> = pair
        .t
        .pairs()
        .map(|(a, b)| format!("{} {}", p1.attributes()[a], p2.attributes()[b]))
        .collect();
    format!("S: {}\nT: {}\n", s.join("; "), t.join("; ")).replace(": \n", ":\n")
}

/// One formula per non-blank line; `#` starts a comment.
pub fn parse_corpus(text: &str) -> Result<Vec<Formula>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse(line).map_err(|e| match e {
            Error::Syntax { col, msg, .. } => Error::Syntax {
                line: i + 1,
                col,
                msg,
            },
            other => other,
        })?);
    }
    Ok(out)
}
