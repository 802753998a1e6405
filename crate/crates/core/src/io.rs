//! JSON interchange format.
//!
//! ```json
//! {"kind": "imdp", "states": ["t", "u"], "initial": "t", "actions": ["a"],
//!  "ap": ["goal"], "labels": {"u": ["goal"]},
//!  "transitions": [{"from": "t", "action": "a", "to": "u", "lo": "1/10", "hi": "0.3"}]}
//! ```
//!
//! PAs use `"kind": "pa"`, no `actions`, and transitions of the form
//! `{"from": "t", "dist": {"u": "1/2", "t": "1/2"}}`. Probabilities may be
//! integers, JSON decimals, or strings holding an integer, a decimal or
//! `p/q`; all are read exactly. Output is canonical: keys sorted, every
//! state listed under `labels`, probabilities always written as `"p/q"`,
//! so serialize → parse → serialize is byte-identical.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{AnyModel, Distribution, Imdp, Interval, Model, Pa, Row, StateId, StateSpace};
use crate::rational::{self, Rational};

fn err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| err(format!("missing field `{key}`")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| err(format!("{what} must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| err(format!("{what} must be an array")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| err(format!("{what} must be an object")))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    as_array(v, what)?
        .iter()
        .map(|x| as_str(x, what).map(str::to_string))
        .collect()
}

/// Exact value of a JSON number or numeric string. JSON floats are read
/// through their shortest decimal form, so `0.3` is `3/10`.
pub fn parse_number(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) => rational::parse(&n.to_string()),
        other => Err(err(format!("expected a number, got {other}"))),
    }
}

fn fraction(r: &Rational) -> Value {
    Value::String(rational::format_fraction(r))
}

/// Names, initial state, propositions and labels of either kind.
fn parse_space(obj: &Map<String, Value>) -> Result<StateSpace> {
    let names = strings(field(obj, "states")?, "states")?;
    let index = name_index(&names);
    let initial_name = as_str(field(obj, "initial")?, "initial")?;
    let initial = *index
        .get(initial_name)
        .ok_or_else(|| Error::UnknownState(initial_name.to_string()))?;
    let mut labels = vec![BTreeSet::new(); names.len()];
    if let Some(l) = obj.get("labels") {
        for (state, props) in as_object(l, "labels")? {
            let s = *index
                .get(state.as_str())
                .ok_or_else(|| Error::UnknownState(state.clone()))?;
            labels[s] = strings(props, "label")?.into_iter().collect();
        }
    }
    let props: BTreeSet<String> = match obj.get("ap") {
        Some(ap) => strings(ap, "ap")?.into_iter().collect(),
        None => labels.iter().flatten().cloned().collect(),
    };
    StateSpace::new(names, initial, props, labels)
}

fn lookup(names: &BTreeMap<&str, StateId>, name: &str) -> Result<StateId> {
    names
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownState(name.to_string()))
}

fn name_index(names: &[String]) -> BTreeMap<&str, StateId> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect()
}

fn parse_imdp_object(obj: &Map<String, Value>) -> Result<Imdp> {
    let space = parse_space(obj)?;
    let names = space.names().to_vec();
    let index = name_index(&names);
    let declared = obj
        .get("actions")
        .map(|a| strings(a, "actions"))
        .transpose()?;
    let mut actions: Vec<String> = declared.clone().unwrap_or_default();
    let mut rows: BTreeMap<(StateId, usize), Row> = BTreeMap::new();
    for t in as_array(field(obj, "transitions")?, "transitions")? {
        let t = as_object(t, "transition")?;
        let from = lookup(&index, as_str(field(t, "from")?, "from")?)?;
        let to = lookup(&index, as_str(field(t, "to")?, "to")?)?;
        let action = as_str(field(t, "action")?, "action")?;
        let a = match actions.iter().position(|x| x == action) {
            Some(a) => a,
            None if declared.is_none() => {
                actions.push(action.to_string());
                actions.len() - 1
            }
            None => return Err(err(format!("undeclared action `{action}`"))),
        };
        let iv = Interval::new(
            parse_number(field(t, "lo")?)?,
            parse_number(field(t, "hi")?)?,
        )?;
        if rows.entry((from, a)).or_default().insert(to, iv).is_some() {
            return Err(err(format!(
                "duplicate transition {} -{action}-> {}",
                names[from], names[to]
            )));
        }
    }
    Imdp::from_parts(space, actions, rows)
}

fn parse_pa_object(obj: &Map<String, Value>) -> Result<Pa> {
    let space = parse_space(obj)?;
    let names = space.names().to_vec();
    let index = name_index(&names);
    let mut trans = vec![BTreeSet::new(); space.len()];
    for t in as_array(field(obj, "transitions")?, "transitions")? {
        let t = as_object(t, "transition")?;
        let from = lookup(&index, as_str(field(t, "from")?, "from")?)?;
        let entries = as_object(field(t, "dist")?, "dist")?
            .iter()
            .map(|(to, p)| Ok((lookup(&index, to)?, parse_number(p)?)))
            .collect::<Result<Vec<_>>>()?;
        trans[from].insert(Distribution::new(entries)?);
    }
    Pa::from_parts(space, trans)
}

/// Parses either model kind. The result is not validated; see
/// [`Model::validate`].
pub fn parse_model(text: &str) -> Result<AnyModel> {
    let v: Value = serde_json::from_str(text).map_err(|e| err(format!("malformed JSON: {e}")))?;
    let obj = as_object(&v, "model")?;
    match as_str(field(obj, "kind")?, "kind")? {
        "imdp" => Ok(AnyModel::Imdp(parse_imdp_object(obj)?)),
        "pa" => Ok(AnyModel::Pa(parse_pa_object(obj)?)),
        other => Err(err(format!("unknown kind `{other}`"))),
    }
}

pub fn parse_imdp(text: &str) -> Result<Imdp> {
    match parse_model(text)? {
        AnyModel::Imdp(m) => Ok(m),
        AnyModel::Pa(_) => Err(err("expected an imdp, got a pa")),
    }
}

pub fn parse_pa(text: &str) -> Result<Pa> {
    match parse_model(text)? {
        AnyModel::Pa(a) => Ok(a),
        AnyModel::Imdp(_) => Err(err("expected a pa, got an imdp")),
    }
}

fn header(m: &impl Model, kind: &str) -> Map<String, Value> {
    let labels: Map<String, Value> = (0..m.num_states())
        .map(|s| (m.state_name(s).to_string(), json!(m.label(s))))
        .collect();
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(kind));
    obj.insert("states".into(), json!(m.state_names()));
    obj.insert("initial".into(), json!(m.state_name(m.initial())));
    obj.insert("ap".into(), json!(m.atomic_props()));
    obj.insert("labels".into(), Value::Object(labels));
    obj
}

pub fn imdp_to_json(m: &Imdp) -> Value {
    let mut obj = header(m, "imdp");
    obj.insert("actions".into(), json!(m.actions()));
    let transitions: Vec<Value> = m
        .rows()
        .flat_map(|((s, a), row)| {
            row.iter().map(move |(&t, iv)| {
                json!({
                    "from": m.state_name(s),
                    "action": m.action_name(a),
                    "to": m.state_name(t),
                    "lo": fraction(iv.lo()),
                    "hi": fraction(iv.hi()),
                })
            })
        })
        .collect();
    obj.insert("transitions".into(), Value::Array(transitions));
    Value::Object(obj)
}

/// Distribution as `{state name: "p/q"}`.
pub fn distribution_to_json(m: &impl Model, d: &Distribution) -> Value {
    Value::Object(
        d.iter()
            .map(|(&t, p)| (m.state_name(t).to_string(), fraction(p)))
            .collect(),
    )
}

pub fn pa_to_json(a: &Pa) -> Value {
    let mut obj = header(a, "pa");
    let transitions: Vec<Value> = (0..a.num_states())
        .flat_map(|s| {
            a.transitions(s)
                .iter()
                .map(move |d| json!({"from": a.state_name(s), "dist": distribution_to_json(a, d)}))
        })
        .collect();
    obj.insert("transitions".into(), Value::Array(transitions));
    Value::Object(obj)
}

pub fn model_to_json(m: &AnyModel) -> Value {
    match m {
        AnyModel::Imdp(m) => imdp_to_json(m),
        AnyModel::Pa(a) => pa_to_json(a),
    }
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn serialize_model(m: &AnyModel) -> String {
    to_canonical_string(&model_to_json(m))
}
