use serde_json::{Map, Value};

use super::{Justification, ProofError, ProofTree};
use crate::json::to_spaced_string;
use crate::syntax::{parse_formula, Assignment, Name};

pub(super) fn from_json(text: &str) -> Result<ProofTree, ProofError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ProofError::Format(e.to_string()))?;
    node(&v)
}

fn bad(msg: impl Into<String>) -> ProofError {
    ProofError::Format(msg.into())
}

fn node(v: &Value) -> Result<ProofTree, ProofError> {
    let obj = v.as_object().ok_or_else(|| bad("node must be an object"))?;
    if let Some(k) = obj.keys().find(|k| !["formula", "by", "children"].contains(&k.as_str())) {
        return Err(bad(format!("unexpected key `{k}`")));
    }
    let text = obj.get("formula").and_then(Value::as_str).ok_or_else(|| bad("missing `formula`"))?;
    let formula = parse_formula(text)?;
    let by = justification(obj.get("by").ok_or_else(|| bad("missing `by`"))?)?;
    let children = match obj.get("children") {
        None => vec![],
        Some(Value::Array(items)) => items.iter().map(node).collect::<Result<_, _>>()?,
        Some(_) => return Err(bad("`children` must be a list")),
    };
    Ok(ProofTree { formula, by, children })
}

pub(crate) fn justification(v: &Value) -> Result<Justification, ProofError> {
    if v.as_str() == Some("premise") {
        return Ok(Justification::Premise);
    }
    let obj = v.as_object().ok_or_else(|| bad("`by` must be \"premise\" or an object"))?;
    let subst = obj.get("subst").map(assignment).transpose()?;
    if let Some(k) = obj.keys().find(|k| !["axiom", "rule", "subst"].contains(&k.as_str())) {
        return Err(bad(format!("unexpected key `{k}` in `by`")));
    }
    let name = |key: &str| obj.get(key).and_then(Value::as_str).map(Name::from);
    match (name("axiom"), name("rule")) {
        (Some(name), None) => Ok(Justification::Axiom { name, subst }),
        (None, Some(name)) => Ok(Justification::Rule { name, subst }),
        _ => Err(bad("`by` needs exactly one of `axiom` or `rule`")),
    }
}

fn assignment(v: &Value) -> Result<Assignment, ProofError> {
    let obj = v.as_object().ok_or_else(|| bad("`subst` must be an object"))?;
    obj.iter()
        .map(|(k, f)| {
            let text = f.as_str().ok_or_else(|| bad("`subst` values must be formula strings"))?;
            Ok((Name::from(k.as_str()), parse_formula(text)?))
        })
        .collect()
}

pub(crate) fn justification_value(by: &Justification) -> Value {
    let (key, name, subst) = match by {
        Justification::Premise => return Value::String("premise".into()),
        Justification::Axiom { name, subst } => ("axiom", name, subst),
        Justification::Rule { name, subst } => ("rule", name, subst),
    };
    let mut obj = Map::new();
    obj.insert(key.into(), Value::String(name.to_string()));
    if let Some(sigma) = subst {
        let m = sigma.iter().map(|(k, f)| (k.to_string(), Value::String(f.to_string()))).collect();
        obj.insert("subst".into(), Value::Object(m));
    }
    Value::Object(obj)
}

fn value(t: &ProofTree) -> Value {
    let mut obj = Map::new();
    obj.insert("formula".into(), Value::String(t.formula.to_string()));
    obj.insert("by".into(), justification_value(&t.by));
    if !t.children.is_empty() {
        obj.insert("children".into(), Value::Array(t.children.iter().map(value).collect()));
    }
    Value::Object(obj)
}

pub(super) fn to_json(t: &ProofTree) -> String {
    to_spaced_string(&value(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MP: &str = r#"{"formula": "q", "by": {"rule": "mp"}, "children": [{"formula": "p -> q", "by": "premise"}, {"formula": "p", "by": "premise"}]}"#;

    #[test]
    fn bit_exact_round_trip() {
        let t = ProofTree::from_json(MP).unwrap();
        assert_eq!(t.children.len(), 2);
        assert_eq!(t.to_json(), MP);
    }

    #[test]
    fn stored_substitution_round_trips() {
        let text = r#"{"formula": "a -> a", "by": {"axiom": "I", "subst": {"p": "a"}}}"#;
        let t = ProofTree::from_json(text).unwrap();
        assert!(matches!(&t.by, Justification::Axiom { subst: Some(s), .. } if s.len() == 1));
        assert_eq!(t.to_json(), text);
    }

    #[test]
    fn rejects_malformed() {
        assert!(ProofTree::from_json(r#"{"formula": "p"}"#).is_err());
        assert!(ProofTree::from_json(r#"{"formula": "p", "by": "magic"}"#).is_err());
        assert!(ProofTree::from_json(r#"{"formula": "p ->", "by": "premise"}"#).is_err());
        assert!(ProofTree::from_json(r#"{"formula": "p", "by": {"axiom": "I", "rule": "mp"}}"#).is_err());
    }
}
