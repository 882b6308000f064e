use serde_json::{Map, Value};

use super::{Derivation, DerivationError, StepRule};
use crate::json::to_spaced_string;
use crate::syntax::parse_multiset;
use crate::treeproof::{Justification, ProofError};

fn bad(msg: impl Into<String>) -> DerivationError {
    DerivationError::Format(msg.into())
}

pub(super) fn from_json(text: &str) -> Result<Derivation, DerivationError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let items = v.as_array().ok_or_else(|| bad("a derivation is a list of steps"))?;
    if items.is_empty() {
        return Err(bad("a derivation has at least one step"));
    }
    let mut d = Derivation { steps: vec![], rules: vec![] };
    for (i, item) in items.iter().enumerate() {
        let obj = item.as_object().ok_or_else(|| bad("each step is an object"))?;
        if let Some(k) = obj.keys().find(|k| !["multiset", "by"].contains(&k.as_str())) {
            return Err(bad(format!("unexpected key `{k}`")));
        }
        let text = obj.get("multiset").and_then(Value::as_str).ok_or_else(|| bad("missing `multiset`"))?;
        d.steps.push(parse_multiset(text)?);
        match (i, obj.get("by")) {
            (0, None) => {}
            (0, Some(_)) => return Err(bad("the first step carries no rule")),
            (_, None) => return Err(bad(format!("step {} has no rule", i + 1))),
            (_, Some(by)) => {
                let rule = match crate::treeproof::io_justification(by).map_err(|e| match e {
                    ProofError::Parse(p) => DerivationError::Parse(p),
                    e => bad(e.to_string()),
                })? {
                    Justification::Rule { name, subst } | Justification::Axiom { name, subst } => StepRule { name, subst },
                    Justification::Premise => return Err(bad("a step must name a rule")),
                };
                d.rules.push(rule);
            }
        }
    }
    Ok(d)
}

pub(super) fn to_json(d: &Derivation) -> String {
    let items = d
        .steps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut obj = Map::new();
            obj.insert("multiset".into(), Value::String(m.to_string()));
            if i > 0 {
                let r = &d.rules[i - 1];
                let by = Justification::Rule { name: r.name.clone(), subst: r.subst.clone() };
                obj.insert("by".into(), crate::treeproof::io_justification_value(&by));
            }
            Value::Object(obj)
        })
        .collect();
    to_spaced_string(&Value::Array(items))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = r#"[{"multiset": "[a, a -> b]"}, {"multiset": "[b]", "by": {"rule": "mp"}}]"#;

    #[test]
    fn bit_exact_round_trip() {
        let d = Derivation::from_json(TWO).unwrap();
        assert_eq!(d.steps.len(), 2);
        assert_eq!(d.to_json(), TWO);
    }

    #[test]
    fn axiom_spelling_is_accepted() {
        let text = r#"[{"multiset": "[a]"}, {"multiset": "[a, a -> a]", "by": {"axiom": "I"}}]"#;
        let d = Derivation::from_json(text).unwrap();
        assert_eq!(&*d.rules[0].name, "I");
    }

    #[test]
    fn rejects_malformed() {
        assert!(Derivation::from_json("[]").is_err());
        assert!(Derivation::from_json(r#"[{"multiset": "[a]", "by": {"rule": "mp"}}]"#).is_err());
        assert!(Derivation::from_json(r#"[{"multiset": "[a]"}, {"multiset": "[b]"}]"#).is_err());
        assert!(Derivation::from_json(r#"[{"multiset": "[a ->"}]"#).is_err());
    }
}
