//! JSON hexapod description. Rationals travel as strings `"p/q"`; plain JSON
//! numbers are accepted on input and read exactly from their decimal text.

use exactalg::{parse_rat, Rat};
use hexapod::fixtures::{special_legs, tuple_a, tuple_b};
use hexapod::{Point, SixTuple};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    base: Vec<Vec<Value>>,
    #[serde(default)]
    platform: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    gamma: Option<Value>,
    #[serde(default)]
    legs_squared: Option<Vec<Value>>,
}

#[derive(Clone, Debug)]
pub struct Input {
    pub base: SixTuple,
    pub platform: Option<SixTuple>,
    pub gamma: Option<Rat>,
    pub legs2: Option<[Rat; 6]>,
}

/// Exact output form, read back by [`parse`].
#[derive(Debug, Serialize)]
pub struct HexapodJson {
    pub base: Vec<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub platform: Option<Vec<[String; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub legs_squared: Option<Vec<String>>,
}

fn rat(v: &Value) -> Result<Rat, String> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|_| format!("malformed rational {s:?}")),
        Value::Number(n) => parse_rat(&n.to_string()).map_err(|_| format!("unsupported number {n}")),
        other => Err(format!("expected a rational, found {other}")),
    }
}

fn tuple(rows: &[Vec<Value>], what: &str) -> Result<SixTuple, String> {
    if rows.len() != 6 {
        return Err(format!("{what}: expected 6 points, found {}", rows.len()));
    }
    let pts = rows
        .iter()
        .map(|r| {
            if r.len() != 3 {
                return Err(format!("{what}: every point needs 3 coordinates"));
            }
            Ok([rat(&r[0])?, rat(&r[1])?, rat(&r[2])?])
        })
        .collect::<Result<Vec<Point>, String>>()?;
    SixTuple::new(pts).map_err(|e| format!("{what}: {e}"))
}

pub fn parse(text: &str) -> Result<Input, String> {
    let raw: RawInput = serde_json::from_str(text).map_err(|e| format!("bad JSON: {e}"))?;
    let base = tuple(&raw.base, "base")?;
    let platform = raw.platform.as_deref().map(|p| tuple(p, "platform")).transpose()?;
    let gamma = raw.gamma.as_ref().map(rat).transpose()?;
    if gamma.as_ref().is_some_and(|g| *g == 0) {
        return Err("gamma must be nonzero".into());
    }
    let legs2 = match raw.legs_squared {
        None => None,
        Some(v) if v.len() == 6 => {
            let d: Vec<Rat> = v.iter().map(rat).collect::<Result<_, _>>()?;
            Some(d.try_into().unwrap())
        }
        Some(v) => return Err(format!("legs_squared: expected 6 values, found {}", v.len())),
    };
    Ok(Input { base, platform, gamma, legs2 })
}

fn points(t: &SixTuple) -> Vec<[String; 3]> {
    t.points().iter().map(|p| p.clone().map(|x| x.to_string())).collect()
}

impl HexapodJson {
    pub fn new(base: &SixTuple, platform: Option<&SixTuple>, gamma: Option<&Rat>, legs2: Option<&[Rat; 6]>) -> Self {
        HexapodJson {
            base: points(base),
            platform: platform.map(points),
            gamma: gamma.map(Rat::to_string),
            legs_squared: legs2.map(|d| d.iter().map(Rat::to_string).collect()),
        }
    }
}

/// The worked example: tuple A, its liaison partner B, `γ = 1`, special legs.
pub fn bundled(name: &str) -> Result<Input, String> {
    let (a, b) = (tuple_a(), tuple_b());
    match name {
        "example" => Ok(Input { base: a, platform: Some(b), gamma: Some(Rat::from(1)), legs2: Some(special_legs()) }),
        "generic" => Ok(Input {
            base: a,
            platform: Some(b),
            gamma: Some(Rat::from(1)),
            legs2: Some(hexapod::fixtures::generic_legs()),
        }),
        "tuple-a" => Ok(Input { base: a, platform: None, gamma: None, legs2: None }),
        other => Err(format!("unknown fixture {other:?}; expected example, generic or tuple-a")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let inp = bundled("example").unwrap();
        let j = HexapodJson::new(&inp.base, inp.platform.as_ref(), inp.gamma.as_ref(), inp.legs2.as_ref());
        let back = parse(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back.base, inp.base);
        assert_eq!(back.platform, inp.platform);
        assert_eq!(back.legs2, inp.legs2);
    }

    #[test]
    fn numbers_are_exact() {
        let s = r#"{"base": [[0,0,0],[2,0,0],[3,2,0],[2,3,1],[1,2,2],[3,1,0.25]]}"#;
        let inp = parse(s).unwrap();
        assert_eq!(inp.base.get(5)[2], Rat::from((1, 4)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse(r#"{"base": [[0,0,0]]}"#).is_err());
        assert!(parse(r#"{"base": [[0,0,0],[0,0,0],[3,2,0],[2,3,1],[1,2,2],[3,1,3]]}"#).is_err());
        assert!(parse(r#"{"base": [[0,0,"x"],[2,0,0],[3,2,0],[2,3,1],[1,2,2],[3,1,3]]}"#).is_err());
    }
}
