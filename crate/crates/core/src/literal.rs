//! Field-element literals as written in configs and presets.
//!
//! * an integer `n`: the prime-field element `n mod p`;
//! * `"a/b"`: the prime-field quotient, so `"-1/3"` is an inverse in `F_p`;
//! * `"g"` or `"g^k"`: powers of the field's canonical primitive element;
//! * a list: coefficients over the immediate base field, constant term first,
//!   each itself a literal of the base.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
    Tuple(Vec<Literal>),
}

impl Literal {
    pub fn resolve(&self, field: &Field) -> Result<u64> {
        match self {
            Literal::Int(n) => Ok(field.from_int(*n)),
            Literal::Text(s) => parse_text(s.trim(), field),
            Literal::Tuple(items) => {
                let Some(base) = field.base() else {
                    return match items.as_slice() {
                        [one] => one.resolve(field),
                        _ => Err(Error::Parameter(format!(
                            "prime-field element written as a {}-tuple",
                            items.len()
                        ))),
                    };
                };
                if items.len() != field.degree() {
                    return Err(Error::Parameter(format!(
                        "expected {} coefficients over the base field, got {}",
                        field.degree(),
                        items.len()
                    )));
                }
                let digits = items
                    .iter()
                    .map(|l| l.resolve(base))
                    .collect::<Result<Vec<_>>>()?;
                Ok(field.from_digits(&digits))
            }
        }
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::Parameter(format!("cannot read {s:?} as an integer")))
}

fn parse_text(s: &str, field: &Field) -> Result<u64> {
    if s == "g" {
        return Ok(field.primitive());
    }
    if let Some(k) = s.strip_prefix("g^") {
        let k = parse_int(k)?;
        let n = field.size() as i64 - 1;
        return Ok(field.exp(k.rem_euclid(n) as u64));
    }
    if let Some((a, b)) = s.split_once('/') {
        let (a, b) = (parse_int(a)?, parse_int(b)?);
        let b = field.from_int(b);
        return field
            .div(field.from_int(a), b)
            .map_err(|_| Error::Parameter(format!("{s:?} divides by zero in F_{}", field.p())));
    }
    Ok(field.from_int(parse_int(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(Literal::Text("-1/3".into()).resolve(&f5).unwrap(), 3);
        assert_eq!(Literal::Text("-1/2".into()).resolve(&f5).unwrap(), 2);
        assert_eq!(Literal::Int(-1).resolve(&f5).unwrap(), 4);
        assert_eq!(Literal::Text("g^2".into()).resolve(&f5).unwrap(), 4);
        assert!(Literal::Text("1/0".into()).resolve(&f5).is_err());
        let f9 = Field::extension_of_degree(&Field::prime(3).unwrap(), 2).unwrap();
        let t = Literal::Tuple(vec![Literal::Int(1), Literal::Int(2)]);
        assert_eq!(t.resolve(&f9).unwrap(), 7);
        assert!(Literal::Tuple(vec![Literal::Int(1)]).resolve(&f9).is_err());
        assert_eq!(
            Literal::Text("g".into()).resolve(&f9).unwrap(),
            f9.primitive()
        );
    }
}
