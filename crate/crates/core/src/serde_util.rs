//! Serde adapters: rationals as `p/q` strings, polynomials in their
//! graded-lex text form.

pub mod rational {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::rational::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub mod rational_pair {
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
        [r.0.to_string(), r.1.to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(Rational, Rational), D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        Ok((
            parse_rational(&a).map_err(D::Error::custom)?,
            parse_rational(&b).map_err(D::Error::custom)?,
        ))
    }
}

pub mod rational_matrix {
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(m: &[[Rational; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
        let rows: [[String; 2]; 2] = [
            [m[0][0].to_string(), m[0][1].to_string()],
            [m[1][0].to_string(), m[1][1].to_string()],
        ];
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[[Rational; 2]; 2], D::Error> {
        let rows = <[[String; 2]; 2]>::deserialize(d)?;
        let p = |s: &String| parse_rational(s).map_err(D::Error::custom);
        Ok([
            [p(&rows[0][0])?, p(&rows[0][1])?],
            [p(&rows[1][0])?, p(&rows[1][1])?],
        ])
    }
}

pub mod poly {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::poly::Poly2;

    pub fn serialize<S: Serializer>(p: &Poly2, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(p)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Poly2, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
