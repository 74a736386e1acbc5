//! Rational functions and rational maps. No canonical form is maintained;
//! equality is by cross-multiplication, which is all the transition audits
//! need. Common monomial content is stripped on construction to keep
//! composition degrees in check.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{MPoly, PolyMap, Rat};

#[derive(Debug, Clone)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInput("rational function denominator".into()));
        }
        let mut rf = RatFunc { num, den };
        rf.strip_content();
        Ok(rf)
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one_owned(p.vars());
        RatFunc { num: p, den }
    }

    pub fn constant(vars: &[String], c: Rat) -> Self {
        Self::from_poly(MPoly::constant_owned(vars, c))
    }

    pub fn var(vars: &[String], name: &str) -> Self {
        Self::from_poly(MPoly::var_owned(vars, name))
    }

    fn strip_content(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::one_owned(self.den.vars());
            return;
        }
        let cn = self.num.content_monomial();
        let cd = self.den.content_monomial();
        let shared = crate::poly::Expo(
            cn.0.iter().zip(&cd.0).map(|(a, b)| *a.min(b)).collect(),
        );
        if shared.total() > 0 {
            self.num = self.num.divide_monomial(&shared);
            self.den = self.den.divide_monomial(&shared);
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &[String] {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        // Cheap syntactic test: exact division of num by den.
        if self.num.is_zero() {
            return true;
        }
        match self.num.div_exact(&self.den) {
            Ok(q) => q.is_constant(),
            Err(_) => false,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFunc::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominators multiply to nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators multiply to nonzero")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::ZeroInput("division by zero rational function".into()));
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroInput("reciprocal of zero".into()));
        }
        Ok(RatFunc {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(RatFunc {
                num: self.num.pow(k as u32),
                den: self.den.pow(k as u32),
            })
        } else {
            self.recip().map(|r| RatFunc {
                num: r.num.pow((-k) as u32),
                den: r.den.pow((-k) as u32),
            })
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map_or(false, |c| c == Rat::from_integer(1.into())) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Map whose component images are rational functions; used for chart
/// transitions and their compositions.
#[derive(Debug, Clone)]
pub struct RatMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub images: Vec<RatFunc>,
}

impl RatMap {
    pub fn new(source: &[String], target: &[String], images: Vec<RatFunc>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::VariableMismatch(format!(
                "{} source variables but {} images",
                source.len(),
                images.len()
            )));
        }
        Ok(RatMap {
            source: source.to_vec(),
            target: target.to_vec(),
            images,
        })
    }

    pub fn from_poly_map(m: &PolyMap) -> Self {
        RatMap {
            source: m.source.clone(),
            target: m.target.clone(),
            images: m.images.iter().cloned().map(RatFunc::from_poly).collect(),
        }
    }

    pub fn substitute_poly(&self, f: &MPoly) -> Result<RatFunc> {
        if f.vars() != self.source.as_slice() {
            return Err(Error::VariableMismatch(format!(
                "polynomial over {:?} but map source is {:?}",
                f.vars(),
                self.source
            )));
        }
        let mut acc = RatFunc::constant(&self.target, Rat::from_integer(0.into()));
        for (e, c) in f.terms() {
            let mut t = RatFunc::constant(&self.target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&self.images[i].pow(k as i64).unwrap());
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn substitute(&self, rf: &RatFunc) -> Result<RatFunc> {
        let num = self.substitute_poly(rf.num())?;
        let den = self.substitute_poly(rf.den())?;
        if den.is_zero() {
            return Err(Error::ZeroInput(
                "denominator collapses to zero under the map".into(),
            ));
        }
        num.div(&den)
    }

    /// `self` after `inner`: maps `inner.source` to `self.target`.
    pub fn compose(&self, inner: &RatMap) -> Result<RatMap> {
        if inner.target != self.source {
            return Err(Error::VariableMismatch(
                "rational map composition: variable lists do not line up".into(),
            ));
        }
        let images = inner
            .images
            .iter()
            .map(|img| self.substitute(img))
            .collect::<Result<Vec<_>>>()?;
        RatMap::new(&inner.source, &self.target, images)
    }
}

impl PartialEq for RatMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.images == other.images
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn v(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cross_multiplication_equality() {
        let vars = ["x", "y"];
        let a = RatFunc::new(
            parse_poly("x^2 - y^2", &vars).unwrap(),
            parse_poly("x - y", &vars).unwrap(),
        )
        .unwrap();
        let b = RatFunc::from_poly(parse_poly("x + y", &vars).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn composition() {
        // t(x) = 1/x composed with itself is the identity.
        let vars = v(&["x"]);
        let inv = RatMap::new(
            &vars,
            &vars,
            vec![RatFunc::new(
                parse_poly("1", &["x"]).unwrap(),
                parse_poly("x", &["x"]).unwrap(),
            )
            .unwrap()],
        )
        .unwrap();
        let id = inv.compose(&inv).unwrap();
        assert_eq!(id.images[0], RatFunc::var(&vars, "x"));
    }
}
