//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! `MPoly` is the coefficient ring for everything else in the crate: terms
//! are stored in a `BTreeMap` keyed by exponent vector under graded-lex
//! order, so iteration (and therefore printing) is canonical. No zero
//! coefficient is ever stored.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for every coefficient in the crate.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p` or `p/q` into a rational.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| Error::Syntax {
        pos: 0,
        message: format!("invalid rational literal `{s}`"),
    })?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| Error::Syntax {
            pos: 0,
            message: format!("invalid rational literal `{s}`"),
        })?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Syntax {
            pos: 0,
            message: format!("zero denominator in `{s}`"),
        });
    }
    Ok(Rat::new(n, d))
}

/// Exponent vector of a monomial; ordered graded-lex (total degree first,
/// then earlier variables weigh more).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expo(pub Vec<u32>);

impl Expo {
    pub fn zero(n: usize) -> Self {
        Expo(vec![0; n])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Expo) -> Expo {
        Expo(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Component-wise divisibility.
    pub fn divides(&self, other: &Expo) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Expo) -> Expo {
        Expo(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over an ordered variable list.
#[derive(Debug, Clone)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Expo, Rat>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_owned(vars: &[String]) -> Self {
        MPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Expo::zero(p.vars.len()), c);
        }
        p
    }

    pub fn constant_owned(vars: &[String], c: Rat) -> Self {
        let mut p = Self::zero_owned(vars);
        if !c.is_zero() {
            p.terms.insert(Expo::zero(p.vars.len()), c);
        }
        p
    }

    pub fn one_owned(vars: &[String]) -> Self {
        Self::constant_owned(vars, Rat::one())
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let owned: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::var_owned(&owned, name)
    }

    pub fn var_owned(vars: &[String], name: &str) -> Self {
        let mut p = Self::zero_owned(vars);
        let i = p
            .var_index(name)
            .unwrap_or_else(|| panic!("variable `{name}` not in {:?}", p.vars));
        let mut e = Expo::zero(p.vars.len());
        e.0[i] = 1;
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Expo, Rat)>) -> Self {
        let mut p = Self::zero_owned(vars);
        for (e, c) in terms {
            debug_assert_eq!(e.0.len(), p.vars.len());
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.total() == 0)
    }

    /// Nonzero constant term, if the polynomial is exactly a constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.total() == 0 {
                return Some(c.clone());
            }
        }
        None
    }

    fn add_term(&mut self, e: Expo, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_vars(&self, other: &MPoly) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial variable lists differ; align explicitly first"
        );
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.assert_same_vars(other);
        let mut out = Self::zero_owned(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return Self::zero_owned(&self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = Self::one_owned(&self.vars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to `name`.
    pub fn derivative(&self, name: &str) -> MPoly {
        let i = self
            .var_index(name)
            .unwrap_or_else(|| panic!("variable `{name}` not in {:?}", self.vars));
        let mut out = Self::zero_owned(&self.vars);
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[i] -= 1;
            out.add_term(ne, c * Rat::from_integer(BigInt::from(e.0[i])));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                for _ in 0..k {
                    t = &t * &point[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute `name = 0` and drop the variable from the list.
    pub fn restrict_var_zero(&self, name: &str) -> MPoly {
        let i = self
            .var_index(name)
            .unwrap_or_else(|| panic!("variable `{name}` not in {:?}", self.vars));
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let mut out = Self::zero_owned(&vars);
        for (e, c) in &self.terms {
            if e.0[i] != 0 {
                continue;
            }
            let ne: Vec<u32> = e
                .0
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &k)| k)
                .collect();
            out.add_term(Expo(ne), c.clone());
        }
        out
    }

    /// Rename a variable in place (the exponent layout is unchanged).
    pub fn rename_var(&self, old: &str, new: &str) -> MPoly {
        let i = self
            .var_index(old)
            .unwrap_or_else(|| panic!("variable `{old}` not in {:?}", self.vars));
        let mut out = self.clone();
        out.vars[i] = new.to_string();
        out
    }

    /// Re-express over `vars`, which must contain every variable actually
    /// used by `self`.
    pub fn aligned_to(&self, vars: &[String]) -> Result<MPoly> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(j),
                None => {
                    if self.deg_in(i) > 0 {
                        return Err(Error::VariableMismatch(format!(
                            "variable `{v}` not present in target list {vars:?}"
                        )));
                    }
                    map.push(usize::MAX);
                }
            }
        }
        let mut out = Self::zero_owned(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; vars.len()];
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    ne[map[i]] = k;
                }
            }
            out.add_term(Expo(ne), c.clone());
        }
        Ok(out)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total()).max()
    }

    fn deg_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.deg_in(i),
            None => 0,
        }
    }

    /// `Some(d)` when every term has total degree `d` (zero counts as
    /// homogeneous of any degree and returns `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.total();
        it.all(|e| e.total() == first).then_some(first)
    }

    /// Minimal total degree in the variables `y_set` over all terms;
    /// `None` encodes infinity (zero polynomial).
    pub fn generic_order(&self, y_set: &[String]) -> Option<u32> {
        let idx: Vec<usize> = y_set
            .iter()
            .filter_map(|v| self.var_index(v))
            .collect();
        self.terms
            .keys()
            .map(|e| idx.iter().map(|&i| e.0[i]).sum())
            .min()
    }

    /// Exact quotient by `name^k`; errors on the first offending term.
    pub fn divide_by_var_power(&self, name: &str, k: u32) -> Result<MPoly> {
        if k == 0 {
            return Ok(self.clone());
        }
        let i = self.var_index(name).ok_or_else(|| {
            Error::VariableMismatch(format!("variable `{name}` not in {:?}", self.vars))
        })?;
        let mut out = Self::zero_owned(&self.vars);
        for (e, c) in &self.terms {
            if e.0[i] < k {
                return Err(Error::NotDivisible {
                    var: name.to_string(),
                    power: k,
                    term: term_to_string(&self.vars, e, c),
                });
            }
            let mut ne = e.clone();
            ne.0[i] -= k;
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Largest `k` with `name^k` dividing every term (0 for the zero
    /// polynomial).
    pub fn max_var_power(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|e| e.0[i]).min().unwrap_or(0),
            None => 0,
        }
    }

    /// Component-wise minimum exponent vector over all terms.
    pub fn content_monomial(&self) -> Expo {
        let mut acc: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            match &mut acc {
                None => acc = Some(e.0.clone()),
                Some(m) => {
                    for (a, b) in m.iter_mut().zip(&e.0) {
                        *a = (*a).min(*b);
                    }
                }
            }
        }
        Expo(acc.unwrap_or_else(|| vec![0; self.vars.len()]))
    }

    pub fn divide_monomial(&self, m: &Expo) -> MPoly {
        let mut out = Self::zero_owned(&self.vars);
        for (e, c) in &self.terms {
            debug_assert!(m.divides(e));
            out.add_term(e.div(m), c.clone());
        }
        out
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<(&Expo, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division; errors when `self` is not a multiple of `g`.
    pub fn div_exact(&self, g: &MPoly) -> Result<MPoly> {
        self.assert_same_vars(g);
        if g.is_zero() {
            return Err(Error::ZeroInput("division by zero polynomial".into()));
        }
        let (lt_e, lt_c) = g.leading().unwrap();
        let lt_e = lt_e.clone();
        let lt_c = lt_c.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero_owned(&self.vars);
        while let Some((re, rc)) = rem.leading() {
            if !lt_e.divides(re) {
                return Err(Error::InexactDivision(format!(
                    "`{g}` does not divide `{self}`"
                )));
            }
            let qe = re.div(&lt_e);
            let qc = rc / &lt_c;
            let mut mono = Self::zero_owned(&self.vars);
            mono.add_term(qe.clone(), qc.clone());
            rem = rem.sub(&mono.mul(g));
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Substitute each variable by its image under `m`.
    pub fn substitute(&self, m: &PolyMap) -> Result<MPoly> {
        if self.vars != m.source {
            return Err(Error::VariableMismatch(format!(
                "polynomial over {:?} but map source is {:?}",
                self.vars, m.source
            )));
        }
        let mut out = MPoly::zero_owned(&m.target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant_owned(&m.target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&m.images[i].pow(k));
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        // Align over the union of the variable lists.
        let mut union = self.vars.clone();
        for v in &other.vars {
            if !union.contains(v) {
                union.push(v.clone());
            }
        }
        match (self.aligned_to(&union), other.aligned_to(&union)) {
            (Ok(a), Ok(b)) => a.terms == b.terms,
            _ => false,
        }
    }
}

impl Eq for MPoly {}

fn rat_is_one(c: &Rat) -> bool {
    c.is_one()
}

fn monomial_to_string(vars: &[String], e: &Expo) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.0.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], k)),
        }
    }
    parts.join("*")
}

fn term_to_string(vars: &[String], e: &Expo, c: &Rat) -> String {
    let mono = monomial_to_string(vars, e);
    if mono.is_empty() {
        format!("{c}")
    } else if rat_is_one(c) {
        mono
    } else if rat_is_one(&-c.clone()) {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

impl fmt::Display for MPoly {
    /// Canonical printing: graded-lex descending, byte-stable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if first {
                write!(f, "{}", term_to_string(&self.vars, e, c))?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", term_to_string(&self.vars, e, &-c.clone()))?;
            } else {
                write!(f, " + {}", term_to_string(&self.vars, e, c))?;
            }
        }
        Ok(())
    }
}

/// Polynomial map between coordinate charts: one image per source variable.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub images: Vec<MPoly>,
}

impl PolyMap {
    pub fn new(source: &[String], target: &[String], images: Vec<MPoly>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::VariableMismatch(format!(
                "{} source variables but {} images",
                source.len(),
                images.len()
            )));
        }
        for img in &images {
            if img.vars() != target {
                return Err(Error::VariableMismatch(format!(
                    "image `{img}` is over {:?}, expected {:?}",
                    img.vars(),
                    target
                )));
            }
        }
        Ok(PolyMap {
            source: source.to_vec(),
            target: target.to_vec(),
            images,
        })
    }

    pub fn identity(vars: &[String]) -> Self {
        PolyMap {
            source: vars.to_vec(),
            target: vars.to_vec(),
            images: vars.iter().map(|v| MPoly::var_owned(vars, v)).collect(),
        }
    }

    pub fn image_of(&self, name: &str) -> Option<&MPoly> {
        let i = self.source.iter().position(|v| v == name)?;
        Some(&self.images[i])
    }

    /// `self` after `inner`: maps `inner.source` to `self.target`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if inner.target != self.source {
            return Err(Error::VariableMismatch(
                "map composition: chart variable lists do not line up".into(),
            ));
        }
        let images = inner
            .images
            .iter()
            .map(|img| img.substitute(self))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(&inner.source, &self.target, images)
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().unwrap();
                toks.push((start, Tok::Int(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Var(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    vars: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<&(usize, Tok)> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let pos = self.here();
            match self.next() {
                Some((_, Tok::Int(n))) => {
                    let k = u32::try_from(n.clone()).map_err(|_| Error::Syntax {
                        pos,
                        message: "exponent too large".into(),
                    })?;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Syntax {
                    pos,
                    message: "`^` must be followed by a non-negative integer literal".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<MPoly> {
        let pos = self.here();
        match self.next().cloned() {
            Some((_, Tok::Int(n))) => {
                // Optional `/ q` forms a rational literal.
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.pos += 1;
                    let dpos = self.here();
                    match self.next().cloned() {
                        Some((_, Tok::Int(d))) => {
                            if d.is_zero() {
                                return Err(Error::Syntax {
                                    pos: dpos,
                                    message: "zero denominator".into(),
                                });
                            }
                            Ok(MPoly::constant_owned(
                                &self.vars.to_vec(),
                                Rat::new(n, d),
                            ))
                        }
                        _ => Err(Error::Syntax {
                            pos: dpos,
                            message: "`/` must sit between integer literals".into(),
                        }),
                    }
                } else {
                    Ok(MPoly::constant_owned(
                        &self.vars.to_vec(),
                        Rat::from_integer(n),
                    ))
                }
            }
            Some((vpos, Tok::Var(name))) => {
                if self.vars.iter().any(|v| *v == name) {
                    Ok(MPoly::var_owned(&self.vars.to_vec(), &name))
                } else {
                    Err(Error::UnknownVariable { name, pos: vpos })
                }
            }
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    _ => Err(Error::Syntax {
                        pos: self.here(),
                        message: "expected `)`".into(),
                    }),
                }
            }
            _ => Err(Error::Syntax {
                pos,
                message: "expected a literal, variable or `(`".into(),
            }),
        }
    }
}

/// Parse a polynomial in the ASCII grammar over the given variable list.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MPoly> {
    let owned: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    parse_poly_owned(text, &owned)
}

pub fn parse_poly_owned(text: &str, vars: &[String]) -> Result<MPoly> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars,
        end: text.len(),
    };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Syntax {
            pos: p.here(),
            message: "trailing input".into(),
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Vec<&'static str> {
        vec!["x", "y", "z"]
    }

    #[test]
    fn parse_two_terms() {
        let p = parse_poly("y^2 + x*z^3", &xyz()).unwrap();
        assert_eq!(p.n_terms(), 2);
        assert_eq!(p.to_string(), "x*z^3 + y^2");
    }

    #[test]
    fn parse_zero_literal() {
        let p = parse_poly("0", &xyz()).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn parse_cancellation() {
        let p = parse_poly("3/2*x - 3/2*x", &xyz()).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_poly("y^2 + w", &xyz()),
            Err(Error::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_poly("x/2", &xyz()),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x^1/2", &xyz()),
            Err(Error::Syntax { .. })
        ));
        let err = parse_poly("x + @", &xyz()).unwrap_err();
        match err {
            Error::Syntax { pos, .. } => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn substitute_monomial_map() {
        let vars: Vec<String> = xyz().iter().map(|s| s.to_string()).collect();
        let f = parse_poly("z^3", &xyz()).unwrap();
        let m = PolyMap::new(
            &vars,
            &vars,
            vec![
                MPoly::var_owned(&vars, "x"),
                MPoly::var_owned(&vars, "y"),
                parse_poly("y*z", &xyz()).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(f.substitute(&m).unwrap(), parse_poly("y^3*z^3", &xyz()).unwrap());

        let g = parse_poly("y^2 + x*z^3", &xyz()).unwrap();
        let id = PolyMap::identity(&vars);
        assert_eq!(g.substitute(&id).unwrap(), g);

        let h = parse_poly("y^2 - x*z^2", &xyz()).unwrap();
        assert_eq!(
            h.substitute(&m).unwrap(),
            parse_poly("y^2 - x*y^2*z^2", &xyz()).unwrap()
        );
    }

    #[test]
    fn generic_order_examples() {
        let yz = vec!["y".to_string(), "z".to_string()];
        let f = parse_poly("y^2 + x*z^3", &xyz()).unwrap();
        assert_eq!(f.generic_order(&yz), Some(2));
        let g = parse_poly("x", &xyz()).unwrap();
        assert_eq!(g.generic_order(&yz), Some(0));
        let z = parse_poly("0", &xyz()).unwrap();
        assert_eq!(z.generic_order(&yz), None);
    }

    #[test]
    fn divide_by_var_power_examples() {
        let f = parse_poly("y^2*x + y^3", &xyz()).unwrap();
        assert_eq!(
            f.divide_by_var_power("y", 2).unwrap(),
            parse_poly("x + y", &xyz()).unwrap()
        );
        let g = parse_poly("-x^2", &xyz()).unwrap();
        assert_eq!(
            g.divide_by_var_power("x", 2).unwrap(),
            parse_poly("-1", &xyz()).unwrap()
        );
        let h = parse_poly("x + y", &xyz()).unwrap();
        assert!(matches!(
            h.divide_by_var_power("y", 1),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn div_exact_roundtrip() {
        let f = parse_poly("x^2 - y^2", &xyz()).unwrap();
        let g = parse_poly("x - y", &xyz()).unwrap();
        let q = f.div_exact(&g).unwrap();
        assert_eq!(q, parse_poly("x + y", &xyz()).unwrap());
        let bad = parse_poly("x^2 + y", &xyz()).unwrap();
        assert!(bad.div_exact(&g).is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "x*z^3 + y^2",
            "-x + y - 1/2",
            "3/2*x^2*y - z + 5",
            "0",
            "-x^2*y*z",
        ] {
            let p = parse_poly(s, &xyz()).unwrap();
            assert_eq!(p.to_string(), s);
            let q = parse_poly(&p.to_string(), &xyz()).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn equality_aligns_variables() {
        let p = parse_poly("y^2 + 1", &["x", "y"]).unwrap();
        let q = parse_poly("y^2 + 1", &["y", "z"]).unwrap();
        assert_eq!(p, q);
    }
}
