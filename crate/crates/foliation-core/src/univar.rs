//! Dense univariate polynomials over the rationals: the small toolkit the
//! audits need (gcd, square-free part, rational roots with certified
//! completeness).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{MPoly, Rat};

/// Coefficients ascending; normalized so the vector is empty iff zero.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly(pub Vec<Rat>);

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn from_coeffs(mut cs: Vec<Rat>) -> Self {
        while cs.last().map_or(false, |c| c.is_zero()) {
            cs.pop();
        }
        UniPoly(cs)
    }

    /// View an `MPoly` that involves a single variable as univariate.
    pub fn from_mpoly(f: &MPoly, v: &str) -> Option<Self> {
        let vi = f.var_index(v)?;
        let mut cs = vec![Rat::zero(); f.degree_in(v) as usize + 1];
        for (e, c) in f.terms() {
            for (j, &k) in e.0.iter().enumerate() {
                if j != vi && k > 0 {
                    return None;
                }
            }
            cs[e.0[vi] as usize] = c.clone();
        }
        Some(Self::from_coeffs(cs))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.0.last().unwrap().clone();
        Self::from_coeffs(self.0.iter().map(|c| c / &lead).collect())
    }

    /// Euclidean remainder.
    fn rem(&self, g: &Self) -> Self {
        let dg = g.degree().expect("remainder by zero");
        let lg = g.0.last().unwrap().clone();
        let mut r = self.0.clone();
        while r.len() > dg {
            let lead = r.last().unwrap().clone();
            if lead.is_zero() {
                r.pop();
                continue;
            }
            let q = &lead / &lg;
            let shift = r.len() - 1 - dg;
            for (k, c) in g.0.iter().enumerate() {
                let t = &q * c;
                r[shift + k] = &r[shift + k] - t;
            }
            r.pop();
        }
        Self::from_coeffs(r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, multiplicity one.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.div_exact(&g).monic()
    }

    fn div_exact(&self, g: &Self) -> Self {
        let dg = g.degree().expect("division by zero");
        let lg = g.0.last().unwrap().clone();
        let mut r = self.0.clone();
        let mut q = vec![Rat::zero(); self.0.len().saturating_sub(dg)];
        while r.len() > dg {
            let lead = r.last().unwrap().clone();
            if lead.is_zero() {
                r.pop();
                continue;
            }
            let c = &lead / &lg;
            let shift = r.len() - 1 - dg;
            q[shift] = c.clone();
            for (k, gc) in g.0.iter().enumerate() {
                let t = &c * gc;
                r[shift + k] = &r[shift + k] - t;
            }
            r.pop();
        }
        Self::from_coeffs(q)
    }

    /// Scale to integer coefficients with content 1.
    fn integerized(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for c in &self.0 {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() || g.is_one() {
            ints
        } else {
            ints.iter().map(|c| c / &g).collect()
        }
    }
}

/// All positive divisors, or `None` when `n` is too large to factor by
/// trial division (the caller then reports INCONCLUSIVE).
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let small: u64 = u64::try_from(&n).ok()?;
    if small == 0 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= small) {
        if small % d == 0 {
            divs.push(BigInt::from(d));
            if d != small / d {
                divs.push(BigInt::from(small / d));
            }
        }
        d += 1;
        if d > 2_000_000 {
            return None;
        }
    }
    Some(divs)
}

/// Rational roots of `f`, plus a completeness flag for the full *complex*
/// root set: `RootReport { roots, all_roots_rational }`. When divisor
/// enumeration overflows, `certified` is false.
#[derive(Debug, Clone)]
pub struct RootReport {
    pub roots: Vec<Rat>,
    /// True when every complex root of `f` is among `roots`.
    pub all_roots_rational: bool,
    /// False when the search itself could not be completed.
    pub certified: bool,
}

pub fn rational_roots(f: &UniPoly) -> RootReport {
    if f.is_zero() {
        return RootReport {
            roots: Vec::new(),
            all_roots_rational: false,
            certified: false,
        };
    }
    let sf = f.squarefree_part();
    let ints = sf.integerized();
    let deg = ints.len() - 1;
    if deg == 0 {
        return RootReport {
            roots: Vec::new(),
            all_roots_rational: true,
            certified: true,
        };
    }
    // Pull out the root 0 first.
    let mut roots = Vec::new();
    let mut low = 0;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rat::zero());
    }
    let reduced = &ints[low..];
    let rdeg = reduced.len() - 1;
    if rdeg == 0 {
        return RootReport {
            all_roots_rational: roots.len() == deg,
            roots,
            certified: true,
        };
    }
    let (c0, ck) = (reduced[0].clone(), reduced[rdeg].clone());
    let (p_divs, q_divs) = match (divisors(&c0), divisors(&ck)) {
        (Some(p), Some(q)) => (p, q),
        _ => {
            return RootReport {
                roots,
                all_roots_rational: false,
                certified: false,
            }
        }
    };
    let sfp = UniPoly::from_coeffs(reduced.iter().map(|c| Rat::from_integer(c.clone())).collect());
    let mut found = std::collections::BTreeSet::new();
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1, -1] {
                let cand = Rat::new(p * BigInt::from(sign), q.clone());
                if sfp.eval(&cand).is_zero() {
                    found.insert(cand);
                }
            }
        }
    }
    let n_rational = found.len();
    roots.extend(found);
    roots.sort();
    RootReport {
        all_roots_rational: n_rational == rdeg,
        roots,
        certified: true,
    }
}
