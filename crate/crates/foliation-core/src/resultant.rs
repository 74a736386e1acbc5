//! Resultants via the Sylvester matrix with fraction-free (Bareiss)
//! elimination, plus a sound common-factor detector that views polynomials
//! as univariate in one variable.

use crate::error::{Error, Result};
use crate::poly::MPoly;

/// Coefficients of `f` viewed as univariate in `v`, ascending degree.
/// Each coefficient keeps the full variable list with `v`-degree zero.
pub fn coeffs_in(f: &MPoly, v: &str) -> Vec<MPoly> {
    let deg = f.degree_in(v);
    let i = match f.var_index(v) {
        Some(i) => i,
        None => return vec![f.clone()],
    };
    let mut out = vec![MPoly::zero_owned(f.vars()); deg as usize + 1];
    for (e, c) in f.terms() {
        let k = e.0[i] as usize;
        let mut ne = e.clone();
        ne.0[i] = 0;
        let term = MPoly::from_terms(f.vars(), [(ne, c.clone())]);
        out[k] = out[k].add(&term);
    }
    out
}

fn trim(cs: &mut Vec<MPoly>) {
    while cs.len() > 1 && cs.last().map_or(false, |c| c.is_zero()) {
        cs.pop();
    }
}

/// Determinant by Bareiss fraction-free elimination; all divisions are
/// exact in the polynomial ring.
pub fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> Result<MPoly> {
    let n = m.len();
    if n == 0 {
        // Empty product convention.
        return Err(Error::Internal("bareiss_det on empty matrix".into()));
    }
    let vars = m[0][0].vars().to_vec();
    let mut sign = false;
    let mut prev = MPoly::one_owned(&vars);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(MPoly::zero_owned(&vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
            m[i][k] = MPoly::zero_owned(&vars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Resultant of `f` and `g` with respect to `v`. The result still carries
/// the full variable list, with `v`-degree zero.
pub fn resultant(f: &MPoly, g: &MPoly, v: &str) -> Result<MPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("resultant of a zero polynomial".into()));
    }
    let mut fc = coeffs_in(f, v);
    let mut gc = coeffs_in(g, v);
    trim(&mut fc);
    trim(&mut gc);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let vars = f.vars().to_vec();
    if m == 0 && n == 0 {
        return Ok(MPoly::one_owned(&vars));
    }
    if m == 0 {
        return Ok(fc[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(gc[0].pow(m as u32));
    }
    // Sylvester matrix: n rows of f-coefficients, m rows of g-coefficients,
    // descending degree left to right.
    let size = m + n;
    let zero = MPoly::zero_owned(&vars);
    let mut mat = vec![vec![zero; size]; size];
    for row in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn leading_in(cs: &[MPoly]) -> &MPoly {
    cs.last().unwrap()
}

fn poly_from_coeffs(vars: &[String], v: &str, cs: &[MPoly]) -> MPoly {
    let vi = vars.iter().position(|w| w == v).unwrap();
    let mut acc = MPoly::zero_owned(vars);
    for (k, c) in cs.iter().enumerate() {
        let mut shift = MPoly::zero_owned(vars);
        let mut e = crate::poly::Expo::zero(vars.len());
        e.0[vi] = k as u32;
        shift = shift.add(&MPoly::from_terms(vars, [(e, crate::poly::rat(1))]));
        acc = acc.add(&shift.mul(c));
    }
    acc
}

/// Pseudo-remainder of `f` by `g`, both viewed in `v` (deg_v g >= 1).
fn prem(f: &MPoly, g: &MPoly, v: &str) -> MPoly {
    let vars = f.vars().to_vec();
    let gc = {
        let mut c = coeffs_in(g, v);
        trim(&mut c);
        c
    };
    let dg = gc.len() - 1;
    let lg = leading_in(&gc).clone();
    let mut fc = coeffs_in(f, v);
    trim(&mut fc);
    while fc.len() - 1 >= dg && !(fc.len() == 1 && fc[0].is_zero()) {
        let df = fc.len() - 1;
        let lf = leading_in(&fc).clone();
        // f := lg * f - lf * v^(df-dg) * g
        let mut nf = vec![MPoly::zero_owned(&vars); df.max(1)];
        for (k, c) in fc.iter().enumerate().take(df) {
            nf[k] = c.mul(&lg);
        }
        for (k, c) in gc.iter().enumerate().take(dg) {
            let idx = k + df - dg;
            nf[idx] = nf[idx].sub(&c.mul(&lf));
        }
        fc = nf;
        trim(&mut fc);
        if fc.iter().all(|c| c.is_zero()) {
            return MPoly::zero_owned(&vars);
        }
    }
    poly_from_coeffs(&vars, v, &fc)
}

fn strip_monomial_content(f: &MPoly) -> MPoly {
    let m = f.content_monomial();
    f.divide_monomial(&m)
}

/// True iff `f` and `g` share a factor of positive degree in `v`
/// (pseudo-remainder sequence; the v-degree of the gcd over the function
/// field of the remaining variables is what matters).
fn gcd_positive_in_v(f: &MPoly, g: &MPoly, v: &str) -> Option<MPoly> {
    let mut a = strip_monomial_content(f);
    let mut b = strip_monomial_content(g);
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return (a.degree_in(v) > 0).then_some(a);
        }
        if b.degree_in(v) == 0 {
            return None;
        }
        let r = strip_monomial_content(&prem(&a, &b, v));
        a = b;
        b = r;
    }
}

/// Sound detector: do all the (nonzero) polynomials share a common factor
/// of positive degree in some variable? Returns the witnessing variable.
pub fn common_factor_variable(polys: &[&MPoly]) -> Option<String> {
    let nonzero: Vec<&MPoly> = polys.iter().copied().filter(|p| !p.is_zero()).collect();
    if nonzero.len() < 2 {
        return None;
    }
    let vars = nonzero[0].vars().to_vec();
    'vars: for v in &vars {
        // A common factor involving v forces positive v-degree everywhere.
        if nonzero.iter().any(|p| p.degree_in(v) == 0) {
            continue;
        }
        let mut acc = nonzero[0].clone();
        for p in &nonzero[1..] {
            match gcd_positive_in_v(&acc, p, v) {
                Some(g) => acc = g,
                None => continue 'vars,
            }
        }
        return Some(v.clone());
    }
    None
}
