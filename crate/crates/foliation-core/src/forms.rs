//! Differential 1-, 2- and 3-forms with polynomial coefficients, and the
//! foliation-facing predicates built on them: Frobenius integrability,
//! pullback, hyperplane restriction and invariance, generators from closed
//! rational 1-forms, and the isolated-singularity test in dimension two.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_poly_owned, Expo, MPoly, PolyMap, Rat};
use crate::ratfunc::RatFunc;
use crate::resultant::{common_factor_variable, resultant};
use crate::verdict::Verdict3;

/// ω = Σ aᵢ dxᵢ.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    vars: Vec<String>,
    coeffs: Vec<MPoly>,
}

/// Coefficients on the basis dxᵢ∧dxⱼ with i < j.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    vars: Vec<String>,
    coeffs: Vec<MPoly>,
}

/// Coefficients on the basis dxᵢ∧dxⱼ∧dxₖ with i < j < k.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeForm {
    vars: Vec<String>,
    coeffs: Vec<MPoly>,
}

pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // Pairs ordered (0,1), (0,2), ..., (0,n-1), (1,2), ...
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push((i, j));
        }
    }
    v
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                v.push((i, j, k));
            }
        }
    }
    v
}

impl OneForm {
    pub fn new(vars: &[&str], coeffs: Vec<MPoly>) -> Result<Self> {
        let owned: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::new_owned(&owned, coeffs)
    }

    pub fn new_owned(vars: &[String], coeffs: Vec<MPoly>) -> Result<Self> {
        if coeffs.len() != vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} variables",
                coeffs.len(),
                vars.len()
            )));
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.aligned_to(vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(OneForm {
            vars: vars.to_vec(),
            coeffs,
        })
    }

    /// Parse coefficients in the polynomial grammar: one per variable.
    pub fn parse(coeff_texts: &[&str], vars: &[&str]) -> Result<Self> {
        let owned: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let coeffs = coeff_texts
            .iter()
            .map(|t| parse_poly_owned(t, &owned))
            .collect::<Result<Vec<_>>>()?;
        Self::new_owned(&owned, coeffs)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn coeff_of(&self, var: &str) -> Option<&MPoly> {
        let i = self.vars.iter().position(|v| v == var)?;
        Some(&self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        OneForm {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        OneForm {
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale_poly(&self, p: &MPoly) -> Self {
        OneForm {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    /// Shared monomial content of the nonzero coefficients.
    pub fn content_monomial(&self) -> Expo {
        let mut acc: Option<Vec<u32>> = None;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let m = c.content_monomial();
            match &mut acc {
                None => acc = Some(m.0),
                Some(a) => {
                    for (x, y) in a.iter_mut().zip(&m.0) {
                        *x = (*x).min(*y);
                    }
                }
            }
        }
        Expo(acc.unwrap_or_else(|| vec![0; self.vars.len()]))
    }

    pub fn is_reduced(&self) -> bool {
        self.content_monomial().total() == 0
    }

    /// Divide out the shared monomial content.
    pub fn reduce_monomial_content(&self) -> Self {
        let m = self.content_monomial();
        if m.total() == 0 {
            return self.clone();
        }
        OneForm {
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| if c.is_zero() { c.clone() } else { c.divide_monomial(&m) })
                .collect(),
        }
    }

    pub fn exterior_derivative(&self) -> TwoForm {
        let n = self.vars.len();
        let coeffs = pairs(n)
            .into_iter()
            .map(|(i, j)| {
                self.coeffs[j]
                    .derivative(&self.vars[i])
                    .sub(&self.coeffs[i].derivative(&self.vars[j]))
            })
            .collect();
        TwoForm {
            vars: self.vars.clone(),
            coeffs,
        }
    }

    /// Wedge of two 1-forms; vanishes exactly when they are proportional.
    pub fn wedge_one(&self, other: &OneForm) -> TwoForm {
        assert_eq!(self.vars, other.vars);
        let n = self.vars.len();
        let coeffs = pairs(n)
            .into_iter()
            .map(|(i, j)| {
                self.coeffs[i]
                    .mul(&other.coeffs[j])
                    .sub(&self.coeffs[j].mul(&other.coeffs[i]))
            })
            .collect();
        TwoForm {
            vars: self.vars.clone(),
            coeffs,
        }
    }

    pub fn wedge_two(&self, t: &TwoForm) -> ThreeForm {
        assert_eq!(self.vars, t.vars);
        let n = self.vars.len();
        let coeffs = triples(n)
            .into_iter()
            .map(|(i, j, k)| {
                let b_jk = &t.coeffs[pair_index(n, j, k)];
                let b_ik = &t.coeffs[pair_index(n, i, k)];
                let b_ij = &t.coeffs[pair_index(n, i, j)];
                self.coeffs[i]
                    .mul(b_jk)
                    .sub(&self.coeffs[j].mul(b_ik))
                    .add(&self.coeffs[k].mul(b_ij))
            })
            .collect();
        ThreeForm {
            vars: self.vars.clone(),
            coeffs,
        }
    }

    /// Frobenius condition ω ∧ dω = 0; always true in dimension ≤ 2.
    pub fn is_integrable(&self) -> bool {
        if self.vars.len() <= 2 {
            return true;
        }
        self.wedge_two(&self.exterior_derivative()).is_zero()
    }

    /// Raw pullback along `m` (chain rule); no exceptional division here.
    pub fn pullback(&self, m: &PolyMap) -> Result<OneForm> {
        if self.vars != m.source {
            return Err(Error::VariableMismatch(format!(
                "form over {:?} but map source is {:?}",
                self.vars, m.source
            )));
        }
        let n_target = m.target.len();
        let mut coeffs = vec![MPoly::zero_owned(&m.target); n_target];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a_sub = a.substitute(m)?;
            for (j, tv) in m.target.iter().enumerate() {
                let d = m.images[i].derivative(tv);
                if !d.is_zero() {
                    coeffs[j] = coeffs[j].add(&a_sub.mul(&d));
                }
            }
        }
        OneForm::new_owned(&m.target, coeffs)
    }

    /// Drop the dv coefficient and substitute v = 0 in the rest; the result
    /// lives in the remaining variables and is NOT reduced.
    pub fn restrict_to_hyperplane(&self, v: &str) -> OneForm {
        let vi = self
            .vars
            .iter()
            .position(|w| w == v)
            .unwrap_or_else(|| panic!("variable `{v}` not in {:?}", self.vars));
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != vi)
            .map(|(_, w)| w.clone())
            .collect();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != vi)
            .map(|(_, c)| c.restrict_var_zero(v))
            .collect();
        OneForm { vars, coeffs }
    }

    /// Is the hyperplane (v = 0) invariant, i.e. does the restriction vanish?
    pub fn is_hyperplane_invariant(&self, v: &str) -> bool {
        self.restrict_to_hyperplane(v).is_zero()
    }

    /// The singular-locus generators: the coefficients themselves.
    pub fn singular_generators(&self) -> &[MPoly] {
        &self.coeffs
    }

    /// Covector at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Vec<Rat>> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, form has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }

    pub fn is_singular_at(&self, point: &[Rat]) -> Result<bool> {
        Ok(self.evaluate(point)?.iter().all(|c| c.is_zero()))
    }

    /// Rename one variable (cosmetic; exponent layout unchanged).
    pub fn rename_var(&self, old: &str, new: &str) -> OneForm {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| if v == old { new.to_string() } else { v.clone() })
            .collect();
        OneForm {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.rename_var(old, new))
                .collect(),
            vars,
        }
    }
}

impl std::fmt::Display for OneForm {
    /// `[a1, a2, a3] over (x,y,z)` with canonical coefficient printing.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] over ({})", self.vars.join(","))
    }
}

/// JSON shape shared by the CLI and the chart format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OneFormJson {
    pub vars: Vec<String>,
    pub coeffs: Vec<String>,
}

impl OneForm {
    pub fn to_json(&self) -> OneFormJson {
        OneFormJson {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(j: &OneFormJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|t| parse_poly_owned(t, &j.vars))
            .collect::<Result<Vec<_>>>()?;
        Self::new_owned(&j.vars, coeffs)
    }
}

impl TwoForm {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl ThreeForm {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// d of a function, as a OneForm (the gradient covector).
pub fn d_of_function(f: &MPoly) -> OneForm {
    let vars = f.vars().to_vec();
    let coeffs = vars.iter().map(|v| f.derivative(v)).collect();
    OneForm { vars, coeffs }
}

/// Generator of the foliation defined by dφ = 0 for a rational φ: clear the
/// denominator of (den·d(num) − num·d(den))/den² and strip monomial content.
/// Errors with `UnreducedGenerator` when a non-monomial common factor
/// provably survives.
pub fn from_closed_rational(phi: &RatFunc) -> Result<OneForm> {
    if phi.is_constant() {
        return Err(Error::ConstantFirstIntegral);
    }
    let num = phi.num();
    let den = phi.den();
    let vars = num.vars().to_vec();
    let coeffs: Vec<MPoly> = vars
        .iter()
        .map(|v| {
            den.mul(&num.derivative(v))
                .sub(&num.mul(&den.derivative(v)))
        })
        .collect();
    let raw = OneForm {
        vars: vars.clone(),
        coeffs,
    };
    if raw.is_zero() {
        return Err(Error::ConstantFirstIntegral);
    }
    let reduced = raw.reduce_monomial_content();
    let nonzero: Vec<&MPoly> = reduced.coeffs.iter().filter(|c| !c.is_zero()).collect();
    if let Some(var) = common_factor_variable(&nonzero) {
        return Err(Error::UnreducedGenerator { var });
    }
    Ok(reduced)
}

/// Isolated-singularity test for a 1-form in two variables. Policy: a zero
/// coefficient or a detected common factor (content or vanishing resultant)
/// is a definite No; nonzero resultants in both variables a definite Yes;
/// everything else INCONCLUSIVE.
pub fn isolated_singularity_2d(w: &OneForm) -> Result<Verdict3> {
    if w.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "isolated-singularity test needs 2 variables, got {}",
            w.dim()
        )));
    }
    if w.is_zero() {
        return Err(Error::ZeroInput("zero 1-form".into()));
    }
    let a = &w.coeffs[0];
    let b = &w.coeffs[1];
    if a.is_zero() || b.is_zero() {
        return Ok(Verdict3::No);
    }
    if w.content_monomial().total() > 0 {
        return Ok(Verdict3::No);
    }
    for v in [&w.vars[0], &w.vars[1]] {
        // Degree-zero conventions (Res = f^deg g, Res of two constants = 1)
        // keep both directions sound: a vanishing resultant certifies a
        // shared factor, two nonzero resultants bound the common zeros to
        // a finite set.
        let r = resultant(a, b, v)?;
        if r.is_zero() {
            return Ok(Verdict3::No);
        }
    }
    Ok(Verdict3::Yes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat};

    fn form(coeffs: &[&str], vars: &[&str]) -> OneForm {
        OneForm::parse(coeffs, vars).unwrap()
    }

    fn xyz() -> Vec<&'static str> {
        vec!["x", "y", "z"]
    }

    #[test]
    fn integrability_examples() {
        let open_book = form(&["0", "-z", "y"], &xyz());
        assert!(open_book.is_integrable());

        let not_integrable = form(&["y", "0", "x"], &xyz());
        assert!(!not_integrable.is_integrable());

        let dim2 = form(&["y", "x"], &["x", "y"]);
        assert!(dim2.is_integrable());
    }

    #[test]
    fn pullback_examples() {
        let vars: Vec<String> = xyz().iter().map(|s| s.to_string()).collect();
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

        let open_book = form(&["0", "-z", "y"], &xyz());
        let pb = open_book.pullback(&m).unwrap();
        assert_eq!(pb, form(&["0", "0", "y^2"], &xyz()));

        let dx = form(&["1", "0", "0"], &xyz());
        let id = PolyMap::identity(&vars);
        assert_eq!(dx.pullback(&id).unwrap(), dx);

        let phi3 = form(&["z^3", "2*y*z", "-2*y^2"], &xyz());
        let pb3 = phi3.pullback(&m).unwrap();
        assert_eq!(pb3, form(&["y^3*z^3", "0", "-2*y^3"], &xyz()));
    }

    #[test]
    fn restriction_examples() {
        let open_book = form(&["0", "-z", "y"], &xyz());
        let r = open_book.restrict_to_hyperplane("x");
        assert_eq!(r, form(&["-z", "y"], &["y", "z"]));

        let phi2 = form(&["y^2", "-z^2", "2*y*z"], &xyz());
        let r2 = phi2.restrict_to_hyperplane("x");
        assert_eq!(r2, form(&["-z^2", "2*y*z"], &["y", "z"]));

        let dx = form(&["1", "0", "0"], &xyz());
        assert!(dx.restrict_to_hyperplane("x").is_zero());
    }

    #[test]
    fn invariance_examples() {
        let open_book = form(&["0", "-z", "y"], &xyz());
        assert!(open_book.is_hyperplane_invariant("y"));
        assert!(open_book.is_hyperplane_invariant("z"));
        assert!(!open_book.is_hyperplane_invariant("x"));

        // The plane x = 0 is a leaf of dx, hence invariant (its pullback
        // i*dx vanishes); y = 0 is transverse, hence not invariant.
        let dx = form(&["1", "0", "0"], &xyz());
        assert!(dx.is_hyperplane_invariant("x"));
        assert!(!dx.is_hyperplane_invariant("y"));
    }

    #[test]
    fn closed_rational_examples() {
        let vars = xyz();
        let phi3 = RatFunc::new(
            parse_poly("x*z^2 + y^2", &vars).unwrap(),
            parse_poly("z^2", &vars).unwrap(),
        )
        .unwrap();
        assert_eq!(
            from_closed_rational(&phi3).unwrap(),
            form(&["z^3", "2*y*z", "-2*y^2"], &vars)
        );

        let phi2 = RatFunc::new(
            parse_poly("x*y + z^2", &vars).unwrap(),
            parse_poly("y", &vars).unwrap(),
        )
        .unwrap();
        assert_eq!(
            from_closed_rational(&phi2).unwrap(),
            form(&["y^2", "-z^2", "2*y*z"], &vars)
        );

        let phi1 = RatFunc::new(
            parse_poly("x*z^2 + y^2", &vars).unwrap(),
            parse_poly("y*z", &vars).unwrap(),
        )
        .unwrap();
        assert_eq!(
            from_closed_rational(&phi1).unwrap(),
            form(
                &["y*z^3", "y^2*z - x*z^3", "x*y*z^2 - y^3"],
                &vars
            )
        );
    }

    #[test]
    fn unreduced_generator_detected() {
        // φ = ((xz²+y²)/z²)² gives dφ = 2φ' (xz²+y²) ... with the common
        // factor xz²+y² surviving content removal.
        let vars = xyz();
        let phi = RatFunc::new(
            parse_poly("(x*z^2 + y^2)*(x*z^2 + y^2)", &vars).unwrap(),
            parse_poly("z^4", &vars).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            from_closed_rational(&phi),
            Err(Error::UnreducedGenerator { .. })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let open_book = form(&["0", "-z", "y"], &xyz());
        assert!(open_book
            .is_singular_at(&[rat(1), rat(0), rat(0)])
            .unwrap());
        assert_eq!(
            open_book.evaluate(&[rat(0), rat(1), rat(0)]).unwrap(),
            vec![rat(0), rat(0), rat(1)]
        );

        let phi1 = form(&["y*z^3", "y^2*z - x*z^3", "x*y*z^2 - y^3"], &xyz());
        assert!(phi1.is_singular_at(&[rat(0), rat(0), rat(1)]).unwrap());
    }

    #[test]
    fn isolated_singularity_examples() {
        let radial = form(&["-z", "y"], &["y", "z"]);
        assert_eq!(isolated_singularity_2d(&radial).unwrap(), Verdict3::Yes);

        let phi2_section = form(&["-z^2", "2*y*z"], &["y", "z"]);
        assert_eq!(
            isolated_singularity_2d(&phi2_section).unwrap(),
            Verdict3::No
        );

        let degenerate = form(&["y", "0"], &["y", "z"]);
        assert_eq!(isolated_singularity_2d(&degenerate).unwrap(), Verdict3::No);
    }

    #[test]
    fn d_squared_is_zero() {
        let f = parse_poly("x^2*y + y*z^3 - 3/2*x", &xyz()).unwrap();
        let df = d_of_function(&f);
        assert!(df.exterior_derivative().is_zero());
    }

    #[test]
    fn display_roundtrip() {
        let w = form(&["0", "-z", "y"], &xyz());
        assert_eq!(w.to_string(), "[0, -z, y] over (x,y,z)");
    }
}
