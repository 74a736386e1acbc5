//! Certified emptiness of the common zero set of a polynomial system in at
//! most two effective variables. Escalation: constant test, monomial
//! content, resultants, rational-root hunting. Sound in both directions;
//! anything the chain cannot certify is INCONCLUSIVE.

use num_traits::Zero;

use crate::poly::{MPoly, Rat};
use crate::resultant::resultant;
use crate::univar::{rational_roots, UniPoly};
use crate::verdict::Emptiness;

/// Certify whether the generators have a common zero (over the complex
/// numbers, anywhere in the affine chart).
pub fn certify_common_zeros_empty(gens: &[MPoly]) -> Emptiness {
    let nonzero: Vec<&MPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Emptiness::NonEmpty {
            witness: "all generators identically zero".into(),
        };
    }
    if nonzero.iter().any(|g| g.is_constant()) {
        return Emptiness::Empty;
    }
    // Shared monomial content: a coordinate hyperplane of common zeros.
    let vars = nonzero[0].vars().to_vec();
    for v in &vars {
        if nonzero.iter().all(|g| g.max_var_power(v) >= 1) {
            return Emptiness::NonEmpty {
                witness: format!("{v} = 0"),
            };
        }
    }
    let effective: Vec<String> = vars
        .iter()
        .filter(|v| nonzero.iter().any(|g| g.degree_in(v) > 0))
        .cloned()
        .collect();
    match effective.len() {
        0 => Emptiness::Empty, // constants already handled; unreachable
        1 => univariate_case(&nonzero, &effective[0]),
        2 => bivariate_case(&nonzero, &effective[0], &effective[1]),
        n => Emptiness::Inconclusive {
            reason: format!("{n} effective variables exceed the certification chain"),
        },
    }
}

fn univariate_case(gens: &[&MPoly], v: &str) -> Emptiness {
    let mut gcd = UniPoly::zero();
    for g in gens {
        let u = match UniPoly::from_mpoly(g, v) {
            Some(u) => u,
            None => {
                return Emptiness::Inconclusive {
                    reason: "mixed variables in univariate stage".into(),
                }
            }
        };
        gcd = if gcd.is_zero() { u } else { gcd.gcd(&u) };
        if gcd.degree() == Some(0) {
            return Emptiness::Empty;
        }
    }
    // Nonconstant gcd over the rationals always has complex roots.
    let report = rational_roots(&gcd);
    let witness = report
        .roots
        .first()
        .map(|r| format!("{v} = {r}"))
        .unwrap_or_else(|| format!("nonconstant common divisor in {v}"));
    Emptiness::NonEmpty { witness }
}

fn substitute_value(g: &MPoly, v: &str, value: &Rat) -> MPoly {
    // Evaluate variable v at a rational value, keeping the other variable.
    let vi = g.var_index(v).unwrap();
    let mut out = MPoly::zero_owned(g.vars());
    for (e, c) in g.terms() {
        let mut coeff = c.clone();
        for _ in 0..e.0[vi] {
            coeff = &coeff * value;
        }
        let mut ne = e.clone();
        ne.0[vi] = 0;
        out = out.add(&MPoly::from_terms(g.vars(), [(ne, coeff)]));
    }
    out
}

/// Does `v = value` kill every generator's specialization to a system with
/// a common zero? Returns certified yes/no when possible.
fn specialized_verdict(gens: &[&MPoly], v: &str, value: &Rat, other: &str) -> Emptiness {
    let mut gcd = UniPoly::zero();
    for g in gens {
        let s = substitute_value(g, v, value);
        if s.is_zero() {
            continue;
        }
        if s.as_constant().map_or(false, |c| !c.is_zero()) {
            return Emptiness::Empty;
        }
        let u = match UniPoly::from_mpoly(&s, other) {
            Some(u) => u,
            None => {
                return Emptiness::Inconclusive {
                    reason: "specialization not univariate".into(),
                }
            }
        };
        gcd = if gcd.is_zero() { u } else { gcd.gcd(&u) };
        if gcd.degree() == Some(0) {
            return Emptiness::Empty;
        }
    }
    if gcd.is_zero() {
        return Emptiness::NonEmpty {
            witness: format!("{v} = {value} lies in every generator's zero set"),
        };
    }
    let report = rational_roots(&gcd);
    match report.roots.first() {
        Some(r) => Emptiness::NonEmpty {
            witness: format!("{v} = {value}, {other} = {r}"),
        },
        None => Emptiness::NonEmpty {
            witness: format!("{v} = {value}, {other} algebraic"),
        },
    }
}

fn bivariate_case(gens: &[&MPoly], u: &str, v: &str) -> Emptiness {
    // Stage 1: a nonzero constant resultant of any pair certifies emptiness
    // (the resultant lies in the ideal generated by the pair).
    let mut res_in_u: Vec<MPoly> = Vec::new(); // polynomials in v
    let mut res_in_v: Vec<MPoly> = Vec::new(); // polynomials in u
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            for (elim, keep, bucket) in [
                (u, v, &mut res_in_u),
                (v, u, &mut res_in_v),
            ] {
                let (f, g) = (gens[i], gens[j]);
                if f.degree_in(elim) == 0 && g.degree_in(elim) == 0 {
                    continue;
                }
                if let Ok(r) = resultant(f, g, elim) {
                    if r.as_constant().map_or(false, |c| !c.is_zero()) {
                        return Emptiness::Empty;
                    }
                    if !r.is_zero() && r.degree_in(keep) > 0 {
                        bucket.push(r);
                    }
                }
            }
        }
    }

    // Stage 2: pick a nonzero resultant; the eliminated variable's
    // coordinates of any common zero are among its roots.
    for (axis, other, bucket) in [(v, u, &res_in_u), (u, v, &res_in_v)] {
        for r in bucket {
            let uni = match UniPoly::from_mpoly(r, axis) {
                Some(u) => u,
                None => continue,
            };
            let report = rational_roots(&uni);
            if !report.certified || !report.all_roots_rational {
                continue;
            }
            // Every common zero has its `axis` coordinate among these roots.
            let mut verdict = Emptiness::Empty;
            for root in &report.roots {
                match specialized_verdict(gens, axis, root, other) {
                    Emptiness::Empty => {}
                    non_empty @ Emptiness::NonEmpty { .. } => return non_empty,
                    inc @ Emptiness::Inconclusive { .. } => verdict = inc,
                }
            }
            if verdict == Emptiness::Empty {
                return Emptiness::Empty;
            }
        }
    }

    // Stage 3: hunt for a rational witness even without full certification.
    for (axis, other, bucket) in [(v, u, &res_in_u), (u, v, &res_in_v)] {
        for r in bucket {
            if let Some(uni) = UniPoly::from_mpoly(r, axis) {
                for root in rational_roots(&uni).roots {
                    if let w @ Emptiness::NonEmpty { .. } =
                        specialized_verdict(gens, axis, &root, other)
                    {
                        return w;
                    }
                }
            }
        }
    }

    Emptiness::Inconclusive {
        reason: "resultant roots not rationally certifiable".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn gens(list: &[&str], vars: &[&str]) -> Vec<MPoly> {
        list.iter().map(|s| parse_poly(s, vars).unwrap()).collect()
    }

    #[test]
    fn constant_generator_is_empty() {
        let g = gens(&["z^3", "-2"], &["x", "z"]);
        assert_eq!(certify_common_zeros_empty(&g), Emptiness::Empty);
    }

    #[test]
    fn shared_content_is_nonempty() {
        let g = gens(&["-z^2", "2*y*z"], &["y", "z"]);
        assert!(matches!(
            certify_common_zeros_empty(&g),
            Emptiness::NonEmpty { .. }
        ));
    }

    #[test]
    fn resultant_certifies_empty() {
        // z^3 and x z^2 - 1 share no zero: Res_z = -1.
        let g = gens(&["z^3", "x*z^2 - 1"], &["x", "z"]);
        assert_eq!(certify_common_zeros_empty(&g), Emptiness::Empty);
    }

    #[test]
    fn rational_point_witness() {
        // (y - 1, z - 2) meets at y=1, z=2.
        let g = gens(&["y - 1", "z - 2"], &["y", "z"]);
        match certify_common_zeros_empty(&g) {
            Emptiness::NonEmpty { witness } => {
                assert!(witness.contains('1') && witness.contains('2'), "{witness}")
            }
            other => panic!("expected NonEmpty, got {other:?}"),
        }
    }

    #[test]
    fn disjoint_circles_empty() {
        let g = gens(&["y^2 + z^2 - 1", "y^2 + z^2 - 4"], &["y", "z"]);
        assert_eq!(certify_common_zeros_empty(&g), Emptiness::Empty);
    }

    #[test]
    fn isolated_common_zero_at_origin() {
        let g = gens(&["-z", "y"], &["y", "z"]);
        assert!(matches!(
            certify_common_zeros_empty(&g),
            Emptiness::NonEmpty { .. }
        ));
    }
}
