//! Quadratic and monoidal blow-ups in charts: chart maps, division by the
//! maximal exceptional power, divisor bookkeeping, the dicriticality
//! classifier for curve centers, coordinate shears, and the E-controlled
//! test for centers.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chart::{ComponentOrigin, DivisorComponent, FoliatedChart};
use crate::error::{Error, Result};
use crate::forms::OneForm;
use crate::poly::{MPoly, PolyMap};

/// A blow-up center inside one chart: the chart origin, or the coordinate
/// curve on which the listed variables vanish (exactly dim-1 of them).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Center {
    Point,
    Curve { vars: Vec<String> },
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Point => write!(f, "point"),
            Center::Curve { vars } => write!(f, "curve({})", vars.join(",")),
        }
    }
}

/// Trichotomy for monoidal blow-ups along a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonoidalClass {
    NDic,
    DicV,
    DicNV,
}

impl fmt::Display for MonoidalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidalClass::NDic => write!(f, "NDic"),
            MonoidalClass::DicV => write!(f, "DicV"),
            MonoidalClass::DicNV => write!(f, "DicNV"),
        }
    }
}

/// Orders along a curve center: the log-generic order r, the order of
/// p = Σ yᵢaᵢ, and the per-coefficient generic orders (None = infinity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogGenericOrder {
    pub r: u32,
    pub nu_p: Option<u32>,
    pub coeff_orders: Vec<(String, Option<u32>)>,
}

fn validate_curve(chart_vars: &[String], curve: &[String]) -> Result<()> {
    if curve.len() + 1 != chart_vars.len() {
        return Err(Error::InvalidScript(format!(
            "curve center must list exactly {} variables, got {}",
            chart_vars.len() - 1,
            curve.len()
        )));
    }
    for v in curve {
        if !chart_vars.contains(v) {
            return Err(Error::VariableMismatch(format!(
                "center variable `{v}` not in chart variables {chart_vars:?}"
            )));
        }
    }
    let mut sorted = curve.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != curve.len() {
        return Err(Error::InvalidScript("repeated center variable".into()));
    }
    Ok(())
}

/// Log-generic order of `w` along the coordinate curve given by `curve`.
pub fn log_generic_order(w: &OneForm, curve: &[String]) -> Result<LogGenericOrder> {
    validate_curve(w.vars(), curve)?;
    let in_curve = |v: &String| curve.contains(v);
    let mut r: Option<u32> = None;
    let mut coeff_orders = Vec::new();
    for (v, a) in w.vars().iter().zip(w.coeffs()) {
        let nu = a.generic_order(curve);
        coeff_orders.push((v.clone(), nu));
        let contribution = nu.map(|n| if in_curve(v) { n + 1 } else { n });
        r = match (r, contribution) {
            (None, c) => c,
            (Some(a), None) => Some(a),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
    }
    let r = r.ok_or_else(|| Error::ZeroInput("zero 1-form has no log-generic order".into()))?;
    let mut p = MPoly::zero_owned(w.vars());
    for (v, a) in w.vars().iter().zip(w.coeffs()) {
        if in_curve(v) {
            p = p.add(&MPoly::var_owned(w.vars(), v).mul(a));
        }
    }
    Ok(LogGenericOrder {
        r,
        nu_p: p.generic_order(curve),
        coeff_orders,
    })
}

/// NDic / Dic-v / Dic-nv classification of the monoidal blow-up along the
/// coordinate curve, predicted from orders alone.
pub fn classify_monoidal(w: &OneForm, curve: &[String]) -> Result<(MonoidalClass, LogGenericOrder)> {
    let ord = log_generic_order(w, curve)?;
    let r = ord.r;
    if ord.nu_p == Some(r) {
        return Ok((MonoidalClass::NDic, ord));
    }
    // nu_p >= r + 1 (or infinite): dicritical.
    let some_curve_coeff_at_r = ord
        .coeff_orders
        .iter()
        .filter(|(v, _)| curve.contains(v))
        .any(|(_, nu)| nu.map(|n| n + 1) == Some(r));
    let class = if some_curve_coeff_at_r {
        MonoidalClass::DicNV
    } else {
        MonoidalClass::DicV
    };
    Ok((class, ord))
}

/// One chart of a blow-up.
#[derive(Debug, Clone)]
pub struct ChildChart {
    pub chart: FoliatedChart,
    /// Parent coordinates expressed in child coordinates.
    pub map: PolyMap,
    pub exceptional_var: String,
    pub divided_power: u32,
}

#[derive(Debug, Clone)]
pub struct BlowupResult {
    pub children: Vec<ChildChart>,
    pub dicritical: bool,
    pub divided_power: u32,
    /// Present for curve centers.
    pub class: Option<(MonoidalClass, LogGenericOrder)>,
    /// Center invariant for the foliation (paper admissibility).
    pub admissible: bool,
    /// Center contained in the singular locus.
    pub center_in_sing: bool,
}

/// Is the coordinate center invariant? The coefficients of the transverse
/// differentials must vanish on the center.
pub fn center_is_invariant(w: &OneForm, center: &Center) -> bool {
    match center {
        Center::Point => true,
        Center::Curve { vars } => w
            .vars()
            .iter()
            .zip(w.coeffs())
            .filter(|(v, _)| !vars.contains(v))
            .all(|(_, a)| vanishes_on_curve(a, vars)),
    }
}

/// Is the coordinate center contained in the singular locus?
pub fn center_in_singular_locus(w: &OneForm, center: &Center) -> bool {
    match center {
        Center::Point => {
            let origin = vec![crate::poly::Rat::zero(); w.dim()];
            w.is_singular_at(&origin).unwrap_or(false)
        }
        Center::Curve { vars } => w.coeffs().iter().all(|a| vanishes_on_curve(a, vars)),
    }
}

fn vanishes_on_curve(a: &MPoly, curve: &[String]) -> bool {
    match a.generic_order(curve) {
        None => true,
        Some(n) => n >= 1,
    }
}

/// Point centers are always E-controlled; a curve center needs a divisor
/// component transverse to it so that the ideals span the maximal ideal.
pub fn check_e_controlled(chart: &FoliatedChart, center: &Center) -> bool {
    match center {
        Center::Point => true,
        Center::Curve { vars } => chart
            .divisor
            .iter()
            .any(|d| !vars.contains(&d.var)),
    }
}

fn child_of(
    parent: &FoliatedChart,
    direction_var: &str,
    center_vars: &[String],
    step: usize,
) -> Result<ChildChart> {
    let vars = parent.vars().to_vec();
    let images: Vec<MPoly> = vars
        .iter()
        .map(|v| {
            if v == direction_var || !center_vars.contains(v) {
                MPoly::var_owned(&vars, v)
            } else {
                MPoly::var_owned(&vars, direction_var).mul(&MPoly::var_owned(&vars, v))
            }
        })
        .collect();
    let map = PolyMap::new(&vars, &vars, images)?;
    let raw = parent.form().pullback(&map)?;
    let k = raw
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.max_var_power(direction_var))
        .min()
        .ok_or_else(|| Error::Internal("pullback of a nonzero form vanished".into()))?;
    let coeffs = raw
        .coeffs()
        .iter()
        .map(|c| c.divide_by_var_power(direction_var, k))
        .collect::<Result<Vec<_>>>()?;
    let form = OneForm::new_owned(&vars, coeffs)?;
    if !form.is_reduced() {
        return Err(Error::Internal(format!(
            "transformed generator not reduced in chart `{direction_var}`"
        )));
    }
    let mut divisor: Vec<(String, ComponentOrigin)> = parent
        .divisor
        .iter()
        .filter(|d| d.var != direction_var)
        .map(|d| (d.var.clone(), d.origin.clone()))
        .collect();
    divisor.push((
        direction_var.to_string(),
        ComponentOrigin::Exceptional { step },
    ));
    let divisor_refs: Vec<(&str, ComponentOrigin)> = divisor
        .iter()
        .map(|(v, o)| (v.as_str(), o.clone()))
        .collect();
    let child_id = format!("{}.{}", parent.id, direction_var);
    let chart = FoliatedChart::new(&child_id, form, &divisor_refs)?
        .with_lineage(&parent.id, step);
    Ok(ChildChart {
        chart,
        map,
        exceptional_var: direction_var.to_string(),
        divided_power: k,
    })
}

fn finish_result(
    children: Vec<ChildChart>,
    class: Option<(MonoidalClass, LogGenericOrder)>,
    admissible: bool,
    center_in_sing: bool,
) -> Result<BlowupResult> {
    let k0 = children[0].divided_power;
    if children.iter().any(|c| c.divided_power != k0) {
        return Err(Error::Internal(
            "divided exceptional power differs between charts".into(),
        ));
    }
    let dic0 = !children[0]
        .chart
        .divisor_component(&children[0].exceptional_var)
        .unwrap()
        .invariant;
    for c in &children {
        let dic = !c
            .chart
            .divisor_component(&c.exceptional_var)
            .unwrap()
            .invariant;
        if dic != dic0 {
            return Err(Error::Internal(
                "dicriticality flag differs between charts".into(),
            ));
        }
    }
    if let Some((class, ord)) = &class {
        let predicted_dicritical = *class != MonoidalClass::NDic;
        if predicted_dicritical != dic0 {
            return Err(Error::Internal(format!(
                "classifier {class} disagrees with the transform (dicritical = {dic0})"
            )));
        }
        // The maximal divided power is r-1 in the NDic case and r otherwise.
        let expected_k = match class {
            MonoidalClass::NDic => ord.r.saturating_sub(1),
            _ => ord.r,
        };
        if k0 != expected_k {
            return Err(Error::Internal(format!(
                "divided power {k0} but class {class} with r = {} expects {expected_k}",
                ord.r
            )));
        }
    }
    Ok(BlowupResult {
        children,
        dicritical: dic0,
        divided_power: k0,
        class,
        admissible,
        center_in_sing,
    })
}

/// Monoidal blow-up along a coordinate curve. `override_admissibility`
/// permits non-invariant or non-singular centers (the vertical blow-up
/// definition does not ask the center to be invariant).
pub fn monoidal_blowup(
    parent: &FoliatedChart,
    curve: &[String],
    step: usize,
    override_admissibility: bool,
) -> Result<BlowupResult> {
    validate_curve(parent.vars(), curve)?;
    // Normal crossings with the divisor is automatic for coordinate data:
    // a component's variable either lies in the curve's ideal (the
    // component contains the center) or is transverse to it.
    let center = Center::Curve {
        vars: curve.to_vec(),
    };
    let admissible = center_is_invariant(parent.form(), &center);
    let in_sing = center_in_singular_locus(parent.form(), &center);
    if !override_admissibility && (!admissible || !in_sing) {
        return Err(Error::InadmissibleCenter(format!(
            "center {center} (invariant: {admissible}, in singular locus: {in_sing})"
        )));
    }
    let class = classify_monoidal(parent.form(), curve)?;
    let mut order: Vec<&String> = curve.iter().collect();
    order.sort_by_key(|v| parent.vars().iter().position(|w| &w == v).unwrap());
    let children = order
        .into_iter()
        .map(|j| child_of(parent, j, curve, step))
        .collect::<Result<Vec<_>>>()?;
    finish_result(children, Some(class), admissible, in_sing)
}

/// Quadratic blow-up at the chart origin.
pub fn quadratic_blowup(
    parent: &FoliatedChart,
    step: usize,
    override_admissibility: bool,
) -> Result<BlowupResult> {
    let center = Center::Point;
    let in_sing = center_in_singular_locus(parent.form(), &center);
    if !override_admissibility && !in_sing {
        return Err(Error::InadmissibleCenter(
            "chart origin is a regular point".into(),
        ));
    }
    let all_vars = parent.vars().to_vec();
    let children = all_vars
        .iter()
        .map(|j| child_of(parent, j, &all_vars, step))
        .collect::<Result<Vec<_>>>()?;
    finish_result(children, None, true, in_sing)
}

/// Coordinate shear `v = p` becomes `v = 0`: substitute v -> v + p in the
/// generator. Every divisor hyperplane must stay coordinate.
pub fn shear(chart: &FoliatedChart, v: &str, p: &MPoly) -> Result<FoliatedChart> {
    let vars = chart.vars().to_vec();
    if !vars.iter().any(|w| w == v) {
        return Err(Error::VariableMismatch(format!(
            "shear variable `{v}` not in chart variables {vars:?}"
        )));
    }
    let p = p.aligned_to(&vars)?;
    if p.degree_in(v) > 0 {
        return Err(Error::InvalidScript(format!(
            "shear polynomial must not involve `{v}`"
        )));
    }
    if !p.is_zero() {
        if let Some(d) = chart.divisor_component(v) {
            return Err(Error::DivisorNotPreserved { var: d.var.clone() });
        }
    }
    let images: Vec<MPoly> = vars
        .iter()
        .map(|w| {
            if w == v {
                MPoly::var_owned(&vars, v).add(&p)
            } else {
                MPoly::var_owned(&vars, w)
            }
        })
        .collect();
    let map = PolyMap::new(&vars, &vars, images)?;
    let form = chart.form().pullback(&map)?.reduce_monomial_content();
    let divisor: Vec<(&str, ComponentOrigin)> = chart
        .divisor
        .iter()
        .map(|d| (d.var.as_str(), d.origin.clone()))
        .collect();
    let mut out = FoliatedChart::new(&chart.id, form, &divisor)?;
    out.lineage = chart.lineage.clone();
    Ok(out)
}

/// Record a codimension-one "blow-up": the identity morphism that adds a
/// coordinate hyperplane to the divisor.
pub fn add_divisor_component(
    chart: &FoliatedChart,
    v: &str,
    origin: ComponentOrigin,
) -> Result<FoliatedChart> {
    if chart.divisor_component(v).is_some() {
        return Err(Error::InvalidScript(format!(
            "divisor component `{v}` already present"
        )));
    }
    let mut out = chart.clone();
    if !out.vars().iter().any(|w| w == v) {
        return Err(Error::VariableMismatch(format!(
            "divisor variable `{v}` not in chart variables {:?}",
            out.vars()
        )));
    }
    out.divisor.push(DivisorComponent {
        var: v.to_string(),
        origin,
        invariant: out.form().is_hyperplane_invariant(v),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ComponentOrigin;
    use crate::poly::parse_poly;

    fn xyz() -> Vec<&'static str> {
        vec!["x", "y", "z"]
    }

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn chart(coeffs: &[&str], vars: &[&str], divisor: &[&str]) -> FoliatedChart {
        let form = OneForm::parse(coeffs, vars).unwrap();
        let d: Vec<(&str, ComponentOrigin)> = divisor
            .iter()
            .map(|v| (*v, ComponentOrigin::Original))
            .collect();
        FoliatedChart::new("c0", form, &d).unwrap()
    }

    #[test]
    fn log_generic_order_examples() {
        let yz = strings(&["y", "z"]);

        let open_book = OneForm::parse(&["0", "-z", "y"], &xyz()).unwrap();
        let ord = log_generic_order(&open_book, &yz).unwrap();
        assert_eq!(ord.r, 2);
        assert_eq!(ord.nu_p, None);

        let phi2 = OneForm::parse(&["y^2", "-z^2", "2*y*z"], &xyz()).unwrap();
        let ord = log_generic_order(&phi2, &yz).unwrap();
        assert_eq!(ord.r, 2);
        assert_eq!(ord.nu_p, Some(3));

        let radial_cylinder = OneForm::parse(&["0", "2*y", "2*z"], &xyz()).unwrap();
        let ord = log_generic_order(&radial_cylinder, &yz).unwrap();
        assert_eq!(ord.r, 2);
        assert_eq!(ord.nu_p, Some(2));
    }

    #[test]
    fn classify_monoidal_examples() {
        let yz = strings(&["y", "z"]);

        let open_book = OneForm::parse(&["0", "-z", "y"], &xyz()).unwrap();
        assert_eq!(
            classify_monoidal(&open_book, &yz).unwrap().0,
            MonoidalClass::DicNV
        );

        let phi2 = OneForm::parse(&["y^2", "-z^2", "2*y*z"], &xyz()).unwrap();
        assert_eq!(
            classify_monoidal(&phi2, &yz).unwrap().0,
            MonoidalClass::DicV
        );

        let radial_cylinder = OneForm::parse(&["0", "2*y", "2*z"], &xyz()).unwrap();
        assert_eq!(
            classify_monoidal(&radial_cylinder, &yz).unwrap().0,
            MonoidalClass::NDic
        );
    }

    #[test]
    fn monoidal_open_book() {
        let c = chart(&["0", "-z", "y"], &xyz(), &["x"]);
        let res = monoidal_blowup(&c, &strings(&["y", "z"]), 1, false).unwrap();
        assert!(res.dicritical);
        assert_eq!(res.divided_power, 2);
        assert_eq!(res.children.len(), 2);

        // y-chart: dz', exceptional y dicritical.
        let yc = &res.children[0];
        assert_eq!(yc.exceptional_var, "y");
        assert_eq!(
            yc.chart.form(),
            &OneForm::parse(&["0", "0", "1"], &xyz()).unwrap()
        );
        // z-chart: -dy'.
        let zc = &res.children[1];
        assert_eq!(
            zc.chart.form(),
            &OneForm::parse(&["0", "-1", "0"], &xyz()).unwrap()
        );
        // Strict transform of the x-plane survives in both charts.
        assert!(yc.chart.divisor_component("x").is_some());
        assert!(zc.chart.divisor_component("x").is_some());
    }

    #[test]
    fn monoidal_phi3() {
        let c = chart(&["z^3", "2*y*z", "-2*y^2"], &xyz(), &[]);
        let res = monoidal_blowup(&c, &strings(&["y", "z"]), 1, false).unwrap();
        assert!(res.dicritical);
        assert_eq!(res.divided_power, 3);
        assert_eq!(res.class.as_ref().unwrap().0, MonoidalClass::DicNV);
        let yc = &res.children[0];
        assert_eq!(
            yc.chart.form(),
            &OneForm::parse(&["z^3", "0", "-2"], &xyz()).unwrap()
        );
        let zc = &res.children[1];
        assert_eq!(
            zc.chart.form(),
            &OneForm::parse(&["1", "2*y", "0"], &xyz()).unwrap()
        );
    }

    #[test]
    fn monoidal_ndic_example() {
        let c = chart(&["0", "2*y", "2*z"], &xyz(), &["x"]);
        let res = monoidal_blowup(&c, &strings(&["y", "z"]), 1, false).unwrap();
        assert!(!res.dicritical);
        assert_eq!(res.divided_power, 1);
        let yc = &res.children[0];
        assert_eq!(
            yc.chart.form(),
            &OneForm::parse(&["0", "2 + 2*z^2", "2*y*z"], &xyz()).unwrap()
        );
    }

    #[test]
    fn quadratic_cart_wheel() {
        let c = chart(&["y", "-x"], &["x", "y"], &[]);
        let res = quadratic_blowup(&c, 1, false).unwrap();
        assert!(res.dicritical);
        assert_eq!(res.divided_power, 2);
        let xc = &res.children[0];
        assert_eq!(
            xc.chart.form(),
            &OneForm::parse(&["0", "-1"], &["x", "y"]).unwrap()
        );
    }

    #[test]
    fn quadratic_open_book() {
        let c = chart(&["0", "-z", "y"], &xyz(), &[]);
        let res = quadratic_blowup(&c, 1, false).unwrap();
        assert!(res.dicritical);
        assert_eq!(res.divided_power, 2);
        let xc = &res.children[0];
        assert_eq!(
            xc.chart.form(),
            &OneForm::parse(&["0", "-z", "y"], &xyz()).unwrap()
        );
        // Still singular along y' = z' = 0.
        assert!(xc
            .chart
            .form()
            .is_singular_at(&[crate::poly::rat(5), crate::poly::rat(0), crate::poly::rat(0)])
            .unwrap());
    }

    #[test]
    fn quadratic_linear_family() {
        // λ = 2: x-chart form (λ-1) y dx - x dy, k = 1, non-dicritical.
        let c = chart(&["2*y", "-x"], &["x", "y"], &[]);
        let res = quadratic_blowup(&c, 1, false).unwrap();
        assert!(!res.dicritical);
        assert_eq!(res.divided_power, 1);
        let xc = &res.children[0];
        assert_eq!(
            xc.chart.form(),
            &OneForm::parse(&["y", "-x"], &["x", "y"]).unwrap()
        );
    }

    #[test]
    fn shear_examples() {
        let c = chart(&["0", "-z", "y"], &xyz(), &[]);
        let p = parse_poly("x*y", &xyz()).unwrap();
        let sheared = shear(&c, "z", &p).unwrap();
        assert_eq!(
            sheared.form(),
            &OneForm::parse(&["y^2", "-z", "y"], &xyz()).unwrap()
        );

        let zero = parse_poly("0", &xyz()).unwrap();
        let identity = shear(&c, "z", &zero).unwrap();
        assert_eq!(identity.form(), c.form());

        let with_divisor = chart(&["0", "-z", "y"], &xyz(), &["z"]);
        let q = parse_poly("x", &xyz()).unwrap();
        assert!(matches!(
            shear(&with_divisor, "z", &q),
            Err(Error::DivisorNotPreserved { .. })
        ));
    }

    #[test]
    fn e_controlled_examples() {
        let curve = Center::Curve {
            vars: strings(&["y", "z"]),
        };
        let c = chart(&["0", "-z", "y"], &xyz(), &["x"]);
        assert!(check_e_controlled(&c, &curve));

        let no_divisor = chart(&["0", "-z", "y"], &xyz(), &[]);
        assert!(!check_e_controlled(&no_divisor, &curve));

        // §6.1 shape: center (y,w) with the divisor on w only.
        let c61 = chart(&["y^2", "-w", "y"], &["x", "y", "w"], &["w"]);
        let center = Center::Curve {
            vars: strings(&["y", "w"]),
        };
        assert!(!check_e_controlled(&c61, &center));
        assert!(check_e_controlled(&c61, &Center::Point));
    }

    #[test]
    fn inadmissible_center_rejected() {
        // dz is regular; the curve (x=y=0) is not in the singular locus.
        let c = chart(&["0", "0", "1"], &xyz(), &[]);
        assert!(matches!(
            monoidal_blowup(&c, &strings(&["x", "y"]), 1, false),
            Err(Error::InadmissibleCenter(_))
        ));
        // With the override it runs (Definition of vertical blow-ups does
        // not ask invariance).
        assert!(monoidal_blowup(&c, &strings(&["x", "y"]), 1, true).is_ok());
    }

    #[test]
    fn sheared_six_one_germ_blowup() {
        // y² dx - w dy + y dw with divisor w = 0, center (y, w): DicNV,
        // children dx + dw and y² dx - dy.
        let c = chart(&["y^2", "-w", "y"], &["x", "y", "w"], &["w"]);
        let res = monoidal_blowup(&c, &strings(&["y", "w"]), 1, false).unwrap();
        assert!(res.dicritical);
        assert_eq!(res.class.as_ref().unwrap().0, MonoidalClass::DicNV);
        assert_eq!(res.divided_power, 2);
        let yc = &res.children[0];
        assert_eq!(
            yc.chart.form(),
            &OneForm::parse(&["1", "0", "1"], &["x", "y", "w"]).unwrap()
        );
        // Strict transform of (w = 0) survives in the y-chart.
        assert!(yc.chart.divisor_component("w").is_some());
        let wc = &res.children[1];
        assert_eq!(
            wc.chart.form(),
            &OneForm::parse(&["y^2", "-1", "0"], &["x", "y", "w"]).unwrap()
        );
        // In the w-chart the strict transform of (w = 0) is out of sight.
        assert_eq!(wc.chart.divisor.len(), 1);
    }
}
