//! Coordinate charts carrying a normal-crossings divisor (a set of
//! coordinate hyperplanes, each flagged invariant or dicritical) and a
//! reduced foliation generator. Models one chart of a foliated space.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::OneForm;
use crate::locus::certify_common_zeros_empty;
use crate::poly::{MPoly, Rat};
use crate::verdict::Emptiness;

/// Where a divisor component came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentOrigin {
    Original,
    /// Created as the exceptional divisor of the given script step.
    Exceptional { step: usize },
}

/// One divisor component: the coordinate hyperplane (var = 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorComponent {
    pub var: String,
    pub origin: ComponentOrigin,
    /// Cached: equals `form.is_hyperplane_invariant(var)`.
    pub invariant: bool,
}

/// Lineage of a chart inside a resolution tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lineage {
    Root,
    Child {
        parent: String,
        step: usize,
    },
}

/// A chart of a foliated space: variables, divisor, reduced generator.
#[derive(Debug, Clone)]
pub struct FoliatedChart {
    pub id: String,
    vars: Vec<String>,
    pub divisor: Vec<DivisorComponent>,
    form: OneForm,
    pub lineage: Lineage,
}

/// Verdict of the pointwise simple-regular test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimpleVerdict {
    Simple,
    NotSimple(String),
    Singular,
}

impl FoliatedChart {
    pub fn new(id: &str, form: OneForm, divisor_vars: &[(&str, ComponentOrigin)]) -> Result<Self> {
        let vars = form.vars().to_vec();
        if !form.is_reduced() {
            return Err(Error::UnreducedGenerator {
                var: "monomial content".into(),
            });
        }
        let mut divisor = Vec::new();
        for (v, origin) in divisor_vars {
            if !vars.iter().any(|w| w == v) {
                return Err(Error::VariableMismatch(format!(
                    "divisor variable `{v}` not in chart variables {vars:?}"
                )));
            }
            if divisor.iter().any(|d: &DivisorComponent| d.var == *v) {
                return Err(Error::InvalidScript(format!(
                    "duplicate divisor component `{v}`"
                )));
            }
            divisor.push(DivisorComponent {
                var: v.to_string(),
                origin: origin.clone(),
                invariant: form.is_hyperplane_invariant(v),
            });
        }
        Ok(FoliatedChart {
            id: id.to_string(),
            vars,
            divisor,
            form,
            lineage: Lineage::Root,
        })
    }

    pub fn with_lineage(mut self, parent: &str, step: usize) -> Self {
        self.lineage = Lineage::Child {
            parent: parent.to_string(),
            step,
        };
        self
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn form(&self) -> &OneForm {
        &self.form
    }

    /// Refresh cached invariance flags (after any change to the form).
    pub fn recompute_flags(&mut self) {
        for d in &mut self.divisor {
            d.invariant = self.form.is_hyperplane_invariant(&d.var);
        }
    }

    pub fn divisor_component(&self, var: &str) -> Option<&DivisorComponent> {
        self.divisor.iter().find(|d| d.var == var)
    }

    /// Partition the divisor into invariant and dicritical components.
    pub fn classify_components(&self) -> (Vec<&DivisorComponent>, Vec<&DivisorComponent>) {
        self.divisor.iter().partition(|d| d.invariant)
    }

    pub fn dicritical_vars(&self) -> Vec<&str> {
        self.divisor
            .iter()
            .filter(|d| !d.invariant)
            .map(|d| d.var.as_str())
            .collect()
    }

    /// A dicritical corner: as many dicritical components as the dimension
    /// (coordinate components all meet at the chart origin).
    pub fn has_dicritical_corner(&self) -> bool {
        self.dicritical_vars().len() == self.dim()
    }

    /// Pointwise simple-regular test at a rational point, in the fixed
    /// chart frame. Singular when the covector vanishes; otherwise the
    /// normal-crossings conditions on the divisor components through the
    /// point are checked on the covector.
    pub fn is_simple_regular_at(&self, point: &[Rat]) -> Result<SimpleVerdict> {
        let covector = self.form.evaluate(point)?;
        if covector.iter().all(|c| c.is_zero()) {
            return Ok(SimpleVerdict::Singular);
        }
        let through: Vec<&DivisorComponent> = self
            .divisor
            .iter()
            .filter(|d| {
                let i = self.vars.iter().position(|v| *v == d.var).unwrap();
                point[i].is_zero()
            })
            .collect();
        let invariant_through: Vec<&&DivisorComponent> =
            through.iter().filter(|d| d.invariant).collect();

        if !invariant_through.is_empty() {
            if invariant_through.len() > 1 {
                return Ok(SimpleVerdict::NotSimple(format!(
                    "{} invariant components through the point",
                    invariant_through.len()
                )));
            }
            // Tangency to the single invariant component: covector must be
            // proportional to d(var), i.e. vanish in every other direction.
            let d = invariant_through[0];
            let di = self.vars.iter().position(|v| *v == d.var).unwrap();
            let tangent = covector
                .iter()
                .enumerate()
                .all(|(i, c)| i == di || c.is_zero());
            if tangent {
                Ok(SimpleVerdict::Simple)
            } else {
                Ok(SimpleVerdict::NotSimple(format!(
                    "covector not proportional to d({})",
                    d.var
                )))
            }
        } else {
            // All components through the point are dicritical.
            if through.len() >= self.dim() {
                return Ok(SimpleVerdict::NotSimple(
                    "dicritical corner: as many components as the dimension".into(),
                ));
            }
            // The covector restricted to the intersection of their tangent
            // spaces must survive, so that it is d(first coordinate) of a
            // normal-crossings frame.
            let through_idx: Vec<usize> = through
                .iter()
                .map(|d| self.vars.iter().position(|v| *v == d.var).unwrap())
                .collect();
            let survives = covector
                .iter()
                .enumerate()
                .any(|(i, c)| !through_idx.contains(&i) && !c.is_zero());
            if survives {
                Ok(SimpleVerdict::Simple)
            } else {
                Ok(SimpleVerdict::NotSimple(
                    "covector annihilates the intersection of the components' tangent spaces"
                        .into(),
                ))
            }
        }
    }

    /// Generators of the tangency locus between the foliation and a
    /// dicritical component, with a certified emptiness verdict.
    pub fn tangency_locus(&self, var: &str) -> Result<(Vec<MPoly>, Emptiness)> {
        let d = self
            .divisor_component(var)
            .ok_or_else(|| Error::VariableMismatch(format!("no divisor component `{var}`")))?;
        if d.invariant {
            return Err(Error::ComponentInvariant { var: var.into() });
        }
        let restricted = self.form.restrict_to_hyperplane(var);
        let gens: Vec<MPoly> = restricted.coeffs().to_vec();
        let verdict = certify_common_zeros_empty(&gens);
        Ok((gens, verdict))
    }
}

/// Chart JSON shape: `{"id":"c0","vars":[...],"divisor":[...],"coeffs":[...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartJson {
    pub id: String,
    pub vars: Vec<String>,
    pub divisor: Vec<DivisorComponentJson>,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorComponentJson {
    pub var: String,
    #[serde(default = "default_origin")]
    pub origin: String,
}

fn default_origin() -> String {
    "original".to_string()
}

impl FoliatedChart {
    pub fn to_json(&self) -> ChartJson {
        ChartJson {
            id: self.id.clone(),
            vars: self.vars.clone(),
            divisor: self
                .divisor
                .iter()
                .map(|d| DivisorComponentJson {
                    var: d.var.clone(),
                    origin: match &d.origin {
                        ComponentOrigin::Original => "original".to_string(),
                        ComponentOrigin::Exceptional { step } => format!("exceptional:{step}"),
                    },
                })
                .collect(),
            coeffs: self.form.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(j: &ChartJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|t| crate::poly::parse_poly_owned(t, &j.vars))
            .collect::<Result<Vec<_>>>()?;
        let form = OneForm::new_owned(&j.vars, coeffs)?;
        let divisor: Vec<(&str, ComponentOrigin)> = j
            .divisor
            .iter()
            .map(|d| {
                let origin = if d.origin == "original" {
                    ComponentOrigin::Original
                } else if let Some(step) = d
                    .origin
                    .strip_prefix("exceptional:")
                    .and_then(|s| s.parse().ok())
                {
                    ComponentOrigin::Exceptional { step }
                } else {
                    ComponentOrigin::Original
                };
                (d.var.as_str(), origin)
            })
            .collect();
        FoliatedChart::new(&j.id, form, &divisor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn open_book() -> OneForm {
        OneForm::parse(&["0", "-z", "y"], &["x", "y", "z"]).unwrap()
    }

    fn chart(form: OneForm, divisor: &[&str]) -> FoliatedChart {
        let d: Vec<(&str, ComponentOrigin)> = divisor
            .iter()
            .map(|v| (*v, ComponentOrigin::Original))
            .collect();
        FoliatedChart::new("c0", form, &d).unwrap()
    }

    #[test]
    fn classify_open_book_divisor() {
        let c = chart(open_book(), &["x", "y", "z"]);
        let (inv, dic) = c.classify_components();
        let inv: Vec<&str> = inv.iter().map(|d| d.var.as_str()).collect();
        let dic: Vec<&str> = dic.iter().map(|d| d.var.as_str()).collect();
        assert_eq!(inv, vec!["y", "z"]);
        assert_eq!(dic, vec!["x"]);
    }

    #[test]
    fn classify_transverse_coordinate_form() {
        let dx = OneForm::parse(&["1", "0", "0"], &["x", "y", "z"]).unwrap();
        // y = 0 is transverse to the leaves x = const, hence dicritical.
        let c = chart(dx, &["y"]);
        let (inv, dic) = c.classify_components();
        assert!(inv.is_empty());
        assert_eq!(dic.len(), 1);
    }

    #[test]
    fn simple_regular_verdicts() {
        // Open book after the monoidal blow-up, y-chart: dz', exceptional
        // divisor y' dicritical; transverse everywhere.
        let dz = OneForm::parse(&["0", "0", "1"], &["x", "y", "z"]).unwrap();
        let mut c = chart(dz, &["y"]);
        c.divisor[0].origin = ComponentOrigin::Exceptional { step: 0 };
        assert_eq!(
            c.is_simple_regular_at(&[rat(0), rat(0), rat(0)]).unwrap(),
            SimpleVerdict::Simple
        );

        // dx + dw with two dicritical components through the origin.
        let w = OneForm::parse(&["1", "0", "1"], &["x", "y", "w"]).unwrap();
        let c = chart(w, &["y", "w"]);
        assert_eq!(
            c.is_simple_regular_at(&[rat(0), rat(0), rat(0)]).unwrap(),
            SimpleVerdict::Simple
        );

        // Singular origin of the open book.
        let c = chart(open_book(), &["y"]);
        assert_eq!(
            c.is_simple_regular_at(&[rat(0), rat(0), rat(0)]).unwrap(),
            SimpleVerdict::Singular
        );
    }

    #[test]
    fn simple_fails_on_corners_and_tangency() {
        // Three dicritical components through the origin of a 3-chart.
        let w = OneForm::parse(&["1", "1", "1"], &["x", "y", "z"]).unwrap();
        let c = chart(w, &["x", "y", "z"]);
        assert!(matches!(
            c.is_simple_regular_at(&[rat(0), rat(0), rat(0)]).unwrap(),
            SimpleVerdict::NotSimple(_)
        ));
        assert!(c.has_dicritical_corner());

        // Invariant component with a covector not proportional to it:
        // z = 0 is invariant for z dz... use w = y dx + z dz: restriction
        // to z = 0 is y dx, not invariant; use w = z dx + z dz instead? A
        // cleaner case: w = dx with invariant component x and a transverse
        // covector at a point off the tangency: at (0,1,0), covector dx is
        // proportional to dx: Simple.
        let dx = OneForm::parse(&["1", "0", "0"], &["x", "y", "z"]).unwrap();
        let c = chart(dx, &["x"]);
        assert_eq!(
            c.is_simple_regular_at(&[rat(0), rat(1), rat(0)]).unwrap(),
            SimpleVerdict::Simple
        );
    }

    #[test]
    fn tangency_locus_examples() {
        // dz with dicritical exceptional y: restricted form has constant
        // coefficient, tangency locus empty.
        let dz = OneForm::parse(&["0", "0", "1"], &["x", "y", "z"]).unwrap();
        let c = chart(dz, &["y"]);
        let (_, verdict) = c.tangency_locus("y").unwrap();
        assert_eq!(verdict, Emptiness::Empty);

        // φ₂ germ, test plane x = 0: tangency curve z = 0.
        let phi2 = OneForm::parse(&["y^2", "-z^2", "2*y*z"], &["x", "y", "z"]).unwrap();
        let c = chart(phi2, &["x"]);
        let (_, verdict) = c.tangency_locus("x").unwrap();
        assert!(matches!(verdict, Emptiness::NonEmpty { .. }));

        // dx against divisor y = 0.
        let dx = OneForm::parse(&["1", "0", "0"], &["x", "y", "z"]).unwrap();
        let c = chart(dx, &["y"]);
        let (_, verdict) = c.tangency_locus("y").unwrap();
        assert_eq!(verdict, Emptiness::Empty);

        // Tangency of an invariant component is an error.
        let c = chart(open_book(), &["y"]);
        assert!(matches!(
            c.tangency_locus("y"),
            Err(Error::ComponentInvariant { .. })
        ));
    }

    #[test]
    fn corner_counts() {
        let w = OneForm::parse(&["1", "0", "1"], &["x", "y", "w"]).unwrap();
        let c = chart(w.clone(), &["y", "w"]);
        assert!(!c.has_dicritical_corner());
        let c = chart(w, &[]);
        assert!(!c.has_dicritical_corner());
    }
}
