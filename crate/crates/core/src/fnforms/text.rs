use std::fmt;

use super::{axes_of, AxisSet, Form, FormValue, MatrixForm, Poly, PolyMatrix, PolyVec, ScalarForm, TangentForm, VecForm, AXIS_NAMES};

/// `dx^dz`, or `1` for the empty subset.
pub fn subset_name(mask: AxisSet) -> String {
    let names: Vec<String> = axes_of(mask).map(|k| format!("d{}", AXIS_NAMES[k])).collect();
    if names.is_empty() {
        "1".into()
    } else {
        names.join("^")
    }
}

/// Components ordered lexicographically by their axis lists.
fn sorted<T: FormValue>(f: &Form<T>) -> Vec<(AxisSet, &T)> {
    let mut v: Vec<(AxisSet, &T)> = f.components().collect();
    v.sort_by_key(|(m, _)| axes_of(*m).collect::<Vec<_>>());
    v
}

fn quoted(p: &Poly) -> String {
    format!("\"{p}\"")
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(quoted).collect();
        write!(f, "[{}]", items.join(", "))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.0.iter().map(|r| PolyVec(r.clone()).to_string()).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn write_body<T: FormValue>(
    f: &mut fmt::Formatter<'_>,
    form: &Form<T>,
    value: impl Fn(&T) -> String,
) -> fmt::Result {
    let parts: Vec<String> = sorted(form).into_iter().map(|(m, v)| format!("{} : {}", subset_name(m), value(v))).collect();
    if parts.is_empty() {
        write!(f, "{{}}")
    } else {
        write!(f, "{{ {} }}", parts.join("; "))
    }
}

impl fmt::Display for ScalarForm {
    /// `form deg=1 dim=2 { dy : poly "x" }`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "form deg={} dim={} ", self.degree(), self.dim())?;
        write_body(f, self, |p| format!("poly {}", quoted(p)))
    }
}

impl fmt::Display for MatrixForm {
    /// `mform deg=1 dim=2 fibre=2 { dy : [["0", "x"], ["0", "0"]] }`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibre = self.components().next().map_or(0, |(_, m)| m.size());
        write!(f, "mform deg={} dim={} fibre={fibre} ", self.degree(), self.dim())?;
        write_body(f, self, PolyMatrix::to_string)
    }
}

impl fmt::Display for VecForm {
    /// `vform deg=0 dim=2 fibre=2 { 1 : ["x", "0"] }`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibre = self.components().next().map_or(0, |(_, v)| v.len());
        write!(f, "vform deg={} dim={} fibre={fibre} ", self.degree(), self.dim())?;
        write_body(f, self, PolyVec::to_string)
    }
}

impl fmt::Display for TangentForm {
    /// `form deg=1 dim=2 { dy -> axis x : poly "x" }`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "form deg={} dim={} ", self.degree(), self.dim())?;
        let mut parts: Vec<(Vec<usize>, usize, String)> = Vec::new();
        for (axis, omega) in self.axes().iter().enumerate() {
            for (m, p) in omega.components() {
                let line = format!("{} -> axis {} : poly {}", subset_name(m), AXIS_NAMES[axis], quoted(p));
                parts.push((axes_of(m).collect(), axis, line));
            }
        }
        parts.sort();
        if parts.is_empty() {
            return write!(f, "{{}}");
        }
        let lines: Vec<String> = parts.into_iter().map(|(_, _, l)| l).collect();
        write!(f, "{{ {} }}", lines.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_print_with_sorted_subsets() {
        let w = ScalarForm::term(3, &[1, 2], "x")
            .unwrap()
            .add(&ScalarForm::term(3, &[0, 2], "y").unwrap())
            .unwrap();
        assert_eq!(w.to_string(), r#"form deg=2 dim=3 { dx^dz : poly "y"; dy^dz : poly "x" }"#);
        let t = TangentForm::along(&ScalarForm::term(2, &[1], "x").unwrap(), 0);
        assert_eq!(t.to_string(), r#"form deg=1 dim=2 { dy -> axis x : poly "x" }"#);
        let a: MatrixForm = Form::basis(2, &[1], PolyMatrix::parse(&[&["0", "x"], &["0", "0"]], 2).unwrap());
        assert_eq!(a.to_string(), r#"mform deg=1 dim=2 fibre=2 { dy : [["0", "x"], ["0", "0"]] }"#);
        assert_eq!(ScalarForm::zero(2, 0).to_string(), "form deg=0 dim=2 {}");
    }
}
