//! JSON rendering of the chart registry for the command-line `charts` dump.

use algebra_core::GaussQ;
use num::{One, Zero};
use serde_json::{json, Value};

use crate::charts::{all_charts, ChartSpec};
use crate::ratfunc::poly_to_string;

fn gauss_str(g: &GaussQ) -> String {
    if g.im.is_zero() {
        return g.re.to_string();
    }
    if g.re.is_zero() {
        if g.im.is_one() {
            return "i".to_string();
        }
        return format!("{}*i", g.im);
    }
    format!("{} + {}*i", g.re, g.im)
}

fn chart_json(spec: &ChartSpec) -> Value {
    let vars = spec.vars;
    json!({
        "name": spec.name.ascii(),
        "display": spec.name.to_string(),
        "coordinates": [vars.0, vars.1],
        "to_base": [spec.to_base.c1.render(vars), spec.to_base.c2.render(vars)],
        "from_base": [spec.from_base.c1.render(("x", "y")), spec.from_base.c2.render(("x", "y"))],
        "discriminants": spec
            .discriminants
            .iter()
            .map(|d| {
                json!({
                    "label": d.label,
                    "polynomial": poly_to_string(&d.poly, vars),
                    "exponent": d.exponent.to_string(),
                })
            })
            .collect::<Vec<_>>(),
        "coordinate_exponents": [
            spec.coord_exponents.0.to_string(),
            spec.coord_exponents.1.to_string(),
        ],
        "normalization_constant": spec.n_p.to_string(),
        "mirror_map_constants": [gauss_str(&spec.c1), gauss_str(&spec.c2)],
        "topology": {
            "cubic": spec.topology.cubic,
            "c2": [spec.topology.c2.0, spec.topology.c2.1],
            "chi": spec.topology.chi,
            "h11": spec.topology.h11,
            "kappa": spec.topology.kappa(),
        },
    })
}

/// The full registry as a JSON value, including all exponent tables.
pub fn registry_json() -> Value {
    json!({
        "charts": all_charts().map(chart_json).collect::<Vec<_>>(),
    })
}
