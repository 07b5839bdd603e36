//! JSON shapes for command reports. Coefficients are decimal strings.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thom_core::chern::{BundleRing, ProductSchurExpansion, StableExpansion};
use thom_core::grassmannian::GrassmannClass;
use thom_core::thom::PositivityReport;
use thom_core::Partition;

pub fn ring(r: &BundleRing) -> Value {
    Value::Array(r.slots().iter().map(|s| json!({ "name": s.name, "rank": s.rank })).collect())
}

fn product_term(r: &BundleRing, dual: &Value, key: &[Partition], c: &BigInt) -> Value {
    let mut mono = Map::new();
    for (s, p) in r.slots().iter().zip(key) {
        mono.insert(s.name.clone(), json!(p));
    }
    json!({ "monomial": mono, "dual": dual, "coeff": c.to_string() })
}

fn dual_flags(exp: &ProductSchurExpansion) -> Value {
    let mut flags = Map::new();
    for (s, v) in exp.ring().slots().iter().zip(exp.variance()) {
        flags.insert(s.name.clone(), Value::Bool(v.is_dual()));
    }
    Value::Object(flags)
}

pub fn positivity(exp: &ProductSchurExpansion, rep: &PositivityReport) -> Value {
    let dual = dual_flags(exp);
    let negative: Vec<Value> = rep.negative_terms.iter().map(|(k, c)| product_term(exp.ring(), &dual, k, c)).collect();
    json!({ "nonnegative": rep.nonnegative, "sum": rep.sum.to_string(), "negative_terms": negative })
}

pub fn expansion(exp: &ProductSchurExpansion, rep: &PositivityReport) -> Value {
    let dual = dual_flags(exp);
    let terms: Vec<Value> = exp.terms().iter().map(|(k, c)| product_term(exp.ring(), &dual, &k.0, c)).collect();
    json!({
        "ring": ring(exp.ring()),
        "degree": exp.degree(),
        "terms": terms,
        "positivity": positivity(exp, rep),
    })
}

pub fn positivity_line(rep: &PositivityReport) -> String {
    if rep.nonnegative {
        format!("positivity: all {} coefficients nonnegative, sum {}", rep.total_terms, rep.sum)
    } else {
        format!("positivity: {} of {} coefficients negative, sum {}", rep.negative_terms.len(), rep.total_terms, rep.sum)
    }
}

pub fn stable(r: &BundleRing, st: &StableExpansion) -> Value {
    let terms: Vec<Value> = st.terms.iter().map(|(p, c)| json!({ "partition": p, "coeff": c.to_string() })).collect();
    json!({ "ring": ring(r), "e": st.e_slot, "f": st.f_slot, "degree": st.degree, "terms": terms })
}

pub fn grassmann_class(c: &GrassmannClass) -> Value {
    Value::Array(c.terms().iter().map(|(k, v)| json!({ "key": k.0, "coeff": v.to_string() })).collect())
}
