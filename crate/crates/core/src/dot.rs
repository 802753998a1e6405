//! Graphviz output for eyeballing models.
//!
//! IMDP edges carry `action [lo, hi]`. Each PA transition becomes a small
//! point node with one edge per successor, labelled by its probability.

use std::fmt::Write;

use crate::model::{AnyModel, Imdp, Model, Pa};
use crate::rational;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

fn states(out: &mut String, m: &impl Model) {
    for s in 0..m.num_states() {
        let name = escape(m.state_name(s));
        let props: Vec<&str> = m.label(s).iter().map(String::as_str).collect();
        // `\n` is a line break inside a Graphviz label
        let text = if props.is_empty() {
            name
        } else {
            format!("{name}\\n{{{}}}", escape(&props.join(",")))
        };
        let shape = if s == m.initial() {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  n{s} [label=\"{text}\", shape={shape}];");
    }
}

pub fn imdp_to_dot(m: &Imdp) -> String {
    let mut out = String::from("digraph imdp {\n  rankdir=LR;\n");
    states(&mut out, m);
    for ((s, a), row) in m.rows() {
        for (t, iv) in row {
            let label = format!(
                "{} [{}, {}]",
                m.action_name(a),
                rational::format(iv.lo()),
                rational::format(iv.hi())
            );
            let _ = writeln!(out, "  n{s} -> n{t} [label={}];", quote(&label));
        }
    }
    out.push_str("}\n");
    out
}

pub fn pa_to_dot(a: &Pa) -> String {
    let mut out = String::from("digraph pa {\n  rankdir=LR;\n");
    states(&mut out, a);
    for s in 0..a.num_states() {
        for (k, d) in a.transitions(s).iter().enumerate() {
            let mid = format!("n{s}_{k}");
            let _ = writeln!(out, "  {mid} [shape=point];");
            let _ = writeln!(out, "  n{s} -> {mid} [arrowhead=none];");
            for (t, p) in d.iter() {
                let _ = writeln!(
                    out,
                    "  {mid} -> n{t} [label={}];",
                    quote(&rational::format(p))
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn to_dot(m: &AnyModel) -> String {
    match m {
        AnyModel::Imdp(m) => imdp_to_dot(m),
        AnyModel::Pa(a) => pa_to_dot(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imdp_edges_show_intervals() {
        let m = Imdp::builder()
            .state("t", ["init"])
            .state("u", Vec::<String>::new())
            .interval("t", "a", "u", "0.1", "1")
            .interval("t", "a", "t", "0", "0.9")
            .interval("u", "a", "u", "1", "1")
            .build()
            .unwrap();
        let dot = imdp_to_dot(&m);
        assert!(dot.starts_with("digraph imdp {"));
        assert!(dot.contains("n0 -> n1 [label=\"a [1/10, 1]\"];"));
        assert!(dot.contains("n0 [label=\"t\\n{init}\", shape=doublecircle];"));
        assert!(dot.contains("n1 [label=\"u\", shape=circle];"));
    }

    #[test]
    fn pa_transitions_get_point_nodes() {
        let a = Pa::builder()
            .state("s", ["p"])
            .transition("s", &[("s", "1")])
            .build()
            .unwrap();
        let dot = pa_to_dot(&a);
        assert!(dot.contains("n0_0 [shape=point];"));
        assert!(dot.contains("n0_0 -> n0 [label=\"1\"];"));
    }
}
