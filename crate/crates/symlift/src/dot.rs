//! Graphviz export. Every unit of multiplicity becomes its own arc, and
//! partition classes become fill colours.

use std::fmt::Write;

use symlift_core::{DiGraph, Partition};

const PALETTE: [&str; 10] = [
    "#bdbdbd", "#4d4d4d", "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf",
];

/// Rendering switches.
#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    /// Draw each pair of opposite arcs as one `dir=both` edge.
    pub collapse_mutual: bool,
}

/// Colour of class `c`; classes beyond the palette reuse it cyclically.
pub fn class_color(c: usize) -> &'static str {
    PALETTE[c % PALETTE.len()]
}

/// DOT source for `g`, with vertices numbered from 1.
pub fn to_dot(g: &DiGraph, p: Option<&Partition>, opts: &DotOptions) -> String {
    let n = g.n();
    let mut s = String::new();
    s.push_str("digraph G {\n");
    s.push_str("    node [shape=circle, style=filled, fillcolor=white];\n");
    match p {
        Some(p) => {
            for (c, class) in p.classes().iter().enumerate() {
                writeln!(s, "    subgraph class{} {{", c + 1).unwrap();
                writeln!(s, "        node [fillcolor=\"{}\"];", class_color(c)).unwrap();
                for &v in class {
                    writeln!(s, "        {};", v + 1).unwrap();
                }
                s.push_str("    }\n");
            }
        }
        None => {
            for v in 0..n {
                writeln!(s, "    {};", v + 1).unwrap();
            }
        }
    }
    for src in 0..n {
        for dst in 0..n {
            let forward = g.get(dst, src);
            let both = if opts.collapse_mutual && src != dst { forward.min(g.get(src, dst)) } else { 0 };
            // a mutual pair is drawn once, from its smaller end
            if src < dst {
                for _ in 0..both {
                    writeln!(s, "    {} -> {} [dir=both];", src + 1, dst + 1).unwrap();
                }
            }
            for _ in both..forward {
                writeln!(s, "    {} -> {};", src + 1, dst + 1).unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}
