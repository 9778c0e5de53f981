//! Output formats: region CSV and SVG, generator listings, M2 scripts.

use std::fmt::Write;

use serde::Serialize;

use rees_core::field::FieldSpec;
use rees_core::generators::GeneratorSet;
use rees_core::plane_rees::{RegionDiagram, RegionStatus};
use rees_core::poly::VarSpace;
use rees_core::ringmaps::RingMap;

use crate::CliError;

#[derive(Serialize)]
struct RegionRow {
    a: u32,
    b: u32,
    i: i64,
    j: i64,
    status: String,
}

pub fn region_csv(diagram: &RegionDiagram) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for e in &diagram.entries {
        w.serialize(RegionRow { a: e.a, b: e.b, i: e.bidegree.0, j: e.bidegree.1, status: e.status.to_string() })
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn region_text(diagram: &RegionDiagram) -> String {
    let mut out = format!("d={} mu={} mu1={} mu2={}\n", diagram.d, diagram.mu(), diagram.mu1, diagram.mu2);
    for e in &diagram.entries {
        let _ = writeln!(out, "(a,b)=({},{}) bidegree=({},{}) {}", e.a, e.b, e.bidegree.0, e.bidegree.1, e.status);
    }
    let (pi, pj) = diagram.p_marker;
    let (qi, qj) = diagram.q_marker;
    let _ = writeln!(out, "p at ({pi},{pj}), q at ({qi},{qj})");
    out
}

/// Dot plot of the region: filled dots for members that exist, open circles
/// for the rest. Horizontal axis is the T-degree, vertical the Z-grade.
pub fn region_svg(diagram: &RegionDiagram) -> String {
    const CELL: i64 = 24;
    const PAD: i64 = 48;
    let imax = diagram.entries.iter().map(|e| e.bidegree.0).chain([diagram.q_marker.0]).max().unwrap_or(0);
    let jmax = diagram.entries.iter().map(|e| e.bidegree.1).max().unwrap_or(1);
    let (w, h) = (2 * PAD + CELL * (imax + 1), 2 * PAD + CELL * (jmax + 1));
    let px = |i: i64| PAD + CELL * i;
    let py = |j: i64| h - PAD - CELL * j;
    let mut s =
        format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n");
    let _ = writeln!(
        s,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        px(0),
        py(0),
        w - PAD / 2,
        py(0)
    );
    let _ =
        writeln!(s, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>", px(0), py(0), px(0), PAD / 2);
    let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">T-degree</text>", w - PAD / 2, py(0) + 32);
    let _ = writeln!(s, "<text x=\"{}\" y=\"{}\">Z-grade</text>", px(0) + 6, PAD / 2);
    for i in 0..=imax {
        let _ =
            writeln!(s, "<text x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"middle\">{i}</text>", px(i), py(0) + 14);
    }
    for j in 1..=jmax {
        let _ =
            writeln!(s, "<text x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"end\">{j}</text>", px(0) - 6, py(j) + 3);
    }
    for e in &diagram.entries {
        let fill = match e.status {
            RegionStatus::Guaranteed | RegionStatus::AttemptedOk => "black",
            RegionStatus::NotGuaranteed | RegionStatus::AttemptedFailed => "white",
        };
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{fill}\" stroke=\"black\"><title>(a,b)=({},{}) {}</title></circle>",
            px(e.bidegree.0),
            py(e.bidegree.1),
            e.a,
            e.b,
            e.status
        );
    }
    for (label, (i, j)) in [("p", diagram.p_marker), ("q", diagram.q_marker)] {
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"red\"/><text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"red\">{label}</text>",
            px(i) - 4,
            py(j) - 4,
            px(i) + 6,
            py(j) - 6
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn generator_text(set: &GeneratorSet) -> String {
    format!("{set}count: {}\n", set.len())
}

fn m2_field(field: FieldSpec) -> String {
    match field {
        FieldSpec::Rationals => "QQ".into(),
        FieldSpec::Prime(p) => format!("ZZ/{p}"),
    }
}

fn m2_ring(name: &str, field: FieldSpec, space: &VarSpace, heft: Option<(i64, i64)>) -> String {
    let degs: Vec<String> = (0..space.nvars())
        .map(|v| {
            let (a, b) = space.bigrade(v);
            format!("{{{a},{b}}}")
        })
        .collect();
    let heft = heft.map(|(a, b)| format!(", Heft => {{{a},{b}}}")).unwrap_or_default();
    format!("{name} = {}[{}, Degrees => {{{}}}{heft}];\n", m2_field(field), space.names().join(","), degs.join(","))
}

/// What the script asserts about the ideal generated by `set`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum M2Claim {
    /// The generators span the whole kernel, minimally.
    Equal,
    /// The generators lie in the kernel.
    Contained,
}

/// Standalone Macaulay2 script comparing `set` with the kernel of `map`.
pub fn m2_script(set: &GeneratorSet, map: &RingMap, target: &VarSpace, d: u32, claim: M2Claim) -> String {
    let field = set.field;
    let mut s = String::new();
    let _ = writeln!(s, "-- kernel check written by rees-lift");
    s.push_str(&m2_ring("R", field, &set.space, None));
    s.push_str(&m2_ring("S", field, target, Some((1, d as i64 + 1))));
    let images: Vec<String> = map.images().iter().map(|p| format!("  {p}")).collect();
    let _ = writeln!(s, "use S;\nF = map(S, R, {{\n{}\n}});", images.join(",\n"));
    let _ = writeln!(s, "use R;\nG = {{");
    for (n, g) in set.items.iter().enumerate() {
        let sep = if n + 1 < set.len() { "," } else { "" };
        let (i, j) = g.bidegree;
        let _ = writeln!(s, "  {}{sep} -- {} ({i},{j})", g.poly, g.provenance);
    }
    let _ = writeln!(s, "}};\nI = ideal G;\nJ = ker F;");
    let _ = writeln!(s, "assert(#G == {});", set.len());
    let _ = writeln!(s, "assert all(G, g -> F g == 0);");
    if claim == M2Claim::Equal {
        let _ = writeln!(s, "assert(I == J);");
        let _ = writeln!(s, "assert(numgens trim I == #G);");
    }
    let _ = writeln!(s, "print \"ok\";");
    s
}
