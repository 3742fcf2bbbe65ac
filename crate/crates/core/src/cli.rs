//! Command-line front end: diagram and label parsers, the command
//! dispatcher, JSON/DOT emitters, guard flags, and exit-code mapping.
//!
//! Exit codes: 0 success, 1 user error, 2 guard refusal, 3 internal
//! invariant failure.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::coxeter::{CoxeterDiagram, Node, Param};
use crate::error::{Error, Result};
use crate::heckealg::{
    block_partition, collapse_reduce, dimension, is_normalized, normalize_params, HeckeAlgebra,
};
use crate::indres::{ModuleKind, NodeRemoval, SumKind, Term};
use crate::repthy::{finite_rep_type, IrrLabel, ReprAlgebra};
use crate::selftest;
use crate::tower::{coproduct, hat_tensor, TowerElement, TowerLabel};
use crate::zerohecke::{subsets_of, Quiver, ZeroHeckeAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "hecke-ip",
    version,
    about = "Hecke algebras of simply-laced diagrams with independent {0,1} parameters"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest parabolic subgroup order any command may enumerate.
    #[arg(long, global = true, env = "HECKE_IP_MAX_ORDER", default_value_t = 60000)]
    max_group_order: u128,

    /// Largest basis size the basis command may materialize.
    #[arg(long, global = true, default_value_t = 200000)]
    max_dim: u128,

    /// Output format; dot applies to the quiver command only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Keep parameters exactly as given: no collapse reduction and no
    /// normalization. Parameters must already lie in {0,1}.
    #[arg(long, global = true)]
    raw: bool,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Include wall-clock timings in JSON output. Off by default so that
    /// identical inputs produce byte-identical output.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Diagram summary: nodes, parameters, blocks, component types, dimension.
    Info { diagram: String },
    /// Dimension of the algebra by the closed product formula.
    Dim { diagram: String },
    /// The normal-form monoid basis, one element per line.
    Basis { diagram: String },
    /// Cartan matrix over the simple labels of the algebra.
    Cartan { diagram: String },
    /// Cartan matrix of the same diagram with every parameter set to zero.
    Cartan0 { diagram: String },
    /// Quiver of the algebra (text, json, or Graphviz dot).
    Quiver { diagram: String },
    /// Simple labels with simple and projective dimensions.
    Irr { diagram: String },
    /// Decomposition of the regular module into projective covers.
    DecomposeRegular { diagram: String },
    /// Induce a module from the subalgebra omitting one node.
    Induce {
        diagram: String,
        /// Node of the full diagram that the source algebra omits.
        #[arg(long)]
        node: Node,
        /// Module label, e.g. "P:(3),[2],(1,2)" or "C:I=0,2;[2,1]".
        #[arg(long)]
        label: String,
    },
    /// Restrict a module to the subalgebra omitting one node.
    Restrict {
        diagram: String,
        #[arg(long)]
        node: Node,
        #[arg(long)]
        label: String,
    },
    /// Check both adjunction identities over all label pairs for one removal.
    Duality {
        diagram: String,
        #[arg(long)]
        node: Node,
    },
    /// Product of two tower classes by induction over an inserted zero node.
    TowerProd {
        /// Left factor, e.g. "P[1]:(1),[2]" or "C[]:(2)" or "P[]:-".
        left: String,
        right: String,
    },
    /// Coproduct of a tower class by restriction at its zero nodes.
    TowerCoprod {
        /// Operand in the same form as tower-prod factors.
        operand: String,
    },
    /// Whether the algebra has finite representation type.
    Reptype { diagram: String },
    /// Run the built-in verification suite, one pass/fail line per check.
    Selftest,
}

struct CmdOut {
    result: Value,
    text: String,
    dot: Option<String>,
    exit: u8,
}

impl CmdOut {
    fn plain(result: Value, text: String) -> Self {
        CmdOut {
            result,
            text,
            dot: None,
            exit: 0,
        }
    }
}

// ---------------------------------------------------------------------------
// diagram input

fn parse_param_token(tok: &str) -> Result<Param> {
    let tok = tok.trim();
    if tok == "x" {
        return Ok(Param::Symbolic);
    }
    Rational64::from_str(tok)
        .map(Param::Val)
        .map_err(|_| Error::Parse(format!("bad parameter {tok:?}")))
}

/// One `+`-summand of the shorthand grammar, as local nodes 0..n-1.
fn parse_summand(part: &str) -> Result<(usize, Vec<(usize, usize)>, Vec<Param>)> {
    let path_edges = |n: usize| (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>();
    if let Some(bits) = part.strip_prefix("q=") {
        let params = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(Param::zero()),
                '1' => Ok(Param::one()),
                _ => Err(Error::Parse(format!("bad bit {c:?} in {part:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if params.is_empty() {
            return Err(Error::Parse("empty bitstring after q=".into()));
        }
        let n = params.len();
        return Ok((n, path_edges(n), params));
    }
    let (head, plist) = match part.find('[') {
        Some(i) => {
            if !part.ends_with(']') {
                return Err(Error::Parse(format!("missing ']' in {part:?}")));
            }
            (&part[..i], Some(&part[i + 1..part.len() - 1]))
        }
        None => (part, None),
    };
    if head.len() < 2 {
        return Err(Error::Parse(format!("bad diagram term {part:?}")));
    }
    let letter = &head[..1];
    let n: usize = head[1..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank in {part:?}")))?;
    let edges = match letter {
        "A" if n >= 1 => path_edges(n),
        "D" if n >= 4 => {
            let mut e = path_edges(n - 1);
            e.push((n - 3, n - 1));
            e
        }
        "E" if (6..=8).contains(&n) => {
            let mut e = path_edges(n - 1);
            e.push((2, n - 1));
            e
        }
        _ => {
            return Err(Error::Parse(format!(
                "unknown or out-of-range type {head:?}"
            )))
        }
    };
    let params = match plist {
        None => vec![Param::zero(); n],
        Some(list) => {
            let ps = list
                .split(',')
                .map(parse_param_token)
                .collect::<Result<Vec<_>>>()?;
            if ps.len() != n {
                return Err(Error::Parse(format!(
                    "expected {n} parameters in {part:?}, got {}",
                    ps.len()
                )));
            }
            ps
        }
    };
    Ok((n, edges, params))
}

fn parse_shorthand(text: &str) -> Result<CoxeterDiagram> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut params = BTreeMap::new();
    let mut offset = 0usize;
    for part in text.split('+') {
        let (n, es, ps) = parse_summand(part.trim())?;
        for i in 0..n {
            nodes.push(offset + i);
            params.insert(offset + i, ps[i]);
        }
        for (a, b) in es {
            edges.push((offset + a, offset + b));
        }
        offset += n;
    }
    CoxeterDiagram::new(nodes, edges, params)
}

fn param_from_json(v: &Value) -> Result<Param> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|k| Param::Val(Rational64::from_integer(k)))
            .ok_or_else(|| Error::Parse(format!("non-integer parameter {n}"))),
        Value::String(s) => parse_param_token(s),
        other => Err(Error::Parse(format!("bad parameter value {other}"))),
    }
}

fn parse_json_diagram(text: &str) -> Result<CoxeterDiagram> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
    let nodes_v = v
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("JSON diagram needs a \"nodes\" array".into()))?;
    let mut nodes = Vec::new();
    let mut params = BTreeMap::new();
    for nv in nodes_v {
        let id = nv
            .get("id")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse(format!("node without integer id: {nv}")))?
            as Node;
        let q = nv
            .get("q")
            .ok_or_else(|| Error::Parse(format!("node {id} without q")))?;
        nodes.push(id);
        params.insert(id, param_from_json(q)?);
    }
    let mut edges = Vec::new();
    if let Some(es) = v.get("edges") {
        let es = es
            .as_array()
            .ok_or_else(|| Error::Parse("\"edges\" must be an array".into()))?;
        for ev in es {
            let pair = ev.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                Error::Parse(format!("edge must be a two-element array: {ev}"))
            })?;
            let a = pair[0]
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("bad edge endpoint in {ev}")))?;
            let b = pair[1]
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("bad edge endpoint in {ev}")))?;
            edges.push((a as Node, b as Node));
        }
    }
    CoxeterDiagram::new(nodes, edges, params)
}

/// Parses a diagram argument: a file path, inline JSON, or the shorthand
/// grammar. Unless `raw`, applies collapse reduction and normalizes the
/// surviving parameters to {0,1}; the second component lists the nodes
/// removed by the reduction.
pub fn parse_diagram_spec(text: &str, raw: bool) -> Result<(CoxeterDiagram, BTreeSet<Node>)> {
    let trimmed = text.trim();
    let body = if std::path::Path::new(trimmed).is_file() {
        std::fs::read_to_string(trimmed)
            .map_err(|e| Error::Parse(format!("cannot read {trimmed}: {e}")))?
    } else {
        trimmed.to_string()
    };
    let body = body.trim();
    let diagram = if body.starts_with('{') {
        parse_json_diagram(body)?
    } else {
        parse_shorthand(body)?
    };
    if raw {
        if !is_normalized(&diagram) {
            return Err(Error::InvalidDiagram(
                "--raw requires parameters already in {0,1}".into(),
            ));
        }
        Ok((diagram, BTreeSet::new()))
    } else {
        let (reduced, collapsed) = collapse_reduce(&diagram);
        Ok((normalize_params(&reduced)?, collapsed))
    }
}

/// Canonical JSON form of a diagram, the same shape the parser accepts.
pub fn diagram_to_json(d: &CoxeterDiagram) -> Value {
    let nodes: Vec<Value> = d
        .nodes()
        .iter()
        .map(|&s| {
            let q = match d.param(s) {
                Param::Val(v) if v.is_integer() => json!(*v.numer()),
                p => json!(p.to_string()),
            };
            json!({"id": s, "q": q})
        })
        .collect();
    let edges: Vec<Value> = d.edges().map(|(a, b)| json!([a, b])).collect();
    json!({"nodes": nodes, "edges": edges})
}

// ---------------------------------------------------------------------------
// label input

/// Parameter string of a path-shaped normalized diagram with consecutive
/// node ids, if it is one.
pub fn qstring_of(d: &CoxeterDiagram) -> Option<Vec<u8>> {
    let n = d.n();
    if !is_normalized(d) || d.nodes().iter().enumerate().any(|(i, &s)| i != s) {
        return None;
    }
    let want: BTreeSet<(Node, Node)> = (1..n).map(|i| (i - 1, i)).collect();
    let got: BTreeSet<(Node, Node)> = d.edges().collect();
    if got != want {
        return None;
    }
    Some(
        (0..n)
            .map(|s| if d.param(s).is_zero() { 0 } else { 1 })
            .collect(),
    )
}

fn split_kind(text: &str) -> Result<(ModuleKind, &str)> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("P:") {
        Ok((ModuleKind::Projective, rest.trim()))
    } else if let Some(rest) = text.strip_prefix("C:") {
        Ok((ModuleKind::Simple, rest.trim()))
    } else {
        Err(Error::InvalidLabel(format!(
            "label {text:?} must start with P: or C:"
        )))
    }
}

fn parse_irr_body(body: &str) -> Result<IrrLabel> {
    let rest = body.strip_prefix("I=").ok_or_else(|| {
        Error::InvalidLabel(format!("expected I=... at the start of {body:?}"))
    })?;
    let (iset_part, lam_part) = match rest.find(';') {
        Some(k) => (&rest[..k], rest[k + 1..].trim()),
        None => (rest, ""),
    };
    let iset_part = iset_part.trim().trim_start_matches('{').trim_end_matches('}');
    let mut i_set = BTreeSet::new();
    for tok in iset_part.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        i_set.insert(
            tok.parse::<Node>()
                .map_err(|_| Error::InvalidLabel(format!("bad node {tok:?}")))?,
        );
    }
    let mut lambdas = Vec::new();
    let mut rest = lam_part;
    while !rest.is_empty() {
        if !rest.starts_with('[') {
            return Err(Error::InvalidLabel(format!(
                "expected a [partition] at {rest:?}"
            )));
        }
        let end = rest
            .find(']')
            .ok_or_else(|| Error::InvalidLabel(format!("unclosed partition in {rest:?}")))?;
        let parts = rest[1..end]
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidLabel(format!("bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        lambdas.push(crate::combinat::Partition::new(parts)?);
        rest = rest[end + 1..].trim_start().trim_start_matches(',').trim_start();
    }
    Ok(IrrLabel { i_set, lambdas })
}

/// Parses a module label against a concrete algebra. The run notation
/// (alternating compositions and partitions) applies when the diagram is a
/// path with consecutive ids; the explicit `I=...;[...]...` form always
/// applies.
pub fn parse_label_for(alg: &ReprAlgebra, text: &str) -> Result<(ModuleKind, IrrLabel)> {
    let (kind, body) = split_kind(text)?;
    let label = if body.starts_with("I=") {
        parse_irr_body(body)?
    } else {
        let qs = qstring_of(alg.diagram()).ok_or_else(|| {
            Error::InvalidLabel(
                "run notation needs a path diagram with consecutive ids; use the I= form"
                    .into(),
            )
        })?;
        TowerLabel::parse(&qs, body)?.irr_label()
    };
    if !alg.is_valid(&label) {
        return Err(Error::InvalidLabel(format!(
            "{label} is not a label of this algebra"
        )));
    }
    Ok((kind, label))
}

/// Tower operand syntax: `P[010]:(1),[2],(1,1)` — kind, parameter string in
/// brackets (empty for grade one), and a run-notation label or `-`.
fn parse_tower_operand(text: &str) -> Result<(ModuleKind, TowerLabel)> {
    let text = text.trim();
    let (kind, rest) = match text.as_bytes().first() {
        Some(b'P') => (ModuleKind::Projective, &text[1..]),
        Some(b'C') => (ModuleKind::Simple, &text[1..]),
        _ => {
            return Err(Error::InvalidLabel(format!(
                "operand {text:?} must start with P or C"
            )))
        }
    };
    let rest = rest.trim_start();
    let rest = rest.strip_prefix('[').ok_or_else(|| {
        Error::InvalidLabel(format!("operand {text:?} needs a [qstring] after the kind"))
    })?;
    let close = rest
        .find(']')
        .ok_or_else(|| Error::InvalidLabel(format!("unclosed [qstring] in {text:?}")))?;
    let qs = rest[..close]
        .chars()
        .map(|c| match c {
            '0' => Ok(0u8),
            '1' => Ok(1u8),
            _ => Err(Error::InvalidLabel(format!("bad bit {c:?} in {text:?}"))),
        })
        .collect::<Result<Vec<u8>>>()?;
    let body = rest[close + 1..].trim_start();
    let body = body.strip_prefix(':').ok_or_else(|| {
        Error::InvalidLabel(format!("expected ':' after the qstring in {text:?}"))
    })?;
    let label = TowerLabel::parse(&qs, body)?;
    Ok((kind, label))
}

fn kind_letter(kind: ModuleKind) -> &'static str {
    match kind {
        ModuleKind::Projective => "P",
        ModuleKind::Simple => "C",
    }
}

// ---------------------------------------------------------------------------
// output helpers

fn u128s(x: u128) -> Value {
    // emitted as a string: JSON numbers lose precision past 2^53
    Value::String(x.to_string())
}

fn set_json(s: &BTreeSet<Node>) -> Value {
    Value::Array(s.iter().map(|&x| json!(x)).collect())
}

fn label_json(l: &IrrLabel) -> Value {
    json!({
        "display": l.to_string(),
        "i_set": set_json(&l.i_set),
        "lambdas": l.lambdas.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

fn sum_kind_name(k: SumKind) -> &'static str {
    match k {
        SumKind::Projectives => "projectives",
        SumKind::Simples => "simples",
        SumKind::Indecomposables => "indecomposables",
    }
}

fn vertex_label(l: &IrrLabel) -> String {
    let iset: Vec<String> = l.i_set.iter().map(|s| s.to_string()).collect();
    let lams: Vec<String> = l.lambdas.iter().map(|p| p.to_string()).collect();
    format!("C[{{{}}}|{}]", iset.join(","), lams.join(","))
}

fn quiver_dot(q: &Quiver<IrrLabel>) -> String {
    let mut out = String::from("digraph quiver {\n");
    for (i, v) in q.vertices.iter().enumerate() {
        out.push_str(&format!("  v{} [label=\"{}\"];\n", i, vertex_label(v)));
    }
    for &(a, b, m) in &q.arrows {
        for _ in 0..m {
            out.push_str(&format!("  v{a} -> v{b};\n"));
        }
    }
    out.push_str("}\n");
    out
}

fn quiver_json(q: &Quiver<IrrLabel>) -> Value {
    json!({
        "vertices": q.vertices.iter().map(label_json).collect::<Vec<_>>(),
        "arrows": q.arrows.iter().map(|&(a, b, m)| json!([a, b, m])).collect::<Vec<_>>(),
    })
}

fn collapse_note(collapsed: &BTreeSet<Node>) -> String {
    if collapsed.is_empty() {
        String::new()
    } else {
        format!(
            "note: nodes {:?} collapsed to scalars and were removed\n",
            collapsed.iter().collect::<Vec<_>>()
        )
    }
}

// ---------------------------------------------------------------------------
// command handlers

fn cmd_info(d: &CoxeterDiagram, collapsed: &BTreeSet<Node>) -> Result<CmdOut> {
    let dim = dimension(d)?;
    let bp = block_partition(d)?;
    let comps = d.components(&d.node_set());
    let mut comp_rows = Vec::new();
    for c in &comps {
        let t = d.classify_component(c)?;
        comp_rows.push(json!({
            "nodes": set_json(c),
            "type": t.to_string(),
        }));
    }
    let zero: Vec<Value> = bp.zero_blocks.iter().map(|&i| set_json(&bp.blocks[i])).collect();
    let one: Vec<Value> = bp.one_blocks.iter().map(|&i| set_json(&bp.blocks[i])).collect();
    let result = json!({
        "diagram": diagram_to_json(d),
        "collapsed": set_json(collapsed),
        "components": comp_rows,
        "zero_blocks": zero,
        "one_blocks": one,
        "dimension": u128s(dim),
    });
    let mut text = collapse_note(collapsed);
    text.push_str(&format!("nodes: {}\n", d.n()));
    for c in &comps {
        text.push_str(&format!(
            "component {:?}: type {}\n",
            c.iter().collect::<Vec<_>>(),
            d.classify_component(c)?
        ));
    }
    for &s in d.nodes() {
        text.push_str(&format!("q[{}] = {}\n", s, d.param(s)));
    }
    text.push_str(&format!("dimension: {dim}\n"));
    Ok(CmdOut::plain(result, text))
}

fn cmd_dim(d: &CoxeterDiagram, collapsed: &BTreeSet<Node>) -> Result<CmdOut> {
    let dim = dimension(d)?;
    Ok(CmdOut::plain(
        json!({"dimension": u128s(dim), "collapsed": set_json(collapsed)}),
        format!("{}{dim}\n", collapse_note(collapsed)),
    ))
}

fn cmd_basis(d: &CoxeterDiagram, guard: u128, max_dim: u128) -> Result<CmdOut> {
    let dim = dimension(d)?;
    if dim > max_dim {
        return Err(Error::GuardExceeded {
            what: "basis size".into(),
            required: dim,
            guard: max_dim,
        });
    }
    let h = HeckeAlgebra::new(d, guard)?;
    let basis = h.basis();
    if basis.len() as u128 != dim {
        return Err(Error::Internal(format!(
            "basis size {} disagrees with dimension {dim}",
            basis.len()
        )));
    }
    let lines: Vec<String> = basis.iter().map(|x| h.describe(x)).collect();
    let result = json!({"dimension": u128s(dim), "elements": lines});
    let mut text = String::new();
    for l in &lines {
        text.push_str(l);
        text.push('\n');
    }
    Ok(CmdOut::plain(result, text))
}

fn cmd_cartan(d: &CoxeterDiagram, guard: u128) -> Result<CmdOut> {
    let ra = ReprAlgebra::new(d)?;
    let (labels, m) = ra.cartan_matrix(guard)?;
    let result = json!({
        "labels": labels.iter().map(label_json).collect::<Vec<_>>(),
        "matrix": m,
    });
    let mut text = String::new();
    for (l, row) in labels.iter().zip(&m) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("{l}: {}\n", cells.join(" ")));
    }
    Ok(CmdOut::plain(result, text))
}

fn cmd_cartan0(d: &CoxeterDiagram, guard: u128) -> Result<CmdOut> {
    let zeroed = d.with_params(
        d.nodes().iter().map(|&s| (s, Param::zero())).collect(),
    )?;
    let full = zeroed.node_set();
    let alg = ZeroHeckeAlgebra::new(&zeroed, &full, guard)?;
    let subsets = subsets_of(alg.gens());
    let m: Vec<Vec<u64>> = subsets
        .iter()
        .map(|i| subsets.iter().map(|j| alg.cartan_number(i, j)).collect())
        .collect();
    let result = json!({
        "subsets": subsets.iter().map(set_json).collect::<Vec<_>>(),
        "matrix": m,
    });
    let mut text = String::new();
    for (i, row) in subsets.iter().zip(&m) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("{:?}: {}\n", i.iter().collect::<Vec<_>>(), cells.join(" ")));
    }
    Ok(CmdOut::plain(result, text))
}

fn cmd_quiver(d: &CoxeterDiagram, guard: u128) -> Result<CmdOut> {
    let ra = ReprAlgebra::new(d)?;
    let q = ra.quiver(guard)?;
    let mut text = String::new();
    for (i, v) in q.vertices.iter().enumerate() {
        text.push_str(&format!("v{i}: {v}\n"));
    }
    for &(a, b, m) in &q.arrows {
        text.push_str(&format!("v{a} -> v{b} (x{m})\n"));
    }
    Ok(CmdOut {
        result: quiver_json(&q),
        text,
        dot: Some(quiver_dot(&q)),
        exit: 0,
    })
}

fn cmd_irr(d: &CoxeterDiagram, guard: u128) -> Result<CmdOut> {
    let ra = ReprAlgebra::new(d)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for l in ra.irr_labels() {
        let sd = ra.simple_dim(&l)?;
        let pd = ra.pim_dim(&l, guard)?;
        text.push_str(&format!("{l}: simple dim {sd}, projective dim {pd}\n"));
        rows.push(json!({
            "label": label_json(&l),
            "simple_dim": u128s(sd),
            "pim_dim": u128s(pd),
        }));
    }
    Ok(CmdOut::plain(json!({ "labels": rows }), text))
}

fn cmd_decompose_regular(d: &CoxeterDiagram, guard: u128) -> Result<CmdOut> {
    let ra = ReprAlgebra::new(d)?;
    let rep = ra.regular_decomposition_check(guard)?;
    let rows: Vec<Value> = rep
        .per_active_set
        .iter()
        .map(|(active, lhs, rhs)| {
            json!({
                "active_one_blocks": active,
                "label_sum": u128s(*lhs),
                "closed_form": u128s(*rhs),
            })
        })
        .collect();
    let mut text = String::new();
    for (active, lhs, _) in &rep.per_active_set {
        text.push_str(&format!("active one blocks {active:?}: {lhs}\n"));
    }
    text.push_str(&format!("total {} = dimension {}\n", rep.total, rep.dimension));
    Ok(CmdOut::plain(
        json!({
            "dimension": u128s(rep.dimension),
            "total": u128s(rep.total),
            "per_active_set": rows,
        }),
        text,
    ))
}

fn terms_output(r: &crate::indres::IndResResult) -> (Value, String) {
    let mut rows = Vec::new();
    let mut text = String::new();
    for (t, m) in r.terms.iter() {
        match t {
            Term::Label(l) => {
                text.push_str(&format!("{m} x {l}\n"));
                rows.push(json!({"label": label_json(l), "mult": u128s(m)}));
            }
            Term::Quotient(qd) => {
                text.push_str(&format!(
                    "{m} x quotient[I={:?}, inner={:?}, ambient={:?}, mu={}, projective={}]\n",
                    qd.i_set.iter().collect::<Vec<_>>(),
                    qd.inner.iter().collect::<Vec<_>>(),
                    qd.ambient.iter().collect::<Vec<_>>(),
                    qd.mu.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
                    qd.projective
                ));
                rows.push(json!({
                    "quotient": {
                        "i_set": set_json(&qd.i_set),
                        "inner": set_json(&qd.inner),
                        "ambient": set_json(&qd.ambient),
                        "mu": qd.mu.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "projective": qd.projective,
                    },
                    "mult": u128s(m),
                }));
            }
        }
    }
    (
        json!({"kind": sum_kind_name(r.kind), "terms": rows}),
        text,
    )
}

fn cmd_induce(
    d: &CoxeterDiagram,
    node: Node,
    label: &str,
    guard: u128,
    up: bool,
) -> Result<CmdOut> {
    let nr = NodeRemoval::new(d, node, guard)?;
    let home = if up { nr.r_algebra() } else { nr.s_algebra() };
    let (kind, lab) = parse_label_for(home, label)?;
    let res = if up {
        nr.induce(kind, &lab)?
    } else {
        nr.restrict(kind, &lab)?
    };
    let (result, text) = terms_output(&res);
    Ok(CmdOut::plain(result, text))
}

fn cmd_duality(d: &CoxeterDiagram, node: Node, guard: u128) -> Result<CmdOut> {
    let nr = NodeRemoval::new(d, node, guard)?;
    let r_labels = nr.r_algebra().irr_labels();
    let s_labels = nr.s_algebra().irr_labels();
    let mut pairs = 0u64;
    let mut failures = Vec::new();
    for rl in &r_labels {
        for sl in &s_labels {
            let rep = nr.duality_check(rl, sl)?;
            pairs += 1;
            if !rep.ok() {
                failures.push(json!({
                    "r_label": label_json(rl),
                    "s_label": label_json(sl),
                    "up_pair": [u128s(rep.up_pair.0), u128s(rep.up_pair.1)],
                    "down_pair": [u128s(rep.down_pair.0), u128s(rep.down_pair.1)],
                }));
            }
        }
    }
    let ok = failures.is_empty();
    let text = format!(
        "{} label pairs checked, duality {}\n",
        pairs,
        if ok { "holds" } else { "FAILS" }
    );
    Ok(CmdOut {
        result: json!({"pairs": pairs, "ok": ok, "failures": failures}),
        text,
        dot: None,
        exit: if ok { 0 } else { 3 },
    })
}

fn tower_terms_output(kind: ModuleKind, e: &TowerElement) -> (Value, String) {
    let mut rows = Vec::new();
    let mut text = String::new();
    for (l, m) in e.terms.iter() {
        let qs: String = l.qstring().iter().map(|b| b.to_string()).collect();
        text.push_str(&format!("{m} x {}[{}]:{}\n", kind_letter(kind), qs, l));
        rows.push(json!({
            "qstring": qs,
            "label": l.to_string(),
            "mult": u128s(m),
        }));
    }
    (json!({"kind": kind_letter(kind), "terms": rows}), text)
}

fn cmd_tower_prod(left: &str, right: &str, guard: u128) -> Result<CmdOut> {
    let (ka, la) = parse_tower_operand(left)?;
    let (kb, lb) = parse_tower_operand(right)?;
    if ka != kb {
        return Err(Error::InvalidLabel(
            "both factors must have the same kind".into(),
        ));
    }
    let x = TowerElement::monomial(ka, la);
    let y = TowerElement::monomial(kb, lb);
    let p = hat_tensor(&x, &y, guard)?;
    let (result, text) = tower_terms_output(ka, &p);
    Ok(CmdOut::plain(result, text))
}

fn cmd_tower_coprod(operand: &str, guard: u128) -> Result<CmdOut> {
    let (kind, l) = parse_tower_operand(operand)?;
    let x = TowerElement::monomial(kind, l);
    let dx = coproduct(&x, guard)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for ((a, b), m) in dx.terms.iter() {
        let qa: String = a.qstring().iter().map(|x| x.to_string()).collect();
        let qb: String = b.qstring().iter().map(|x| x.to_string()).collect();
        let k = kind_letter(kind);
        text.push_str(&format!("{m} x {k}[{qa}]:{a} (x) {k}[{qb}]:{b}\n"));
        rows.push(json!({
            "left": {"qstring": qa, "label": a.to_string()},
            "right": {"qstring": qb, "label": b.to_string()},
            "mult": u128s(m),
        }));
    }
    Ok(CmdOut::plain(
        json!({"kind": kind_letter(kind), "terms": rows}),
        text,
    ))
}

fn cmd_reptype(d: &CoxeterDiagram) -> Result<CmdOut> {
    let finite = finite_rep_type(d)?;
    Ok(CmdOut::plain(
        json!({"finite": finite}),
        format!("{}\n", if finite { "finite" } else { "infinite" }),
    ))
}

fn cmd_selftest(guard: u128, timings: bool) -> Result<CmdOut> {
    let outcomes = selftest::run_all(guard);
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut failed = 0usize;
    for o in &outcomes {
        let status = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        text.push_str(&format!("{status} {} ({:.2}s): {}\n", o.name, o.seconds, o.detail));
        let mut row = json!({"name": o.name, "ok": o.ok, "detail": o.detail});
        if timings {
            row["seconds"] = json!(o.seconds);
        }
        rows.push(row);
    }
    text.push_str(&format!(
        "{} passed, {} failed\n",
        outcomes.len() - failed,
        failed
    ));
    Ok(CmdOut {
        result: json!({"criteria": rows, "failed": failed}),
        text,
        dot: None,
        exit: if failed == 0 { 0 } else { 3 },
    })
}

// ---------------------------------------------------------------------------
// dispatch

fn input_echo(cli: &Cli) -> Value {
    match &cli.command {
        Command::Info { diagram }
        | Command::Dim { diagram }
        | Command::Basis { diagram }
        | Command::Cartan { diagram }
        | Command::Cartan0 { diagram }
        | Command::Quiver { diagram }
        | Command::Irr { diagram }
        | Command::DecomposeRegular { diagram }
        | Command::Reptype { diagram } => json!({"diagram": diagram}),
        Command::Induce { diagram, node, label }
        | Command::Restrict { diagram, node, label } => {
            json!({"diagram": diagram, "node": node, "label": label})
        }
        Command::Duality { diagram, node } => json!({"diagram": diagram, "node": node}),
        Command::TowerProd { left, right } => json!({"left": left, "right": right}),
        Command::TowerCoprod { operand } => json!({"operand": operand}),
        Command::Selftest => json!({}),
    }
}

fn command_name(cli: &Cli) -> &'static str {
    match &cli.command {
        Command::Info { .. } => "info",
        Command::Dim { .. } => "dim",
        Command::Basis { .. } => "basis",
        Command::Cartan { .. } => "cartan",
        Command::Cartan0 { .. } => "cartan0",
        Command::Quiver { .. } => "quiver",
        Command::Irr { .. } => "irr",
        Command::DecomposeRegular { .. } => "decompose-regular",
        Command::Induce { .. } => "induce",
        Command::Restrict { .. } => "restrict",
        Command::Duality { .. } => "duality",
        Command::TowerProd { .. } => "tower-prod",
        Command::TowerCoprod { .. } => "tower-coprod",
        Command::Reptype { .. } => "reptype",
        Command::Selftest => "selftest",
    }
}

fn dispatch(cli: &Cli) -> Result<CmdOut> {
    let g = cli.max_group_order;
    let diagram_of = |text: &str| parse_diagram_spec(text, cli.raw);
    match &cli.command {
        Command::Info { diagram } => {
            let (d, c) = diagram_of(diagram)?;
            cmd_info(&d, &c)
        }
        Command::Dim { diagram } => {
            let (d, c) = diagram_of(diagram)?;
            cmd_dim(&d, &c)
        }
        Command::Basis { diagram } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_basis(&d, g, cli.max_dim)
        }
        Command::Cartan { diagram } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_cartan(&d, g)
        }
        Command::Cartan0 { diagram } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_cartan0(&d, g)
        }
        Command::Quiver { diagram } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_quiver(&d, g)
        }
        Command::Irr { diagram } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_irr(&d, g)
        }
        Command::DecomposeRegular { diagram } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_decompose_regular(&d, g)
        }
        Command::Induce { diagram, node, label } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_induce(&d, *node, label, g, true)
        }
        Command::Restrict { diagram, node, label } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_induce(&d, *node, label, g, false)
        }
        Command::Duality { diagram, node } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_duality(&d, *node, g)
        }
        Command::TowerProd { left, right } => cmd_tower_prod(left, right, g),
        Command::TowerCoprod { operand } => cmd_tower_coprod(operand, g),
        Command::Reptype { diagram } => {
            let (d, _) = diagram_of(diagram)?;
            cmd_reptype(&d)
        }
        Command::Selftest => cmd_selftest(g, cli.timings),
    }
}

fn write_output(cli: &Cli, payload: &str) -> Result<()> {
    match &cli.out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::GuardExceeded { .. } => 2,
        Error::Internal(_) => 3,
        _ => 1,
    }
}

/// Runs one parsed invocation and returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let start = Instant::now();
    match dispatch(cli) {
        Ok(out) => {
            let payload = match cli.format {
                Format::Text => out.text,
                Format::Json => {
                    let timings = if cli.timings {
                        json!({"seconds": start.elapsed().as_secs_f64()})
                    } else {
                        Value::Null
                    };
                    let envelope = json!({
                        "command": command_name(cli),
                        "input": input_echo(cli),
                        "result": out.result,
                        "timings": timings,
                    });
                    let mut s = serde_json::to_string_pretty(&envelope)
                        .expect("JSON serialization cannot fail");
                    s.push('\n');
                    s
                }
                Format::Dot => match out.dot {
                    Some(d) => d,
                    None => {
                        eprintln!("error: --format dot applies to the quiver command only");
                        return 1;
                    }
                },
            };
            match write_output(cli, &payload) {
                Ok(()) => out.exit,
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_for(&e)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

/// Entry point for the binary: parses argv and runs.
pub fn main() -> u8 {
    match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            code
        }
    }
}

/// Convenience for tests: runs the CLI on an argument vector, capturing
/// nothing; returns the exit code the process would have used.
pub fn run_args<I, S>(args: I) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(_) => 1,
    }
}
