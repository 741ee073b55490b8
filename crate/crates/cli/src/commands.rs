//! The five subcommands.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use twotuple::aggregate;
use twotuple::export::{PartitionDocument, Rounded};
use twotuple::fcl::{self, FclError};
use twotuple::partition::resolve_stretch;
use twotuple::{
    tree, AggregationResult, BinaryNode, LinguisticValue, Partition, StretchTerm, WeightTable,
};

use crate::render;
use crate::{emit, CmdResult, Failure, FclSource, Format, Op, OutputArgs, RenderArgs};

fn read(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: error: {e}", path.display())))
}

fn to_json<S: Serialize>(value: &S, pretty: bool) -> String {
    let mut text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("documents serialize");
    text.push('\n');
    text
}

fn load_partition(source: &FclSource) -> CmdResult<Partition> {
    let file = source.fcl.display().to_string();
    let model = fcl::parse(&read(&source.fcl)?).map_err(|e| Failure::Input(e.diagnostic(&file)))?;
    fcl::to_partition(&model, &source.variable).map_err(|e| match e {
        FclError::NotSupported(_) | FclError::Partition(_) => Failure::Domain(e.diagnostic(&file)),
        _ => Failure::Input(e.diagnostic(&file)),
    })
}

fn render_partition(p: &Partition, render: &RenderArgs) -> String {
    let digits = render.output.precision;
    match render.format {
        Format::Json => to_json(&PartitionDocument::new(p, digits as usize), true),
        Format::Csv => render::partition_csv(p, render.samples, digits),
        Format::Svg => render::partition_svg(p, render.samples, digits),
    }
}

pub fn partition(source: &FclSource, render: &RenderArgs) -> CmdResult {
    let p = load_partition(source)?;
    emit(&render.output, &render_partition(&p, render))
}

/// `Term`, `Term+0.01` or `Term-0.01`.
fn parse_operand(text: &str) -> CmdResult<LinguisticValue> {
    let split = text
        .char_indices()
        .skip(1)
        .find(|&(_, c)| c == '+' || c == '-');
    match split {
        None => Ok(LinguisticValue::bare(text)),
        Some((i, _)) => {
            let residual: f64 = text[i..]
                .parse()
                .ok()
                .filter(|r: &f64| r.is_finite())
                .ok_or_else(|| {
                    Failure::Input(format!(
                        "error: bad operand `{text}`: residual must be a number"
                    ))
                })?;
            Ok(LinguisticValue::new(&text[..i], residual))
        }
    }
}

#[derive(Serialize)]
struct ValueDoc {
    term: String,
    residual: Rounded,
}

#[derive(Serialize)]
struct LhTupleDoc {
    level: u32,
    labels: u64,
    index: u64,
    alpha_abs: Rounded,
    alpha_norm: Rounded,
}

#[derive(Serialize)]
struct AggregationDoc {
    op: &'static str,
    operands: Vec<ValueDoc>,
    beta: Rounded,
    lh_tuple: LhTupleDoc,
    value: ValueDoc,
}

pub fn aggregate(
    source: &FclSource,
    op: Op,
    operands: &[String],
    weights: &[f64],
    output: &OutputArgs,
) -> CmdResult {
    let values = operands
        .iter()
        .map(|o| parse_operand(o))
        .collect::<CmdResult<Vec<_>>>()?;
    if op != Op::Wavg && !weights.is_empty() {
        return Err(Failure::Input(
            "error: --op-weights only applies to --op wavg".into(),
        ));
    }
    let p = load_partition(source)?;
    let result: AggregationResult = match op {
        Op::Mean => aggregate::mean(&p, &values)?,
        Op::Add => match values.as_slice() {
            [a, b] => aggregate::add(&p, a, b)?,
            _ => {
                return Err(Failure::Input(format!(
                    "error: add takes exactly two operands, got {}",
                    values.len()
                )))
            }
        },
        Op::Wavg => {
            if weights.len() != values.len() {
                return Err(Failure::Input(format!(
                    "error: --op wavg needs one weight per operand ({} weights, {} operands)",
                    weights.len(),
                    values.len()
                )));
            }
            aggregate::weighted_average(&p, &values, weights.to_vec())?
        }
    };
    let digits = output.precision as usize;
    let num = |v: f64| Rounded::new(v, digits);
    let value_doc = |v: &LinguisticValue| ValueDoc {
        term: v.term.clone(),
        residual: num(v.residual),
    };
    let lh = &result.lh_tuple;
    let doc = AggregationDoc {
        op: match op {
            Op::Mean => "mean",
            Op::Add => "add",
            Op::Wavg => "wavg",
        },
        operands: values.iter().map(value_doc).collect(),
        beta: num(p.universe().to_external(result.beta)),
        lh_tuple: LhTupleDoc {
            level: lh.level.number(),
            labels: lh.level.label_count(),
            index: lh.index,
            alpha_abs: num(lh.alpha),
            alpha_norm: num(lh.alpha_normalized(p.span())),
        },
        value: value_doc(&result.value),
    };
    emit(output, &to_json(&doc, true))
}

#[derive(Serialize)]
struct DegreeDoc<'a> {
    term: &'a str,
    degree: Rounded,
}

pub fn membership(source: &FclSource, u: f64, output: &OutputArgs) -> CmdResult {
    let p = load_partition(source)?;
    let universe = p.universe();
    let internal = universe.to_internal(u);
    if !u.is_finite() || !universe.contains(internal) {
        return Err(Failure::Domain(format!(
            "error: u = {u} lies outside the universe [{}, {}]",
            universe.v_min(),
            universe.to_external(universe.span())
        )));
    }
    let degrees: Vec<DegreeDoc> = p
        .fuzzify(internal)?
        .into_iter()
        .map(|(term, d)| DegreeDoc {
            term,
            degree: Rounded::new(d, output.precision as usize),
        })
        .collect();
    emit(output, &to_json(&degrees, false))
}

#[derive(Serialize)]
struct NodeDoc<'a> {
    name: &'a str,
    level: u32,
    labels: u64,
    index: u64,
    position: Rounded,
}

pub fn flatten(path: &Path, render: &RenderArgs) -> CmdResult {
    let text = read(path)?;
    let root: BinaryNode = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: error: malformed tree: {e}", path.display())))?;
    let nodes = tree::flatten::<f64>(&root)?;
    let digits = render.output.precision;
    let out = match render.format {
        Format::Json => {
            let docs: Vec<NodeDoc> = nodes
                .iter()
                .map(|n| NodeDoc {
                    name: &n.name,
                    level: n.two_tuple.level.number(),
                    labels: n.two_tuple.level.label_count(),
                    index: n.two_tuple.index,
                    position: Rounded::new(n.position(), digits as usize),
                })
                .collect();
            to_json(&docs, true)
        }
        Format::Csv => render::tree_csv(&nodes, digits),
        Format::Svg => render::tree_svg(&root, &nodes, digits),
    };
    emit(&render.output, &out)
}

/// Non-blank, non-`#` lines of the form `term stretch`.
fn parse_entries(path: &Path, text: &str) -> CmdResult<Vec<(String, StretchTerm)>> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [term, stretch] = fields[..] else {
            return Err(Failure::Input(format!(
                "{}:{}:1: error: expected `term stretch`",
                path.display(),
                i + 1
            )));
        };
        let stretch: StretchTerm = stretch
            .parse()
            .map_err(|e| Failure::Domain(format!("{}:{}:1: error: {e}", path.display(), i + 1)))?;
        entries.push((term.to_string(), stretch));
    }
    Ok(entries)
}

fn load_weights(path: &Path) -> CmdResult<WeightTable> {
    let text = read(path)?;
    let bad = |msg: String| Failure::Input(format!("{}: error: {msg}", path.display()));
    let map: serde_json::Map<String, Value> =
        serde_json::from_str(&text).map_err(|e| bad(format!("malformed weight table: {e}")))?;
    let mut entries = Vec::with_capacity(map.len());
    for (name, value) in &map {
        let w = value
            .as_f64()
            .ok_or_else(|| bad(format!("weight of `{name}` is not a number")))?;
        entries.push((name.as_str(), w));
    }
    WeightTable::with_overrides(entries)
        .map_err(|e| Failure::Domain(format!("{}: error: {e}", path.display())))
}

#[derive(Serialize)]
struct PairDoc<'a> {
    term: &'a str,
    v: Rounded,
}

#[derive(Serialize)]
struct StretchDoc<'a> {
    pairs: Vec<PairDoc<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<PartitionDocument>,
}

pub fn stretch(path: &Path, weights: Option<&Path>, build: bool, render: &RenderArgs) -> CmdResult {
    let entries = parse_entries(path, &read(path)?)?;
    let table = match weights {
        Some(w) => load_weights(w)?,
        None => WeightTable::default(),
    };
    let pairs = resolve_stretch(&entries, &table)?;
    let digits = render.output.precision;
    let out = match render.format {
        Format::Json => {
            let partition = if build {
                Some(PartitionDocument::new(
                    &twotuple::build_partition(&pairs)?,
                    digits as usize,
                ))
            } else {
                None
            };
            let doc = StretchDoc {
                pairs: pairs
                    .iter()
                    .map(|p| PairDoc {
                        term: &p.name,
                        v: Rounded::new(p.v, digits as usize),
                    })
                    .collect(),
                partition,
            };
            to_json(&doc, true)
        }
        Format::Csv if !build => {
            let mut out = String::from("term,v\n");
            for p in &pairs {
                out.push_str(&format!("{},{}\n", p.name, render::number(p.v, digits)));
            }
            out
        }
        _ => render_partition(&twotuple::build_partition(&pairs)?, render),
    };
    emit(&render.output, &out)
}
