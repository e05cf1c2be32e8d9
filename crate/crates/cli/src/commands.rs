use std::fs;

use clap::{Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use freeplanar::freeprod::{
    basis_labels, concrete_span_rank, free_product_dims, wreath_character_moments, DimensionProfile, LabelSource,
};
use freeplanar::gpa::{
    boolean_subspace, evaluate, gram, gram_rank, loop_basis, tl_image, trace, AlgebraSpec, Caps, LoopVector, Side,
};
use freeplanar::moments::{
    boolean_conv_check, cumulants_from_moments, free_mult_conv, moments_from_cumulants, perm_group_character_moments,
    CumulantKind, CumulantProfile, MomentProfile,
};
use freeplanar::numeric::{format_rational, is_positive_semidefinite, parse_rational, Rational, Surd};
use freeplanar::partitions::{
    depth, enumerate, enveloping_blocks, kreweras, kreweras_inverse, merge_blocks, nested_kreweras, split_block,
    Partition, PartitionClass,
};
use freeplanar::tangles::{free_compose, is_free_pair, parse, reduced_pair, TangleExpr};

use crate::output::{input_error, CliError, Output};
use crate::Global;

const PARTITION_HINT: &str = "partitions are written as blocks, e.g. \"{1,2},{3}\"";

#[derive(Subcommand)]
pub enum NcOp {
    /// List a class of partitions of [1, n].
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = ClassArg::Nc)]
        class: ClassArg,
    },
    /// Kreweras complement K(p), or its inverse.
    Kreweras {
        partition: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Nested complement of an even-order partition.
    NestedKreweras { partition: String },
    /// Nesting depth of each block.
    Depth { partition: String },
    /// Merge a block with another, or split it after position `split`.
    Surgery {
        partition: String,
        #[arg(long)]
        block: String,
        #[arg(long, conflicts_with = "split")]
        merge: Option<String>,
        #[arg(long)]
        split: Option<usize>,
    },
    /// Blocks of K(p) enveloping a block of p.
    Envelope {
        partition: String,
        #[arg(long)]
        block: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ClassArg {
    All,
    Nc,
    Interval,
    EvenNc,
}

#[derive(Subcommand)]
pub enum CumOp {
    /// Free cumulants of a moment profile.
    Free { profile: String },
    /// Boolean cumulants of a moment profile.
    Boolean { profile: String },
    /// Moments from a cumulant file {"kind":"free","values":["1",...]}.
    Invert { cumulants: String },
}

#[derive(Subcommand)]
pub enum ConvOp {
    /// Moments of the free multiplicative convolution.
    Boxtimes {
        left: String,
        right: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare Boolean cumulants of the convolution with the Kreweras sum.
    BnCheck {
        left: String,
        right: String,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum TangleOp {
    /// Parse and pretty-print an expression with its degrees.
    Parse { expr: String },
    /// Partition of the outer points of a connected tangle.
    Pi { expr: String },
    /// Partition of the outer points induced by the shaded regions.
    Shading { expr: String },
    /// Whether two tangles form a free pair, and the partition of their free composition.
    Free { left: String, right: String },
    /// The reduced free pair of a partition above the pairing {2i,2i+1}.
    Reduce { partition: String },
}

#[derive(Subcommand)]
pub enum GpaOp {
    /// Loops of degree n.
    Basis { n: usize },
    /// Evaluate a tangle expression on loop vectors read from JSON files.
    Eval {
        expr: String,
        #[arg(long = "input")]
        inputs: Vec<String>,
    },
    /// Trace of a loop vector.
    Trace {
        vector: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Gram matrix of the loop basis of degree n.
    Gram { n: usize },
    /// Image of the Temperley-Lieb diagrams of degree n.
    Tl { n: usize },
    /// Dimensions of the Boolean subspaces for degrees 1..=n.
    Boolean {
        n: usize,
        #[arg(long, value_enum, default_value_t = SourceArg::Tl)]
        source: SourceArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SourceArg {
    Tl,
    Full,
}

#[derive(Subcommand)]
pub enum FpOp {
    /// Dimensions of the free product for degrees 1..=n.
    Dims {
        left: String,
        right: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Basis labels of the free product in degree n.
    Basis {
        left: String,
        right: String,
        #[arg(long)]
        n: usize,
    },
    /// Rank of the concrete free product inside the graph planar algebra of A ⊗ B.
    Rank {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SourceArg::Tl)]
        labels: SourceArg,
    },
    /// Free wreath product character moments.
    WreathMoments {
        alpha: String,
        beta: String,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum GroupOp {
    /// Moments of the fixed-point count of a permutation group.
    Moments {
        /// Number of points acted on.
        #[arg(long)]
        points: usize,
        /// A generator in one-line notation, e.g. 2,3,1. Repeatable.
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

fn partition(text: &str) -> Result<Partition, CliError> {
    text.parse().map_err(|e| CliError::Input(format!("{e}; {PARTITION_HINT}")))
}

fn block(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut b = inner
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Input(format!("bad block `{text}`; blocks look like {{1,3}}")))?;
    b.sort_unstable();
    if b.iter().any(|&x| x == 0 || x > n) {
        return input_error(format!("block `{text}` is not inside [1, {n}]"));
    }
    Ok(b)
}

fn strings(values: &[Rational]) -> Value {
    Value::from(values.iter().map(format_rational).collect::<Vec<_>>())
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

/// A moment profile: `catalan`, `point:D`, or a JSON file `{"name":..,"moments":[..]}`.
fn profile(arg: &str, n: usize) -> Result<MomentProfile, CliError> {
    if arg == "catalan" || arg == "tlj" {
        return Ok(MomentProfile::catalan(n));
    }
    if let Some(d) = arg.strip_prefix("point:") {
        let d: i64 = d.parse().map_err(|_| CliError::Input(format!("bad point mass {arg}")))?;
        return Ok(MomentProfile::point_mass(d, n));
    }
    Ok(MomentProfile::from_json(&read(arg)?)?)
}

fn length(n: Option<usize>, g: &Global) -> usize {
    n.unwrap_or(g.max_n as usize)
}

pub fn load_spec(g: &Global, index: usize) -> Result<AlgebraSpec, CliError> {
    match g.spec.get(index).or(g.spec.first()) {
        Some(path) => Ok(AlgebraSpec::from_json(&read(path)?)?),
        None => Ok(AlgebraSpec::new("C4", vec![1, 1, 1, 1])?),
    }
}

fn expr(text: &str) -> Result<TangleExpr, CliError> {
    Ok(parse(text)?)
}

pub fn nc(op: NcOp, _g: &Global) -> Result<Output, CliError> {
    match op {
        NcOp::Enumerate { n, class } => {
            let class = match class {
                ClassArg::All => PartitionClass::All,
                ClassArg::Nc => PartitionClass::NonCrossing,
                ClassArg::Interval => PartitionClass::Interval,
                ClassArg::EvenNc => PartitionClass::EvenNonCrossing,
            };
            Ok(Output::lines(enumerate(n, class)?.iter().map(|p| p.to_string())))
        }
        NcOp::Kreweras { partition: p, inverse } => {
            let p = partition(&p)?;
            let k = if inverse { kreweras_inverse(&p)? } else { kreweras(&p)? };
            Ok(Output::text(k.to_string()))
        }
        NcOp::NestedKreweras { partition: p } => Ok(Output::text(nested_kreweras(&partition(&p)?)?.to_string())),
        NcOp::Depth { partition: p } => {
            let p = partition(&p)?;
            let d = depth(&p)?;
            let table = p.blocks().iter().zip(&d).map(|(b, d)| format!("{} {d}", format_block(b))).collect::<Vec<_>>().join("\n");
            Ok(Output::new(json!(d), table))
        }
        NcOp::Surgery { partition: p, block: b, merge, split } => {
            let p = partition(&p)?;
            let b = block(&b, p.order())?;
            let result = match (merge, split) {
                (Some(other), None) => merge_blocks(&p, &b, &block(&other, p.order())?)?,
                (None, Some(i)) => split_block(&p, &b, i)?,
                _ => return input_error("give exactly one of --merge BLOCK or --split INDEX"),
            };
            Ok(Output::text(result.to_string()))
        }
        NcOp::Envelope { partition: p, block: b } => {
            let p = partition(&p)?;
            let env = enveloping_blocks(&p, &block(&b, p.order())?)?;
            let lower: Vec<String> = env.lower.iter().map(|b| format_block(b)).collect();
            let upper = format_block(&env.upper);
            let table = format!("upper {upper}\nlower {}", lower.join(" "));
            Ok(Output::new(json!({ "upper": upper, "lower": lower }), table))
        }
    }
}

fn format_block(b: &[usize]) -> String {
    freeplanar::partitions::format_set(b)
}

#[derive(Deserialize)]
struct CumulantFile {
    kind: CumulantKind,
    values: Vec<String>,
}

pub fn cum(op: CumOp, g: &Global) -> Result<Output, CliError> {
    let n = g.max_n as usize;
    let values = match op {
        CumOp::Free { profile: p } => cumulants_from_moments(&profile(&p, n)?, CumulantKind::Free).values,
        CumOp::Boolean { profile: p } => cumulants_from_moments(&profile(&p, n)?, CumulantKind::Boolean).values,
        CumOp::Invert { cumulants } => {
            let file: CumulantFile = serde_json::from_str(&read(&cumulants)?)?;
            let values = file.values.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>, _>>()?;
            moments_from_cumulants("inverted", &CumulantProfile { kind: file.kind, values }).moments
        }
    };
    Ok(Output::json(strings(&values)))
}

pub fn conv(op: ConvOp, g: &Global) -> Result<Output, CliError> {
    match op {
        ConvOp::Boxtimes { left, right, n } => {
            let n = length(n, g);
            let m = free_mult_conv(&profile(&left, n)?, &profile(&right, n)?, n)?;
            Ok(Output::json(strings(&m.moments)))
        }
        ConvOp::BnCheck { left, right, n } => {
            let n = length(n, g);
            let r = boolean_conv_check(&profile(&left, n)?, &profile(&right, n)?, n)?;
            let out = Output::new(
                json!({ "lhs": strings(&r.lhs), "rhs": strings(&r.rhs), "equal": r.equal }),
                format!("lhs {}\nrhs {}\n{}", strings(&r.lhs), strings(&r.rhs), if r.equal { "equal" } else { "DIFFERENT" }),
            );
            Ok(if r.equal { out } else { out.failed() })
        }
    }
}

pub fn tangle(op: TangleOp, _g: &Global) -> Result<Output, CliError> {
    match op {
        TangleOp::Parse { expr: text } => {
            let e = expr(&text)?;
            let sig = e.signature()?;
            let inner: Vec<String> = sig.inner.iter().map(usize::to_string).collect();
            Ok(Output::new(
                json!({ "expr": e.to_string(), "outer": sig.outer, "inner": sig.inner }),
                format!("{e}\nouter {} inner [{}]", sig.outer, inner.join(",")),
            ))
        }
        TangleOp::Pi { expr: text } => Ok(Output::text(expr(&text)?.tangle()?.pi()?.to_string())),
        TangleOp::Shading { expr: text } => Ok(Output::text(expr(&text)?.tangle()?.shading_partition()?.to_string())),
        TangleOp::Free { left, right } => {
            let (a, b) = (expr(&left)?.tangle()?, expr(&right)?.tangle()?);
            if !is_free_pair(&a, &b)? {
                return Ok(Output::new(json!({ "free": false }), "not free"));
            }
            let joint = free_compose(&a, &b)?;
            let pi = joint.pi().map(|p| p.to_string()).ok();
            let table = match &pi {
                Some(p) => format!("free\n{p}"),
                None => "free".to_string(),
            };
            Ok(Output::new(json!({ "free": true, "pi": pi }), table))
        }
        TangleOp::Reduce { partition: p } => {
            let p = partition(&p)?;
            let complement = nested_kreweras(&p)?;
            reduced_pair(&p)?;
            let first = TangleExpr::Tpi(p).to_string();
            let second = TangleExpr::Tpi(complement).to_string();
            Ok(Output::new(json!({ "first": first, "second": second }), format!("{first}\n{second}")))
        }
    }
}

fn vector(path: &str, spec: &AlgebraSpec) -> Result<LoopVector, CliError> {
    let v = LoopVector::from_json(&read(path)?)?;
    v.validate(spec)?;
    Ok(v)
}

fn vector_json(v: &LoopVector) -> Value {
    serde_json::from_str(&v.to_json()).expect("vector serializes to JSON")
}

fn surd(s: &Surd) -> Value {
    Value::String(s.to_string())
}

pub fn gpa(op: GpaOp, g: &Global) -> Result<Output, CliError> {
    let spec = load_spec(g, 0)?;
    let caps = Caps::default();
    match op {
        GpaOp::Basis { n } => {
            let loops = loop_basis(&spec, n, caps)?;
            let table = loops.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Output::new(serde_json::to_value(&loops)?, table))
        }
        GpaOp::Eval { expr: text, inputs } => {
            let e = expr(&text)?;
            let inputs = inputs.iter().map(|p| vector(p, &spec)).collect::<Result<Vec<_>, _>>()?;
            let v = evaluate(&spec, &e, &inputs)?;
            Ok(Output::new(vector_json(&v), v.to_string()))
        }
        GpaOp::Trace { vector: path, side } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let t = trace(&spec, &vector(&path, &spec)?, side)?;
            Ok(Output::new(surd(&t), t.to_string()))
        }
        GpaOp::Gram { n } => {
            let basis: Vec<LoopVector> = loop_basis(&spec, n, caps)?.into_iter().map(LoopVector::basis).collect();
            let m = gram(&spec, &basis)?;
            let psd = is_positive_semidefinite(&spec.field(), &m)?;
            let rank = gram_rank(&spec, &basis)?;
            let rows: Vec<Vec<Value>> = m.iter().map(|r| r.iter().map(surd).collect()).collect();
            let table = m
                .iter()
                .map(|r| r.iter().map(Surd::to_string).collect::<Vec<_>>().join("\t"))
                .chain([format!("rank {rank}"), format!("positive semidefinite {psd}")])
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(json!({ "matrix": rows, "rank": rank, "psd": psd }), table))
        }
        GpaOp::Tl { n } => {
            let image = tl_image(&spec, n, caps)?;
            let rank = gram_rank(&spec, &image)?;
            let table = image.iter().map(|v| v.to_string()).chain([format!("rank {rank}")]).collect::<Vec<_>>().join("\n");
            Ok(Output::new(json!({ "vectors": image.iter().map(vector_json).collect::<Vec<_>>(), "rank": rank }), table))
        }
        GpaOp::Boolean { n, source } => {
            let realized: Vec<Vec<LoopVector>> = (1..=n)
                .map(|k| match source {
                    SourceArg::Tl => tl_image(&spec, k, caps),
                    SourceArg::Full => Ok(loop_basis(&spec, k, caps)?.into_iter().map(LoopVector::basis).collect()),
                })
                .collect::<Result<_, _>>()?;
            let dims = (1..=n)
                .map(|k| boolean_subspace(&spec, &realized, k).map(|b| b.len().to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Output::json(json!(dims)))
        }
    }
}

fn dimension_profile(arg: &str, n: usize) -> Result<DimensionProfile, CliError> {
    Ok(DimensionProfile::new(profile(arg, n)?)?)
}

pub fn fp(op: FpOp, g: &Global) -> Result<Output, CliError> {
    match op {
        FpOp::Dims { left, right, n } => {
            let n = length(n, g);
            let dims = free_product_dims(&dimension_profile(&left, n)?, &dimension_profile(&right, n)?, n)?;
            Ok(Output::json(strings(&dims)))
        }
        FpOp::Basis { left, right, n } => {
            let labels = basis_labels(&dimension_profile(&left, n)?, &dimension_profile(&right, n)?, n)?;
            let table = labels.iter().map(|l| l.to_json()).collect::<Vec<_>>().join("\n");
            Ok(Output::new(serde_json::to_value(&labels)?, table))
        }
        FpOp::Rank { n, labels } => {
            let (a, b) = (load_spec(g, 0)?, load_spec(g, 1)?);
            let source = match labels {
                SourceArg::Tl => LabelSource::Tl,
                SourceArg::Full => LabelSource::Full,
            };
            let ranks = (1..=n)
                .map(|k| concrete_span_rank(&a, &b, k, source, Caps::default()).map(|r| r.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Output::json(json!(ranks)))
        }
        FpOp::WreathMoments { alpha, beta, n } => {
            let n = length(n, g);
            let m = wreath_character_moments(&profile(&alpha, n)?, &profile(&beta, n)?, n)?;
            Ok(Output::json(strings(&m.moments)))
        }
    }
}

pub fn group(op: GroupOp, _g: &Global) -> Result<Output, CliError> {
    let GroupOp::Moments { points, generators, k } = op;
    let gens = generators
        .iter()
        .map(|s| s.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Input("generators are comma-separated images, e.g. --gen 2,3,1".into()))?;
    let m = perm_group_character_moments(points, &gens, k)?;
    Ok(Output::json(strings(&m.moments)))
}
