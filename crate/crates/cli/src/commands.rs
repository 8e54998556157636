use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use monomorph::bichain::{
    indicative_sequence, realize_generating_witness, realize_permutation, sample_bichain, Pattern,
};
use monomorph::canon::{group_sequence, is_chainable, is_monomorphic, CanonKind};
use monomorph::decomp::{
    cellular_witness, components, finitely_partitionable_witness, k_equiv_partition, k_equiv_profile,
    scan_thresholds, strongly_indiscernible_partition, threshold, EquivPartition,
};
use monomorph::permgrp::{
    canonical_group, classify, classify_sequence, example_pair_structure, verify_duality, GroupLabel, PairKind,
    Perm, PermGroup, MIN_SEQUENCE_LEN,
};
use monomorph::relcore::{
    automorphisms, enumerate_structures, graphs, ordered_graphs, random_structures, EnumOptions, RelStruct,
    Signature, StructureFile, DEFAULT_AUTOMORPHISM_BOUND,
};
use monomorph::symchain::pairwise_noniso;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::Common;

pub const SCHEMA: &str = "monomorph/1";

pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
}

impl Report {
    fn json(mut body: Value) -> Self {
        body["schema"] = json!(SCHEMA);
        Report { json: body, csv: None }
    }
}

fn read_structure(path: &Path, common: &Common) -> Result<RelStruct, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file: StructureFile =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(RelStruct::from_file(&file, common.arity_ceiling)?)
}

fn parse_list(text: &str) -> Result<Vec<usize>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| CliError::Input(format!("bad list entry `{p}`"))))
        .collect()
}

fn partitions(ps: &[EquivPartition]) -> Value {
    json!(ps.iter().map(|p| &p.blocks).collect::<Vec<_>>())
}

fn group_summary(seq: &[PermGroup]) -> Result<Value, CliError> {
    let orders: Vec<usize> = seq.iter().map(PermGroup::order).collect();
    let labels: Vec<Vec<String>> = seq
        .iter()
        .map(|g| classify(g).into_iter().map(|l| l.to_string()).collect())
        .collect();
    let classification = if seq.len() >= MIN_SEQUENCE_LEN {
        classify_sequence(seq)?.map(|l| l.to_string())
    } else {
        None
    };
    Ok(json!({ "orders": orders, "labels": labels, "classification": classification }))
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Structure file (JSON).
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Also report the `≤k` partition.
    #[arg(long)]
    pub k: Option<usize>,
    /// Largest fixed set tried by the cellular search; enables it.
    #[arg(long)]
    pub max_f: Option<usize>,
    /// Largest row count tried by the cellular search; enables it.
    #[arg(long)]
    pub max_v: Option<usize>,
}

pub fn analyze(args: &AnalyzeArgs, common: &Common) -> Result<Report, CliError> {
    let r = read_structure(&args.input, common)?;
    let profile = k_equiv_profile(&r)?;
    let parts = components(&r)?;
    let (partition, count) = finitely_partitionable_witness(&r);
    let mut body = json!({
        "n": r.n(),
        "blocks": parts.blocks,
        "threshold": threshold(&r)?,
        "profile": partitions(&profile),
        "indiscernible": strongly_indiscernible_partition(&r).blocks,
        "partitionable": { "blocks": partition.blocks, "count": count },
    });
    if let Some(k) = args.k {
        body["k_partition"] = json!({ "k": k, "blocks": k_equiv_partition(&r, k)?.blocks });
    }
    if args.max_f.is_some() || args.max_v.is_some() {
        let w = cellular_witness(&r, args.max_f.unwrap_or(0), args.max_v.unwrap_or(r.n()))?;
        body["cellular"] = json!(w);
    }
    Ok(Report::json(body))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanClass {
    /// Loop-free digraphs.
    Digraphs,
    Graphs,
    OrderedGraphs,
    /// Seeded random structures with two binary relations.
    BinaryPairs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub class: ScanClass,
    /// Largest domain size.
    #[arg(long)]
    pub n: usize,
    /// Sample size for random classes.
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
}

pub fn scan_threshold(args: &ScanArgs, common: &Common) -> Result<Report, CliError> {
    let mut structures = Vec::new();
    match args.class {
        ScanClass::Digraphs => {
            let sig = Signature::new([("arc", 2)])?;
            for n in 1..=args.n {
                structures.extend(enumerate_structures(&sig, n, &EnumOptions::default())?);
            }
        }
        ScanClass::Graphs => {
            for n in 1..=args.n {
                structures.extend(graphs(n, false)?);
            }
        }
        ScanClass::OrderedGraphs => {
            for n in 1..=args.n {
                structures.extend(ordered_graphs(n)?);
            }
        }
        ScanClass::BinaryPairs => {
            let sig = Signature::new([("r", 2), ("s", 2)])?;
            structures = random_structures(&sig, args.n, args.count, common.seed);
        }
    }
    let scan = scan_thresholds(structures)?.ok_or_else(|| CliError::Input("empty class".into()))?;
    Ok(Report::json(json!({
        "class": args.class.to_possible_value().expect("named variant").get_name(),
        "n": args.n,
        "scanned": scan.scanned,
        "max": scan.max,
        "witness": scan.witness.to_file(),
    })))
}

#[derive(Debug, Args)]
pub struct CanonArgs {
    /// equality, order, betweenness, circular or circbetweenness.
    #[arg(long)]
    pub kind: CanonKind,
    #[arg(long)]
    pub n: usize,
}

pub fn canon(args: &CanonArgs) -> Result<Report, CliError> {
    let r = args.kind.structure(args.n);
    Ok(Report::json(json!({
        "kind": args.kind.to_string(),
        "family": args.kind.group_family().to_string(),
        "structure": r.to_file(),
    })))
}

pub fn chainable(args: &InputArgs, common: &Common) -> Result<Report, CliError> {
    let r = read_structure(&args.input, common)?;
    let order = is_chainable(&r)?;
    Ok(Report::json(json!({
        "chainable": order.is_some(),
        "order": order,
        "monomorphic": is_monomorphic(&r)?,
    })))
}

#[derive(Debug, Args)]
pub struct GroupseqArgs {
    /// Structure file; alternative to `--kind`.
    #[arg(long, conflicts_with = "kind")]
    pub input: Option<PathBuf>,
    #[arg(long, requires = "n")]
    pub kind: Option<CanonKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub mmax: usize,
    /// Chaining order, least element first, as `a,b,c`; searched for when absent.
    #[arg(long)]
    pub order: Option<String>,
}

pub fn groupseq(args: &GroupseqArgs, common: &Common) -> Result<Report, CliError> {
    let r = match (&args.input, args.kind, args.n) {
        (Some(path), _, _) => read_structure(path, common)?,
        (None, Some(kind), Some(n)) => kind.structure(n),
        _ => return Err(CliError::Input("give --input or --kind with --n".into())),
    };
    let order = match &args.order {
        Some(text) => parse_list(text)?,
        None => is_chainable(&r)?.ok_or_else(|| CliError::Input("structure is not chainable".into()))?,
    };
    let seq = group_sequence(&r, &order, args.mmax)?;
    let mut body = group_summary(&seq)?;
    body["order"] = json!(order);
    Ok(Report::json(body))
}

#[derive(Debug, Args)]
pub struct IndicativeArgs {
    /// identity, reverse, rotate:k, rotate-reverse:k, block-reversal:k, dense-vs-omega, random.
    #[arg(long)]
    pub pattern: Pattern,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub mmax: usize,
}

pub fn indicative(args: &IndicativeArgs, common: &Common) -> Result<Report, CliError> {
    let b = sample_bichain(args.pattern, args.n, common.seed)?;
    let seq = indicative_sequence(&b, args.mmax)?;
    let mut body = group_summary(&seq)?;
    body["pattern"] = json!(args.pattern.to_string());
    body["ranks"] = json!(b.ranks());
    Ok(Report::json(body))
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Permutation as its images `σ(0),σ(1),…`.
    #[arg(long, conflicts_with = "m")]
    pub sigma: Option<String>,
    /// Build a bichain whose indicative group at `m` is the full symmetric group.
    #[arg(long)]
    pub m: Option<usize>,
}

pub fn realize(args: &RealizeArgs) -> Result<Report, CliError> {
    match (&args.sigma, args.m) {
        (Some(text), _) => {
            let sigma = Perm::from_images(&parse_list(text)?)?;
            let b = realize_permutation(&sigma);
            let back = b.full_reorder();
            if back != sigma {
                return Err(CliError::Invariant(format!("realized bichain reorders as {:?}", back.images())));
            }
            Ok(Report::json(json!({
                "sigma": sigma.images(),
                "ranks": b.ranks(),
                "reorder": back.images(),
            })))
        }
        (None, Some(m)) => {
            let b = realize_generating_witness(m)?;
            let full = canonical_group(GroupLabel::S, m)?;
            let group = monomorph::bichain::indicative_group(&b, m)?;
            Ok(Report::json(json!({
                "m": m,
                "n": b.len(),
                "ranks": b.ranks(),
                "order": group.order(),
                "symmetric": group == full,
            })))
        }
        (None, None) => Err(CliError::Input("give --sigma or --m".into())),
    }
}

#[derive(Debug, Args)]
pub struct SiblingsArgs {
    /// Compare all binary strings of length 1..=maxlen.
    #[arg(long, default_value_t = 4)]
    pub maxlen: usize,
    /// Explicit comma-separated strings instead of `--maxlen`.
    #[arg(long)]
    pub strings: Option<String>,
}

/// Longest string length accepted by `--maxlen`.
const MAX_SIBLING_LEN: usize = 10;

pub fn siblings(args: &SiblingsArgs) -> Result<Report, CliError> {
    let strings: Vec<String> = match &args.strings {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => {
            if args.maxlen > MAX_SIBLING_LEN {
                return Err(CliError::Bound(format!("maxlen {} exceeds {MAX_SIBLING_LEN}", args.maxlen)));
            }
            (1..=args.maxlen)
                .flat_map(|len| (0..1u32 << len).map(move |bits| format!("{bits:0len$b}")))
                .collect()
        }
    };
    let report = pairwise_noniso(&strings)?;
    let mut csv = String::from("s1,s2,verdict,condensation1,condensation2\n");
    for p in &report.pairs {
        csv.push_str(&format!(
            "{},{},{},\"{}\",\"{}\"\n",
            p.s1, p.s2, p.verdict, p.condensation1, p.condensation2
        ));
    }
    let mut out = Report::json(json!({
        "strings": strings.len(),
        "pair_count": report.pairs.len(),
        "violation_count": report.violations.len(),
        "violations": report.violations,
        "duplicates": report.duplicates,
        "eta_failures": report.eta_failures,
        "pairs": report.pairs,
    }));
    out.csv = Some(csv);
    Ok(out)
}

#[derive(Debug, Args)]
pub struct DualityArgs {
    /// order-pair or circular-pair; alternative to `--input`.
    #[arg(long, conflicts_with = "input", requires = "m")]
    pub kind: Option<PairKind>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, requires = "split")]
    pub input: Option<PathBuf>,
    /// Invariant side `A` of the split, as `a,b,c`.
    #[arg(long)]
    pub split: Option<String>,
}

pub fn duality(args: &DualityArgs, common: &Common) -> Result<Report, CliError> {
    let (r, a) = match (args.kind, args.m, &args.input) {
        (Some(kind), Some(m), _) => {
            let r = example_pair_structure(kind, m)?;
            let a = match &args.split {
                Some(text) => parse_list(text)?,
                None => (0..m).collect(),
            };
            (r, a)
        }
        (None, _, Some(path)) => {
            let text = args.split.as_deref().unwrap_or_default();
            (read_structure(path, common)?, parse_list(text)?)
        }
        _ => return Err(CliError::Input("give --kind with --m, or --input with --split".into())),
    };
    let g = automorphisms(&r, DEFAULT_AUTOMORPHISM_BOUND)?;
    let report = verify_duality(&g, &a)?;
    let mut body = json!(report);
    body["split"] = json!(a);
    body["quotient"] = json!(report.quotient());
    body["holds"] = json!(report.holds());
    Ok(Report::json(body))
}
