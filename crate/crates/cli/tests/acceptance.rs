//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::{Command, ExitCode};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use twotuple::aggregate::{add, mean};
use twotuple::fcl::{
    self, Density, FclError, FclModel, FuzzifyBlock, LingBody, LingDeclDensity, LingDeclPairs,
    TermDecl, VarDecl, VarType,
};
use twotuple::hierarchy::{grain, position, represent};
use twotuple::partition::coverage_epsilon;
use twotuple::tree::flatten;
use twotuple::{
    build_partition, BinaryNode, Level, LinguisticValue, NodeTuple, Partition, TermPair,
};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn bac() -> Partition {
    build_partition(&[
        TermPair::new("NoAlcohol", 0.0),
        TermPair::new("YoungLegalLimit", 0.05),
        TermPair::new("Intermediate", 0.065),
        TermPair::new("LegalLimit", 0.08),
        TermPair::new("RiskOfDeath", 0.3),
    ])
    .expect("BAC partition builds")
}

/// `(labels, index, alpha)` of one side of a term.
fn side(p: &Partition, term: &str, downside: bool) -> Result<(u64, u64, f64), String> {
    let t = p.term(term).map_err(|e| e.to_string())?;
    let s = if downside { &t.downside } else { &t.upside };
    let s = s.as_ref().ok_or_else(|| format!("{term} lacks the side"))?;
    Ok((
        s.two_tuple.level.label_count(),
        s.two_tuple.index,
        s.two_tuple.alpha,
    ))
}

/// `want` is `(labels, index, alpha)`.
fn expect_side(
    p: &Partition,
    check: &str,
    term: &str,
    downside: bool,
    want: (u64, u64, f64),
    tol: f64,
) -> Check {
    let (labels, index, alpha) = want;
    let (n, i, a) = side(p, term, downside)?;
    ensure!(
        n == labels && i == index && (a - alpha).abs() <= tol,
        "{check}: got (s_{i}^{n}, {a}), want (s_{index}^{labels}, {alpha} ± {tol})"
    );
    Ok(check.to_string())
}

fn ac1_table_rows() -> Check {
    let p = bac();
    let checks = [
        expect_side(
            &p,
            "bac_no_alcohol_downside",
            "NoAlcohol",
            true,
            (9, 0, 0.0),
            1e-12,
        )?,
        expect_side(
            &p,
            "bac_young_legal_limit_upside",
            "YoungLegalLimit",
            false,
            (9, 1, 0.0125),
            1e-12,
        )?,
        expect_side(
            &p,
            "bac_young_legal_limit_downside_rounded",
            "YoungLegalLimit",
            true,
            (33, 5, 0.003),
            5e-4,
        )?,
        expect_side(
            &p,
            "bac_legal_limit_downside",
            "LegalLimit",
            true,
            (3, 1, -0.07),
            1e-12,
        )?,
        expect_side(
            &p,
            "bac_intermediate_upside_level5_not_level4",
            "Intermediate",
            false,
            (33, 6, 0.00875),
            1e-12,
        )?,
        expect_side(
            &p,
            "bac_intermediate_downside_level5_not_level4",
            "Intermediate",
            true,
            (33, 7, -0.000625),
            1e-12,
        )?,
        expect_side(
            &p,
            "bac_legal_limit_upside_level5_not_level4",
            "LegalLimit",
            false,
            (33, 8, 0.005),
            1e-12,
        )?,
        expect_side(
            &p,
            "bac_risk_of_death_upside_index2_not_index1",
            "RiskOfDeath",
            false,
            (3, 2, 0.0),
            1e-12,
        )?,
    ];
    Ok(format!("{} rows", checks.len()))
}

fn ac2_addition() -> Check {
    let p = bac();
    let r = add(
        &p,
        &LinguisticValue::bare("YoungLegalLimit"),
        &LinguisticValue::bare("LegalLimit"),
    )
    .map_err(|e| e.to_string())?;
    let lh = &r.lh_tuple;
    ensure!(
        lh.level.label_count() == 33 && lh.index == 14 && (lh.alpha + 0.00125).abs() <= 1e-6,
        "lh_tuple {lh}"
    );
    ensure!(
        r.value.term == "LegalLimit" && (r.value.residual - 0.05).abs() <= 1e-12,
        "value {}",
        r.value
    );
    Ok(format!("lh {lh}, value {}", r.value))
}

fn ac3_mean() -> Check {
    let p = bac();
    let r = mean(
        &p,
        &[
            LinguisticValue::bare("YoungLegalLimit"),
            LinguisticValue::bare("LegalLimit"),
        ],
    )
    .map_err(|e| e.to_string())?;
    ensure!((r.beta - 0.065).abs() <= 1e-12, "beta {}", r.beta);
    let lh = &r.lh_tuple;
    ensure!(
        lh.level.label_count() == 33 && lh.index == 7 && (lh.alpha + 0.000625).abs() <= 1e-6,
        "lh_tuple {lh}"
    );
    // Nearest kernel to 0.065 is Intermediate itself, not YoungLegalLimit.
    ensure!(
        r.value.term == "Intermediate" && r.value.residual.abs() <= 1e-12,
        "value {}",
        r.value
    );
    Ok(format!(
        "beta {}, lh {lh}, value {}",
        r.beta, r.value
    ))
}

fn ac4_grain_laws(rng: &mut ChaCha8Rng) -> Check {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let span = 10f64.powf(rng.gen_range(-6.0..6.0));
        for t in 1..=10 {
            let coarse = grain(t - 1, span).map_err(|e| e.to_string())?;
            let fine = grain(t, span).map_err(|e| e.to_string())?;
            let rel = (coarse - 2.0 * fine).abs() / coarse;
            worst = worst.max(rel);
            ensure!(rel <= 1e-12, "t={t} span={span}: {coarse} vs 2*{fine}");
        }
    }
    let g = grain(2, 1.0).map_err(|e| e.to_string())?;
    ensure!(g == 0.25, "grain(2, 1) = {g}");
    Ok(format!("1000 pairs, worst relative error {worst:e}"))
}

const SAMPLES: usize = 10_000;

/// Term sets whose kernels lie on even points of the 10,001-point sampling
/// lattice, so every gap midpoint is itself a sample.
fn lattice_term_set(rng: &mut ChaCha8Rng) -> Vec<TermPair> {
    let n = rng.gen_range(2..=12);
    let span = 10f64.powf(rng.gen_range(-3.0..3.0));
    let v_min = rng.gen_range(-10.0..10.0);
    let mut slots: Vec<usize> = sample(rng, SAMPLES / 2 - 1, n - 2)
        .into_iter()
        .map(|s| 2 * (s + 1))
        .collect();
    slots.push(0);
    slots.push(SAMPLES);
    slots.sort_unstable();
    slots
        .iter()
        .enumerate()
        .map(|(k, &s)| TermPair::new(format!("t{k}"), v_min + span * s as f64 / SAMPLES as f64))
        .collect()
}

fn random_term_set(rng: &mut ChaCha8Rng) -> Vec<TermPair> {
    let n = rng.gen_range(2..=12);
    let mut v = rng.gen_range(-100.0..100.0);
    (0..n)
        .map(|k| {
            let pair = TermPair::new(format!("t{k}"), v);
            v += 10f64.powf(rng.gen_range(-4.0..1.0));
            pair
        })
        .collect()
}

fn ac5_minimal_covering(rng: &mut ChaCha8Rng) -> Check {
    let mut worst = 0.0f64;
    let mut smallest = f64::INFINITY;
    for set in 0..1000 {
        let pairs = lattice_term_set(rng);
        let p = build_partition(&pairs).map_err(|e| format!("set {set}: {e}"))?;
        let span = p.span();
        for (k, (d, level)) in p.gaps().zip(p.gap_levels()).enumerate() {
            let g = level.grain(span);
            ensure!(g <= d && d < 2.0 * g, "set {set} gap {k}: d={d}, grain={g}");
        }
        let mut sampled = f64::INFINITY;
        for i in 0..=SAMPLES {
            let u = if i == SAMPLES {
                span
            } else {
                span * i as f64 / SAMPLES as f64
            };
            sampled = sampled.min(p.max_membership(u).map_err(|e| e.to_string())?);
        }
        let eps = coverage_epsilon(&p);
        ensure!(sampled > 0.0, "set {set}: sampled minimum {sampled}");
        ensure!(
            (sampled - eps).abs() <= 1e-6,
            "set {set}: sampled {sampled} vs epsilon {eps}"
        );
        worst = worst.max((sampled - eps).abs());
        smallest = smallest.min(sampled);
    }
    let eps = bac().epsilon();
    ensure!((eps - 0.2).abs() <= 1e-9, "BAC epsilon {eps}");
    Ok(format!("1000 sets, max |sampled - epsilon| {worst:e}, smallest epsilon {smallest:.3e}, BAC epsilon {eps}"))
}

fn ac6_kernels(rng: &mut ChaCha8Rng) -> Check {
    let mut count = 0;
    for set in 0..2000 {
        let pairs = if set % 2 == 0 {
            lattice_term_set(rng)
        } else {
            random_term_set(rng)
        };
        let p = build_partition(&pairs).map_err(|e| format!("set {set}: {e}"))?;
        for t in p.terms() {
            let m = p.membership(&t.name, t.kernel).map_err(|e| e.to_string())?;
            ensure!(m == 1.0, "set {set}: membership({}, kernel) = {m}", t.name);
            count += 1;
        }
    }
    Ok(format!("{count} kernels over 2000 partitions"))
}

fn random_tree(rng: &mut ChaCha8Rng, depth: u32, max_depth: u32, next: &mut usize) -> BinaryNode {
    let name = format!("n{next}");
    *next += 1;
    if depth < max_depth && rng.gen_bool(0.6) {
        let left = random_tree(rng, depth + 1, max_depth, next);
        let right = random_tree(rng, depth + 1, max_depth, next);
        BinaryNode::branch(name, left, right)
    } else {
        BinaryNode::leaf(name)
    }
}

fn tree_laws(root: &BinaryNode) -> Result<(), String> {
    let nodes: Vec<NodeTuple> = flatten(root).map_err(|e| e.to_string())?;
    let by_name: HashMap<&str, &NodeTuple> = nodes.iter().map(|n| (n.name.as_str(), n)).collect();
    let mut stack = vec![(root, 0u32)];
    while let Some((node, depth)) = stack.pop() {
        let me = by_name[node.name.as_str()];
        ensure!(
            me.depth() == depth && me.two_tuple.alpha == 0.0,
            "{}: depth {}",
            node.name,
            me.depth()
        );
        if let (Some(l), Some(r)) = (&node.left, &node.right) {
            let (lt, rt) = (by_name[l.name.as_str()], by_name[r.name.as_str()]);
            ensure!(
                (lt.position() + rt.position()) / 2.0 == me.position(),
                "{} is not centred over its children",
                node.name
            );
            let child_grain = lt.two_tuple.level.grain(1.0);
            ensure!(
                rt.position() - lt.position() == 2.0 * child_grain,
                "siblings under {} are not two grains apart",
                node.name
            );
            stack.push((l, depth + 1));
            stack.push((r, depth + 1));
        }
    }
    let positions: Vec<f64> = root
        .in_order()
        .iter()
        .map(|n| by_name[n].position())
        .collect();
    ensure!(
        positions.windows(2).all(|w| w[0] < w[1]),
        "in-order traversal is not sorted by position"
    );
    Ok(())
}

fn ac7_trees(rng: &mut ChaCha8Rng) -> Check {
    let text = std::fs::read_to_string(fixture("sample_tree.json")).map_err(|e| e.to_string())?;
    let root: BinaryNode = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let got: Vec<(String, u64, u64)> = flatten::<f64>(&root)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|n| (n.name, n.two_tuple.level.label_count(), n.two_tuple.index))
        .collect();
    let want: Vec<(String, u64, u64)> = [
        ("a", 3, 1),
        ("b", 5, 1),
        ("c", 5, 3),
        ("d", 9, 5),
        ("e", 9, 7),
        ("f", 17, 9),
        ("g", 17, 11),
    ]
    .iter()
    .map(|&(n, l, i)| (n.to_string(), l, i))
    .collect();
    ensure!(got == want, "sample tree flattened to {got:?}");
    let mut total = 0;
    for k in 0..500 {
        let mut next = 0;
        let max_depth = rng.gen_range(0..=8);
        let tree = random_tree(rng, 0, max_depth, &mut next);
        tree_laws(&tree).map_err(|e| format!("tree {k}: {e}"))?;
        total += next;
    }
    Ok(format!(
        "sample tree exact; 500 random trees, {total} nodes"
    ))
}

fn ident(rng: &mut ChaCha8Rng, prefix: char) -> String {
    let len = rng.gen_range(0..8);
    let mut s = String::from(prefix);
    for _ in 0..len {
        let c = match rng.gen_range(0..3) {
            0 => rng.gen_range(b'a'..=b'z'),
            1 => rng.gen_range(b'A'..=b'Z'),
            _ => rng.gen_range(b'0'..=b'9'),
        };
        s.push(c as char);
    }
    s
}

fn idents(rng: &mut ChaCha8Rng, prefix: char, max: usize) -> Vec<String> {
    let n = rng.gen_range(1..=max);
    (0..n).map(|_| ident(rng, prefix)).collect()
}

fn density(rng: &mut ChaCha8Rng) -> Density {
    if rng.gen_bool(0.5) {
        Density::Middle
    } else {
        Density::Extreme
    }
}

fn random_model(rng: &mut ChaCha8Rng) -> FclModel {
    let mut model = FclModel::default();
    for k in 0..rng.gen_range(0..4) {
        let name = format!("{}_{k}", ident(rng, 'V'));
        model.inputs.push(VarDecl {
            name: name.clone(),
            ty: VarType::Ling,
        });
        if rng.gen_bool(0.3) {
            continue;
        }
        let body = if rng.gen_bool(0.5) {
            let n = rng.gen_range(1..6);
            LingBody::Pairs(LingDeclPairs {
                pairs: (0..n)
                    .map(|_| {
                        let v = if rng.gen_bool(0.5) {
                            rng.gen_range(-1e6..1e6)
                        } else {
                            f64::from_bits(
                                rng.gen::<u64>() & !(0x7ff << 52) | (rng.gen_range(1..0x7ff) << 52),
                            )
                        };
                        (ident(rng, 't'), v)
                    })
                    .collect(),
            })
        } else {
            LingBody::Density(LingDeclDensity {
                left_terms: idents(rng, 'l', 3),
                center_term: ident(rng, 'c'),
                right_terms: idents(rng, 'r', 3),
                left_density: density(rng),
                right_density: density(rng),
            })
        };
        model.fuzzify_blocks.push(FuzzifyBlock {
            variable: name,
            terms: vec![TermDecl {
                name: ident(rng, 'S'),
                body,
            }],
        });
    }
    model
}

fn ac8_fcl(rng: &mut ChaCha8Rng) -> Check {
    let var = "BloodAlcoholConcentration";
    let read = |name: &str| std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string());
    let pairs = fcl::parse(&read("bac.fcl")?).map_err(|e| e.to_string())?;
    let converted: Partition = fcl::to_partition(&pairs, var).map_err(|e| e.to_string())?;
    ensure!(
        converted == bac(),
        "pair listing does not convert to the BAC partition"
    );

    let density = fcl::parse(&read("bac_density.fcl")?).map_err(|e| e.to_string())?;
    let body = &density
        .fuzzify_block(var)
        .ok_or("density block missing")?
        .terms[0]
        .body;
    let LingBody::Density(d) = body else {
        return Err("density listing parsed as pairs".into());
    };
    ensure!(
        d.left_terms.len() == 3
            && d.center_term == "LegalLimit"
            && d.right_terms.len() == 1
            && (d.left_density, d.right_density) == (Density::Extreme, Density::Extreme),
        "density description {d:?}"
    );
    ensure!(
        matches!(
            fcl::to_partition::<f64>(&density, var),
            Err(FclError::NotSupported(_))
        ),
        "density conversion must be reported as not supported"
    );

    for k in 0..100 {
        let model = random_model(rng);
        let text = fcl::serialize(&model);
        let parsed = fcl::parse(&text)
            .map_err(|e| format!("model {k}: {}\n{text}", e.diagnostic("generated")))?;
        ensure!(
            parsed == model,
            "model {k}: parse(serialize(m)) != m\n{text}"
        );
        ensure!(
            fcl::serialize(&parsed) == text,
            "model {k}: serialization is not a fixpoint"
        );
    }
    Ok("both listings; 100 generated models round-trip".into())
}

fn ac9_inversion(rng: &mut ChaCha8Rng) -> Check {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let span = 10f64.powf(rng.gen_range(-2.0..2.0));
        let beta = rng.gen_range(0.0..=span);
        let level = Level::new(rng.gen_range(0..=40)).map_err(|e| e.to_string())?;
        let tt = represent(beta, level, span).map_err(|e| e.to_string())?;
        let back = position(&tt, span);
        let err = (back - beta).abs();
        worst = worst.max(err);
        ensure!(
            err <= 1e-12,
            "beta={beta} level={level} span={span}: {tt} -> {back}"
        );
        ensure!(
            tt.alpha.abs() <= level.grain(span) / 2.0 * (1.0 + 1e-12),
            "alpha {} exceeds half a grain",
            tt.alpha
        );
    }
    Ok(format!("10000 pairs, worst error {worst:e}"))
}

fn cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_twotuple"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure!(
        a.status == b.status && a.stdout == b.stdout && a.stderr == b.stderr,
        "`{}` is not byte-stable",
        args.join(" ")
    );
    Ok((a.status.code().unwrap_or(-1), a.stdout))
}

fn ac10_cli() -> Check {
    let f = |n: &str| fixture(n).display().to_string();
    let bac = f("bac.fcl");
    let src = ["--fcl", bac.as_str(), "--var", "BloodAlcoholConcentration"];
    let with = |cmd: &str, rest: &[&str]| -> Vec<String> {
        std::iter::once(cmd)
            .chain(src)
            .chain(rest.iter().copied())
            .map(String::from)
            .collect()
    };
    let cases: Vec<(Vec<String>, i32)> = vec![
        (with("partition", &[]), 0),
        (with("partition", &["--format", "csv", "--samples", "4"]), 0),
        (
            with(
                "aggregate",
                &["--op", "add", "YoungLegalLimit", "LegalLimit"],
            ),
            0,
        ),
        (
            with("aggregate", &["--op", "mean", "LegalLimit", "LegalLimit"]),
            0,
        ),
        (
            with("aggregate", &["--op", "add", "LegalLimit", "RiskOfDeath"]),
            2,
        ),
        (with("membership", &["0"]), 0),
        (with("membership", &["0.5"]), 2),
        (vec!["flatten".into(), f("sample_tree.json")], 0),
        (vec!["flatten".into(), f("one_child_tree.json")], 2),
        (vec!["flatten".into(), f("malformed_tree.json")], 1),
        (vec!["stretch".into(), f("grades.txt")], 0),
        (vec!["stretch".into(), f("na_first.txt")], 2),
        (
            vec![
                "partition".into(),
                "--fcl".into(),
                f("missing.fcl"),
                "--var".into(),
                "X".into(),
            ],
            1,
        ),
    ];
    let mut outputs = Vec::new();
    for (args, want) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out) = cli(&args)?;
        ensure!(
            code == *want,
            "`{}` exited {code}, want {want}",
            args.join(" ")
        );
        outputs.push(out);
    }
    let json = |i: usize| -> Result<Value, String> {
        serde_json::from_slice(&outputs[i]).map_err(|e| e.to_string())
    };
    let text = String::from_utf8_lossy(&outputs[0]);
    ensure!(
        text.contains("\"epsilon\": 0.2"),
        "partition JSON lacks `\"epsilon\": 0.2`"
    );
    let p = json(0)?;
    ensure!(
        p["terms"][1]["upside"]["index"] == 1 && p["terms"][3]["downside"]["alpha_abs"] == -0.07,
        "partition JSON term sides"
    );
    ensure!(
        String::from_utf8_lossy(&outputs[1]).lines().count() == 5,
        "CSV row count"
    );
    let a = json(2)?;
    ensure!(
        a["beta"] == 0.13
            && a["lh_tuple"]["index"] == 14
            && a["value"]["term"] == "LegalLimit"
            && a["value"]["residual"] == 0.05,
        "aggregation triple {a}"
    );
    ensure!(json(3)?["value"]["residual"] == 0, "mean X X");
    ensure!(
        outputs[5] == b"[{\"term\":\"NoAlcohol\",\"degree\":1}]\n",
        "membership at 0"
    );
    ensure!(json(7)?.as_array().map(Vec::len) == Some(7), "flatten rows");
    ensure!(json(10)?["pairs"][2]["v"] == 0.6, "stretch positions");
    Ok(format!("{} invocations, each run twice", cases.len()))
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let results: Vec<(&str, Check)> = vec![
        ("AC1 BAC partition rows", ac1_table_rows()),
        ("AC2 addition", ac2_addition()),
        ("AC3 mean", ac3_mean()),
        ("AC4 grain laws", ac4_grain_laws(&mut rng)),
        ("AC5 minimal covering", ac5_minimal_covering(&mut rng)),
        ("AC6 kernel faithfulness", ac6_kernels(&mut rng)),
        ("AC7 tree flattening", ac7_trees(&mut rng)),
        ("AC8 FCL round trip", ac8_fcl(&mut rng)),
        ("AC9 represent/position inversion", ac9_inversion(&mut rng)),
        ("AC10 CLI contract", ac10_cli()),
    ];
    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
