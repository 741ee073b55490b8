use twotuple::aggregate::{add, mean};
use twotuple::export::PartitionDocument;
use twotuple::fcl;
use twotuple::partition::{resolve_stretch, WeightTable};
use twotuple::tree::flatten;
use twotuple::{
    BinaryNode, LinguisticValue, LinguisticValueF32, Partition, PartitionF32, StretchTerm,
};

const BAC: &str = "VAR_INPUT
    BloodAlcoholConcentration : LING;
END_VAR

FUZZIFY BloodAlcoholConcentration
    TERM S := ling (NoAlcohol,0.0) (YoungLegalLimit,0.05)
          (Intermediate,0.065) (LegalLimit,0.08) (RiskOfDeath,0.3);
END_FUZZIFY
";

#[test]
fn fcl_to_aggregation() {
    let model = fcl::parse(BAC).unwrap();
    let p: Partition = fcl::to_partition(&model, "BloodAlcoholConcentration").unwrap();
    let r = add(
        &p,
        &LinguisticValue::bare("YoungLegalLimit"),
        &LinguisticValue::bare("LegalLimit"),
    )
    .unwrap();
    assert_eq!(r.value.term, "LegalLimit");
    assert!((r.value.residual - 0.05).abs() < 1e-12);

    let doc = serde_json::to_value(PartitionDocument::from(&p)).unwrap();
    assert_eq!(doc["epsilon"], 0.2);
}

#[test]
fn single_precision() {
    let model = fcl::parse(BAC).unwrap();
    let p: PartitionF32 = fcl::to_partition(&model, "BloodAlcoholConcentration").unwrap();
    assert_eq!(
        p.gap_levels()
            .iter()
            .map(|l| l.number())
            .collect::<Vec<_>>(),
        vec![3, 5, 5, 1]
    );
    assert!((p.epsilon() - 0.2).abs() < 1e-5);
    for t in p.terms() {
        assert_eq!(p.membership(&t.name, t.kernel).unwrap(), 1.0);
    }
    let ops = [
        LinguisticValueF32::bare("LegalLimit"),
        LinguisticValueF32::bare("LegalLimit"),
    ];
    let r = mean(&p, &ops).unwrap();
    assert_eq!(r.value.term, "LegalLimit");
    assert!(r.value.residual.abs() < 1e-6);
}

#[test]
fn stretch_tree_and_partition() {
    use StretchTerm::*;
    let entries: Vec<(String, StretchTerm)> =
        [("low", Stuck), ("mid", VeryFar), ("high", NotApplicable)]
            .iter()
            .map(|(n, s)| (n.to_string(), *s))
            .collect();
    let pairs = resolve_stretch::<f64>(&entries, &WeightTable::default()).unwrap();
    let p = twotuple::build_partition(&pairs).unwrap();
    assert_eq!(p.span(), 1.0);
    assert!(p.epsilon() > 0.0);

    let tree = BinaryNode::branch("mid", BinaryNode::leaf("low"), BinaryNode::leaf("high"));
    let nodes = flatten::<f64>(&tree).unwrap();
    let order: Vec<&str> = nodes.iter().map(|n| n.name.as_str()).collect();
    assert_eq!(order, ["mid", "low", "high"]);
    assert_eq!(nodes[1].position(), 0.25);
}
