use normevs::evs::{check_axioms, check_properties, primitives_of, replay, CheckKind, EvsInstance};
use normevs::instances::{
    check_instance, ConeInstance, ConePoint, FinitePointSet, HyperspaceInstance, InstanceId,
    Mutant, NormInstance, SignedScaling,
};
use normevs::NormExpr;

const SEEDS: [u64; 5] = [1, 2, 3, 7, 42];

#[test]
fn norms_in_two_dimensions_satisfy_all_axioms() {
    let report = check_axioms(&NormInstance::new(2).unwrap(), 7, 16, 8).unwrap();
    assert!(report.axioms_pass(), "{report}");
    assert!(report.properties.all_pass(), "{report}");
}

#[test]
fn shipped_instances_pass_across_seeds() {
    for id in [InstanceId::Hyperspace, InstanceId::Cone] {
        for seed in SEEDS {
            let report = check_instance(id, 2, seed, 16, 8).unwrap();
            assert!(report.axioms_pass(), "{id} seed {seed}\n{report}");
        }
    }
}

#[test]
fn hyperspace_records_strict_subadditivity() {
    let report = check_axioms(&HyperspaceInstance::new(1).unwrap(), 3, 16, 8).unwrap();
    assert!(report.axioms_pass());
    let strict = report.axioms.a3.strict_instance.expect("strict instance");
    assert!(strict.detail.starts_with("strict"));
}

#[test]
fn each_mutant_fails_exactly_its_axiom() {
    for m in Mutant::ALL {
        for seed in SEEDS {
            let report = m.check(seed, 16, 8).unwrap();
            assert_eq!(report.axioms.failing(), vec![m.broken_axiom()], "{m:?} seed {seed}\n{report}");
            let (_, entry) = report
                .axioms
                .entries()
                .into_iter()
                .find(|(l, _)| *l == m.broken_axiom())
                .unwrap();
            assert!(entry.counterexample.is_some());
        }
    }
}

#[test]
fn counterexamples_replay() {
    let inst = SignedScaling::new(2).unwrap();
    let report = check_axioms(&inst, 7, 16, 8).unwrap();
    let a2 = &report.axioms.a2;
    assert!(!a2.passed(), "{report}");
    let cx = a2.counterexample.as_ref().unwrap();
    assert_eq!(cx.check, CheckKind::A2Scalar);
    assert_eq!(cx.scalars, vec![-1.0]);
    assert!(replay(&inst, cx).unwrap());
}

#[test]
fn norm_properties_hold() {
    let props = check_properties(&NormInstance::new(3).unwrap(), 11, 16, 8).unwrap();
    assert!(props.all_pass(), "{props:?}");
}

#[test]
fn cone_is_not_homogeneous() {
    let report = check_axioms(&ConeInstance::new(2).unwrap(), 42, 16, 8).unwrap();
    assert!(report.axioms_pass(), "{report}");
    let h = &report.properties.homogeneous;
    assert!(!h.passed());
    let cx = h.counterexample.as_ref().unwrap();
    assert_eq!(cx.scalars, vec![-1.0]);
    assert!(replay(&ConeInstance::new(2).unwrap(), cx).unwrap());
}

#[test]
fn symmetric_point_sets_are_balanced_for_unit_scalars() {
    let inst = HyperspaceInstance::symmetric(2).unwrap();
    let props = check_properties(&inst, 3, 16, 3).unwrap();
    assert!(props.balanced.passed(), "{props:?}");
    let wider = check_properties(&inst, 3, 16, 4).unwrap();
    assert!(!wider.balanced.passed());
}

#[test]
fn primitives_examples() {
    let norms = NormInstance::new(2).unwrap();
    let pool = norms.sample(1, 12);
    let ps = primitives_of(&norms, &NormExpr::p(2.0).unwrap(), &pool).unwrap();
    assert!(ps.iter().all(NormExpr::is_zero));

    let cone = ConeInstance::new(2).unwrap();
    let x: ConePoint = "(2; [1,-1])".parse().unwrap();
    let pool: Vec<ConePoint> = ["(0; [0,0])", "(0; [1,-1])", "(0; [1,1])", "(1; [1,-1])"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(primitives_of(&cone, &x, &pool).unwrap(), vec!["(0; [1,-1])".parse().unwrap()]);

    let hyper = HyperspaceInstance::new(1).unwrap();
    let x: FinitePointSet = "{[0],[1],[2]}".parse().unwrap();
    let pool: Vec<FinitePointSet> = ["{[0]}", "{[1]}", "{[2]}", "{[3]}", "{[0],[1]}"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(primitives_of(&hyper, &x, &pool).unwrap(), pool[..3].to_vec());
    assert!(primitives_of(&hyper, &x, &pool[3..]).is_err());
}
