use apollonius::document::{parse_config, serialize, ConfigDocument, ReportDocument};
use apollonius::scenarios::{
    build_scenario, random_configuration, random_configuration_with, verify_scenario, ScenarioName,
    ScenarioParams, ScenarioSpec,
};
use apollonius::{Error, Tolerances};

fn spec(name: ScenarioName) -> ScenarioSpec {
    ScenarioSpec::new(name)
}

#[test]
fn every_scenario_passes_with_defaults() {
    for name in ScenarioName::ALL {
        let report = verify_scenario(&spec(name), 1e-7).unwrap();
        let failed: Vec<_> = report.facts.iter().filter(|f| !f.pass).collect();
        assert!(report.pass, "{}: {failed:?}", name.as_str());
        assert!(!report.facts.is_empty());
    }
}

#[test]
fn triangle_centers_of_the_3_4_5_triangle() {
    let r = verify_scenario(&spec(ScenarioName::Incenter), 1e-9).unwrap();
    let p = r.point.unwrap();
    assert!(
        (p[0] - 1.0).abs() < 1e-9 && (p[1] - 1.0).abs() < 1e-9,
        "{p:?}"
    );

    let r = verify_scenario(&spec(ScenarioName::Circumcenter), 1e-9).unwrap();
    let p = r.point.unwrap();
    assert!(
        (p[0] - 2.0).abs() < 1e-9 && (p[1] - 1.5).abs() < 1e-9,
        "{p:?}"
    );
}

#[test]
fn incenter_holds_for_other_triangles_and_circles() {
    let mut s = spec(ScenarioName::Incenter);
    s.params.triangle = Some([[0.0, 0.0], [6.0, 0.0], [1.0, 4.0]]);
    s.params.circle_center = Some([2.0, 1.0]);
    s.params.circle_radius = Some(0.25);
    let r = verify_scenario(&s, 1e-8).unwrap();
    assert!(r.pass);
    let expected = apollonius::scenarios::incenter([[0.0, 0.0], [6.0, 0.0], [1.0, 4.0]]);
    let p = r.point.unwrap();
    assert!((p[0] - expected[0]).abs() < 1e-9 && (p[1] - expected[1]).abs() < 1e-9);
}

#[test]
fn seeded_scenarios_vary_and_pass() {
    for seed in [1, 2, 3, 17, 99] {
        for name in [ScenarioName::Olympiad, ScenarioName::SoddyLine] {
            let mut s = spec(name);
            s.params.seed = Some(seed);
            let r = verify_scenario(&s, 1e-7).unwrap();
            assert!(r.pass, "{} seed {seed}: {:?}", name.as_str(), r.facts);
        }
    }
}

#[test]
fn soddy_line_in_higher_dimensions() {
    for dim in [3, 4] {
        let mut s = spec(ScenarioName::SoddyLine);
        s.dim = Some(dim);
        s.params.seed = Some(5);
        let r = verify_scenario(&s, 1e-7).unwrap();
        assert_eq!(r.configuration.dim(), dim);
        assert!(r.pass, "dim {dim}: {:?}", r.facts);
    }
}

#[test]
fn building_is_deterministic() {
    for name in ScenarioName::ALL {
        let mut s = spec(name);
        s.params.seed = Some(4);
        assert_eq!(build_scenario(&s).unwrap(), build_scenario(&s).unwrap());
    }
    assert_eq!(
        random_configuration(3, 8).unwrap().configuration,
        random_configuration(3, 8).unwrap().configuration
    );
    assert_ne!(
        random_configuration(3, 8).unwrap().configuration,
        random_configuration(3, 9).unwrap().configuration
    );
}

#[test]
fn generated_configurations_round_trip_through_json() {
    let mut configs: Vec<_> = ScenarioName::ALL
        .into_iter()
        .map(|n| build_scenario(&spec(n)).unwrap())
        .collect();
    for n in 2..=5 {
        configs.push(random_configuration(n, 3).unwrap().configuration);
    }
    for config in configs {
        let doc = ConfigDocument::from_configuration(&config);
        let text = serialize(&doc);
        let parsed = parse_config(&text).unwrap();
        assert_eq!(parsed.document, doc);
        assert!(parsed.diagnostics.is_empty());
        assert_eq!(serialize(&parsed.document), text);
        assert_eq!(parsed.document.to_configuration().unwrap(), config);
    }
}

#[test]
fn scenario_reports_serialize_with_seed_and_tolerance() {
    let mut s = spec(ScenarioName::Olympiad);
    s.params.seed = Some(12);
    let r = verify_scenario(&s, 1e-7).unwrap();
    let doc = ReportDocument::scenario(&r, 1e-7, Some(12), &Tolerances::default());
    let v = serde_json::to_value(&doc).unwrap();
    assert_eq!(v["theorem"], "scenario");
    assert_eq!(v["scenario"], "olympiad");
    assert_eq!(v["seed"], 12);
    assert_eq!(v["tolerances"]["check"], 1e-7);
    assert_eq!(v["pass"], true);
    let embedded: ConfigDocument = serde_json::from_value(v["configuration"].clone()).unwrap();
    assert_eq!(embedded.to_configuration().unwrap(), r.configuration);
}

#[test]
fn bad_parameters_are_rejected() {
    let mut s = spec(ScenarioName::Incenter);
    s.params.triangle = Some([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]);
    assert!(build_scenario(&s).is_err());

    let mut s = spec(ScenarioName::Incenter);
    s.dim = Some(3);
    assert!(build_scenario(&s).is_err());

    assert!(serde_json::from_str::<ScenarioParams>(r#"{"bogus": 1}"#).is_err());
    assert!(matches!(
        "no_such".parse::<ScenarioName>(),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        random_configuration_with(1, 0, 10, &Tolerances::default()),
        Err(Error::InvalidArgument(_))
    ));
}
