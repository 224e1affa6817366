use apollonius::document::ConfigDocument;
use apollonius::render::{render_svg, Overlay};
use apollonius::scenarios::{build_scenario, ScenarioName, ScenarioSpec};
use apollonius::{Error, Tolerances};

const ALLOWED: [&str; 5] = ["svg", "g", "circle", "line", "text"];

fn incenter_doc() -> (ConfigDocument, Overlay) {
    let config = build_scenario(&ScenarioSpec::new(ScenarioName::Incenter)).unwrap();
    let overlay = Overlay::theorem(&config, &Tolerances::default()).unwrap();
    (ConfigDocument::from_configuration(&config), overlay)
}

fn check_well_formed(svg: &str) -> roxmltree::Document<'_> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed XML");
    for node in doc.descendants().filter(|n| n.is_element()) {
        assert!(
            ALLOWED.contains(&node.tag_name().name()),
            "unexpected element {}",
            node.tag_name().name()
        );
    }
    doc
}

fn with_class<'a>(doc: &'a roxmltree::Document, class: &str) -> Vec<roxmltree::Node<'a, 'a>> {
    doc.descendants()
        .filter(|n| n.attribute("class") == Some(class))
        .collect()
}

fn attr(n: &roxmltree::Node, name: &str) -> f64 {
    n.attribute(name).unwrap().parse().unwrap()
}

#[test]
fn incenter_overlay() {
    let (doc, overlay) = incenter_doc();
    let svg = render_svg(&doc, &overlay, 800).unwrap();
    let xml = check_well_formed(&svg);

    let inscribed = with_class(&xml, "inscribed");
    assert_eq!(inscribed.len(), 1);
    assert!((attr(&inscribed[0], "cx") - 1.0).abs() < 1e-6);
    assert!((attr(&inscribed[0], "cy") + 1.0).abs() < 1e-6);
    assert!((attr(&inscribed[0], "r") - 1.0).abs() < 1e-6);

    let lines = with_class(&xml, "theorem-line");
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.has_attribute("stroke-dasharray")));

    let px = with_class(&xml, "point-px");
    assert_eq!(px.len(), 1);
    // the y axis is flipped
    assert!((attr(&px[0], "cx") - 1.0).abs() < 1e-6);
    assert!((attr(&px[0], "cy") + 1.0).abs() < 1e-6);

    // three sides and one circle
    assert_eq!(with_class(&xml, "cycle hyperplane").len(), 3);
    assert_eq!(with_class(&xml, "cycle positive").len(), 1);
}

#[test]
fn empty_overlay_draws_only_the_configuration() {
    let (doc, _) = incenter_doc();
    let svg = render_svg(&doc, &Overlay::default(), 400).unwrap();
    let xml = check_well_formed(&svg);
    assert!(with_class(&xml, "overlay").is_empty());
    assert!(with_class(&xml, "theorem-line").is_empty());
    assert_eq!(with_class(&xml, "configuration").len(), 1);
    assert_eq!(xml.root_element().attribute("width"), Some("400"));
}

#[test]
fn every_planar_scenario_renders() {
    for name in ScenarioName::ALL {
        let config = build_scenario(&ScenarioSpec::new(name)).unwrap();
        if config.dim() != 2 {
            continue;
        }
        let overlay = Overlay::theorem(&config, &Tolerances::default()).unwrap();
        let doc = ConfigDocument::from_configuration(&config);
        check_well_formed(&render_svg(&doc, &overlay, 600).unwrap());
    }
}

#[test]
fn rendering_is_deterministic() {
    let (doc, overlay) = incenter_doc();
    assert_eq!(
        render_svg(&doc, &overlay, 800).unwrap(),
        render_svg(&doc, &overlay, 800).unwrap()
    );
}

#[test]
fn three_dimensional_input_is_rejected() {
    let config = build_scenario(&ScenarioSpec::new(ScenarioName::Morita3d)).unwrap();
    let doc = ConfigDocument::from_configuration(&config);
    assert_eq!(
        render_svg(&doc, &Overlay::default(), 800),
        Err(Error::UnsupportedDimension(3))
    );
}
