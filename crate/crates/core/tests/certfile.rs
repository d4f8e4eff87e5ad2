use densikit::catalog::{danielewski_text, product_with_line, sl_bundle, sp_bundle, ExampleBundle};
use densikit::certfile::*;
use densikit::certificates::{verify_tuple, ConditionOneEvidence, Verdict, WitnessFactor, WitnessTarget};
use densikit::{Error, Rational};

const SMALL: &str = "densikit-certificate 1
name = small
expect = VERIFIED

[variety]
variables = x, y, z
order = degrevlex
dim = 2
relation = x*y - z^2 + 1

[field theta1]
x = x
y = -y

[field theta2]
x = 2*z
z = y

[field theta3]
y = 2*z
z = x

[tree]
root = theta1
edge = theta2 -> theta1 : z
edge = theta3 -> theta1 : z

[cond1 coverage]
x = theta3
y = theta2
z = theta1

[sufficiency]
pair = theta2 : y - 3
pair = theta3 : x - 1
point = 1/1, 3/1, 2/1
";

fn bundles() -> Vec<ExampleBundle> {
    let r = Rational::from_integer;
    let d = danielewski_text("z^2 - 1").unwrap();
    let line = product_with_line(d.variety(), d.field("theta3"), "theta3").unwrap();
    vec![
        d,
        danielewski_text("z^3 - z").unwrap(),
        sp_bundle(2, 2, &[r(1), r(0)]).unwrap(),
        sl_bundle(3, 2, 3, r(2)).unwrap(),
        line,
    ]
}

fn line_of(e: Error) -> String {
    match e {
        Error::Located { location, .. } => location,
        other => panic!("expected a located error, got {other:?}"),
    }
}

#[test]
fn canonical_text_round_trips() {
    let cert = parse_certificate(SMALL).unwrap();
    assert_eq!(render_certificate(&cert), SMALL);
    assert_eq!(verify_tuple(&cert).verdict, Verdict::Verified);
}

#[test]
fn catalog_bundles_round_trip_both_formats() {
    for b in bundles() {
        let text = render_certificate(&b.certificate);
        let back = parse_certificate(&text).unwrap();
        assert_eq!(render_certificate(&back), text);
        assert_eq!(back.fields, b.certificate.fields);
        let json = certificate_to_json(&b.certificate);
        let from_json = certificate_from_json(&json).unwrap();
        assert_eq!(certificate_to_json(&from_json), json);
        assert_eq!(render_certificate(&from_json), text);
        assert_eq!(parse_any(&json).unwrap().fields, b.certificate.fields);
    }
}

#[test]
fn witness_evidence_round_trips() {
    let mut cert = parse_certificate(SMALL).unwrap();
    let x = &cert.variety;
    let f = |s: &str, field: &str| WitnessFactor { factor: x.parse(s).unwrap(), field: field.to_string() };
    cert.cond1 = Some(ConditionOneEvidence::Witness(vec![WitnessTarget {
        target: x.parse("y*z + 1").unwrap(),
        terms: vec![vec![f("y", "theta2"), f("z", "theta1")], vec![f("1", "theta1")]],
    }]));
    let text = render_certificate(&cert);
    assert!(text.contains("term = y @ theta2 ; z @ theta1"));
    let back = parse_certificate(&text).unwrap();
    assert_eq!(back.cond1, cert.cond1);
    assert_eq!(render_certificate(&back), text);
    let json = certificate_to_json(&cert);
    assert_eq!(certificate_from_json(&json).unwrap().cond1, cert.cond1);
}

#[test]
fn unknown_variable_is_located() {
    let bad = SMALL.replace("x = 2*z", "x = 2*q");
    let e = parse_certificate(&bad).unwrap_err();
    assert_eq!(line_of(e), "line 16");
}

#[test]
fn structural_errors_are_located() {
    let cases = [
        (SMALL.replace("densikit-certificate 1", "densikit-certificate 2"), "line 1"),
        (SMALL.replace("dim = 2", "dim = two"), "line 8"),
        (SMALL.replace("edge = theta3 -> theta1 : z", "edge = theta3 theta1 z"), "line 26"),
        (SMALL.replace("edge = theta3 -> theta1 : z", "edge = theta4 -> theta1 : z"), "line 26"),
        (SMALL.replace("y = theta2", "y = theta9"), "line 30"),
        (SMALL.replace("point = 1/1, 3/1, 2/1", "point = 1/1, 3/1"), "line 36"),
        (SMALL.replace("point = 1/1, 3/1, 2/1", "point = 1/1, 3/x, 2/1"), "line 36"),
        (SMALL.replace("[field theta3]", "[field theta2]"), "line 19"),
        (SMALL.replace("expect = VERIFIED", "colour = blue"), "line 3"),
    ];
    for (text, at) in cases {
        let e = parse_certificate(&text).unwrap_err();
        assert_eq!(line_of(e), at, "{text}");
    }
}

#[test]
fn sections_must_be_ordered() {
    let moved = SMALL.replace(
        "[tree]\nroot = theta1\nedge = theta2 -> theta1 : z\nedge = theta3 -> theta1 : z\n\n[cond1 coverage]",
        "[cond1 coverage]",
    );
    assert!(parse_certificate(&moved).is_err());
    let twice = format!("{SMALL}\n[variety]\n");
    assert!(parse_certificate(&twice).is_err());
}

#[test]
fn json_errors_carry_paths() {
    let cert = parse_certificate(SMALL).unwrap();
    let json = certificate_to_json(&cert).replace("\"2*z\"", "\"2*q\"");
    let e = certificate_from_json(&json).unwrap_err();
    assert_eq!(line_of(e), "fields[1].coefficients.x");
    assert!(certificate_from_json("{\"version\": 1}").is_err());
}

#[test]
fn mutated_label_file_is_refuted() {
    let cert = parse_certificate(&SMALL.replace("edge = theta2 -> theta1 : z", "edge = theta2 -> theta1 : x")).unwrap();
    assert_eq!(verify_tuple(&cert).verdict, Verdict::Refuted);
}
