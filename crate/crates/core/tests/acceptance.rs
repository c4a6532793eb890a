//! Acceptance suite: one test per pinned criterion, each printing a
//! single pass line (visible with `--nocapture`). Tolerances are exact
//! decimal-string matches or exact `is_zero` checks; nothing here is
//! allowed to compare floating-point approximations.

use euclid_exact::geometry::{
    circle_center_through, dist_sq, intersect_circle_circle, intersect_line_circle, line_through,
    on_circle, on_line, Point,
};
use euclid_exact::interval::{Ctx, Interval};
use euclid_exact::lang::{interpret, parse, Value};
use euclid_exact::measure::{
    arcchord, central_angle, certified_chord_2pi_5, certify, chord, Measurement,
};
use euclid_exact::oracle::{ngon_constructible, totient_is_power_of_two};
use euclid_exact::render::render_scene;
use euclid_exact::report::{build_report, evaluate_measures};
use euclid_exact::tower::{FieldElement, Tower};
use num::{BigInt, BigRational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::process::Command;

const CORPUS_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

fn corpus_path(name: &str) -> String {
    format!("{CORPUS_DIR}/{name}")
}

fn corpus_source(name: &str) -> String {
    std::fs::read_to_string(corpus_path(name)).expect("corpus file")
}

fn euclid(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_euclid"))
        .args(args)
        .output()
        .expect("spawn euclid");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn pentagram_model() -> euclid_exact::lang::InterpretedModel {
    let src = corpus_source("pentagram_golden_angle.euclid");
    interpret(&parse(&src).expect("pentagram parses")).expect("pentagram interprets")
}

fn point_of(model: &euclid_exact::lang::InterpretedModel, name: &str) -> Point {
    match model.value(name) {
        Some(Value::Point(p)) => p.clone(),
        _ => panic!("corpus point '{name}' missing"),
    }
}

fn scalar_of(model: &euclid_exact::lang::InterpretedModel, name: &str) -> FieldElement {
    match model.value(name) {
        Some(Value::Scalar(v)) => v.clone(),
        _ => panic!("corpus scalar '{name}' missing"),
    }
}

#[test]
fn criterion_01_golden_ratio_constant() {
    let (stdout, _, code) = euclid(&["verify-golden", "--digits", "6"]);
    assert_eq!(code, 0, "verify-golden exited {code}");
    assert!(
        stdout.contains("phi = 1.618034"),
        "missing phi line in:\n{stdout}"
    );
    println!("criterion 01 golden-ratio constant 1.618034: pass");
}

#[test]
fn criterion_02_golden_angle() {
    let (stdout, _, code) = euclid(&["verify-golden", "--digits", "2"]);
    assert_eq!(code, 0);
    assert!(
        stdout.contains("golden_angle = 137.51 deg"),
        "missing golden-angle line in:\n{stdout}"
    );
    println!("criterion 02 golden angle 137.51: pass");
}

#[test]
fn criterion_03_measured_arc() {
    // Note: at 5 decimals the arc is 137.39754; this is the correctly
    // rounded value of 180 - 2*arcsin(sin(36°)/phi).
    let model = pentagram_model();
    let (b, o, c) = (
        point_of(&model, "B"),
        point_of(&model, "O"),
        point_of(&model, "C"),
    );
    let m2 = central_angle(&model.tower, &b, &o, &c, 2, "arcBC").unwrap();
    assert_eq!(m2.decimal, "137.40");
    let m5 = central_angle(&model.tower, &b, &o, &c, 5, "arcBC").unwrap();
    assert_eq!(m5.decimal, "137.39754");

    let (stdout, _, code) = euclid(&[
        "run",
        &corpus_path("pentagram_golden_angle.euclid"),
        "--digits",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("arcBC = 137.40 deg"), "{stdout}");
    println!("criterion 03 measured arc 137.40 / 137.39754: pass");
}

#[test]
fn criterion_04_relative_error() {
    let (stdout, _, code) = euclid(&["verify-golden", "--digits", "2"]);
    assert_eq!(code, 0);
    assert!(
        stdout.contains("rel_error = 0.08%"),
        "missing relative-error line in:\n{stdout}"
    );
    println!("criterion 04 relative error 0.08%: pass");
}

#[test]
fn criterion_05_exact_pentagon_facts() {
    let mut model = pentagram_model();
    let a = scalar_of(&model, "a");
    let b = scalar_of(&model, "b");
    let (pa, pc) = (point_of(&model, "A"), point_of(&model, "C"));

    // a/b = phi, exactly
    let sqrt5 = model.tower.sqrt(&FieldElement::from_integer(5)).unwrap();
    let phi = model
        .tower
        .div(
            &model.tower.add(&FieldElement::one(), &sqrt5),
            &FieldElement::from_integer(2),
        )
        .unwrap();
    let t = &model.tower;
    assert!(t.sub(&a, &t.mul(&phi, &b)).is_zero(), "a - phi*b != 0");

    // arc AC has chord b, exactly
    let d2 = dist_sq(t, &pa, &pc);
    assert!(t.sub(&d2, &t.mul(&b, &b)).is_zero(), "dist2(A,C) != b^2");

    // a is the chord of 2*pi/5, certified below 10^-30
    assert!(certified_chord_2pi_5(t, &a), "|a - chord(2pi/5)| >= 1e-30");
    println!("criterion 05 exact pentagon facts: pass");
}

#[test]
fn criterion_06_chord_inverse() {
    // ten samples x = k*pi/10, k = 1..=10; arcchord(chord(x)) must agree
    // with x to 20 certified decimal digits
    let zeros = format!("0.{}", "0".repeat(20));
    for k in 1..=10i64 {
        let (_, dec) = certify(20, |ctx: &mut Ctx| {
            let pi = ctx.pi();
            let x = ctx.div(&ctx.mul(&pi, &ctx.from_i64(k)), &ctx.from_i64(10));
            let c = chord(ctx, &x);
            let back = arcchord(ctx, &c).ok()?;
            let diff = ctx.sub(&back, &x);
            Some(ctx.abs(&diff))
        })
        .expect("round trip certifies");
        assert_eq!(dec, zeros, "k = {k}");
    }
    println!("criterion 06 chord inverse to 20 digits: pass");
}

fn random_rational(rng: &mut StdRng) -> BigRational {
    let num = rng.gen_range(-30i64..=30);
    let den = rng.gen_range(1i64..=12);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A random combination of the given basis elements.
fn random_element(rng: &mut StdRng, t: &Tower, basis: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::from_rational(random_rational(rng));
    for b in basis {
        let coef = FieldElement::from_rational(random_rational(rng));
        acc = t.add(&acc, &t.mul(&coef, b));
    }
    acc
}

#[test]
fn criterion_07_field_tower_properties() {
    let mut tower = Tower::new();
    let roots: Vec<FieldElement> = [2i64, 3, 5]
        .iter()
        .map(|&r| tower.sqrt(&FieldElement::from_integer(r)).unwrap())
        .collect();
    assert_eq!(tower.height(), 3);
    // the full multiplicative basis of Q(√2, √3, √5) over Q
    let basis = vec![
        roots[0].clone(),
        roots[1].clone(),
        roots[2].clone(),
        tower.mul(&roots[0], &roots[1]),
        tower.mul(&roots[0], &roots[2]),
        tower.mul(&roots[1], &roots[2]),
        tower.mul(&tower.mul(&roots[0], &roots[1]), &roots[2]),
    ];
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);

    // 200 triples x 5 axioms = 1000 exact checks
    for _ in 0..200 {
        let x = random_element(&mut rng, &tower, &basis);
        let y = random_element(&mut rng, &tower, &basis);
        let z = random_element(&mut rng, &tower, &basis);
        let t = &tower;
        // commutativity (both operations)
        assert!(t.sub(&t.add(&x, &y), &t.add(&y, &x)).is_zero());
        assert!(t.sub(&t.mul(&x, &y), &t.mul(&y, &x)).is_zero());
        // associativity of multiplication
        let lhs = t.mul(&t.mul(&x, &y), &z);
        let rhs = t.mul(&x, &t.mul(&y, &z));
        assert!(t.sub(&lhs, &rhs).is_zero());
        // distributivity
        let lhs = t.mul(&x, &t.add(&y, &z));
        let rhs = t.add(&t.mul(&x, &y), &t.mul(&x, &z));
        assert!(t.sub(&lhs, &rhs).is_zero());
        // multiplicative inverse
        if !x.is_zero() {
            let inv = t.inv(&x).unwrap();
            assert!(t.sub(&t.mul(&x, &inv), &FieldElement::one()).is_zero());
        } else {
            assert!(t.add(&x, &t.neg(&x)).is_zero());
        }
    }

    // sqrt of 100 random non-negative elements (squares stay in-tower)
    let height_before = tower.height();
    for _ in 0..100 {
        let y = random_element(&mut rng, &tower, &basis);
        let x = tower.mul(&y, &y);
        let s = tower.sqrt(&x).unwrap();
        assert!(tower.sub(&tower.mul(&s, &s), &x).is_zero());
        assert!(tower.sign(&s) >= 0);
    }
    assert_eq!(tower.height(), height_before, "sqrt of a square grew the tower");

    // the denesting case: sqrt(5 + 2*sqrt(6)) = sqrt(2) + sqrt(3)
    let mut t2 = Tower::new();
    let s2 = t2.sqrt(&FieldElement::from_integer(2)).unwrap();
    let s3 = t2.sqrt(&FieldElement::from_integer(3)).unwrap();
    let h = t2.height();
    let six = t2.mul(&FieldElement::from_integer(2), &t2.mul(&s2, &s3));
    let arg = t2.add(&FieldElement::from_integer(5), &six);
    let s = t2.sqrt(&arg).unwrap();
    assert!(t2.sub(&s, &t2.add(&s2, &s3)).is_zero());
    assert_eq!(t2.height(), h, "denesting grew the tower");
    println!("criterion 07 field-tower property suite: pass");
}

fn random_point(rng: &mut StdRng) -> Point {
    Point::new(
        FieldElement::from_rational(random_rational(rng)),
        FieldElement::from_rational(random_rational(rng)),
    )
}

#[test]
fn criterion_08_intersection_exactness() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut checked = 0;
    while checked < 200 {
        // fresh tower per configuration keeps each level small
        let mut t = Tower::new();
        let (p1, p2, c1, r1, c2, r2) = (
            random_point(&mut rng),
            random_point(&mut rng),
            random_point(&mut rng),
            random_point(&mut rng),
            random_point(&mut rng),
            random_point(&mut rng),
        );
        let Ok(line) = line_through(&t, &p1, &p2) else { continue };
        let Ok(circle_a) = circle_center_through(&t, &c1, &r1) else { continue };
        let Ok(circle_b) = circle_center_through(&t, &c2, &r2) else { continue };
        let (pts, against_line) = if checked % 2 == 0 {
            (intersect_line_circle(&mut t, &line, &circle_a), true)
        } else {
            (intersect_circle_circle(&mut t, &circle_a, &circle_b), false)
        };
        let Ok(pts) = pts else { continue };
        if pts.is_empty() {
            continue;
        }
        for p in &pts {
            assert!(on_circle(&t, p, &circle_a), "point off first curve");
            if against_line {
                assert!(on_line(&t, p, &line), "point off the line");
            } else {
                assert!(on_circle(&t, p, &circle_b), "point off second circle");
            }
        }
        checked += 1;
    }
    println!("criterion 08 intersection exactness on 200 configs: pass");
}

#[test]
fn criterion_09_oracle_cross_check() {
    let yes = [3u64, 4, 5, 6, 8, 10, 12, 15, 16, 17, 20];
    let no = [7u64, 9, 11, 13, 14, 18, 19];
    for n in 3..=10_000u64 {
        let verdict = ngon_constructible(n).unwrap().constructible;
        assert_eq!(
            verdict,
            totient_is_power_of_two(n),
            "disagreement at n = {n}"
        );
        if yes.contains(&n) {
            assert!(verdict, "n = {n} should be constructible");
        }
        if no.contains(&n) {
            assert!(!verdict, "n = {n} should not be constructible");
        }
    }
    println!("criterion 09 oracle cross-check on [3, 10000]: pass");
}

#[test]
fn criterion_10_determinism() {
    for name in [
        "pentagram_golden_angle.euclid",
        "pentagon_richmond.euclid",
        "smoke_equilateral.euclid",
    ] {
        let src = corpus_source(name);
        let m1 = interpret(&parse(&src).unwrap()).unwrap();
        let m2 = interpret(&parse(&src).unwrap()).unwrap();
        assert_eq!(m1.scene.points.len(), m2.scene.points.len());
        for ((n1, p1), (n2, p2)) in m1.scene.points.iter().zip(&m2.scene.points) {
            assert_eq!(n1, n2);
            assert_eq!(p1.x.coords(), p2.x.coords(), "{name}: point {n1} x");
            assert_eq!(p1.y.coords(), p2.y.coords(), "{name}: point {n1} y");
        }
        let ms1 = evaluate_measures(&m1, 4).unwrap();
        let ms2 = evaluate_measures(&m2, 4).unwrap();
        let json1 = build_report(name, &m1, &ms1).to_json();
        let json2 = build_report(name, &m2, &ms2).to_json();
        assert_eq!(json1, json2, "{name}: JSON differs");
        let svg1 = render_scene(&m1, &ms1, 600).unwrap();
        let svg2 = render_scene(&m2, &ms2, 600).unwrap();
        assert_eq!(svg1, svg2, "{name}: SVG differs");
    }
    println!("criterion 10 determinism: pass");
}

#[test]
fn exit_code_matrix() {
    let (_, _, code) = euclid(&["run", &corpus_path("smoke_equilateral.euclid")]);
    assert_eq!(code, 0);

    let dir = std::env::temp_dir();
    let failing = dir.join("euclid_failing.euclid");
    std::fs::write(&failing, "point A = (0, 0)\npoint B = (1, 0)\nassert_zero(dist2(A, B) - 2)\n")
        .unwrap();
    let (_, _, code) = euclid(&["run", failing.to_str().unwrap()]);
    assert_eq!(code, 1);

    let malformed = dir.join("euclid_malformed.euclid");
    std::fs::write(&malformed, "point A = (0 0)\n").unwrap();
    let (_, stderr, code) = euclid(&["run", malformed.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains(":1:14:"), "diagnostic position missing: {stderr}");
}

#[test]
fn measurement_kinds_are_labeled() {
    let model = pentagram_model();
    let ms: Vec<Measurement> = evaluate_measures(&model, 2).unwrap();
    let arc = ms.iter().find(|m| m.name == "arcBC").unwrap();
    assert_eq!(arc.kind.unit(), "deg");
    let a = ms.iter().find(|m| m.name == "a").unwrap();
    assert_eq!(a.kind.unit(), "");
    let _: Interval = arc.value.clone();
}
