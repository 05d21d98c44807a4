//! Acceptance criteria, one test per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the verdict lines.

use std::collections::BTreeSet;
use std::process::Command;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use rascal::patterns;
use rascal::rule;
use rascal::sequences;
use rascal::triangle::{self, Generator};
use rascal::{BigRule, BigTriangle, Cell, RelativeOffset};

fn verdict(id: u32, title: &str, ok: bool, detail: &str) {
    println!(
        "[{}] AC{id:02} {title}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "AC{id:02} {title}: {detail}");
}

fn ints(t: &BigTriangle, n: usize) -> Vec<i64> {
    t.row(n)
        .unwrap()
        .iter()
        .map(|v| i64::try_from(v).unwrap())
        .collect()
}

/// Independent oracle: k(n-k)+1 computed directly in BigInt.
fn oracle_rascal(n: usize, k: usize) -> BigInt {
    BigInt::from(k) * BigInt::from(n - k) + 1
}

/// Independent oracle: n! / (k! (n-k)!).
fn oracle_binomial(n: usize, k: usize) -> BigInt {
    let fact = |m: usize| (1..=m).fold(BigInt::one(), |a, i| a * BigInt::from(i));
    fact(n) / (fact(k) * fact(n - k))
}

fn c(row: usize, col: usize) -> Cell {
    Cell::new(row, col).unwrap()
}

#[test]
fn ac01_row_reproduction() {
    let add = triangle::build_rascal_additive::<BigInt>(5).unwrap();
    let dia = triangle::build_rascal_diamond::<BigInt>(5).unwrap();
    let pas = triangle::build_pascal::<BigInt>(5).unwrap();
    let ok = ints(&add, 4) == [1, 4, 5, 4, 1]
        && ints(&dia, 4) == [1, 4, 5, 4, 1]
        && ints(&pas, 4) == [1, 4, 6, 4, 1];
    verdict(
        1,
        "row reproduction",
        ok,
        &format!(
            "additive {:?}, diamond {:?}, pascal {:?}",
            ints(&add, 4),
            ints(&dia, 4),
            ints(&pas, 4)
        ),
    );
}

#[test]
fn ac02_generator_equivalence() {
    let rows = 201;
    let built: Vec<BigTriangle> = [
        Generator::RascalDiamond,
        Generator::RascalAdditive,
        Generator::RascalDiagonal,
        Generator::RascalClosedForm,
    ]
    .iter()
    .map(|g| g.build(rows).unwrap())
    .collect();
    let mut mismatches = 0usize;
    let mut cells = 0usize;
    for n in 0..rows {
        for k in 0..=n {
            cells += 1;
            let want = oracle_rascal(n, k);
            mismatches += built
                .iter()
                .filter(|t| t.at(n, k).unwrap() != &want)
                .count();
        }
    }
    verdict(
        2,
        "generator equivalence rows 0..200",
        mismatches == 0,
        &format!("{cells} cells x 4 constructions, {mismatches} mismatches"),
    );
}

#[test]
fn ac03_integrality() {
    // Recompute every division on the oracle values, independent of the
    // generator, and also require the generator itself to succeed.
    let mut nonzero = Vec::new();
    let mut checked = 0usize;
    for n in 2..=200 {
        for k in 1..n {
            let east = oracle_rascal(n - 1, k);
            let west = oracle_rascal(n - 1, k - 1);
            let north = oracle_rascal(n - 2, k - 1);
            checked += 1;
            if !((east * west + 1u32) % north).is_zero() {
                nonzero.push(c(n, k));
            }
        }
    }
    let built = triangle::build_rascal_diamond::<BigInt>(201);
    verdict(
        3,
        "diamond-formula integrality rows 2..200",
        nonzero.is_empty() && built.is_ok(),
        &format!(
            "{checked} interior divisions, {} nonzero remainders",
            nonzero.len()
        ),
    );
}

#[test]
fn ac04_tmeg() {
    let t = triangle::build_rascal_closed_form::<BigInt>(201).unwrap();
    let at_83 = patterns::tmeg_predict(&t, c(8, 3)).unwrap();
    let at_81 = patterns::tmeg_predict(&t, c(8, 1)).unwrap();
    let parts_83 = (
        t.at(6, 2).unwrap().clone(),
        t.at(6, 0).unwrap().clone(),
        t.at(6, 1).unwrap().clone(),
    );
    let examples = at_83 == BigInt::from(16)
        && parts_83 == (BigInt::from(9), BigInt::from(1), BigInt::from(6))
        && at_81 == BigInt::from(8);
    let sweep = patterns::tmeg_verify(&t).unwrap();
    let pascal = patterns::tmeg_verify(&triangle::build_pascal::<BigInt>(20).unwrap()).unwrap();
    let negative = !pascal.holds() && pascal.counterexamples[0].cell == c(4, 2);
    verdict(
        4,
        "T-Meg rule",
        examples && sweep.holds() && negative,
        &format!(
            "(8,3)={at_83}, (8,1)={at_81}; {} cells, {} violations; pascal first counterexample {}",
            sweep.cells_checked,
            sweep.counterexamples.len(),
            pascal.counterexamples[0]
        ),
    );
}

#[test]
fn ac05_ashley() {
    let t = triangle::build_rascal_closed_form::<BigInt>(201).unwrap();
    let at_93 = patterns::ashley_predict(&t, c(9, 3)).unwrap();
    let inputs = [
        t.at(8, 2).unwrap(),
        t.at(8, 3).unwrap(),
        t.at(6, 2).unwrap(),
    ]
    .map(|v| i64::try_from(v).unwrap());
    let example = at_93 == BigInt::from(19) && inputs == [13, 16, 9];
    let sweep = patterns::ashley_verify(&t).unwrap();
    verdict(
        5,
        "Ashley's rule",
        example && sweep.holds(),
        &format!(
            "(9,3)={at_93} from west/east/nw {inputs:?} and factor 1; {} cells, {} violations",
            sweep.cells_checked,
            sweep.counterexamples.len()
        ),
    );
}

#[test]
fn ac06_odd_diamonds() {
    let t = triangle::build_rascal_closed_form::<BigInt>(60).unwrap();
    let one = patterns::odd_diamond_check(&t, c(9, 4), 1).unwrap();
    let two = patterns::odd_diamond_check(&t, c(9, 4), 2).unwrap();
    let examples = one.ring_sum == BigInt::from(168)
        && one.expected_sum == BigInt::from(8 * 21)
        && two.ring_sum == BigInt::from(336)
        && two.expected_sum == BigInt::from(16 * 21);
    let sweep = patterns::odd_diamond_sweep(&t).unwrap();
    verdict(
        6,
        "odd diamond rings",
        examples && sweep.holds() && sweep.cells_checked > 0,
        &format!(
            "m=1 sum {}, m=2 sum {}; {} rings within 60 rows, {} failures",
            one.ring_sum,
            two.ring_sum,
            sweep.cells_checked,
            sweep.counterexamples.len()
        ),
    );
}

#[test]
fn ac07_even_diamonds() {
    let t = triangle::build_rascal_closed_form::<BigInt>(60).unwrap();
    let inner: BigInt = patterns::ring_cells(&t, rascal::RingSpec::even(c(9, 3), 1))
        .unwrap()
        .iter()
        .map(|&cell| t.entry(cell).unwrap().clone())
        .sum();
    let m2 = patterns::even_diamond_check(&t, c(9, 3), 2).unwrap();
    let m3 = patterns::even_diamond_check(&t, c(9, 3), 3).unwrap();
    let examples = inner == BigInt::from(95)
        && m2.ring_sum == BigInt::from(285)
        && m2.expected_sum == BigInt::from(3 * 95)
        && m3.ring_sum == BigInt::from(475)
        && m3.expected_sum == BigInt::from(5 * 95);
    // equal averages: 95/4 = 285/12 = 475/20 = 23.75, cross-multiplied
    let averages = BigInt::from(285) * 4 == BigInt::from(95) * 12
        && BigInt::from(475) * 4 == BigInt::from(95) * 20
        && 95 * 100 == 2375 * 4;
    let sweep = patterns::even_diamond_sweep(&t).unwrap();
    verdict(
        7,
        "even diamond rings",
        examples && averages && sweep.holds() && sweep.cells_checked > 0,
        &format!(
            "inner {inner}, m=2 {}, m=3 {}; {} rings within 60 rows, {} failures",
            m2.ring_sum,
            m3.ring_sum,
            sweep.cells_checked,
            sweep.counterexamples.len()
        ),
    );
}

#[test]
fn ac08_rule_inference() {
    let e = RelativeOffset::EAST;
    let w = RelativeOffset::WEST;
    let n = RelativeOffset::NORTH;
    let r10 = triangle::build_rascal_closed_form::<BigInt>(10).unwrap();
    let p8 = triangle::build_pascal::<BigInt>(8).unwrap();

    let rascal_rule = rule::infer_affine_rule(&r10, &[e, w, n], true).unwrap();
    let pascal_rule = rule::infer_affine_rule(&p8, &[e, w], true).unwrap();
    let none = rule::infer_affine_rule(&r10, &[e, w], true).unwrap();

    let want_rascal = BigRule::from_integers(&[(e, 1), (w, 1), (n, -1)], 1).unwrap();
    let want_pascal = BigRule::from_integers(&[(e, 1), (w, 1)], 0).unwrap();
    let ok = rascal_rule.as_ref() == Some(&want_rascal)
        && pascal_rule.as_ref() == Some(&want_pascal)
        && none.is_none();
    let show = |r: &Option<BigRule>| r.as_ref().map_or("no rule".to_string(), |r| r.to_string());
    verdict(
        8,
        "rule inference",
        ok,
        &format!(
            "rascal {{E,W,N}}: {}; pascal {{E,W}}: {}; rascal {{E,W}}: {}",
            show(&rascal_rule),
            show(&pascal_rule),
            show(&none)
        ),
    );
}

#[test]
fn ac09_three_a_five_b() {
    let limit = 1000u64;
    let got = sequences::representable_values(3, 5, limit);
    let mut oracle = BTreeSet::new();
    for a in 0..=limit / 3 {
        for b in 0..=limit / 5 {
            let v = 3 * a + 5 * b;
            if v <= limit {
                oracle.insert(v);
            }
        }
    }
    let oracle_complement: Vec<u64> = (0..=limit).filter(|v| !oracle.contains(v)).collect();
    let ok = got.complement == [1, 2, 4, 7]
        && got.complement == oracle_complement
        && got.values == oracle;
    verdict(
        9,
        "3a+5b complement up to 1000",
        ok,
        &format!(
            "complement {:?}, oracle {:?}",
            got.complement, oracle_complement
        ),
    );
}

#[test]
fn ac10_hockey_stick() {
    let t = triangle::build_pascal::<BigInt>(25).unwrap();
    let examples = patterns::hockey_stick_check(&t, 2, 3).unwrap()
        && patterns::hockey_stick_check(&t, 3, 4).unwrap()
        && t.at(5, 2).unwrap() == &BigInt::from(10)
        && t.at(7, 3).unwrap() == &BigInt::from(35);
    let mut sticks = 0usize;
    let mut bad = 0usize;
    for start in 0..25 {
        for length in 1..25 - start {
            sticks += 1;
            let oracle_sum: BigInt = (0..length).map(|i| oracle_binomial(start + i, i)).sum();
            let ok = oracle_sum == oracle_binomial(start + length, length - 1)
                && patterns::hockey_stick_check(&t, start, length).unwrap();
            bad += usize::from(!ok);
        }
    }
    let sweep = patterns::hockey_stick_sweep(&t).unwrap();
    verdict(
        10,
        "hockey stick",
        examples && bad == 0 && sweep.holds() && sweep.cells_checked == sticks,
        &format!("{sticks} sticks within 25 rows, {bad} failures"),
    );
}

#[test]
fn ac11_cli_round_trip() {
    let bin = env!("CARGO_BIN_EXE_rascal");
    let run = |args: &[&str]| Command::new(bin).args(args).output().expect("binary runs");
    let dir = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();

    let kinds: [(&str, &[&str]); 6] = [
        ("pascal", &["generate", "pascal", "100"]),
        ("rascal-diamond", &["generate", "rascal-diamond", "100"]),
        ("rascal-additive", &["generate", "rascal-additive", "100"]),
        ("rascal-diagonal", &["generate", "rascal-diagonal", "100"]),
        ("rascal", &["generate", "rascal", "100"]),
        ("rascal-additive", &["generate", "rule", "E+W-N+1", "100"]),
    ];
    for (i, (kind, gen)) in kinds.iter().enumerate() {
        let json = run(gen);
        let json_path = dir.path().join(format!("t{i}.json"));
        std::fs::write(&json_path, &json.stdout).unwrap();
        let csv = run(&["export", json_path.to_str().unwrap(), "--format", "csv"]);
        let csv_path = dir.path().join(format!("t{i}.csv"));
        std::fs::write(&csv_path, &csv.stdout).unwrap();
        let back = run(&["export", csv_path.to_str().unwrap(), "--format", "json"]);
        let back_path = dir.path().join(format!("t{i}-back.json"));
        std::fs::write(&back_path, &back.stdout).unwrap();
        for path in [&json_path, &csv_path, &back_path] {
            let v = run(&[
                "verify",
                "equivalence",
                path.to_str().unwrap(),
                "--against",
                kind,
            ]);
            let out = String::from_utf8_lossy(&v.stdout);
            if v.status.code() != Some(0) || !out.starts_with("PASS") {
                failures.push(format!("{kind} via {}", path.display()));
            }
        }
    }

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let tampered = dir.path().join("tampered.csv");
    std::fs::write(&tampered, "1\n1,1\n1,2,1\n1,3,3,1\n1,4,6,4,1\n").unwrap();
    let negatives: Vec<(Vec<&str>, i32)> = vec![
        (vec!["verify", "tmeg", "--pascal", "20"], 1),
        (vec!["verify", "ashley", "--pascal", "20"], 1),
        (vec!["verify", "odd-diamond", "--pascal", "20", "--all"], 1),
        (vec!["verify", "even-diamond", "--pascal", "20", "--all"], 1),
        (vec!["verify", "rule", "--rascal", "6", "--rule", "E+W"], 1),
        (
            vec![
                "verify",
                "equivalence",
                tampered.to_str().unwrap(),
                "--against",
                "rascal",
            ],
            1,
        ),
        (vec!["render", empty.to_str().unwrap()], 2),
        (vec!["verify", "tmeg", empty.to_str().unwrap()], 2),
        (vec!["generate", "triangle", "5"], 2),
        (vec!["verify"], 2),
        (vec!["generate", "rule", "1/2*E+W", "5"], 1),
        (
            vec!["mine", "--rascal", "10", "--template", "E,W", "--constant"],
            0,
        ),
        (vec!["verify", "tmeg", "--rascal", "200"], 0),
        (vec!["verify", "odd-diamond", "--rascal", "60", "--all"], 0),
    ];
    for (args, want) in &negatives {
        let got = run(args).status.code();
        if got != Some(*want) {
            failures.push(format!("{args:?}: exit {got:?}, want {want}"));
        }
    }
    verdict(
        11,
        "CLI round trip and exit codes",
        failures.is_empty(),
        &format!(
            "{} round trips at 100 rows, {} exit-code runs; failures: {failures:?}",
            kinds.len() * 3,
            negatives.len()
        ),
    );
}
