//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;

use killtens::exactnum::{Poly, RatFunc};
use killtens::geomlab::{
    check_cpn_curvature, check_killing_connection_flat_on_sphere, check_ktractor_curvature,
    check_mu_identity, check_tractor_parallelism, run_battery, Space,
};
use killtens::repdim::{
    cpn_killing_dim, cpn_killing_dim_closed, sphere_killing_dim, TensorSpaceSpec,
};
use killtens::series::{conjectured_h, g_numerator, h_numerator, papoulis, verify_poincare};
use killtens::tensorlab::{
    generation_rank_with, oracle_cpn_dim_with, oracle_cpn_space_with, oracle_sphere_dim_with,
    OracleBudget,
};

const SEED: u64 = 0x5eed;

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn bad(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn spec(n: usize, k: usize) -> TensorSpaceSpec {
    TensorSpaceSpec::new(n, k).unwrap()
}

fn ints(p: &Poly) -> Vec<i64> {
    p.integer_coeffs()
        .expect("integer coefficients")
        .iter()
        .map(|c| i64::try_from(c).unwrap())
        .collect()
}

/// Published table, rows k = 1..5, columns n = 1..7.
const CP_TABLE: [[u64; 7]; 5] = [
    [3, 8, 15, 24, 35, 48, 63],
    [6, 36, 120, 300, 630, 1176, 2016],
    [10, 119, 664, 2500, 7370, 18375, 40544],
    [15, 322, 2850, 15600, 62965, 205800, 576072],
    [21, 756, 10142, 78252, 422919, 1782032, 6246072],
];

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let mut wrong = Vec::new();
    for (ki, row) in CP_TABLE.iter().enumerate() {
        for (ni, &want) in row.iter().enumerate() {
            let got = cpn_killing_dim(spec(ni + 1, ki + 1)).unwrap();
            if got != BigInt::from(want) {
                wrong.push(format!("(n={}, k={}) {got} != {want}", ni + 1, ki + 1));
            }
        }
    }
    let t = start.elapsed();
    if !wrong.is_empty() {
        bad(wrong.join("; "))
    } else if t >= Duration::from_secs(1) {
        bad(format!("35 entries correct but took {t:?}"))
    } else {
        ok(format!("35/35 entries in {t:?}"))
    }
}

fn closed_forms() -> Outcome {
    for n in 1..=30 {
        for k in 1..=4 {
            let a = cpn_killing_dim(spec(n, k)).unwrap();
            let b = cpn_killing_dim_closed(k, n).unwrap();
            if a != b {
                return bad(format!("n={n} k={k}: sum {a} vs polynomial {b}"));
            }
        }
    }
    ok("n=1..30, k=1..4")
}

fn sphere_formulas() -> Outcome {
    for n in 1..=30u64 {
        let b = BigInt::from(n);
        let rank1 = &b * (&b + 1) / 2;
        let (b1, b2): (BigInt, BigInt) = (&b + 1, &b + 2);
        let rank3 = &b * b1.pow(2) * b2.pow(2) * (&b + 3) / 144;
        let n = n as usize;
        if sphere_killing_dim(spec(n, 1)).unwrap() != rank1 {
            return bad(format!("rank 1 at n={n}"));
        }
        if sphere_killing_dim(spec(n, 3)).unwrap() != rank3 {
            return bad(format!("rank 3 at n={n}"));
        }
    }
    ok("ranks 1 and 3, n=1..30")
}

fn poincare() -> Outcome {
    let start = Instant::now();
    for n in 1..=5 {
        match verify_poincare(n, 500) {
            Ok(r) if r.success() => {}
            Ok(r) => return bad(format!("n={n}: first mismatch at {:?}", r.first_mismatch)),
            Err(e) => return bad(format!("n={n}: {e}")),
        }
    }
    let t = start.elapsed();
    let rows: [&[i64]; 5] = [
        &[1, 1, 1],
        &[1, 4, 10, 4, 1],
        &[1, 9, 45, 65, 45, 9, 1],
        &[1, 16, 136, 416, 626, 416, 136, 16, 1],
        &[1, 25, 325, 1700, 4550, 6202, 4550, 1700, 325, 25, 1],
    ];
    for (i, row) in rows.iter().enumerate() {
        let n = i + 2;
        let p = h_numerator(n).unwrap();
        if ints(&p) != *row || !p.is_palindromic() {
            return bad(format!("numerator of H_{n} is {}", p.display_in("t")));
        }
    }
    if t >= Duration::from_secs(60) {
        return bad(format!("correct but took {t:?}"));
    }
    ok(format!(
        "500 terms for n=1..5 in {t:?}; pyramid rows n=2..6 palindromic"
    ))
}

fn catalan() -> Outcome {
    let rows: [&[i64]; 6] = [
        &[1],
        &[1, 1],
        &[1, 3, 1],
        &[1, 6, 6, 1],
        &[1, 10, 20, 10, 1],
        &[1, 15, 50, 50, 15, 1],
    ];
    for (i, row) in rows.iter().enumerate() {
        let n = i + 2;
        let p = g_numerator(n).unwrap();
        if ints(&p) != *row {
            return bad(format!("numerator of G_{n} is {}", p.display_in("t")));
        }
    }
    ok("n=2..7")
}

fn papoulis_polys() -> Outcome {
    let want: [&[i64]; 3] = [&[0, 1], &[0, 1, -3, 3], &[0, 1, -8, 28, -40, 20]];
    for (k, w) in want.iter().enumerate() {
        if papoulis(k) != Poly::from_i64(w) {
            return bad(format!("P_{} = {}", 2 * k + 1, papoulis(k).display_in("w")));
        }
    }
    let h2 = conjectured_h(2).unwrap();
    let expected =
        RatFunc::new(Poly::from_i64(&[1, 1, 1]), Poly::from_i64(&[1, -1]).pow(7)).unwrap();
    if h2 != expected {
        return bad(format!(
            "H_2 = ({}) / ({})",
            h2.num().display_in("t"),
            h2.den().display_in("t")
        ));
    }
    ok("P_1, P_3, P_5 and H_2 = (1+t+t^2)/(1-t)^7")
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let budget = OracleBudget::default();
    let mut seen = Vec::new();
    for ((n, k), want) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)]
        .into_iter()
        .zip([3, 6, 10, 8, 36, 15])
    {
        let got = oracle_cpn_dim_with(n, k, &budget).unwrap();
        let formula = cpn_killing_dim(spec(n, k)).unwrap();
        if got != want || BigInt::from(got) != formula {
            return bad(format!(
                "CP_{n} rank {k}: oracle {got}, formula {formula}, expected {want}"
            ));
        }
        seen.push(got.to_string());
    }
    let mut sphere_cases = 0;
    for k in 1.. {
        if 2u64.pow(2 * k as u32) > 10_000 {
            break;
        }
        for n in 1.. {
            if ((n + 1) as u64).pow(2 * k as u32) > 10_000 {
                break;
            }
            let got = oracle_sphere_dim_with(n, k, &budget).unwrap();
            let formula = sphere_killing_dim(spec(n, k)).unwrap();
            if BigInt::from(got) != formula {
                return bad(format!("S^{n} rank {k}: oracle {got}, formula {formula}"));
            }
            sphere_cases += 1;
        }
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(600) {
        return bad(format!("correct but took {t:?}"));
    }
    ok(format!(
        "CP dims {} and {sphere_cases} sphere instances in {t:?}",
        seen.join(",")
    ))
}

fn generation() -> Outcome {
    let budget = OracleBudget::default();
    let mut parts = Vec::new();
    for (n, k, target) in [(1, 2, 6), (1, 3, 10), (2, 2, 36)] {
        let r = generation_rank_with(n, k, &budget).unwrap();
        if r.rank != target || r.target_dim != target || !r.surjective() {
            return bad(format!("(n={n}, k={k}): {r:?}"));
        }
        parts.push(format!("({n},{k}) {}/{}", r.rank, r.target_dim));
    }
    match generation_rank_with(2, 3, &budget) {
        Ok(r) => {
            if r.rank != 119 || r.target_dim != 119 || r.kernel_dim() != 1 {
                return bad(format!("(2,3): {r:?}"));
            }
            parts.push(format!(
                "(2,3) {}/{} kernel {}",
                r.rank,
                r.target_dim,
                r.kernel_dim()
            ));
        }
        Err(e) => return bad(format!("(2,3): {e}")),
    }
    ok(parts.join(", "))
}

fn geometry() -> Outcome {
    let start = Instant::now();
    let tol = 1e-8;
    let mut worst: f64 = 0.0;
    let mut runs = Vec::new();
    for n in [1, 2] {
        runs.push(check_cpn_curvature(n, 10, tol, SEED).unwrap());
        runs.push(check_ktractor_curvature(n, 10, tol, SEED).unwrap());
        runs.push(check_tractor_parallelism(n, 10, tol, SEED).unwrap());
    }
    for m in [2, 3] {
        runs.push(check_killing_connection_flat_on_sphere(m, 10, tol, SEED).unwrap());
    }
    for r in &runs {
        if !r.passed {
            return bad(format!("{} deviation {:e}", r.name, r.max_deviation));
        }
        worst = worst.max(r.max_deviation);
    }
    for n in 1..=4 {
        if !check_mu_identity(n).unwrap() {
            return bad(format!("mu identity fails for n={n}"));
        }
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(60) {
        return bad(format!("correct but took {t:?}"));
    }
    ok(format!(
        "{} numeric checks, worst deviation {worst:.2e}; mu identity n=1..4; {t:?}",
        runs.len()
    ))
}

fn determinism() -> Outcome {
    let snapshot = || {
        let mut s = String::new();
        for space in [Space::Cpn { n: 2 }, Space::Sphere { m: 3 }] {
            for o in run_battery(space, 3, 1e-8, SEED).unwrap() {
                s += &format!(
                    "{} {:016x} {}\n",
                    o.name,
                    o.max_deviation.to_bits(),
                    o.passed
                );
            }
        }
        s += &oracle_cpn_space_with(1, 2, &OracleBudget::default())
            .unwrap()
            .basis
            .to_sparse_text();
        s += &verify_poincare(3, 60).unwrap().coefficients.join(",");
        s
    };
    let (a, b) = (snapshot(), snapshot());
    if a == b {
        ok(format!("{} bytes identical across runs", a.len()))
    } else {
        bad("outputs differ between runs")
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("table reproduction", table_reproduction),
        ("closed-form corollaries", closed_forms),
        ("sphere formulas", sphere_formulas),
        ("Poincare identity", poincare),
        ("Catalan triangle", catalan),
        ("Papoulis polynomials", papoulis_polys),
        ("oracle equivalence", oracle_equivalence),
        ("generation surjectivity", generation),
        ("geometry battery", geometry),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {name}: {} [{:.2?}]",
            i + 1,
            outcome.detail,
            start.elapsed()
        );
        failed += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
