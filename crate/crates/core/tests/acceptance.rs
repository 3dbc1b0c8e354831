//! Acceptance criteria, one test each. Every test prints a single
//! `[criterion N] PASS|FAIL ...` line before asserting.

use std::time::{Duration, Instant};

use genpat::asympt::{
    consecutive_ratios, estimate_growth, fekete_check, gamma2, rho1, rho2, GrowthMethod,
    GAMMA2_REFERENCE, RHO1_REFERENCE, RHO2_REFERENCE,
};
use genpat::cli::{figure, float_bounds, BoundName, Session, FIGURE3_PATTERNS};
use genpat::enumerate::{
    check_submultiplicative, count_consecutive_dp, count_sequence, ltr_minima, Limits,
};
use genpat::expoly::{b_closed, b_recurrence, c_closed, c_recurrence, ExpPoly};
use genpat::formulas::{
    a123_egf, a132_egf, a_consecutive_egf, a_one_dash_sigma, bounds_12_34, bounds_1_23_4,
    bounds_1_sigma_k, lower_1_23_4, lower_1_23_4_alternative, shared_radius_deviation,
    VerdictStatus,
};
use genpat::pattern::{avoids, find_occurrences, reduce};
use genpat::series::{nth_root_of, rat, EgfSeries};
use genpat::{GeneralizedPattern, Permutation};
use num_bigint::BigUint;
use num_rational::BigRational;

const RHO1_TOL: f64 = 1e-7;
const RHO2_TOL: f64 = 1e-6;
const GAMMA2_TOL: f64 = 1e-5;
const GROWTH_TOL: f64 = 1e-3;
const SHARED_RADIUS_TOL: f64 = 0.05;
const FLOAT_EXACT_TOL: f64 = 1e-9;

fn verdict(criterion: u32, pass: bool, detail: &str) {
    println!(
        "[criterion {criterion}] {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion}: {detail}");
}

fn within_budget(criterion: u32, start: Instant, budget: Duration) -> String {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} took {elapsed:?}, budget {budget:?}"
    );
    format!("({:.2}s, budget {}s)", elapsed.as_secs_f64(), budget.as_secs())
}

fn pat(s: &str) -> GeneralizedPattern {
    s.parse().unwrap()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Bell numbers from the Bell triangle.
fn bell_triangle(n: usize) -> Vec<BigUint> {
    let mut out = vec![big(1)];
    let mut row = vec![big(1)];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        out.push(next[0].clone());
        row = next;
    }
    out.truncate(n + 1);
    out
}

/// Catalan numbers from `C_{n+1} = C_n · 2(2n+1)/(n+2)`.
fn catalan_ratio(n: usize) -> Vec<BigUint> {
    let mut out = vec![big(1)];
    for k in 0..n {
        let next = out[k].clone() * big(2 * (2 * k as u64 + 1)) / big(k as u64 + 2);
        out.push(next);
    }
    out
}

fn counts_as_biguint(s: &EgfSeries) -> Vec<BigUint> {
    s.integer_counts()
        .expect("integer counts")
        .into_iter()
        .map(|c| c.to_biguint().expect("nonnegative"))
        .collect()
}

#[test]
fn criterion_01_identities() {
    let start = Instant::now();
    let bell = bell_triangle(10);
    let catalan = catalan_ratio(10);
    let bell_patterns = ["1-23", "3-21", "32-1", "12-3", "1-32", "23-1", "3-12", "21-3"];
    let catalan_patterns = ["2-13", "2-31", "31-2", "13-2"];
    let mut bad = Vec::new();
    for p in bell_patterns {
        if count_sequence(&pat(p), 10).unwrap().counts != bell {
            bad.push(p);
        }
    }
    for p in catalan_patterns {
        if count_sequence(&pat(p), 10).unwrap().counts != catalan {
            bad.push(p);
        }
    }
    let time = within_budget(1, start, Duration::from_secs(60));
    verdict(
        1,
        bad.is_empty(),
        &format!("8 Bell + 4 Catalan patterns exact for 0<=n<=10; mismatches {bad:?} {time}"),
    );
}

#[test]
fn criterion_02_length_three_consecutive() {
    let brute_123 = count_sequence(&pat("123"), 10).unwrap().counts;
    let brute_132 = count_sequence(&pat("132"), 10).unwrap().counts;
    let dp_123 = count_consecutive_dp(&pat("123"), 20).unwrap().counts;
    let dp_132 = count_consecutive_dp(&pat("132"), 20).unwrap().counts;
    let dp_match = dp_123[..=10] == brute_123[..] && dp_132[..=10] == brute_132[..];
    let strict = (4..=14).all(|n| dp_123[n] > dp_132[n]);
    let egf_match =
        counts_as_biguint(&a123_egf(20)) == dp_123 && counts_as_biguint(&a132_egf(20)) == dp_132;
    verdict(
        2,
        dp_match && strict && egf_match,
        &format!(
            "DP = brute force n<=10: {dp_match}; alpha(123) > alpha(132) for 4<=n<=14: {strict}; \
             EGF counts = DP to order 20: {egf_match}"
        ),
    );
}

#[test]
fn criterion_03_constants() {
    let start = Instant::now();
    let r1 = rho1();
    let r2 = rho2(1e-12).unwrap();
    let g2 = gamma2();
    let s123 = count_consecutive_dp(&pat("123"), 60).unwrap();
    let s132 = count_consecutive_dp(&pat("132"), 60).unwrap();
    let e123 = estimate_growth(&s123, GrowthMethod::ConsecutiveRatio, Some(r1))
        .unwrap()
        .growth_estimate;
    let e132 = estimate_growth(&s132, GrowthMethod::ConsecutiveRatio, Some(r2))
        .unwrap()
        .growth_estimate;
    let pass = (r1 - RHO1_REFERENCE).abs() < RHO1_TOL
        && (r2 - RHO2_REFERENCE).abs() < RHO2_TOL
        && (g2 - GAMMA2_REFERENCE).abs() < GAMMA2_TOL
        && (e123 - r1).abs() < GROWTH_TOL
        && (e132 - r2).abs() < GROWTH_TOL;
    let time = within_budget(3, start, Duration::from_secs(10));
    verdict(
        3,
        pass,
        &format!(
            "rho1={r1:.9} rho2={r2:.9} gamma2={g2:.8} growth(123)@60={e123:.7} \
             growth(132)@60={e132:.7} {time}"
        ),
    );
}

#[test]
fn criterion_04_one_dash_sigma() {
    let start = Instant::now();
    let bell = counts_as_biguint(&a_one_dash_sigma(&EgfSeries::exp_z(10)).unwrap());
    let bell_ok = bell == count_sequence(&pat("1-23"), 10).unwrap().counts;
    let a132 = counts_as_biguint(&a_one_dash_sigma(&a132_egf(9)).unwrap());
    let ok_132 = a132 == count_sequence(&pat("1-243"), 9).unwrap().counts;
    let a123 = counts_as_biguint(&a_one_dash_sigma(&a123_egf(9)).unwrap());
    let ok_123 = a123 == count_sequence(&pat("1-234"), 9).unwrap().counts;
    let time = within_budget(4, start, Duration::from_secs(300));
    verdict(
        4,
        bell_ok && ok_132 && ok_123,
        &format!("exp(int e^z)=1-23: {bell_ok}; 1-243: {ok_132}; 1-234: {ok_123} {time}"),
    );
}

#[test]
fn criterion_05_b_and_c_families() {
    let start = Instant::now();
    let families = (0..=8).all(|k| b_recurrence(k) == b_closed(k) && c_recurrence(k) == c_closed(k));
    let int = |n: i64| rat(n, 1);
    // (z-2)e^z + z + 2
    let b1 = ExpPoly::term(1, vec![int(-2), int(1)]).add(&ExpPoly::term(0, vec![int(2), int(1)]));
    // (z-3)e^{2z} + 4z e^z + z + 3
    let b2 = ExpPoly::term(2, vec![int(-3), int(1)])
        .add(&ExpPoly::monomial(int(4), 1, 1))
        .add(&ExpPoly::term(0, vec![int(3), int(1)]));
    // e^{2z}/2 + 2(1-z)e^z - z - 5/2
    let c1 = ExpPoly::monomial(rat(1, 2), 0, 2)
        .add(&ExpPoly::term(1, vec![int(2), int(-2)]))
        .add(&ExpPoly::term(0, vec![rat(-5, 2), int(-1)]));
    let instances = b_recurrence(1) == b1
        && b_closed(1) == b1
        && b_recurrence(2) == b2
        && b_closed(2) == b2
        && c_recurrence(1) == c1
        && c_closed(1) == c1;
    let time = within_budget(5, start, Duration::from_secs(10));
    verdict(
        5,
        families && instances,
        &format!("recurrence = closed form for k<=8: {families}; b_1, b_2, c_1 verbatim: {instances} {time}"),
    );
}

#[test]
fn criterion_06_sandwich_12_34() {
    let start = Instant::now();
    let report = bounds_12_34(60, 10, Limits::default()).unwrap();
    let strict = report.strict_on(1..=10);
    let n0_ok = report.verdicts[0].status != VerdictStatus::Violated;
    let bell = bell_triangle(60);
    let lower = report.lower.counts();
    let above_bell = (30..=60).all(|n| lower[n] > BigRational::from_integer(bell[n].clone().into()));
    let time = within_budget(6, start, Duration::from_secs(600));
    verdict(
        6,
        strict && n0_ok && above_bell,
        &format!(
            "strict for 1<=n<=10: {strict}; n=0 {:?}; lower > Bell for 30<=n<=60: {above_bell} {time}",
            report.verdicts[0].status
        ),
    );
}

#[test]
fn criterion_07_sandwich_1_23_4() {
    let report = bounds_1_23_4(12, 10, Limits::default()).unwrap();
    let strict = report.strict_on(2..=10);
    let forms = lower_1_23_4(40) == lower_1_23_4_alternative(40);
    let (_, upper) = float_bounds(BoundName::OneTwentyThreeFour, 90);
    let decreasing = (20..90).all(|n| upper.nth_root(n + 1) < upper.nth_root(n));
    verdict(
        7,
        strict && forms && decreasing,
        &format!(
            "strict for 2<=n<=10: {strict}; lower forms equal to order 40: {forms}; \
             float upper root decreasing on 20..=90: {decreasing} (root_20={:.6}, root_90={:.6})",
            upper.nth_root(20),
            upper.nth_root(90)
        ),
    );
}

#[test]
fn criterion_08_generic_one_sigma_k() {
    let (lower, _) = bounds_1_sigma_k(&EgfSeries::exp_z(40)).unwrap();
    let reduces = lower == lower_1_23_4(40);
    let mut devs = Vec::new();
    let mut supplementary = Vec::new();
    for s in ["123", "132"] {
        let a = a_consecutive_egf(&pat(s), 60).unwrap();
        devs.push((s, shared_radius_deviation(&a, 60).unwrap()));
        let one_dash = a_one_dash_sigma(&a).unwrap();
        let r1 = *consecutive_ratios(&counts_as_biguint(&one_dash)).last().unwrap();
        let r = *consecutive_ratios(&counts_as_biguint(&a)).last().unwrap();
        supplementary.push(format!("{s}: {:.4}", (r1 / r - 1.0).abs()));
    }
    let radius_ok = devs.iter().all(|(_, d)| *d < SHARED_RADIUS_TOL);
    verdict(
        8,
        reduces && radius_ok,
        &format!(
            "generic lower(e^z) = 1-23-4 lower to order 40: {reduces}; \
             |root_60(1-s)/root_60(s) - 1| < {SHARED_RADIUS_TOL}: {} \
             [consecutive-ratio quotients {}]",
            devs.iter()
                .map(|(s, d)| format!("{s}: {d:.4}"))
                .collect::<Vec<_>>()
                .join(", "),
            supplementary.join(", ")
        ),
    );
}

/// Independent occurrence test: every index subset.
fn naive_contains(perm: &Permutation, p: &GeneralizedPattern) -> bool {
    let n = perm.len();
    let k = p.len();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return false;
    }
    loop {
        let adjacent = (0..k - 1).all(|j| !p.glue()[j] || idx[j + 1] == idx[j] + 1);
        if adjacent {
            let values: Vec<usize> = idx.iter().map(|&i| perm.ranks()[i]).collect();
            if reduce(&values).unwrap() == *p.letters() {
                return true;
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn all_patterns(k: usize) -> Vec<GeneralizedPattern> {
    let mut out = Vec::new();
    for letters in Permutation::all(k) {
        for mask in 0..1u32 << (k - 1) {
            let glue = (0..k - 1).map(|j| mask >> j & 1 == 1).collect();
            out.push(GeneralizedPattern::new(letters.clone(), glue).unwrap());
        }
    }
    out
}

/// `π` avoids `1-σ'` iff each stretch after a left-to-right minimum (up to
/// the next one) avoids consecutive `σ`.
fn ltr_blocks_avoid(perm: &Permutation, sigma: &GeneralizedPattern) -> bool {
    let minima = ltr_minima(perm);
    let n = perm.len();
    minima.iter().enumerate().all(|(i, &m)| {
        let end = minima.get(i + 1).map_or(n, |&next| next - 1);
        let block: Vec<usize> = perm.ranks()[m..end].to_vec();
        block.is_empty() || avoids(&reduce(&block).unwrap(), sigma)
    })
}

#[test]
fn criterion_09_structural_properties() {
    let mut failures: Vec<String> = Vec::new();
    let patterns: Vec<GeneralizedPattern> = (1..=4).flat_map(all_patterns).collect();

    // occurrence soundness, exhaustive for n <= 7 over length <= 3, n <= 6 for length 4
    for p in &patterns {
        let top = if p.len() == 4 { 6 } else { 7 };
        for n in 0..=top {
            for perm in Permutation::all(n) {
                let occ = find_occurrences(&perm, p, None);
                let sound = occ.iter().all(|o| {
                    let idx = &o.indices;
                    reduce(&o.values(&perm)).unwrap() == *p.letters()
                        && idx.windows(2).all(|w| w[0] < w[1])
                        && (0..p.len() - 1).all(|j| !p.glue()[j] || idx[j + 1] == idx[j] + 1)
                });
                if !sound || occ.is_empty() != !naive_contains(&perm, p) {
                    failures.push(format!("occurrences {p} in {perm}"));
                }
            }
        }
    }

    // reverse / complement symmetry and dash monotonicity, n <= 8
    for p in &patterns {
        let base = count_sequence(p, 8).unwrap().counts;
        for q in [p.reverse(), p.complement()] {
            if count_sequence(&q, 8).unwrap().counts != base {
                failures.push(format!("symmetry {p} vs {q}"));
            }
        }
        for slot in 0..p.len().saturating_sub(1) {
            if let Some(q) = p.without_dash(slot) {
                let qc = count_sequence(&q, 8).unwrap().counts;
                if qc.iter().zip(&base).any(|(a, b)| a < b) {
                    failures.push(format!("dash monotonicity {p} -> {q}"));
                }
            }
        }
    }

    // left-to-right minima characterization, exhaustive n <= 8
    for s in ["12", "21", "132", "123"] {
        let sigma = pat(s);
        let one_dash = GeneralizedPattern::one_dash(&sigma);
        for n in 0..=8 {
            for perm in Permutation::all(n) {
                if avoids(&perm, &one_dash) != ltr_blocks_avoid(&perm, &sigma) {
                    failures.push(format!("ltr minima {one_dash} on {perm}"));
                }
            }
        }
    }

    // randomized occurrence checks at larger n (fixed seed, xorshift)
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..400 {
        let n = 8 + (next() % 5) as usize;
        let mut ranks: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            ranks.swap(i, (next() % (i as u64 + 1)) as usize);
        }
        let perm = Permutation::new(ranks).unwrap();
        let p = &patterns[(next() % patterns.len() as u64) as usize];
        if avoids(&perm, p) != !naive_contains(&perm, p) {
            failures.push(format!("random occurrence {p} in {perm}"));
        }
    }

    // submultiplicativity and the normalized Fekete form, consecutive k <= 4
    for k in 1..=4 {
        for letters in Permutation::all(k) {
            let p = GeneralizedPattern::consecutive(letters).unwrap();
            let seq = count_consecutive_dp(&p, 12).unwrap();
            let eq1 = (1..12).all(|m| (1..=12 - m).all(|n| check_submultiplicative(&seq, m, n).unwrap()));
            if !eq1 || !fekete_check(&seq) {
                failures.push(format!("submultiplicativity {p}"));
            }
        }
    }

    verdict(
        9,
        failures.is_empty(),
        &format!(
            "{} patterns of length <= 4; failures: {}",
            patterns.len(),
            if failures.is_empty() { "none".to_string() } else { failures[..failures.len().min(5)].join("; ") }
        ),
    );
}

#[test]
fn criterion_10_equalities() {
    let a = count_sequence(&pat("12-345"), 9).unwrap().counts;
    let b = count_sequence(&pat("21-345"), 9).unwrap().counts;
    let c = count_sequence(&pat("1-23-4"), 9).unwrap().counts;
    let d = count_sequence(&pat("1-32-4"), 9).unwrap().counts;
    verdict(
        10,
        a == b && c == d,
        &format!("12-345 = 21-345: {}; 1-23-4 = 1-32-4: {} (n <= 9)", a == b, c == d),
    );
}

fn render(which: u8) -> Vec<u8> {
    let mut out = Vec::new();
    figure(&mut Session::plain(false), which, &mut out).unwrap();
    out
}

#[test]
fn criterion_11_figure_data() {
    let mut deterministic = true;
    let mut figures = Vec::new();
    for which in 1..=3 {
        let first = render(which);
        deterministic &= first == render(which);
        figures.push(String::from_utf8(first).unwrap());
    }

    let mut max_err: f64 = 0.0;
    for (name, (lower, upper)) in [
        (BoundName::TwelveThirtyFour, genpat::formulas::series_12_34(40)),
        (
            BoundName::OneTwentyThreeFour,
            (lower_1_23_4(40), genpat::formulas::upper_1_23_4(40)),
        ),
    ] {
        let (fl, fu) = float_bounds(name, 40);
        for n in 1..=40 {
            for (exact, float) in [(&lower, &fl), (&upper, &fu)] {
                let e = nth_root_of(exact.coeff(n), n);
                max_err = max_err.max((e - float.nth_root(n)).abs());
            }
        }
    }

    let fig3 = &figures[2];
    let header: Vec<&str> = fig3.lines().next().unwrap().split(',').collect();
    let columns_ok = FIGURE3_PATTERNS.iter().all(|p| header.contains(p));
    let filled = |p: &str| {
        let col = header.iter().position(|h| h == &p).unwrap();
        fig3.lines()
            .skip(1)
            .take(11)
            .all(|l| !l.split(',').nth(col).unwrap().is_empty())
    };
    let to_eleven = filled("3-14-2") && filled("13-24") && FIGURE3_PATTERNS.iter().all(|p| filled(p));
    verdict(
        11,
        deterministic && max_err < FLOAT_EXACT_TOL && columns_ok && to_eleven,
        &format!(
            "deterministic: {deterministic}; max |float - exact| root for n<=40: {max_err:.2e}; \
             figure 3 has all 8 columns: {columns_ok}, filled to n=11: {to_eleven}"
        ),
    );
}
