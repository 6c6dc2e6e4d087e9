//! Acceptance criteria, each checked exactly. One PASS/FAIL line per
//! criterion; the process exits 1 if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use congruent_theta::elliptic::{count_points_fp, Curve, CurveModP};
use congruent_theta::modular::{cusp_count, eisenstein_dim, prime_power_dimension};
use congruent_theta::quadform::{representation_count, CongruentForm};
use congruent_theta::verify::{run_suite, SuiteConfig, SuiteReport};

const SHOWN_FAILURES: usize = 6;

struct Criterion {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: Vec<String>,
}

impl Criterion {
    fn print(&self) {
        let mark = if self.pass { "PASS" } else { "FAIL" };
        println!("AC{:<2} {mark}  {}", self.id, self.title);
        for d in &self.detail {
            println!("        {d}");
        }
    }
}

fn suite(name: &str) -> (SuiteReport, Duration) {
    let start = Instant::now();
    let report = run_suite(name, &SuiteConfig::default()).unwrap_or_else(|e| panic!("suite {name}: {e}"));
    (report, start.elapsed())
}

fn summarize(reports: &[&SuiteReport], detail: &mut Vec<String>) -> bool {
    for r in reports {
        detail.push(format!("{}: {} passed, {} failed", r.suite, r.passed(), r.failed()));
        let failures: Vec<_> = r.failures().collect();
        for c in failures.iter().take(SHOWN_FAILURES) {
            detail.push(format!("  {}: expected {}, got {}", c.case, c.expected, c.actual));
        }
        if failures.len() > SHOWN_FAILURES {
            detail.push(format!("  ... {} more", failures.len() - SHOWN_FAILURES));
        }
        for n in &r.notes {
            detail.push(format!("  note: {n}"));
        }
    }
    reports.iter().all(|r| r.is_pass())
}

fn from_suites(id: u32, title: &'static str, names: &[&str], limit: Option<Duration>) -> Criterion {
    let runs: Vec<_> = names.iter().map(|n| suite(n)).collect();
    let elapsed: Duration = runs.iter().map(|r| r.1).sum();
    let mut detail = Vec::new();
    let mut pass = summarize(&runs.iter().map(|r| &r.0).collect::<Vec<_>>(), &mut detail);
    if let Some(limit) = limit {
        let in_time = elapsed < limit;
        detail.push(format!("runtime {:.2} s (limit {} s)", elapsed.as_secs_f64(), limit.as_secs()));
        pass &= in_time;
    }
    Criterion { id, title, pass, detail }
}

fn dimensions() -> Criterion {
    let mut detail = Vec::new();
    let mut pass = true;
    for (n, e) in [(16u64, 6u64), (36, 12), (144, 24)] {
        let (got_e, got_dim) = (cusp_count(n), eisenstein_dim(n));
        if got_e != e || got_dim != e - 1 {
            pass = false;
            detail.push(format!("level {n}: cusps {got_e} (want {e}), dim {got_dim} (want {})", e - 1));
        }
    }
    for p in [2u64, 3, 5, 7] {
        for k in 1..=7u32 {
            let closed = prime_power_dimension(p, k);
            if closed != Some(cusp_count(p.pow(k)) - 1) {
                pass = false;
                detail.push(format!("{p}^{k}: closed form {closed:?}, cusps - 1 = {}", cusp_count(p.pow(k)) - 1));
            }
        }
    }
    Criterion { id: 4, title: "cusp counts and Eisenstein dimensions", pass, detail }
}

fn naive_points(p: u64) -> u64 {
    // y^2 = x^3 + 1 over F_p by a double loop, plus the point at infinity
    let mut count = 1;
    for x in 0..p {
        let rhs = (x * x % p * x + 1) % p;
        count += (0..p).filter(|y| y * y % p == rhs).count() as u64;
    }
    count
}

fn headline() -> Criterion {
    let (report, _) = suite("r13-prime");
    let mut detail = Vec::new();
    let mut pass = summarize(&[&report], &mut detail);
    let form = CongruentForm::sum_of_four_squares(1, 3).expect("valid form");
    let r = representation_count(&form, 103);
    let n = count_points_fp(&CurveModP::new(Curve::x3_plus_1(), 103).expect("good reduction"));
    let naive = naive_points(103);
    detail.push(format!("p = 103: r = {r}, N_p(1) = {n}, double-loop count {naive}"));
    pass &= r == 28 && n == 84 && naive == 84;
    Criterion { id: 8, title: "3 r_(1,3)(p) = N_p(1) for p = 1 mod 6, p <= 200", pass, detail }
}

fn closed_forms() -> Criterion {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
    pool.install(|| {
        from_suites(
            7,
            "closed forms for r_(s,M)(n), 15 cases, n <= 5000, single worker",
            &["closed-forms"],
            Some(Duration::from_secs(120)),
        )
    })
}

fn main() -> ExitCode {
    let criteria = [
        from_suites(
            1,
            "printed basis coefficients at levels 2^k, 3^k and p",
            &["appendix-a", "appendix-b"],
            Some(Duration::from_secs(10)),
        ),
        from_suites(2, "Gamma_0(16) cusp-value table", &["appendix-c"], None),
        from_suites(3, "Gamma_0(36) cusp-value table", &["appendix-d"], None),
        dimensions(),
        from_suites(5, "level 36 linear relation and rank", &["linrel-36"], None),
        from_suites(6, "theta decompositions at levels 16, 36 and 144", &["theta-decompositions"], None),
        closed_forms(),
        headline(),
        from_suites(9, "prime-power relations for p = 5, 7, 11, 13", &["r13-power"], None),
        from_suites(10, "multiplicative decomposition of r_(1,3)(n)", &["r13-general"], None),
        from_suites(11, "quadratic form / point count table rows", &["tables"], None),
        from_suites(12, "property suites", &["sieve-properties"], None),
    ];
    for c in &criteria {
        c.print();
    }
    let failed = criteria.iter().filter(|c| !c.pass).count();
    println!("\nacceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
