//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bggx::cache::TableCache;
use bggx::checks::{
    abelian_battery, bound_identity_checks, cell_rng, combin_check, conjecture_sweep, curves_check, g_class_checks,
    koszul_checks, random_w, BatteryCell, Check, ClosedForms, DEFAULT_SEED,
};
use bggx_core::bgg::Status;
use bggx_core::complex::{build_complex, euler_identity_holds, homology_dims};
use bggx_core::linalg::inverse;
use bggx_core::lr::lr_coefficient;
use bggx_core::models::{abelian_model, curves_product_model};
use bggx_core::partition::partitions_of;
use bggx_core::schur::{complement, multiply};
use bggx_core::series::{chern_q, chern_s};
use bggx_core::{GradedSeries, GrassmannianContext, Partition, Rational, SchubertExpr};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }

    fn from_checks(checks: &[Check]) -> Self {
        let failing: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.anchor.as_str()).collect();
        if failing.is_empty() {
            Outcome::new(true, format!("{} checks", checks.len()))
        } else {
            Outcome::new(false, format!("failing: {}", failing.join(", ")))
        }
    }
}

struct Line {
    name: String,
    outcome: Outcome,
    elapsed: Duration,
    limit: Duration,
}

impl Line {
    fn passed(&self) -> bool {
        self.outcome.passed && self.elapsed <= self.limit
    }

    fn print(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let over = if self.elapsed > self.limit {
            format!(", over the {:?} limit", self.limit)
        } else {
            String::new()
        };
        println!(
            "{verdict} {}: {} ({:.2?}{over})",
            self.name, self.outcome.detail, self.elapsed
        );
    }
}

fn timed(name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> Line {
    let start = Instant::now();
    let outcome = f();
    let line = Line {
        name: name.to_string(),
        outcome,
        elapsed: start.elapsed(),
        limit,
    };
    line.print();
    line
}

fn conjecture_sweep_criterion() -> Outcome {
    let reports = conjecture_sweep(2..=4, 12, &TableCache::new()).expect("sweep runs");
    let warn = reports.iter().filter(|r| r.status == Status::Warn).count();
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.status == Status::Fail || !r.cross_check || (r.status == Status::Warn && !r.boundary))
        .map(|r| format!("(k={}, q={})", r.k, r.q))
        .collect();
    let largest = reports.iter().find(|r| (r.k, r.q) == (4, 12)).expect("k=4, q=12 cell");
    if bad.is_empty() {
        Outcome::new(
            true,
            format!(
                "{} cells, {warn} boundary WARN, k=4 q=12 mu={} coefficient {}",
                reports.len(),
                largest.mu,
                largest.mu_coefficient
            ),
        )
    } else {
        Outcome::new(false, format!("failing cells {}", bad.join(" ")))
    }
}

fn g_polynomial_criterion() -> Outcome {
    let checks = g_class_checks(1..=6, ClosedForms::default()).expect("g classes");
    let mut out = Outcome::from_checks(&checks);
    if out.passed {
        out.detail.push_str(", g_11 N/A at k=1 since sigma_11 = 0 on Gr(1, q)");
    }
    out
}

fn curves_criterion() -> Outcome {
    let (_, check) = curves_check().expect("curves model");
    Outcome::new(check.passed, check.detail)
}

fn battery(samples: usize) -> Vec<BatteryCell> {
    abelian_battery(2..=6, samples, DEFAULT_SEED).expect("battery runs")
}

fn cell_name(c: &BatteryCell) -> String {
    format!("(q={},k={},r={},j={})", c.q, c.k, c.r, c.j)
}

/// The literal prefix bound `max(0, q − k − j + 1)` in every cell.
fn battery_literal(cells: &[BatteryCell]) -> Outcome {
    let failing: Vec<&BatteryCell> = cells.iter().filter(|c| !c.meets_bound()).collect();
    if failing.is_empty() {
        return Outcome::new(true, format!("{} cells", cells.len()));
    }
    let short_complex = failing.iter().all(|c| c.r < c.bound && c.min_prefix == c.r);
    let example = cell_name(failing[0]);
    Outcome::new(
        false,
        format!(
            "{} of {} cells below the bound, e.g. {example}; {} have r < q-k-j+1 with prefix exactly r",
            failing.len(),
            cells.len(),
            if short_complex { "all" } else { "not all" },
        ),
    )
}

fn battery_capped(cells: &[BatteryCell]) -> Outcome {
    let failing: Vec<String> = cells.iter().filter(|c| !c.meets_capped_bound()).map(cell_name).collect();
    let samples = cells.first().map_or(0, |c| c.samples);
    if failing.is_empty() {
        Outcome::new(true, format!("{} cells x {samples} W", cells.len()))
    } else {
        Outcome::new(false, format!("failing {}", failing.join(" ")))
    }
}

fn random_expr(rng: &mut ChaCha8Rng, ctx: GrassmannianContext, classes: &[Partition]) -> SchubertExpr<Rational> {
    let mut e = SchubertExpr::zero(ctx);
    for _ in 0..rng.gen_range(1..=3) {
        let lambda = classes[rng.gen_range(0..classes.len())].clone();
        let term = SchubertExpr::term(ctx, lambda, int(rng.gen_range(-3..=3))).unwrap();
        e = e.add(&term).unwrap();
    }
    e
}

fn ring_criterion() -> Outcome {
    let mut problems = Vec::new();
    let mut triples = 0;
    for (k, q) in [(2, 5), (3, 7)] {
        let ctx = GrassmannianContext::new(k, q).unwrap();
        let classes = ctx.box_partitions().unwrap();
        let mut rng = cell_rng(DEFAULT_SEED, (k * 16 + q) as u64);
        for t in 0..200 {
            let [a, b, c] = [0; 3].map(|_| random_expr(&mut rng, ctx, &classes));
            let ab = multiply(&a, &b).unwrap();
            if ab != multiply(&b, &a).unwrap() {
                problems.push(format!("commutativity Gr({k},{q}) triple {t}"));
            }
            if multiply(&ab, &c).unwrap() != multiply(&a, &multiply(&b, &c).unwrap()).unwrap() {
                problems.push(format!("associativity Gr({k},{q}) triple {t}"));
            }
            triples += 1;
        }
    }

    for (k, q) in [(2, 5), (3, 6), (3, 7)] {
        let ctx = GrassmannianContext::new(k, q).unwrap();
        let top = Partition::new(vec![q - k; k]).unwrap();
        let classes = ctx.box_partitions().unwrap();
        for lambda in &classes {
            for mu in classes.iter().filter(|mu| mu.size() == lambda.size()) {
                let prod = multiply(
                    &SchubertExpr::<Rational>::class(ctx, lambda.clone()).unwrap(),
                    &SchubertExpr::class(ctx, complement(mu, ctx).unwrap()).unwrap(),
                )
                .unwrap();
                if prod.coeff(&top) != int((lambda == mu) as i64) {
                    problems.push(format!("duality Gr({k},{q}) {lambda} {mu}"));
                }
            }
        }
    }

    let ctx = GrassmannianContext::new(3, 8).unwrap();
    let small: Vec<Partition> = (0..=4).flat_map(|d| partitions_of(d, 3, Some(5))).collect();
    for lambda in &small {
        for mu in &small {
            let prod = multiply(
                &SchubertExpr::<Rational>::class(ctx, lambda.clone()).unwrap(),
                &SchubertExpr::class(ctx, mu.clone()).unwrap(),
            )
            .unwrap();
            for nu in partitions_of(lambda.size() + mu.size(), 3, Some(5)) {
                if prod.coeff(&nu) != int(lr_coefficient(lambda, mu, &nu).unwrap() as i64) {
                    problems.push(format!("LR {lambda} * {mu} at {nu}"));
                }
            }
        }
    }

    let mut whitney = 0;
    for q in 2..=10 {
        for k in 1..q {
            let ctx = GrassmannianContext::new(k, q).unwrap();
            let s = chern_s::<Rational>(ctx, None).unwrap();
            let c = chern_q::<Rational>(ctx, None).unwrap();
            if s.mul(&c).unwrap() != GradedSeries::one(ctx, None).unwrap() {
                problems.push(format!("c(S)c(Q) on Gr({k},{q})"));
            }
            whitney += 1;
        }
    }

    if problems.is_empty() {
        Outcome::new(
            true,
            format!(
                "{triples} triples, duality, LR on {} pairs in Gr(3,8), c(S)c(Q)=1 on {whitney} Grassmannians",
                small.len() * small.len()
            ),
        )
    } else {
        Outcome::new(false, problems.join("; "))
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<Rational>> {
    loop {
        let g: Vec<Vec<Rational>> = (0..k)
            .map(|_| (0..k).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        if inverse(&g).is_some() {
            return g;
        }
    }
}

fn complex_criterion() -> Outcome {
    let mut problems = Vec::new();
    let mut built = 0;
    let mut rng = cell_rng(DEFAULT_SEED, 7);

    for q in 1..=4 {
        let datum = abelian_model(q).unwrap();
        for k in 1..=q {
            for r in 1..=q + 1 {
                for j in 0..=q {
                    let w = random_w(&mut rng, k, q);
                    let c = build_complex(&datum, &w, r, j).unwrap();
                    built += 1;
                    if !c.composition_zero() || !euler_identity_holds(&c, &homology_dims(&c)) {
                        problems.push(format!("abelian q={q} k={k} r={r} j={j}"));
                    }
                }
            }
        }
    }

    let (datum, w) = curves_product_model().unwrap();
    let mut reference = Vec::new();
    for r in 1..=3 {
        for j in 0..=datum.d() {
            let c = build_complex(&datum, &w, r, j).unwrap();
            built += 1;
            let h = homology_dims(&c);
            if !c.composition_zero() || !euler_identity_holds(&c, &h) {
                problems.push(format!("curves r={r} j={j}"));
            }
            if r == 2 {
                reference.push(h);
            }
        }
    }

    let changes = 100;
    for t in 0..changes {
        let moved = w.transformed(&random_invertible(&mut rng, w.k())).unwrap();
        for (j, expected) in reference.iter().enumerate() {
            let c = build_complex(&datum, &moved, 2, j).unwrap();
            built += 1;
            let h = homology_dims(&c);
            if !c.composition_zero() || !euler_identity_holds(&c, &h) {
                problems.push(format!("curves basis change {t} j={j}: not a complex"));
            }
            if &h != expected {
                problems.push(format!("curves basis change {t} j={j}: homology {h:?} vs {expected:?}"));
            }
        }
    }

    if problems.is_empty() {
        Outcome::new(true, format!("{built} complexes, {changes} basis changes of W on the curves model"))
    } else {
        Outcome::new(false, problems.join("; "))
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut lines = Vec::new();

    lines.push(timed("1 conjecture sweep k=2..4, q<=12", secs(300), conjecture_sweep_criterion));
    lines.push(timed("2 g-polynomials k=1..6", secs(60), g_polynomial_criterion));
    lines.push(timed("3 curves E2 and hypercohomology", secs(1), curves_criterion));

    let start = Instant::now();
    let cells = battery(50);
    let battery_time = start.elapsed();
    let literal = Line {
        name: "4a exactness prefix >= max(0, q-k-j+1), q=2..6, 50 W per cell".into(),
        outcome: battery_literal(&cells),
        elapsed: battery_time,
        limit: secs(120),
    };
    literal.print();
    let capped = Line {
        name: "4b exactness prefix >= min(q-k-j+1, r), same cells".into(),
        outcome: battery_capped(&cells),
        elapsed: battery_time,
        limit: secs(120),
    };
    capped.print();
    let koszul = timed("4c W=V, j=0: no interior homology", secs(120), || {
        Outcome::from_checks(&koszul_checks(2..=6).expect("Koszul complexes"))
    });

    lines.push(timed("5 combin identity, rank identities, h20 piecewise bound", secs(1), || {
        let mut checks = vec![combin_check(30)];
        checks.extend(bound_identity_checks());
        Outcome::from_checks(&checks)
    }));
    lines.push(timed("6 Schubert ring properties", secs(60), ring_criterion));
    lines.push(timed("7 complex well-formedness", secs(60), complex_criterion));

    // 4a cannot hold where r < q-k-j+1: such a complex stops after r maps
    // and its last term survives as a cokernel. It stays FAIL above; the run
    // is accepted only if every violation is of exactly that kind.
    let literal_explained = cells
        .iter()
        .filter(|c| !c.meets_bound())
        .all(|c| c.r < c.bound && c.min_prefix == c.r);

    let mut ok = capped.passed() && koszul.passed() && literal_explained && literal.elapsed <= literal.limit;
    for line in &lines {
        ok &= line.passed();
    }
    println!();
    if ok {
        if literal.passed() {
            println!("acceptance: every criterion holds");
        } else {
            println!("acceptance: every criterion holds except 4a, whose failures are all short complexes (r < q-k-j+1)");
        }
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
