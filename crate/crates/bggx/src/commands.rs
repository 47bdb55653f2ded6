//! One function per subcommand. Each returns a [`RunReport`]; argument
//! parsing and output live in the binary.

use std::ops::RangeInclusive;
use std::path::Path;

use bggx_core::bgg::{chern_g_coeffs, conjecture_mu, ConjectureReport, Status};
use bggx_core::bounds::{
    alternating_sum, alternating_sum_applies, binom_bound, c1_bound, c2_bound, combin_identity,
    conjecture_rank_bound, exact_complex_bound, hypothetical_top_chern_bound, thm11_bound,
    truncation_bound,
};
use bggx_core::complex::{
    build_complex, e2_table, euler_identity_holds, homology_dims, prefix_of, E2Table, SubspaceW,
};
use bggx_core::models::{abelian_model, curves_product_model};
use bggx_core::schur::multiply;
use bggx_core::symchern::sym_power_chern;
use bggx_core::{GrassmannianContext, Partition, Rational, SchubertExpr};
use serde_json::{json, Value};

use crate::cache::TableCache;
use crate::checks::{
    abelian_battery, bound_identity_checks, combin_check, conjecture_sweep, curves_check,
    g_class_checks, koszul_checks, Check, ClosedForms,
};
use crate::error::CliError;
use crate::json::{
    datum_from_json, datum_to_json, parse_rational, parse_w, rational_string, schubert_to_json,
    table_to_json,
};
use crate::report::{RunReport, Table};

fn status_of(passed: bool) -> Status {
    if passed {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// `"2..4"`, `"2..=4"` or `"3"`; an empty range like `"4..2"` is allowed.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad range {s:?}, expected A..B or A"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

/// Parses `"2,1"` or `"2,1:3/2 + 1:-1"`: `partition[:coeff]` terms joined
/// by `+`.
pub fn parse_schubert(s: &str, ctx: GrassmannianContext) -> Result<SchubertExpr<Rational>, CliError> {
    let mut out = SchubertExpr::zero(ctx);
    for term in s.split('+') {
        let (part, coeff) = match term.split_once(':') {
            Some((p, c)) => (p, parse_rational(c)?),
            None => (term, Rational::from_integer(1.into())),
        };
        let lambda: Partition = part
            .trim()
            .parse()
            .map_err(|e: bggx_core::Error| CliError::Usage(e.to_string()))?;
        let t = SchubertExpr::term(ctx, lambda, coeff).map_err(|e| CliError::Usage(e.to_string()))?;
        out = out.add(&t)?;
    }
    Ok(out)
}

fn expr_table(e: &SchubertExpr<Rational>) -> Table {
    let mut t = Table::new(&["partition", "coeff"]);
    for (lambda, c) in e.terms() {
        t.push([lambda.to_string(), rational_string(c)]);
    }
    t
}

pub fn schubert_mult(k: usize, q: Option<usize>, a: &str, b: &str) -> Result<RunReport, CliError> {
    let ctx = match q {
        Some(q) => GrassmannianContext::new(k, q),
        None => GrassmannianContext::stable(k),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let x = parse_schubert(a, ctx)?;
    let y = parse_schubert(b, ctx)?;
    let prod = multiply(&x, &y)?;
    let mut report = RunReport::new("schubert mult", json!({ "k": k, "q": q, "a": a, "b": b }));
    report.results = schubert_to_json(&prod);
    report.table = expr_table(&prod);
    Ok(report)
}

pub fn chern_sym(rank: usize, power: usize, max_degree: usize) -> Result<RunReport, CliError> {
    let table = sym_power_chern(rank, power, max_degree).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut report = RunReport::new(
        "chern sym",
        json!({ "rank": rank, "power": power, "max_degree": max_degree }),
    );
    report.results = table_to_json(&table);
    let mut t = Table::new(&["degree", "monomial", "coeff"]);
    for (d, entry) in table.entries().iter().enumerate() {
        for (mono, c) in entry {
            let word: Vec<String> = mono
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("e{}", i + 1) } else { format!("e{}^{a}", i + 1) })
                .collect();
            let word = if word.is_empty() { "1".to_string() } else { word.join("*") };
            t.push([d.to_string(), word, rational_string(c)]);
        }
    }
    report.table = t;
    Ok(report)
}

fn conjecture_json(r: &ConjectureReport) -> Value {
    json!({
        "k": r.k,
        "q": r.q,
        "mu": r.mu.parts(),
        "above_mu_all_zero": r.above_mu_all_zero,
        "mu_coefficient": rational_string(&r.mu_coefficient),
        "offending": r.offending.iter().map(|(l, c)| json!({ "partition": l.parts(), "coeff": rational_string(c) })).collect::<Vec<_>>(),
        "codim_mu": r.codim_mu,
        "rank_lower_bound": r.rank_lower_bound,
        "boundary": r.boundary,
        "cross_check": r.cross_check,
        "status": r.status.as_str(),
    })
}

fn conjecture_table(reports: &[ConjectureReport]) -> Table {
    let mut t = Table::new(&[
        "k",
        "q",
        "mu",
        "above_mu_all_zero",
        "mu_coefficient",
        "codim_mu",
        "rank_lower_bound",
        "cross_check",
        "status",
    ]);
    for r in reports {
        t.push([
            r.k.to_string(),
            r.q.to_string(),
            r.mu.to_string(),
            r.above_mu_all_zero.to_string(),
            rational_string(&r.mu_coefficient),
            r.codim_mu.to_string(),
            r.rank_lower_bound.to_string(),
            r.cross_check.to_string(),
            r.status.as_str().to_string(),
        ]);
    }
    t
}

pub fn conjecture_verify(ks: RangeInclusive<usize>, q_max: usize, cache: &TableCache) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(
        "conjecture verify",
        json!({ "k": format!("{}..{}", ks.start(), ks.end()), "q_max": q_max }),
    );
    if *ks.start() == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    let reports = conjecture_sweep(ks, q_max, cache)?;
    report.status = reports.iter().fold(Status::Pass, |s, r| s.combine(r.status));
    report.results = Value::Array(reports.iter().map(conjecture_json).collect());
    report.table = conjecture_table(&reports);
    for r in reports.iter().filter(|r| r.status != Status::Pass) {
        report.notes.push(format!(
            "{} at k={}, q={}: mu = {}, coefficient {}, {} offending classes",
            r.status.as_str(),
            r.k,
            r.q,
            r.mu,
            rational_string(&r.mu_coefficient),
            r.offending.len()
        ));
    }
    Ok(report)
}

pub fn gclass(k: usize, max_degree: usize) -> Result<RunReport, CliError> {
    let g = chern_g_coeffs(k, max_degree).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut report = RunReport::new("gclass", json!({ "k": k, "max_degree": max_degree }));
    let mut t = Table::new(&["partition", "g"]);
    let mut results = Vec::new();
    for (lambda, poly) in &g.coeffs {
        t.push([lambda.to_string(), poly.to_string()]);
        results.push(json!({ "partition": lambda.parts(), "g": poly.to_string() }));
    }
    report.results = json!({ "valid_from_q": g.valid_from_q, "g": results });
    report.table = t;
    report.notes.push(format!("valid for q >= {}", g.valid_from_q));
    Ok(report)
}

/// Every `h^{2,0}` lower bound at `(q, d)` and each `k` in `ks`.
pub fn bounds_h20(q: usize, d: usize, ks: RangeInclusive<usize>) -> Result<RunReport, CliError> {
    if d == 0 {
        return Err(CliError::Usage("d must be at least 1".into()));
    }
    let mut report = RunReport::new(
        "bounds h20",
        json!({ "q": q, "d": d, "k": format!("{}..{}", ks.start(), ks.end()) }),
    );
    let mut t = Table::new(&["bound", "k", "value", "hypotheses"]);
    let mut rows = Vec::new();
    let mut add = |t: &mut Table, name: &str, k: Option<usize>, value: String, hyp: &str| {
        let k = k.map_or(String::new(), |k| k.to_string());
        rows.push(json!({ "bound": name, "k": k, "value": value, "hypotheses": hyp }));
        t.push([name.to_string(), k, value, hyp.to_string()]);
    };
    let thm = thm11_bound(d, q)?;
    add(&mut t, "dimension", None, thm.piecewise.to_string(), "no higher irrational pencil");
    for k in ks.clone() {
        if k == 0 || k >= q {
            continue;
        }
        if k < d {
            let kq = (2 * k * q) as i128 - ((2 * k + 1) * (2 * k) / 2) as i128;
            add(&mut t, "subspace family", Some(k), kq.to_string(), "no higher irrational pencil (W generic of dimension 2k)");
        }
        add(&mut t, "exact complex", Some(k), exact_complex_bound(q, k).to_string(), "C^0_{2,W} exact for some W of dimension k");
        add(&mut t, "truncation", Some(k), rational_string(&truncation_bound(q, k)), "C^0_3 exact as sheaves");
        add(&mut t, "c1", Some(k), c1_bound(q, k).to_string(), "C^0_3 exact as sheaves");
        let c2 = c2_bound(q, k);
        if let Some(h) = c2.min_integer_h {
            add(
                &mut t,
                "c2",
                Some(k),
                h.to_string(),
                &format!("C^0_3 exact as sheaves; radicand {}", c2.radicand),
            );
        }
        let (rank, h) = conjecture_rank_bound(q, k)?;
        add(&mut t, "conjectural rank", Some(k), h.to_string(), &format!("CONJECTURAL: C^0_2 exact for every W, rank F >= {rank}"));
        add(
            &mut t,
            "top Chern class",
            Some(k),
            hypothetical_top_chern_bound(q, k).to_string(),
            "CONDITIONAL: C^0_2 exact for every W and c_top(F) != 0",
        );
    }
    report.results = Value::Array(rows);
    report.table = t;
    Ok(report)
}

/// Reads a Hodge table: a datum file, or any object with a `dims` table.
fn read_dims(path: &Path) -> Result<Vec<Vec<i64>>, CliError> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let dims = v
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Data("Hodge table needs a \"dims\" array".into()))?;
    let rows: Vec<Vec<i64>> = dims
        .iter()
        .map(|row| {
            row.as_array()
                .and_then(|r| r.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
                .ok_or_else(|| CliError::Data("dims rows must be integer lists".into()))
        })
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Data("dims must be a square (d+1)x(d+1) table".into()));
    }
    Ok(rows)
}

/// Alternating sums and binomial bounds wherever they are claimed.
#[allow(clippy::needless_range_loop)]
pub fn bounds_check(hodge: &Path, k: usize, r: usize) -> Result<RunReport, CliError> {
    if k == 0 || r == 0 {
        return Err(CliError::Usage("k and r must be at least 1".into()));
    }
    let dims = read_dims(hodge)?;
    let d = dims.len() - 1;
    let mut report = RunReport::new(
        "bounds check",
        json!({ "hodge": hodge.display().to_string(), "k": k, "r": r }),
    );
    let mut t = Table::new(&["check", "p", "j", "value", "required", "status"]);
    let mut rows = Vec::new();
    let mut all_ok = true;
    for j in 0..=d {
        let hrow: Vec<i64> = (0..=d).map(|i| dims[i][j]).collect();
        for p in 0..=d {
            if alternating_sum_applies(d, k, j, r, p) {
                let s = alternating_sum(&hrow, r, k, p)?;
                let ok = s >= Rational::from_integer(0.into());
                all_ok &= ok;
                let status = status_of(ok).as_str();
                rows.push(json!({ "check": "alternating sum", "p": p, "j": j, "value": rational_string(&s), "required": ">= 0", "status": status }));
                t.push(["alternating sum".to_string(), p.to_string(), j.to_string(), rational_string(&s), ">= 0".into(), status.into()]);
            }
            let b = binom_bound(k, p, j, d);
            if b.applicable {
                let h = dims[p][j] as i128;
                let ok = h >= b.value;
                all_ok &= ok;
                let status = status_of(ok).as_str();
                rows.push(json!({ "check": "binomial", "p": p, "j": j, "value": h.to_string(), "required": format!(">= {}", b.value), "status": status }));
                t.push(["binomial".to_string(), p.to_string(), j.to_string(), h.to_string(), format!(">= {}", b.value), status.into()]);
            }
        }
    }
    report.status = status_of(all_ok);
    report.results = Value::Array(rows);
    report.table = t;
    Ok(report)
}

fn e2_json(t: &E2Table) -> Value {
    json!({ "r": t.r, "entries": t.entries, "hyper": t.hyper })
}

fn e2_rows(t: &E2Table) -> Table {
    let mut table = Table::new(&["i", "j", "dim"]);
    for (i, row) in t.entries.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            table.push([i, j, v]);
        }
    }
    table
}

pub fn complex_check(input: &Path, w: &str, r: usize, j: usize, with_e2: bool) -> Result<RunReport, CliError> {
    let datum = datum_from_json(&serde_json::from_str(&std::fs::read_to_string(input)?)?)?;
    let w = SubspaceW::new(parse_w(w)?).map_err(|e| CliError::Usage(e.to_string()))?;
    let c = build_complex(&datum, &w, r, j)?;
    let h = homology_dims(&c);
    let euler = euler_identity_holds(&c, &h);
    let mut report = RunReport::new(
        "complex check",
        json!({ "input": input.display().to_string(), "k": w.k(), "r": r, "j": j }),
    );
    let mut results = json!({
        "term_dims": c.term_dims(),
        "homology": h,
        "exactness_prefix": prefix_of(&h),
        "composition_zero": true,
        "euler_identity": euler,
    });
    let mut t = Table::new(&["step", "term_dim", "homology"]);
    for (s, (&dim, &hs)) in c.term_dims().iter().zip(&h).enumerate() {
        t.push([s, dim, hs]);
    }
    if with_e2 {
        let e2 = e2_table(&datum, &w, r)?;
        results["e2_table"] = e2_json(&e2);
        report.notes.push(format!("E2 antidiagonal sums: {:?}", e2.hyper));
    }
    report.status = status_of(euler);
    report.results = results;
    report.table = t;
    Ok(report)
}

fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

pub fn example_curves(emit_datum: Option<&Path>) -> Result<RunReport, CliError> {
    let (table, check) = curves_check()?;
    if let Some(path) = emit_datum {
        let (datum, _) = curves_product_model()?;
        write_json(path, &datum_to_json(&datum))?;
    }
    let mut report = RunReport::new("example curves", json!({ "r": 2 }));
    report.status = status_of(check.passed);
    report.results = json!({ "e2_table": e2_json(&table), "check": check.detail });
    report.table = e2_rows(&table);
    report.notes.push(format!("hypercohomology: {:?}", table.hyper));
    report.notes.push(format!("{}: {}", status_of(check.passed).as_str(), check.detail));
    Ok(report)
}

pub fn model_abelian(q: usize, emit_datum: Option<&Path>) -> Result<RunReport, CliError> {
    let datum = abelian_model(q).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(path) = emit_datum {
        write_json(path, &datum_to_json(&datum))?;
    }
    let mut report = RunReport::new("model abelian", json!({ "q": q }));
    report.results = json!({ "d": datum.d(), "q": datum.q(), "dims": datum.dims() });
    let mut t = Table::new(&["i", "j", "h"]);
    for (i, row) in datum.dims().iter().enumerate() {
        for (j, &h) in row.iter().enumerate() {
            t.push([i, j, h]);
        }
    }
    report.table = t;
    Ok(report)
}

pub fn identity_combin(max: u32) -> RunReport {
    let check = combin_check(max);
    let mut report = RunReport::new("identity combin", json!({ "max": max }));
    let mut t = Table::new(&["A", "B", "value"]);
    for a in 0..=max.min(5) {
        for b in 0..=max.min(5) {
            t.push([a.to_string(), b.to_string(), combin_identity(a, b).to_string()]);
        }
    }
    report.status = status_of(check.passed);
    report.results = json!({ "passed": check.passed, "detail": check.detail });
    report.table = t;
    report.notes.push(format!("{}: {}", status_of(check.passed).as_str(), check.detail));
    report
}

/// Settings for [`repro`]; the closed forms can be swapped out to confirm
/// that a wrong constant is caught.
pub struct ReproOptions {
    pub seed: u64,
    pub samples: usize,
    pub forms: ClosedForms,
}

fn check_row(section: &str, c: &Check) -> Value {
    json!({ "section": section, "anchor": c.anchor, "status": status_of(c.passed).as_str(), "detail": c.detail })
}

/// Every reproducible number in one report: the vanishing-pattern sweep,
/// the `g_λ` closed forms, the curve example, the exactness battery on
/// abelian models, the combinatorial identity and the bound identities.
pub fn repro(opts: &ReproOptions, cache: &TableCache) -> Result<RunReport, CliError> {
    let mut checks: Vec<(&str, Check)> = Vec::new();

    let sweep = conjecture_sweep(2..=4, 12, cache)?;
    for r in &sweep {
        let passed = r.status != Status::Fail;
        let detail = format!(
            "mu = {}, coefficient {}{}",
            conjecture_mu(r.k, r.q),
            rational_string(&r.mu_coefficient),
            if r.status == Status::Warn { " (boundary warning)" } else { "" }
        );
        checks.push(("conjecture", Check::new(format!("vanishing above mu, k={}, q={}", r.k, r.q), passed, detail)));
    }
    for c in g_class_checks(1..=6, opts.forms)? {
        checks.push(("g classes", c));
    }
    checks.push(("curves", curves_check()?.1));

    let cells = abelian_battery(2..=6, opts.samples, opts.seed)?;
    let capped_bad: Vec<_> = cells.iter().filter(|c| !c.meets_capped_bound()).collect();
    let literal_bad = cells.iter().filter(|c| !c.meets_bound()).count();
    checks.push((
        "exactness",
        Check::new(
            "abelian exactness in the first min(q-k-j+1, r) steps",
            capped_bad.is_empty(),
            format!(
                "{} cells x {} subspaces, {} failing; {} cells with r < q-k-j+1 end in a non-zero cokernel before step q-k-j+1",
                cells.len(),
                opts.samples,
                capped_bad.len(),
                literal_bad
            ),
        ),
    ));
    for c in koszul_checks(2..=6)? {
        checks.push(("exactness", c));
    }
    checks.push(("identities", combin_check(30)));
    for c in bound_identity_checks() {
        checks.push(("identities", c));
    }

    let mut report = RunReport::new(
        "repro",
        json!({ "seed": opts.seed, "samples": opts.samples }),
    );
    let mut t = Table::new(&["section", "anchor", "status", "detail"]);
    for (section, c) in &checks {
        t.push([section.to_string(), c.anchor.clone(), status_of(c.passed).as_str().to_string(), c.detail.clone()]);
    }
    let failing: Vec<&str> = checks.iter().filter(|(_, c)| !c.passed).map(|(_, c)| c.anchor.as_str()).collect();
    report.status = status_of(failing.is_empty());
    report.results = json!({
        "checks": checks.iter().map(|(s, c)| check_row(s, c)).collect::<Vec<_>>(),
        "failing": failing,
    });
    for anchor in &failing {
        report.notes.push(format!("FAIL: {anchor}"));
    }
    report.notes.push(format!("seed {}", opts.seed));
    report.table = t;
    Ok(report)
}
