//! The reproduction battery: every quantitative claim re-derived from
//! scratch, one row per claim.

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::Value;

use crate::bounds::{check_against_bounds, exact_extremal_k2, nonexistence_argument, BoundsError, Subject, Verdict};
use crate::constructions::{gen_grid, gen_kq_subdivision, gen_quad_extremal, gen_straight_extremal};
use crate::crossings::{compute_crossings, find_k_fans, is_k_fan_free, validate_simplicity};
use crate::decompose::{audit, DecompositionReport};
use crate::io::drawing_to_value;
use crate::model::{validate_graph, Drawing, FanWitness, Point, StraightLineDrawing};
use crate::random::{random_drawing, random_fan_free_drawing, rng, RandomSpec};
use crate::star::{max_arrows, verify_base_cases, SearchError, SearchFilter, SearchOptions, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub claim: &'static str,
    pub status: Status,
    pub detail: String,
    pub millis: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:>2}] {:<12} {} ({} ms): {}",
            self.id, self.status, self.claim, self.millis, self.detail
        )
    }
}

/// A drawing that breaks a proven bound while being fan-free.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub label: String,
    pub reason: String,
    pub drawing: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproReport {
    pub criteria: Vec<CriterionResult>,
    pub counterexamples: Vec<Counterexample>,
}

impl ReproReport {
    pub fn status(&self) -> Status {
        if self.criteria.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.criteria.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    /// 0 when everything passes, 1 on any failure, 3 when only
    /// inconclusive rows remain.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }

    pub fn get(&self, id: u8) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.id == id)
    }
}

pub type UpperBoundFn = fn(usize, usize, bool) -> Result<i64, BoundsError>;

#[derive(Debug, Clone, Copy)]
pub struct ReproOptions {
    pub budget: u64,
    pub seed: u64,
    /// Bound used by the table check and the falsification guard; replace it
    /// to inject faults.
    pub upper_bound: UpperBoundFn,
    /// Largest n for the extremal generator sweeps.
    pub max_n: usize,
    pub random_audits: usize,
    pub oracle_drawings: usize,
}

impl Default for ReproOptions {
    fn default() -> Self {
        ReproOptions {
            budget: DEFAULT_BUDGET,
            seed: 0x5eed,
            upper_bound: crate::bounds::upper_bound,
            max_n: 60,
            random_audits: 200,
            oracle_drawings: 500,
        }
    }
}

struct Guard {
    upper_bound: UpperBoundFn,
    found: Vec<Counterexample>,
    checked: usize,
}

impl Guard {
    /// Records a counterexample when a fan-free drawing exceeds a bound.
    fn observe(&mut self, label: &str, d: &Drawing, k: usize, fan_free: bool, report: Option<&DecompositionReport>) {
        if !fan_free {
            return;
        }
        self.checked += 1;
        let n = d.graph().n();
        let e = d.graph().edge_count() as i64;
        let mut reasons = Vec::new();
        if let Ok(bound) = (self.upper_bound)(n, k, d.as_straight().is_some()) {
            if e > bound {
                reasons.push(format!("{e} edges exceed the bound {bound}"));
            }
        }
        if let Some(r) = report {
            reasons.extend(r.falsifications.iter().map(|f| format!("{}: {}", f.kind, f.detail)));
        }
        if !reasons.is_empty() {
            self.found.push(Counterexample {
                label: label.to_string(),
                reason: reasons.join("; "),
                drawing: drawing_to_value(d, label),
            });
        }
    }
}

fn timed(id: u8, claim: &'static str, f: impl FnOnce() -> (Status, String)) -> CriterionResult {
    let start = Instant::now();
    let (status, detail) = f();
    CriterionResult {
        id,
        claim,
        status,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

fn within(limit: Duration, start: Instant) -> bool {
    start.elapsed() <= limit
}

/// Runs the whole battery.
pub fn run(opts: &ReproOptions) -> ReproReport {
    let mut guard = Guard {
        upper_bound: opts.upper_bound,
        found: Vec::new(),
        checked: 0,
    };
    let search = SearchOptions {
        budget: opts.budget,
        ..SearchOptions::default()
    };
    let mut criteria = vec![
        timed(1, "star maxima for m = 3, 4", || star_small(search)),
        timed(2, "star probe for m = 5..8", || star_probe(search)),
        timed(3, "base cases for k = 3", || base_cases(search)),
        timed(4, "quad-extremal generator", || quad_sweep(opts, &mut guard)),
        timed(5, "straight-line extremal generator", || {
            straight_sweep(opts, &mut guard)
        }),
        timed(6, "decomposition audit", || audits(opts, &mut guard)),
        timed(7, "k >= 3 constructions", || k_constructions(&mut guard)),
        timed(8, "bound table and nonexistence", || bound_table(opts)),
        timed(9, "oracle equivalence", || oracle(opts)),
    ];
    let guard_row = timed(10, "falsification guard", || {
        if guard.found.is_empty() {
            (
                Status::Pass,
                format!("{} fan-free inputs checked, none exceeds a proven bound", guard.checked),
            )
        } else {
            (
                Status::Fail,
                format!(
                    "{} counterexample(s) archived: {}",
                    guard.found.len(),
                    guard
                        .found
                        .iter()
                        .map(|c| c.label.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            )
        }
    });
    criteria.push(guard_row);
    ReproReport {
        criteria,
        counterexamples: guard.found,
    }
}

fn search_status(e: &SearchError) -> (Status, String) {
    match e {
        SearchError::Inconclusive { budget } => (Status::Inconclusive, format!("node budget {budget} exhausted")),
        other => (Status::Fail, other.to_string()),
    }
}

fn shown(v: Option<usize>) -> String {
    v.map_or_else(|| "none".into(), |v| v.to_string())
}

fn star_small(opts: SearchOptions) -> (Status, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, want) in [(3, 1), (4, 2)] {
        let start = Instant::now();
        match max_arrows(m, 2, SearchFilter::All, opts) {
            Ok(out) => {
                let fast = within(Duration::from_secs(1), start);
                ok &= out.maximum == Some(want) && fast;
                parts.push(format!(
                    "m={m}: {} (want {want}, {:?})",
                    shown(out.maximum),
                    start.elapsed()
                ));
            }
            Err(e) => return search_status(&e),
        }
    }
    (if ok { Status::Pass } else { Status::Fail }, parts.join("; "))
}

fn star_probe(opts: SearchOptions) -> (Status, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    for m in 5..=8usize {
        let limit = Duration::from_secs(if m <= 7 { 120 } else { 900 });
        let start = Instant::now();
        let all = match max_arrows(m, 2, SearchFilter::All, opts) {
            Ok(o) => o,
            Err(e) => return search_status(&e),
        };
        let long = match max_arrows(m, 2, SearchFilter::LongOnly, opts) {
            Ok(o) => o,
            Err(e) => return search_status(&e),
        };
        let max = all.maximum.unwrap_or(0);
        let long_max = long.maximum.unwrap_or(0);
        let in_range = (2 * m - 6..=3 * m - 9).contains(&max);
        let long_ok = long_max <= 2 * m - 8;
        ok &= in_range && long_ok && within(limit, start);
        parts.push(format!(
            "m={m}: max {max}{} long {long_max}",
            if max == 2 * m - 6 { " (= 2m-6)" } else { " (!= 2m-6)" }
        ));
    }
    (if ok { Status::Pass } else { Status::Fail }, parts.join("; "))
}

fn base_cases(opts: SearchOptions) -> (Status, String) {
    let start = Instant::now();
    let rows = match verify_base_cases(3, opts) {
        Ok(r) => r,
        Err(e) => return search_status(&e),
    };
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.matches)
        .map(|r| {
            let witness = r.witness.as_ref().map_or(String::from("none"), |w| w.to_string());
            format!(
                "A({},{},{}) searched {} vs {} (witness {witness})",
                r.heavy,
                r.light,
                r.void,
                shown(r.searched),
                r.formula
            )
        })
        .collect();
    let fast = within(Duration::from_secs(300), start);
    if bad.is_empty() && fast {
        (Status::Pass, format!("all {} rows match", rows.len()))
    } else {
        (
            Status::Fail,
            format!("{} of {} rows differ: {}", bad.len(), rows.len(), bad.join("; ")),
        )
    }
}

fn quad_ns(max_n: usize) -> impl Iterator<Item = usize> {
    std::iter::once(8).chain(10..=max_n)
}

fn quad_sweep(opts: &ReproOptions, guard: &mut Guard) -> (Status, String) {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in quad_ns(opts.max_n) {
        count += 1;
        let d = match gen_quad_extremal(n) {
            Ok(d) => d,
            Err(e) => {
                failures.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let g = d.graph();
        let skeleton = g.edge_subgraph(&(0..2 * n - 4).collect::<Vec<_>>());
        let fan_free = find_k_fans(g, d.crossings(), 2).map(|f| f.is_empty()).unwrap_or(false);
        let simple = validate_graph(n, g.edges()).is_ok();
        if g.edge_count() != 4 * n - 8 || !simple || !fan_free || skeleton.two_coloring().is_none() {
            failures.push(format!(
                "n={n}: edges {} simple {simple} fan-free {fan_free}",
                g.edge_count()
            ));
        }
        guard.observe(&format!("quad-extremal-{n}"), &d.clone().into(), 2, fan_free, None);
    }
    verdict(
        failures,
        format!("{count} drawings: 4n-8 edges, simple, fan-free, bipartite skeleton"),
    )
}

fn straight_sweep(opts: &ReproOptions, guard: &mut Guard) -> (Status, String) {
    let mut failures = Vec::new();
    for n in 6..=opts.max_n {
        let d = match gen_straight_extremal(n) {
            Ok(d) => d,
            Err(e) => {
                failures.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let simple = validate_simplicity(&d).ok;
        let d: Drawing = d.into();
        let fan_free = is_k_fan_free(&d, 2).unwrap_or(false);
        let complete_ok = n != 6 || d.graph().edge_count() == 15;
        if d.graph().edge_count() != 4 * n - 9 || !simple || !fan_free || !complete_ok {
            failures.push(format!(
                "n={n}: edges {} simple {simple} fan-free {fan_free}",
                d.graph().edge_count()
            ));
        }
        guard.observe(&format!("straight-extremal-{n}"), &d, 2, fan_free, None);
    }
    verdict(
        failures,
        format!("n = 6..={}: 4n-9 edges, simple, fan-free, K_6 at n = 6", opts.max_n),
    )
}

fn verdict(failures: Vec<String>, ok: String) -> (Status, String) {
    if failures.is_empty() {
        (Status::Pass, ok)
    } else {
        (Status::Fail, failures.join("; "))
    }
}

/// Checks one audit report; returns a failure description if any.
fn audit_problem(r: &DecompositionReport) -> Option<String> {
    if !r.faces_traced {
        return Some("faces were not traced".into());
    }
    if !(r.complexity_sum_ok && r.chain_sum_ok && r.euler_ok) {
        return Some(format!(
            "identities: sum m {} vs 2|H| {}, sum (p-1) {} vs p-1 {}, euler {}",
            r.complexity_sum,
            2 * r.plane.len(),
            r.chain_excess_sum,
            r.components.saturating_sub(1),
            r.euler_ok
        ));
    }
    r.faces
        .iter()
        .find(|f| !f.pass)
        .map(|f| format!("face {} has {} arrows over bound {}", f.face, f.arrows, f.bound))
}

fn audits(opts: &ReproOptions, guard: &mut Guard) -> (Status, String) {
    let mut failures = Vec::new();
    let (mut arrows, mut same_face, mut excluded) = (0usize, 0usize, 0usize);
    let mut tally = |r: &DecompositionReport| {
        arrows += r.arrows.len();
        excluded += r.excluded.len();
        same_face += r.same_face_edges;
    };
    let mut audited = 0;
    for n in quad_ns(opts.max_n) {
        let d: Drawing = match gen_quad_extremal(n) {
            Ok(d) => d.into(),
            Err(e) => {
                failures.push(format!("quad n={n}: {e}"));
                continue;
            }
        };
        match audit(&d, 2) {
            Ok(r) => {
                audited += 1;
                tally(&r);
                if let Some(p) = audit_problem(&r) {
                    failures.push(format!("quad n={n}: {p}"));
                }
                if !r
                    .faces
                    .iter()
                    .all(|f| f.complexity == 3 && f.chains == 1 && f.arrows == 1)
                {
                    failures.push(format!("quad n={n}: some skeleton triangle lacks exactly one arrow"));
                }
                guard.observe(&format!("audit-quad-{n}"), &d, 2, r.fan_free, Some(&r));
            }
            Err(e) => failures.push(format!("quad n={n}: {e}")),
        }
    }
    for n in 6..=opts.max_n {
        let d: Drawing = match gen_straight_extremal(n) {
            Ok(d) => d.into(),
            Err(e) => {
                failures.push(format!("straight n={n}: {e}"));
                continue;
            }
        };
        match audit(&d, 2) {
            Ok(r) => {
                audited += 1;
                tally(&r);
                if let Some(p) = audit_problem(&r) {
                    failures.push(format!("straight n={n}: {p}"));
                }
                guard.observe(&format!("audit-straight-{n}"), &d, 2, r.fan_free, Some(&r));
            }
            Err(e) => failures.push(format!("straight n={n}: {e}")),
        }
    }
    let mut r = rng(opts.seed);
    for i in 0..opts.random_audits {
        let n = 3 + i % 10;
        let d: Drawing = random_fan_free_drawing(&mut r, &RandomSpec::new(n, usize::MAX), 2).into();
        match audit(&d, 2) {
            Ok(rep) => {
                audited += 1;
                tally(&rep);
                if !rep.fan_free {
                    failures.push(format!("random #{i}: generator produced a fan"));
                }
                if let Some(p) = audit_problem(&rep) {
                    failures.push(format!("random #{i} (n={n}): {p}"));
                }
                guard.observe(&format!("audit-random-{i}"), &d, 2, rep.fan_free, Some(&rep));
            }
            Err(e) => failures.push(format!("random #{i}: {e}")),
        }
    }
    verdict(
        failures,
        format!(
            "{audited} drawings audited, {arrows} arrows; {same_face} of {excluded} excluded edges have both arrows in one face"
        ),
    )
}

fn k_constructions(guard: &mut Guard) -> (Status, String) {
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for k in 3..=5usize {
        match gen_grid(10, k) {
            Ok(d) => {
                let n = d.graph().n() as f64;
                let e = d.graph().edge_count();
                let lower = (k as f64 - 1.0) * (n - 8.0 * (n * k as f64).sqrt());
                let upper = 3 * (k - 1) * (d.graph().n() - 2);
                let d: Drawing = d.into();
                let fan_free = is_k_fan_free(&d, k).unwrap_or(false);
                if !fan_free || (e as f64) < lower || e > upper {
                    failures.push(format!("grid k={k}: {e} edges, fan-free {fan_free}"));
                }
                parts.push(format!("grid k={k}: {e} edges"));
                guard.observe(&format!("grid-10-{k}"), &d, k, fan_free, None);
            }
            Err(e) => failures.push(format!("grid k={k}: {e}")),
        }
    }
    for q in 4..=8usize {
        match gen_kq_subdivision(q) {
            Ok(d) => {
                let d: Drawing = d.into();
                let fan_free = is_k_fan_free(&d, 2).unwrap_or(false);
                let (n, e) = (d.graph().n(), d.graph().edge_count());
                if !fan_free || e != 3 * q * (q - 1) / 2 || n != q + q * (q - 1) {
                    failures.push(format!("K_{q} subdivision: n {n}, {e} edges, fan-free {fan_free}"));
                }
                guard.observe(&format!("kq-subdivision-{q}"), &d, 2, fan_free, None);
            }
            Err(e) => failures.push(format!("K_{q} subdivision: {e}")),
        }
    }
    parts.push("K_q subdivisions q = 4..8 verified".into());
    verdict(failures, parts.join("; "))
}

fn bound_table(opts: &ReproOptions) -> (Status, String) {
    let mut failures = Vec::new();
    let ub = opts.upper_bound;
    for n in 3..=100usize {
        let v = n as i64;
        for k in 2..=6usize {
            let want = if k == 2 {
                4 * v - 8
            } else {
                3 * (k as i64 - 1) * (v - 2)
            };
            let straight_want = if k == 2 { want - 1 } else { want };
            if ub(n, k, false) != Ok(want) || ub(n, k, true) != Ok(straight_want) {
                failures.push(format!("upper_bound({n}, {k})"));
            }
        }
        let exact = match n {
            3..=6 => v * (v - 1) / 2,
            7 | 9 => 4 * v - 9,
            _ => 4 * v - 8,
        };
        if exact_extremal_k2(n).map(|e| e.0) != Ok(exact) {
            failures.push(format!("exact_extremal_k2({n})"));
        }
    }
    let args_hold = [7, 9]
        .iter()
        .all(|&n| nonexistence_argument(n).map(|f| f.holds()).unwrap_or(false));
    if !args_hold {
        failures.push("nonexistence arithmetic".into());
    }
    verdict(
        failures,
        "n = 3..=100 table matches; 20/7 < 3 and 4+3j = 24-3j has no integer root".into(),
    )
}

fn cross_rational(p: &Point, q: &Point, r: &Point) -> BigRational {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

/// Reference fan finder: decides crossings with rational arithmetic on the
/// raw coordinates and enumerates every k-set of edges at a common vertex.
/// Returns one witness per (crosser, apex) with the lexicographically first
/// fan.
pub fn naive_k_fans(d: &StraightLineDrawing, k: usize) -> Vec<FanWitness> {
    let g = d.graph();
    let c = d.coords();
    let m = g.edge_count();
    let sign = |v: BigRational| {
        if v.is_zero() {
            0
        } else if v > BigRational::zero() {
            1
        } else {
            -1
        }
    };
    let crosses = |e: usize, f: usize| {
        let (a, b) = g.edge(e);
        let (p, q) = g.edge(f);
        if a == p || a == q || b == p || b == q {
            return false;
        }
        let s1 = sign(cross_rational(&c[a], &c[b], &c[p]));
        let s2 = sign(cross_rational(&c[a], &c[b], &c[q]));
        let s3 = sign(cross_rational(&c[p], &c[q], &c[a]));
        let s4 = sign(cross_rational(&c[p], &c[q], &c[b]));
        s1 * s2 < 0 && s3 * s4 < 0
    };
    let mut out = Vec::new();
    for crosser in 0..m {
        for apex in 0..g.n() {
            let fan: Vec<usize> = (0..m)
                .filter(|&e| g.is_incident(e, apex) && crosses(crosser, e))
                .collect();
            if let Some(first) = first_k_subset(&fan, k) {
                out.push(FanWitness {
                    crosser,
                    apex,
                    fan: first,
                });
            }
        }
    }
    out
}

/// Lexicographically first k-subset, found by plain enumeration.
fn first_k_subset(items: &[usize], k: usize) -> Option<Vec<usize>> {
    fn rec(items: &[usize], k: usize, from: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == k {
            return true;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            if rec(items, k, i + 1, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    rec(items, k, 0, &mut cur).then_some(cur)
}

fn oracle(opts: &ReproOptions) -> (Status, String) {
    let mut r = rng(opts.seed ^ 0x0ac1e);
    let mut mismatches = Vec::new();
    let mut fans = 0usize;
    for i in 0..opts.oracle_drawings {
        let n = 4 + i % 9;
        let d = random_drawing(&mut r, &RandomSpec::new(n, 20));
        let rel = match compute_crossings(&d) {
            Ok(rel) => rel,
            Err(e) => {
                mismatches.push(format!("#{i}: {e}"));
                continue;
            }
        };
        for k in 2..=4 {
            let fast = find_k_fans(d.graph(), &rel, k).expect("k >= 2");
            let slow = naive_k_fans(&d, k);
            fans += fast.len();
            if fast != slow {
                mismatches.push(format!("#{i} k={k}"));
            }
        }
    }
    if mismatches.is_empty() {
        (
            Status::Pass,
            format!(
                "{} drawings x k = 2,3,4: {fans} witnesses, zero mismatches",
                opts.oracle_drawings
            ),
        )
    } else {
        (
            Status::Fail,
            format!("{} mismatches: {}", mismatches.len(), mismatches.join(", ")),
        )
    }
}

/// Verdict of the bounds check for a single drawing, used by callers that
/// want the guard logic without the whole battery.
pub fn is_falsification(d: &Drawing, k: usize) -> bool {
    let report = check_against_bounds(Subject::Drawing(d), k, d.as_straight().is_some());
    matches!(report, Ok(r) if r.verdict == Verdict::FalsificationEvent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ReproOptions {
        ReproOptions {
            max_n: 12,
            random_audits: 20,
            oracle_drawings: 20,
            ..ReproOptions::default()
        }
    }

    #[test]
    fn first_subset() {
        assert_eq!(first_k_subset(&[3, 5, 9], 2), Some(vec![3, 5]));
        assert_eq!(first_k_subset(&[3], 2), None);
    }

    #[test]
    fn injected_off_by_one_is_caught() {
        fn broken(n: usize, k: usize, s: bool) -> Result<i64, BoundsError> {
            crate::bounds::upper_bound(n, k, s).map(|b| b - 1)
        }
        let report = run(&ReproOptions {
            upper_bound: broken,
            ..small()
        });
        assert_eq!(report.get(8).unwrap().status, Status::Fail);
        assert_eq!(report.get(10).unwrap().status, Status::Fail);
        assert!(!report.counterexamples.is_empty());
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let report = run(&ReproOptions { budget: 1, ..small() });
        for id in 1..=3 {
            assert_eq!(report.get(id).unwrap().status, Status::Inconclusive, "row {id}");
        }
        for id in 4..=10 {
            assert_eq!(report.get(id).unwrap().status, Status::Pass, "row {id}");
        }
        assert_eq!(report.exit_code(), 3);
    }
}
