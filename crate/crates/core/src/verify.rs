//! Self-checks against the published tables and the theorems they support.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::engine::{ExtEngine, TableRow};
use crate::golden::{dim_string, GoldenTable, GoldenTableId};
use crate::h2::{ext2_self_tower, h2_cross_check, TowerSpec};
use crate::strings::{
    count_c_strings, doubling_family, enumerate_b_strings, growth_bounds, partitions_of_unity, ratio,
    DEFAULT_ENUM_CAP,
};
use crate::trace::{expand_trace, DEFAULT_TRACE_CAP};
use crate::weights::{Characteristic, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Tables,
    Theorem1,
    H2Cross,
    Bijection,
    Stability,
    Bounds,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Tables,
        Suite::Theorem1,
        Suite::H2Cross,
        Suite::Bijection,
        Suite::Stability,
        Suite::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Theorem1 => "theorem1",
            Suite::H2Cross => "h2-cross",
            Suite::Bijection => "bijection",
            Suite::Stability => "stability",
            Suite::Bounds => "bounds",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "ok  " } else { "FAIL" };
        write!(
            f,
            "{verdict} [{}] {}: expected {}, actual {}",
            self.suite, self.name, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, suite: &'static str, name: String, expected: impl ToString, actual: impl ToString, passed: bool) {
        self.checks.push(Check {
            suite,
            name,
            expected: expected.to_string(),
            actual: actual.to_string(),
            passed,
        });
    }

    fn eq<T: PartialEq + ToString>(&mut self, suite: &'static str, name: String, expected: T, actual: T) {
        let passed = expected == actual;
        self.push(suite, name, expected, actual, passed);
    }
}

pub fn run(suite: Suite) -> Report {
    match suite {
        Suite::All => {
            let parts: Vec<Report> = std::thread::scope(|s| {
                let handles: Vec<_> = Suite::EACH.iter().map(|&one| s.spawn(move || run(one))).collect();
                handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
            });
            Report {
                checks: parts.into_iter().flat_map(|r| r.checks).collect(),
            }
        }
        Suite::Tables => tables(),
        Suite::Theorem1 => theorem1(),
        Suite::H2Cross => h2_cross(),
        Suite::Bijection => bijection(),
        Suite::Stability => stability(),
        Suite::Bounds => bounds(),
    }
}

fn tables() -> Report {
    let mut all = Vec::new();
    for id in GoldenTableId::ALL {
        all.extend(GoldenTable::load(id).rows);
    }
    check_rows(&all)
}

/// Checks characteristic-two table rows. Rows that appear in a published table
/// are compared with it; others are recomputed.
pub fn check_rows(rows: &[TableRow]) -> Report {
    let golden: Vec<GoldenTable> = GoldenTableId::ALL.iter().map(|&id| GoldenTable::load(id)).collect();
    let mut engine = ExtEngine::new(Characteristic::TWO);
    let mut report = Report::default();
    for row in rows {
        let computed = engine.cohomology_dim(row.m, &row.weight);
        let published = golden.iter().find_map(|t| t.find(row.m, &row.weight).map(|g| (t.id, g)));
        let label = format!("H^{}(L({}))", row.m, row.weight);
        match published {
            Some((id, g)) => {
                // both the supplied row and the engine must agree with the table
                let passed = g.dim == row.dim && g.dim == computed;
                report.push(
                    "tables",
                    format!("{} {label}", id.name()),
                    dim_string(&g.dim),
                    format!("{} (engine {})", dim_string(&row.dim), dim_string(&computed)),
                    passed,
                );
            }
            None => report.eq("tables", format!("recomputed {label}"), dim_string(&computed), dim_string(&row.dim)),
        }
    }
    report
}

fn theorem1() -> Report {
    let mut report = Report::default();
    for pv in [5u32, 7, 11] {
        let p = Characteristic::new(pv).unwrap();
        for n in 0..=10 {
            let got = ext2_self_tower(TowerSpec::new(n, p).unwrap());
            report.eq("theorem1", format!("p={pv} n={n}"), BigUint::from(n), got);
        }
    }
    report
}

fn h2_cross() -> Report {
    let mut report = Report::default();
    for pv in [5u32, 7] {
        let p = Characteristic::new(pv).unwrap();
        let bound = 2 * (pv as u64).pow(3);
        let bad = h2_cross_check(p, bound).unwrap();
        let listed: Vec<String> = bad.iter().map(Weight::to_string).collect();
        report.push(
            "h2-cross",
            format!("p={pv} mu<={bound}"),
            "no disagreements",
            format!("{} disagreements {listed:?}", bad.len()),
            bad.is_empty(),
        );
    }
    report
}

fn bijection() -> Report {
    let mut report = Report::default();
    let mut engine = ExtEngine::new(Characteristic::TWO);
    for m in 1..=10u32 {
        for n in 1..=10u32 {
            let simple = Weight::power_of_two(n);
            let bs = enumerate_b_strings(m, n as usize, DEFAULT_ENUM_CAP).unwrap();
            let dim = engine.cohomology_dim(m, &simple);
            report.eq("bijection", format!("#b-strings(m={m}, n={n})"), dim, BigUint::from(bs.len()));
            let traces = expand_trace(m, &simple, DEFAULT_TRACE_CAP).unwrap();
            let unmatched = bs
                .iter()
                .filter(|b| {
                    let a = b.a_string();
                    !traces.iter().any(|t| t.is_nontrivial() && t.choices == a.entries())
                })
                .count();
            report.eq("bijection", format!("a-strings nontrivial(m={m}, n={n})"), 0, unmatched);
        }
    }
    report
}

fn stability() -> Report {
    let mut report = Report::default();
    let mut engine = ExtEngine::new(Characteristic::TWO);
    for m in 2..=10u32 {
        let prof = engine.stability_profile(m, m + 3).unwrap();
        let stable = &prof[m as usize];
        let below = prof[..m as usize].iter().all(|v| v < stable);
        let flat = prof[m as usize..].iter().all(|v| v == stable);
        let shown: Vec<String> = prof.iter().map(dim_string).collect();
        report.push(
            "stability",
            format!("m={m}"),
            format!("strictly below {stable} for r<{m}, constant for r>={m}"),
            shown.join(","),
            below && flat,
        );
    }
    report
}

fn bounds() -> Report {
    let mut report = Report::default();
    let mut engine = ExtEngine::new(Characteristic::TWO);
    for m in 2..=31u32 {
        let pou = partitions_of_unity(m);
        let cs = count_c_strings(m - 1);
        let coh = engine.cohomology_dim(m, &Weight::power_of_two(m));
        let passed = pou == cs && cs == coh;
        report.push(
            "bounds",
            format!("identification m={m}"),
            format!("partitions {pou}"),
            format!("c-strings {cs}, cohomology {coh}"),
            passed,
        );
    }
    for m in 3..=12u32 {
        let v = engine.cohomology_dim(2 * m, &Weight::power_of_two(2 * m));
        let floor = BigUint::one() << (m - 1);
        report.push("bounds", format!("H^{0}(L(2^{0})) >= 2^{1}", 2 * m, m - 1), format!(">= {floor}"), &v, v >= floor);
    }
    for t in 0..=12u32 {
        let fam = doubling_family(t);
        let ok = fam.len() == 1 << t
            && fam.iter().all(|c| c.is_valid() && c.entries().len() == 2 * t as usize + 1);
        report.push("bounds", format!("doubling family t={t}"), format!("{} valid c-strings", 1u64 << t), fam.len(), ok);
    }
    let growth = growth_bounds(30).unwrap();
    for row in &growth.rows {
        report.push(
            "bounds",
            format!("Fib({}) <= c({}) <= 2^{}", row.k - 1, row.k, row.k - 1),
            format!("[{}, {}]", row.lower, row.upper),
            &row.count,
            row.holds(),
        );
    }
    let r = ratio(&count_c_strings(31), &count_c_strings(30));
    report.push("bounds", "c(31)/c(30) (approximate)".into(), "in [1.79, 1.80]", format!("{r:.6}"), (1.79..=1.80).contains(&r));
    report
}
