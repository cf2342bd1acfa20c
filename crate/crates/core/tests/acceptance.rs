//! One pass/fail line per acceptance criterion.
//!
//! Suites share a runner, so a suite's time excludes enumerations an
//! earlier suite already paid for, as with a warm cache.

#[path = "support/props.rs"]
mod props;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wemono::finquot::Engine;
use wemono::report::{Report, Runner, Status, Suite};

struct Line {
    n: usize,
    name: &'static str,
    problems: Vec<String>,
    elapsed: Duration,
}

/// Claims that must be present and not failed; `strict` ones must be Verified.
fn require(r: &Report, strict: &[&str], lenient: &[&str]) -> Vec<String> {
    let mut out = vec![];
    for (ids, must_verify) in [(strict, true), (lenient, false)] {
        for id in ids {
            match r.claim(id) {
                None => out.push(format!("{id} missing")),
                Some(c) if c.status == Status::Failed => out.push(format!("{id} failed: {}", c.summary)),
                Some(c) if must_verify && c.status != Status::Verified => out.push(format!("{id} is {}", c.status)),
                Some(_) => {}
            }
        }
    }
    out
}

fn within(problems: &mut Vec<String>, elapsed: Duration, limit: Duration) {
    if elapsed > limit {
        problems.push(format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()));
    }
}

fn timed(runner: &Runner, suite: Suite) -> (Report, Duration) {
    let t = Instant::now();
    let r = runner.run(&[suite]);
    (r, t.elapsed())
}

fn main() -> ExitCode {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let runner = Runner::new(Engine { jobs, cache_dir: None });
    let secs = Duration::from_secs;
    let mut lines = vec![];

    let (r, t) = timed(&runner, Suite::Presentation);
    for (n, name, ids) in [
        (1, "presentation relations", &["cor2.3.relations", "thm2.2.relations", "lemma4.3.relations"][..]),
        (2, "generator identities", &["lemma2.4.generators"][..]),
    ] {
        let mut p = require(&r, ids, &[]);
        within(&mut p, t, secs(1));
        lines.push(Line { n, name, problems: p, elapsed: t });
    }

    let (r, t) = timed(&runner, Suite::TheoremA);
    let mut p = require(&r, &["thmA.index", "thmA.cond1", "thmA.mod2", "thmA.cond2", "thmA.filter"], &["thmA.filter.literal"]);
    within(&mut p, t, secs(300));
    lines.push(Line { n: 3, name: "image of the monodromy", problems: p, elapsed: t });
    lines.push(Line { n: 4, name: "group orders", problems: require(&r, &["lemma3.2.sequence", "thmA.orders"], &[]), elapsed: t });

    let (r, t) = timed(&runner, Suite::Torsion);
    let p = require(&r, &["lemma4.1.table", "lemma4.1.p5", "lemma4.1.mod2", "lemma4.1.z0"], &["lemma4.1.torsion_free"]);
    lines.push(Line { n: 5, name: "torsion obstructions", problems: p, elapsed: t });

    let (r, t) = timed(&runner, Suite::Cusps);
    let mut p = require(&r, &["prop4.3.cosets", "prop4.3.orbits", "prop4.3.membership"], &["prop4.3.pairing"]);
    within(&mut p, t, secs(10));
    lines.push(Line { n: 6, name: "cusps", problems: p, elapsed: t });

    let (r, t) = timed(&runner, Suite::Resolutions);
    let ids = ["lambda8", "lambda24", "lambda40", "lambda120"].map(|s| format!("sec5.{s}.cycle"));
    let mut strict: Vec<&str> = ids.iter().map(String::as_str).collect();
    strict.extend(["sec5.lambda24.vertices", "sec5.lambda120.boundary"]);
    let mut p = require(&r, &strict, &[]);
    within(&mut p, t, secs(5));
    lines.push(Line { n: 7, name: "cusp resolutions", problems: p, elapsed: t });

    let (r, t) = timed(&runner, Suite::Chern);
    lines.push(Line {
        n: 8,
        name: "invariants",
        problems: require(&r, &["lemma4.2.euler", "thmB.invariants", "thmB.noether"], &[]),
        elapsed: t,
    });

    let (r, t) = timed(&runner, Suite::Cover);
    lines.push(Line { n: 9, name: "genus-one cover", problems: require(&r, &["prop6.1.lifts", "prop6.1.genus"], &[]), elapsed: t });

    let (r, t) = timed(&runner, Suite::Plane);
    let cases: Vec<String> =
        ["1a", "1b", "1c", "1d", "1e", "1f", "1g", "1h", "2a", "2b", "2c", "2d"].iter().map(|c| format!("prop6.5.case{c}")).collect();
    let strict = [
        "fig10.incidence",
        "fig14.orbits",
        "lemma6.4.family",
        "lemma6.4.even",
        "prop6.5.cubic1",
        "prop6.5.cubic2",
        "prop6.5.smooth",
        "lemma6.5.profile1",
        "lemma6.5.profile2",
        "lemma6.6.contact1",
        "lemma6.6.contact2",
    ];
    let lenient: Vec<&str> = cases.iter().map(String::as_str).chain(["fixture.errata"]).collect();
    let mut p = require(&r, &strict, &lenient);
    within(&mut p, t, secs(30));
    lines.push(Line { n: 10, name: "plane cubics", problems: p, elapsed: t });

    let t = Instant::now();
    let p: Vec<String> = props::run_all().into_iter().filter_map(|(name, res)| res.err().map(|e| format!("{name}: {e}"))).collect();
    lines.push(Line { n: 11, name: "property suites", problems: p, elapsed: t.elapsed() });

    let mut failed = 0;
    for l in &lines {
        let verdict = if l.problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {:<24} {:>7.2} s", l.n, l.name, l.elapsed.as_secs_f64());
        for p in &l.problems {
            println!("        {p}");
        }
        failed += usize::from(!l.problems.is_empty());
    }
    println!("{} of {} criteria pass", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
