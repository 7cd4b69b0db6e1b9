use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hoplab_core::oracle::search;
use hoplab_core::{
    cyclic_automaton, de_bruijn_sequence, dfa_equivalent, enumerate_cyclic, exhaustive_tie_search, hopcroft_minimize,
    is_cover_automaton, korner_minimize, merge_similar, merge_to_fixpoint, minimal_dfca_check, moore_partition,
    quotient, random_dfa, random_lasso, similar_states, state_levels, CoverSpec, Dfa, Error, Objective, SearchOptions,
    Strategy, TiePolicy,
};
use rayon::prelude::*;

const DENSITIES: [f64; 4] = [0.1, 0.3, 0.5, 0.8];

/// Unary runs gathered from criteria 1-4 for the upper-bound check.
#[derive(Default)]
struct UnaryRuns(Vec<(String, usize, usize)>);

impl UnaryRuns {
    fn add(&mut self, label: impl Into<String>, states: usize, mass: usize) {
        self.0.push((label.into(), states, mass));
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: &str, title: &str, elapsed: Duration, outcome: &Outcome) {
    let verdict = if outcome.pass { "PASS" } else { "FAIL" };
    println!("{verdict} criterion {id} ({title}): {} [{:.2?}]", outcome.detail, elapsed);
}

fn de_bruijn(order: usize) -> Dfa {
    cyclic_automaton(&de_bruijn_sequence(order).unwrap(), 0).unwrap()
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

fn worst_case(order: usize) -> usize {
    order << (order - 1)
}

fn criterion_1(runs: &mut UnaryRuns) -> Outcome {
    let mut misses = Vec::new();
    let mut masses = Vec::new();
    for n in 3..=11 {
        let d = de_bruijn(n);
        let run = hopcroft_minimize(&d, Strategy::Fifo, TiePolicy::lookahead()).unwrap();
        let mass = run.stats.total_splitter_mass;
        runs.add(format!("de Bruijn {n} fifo/lookahead"), d.num_states, mass);
        masses.push(format!("{n}:{mass}"));
        if mass == worst_case(n) {
            continue;
        }
        let fallback =
            (n <= 5).then(|| exhaustive_tie_search(&d, Strategy::Fifo, Objective::TotalSplitterMass).ok()).flatten();
        match fallback {
            Some(r) if r.objective == worst_case(n) => {
                runs.add(format!("de Bruijn {n} fifo search"), d.num_states, r.objective);
                masses.push(format!("(search {n}:{})", r.objective));
            }
            _ => misses.push(n),
        }
    }
    Outcome {
        pass: misses.is_empty(),
        detail: format!("mass by order {}; expected n*2^(n-1); misses {misses:?}", masses.join(" ")),
    }
}

fn criterion_2(runs: &mut UnaryRuns) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for order in [3, 4] {
        let d = de_bruijn(order);
        let options = SearchOptions { budget: 1_000_000, ..SearchOptions::new(Strategy::Lifo) };
        match search(&d, &options) {
            Ok(r) => {
                runs.add(format!("de Bruijn {order} lifo search"), d.num_states, r.objective);
                let below = r.objective < worst_case(order);
                pass &= below;
                parts.push(format!(
                    "order {order}: lifo max {} vs {} ({} branches){}",
                    r.objective,
                    worst_case(order),
                    r.branch_count,
                    if below { "" } else { " not strictly below" }
                ));
            }
            Err(Error::SearchBudgetExceeded { best, .. }) if order > 3 => {
                parts.push(format!("order {order}: budget exhausted, best so far {}", best.objective));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("order {order}: {e}"));
            }
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn criterion_3(runs: &mut UnaryRuns) -> Outcome {
    let rows = enumerate_cyclic(8, Strategy::Fifo).unwrap();
    for r in &rows {
        runs.add(format!("cyclic {} fifo search", r.pattern), 8, r.max_mass);
    }
    let attaining: Vec<_> = rows.iter().filter(|r| r.max_mass == 12).collect();
    let de_bruijn_count = rows.iter().filter(|r| r.is_de_bruijn).count();
    let intruders: Vec<String> = attaining.iter().filter(|r| !r.is_de_bruijn).map(|r| r.pattern.to_string()).collect();
    let short: Vec<String> =
        rows.iter().filter(|r| r.is_de_bruijn && r.max_mass != 12).map(|r| r.pattern.to_string()).collect();
    let above = rows.iter().filter(|r| r.max_mass > 12).count();
    Outcome {
        pass: rows.len() == 256
            && attaining.len() == 16
            && de_bruijn_count == 16
            && intruders.is_empty()
            && short.is_empty()
            && above == 0,
        detail: format!(
            "{} rows, {} attain 12, {} de Bruijn, de Bruijn below 12: {:?}, non-de Bruijn at 12: {} {:?}",
            rows.len(),
            attaining.len(),
            de_bruijn_count,
            short,
            intruders.len(),
            intruders
        ),
    }
}

fn unary_corpus() -> Vec<(String, Dfa)> {
    (0..500u64)
        .map(|seed| {
            let n = 1 + (seed as usize * 7) % 64;
            let density = DENSITIES[seed as usize % DENSITIES.len()];
            if seed % 2 == 0 {
                (format!("random unary seed {seed}"), random_dfa(n, 1, density, seed))
            } else {
                (format!("lasso seed {seed}"), random_lasso(n, density, seed))
            }
        })
        .collect()
}

fn criterion_4(runs: &mut UnaryRuns) -> Outcome {
    let corpus = unary_corpus();
    let mut checked = 0usize;
    let mut violations = 0usize;
    let mut violating_inputs = BTreeSet::new();
    let mut first = None;
    for (label, d) in &corpus {
        for strategy in Strategy::ALL {
            for policy in TiePolicy::all_untraced() {
                let run = hopcroft_minimize(d, strategy, policy).unwrap();
                runs.add(format!("{label} {strategy} {policy}"), d.num_states, run.stats.total_splitter_mass);
                for r in &run.stats.per_splitter_added {
                    checked += 1;
                    if r.added > r.size {
                        violations += 1;
                        violating_inputs.insert(label.clone());
                        first.get_or_insert_with(|| {
                            format!("{label} {strategy} {policy}: m={} added={}", r.size, r.added)
                        });
                    }
                }
            }
        }
    }
    let lassos = violating_inputs.iter().filter(|l| l.starts_with("lasso")).count();
    Outcome {
        pass: violations == 0,
        detail: format!(
            "{} inputs x 2 strategies x 6 policies, {checked} splitters, {violations} with added > m on {} inputs ({lassos} lassos); first: {}",
            corpus.len(),
            violating_inputs.len(),
            first.unwrap_or_else(|| "none".into())
        ),
    }
}

fn criterion_5() -> Outcome {
    let failures: Vec<String> = (0..500u64)
        .into_par_iter()
        .flat_map_iter(|seed| {
            let n = 1 + (seed as usize * 13) % 64;
            let k = 1 + seed as usize % 2;
            let d = random_dfa(n, k, DENSITIES[(seed as usize / 2) % DENSITIES.len()], seed);
            let oracle = moore_partition(&d).unwrap();
            let mut bad = Vec::new();
            for strategy in Strategy::ALL {
                for policy in TiePolicy::all_untraced() {
                    let run = hopcroft_minimize(&d, strategy, policy).unwrap();
                    if run.partition != oracle {
                        bad.push(format!("seed {seed} {strategy} {policy}: partition differs"));
                        continue;
                    }
                    match quotient(&d, &run.partition).and_then(|q| dfa_equivalent(&d, &q)) {
                        Ok(true) => {}
                        other => bad.push(format!("seed {seed} {strategy} {policy}: quotient {other:?}")),
                    }
                }
            }
            bad
        })
        .collect();
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "500 inputs x 12 runs, {} violations {:?}",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    }
}

fn criterion_6() -> Outcome {
    let spec = CoverSpec { l: 8 };
    let example = cyclic_automaton(&"11101000".parse().unwrap(), 0).unwrap();
    let lengths = BTreeSet::from([0, 1, 2, 4, 8]);
    let mut problems = Vec::new();

    if !is_cover_automaton(&example, &lengths, spec).unwrap() {
        problems.push("(a) example is not a cover automaton".to_string());
    }
    if !similar_states(&example, spec, 3, 7).unwrap() {
        problems.push("(b) p3 and p7 not similar".to_string());
    }
    let pipeline = merge_to_fixpoint(&example, spec, Strategy::Fifo, TiePolicy::min_state()).unwrap();
    let out = &pipeline.minimized;
    if !(out.num_states < example.num_states
        && is_cover_automaton(out, &lengths, spec).unwrap()
        && minimal_dfca_check(out, spec).unwrap())
    {
        problems.push(format!("(c) cover-minimize produced {} states", out.num_states));
    }

    let mut runs = 0usize;
    let mut unsound = [0usize; 2];
    for seed in 0..200u64 {
        let n = 1 + (seed as usize * 7) % 64;
        let d = random_lasso(n, DENSITIES[seed as usize % DENSITIES.len()], seed);
        let spec = CoverSpec { l: 1 + (seed as usize * 17) % (2 * n) };
        let covered = d.accepted_lengths(spec.l).unwrap();
        for (i, strategy) in Strategy::ALL.into_iter().enumerate() {
            for policy in TiePolicy::all_untraced() {
                runs += 1;
                let blocks = korner_minimize(&d, spec, strategy, policy).unwrap().partition;
                let dissimilar = blocks.blocks().into_iter().find_map(|block| {
                    block.iter().enumerate().find_map(|(i, &p)| {
                        block[i + 1..].iter().find(|&&q| !similar_states(&d, spec, p, q).unwrap()).map(|&q| (p, q))
                    })
                });
                if let Some((p, q)) = dissimilar {
                    unsound[i] += 1;
                    problems.push(format!("seed {seed} n={n} l={} {strategy} {policy}: {p} !~ {q}", spec.l));
                    continue;
                }
                let merged = merge_similar(&d, &blocks, spec).unwrap();
                if !is_cover_automaton(&merged, &covered, spec).unwrap() {
                    problems
                        .push(format!("seed {seed} {strategy} {policy} l={}: merge lost the cover property", spec.l));
                }
                if state_levels(&merged).is_err() {
                    problems.push(format!("seed {seed} {strategy} {policy}: merged automaton has unreachable states"));
                }
            }
        }
    }
    Outcome {
        pass: problems.is_empty(),
        detail: format!(
            "example: {} -> {} states; {runs} random cover runs; dissimilar blocks fifo {} lifo {}; {} violations {:?}",
            example.num_states,
            out.num_states,
            unsound[0],
            unsound[1],
            problems.len(),
            problems.iter().take(3).collect::<Vec<_>>()
        ),
    }
}

fn criterion_7(runs: &UnaryRuns) -> Outcome {
    let over: Vec<&(String, usize, usize)> = runs.0.iter().filter(|(_, n, mass)| *mass > n * ceil_log2(*n)).collect();
    Outcome {
        pass: over.is_empty(),
        detail: format!(
            "{} unary runs, {} above |Q|*ceil(log2|Q|) {:?}",
            runs.0.len(),
            over.len(),
            over.iter().take(3).collect::<Vec<_>>()
        ),
    }
}

fn main() -> ExitCode {
    let mut runs = UnaryRuns::default();
    let mut all_pass = true;
    let mut check = |id: &str, title: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let started = Instant::now();
        let mut outcome = f();
        let elapsed = started.elapsed();
        if let Some(limit) = limit.filter(|&limit| elapsed > limit) {
            outcome.pass = false;
            outcome.detail.push_str(&format!("; slower than {limit:?}"));
        }
        report(id, title, elapsed, &outcome);
        all_pass &= outcome.pass;
    };

    check("1", "worst case on de Bruijn inputs", Some(Duration::from_secs(5)), &mut || criterion_1(&mut runs));
    check("2", "stack strictly below worst case", Some(Duration::from_secs(60)), &mut || criterion_2(&mut runs));
    check("3", "only de Bruijn patterns attain the maximum", Some(Duration::from_secs(300)), &mut || {
        criterion_3(&mut runs)
    });
    check("4", "splitter of size m adds at most m states", None, &mut || criterion_4(&mut runs));
    check("5", "agreement with the Moore oracle", None, &mut criterion_5);
    check("6", "cover automata", None, &mut criterion_6);
    check("7", "mass at most |Q|*ceil(log2|Q|)", None, &mut || criterion_7(&runs));

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
