//! Acceptance suite: one PASS/FAIL line per criterion, each with its time
//! limit. Run with `cargo test -p permcode-cli --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use permcode::bounds::{
    bound_crossover, dominance, gv_lower_bound, lower_bound_new, lower_bound_old, omega_excess,
    sphere_packing_upper_bound, Dominance,
};
use permcode::codes::{ball_members, exact_max_code, greedy_code, Permutation, ScanOrder};
use permcode::identities::{bm_count, lemma_lhs, lemma_rhs, telescoping_check};
use permcode::omega::{omega_closed_form, omega_factor};
use permcode::permanent::{ball_volume, permanent_enumerate, volume_with, Engine};
use permcode::scalar::binomial;
use permcode::structmat::{build_klove_matrix, build_omega_matrix};
use permcode::DEFAULT_ENUMERATION_BUDGET as BUDGET;

struct Verdict {
    id: u32,
    title: &'static str,
    limit: Duration,
    failures: Vec<String>,
    elapsed: Duration,
}

impl Verdict {
    fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed < self.limit
    }

    fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} criterion {:>2}: {} ({:.3} s, limit {} s)",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        );
        if self.elapsed >= self.limit {
            line.push_str(" [over time]");
        }
        for f in self.failures.iter().take(5) {
            line.push_str("\n      ");
            line.push_str(f);
        }
        line
    }
}

fn criterion(
    id: u32,
    title: &'static str,
    limit_secs: u64,
    body: impl FnOnce(&mut Vec<String>),
) -> Verdict {
    let mut failures = Vec::new();
    let start = Instant::now();
    body(&mut failures);
    Verdict {
        id,
        title,
        limit: Duration::from_secs(limit_secs),
        failures,
        elapsed: start.elapsed(),
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn fibonacci(k: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::from(1u32));
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

const FIRST_OMEGA_VALUES: [&str; 9] = [
    "3",
    "18",
    "170",
    "2200",
    "36232",
    "725200",
    "17095248",
    "463936896",
    "14246942336",
];

fn c1_omega_values(f: &mut Vec<String>) {
    for (d, expected) in (1..=9).zip(FIRST_OMEGA_VALUES) {
        let out = Command::new(env!("CARGO_BIN_EXE_permcode"))
            .args(["omega", "--d", &d.to_string(), "--x", "2"])
            .output()
            .expect("binary runs");
        let stdout = String::from_utf8_lossy(&out.stdout);
        check(f, out.status.success() && stdout.trim() == expected, || {
            format!("d={d}: got {:?} (status {})", stdout.trim(), out.status)
        });
    }
}

fn c2_closed_form_vs_permanent(f: &mut Vec<String>) {
    for d in 1..=8u32 {
        let closed = omega_closed_form(d).unwrap();
        let permanent =
            permanent_enumerate(&build_omega_matrix(d as usize).unwrap(), BUDGET).unwrap();
        check(f, closed == permanent, || {
            format!("d={d}: {closed} vs {permanent}")
        });
        check(f, closed.degree() == Some(d as usize), || {
            format!("d={d}: degree")
        });
    }
}

fn c3_lemma(f: &mut Vec<String>) {
    for m in 1..=5 {
        for n in 1..=8 {
            let lhs = lemma_lhs(m, n, BUDGET).unwrap();
            let rhs = lemma_rhs(m, n).unwrap();
            check(f, lhs == rhs, || format!("m={m} n={n}: {lhs} != {rhs}"));
        }
    }
}

fn c4_telescoping(f: &mut Vec<String>) {
    for i in 0..=4 {
        for n in 1..=8 {
            for c in 1..=n {
                let r = telescoping_check(i, n, c).unwrap();
                check(f, r.holds && r.lhs == r.rhs, || {
                    format!("i={i} n={n} c={c}")
                });
            }
        }
    }
}

fn c5_bm(f: &mut Vec<String>) {
    for d in 1..=10u32 {
        for m in 0..=d {
            let count = bm_count(d, m).unwrap();
            let closed = binomial(u64::from(d), u64::from(m)) * BigUint::from(d - m + 1).pow(d);
            let lemma = lemma_lhs(m, d - m + 1, BUDGET).unwrap();
            check(f, count == closed && count == lemma, || {
                format!("d={d} m={m}: count {count}, closed {closed}, lemma {lemma}")
            });
        }
    }
}

fn c6_engines(f: &mut Vec<String>) {
    for d in 0..=4 {
        for n in 1..=10 {
            let values: Vec<BigUint> = Engine::ALL
                .iter()
                .map(|&e| volume_with(e, d, n, BUDGET).unwrap())
                .collect();
            check(f, values.windows(2).all(|w| w[0] == w[1]), || {
                format!("d={d} n={n}: {values:?}")
            });
        }
    }
    for n in 1..=20 {
        let v = ball_volume(1, n).unwrap();
        let fib = fibonacci(n + 1);
        check(f, v == fib, || format!("V(1,{n}) = {v}, Fibonacci = {fib}"));
    }
}

/// `ln omega_d` from the exact integer `Omega_d(2)`, independent of the
/// library's log-space routine.
fn ln_omega_exact(d: u32) -> f64 {
    let big = omega_closed_form(d).unwrap().eval(&BigInt::from(2));
    let ln_big = big.to_f64().unwrap().ln();
    ln_big + f64::from(d) - f64::from(d) * f64::from(2 * d + 1).ln()
}

fn c7_bounds(f: &mut Vec<String>) {
    for d in 1..=3u32 {
        for n in u64::from(d) + 1..=14 {
            let exact = ball_volume(d as usize, n as usize)
                .unwrap()
                .to_f64()
                .unwrap()
                .ln();
            let old = lower_bound_old::<f64>(d, n).unwrap();
            let new = lower_bound_new::<f64>(d, n).unwrap();
            check(f, exact > old && exact > new, || {
                format!("d={d} n={n}: exact {exact} old {old} new {new}")
            });
            let nf = n as f64;
            let df = f64::from(d);
            let predicted = 0.5 * ((nf + 2.0 * df) / nf).ln()
                - 2.0 * (ln_omega_exact(d) - df * std::f64::consts::LN_2);
            let err = ((new - old) - predicted).abs();
            check(f, err <= 1e-12 * (1.0 + predicted.abs()), || {
                format!("d={d} n={n}: ratio identity off by {err:e}")
            });
        }
    }
}

fn c8_klove(f: &mut Vec<String>) {
    for d in 1..=5usize {
        for n in 2 * d + 1..=40 {
            let b = build_klove_matrix(d, n).unwrap();
            let target = (2 * d + 1) as u32;
            let ok = b
                .row_sums()
                .iter()
                .chain(b.col_sums().iter())
                .all(|&s| s == target);
            check(f, ok, || {
                format!(
                    "d={d} n={n}: line sums {:?} / {:?}",
                    b.row_sums(),
                    b.col_sums()
                )
            });
        }
    }
}

fn c9_bound_comparison(f: &mut Vec<String>, findings: &mut Vec<String>) {
    for d in 1..=20u32 {
        let exact = ln_omega_exact(d);
        let library = omega_factor::<f64>(d).unwrap();
        check(
            f,
            (exact - library).abs() <= 1e-12 * exact.abs().max(1.0),
            || format!("d={d}: ln omega {library} vs exact {exact}"),
        );
        let excess = exact - f64::from(d) * std::f64::consts::LN_2;
        let lib_excess = omega_excess::<f64>(d).unwrap();
        check(f, excess.signum() == lib_excess.signum(), || {
            format!("d={d}: excess sign")
        });

        // brute-force scan of where the refined bound is the larger one
        let n_max = 2000;
        let wins: Vec<u64> = (1..=n_max)
            .filter(|&n| {
                lower_bound_new::<f64>(d, n).unwrap() > lower_bound_old::<f64>(d, n).unwrap()
            })
            .collect();
        let crossover = bound_crossover(d, n_max).unwrap();
        check(f, crossover == wins.first().copied(), || {
            format!("d={d}: crossover {crossover:?}, scan {:?}", wins.first())
        });
        let contiguous = wins.iter().enumerate().all(|(k, &n)| n == k as u64 + 1);
        check(f, contiguous, || {
            format!("d={d}: winning range is not an initial segment")
        });
        let dom = dominance(d).unwrap();
        let consistent = match dom {
            Dominance::Never => wins.is_empty(),
            Dominance::Through(last) => wins.len() as u64 == last.min(n_max),
            Dominance::Always => wins.len() as u64 == n_max,
        };
        check(f, consistent, || {
            format!("d={d}: dominance {dom:?}, scan wins {}", wins.len())
        });
        check(
            f,
            (excess > 0.0) == matches!(dom, Dominance::Never | Dominance::Through(_)),
            || format!("d={d}: excess {excess} vs dominance {dom:?}"),
        );
        findings.push(format!(
            "d={d:>2} ln omega_d - d ln 2 = {excess:+.6} ({}), crossover {}, new bound larger for {}",
            if excess > 0.0 { "omega_d > 2^d" } else { "omega_d < 2^d" },
            crossover.map_or_else(|| "none".to_string(), |n| n.to_string()),
            match dom {
                Dominance::Never => "no n".to_string(),
                Dominance::Through(last) => format!("1 <= n <= {last}"),
                Dominance::Always => "all n".to_string(),
            }
        ));
    }
    let omega_1 = omega_factor::<f64>(1).unwrap().exp();
    check(f, (omega_1 - std::f64::consts::E).abs() <= 1e-12, || {
        format!("omega_1 = {omega_1}, e = {}", std::f64::consts::E)
    });
}

fn c10_codes(f: &mut Vec<String>) {
    for n in 1..=5u64 {
        for dist in 1..=n {
            let gv = gv_lower_bound(n, dist).unwrap();
            let packing = sphere_packing_upper_bound(n, dist).unwrap();
            for order in [ScanOrder::Lex, ScanOrder::Revlex] {
                let greedy = greedy_code(n as usize, dist as u32, order).unwrap();
                check(
                    f,
                    greedy.is_valid() && BigUint::from(greedy.size()) >= gv,
                    || {
                        format!(
                            "n={n} D={dist} {order:?}: greedy {} < GV {gv}",
                            greedy.size()
                        )
                    },
                );
            }
            let exact = exact_max_code(n as usize, dist as u32).unwrap();
            check(
                f,
                exact.is_valid() && BigUint::from(exact.size()) <= packing,
                || format!("n={n} D={dist}: exact {} > packing {packing}", exact.size()),
            );
        }
    }
    for n in 1..=8usize {
        let centers = [
            Permutation::identity(n),
            Permutation::new((1..=n as u32).rev().collect()).unwrap(),
        ];
        for d in 0..n as u32 {
            let volume = ball_volume(d as usize, n).unwrap().to_usize().unwrap();
            for center in &centers {
                let members = ball_members(d, center).unwrap().len();
                check(f, members == volume, || {
                    format!("n={n} d={d} center {center}: {members} members, V = {volume}")
                });
            }
        }
    }
}

fn main() {
    let mut findings = Vec::new();
    let verdicts = vec![
        criterion(
            1,
            "omega --x 2 reproduces the first nine values",
            1,
            c1_omega_values,
        ),
        criterion(
            2,
            "closed form equals the rectangular permanent, d <= 8",
            300,
            c2_closed_form_vs_permanent,
        ),
        criterion(3, "chain-sum lemma, m <= 5, n <= 8", 30, c3_lemma),
        criterion(
            4,
            "telescoping step, i <= 4, c <= n <= 8",
            30,
            c4_telescoping,
        ),
        criterion(5, "b_m pattern count, m <= d <= 10", 60, c5_bm),
        criterion(
            6,
            "engine agreement n <= 10, d <= 4; V(1,n) Fibonacci n <= 20",
            60,
            c6_engines,
        ),
        criterion(
            7,
            "exact volume above both bounds; ratio identity 1e-12",
            60,
            c7_bounds,
        ),
        criterion(
            8,
            "doubled-band line sums 2d+1, d <= 5, n <= 40",
            5,
            c8_klove,
        ),
        criterion(
            9,
            "sign of ln omega_d - d ln 2 consistent with crossover; omega_1 = e",
            60,
            |f| c9_bound_comparison(f, &mut findings),
        ),
        criterion(
            10,
            "greedy >= GV, exact <= packing, ball counts n <= 8",
            120,
            c10_codes,
        ),
    ];

    for v in &verdicts {
        println!("{}", v.line());
    }
    println!("criterion 9 findings:");
    for line in &findings {
        println!("  {line}");
    }
    let failed: Vec<u32> = verdicts
        .iter()
        .filter(|v| !v.passed())
        .map(|v| v.id)
        .collect();
    if failed.is_empty() {
        println!("all {} criteria passed", verdicts.len());
    } else {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
