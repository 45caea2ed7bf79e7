//! Acceptance run: one PASS/FAIL line per criterion, with the sub-checks listed above it.

use qeuclid::algebra::{serre_relations, unit_alphabet, Expression, Letter, Rewriter, RootSystem, Strategy};
use qeuclid::classical::{
    delta_convergence, delta_integral, eigenvalue_errors, pt_restoration, q_sequence, ClassicalMomentum, TestFunction,
    DEFAULT_NODES,
};
use qeuclid::rep::{casimir_omega1_expr, projected_omega_expr, BasisState, Rep, RepConfig, TruncationWindow};
use qeuclid::tensor::{component_count, weight_multiplicity_check};
use qeuclid::verify::{
    casimir_commutators, casimir_scalarity, highest_weight_search, identity_residual, n3_closed_list,
    norm_recursion_check, predicted_highest_weights, relation_residual_suite, run_identities, spectrum_report,
    star_suite, Identity,
};
use qeuclid::{Dimension, Error};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::Instant;

const TOL: f64 = 1e-10;
const SEED: u64 = 0x5eed_0003;

struct Criterion {
    number: u32,
    title: &'static str,
    checks: Vec<(bool, String)>,
}

impl Criterion {
    fn new(number: u32, title: &'static str) -> Self {
        Criterion { number, title, checks: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.checks.push((ok, detail));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.0)
    }

    fn print(&self) {
        for (ok, d) in &self.checks {
            println!("    {} {d}", if *ok { "ok  " } else { "FAIL" });
        }
        println!("{} {:>2} {}", if self.passed() { "PASS" } else { "FAIL" }, self.number, self.title);
    }
}

fn dim(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

fn rep(n: usize, q: f64, w: i32, pmax: i32, s: i32, jmin: i32) -> Rep {
    let win = TruncationWindow::uniform(dim(n), pmax, s, jmin);
    Rep::new(RepConfig::new(n, q, 1.0, w).unwrap(), &win).unwrap()
}

fn sweep_three() -> Vec<Rep> {
    let mut out = Vec::new();
    for q in [0.3, 0.5, 0.9] {
        for w in [0, 1, 3] {
            out.push(rep(3, q, w, 8, 4, -8));
        }
    }
    out
}

fn sweep_general() -> Vec<Rep> {
    vec![rep(4, 0.5, 0, 4, 4, -6), rep(5, 0.5, 0, 4, 4, -6)]
}

fn label(r: &Rep) -> String {
    format!("N={} q={} w={}", r.dim().big_n(), r.cfg.q, r.cfg.w)
}

fn criterion_1(reps: &[Rep]) -> Criterion {
    let mut c = Criterion::new(1, "N=3 closed relation list on the interior, < 1e-10, < 10 s");
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for r in reps {
        let closed = run_identities(r, &n3_closed_list(r.roots()).unwrap()).unwrap();
        let full = relation_residual_suite(r).unwrap();
        let m = closed.max_relative().max(full.max_relative());
        worst = worst.max(m);
        let interior = closed.reports.iter().all(|x| x.interior_states > 0) && closed.skipped.is_empty();
        c.check(m < TOL && interior, format!("{}: {} identities, max relative {m:.2e}", label(r), full.reports.len() + closed.reports.len()));
    }
    let secs = t.elapsed().as_secs_f64();
    c.check(secs < 10.0, format!("runtime {secs:.2} s, worst residual {worst:.2e}"));
    c
}

fn criterion_2(reps: &[Rep]) -> Criterion {
    let mut c = Criterion::new(2, "N=4, 5 singlet relation catalog on the interior, < 1e-10, < 60 s");
    let t = Instant::now();
    for r in reps {
        let s = relation_residual_suite(r).unwrap();
        let m = s.max_relative();
        let worst = s.worst().map(|x| x.id.clone()).unwrap_or_default();
        c.check(
            m < TOL,
            format!("{}: {} identities ({} skipped), max relative {m:.2e} at {worst}", label(r), s.reports.len(), s.skipped.len()),
        );
    }
    let secs = t.elapsed().as_secs_f64();
    c.check(secs < 60.0, format!("runtime {secs:.2} s"));
    c
}

fn criterion_3(reps: &[&Rep]) -> Criterion {
    let mut c = Criterion::new(3, "star structure, Gamma(a*) = Gamma(a)^T, < 1e-10");
    for r in reps {
        let s = star_suite(r).unwrap();
        c.check(s.max_relative() < TOL, format!("{}: {} generators, max relative {:.2e}", label(r), s.reports.len(), s.max_relative()));
    }
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new(4, "Casimir: singlet zero, projected eigenvalue, N=4 scalar and window-stable");
    let om3 = casimir_omega1_expr(dim(3)).unwrap();
    for q in [0.3, 0.5, 0.9] {
        let r = rep(3, q, 0, 8, 4, -8);
        let s = casimir_scalarity(&r, &om3).unwrap();
        let worst = s.sectors.iter().map(|x| x.lambda.abs().max(x.deviation * x.scale)).fold(0.0, f64::max);
        let scale = s.sectors.iter().map(|x| x.scale).fold(1.0, f64::max);
        c.check(worst < TOL * scale, format!("N=3 q={q} w=0: max |Omega_1| {worst:.2e} (scale {scale:.2e})"));
    }

    let (q, w) = (0.5f64, 2);
    // q^{1/2} (q^{-w} - q^{w}) / ((1 - q)(1 - q^2))
    let omega = q.sqrt() * (q.powi(-w) - q.powi(w)) / ((1.0 - q) * (1.0 - q * q));
    let r = rep(3, q, w, 0, 2, -4);
    let s = casimir_scalarity(&r, &projected_omega_expr(1).unwrap()).unwrap();
    let measured: Vec<f64> = s.sectors.iter().map(|x| x.lambda).collect();
    let ok = s.sectors.iter().all(|x| (x.lambda - omega).abs() < 1e-8 && x.deviation < 1e-8);
    c.check(ok, format!("N=3 w=2 q=0.5 projected Omega: expected {omega:.7}, measured {measured:?}, deviation {:.2e}", s.max_deviation()));
    let alt = casimir_scalarity(&r, &projected_omega_expr(-1).unwrap()).unwrap();
    c.check(
        alt.max_deviation() < 1e-8,
        format!(
            "N=3 w=2 q=0.5 projected Omega with prefactor q^{{-1/2}}: scalar, value {:.7}, deviation {:.2e}",
            alt.sectors[0].lambda,
            alt.max_deviation()
        ),
    );

    let om4 = casimir_omega1_expr(dim(4)).unwrap();
    let small = casimir_scalarity(&rep(4, 0.5, 0, 4, 2, -4), &om4).unwrap();
    let large = casimir_scalarity(&rep(4, 0.5, 0, 6, 2, -4), &om4).unwrap();
    c.check(
        small.max_deviation() < 1e-8 && large.max_deviation() < 1e-8,
        format!("N=4 q=0.5 Omega_1 deviation {:.2e} (pmax 4), {:.2e} (pmax 6)", small.max_deviation(), large.max_deviation()),
    );
    let mut drift: f64 = 0.0;
    let mut shared = 0;
    for sv in &small.sectors {
        if let Some(l) = large.sector(sv.pi_n) {
            drift = drift.max((sv.lambda - l.lambda).abs() / sv.scale.max(1.0));
            shared += 1;
        }
    }
    c.check(shared > 0 && drift < 1e-6, format!("N=4 window stability 4 -> 6: {shared} sectors, drift {drift:.2e}"));
    let comm = casimir_commutators(&rep(4, 0.5, 0, 4, 2, -4), &om4).unwrap();
    let worst = comm.iter().map(|x| x.relative()).fold(0.0, f64::max);
    c.check(worst < TOL, format!("N=4 [Omega_1, g] over {} generators: {worst:.2e}", comm.len()));
    c
}

fn alphabet(n: usize) -> Vec<Letter> {
    unit_alphabet(&RootSystem::new(dim(n))).into_iter().filter(|l| !l.is_bold()).collect()
}

fn random_word(rng: &mut ChaCha8Rng, letters: &[Letter], max_len: usize) -> Expression {
    let len = rng.gen_range(0..=max_len);
    Expression::word((0..len).map(|_| *letters.choose(rng).unwrap()).collect::<Vec<_>>())
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new(5, "rewriter: exact Serre, strategy independence, matrix consistency");
    for n in 3..=6 {
        let rw = Rewriter::new(dim(n));
        let mut count = 0;
        let mut zero = true;
        for bold in [false, true] {
            for (_, a, b, x) in serre_relations(rw.roots()) {
                let mk = |r: (i32, i32)| Expression::letter(if bold { Letter::BL(r.0, r.1) } else { Letter::L(r.0, r.1) });
                let e = Expression::qcommutator(&mk(a), &mk(b), &x);
                zero &= rw.normal_order(&e).map(|f| f.is_zero()).unwrap_or(false);
                count += 1;
            }
        }
        // so(3) has a single simple root and no Serre relation
        let expected = n == 3 || count > 0;
        c.check(zero && expected, format!("N={n}: {count} Serre relations reduce to exact zero"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut disagree = 0;
    let mut total = 0;
    for n in [3, 4] {
        let rw = Rewriter::new(dim(n));
        let letters = alphabet(n);
        for _ in 0..500 {
            let e = random_word(&mut rng, &letters, 5);
            let a = rw.normal_order_with(&e, Strategy::Leftmost);
            let b = rw.normal_order_with(&e, Strategy::Rightmost);
            if !(a.is_ok() && a == b) {
                disagree += 1;
            }
            total += 1;
        }
    }
    c.check(disagree == 0, format!("{total} random words of length <= 5: {disagree} strategy disagreements"));

    let mut worst: f64 = 0.0;
    let mut tested = 0;
    let mut skipped = 0;
    for n in [3, 4] {
        let r = if n == 3 { rep(3, 0.6, 0, 7, 4, -7) } else { rep(4, 0.6, 0, 5, 4, -5) };
        let rw = Rewriter::new(dim(n));
        let letters = alphabet(n);
        for _ in 0..100 {
            let e = random_word(&mut rng, &letters, 4);
            let nf = rw.normal_order(&e).unwrap();
            match identity_residual(&r, &Identity::new("word", e, nf)) {
                Ok(x) => {
                    worst = worst.max(x.relative());
                    tested += 1;
                }
                Err(Error::NoInterior(_)) => skipped += 1,
                Err(e) => panic!("{e}"),
            }
        }
    }
    c.check(worst < TOL && skipped == 0, format!("{tested} random words of length <= 4 in the representation: max relative {worst:.2e}, {skipped} without interior"));
    c
}

fn criterion_6(reps: &[&Rep]) -> Criterion {
    let mut c = Criterion::new(6, "highest weights equal the classified list, no extras, no omissions");
    for r in reps {
        let found: BTreeSet<BasisState> = highest_weight_search(r).unwrap().into_iter().collect();
        let want: BTreeSet<BasisState> = predicted_highest_weights(r).into_iter().collect();
        let extra = found.difference(&want).count();
        let missing = want.difference(&found).count();
        c.check(
            extra == 0 && missing == 0 && !want.is_empty(),
            format!("{}: {} found, {} predicted, {extra} extra, {missing} missing", label(r), found.len(), want.len()),
        );
    }
    c
}

fn criterion_7(reps: &[&Rep]) -> Criterion {
    let mut c = Criterion::new(7, "PT asymmetry: j_i <= pi_{i-1} everywhere, minimum j_i at the window floor");
    for r in reps {
        let t = spectrum_report(r).unwrap();
        let ok = t.pt_bounds.iter().all(|&(i, min_j, bounded)| bounded && min_j == r.window().jmin[(i - 1) as usize]);
        c.check(ok, format!("{}: {} states, bounds {:?}", label(r), r.basis.len(), t.pt_bounds));
    }
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new(8, "classical limit for N=4, M=1, mu=(0.5, 0.8), < 30 s");
    let t = Instant::now();
    let mu = ClassicalMomentum::new(dim(4), 1.0, vec![0.5, 0.8]).unwrap();
    let qs = q_sequence(4, 10);
    let f = TestFunction::Gaussian { center: mu.mu.clone(), width: 0.1 };
    let rows = delta_convergence(&f, &mu, &qs, DEFAULT_NODES).unwrap();
    let errs: Vec<f64> = rows.iter().map(|r| r.error).collect();
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
    c.check(decreasing, format!("Gaussian error along q = 1 - 2^-k, k = 4..10: {}", fmt_list(&errs)));
    let last = delta_integral(&f, &mu, 0.999, DEFAULT_NODES).unwrap();
    c.check(last.error < 0.05, format!("Gaussian error at q = 0.999: {:.3e} (< 5e-2)", last.error));

    let mut qs1 = qs.clone();
    qs1.push(0.999);
    let ones = delta_convergence(&TestFunction::Constant(1.0), &mu, &qs1, DEFAULT_NODES).unwrap();
    let bad: Vec<String> = ones
        .iter()
        .filter(|r| r.error > 2.0 * (1.0 - r.q))
        .map(|r| format!("q={} ({:.2}(1-q))", r.q, r.error / (1.0 - r.q)))
        .collect();
    c.check(bad.is_empty(), format!("f = 1 within 2(1-q) of 1: violations {bad:?}"));

    let mut bad = Vec::new();
    for &q in &qs {
        let e = eigenvalue_errors(&mu, q).unwrap();
        for (k, ek) in e.iter().enumerate() {
            let bound = mu.mu[k] * (q.powi(-2) - 1.0);
            if *ek > bound {
                bad.push(format!("q={q} i={}: {ek:.3e} > {bound:.3e}", k + 1));
            }
        }
    }
    c.check(bad.is_empty(), format!("|c_i - mu_i| <= mu_i (q^-2 - 1) at every step: violations {bad:?}"));

    let pt = pt_restoration(&mu, &q_sequence(2, 12)).unwrap();
    let b: Vec<i32> = pt.rows.iter().map(|r| r.bounds[0]).collect();
    let grows = pt.monotone(1) && b.last() > b.first() && pt.degenerate.is_empty();
    c.check(grows, format!("pi~_1 along q = 1 - 2^-k, k = 2..12: {b:?}"));

    let secs = t.elapsed().as_secs_f64();
    c.check(secs < 30.0, format!("runtime {secs:.2} s"));
    c
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", ")
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new(9, "norm recursion for N=3 from pi = (R, 0), annihilation after R steps");
    let starts: Vec<i32> = (1..=6).collect();
    for q in [0.3, 0.5, 0.9] {
        let r = rep(3, q, 0, 8, 1, -8);
        let out = norm_recursion_check(&r, &starts).unwrap();
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1e-300);
        let lit = out.steps.iter().map(|s| rel(s.measured, s.literal)).fold(0.0, f64::max);
        let cons = out.steps.iter().map(|s| rel(s.measured, s.consistent)).fold(0.0, f64::max);
        let ann = out.annihilation.iter().all(|&(start, n)| n == start);
        c.check(lit < TOL, format!("q={q}: q^2 (M^2 - q^(-2r-2) m^2) vs measured, max relative {lit:.2e}"));
        c.check(cons < TOL, format!("q={q}: q ((p.p)_1 - q^(-2r-2) (p.p)_0) vs measured, max relative {cons:.2e}"));
        c.check(ann, format!("q={q}: annihilation steps {:?}", out.annihilation));
    }
    c
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::new(10, "tensor bookkeeping: component counts and N=3 multiplicities");
    let mut ok = true;
    for u in 0..=4 {
        ok &= component_count(&[u], dim(3)).unwrap() == (2 * u + 1) as usize;
        for u2 in 0..=4 {
            ok &= component_count(&[u, u2], dim(4)).unwrap() == (((u2 - u).abs() + 1) * (u + u2 + 1)) as usize;
        }
    }
    c.check(ok, "counts 2u+1 (N=3) and (|u2-u1|+1)(u1+u2+1) (N=4) for u <= 4".into());
    let r = rep(3, 0.5, 0, 4, 1, -10);
    for u in 0..=2 {
        let m = weight_multiplicity_check(&r, u).unwrap();
        c.check(
            m.consistent() && m.components == (2 * u + 1) as usize,
            format!("u={u}: {} components, {} sectors consistent: {}", m.components, m.sectors.len(), m.consistent()),
        );
    }
    c
}

fn main() {
    let t = Instant::now();
    let three = sweep_three();
    let general = sweep_general();
    let all: Vec<&Rep> = three.iter().chain(general.iter()).collect();
    let singlets: Vec<&Rep> = three.iter().filter(|r| r.cfg.w == 0 && r.cfg.q == 0.5).chain(general.iter()).collect();

    let criteria = vec![
        criterion_1(&three),
        criterion_2(&general),
        criterion_3(&all),
        criterion_4(),
        criterion_5(),
        criterion_6(&singlets),
        criterion_7(&all),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ];
    for c in &criteria {
        c.print();
    }
    let failed: Vec<u32> = criteria.iter().filter(|c| !c.passed()).map(|c| c.number).collect();
    println!("acceptance: {} of {} criteria pass ({:.1} s)", criteria.len() - failed.len(), criteria.len(), t.elapsed().as_secs_f64());
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
