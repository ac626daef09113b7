//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines are always visible; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use latticejost::design::{
    alternating_potential, amplify_to_full_bound, choose_epsilon, consistency_relation,
    consistency_relation_extended, shrink_to_no_bound, verify_b3,
};
use latticejost::laws::{
    check_resonance_inequalities, sign_flip_deviation, small_coefficient_hypothesis,
};
use latticejost::oracle::{compare_with_roots, oracle_bound_states};
use latticejost::spectrum::{find_zeros_extended, ledger_for, Root};
use latticejost::{
    find_zeros, jost_coefficients, norming_constants, rouche_margin, validate_potential, Complex64,
    NumericConfig, Potential, ZeroClass,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn pot(v: &[f64]) -> Potential {
    validate_potential(v.to_vec()).expect("valid potential")
}

fn random_potential(rng: &mut ChaCha8Rng, max_b: usize) -> Potential {
    let b = rng.gen_range(1..=max_b);
    let mut v: Vec<f64> = (0..b).map(|_| rng.gen_range(-3.0..=3.0)).collect();
    while v[b - 1] == 0.0 {
        v[b - 1] = rng.gen_range(-3.0..=3.0);
    }
    pot(&v)
}

fn expanded(roots: &[Root]) -> Vec<Complex64> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.z, r.multiplicity))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn single_site() -> Outcome {
    let start = Instant::now();
    let cfg = NumericConfig::standard();
    for v1 in [0.5, -0.5, 0.9, -0.9] {
        let (_, l) = ledger_for(&pot(&[v1]), &cfg).map_err(|e| e.to_string())?;
        ensure(l.n == 0, || format!("V1={v1}: N={}", l.n))?;
    }
    let mut worst: f64 = 0.0;
    for v1 in [1.1, -1.1, 2.0, -2.0, 5.0, -5.0] {
        let (_, l) = ledger_for(&pot(&[v1]), &cfg).map_err(|e| e.to_string())?;
        ensure(l.n == 1, || format!("V1={v1}: N={}", l.n))?;
        let err = (l.zeros[0].z.re + 1.0 / v1).abs();
        worst = worst.max(err);
        ensure(err < 1e-12, || format!("V1={v1}: root error {err:e}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("max root error {worst:e}, {elapsed:.2?}"))
}

fn real_zeros(v: &[f64]) -> Result<Vec<(f64, usize)>, String> {
    let p = jost_coefficients(&pot(v));
    let roots = find_zeros(&p, &NumericConfig::standard()).map_err(|e| e.to_string())?;
    ensure(roots.iter().all(|r| r.z.im == 0.0), || {
        format!("nonreal zero for {v:?}: {roots:?}")
    })?;
    Ok(roots.iter().map(|r| (r.z.re, r.multiplicity)).collect())
}

fn match_simple(got: &[(f64, usize)], want: &[f64], tol: f64) -> Result<f64, String> {
    ensure(got.len() == want.len(), || {
        format!("expected {want:?}, got {got:?}")
    })?;
    let mut worst: f64 = 0.0;
    for (&(x, m), &w) in got.iter().zip(want) {
        ensure(m == 1, || format!("unexpected multiplicity at {x}"))?;
        worst = worst.max((x - w).abs());
    }
    ensure(worst < tol, || format!("expected {want:?}, got {got:?}"))?;
    Ok(worst)
}

fn two_site_regressions() -> Outcome {
    let (s3, s5, s22) = (3f64.sqrt(), 5f64.sqrt(), 22f64.sqrt());
    let mut worst = match_simple(&real_zeros(&[-s5, 4.0 / s5])?, &[-0.5, 0.5, s5], 1e-10)?;
    worst = worst.max(match_simple(
        &real_zeros(&[s5, -4.0 / s5])?,
        &[-s5, -0.5, 0.5],
        1e-10,
    )?);

    let third = (11.0 - s22) / 3.0;
    let got = real_zeros(&[(-13.0 + s22) / 3.0, -4.0 - 4.0 * (2.0f64 / 11.0).sqrt()])?;
    worst = worst.max(match_simple(&got, &[1.0 / 6.0, 0.5, third], 1e-10)?);
    ensure((got[2].0 - 2.10319).abs() < 5e-5, || {
        format!("third root {} vs 2.10319", got[2].0)
    })?;

    // printed pair for the double resonance; it carries the resonance at −3/2 − √3
    let got = real_zeros(&[-2.5 + s3, -0.5 + 1.0 / s3])?;
    ensure(got.len() == 2 && got[1].1 == 2, || {
        format!("no double zero: {got:?}")
    })?;
    ensure(
        (got[0].0 - (-1.5 - s3)).abs() < 1e-8 && (got[1].0 - 2.0).abs() < 1e-8,
        || format!("printed pair zeros {got:?}"),
    )?;
    // pair that reproduces the bound state at −3/2 + √3
    let got = real_zeros(&[-2.5 - s3, -0.5 - 1.0 / s3])?;
    ensure(got.len() == 2 && got[1].1 == 2, || {
        format!("no double zero: {got:?}")
    })?;
    ensure(
        (got[0].0 - (-1.5 + s3)).abs() < 1e-8 && (got[1].0 - 2.0).abs() < 1e-8,
        || format!("corrected pair zeros {got:?}"),
    )?;
    Ok(format!(
        "max simple-root error {worst:e}; double zero at 2 resolved for both sign readings"
    ))
}

fn three_site_forward(v: [f64; 3], pair: Complex64, alpha5: f64) -> Result<f64, String> {
    // input values carry about five digits, which splits each double zero by ~5e-3
    let cfg = NumericConfig {
        tau_cluster: 5e-3,
        ..NumericConfig::standard()
    };
    let p = jost_coefficients(&pot(&v));
    let roots = find_zeros(&p, &cfg).map_err(|e| e.to_string())?;
    ensure(roots.len() == 3, || format!("V={v:?}: {roots:?}"))?;
    let real = roots[0];
    ensure(real.multiplicity == 1 && real.z.im == 0.0, || {
        format!("V={v:?}: {roots:?}")
    })?;
    let mut worst = (real.z.re - alpha5).abs();
    for (r, want) in roots[1..].iter().zip([pair, pair.conj()]) {
        ensure(r.multiplicity == 2, || {
            format!("V={v:?}: not a double pair {roots:?}")
        })?;
        worst = worst.max((r.z - want).norm());
    }
    ensure(worst < 2e-3, || {
        format!("V={v:?}: deviation {worst:e} in {roots:?}")
    })?;
    let five = [
        pair,
        pair,
        pair.conj(),
        pair.conj(),
        Complex64::new(alpha5, 0.0),
    ];
    let res = verify_b3(&pot(&v), &five).map_err(|e| e.to_string())?;
    let max_res = res.iter().cloned().fold(0.0, f64::max);
    ensure(max_res < 5e-3, || format!("V={v:?}: residuals {res:?}"))?;
    Ok(worst.max(max_res))
}

fn three_site_examples() -> Outcome {
    let a = three_site_forward(
        [-1.89114, -3.03202, -0.6522],
        Complex64::new(1.1613, 1.0),
        0.27797,
    )?;
    let b = three_site_forward(
        [1.13279, 0.746106, 0.0990129],
        Complex64::new(-0.31968, 2.0),
        -0.600172,
    )?;
    Ok(format!("max deviation {:e}", a.max(b)))
}

fn sweep(bmax: usize, cfg: &NumericConfig, limit: Duration) -> Result<(Duration, f64), String> {
    let start = Instant::now();
    let mut min_edge = f64::INFINITY;
    for b in 1..=bmax {
        let v = alternating_potential(b, 2.0).map_err(|e| e.to_string())?;
        let (_, l) = ledger_for(&v, cfg).map_err(|e| format!("b={b}: {e}"))?;
        ensure(l.n == b, || format!("b={b}: N={}", l.n))?;
        min_edge = min_edge.min(l.min_edge_distance().unwrap_or(f64::INFINITY));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || format!("b<={bmax} took {elapsed:?}"))?;
    Ok((elapsed, min_edge))
}

fn alternating_sweep() -> Outcome {
    let (t_std, _) = sweep(40, &NumericConfig::standard(), Duration::from_secs(10))?;
    let (t_ext, edge) = sweep(110, &NumericConfig::extended(), Duration::from_secs(600))?;
    Ok(format!(
        "b<=40 std {t_std:.2?}; b<=110 ext {t_ext:.2?}, closest bound zero {edge:.3e} from ±1"
    ))
}

fn check_random(v: &Potential, cfg: &NumericConfig) -> Result<f64, String> {
    let b = v.b();
    let p = jost_coefficients(v);
    let roots = find_zeros(&p, cfg).map_err(|e| e.to_string())?;
    let l = latticejost::classify_zeros(&roots, cfg, b).map_err(|e| e.to_string())?;
    let total = l.z_left + l.z_m10 + l.z_01 + l.z_right + 2 * l.z_c;
    ensure(total == 2 * b - 1, || {
        format!("count identity {total} != {}", 2 * b - 1)
    })?;
    ensure(l.n <= b, || format!("N={} > b", l.n))?;
    for r in roots.iter().filter(|r| r.z.im != 0.0) {
        ensure(r.z.norm() > 1.0 - 1e-8, || {
            format!("nonreal zero {} inside the circle", r.z)
        })?;
        let partners = roots
            .iter()
            .filter(|s| s.z == r.z.conj() && s.multiplicity == r.multiplicity)
            .count();
        ensure(partners == 1, || {
            format!("zero {} has no conjugate partner", r.z)
        })?;
    }
    let (left, _, right, _) = check_resonance_inequalities(&l);
    ensure(left && right, || "resonance inequality".to_string())?;
    let dev = sign_flip_deviation(v, cfg).map_err(|e| e.to_string())?;
    ensure(dev <= 1e-10, || format!("sign-flip deviation {dev:e}"))?;
    Ok(dev)
}

fn property_suite() -> Outcome {
    let cfg = NumericConfig::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let v = random_potential(&mut rng, 12);
        let dev =
            check_random(&v, &cfg).map_err(|e| format!("sample {i}, V={:?}: {e}", v.values()))?;
        worst = worst.max(dev);
    }
    Ok(format!(
        "1000 potentials, max sign-flip deviation {worst:e}"
    ))
}

fn min_separation(roots: &[Root]) -> f64 {
    let all = expanded(roots);
    let mut best = f64::INFINITY;
    for i in 0..all.len() {
        for j in 0..i {
            best = best.min((all[i] - all[j]).norm());
        }
    }
    best
}

fn norming_cross_check() -> Outcome {
    let cfg = NumericConfig::standard();
    let (p, l) = ledger_for(&pot(&[2.0]), &cfg).map_err(|e| e.to_string())?;
    let bs = norming_constants(&l, &p).map_err(|e| e.to_string())?;
    ensure(
        bs.len() == 1
            && (bs[0].c2_product - 3.0).abs() < 1e-12
            && (bs[0].c2_residue - 3.0).abs() < 1e-12,
        || format!("V=[2]: {bs:?}"),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let (mut tested, mut states, mut worst) = (0, 0, 0.0f64);
    while tested < 500 {
        let v = random_potential(&mut rng, 8);
        let p = jost_coefficients(&v);
        let roots = find_zeros(&p, &cfg).map_err(|e| e.to_string())?;
        if min_separation(&roots) <= 1e-4 {
            continue;
        }
        tested += 1;
        let l = latticejost::classify_zeros(&roots, &cfg, v.b()).map_err(|e| e.to_string())?;
        for s in norming_constants(&l, &p).map_err(|e| e.to_string())? {
            states += 1;
            let rel = (s.c2_product - s.c2_residue).abs() / s.c2_product.abs();
            worst = worst.max(rel);
            ensure(
                s.c2_product > 0.0 && s.c2_residue > 0.0 && rel < 1e-8,
                || format!("V={:?}: {s:?} (relative difference {rel:e})", v.values()),
            )?;
        }
    }
    Ok(format!(
        "{states} bound states over 500 potentials, max relative difference {worst:e}"
    ))
}

fn oracle_equivalence() -> Outcome {
    let cfg = NumericConfig::standard();
    let single = oracle_bound_states(&pot(&[2.0]), 200, 1e-6).map_err(|e| e.to_string())?;
    ensure(single.len() == 1 && (single[0] - 4.5).abs() < 1e-10, || {
        format!("V=[2]: {single:?}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let (mut worst, mut rows) = (0.0f64, 0);
    for _ in 0..200 {
        let v = random_potential(&mut rng, 8);
        let c = compare_with_roots(&v, 800, 1e-6, 0.95, &cfg).map_err(|e| e.to_string())?;
        ensure(c.counts_agree(), || {
            format!(
                "V={:?}: {} from zeros vs {} from matrix",
                v.values(),
                c.root_count,
                c.oracle_count
            )
        })?;
        ensure(c.max_delta < 1e-6, || {
            format!("V={:?}: max delta {:e}", v.values(), c.max_delta)
        })?;
        worst = worst.max(c.max_delta);
        rows += c.rows.len();
    }
    Ok(format!("{rows} energies matched, max delta {worst:e}"))
}

fn constructive() -> Outcome {
    let cfg = NumericConfig::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..100 {
        let v = random_potential(&mut rng, 8);
        let (t, s) = shrink_to_no_bound(&v).map_err(|e| e.to_string())?;
        let (p, l) = ledger_for(&s, &cfg).map_err(|e| e.to_string())?;
        ensure(small_coefficient_hypothesis(&p) && l.n == 0, || {
            format!("shrink of {:?} (t={t}) gave N={}", v.values(), l.n)
        })?;
    }
    let mut patterns = 0;
    for b in 1..=5usize {
        for mask in 0..(1u32 << b) {
            let signs: Vec<f64> = (0..b)
                .map(|j| if mask >> j & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            let (a, v) = amplify_to_full_bound(&signs).map_err(|e| e.to_string())?;
            let (_, l) = ledger_for(&v, &cfg).map_err(|e| e.to_string())?;
            ensure(rouche_margin(&v) > 0.0 && l.n == b, || {
                format!("signs {signs:?}, A={a}: N={}", l.n)
            })?;
            patterns += 1;
        }
    }
    Ok(format!(
        "100 shrinks to N=0, {patterns} sign patterns amplified to N=b"
    ))
}

fn consistency_constant() -> Outcome {
    let cfg = NumericConfig::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let mut v = [rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0)];
        while v[1] == 0.0 {
            v[1] = rng.gen_range(-3.0..=3.0);
        }
        // zeros kept in double-double: e1e3 and e2 grow like 1/|V2| and cancel
        let roots =
            find_zeros_extended(&jost_coefficients(&pot(&v)), &cfg).map_err(|e| e.to_string())?;
        let triple: [_; 3] = roots
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|_| format!("V={v:?}: wrong number of zeros"))?;
        let relation = consistency_relation_extended(&triple);
        let dev = (relation + 1.0).abs();
        worst = worst.max(dev);
        ensure(dev < 1e-10, || format!("V={v:?}: e1e3 - e2 = {relation}"))?;
    }
    let (s3, s5) = (3f64.sqrt(), 5f64.sqrt());
    let r = |a: f64, b: f64, c: f64| [a, b, c].map(|x| Complex64::new(x, 0.0));
    for triple in [
        r(2.0, 2.0, -1.5 + s3),
        r(2.0, 2.0, -1.5 - s3),
        r(0.5, -0.5, s5),
    ] {
        let dev = (consistency_relation(&triple) + 1.0).abs();
        ensure(dev < 1e-10, || format!("{triple:?}: deviation {dev:e}"))?;
    }
    Ok(format!(
        "e1e3 - e2 = -1 on 500 random pairs (max deviation {worst:e}) and the worked examples"
    ))
}

fn extension_mechanism() -> Outcome {
    let cfg = NumericConfig::standard();
    let v = pot(&[2.0]);
    let mut notes = Vec::new();
    for b in [2, 3, 5] {
        let (eps, ext) = choose_epsilon(&v, b, &cfg).map_err(|e| e.to_string())?;
        let (p, l) = ledger_for(&ext, &cfg).map_err(|e| e.to_string())?;
        let (plus, minus) = (p.eval_real(1.0).abs(), p.eval_real(-1.0).abs());
        ensure(l.n == 1 && plus > 1e-9 && minus > 1e-9, || {
            format!(
                "b={b}, eps={eps}: N={}, |f(1)|={plus:e}, |f(-1)|={minus:e}",
                l.n
            )
        })?;
        ensure(
            !l.zeros
                .iter()
                .any(|z| matches!(z.class, ZeroClass::EdgeMinus | ZeroClass::EdgePlus)),
            || format!("b={b}: edge zero"),
        )?;
        notes.push(format!("b={b} eps={eps}"));
    }
    Ok(notes.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("single-site family", single_site),
        ("two-site regressions", two_site_regressions),
        ("three-site forward verification", three_site_examples),
        ("alternating sweep", alternating_sweep),
        ("random property suite", property_suite),
        ("norming-constant cross-check", norming_cross_check),
        ("oracle equivalence", oracle_equivalence),
        ("constructive families", constructive),
        ("two-site consistency constant", consistency_constant),
        ("support extension", extension_mechanism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
