//! Acceptance criteria 1-10. Prints one line per criterion and exits
//! non-zero when any fails.

mod common;

use std::time::{Duration, Instant};

use genusforge::catalog::{self, dual_path_samples, oracle, Payload};
use genusforge::charclass::{ahat_factor, genus_sequence, l_factor, pair_fundamental};
use genusforge::equivariant::{
    anomaly_check, fixed_point_series, fixed_point_value, h_eval, h_series, jacobi_residual, model_function,
    model_meta, sample_points, subgroup_member, Generator, LefschetzTwist, Mode, Path, Subgroup,
};
use genusforge::genus::{subdirac_index, witten_genus, KExpr, SplitManifoldSpec};
use genusforge::ktheory::{lambda_total_class, sym_total_class, witten_element_class, RVariant, Twist};
use genusforge::ring::{int, QAlgebra, Rational};
use genusforge::series::grid_order;
use genusforge::theta::{eval_series, standard_grid, theta_eval, theta_qseries, verify_transform, Law, ThetaKind};
use num_complex::Complex64;
use rand::Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let grid = standard_grid();
    let mut worst: f64 = 0.0;
    let mut signs = Vec::new();
    for kind in ThetaKind::ALL {
        for law in [Law::S, Law::T] {
            worst = worst.max(verify_transform(kind, law, &grid, 1e-9).map_err(err)?.max_residual);
        }
        let lat = verify_transform(kind, Law::Lattice { a: 2, b: 0 }, &grid, 1e-9).map_err(err)?;
        let report = lat.lattice.ok_or("lattice report missing")?;
        if report.holds.len() != 1 {
            return Err(format!("{kind:?}: lattice law holds under {:?}", report.holds));
        }
        signs.push(report.holds[0]);
    }
    let elapsed = start.elapsed();
    signs.dedup();
    check(
        worst < 1e-9 && elapsed < Duration::from_secs(5) && signs.len() == 1,
        format!("S/T max residual {worst:.2e}, lattice sign {:?}, {:.2?}", signs, elapsed),
    )
}

fn criterion_2() -> Outcome {
    let order = grid_order(40);
    let taus = [Complex64::new(0.0, 0.192), Complex64::new(0.3, 0.25), Complex64::new(-0.1, 0.6)];
    let vs = [Complex64::new(0.1, 0.05), Complex64::new(-0.37, 0.2), Complex64::new(0.45, -0.1)];
    let mut worst: f64 = 0.0;
    for kind in ThetaKind::ALL {
        let s = theta_qseries(kind, order);
        for tau in taus {
            if (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau).exp().norm() > 0.3 {
                return Err(format!("sample tau {tau} has |q| > 0.3"));
            }
            for v in vs {
                let exact = eval_series(&s, v, tau);
                let numeric = theta_eval(kind, v, tau, 1e-15).map_err(err)?;
                worst = worst.max((exact - numeric).norm() / numeric.norm().max(1.0));
            }
        }
    }
    check(worst < 1e-10, format!("max difference {worst:.2e} over 4 kinds x 9 points"))
}

fn manifold(name: &str) -> Result<genusforge::charclass::CharNumbers, String> {
    catalog::builtin(name).map_err(err)?.numbers().cloned().ok_or(format!("{name} has no numbers"))
}

fn criterion_3() -> Outcome {
    let k3 = manifold("k3")?;
    let t = Instant::now();
    let ahat = pair_fundamental(&genus_sequence(&ahat_factor(6), 4).map_err(err)?, &k3).map_err(err)?;
    let ta = t.elapsed();
    let cp2 = manifold("cp2")?;
    let t = Instant::now();
    let l = pair_fundamental(&genus_sequence(&l_factor(6), 4).map_err(err)?, &cp2).map_err(err)?;
    let tl = t.elapsed();
    let one = Duration::from_secs(1);
    check(
        ahat == int(2) && l == int(1) && ta < one && tl < one,
        format!("Ahat[K3] = {ahat} ({ta:.2?}), L[CP2] = {l} ({tl:.2?})"),
    )
}

fn criterion_4() -> Outcome {
    let k3 = manifold("k3")?;
    let t = Instant::now();
    let w = witten_genus(&k3, 2).map_err(err)?;
    let elapsed = t.elapsed();
    let coeffs: Vec<Rational> = (0..=2).map(|k| w.coeff_at(&int(k)).cloned().unwrap_or_else(|| int(0))).collect();
    let p1 = k3.get(&"p1".parse().map_err(err)?).cloned().ok_or("no p1")?;
    let numbers = [("p1".to_string(), p1.clone())].into_iter().collect();
    let truncation = oracle::truncation_witten_index(4, false, &numbers, 2).map_err(err)?;
    check(
        coeffs[0] == int(2) && coeffs[1] == p1 && coeffs == truncation && elapsed < Duration::from_secs(1),
        format!(
            "[{}, {}, {}] = truncation oracle, q^1 = p1[K3], {elapsed:.2?}",
            coeffs[0], coeffs[1], coeffs[2]
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(2024);
    let order = grid_order(4);
    let top = 8;
    for i in 0..20 {
        let e = common::random_class(&mut rng, "E");
        let f = common::random_class(&mut rng, "F");
        let sl = sym_total_class(&e, Twist::q_power(1), order, top)
            .mul(&lambda_total_class(&e, Twist::new(-1, 2), order, top));
        if !sl.is_one() {
            return Err(format!("class {i}: Sym_q Lambda_-q != 1"));
        }
        let lhs = witten_element_class(&e.plus(&f), order, top);
        let rhs = witten_element_class(&e, order, top).mul(&witten_element_class(&f, order, top));
        if lhs != rhs {
            return Err(format!("class {i}: Witten element not multiplicative"));
        }
    }
    Ok("both identities exact to q^4 on 20 random classes of rank <= 3".into())
}

fn model(name: &str) -> Result<genusforge::equivariant::EquivariantModel, String> {
    catalog::builtin(name).map_err(err)?.model().cloned().ok_or(format!("{name} has no model"))
}

fn criterion_6() -> Outcome {
    let m = model("s2rot_x_t2")?;
    let n = anomaly_check(&m).map_err(err)?.n;
    let exact_zero = h_series(&m, 3).map_err(err)?.is_zero();
    let worst = sample_points()
        .iter()
        .map(|(t, tau)| h_eval(&m, *t, *tau).map(|v| v.norm()))
        .collect::<genusforge::Result<Vec<_>>>()
        .map_err(err)?
        .into_iter()
        .fold(0.0, f64::max);
    let s2 = model("s2_rotation")?;
    let dirac_zero = fixed_point_series(&s2, LefschetzTwist::Dirac, Path::Direct, 0).map_err(err)?.is_zero();
    check(
        n == 1 && exact_zero && worst < 1e-9 && dirac_zero,
        format!("n = {n}, H = 0 to q^3: {exact_zero}, max |H| = {worst:.2e}, S2 Dirac q^0 sum = 0: {dirac_zero}"),
    )
}

fn criterion_7() -> Outcome {
    let samples = dual_path_samples();
    let mut worst: f64 = 0.0;
    let mut models = 0;
    for e in catalog::all() {
        let Payload::Model(m) = &e.payload else { continue };
        models += 1;
        let twists: Vec<LefschetzTwist> = match m.mode {
            Mode::Foliated => vec![LefschetzTwist::Witten],
            Mode::Split => [RVariant::R, RVariant::RPrime, RVariant::RDoublePrime].map(LefschetzTwist::R).to_vec(),
        };
        for tw in twists {
            for (t, tau) in &samples {
                let a = fixed_point_value(m, tw, Path::Theta, *t, *tau).map_err(|x| format!("{}: {x}", e.name))?;
                let b = fixed_point_value(m, tw, Path::Direct, *t, *tau).map_err(|x| format!("{}: {x}", e.name))?;
                worst = worst.max((a - b).norm() / a.norm().max(1.0));
            }
        }
    }
    check(
        worst < 1e-9,
        format!("max difference {worst:.2e} over {models} models x {} points", samples.len()),
    )
}

fn criterion_8() -> Outcome {
    let m = model("single_point")?;
    let meta = model_meta(&m, Subgroup::Sl2z).map_err(err)?;
    let gens = Generator::standard(Subgroup::Sl2z);
    let r = jacobi_residual(model_function(&m, Subgroup::Sl2z), &meta, &gens, &sample_points(), 1e-8).map_err(err)?;
    let mut bumped = meta.clone();
    bumped.weight += int(1);
    let c = jacobi_residual(model_function(&m, Subgroup::Sl2z), &bumped, &gens, &sample_points(), 1e-8).map_err(err)?;
    check(
        r.max_residual < 1e-8 && c.max_residual > 0.01,
        format!(
            "index {} weight {}: residual {:.2e}; weight {}: {:.2e}",
            meta.index, meta.weight, r.max_residual, bumped.weight, c.max_residual
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = common::rng(99);
    let mut counts = [0usize; 4];
    for _ in 0..1000 {
        let len = rng.gen_range(1..16);
        let g = common::random_word(&mut rng, len);
        for (i, tag) in Subgroup::ALL.iter().enumerate() {
            let m = subgroup_member(&g, *tag).map_err(err)?;
            if m != oracle::mod2_member(&g, *tag) {
                return Err(format!("{g} in {tag:?}: {m}"));
            }
            counts[i] += usize::from(m);
        }
    }
    Ok(format!("1000 words agree; members per subgroup {counts:?}"))
}

fn criterion_10() -> Outcome {
    let mut checked = Vec::new();
    for e in catalog::all() {
        let spec = match &e.payload {
            Payload::Numbers(n) if n.spin == Some(true) => SplitManifoldSpec::tangent(n.clone()).map_err(err)?,
            Payload::Split(s) if s.f_spin => s.clone(),
            _ => continue,
        };
        for phi in [KExpr::One, KExpr::Witten] {
            let r = subdirac_index(&spec, &KExpr::Witten, &phi, grid_order(3)).map_err(err)?;
            if !r.value.is_integral() {
                return Err(format!("{} with phi = {phi:?}: {:?}", e.name, r.value.coeffs()));
            }
        }
        checked.push(e.name);
    }
    check(!checked.is_empty(), format!("integral to q^3 on {}", checked.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("theta transformation laws", criterion_1),
        ("symbolic and numeric theta agree", criterion_2),
        ("exact characteristic numbers", criterion_3),
        ("Witten genus of K3", criterion_4),
        ("K-theory identities", criterion_5),
        ("vanishing on s2rot_x_t2 and S2", criterion_6),
        ("dual-path equivalence", criterion_7),
        ("Jacobi residuals", criterion_8),
        ("subgroup membership", criterion_9),
        ("integrality", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (mark, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {mark}  {name}: {detail}", i + 1);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
