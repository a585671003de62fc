//! Acceptance gate: one test per headline claim, each printing a
//! PASS/FAIL line with its runtime (visible under `--nocapture`).

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::Instant;

use matterlab::constants::codata;
use matterlab::exact::{HalfInt, Rational};
use matterlab::{bounds, lane_emden, star, tf_atom, white_dwarf, zeeman};

fn criterion(n: u32, desc: &str, budget_s: f64, f: impl FnOnce() + UnwindSafe) {
    let t0 = Instant::now();
    let result = catch_unwind(f);
    let dt = t0.elapsed().as_secs_f64();
    let ok = result.is_ok() && dt < budget_s;
    println!(
        "criterion {n}: {} ({dt:.2} s / budget {budget_s} s) - {desc}",
        if ok { "PASS" } else { "FAIL" }
    );
    if let Err(e) = result {
        resume_unwind(e);
    }
    assert!(dt < budget_s, "runtime {dt:.2} s over budget {budget_s} s");
}

#[test]
fn criterion_1_g_factor_reconstruction() {
    criterion(1, "sum-rule g equals Lande closed form; mean g = 1", 1.0, || {
        for l_int in 0..=6i64 {
            let l = HalfInt::from_int(l_int);
            for s_twice in 0..=12i64 {
                let s = HalfInt::from_twice(s_twice);
                let recon = zeeman::g_from_sum_rule(l, s).unwrap();
                for (&j, g) in &recon {
                    assert_eq!(*g, zeeman::lande_g(l, s, j).unwrap(), "L={l} S={s} J={j}");
                }
                // the trace argument behind "mean of all Lande factors
                // is equal to 1" needs every J present at some M != 0,
                // which requires L > S (at L = S only M = 0 is shared)
                if l_int > 0 && s_twice < 2 * l_int && !recon.is_empty() {
                    assert_eq!(
                        zeeman::mean_g(&recon),
                        Rational::from_integer(1),
                        "L={l} S={s}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_2_shell_counting() {
    criterion(2, "closed shells 2, 8, 18, 32; subshells 2 and 6", 1.0, || {
        let shells = zeeman::closed_shell_sizes(4);
        assert_eq!(shells.per_shell, vec![2, 8, 18, 32]);
        assert_eq!(shells.cumulative, vec![2, 10, 28, 60]);
        assert_eq!(zeeman::shell_capacity(0).total, 2);
        assert_eq!(zeeman::shell_capacity(1).total, 6);
    });
}

#[test]
fn criterion_3_thomas_fermi_atom() {
    criterion(3, "TF energy -1.5375 Z^(7/3) Ry, slope, virial split", 5.0, || {
        let scr = tf_atom::solve_screening(1e-12).unwrap();
        assert!(
            (scr.slope0 + 1.588_071_0).abs() < 1e-6,
            "slope {}",
            scr.slope0
        );
        for z in [1u32, 10, 30] {
            let e = tf_atom::tf_energy(&scr, z).unwrap();
            let coeff = e.total_ry / (z as f64).powf(7.0 / 3.0);
            assert!((coeff / -1.5375 - 1.0).abs() < 1e-3, "Z={z}: {coeff}");
            // virial: K = -E, U = 2E
            let u = e.attraction_ry + e.repulsion_ry;
            assert!((e.kinetic_ry / -e.direct_ry - 1.0).abs() < 2e-3);
            assert!((u / (2.0 * e.direct_ry) - 1.0).abs() < 2e-3);
        }
    });
}

#[test]
fn criterion_4_sobolev_bound() {
    criterion(4, "Sobolev bound -(4/3)Z^2 Ry to 1e-4, Z-covariant", 30.0, || {
        let opts = bounds::VariationalOptions::default();
        let mut per_z2 = Vec::new();
        for z in [1.0f64, 2.0, 10.0] {
            let b = bounds::sobolev_hydrogen_bound(z, &opts).unwrap();
            assert!((b.analytic_ry / (-4.0 / 3.0 * z * z) - 1.0).abs() < 1e-12);
            assert!(
                (b.numeric_ry / b.analytic_ry - 1.0).abs() < 1e-4,
                "Z={z}: numeric {} vs analytic {}",
                b.numeric_ry,
                b.analytic_ry
            );
            per_z2.push(b.numeric_ry / (z * z));
        }
        // the grid and start scale with Z, so the minimizations are the
        // same problem and the reduced values must agree tightly
        for v in &per_z2[1..] {
            assert!((v / per_z2[0] - 1.0).abs() < 1e-5, "{per_z2:?}");
        }
    });
}

#[test]
fn criterion_5_shell_filling_bounds() {
    criterion(5, "Balmer filling to N = 1e6, coefficient, ordering", 10.0, || {
        // brute force: drop electrons into levels one at a time
        let mut level = 1u64;
        let mut in_level = 0u64;
        let mut full_below = 0u32; // deepest completely full level
        let mut energy = 0.0f64; // in Z^2 Ry
        for n in 1..=1_000_000u64 {
            in_level += 1;
            energy -= 1.0 / (level * level) as f64;
            if in_level == 2 * level * level {
                full_below = level as u32;
                level += 1;
                in_level = 0;
            }
            let fill = bounds::fill_levels(n);
            assert_eq!(fill.n0, full_below, "N={n}");
            assert_eq!(fill.remainder, in_level, "N={n}");
            // exact bracket around the unperturbed energy
            let lo = -2.0 * (fill.n0 + 1) as f64;
            assert!(lo - 1e-6 <= energy && energy <= -2.0 * fill.n0 as f64 + 1e-6, "N={n}");
        }
        // asymptotic coefficient 2 (3/2)^(1/3)
        let c = bounds::shell_fill_coefficient();
        assert!((c - 2.0 * 1.5f64.powf(1.0 / 3.0)).abs() < 1e-15);
        assert!((c - 2.2894).abs() < 1e-4);
        // (1 - N/2Z) structure of the variational upper bound
        let up = bounds::shell_fill_upper_bound(30, 40).bound.unwrap();
        let expect = -c * (1.0 - 30.0 / 80.0) * 30f64.powf(1.0 / 3.0) * 1600.0;
        assert!((up.value_ry / expect - 1.0).abs() < 1e-12);
        assert_eq!(
            bounds::shell_fill_upper_bound(80, 40).bound.unwrap().value_ry,
            0.0
        );
        assert!(bounds::shell_fill_upper_bound(81, 40).bound.is_none());
        // ordering against the Thomas-Fermi value for neutral atoms
        for z in 10..=100u32 {
            let n = z as u64;
            let lower = bounds::shell_fill_lower_bound(n, z).asymptotic.value_ry;
            let upper = bounds::shell_fill_upper_bound(n, z).bound.unwrap().value_ry;
            let tf = bounds::tf_reference_energy(z);
            assert!(lower * 1.1 <= tf && tf <= upper * 0.9, "Z={z}: {lower} {tf} {upper}");
        }
    });
}

#[test]
fn criterion_6_atom_size_coefficient() {
    criterion(6, "atom-size coefficient 0.714 from intermediates", 1.0, || {
        let b = bounds::atom_size_lower_bound(1000);
        let target = (9.0 * 6.0f64.powf(1.0 / 3.0) / 32.0).sqrt();
        assert!((b.coefficient - target).abs() < 1e-15);
        assert!((b.coefficient - 0.71).abs() < 5e-3); // paper's two digits
        // rebuild the coefficient from the exposed intermediate steps:
        // <sum x^2> >= (3N)^(8/3) / (16 <sum p^2>), r = sqrt(<sum x^2>/N)
        let n = 1000.0f64;
        let rebuilt = ((3.0 * n).powf(8.0 / 3.0) / (16.0 * b.momentum_sq_bound * n)).sqrt();
        assert!((rebuilt / b.radius_a0 - 1.0).abs() < 1e-12);
        assert!(b.optimal_omega > 0.0 && b.oscillator_coefficient > 0.0);
    });
}

#[test]
fn criterion_7_heuristic_star() {
    criterion(7, "rho0 ~ 10 g/cm3, N_c ~ Jupiter, thresholds, exponents", 1.0, || {
        let k = codata();
        let input = star::HeuristicInput::new(1e20, 1, 1, false).unwrap();
        let r = star::minimize_nonrel(&input, &k);
        assert!(r.rho0_g_cm3 > 1.0 && r.rho0_g_cm3 < 100.0, "{}", r.rho0_g_cm3);
        let crit = star::critical_numbers(1, 1, &k).unwrap();
        let jupiter = 1.89813e27 / k.nucleon_mass_kg;
        let ratio = crit.n_c / jupiter;
        assert!((1.0 / 3.0..3.0).contains(&ratio), "{ratio}");
        // relativistic minimum exists iff N below the derived threshold
        let thresh = star::relativistic_threshold(1, 2, &k);
        for (scale, bounded) in [(1.0 - 1e-10, true), (1.0 + 1e-10, false)] {
            let inp = star::HeuristicInput::new(thresh * scale, 1, 2, true).unwrap();
            let m = star::relativistic_minimum(&inp, &k);
            assert_eq!(m.regime != star::Regime::Unbounded, bounded, "scale {scale}");
        }
        // log-log exponents of the scaling laws
        let slope = |f: &dyn Fn(f64) -> f64| {
            (f(1e9).abs().ln() - f(1e3).abs().ln()) / (1e9f64.ln() - 1e3f64.ln())
        };
        let b = slope(&|n| star::boson_scaling(n).e0_ry);
        assert!((b - 5.0 / 3.0).abs() < 1e-6, "{b}");
        let f = slope(&|n| star::boson_scaling(n).fermion_e0_ry);
        assert!((f - 1.0).abs() < 1e-6, "{f}");
    });
}

#[test]
fn criterion_8_white_dwarf() {
    criterion(8, "WD EOS limits, residuals, polytropes, mass limit, tau", 60.0, || {
        let pi2 = std::f64::consts::PI.powi(2);
        let nx = |x: f64| x * x * x / (3.0 * pi2);
        // nonrelativistic decade
        let n = nx(1e-2);
        let nr = 0.3 * (3.0 * pi2).powf(2.0 / 3.0) * n.powf(5.0 / 3.0);
        assert!((white_dwarf::energy_density(n).unwrap() / nr - 1.0).abs() < 1e-4);
        // ultrarelativistic: the rest-mass subtraction slows the approach
        // to 4/(3x); 1% is met at x = 1e3 and the law itself at x = 1e2
        let ur = |n: f64| 0.75 * (3.0 * pi2).cbrt() * n.powf(4.0 / 3.0);
        let n3 = nx(1e3);
        assert!((white_dwarf::energy_density(n3).unwrap() / ur(n3) - 1.0).abs() < 1e-2);
        let n2 = nx(1e2);
        let dev = white_dwarf::energy_density(n2).unwrap() / ur(n2) - 1.0;
        assert!((dev + 4.0 / 300.0).abs() < 1e-3, "{dev}");

        // structure residuals
        for x_c in [0.05, 1.0, 20.0] {
            let wd = white_dwarf::solve_scaled(x_c).unwrap();
            assert!(white_dwarf::hydrostatic_residual(&wd) < 1e-6, "x_c={x_c}");
            assert!(white_dwarf::euler_lagrange_residual(&wd) < 1e-6, "x_c={x_c}");
        }

        // low-density branch against the index-3/2 polytrope
        let pi = std::f64::consts::PI;
        let wd = white_dwarf::solve_scaled(0.05).unwrap();
        let k_poly = (3.0 * pi * pi).powf(2.0 / 3.0) / 5.0;
        let a = (2.5 * k_poly * wd.n_c.powf(-1.0 / 3.0) / (4.0 * pi)).sqrt();
        assert!((wd.radius / (a * 3.65375) - 1.0).abs() < 0.02);

        // limiting mass for Z/A = 1/2
        let k = codata();
        let grid: Vec<f64> = (0..10).map(|i| 0.1 * 2f64.powi(i)).collect();
        let curve = white_dwarf::mass_radius_curve(&grid, 2.0 * k.nucleon_mass_kg, &k).unwrap();
        let m = curve.limiting_mass_solar;
        assert!(m / 1.3 < 1.5 && 1.3 / m < 1.5, "M_lim = {m} M_sun");

        // criticality: stable under refinement of the extrapolation ladder,
        // consistent with the index-3 polytrope
        let crit = white_dwarf::critical_tau().unwrap();
        let coarse: Vec<f64> = (0..4)
            .map(|i| white_dwarf::solve_scaled(10.0 * 2f64.powi(i)).unwrap().n_total)
            .collect();
        let coarse_lim = coarse[3] - (coarse[3] - coarse[2]).powi(2)
            / ((coarse[3] - coarse[2]) - (coarse[2] - coarse[1]));
        let fine_lim = white_dwarf::limiting_n_scaled().unwrap();
        assert!((coarse_lim / fine_lim - 1.0).abs() < 5e-3, "{coarse_lim} vs {fine_lim}");
        assert!((fine_lim / crit.n_hat_critical - 1.0).abs() < 5e-3);
        // reported, not asserted: the normalization of the literature
        // tau_c is a convention away from ours
        println!(
            "  note: critical kappa N^(2/3) = {:.4} (ours) vs {} (literature)",
            crit.tau_raw, crit.tau_literature
        );
        // G -> 0: critical N scales as kappa^(-3/2)
        let n_of = |g_scale: f64| {
            (k.kappa(2.0 * k.nucleon_mass_kg) * g_scale).powf(-1.5) * crit.n_hat_critical
        };
        let expo = (n_of(0.5).ln() - n_of(1.0).ln()) / 0.5f64.ln();
        assert!((expo + 1.5).abs() < 1e-3, "{expo}");
        // the Lane-Emden inputs behind the criticality
        let le = lane_emden::solve(3.0).unwrap();
        assert!((le.xi1 - 6.89685).abs() < 1e-4);
    });
}

#[test]
fn criterion_9_reference_bounds() {
    criterion(9, "Lieb-Thirring constant 20; boson A = 0.2, ~1e32 Ry", 1.0, || {
        let spec = bounds::SystemSpec::new(1, vec![1], bounds::Statistics::Fermion).unwrap();
        let b = bounds::lieb_thirring_bound(&spec, bounds::LIEB_THIRRING_CONSTANT).unwrap();
        assert_eq!(b.value_ry, -40.0); // -20 (N + Z^(7/3)) at N = Z = 1
        let boson = bounds::boson_bounds(1e23, bounds::BOSON_UPPER_SMALL);
        assert_eq!(boson.lower_coefficient, 0.2);
        let mag = boson.lower_ry.abs().log10();
        assert!((31.0..33.0).contains(&mag), "10^{mag}");
    });
}
