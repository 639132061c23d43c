//! One line per acceptance criterion; exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use mixent::validate::run_grid;
use mixent_core::oracle::{displaced_thermal_fock, FockSpace};
use mixent_core::qlinalg::{self, eigh, partial_transpose, purity};
use mixent_core::states::{atom_purity, field_purity};
use mixent_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Criterion = (&'static str, &'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn npt_of(p: SchemeParams) -> Option<f64> {
    match p.evaluate() {
        Ok(o) => Some(o.npt()),
        Err(Error::DegenerateState { .. }) => None,
        Err(e) => panic!("{}: {e}", p.describe()),
    }
}

fn jc(p: f64, lambda: f64, gt: f64, n: usize) -> SchemeParams {
    SchemeParams::JaynesCummings(AtomFieldParams::new(p, lambda, gt, n).unwrap())
}

fn cross_kerr(scheme: Scheme, v: f64, d: f64, gamma: f64, r: f64, sign: Sign) -> SchemeParams {
    let thermal = ThermalParams::new(v, d).unwrap();
    let basis = CatBasis::new(gamma).unwrap();
    let micro = MicroState::new(r).unwrap();
    match scheme {
        Scheme::KerrMicroThermal => SchemeParams::KerrMicroThermal {
            micro,
            thermal,
            basis,
        },
        Scheme::BeamSplitter => SchemeParams::BeamSplitter {
            micro,
            thermal,
            basis,
            sign,
        },
        Scheme::TwoThermal => SchemeParams::TwoThermal {
            micro,
            thermal,
            basis,
            sign,
        },
        Scheme::DirectKerr => SchemeParams::DirectKerr { thermal, basis },
        Scheme::JaynesCummings => unreachable!(),
    }
}

fn ac1_jc_oracle() -> Outcome {
    let r = run_grid("jc-grid", None).unwrap();
    outcome(
        r.max_deviation <= 1e-10 && r.elapsed < Duration::from_secs(30),
        format!(
            "{} points, max_dev={:.2e}, {:.2?}",
            r.points, r.max_deviation, r.elapsed
        ),
    )
}

fn ac2_kerr_oracle() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for g in ["kerr-grid", "bs-grid", "tt-grid", "direct-grid"] {
        let r = run_grid(g, Some(1e-8)).unwrap();
        ok &= r.passed();
        parts.push(format!("{g} max_dev={:.2e}", r.max_deviation));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(120);
    outcome(ok, format!("{}, {elapsed:.2?}", parts.join(", ")))
}

fn ac3_separability_zeros() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    let mut impossible = 0;
    let mut record = |p: SchemeParams| match npt_of(p) {
        Some(n) => {
            worst = worst.max(n);
            checked += 1;
        }
        None => impossible += 1,
    };
    for p in [0.0, 0.5, 0.8, 1.0] {
        for lambda in [0.0, 0.5, 0.999] {
            for n in [0, 10, 100] {
                record(jc(p, lambda, 0.0, n));
            }
        }
    }
    for k in 1..=8 {
        for lambda in [0.0, 0.5, 0.999] {
            record(jc(1.0, lambda, k as f64 * PI / 2.0, 0));
        }
    }
    for v in [1.0, 2.0, 10.0, 100.0, 1000.0] {
        for gamma in [1.0, 2.0, 3.0] {
            for r in [0.0, 0.1, 1.0] {
                record(cross_kerr(
                    Scheme::KerrMicroThermal,
                    v,
                    0.0,
                    gamma,
                    r,
                    Sign::Plus,
                ));
            }
            record(cross_kerr(
                Scheme::DirectKerr,
                v,
                0.0,
                gamma,
                0.0,
                Sign::Plus,
            ));
            for d in [0.0, 1.0, 5.0 * f64::sqrt(v)] {
                record(cross_kerr(
                    Scheme::KerrMicroThermal,
                    v,
                    d,
                    gamma,
                    0.0,
                    Sign::Plus,
                ));
                for s in [Sign::Plus, Sign::Minus] {
                    record(cross_kerr(Scheme::BeamSplitter, v, d, gamma, 0.0, s));
                    record(cross_kerr(Scheme::TwoThermal, v, d, gamma, 0.0, s));
                }
            }
        }
    }
    outcome(
        worst <= 1e-10,
        format!("{checked} points, {impossible} zero-probability projections skipped, max NPT={worst:.2e}"),
    )
}

fn ac4_figure1() -> Outcome {
    let npt = |p: f64, gt: f64| npt_of(jc(p, 0.999, gt, 0)).unwrap();
    let mut min_inside = f64::INFINITY;
    for k in 1..400 {
        if k == 200 {
            continue;
        }
        min_inside = min_inside.min(npt(1.0, PI * k as f64 / 400.0));
    }
    let zeros = npt(1.0, PI / 2.0).max(npt(1.0, PI));
    let drops: Vec<f64> = [1.0, 0.9, 0.8].iter().map(|&p| npt(p, 0.7)).collect();
    let decreasing = drops[0] > drops[1] && drops[1] > drops[2];
    outcome(
        min_inside > 0.0 && zeros <= 1e-10 && decreasing,
        format!(
            "min NPT off zeros={min_inside:.2e}, NPT at pi/2,pi <= {zeros:.2e}, p=1,0.9,0.8 -> {:.4},{:.4},{:.4}",
            drops[0], drops[1], drops[2]
        ),
    )
}

fn ac5_onset() -> Outcome {
    let mut ok = true;
    let mut weakest = f64::INFINITY;
    let mut at_zero: f64 = 0.0;
    for scheme in [
        Scheme::KerrMicroThermal,
        Scheme::TwoThermal,
        Scheme::DirectKerr,
    ] {
        for v in [10.0, 100.0, 1000.0] {
            let far = npt_of(cross_kerr(
                scheme,
                v,
                5.0 * f64::sqrt(v),
                2.0,
                1.0,
                Sign::Plus,
            ))
            .unwrap();
            let near = npt_of(cross_kerr(scheme, v, 0.0, 2.0, 1.0, Sign::Plus)).unwrap();
            ok &= far > 0.0 && near <= 1e-10;
            weakest = weakest.min(far);
            at_zero = at_zero.max(near);
        }
    }
    outcome(
        ok,
        format!("min NPT(d=5 sqrt V)={weakest:.3e}, max NPT(d=0)={at_zero:.2e}"),
    )
}

fn ac6_high_mixture() -> Outcome {
    let n = npt_of(cross_kerr(
        Scheme::BeamSplitter,
        1000.0,
        0.0,
        2.0,
        0.1,
        Sign::Plus,
    ))
    .unwrap();
    outcome(n > 0.0, format!("NPT={n:.6e}"))
}

fn random_density(rng: &mut StdRng) -> BipartiteMatrix {
    let g: Vec<Complex64> = (0..16)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let g = BipartiteMatrix::new(2, 2, g).unwrap();
    qlinalg::normalize(&g.matmul(&g.adjoint()).unwrap()).unwrap()
}

fn ac7_qlinalg() -> Outcome {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let bell = BipartiteMatrix::projector(
        2,
        2,
        &[Complex64::new(s, 0.0), z, z, Complex64::new(s, 0.0)],
    )
    .unwrap();
    let bell_err = (qlinalg::npt(&bell).unwrap() - 1.0).abs();

    let singlet = [z, Complex64::new(s, 0.0), Complex64::new(-s, 0.0), z];
    let psi = BipartiteMatrix::projector(2, 2, &singlet).unwrap();
    let werner = BipartiteMatrix::from_fn(2, 2, |i, j| {
        psi[(i, j)] * 0.5
            + if i == j {
                Complex64::new(0.125, 0.0)
            } else {
                z
            }
    });
    let werner_err = (qlinalg::npt(&werner).unwrap() - 0.25).abs();

    let mut rng = StdRng::seed_from_u64(2024);
    let mut involution = true;
    let mut trace_err: f64 = 0.0;
    for _ in 0..1000 {
        let rho = random_density(&mut rng);
        for f in [Factor::A, Factor::B] {
            involution &= partial_transpose(&partial_transpose(&rho, f), f) == rho;
        }
        let h = rho.hermitian_part();
        let h = BipartiteMatrix::from_fn(2, 2, |i, j| {
            h[(i, j)] * rng.gen_range(-3.0..3.0)
                + if i == j {
                    Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
                } else {
                    z
                }
        })
        .hermitian_part();
        let eig = eigh(4, h.entries()).unwrap();
        trace_err = trace_err.max((eig.values.iter().sum::<f64>() - h.trace().re).abs());
    }
    outcome(
        bell_err <= 1e-12 && werner_err <= 1e-10 && involution && trace_err <= 1e-10,
        format!("bell err={bell_err:.1e}, werner err={werner_err:.1e}, involution={involution}, eigen-trace err={trace_err:.1e}"),
    )
}

fn ac8_purities() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        let atom = BipartiteMatrix::from_real(2, 1, &[p, 0.0, 0.0, 1.0 - p]).unwrap();
        worst = worst.max((atom_purity(p) - purity(&atom).unwrap()).abs());
        let micro = MicroState::new(p).unwrap();
        worst = worst.max((micro.purity() - purity(&micro.matrix()).unwrap()).abs());
    }
    for lambda in [0.0f64, 0.5, 0.9] {
        let space = FockSpace::for_thermal(lambda, 1e-12, 1).unwrap();
        let field = displaced_thermal_fock((1.0 + lambda) / (1.0 - lambda), 0.0, &space).unwrap();
        worst = worst.max((field_purity(lambda) - purity(&field).unwrap()).abs());
    }
    outcome(worst <= 1e-10, format!("max purity err={worst:.1e}"))
}

fn ac9_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_mixent"))
            .args(["preset", "run", "fig2a", "--out"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success());
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    outcome(
        a == b && !a.is_empty(),
        format!("{} bytes, identical={}", a.len(), a == b),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", "JC closed form vs Fock oracle", ac1_jc_oracle),
        (
            "AC2",
            "cross-Kerr closed forms vs quadrature",
            ac2_kerr_oracle,
        ),
        ("AC3", "exact separability zeros", ac3_separability_zeros),
        ("AC4", "atom-field curve shape", ac4_figure1),
        ("AC5", "entanglement onset at large displacement", ac5_onset),
        (
            "AC6",
            "beam-splitter entanglement at high mixture",
            ac6_high_mixture,
        ),
        ("AC7", "linear-algebra unit checks", ac7_qlinalg),
        ("AC8", "purity formulas", ac8_purities),
        ("AC9", "byte-identical preset output", ac9_determinism),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let o = check();
        if !o.passed {
            failed += 1;
        }
        println!(
            "{id} {} {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
