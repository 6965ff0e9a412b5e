use proptest::prelude::*;

use super::*;
use crate::exactnum::GaussRat;
use crate::qdiff::{family, mu_double_zero_f64, q0, q0_prime, residue_at, Point, StrebelParams};

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn sorted(mut v: [f64; 3]) -> [f64; 3] {
    v.sort_by(f64::total_cmp);
    v
}

fn close3(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
    let (a, b) = (sorted(a), sorted(b));
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() < tol)
}

/// `int_0^x dt / (2 pi sqrt(t (1 - t)))` by the midpoint rule after `t = v^2`.
fn arcsine_oracle_direct(x: f64) -> f64 {
    let n = 200_000;
    let top = x.sqrt();
    let h = top / n as f64;
    (0..n)
        .map(|k| {
            let v = (k as f64 + 0.5) * h;
            2.0 * v / (2.0 * PI * (v * v * (1.0 - v * v)).sqrt()) * h
        })
        .sum()
}

#[test]
fn legendre_based_period_matches_arcsine() {
    let q = NumDiff::family(c(0.9, 0.0), c(0.2, 0.0), 128).unwrap();
    assert_eq!(q.zeros().len(), 2);
    assert!(q.zeros().iter().all(|(_, m)| *m == 2));
    let r = periods(&q, 1e-14).unwrap();
    let p = r.periods[0].value();
    assert!(p.im.abs() < 1e-12);
    let s = (0.8f64).asin() / PI;
    assert!((s - 0.2951672353008665).abs() < 1e-15);
    assert!((s - arcsine_oracle_direct(0.64)).abs() < 1e-8);
    assert!((offset_from_half(p.re) - s).abs() < 1e-8, "period {p}");
    assert!((arc_length_formula(0.9).unwrap() - s).abs() < 1e-15);
    assert!((arc_length_numeric(0.9, 128).unwrap() - s).abs() < 1e-8);
}

#[test]
fn exact_double_zeros_through_the_exact_path() {
    let q = family(&StrebelParams::new(GaussRat::from_frac(9, 10), GaussRat::from_frac(1, 5)).unwrap()).unwrap();
    let n = NumDiff::from_quad(&q, 128).unwrap();
    assert_eq!(n.zeros().iter().map(|z| z.1).collect::<Vec<_>>(), vec![2, 2]);
    let r = periods(&n, 1e-14).unwrap();
    assert!((offset_from_half(r.periods[0].re) - arc_length_formula(0.9).unwrap()).abs() < 1e-10);
}

#[test]
fn symmetric_case_has_zero_offset() {
    let q = NumDiff::family(c(0.5, 0.0), c(1.0, 0.0), 128).unwrap();
    let zs: Vec<C> = q.zeros().iter().map(|z| z.0).collect();
    assert!((zs[0] - c(0.5, -0.5)).norm() < 1e-12 && (zs[1] - c(0.5, 0.5)).norm() < 1e-12);
    let r = periods(&q, 1e-14).unwrap();
    assert!(offset_from_half(r.periods[0].re) < 1e-12);
    for (p, _) in q.poles() {
        let t = trace_trajectory(&q, p + 0.05, &TraceOptions::default()).unwrap();
        assert!(t.closed && (t.arc_length - 1.0).abs() < 1e-6, "{p}: {}", t.arc_length);
    }
}

#[test]
fn arc_length_formula_examples() {
    assert_eq!(arc_length_formula(0.5).unwrap(), 0.0);
    let l = (1.0 + (0.3 * PI).sin()) / 2.0;
    assert!((arc_length_formula(l).unwrap() - 0.3).abs() < 1e-14);
    assert!(arc_length_formula(1.0).is_err());
    assert!(arc_length_formula(0.2).is_err());
}

#[test]
fn residual_examples() {
    assert!(strebel_residual(c(0.75, 0.0), c(0.5, 0.0), 128).unwrap() < 1e-10);
    assert!(strebel_residual(c(0.75, 0.0), c(0.5, 0.3), 128).unwrap() > 1e-3);
    assert!(strebel_residual(c(0.9726, 0.2324), c(0.3689, 0.04346), 128).unwrap() < 1e-3);
    assert!(matches!(strebel_residual(c(1.0, 0.0), c(0.0, 0.0), 128), Err(Error::DegenerateLambda)));
}

#[test]
fn degree_eight_instance() {
    let s2 = 2f64.sqrt();
    let (l, m) = (c(0.5, 5.0 * s2 / 4.0), c(1.0, 1.5 * s2));
    let q = NumDiff::family(l, m, 128).unwrap();
    let r = periods(&q, 1e-14).unwrap();
    assert_eq!(r.zeros.len(), 4);
    assert!(r.residual < 1e-6);
    assert!((find_mu(l, &opts()).unwrap() - m).norm() < 1e-6);
    let e = edge_lengths(l, m, 1e-9, 128).unwrap();
    assert!(close3(e, [0.5, 0.25, 0.25], 1e-8), "{e:?}");
    let mut r = r;
    r.attach_edge_lengths(&q, 1e-9).unwrap();
    assert_eq!(r.edge_lengths, Some(e));
}

#[test]
fn theta_instance() {
    let s3 = 3f64.sqrt();
    let (l, m) = (c(0.5, -s3 / 2.0), c(1.0, -s3 / 3.0));
    assert!((find_mu(l, &opts()).unwrap() - m).norm() < 1e-6);
    let e = edge_lengths(l, m, 1e-9, 128).unwrap();
    assert!(close3(e, [1.0 / 3.0; 3], 1e-8), "{e:?}");
}

#[test]
fn solver_on_real_lambda() {
    for l in [0.55, 0.6, 0.75, 0.9, -0.5, 2.5] {
        let mu = find_mu(c(l, 0.0), &opts()).unwrap();
        assert!((mu - mu_double_zero_f64(l).unwrap()).norm() < 1e-8, "{l}: {mu}");
    }
    let mu = find_mu(c(0.6, 0.0), &opts()).unwrap();
    assert!((mu - 0.8).norm() < 1e-8);
}

#[test]
fn solver_recovers_closed_form_from_a_perturbed_seed() {
    for l in [0.6, 2.5] {
        let exact = mu_double_zero_f64(l).unwrap();
        let mu = find_mu_from(c(l, 0.0), c(exact + 0.01, 0.01), &opts()).unwrap();
        assert!((mu - exact).norm() < 1e-8, "{l}: {mu}");
    }
}

#[test]
fn example_rows_and_conjugation() {
    let rows = [
        (c(1.3157, -1.5429), c(1.6586, -1.87049)),
        (c(0.9726, 0.2324), c(0.3689, 0.04346)),
        (c(1.3157, 1.5429), c(1.6586, 1.87049)),
    ];
    let mus: Vec<C> = rows.iter().map(|(l, _)| find_mu(*l, &opts()).unwrap()).collect();
    for ((_, m), got) in rows.iter().zip(&mus) {
        assert!((got - m).norm() < 2e-3, "{got} vs {m}");
    }
    assert!((mus[0] - mus[2].conj()).norm() < 1e-9);

    let e0 = edge_lengths(rows[0].0, mus[0], 1e-9, 128).unwrap();
    assert!(close3(e0, [1.0 / 3.0, 1.0 / 6.0, 0.5], 2e-3), "{e0:?}");
    let e1 = edge_lengths(rows[1].0, mus[1], 1e-9, 128).unwrap();
    assert!(close3(e1, [2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0], 2e-3), "{e1:?}");
    for e in [e0, e1] {
        assert!((e.iter().sum::<f64>() - 1.0).abs() < 1e-8);
    }
}

#[test]
fn edge_lengths_reject_non_strebel_and_double_zeros() {
    assert!(matches!(edge_lengths(c(0.75, 0.0), c(0.5, 0.3), 1e-9, 128), Err(Error::Domain(_))));
    assert!(matches!(edge_lengths(c(0.75, 0.0), c(0.5, 0.0), 1e-9, 128), Err(Error::Degenerate(_))));
}

#[test]
fn periods_survive_path_perturbation() {
    let s2 = 2f64.sqrt();
    let q = NumDiff::family(c(0.5, 5.0 * s2 / 4.0), c(1.0, 1.5 * s2), 128).unwrap();
    let zs: Vec<C> = q.zeros().iter().map(|z| z.0).collect();
    let mut seed = 7u64;
    let mut next = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut tested = 0;
    for j in 1..4 {
        let (base, path) = q.period(zs[0], zs[j], 1e-14).unwrap();
        if path.pieces.len() != 1 {
            continue;
        }
        tested += 1;
        let (a, b) = (zs[0], zs[j]);
        for _ in 0..10 {
            let mid = (a + b) * 0.5 + c(next(), next()) * (0.1 * (b - a).norm());
            let p = Path::polyline(&[a, mid, b], (true, true));
            let v = integrate(&q, &p, 1e-14, 0).unwrap().value;
            assert!((v - base).norm() < 1e-11 || (v + base).norm() < 1e-11, "{v} vs {base}");
        }
    }
    assert!(tested >= 2);
}

#[test]
fn finer_subdivision_agrees() {
    let q = NumDiff::family(c(0.9726, 0.2324), c(0.3689, 0.04346), 128).unwrap();
    let zs: Vec<C> = q.zeros().iter().map(|z| z.0).collect();
    let poles: Vec<C> = q.poles().iter().map(|p| p.0).collect();
    for j in 1..4 {
        let path = Path::straight(zs[0], zs[j], &poles, q.guard_radius()).unwrap();
        let a = integrate(&q, &path, 1e-13, 0).unwrap();
        let b = integrate(&q, &path, 1e-13, 1).unwrap();
        assert!(b.panels >= a.panels);
        assert!((a.value - b.value).norm() < DEFAULT_TOLERANCE / 10.0);
    }
}

#[test]
fn ellipse_of_the_building_block() {
    let q = NumDiff::from_quad(&q0_prime(), 128).unwrap();
    let t = trace_trajectory(&q, c(0.5, 0.5), &TraceOptions::default()).unwrap();
    assert!(t.closed);
    assert!((t.arc_length - 1.0).abs() < 1e-6, "{}", t.arc_length);
    assert!(t.horizontal_defect < 1e-3);
    // Confocal ellipse with foci 0 and 1 through 1/2 + i/2.
    let f = t.points[0].norm() + (t.points[0] - 1.0).norm();
    for z in &t.points {
        assert!((z.norm() + (z - 1.0).norm() - f).abs() < 1e-8);
    }
}

#[test]
fn slit_of_the_building_block() {
    let q = NumDiff::from_quad(&q0_prime(), 128).unwrap();
    let t = trace_trajectory(&q, c(0.3, 0.0), &TraceOptions::default()).unwrap();
    assert!(!t.closed);
    assert!((t.arc_length - 0.5).abs() < 1e-6, "{}", t.arc_length);
    let ends: Vec<f64> = t
        .ends
        .iter()
        .map(|e| match e {
            Termination::Critical { re, order: -1, .. } => *re,
            other => panic!("{other:?}"),
        })
        .collect();
    assert_eq!(ends, vec![0.0, 1.0]);
}

#[test]
fn loop_around_a_double_pole_has_residue_length() {
    let q = q0();
    let n = NumDiff::from_quad(&q, 128).unwrap();
    let residue = residue_at(&q, &Point::int(1)).unwrap().value().re;
    for z in [c(1.3, 0.0), c(1.0, 0.4), c(0.8, -0.1)] {
        let t = trace_trajectory(&n, z, &TraceOptions::default()).unwrap();
        assert!(t.closed);
        assert!((t.arc_length - residue).abs() < 1e-6, "{z}: {}", t.arc_length);
    }
}

#[test]
fn family_loops_match_residues() {
    let params = StrebelParams::new(GaussRat::from_int(2), GaussRat::from_int(1)).unwrap();
    let q = family(&params).unwrap();
    let n = NumDiff::from_quad(&q, 128).unwrap();
    for p in [Point::int(0), Point::int(1), Point::int(2)] {
        let z = p.as_finite().unwrap().clone();
        let at = BigComplex::from_gauss(&z, 64).to_complex64();
        let t = trace_trajectory(&n, at + c(0.02, 0.01), &TraceOptions::default()).unwrap();
        let res = residue_at(&q, &p).unwrap().value().re;
        assert!(t.closed && (t.arc_length - res).abs() < 1e-6, "{p}: {}", t.arc_length);
    }
}

#[test]
fn trace_svg_is_deterministic() {
    let q = NumDiff::from_quad(&q0_prime(), 128).unwrap();
    let t = trace_trajectory(&q, c(0.5, 0.5), &TraceOptions::default()).unwrap();
    let a = t.to_svg(&q);
    assert_eq!(a, trace_trajectory(&q, c(0.5, 0.5), &TraceOptions::default()).unwrap().to_svg(&q));
    assert!(a.starts_with("<svg") && a.contains("polyline") && a.contains("circle"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn solver_matches_closed_form(l in 0.01f64..0.99) {
        prop_assume!((l - 0.5).abs() > 1e-3);
        let mu = find_mu(c(l, 0.0), &opts()).unwrap();
        prop_assert!((mu - mu_double_zero_f64(l).unwrap()).norm() < 1e-8);
    }
}
