use ndarray::{Array2, Array3};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::coloring::{Coloring, SpinNetwork};
use crate::corpus;
use crate::topology::Orientation;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn frob(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn frob3(m: &Array3<Complex64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn theta_net(c1: u32, c2: u32, c3: u32) -> SpinNetwork {
    SpinNetwork::new(
        corpus::theta(),
        Coloring::from_pairs([("e1", c1), ("e2", c2), ("e3", c3)]),
        None,
    )
    .unwrap()
}

#[test]
fn quaternion_algebra() {
    let mut r = rng(7);
    for _ in 0..50 {
        let (a, b, c) = (haar_sample(&mut r), haar_sample(&mut r), haar_sample(&mut r));
        assert!((a.norm() - 1.0).abs() < 1e-12);
        // associativity
        assert!(((a * b) * c).approx_eq(&(a * (b * c)), 1e-12));
        // inverse = conjugate
        assert!((a * a.inverse()).approx_eq(&GroupElement::IDENTITY, 1e-12));
    }
}

#[test]
fn haar_sampling_is_deterministic() {
    let a = haar_sample(&mut rng(42));
    let b = haar_sample(&mut rng(42));
    assert_eq!(a, b);
}

#[test]
fn haar_character_moments() {
    // E[Tr] = 0 and E[Tr^2] = 1 by orthonormality of the fundamental
    // character; tolerance 3 * (2 / sqrt(N)).
    let n = 100_000;
    let mut r = rng(0);
    let (mut s1, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let tr = haar_sample(&mut r).trace();
        s1 += tr;
        s2 += tr * tr;
    }
    let tol = 3.0 * 2.0 / (n as f64).sqrt();
    assert!((s1 / n as f64).abs() < tol, "E[Tr] = {}", s1 / n as f64);
    assert!((s2 / n as f64 - 1.0).abs() < tol, "E[Tr^2] = {}", s2 / n as f64);
}

#[test]
fn su2_matrix_is_homomorphism() {
    let mut r = rng(3);
    for _ in 0..50 {
        let (a, b) = (haar_sample(&mut r), haar_sample(&mut r));
        let lhs = su2_matrix(&(a * b));
        let rhs = su2_matrix(&a).dot(&su2_matrix(&b));
        assert!(frob(&(&lhs - &rhs)) < 1e-12);
    }
}

#[test]
fn irrep_small_cases() {
    let mut r = rng(5);
    let u = haar_sample(&mut r);
    assert_eq!(irrep_matrix(0, &u), Array2::eye(1));
    assert!(frob(&(&irrep_matrix(1, &GroupElement::IDENTITY) - &Array2::<Complex64>::eye(2))) < 1e-15);
    assert!(frob(&(&irrep_matrix(1, &u) - &su2_matrix(&u))) < 1e-15);
}

#[test]
fn irrep_diagonal_circle() {
    // (w, z) = (cos t, sin t) maps to diag(e^{2it}, 1, e^{-2it}) at color 2,
    // weight descending; trace is the character 1 + 2 cos 2t.
    let t = 0.731_f64;
    let u = GroupElement::new(t.cos(), 0.0, 0.0, t.sin()).unwrap();
    let d = irrep_matrix(2, &u);
    let expect = [
        Complex64::from_polar(1.0, 2.0 * t),
        Complex64::ONE,
        Complex64::from_polar(1.0, -2.0 * t),
    ];
    for (i, e) in expect.iter().enumerate() {
        assert!((d[(i, i)] - e).norm() < 1e-12);
        for j in 0..3 {
            if j != i {
                assert!(d[(i, j)].norm() < 1e-12);
            }
        }
    }
    let trace = d[(0, 0)] + d[(1, 1)] + d[(2, 2)];
    assert!((trace.re - (1.0 + 2.0 * (2.0 * t).cos())).abs() < 1e-12);
    // character identity chi_1(t) = sin(3t)/sin(t)
    assert!((trace.re - (3.0 * t).sin() / t.sin()).abs() < 1e-12);
}

#[test]
fn irrep_multiplicative_and_unitary() {
    let mut r = rng(11);
    for c in 0..=6u32 {
        for _ in 0..50 {
            let (a, b) = (haar_sample(&mut r), haar_sample(&mut r));
            let prod = irrep_matrix(c, &(a * b));
            let sep = irrep_matrix(c, &a).dot(&irrep_matrix(c, &b));
            assert!(frob(&(&prod - &sep)) < 1e-9, "multiplicativity at color {c}");

            let m = irrep_matrix(c, &a);
            let gram = m.t().mapv(|z| z.conj()).dot(&m);
            assert!(frob(&(&gram - &Array2::<Complex64>::eye((c + 1) as usize))) < 1e-10, "unitarity at color {c}");
        }
    }
}

#[test]
fn epsilon_small_cases() {
    let e1 = epsilon_tensor(1);
    assert_eq!(e1[(0, 1)], Complex64::ONE);
    assert_eq!(e1[(1, 0)], -Complex64::ONE);
    assert_eq!(epsilon_tensor(0)[(0, 0)], Complex64::ONE);

    // eps^2 = (-1)^c and symmetry (-1)^c
    for c in 0..=6u32 {
        let eps = epsilon_tensor(c);
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        let sq = eps.dot(&eps);
        assert!(frob(&(&sq - &(Array2::<Complex64>::eye((c + 1) as usize) * sign))) < 1e-15);
        assert!(frob(&(&eps.t().to_owned() - &(&eps * sign))) < 1e-15);
    }
}

#[test]
fn epsilon_is_invariant() {
    // rho(g)^T eps rho(g) = eps
    let mut r = rng(13);
    for c in 0..=6u32 {
        let eps = epsilon_tensor(c);
        for _ in 0..20 {
            let g = haar_sample(&mut r);
            let m = irrep_matrix(c, &g);
            let moved = m.t().dot(&eps).dot(&m);
            assert!(frob(&(&moved - &eps)) < 1e-9, "color {c}");
        }
    }
}

fn triple_action(
    t: &Array3<Complex64>,
    colors: (u32, u32, u32),
    g: &GroupElement,
) -> Array3<Complex64> {
    let (d0, d1, d2) = t.dim();
    let m0 = irrep_matrix(colors.0, g);
    let m1 = irrep_matrix(colors.1, g);
    let m2 = irrep_matrix(colors.2, g);
    let mut out = Array3::zeros((d0, d1, d2));
    for a in 0..d0 {
        for b in 0..d1 {
            for c in 0..d2 {
                let mut sum = Complex64::ZERO;
                for a2 in 0..d0 {
                    for b2 in 0..d1 {
                        for c2 in 0..d2 {
                            sum += m0[(a, a2)] * m1[(b, b2)] * m2[(c, c2)] * t[(a2, b2, c2)];
                        }
                    }
                }
                out[(a, b, c)] = sum;
            }
        }
    }
    out
}

#[test]
fn intertwiner_110() {
    // proportional to eps in the first two slots: entries +-1/sqrt(2)
    let t = intertwiner(1, 1, 0);
    let s = 1.0 / 2.0_f64.sqrt();
    assert!((t[(0, 1, 0)].re.abs() - s).abs() < 1e-12);
    assert!((t[(1, 0, 0)].re.abs() - s).abs() < 1e-12);
    assert!(t[(0, 0, 0)].norm() < 1e-12);
    assert!(t[(1, 1, 0)].norm() < 1e-12);
    assert!((frob3(&t) - 1.0).abs() < 1e-12);
    // phase convention: first nonzero entry positive
    assert!(t[(0, 1, 0)].re > 0.0);
    assert!(t[(0, 1, 0)].im.abs() < 1e-15);
}

#[test]
fn intertwiner_inadmissible_is_zero() {
    assert!(frob3(&intertwiner(1, 1, 1)) < 1e-15, "parity fails");
    assert!(frob3(&intertwiner(4, 1, 1)) < 1e-15, "triangle fails");
}

#[test]
fn intertwiner_invariance_all_small_triples() {
    let mut r = rng(17);
    for c1 in 0..=4u32 {
        for c2 in 0..=4u32 {
            for c3 in 0..=4u32 {
                if !crate::coloring::VertexTriple([c1, c2, c3]).is_admissible() {
                    continue;
                }
                let t = intertwiner(c1, c2, c3);
                assert!((frob3(&t) - 1.0).abs() < 1e-12, "unit norm ({c1},{c2},{c3})");
                for _ in 0..20 {
                    let g = haar_sample(&mut r);
                    let moved = triple_action(&t, (c1, c2, c3), &g);
                    let residual = frob3(&(&moved - &t));
                    assert!(residual < 1e-9, "invariance ({c1},{c2},{c3}): {residual}");
                }
            }
        }
    }
}

#[test]
fn network_tensor_shapes_and_pairing() {
    let n = theta_net(1, 1, 0);
    let o = n.graph().find_orientation().unwrap();
    let nt = network_tensor(&n, &o).unwrap();
    assert_eq!(nt.intertwiner_at(&"u".into()).unwrap().dim(), (2, 2, 1));
    assert_eq!(nt.pairings().len(), 3);
    for p in nt.pairings() {
        assert_ne!(p.tail, p.head, "theta has no loops");
    }

    // a loop pairs two slots of the same vertex tensor
    let db = SpinNetwork::new(
        corpus::dumbbell(),
        Coloring::from_pairs([("bridge", 0), ("loop1", 2), ("loop2", 2)]),
        None,
    )
    .unwrap();
    let o = db.graph().find_orientation().unwrap();
    let nt = network_tensor(&db, &o).unwrap();
    let lp = nt.pairings().iter().find(|p| p.edge.as_str() == "loop1").unwrap();
    assert_eq!(lp.tail.0, lp.head.0);
    assert_ne!(lp.tail.1, lp.head.1);
}

#[test]
fn evaluate_all_zero_colors_is_one() {
    for g in corpus::all() {
        let zero = Coloring::from_pairs(g.edge_ids().map(|e| (e.clone(), 0u32)));
        let n = SpinNetwork::new(g.clone(), zero, None).unwrap();
        let o = g.find_orientation().unwrap();
        let mut r = rng(23);
        let t = EdgeAssignment::random(&g, &mut r);
        let f = evaluate(&n, &o, &t).unwrap();
        assert!((f - Complex64::ONE).norm() < 1e-12, "{:?}", g.name());
    }
}

#[test]
fn evaluate_matches_dense_trace_oracle() {
    // contraction engine vs the independent Tr[B rho(t)] route
    let mut r = rng(29);
    for net in [theta_net(1, 1, 0), theta_net(2, 1, 1), theta_net(2, 2, 2)] {
        let o = net.graph().find_orientation().unwrap();
        let nt = network_tensor(&net, &o).unwrap();
        let b = network_endomorphism(&nt).unwrap();
        for _ in 0..10 {
            let t = EdgeAssignment::random(net.graph(), &mut r);
            let direct = evaluate_tensor(&nt, &t).unwrap();
            let rho = edge_representation(&net, &t, false).unwrap();
            let traced = trace_pairing(&b, &rho);
            assert!((direct - traced).norm() < 1e-9, "{direct} vs {traced}");
        }
    }
}

#[test]
fn evaluate_theta_110_at_identity() {
    let n = theta_net(1, 1, 0);
    // pin the orientation: e1, e2 tail at u; e3 tail at v
    let o = Orientation::from_tail_sides(
        [("e1".into(), 0), ("e2".into(), 0), ("e3".into(), 1)].into(),
    );
    assert!(o.is_valid_for(n.graph()));
    let f = evaluate(&n, &o, &EdgeAssignment::identity(n.graph())).unwrap();
    assert!(f.im.abs() < 1e-12, "real at the identity");
    assert!(f.norm() > 1e-12, "nonzero pairing of the two intertwiners");

    // independent dense contraction over the 8 entries: at the identity the
    // kernel of each edge is eps between its tail and head slots, and e3
    // (color 0) is scalar. Slot order at u and v is (e1, e2, e3).
    let i = intertwiner(1, 1, 0);
    let eps = epsilon_tensor(1);
    let mut expected = Complex64::ZERO;
    for a1 in 0..2 {
        for b1 in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    expected += i[(a1, a2, 0)] * i[(b1, b2, 0)] * eps[(a1, b1)] * eps[(a2, b2)];
                }
            }
        }
    }
    assert!((f - expected).norm() < 1e-12, "{f} vs {expected}");
}

#[test]
fn gauge_act_identity_and_center() {
    let g = corpus::theta();
    let o = g.find_orientation().unwrap();
    let mut r = rng(31);
    let t = EdgeAssignment::random(&g, &mut r);

    let same = gauge_act(&g, &o, &GaugeAssignment::identity(&g), &t).unwrap();
    assert_eq!(same, t);

    let center = GaugeAssignment::constant(&g, GroupElement::MINUS_IDENTITY);
    let acted = gauge_act(&g, &o, &center, &t).unwrap();
    for (e, q) in t.iter() {
        assert!(acted.get(e).unwrap().approx_eq(&q, 1e-15), "center acts trivially");
    }
}

#[test]
fn gauge_act_is_group_action() {
    let g = corpus::twoloop();
    let o = g.find_orientation().unwrap();
    let mut r = rng(37);
    for _ in 0..20 {
        let t = EdgeAssignment::random(&g, &mut r);
        let g1 = GaugeAssignment::random(&g, &mut r);
        let g2 = GaugeAssignment::random(&g, &mut r);
        let once = gauge_act(&g, &o, &g1.compose(&g2), &t).unwrap();
        let twice = gauge_act(&g, &o, &g1, &gauge_act(&g, &o, &g2, &t).unwrap()).unwrap();
        for (e, q) in once.iter() {
            assert!(twice.get(e).unwrap().approx_eq(&q, 1e-12));
        }
    }
}

#[test]
fn gauge_invariance_of_states() {
    let mut r = rng(41);
    for net in [
        theta_net(1, 1, 0),
        theta_net(2, 1, 1),
        theta_net(2, 2, 2),
        theta_net(3, 2, 1),
    ] {
        let o = net.graph().find_orientation().unwrap();
        let nt = network_tensor(&net, &o).unwrap();
        for _ in 0..25 {
            let t = EdgeAssignment::random(net.graph(), &mut r);
            let gauge = GaugeAssignment::random(net.graph(), &mut r);
            let moved = gauge_act(net.graph(), &o, &gauge, &t).unwrap();
            let f1 = evaluate_tensor(&nt, &t).unwrap();
            let f2 = evaluate_tensor(&nt, &moved).unwrap();
            assert!((f1 - f2).norm() < 1e-9, "gauge invariance: {f1} vs {f2}");
        }
    }
}

#[test]
fn gauge_invariance_with_loops() {
    let db = SpinNetwork::new(
        corpus::dumbbell(),
        Coloring::from_pairs([("bridge", 2), ("loop1", 1), ("loop2", 2)]),
        None,
    )
    .unwrap();
    let o = db.graph().find_orientation().unwrap();
    let nt = network_tensor(&db, &o).unwrap();
    let mut r = rng(43);
    for _ in 0..25 {
        let t = EdgeAssignment::random(db.graph(), &mut r);
        let gauge = GaugeAssignment::random(db.graph(), &mut r);
        let moved = gauge_act(db.graph(), &o, &gauge, &t).unwrap();
        let f1 = evaluate_tensor(&nt, &t).unwrap();
        let f2 = evaluate_tensor(&nt, &moved).unwrap();
        assert!((f1 - f2).norm() < 1e-9);
    }
}

#[test]
fn evaluate_orientation_change_transports_with_sign() {
    // With the holonomy transported (t_e inverted on reversed edges), the
    // state is orientation-independent up to the documented sign: a factor
    // (-1)^c per reversed edge of color c. In particular |f| agrees.
    for net in [theta_net(2, 1, 1), theta_net(2, 2, 2), theta_net(1, 1, 0)] {
        let g = net.graph();
        let mut r = rng(47);
        let t = EdgeAssignment::random(g, &mut r);
        let base_o = g.find_orientation().unwrap();
        let base = evaluate(&net, &base_o, &t).unwrap();

        // theta has no loops: try all 8 orientations of the 3 edges
        for mask in 0u8..8 {
            let o = Orientation::from_tail_sides(
                g.edge_ids()
                    .enumerate()
                    .map(|(i, e)| (e.clone(), ((mask >> i) & 1) as usize))
                    .collect(),
            );
            let moved = reorient_assignment(&t, &base_o, &o);
            let f = evaluate(&net, &o, &moved).unwrap();
            let sign: f64 = g
                .edge_ids()
                .map(|e| {
                    if o.tail_side(e) == base_o.tail_side(e) || net.color(e) % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    }
                })
                .product();
            assert!((f - base * sign).norm() < 1e-9, "mask {mask:03b}: {f} vs {base} * {sign}");
            assert!((f.norm() - base.norm()).abs() < 1e-9);
        }
    }
}

#[test]
fn peter_weyl_own_frequency_recovers_b() {
    // audit fixture: the estimate converges to B / dim^2
    let net = theta_net(1, 1, 0);
    let o = net.graph().find_orientation().unwrap();
    let nt = network_tensor(&net, &o).unwrap();
    let b = network_endomorphism(&nt).unwrap();
    let dim = 4.0;

    let samples = 20_000;
    let est = peter_weyl_coefficient(&net, net.coloring(), samples, &mut rng(53)).unwrap();
    assert_eq!(est.dim, 4);
    let target = b.mapv(|z| z / (dim * dim));
    let err = frob(&(&est.matrix - &target));
    assert!(err < 5.0 / (samples as f64).sqrt(), "|estimate - B/dim^2| = {err}");
}

#[test]
fn peter_weyl_foreign_frequency_vanishes() {
    let net = theta_net(1, 1, 0);
    let probe = Coloring::from_pairs([("e1", 0u32), ("e2", 1), ("e3", 1)]);
    let samples = 20_000;
    let est = peter_weyl_coefficient(&net, &probe, samples, &mut rng(59)).unwrap();
    let norm = frob(&est.matrix);
    assert!(norm < 5.0 / (samples as f64).sqrt(), "orthogonality: {norm}");
}

#[test]
fn peter_weyl_constant_state_vs_nontrivial_probe() {
    let net = theta_net(0, 0, 0);
    let probe = Coloring::from_pairs([("e1", 1u32), ("e2", 0), ("e3", 0)]);
    let samples = 20_000;
    let est = peter_weyl_coefficient(&net, &probe, samples, &mut rng(61)).unwrap();
    assert!(frob(&est.matrix) < 5.0 / (samples as f64).sqrt());
}

#[test]
fn inner_product_orthogonality_and_norm() {
    let n_110 = theta_net(1, 1, 0);
    let n_011 = theta_net(0, 1, 1);
    let samples = 20_000;

    // distinct colorings are orthogonal
    let cross = state_inner_product(&n_110, &n_011, samples, &mut rng(67)).unwrap();
    assert!(cross.value.norm() < 5.0 / (samples as f64).sqrt());

    // self inner product matches ||B||_F^2 / dim from Schur orthogonality
    let o = n_110.graph().find_orientation().unwrap();
    let b = network_endomorphism(&network_tensor(&n_110, &o).unwrap()).unwrap();
    let expected = frob(&b).powi(2) / 4.0;
    let own = state_inner_product(&n_110, &n_110, samples, &mut rng(71)).unwrap();
    assert!(own.value.re > 0.0);
    assert!(own.value.im.abs() < 1e-9);
    assert!(
        (own.value.re - expected).abs() < 3.0 * own.std_error + 5.0 / (samples as f64).sqrt(),
        "self inner product {} vs predicted {expected}",
        own.value.re
    );
}

#[test]
fn inner_product_constant_state() {
    let n = theta_net(0, 0, 0);
    let est = state_inner_product(&n, &n, 100, &mut rng(73)).unwrap();
    assert!((est.value - Complex64::ONE).norm() < 1e-12, "f == 1 exactly");
    assert!(est.std_error < 1e-12);
}

#[test]
fn inner_product_rejects_mismatched_graphs() {
    let a = theta_net(0, 0, 0);
    let zero = Coloring::from_pairs([("bridge", 0u32), ("loop1", 0), ("loop2", 0)]);
    let b = SpinNetwork::new(corpus::dumbbell(), zero, None).unwrap();
    assert!(matches!(
        state_inner_product(&a, &b, 10, &mut rng(79)),
        Err(Su2Error::GraphMismatch)
    ));
}

#[test]
fn error_bars_shrink_with_samples() {
    // quadrupling N should halve the error bar on average over trials
    let n = theta_net(1, 1, 0);
    let mut small = 0.0;
    let mut large = 0.0;
    for trial in 0..10 {
        small += state_inner_product(&n, &n, 500, &mut rng(100 + trial)).unwrap().std_error;
        large += state_inner_product(&n, &n, 2000, &mut rng(200 + trial)).unwrap().std_error;
    }
    let ratio = small / large;
    assert!(
        (1.6..2.4).contains(&ratio),
        "quadrupling N should halve the error bar, ratio {ratio}"
    );
}

#[test]
fn assignment_file_round_trip() {
    let text = "e1 = 1 0 0 0\ne2 = 0.5 0.5 0.5 0.5\ne3 = 0 0 0 1\n";
    let t = parse_edge_assignment(text).unwrap();
    assert!(t.get(&"e1".into()).unwrap().approx_eq(&GroupElement::IDENTITY, 1e-15));
    assert!((t.get(&"e2".into()).unwrap().norm() - 1.0).abs() < 1e-15);
    assert!(matches!(
        parse_edge_assignment("e1 = 1 0 0\n"),
        Err(Su2Error::Parse { line: 1, .. })
    ));
    assert!(matches!(
        parse_edge_assignment("e1 = 0 0 0 0\n"),
        Err(Su2Error::Parse { line: 1, .. })
    ));
}
