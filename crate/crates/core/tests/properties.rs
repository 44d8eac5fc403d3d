mod common;

use common::oracle::*;
use proptest::collection::vec;
use proptest::prelude::*;
use pteg_core::analysis::{
    build_combined, existence_report, fastest_init, in_image_star, run_trajectory,
    satisfies_first_order, verify_trajectory, Mode, Trajectory, Verdict,
};
use pteg_core::model::{extract_matrices, normalize};
use pteg_core::spectral::{
    coupling_index, critical_graph, cyclicity, eigenvectors, is_irreducible, max_cycle_mean,
    min_cycle_mean, CouplingIndex,
};
use pteg_core::tropical::{residual_left, Matrix, Scalar, Semiring};

fn tape() -> impl Strategy<Value = Vec<u32>> {
    vec(any::<u32>(), 64..256)
}

fn square(t: &[u32]) -> Matrix {
    let mut d = Tape::new(t);
    let n = d.draw(2, 6) as usize;
    let sparsity = d.draw(2, 4);
    random_matrix(&mut d, n, sparsity)
}

/// Shifted by an integer so that no circuit is positive.
fn nonpositive(a: &Matrix) -> Matrix {
    match max_cycle_mean(a) {
        Ok(rho) => a.scale(Scalar::Finite(-rho.value().ceil())),
        Err(_) => a.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn cycle_mean_three_ways(t in tape()) {
        let a = square(&t);
        let karp = max_cycle_mean(&a).ok();
        prop_assert_eq!(karp, enumerated_max_mean(&a));
        prop_assert_eq!(karp, trace_max_mean(&a));
    }

    #[test]
    fn min_cycle_mean_is_dual(t in tape()) {
        let a = square(&t);
        let b = a.negate_dual();
        prop_assert_eq!(
            min_cycle_mean(&b).ok().map(|m| m.value()),
            enumerated_max_mean(&a).map(|m| -m.value())
        );
    }

    #[test]
    fn critical_arcs_match_enumeration(t in tape()) {
        let a = square(&t);
        if let Ok(rho) = max_cycle_mean(&a) {
            let cg = critical_graph(&a).unwrap();
            let mut arcs: Vec<(usize, usize)> =
                cg.arcs.iter().map(|a| (a.source, a.target)).collect();
            arcs.sort_unstable();
            prop_assert_eq!(arcs, enumerated_critical_arcs(&a, rho));
        }
    }

    #[test]
    fn eigenvectors_satisfy_the_equation(t in tape()) {
        let a = square(&t);
        if is_irreducible(&a).unwrap() && max_cycle_mean(&a).is_ok() {
            let rho = max_cycle_mean(&a).unwrap().as_scalar();
            for v in eigenvectors(&a).unwrap() {
                let x: Vec<Scalar> = v.iter().map(|&x| Scalar::Finite(x)).collect();
                let ax = a.mul_vec(&x).unwrap();
                let lx: Vec<Scalar> = x.iter().map(|&xi| Semiring::MaxPlus.mul(rho, xi)).collect();
                for (u, w) in ax.iter().zip(&lx) {
                    prop_assert!((u.to_f64() - w.to_f64()).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn cyclicity_gives_eventual_periodicity(t in tape()) {
        let a = square(&t);
        if is_irreducible(&a).unwrap() && max_cycle_mean(&a).is_ok() {
            let rho = max_cycle_mean(&a).unwrap();
            let c = cyclicity(&a).unwrap() as usize;
            let l = rho.length as f64;
            let s = a.map(|v| match v {
                Scalar::Finite(x) => Scalar::Finite(l * x - rho.weight),
                other => other,
            });
            // the transient grows as the spectral gap shrinks, so no fixed
            // horizon works; check the identity persists past the index
            let CouplingIndex::Found(n) = coupling_index(&a, 20_000).unwrap() else {
                return Err(TestCaseError::fail("no coupling index below 20000"));
            };
            for j in 0..3 * c {
                prop_assert_eq!(s.power(n + j + c).unwrap(), s.power(n + j).unwrap());
            }
            if n > 0 {
                prop_assert_ne!(s.power(n - 1 + c).unwrap(), s.power(n - 1).unwrap());
            }
        }
    }

    #[test]
    fn residuation_galois_connection(t in tape()) {
        let mut d = Tape::new(&t);
        let n = d.draw(2, 6) as usize;
        let a = random_matrix(&mut d, n, 3);
        let x: Vec<f64> = (0..n).map(|_| d.draw(-9, 9) as f64).collect();
        let y: Vec<f64> = (0..n).map(|_| d.draw(-9, 9) as f64).collect();
        let xm = Matrix::column(Semiring::MaxPlus, &x);
        let ym = Matrix::column(Semiring::MaxPlus, &y);
        let lhs = a.mul(&xm).unwrap().leq(&ym).unwrap();
        let res = residual_left(&a, &ym).unwrap();
        let rhs = xm.entries().iter().zip(res.entries()).all(|(u, v)| u <= v);
        prop_assert_eq!(lhs, rhs);
        // A⊗(A\y) <= y always
        let back = a.mul_vec(res.entries()).unwrap();
        prop_assert!(back.iter().zip(ym.entries()).all(|(u, v)| u <= v));
    }

    #[test]
    fn conjugation_identities(t in tape()) {
        let mut d = Tape::new(&t);
        let n = d.draw(2, 6) as usize;
        let a = random_matrix(&mut d, n, 3);
        let b = random_matrix(&mut d, n, 3);
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(
            a.add(&b).unwrap().conjugate(),
            a.conjugate().add(&b.conjugate()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b).unwrap().conjugate(),
            b.conjugate().mul(&a.conjugate()).unwrap()
        );
        let a0 = nonpositive(&a);
        prop_assert_eq!(
            a0.kleene_star().unwrap().conjugate(),
            a0.conjugate().kleene_star().unwrap()
        );
    }

    #[test]
    fn star_stabilizes(t in tape()) {
        let a = nonpositive(&square(&t));
        let n = a.rows();
        let star = a.kleene_star().unwrap();
        prop_assert_eq!(&star, &power_sum(&a, n - 1));
        prop_assert_eq!(&star, &power_sum(&a, 2 * n));
        prop_assert_eq!(star.mul(&star).unwrap(), star.clone());
    }

    #[test]
    fn raw_and_first_order_admissibility_agree(t in vec(any::<u32>(), 256..512)) {
        let mut d = Tape::new(&t);
        if let Some(m) = random_model(&mut d) {
            let cm = build_combined(extract_matrices(&normalize(&m)).unwrap()).unwrap();
            for _ in 0..4 {
                let states = random_trajectory(&mut d, &cm, 5);
                let raw = verify_trajectory(&cm.bundle, &Trajectory::custom(states.clone()))
                    .unwrap()
                    .is_empty();
                prop_assert_eq!(raw, satisfies_first_order(&cm, &states).unwrap());
            }
        }
    }

    #[test]
    fn fastest_candidate_biconditional(t in vec(any::<u32>(), 256..512)) {
        let mut d = Tape::new(&t);
        let Some(m) = random_model(&mut d) else { return Ok(()) };
        let cm = build_combined(extract_matrices(&normalize(&m)).unwrap()).unwrap();
        let a = &cm.cal_a;
        if !is_irreducible(a).unwrap() || max_cycle_mean(a).is_err() || cyclicity(a).unwrap() != 1 {
            return Ok(());
        }
        let m = cm.bsharp_a();
        let candidates = fastest_init(&cm);
        for v in eigenvectors(a).unwrap() {
            let inside = in_image_star(&m, &v).unwrap();
            let t = run_trajectory(&cm, &v, Mode::Fastest, 6).unwrap();
            let clean = verify_trajectory(&cm.bundle, &t).unwrap().is_empty();
            prop_assert_eq!(inside, clean);
            let listed = candidates.as_ref().is_ok_and(|c| {
                c.iter().any(|c| c.x0.iter().zip(&v).all(|(p, q)| p - c.x0[0] == q - v[0]))
            });
            prop_assert_eq!(inside, listed);
        }
    }

    #[test]
    fn fastest_states_are_closed_under_b(t in vec(any::<u32>(), 256..512)) {
        let mut d = Tape::new(&t);
        let Some(m) = random_model(&mut d) else { return Ok(()) };
        let cm = build_combined(extract_matrices(&normalize(&m)).unwrap()).unwrap();
        let x0: Vec<Scalar> = (0..cm.dim()).map(|_| Scalar::Finite(d.draw(0, 20) as f64)).collect();
        let x0: Vec<f64> = cm.b_star.mul_vec(&x0).unwrap().iter().map(|v| v.to_f64()).collect();
        if let Ok(t) = run_trajectory(&cm, &x0, Mode::Fastest, 5) {
            for x in &t.states {
                let xs: Vec<Scalar> = x.iter().map(|&v| Scalar::Finite(v)).collect();
                prop_assert_eq!(cm.b_star.mul_vec(&xs).unwrap(), xs);
            }
        }
    }

    #[test]
    fn h_eigenvectors_lie_in_image(t in vec(any::<u32>(), 256..512)) {
        let mut d = Tape::new(&t);
        let Some(m) = random_model(&mut d) else { return Ok(()) };
        let cm = build_combined(extract_matrices(&normalize(&m)).unwrap()).unwrap();
        let ex = existence_report(&cm).unwrap();
        if ex.verdict == Verdict::NoSolution || !is_irreducible(&cm.h).unwrap() {
            return Ok(());
        }
        let Ok(rho) = max_cycle_mean(&cm.h) else { return Ok(()) };
        prop_assert!(rho.value() <= 0.0);
        for v in eigenvectors(&cm.h).unwrap() {
            if rho.value() == 0.0 {
                prop_assert!(in_image_star(&cm.h, &v).unwrap());
            }
        }
    }
}
