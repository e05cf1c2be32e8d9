use freeplanar::gpa::*;
use freeplanar::numeric::{is_positive_semidefinite, rational, Surd};
use freeplanar::tangles::{parse, TangleExpr};

fn spec(blocks: &[u64]) -> AlgebraSpec {
    AlgebraSpec::new("test", blocks.to_vec()).unwrap()
}

fn lp(edges: &[(usize, usize)]) -> LoopVector {
    LoopVector::basis(Loop(edges.to_vec()))
}

fn q(n: i64, d: i64) -> Surd {
    Surd::from_rational(rational(n, d))
}

// Degree-1 loops are matrix units e^{k,l} of the block.
#[test]
fn degree_one_is_the_algebra() {
    let s = spec(&[1, 2]);
    let x = lp(&[(2, 1), (2, 2)]);
    let y = lp(&[(2, 2), (2, 2)]);
    assert_eq!(multiply(&s, &x, &y).unwrap(), x);
    assert!(multiply(&s, &y, &x).unwrap().is_zero());
    let caps = Caps::default();
    for s in [spec(&[1, 1]), spec(&[1, 2]), spec(&[2]), spec(&[1, 1, 2])] {
        let basis = loop_basis(&s, 1, caps).unwrap();
        for a in &basis {
            for b in &basis {
                let product = multiply(&s, &lp(&a.0), &lp(&b.0)).unwrap();
                let expected = if a.0[1] == b.0[0] { lp(&[a.0[0], b.0[1]]) } else { LoopVector::zero(1) };
                assert_eq!(product, expected, "{a} {b}");
            }
            let adj = evaluate(&s, &parse("inv(Id 1)").unwrap(), &[lp(&a.0)]).unwrap();
            assert_eq!(adj, lp(&a.0));
            assert_eq!(lp(&a.0).adjoint(), lp(&[a.0[1], a.0[0]]));
        }
    }
}

#[test]
fn markov_trace() {
    let s = spec(&[1, 1]);
    assert_eq!(trace(&s, &lp(&[(1, 1), (1, 1)]), Side::Right).unwrap(), q(1, 2));
    let s = spec(&[1, 2]);
    for side in [Side::Left, Side::Right] {
        assert_eq!(trace(&s, &lp(&[(2, 1), (2, 1)]), side).unwrap(), q(2, 5));
        assert_eq!(trace(&s, &lp(&[(1, 1), (1, 1)]), side).unwrap(), q(1, 5));
        assert!(trace(&s, &lp(&[(2, 1), (2, 2)]), side).unwrap().is_zero());
    }
    for k in 1..=3 {
        let one = evaluate(&s, &TangleExpr::One(k), &[]).unwrap();
        assert_eq!(trace(&s, &one, Side::Right).unwrap(), Surd::one(), "k = {k}");
        assert_eq!(trace(&s, &one, Side::Left).unwrap(), Surd::one(), "k = {k}");
    }
}

#[test]
fn jones_projection_trace() {
    for blocks in [vec![1, 1, 1, 1], vec![1, 2], vec![2]] {
        let s = spec(&blocks);
        let d = s.dimension() as i64;
        let v = evaluate(&s, &parse("compose(TrL 2, 1, E(2,1))").unwrap(), &[]).unwrap();
        assert_eq!(v.scalar_value(), q(1, d));
        let e = evaluate(&s, &parse("E(2,1)").unwrap(), &[]).unwrap();
        assert_eq!(trace(&s, &e, Side::Right).unwrap(), q(1, d));
    }
}

#[test]
fn spheric() {
    let caps = Caps::default();
    for s in [spec(&[1, 1]), spec(&[1, 2]), spec(&[2])] {
        for n in 1..=3 {
            if s.dimension() > 4 && n == 3 {
                continue;
            }
            for l in loop_basis(&s, n, caps).unwrap() {
                let x = LoopVector::basis(l.clone());
                assert_eq!(trace(&s, &x, Side::Left).unwrap(), trace(&s, &x, Side::Right).unwrap(), "{l}");
            }
        }
    }
}

#[test]
fn rotation_has_order_k() {
    let caps = Caps::default();
    for s in [spec(&[1, 2]), spec(&[1, 1])] {
        for k in 1..=3 {
            let mut expr = TangleExpr::Id(k);
            for _ in 0..k {
                expr = TangleExpr::Compose(Box::new(TangleExpr::Rot(k)), 1, Box::new(expr));
            }
            let single = TangleExpr::Rot(k);
            for l in loop_basis(&s, k, caps).unwrap().into_iter().take(40) {
                let x = LoopVector::basis(l.clone());
                assert_eq!(evaluate(&s, &expr, std::slice::from_ref(&x)).unwrap(), x, "{l}");
                let mut y = x.clone();
                for _ in 0..k {
                    y = evaluate(&s, &single, &[y]).unwrap();
                }
                assert_eq!(y, x);
            }
        }
    }
}

#[test]
fn temperley_lieb_relations() {
    let s = spec(&[1, 1, 1, 1]);
    let d = s.dimension() as i64;
    for k in 2..=3 {
        let e: Vec<LoopVector> =
            (1..k).map(|i| evaluate(&s, &TangleExpr::E(k, i), &[]).unwrap()).collect();
        for i in 0..k - 1 {
            assert_eq!(multiply(&s, &e[i], &e[i]).unwrap(), e[i]);
            for j in 0..k - 1 {
                let ij = multiply(&s, &e[i], &e[j]).unwrap();
                if i.abs_diff(j) == 1 {
                    assert_eq!(multiply(&s, &ij, &e[i]).unwrap(), e[i].scale(&q(1, d)));
                } else if i.abs_diff(j) >= 2 {
                    assert_eq!(ij, multiply(&s, &e[j], &e[i]).unwrap());
                }
            }
        }
        let one = evaluate(&s, &TangleExpr::One(k), &[]).unwrap();
        assert_eq!(multiply(&s, &one, &e[0]).unwrap(), e[0]);
    }
}

#[test]
fn gram_is_diagonal_and_positive() {
    let caps = Caps::default();
    for s in [spec(&[1, 1]), spec(&[1, 2]), spec(&[2])] {
        for n in 1..=2 {
            let basis: Vec<LoopVector> = loop_basis(&s, n, caps).unwrap().into_iter().map(LoopVector::basis).collect();
            let g = gram(&s, &basis).unwrap();
            for i in 0..basis.len() {
                for j in 0..basis.len() {
                    assert_eq!(g[i][j], inner_product(&s, &basis[i], &basis[j]).unwrap());
                    if i != j {
                        assert!(g[i][j].is_zero());
                    }
                }
            }
            assert!(is_positive_semidefinite(&s.field(), &g).unwrap());
            assert_eq!(gram_rank(&s, &basis).unwrap(), basis.len());
        }
    }
}

#[test]
fn temperley_lieb_image() {
    let s = spec(&[1, 1, 1, 1]);
    let caps = Caps::default();
    assert_eq!(tl_image(&s, 1, caps).unwrap(), vec![evaluate(&s, &TangleExpr::One(1), &[]).unwrap()]);
    for (n, cat) in [(1, 1), (2, 2), (3, 5)] {
        let image = tl_image(&s, n, caps).unwrap();
        assert_eq!(image.len(), cat);
        assert_eq!(gram_rank(&s, &image).unwrap(), cat);
        assert!(is_positive_semidefinite(&s.field(), &gram(&s, &image).unwrap()).unwrap());
    }
    let mut dependent = tl_image(&s, 2, caps).unwrap();
    dependent.push(dependent[0].add(&dependent[1]));
    assert_eq!(gram_rank(&s, &dependent).unwrap(), 2);
}

#[test]
fn boolean_subspaces() {
    let caps = Caps::default();
    let s = spec(&[1, 1, 1, 1]);
    let tl: Vec<Vec<LoopVector>> = (1..=4).map(|n| tl_image(&s, n, caps).unwrap()).collect();
    let dims: Vec<usize> = (1..=4).map(|n| boolean_subspace(&s, &tl, n).unwrap().len()).collect();
    assert_eq!(dims, vec![1, 1, 2, 5]);
    for s in [spec(&[1, 1]), spec(&[1, 2])] {
        let full: Vec<Vec<LoopVector>> = (1..=3)
            .map(|n| loop_basis(&s, n, caps).unwrap().into_iter().map(LoopVector::basis).collect())
            .collect();
        let dims: Vec<usize> = (1..=3).map(|n| boolean_subspace(&s, &full, n).unwrap().len()).collect();
        assert_eq!(dims, vec![s.dimension() as usize, 0, 0]);
    }
    let b = boolean_subspace(&s, &tl, 3).unwrap();
    assert!(inner_product(&s, &b[0], &b[1]).unwrap().is_zero());
}

#[test]
fn concatenation_scales_loops() {
    let s = spec(&[1, 2]);
    let caps = Caps::default();
    for a in loop_basis(&s, 1, caps).unwrap() {
        for b in loop_basis(&s, 2, caps).unwrap() {
            let v = evaluate(&s, &TangleExpr::M(1, 2), &[lp(&a.0), lp(&b.0)]).unwrap();
            assert_eq!(v.term_count(), 1);
            assert!(!v.coefficient(&a.concat(&b)).is_zero());
        }
    }
}

// Acting by a composite equals acting in two steps.
#[test]
fn evaluation_respects_composition() {
    let s = spec(&[1, 2]);
    let caps = Caps::default();
    let cases = [
        ("Mult 2", "Rot 2"),
        ("Mult 2", "Mult 2"),
        ("Tpi[{1,2,3,4}]", "Tpi[{1,4},{2,3}]"),
        ("M(1,1)", "Mult 1"),
        ("Rot 2", "inv(Mult 2)"),
        ("Rot 2", "E(2,1)"),
        ("Mult 2", "free(U 1, Id 1)"),
    ];
    for (host, guest) in cases {
        let (h, g) = (parse(host).unwrap(), parse(guest).unwrap());
        let hs = h.signature().unwrap();
        let gs = g.signature().unwrap();
        let composite = TangleExpr::Compose(Box::new(h.clone()), 1, Box::new(g.clone()));
        let pick = |k: usize, i: usize| -> LoopVector {
            let b = loop_basis(&s, k, caps).unwrap();
            lp(&b[(7 * i + 3) % b.len()].0)
        };
        for trial in 0..6 {
            let guest_inputs: Vec<LoopVector> = gs.inner.iter().enumerate().map(|(j, &k)| pick(k, trial + j)).collect();
            let rest: Vec<LoopVector> = hs.inner[1..].iter().enumerate().map(|(j, &k)| pick(k, trial + 5 + j)).collect();
            let inner = evaluate(&s, &g, &guest_inputs).unwrap();
            let mut two_step_inputs = vec![inner];
            two_step_inputs.extend(rest.iter().cloned());
            let two_step = evaluate(&s, &h, &two_step_inputs).unwrap();
            let mut all = guest_inputs.clone();
            all.extend(rest);
            assert_eq!(evaluate(&s, &composite, &all).unwrap(), two_step, "{composite}");
        }
    }
}
