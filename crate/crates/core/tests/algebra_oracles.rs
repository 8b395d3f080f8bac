use std::collections::BTreeSet;

use mkl_core::algebra::{
    closure_law_violations, enumerate, kernel, kernel_join_witness, lift, roundtrip_check,
    roundtrip_check_h, validate, validate_hetero, FiniteAlgebra, Mode,
};

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    for i in 1..n {
        let mut next = Vec::new();
        for p in &out {
            for j in 0..=i {
                let mut q = p[..i].to_vec();
                q.insert(j, i);
                q.extend_from_slice(&p[i + 1..]);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Counts idempotent semirings with unit and zero of size `n` up to
/// isomorphism by trying every table, with no structural shortcuts.
fn oracle_count(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    let perms: Vec<Vec<usize>> =
        all_permutations(n).into_iter().filter(|p| p[0] == 0 && p[1] == 1).collect();
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    let cells = n * n;
    let mut joins = Vec::new();
    for code in 0..n.pow(cells as u32) {
        let t: Vec<usize> = (0..cells).map(|i| code / n.pow(i as u32) % n).collect();
        let m = FiniteAlgebra::new(n, t.clone(), vec![0; cells], 1, 0);
        let lattice = (0..n).all(|a| {
            (0..n).all(|b| {
                m.j(a, b) == m.j(b, a)
                    && m.j(a, a) == a
                    && m.j(0, a) == a
                    && (0..n).all(|c| m.j(m.j(a, b), c) == m.j(a, m.j(b, c)))
            })
        });
        if lattice {
            joins.push(t);
        }
    }
    for join in &joins {
        for code in 0..n.pow(cells as u32) {
            let comp: Vec<usize> = (0..cells).map(|i| code / n.pow(i as u32) % n).collect();
            let m = FiniteAlgebra::new(n, join.clone(), comp, 1, 0);
            if !validate(&m, Mode::Kleene).passed() {
                continue;
            }
            let key = perms
                .iter()
                .map(|p| {
                    let mut k = vec![0; 2 * cells];
                    for a in 0..n {
                        for b in 0..n {
                            k[p[a] * n + p[b]] = p[m.j(a, b)];
                            k[cells + p[a] * n + p[b]] = p[m.c(a, b)];
                        }
                    }
                    k
                })
                .min()
                .unwrap();
            classes.insert(key);
        }
    }
    classes.len()
}

#[test]
fn enumeration_matches_brute_force_up_to_three() {
    let ms = enumerate(3, Mode::Kleene).unwrap();
    for n in 1..=3 {
        let got = ms.iter().filter(|m| m.size == n).count();
        assert_eq!(got, oracle_count(n), "size {n}");
    }
}

#[test]
fn enumeration_counts_are_frozen() {
    let ms = enumerate(4, Mode::Kleene).unwrap();
    let counts: Vec<usize> = (1..=4).map(|n| ms.iter().filter(|m| m.size == n).count()).collect();
    assert_eq!(counts, [1, 1, 3, 20]);
}

#[test]
fn enumerated_models_are_pairwise_non_isomorphic() {
    let ms = enumerate(4, Mode::Kleene).unwrap();
    for n in 2..=4 {
        let perms = all_permutations(n);
        let same: Vec<&FiniteAlgebra> = ms.iter().filter(|m| m.size == n).collect();
        for (i, x) in same.iter().enumerate() {
            for y in &same[i + 1..] {
                let iso = perms.iter().any(|p| {
                    p[x.one] == y.one
                        && p[x.zero] == y.zero
                        && (0..n).all(|a| {
                            (0..n).all(|b| {
                                p[x.j(a, b)] == y.j(p[a], p[b]) && p[x.c(a, b)] == y.c(p[a], p[b])
                            })
                        })
                });
                assert!(!iso, "{x:?} ~ {y:?}");
            }
        }
    }
}

#[test]
fn every_enumerated_model_validates() {
    for mode in [Mode::Kleene, Mode::MeasurableGuarded, Mode::MeasurableLiteral] {
        for m in enumerate(4, mode).unwrap() {
            let r = validate(&m, mode);
            assert!(r.passed(), "{mode:?} {m:?}\n{r}");
        }
    }
}

#[test]
fn literal_measurable_models_collapse() {
    let lit = enumerate(4, Mode::MeasurableLiteral).unwrap();
    assert_eq!(lit.len(), 1);
    assert_eq!(lit[0].size, 1);
    // every one of the four maps on B2 breaks 1 <= a# <= a at a = 0
    for d0 in 0..2 {
        for d1 in 0..2 {
            let mut b2 = FiniteAlgebra::b2();
            b2.dstar = Some(vec![Some(d0), Some(d1)]);
            let r = validate(&b2, Mode::MeasurableLiteral);
            assert_eq!(r.get("MK3/MK4").unwrap().witness, Some(vec![0]));
        }
    }
}

fn sweep() -> Vec<FiniteAlgebra> {
    let mut ms = enumerate(3, Mode::MeasurableGuarded).unwrap();
    ms.push(FiniteAlgebra::rel(2).with_guarded_dstar());
    ms.push(FiniteAlgebra::singleton());
    ms
}

#[test]
fn closure_laws_hold_across_the_sweep() {
    for m in sweep() {
        assert_eq!(closure_law_violations(&m), Vec::<String>::new(), "{m:?}");
        assert_eq!(closure_law_violations(&m.reduct().with_star()), Vec::<String>::new());
    }
}

#[test]
fn residuation_adjunction() {
    for m in sweep() {
        for a in m.elements() {
            for b in m.elements() {
                let (l, r) = m.residuals(a, b);
                for x in m.elements() {
                    assert_eq!(m.leq(x, l), m.leq(m.c(a, x), b));
                    assert_eq!(m.leq(x, r), m.leq(m.c(x, a), b));
                }
            }
        }
    }
}

#[test]
fn round_trips_across_the_sweep() {
    let mut ms = sweep();
    ms.extend(enumerate(3, Mode::Kleene).unwrap());
    ms.push(FiniteAlgebra::b2());
    ms.push(FiniteAlgebra::rel(2));
    for m in ms {
        assert!(roundtrip_check(&m), "{m:?}");
        let h = lift(&m).unwrap();
        assert!(validate_hetero(&h).passed(), "{m:?}");
        assert!(roundtrip_check_h(&h), "{m:?}");
    }
}

#[test]
fn lifted_singleton_validates_measurably() {
    let h = lift(&FiniteAlgebra::singleton()).unwrap();
    let r = validate_hetero(&h);
    assert!(r.passed() && r.get("HM4").is_some() && r.get("HM6").is_some(), "{r}");
}

#[test]
fn kernel_joins_on_small_models_are_unions() {
    for m in enumerate(4, Mode::Kleene).unwrap() {
        assert_eq!(kernel_join_witness(&m), None);
    }
    assert_eq!(kernel_join_witness(&FiniteAlgebra::rel(2)), None);
}

#[test]
fn rel3_kernel_join_is_not_union() {
    let m = FiniteAlgebra::rel(3);
    let bit = |i: usize, j: usize| 1usize << (i * 3 + j);
    let delta = m.one;
    let (x, y, kj, j) = kernel_join_witness(&m).expect("rel(3) has a witness");
    assert_eq!((x, y), (delta | bit(0, 1), delta | bit(1, 2)));
    assert_eq!(j, x | y);
    assert_eq!(kj, x | y | bit(0, 2));
    assert_eq!(kernel(&m).embed.len(), 29);
}
