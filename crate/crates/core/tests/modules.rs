use glmn_core::modrep::{
    admissible_lambdas, baby_verma_g0, brute_force_is_simple, f_top_matrix, induce_kac,
    invariants_g1, is_simple, regular_g1_module, scan_simplicity, simple_head, singular_space,
    spin, GModule, PChar, DEFAULT_LINE_CAP,
};
use glmn_core::rootdata::Shape;
use glmn_core::superpbw::GlBasisElement;
use glmn_core::{fq_make, FqElement, FqField, Subspace, Weight};

fn f3() -> &'static FqField {
    fq_make(3, 1).unwrap()
}

fn lam(field: &'static FqField, v: &[i64]) -> Weight<FqElement> {
    Weight::new(v.iter().map(|&x| field.from_i64(x)).collect())
}

fn kac(m: usize, n: usize, field: &'static FqField, v: &[i64]) -> (GModule, GModule) {
    let s = Shape::new(m, n).unwrap();
    let head = simple_head(
        &baby_verma_g0(&s, &lam(field, v), &PChar::zero(&s, field)).unwrap(),
        DEFAULT_LINE_CAP,
    )
    .unwrap();
    let k = induce_kac(&head).unwrap();
    (head, k)
}

fn unit(dim: usize, i: usize, f: &'static FqField) -> Vec<FqElement> {
    let mut v = vec![f.zero(); dim];
    v[i] = f.one();
    v
}

#[test]
fn baby_verma_dimensions() {
    for ((m, n), dim) in [((1, 1), 1), ((2, 1), 3), ((2, 2), 9), ((3, 1), 27)] {
        let s = Shape::new(m, n).unwrap();
        let z = baby_verma_g0(
            &s,
            &Weight::new(vec![f3().zero(); m + n]),
            &PChar::zero(&s, f3()),
        )
        .unwrap();
        assert_eq!(z.dim(), dim, "gl({m}|{n})");
    }
}

#[test]
fn gl2_heads_agree_with_exhaustive_search() {
    let s = Shape::new(2, 0).unwrap();
    let chi = PChar::zero(&s, f3());
    for (v, head_dim) in [([1, 0], 2), ([2, 0], 3), ([0, 0], 1)] {
        let z = baby_verma_g0(&s, &lam(f3(), &v), &chi).unwrap();
        let h = simple_head(&z, DEFAULT_LINE_CAP).unwrap();
        assert_eq!(h.dim(), head_dim, "λ = {v:?}");
        assert!(brute_force_is_simple(&h, 10_000).unwrap());
        assert_eq!(brute_force_is_simple(&z, 10_000).unwrap(), head_dim == 3);
    }
}

#[test]
fn oracle_matches_brute_force_on_small_modules() {
    let mut modules = Vec::new();
    for v in admissible_lambdas(&PChar::zero(&Shape::new(2, 0).unwrap(), f3())) {
        let s = Shape::new(2, 0).unwrap();
        let z = baby_verma_g0(&s, &v, &PChar::zero(&s, f3())).unwrap();
        modules.push(simple_head(&z, DEFAULT_LINE_CAP).unwrap());
        modules.push(z);
    }
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let s = Shape::new(m, n).unwrap();
        for v in admissible_lambdas(&PChar::zero(&s, f3())) {
            let coords: Vec<i64> = v.coords.iter().map(|x| x.code() as i64).collect();
            let (_, k) = kac(m, n, f3(), &coords);
            if k.dim() <= 4 {
                modules.push(k);
            }
        }
    }
    assert!(modules.len() > 30);
    for m in &modules {
        assert!(m.dim() <= 4);
        assert_eq!(
            is_simple(m, DEFAULT_LINE_CAP).unwrap(),
            brute_force_is_simple(m, 10_000).unwrap()
        );
    }
}

#[test]
fn kac_dimension_law() {
    for (m, n, v) in [
        (1, 1, vec![1, 1]),
        (2, 1, vec![2, 0, 0]),
        (1, 2, vec![0, 2, 0]),
        (2, 2, vec![2, 0, 1, 0]),
    ] {
        let (head, k) = kac(m, n, f3(), &v);
        assert_eq!(k.dim(), head.dim() << (m * n));
    }
    let (head, k) = kac(2, 1, f3(), &[2, 0, 0]);
    assert_eq!((head.dim(), k.dim()), (3, 12));
}

#[test]
fn gl11_hand_computations() {
    let f = f3();
    let (_, atyp) = kac(1, 1, f, &[1, 2]);
    let e12 = atyp.action(GlBasisElement::e(1, 2)).unwrap();
    assert!(e12.mul_vec(&unit(2, 1, f)).iter().all(|x| x.is_zero()));
    assert_eq!(spin(&atyp, &unit(2, 0, f)).unwrap().dim(), 2);
    assert_eq!(spin(&atyp, &unit(2, 1, f)).unwrap().dim(), 1);
    assert!(spin(&atyp, &[f.zero(), f.zero()]).is_err());
    let sing: usize = singular_space(&atyp)
        .unwrap()
        .iter()
        .map(|(_, b)| b.len())
        .sum();
    assert_eq!(sing, 2);
    assert!(!is_simple(&atyp, DEFAULT_LINE_CAP).unwrap());

    let (_, typ) = kac(1, 1, f, &[1, 1]);
    let sing = singular_space(&typ).unwrap();
    assert_eq!(sing.len(), 1);
    assert_eq!(sing[0].1, vec![unit(2, 0, f)]);
    assert!(is_simple(&typ, DEFAULT_LINE_CAP).unwrap());
}

#[test]
fn even_root_vectors_commute_with_f_top_on_kac_modules() {
    for (m, n, v) in [
        (2, 1, vec![2, 0, 1]),
        (1, 2, vec![1, 2, 0]),
        (2, 2, vec![2, 0, 1, 0]),
    ] {
        let (_, k) = kac(m, n, f3(), &v);
        let top = f_top_matrix(&k).unwrap();
        for (a, b) in k.shape().even_pairs() {
            for x in [GlBasisElement::e(a, b), GlBasisElement::f(a, b)] {
                let mx = k.action(x).unwrap();
                assert_eq!(mx.mul(&top), top.mul(mx), "{x} in gl({m}|{n})");
            }
        }
    }
}

#[test]
fn invariants_of_trivial_odd_action_are_everything() {
    let (head, k) = kac(2, 0, f3(), &[2, 0]);
    let dim: usize = invariants_g1(&k)
        .unwrap()
        .iter()
        .map(|(_, b)| b.len())
        .sum();
    assert_eq!(dim, head.dim());
    assert!(invariants_g1(&head).is_err());
}

#[test]
fn kac_invariants_are_the_bottom_copy() {
    let (head, k) = kac(2, 1, f3(), &[2, 0, 1]);
    assert!(is_simple(&k, DEFAULT_LINE_CAP).unwrap());
    let inv: Vec<Vec<FqElement>> = invariants_g1(&k)
        .unwrap()
        .into_iter()
        .flat_map(|(_, b)| b)
        .collect();
    let bottom: Vec<Vec<FqElement>> = (0..head.dim()).map(|s| unit(k.dim(), s, f3())).collect();
    let a = Subspace::spanned_by(k.dim(), f3().zero(), &inv);
    let b = Subspace::spanned_by(k.dim(), f3().zero(), &bottom);
    assert_eq!(a.dim(), b.dim());
    assert!(bottom.iter().all(|v| a.contains(v)));
}

#[test]
fn regular_g1_basis_is_independent() {
    for (m, n) in [(1, 1), (2, 1), (2, 2), (1, 4)] {
        let s = Shape::new(m, n).unwrap();
        let u = regular_g1_module(&s, f3()).unwrap();
        assert_eq!(u.dim(), 1 << (m * n));
        let pairs = s.odd_pairs();
        let mut span = Subspace::new(u.dim(), f3().zero());
        for mask in 0u32..(1 << (m * n)) {
            let word: Vec<GlBasisElement> = (0..pairs.len())
                .rev()
                .filter(|r| mask >> r & 1 == 1)
                .map(|r| GlBasisElement::e(pairs[r].i, pairs[r].j))
                .collect();
            span.insert(
                u.word_matrix(&word)
                    .unwrap()
                    .mul_vec(&unit(u.dim(), 0, f3())),
            );
        }
        assert_eq!(span.dim(), u.dim());
    }
}

#[test]
fn scan_reports_are_stable_across_thread_counts() {
    let s = Shape::new(2, 1).unwrap();
    let a = scan_simplicity(&s, 3, DEFAULT_LINE_CAP, Some(1)).unwrap();
    let b = scan_simplicity(&s, 3, DEFAULT_LINE_CAP, Some(3)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.rows.len(), 27);
    assert_eq!(a.disagreements, 0);
}
