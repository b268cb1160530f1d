mod common;

use std::collections::BTreeSet;

use cubhop::cubset::{CellId, CellMap, CubicalSet};
use cubhop::monoidal::{associator, product, product_symmetry, rotate_axes, tensor, tensor_map, tensor_symmetry, theta};
use rand::Rng;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn cube_census_and_facets() {
    for n in 0..=6 {
        let want: Vec<usize> = (0..=n).map(|k| binomial(n, k) << (n - k)).collect();
        assert_eq!(CubicalSet::standard_cube(n).counts(), want);
    }
    for n in 1..=5 {
        let b = CubicalSet::boundary(n).unwrap();
        assert_eq!(b.num_cells(n - 1), 2 * n);
        for axis in 0..n {
            for sign in [false, true] {
                assert_eq!(CubicalSet::horn(n, axis, sign).unwrap().num_cells(n - 1), 2 * n - 1);
            }
        }
    }
}

#[test]
fn tensor_preserves_inclusions() {
    let mut r = common::rng(31);
    for _ in 0..40 {
        let k = common::random_cubical_set(&mut r, 12);
        let l = common::random_cubical_set(&mut r, 8);
        let cells: Vec<CellId> = k.all_cells().filter(|_| r.gen_bool(0.5)).collect();
        let keep = k.closure(cells);
        if keep.is_empty() {
            continue;
        }
        let (a, incl) = k.subcomplex(&keep).unwrap();
        let (al, kl) = (tensor(&a, &l), tensor(&k, &l));
        let m = tensor_map(&al, &kl, &incl, &CellMap::identity(&l));
        m.verify(&al.complex, &kl.complex).unwrap();
        assert!(m.is_injective());
        let image: BTreeSet<CellId> = m.images().iter().flatten().map(|x| x.cell).collect();
        assert_eq!(kl.complex.closure(image.iter().copied()), image, "image is face-closed");
    }
}

#[test]
fn theta_commutes_with_symmetry_up_to_rotation() {
    let mut r = common::rng(32);
    for _ in 0..30 {
        let k = common::random_cubical_set(&mut r, 6);
        let l = common::random_cubical_set(&mut r, 6);
        let (kl, lk) = (tensor(&k, &l), tensor(&l, &k));
        let (pkl, plk) = (product(&k, &l), product(&l, &k));
        let (th_kl, th_lk) = (theta(&kl, &pkl), theta(&lk, &plk));
        th_kl.verify(&kl.complex, &pkl.complex).unwrap();
        let swap = product_symmetry(&pkl, &plk);
        swap.verify(&pkl.complex, &plk.complex).unwrap();
        assert!(swap.is_isomorphism(&plk.complex));
        let sigma = tensor_symmetry(&kl, &lk);
        for c in kl.complex.all_cells() {
            let j = kl.pair(c).0.dim;
            let via_product = plk.pair(swap.image(th_kl.image(c).cell).cell);
            let via_tensor = plk.pair(th_lk.image(sigma[c.dim][c.index]).cell);
            assert_eq!(via_product.0.cell, via_tensor.0.cell);
            assert_eq!(via_product.1.cell, via_tensor.1.cell);
            assert_eq!(rotate_axes(via_product.0.deleted, j, c.dim), via_tensor.0.deleted);
            assert_eq!(rotate_axes(via_product.1.deleted, j, c.dim), via_tensor.1.deleted);
        }
    }
}

#[test]
fn associator_is_an_isomorphism() {
    let mut r = common::rng(33);
    for _ in 0..25 {
        let k = common::random_cubical_set(&mut r, 5);
        let l = common::random_cubical_set(&mut r, 5);
        let m = common::random_cubical_set(&mut r, 5);
        let kl = tensor(&k, &l);
        let kl_m = tensor(&kl.complex, &m);
        let lm = tensor(&l, &m);
        let k_lm = tensor(&k, &lm.complex);
        let a = associator(&kl, &kl_m, &lm, &k_lm);
        a.verify(&kl_m.complex, &k_lm.complex).unwrap();
        assert!(a.is_isomorphism(&k_lm.complex));
    }
}
