use super::chain::ChainComplex;
use super::matrix::Matrix;
use crate::cubset::CubicalSet;
use crate::scalar::Scalar;
use crate::simpl::SimplicialSet;

/// Normalized cubical chains: `∂c = Σ_i (-1)^i (d_i^1 c - d_i^0 c)` over
/// 1-based axes `i`, faces landing on degenerate cells contributing zero.
pub fn cubical_chains<R: Scalar>(k: &CubicalSet) -> ChainComplex<R> {
    let ranks = k.counts();
    let mut boundaries = Vec::new();
    for n in 1..ranks.len() {
        let mut m = Matrix::<R>::zeros(ranks[n - 1], ranks[n]);
        for c in k.cells_of_dim(n) {
            for axis in 0..n {
                let sign = if axis % 2 == 0 { -1 } else { 1 };
                for (eps, s) in [(false, -sign), (true, sign)] {
                    let f = k.face(c, axis, eps);
                    if !f.is_degenerate() {
                        let cur = m.get(f.cell.index, c.index).clone();
                        m.set(f.cell.index, c.index, cur + R::from_i64(s));
                    }
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(ranks, boundaries).expect("cubical boundary squares to zero")
}

/// Normalized simplicial chains: `∂x = Σ_i (-1)^i d_i x`.
pub fn simplicial_chains<R: Scalar>(x: &SimplicialSet) -> ChainComplex<R> {
    let ranks = x.counts();
    let mut boundaries = Vec::new();
    for n in 1..ranks.len() {
        let mut m = Matrix::<R>::zeros(ranks[n - 1], ranks[n]);
        for c in x.cells_of_dim(n) {
            for i in 0..=n {
                let f = x.face(c, i);
                if !f.is_degenerate() {
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    let cur = m.get(f.cell.index, c.index).clone();
                    m.set(f.cell.index, c.index, cur + R::from_i64(s));
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(ranks, boundaries).expect("simplicial boundary squares to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubset::CellId;
    use crate::simpl::triangulate;

    #[test]
    fn cubes_are_acyclic() {
        for n in 0..=4 {
            assert!(cubical_chains::<i64>(&CubicalSet::standard_cube(n)).homology().is_point());
        }
    }

    #[test]
    fn cube_boundaries_are_spheres() {
        for n in 1..=3 {
            let h = cubical_chains::<i64>(&CubicalSet::boundary(n + 1).unwrap()).homology();
            assert_eq!(h.betti(0), 1);
            assert_eq!(h.betti(n), 1);
            assert_eq!(h.bettis().iter().sum::<usize>(), 2);
        }
    }

    #[test]
    fn square_mod_boundary_is_a_sphere() {
        let c = CubicalSet::standard_cube(2);
        let keep = c.closure(c.cells_of_dim(1).collect::<Vec<_>>());
        let q = c.collapse(&keep, CellId::new(0, 0)).unwrap().quotient;
        assert_eq!(cubical_chains::<i64>(&q).homology().bettis(), vec![1, 0, 1]);
    }

    #[test]
    fn simplicial_examples() {
        for n in 0..4 {
            assert!(simplicial_chains::<i64>(&SimplicialSet::standard_simplex(n)).homology().is_point());
        }
        let t = triangulate(&CubicalSet::boundary(2).unwrap());
        assert_eq!(simplicial_chains::<i64>(&t.complex).homology().bettis(), vec![1, 1]);
        let t = triangulate(&CubicalSet::standard_cube(3));
        assert!(simplicial_chains::<i64>(&t.complex).homology().is_point());
    }
}
