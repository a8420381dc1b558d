use proptest::prelude::*;
use workbench::f2::{Coordinates, F2Matrix, F2Vector, RowSpace};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = F2Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(any::<bool>(), r * c).prop_map(move |bits| F2Matrix::from_fn(r, c, |i, j| bits[i * c + j]))
    })
}

fn rows(m: &F2Matrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| u8::from(m.get(i, j))).collect())
        .collect()
}

#[test]
fn rank_examples() {
    assert_eq!(F2Matrix::zeros(3, 3).rank(), 0);
    assert_eq!(F2Matrix::identity(4).rank(), 4);
    assert_eq!(F2Matrix::from_u8_rows(&[&[1, 1], &[1, 1]]).unwrap().rank(), 1);
}

#[test]
fn kernel_examples() {
    assert!(F2Matrix::identity(3).kernel_basis().is_empty());
    assert_eq!(F2Matrix::zeros(2, 5).kernel_basis().len(), 5);
    let k = F2Matrix::from_u8_rows(&[&[1, 1, 0], &[0, 1, 1]]).unwrap().kernel_basis();
    assert_eq!(k, vec![F2Vector::from_bitstring("111").unwrap()]);
}

#[test]
fn solve_examples() {
    let b = F2Vector::from_bitstring("101").unwrap();
    assert_eq!(F2Matrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
    assert_eq!(F2Matrix::zeros(3, 2).solve(&b).unwrap(), None);
    let m = F2Matrix::from_u8_rows(&[&[1, 1], &[0, 1]]).unwrap();
    assert_eq!(m.solve(&F2Vector::from_bitstring("01").unwrap()).unwrap(), Some(F2Vector::from_bitstring("11").unwrap()));
    assert!(m.solve(&b).is_err());
}

#[test]
fn wide_vectors_cross_word_boundaries() {
    let mut v = F2Vector::zeros(200);
    v.set(63, true);
    v.set(64, true);
    v.set(199, true);
    assert_eq!(v.ones().collect::<Vec<_>>(), vec![63, 64, 199]);
    let s = v.slice(60, 10);
    assert_eq!(s.ones().collect::<Vec<_>>(), vec![3, 4]);
    let c = s.concat(&v);
    assert_eq!(c.len(), 210);
    assert_eq!(c.count_ones(), 5);
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix(12, 140)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
        for v in &k {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solutions_solve(m in matrix(10, 80), seed in prop::collection::vec(any::<bool>(), 80)) {
        let x0 = F2Vector::from_bits(&seed[..m.cols()]);
        let b = m.mul_vec(&x0);
        let x = m.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn rank_ignores_row_order(m in matrix(10, 70), shift in 0usize..10) {
        let mut r = rows(&m);
        let len = r.len();
        r.rotate_left(shift % len);
        r.reverse();
        let refs: Vec<&[u8]> = r.iter().map(Vec::as_slice).collect();
        prop_assert_eq!(F2Matrix::from_u8_rows(&refs).unwrap().rank(), m.rank());
    }

    #[test]
    fn transpose_and_products(a in matrix(8, 8), b in matrix(8, 8)) {
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        prop_assert_eq!(a.rank(), a.transpose().rank());
        if a.cols() == b.rows() {
            prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        }
    }

    #[test]
    fn rowspace_annihilator_is_orthogonal(m in matrix(15, 100)) {
        let mut space = RowSpace::new(m.cols());
        for r in m.row_vectors() {
            space.insert(r.clone());
        }
        prop_assert_eq!(space.rank(), m.rank());
        let ann = space.annihilator();
        prop_assert_eq!(ann.len(), m.cols() - m.rank());
        for v in &ann {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        for r in m.row_vectors() {
            prop_assert!(space.contains(r));
        }
    }

    #[test]
    fn coordinates_round_trip(m in matrix(12, 90), pick in prop::collection::vec(any::<bool>(), 12)) {
        let basis: Vec<F2Vector> = m.echelon().reduced.row_vectors().iter().filter(|r| !r.is_zero()).cloned().collect();
        let coords = Coordinates::new(m.cols(), &basis).unwrap();
        let mut v = F2Vector::zeros(m.cols());
        for (b, &p) in basis.iter().zip(&pick) {
            if p {
                v.add_assign(b);
            }
        }
        let c = coords.coords(&v).expect("vector in the span");
        let mut back = F2Vector::zeros(m.cols());
        for k in c.ones() {
            back.add_assign(&basis[k]);
        }
        prop_assert_eq!(back, v);
    }
}
