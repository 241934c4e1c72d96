use proptest::prelude::*;
use subhom_core::{lu_full_pivot, rank, solve_in_span, FieldMatrix, PrimeField};

/// Rank by Gauss-Jordan elimination on a row-major copy.
fn oracle_rank(m: &FieldMatrix) -> usize {
    let f = m.field();
    let mut a: Vec<Vec<u32>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = f.inv(a[r][c]);
        let pivot_row: Vec<u32> = a[r].iter().map(|&v| f.mul(v, inv)).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
        a[r] = pivot_row;
        r += 1;
    }
    r
}

fn matrix(p: u32, max: usize) -> impl Strategy<Value = FieldMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(0..p, r * c)
            .prop_map(move |e| FieldMatrix::from_entries(PrimeField::new(p).unwrap(), r, c, e).unwrap())
    })
}

proptest! {
    #[test]
    fn lu_reconstructs_over_several_primes(
        a in prop::sample::select(vec![2u32, 3, 5, 7]).prop_flat_map(|p| matrix(p, 9))
    ) {
        let lu = lu_full_pivot(&a);
        prop_assert_eq!(lu.permuted(&a), lu.l.mul(&lu.u));
        prop_assert_eq!(lu.rank, oracle_rank(&a));
    }

    #[test]
    fn rank_is_transpose_invariant(a in matrix(3, 8)) {
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
        prop_assert_eq!(rank(&a), oracle_rank(&a));
    }

    #[test]
    fn images_are_always_solvable(a in matrix(5, 7), x in prop::collection::vec(0u32..5, 7)) {
        let b = a.mul_vec(&x[..a.cols()]);
        let y = solve_in_span(&a, &b).expect("A x lies in the span of A");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn appending_an_unsolvable_column_raises_rank(a in matrix(3, 6), b in prop::collection::vec(0u32..3, 6)) {
        let b = &b[..a.rows()];
        let grown = a.hconcat(&FieldMatrix::from_columns(a.field(), a.rows(), &[b.to_vec()]).unwrap());
        let expected = if solve_in_span(&a, b).is_some() { rank(&a) } else { rank(&a) + 1 };
        prop_assert_eq!(rank(&grown), expected);
    }
}

#[test]
fn wrong_length_targets_are_outside_the_span() {
    let a = FieldMatrix::identity(PrimeField::F3, 2);
    assert_eq!(solve_in_span(&a, &[1, 1, 1]), None);
    assert_eq!(solve_in_span(&a, &[1, 3]), None);
}
