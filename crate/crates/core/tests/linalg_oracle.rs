//! Cross-checks the elimination layer against an independent row reducer.
//!
//! The oracle below re-implements row reduction from scratch on plain
//! `Vec<Vec<BigRational>>` (bottom-up pivot scan, no shared code with the
//! library) so the two paths can disagree only if one of them is wrong.

use num::rational::BigRational;
use num::{One, Zero};
use pph_core::linalg::{intersect, Matrix, Scalar, ScalarMode, SubspaceBasis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn qi(n: i64) -> BigRational {
    q(n, 1)
}

/// Independent row reduction; returns the rank. Scans for pivots bottom-up,
/// eliminating upward, deliberately unlike the library's top-down sweep.
fn oracle_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    let mut used = vec![false; rows.len()];
    for c in 0..cols {
        let mut pivot = None;
        for r in (0..rows.len()).rev() {
            if !used[r] && !rows[r][c].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        used[p] = true;
        rank += 1;
        let inv = BigRational::one() / rows[p][c].clone();
        for j in 0..cols {
            rows[p][j] = &rows[p][j] * &inv;
        }
        for r in 0..rows.len() {
            if r != p && !rows[r][c].is_zero() {
                let factor = rows[r][c].clone();
                for j in 0..cols {
                    let sub = &rows[p][j] * &factor;
                    rows[r][j] = &rows[r][j] - sub;
                }
            }
        }
    }
    rank
}

fn to_matrix(rows: &[Vec<BigRational>]) -> Matrix {
    let data: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Scalar::Rational(x.clone())).collect())
        .collect();
    Matrix::from_rows(ScalarMode::Rational, data).unwrap()
}

fn random_rows(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Vec<Vec<BigRational>> {
    (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    if rng.gen_bool(0.4) {
                        BigRational::zero()
                    } else {
                        q(rng.gen_range(-6..=6), rng.gen_range(1..=4))
                    }
                })
                .collect()
        })
        .collect()
}

#[test]
fn frozen_rank_examples() {
    assert_eq!(oracle_rank(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]), 1);
    let m = to_matrix(&[vec![qi(1), qi(2)], vec![qi(2), qi(4)]]);
    assert_eq!(m.rank(), 1);

    let id3 = Matrix::identity(ScalarMode::Rational, 3);
    assert_eq!(id3.rank(), 3);
    assert_eq!(Matrix::zero(ScalarMode::Rational, 4, 2).rank(), 0);
}

#[test]
fn frozen_kernel_example() {
    // ker [[1,0,-1],[0,1,-1]] = span{(1,1,1)}
    let rows = vec![vec![qi(1), qi(0), qi(-1)], vec![qi(0), qi(1), qi(-1)]];
    assert_eq!(oracle_rank(rows.clone()), 2);
    let m = to_matrix(&rows);
    let ker = m.kernel_basis();
    assert_eq!(ker.dim(), 1);
    let ones = vec![
        Scalar::Rational(qi(1)),
        Scalar::Rational(qi(1)),
        Scalar::Rational(qi(1)),
    ];
    assert!(ker.contains(&ones));
}

#[test]
fn frozen_intersection_example() {
    // span{e1,e2} ∩ span{e2,e3} = span{e2} in Q^3
    let e = |i: usize| {
        let mut v = vec![Scalar::Rational(qi(0)); 3];
        v[i] = Scalar::Rational(qi(1));
        v
    };
    let a = SubspaceBasis::new(ScalarMode::Rational, 3, vec![e(0), e(1)]).unwrap();
    let b = SubspaceBasis::new(ScalarMode::Rational, 3, vec![e(1), e(2)]).unwrap();
    let meet = intersect(&a, &b).unwrap();
    assert_eq!(meet.dim(), 1);
    assert!(meet.contains(&e(1)));
}

#[test]
fn random_rank_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1101);
    for _ in 0..300 {
        let r = rng.gen_range(1..=7);
        let c = rng.gen_range(1..=7);
        let rows = random_rows(&mut rng, r, c);
        let m = to_matrix(&rows);
        let rank = m.rank();
        assert_eq!(rank, oracle_rank(rows), "rank disagreement");
        // rank-nullity, and every kernel vector is annihilated
        let ker = m.kernel_basis();
        assert_eq!(rank + ker.dim(), c);
        for v in ker.vectors() {
            let img = m.mul_vec(v);
            assert!(img.iter().all(|x| x.is_zero()));
        }
    }
}

#[test]
fn random_intersection_dims_agree_with_oracle() {
    // dim(a ∩ b) = dim a + dim b − rank[a | b], with ranks from the oracle
    let mut rng = ChaCha8Rng::seed_from_u64(1102);
    for _ in 0..120 {
        let d = rng.gen_range(1..=6);
        let ka = rng.gen_range(0..=d);
        let kb = rng.gen_range(0..=d);
        let span_of = |rng: &mut ChaCha8Rng, k: usize| loop {
            let rows = random_rows(rng, k, d);
            if oracle_rank(rows.clone()) == k {
                let vecs = rows
                    .iter()
                    .map(|r| r.iter().map(|x| Scalar::Rational(x.clone())).collect())
                    .collect();
                return (
                    SubspaceBasis::new(ScalarMode::Rational, d, vecs).unwrap(),
                    rows,
                );
            }
        };
        let (a, rows_a) = span_of(&mut rng, ka);
        let (b, rows_b) = span_of(&mut rng, kb);
        let meet = intersect(&a, &b).unwrap();
        let mut stacked = rows_a.clone();
        stacked.extend(rows_b.clone());
        let expected = ka + kb - oracle_rank(stacked);
        assert_eq!(meet.dim(), expected);
        for v in meet.vectors() {
            assert!(a.contains(v) && b.contains(v));
        }
    }
}
