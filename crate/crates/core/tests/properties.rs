use ainfty_core::exactla::Echelon;
use ainfty_core::{minimal_resolution, Fp, KMatrix, PowerSeries, Presentation, RingCtx};
use proptest::prelude::*;

const PRIMES: [u32; 3] = [2, 7, 32003];

fn matrix() -> impl Strategy<Value = (u32, usize, usize, Vec<i64>)> {
    (0..PRIMES.len(), 1usize..7, 1usize..7).prop_flat_map(|(pi, r, c)| {
        (
            Just(PRIMES[pi]),
            Just(r),
            Just(c),
            prop::collection::vec(-3i64..4, r * c),
        )
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #[test]
    fn field_inverse_and_distributivity(a in 1u32..32003, b in 0u32..32003, c in 0u32..32003) {
        let f = Fp::new(32003);
        prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul_add(a, b, c), f.add(f.mul(a, b), c));
    }

    #[test]
    fn rank_nullity_and_kernel((p, r, c, e) in matrix()) {
        let m = KMatrix::from_rows(Fp::new(p), r, c, &e);
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), c);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_recovers_a_preimage((p, r, c, e) in matrix(), seed in prop::collection::vec(0u32..1000, 6)) {
        let f = Fp::new(p);
        let m = KMatrix::from_rows(f, r, c, &e);
        let x: Vec<u32> = seed.iter().take(c).map(|&v| v % p).chain(core::iter::repeat(0)).take(c).collect();
        let b = m.mul_vec(&x);
        let y = m.solve_particular(&b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn echelon_matches_matrix_rank((p, r, c, e) in matrix()) {
        let m = KMatrix::from_rows(Fp::new(p), r, c, &e);
        let mut s = Echelon::new(Fp::new(p), c);
        for i in 0..r {
            s.insert(m.row(i));
        }
        prop_assert_eq!(s.rank(), m.rank());
        for i in 0..r {
            prop_assert!(s.contains(m.row(i)));
        }
    }

    #[test]
    fn series_division_inverts_multiplication(
        a in prop::collection::vec(-5i64..6, 1..8),
        mut b in prop::collection::vec(-5i64..6, 1..8),
    ) {
        b[0] = 1;
        let cap = 8;
        let a = PowerSeries::polynomial(&a, cap);
        let b = PowerSeries::polynomial(&b, cap);
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
    }
}

// Over a polynomial ring the residue field is resolved by the Koszul complex.
#[test]
fn koszul_betti_numbers() {
    for n in 1..=4 {
        let names = ["a", "b", "c", "d"];
        let ctx = RingCtx::parse(Fp::new(101), &names[..n], &[]).unwrap();
        let res =
            minimal_resolution(&ctx.q(), &Presentation::residue_field(&ctx), n + 1, 8).unwrap();
        assert!(res.terminated);
        let ranks: Vec<usize> = (0..=res.complex.length())
            .map(|i| res.complex.rank(i))
            .collect();
        let want: Vec<usize> = (0..=n).map(|i| binomial(n, i)).collect();
        assert_eq!(ranks, want);
    }
}

// k over k[x]/(x^m) has one generator in each homological degree.
#[test]
fn hypersurface_in_one_variable() {
    for m in 2..=4 {
        let rel = format!("x^{m}");
        let ctx = RingCtx::parse(Fp::new(7), &["x"], &[rel.as_str()]).unwrap();
        let res =
            minimal_resolution(&ctx.r(), &Presentation::residue_field(&ctx), 5, 4 * m).unwrap();
        let ranks: Vec<usize> = (0..=5).map(|i| res.complex.rank(i)).collect();
        assert_eq!(ranks, vec![1; 6]);
    }
}
