use casorati::det::{casoratian_imag, casoratian_real, det, det_float, wronskian};
use casorati::exact::rational::{factorial, int, rat};
use casorati::exact::{BigFloat, BigRational, Gq, Poly};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<BigRational>]) -> BigRational {
    if m.is_empty() {
        return BigRational::one();
    }
    let mut total = BigRational::zero();
    for (c, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = a * cofactor_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn matrix() -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    (0usize..=5).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec((-9i64..=9, 1i64..=4).prop_map(|(a, b)| rat(a, b)), n), n)
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 1..=5).prop_map(|c| Poly::from_ints(&c))
}

fn monomial(k: usize) -> Poly {
    let mut c = vec![0; k + 1];
    c[k] = 1;
    Poly::from_ints(&c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in matrix()) {
        prop_assert_eq!(det(m.clone()), cofactor_det(&m));
    }

    #[test]
    fn float_elimination_tracks_exact(m in matrix()) {
        let exact = BigFloat::from_rational(&cofactor_det(&m), 256);
        let f = m.iter().map(|r| r.iter().map(|v| BigFloat::from_rational(v, 256)).collect()).collect();
        let got = det_float(f, 256);
        let scale = exact.abs().to_f64().max(1.0);
        prop_assert!((&got - &exact).abs().to_f64() <= 1e-60 * scale);
    }

    #[test]
    fn swapping_functions_flips_sign(fs in prop::collection::vec(poly(), 2..=3)) {
        let mut swapped = fs.clone();
        swapped.swap(0, 1);
        prop_assert_eq!(wronskian(&swapped), -wronskian(&fs));
        prop_assert_eq!(casoratian_real(&swapped), -casoratian_real(&fs));
        let g = rat(1, 2);
        prop_assert_eq!(casoratian_imag(&swapped, &g).unwrap(), -casoratian_imag(&fs, &g).unwrap());
    }

    #[test]
    fn common_factor_in_one_function(fs in prop::collection::vec(poly(), 1..=3), c in 1i64..=7) {
        let mut scaled = fs.clone();
        scaled[0] = scaled[0].scale(&Gq::from_int(c));
        let k = Gq::from_int(c);
        prop_assert_eq!(wronskian(&scaled), wronskian(&fs).scale(&k));
        prop_assert_eq!(casoratian_real(&scaled), casoratian_real(&fs).scale(&k));
    }
}

/// `W[x^{a_1}, ..., x^{a_n}] = ∏_{i<j} (a_j - a_i) x^{Σa - n(n-1)/2}`.
#[test]
fn wronskian_of_monomials() {
    for exps in [vec![0usize, 1, 2], vec![1, 3], vec![0, 2, 5], vec![2, 3, 4, 7]] {
        let fs: Vec<Poly> = exps.iter().map(|&a| monomial(a)).collect();
        let n = exps.len();
        let mut c = 1i64;
        for i in 0..n {
            for j in i + 1..n {
                c *= exps[j] as i64 - exps[i] as i64;
            }
        }
        let power = exps.iter().sum::<usize>() - n * (n - 1) / 2;
        assert_eq!(wronskian(&fs), monomial(power).scale(&Gq::from_int(c)), "{exps:?}");
    }
}

/// For `1, x, ..., x^{n-1}` every determinant is a Vandermonde product in the shifts.
#[test]
fn casoratians_of_the_power_basis() {
    for n in 1..=5usize {
        let fs: Vec<Poly> = (0..n).map(monomial).collect();
        let superfactorial: BigRational = (0..n as u64).map(|k| BigRational::from_integer(factorial(k))).product();
        let expect = Poly::constant(Gq::real(superfactorial.clone()));
        assert_eq!(wronskian(&fs), expect);
        assert_eq!(casoratian_real(&fs), expect);
        for g in [int(1), rat(1, 3), rat(5, 2)] {
            let scale = (0..n * (n - 1) / 2).fold(BigRational::one(), |acc, _| acc * &g);
            assert_eq!(casoratian_imag(&fs, &g).unwrap(), Poly::constant(Gq::real(&superfactorial * scale)));
        }
    }
}

#[test]
fn empty_and_zero_gamma() {
    assert!(wronskian::<Poly>(&[]).is_one());
    assert!(casoratian_real::<Poly>(&[]).is_one());
    assert!(casoratian_imag(&[Poly::one()], &int(0)).is_err());
}

/// `W_C[x, x^2] = x(x+1)` and `W_γ[1, x] = γ`.
#[test]
fn two_by_two_by_hand() {
    assert_eq!(casoratian_real(&[monomial(1), monomial(2)]), Poly::from_ints(&[0, 1, 1]));
    assert_eq!(casoratian_imag(&[Poly::one(), monomial(1)], &rat(1, 2)).unwrap(), Poly::constant(Gq::real(rat(1, 2))));
}
