//! Scalar traits shared by the exact linear-algebra routines.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};

/// An ordered field. The feasibility oracle and the rational helpers are
/// written against this trait; exact instantiations (`Ratio<i64>`,
/// `BigRational`) give exact answers.
pub trait Field: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive {}

impl<T> Field for T where T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive {}

/// Signed integer types usable for counting vectors and their transforms.
pub trait Integer: Clone + Debug + Ord + num_integer::Integer + Signed + FromPrimitive {}

impl<T> Integer for T where T: Clone + Debug + Ord + num_integer::Integer + Signed + FromPrimitive {}

/// Exact rational number from an integer fraction.
pub fn ratio<T: Field>(num: i64, den: i64) -> T {
    T::from_i64(num).expect("numerator fits") / T::from_i64(den).expect("denominator fits")
}

/// Smallest integer `>= x`.
pub fn ceil_div(num: i64, den: i64) -> i64 {
    debug_assert!(den > 0);
    num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0)
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial<T: Integer>(n: i64, k: i64) -> T {
    if k < 0 || n < 0 || k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        // acc · (n − i) is divisible by i + 1 after the multiplication.
        acc = acc * T::from_i64(n - i).expect("fits") / T::from_i64(i + 1).expect("fits");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn ceil_div_handles_signs() {
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(ceil_div(-7, 2), -3);
        assert_eq!(ceil_div(6, 3), 2);
        assert_eq!(ceil_div(-6, 3), -2);
    }

    #[test]
    fn binomials() {
        let row: Vec<i64> = (0..=5).map(|k| binomial(5, k)).collect();
        assert_eq!(row, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(binomial::<i64>(3, 4), 0);
        assert_eq!(binomial::<i64>(3, -1), 0);
        assert_eq!(binomial::<i64>(0, 0), 1);
        assert_eq!(binomial::<num_bigint::BigInt>(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn ratio_is_exact() {
        let x: Ratio<i64> = ratio(2, 6);
        assert_eq!(x, Ratio::new(1, 3));
    }
}
