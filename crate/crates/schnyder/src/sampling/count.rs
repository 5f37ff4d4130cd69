use num_bigint::BigUint;
use num_traits::One;

/// n-th Catalan number.
pub fn catalan(n: usize) -> BigUint {
    // C_n = binom(2n, n) / (n + 1)
    binomial(2 * n, n) / BigUint::from(n + 1)
}

fn binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k.min(n));
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

fn factorial(n: usize) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=n {
        f *= BigUint::from(i);
    }
    f
}

/// `|W_n|` in closed form: the Catalan determinant `C_{n+2} C_n - C_{n+1}^2`
/// and the factorial form `6 (2n)! (2n+2)! / (n! (n+1)! (n+2)! (n+3)!)`,
/// which must agree.
pub fn count_wn_closed(n: usize) -> BigUint {
    let det = catalan(n + 2) * catalan(n) - catalan(n + 1) * catalan(n + 1);
    let fact = BigUint::from(6u32) * factorial(2 * n) * factorial(2 * n + 2)
        / (factorial(n) * factorial(n + 1) * factorial(n + 2) * factorial(n + 3));
    assert_eq!(det, fact, "the two closed forms disagree at n = {n}");
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let want = [1u32, 3, 14, 84, 594];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(count_wn_closed(i + 1), BigUint::from(w), "n = {}", i + 1);
        }
    }

    #[test]
    fn closed_forms_agree_far_out() {
        // count_wn_closed asserts internally.
        for n in 1..=500 {
            let _ = count_wn_closed(n);
        }
    }
}
