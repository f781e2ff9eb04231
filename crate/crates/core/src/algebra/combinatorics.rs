use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Unsigned Stirling number of the first kind: the coefficient of `x^k` in
/// the rising factorial `x(x+1)...(x+n-1)`.
pub fn stirling_first_unsigned(n: usize, k: usize) -> BigInt {
    // row[j] = [m, j] for the current m
    let mut row = vec![BigInt::one()];
    for m in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, c) in row.iter().enumerate() {
            next[j] += c * BigInt::from(m);
            next[j + 1] += c;
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(BigInt::zero)
}

/// Elementary symmetric polynomial `sigma_j(xs)`.
pub fn elementary_symmetric(j: usize, xs: &[i64]) -> BigInt {
    elementary_all(xs).get(j).cloned().unwrap_or_else(BigInt::zero)
}

/// `[sigma_0(xs), ..., sigma_len(xs)]`.
pub fn elementary_all(xs: &[i64]) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); xs.len() + 1];
    e[0] = BigInt::one();
    for (i, &x) in xs.iter().enumerate() {
        let x = BigInt::from(x);
        for j in (1..=i + 1).rev() {
            let t = &e[j - 1] * &x;
            e[j] += t;
        }
    }
    e
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Partitions of `n` in decreasing order, each as a decreasing list of parts.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_values() {
        assert_eq!(stirling_first_unsigned(5, 4), BigInt::from(10));
        assert_eq!(stirling_first_unsigned(5, 3), BigInt::from(35));
        assert_eq!(stirling_first_unsigned(4, 4), BigInt::from(1));
        assert_eq!(stirling_first_unsigned(3, 5), BigInt::from(0));
        assert_eq!(stirling_first_unsigned(0, 0), BigInt::from(1));
    }

    #[test]
    fn elementary_values() {
        assert_eq!(elementary_symmetric(0, &[4, 5]), BigInt::from(1));
        assert_eq!(elementary_symmetric(2, &[1, 2, 3]), BigInt::from(11));
        assert_eq!(elementary_symmetric(3, &[-2, -1, 3]), BigInt::from(6));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }
}
