//! Partial and complete Bell polynomials over complex arguments.
//!
//! `B_{n,k}(x_1, ..., x_{n−k+1})` is the sum over sequences `j_1, j_2, ...`
//! with `Σ j_i = k` and `Σ i·j_i = n` of
//! `n! / Π j_i! · Π (x_i / i!)^{j_i}`. For small `n` that sum is enumerated
//! directly; past [`ENUMERATION_LIMIT`] the recurrence
//! `B_{n,k} = Σ_i C(n−1, i−1) x_i B_{n−i,k−1}` is used instead.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest `n` evaluated by partition enumeration.
pub const ENUMERATION_LIMIT: usize = 12;

/// The validated seed vector `x_1, ..., x_n` of a Bell polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct BellInput {
    n: usize,
    xs: Vec<Complex64>,
}

impl BellInput {
    pub fn new(n: usize, xs: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Bell polynomial order must be positive".into()));
        }
        if xs.len() != n {
            return Err(Error::Domain(format!(
                "expected {n} arguments, got {}",
                xs.len()
            )));
        }
        Ok(Self { n, xs })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn args(&self) -> &[Complex64] {
        &self.xs
    }

    pub fn complete(&self) -> Complex64 {
        complete_unchecked(self.n, &self.xs)
    }
}

/// Partial Bell polynomial `B_{n,k}`.
pub fn bell_partial(n: usize, k: usize, xs: &[Complex64]) -> Result<Complex64> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    if xs.len() < n - k + 1 {
        return Err(Error::Domain(format!(
            "B_{{{n},{k}}} needs {} arguments, got {}",
            n - k + 1,
            xs.len()
        )));
    }
    Ok(partial_unchecked(n, k, xs))
}

/// Complete Bell polynomial `B_n = Σ_k B_{n,k}`.
pub fn bell_complete(n: usize, xs: &[Complex64]) -> Result<Complex64> {
    if xs.len() != n {
        return Err(Error::Domain(format!(
            "B_{n} needs exactly {n} arguments, got {}",
            xs.len()
        )));
    }
    Ok(complete_unchecked(n, xs))
}

/// Complete Bell polynomial as the determinant of the upper Hessenberg matrix
/// with `C(n−1−r, c−r) x_{c−r+1}` on and above the diagonal and `−1` below it.
pub fn bell_complete_det(n: usize, xs: &[Complex64]) -> Result<Complex64> {
    if xs.len() != n {
        return Err(Error::Domain(format!(
            "B_{n} needs exactly {n} arguments, got {}",
            xs.len()
        )));
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for r in 0..n {
        if r > 0 {
            m[r * n + r - 1] = Complex64::new(-1.0, 0.0);
        }
        for c in r..n {
            m[r * n + c] = xs[c - r] * binomial(n - 1 - r, c - r);
        }
    }
    Ok(determinant(n, m))
}

fn complete_unchecked(n: usize, xs: &[Complex64]) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    (1..=n).map(|k| partial_unchecked(n, k, xs)).sum()
}

fn partial_unchecked(n: usize, k: usize, xs: &[Complex64]) -> Complex64 {
    if n <= ENUMERATION_LIMIT {
        partial_enumerated(n, k, xs)
    } else {
        partial_recurrence(n, k, xs)
    }
}

/// Walks all multiplicity vectors `j_1..j_{n−k+1}`.
fn partial_enumerated(n: usize, k: usize, xs: &[Complex64]) -> Complex64 {
    let width = n - k + 1;
    // x_i / i!
    let scaled: Vec<Complex64> = (1..=width)
        .map(|i| xs[i - 1] / factorial(i))
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    let mut counts = vec![0usize; width];
    enumerate(width, n, k, &mut counts, &mut |counts| {
        let mut term = Complex64::new(factorial(n), 0.0);
        for (i, &j) in counts.iter().enumerate() {
            if j > 0 {
                term *= scaled[i].powu(j as u32) / factorial(j);
            }
        }
        total += term;
    });
    total
}

/// Fills `counts[part-1]` for parts `part..=1`, largest first.
fn enumerate<F>(part: usize, remaining: usize, slots: usize, counts: &mut [usize], visit: &mut F)
where
    F: FnMut(&[usize]),
{
    if part == 0 {
        if remaining == 0 && slots == 0 {
            visit(counts);
        }
        return;
    }
    let max_j = (remaining / part).min(slots);
    for j in 0..=max_j {
        counts[part - 1] = j;
        enumerate(part - 1, remaining - j * part, slots - j, counts, visit);
    }
    counts[part - 1] = 0;
}

fn partial_recurrence(n: usize, k: usize, xs: &[Complex64]) -> Complex64 {
    // table[m][j] = B_{m,j}, m ≤ n, j ≤ k
    let zero = Complex64::new(0.0, 0.0);
    let mut table = vec![vec![zero; k + 1]; n + 1];
    table[0][0] = Complex64::new(1.0, 0.0);
    for m in 1..=n {
        for j in 1..=k.min(m) {
            let mut acc = zero;
            for i in 1..=(m - j + 1) {
                let prev = table[m - i][j - 1];
                if prev != zero {
                    acc += xs[i - 1] * prev * binomial(m - 1, i - 1);
                }
            }
            table[m][j] = acc;
        }
    }
    table[n][k]
}

fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut out = 1.0;
    for i in 0..k {
        out = out * (n - i) as f64 / (i + 1) as f64;
    }
    out.round()
}

/// Gaussian elimination with partial pivoting on a row-major `n×n` matrix.
fn determinant(n: usize, mut m: Vec<Complex64>) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a * n + col].norm().total_cmp(&m[b * n + col].norm()))
            .unwrap_or(col);
        let p = m[pivot * n + col];
        if p.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for c in 0..n {
                m.swap(col * n + c, pivot * n + c);
            }
            det = -det;
        }
        det *= p;
        for r in col + 1..n {
            let factor = m[r * n + col] / p;
            if factor.norm() == 0.0 {
                continue;
            }
            for c in col..n {
                let v = m[col * n + c];
                m[r * n + c] -= factor * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn small_cases() {
        let xs = [c(1.5, -0.5), c(0.25, 2.0), c(-1.0, 0.3)];
        assert_eq!(bell_partial(2, 1, &xs[..2]).unwrap(), xs[1]);
        let sq = bell_partial(2, 2, &xs[..1]).unwrap();
        assert!((sq - xs[0] * xs[0]).norm() < 1e-15);
        let b42 = bell_partial(4, 2, &xs).unwrap();
        let want = xs[0] * xs[2] * 4.0 + xs[1] * xs[1] * 3.0;
        assert!((b42 - want).norm() < 1e-13);
        assert_eq!(bell_complete(1, &[c(5.0, 0.0)]).unwrap(), c(5.0, 0.0));
    }

    #[test]
    fn complete_is_sum_of_partials() {
        let xs: Vec<Complex64> = (1..=9).map(|i| c(0.3 * i as f64, -0.1 * i as f64)).collect();
        let sum: Complex64 = (1..=9).map(|k| bell_partial(9, k, &xs).unwrap()).sum();
        assert_eq!(bell_complete(9, &xs).unwrap(), sum);
    }

    #[test]
    fn determinant_form_agrees() {
        for n in 1..=10 {
            let xs: Vec<Complex64> = (1..=n)
                .map(|i| c((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let a = bell_complete(n, &xs).unwrap();
            let b = bell_complete_det(n, &xs).unwrap();
            assert!((a - b).norm() <= 1e-11 * a.norm().max(1.0), "n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn enumeration_and_recurrence_agree() {
        let xs: Vec<Complex64> = (1..=12).map(|i| c(1.0 / i as f64, 0.2 * i as f64)).collect();
        for n in 1..=12 {
            for k in 1..=n {
                let a = partial_enumerated(n, k, &xs);
                let b = partial_recurrence(n, k, &xs);
                assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn all_ones_gives_stirling_and_bell_numbers() {
        let ones = vec![c(1.0, 0.0); 15];
        // S(15, 3) = 2_375_101, Bell(15) = 1_382_958_545
        assert_eq!(bell_partial(15, 3, &ones).unwrap().re, 2_375_101.0);
        assert_eq!(bell_complete(15, &ones).unwrap().re, 1_382_958_545.0);
    }

    #[test]
    fn domain_errors() {
        let xs = [c(1.0, 0.0); 4];
        assert!(bell_partial(3, 0, &xs).is_err());
        assert!(bell_partial(3, 4, &xs).is_err());
        assert!(bell_partial(4, 1, &xs[..3]).is_err());
        assert!(bell_complete(3, &xs).is_err());
        assert!(BellInput::new(2, vec![c(1.0, 0.0)]).is_err());
        assert!(BellInput::new(0, vec![]).is_err());
    }

    #[test]
    fn bell_input_complete() {
        let input = BellInput::new(2, vec![c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert_eq!(input.complete(), c(7.0, 0.0));
    }
}
