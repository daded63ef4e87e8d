//! Hermite and associated Laguerre polynomials by upward three-term
//! recurrence.

/// Which polynomial family to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    /// Physicists' Hermite polynomial `H_n`.
    Hermite(u32),
    /// Associated Laguerre polynomial `L^m_n`.
    Laguerre(u32, u32),
}

pub fn special_eval(kind: SpecialKind, x: f64) -> f64 {
    match kind {
        SpecialKind::Hermite(n) => hermite(n, x),
        SpecialKind::Laguerre(n, m) => laguerre(n, m, x),
    }
}

/// `H_n(x)` from `H_{k+1} = 2x H_k - 2k H_{k-1}`.
pub fn hermite(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(H_n, H_n', H_n'')` using `H_n' = 2n H_{n-1}`.
pub fn hermite_jet(n: u32, x: f64) -> [f64; 3] {
    let nf = n as f64;
    let d1 = if n >= 1 { 2.0 * nf * hermite(n - 1, x) } else { 0.0 };
    let d2 = if n >= 2 {
        4.0 * nf * (nf - 1.0) * hermite(n - 2, x)
    } else {
        0.0
    };
    [hermite(n, x), d1, d2]
}

/// `L^m_n(x)` from `(k+1) L_{k+1} = (2k+1+m-x) L_k - (k+m) L_{k-1}`.
pub fn laguerre(n: u32, m: u32, x: f64) -> f64 {
    let a = m as f64;
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `(L^m_n, d/dx, d^2/dx^2)` using `d/dx L^m_n = -L^{m+1}_{n-1}`.
pub fn laguerre_jet(n: u32, m: u32, x: f64) -> [f64; 3] {
    let d1 = if n >= 1 { -laguerre(n - 1, m + 1, x) } else { 0.0 };
    let d2 = if n >= 2 { laguerre(n - 2, m + 2, x) } else { 0.0 };
    [laguerre(n, m, x), d1, d2]
}

/// Orthonormal Hermite functions `psi_0 .. psi_n` at `x`, where
/// `psi_k(x) = H_k(x) exp(-x^2/2) / sqrt(2^k k! sqrt(pi))`.
pub fn hermite_functions(n: u32, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(cur);
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// `(psi_n, psi_n', psi_n'')` for the orthonormal Hermite function.
pub fn hermite_function_jet(n: u32, x: f64) -> [f64; 3] {
    let f = hermite_functions(n + 1, x);
    let k = n as usize;
    let nf = n as f64;
    let down = if n >= 1 { (nf / 2.0).sqrt() * f[k - 1] } else { 0.0 };
    let d1 = down - ((nf + 1.0) / 2.0).sqrt() * f[k + 1];
    let d2 = (x * x - 2.0 * nf - 1.0) * f[k];
    [f[k], d1, d2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(hermite(2, 1.0), 2.0);
        assert_eq!(laguerre(1, 0, 0.5), 0.5);
        assert_eq!(special_eval(SpecialKind::Hermite(3), 2.0), 8.0 * 8.0 - 12.0 * 2.0);
        assert_eq!(special_eval(SpecialKind::Laguerre(2, 1), 0.0), 3.0);
    }

    #[test]
    fn hermite_matches_explicit_series() {
        // H_n(x) = n! sum_k (-1)^k (2x)^(n-2k) / (k! (n-2k)!)
        let series = |n: u32, x: f64| {
            let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
            (0..=n / 2)
                .map(|k| {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    sign * fact(n) * (2.0 * x).powi((n - 2 * k) as i32) / (fact(k) * fact(n - 2 * k))
                })
                .sum::<f64>()
        };
        let v = hermite(5, 0.7);
        assert!((v - series(5, 0.7)).abs() < 1e-12 * v.abs().max(1.0));
    }

    #[test]
    fn hermite_functions_agree_with_polynomials() {
        let x = 1.3;
        let f = hermite_functions(6, x);
        for (k, fk) in f.iter().enumerate() {
            let norm = (2f64.powi(k as i32)
                * (1..=k).map(|j| j as f64).product::<f64>()
                * std::f64::consts::PI.sqrt())
            .sqrt();
            let direct = hermite(k as u32, x) * (-0.5 * x * x).exp() / norm;
            assert!((fk - direct).abs() < 1e-14);
        }
    }
}
