//! Independent oracles shared by the integration and acceptance tests.
//! The functions in this file do not call into the library.
#![allow(dead_code)]

pub mod properties;

/// Γ(k/2) for integer k >= 1 by the half-integer recursion.
pub fn gamma_half(k: usize) -> f64 {
    let (mut g, mut a) = if k.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (std::f64::consts::PI.sqrt(), 0.5)
    };
    while a < k as f64 / 2.0 - 1e-12 {
        g *= a;
        a += 1.0;
    }
    g
}

/// Composite Simpson rule with `panels` (even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels + panels % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// P(X > x) for X ~ χ²(k), integrating the density of V = sqrt(X) over
/// [sqrt(x), sqrt(x) + 14]; the substitution removes the singularity at 0.
pub fn chi2_survival_oracle(x: f64, k: usize) -> f64 {
    let norm = 2.0 / (2f64.powf(k as f64 / 2.0) * gamma_half(k));
    let dens = |v: f64| norm * v.powi(k as i32 - 1) * (-0.5 * v * v).exp();
    let lo = x.sqrt();
    simpson(dens, lo, lo + 14.0, 20_000)
}

/// Gauss-Jordan inverse with partial pivoting.
pub fn invert(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..k {
        let piv = (c..k)
            .max_by(|&p, &q| m[p][c].abs().total_cmp(&m[q][c].abs()))
            .unwrap();
        m.swap(c, piv);
        let d = m[c][c];
        for v in m[c].iter_mut() {
            *v /= d;
        }
        for r in 0..k {
            if r != c {
                let f = m[r][c];
                let pivot_row = m[c].clone();
                for (v, w) in m[r].iter_mut().zip(pivot_row) {
                    *v -= f * w;
                }
            }
        }
    }
    m.into_iter().map(|r| r[k..].to_vec()).collect()
}

/// n d'W(W'W)⁻¹W'd / d'd with d_t = û²_t/σ̂² - 1 and w_t = (1, û²_{t-1}, ..., û²_{t-p}),
/// over the rows t = p+1..=len.
pub fn lm_quadratic_form(residuals: &[f64], p: usize) -> f64 {
    let sq: Vec<f64> = residuals.iter().map(|e| e * e).collect();
    let n = sq.len() - p;
    let sigma2 = sq[p..].iter().sum::<f64>() / n as f64;
    let d: Vec<f64> = sq[p..].iter().map(|s| s / sigma2 - 1.0).collect();
    let w: Vec<Vec<f64>> = (0..n)
        .map(|r| {
            let mut row = vec![1.0];
            row.extend((1..=p).map(|j| sq[r + p - j]));
            row
        })
        .collect();
    let k = p + 1;
    let wtw: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| w.iter().map(|row| row[i] * row[j]).sum())
                .collect()
        })
        .collect();
    let wtd: Vec<f64> = (0..k)
        .map(|i| w.iter().zip(&d).map(|(row, dv)| row[i] * dv).sum())
        .collect();
    let inv = invert(&wtw);
    let mut quad = 0.0;
    for i in 0..k {
        for j in 0..k {
            quad += wtd[i] * inv[i][j] * wtd[j];
        }
    }
    n as f64 * quad / d.iter().map(|v| v * v).sum::<f64>()
}

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
pub fn ks_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic Kolmogorov 1% critical value for sample size n.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.6276 / (n as f64).sqrt()
}

/// max(0.015, 3 se(run) + 3 se(reference, 10 000 reps)).
pub fn mc_tolerance(f_hat: f64, reps: usize, f_ref: f64) -> f64 {
    let se_run = (f_hat * (1.0 - f_hat) / reps as f64).sqrt();
    let se_ref = (f_ref * (1.0 - f_ref) / 10_000.0).sqrt();
    (3.0 * se_run + 3.0 * se_ref).max(0.015)
}

/// Number of multisets of size 1..=k from q symbols plus one, by brute-force
/// enumeration of nondecreasing tuples.
pub fn count_monomials_brute(q: usize, k: usize) -> usize {
    let mut count = 1;
    for r in 1..=k {
        let total = q.pow(r as u32);
        for code in 0..total {
            let mut digits = Vec::with_capacity(r);
            let mut c = code;
            for _ in 0..r {
                digits.push(c % q);
                c /= q;
            }
            if digits.windows(2).all(|w| w[0] <= w[1]) {
                count += 1;
            }
        }
    }
    count
}

/// Leave-one-out CV criterion of a one-lag Gaussian NW regression at bandwidth h.
pub fn loo_cv_one_lag(y: &[f64], h: f64) -> f64 {
    let x = &y[..y.len() - 1];
    let t = &y[1..];
    let n = t.len();
    let k = |v: f64| (-0.5 * v * v).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut sse = 0.0;
    for i in 0..n {
        let (mut num, mut den) = (0.0, 0.0);
        for u in (0..n).filter(|&u| u != i) {
            let w = k((x[u] - x[i]) / h);
            num += w * t[u];
            den += w;
        }
        sse += (t[i] - num / den).powi(2);
    }
    sse / n as f64
}
