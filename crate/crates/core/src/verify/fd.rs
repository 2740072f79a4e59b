/// Fornberg's recursion: weights for the `d`-th derivative at `x0` from
/// samples at `nodes`.
pub fn fornberg(d: usize, x0: f64, nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; d + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(d);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[d]).collect()
}

/// Half-width of the central stencil giving eighth-order accuracy.
pub fn half_width(d: u32) -> usize {
    if d == 0 {
        0
    } else {
        4 + (d as usize - 1) / 2
    }
}

/// Central eighth-order stencil for the `d`-th derivative on unit spacing:
/// offsets `-p..=p` and their weights.
#[derive(Clone, Debug)]
pub struct Stencil {
    pub d: u32,
    pub offsets: Vec<i64>,
    pub weights: Vec<f64>,
}

impl Stencil {
    pub fn central(d: u32) -> Stencil {
        let p = half_width(d) as i64;
        let offsets: Vec<i64> = (-p..=p).collect();
        let nodes: Vec<f64> = offsets.iter().map(|o| *o as f64).collect();
        Stencil {
            d,
            weights: fornberg(d as usize, 0.0, &nodes),
            offsets,
        }
    }

    /// Derivative of `f` at `x` with spacing `h`.
    pub fn apply<T>(&self, h: f64, x: f64, f: impl Fn(f64) -> T) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    {
        let scale = h.powi(-(self.d as i32));
        let mut acc = T::default();
        for (o, w) in self.offsets.iter().zip(&self.weights) {
            if *w != 0.0 {
                acc = acc + f(x + *o as f64 * h) * (w * scale);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_weights() {
        let w = fornberg(2, 0.0, &[-1.0, 0.0, 1.0]);
        assert!(
            (w[0] - 1.0).abs() < 1e-14 && (w[1] + 2.0).abs() < 1e-14 && (w[2] - 1.0).abs() < 1e-14
        );
        let s = Stencil::central(1);
        assert_eq!(s.offsets.len(), 9);
        assert!((s.weights[5] - 4.0 / 5.0).abs() < 1e-14);
    }

    #[test]
    fn eighth_order_convergence() {
        for d in 1..=4u32 {
            let s = Stencil::central(d);
            let exact = [
                (1.0f64).cos(),
                -(1.0f64).sin(),
                -(1.0f64).cos(),
                (1.0f64).sin(),
            ][d as usize - 1];
            let e1 = (s.apply(0.2, 1.0, f64::sin) - exact).abs();
            let e2 = (s.apply(0.1, 1.0, f64::sin) - exact).abs();
            let order = (e1 / e2).log2();
            assert!(order > 7.5, "d={d} order={order}");
        }
    }
}
