//! Brute-force midpoint sums on a fixed tensor grid. No adaptivity and no
//! variable transforms: the reference against which adaptive results are
//! checked.

/// One axis of the grid: `cells` equal cells on [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub cells: usize,
}

impl GridAxis {
    pub fn new(lo: f64, hi: f64, cells: usize) -> Self {
        Self { lo, hi, cells }
    }

    fn width(&self) -> f64 {
        (self.hi - self.lo) / self.cells as f64
    }

    fn midpoint(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * self.width()
    }
}

/// Midpoint-rule sum of `f` over the tensor grid spanned by `axes`.
pub fn riemann_oracle<F>(mut f: F, axes: &[GridAxis]) -> f64
where
    F: FnMut(&[f64]) -> f64,
{
    riemann_oracle_vec(|x| [f(x)], axes)[0]
}

/// Vector-valued midpoint sum.
pub fn riemann_oracle_vec<const N: usize, F>(mut f: F, axes: &[GridAxis]) -> [f64; N]
where
    F: FnMut(&[f64]) -> [f64; N],
{
    let mut total = [0.0; N];
    if axes.iter().any(|a| a.cells == 0) {
        return total;
    }
    let cell: f64 = axes.iter().map(GridAxis::width).product();
    let mut idx = vec![0usize; axes.len()];
    let mut x: Vec<f64> = axes.iter().map(|a| a.midpoint(0)).collect();
    loop {
        let v = f(&x);
        for c in 0..N {
            total[c] += v[c];
        }
        // Odometer increment, last axis fastest.
        let mut d = axes.len();
        loop {
            if d == 0 {
                for t in total.iter_mut() {
                    *t *= cell;
                }
                return total;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < axes[d].cells {
                x[d] = axes[d].midpoint(idx[d]);
                break;
            }
            idx[d] = 0;
            x[d] = axes[d].midpoint(0);
        }
    }
}
