use crate::error::{Error, Result};

/// Equidistant even shuffle of M: stripe `i` of width `1/N` is moved
/// rigidly onto stripe `σ(i)`.
///
/// Stripes are left-closed, `[(i-1)/N, i/N)`, with `x = 1` in the last one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    /// 0-based images.
    sigma: Vec<usize>,
}

impl Shuffle {
    /// `sigma` is 1-based: `sigma[i-1] = σ(i)`.
    pub fn new(sigma: &[usize]) -> Result<Self> {
        let n = sigma.len();
        if n == 0 {
            return Err(Error::InvalidPermutation(0));
        }
        let mut seen = vec![false; n];
        for &s in sigma {
            if s == 0 || s > n || seen[s - 1] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[s - 1] = true;
        }
        Ok(Self {
            sigma: sigma.iter().map(|s| s - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(&(1..=n).collect::<Vec<_>>())
    }

    pub fn stripes(&self) -> usize {
        self.sigma.len()
    }

    /// 1-based permutation, as written in spec files.
    pub fn sigma(&self) -> Vec<usize> {
        self.sigma.iter().map(|s| s + 1).collect()
    }

    fn stripe(&self, x: f64) -> usize {
        let n = self.stripes();
        ((x * n as f64).floor().max(0.0) as usize).min(n - 1)
    }

    /// The measure-preserving map `h`.
    pub fn map(&self, x: f64) -> f64 {
        let n = self.stripes() as f64;
        let i = self.stripe(x);
        x + (self.sigma[i] as f64 - i as f64) / n
    }

    pub fn cdf(&self, x: f64, y: f64) -> f64 {
        let n = self.stripes() as f64;
        let width = 1.0 / n;
        self.sigma
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let len = (x - i as f64 / n).clamp(0.0, width);
                (y - s as f64 / n).clamp(0.0, len)
            })
            .sum()
    }

    /// `1[h(x) <= y]`.
    pub fn kernel_cdf(&self, x: f64, y: f64) -> f64 {
        if self.map(x) <= y {
            1.0
        } else {
            0.0
        }
    }

    pub fn kernel_jumps(&self, x: f64) -> Vec<(f64, f64)> {
        vec![(self.map(x), 1.0)]
    }

    /// The transposed copula is the shuffle with `σ⁻¹`.
    pub fn transpose(&self) -> Self {
        let mut inv = vec![0; self.stripes()];
        for (i, &s) in self.sigma.iter().enumerate() {
            inv[s] = i;
        }
        Self { sigma: inv }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn map_examples() {
        let id = Shuffle::identity(4).unwrap();
        for &x in &[0.0, 0.1, 0.25, 0.6, 1.0] {
            assert!((id.map(x) - x).abs() < 1e-15);
        }
        let swap = Shuffle::new(&[2, 1]).unwrap();
        assert!((swap.map(0.25) - 0.75).abs() < 1e-15);
        let cyc = Shuffle::new(&[2, 3, 1]).unwrap();
        assert!((cyc.map(0.5) - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn cdf_examples() {
        let id = Shuffle::identity(5).unwrap();
        for &(x, y) in &[(0.3, 0.7), (0.9, 0.2), (0.45, 0.45)] {
            assert!((id.cdf(x, y) - x.min(y)).abs() < 1e-15);
        }
        let swap = Shuffle::new(&[2, 1]).unwrap();
        assert_eq!(swap.cdf(0.5, 0.5), 0.0);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Shuffle::new(&[1, 1]).is_err());
        assert!(Shuffle::new(&[0, 1]).is_err());
        assert!(Shuffle::new(&[1, 3]).is_err());
        assert!(Shuffle::new(&[]).is_err());
    }

    #[test]
    fn transpose_is_inverse_permutation() {
        let s = Shuffle::new(&[3, 1, 4, 2]).unwrap();
        let t = s.transpose();
        assert_eq!(t.sigma(), vec![2, 4, 1, 3]);
        for i in 0..=20 {
            for j in 0..=20 {
                let (x, y) = (i as f64 / 20.0, j as f64 / 20.0);
                assert!((t.cdf(x, y) - s.cdf(y, x)).abs() < 1e-15);
            }
        }
    }

    fn permutation() -> impl Strategy<Value = Vec<usize>> {
        (1usize..9).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
    }

    proptest! {
        #[test]
        fn map_preserves_lebesgue_measure(sigma in permutation(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
            // λ(h⁻¹[0,b]) = b, via the copula margin C(1, b).
            let s = Shuffle::new(&sigma).unwrap();
            prop_assert!((s.cdf(1.0, b) - b).abs() < 1e-14);
            prop_assert!((s.cdf(a, 1.0) - a).abs() < 1e-14);
            let h = s.map(a);
            prop_assert!((0.0..=1.0).contains(&h));
        }
    }
}
