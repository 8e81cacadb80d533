//! Logistic-map sequences, rank orderings and the Arnold cat map on square
//! block grids.

use crate::error::{Error, Result};

/// Lower end of the parameter range used for block-adaptive sequences.
pub const MU_MIN: f64 = 3.5699;

/// Initial value and growth parameter of a logistic map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogisticParams {
    x0: f64,
    mu: f64,
}

impl LogisticParams {
    pub fn new(x0: f64, mu: f64) -> Result<Self> {
        if !(x0 > 0.0 && x0 < 1.0) {
            return Err(Error::InvalidLogistic(format!("x0={x0} outside (0, 1)")));
        }
        if !(MU_MIN..4.0).contains(&mu) {
            return Err(Error::InvalidLogistic(format!(
                "mu={mu} outside [{MU_MIN}, 4)"
            )));
        }
        Ok(Self { x0, mu })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Returns `x_1 .. x_n` of `x <- mu * x * (1 - x)` starting from `x0`.
/// The first element is the first iterate; nothing is discarded.
pub fn logistic_sequence(params: LogisticParams, n: usize) -> Vec<f64> {
    let mut x = params.x0;
    (0..n)
        .map(|_| {
            x = params.mu * x * (1.0 - x);
            x
        })
        .collect()
}

/// Indices of `seq` ordered by decreasing value; equal values keep index
/// order. `out[0]` is the position of the largest element.
pub fn rank_permutation(seq: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    // stable sort keeps ascending index order among exact ties
    order.sort_by(|&i, &j| seq[j].total_cmp(&seq[i]));
    order
}

/// Arnold cat map parameters together with the scrambling count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArnoldKey {
    a: u64,
    b: u64,
    k: u64,
    n: u64,
    period: u64,
}

impl ArnoldKey {
    /// Validates the parameters and computes the period for grid side `n`.
    pub fn new(a: u64, b: u64, k: u64, n: u64) -> Result<Self> {
        let period = arnold_period(a, b, n)?;
        if k >= period {
            return Err(Error::KeyOutOfRange { k, period });
        }
        Ok(Self {
            a,
            b,
            k,
            n,
            period,
        })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn side(&self) -> u64 {
        self.n
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// Destination index for every row-major source index after `k`
    /// forward steps.
    pub fn forward(&self) -> Vec<usize> {
        scramble_permutation(self.n as usize, self.a, self.b, self.k)
    }

    /// Destination index for every source index after `T - k` forward
    /// steps, which undoes [`ArnoldKey::forward`].
    pub fn backward(&self) -> Vec<usize> {
        scramble_permutation(self.n as usize, self.a, self.b, self.period - self.k)
    }
}

/// One application of `[[1, a], [b, ab + 1]]` modulo `n`.
pub fn arnold_step(x: u64, y: u64, a: u64, b: u64, n: u64) -> (u64, u64) {
    let m = matrix(a, b, n);
    apply(&m, x, y, n)
}

type Mat2 = [[u64; 2]; 2];

const IDENTITY: Mat2 = [[1, 0], [0, 1]];

fn matrix(a: u64, b: u64, n: u64) -> Mat2 {
    let a = a % n;
    let b = b % n;
    [[1 % n, a], [b, (mul_mod(a, b, n) + 1) % n]]
}

fn mul_mod(x: u64, y: u64, n: u64) -> u64 {
    ((x as u128 * y as u128) % n as u128) as u64
}

fn mat_mul(p: &Mat2, q: &Mat2, n: u64) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (mul_mod(p[i][0], q[0][j], n) + mul_mod(p[i][1], q[1][j], n)) % n;
        }
    }
    out
}

fn mat_pow(m: &Mat2, mut e: u64, n: u64) -> Mat2 {
    let mut base = *m;
    let mut acc = [[1 % n, 0], [0, 1 % n]];
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base, n);
        }
        base = mat_mul(&base, &base, n);
        e >>= 1;
    }
    acc
}

fn apply(m: &Mat2, x: u64, y: u64, n: u64) -> (u64, u64) {
    (
        (mul_mod(m[0][0], x, n) + mul_mod(m[0][1], y, n)) % n,
        (mul_mod(m[1][0], x, n) + mul_mod(m[1][1], y, n)) % n,
    )
}

/// Smallest `T >= 1` with `[[1, a], [b, ab + 1]]^T = I (mod n)`, found by
/// repeated multiplication. Gives up after `6 n^2` steps.
pub fn arnold_period(a: u64, b: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArnold(format!("grid side N={n} must be >= 2")));
    }
    if a == 0 || b == 0 {
        return Err(Error::InvalidArnold(format!(
            "a={a}, b={b} must both be positive"
        )));
    }
    let cap = 6u64.saturating_mul(n).saturating_mul(n);
    let m = matrix(a, b, n);
    let mut power = m;
    for t in 1..=cap {
        if power == IDENTITY {
            return Ok(t);
        }
        power = mat_mul(&power, &m, n);
    }
    Err(Error::PeriodCapExceeded { a, b, n, cap })
}

/// Row-major permutation of an `n x n` grid after `times` Arnold steps:
/// the element at index `i = x * n + y` lands at the returned `out[i]`.
pub fn scramble_permutation(n: usize, a: u64, b: u64, times: u64) -> Vec<usize> {
    let side = n as u64;
    let m = mat_pow(&matrix(a, b, side), times, side);
    (0..n * n)
        .map(|i| {
            let (x, y) = apply(&m, (i / n) as u64, (i % n) as u64, side);
            x as usize * n + y as usize
        })
        .collect()
}

/// Moves every cell of a square row-major grid through `times` Arnold
/// steps. The coordinate `(x, y)` addresses row `x`, column `y`.
pub fn scramble_grid<T: Clone>(grid: &[T], a: u64, b: u64, times: u64) -> Result<Vec<T>> {
    let n = grid.len().isqrt();
    if n * n != grid.len() || n == 0 {
        return Err(Error::InvalidArnold(format!(
            "grid of {} cells is not square",
            grid.len()
        )));
    }
    Ok(permute(grid, &scramble_permutation(n, a, b, times)))
}

/// Places `items[i]` at `dest[i]`.
pub(crate) fn permute<T: Clone>(items: &[T], dest: &[usize]) -> Vec<T> {
    debug_assert_eq!(items.len(), dest.len());
    let mut out: Vec<Option<T>> = vec![None; items.len()];
    for (item, &d) in items.iter().zip(dest) {
        out[d] = Some(item.clone());
    }
    out.into_iter()
        .map(|v| v.expect("scramble map is a bijection"))
        .collect()
}
