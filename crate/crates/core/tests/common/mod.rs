//! Test-only oracles, independent of the library's numerical paths.
#![allow(dead_code)]

/// Double-double number `hi + lo`.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    fn from_i128(v: i128) -> Self {
        let hi = v as f64;
        let lo = (v - hi as i128) as f64;
        Dd { hi, lo }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    fn mul_f64(self, x: f64) -> Dd {
        let p = self.hi * x;
        let e = self.hi.mul_add(x, -p);
        let (hi, lo) = quick_two_sum(p, e + self.lo * x);
        Dd { hi, lo }
    }

    fn sign(self) -> i32 {
        let v = if self.hi != 0.0 { self.hi } else { self.lo };
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    }
}

/// Polynomial with exact integer coefficients, lowest degree first.
#[derive(Clone, Debug)]
struct Poly(Vec<i128>);

impl Poly {
    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i128)
                .collect(),
        )
    }

    fn eval(&self, x: f64) -> Dd {
        let mut acc = Dd::from_i128(*self.0.last().unwrap());
        for &c in self.0.iter().rev().skip(1) {
            acc = acc.mul_f64(x).add(Dd::from_i128(c));
        }
        acc
    }

    fn sign_at(&self, x: f64) -> i32 {
        self.eval(x).sign()
    }

    fn abs_at(&self, x: f64) -> f64 {
        let v = self.eval(x);
        (v.hi + v.lo).abs()
    }

    fn closer(&self, a: f64, b: f64) -> f64 {
        if self.abs_at(a) <= self.abs_at(b) {
            a
        } else {
            b
        }
    }

    /// All roots in `[lo, hi]`, assuming every root of the polynomial is
    /// real and inside the interval. Roots of the derivative split the
    /// interval into pieces holding exactly one root each.
    fn real_roots(&self, lo: f64, hi: f64) -> Vec<f64> {
        if self.degree() == 0 {
            return vec![];
        }
        let mut knots = vec![lo];
        knots.extend(self.derivative().real_roots(lo, hi));
        knots.push(hi);
        knots
            .windows(2)
            .map(|w| self.bisect(w[0], w[1]))
            .collect()
    }

    /// Bisection over the bit patterns of non-negative doubles.
    fn bisect(&self, a: f64, b: f64) -> f64 {
        let (sa, sb) = (self.sign_at(a), self.sign_at(b));
        if sa == 0 {
            return a;
        }
        if sb == 0 {
            return b;
        }
        if sa == sb {
            // touching root (even multiplicity) sits on a derivative root
            return self.closer(a, b);
        }
        let (mut lo, mut hi) = (a.to_bits(), b.to_bits());
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let s = self.sign_at(f64::from_bits(mid));
            if s == 0 {
                return f64::from_bits(mid);
            }
            if s == sa {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.closer(f64::from_bits(lo), f64::from_bits(hi))
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn principal_minor_sum(a: &[[i128; 4]; 4], size: usize) -> i128 {
    (0u32..16)
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| {
            let idx: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
            let sub: Vec<Vec<i128>> = idx
                .iter()
                .map(|&r| idx.iter().map(|&c| a[r][c]).collect())
                .collect();
            det(&sub)
        })
        .sum()
}

/// Singular values of an integer 4x4 matrix (row-major), descending, via
/// the roots of `det(MᵀM - λI)` computed from exact integer coefficients.
pub fn charpoly_singular_values(m: &[i64; 16]) -> [f64; 4] {
    let mut a = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = (0..4)
                .map(|r| m[r * 4 + i] as i128 * m[r * 4 + j] as i128)
                .sum();
        }
    }
    let e: Vec<i128> = (1..=4).map(|k| principal_minor_sum(&a, k)).collect();
    // λ⁴ - e1 λ³ + e2 λ² - e3 λ + e4
    let poly = Poly(vec![e[3], -e[2], e[1], -e[0], 1]);
    let upper = e[0] as f64 + 1.0;
    let mut lambdas = poly.real_roots(0.0, upper);
    lambdas.sort_by(|x, y| y.total_cmp(x));
    let mut out = [0.0; 4];
    for (o, l) in out.iter_mut().zip(lambdas) {
        *o = l.max(0.0).sqrt();
    }
    out
}

/// Brute-force Arnold period: iterate every grid point one step at a time
/// until the whole grid is back home.
pub fn brute_force_period(a: u64, b: u64, n: u64) -> u64 {
    let start: Vec<(u64, u64)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let mut points = start.clone();
    let mut t = 0;
    loop {
        for p in points.iter_mut() {
            let (x, y) = *p;
            *p = ((x + a * y) % n, (b * x + (a * b + 1) * y) % n);
        }
        t += 1;
        if points == start {
            return t;
        }
    }
}

/// Relative error with zero singular values compared on the scale of the
/// largest one.
pub fn sigma_rel_error(got: f64, want: f64, scale: f64) -> f64 {
    if want > 0.0 {
        (got - want).abs() / want
    } else {
        got.abs() / scale.max(1.0)
    }
}
