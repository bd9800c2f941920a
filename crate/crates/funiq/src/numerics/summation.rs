/// Neumaier-compensated sum of a slice.
pub fn neumaier_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Unevaluated double-f64 value `hi + lo` with |lo| <= ulp(hi)/2.
///
/// Only the handful of operations the node recurrence needs: error-free
/// addition of an f64, and products against an f64 via FMA-free splitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub fn new(v: f64) -> Self {
        DoubleDouble { hi: v, lo: 0.0 }
    }

    /// Rounded-to-nearest f64 value.
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    /// Add an f64 with two-sum error tracking.
    pub fn add_f64(self, v: f64) -> Self {
        let (s, e) = two_sum(self.hi, v);
        let mut lo = self.lo + e;
        let (hi, e2) = quick_two_sum(s, lo);
        lo = e2;
        DoubleDouble { hi, lo }
    }

    /// Product with an f64 (Dekker splitting).
    pub fn mul_f64(self, v: f64) -> Self {
        let (p, e) = two_prod(self.hi, v);
        let lo = self.lo * v + e;
        let (hi, e2) = quick_two_sum(p, lo);
        DoubleDouble { hi, lo: e2 }
    }
}

impl std::ops::Sub for DoubleDouble {
    type Output = DoubleDouble;

    /// Difference of two double-doubles, accurate to the low parts.
    fn sub(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, -other.hi);
        let lo = self.lo - other.lo + e;
        let (hi, lo) = quick_two_sum(s, lo);
        DoubleDouble { hi, lo }
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ahi, alo) = split(a);
    let (bhi, blo) = split(b);
    let err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
    (p, err)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}
