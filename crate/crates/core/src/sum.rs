use num_complex::Complex64;

/// Neumaier-compensated accumulator for complex sums.
///
/// Quadrature results must not depend on how node loops are grouped, so all
/// oracle reductions go through this type.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

#[inline]
fn two_sum(sum: &mut f64, carry: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *carry += (*sum - t) + x;
    } else {
        *carry += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: Complex64) {
        two_sum(&mut self.sum.re, &mut self.carry.re, x.re);
        two_sum(&mut self.sum.im, &mut self.carry.im, x.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

impl core::iter::FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let xs = [1.0e16, 1.0, -1.0e16, 1.0];
        let acc: CompensatedSum = xs.iter().map(|&x| Complex64::new(x, -x)).collect();
        assert_eq!(acc.value(), Complex64::new(2.0, -2.0));
    }
}
