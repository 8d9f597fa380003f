//! Integer Laurent polynomials in one variable `t`, plus an exact
//! fraction-free determinant for matrices of such polynomials.

use num::{BigInt, Integer, Zero};

/// Coefficients of `t^low, t^(low+1), ...`; the zero polynomial stores an
/// empty vector, otherwise the first and last coefficients are nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    fn trimmed(mut low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        let leading_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            coeffs.drain(..leading_zeros);
            low += leading_zeros as i64;
        }
        if coeffs.is_empty() {
            low = 0;
        }
        LaurentPoly { low, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    pub fn monomial(c: BigInt, degree: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                low: degree,
                coeffs: vec![c],
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low)
        }
    }

    pub fn high_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    /// Difference between highest and lowest degree (0 for monomials).
    pub fn span(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeff(&self, degree: i64) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let idx = degree - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms as (degree, coefficient), lowest degree first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiply by `t^d`.
    pub fn shifted(&self, d: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + d,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Substitute `1/t` for `t`.
    pub fn reversed(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.low + self.coeffs.len() as i64 - 1;
        LaurentPoly {
            low: -high,
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (high - low) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        Self::trimmed(low, coeffs)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::trimmed(self.low + other.low, coeffs)
    }

    /// Division known to be exact (panics otherwise): used by the
    /// fraction-free determinant, where exactness is a theorem.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Self {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let fl = self.coeffs.len();
        let gl = divisor.coeffs.len();
        assert!(fl >= gl, "inexact polynomial division (degree too small)");
        let glead = &divisor.coeffs[gl - 1];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); fl - gl + 1];
        for i in (0..=fl - gl).rev() {
            let lead = rem[i + gl - 1].clone();
            if lead.is_zero() {
                continue;
            }
            let (q, r) = lead.div_rem(glead);
            assert!(r.is_zero(), "inexact polynomial division (leading term)");
            for (j, gc) in divisor.coeffs.iter().enumerate() {
                let delta = &q * gc;
                rem[i + j] -= delta;
            }
            quot[i] = q;
        }
        assert!(
            rem.iter().all(Zero::is_zero),
            "nonzero remainder in exact polynomial division"
        );
        Self::trimmed(self.low - divisor.low, quot)
    }
}

/// Lowest-degree-first `coefficient:degree` pairs, nonzero terms only;
/// the zero polynomial renders as `0:0`.
impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0:0");
        }
        let mut first = true;
        for (d, c) in self.terms() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}:{}", c, d)?;
            first = false;
        }
        Ok(())
    }
}

/// Exact determinant by one-step fraction-free elimination with row
/// pivoting; every division along the way is exact over the coefficient
/// ring. The empty matrix has determinant 1.
pub fn determinant(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    for row in &m {
        assert_eq!(row.len(), n, "determinant requires a square matrix");
    }
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut sign = 1i32;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
        pairs.iter().fold(LaurentPoly::zero(), |acc, &(c, d)| {
            acc.add(&LaurentPoly::monomial(BigInt::from(c), d))
        })
    }

    #[test]
    fn arithmetic_basics() {
        let p = poly(&[(1, -1), (-3, 0), (1, 1)]);
        assert_eq!(p.low_degree(), Some(-1));
        assert_eq!(p.high_degree(), Some(1));
        assert_eq!(p.coeff(0), BigInt::from(-3));
        assert_eq!(p.add(&p.neg()), LaurentPoly::zero());
        assert_eq!(p.reversed(), p);
        assert_eq!(p.to_string(), "1:-1 -3:0 1:1");
        assert_eq!(LaurentPoly::zero().to_string(), "0:0");
    }

    #[test]
    fn multiplication_and_exact_division_roundtrip() {
        let a = poly(&[(2, 0), (3, 1), (-1, 3)]);
        let b = poly(&[(1, -2), (5, 0)]);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&b), a);
        assert_eq!(prod.exact_div(&a), b);
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        let a = poly(&[(1, 0), (1, 1)]);
        let b = poly(&[(2, 0)]);
        let _ = a.exact_div(&b);
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(Vec::new()), LaurentPoly::one());
        let t = poly(&[(1, 1)]);
        let c = |v: i64| LaurentPoly::constant(v);
        // det [[t, 2], [3, t]] = t^2 - 6
        let det = determinant(vec![vec![t.clone(), c(2)], vec![c(3), t.clone()]]);
        assert_eq!(det, poly(&[(1, 2), (-6, 0)]));
        // singular matrix
        let det = determinant(vec![vec![c(1), c(2)], vec![c(2), c(4)]]);
        assert!(det.is_zero());
        // zero pivot needing a row swap: det [[0,1],[1,0]] = -1
        let det = determinant(vec![vec![c(0), c(1)], vec![c(1), c(0)]]);
        assert_eq!(det, c(-1));
    }

    #[test]
    fn determinant_matches_cofactor_on_3x3() {
        let e = |c: i64, d: i64| poly(&[(c, d)]);
        let m = vec![
            vec![e(1, 0), e(2, 1), e(0, 0)],
            vec![e(-1, 1), e(1, 0), e(3, 0)],
            vec![e(2, 0), e(0, 0), e(1, 2)],
        ];
        // cofactor expansion by hand:
        // det = 1*(1*t^2 - 3*0) - 2t*(-t*t^2 - 3*2) + 0
        //     = t^2 + 2t^4 + 12t
        let det = determinant(m);
        assert_eq!(det, poly(&[(1, 2), (2, 4), (12, 1)]));
    }
}
