use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;
use super::series::RationalSeriesForm;
use crate::error::{Error, Result};

/// Certified enclosure `lower ≤ growth ≤ upper` of an exponential growth
/// rate, with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRate {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl GrowthRate {
    pub fn estimate(&self) -> f64 {
        ((&self.lower + &self.upper) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        match BigRational::from_float(x) {
            Some(x) => self.lower <= x && x <= self.upper,
            None => false,
        }
    }
}

impl fmt::Display for GrowthRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "growth = {:.6} in [{:.9}, {:.9}]",
            self.estimate(),
            self.lower.to_f64().unwrap_or(f64::NAN),
            self.upper.to_f64().unwrap_or(f64::NAN)
        )
    }
}

type RatPoly = Vec<BigRational>;

fn to_rat(p: &IntPolynomial) -> RatPoly {
    p.coeffs()
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect()
}

fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let q = r.last().unwrap() / b.last().unwrap();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn eval(p: &RatPoly, x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Sturm sequence of a square-free polynomial.
fn sturm_chain(p: &IntPolynomial) -> Vec<RatPoly> {
    let mut chain = vec![to_rat(p), to_rat(&p.derivative())];
    while chain.last().is_some_and(|q| q.len() > 1) {
        let n = chain.len();
        let r: RatPoly = rem(&chain[n - 2], &chain[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_changes(chain: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Growth rate `1/ρ` where ρ is the smallest positive root of the reduced
/// denominator, enclosed to relative width `tol` by Sturm bisection.
pub fn growth_rate(series: &RationalSeriesForm, tol: f64) -> Result<GrowthRate> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance {tol}")));
    }
    let q = &series.q;
    if q.degree().unwrap_or(0) == 0 {
        return Err(Error::NoPositiveRoot);
    }
    let square_free = q.div_exact(&q.gcd(&q.derivative())).expect("gcd divides");
    let chain = sturm_chain(&square_free);
    let roots_in =
        |lo: &BigRational, hi: &BigRational| sign_changes(&chain, lo) - sign_changes(&chain, hi);

    // Cauchy bound on root moduli
    let lead = BigRational::from_integer(square_free.leading().abs());
    let bound = square_free
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.abs()) / &lead)
        .max()
        .unwrap()
        + BigRational::from_integer(1.into());
    let zero = BigRational::zero();
    if roots_in(&zero, &bound) == 0 {
        return Err(Error::NoPositiveRoot);
    }

    let tol = BigRational::from_float(tol).expect("finite tolerance");
    let two = BigRational::from_integer(BigInt::from(2));
    let (mut lo, mut hi) = (zero.clone(), bound);
    // invariant: no root in (0, lo], the smallest one lies in (lo, hi]
    loop {
        if lo > zero && (&hi - &lo) / (&lo * &hi) <= tol {
            break;
        }
        let mid = (&lo + &hi) / &two;
        if roots_in(&zero, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(GrowthRate {
        lower: hi.recip(),
        upper: lo.recip(),
    })
}
