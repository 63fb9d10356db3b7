//! Exact univariate integer polynomials: pseudo-division, gcd, square-free
//! factorization, Sturm chains and real-root isolation on dyadic intervals.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub(crate) fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub(crate) fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, keeping the sign of every coefficient.
    fn primitive(self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self;
        }
        Self(self.0.into_iter().map(|c| c / &g).collect())
    }

    /// Primitive part with a positive leading coefficient.
    fn normalized(self) -> Self {
        let p = self.primitive();
        if !p.is_zero() && p.lead().is_negative() {
            Self(p.0.into_iter().map(|c| -c).collect())
        } else {
            p
        }
    }

    /// Pseudo-remainder `lc(b)^s * a mod b`; returns it with the step count `s`.
    fn pseudo_rem(&self, b: &Self) -> (Self, usize) {
        let mut r = self.0.clone();
        let db = b.degree();
        let lb = b.lead();
        let mut steps = 0;
        while r.len() > db && !r.is_empty() {
            let lr = r.last().cloned().expect("nonempty");
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (i, bc) in b.0.iter().enumerate() {
                r[shift + i] -= &lr * bc;
            }
            steps += 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self(r), steps)
    }

    /// Exact quotient `self / b`, assuming `b` divides `self` over the
    /// rationals and `b` is primitive (so the quotient is integral).
    pub(crate) fn exact_div(&self, b: &Self) -> Self {
        let db = b.degree();
        if self.is_zero() {
            return Self(Vec::new());
        }
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); self.degree() - db + 1];
        let lb = b.lead();
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let (coef, rem) = r.last().expect("nonempty").div_rem(lb);
            debug_assert!(rem.is_zero(), "inexact polynomial division");
            for (i, bc) in b.0.iter().enumerate() {
                r[shift + i] -= &coef * bc;
            }
            q[shift] = coef;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        debug_assert!(r.is_empty(), "polynomial division left a remainder");
        Self::new(q)
    }

    /// Greatest common divisor by the primitive remainder sequence, normalized.
    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone().normalized(), other.clone().normalized())
        } else {
            (other.clone().normalized(), self.clone().normalized())
        };
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.normalized();
        }
        a.normalized()
    }

    /// Sign of `p(num / 2^exp)`.
    pub(crate) fn sign_at(&self, x: &Dyadic) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        // p(x) 2^(exp deg) = sum a_i num^i 2^(exp (deg - i)), in Horner form.
        let deg = self.degree();
        let mut acc = self.0[deg].clone();
        for i in (0..deg).rev() {
            acc *= &x.num;
            acc += &self.0[i] << (x.exp as usize * (deg - i));
        }
        match acc.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// Yun's square-free factorization: returns `(f_i, i)` with
/// `p = c * prod f_i^i`, every `f_i` square-free, primitive and nonconstant.
pub(crate) fn square_free_factors(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let f = p.clone().normalized();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = IntPoly::new(sub(&c.0, &b.derivative().0));
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let b_next = b.exact_div(&a);
        let c_next = d.exact_div(&a);
        if a.degree() > 0 {
            out.push((a, i));
        }
        d = IntPoly::new(sub(&c_next.0, &b_next.derivative().0));
        b = b_next;
        i += 1;
    }
    out
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect()
}

/// A dyadic rational `num / 2^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Dyadic {
    pub(crate) num: BigInt,
    pub(crate) exp: u32,
}

impl Dyadic {
    pub(crate) fn integer(v: u64) -> Self {
        Self {
            num: BigInt::from(v),
            exp: 0,
        }
    }

    pub(crate) fn midpoint(a: &Self, b: &Self) -> Self {
        let exp = a.exp.max(b.exp);
        let an = &a.num << (exp - a.exp) as usize;
        let bn = &b.num << (exp - b.exp) as usize;
        Self {
            num: an + bn,
            exp: exp + 1,
        }
    }

    /// Nearest `f64`; the conversion is correctly rounded up to one ulp.
    pub(crate) fn to_f64(&self) -> f64 {
        let bits = self.num.bits();
        // Keep 62 significant bits so the mantissa fits an i64.
        let drop = bits.saturating_sub(62) as u32;
        let top = (&self.num >> drop as usize).to_i64().unwrap_or(0) as f64;
        libm::ldexp(top, drop as i32 - self.exp as i32)
    }

    /// `b - a` as a float.
    pub(crate) fn width(a: &Self, b: &Self) -> f64 {
        let exp = a.exp.max(b.exp);
        let an = &a.num << (exp - a.exp) as usize;
        let bn = &b.num << (exp - b.exp) as usize;
        Self { num: bn - an, exp }.to_f64()
    }
}

/// Sturm sequence of a square-free polynomial.
pub(crate) struct SturmChain(Vec<IntPoly>);

impl SturmChain {
    pub(crate) fn new(f: &IntPoly) -> Self {
        let mut chain = vec![f.clone(), f.derivative().primitive()];
        loop {
            let len = chain.len();
            let (prev, last) = (&chain[len - 2], &chain[len - 1]);
            if last.is_zero() {
                chain.pop();
                break;
            }
            let (mut r, steps) = prev.pseudo_rem(last);
            // Keep the multiplier lc^steps positive so -r is a positive multiple of -rem.
            if last.lead().is_negative() && steps % 2 == 1 {
                r = IntPoly(r.0.into_iter().map(|c| -c).collect());
            }
            let next = IntPoly(r.0.into_iter().map(|c| -c).collect()).primitive();
            if next.is_zero() {
                break;
            }
            chain.push(next);
        }
        Self(chain)
    }

    /// Sign variations at `x`, zeros skipped.
    pub(crate) fn variations(&self, x: &Dyadic) -> usize {
        let mut count = 0;
        let mut prev = Ordering::Equal;
        for p in &self.0 {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if prev != Ordering::Equal && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }
}

/// An isolating interval `(lo, hi]` containing exactly one root, or an
/// exact dyadic root.
#[derive(Debug, Clone)]
pub(crate) enum RootBracket {
    Exact(Dyadic),
    Interval { lo: Dyadic, hi: Dyadic },
}

impl RootBracket {
    /// Float bounds `(lo, hi)` that enclose the root.
    pub(crate) fn bounds(&self) -> (f64, f64) {
        match self {
            RootBracket::Exact(x) => {
                let v = x.to_f64();
                (v, v)
            }
            RootBracket::Interval { lo, hi } => (lo.to_f64(), hi.to_f64()),
        }
    }
}

/// Isolates the roots of square-free `f` in `(0, bound]` by Sturm counting,
/// then refines each by sign bisection until `accept(lo, width)` holds.
pub(crate) fn isolate_roots(
    f: &IntPoly,
    bound: Dyadic,
    accept: impl Fn(f64, f64) -> bool,
) -> Vec<RootBracket> {
    let chain = SturmChain::new(f);
    let mut pending = vec![(Dyadic::integer(0), bound)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        let count = chain
            .variations(&lo)
            .saturating_sub(chain.variations(&hi));
        match count {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = Dyadic::midpoint(&lo, &hi);
                pending.push((mid.clone(), hi));
                pending.push((lo, mid));
            }
        }
    }
    isolated
        .into_iter()
        .map(|(lo, hi)| refine(f, lo, hi, &accept))
        .collect()
}

/// Bisection on the sign of `f`, referenced to the upper endpoint (the lower
/// one may itself be a neighbouring root).
fn refine(f: &IntPoly, mut lo: Dyadic, mut hi: Dyadic, accept: &impl Fn(f64, f64) -> bool) -> RootBracket {
    let s_hi = f.sign_at(&hi);
    if s_hi == Ordering::Equal {
        return RootBracket::Exact(hi);
    }
    loop {
        if accept(lo.to_f64(), Dyadic::width(&lo, &hi)) {
            return RootBracket::Interval { lo, hi };
        }
        let mid = Dyadic::midpoint(&lo, &hi);
        match f.sign_at(&mid) {
            Ordering::Equal => return RootBracket::Exact(mid),
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_and_exact_division() {
        // (y - 1)^2 (y - 3) and (y - 1)(y + 2)
        let a = poly(&[-3, 7, -5, 1]);
        let b = poly(&[-2, 1, 1]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
        assert_eq!(a.exact_div(&poly(&[-1, 1])), poly(&[3, -4, 1]));
    }

    #[test]
    fn yun_factors_multiplicities() {
        // (y - 1)^3 (y - 2) (y - 5)^2
        let f1 = poly(&[-1, 1]);
        let mut p = poly(&[1]);
        for q in [&f1, &f1, &f1, &poly(&[-2, 1]), &poly(&[-5, 1]), &poly(&[-5, 1])] {
            p = mul(&p, q);
        }
        let factors = square_free_factors(&p);
        assert_eq!(factors.len(), 3);
        assert_eq!(factors[0], (poly(&[-2, 1]), 1));
        assert_eq!(factors[1], (poly(&[-5, 1]), 2));
        assert_eq!(factors[2], (poly(&[-1, 1]), 3));
    }

    fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPoly::new(out)
    }

    #[test]
    fn sturm_counts_and_isolation() {
        // y^2 - 3y + 1 has roots (3 -+ sqrt 5) / 2.
        let f = poly(&[1, -3, 1]);
        let chain = SturmChain::new(&f);
        assert_eq!(chain.variations(&Dyadic::integer(0)) - chain.variations(&Dyadic::integer(4)), 2);
        let roots = isolate_roots(&f, Dyadic::integer(4), |_, w| w < 1e-13);
        let s5 = libm::sqrt(5.0);
        let expect = [(3.0 - s5) / 2.0, (3.0 + s5) / 2.0];
        assert_eq!(roots.len(), 2);
        for (r, e) in roots.iter().zip(expect) {
            let (a, b) = r.bounds();
            assert!(a - 1e-15 <= e && e <= b + 1e-15, "{a} {b} {e}");
        }
    }

    #[test]
    fn exact_dyadic_roots_are_found() {
        // (y - 1)(y - 2)(y - 3): midpoints of (0, 4] hit every root.
        let f = poly(&[-6, 11, -6, 1]);
        let roots = isolate_roots(&f, Dyadic::integer(4), |_, w| w < 1e-12);
        let mut vals: Vec<f64> = roots.iter().map(|r| r.bounds().1).collect();
        vals.sort_by(f64::total_cmp);
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn dyadic_conversions() {
        let x = Dyadic { num: BigInt::from(3), exp: 2 };
        assert_eq!(x.to_f64(), 0.75);
        let m = Dyadic::midpoint(&Dyadic::integer(1), &x);
        assert_eq!(m.to_f64(), 0.875);
        assert_eq!(Dyadic::width(&x, &Dyadic::integer(1)), 0.25);
        let big = Dyadic { num: BigInt::one() << 200usize, exp: 190 };
        assert_eq!(big.to_f64(), 1024.0);
    }
}
