//! Binomial channel-fidelity approximation for depolarizing noise.
//!
//! A code of length N and distance d corrects every error of weight at most
//! t = ⌊(d−1)/2⌋, so with per-qudit error rate p
//!
//! ```text
//! P = Σ_{i=0}^{t} C(N,i) p^i (1−p)^{N−i}.
//! ```
//!
//! A sender/receiver pair succeeds when both halves decode:
//! P(D) = P(n, d, p_a) · P(m, d_b, p_b) with p_b = λ·p_a.
//!
//! Exact rationals are the reference; `f64` versions exist for sweeps.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

fn check_code(n: usize, d: usize) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::Range(format!("distance {d} outside 1..={n}")));
    }
    Ok(())
}

fn check_rate(p: &Rational) -> Result<()> {
    if p.is_negative() || p > &Rational::one() {
        return Err(Error::Range(format!("rate {} outside [0, 1]", render(p, 15))));
    }
    Ok(())
}

fn correctable(d: usize) -> usize {
    (d - 1) / 2
}

pub fn approx_fidelity_exact(n: usize, d: usize, p: &Rational) -> Result<Rational> {
    check_code(n, d)?;
    check_rate(p)?;
    let q = Rational::one() - p;
    let mut binom = BigInt::one();
    let mut total = Rational::zero();
    for i in 0..=correctable(d) {
        let term = Rational::from_integer(binom.clone()) * num_traits::pow(p.clone(), i) * num_traits::pow(q.clone(), n - i);
        total += term;
        binom = binom * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(total)
}

pub fn approx_fidelity(n: usize, d: usize, p: f64) -> Result<f64> {
    check_code(n, d)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Range(format!("rate {p} outside [0, 1]")));
    }
    let mut binom = 1.0f64;
    let mut total = 0.0;
    for i in 0..=correctable(d) {
        total += binom * p.powi(i as i32) * (1.0 - p).powi((n - i) as i32);
        binom = binom * (n - i) as f64 / (i + 1) as f64;
    }
    Ok(total)
}

/// Depolarizing rates on the sender's channel and on the receiver's ebits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelModel {
    pub p_a: Rational,
    pub p_b: Rational,
}

impl ChannelModel {
    pub fn new(p_a: Rational, p_b: Rational) -> Result<Self> {
        check_rate(&p_a)?;
        check_rate(&p_b)?;
        Ok(ChannelModel { p_a, p_b })
    }

    pub fn from_lambda(p_a: &Rational, lambda: &Rational) -> Result<Self> {
        if lambda.is_negative() {
            return Err(Error::Range("negative degradation ratio".into()));
        }
        Self::new(p_a.clone(), p_a * lambda)
    }

    /// p_b / p_a, undefined when p_a = 0.
    pub fn lambda(&self) -> Option<Rational> {
        (!self.p_a.is_zero()).then(|| &self.p_b / &self.p_a)
    }

    /// λ > 1, allowed for exploration.
    pub fn is_flagged(&self) -> bool {
        self.lambda().is_some_and(|l| l > Rational::one())
    }
}

/// Length and distance of a code for fidelity purposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeShape {
    pub n: usize,
    pub d: usize,
}

impl CodeShape {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        check_code(n, d)?;
        Ok(CodeShape { n, d })
    }
}

impl fmt::Display for CodeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.n, self.d)
    }
}

impl FromStr for CodeShape {
    type Err = Error;

    /// `n,d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Range(format!("expected `n,d`, found `{s}`"));
        let (n, d) = s.split_once(',').ok_or_else(bad)?;
        let n = n.trim().parse().map_err(|_| bad())?;
        let d = d.trim().parse().map_err(|_| bad())?;
        CodeShape::new(n, d)
    }
}

/// Sender EA code and the receiver code protecting its ebits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairShape {
    pub ea: CodeShape,
    pub b: CodeShape,
}

pub fn combined_fidelity_exact(pair: &PairShape, ch: &ChannelModel) -> Result<Rational> {
    Ok(approx_fidelity_exact(pair.ea.n, pair.ea.d, &ch.p_a)? * approx_fidelity_exact(pair.b.n, pair.b.d, &ch.p_b)?)
}

pub fn combined_fidelity(pair: &PairShape, p_a: f64, p_b: f64) -> Result<f64> {
    Ok(approx_fidelity(pair.ea.n, pair.ea.d, p_a)? * approx_fidelity(pair.b.n, pair.b.d, p_b)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    DBetter,
    CBetter,
    Tie,
}

/// P(D) − P(C) at the given channel.
pub fn difference(c: &CodeShape, pair: &PairShape, p_a: &Rational, lambda: &Rational) -> Result<Rational> {
    let ch = ChannelModel::from_lambda(p_a, lambda)?;
    Ok(combined_fidelity_exact(pair, &ch)? - approx_fidelity_exact(c.n, c.d, p_a)?)
}

pub fn compare(c: &CodeShape, pair: &PairShape, p_a: &Rational, lambda: &Rational) -> Result<Verdict> {
    Ok(match difference(c, pair, p_a, lambda)?.cmp(&Rational::zero()) {
        Ordering::Greater => Verdict::DBetter,
        Ordering::Less => Verdict::CBetter,
        Ordering::Equal => Verdict::Tie,
    })
}

pub const LAMBDA_TOL: f64 = 1e-9;

/// λ ∈ [0,1] where P(D) − P(C) changes sign, located by exact bisection to
/// within [`LAMBDA_TOL`]. `None` when the sign is the same at both ends.
pub fn crossover_lambda(c: &CodeShape, pair: &PairShape, p_a: &Rational) -> Result<Option<Rational>> {
    if !p_a.is_positive() || p_a >= &Rational::one() {
        return Err(Error::Range("crossover needs p_a in (0, 1)".into()));
    }
    let sign = |l: &Rational| -> Result<Ordering> { Ok(difference(c, pair, p_a, l)?.cmp(&Rational::zero())) };
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    let (s_lo, s_hi) = (sign(&lo)?, sign(&hi)?);
    if s_lo == Ordering::Equal {
        return Ok(Some(lo));
    }
    if s_hi == Ordering::Equal {
        return Ok(Some(hi));
    }
    if s_lo == s_hi {
        return Ok(None);
    }
    let tol = Rational::new(BigInt::one(), BigInt::from(1u64 << 31));
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        match sign(&mid)? {
            Ordering::Equal => return Ok(Some(mid)),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(Some((lo + hi) / Rational::from_integer(BigInt::from(2))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    pub p_a: Rational,
    pub p_c: Rational,
    pub p_d: Rational,
}

impl CurvePoint {
    pub fn diff(&self) -> Rational {
        &self.p_d - &self.p_c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FidelityCurve {
    pub c: CodeShape,
    pub pair: PairShape,
    pub lambda: Rational,
    pub points: Vec<CurvePoint>,
}

impl FidelityCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p_a,P_C,P_D,diff\n");
        for pt in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                render(&pt.p_a, 15),
                render(&pt.p_c, 15),
                render(&pt.p_d, 15),
                render(&pt.diff(), 15)
            ));
        }
        out
    }
}

pub fn sweep(c: &CodeShape, pair: &PairShape, lambda: &Rational, grid: &[Rational]) -> Result<FidelityCurve> {
    if grid.is_empty() {
        return Err(Error::Range("empty grid".into()));
    }
    for w in grid.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Range("grid must be strictly increasing".into()));
        }
    }
    if !grid[0].is_positive() || grid[grid.len() - 1] >= Rational::one() {
        return Err(Error::Range("grid points must lie in (0, 1)".into()));
    }
    let points = grid
        .iter()
        .map(|p| {
            let ch = ChannelModel::from_lambda(p, lambda)?;
            Ok(CurvePoint {
                p_a: p.clone(),
                p_c: approx_fidelity_exact(c.n, c.d, p)?,
                p_d: combined_fidelity_exact(pair, &ch)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(FidelityCurve { c: *c, pair: *pair, lambda: lambda.clone(), points })
}

/// Exact value of a decimal (`0.015`, `-2`, `1e-3`, `2.5E2`) or a fraction (`1/3`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Range(format!("not a number: `{s}`"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let value: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(value * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(value, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `start:stop:count`, count ≥ 1 evenly spaced points including both ends.
pub fn parse_grid(s: &str) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(Error::Range(format!("grid must be start:stop:count, found `{s}`")));
    };
    let start = parse_rational(start)?;
    let stop = parse_rational(stop)?;
    let count: usize = count.trim().parse().map_err(|_| Error::Range(format!("bad grid count `{count}`")))?;
    if count == 0 {
        return Err(Error::Range("grid count must be positive".into()));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (&stop - &start) / Rational::from_integer(BigInt::from(count - 1));
    Ok((0..count).map(|i| &start + &step * Rational::from_integer(BigInt::from(i))).collect())
}

/// Decimal rendering with at most `sig` significant digits (rounded half
/// away from zero), trailing zeros removed.
pub fn render(x: &Rational, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let ten = Rational::from_integer(BigInt::from(10));
    // exponent e with 10^e ≤ a < 10^{e+1}
    let mut e = a.to_f64().map(|f| f.log10().floor() as i64).unwrap_or(0);
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            num_traits::pow(ten.clone(), k as usize)
        } else {
            Rational::one() / num_traits::pow(ten.clone(), (-k) as usize)
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let scaled = &a * pow10(sig as i64 - 1 - e);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut digits = (scaled + half).floor().to_integer();
    if digits == num_traits::pow(BigInt::from(10), sig) {
        digits /= 10;
        e += 1;
    }
    let ds = digits.to_string();
    let body = if e >= sig as i64 - 1 {
        format!("{ds}{}", "0".repeat((e - (sig as i64 - 1)) as usize))
    } else if e >= 0 {
        let (i, f) = ds.split_at(e as usize + 1);
        format!("{i}.{f}")
    } else {
        format!("0.{}{ds}", "0".repeat((-e - 1) as usize))
    };
    let body = if body.contains('.') { body.trim_end_matches('0').trim_end_matches('.').to_string() } else { body };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn endpoints() {
        assert_eq!(approx_fidelity_exact(17, 7, &r("0")).unwrap(), Rational::one());
        let p = r("0.03");
        let one_minus = Rational::one() - &p;
        assert_eq!(approx_fidelity_exact(9, 1, &p).unwrap(), num_traits::pow(one_minus, 9));
        assert!(approx_fidelity_exact(3, 4, &p).is_err());
        assert!(approx_fidelity_exact(3, 1, &r("1.5")).is_err());
        assert_eq!(approx_fidelity(5, 5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn float_path_matches_exact() {
        for (n, d) in [(17, 7), (64, 21), (11, 7), (6, 3)] {
            for p in ["0.001", "0.01", "0.05", "0.1", "0.37"] {
                let exact = approx_fidelity_exact(n, d, &r(p)).unwrap().to_f64().unwrap();
                let fl = approx_fidelity(n, d, p.parse().unwrap()).unwrap();
                assert!(((exact - fl) / exact).abs() <= 1e-12, "{n},{d},{p}");
            }
        }
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(r("0.001"), Rational::new(1.into(), 1000.into()));
        assert_eq!(r("1e-3"), r("0.001"));
        assert_eq!(r("-2.5E2"), Rational::from_integer((-250).into()));
        assert_eq!(r("1/3"), Rational::new(1.into(), 3.into()));
        assert_eq!(r(".5"), Rational::new(1.into(), 2.into()));
        for bad in ["", "x", "1/0", "1.2.3", "e5", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(render(&r("0.001"), 15), "0.001");
        assert_eq!(render(&r("1/3"), 15), "0.333333333333333");
        assert_eq!(render(&r("2/3"), 15), "0.666666666666667");
        assert_eq!(render(&r("-1/3000000"), 15), "-0.000000333333333333333");
        assert_eq!(render(&r("123456789012345678"), 15), "123456789012346000");
        assert_eq!(render(&r("0.9999999999999999"), 15), "1");
        assert_eq!(render(&r("12.5"), 15), "12.5");
    }

    #[test]
    fn grid() {
        let g = parse_grid("0.001:0.05:50").unwrap();
        assert_eq!(g.len(), 50);
        assert_eq!(g[1], r("0.002"));
        assert_eq!(g[49], r("0.05"));
        assert_eq!(parse_grid("0.2:0.9:1").unwrap(), vec![r("0.2")]);
        assert!(parse_grid("0.1:0.2").is_err());
    }

    #[test]
    fn comparison_and_crossover() {
        let c = CodeShape::new(17, 7).unwrap();
        let pair = PairShape { ea: CodeShape::new(11, 7).unwrap(), b: CodeShape::new(6, 3).unwrap() };
        assert_eq!(compare(&c, &pair, &r("0"), &r("0.5")).unwrap(), Verdict::Tie);
        assert_eq!(compare(&c, &pair, &r("0.01"), &r("0.01")).unwrap(), Verdict::DBetter);
        // D is better with an ideal receiver; a crossover exists iff it loses at λ = 1
        let p = r("0.05");
        let at_one = compare(&c, &pair, &p, &Rational::one()).unwrap();
        let x = crossover_lambda(&c, &pair, &p).unwrap();
        assert_eq!(x.is_some(), at_one == Verdict::CBetter);
        if let Some(l) = x {
            let eps = r("1e-6");
            assert_eq!(compare(&c, &pair, &p, &(&l - &eps)).unwrap(), Verdict::DBetter);
            assert_eq!(compare(&c, &pair, &p, &(&l + &eps)).unwrap(), Verdict::CBetter);
        }
    }

    #[test]
    fn crossover_none_when_always_better() {
        // C corrects nothing, so D wins even with an equally noisy receiver
        let c = CodeShape::new(17, 1).unwrap();
        let pair = PairShape { ea: CodeShape::new(11, 7).unwrap(), b: CodeShape::new(6, 3).unwrap() };
        let p = r("0.01");
        assert_eq!(compare(&c, &pair, &p, &Rational::one()).unwrap(), Verdict::DBetter);
        assert_eq!(crossover_lambda(&c, &pair, &p).unwrap(), None);
    }

    #[test]
    fn sweep_csv() {
        let c = CodeShape::new(17, 7).unwrap();
        let pair = PairShape { ea: CodeShape::new(11, 7).unwrap(), b: CodeShape::new(6, 3).unwrap() };
        let curve = sweep(&c, &pair, &r("0.01"), &[r("0.01")]).unwrap();
        let csv = curve.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "p_a,P_C,P_D,diff");
        assert!(lines[1].starts_with("0.01,"));
        assert!(sweep(&c, &pair, &r("0.01"), &[r("0.02"), r("0.01")]).is_err());
    }
}
