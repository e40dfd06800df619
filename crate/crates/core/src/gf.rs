//! Table-driven arithmetic in GF(p^e) and in quadratic extensions GF(q²)/GF(q).
//!
//! Elements are integer indices: the polynomial coefficients over F_p written
//! as base-p digits, least-significant coefficient first. A quadratic extension
//! GF(q)[y]/(y² + c1·y + c0) encodes `a0 + a1·y` as `a0 + q·a1`, so the base
//! field occupies exactly the indices `0..q` and every field of a given order
//! has a single encoding throughout the crate.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Element index. Orders are capped at [`MAX_ORDER`], so a byte suffices.
pub type Elem = u8;

pub const MAX_ORDER: usize = 256;

/// One row of the shipped modulus table.
#[derive(Debug, Clone, Copy)]
pub struct ModulusEntry {
    pub q: usize,
    pub p: u32,
    /// Modulus of GF(q) over its immediate subfield. For q = p it is `x`.
    /// For q = 4 and 9 GF(q) is itself the quadratic extension of GF(p) and
    /// the modulus is `y² + y + c0` over F_p.
    pub base_modulus: &'static [u32],
    /// `c0` of the quadratic modulus `y² + y + c0` defining GF(q²) over GF(q),
    /// as an element index of GF(q).
    pub quadratic_c0: Elem,
}

pub const MODULUS_TABLE: &[ModulusEntry] = &[
    ModulusEntry { q: 2, p: 2, base_modulus: &[0, 1], quadratic_c0: 1 },
    ModulusEntry { q: 3, p: 3, base_modulus: &[0, 1], quadratic_c0: 2 },
    ModulusEntry { q: 4, p: 2, base_modulus: &[1, 1, 1], quadratic_c0: 2 },
    ModulusEntry { q: 5, p: 5, base_modulus: &[0, 1], quadratic_c0: 1 },
    ModulusEntry { q: 7, p: 7, base_modulus: &[0, 1], quadratic_c0: 3 },
    ModulusEntry { q: 8, p: 2, base_modulus: &[1, 1, 0, 1], quadratic_c0: 1 },
    ModulusEntry { q: 9, p: 3, base_modulus: &[2, 1, 1], quadratic_c0: 4 },
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Construction {
    /// F_p[x]/(modulus), modulus monic over F_p.
    Polynomial { modulus: Vec<u32> },
    /// base[y]/(y² + c1·y + c0).
    Quadratic { base: FieldSpec, c0: Elem, c1: Elem },
}

struct QuadInfo {
    base: FieldSpec,
    beta: Elem,
    beta_q: Elem,
    conj: Vec<Elem>,
    /// β² − β^{2q}
    normalizer: Elem,
}

struct Inner {
    p: u32,
    degree: u32,
    order: usize,
    construction: Construction,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    frob: Vec<Elem>,
    quad: Option<QuadInfo>,
    prime: OnceLock<FieldSpec>,
}

/// An immutable finite field description with precomputed tables.
/// Cloning is cheap.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.degree == other.0.degree
                && self.0.construction == other.0.construction)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.order)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.order)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

// ---- polynomial helpers over F_p (coefficient vectors, low degree first) ----

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - f * mc % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("nonzero residue")
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    for deg in 1..=e / 2 {
        // every monic polynomial of this degree
        let count = (p as usize).pow(deg as u32);
        for idx in 0..count {
            let mut d = Vec::with_capacity(deg + 1);
            let mut t = idx;
            for _ in 0..deg {
                d.push((t % p as usize) as u32);
                t /= p as usize;
            }
            d.push(1);
            if poly_trim(poly_rem(modulus, &d, p)).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut x: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((x % p as usize) as u32);
        x /= p as usize;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

impl FieldSpec {
    /// GF(p^e) = F_p[x]/(modulus). `modulus` lists coefficients low degree
    /// first and must be monic and irreducible; `[0, 1]` gives the prime field.
    pub fn polynomial(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient not reduced mod p".into()));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let e = (modulus.len() - 1) as u32;
        let order = (p as usize)
            .checked_pow(e)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("order {p}^{e} exceeds {MAX_ORDER}")))?;
        let el = e as usize;
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for a in 0..order {
            let da = digits(a, p, el);
            for b in 0..order {
                let db = digits(b, p, el);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * order + b] = undigits(&s, p) as Elem;
                let mut prod = vec![0u32; 2 * el];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, modulus, p);
                r.resize(el, 0);
                mul[a * order + b] = undigits(&r, p) as Elem;
            }
        }
        Self::from_tables(p, e, order, Construction::Polynomial { modulus: modulus.to_vec() }, add, mul, None)
    }

    /// base[y]/(y² + c1·y + c0), with β the residue class of y.
    pub fn quadratic(base: &FieldSpec, c0: Elem, c1: Elem) -> Result<Self> {
        let q = base.order();
        if c0 as usize >= q || c1 as usize >= q {
            return Err(Error::InvalidField("quadratic coefficients outside base field".into()));
        }
        let order = q * q;
        if order > MAX_ORDER {
            return Err(Error::InvalidField(format!("order {order} exceeds {MAX_ORDER}")));
        }
        let has_root = (0..q as Elem).any(|y| {
            let v = base.add(base.add(base.mul(y, y), base.mul(c1, y)), c0);
            v == 0
        });
        if has_root {
            return Err(Error::InvalidField(format!(
                "y^2 + {c1}y + {c0} is reducible over {base}"
            )));
        }
        let split = |x: usize| ((x % q) as Elem, (x / q) as Elem);
        let join = |a0: Elem, a1: Elem| (a0 as usize + q * a1 as usize) as Elem;
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for a in 0..order {
            let (a0, a1) = split(a);
            for b in 0..order {
                let (b0, b1) = split(b);
                add[a * order + b] = join(base.add(a0, b0), base.add(a1, b1));
                // (a0 + a1 y)(b0 + b1 y), y² = −c1·y − c0
                let t = base.mul(a1, b1);
                let r0 = base.sub(base.mul(a0, b0), base.mul(t, c0));
                let r1 = base.sub(base.add(base.mul(a0, b1), base.mul(a1, b0)), base.mul(t, c1));
                mul[a * order + b] = join(r0, r1);
            }
        }
        let construction = Construction::Quadratic { base: base.clone(), c0, c1 };
        let f = Self::from_tables(base.characteristic(), 2 * base.degree(), order, construction, add, mul, None)?;

        let beta = q as Elem;
        let conj: Vec<Elem> = (0..order).map(|x| f.pow(x as Elem, q as u64)).collect();
        let beta_q = conj[beta as usize];
        // {β, β^q} is a basis iff β^q has a nonzero constant coordinate.
        if split(beta_q as usize).0 == 0 {
            return Err(Error::InvalidField(
                "beta and beta^q are dependent over the base field".into(),
            ));
        }
        let normalizer = f.sub(f.mul(beta, beta), f.mul(beta_q, beta_q));
        if normalizer == 0 {
            return Err(Error::InvalidField("beta^2 - beta^(2q) vanishes".into()));
        }
        let mut inner = Arc::try_unwrap(f.0).ok().expect("fresh field");
        inner.quad = Some(QuadInfo { base: base.clone(), beta, beta_q, conj, normalizer });
        Ok(FieldSpec(Arc::new(inner)))
    }

    fn from_tables(
        p: u32,
        degree: u32,
        order: usize,
        construction: Construction,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        quad: Option<QuadInfo>,
    ) -> Result<Self> {
        let mut neg = vec![0; order];
        let mut inv = vec![0; order];
        for a in 0..order {
            neg[a] = (0..order).find(|&b| add[a * order + b] == 0).expect("additive group") as Elem;
            if a != 0 {
                inv[a] = (1..order)
                    .find(|&b| mul[a * order + b] == 1)
                    .ok_or_else(|| Error::InvalidField("zero divisor in multiplication table".into()))?
                    as Elem;
            }
        }
        let frob = (0..order)
            .map(|x| (1..p).fold(x as Elem, |acc, _| mul[acc as usize * order + x]))
            .collect();
        Ok(FieldSpec(Arc::new(Inner {
            p,
            degree,
            order,
            construction,
            add,
            mul,
            neg,
            inv,
            frob,
            quad,
            prime: OnceLock::new(),
        })))
    }

    /// The shipped field of the given order (2, 3, 4, 5, 7, 8, 9, 16, 25, 49, 64, 81).
    pub fn of_order(order: usize) -> Result<Self> {
        static CACHE: [OnceLock<FieldSpec>; 12] = [const { OnceLock::new() }; 12];
        const ORDERS: [usize; 12] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 49, 64, 81];
        let slot = ORDERS
            .iter()
            .position(|&o| o == order)
            .ok_or_else(|| Error::InvalidField(format!("no shipped field of order {order}")))?;
        if let Some(f) = CACHE[slot].get() {
            return Ok(f.clone());
        }
        let built = Self::build_shipped(order)?;
        Ok(CACHE[slot].get_or_init(|| built).clone())
    }

    fn build_shipped(order: usize) -> Result<Self> {
        if let Some(entry) = MODULUS_TABLE.iter().find(|e| e.q == order) {
            if entry.base_modulus.len() == 3 && order == (entry.p * entry.p) as usize {
                let prime = FieldSpec::of_order(entry.p as usize)?;
                return FieldSpec::quadratic(
                    &prime,
                    entry.base_modulus[0] as Elem,
                    entry.base_modulus[1] as Elem,
                );
            }
            return FieldSpec::polynomial(entry.p, entry.base_modulus);
        }
        let entry = MODULUS_TABLE
            .iter()
            .find(|e| e.q * e.q == order)
            .ok_or_else(|| Error::InvalidField(format!("no shipped field of order {order}")))?;
        FieldSpec::quadratic(&FieldSpec::of_order(entry.q)?, entry.quadratic_c0, 1)
    }

    /// GF(q) from the shipped table.
    pub fn gf(q: usize) -> Result<Self> {
        if !MODULUS_TABLE.iter().any(|e| e.q == q) {
            return Err(Error::InvalidField(format!("no shipped base field GF({q})")));
        }
        Self::of_order(q)
    }

    /// GF(q²) as the shipped quadratic extension of GF(q).
    pub fn gf_sq(q: usize) -> Result<Self> {
        Self::gf(q)?;
        Self::of_order(q * q)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.order + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.0.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.order + b as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0 by convention.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.0.inv[a as usize]
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Absolute trace to F_p: x + x^p + … + x^{p^{degree−1}}.
    pub fn abs_trace(&self, x: Elem) -> Elem {
        let mut acc = 0;
        let mut t = x;
        for _ in 0..self.0.degree {
            acc = self.add(acc, t);
            t = self.0.frob[t as usize];
        }
        debug_assert!((acc as u32) < self.0.p);
        acc
    }

    pub fn is_quadratic_extension(&self) -> bool {
        self.0.quad.is_some()
    }

    fn quad(&self) -> Result<&QuadInfo> {
        self.0
            .quad
            .as_ref()
            .ok_or_else(|| Error::NotQuadraticExtension(self.to_string()))
    }

    /// The subfield GF(q) of a quadratic extension GF(q²).
    pub fn base(&self) -> Result<&FieldSpec> {
        Ok(&self.quad()?.base)
    }

    pub fn beta(&self) -> Result<Elem> {
        Ok(self.quad()?.beta)
    }

    pub fn beta_q(&self) -> Result<Elem> {
        Ok(self.quad()?.beta_q)
    }

    /// β² − β^{2q}, the normalizer of the alternating form.
    pub fn alternating_normalizer(&self) -> Result<Elem> {
        Ok(self.quad()?.normalizer)
    }

    /// x ↦ x^q.
    pub fn conjugate(&self, x: Elem) -> Result<Elem> {
        Ok(self.quad()?.conj[x as usize])
    }

    /// Unchecked conjugation for hot loops; caller guarantees a quadratic extension.
    #[inline]
    pub(crate) fn conj_fast(&self, x: Elem) -> Elem {
        self.0.quad.as_ref().expect("quadratic extension").conj[x as usize]
    }

    /// x + x^q, an element of GF(q) (index below q).
    pub fn rel_trace(&self, x: Elem) -> Result<Elem> {
        let c = self.conjugate(x)?;
        let t = self.add(x, c);
        debug_assert!((t as usize) < self.base()?.order());
        Ok(t)
    }

    /// The prime subfield F_p as its own spec.
    pub fn prime_subfield(&self) -> FieldSpec {
        if self.0.degree == 1 {
            return self.clone();
        }
        self.0
            .prime
            .get_or_init(|| FieldSpec::polynomial(self.0.p, &[0, 1]).expect("prime field"))
            .clone()
    }

    /// Human-readable construction, e.g. `GF(4) = GF(2)[y]/(y^2 + y + 1)`.
    pub fn describe(&self) -> String {
        match &self.0.construction {
            Construction::Polynomial { modulus } => {
                if modulus.len() == 2 {
                    format!("GF({}) = F_{} (prime field)", self.0.order, self.0.p)
                } else {
                    format!("GF({}) = F_{}[x]/({})", self.0.order, self.0.p, poly_string(modulus, "x"))
                }
            }
            Construction::Quadratic { base, c0, c1 } => {
                let mut s = format!("GF({}) = {}[y]/(y^2", self.0.order, base);
                if *c1 == 1 {
                    s.push_str(" + y");
                } else if *c1 != 0 {
                    s.push_str(&format!(" + [{c1}]y"));
                }
                if *c0 != 0 {
                    s.push_str(&format!(" + [{c0}]"));
                }
                s.push_str("), beta = y");
                s
            }
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.order).map(|x| x as Elem)
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        FieldElement::new(self, value)
    }

    pub fn check(&self, value: u32) -> Result<Elem> {
        if (value as usize) < self.0.order {
            Ok(value as Elem)
        } else {
            Err(Error::ElementOutOfRange { value, order: self.0.order })
        }
    }
}

fn poly_string(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    terms.join(" + ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A field element bound to its field, with checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: FieldSpec,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.spec)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn new(spec: &FieldSpec, value: u32) -> Result<Self> {
        Ok(FieldElement { spec: spec.clone(), value: spec.check(value)? })
    }

    pub fn zero(spec: &FieldSpec) -> Self {
        FieldElement { spec: spec.clone(), value: 0 }
    }

    pub fn one(spec: &FieldSpec) -> Self {
        FieldElement { spec: spec.clone(), value: 1 }
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        let f = &self.spec;
        let value = match op {
            ArithOp::Add => f.add(self.value, other.value),
            ArithOp::Sub => f.sub(self.value, other.value),
            ArithOp::Mul => f.mul(self.value, other.value),
            ArithOp::Div => {
                if other.value == 0 {
                    return Err(Error::DivisionByZero);
                }
                f.div(self.value, other.value)
            }
        };
        Ok(FieldElement { spec: f.clone(), value })
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(other, ArithOp::Div)
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        FieldElement::one(&self.spec).checked_div(self)
    }

    pub fn pow(&self, k: u64) -> FieldElement {
        FieldElement { spec: self.spec.clone(), value: self.spec.pow(self.value, k) }
    }

    pub fn conjugate(&self) -> Result<FieldElement> {
        Ok(FieldElement { spec: self.spec.clone(), value: self.spec.conjugate(self.value)? })
    }

    /// Relative trace GF(q²) → GF(q); the result lives in the base field.
    pub fn rel_trace(&self) -> Result<FieldElement> {
        let t = self.spec.rel_trace(self.value)?;
        Ok(FieldElement { spec: self.spec.base()?.clone(), value: t })
    }

    /// Absolute trace to the prime field.
    pub fn abs_trace(&self) -> FieldElement {
        FieldElement { spec: self.spec.prime_subfield(), value: self.spec.abs_trace(self.value) }
    }

    /// Coefficient vector over F_p, least-significant first.
    pub fn coefficients(&self) -> Vec<u32> {
        digits(self.value as usize, self.spec.characteristic(), self.spec.degree() as usize)
    }

    pub fn from_coefficients(spec: &FieldSpec, coeffs: &[u32]) -> Result<Self> {
        let p = spec.characteristic();
        if coeffs.len() != spec.degree() as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("bad coefficient vector {coeffs:?}")));
        }
        FieldElement::new(spec, undigits(coeffs, p) as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &FieldSpec, v: u32) -> FieldElement {
        f.element(v).unwrap()
    }

    #[test]
    fn gf4_omega_squared() {
        let f = FieldSpec::gf(4).unwrap();
        // ω = index 2 (coefficients (0,1)); ω + 1 = index 3
        let w = el(&f, 2);
        assert_eq!(w.checked_mul(&w).unwrap().value(), 3);
    }

    #[test]
    fn gf3_two_times_two() {
        let f = FieldSpec::gf(3).unwrap();
        assert_eq!(el(&f, 2).checked_mul(&el(&f, 2)).unwrap().value(), 1);
    }

    #[test]
    fn additive_identity() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 49, 64, 81] {
            let f = FieldSpec::of_order(q).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, 0), x);
            }
        }
    }

    #[test]
    fn errors() {
        let f3 = FieldSpec::gf(3).unwrap();
        let f5 = FieldSpec::gf(5).unwrap();
        assert_eq!(el(&f3, 1).checked_add(&el(&f5, 1)), Err(Error::FieldMismatch));
        assert_eq!(el(&f3, 1).checked_div(&el(&f3, 0)), Err(Error::DivisionByZero));
        assert!(matches!(f5.conjugate(1), Err(Error::NotQuadraticExtension(_))));
        assert!(matches!(f3.element(3), Err(Error::ElementOutOfRange { .. })));
        assert!(FieldSpec::polynomial(2, &[1, 0, 1]).is_err()); // x² + 1 = (x+1)²
        assert!(FieldSpec::polynomial(4, &[0, 1]).is_err());
    }

    #[test]
    fn conjugation_gf4() {
        let f = FieldSpec::gf_sq(2).unwrap();
        assert_eq!(f.conjugate(2).unwrap(), 3);
        assert_eq!(f.conjugate(1).unwrap(), 1);
    }

    #[test]
    fn traces_gf4() {
        let f = FieldSpec::gf_sq(2).unwrap();
        assert_eq!(f.rel_trace(1).unwrap(), 0);
        assert_eq!(f.rel_trace(2).unwrap(), 1);
        assert_eq!(f.abs_trace(2), 1);
        assert_eq!(f.abs_trace(0), 0);
        let f7 = FieldSpec::gf(7).unwrap();
        for x in f7.elements() {
            assert_eq!(f7.abs_trace(x), x);
        }
    }

    #[test]
    fn conjugation_laws_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FieldSpec::gf_sq(q).unwrap();
            let base = f.base().unwrap().clone();
            assert_eq!(base.order(), q);
            for x in f.elements() {
                let cx = f.conjugate(x).unwrap();
                assert_eq!(f.conjugate(cx).unwrap(), x);
                if (x as usize) < q {
                    assert_eq!(cx, x, "Frobenius fixes the base field");
                }
                let t = f.rel_trace(x).unwrap();
                assert!((t as usize) < q);
                assert_eq!(f.conjugate(t).unwrap(), t);
                for y in f.elements() {
                    let cy = f.conjugate(y).unwrap();
                    assert_eq!(f.conjugate(f.mul(x, y)).unwrap(), f.mul(cx, cy));
                    assert_eq!(f.rel_trace(f.add(x, y)).unwrap(), f.add(t, f.rel_trace(y).unwrap()));
                }
            }
            // base-field arithmetic agrees with the embedded copy
            for a in base.elements() {
                for b in base.elements() {
                    assert_eq!(base.mul(a, b), f.mul(a, b));
                    assert_eq!(base.add(a, b), f.add(a, b));
                }
            }
            // rel_trace is surjective onto GF(q)
            let mut hit = vec![false; q];
            for x in f.elements() {
                hit[f.rel_trace(x).unwrap() as usize] = true;
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    #[test]
    fn cyclic_multiplicative_group() {
        for order in [2, 3, 4, 5, 7, 8, 9, 16, 25, 49, 64, 81] {
            let f = FieldSpec::of_order(order).unwrap();
            let n = (order - 1) as u64;
            let gen = (1..order as u32).map(|g| g as Elem).find(|&g| {
                (1..n).all(|k| f.pow(g, k) != 1) && f.pow(g, n) == 1
            });
            assert!(gen.is_some(), "GF({order}) has no generator");
        }
    }

    #[test]
    fn field_axioms_small() {
        for order in [4, 8, 9, 16] {
            let f = FieldSpec::of_order(order).unwrap();
            for a in f.elements() {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn encoding_round_trip() {
        for order in [4, 8, 9, 16, 81] {
            let f = FieldSpec::of_order(order).unwrap();
            for x in f.elements() {
                let e = el(&f, x as u32);
                let back = FieldElement::from_coefficients(&f, &e.coefficients()).unwrap();
                assert_eq!(back, e);
            }
        }
    }

    /// The shipped quadratic moduli are the first `y² + y + c0` (smallest
    /// index c0) irreducible over GF(q) and satisfy the basis conditions.
    #[test]
    fn modulus_table_is_canonical() {
        for entry in MODULUS_TABLE {
            let base = FieldSpec::gf(entry.q).unwrap();
            let first = (0..entry.q as Elem)
                .find(|&c0| FieldSpec::quadratic(&base, c0, 1).is_ok())
                .unwrap();
            assert_eq!(first, entry.quadratic_c0, "q = {}", entry.q);
            let ext = FieldSpec::gf_sq(entry.q).unwrap();
            assert_eq!(ext.beta().unwrap() as usize, entry.q);
            assert_ne!(ext.alternating_normalizer().unwrap(), 0);
        }
    }

    #[test]
    fn gf9_alternatives() {
        // x² + 1 is irreducible over F_3 but β^q = −β, so it cannot carry φ.
        let f3 = FieldSpec::gf(3).unwrap();
        assert!(FieldSpec::polynomial(3, &[1, 0, 1]).is_ok());
        assert!(matches!(FieldSpec::quadratic(&f3, 1, 0), Err(Error::InvalidField(_))));
        assert!(FieldSpec::gf(9).unwrap().describe().contains("y^2 + y + [2]"));
    }
}
