//! Dense-matrix model of the generalized Pauli group on n qudits of prime
//! dimension p.
//!
//! `ω = e^{2πi/p}`, `X(a)|j⟩ = |j + a⟩`, `Z(b)|j⟩ = ω^{b·j}|j⟩`, and a label
//! `(i, a, b)` stands for `ω^i X(a) Z(b)`. Basis index `j = Σ j_t p^t`.
//! With these matrices `h·g = ω^{⟨τ(g), τ(h)⟩_s} g·h`, so
//! [`commutation_phase`] reports the exponent in that order.

use std::collections::{HashSet, VecDeque};

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::symplectic::{self, SympVector};

/// Default cap on the Hilbert-space dimension p^n.
pub const DEFAULT_CAP: usize = 243;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliLabel {
    p: u32,
    phase: u32,
    a: Vec<u32>,
    b: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl PauliLabel {
    /// Entries are reduced mod p.
    pub fn new(p: u32, phase: u32, a: &[u32], b: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
        }
        Ok(PauliLabel {
            p,
            phase: phase % p,
            a: a.iter().map(|x| x % p).collect(),
            b: b.iter().map(|x| x % p).collect(),
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        Self::new(p, 0, &vec![0; n], &vec![0; n])
    }

    /// Phase-free label of a concatenated `(a|b)` vector.
    pub fn from_symplectic(p: u32, coords: &[Elem]) -> Result<Self> {
        let n = coords.len() / 2;
        let c: Vec<u32> = coords.iter().map(|&x| x as u32).collect();
        Self::new(p, 0, &c[..n], &c[n..])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&x| x == 0)
    }

    /// τ: the `(a|b)` part as a vector over GF(p).
    pub fn tau(&self) -> Result<SympVector> {
        let f = FieldSpec::gf(self.p as usize)?;
        let a: Vec<Elem> = self.a.iter().map(|&x| x as Elem).collect();
        let b: Vec<Elem> = self.b.iter().map(|&x| x as Elem).collect();
        SympVector::new(&f, &a, &b)
    }

    fn check(&self, other: &PauliLabel) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }

    /// `ω^i X(a)Z(b) · ω^{i'} X(a')Z(b') = ω^{i+i'+b·a'} X(a+a')Z(b+b')`.
    pub fn mul(&self, other: &PauliLabel) -> Result<PauliLabel> {
        self.check(other)?;
        let p = self.p;
        let ba: u32 = self.b.iter().zip(&other.a).map(|(x, y)| x * y % p).sum::<u32>() % p;
        Ok(PauliLabel {
            p,
            phase: (self.phase + other.phase + ba) % p,
            a: self.a.iter().zip(&other.a).map(|(x, y)| (x + y) % p).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| (x + y) % p).collect(),
        })
    }

    fn dimension(&self, cap: usize) -> Result<usize> {
        let dim = (self.p as usize)
            .checked_pow(self.n() as u32)
            .filter(|&d| d <= cap)
            .ok_or(Error::DimensionCap { dim: (self.p as usize).saturating_pow(self.n() as u32), cap })?;
        Ok(dim)
    }
}

impl std::fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = |x: &[u32]| x.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("");
        write!(f, "w^{} X({}) Z({})", self.phase, v(&self.a), v(&self.b))
    }
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let x = self.data[r * d + k];
                if x.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += x * other.data[k * d + c];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix { dim: self.dim, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add_assign(&mut self, other: &CMatrix) {
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += y;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    pub fn conj_transpose(&self) -> CMatrix {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        out
    }
}

fn omega_pow(p: u32, k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % p) as f64 / p as f64)
}

pub fn pauli_matrix(g: &PauliLabel, cap: usize) -> Result<CMatrix> {
    let dim = g.dimension(cap)?;
    let p = g.p as usize;
    let n = g.n();
    let mut m = CMatrix::zeros(dim);
    let mut digits = vec![0usize; n];
    for j in 0..dim {
        let mut x = j;
        for d in digits.iter_mut() {
            *d = x % p;
            x /= p;
        }
        let bj: usize = g.b.iter().zip(&digits).map(|(&b, &d)| b as usize * d).sum();
        let mut target = 0;
        for t in (0..n).rev() {
            target = target * p + (digits[t] + g.a[t] as usize) % p;
        }
        m.data[target * dim + j] = omega_pow(g.p, (g.phase as usize + bj) as u32 % g.p);
    }
    Ok(m)
}

/// The exponent s with `M(h)·M(g) = ω^s M(g)·M(h)`, found from the matrices.
pub fn commutation_phase(g: &PauliLabel, h: &PauliLabel, cap: usize) -> Result<u32> {
    g.check(h)?;
    let mg = pauli_matrix(g, cap)?;
    let mh = pauli_matrix(h, cap)?;
    let gh = mg.mul(&mh);
    let hg = mh.mul(&mg);
    (0..g.p)
        .find(|&s| hg.max_abs_diff(&gh.scale(omega_pow(g.p, s))) < TOL)
        .ok_or_else(|| Error::NonPauliResult(format!("{h} * {g} is not a phase multiple of {g} * {h}")))
}

fn close_group(gens: &[PauliLabel]) -> Result<Vec<PauliLabel>> {
    let id = PauliLabel::identity(gens[0].p, gens[0].n())?;
    let mut seen: HashSet<PauliLabel> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// Projector report for the group generated by `gens`.
#[derive(Debug, Clone, PartialEq)]
pub struct Codespace {
    pub group_size: usize,
    pub trace: f64,
    pub idempotence_error: f64,
    pub dim: usize,
}

/// Rank of `(1/|S|) Σ_{g ∈ S} M(g)` for the group S generated by `gens`.
pub fn codespace(p: u32, n: usize, gens: &[PauliLabel], cap: usize) -> Result<Codespace> {
    let id = PauliLabel::identity(p, n)?;
    let dim = id.dimension(cap)?;
    if gens.is_empty() {
        return Ok(Codespace { group_size: 1, trace: dim as f64, idempotence_error: 0.0, dim });
    }
    for g in gens {
        id.check(g)?;
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if commutation_phase(&gens[i], &gens[j], cap)? != 0 {
                return Err(Error::NotAbelian(i, j));
            }
        }
    }
    let group = close_group(gens)?;
    if let Some(bad) = group.iter().find(|g| g.is_identity_up_to_phase() && g.phase != 0) {
        return Err(Error::PhaseObstruction(bad.phase));
    }
    let mut proj = CMatrix::zeros(dim);
    for g in &group {
        proj.add_assign(&pauli_matrix(g, cap)?);
    }
    let proj = proj.scale(Complex64::new(1.0 / group.len() as f64, 0.0));
    let idempotence_error = proj.mul(&proj).max_abs_diff(&proj);
    if idempotence_error > TOL {
        return Err(Error::NonPauliResult(format!("projector is not idempotent (error {idempotence_error:e})")));
    }
    let trace = proj.trace().re;
    let rank = trace.round();
    if (trace - rank).abs() > 1e-6 {
        return Err(Error::NonPauliResult(format!("projector trace {trace} is not an integer")));
    }
    Ok(Codespace { group_size: group.len(), trace, idempotence_error, dim: rank as usize })
}

pub fn codespace_dim(p: u32, n: usize, gens: &[PauliLabel], cap: usize) -> Result<usize> {
    Ok(codespace(p, n, gens, cap)?.dim)
}

pub fn random_label<R: Rng + ?Sized>(p: u32, n: usize, rng: &mut R) -> PauliLabel {
    let v = |rng: &mut R| (0..n).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>();
    let phase = rng.gen_range(0..p);
    let a = v(rng);
    let b = v(rng);
    PauliLabel { p, phase, a, b }
}

/// m independent commuting phase-free generators from a random isotropic
/// subspace. May still produce a phase obstruction when p = 2.
pub fn random_isotropic_generators<R: Rng + ?Sized>(p: u32, n: usize, m: usize, rng: &mut R) -> Result<Vec<PauliLabel>> {
    let f = FieldSpec::gf(p as usize)?;
    let s = symplectic::random_subspace(&f, n, m, 0, rng)?;
    s.basis().iter_rows().map(|r| PauliLabel::from_symplectic(p, r)).collect()
}

/// One certified property with its sample count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certification {
    pub property: &'static str,
    pub passed: usize,
    pub total: usize,
}

impl Certification {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

impl std::fmt::Display for Certification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}/{}", self.property, self.passed, self.total)
    }
}

fn all_labels(p: u32, n: usize) -> Vec<PauliLabel> {
    let count = (p as usize).pow(2 * n as u32);
    (0..count)
        .map(|mut idx| {
            let mut v = Vec::with_capacity(2 * n);
            for _ in 0..2 * n {
                v.push((idx % p as usize) as u32);
                idx /= p as usize;
            }
            PauliLabel { p, phase: 0, a: v[..n].to_vec(), b: v[n..].to_vec() }
        })
        .collect()
}

/// Certify the commutation relation, the label product, unitarity and the
/// codespace dimension law. All label pairs are used when there are at most
/// `samples` of them; otherwise `samples` random pairs.
pub fn certify<R: Rng + ?Sized>(p: u32, n: usize, samples: usize, cap: usize, rng: &mut R) -> Result<Vec<Certification>> {
    let f = FieldSpec::gf(p as usize)?;
    let labels = all_labels(p, n);
    let pairs: Vec<(PauliLabel, PauliLabel)> = if labels.len().saturating_mul(labels.len()) <= samples {
        labels.iter().flat_map(|g| labels.iter().map(move |h| (g.clone(), h.clone()))).collect()
    } else {
        (0..samples).map(|_| (random_label(p, n, rng), random_label(p, n, rng))).collect()
    };
    let mut comm = Certification { property: "commutation", passed: 0, total: pairs.len() };
    let mut hom = Certification { property: "homomorphism", passed: 0, total: pairs.len() };
    for (g, h) in &pairs {
        let s = commutation_phase(g, h, cap)?;
        let want = symplectic::inner(&f, g.tau()?.coords(), h.tau()?.coords());
        if s == want as u32 {
            comm.passed += 1;
        }
        let gh = g.mul(h)?;
        let prod = pauli_matrix(g, cap)?.mul(&pauli_matrix(h, cap)?);
        let mut tau_sum = g.tau()?.coords().to_vec();
        crate::linalg::axpy(&f, &mut tau_sum, 1, h.tau()?.coords());
        if prod.max_abs_diff(&pauli_matrix(&gh, cap)?) < TOL && gh.tau()?.coords() == tau_sum.as_slice() {
            hom.passed += 1;
        }
    }
    let mut unitary = Certification { property: "unitary", passed: 0, total: 0 };
    for g in labels.iter().take(samples.max(1)) {
        let m = pauli_matrix(g, cap)?;
        unitary.total += 1;
        if m.mul(&m.conj_transpose()).max_abs_diff(&CMatrix::identity(m.dim)) < TOL {
            unitary.passed += 1;
        }
    }
    let mut law = Certification { property: "dimension-law", passed: 0, total: 0 };
    let trials = samples.clamp(1, 50);
    let mut attempts = 0;
    while law.total < trials && attempts < 50 * trials {
        attempts += 1;
        let m = rng.gen_range(0..=n);
        let gens = random_isotropic_generators(p, n, m, rng)?;
        match codespace_dim(p, n, &gens, cap) {
            Err(Error::PhaseObstruction(_)) => continue,
            Err(e) => return Err(e),
            Ok(d) => {
                law.total += 1;
                if d == (p as usize).pow((n - m) as u32) {
                    law.passed += 1;
                }
            }
        }
    }
    Ok(vec![comm, hom, unitary, law])
}
