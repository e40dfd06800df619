//! The symplectic space F_q^{2n}: vectors `(a|b)` stored as the concatenation
//! of the two halves, the alternating form ⟨(a|b),(a'|b')⟩ = a·b' − b·a',
//! symplectic duals and weights, the radical/hyperbolic decomposition of a
//! subspace, and the F_q-linear isometry φ(a|b) = βa + β^q b onto F_{q²}^n.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::{self, axpy, dot, Matrix};
use crate::text::{self, Header};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SympVector {
    field: FieldSpec,
    coords: Vec<Elem>,
}

impl SympVector {
    pub fn new(field: &FieldSpec, a: &[Elem], b: &[Elem]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
        }
        let mut coords = a.to_vec();
        coords.extend_from_slice(b);
        Self::from_coords(field, coords)
    }

    /// From the concatenation `(a|b)`.
    pub fn from_coords(field: &FieldSpec, coords: Vec<Elem>) -> Result<Self> {
        if coords.len() % 2 != 0 {
            return Err(Error::DimensionMismatch { left: coords.len(), right: coords.len() + 1 });
        }
        for &c in &coords {
            field.check(c as u32)?;
        }
        Ok(SympVector { field: field.clone(), coords })
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        SympVector { field: field.clone(), coords: vec![0; 2 * n] }
    }

    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn a(&self) -> &[Elem] {
        &self.coords[..self.n()]
    }

    pub fn b(&self) -> &[Elem] {
        &self.coords[self.n()..]
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn weight(&self) -> usize {
        weight(&self.coords)
    }
}

/// ⟨u, v⟩_s on raw concatenated coordinates of equal even length.
#[inline]
pub fn inner(f: &FieldSpec, u: &[Elem], v: &[Elem]) -> Elem {
    let n = u.len() / 2;
    f.sub(dot(f, &u[..n], &v[n..]), dot(f, &u[n..], &v[..n]))
}

/// Number of positions j with (a_j, b_j) ≠ (0, 0).
#[inline]
pub fn weight(u: &[Elem]) -> usize {
    let n = u.len() / 2;
    (0..n).filter(|&j| u[j] != 0 || u[n + j] != 0).count()
}

pub fn symp_inner(u: &SympVector, v: &SympVector) -> Result<Elem> {
    if u.field != v.field {
        return Err(Error::FieldMismatch);
    }
    if u.coords.len() != v.coords.len() {
        return Err(Error::DimensionMismatch { left: u.n(), right: v.n() });
    }
    Ok(inner(&u.field, &u.coords, &v.coords))
}

pub fn symp_weight(u: &SympVector) -> usize {
    u.weight()
}

/// An F_q-subspace of F_q^{2n}. The basis keeps the caller's row order
/// (dependent rows are dropped); equality is equality of row spaces.
#[derive(Debug, Clone)]
pub struct SympSubspace {
    n: usize,
    basis: Matrix,
}

impl PartialEq for SympSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis.field() == other.basis.field() && self.canonical() == other.canonical()
    }
}

impl Eq for SympSubspace {}

impl SympSubspace {
    pub fn new(basis: Matrix) -> Result<Self> {
        if basis.cols() % 2 != 0 {
            return Err(Error::DimensionMismatch { left: basis.cols(), right: basis.cols() + 1 });
        }
        Ok(SympSubspace { n: basis.cols() / 2, basis: basis.independent_rows() })
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        SympSubspace { n, basis: Matrix::empty(field, 2 * n) }
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        SympSubspace { n, basis: Matrix::identity(field, 2 * n) }
    }

    pub fn from_vectors(field: &FieldSpec, n: usize, vectors: &[SympVector]) -> Result<Self> {
        let rows: Vec<&[Elem]> = vectors.iter().map(|v| v.coords()).collect();
        Self::new(Matrix::from_rows(field, 2 * n, &rows)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn canonical(&self) -> Matrix {
        self.basis.row_space()
    }

    pub fn vectors(&self) -> Vec<SympVector> {
        self.basis
            .iter_rows()
            .map(|r| SympVector { field: self.field().clone(), coords: r.to_vec() })
            .collect()
    }

    fn check(&self, other: &SympSubspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::AmbientMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn sum(&self, other: &SympSubspace) -> Result<SympSubspace> {
        self.check(other)?;
        SympSubspace::new(linalg::sum(&self.basis, &other.basis)?)
    }

    pub fn intersect(&self, other: &SympSubspace) -> Result<SympSubspace> {
        self.check(other)?;
        SympSubspace::new(linalg::intersect(&self.basis, &other.basis)?)
    }

    pub fn contains(&self, other: &SympSubspace) -> Result<bool> {
        self.check(other)?;
        linalg::contains(&self.basis, &other.basis)
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        let m = Matrix::from_rows(self.field(), 2 * self.n, &[v]).expect("vector length");
        linalg::contains(&self.basis, &m).expect("same ambient")
    }

    /// S^{⊥s}.
    pub fn dual(&self) -> SympSubspace {
        let f = self.field().clone();
        let basis = linalg::form_complement(&self.basis, |u, v| inner(&f, u, v));
        SympSubspace { n: self.n, basis }
    }

    /// S ∩ S^{⊥s}.
    pub fn radical(&self) -> SympSubspace {
        self.intersect(&self.dual()).expect("same ambient")
    }

    pub fn is_totally_isotropic(&self) -> bool {
        let f = self.field();
        let rows: Vec<&[Elem]> = self.basis.iter_rows().collect();
        rows.iter().enumerate().all(|(i, u)| rows[i + 1..].iter().all(|v| inner(f, u, v) == 0))
    }

    /// Restrict to the given coordinate positions (0-based), dropping both
    /// halves of each removed position.
    pub fn puncture(&self, coords: &[usize]) -> Result<SympSubspace> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.n) {
            return Err(Error::IndexOutOfRange { index: bad, len: self.n });
        }
        let keep: Vec<usize> = (0..self.n).filter(|j| !coords.contains(j)).collect();
        let mut cols = keep.clone();
        cols.extend(keep.iter().map(|j| j + self.n));
        SympSubspace::new(self.basis.select_cols(&cols))
    }

    pub fn to_text(&self) -> String {
        text::write_matrix(&self.basis, &[Header::new("ambient", &[("n", self.n.to_string())])])
    }

    pub fn from_text(src: &str) -> Result<Self> {
        let file = text::parse_matrix(src)?;
        let declared = file.header("ambient").and_then(|h| h.get_usize("n"));
        let s = SympSubspace::new(file.matrix)?;
        if let Some(n) = declared {
            if n != s.n {
                return Err(Error::AmbientMismatch { left: n, right: s.n });
            }
        }
        Ok(s)
    }
}

pub fn symp_dual(s: &SympSubspace) -> SympSubspace {
    s.dual()
}

/// S = S_I ⊕ S_E with S_I the radical and S_E spanned by hyperbolic pairs.
#[derive(Debug, Clone)]
pub struct HyperbolicDecomposition {
    pub n: usize,
    pub radical: Matrix,
    pub pairs: Vec<(Vec<Elem>, Vec<Elem>)>,
}

impl HyperbolicDecomposition {
    /// dim S_I.
    pub fn l(&self) -> usize {
        self.radical.rows()
    }

    /// Number of hyperbolic pairs.
    pub fn c(&self) -> usize {
        self.pairs.len()
    }

    pub fn radical_space(&self) -> SympSubspace {
        SympSubspace { n: self.n, basis: self.radical.clone() }
    }

    pub fn pair_matrix(&self) -> Matrix {
        let f = self.radical.field();
        let mut m = Matrix::empty(f, 2 * self.n);
        for (e, fv) in &self.pairs {
            m.push_row(e).expect("width");
            m.push_row(fv).expect("width");
        }
        m
    }

    pub fn pair_space(&self) -> SympSubspace {
        SympSubspace { n: self.n, basis: self.pair_matrix() }
    }

    /// Gram conditions of the pairs and radical orthogonality against `s`.
    pub fn verify(&self, s: &SympSubspace) -> bool {
        let f = s.field();
        let pairs = &self.pairs;
        for (i, (ei, fi)) in pairs.iter().enumerate() {
            for (j, (ej, fj)) in pairs.iter().enumerate() {
                let want = if i == j { 1 } else { 0 };
                if inner(f, ei, fj) != want || inner(f, ei, ej) != 0 || inner(f, fi, fj) != 0 {
                    return false;
                }
            }
        }
        for r in self.radical.iter_rows() {
            if s.basis.iter_rows().any(|v| inner(f, r, v) != 0) {
                return false;
            }
        }
        let whole = self.radical.vstack(&self.pair_matrix()).expect("width");
        whole.rank() == s.dim() && linalg::same_space(&whole, &s.basis).unwrap_or(false)
    }
}

/// Symplectic Gram–Schmidt. Basis vectors are scanned in row order; the first
/// later vector pairing non-trivially with the current one becomes its partner.
pub fn decompose(s: &SympSubspace) -> HyperbolicDecomposition {
    let f = s.field().clone();
    let mut work: Vec<Vec<Elem>> = s.basis.iter_rows().map(|r| r.to_vec()).collect();
    let mut radical = Matrix::empty(&f, 2 * s.n);
    let mut pairs = Vec::new();
    while !work.is_empty() {
        let e = work.remove(0);
        let Some(j) = work.iter().position(|v| inner(&f, &e, v) != 0) else {
            radical.push_row(&e).expect("width");
            continue;
        };
        let mut partner = work.remove(j);
        let scale = f.inv(inner(&f, &e, &partner));
        for x in partner.iter_mut() {
            *x = f.mul(*x, scale);
        }
        // v ← v − ⟨v,f⟩e + ⟨v,e⟩f leaves v orthogonal to both e and f
        for v in work.iter_mut() {
            let vf = inner(&f, v, &partner);
            let ve = inner(&f, v, &e);
            axpy(&f, v, f.neg(vf), &e);
            axpy(&f, v, ve, &partner);
        }
        pairs.push((e, partner));
    }
    HyperbolicDecomposition { n: s.n, radical, pairs }
}

fn random_invertible<R: Rng + ?Sized>(f: &FieldSpec, size: usize, rng: &mut R) -> Matrix {
    loop {
        let data = (0..size * size).map(|_| rng.gen_range(0..f.order()) as Elem).collect();
        let m = Matrix::new(f, size, size, data).expect("square");
        if m.rank() == size {
            return m;
        }
    }
}

/// n hyperbolic pairs spanning F_q^{2n}, from a random basis.
pub fn random_symplectic_basis<R: Rng + ?Sized>(f: &FieldSpec, n: usize, rng: &mut R) -> Vec<(Vec<Elem>, Vec<Elem>)> {
    let s = SympSubspace { n, basis: random_invertible(f, 2 * n, rng) };
    decompose(&s).pairs
}

/// Random subspace with an l-dimensional radical and c hyperbolic pairs,
/// its basis mixed by a random invertible matrix.
pub fn random_subspace<R: Rng + ?Sized>(f: &FieldSpec, n: usize, l: usize, c: usize, rng: &mut R) -> Result<SympSubspace> {
    if l + c > n {
        return Err(Error::Range(format!("l + c = {} exceeds n = {n}", l + c)));
    }
    let pairs = random_symplectic_basis(f, n, rng);
    let mut m = Matrix::empty(f, 2 * n);
    for (e, _) in &pairs[..l] {
        m.push_row(e)?;
    }
    for (e, g) in &pairs[l..l + c] {
        m.push_row(e)?;
        m.push_row(g)?;
    }
    let mix = random_invertible(f, m.rows(), rng);
    SympSubspace::new(mix.mul(&m)?)
}

fn check_phi_fields(ext: &FieldSpec, base: &FieldSpec) -> Result<()> {
    if ext.base()? != base {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// φ on raw coordinates; `ext` must be a quadratic extension of the field of `u`.
pub fn phi_raw(ext: &FieldSpec, u: &[Elem]) -> Vec<Elem> {
    let n = u.len() / 2;
    let beta = ext.beta().expect("quadratic extension");
    let beta_q = ext.beta_q().expect("quadratic extension");
    (0..n).map(|j| ext.add(ext.mul(beta, u[j]), ext.mul(beta_q, u[n + j]))).collect()
}

/// Inverse of φ. With β = y and β^q = u0 + u1·y, w = w0 + w1·y gives
/// b = w0/u0 and a = w1 − b·u1.
pub fn phi_inv_raw(ext: &FieldSpec, w: &[Elem]) -> Vec<Elem> {
    let base = ext.base().expect("quadratic extension");
    let q = base.order();
    let bq = ext.beta_q().expect("quadratic extension") as usize;
    let (u0, u1) = ((bq % q) as Elem, (bq / q) as Elem);
    let n = w.len();
    let mut out = vec![0; 2 * n];
    for (j, &x) in w.iter().enumerate() {
        let (w0, w1) = ((x as usize % q) as Elem, (x as usize / q) as Elem);
        let b = base.div(w0, u0);
        out[j] = base.sub(w1, base.mul(b, u1));
        out[n + j] = b;
    }
    out
}

pub fn phi(ext: &FieldSpec, u: &SympVector) -> Result<Vec<Elem>> {
    check_phi_fields(ext, u.field())?;
    Ok(phi_raw(ext, &u.coords))
}

pub fn phi_inv(ext: &FieldSpec, w: &[Elem]) -> Result<SympVector> {
    let base = ext.base()?.clone();
    for &x in w {
        ext.check(x as u32)?;
    }
    Ok(SympVector { coords: phi_inv_raw(ext, w), field: base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: usize) -> FieldSpec {
        FieldSpec::gf(q).unwrap()
    }

    fn sv(f: &FieldSpec, a: &[Elem], b: &[Elem]) -> SympVector {
        SympVector::new(f, a, b).unwrap()
    }

    fn random_subspace(f: &FieldSpec, n: usize, rng: &mut impl Rng) -> SympSubspace {
        let rows = rng.gen_range(0..=2 * n);
        let data = (0..rows * 2 * n).map(|_| rng.gen_range(0..f.order()) as Elem).collect();
        SympSubspace::new(Matrix::new(f, rows, 2 * n, data).unwrap()).unwrap()
    }

    #[test]
    fn inner_examples() {
        let f2 = gf(2);
        assert_eq!(symp_inner(&sv(&f2, &[1], &[0]), &sv(&f2, &[0], &[1])).unwrap(), 1);
        let f3 = gf(3);
        let u = sv(&f3, &[1, 0], &[2, 0]);
        let v = sv(&f3, &[0, 1], &[1, 1]);
        assert_eq!(symp_inner(&u, &v).unwrap(), 1);
        assert_eq!(symp_inner(&v, &u).unwrap(), 2);
        assert_eq!(symp_inner(&u, &u).unwrap(), 0);
        assert!(matches!(
            symp_inner(&u, &sv(&f3, &[1], &[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn weight_examples() {
        let f = gf(2);
        assert_eq!(symp_weight(&SympVector::zero(&f, 3)), 0);
        assert_eq!(symp_weight(&sv(&f, &[1, 1], &[0, 0])), 2);
        assert_eq!(symp_weight(&sv(&f, &[1, 0], &[1, 0])), 1);
    }

    #[test]
    fn dual_examples() {
        let f = gf(2);
        assert_eq!(SympSubspace::zero(&f, 2).dual(), SympSubspace::full(&f, 2));
        assert_eq!(SympSubspace::full(&f, 2).dual(), SympSubspace::zero(&f, 2));
        let s = SympSubspace::from_vectors(&f, 2, &[sv(&f, &[1, 0], &[0, 0]), sv(&f, &[0, 1], &[0, 0])]).unwrap();
        assert_eq!(s.dual(), s);
        assert!(s.is_totally_isotropic());
    }

    #[test]
    fn decompose_examples() {
        let f = gf(2);
        let s = SympSubspace::from_vectors(&f, 1, &[sv(&f, &[1], &[0]), sv(&f, &[0], &[1])]).unwrap();
        let d = decompose(&s);
        assert_eq!((d.l(), d.c()), (0, 1));
        assert_eq!(d.pairs[0], (vec![1, 0], vec![0, 1]));
        assert!(d.verify(&s));

        let iso = SympSubspace::from_vectors(&f, 2, &[sv(&f, &[1, 1], &[0, 0]), sv(&f, &[0, 0], &[1, 1])]).unwrap();
        let d = decompose(&iso);
        assert_eq!((d.l(), d.c()), (2, 0));
        assert_eq!(d.radical_space(), iso);
    }

    #[test]
    fn decompose_random_gf3() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = gf(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=5);
            let s = random_subspace(&f, n, &mut rng);
            let d = decompose(&s);
            assert_eq!(d.l() + 2 * d.c(), s.dim());
            assert!(d.verify(&s));
            assert_eq!(d.radical_space(), s.radical());
            let meet = d.radical_space().intersect(&d.pair_space()).unwrap();
            assert_eq!(meet.dim(), 0);
            assert_eq!(s.is_totally_isotropic(), d.c() == 0);
            assert_eq!(s.is_totally_isotropic(), s.dual().contains(&s).unwrap());
        }
    }

    #[test]
    fn dual_dimension_and_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2, 3, 4, 5] {
            let f = gf(q);
            for _ in 0..200 {
                let n = rng.gen_range(1..=4);
                let s = random_subspace(&f, n, &mut rng);
                let d = s.dual();
                assert_eq!(s.dim() + d.dim(), 2 * n);
                assert_eq!(d.dual(), s);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let ext = FieldSpec::gf_sq(2).unwrap();
        let f = gf(2);
        assert_eq!(phi(&ext, &SympVector::zero(&f, 2)).unwrap(), vec![0, 0]);
        assert_eq!(phi(&ext, &sv(&f, &[1], &[0])).unwrap(), vec![2]); // ω
        assert_eq!(phi(&ext, &sv(&f, &[0], &[1])).unwrap(), vec![3]); // ω²
        assert_eq!(phi(&ext, &sv(&f, &[1], &[1])).unwrap(), vec![1]);
        assert_eq!(phi(&FieldSpec::gf_sq(3).unwrap(), &sv(&f, &[1], &[0])), Err(Error::FieldMismatch));
        assert!(matches!(phi_inv(&gf(5), &[1]), Err(Error::NotQuadraticExtension(_))));
    }

    fn all_coords(q: usize, len: usize) -> impl Iterator<Item = Vec<Elem>> {
        (0..q.pow(len as u32)).map(move |mut i| {
            (0..len)
                .map(|_| {
                    let d = (i % q) as Elem;
                    i /= q;
                    d
                })
                .collect()
        })
    }

    #[test]
    fn phi_round_trip_and_weight() {
        for q in [2, 3] {
            let f = gf(q);
            let ext = FieldSpec::gf_sq(q).unwrap();
            for n in 1..=3 {
                for c in all_coords(q, 2 * n) {
                    let u = SympVector::from_coords(&f, c).unwrap();
                    let w = phi(&ext, &u).unwrap();
                    assert_eq!(phi_inv(&ext, &w).unwrap(), u);
                    assert_eq!(w.iter().filter(|&&x| x != 0).count(), u.weight());
                }
            }
        }
    }

    /// φ(u)·conj(φ(v)) − conj(φ(u))·φ(v) = (β² − β^{2q})·⟨u, v⟩_s.
    #[test]
    fn alternating_pullback() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for q in [2, 3, 4, 5, 7] {
            let f = gf(q);
            let ext = FieldSpec::gf_sq(q).unwrap();
            let norm = ext.alternating_normalizer().unwrap();
            let check = |u: &[Elem], v: &[Elem]| {
                let (pu, pv) = (phi_raw(&ext, u), phi_raw(&ext, v));
                let mut lhs = 0;
                for (&x, &y) in pu.iter().zip(&pv) {
                    let t = ext.sub(ext.mul(x, ext.conjugate(y).unwrap()), ext.mul(ext.conjugate(x).unwrap(), y));
                    lhs = ext.add(lhs, t);
                }
                assert_eq!(lhs, ext.mul(norm, inner(&f, u, v)));
            };
            if q <= 3 {
                for n in 1..=2 {
                    let all: Vec<_> = all_coords(q, 2 * n).collect();
                    for u in &all {
                        for v in &all {
                            check(u, v);
                        }
                    }
                }
            } else {
                for _ in 0..500 {
                    let n = rng.gen_range(1..=4);
                    let u: Vec<Elem> = (0..2 * n).map(|_| rng.gen_range(0..q) as Elem).collect();
                    let v: Vec<Elem> = (0..2 * n).map(|_| rng.gen_range(0..q) as Elem).collect();
                    check(&u, &v);
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f = gf(3);
        let s = SympSubspace::from_vectors(&f, 2, &[sv(&f, &[1, 2], &[0, 1])]).unwrap();
        let t = s.to_text();
        assert!(t.starts_with("#ambient n=2\n3 1 4\n"));
        assert_eq!(SympSubspace::from_text(&t).unwrap(), s);
    }
}
