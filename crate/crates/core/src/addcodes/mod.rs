//! Additive codes over GF(q²).
//!
//! An additive `(n, q^m)` code is stored through its φ-preimage, an
//! m-dimensional F_q-subspace of F_q^{2n}; generators over GF(q²) are the
//! images of the preimage basis rows. Everything that has to agree with the
//! symplectic picture (duals, radicals, decompositions) defaults to the
//! alternating form, which φ carries onto the symplectic form.

mod weight;

pub use weight::{search, search_size, MinWeight, Strategy, DEFAULT_BUDGET};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::{self, Matrix};
use crate::symplectic::{decompose, phi_inv_raw, phi_raw, SympSubspace};
use crate::text::{self, Header};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerForm {
    Hermitian,
    Trace,
    Alternating,
}

/// Forms usable for additive duality (both F_q-valued).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DualityForm {
    Trace,
    #[default]
    Alternating,
}

impl std::str::FromStr for DualityForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" => Ok(DualityForm::Trace),
            "alternating" => Ok(DualityForm::Alternating),
            _ => Err(Error::Range(format!("unknown form `{s}` (expected trace or alternating)"))),
        }
    }
}

fn hermitian_raw(ext: &FieldSpec, u: &[Elem], v: &[Elem]) -> Elem {
    u.iter().zip(v).fold(0, |acc, (&x, &y)| ext.add(acc, ext.mul(x, ext.conj_fast(y))))
}

/// Inner product of two vectors over a quadratic extension.
pub fn inner(ext: &FieldSpec, u: &[Elem], v: &[Elem], form: InnerForm) -> Result<Elem> {
    if !ext.is_quadratic_extension() {
        return Err(Error::NotQuadraticExtension(ext.describe()));
    }
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { left: u.len(), right: v.len() });
    }
    for &x in u.iter().chain(v) {
        ext.check(x as u32)?;
    }
    let h = hermitian_raw(ext, u, v);
    Ok(match form {
        InnerForm::Hermitian => h,
        InnerForm::Trace => ext.rel_trace(h)?,
        InnerForm::Alternating => {
            let hv = hermitian_raw(ext, v, u);
            ext.div(ext.sub(h, hv), ext.alternating_normalizer()?)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveCode {
    ext: FieldSpec,
    preimage: SympSubspace,
}

impl AdditiveCode {
    /// Code generated over F_q by the rows of `gens` (a matrix over GF(q²)).
    /// F_q-dependent rows are dropped.
    pub fn new(gens: &Matrix) -> Result<Self> {
        let ext = gens.field().clone();
        let base = ext.base()?.clone();
        let mut data = Vec::with_capacity(gens.rows() * gens.cols() * 2);
        for r in gens.iter_rows() {
            data.extend(phi_inv_raw(&ext, r));
        }
        let pre = Matrix::new(&base, gens.rows(), 2 * gens.cols(), data)?;
        Ok(AdditiveCode { ext, preimage: SympSubspace::new(pre)? })
    }

    pub fn from_rows<R: AsRef<[Elem]>>(ext: &FieldSpec, n: usize, rows: &[R]) -> Result<Self> {
        Self::new(&Matrix::from_rows(ext, n, rows)?)
    }

    /// φ(S) for an F_q-subspace S ⊆ F_q^{2n}.
    pub fn from_preimage(ext: &FieldSpec, preimage: SympSubspace) -> Result<Self> {
        if ext.base()? != preimage.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(AdditiveCode { ext: ext.clone(), preimage })
    }

    pub fn zero(ext: &FieldSpec, n: usize) -> Result<Self> {
        Self::from_preimage(ext, SympSubspace::zero(ext.base()?, n))
    }

    pub fn full(ext: &FieldSpec, n: usize) -> Result<Self> {
        Self::from_preimage(ext, SympSubspace::full(ext.base()?, n))
    }

    pub fn ext(&self) -> &FieldSpec {
        &self.ext
    }

    pub fn base(&self) -> &FieldSpec {
        self.preimage.field()
    }

    pub fn q(&self) -> usize {
        self.base().order()
    }

    pub fn n(&self) -> usize {
        self.preimage.n()
    }

    /// Size exponent m, |C| = q^m.
    pub fn exponent(&self) -> usize {
        self.preimage.dim()
    }

    pub fn preimage(&self) -> &SympSubspace {
        &self.preimage
    }

    /// Generator matrix over GF(q²), one row per preimage basis vector.
    pub fn generators(&self) -> Matrix {
        self.map_rows(self.preimage.basis())
    }

    fn map_rows(&self, pre: &Matrix) -> Matrix {
        let n = self.n();
        let mut data = Vec::with_capacity(pre.rows() * n);
        for r in pre.iter_rows() {
            data.extend(phi_raw(&self.ext, r));
        }
        Matrix::new(&self.ext, pre.rows(), n, data).expect("phi image shape")
    }

    fn with_preimage(&self, preimage: SympSubspace) -> AdditiveCode {
        AdditiveCode { ext: self.ext.clone(), preimage }
    }

    fn check(&self, other: &AdditiveCode) -> Result<()> {
        if self.ext != other.ext {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::AmbientMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }

    pub fn contains(&self, other: &AdditiveCode) -> Result<bool> {
        self.check(other)?;
        self.preimage.contains(&other.preimage)
    }

    pub fn contains_word(&self, w: &[Elem]) -> Result<bool> {
        if w.len() != self.n() {
            return Err(Error::DimensionMismatch { left: w.len(), right: self.n() });
        }
        Ok(self.preimage.contains_vector(&phi_inv_raw(&self.ext, w)))
    }

    pub fn sum(&self, other: &AdditiveCode) -> Result<AdditiveCode> {
        self.check(other)?;
        Ok(self.with_preimage(self.preimage.sum(&other.preimage)?))
    }

    pub fn intersect(&self, other: &AdditiveCode) -> Result<AdditiveCode> {
        self.check(other)?;
        Ok(self.with_preimage(self.preimage.intersect(&other.preimage)?))
    }

    pub fn dual(&self, form: DualityForm) -> AdditiveCode {
        match form {
            DualityForm::Alternating => self.with_preimage(self.preimage.dual()),
            DualityForm::Trace => {
                let ext = self.ext.clone();
                let basis = linalg::form_complement(self.preimage.basis(), |x, y| {
                    let h = hermitian_raw(&ext, &phi_raw(&ext, x), &phi_raw(&ext, y));
                    ext.rel_trace(h).expect("quadratic extension")
                });
                self.with_preimage(SympSubspace::new(basis).expect("even width"))
            }
        }
    }

    pub fn radical(&self, form: DualityForm) -> AdditiveCode {
        self.intersect(&self.dual(form)).expect("same ambient")
    }

    /// C = R ⊕ C_e with R the radical and C_e an ACD complement.
    pub fn radical_decompose(&self, form: DualityForm) -> CodeDecomposition {
        match form {
            DualityForm::Alternating => {
                let d = decompose(&self.preimage);
                let radical = SympSubspace::new(d.radical.clone()).expect("even width");
                let complement = SympSubspace::new(d.pair_matrix()).expect("even width");
                CodeDecomposition {
                    form,
                    l: radical.dim(),
                    complement_exponent: complement.dim(),
                    radical: self.with_preimage(radical),
                    complement: self.with_preimage(complement),
                }
            }
            DualityForm::Trace => {
                // any complement of the radical is non-degenerate
                let r = self.radical(form);
                let stacked = r.preimage.basis().vstack(self.preimage.basis()).expect("same width");
                let ind = stacked.independent_rows();
                let rest: Vec<usize> = (r.exponent()..ind.rows()).collect();
                let complement = SympSubspace::new(ind.select_rows(&rest)).expect("even width");
                CodeDecomposition {
                    form,
                    l: r.exponent(),
                    complement_exponent: complement.dim(),
                    radical: r,
                    complement: self.with_preimage(complement),
                }
            }
        }
    }

    pub fn is_acd(&self, form: DualityForm) -> bool {
        self.radical(form).exponent() == 0
    }

    pub fn is_self_orthogonal(&self, form: DualityForm) -> bool {
        match form {
            DualityForm::Alternating => self.preimage.is_totally_isotropic(),
            DualityForm::Trace => self.radical(form).exponent() == self.exponent(),
        }
    }

    pub fn is_dual_containing(&self, form: DualityForm) -> bool {
        self.contains(&self.dual(form)).expect("same ambient")
    }

    /// First pair of generator rows (0-based) that are not orthogonal under
    /// the form, including a row with itself.
    pub fn non_orthogonal_pair(&self, form: DualityForm) -> Option<(usize, usize)> {
        let g = self.generators();
        let f = match form {
            DualityForm::Alternating => InnerForm::Alternating,
            DualityForm::Trace => InnerForm::Trace,
        };
        for i in 0..g.rows() {
            for j in i..g.rows() {
                if inner(&self.ext, g.row(i), g.row(j), f).expect("valid code") != 0 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn min_weight(&self, budget: u128) -> Result<MinWeight> {
        self.min_weight_with(Strategy::Full, budget)
    }

    pub fn min_weight_with(&self, strategy: Strategy, budget: u128) -> Result<MinWeight> {
        search(&Matrix::empty(self.base(), 2 * self.n()), self.preimage.basis(), strategy, budget)
    }

    /// Minimum weight over `self \ sub`. Requires `sub ⊆ self`.
    pub fn min_weight_excluding(&self, sub: &AdditiveCode, budget: u128) -> Result<MinWeight> {
        self.min_weight_excluding_with(sub, Strategy::Full, budget)
    }

    pub fn min_weight_excluding_with(&self, sub: &AdditiveCode, strategy: Strategy, budget: u128) -> Result<MinWeight> {
        if !self.contains(sub)? {
            return Err(Error::PreconditionFailed("excluded code is not contained in the searched code".into()));
        }
        let fixed = sub.preimage.basis();
        let ind = fixed.vstack(self.preimage.basis())?.independent_rows();
        let free = ind.select_rows(&(fixed.rows()..ind.rows()).collect::<Vec<_>>());
        search(fixed, &free, strategy, budget)
    }

    /// Delete the given 0-based coordinates.
    pub fn puncture(&self, coords: &[usize]) -> Result<AdditiveCode> {
        Ok(self.with_preimage(self.preimage.puncture(coords)?))
    }

    pub fn to_text(&self) -> String {
        let h = Header::new(
            "code",
            &[("q2", self.ext.order().to_string()), ("n", self.n().to_string()), ("m", self.exponent().to_string())],
        );
        text::write_matrix(&self.generators(), &[h])
    }

    /// Parse a generator matrix over GF(q²). A `#code` header, when present,
    /// must agree with the parsed code.
    pub fn from_text(src: &str) -> Result<Self> {
        let file = text::parse_matrix(src)?;
        let code = AdditiveCode::new(&file.matrix)?;
        if let Some(h) = file.header("code") {
            let checks = [("q2", code.ext.order()), ("n", code.n()), ("m", code.exponent())];
            for (key, actual) in checks {
                if let Some(declared) = h.get_usize(key) {
                    if declared != actual {
                        return Err(Error::Parse {
                            line: 0,
                            message: format!("header declares {key}={declared} but the matrix gives {actual}"),
                        });
                    }
                }
            }
        }
        Ok(code)
    }

    pub fn read(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let src = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_text(&src)
    }
}

#[derive(Debug, Clone)]
pub struct CodeDecomposition {
    pub form: DualityForm,
    pub radical: AdditiveCode,
    pub complement: AdditiveCode,
    pub l: usize,
    pub complement_exponent: usize,
}

impl CodeDecomposition {
    /// Half the complement exponent; `None` when it is odd, which can only
    /// happen for the trace form in odd characteristic.
    pub fn c(&self) -> Option<usize> {
        (self.complement_exponent % 2 == 0).then_some(self.complement_exponent / 2)
    }

    /// R + C_e = C, R ∩ C_e = {0}, R = radical(C) and C_e is ACD.
    pub fn verify(&self, code: &AdditiveCode) -> bool {
        let sum = self.radical.sum(&self.complement);
        let meet = self.radical.intersect(&self.complement);
        matches!(sum, Ok(s) if &s == code)
            && matches!(meet, Ok(m) if m.exponent() == 0)
            && self.radical == code.radical(self.form)
            && self.complement.is_acd(self.form)
    }
}

/// An F_{q²}-linear code, stored by the RREF of its generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gens: Matrix,
}

impl LinearCode {
    pub fn new(gens: &Matrix) -> Result<Self> {
        if !gens.field().is_quadratic_extension() {
            return Err(Error::NotQuadraticExtension(gens.field().describe()));
        }
        Ok(LinearCode { gens: gens.row_space() })
    }

    pub fn from_rows<R: AsRef<[Elem]>>(ext: &FieldSpec, n: usize, rows: &[R]) -> Result<Self> {
        Self::new(&Matrix::from_rows(ext, n, rows)?)
    }

    /// The additive code as a linear one, if it is closed under GF(q²) scaling.
    pub fn from_additive(code: &AdditiveCode) -> Result<Self> {
        let lin = LinearCode::new(&code.generators())?;
        if 2 * lin.dim() != code.exponent() {
            return Err(Error::PreconditionFailed("code is not closed under GF(q^2) scalars".into()));
        }
        Ok(lin)
    }

    pub fn ext(&self) -> &FieldSpec {
        self.gens.field()
    }

    pub fn n(&self) -> usize {
        self.gens.cols()
    }

    pub fn dim(&self) -> usize {
        self.gens.rows()
    }

    pub fn generators(&self) -> &Matrix {
        &self.gens
    }

    /// The same code viewed additively: rows g and βg for each generator g.
    pub fn additive(&self) -> AdditiveCode {
        let ext = self.ext();
        let beta = ext.beta().expect("quadratic extension");
        let mut m = self.gens.clone();
        for r in self.gens.iter_rows() {
            m.push_row(&linalg::scale(ext, r, beta)).expect("same width");
        }
        AdditiveCode::new(&m).expect("quadratic extension")
    }

    fn conjugated(&self) -> Matrix {
        let ext = self.ext();
        let data = self.gens.data().iter().map(|&x| ext.conj_fast(x)).collect();
        Matrix::new(ext, self.gens.rows(), self.n(), data).expect("same shape")
    }

    pub fn hermitian_dual(&self) -> LinearCode {
        let k = self.conjugated().kernel();
        let gens = if k.rows() == 0 { Matrix::empty(self.ext(), self.n()) } else { k.row_space() };
        LinearCode { gens }
    }

    pub fn hermitian_radical(&self) -> LinearCode {
        let dual = self.hermitian_dual();
        LinearCode { gens: linalg::intersect(&self.gens, &dual.gens).expect("same width").row_space() }
    }

    pub fn is_hermitian_lcd(&self) -> bool {
        self.hermitian_radical().dim() == 0
    }

    pub fn is_hermitian_self_orthogonal(&self) -> bool {
        let ext = self.ext();
        let rows: Vec<&[Elem]> = self.gens.iter_rows().collect();
        rows.iter().all(|u| rows.iter().all(|v| hermitian_raw(ext, u, v) == 0))
    }

    pub fn puncture(&self, coords: &[usize]) -> Result<LinearCode> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.n()) {
            return Err(Error::IndexOutOfRange { index: bad, len: self.n() });
        }
        let keep: Vec<usize> = (0..self.n()).filter(|j| !coords.contains(j)).collect();
        let sel = self.gens.select_cols(&keep);
        let gens = if sel.rows() == 0 { sel } else { sel.row_space() };
        Ok(LinearCode { gens })
    }

    pub fn min_weight(&self, budget: u128) -> Result<MinWeight> {
        self.additive().min_weight(budget)
    }
}
