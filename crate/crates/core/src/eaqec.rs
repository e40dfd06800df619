//! Stabilizer and entanglement-assisted code parameters, matching
//! classification for sender/receiver code pairs, and the combination
//! constructions built on additive codes.
//!
//! All parameter derivations use the alternating form: the EA parameters of
//! an additive code C = φ(S) are
//!
//! ```text
//! l = dim rad(C),  c = (m − l)/2,  k = n − c − l,
//! d_ea = min wt over C^⊥ \ rad(C).
//! ```

use std::fmt;

use crate::addcodes::{AdditiveCode, DualityForm, LinearCode, MinWeight, Strategy, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linalg::Matrix;

const FORM: DualityForm = DualityForm::Alternating;

/// How minimum distances are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u128,
    pub strategy: Strategy,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, strategy: Strategy::Full }
    }
}

fn fmt_d(d: Option<usize>) -> String {
    d.map(|d| format!(",{d}")).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QECCParams {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
}

impl QECCParams {
    pub fn new(q: usize, n: usize, k: usize, d: Option<usize>) -> Result<Self> {
        if k > n {
            return Err(Error::Range(format!("k = {k} exceeds n = {n}")));
        }
        if let Some(d) = d {
            if d == 0 || d > n {
                return Err(Error::Range(format!("d = {d} outside 1..={n}")));
            }
        }
        Ok(QECCParams { q, n, k, d })
    }
}

impl fmt::Display for QECCParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}{}]]_{}", self.n, self.k, fmt_d(self.d), self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EAQECCParams {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub c: usize,
    /// Radical exponent, n − k − c.
    pub l: usize,
}

impl EAQECCParams {
    pub fn new(q: usize, n: usize, k: usize, d: Option<usize>, c: usize) -> Result<Self> {
        let l = n
            .checked_sub(k + c)
            .ok_or_else(|| Error::Range(format!("k + c = {} exceeds n = {n}", k + c)))?;
        if let Some(d) = d {
            if d == 0 || d > n {
                return Err(Error::Range(format!("d = {d} outside 1..={n}")));
            }
        }
        Ok(EAQECCParams { q, n, k, d, c, l })
    }

    /// Exponent of the EA-stabilizer image, l + 2c.
    pub fn m(&self) -> usize {
        self.l + 2 * self.c
    }
}

impl fmt::Display for EAQECCParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}{};{}]]_{}", self.n, self.k, fmt_d(self.d), self.c, self.q)
    }
}

/// Matching level of a sender/receiver pair, as independent flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MatchClass {
    /// k_b ≥ c.
    pub matching: bool,
    /// Matching with d_b ≥ 3.
    pub faithful: bool,
    /// k_b = c.
    pub properly: bool,
}

impl fmt::Display for MatchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.matching {
            return write!(f, "none");
        }
        write!(f, "{}", if self.properly { "properly-matching" } else { "matching" })?;
        if self.faithful {
            write!(f, "+faithful")?;
        }
        Ok(())
    }
}

pub fn classify_match(alice: &EAQECCParams, bob: &QECCParams) -> Result<MatchClass> {
    if alice.q != bob.q {
        return Err(Error::FieldMismatch);
    }
    let matching = bob.k >= alice.c;
    Ok(MatchClass {
        matching,
        faithful: matching && bob.d.is_some_and(|d| d >= 3),
        properly: bob.k == alice.c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombinationParams {
    pub alice: EAQECCParams,
    pub bob: QECCParams,
    pub class: MatchClass,
}

impl CombinationParams {
    pub fn new(alice: EAQECCParams, bob: QECCParams) -> Result<Self> {
        let class = classify_match(&alice, &bob)?;
        Ok(CombinationParams { alice, bob, class })
    }
}

impl fmt::Display for CombinationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.alice, self.bob)
    }
}

/// EA parameters of a code together with the raw search result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Analysis {
    pub params: EAQECCParams,
    pub m: usize,
    pub distance: Option<MinWeight>,
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        if p.c == 0 {
            write!(f, "{} c=0", QECCParams { q: p.q, n: p.n, k: p.k, d: p.d })?;
        } else {
            write!(f, "{}", p)?;
        }
        write!(f, " l={} m={}", p.l, self.m)?;
        if let Some(w) = &self.distance {
            if !w.is_defined() {
                write!(f, " d=undefined")?;
            }
        }
        Ok(())
    }
}

pub fn analyze(code: &AdditiveCode, search: Option<SearchOptions>) -> Result<Analysis> {
    let radical = code.radical(FORM);
    let m = code.exponent();
    let l = radical.exponent();
    if (m - l) % 2 != 0 {
        return Err(Error::ParityViolation(m - l));
    }
    let c = (m - l) / 2;
    let n = code.n();
    let distance = match search {
        Some(o) => Some(code.dual(FORM).min_weight_excluding_with(&radical, o.strategy, o.budget)?),
        None => None,
    };
    let params = EAQECCParams { q: code.q(), n, k: n - c - l, d: distance.and_then(|w| w.value()), c, l };
    Ok(Analysis { params, m, distance })
}

pub fn eaqec_params(code: &AdditiveCode, search: Option<SearchOptions>) -> Result<EAQECCParams> {
    Ok(analyze(code, search)?.params)
}

/// Parameters of the stabilizer code of a self-orthogonal additive code.
pub fn stabilizer_params(code: &AdditiveCode, search: Option<SearchOptions>) -> Result<QECCParams> {
    if let Some((i, j)) = code.non_orthogonal_pair(FORM) {
        return Err(Error::NotSelfOrthogonal(i, j));
    }
    let d = match search {
        Some(o) => code.dual(FORM).min_weight_excluding_with(code, o.strategy, o.budget)?.value(),
        None => None,
    };
    Ok(QECCParams { q: code.q(), n: code.n(), k: code.n() - code.exponent(), d })
}

/// Sender code C_alice with receiver stabilizer code C_bob protecting the ebits.
pub fn combine_neb(alice: &AdditiveCode, bob: &AdditiveCode, search: Option<SearchOptions>) -> Result<CombinationParams> {
    let b = stabilizer_params(bob, search)?;
    let a = eaqec_params(alice, search)?;
    if alice.q() != bob.q() {
        return Err(Error::FieldMismatch);
    }
    if a.c > b.k {
        return Err(Error::InsufficientProtection { ebits: a.c, logical: b.k });
    }
    CombinationParams::new(a, b)
}

/// The linear version: D an [n,u] code with Hermitian radical of dimension r,
/// D_b a Hermitian self-orthogonal [m,v] code.
pub fn linear_formulation(d: &LinearCode, db: &LinearCode, search: Option<SearchOptions>) -> Result<CombinationParams> {
    if d.ext() != db.ext() {
        return Err(Error::FieldMismatch);
    }
    if !db.is_hermitian_self_orthogonal() {
        let g = db.generators();
        let ext = db.ext();
        for i in 0..g.rows() {
            for j in i..g.rows() {
                let h = crate::addcodes::inner(ext, g.row(i), g.row(j), crate::addcodes::InnerForm::Hermitian)?;
                if h != 0 {
                    return Err(Error::NotSelfOrthogonal(i, j));
                }
            }
        }
    }
    let q = d.ext().base()?.order();
    let (n, u, r) = (d.n(), d.dim(), d.hermitian_radical().dim());
    let (m, v) = (db.n(), db.dim());
    let c = u - r;
    let kb = m - 2 * v;
    if c > kb {
        return Err(Error::InsufficientProtection { ebits: c, logical: kb });
    }
    let d_ea = match search {
        Some(_) => eaqec_params(&d.additive(), search)?.d,
        None => None,
    };
    let d_b = match search {
        Some(_) => stabilizer_params(&db.additive(), search)?.d,
        None => None,
    };
    let alice = EAQECCParams { q, n, k: n - c - 2 * r, d: d_ea, c, l: 2 * r };
    let bob = QECCParams { q, n: m, k: kb, d: d_b };
    CombinationParams::new(alice, bob)
}

/// Ground truth for the block construction M = [[G, 0], [G2, E]].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinationReport {
    /// EA parameters of M from its own decomposition.
    pub params: EAQECCParams,
    pub exponent: usize,
    /// Exponents of span(G) and span(G2|E).
    pub declared_l: usize,
    pub declared_2c: usize,
    /// rad(M) = span(G|0).
    pub radical_matches: bool,
    /// min wt of D = span(G) + span(G2) over length n.
    pub d1: MinWeight,
    /// min wt of span(E) over length m.
    pub d2: MinWeight,
    /// min wt of span(G2|E).
    pub complement_weight: MinWeight,
    /// complement weight ≥ d1 + d2, when all three are defined.
    pub complement_bound: Option<bool>,
    /// d_ea(M) ≥ d1 + d2, when all are defined.
    pub claim_holds: Option<bool>,
    /// (n + m) − l − k with the ground-truth l and k.
    pub statement_c: i64,
}

impl CombinationReport {
    pub fn c_identity_holds(&self) -> bool {
        self.statement_c == self.params.c as i64
    }
}

impl fmt::Display for CombinationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_else(|| "undefined".into());
        let p = &self.params;
        writeln!(f, "params={p}")?;
        writeln!(f, "n={}", p.n)?;
        writeln!(f, "k={}", p.k)?;
        writeln!(f, "d_ea={}", p.d.map(|d| d.to_string()).unwrap_or_else(|| "undefined".into()))?;
        writeln!(f, "c={}", p.c)?;
        writeln!(f, "l={}", p.l)?;
        writeln!(f, "exponent={}", self.exponent)?;
        writeln!(f, "declared_l={}", self.declared_l)?;
        writeln!(f, "declared_2c={}", self.declared_2c)?;
        writeln!(f, "radical_matches={}", self.radical_matches)?;
        writeln!(f, "d1={}", self.d1)?;
        writeln!(f, "d2={}", self.d2)?;
        writeln!(f, "complement_weight={}", self.complement_weight)?;
        writeln!(f, "complement_bound={}", opt(self.complement_bound))?;
        writeln!(f, "claim_d_ea_ge_d1_plus_d2={}", opt(self.claim_holds))?;
        writeln!(f, "statement_c={}", self.statement_c)?;
        write!(f, "c_identity_holds={}", self.c_identity_holds())
    }
}

fn add_bound(x: &MinWeight, y: &MinWeight, z: Option<usize>) -> Option<bool> {
    Some(z? >= x.value()? + y.value()?)
}

/// Build M from G (l×n), G2 (2c×n) and E (2c×m), all over GF(q²).
pub fn combine_construct(
    g: &Matrix,
    g2: &Matrix,
    e: &Matrix,
    search: SearchOptions,
) -> Result<(AdditiveCode, CombinationReport)> {
    let ext = g.field();
    if g2.field() != ext || e.field() != ext {
        return Err(Error::FieldMismatch);
    }
    if g2.cols() != g.cols() {
        return Err(Error::DimensionMismatch { left: g.cols(), right: g2.cols() });
    }
    if e.rows() != g2.rows() {
        return Err(Error::DimensionMismatch { left: g2.rows(), right: e.rows() });
    }
    let (n, m) = (g.cols(), e.cols());
    let c_code = AdditiveCode::new(g)?;
    let d_code = c_code.sum(&AdditiveCode::new(g2)?)?;
    if !c_code.dual(FORM).contains(&d_code)? {
        return Err(Error::PreconditionFailed("span(G) + span(G2) is not contained in span(G)^perp".into()));
    }
    let top = g.hstack(&Matrix::zeros(ext, g.rows(), m))?;
    let bottom = g2.hstack(e)?;
    let top_code = AdditiveCode::new(&top)?;
    let complement = AdditiveCode::new(&bottom)?;
    if !complement.is_acd(FORM) {
        return Err(Error::PreconditionFailed("(G2 | E) does not generate an ACD code".into()));
    }
    let stacked = top.vstack(&bottom)?;
    let code = AdditiveCode::new(&stacked)?;
    let a = analyze(&code, Some(search))?;
    let radical_matches = code.radical(FORM) == top_code;
    let d1 = d_code.min_weight_with(search.strategy, search.budget)?;
    let d2 = AdditiveCode::new(e)?.min_weight_with(search.strategy, search.budget)?;
    let cw = complement.min_weight_with(search.strategy, search.budget)?;
    let p = a.params;
    let report = CombinationReport {
        params: p,
        exponent: a.m,
        declared_l: top_code.exponent(),
        declared_2c: complement.exponent(),
        radical_matches,
        complement_bound: add_bound(&d1, &d2, cw.value()),
        claim_holds: add_bound(&d1, &d2, p.d),
        d1,
        d2,
        complement_weight: cw,
        statement_c: (n + m) as i64 - p.l as i64 - p.k as i64,
    };
    Ok((code, report))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctureReport {
    /// Stabilizer code of the unpunctured code.
    pub source: QECCParams,
    pub params: EAQECCParams,
    pub requested_c: usize,
    pub achieved_c: usize,
    /// Exponent of the punctured code against the lower bound 2(u − c).
    pub punctured_exponent: usize,
    /// c' = c and k = N − 2u.
    pub equivalent: bool,
}

/// Puncture a Hermitian self-orthogonal [N,u] code on its last c coordinates.
pub fn puncture_to_eaqecc(code: &LinearCode, c: usize, search: Option<SearchOptions>) -> Result<PunctureReport> {
    let (big_n, u) = (code.n(), code.dim());
    if c == 0 || c > u {
        return Err(Error::Range(format!("c = {c} must satisfy 0 < c <= u = {u}")));
    }
    let additive = code.additive();
    let source = stabilizer_params(&additive, search)?;
    let coords: Vec<usize> = (big_n - c..big_n).collect();
    let punctured = additive.puncture(&coords)?;
    let params = eaqec_params(&punctured, search)?;
    Ok(PunctureReport {
        source,
        requested_c: c,
        achieved_c: params.c,
        punctured_exponent: punctured.exponent(),
        equivalent: params.c == c && params.k == big_n - 2 * u,
        params,
    })
}

fn ea(q: usize, n: usize, k: usize, d: usize, c: usize) -> EAQECCParams {
    EAQECCParams::new(q, n, k, Some(d), c).expect("table entry")
}

fn qecc(q: usize, n: usize, k: usize, d: usize) -> QECCParams {
    QECCParams::new(q, n, k, Some(d)).expect("table entry")
}

/// The binary families for a family parameter `m ≥ 2`.
pub fn binary_family(m: usize) -> Vec<CombinationParams> {
    let rows = [
        (ea(2, 4 * m, 1, 2 * m + 1, 1), qecc(2, 5, 1, 3)),
        (ea(2, 4 * m + 1, 1, 2 * m + 3, 4), qecc(2, 10, 4, 3)),
        (ea(2, 4 * m + 2, 1, 2 * m + 3, 3), qecc(2, 8, 3, 3)),
        (ea(2, 4 * m + 3, 1, 2 * m + 3, 2), qecc(2, 8, 2, 3)),
    ];
    rows.into_iter().map(|(a, b)| CombinationParams::new(a, b).expect("same q")).collect()
}

/// The fixed binary list.
pub fn binary_sporadic() -> Vec<CombinationParams> {
    let rows = [
        (ea(2, 7, 2, 5, 5), qecc(2, 11, 5, 3)),
        (ea(2, 8, 2, 5, 4), qecc(2, 10, 4, 3)),
        (ea(2, 9, 2, 5, 3), qecc(2, 8, 3, 3)),
        (ea(2, 10, 2, 6, 4), qecc(2, 10, 4, 3)),
        (ea(2, 9, 3, 6, 6), qecc(2, 12, 6, 3)),
        (ea(2, 13, 3, 9, 10), qecc(2, 16, 10, 3)),
        (ea(2, 12, 4, 7, 8), qecc(2, 14, 8, 3)),
    ];
    rows.into_iter().map(|(a, b)| CombinationParams::new(a, b).expect("same q")).collect()
}

/// The ternary list.
pub fn ternary_list() -> Vec<CombinationParams> {
    let rows = [
        (ea(3, 11, 1, 7, 2), qecc(3, 6, 2, 3)),
        (ea(3, 26, 2, 11, 2), qecc(3, 6, 2, 3)),
        (ea(3, 28, 2, 11, 4), qecc(3, 8, 4, 3)),
        (ea(3, 14, 2, 9, 6), qecc(3, 10, 6, 3)),
        (ea(3, 28, 2, 13, 6), qecc(3, 10, 6, 3)),
    ];
    rows.into_iter().map(|(a, b)| CombinationParams::new(a, b).expect("same q")).collect()
}

/// Binary families for m ∈ {2,3,4}, then the binary sporadic list, then the
/// ternary list. Distances are the declared values, not recomputed.
pub fn combination_tables() -> Vec<CombinationParams> {
    let mut out: Vec<CombinationParams> = (2..=4).flat_map(binary_family).collect();
    out.extend(binary_sporadic());
    out.extend(ternary_list());
    out
}

pub const TABLE_HEADER: &str = "q,n,k,d,c,m,kb,db,match";

pub fn table_row(p: &CombinationParams) -> String {
    let opt = |d: Option<usize>| d.map(|d| d.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{}",
        p.alice.q,
        p.alice.n,
        p.alice.k,
        opt(p.alice.d),
        p.alice.c,
        p.bob.n,
        p.bob.k,
        opt(p.bob.d),
        p.class
    )
}

pub fn tables_csv(entries: &[CombinationParams]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for e in entries {
        out.push_str(&table_row(e));
        out.push('\n');
    }
    out
}

/// Additive code over GF(q²) from a preimage with l radical and c pair
/// dimensions, for tests and demos.
pub fn random_ea_code<R: rand::Rng + ?Sized>(
    ext: &FieldSpec,
    n: usize,
    l: usize,
    c: usize,
    rng: &mut R,
) -> Result<AdditiveCode> {
    let s = crate::symplectic::random_subspace(ext.base()?, n, l, c, rng)?;
    AdditiveCode::from_preimage(ext, s)
}
