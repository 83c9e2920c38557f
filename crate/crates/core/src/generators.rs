//! Explicit generating sets of Q_m(3, F_2) and Q_m(3, F_3), a degree-wise
//! freeness check against the oracle, and labels for cyclic S3-modules.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Mutex;

use crate::coeff::{ff_inv, PrimeField, Ring};
use crate::dense::{self, Form, SymmetricMultiples};
use crate::error::{Error, Result};
use crate::hilbert::{series_of_free_module, TruncatedSeries};
use crate::linalg::{kernel_mod_p, Echelon, Insert};
use crate::poly::{linear_difference, parse_poly, vandermonde, Monomial, Perm, Poly};
use crate::quasi::{
    check_homogeneous, component_basis, eigen_component, is_m_quasi_invariant, products_in_degree,
    witness_from, QuasiOrder,
};
use crate::renxu;

/// Isomorphism types of the small S3-modules in characteristics 2 and 3.
///
/// Hyphenated names list the composition factors from head to socle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepLabel {
    Triv,
    Sign,
    Std,
    TrivTriv,
    SignTriv,
    TrivSign,
    TrivSignTriv,
    SignTrivSign,
    /// Composition factors of a module with more than one summand.
    Decomposable(Vec<RepLabel>),
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RepLabel::Triv => "triv",
            RepLabel::Sign => "sign",
            RepLabel::Std => "std",
            RepLabel::TrivTriv => "triv-triv",
            RepLabel::SignTriv => "sign-triv",
            RepLabel::TrivSign => "triv-sign",
            RepLabel::TrivSignTriv => "triv-sign-triv",
            RepLabel::SignTrivSign => "sign-triv-sign",
            RepLabel::Decomposable(parts) => {
                let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
                return write!(f, "decomposable{{{}}}", names.join(","));
            }
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub poly: Poly<PrimeField>,
    pub degree: u32,
    pub rep: RepLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub m: QuasiOrder,
    pub entries: Vec<GeneratorEntry>,
    /// Largest degree through which free generation has been checked.
    pub verified_to: Option<u32>,
}

impl GeneratorSet {
    pub fn p(&self) -> u64 {
        self.m.characteristic()
    }

    /// Wraps arbitrary homogeneous polynomials, labelling each by its orbit.
    pub fn from_polys(m: QuasiOrder, polys: Vec<Poly<PrimeField>>) -> Result<Self> {
        let field = m.field()?;
        let mut entries = Vec::with_capacity(polys.len());
        for poly in polys {
            if poly.ring() != &field {
                return Err(Error::RingMismatch(poly.ring().name(), field.name()));
            }
            let degree = check_homogeneous(&poly)?
                .ok_or_else(|| Error::Contract("a generator is zero".into()))?;
            let rep = classify_module(&poly)?.label;
            entries.push(GeneratorEntry { poly, degree, rep });
        }
        Ok(GeneratorSet {
            m,
            entries,
            verified_to: None,
        })
    }

    /// Module generators over the symmetric polynomials: the entries, plus
    /// s23 of every std entry, whose orbit spans two dimensions.
    pub fn module_generators(&self) -> Vec<Poly<PrimeField>> {
        let s23 = Perm::transposition(2, 3);
        let mut out = Vec::new();
        for e in &self.entries {
            out.push(e.poly.clone());
            if e.rep == RepLabel::Std {
                out.push(e.poly.permute(&s23));
            }
        }
        out
    }

    pub fn module_degrees(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for e in &self.entries {
            out.push(e.degree);
            if e.rep == RepLabel::Std {
                out.push(e.degree);
            }
        }
        out.sort_unstable();
        out
    }

    /// Runs the freeness check and records the degree on success.
    pub fn verify(&mut self, max_degree: u32) -> Result<FreenessReport> {
        let report = verify_free_generation(self, max_degree)?;
        if report.is_success() {
            self.verified_to = Some(max_degree);
        }
        Ok(report)
    }
}

/// Named polynomials over F_p.
#[derive(Clone, Debug)]
pub struct SpecialPolys {
    pub delta: Poly<PrimeField>,
    /// x1^2 x2 + x2^2 x3 + x3^2 x1, for p = 2.
    pub e_triv_triv: Option<Poly<PrimeField>>,
    /// -x1^2 x2 - x1^2 x3 + x1 x2^2 + x1 x3^2, for p = 3.
    pub e: Option<Poly<PrimeField>>,
    /// (x1 - x2) x1 x2, for p = 3.
    pub f: Option<Poly<PrimeField>>,
}

pub fn special_polys(p: u64) -> Result<SpecialPolys> {
    let field = PrimeField::new(p)?;
    let parse = |s: &str| parse_poly(s, &field).expect("well-formed constant");
    Ok(SpecialPolys {
        delta: vandermonde(&field),
        e_triv_triv: (p == 2).then(|| parse("x1^2*x2 + x2^2*x3 + x3^2*x1")),
        e: (p == 3).then(|| parse("-x1^2*x2 - x1^2*x3 + x1*x2^2 + x1*x3^2")),
        f: (p == 3).then(|| parse("x1^2*x2 - x1*x2^2")),
    })
}

fn entry(m: &QuasiOrder, poly: Poly<PrimeField>) -> Result<GeneratorEntry> {
    if !is_m_quasi_invariant(&poly, m)? {
        return Err(Error::Contract(format!("generator {poly} is not {m}-quasi-invariant")));
    }
    let degree = check_homogeneous(&poly)?.ok_or_else(|| Error::Contract("zero generator".into()))?;
    let rep = classify_module(&poly)?.label;
    Ok(GeneratorEntry { poly, degree, rep })
}

/// 1, E·Δ^(2m), G1 = (x1 - x2)^(2^(a+1)) and G2 = (x1 - x2)^(2^a) Δ^(2m+1-2^a)
/// with a the largest integer such that 2^a < 2m + 1.
pub fn char2_generator_set(m: &QuasiOrder) -> Result<GeneratorSet> {
    if m.characteristic() != 2 {
        return Err(Error::Unsupported(format!("char2 generators requested for {m} in characteristic {}", m.characteristic())));
    }
    let field = m.field()?;
    let sp = special_polys(2)?;
    let delta = &sp.delta;
    let diff = linear_difference(&field, 1, 2);
    let (g1, g2) = match renxu::char2_exponent(m) {
        None => (diff.clone(), diff.pow(2)),
        Some(a) => {
            let q = 1u32 << a;
            (diff.pow(2 * q), &diff.pow(q) * &delta.pow(m.r() - q))
        }
    };
    let e = sp.e_triv_triv.expect("defined for p = 2");
    let polys = vec![Poly::one(&field), &e * &delta.pow(m.twice_m()), g1, g2];
    Ok(GeneratorSet {
        m: *m,
        entries: polys.into_iter().map(|k| entry(m, k)).collect::<Result<_>>()?,
        verified_to: None,
    })
}

/// Coefficient vector of `k` in the descending graded-lex column order.
fn descending(d: u32, k: &Poly<PrimeField>) -> Result<Vec<u64>> {
    let mut v = Form::from_poly(k, d)?.coeffs;
    v.reverse();
    Ok(v)
}

fn normalize(k: Poly<PrimeField>) -> Poly<PrimeField> {
    match k.leading_term() {
        Some((_, &c)) => {
            let inv = ff_inv(c).expect("leading coefficient is nonzero");
            k.scale(&inv)
        }
        None => k,
    }
}

/// The solution T of (1 - s12)T = k, (1 - s23)T = 0 with every free
/// coordinate set to zero.
fn s23_invariant_preimage(k: &Poly<PrimeField>, d: u32) -> Result<Poly<PrimeField>> {
    let field = *k.ring();
    let p = field.modulus();
    let n = dense::monomial_count(d);
    let mons = Monomial::of_degree(d);
    let col = |mono: &Monomial| n - 1 - dense::index(d, mono.0[0], mono.0[1]);
    let target = descending(d, k)?;
    let mut ech = Echelon::with_aug(p, n, 1);
    for (s, rhs) in [(Perm::transposition(1, 2), true), (Perm::transposition(2, 3), false)] {
        for mono in &mons {
            let (a, b) = (col(mono), col(&s.act_monomial(mono)));
            let mut row = vec![0u64; n + 1];
            row[a] = 1;
            row[b] = (row[b] + p - 1) % p;
            row[n] = if rhs { target[a] } else { 0 };
            if let Insert::Dependent(res) = ech.insert(row) {
                if res[0] != 0 {
                    return Err(Error::Contract(format!("(1 - s12)T = {k} has no s23-invariant solution")));
                }
            }
        }
    }
    let mut sol = vec![0u64; n];
    for row in ech.rref_rows() {
        let piv = row[..n].iter().position(|&x| x != 0).expect("stored rows are nonzero");
        sol[piv] = row[n];
    }
    sol.reverse();
    Ok(Form { p, degree: d, coeffs: sol }.to_poly(&field))
}

/// 1, K, L, K1, L1, F·Δ^(2m): K spans the lowest s12-anti-invariant degree,
/// L the complementary degree modulo the symmetric multiples of K, and K1, L1
/// are s23-invariant with (1 - s12)K1 = K, (1 - s12)L1 = L.
pub fn char3_generator_set(m: &QuasiOrder) -> Result<GeneratorSet> {
    if m.characteristic() != 3 {
        return Err(Error::Unsupported(format!("char3 generators requested in characteristic {}", m.characteristic())));
    }
    if m.is_half_integer() {
        return Err(Error::InvalidOrder(format!("{m} is not an integer")));
    }
    let field = m.field()?;
    let p = field.modulus();
    let d_low = renxu::lowest_generator_degree(m)?;
    let d_high = m.top_degree() - d_low;

    let low = eigen_component(m, d_low, (1, 2), -1)?;
    let k = low
        .basis
        .first()
        .cloned()
        .ok_or_else(|| Error::Contract(format!("no s12-anti-invariant element in degree {d_low} for m = {m}")))?;

    let high = eigen_component(m, d_high, (1, 2), -1)?;
    let n = dense::monomial_count(d_high);
    let mut ech = Echelon::new(p, n);
    let multiples = SymmetricMultiples::new(&Form::from_poly(&k, d_low)?, d_high - d_low);
    // descending coordinates, so reduction clears leading monomials
    for form in multiples.level(d_high - d_low) {
        ech.insert(form.coeffs.iter().rev().copied().collect());
    }
    let mut l = None;
    for v in &high.basis {
        let mut coeffs = descending(d_high, v)?;
        ech.reduce(&mut coeffs);
        if coeffs.iter().any(|&x| x != 0) {
            coeffs.reverse();
            l = Some(normalize(Form { p, degree: d_high, coeffs }.to_poly(&field)));
            break;
        }
    }
    let l = l.ok_or_else(|| {
        Error::Contract(format!("degree {d_high} has no s12-anti-invariant element beyond the multiples of K"))
    })?;

    let k1 = s23_invariant_preimage(&k, d_low)?;
    let l1 = s23_invariant_preimage(&l, d_high)?;
    let sp = special_polys(3)?;
    let f_top = &sp.f.expect("defined for p = 3") * &sp.delta.pow(m.twice_m());
    let polys = vec![Poly::one(&field), k, l, k1, l1, f_top];
    Ok(GeneratorSet {
        m: *m,
        entries: polys.into_iter().map(|g| entry(m, g)).collect::<Result<_>>()?,
        verified_to: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    NotQuasiInvariant { index: usize },
    /// Σ P_i g_i = 0 over the module generators.
    Relation { degree: u32, coefficients: Vec<Poly<PrimeField>> },
    /// A basis element of the component outside the span.
    Spanning { degree: u32, missed: Poly<PrimeField> },
    Series { degree: u32, expected: u64, found: u64 },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::NotQuasiInvariant { index } => write!(f, "generator {index} is not quasi-invariant"),
            VerifyFailure::Relation { degree, coefficients } => {
                let parts: Vec<String> = coefficients.iter().map(ToString::to_string).collect();
                write!(f, "relation failure at degree {degree}: coefficients [{}]", parts.join(", "))
            }
            VerifyFailure::Spanning { degree, missed } => {
                write!(f, "spanning failure at degree {degree}: {missed} missed")
            }
            VerifyFailure::Series { degree, expected, found } => write!(
                f,
                "series failure at degree {degree}: free module gives {found}, oracle gives {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub max_degree: u32,
    pub module_degrees: Vec<u32>,
    /// Component dimensions from the oracle, degrees 0..=max_degree.
    pub empirical: TruncatedSeries,
    pub failure: Option<VerifyFailure>,
}

impl FreenessReport {
    pub fn is_success(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for FreenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "freely generated through degree {}", self.max_degree),
            Some(e) => write!(f, "{e}"),
        }
    }
}

/// Outcome of checking one degree: the oracle dimension and the first
/// failure, if any.
fn check_degree(
    m: &QuasiOrder,
    gens: &[Poly<PrimeField>],
    d: u32,
) -> Result<(u64, Option<VerifyFailure>)> {
    let field = m.field()?;
    let p = field.modulus();
    let degs: Vec<Option<u32>> = gens.iter().map(check_homogeneous).collect::<Result<_>>()?;
    let tagged: Vec<(Option<u32>, &Poly<PrimeField>)> = degs.into_iter().zip(gens).collect();
    let (vecs, labels) = products_in_degree(&tagged, d)?;
    let n = dense::monomial_count(d);
    let na = vecs.len();
    let mut ech = Echelon::with_aug(p, n, na);
    for (i, v) in vecs.into_iter().enumerate() {
        let mut row = v;
        row.resize(n + na, 0);
        row[n + i] = 1;
        if let Insert::Dependent(rel) = ech.insert(row) {
            let mut coefficients = witness_from(&field, &rel, &labels, gens.len(), false);
            if let Some(&lead) = coefficients.iter().find_map(|c| c.leading_term().map(|(_, v)| v)) {
                let inv = ff_inv(lead)?;
                coefficients.iter_mut().for_each(|c| *c = c.scale(&inv));
            }
            return Ok((0, Some(VerifyFailure::Relation { degree: d, coefficients })));
        }
    }
    let basis = component_basis(m, d)?;
    for b in &basis.basis {
        let mut v = Form::from_poly(b, d)?.coeffs;
        v.resize(n + na, 0);
        ech.reduce(&mut v);
        if v[..n].iter().any(|&x| x != 0) {
            return Ok((basis.dim() as u64, Some(VerifyFailure::Spanning { degree: d, missed: b.clone() })));
        }
    }
    Ok((basis.dim() as u64, None))
}

/// Checks degree by degree that the module generators are free over the
/// symmetric polynomials and span every graded component of the oracle.
///
/// Degrees run in parallel; the reported failure is the one of lowest degree.
pub fn verify_free_generation(gens: &GeneratorSet, max_degree: u32) -> Result<FreenessReport> {
    let m = gens.m;
    let module = gens.module_generators();
    let module_degrees = gens.module_degrees();
    let terms = max_degree as usize + 1;
    let empty = |failure| FreenessReport {
        max_degree,
        module_degrees: module_degrees.clone(),
        empirical: TruncatedSeries { coeffs: Vec::new() },
        failure: Some(failure),
    };
    for (index, e) in gens.entries.iter().enumerate() {
        if !is_m_quasi_invariant(&e.poly, &m)? {
            return Ok(empty(VerifyFailure::NotQuasiInvariant { index }));
        }
    }

    let first_bad = AtomicU32::new(u32::MAX);
    let results: Mutex<BTreeMap<u32, Result<(u64, Option<VerifyFailure>)>>> = Mutex::new(BTreeMap::new());
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(terms);
    std::thread::scope(|scope| {
        for t in 0..threads {
            let (module, first_bad, results) = (&module, &first_bad, &results);
            scope.spawn(move || {
                for d in (t as u32..=max_degree).step_by(threads) {
                    if d > first_bad.load(Ordering::Relaxed) {
                        break;
                    }
                    let r = check_degree(&m, module, d);
                    if !matches!(r, Ok((_, None))) {
                        first_bad.fetch_min(d, Ordering::Relaxed);
                    }
                    results.lock().expect("no poisoned lock").insert(d, r);
                }
            });
        }
    });

    let results = results.into_inner().expect("no poisoned lock");
    let mut dims = Vec::with_capacity(terms);
    for (_, r) in results {
        let (dim, failure) = r?;
        if let Some(failure) = failure {
            return Ok(FreenessReport {
                max_degree,
                module_degrees,
                empirical: TruncatedSeries { coeffs: dims },
                failure: Some(failure),
            });
        }
        dims.push(dim);
    }
    let empirical = TruncatedSeries { coeffs: dims };
    let predicted = series_of_free_module(&module_degrees, terms);
    let failure = (0..terms).find(|&d| predicted.coeff(d) != empirical.coeff(d)).map(|d| {
        VerifyFailure::Series {
            degree: d as u32,
            expected: empirical.coeff(d),
            found: predicted.coeff(d),
        }
    });
    Ok(FreenessReport {
        max_degree,
        module_degrees,
        empirical,
        failure,
    })
}

/// Dimensions describing the cyclic module spanned by the S3-orbit of K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub dim: usize,
    pub fixed_dim: usize,
    pub sign_dim: usize,
    pub label: RepLabel,
}

/// Orbit span of K in sparse monomial coordinates.
struct OrbitSpan {
    p: u64,
    index: BTreeMap<Monomial, usize>,
    basis: Vec<Poly<PrimeField>>,
}

impl OrbitSpan {
    fn new(k: &Poly<PrimeField>) -> Self {
        let p = k.ring().modulus();
        let orbit: Vec<Poly<PrimeField>> = Perm::all().iter().map(|s| k.permute(s)).collect();
        let mut index = BTreeMap::new();
        for g in &orbit {
            for (mono, _) in g.terms() {
                let next = index.len();
                index.entry(*mono).or_insert(next);
            }
        }
        let mut span = OrbitSpan { p, index, basis: Vec::new() };
        let mut ech = Echelon::new(p, span.index.len());
        for g in orbit {
            if ech.insert(span.coords(&g)) == Insert::Independent {
                span.basis.push(g);
            }
        }
        span
    }

    fn coords(&self, g: &Poly<PrimeField>) -> Vec<u64> {
        let mut v = vec![0u64; self.index.len()];
        for (mono, c) in g.terms() {
            v[self.index[mono]] = c.value();
        }
        v
    }

    /// Dimension of {v in span : s v = λ v for every (s, λ)}.
    fn eigen_dim(&self, conditions: &[(Perm, u64)]) -> usize {
        let p = self.p;
        let k = self.basis.len();
        let mut columns: Vec<Vec<u64>> = Vec::with_capacity(k);
        for b in &self.basis {
            let mut col = Vec::new();
            for (s, lambda) in conditions {
                let img = self.coords(&b.permute(s));
                let own = self.coords(b);
                col.extend(img.iter().zip(&own).map(|(&x, &y)| (x + (p - lambda % p) * y % p) % p));
            }
            columns.push(col);
        }
        let nrows = columns.first().map_or(0, Vec::len);
        let rows = (0..nrows).map(|r| columns.iter().map(|c| c[r]).collect::<Vec<u64>>());
        kernel_mod_p(p, k, rows).len()
    }
}

/// Labels the S3-module spanned by the orbit of K.
pub fn classify_module(k: &Poly<PrimeField>) -> Result<Classification> {
    if k.is_zero() {
        return Err(Error::Contract("cannot classify the zero module".into()));
    }
    let p = k.ring().modulus();
    if p != 2 && p != 3 {
        return Err(Error::Unsupported(format!("classification is tabulated for p = 2, 3 (got {p})")));
    }
    let span = OrbitSpan::new(k);
    let (s12, s23) = (Perm::transposition(1, 2), Perm::transposition(2, 3));
    let dim = span.basis.len();
    let fixed_dim = span.eigen_dim(&[(s12, 1), (s23, 1)]);
    let sign_dim = span.eigen_dim(&[(s12, p - 1), (s23, p - 1)]);
    let unclassified = || Error::Unclassified { dim, fixed_dim, sign_dim };
    use RepLabel::*;
    let label = if p == 2 {
        match (dim, fixed_dim) {
            (1, _) => Triv,
            (2, 0) => Std,
            (2, _) => TrivTriv,
            _ => return Err(unclassified()),
        }
    } else {
        // s12 has order 2, prime to 3, so its eigenspaces count the factors
        let trivs = span.eigen_dim(&[(s12, 1)]);
        let signs = dim - trivs;
        let mut factors = vec![Triv; trivs];
        factors.extend(vec![Sign; signs]);
        match (dim, fixed_dim, sign_dim) {
            (1, 1, _) => Triv,
            (1, _, 1) => Sign,
            (2, 1, 0) => SignTriv,
            (2, 0, 1) => TrivSign,
            (2, 1, 1) => Decomposable(factors),
            (3, 1, 0) if trivs == 2 => TrivSignTriv,
            (3, 0, 1) if signs == 2 => SignTrivSign,
            (3, f, s) if f + s >= 2 => Decomposable(factors),
            _ => return Err(unclassified()),
        }
    };
    Ok(Classification { dim, fixed_dim, sign_dim, label })
}
