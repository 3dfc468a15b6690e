//! Seeded verification suites over a descriptor, reported as [`RunReport`]s.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{basis_checks, eigenspace_check, helper_checks, theorem_checks};
use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalVector;
use crate::jordan::{axiom_checks, CubicDescriptor, CubicKind};
use crate::lie_g::{densify, g_bracket, g_cartan, sparsify, GAlgebra, GElement, Sparse};
use crate::lie_g3::{g3_bracket, g3_cartan, g3_killing, iso_23, iso_32, G3Algebra};
use crate::linalg::{is_positive_definite, Mat};
use crate::orthogonal::OrthogonalModel;
use crate::scalars::{Rational, Scalar};
use crate::schmid::{char_residuals, const_term_residuals, max_relative, table_matches_character_system, ComponentBundle};
use crate::whittaker::{constant_term_eval, pairing_tilde, LeviPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    #[serde(rename = "axioms")]
    Axioms,
    #[serde(rename = "jacobi")]
    Jacobi,
    #[serde(rename = "killing")]
    Killing,
    #[serde(rename = "cartan")]
    Cartan,
    #[serde(rename = "cayley")]
    Cayley,
    #[serde(rename = "iso32")]
    Iso32,
    #[serde(rename = "isoSO")]
    IsoSo,
    #[serde(rename = "schmid")]
    Schmid,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::Axioms, Suite::Jacobi, Suite::Killing, Suite::Cartan, Suite::Cayley, Suite::Iso32, Suite::IsoSo, Suite::Schmid];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Jacobi => "jacobi",
            Suite::Killing => "killing",
            Suite::Cartan => "cartan",
            Suite::Cayley => "cayley",
            Suite::Iso32 => "iso32",
            Suite::IsoSo => "isoSO",
            Suite::Schmid => "schmid",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub suite: Suite,
    pub descriptor: String,
    pub level: Level,
    pub seed: u64,
    pub attempted: u64,
    pub passed: u64,
    /// Largest residual seen; 0 for suites checked in exact arithmetic.
    pub max_residual: f64,
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall-clock time; left out of the JSON unless explicitly kept, so that
    /// identical inputs give identical output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.attempted > 0 && self.passed == self.attempted
    }
}

#[derive(Default)]
struct Tally {
    attempted: u64,
    passed: u64,
    max_residual: f64,
    first_failure: Option<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.attempted += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(label());
        }
    }

    /// Records the outcome of a batch evaluated in parallel; `None` is a pass.
    fn batch(&mut self, outcomes: Vec<Option<String>>) {
        for o in outcomes {
            let fail = o.is_some();
            self.check(!fail, || o.unwrap_or_default());
        }
    }

    fn residual(&mut self, r: f64, tol: f64, label: impl FnOnce() -> String) {
        self.max_residual = self.max_residual.max(r);
        self.check(r <= tol, || format!("{} (residual {r:e} > {tol:e})", label()));
    }
}

/// Runs one suite. Returns [`Error::Mismatch`] if the suite does not apply to the descriptor.
pub fn run_suite(desc: &CubicDescriptor, suite: Suite, level: Level, seed: u64) -> Result<RunReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    match suite {
        Suite::Axioms => axioms(desc, level, &mut rng, &mut t),
        Suite::Jacobi => jacobi(desc, level, &mut rng, &mut t),
        Suite::Killing => killing(desc, level, &mut rng, &mut t),
        Suite::Cartan => cartan(desc, level, &mut rng, &mut t),
        Suite::Cayley => cayley(desc, &mut t),
        Suite::Iso32 => iso32(desc, level, &mut rng, &mut t),
        Suite::IsoSo => iso_so(desc, &mut t)?,
        Suite::Schmid => schmid(desc, level, &mut rng, &mut t)?,
    }
    Ok(RunReport {
        suite,
        descriptor: desc.name().to_string(),
        level,
        seed,
        attempted: t.attempted,
        passed: t.passed,
        max_residual: t.max_residual,
        first_failure: t.first_failure,
        notes: t.notes,
        elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Number of random elements, pairs or triples for sampled sweeps.
fn samples(level: Level) -> usize {
    match level {
        Level::Quick => 2_000,
        Level::Full => 100_000,
    }
}

/// Exhaustive sweeps are used up to this algebra dimension.
fn exhaustive_limit(level: Level) -> usize {
    match level {
        Level::Quick => 21,
        Level::Full => 52,
    }
}

fn axioms(desc: &CubicDescriptor, level: Level, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let count = match level {
        Level::Quick => 100,
        Level::Full => 1_000,
    };
    let pairs: Vec<_> = (0..count).map(|_| (desc.random(rng, 5, 3), desc.random(rng, 5, 3))).collect();
    let outcomes: Vec<Vec<(&'static str, bool)>> = pairs.par_iter().map(|(x, y)| axiom_checks(desc, x, y)).collect();
    for (k, checks) in outcomes.into_iter().enumerate() {
        for (name, ok) in checks {
            t.check(ok, || format!("{name} on random pair #{k}"));
        }
    }
}

fn triples(dim: usize, level: Level, rng: &mut ChaCha8Rng) -> Vec<(usize, usize, usize)> {
    if dim <= exhaustive_limit(level) {
        (0..dim).flat_map(|i| (0..dim).flat_map(move |j| (0..dim).map(move |k| (i, j, k)))).collect()
    } else {
        (0..samples(level)).map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim))).collect()
    }
}

fn pairs(dim: usize, limit: usize, level: Level, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if dim <= limit {
        (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect()
    } else {
        (0..samples(level)).map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim))).collect()
    }
}

fn unit(k: usize) -> Sparse {
    vec![(k as u32, Rational::from(1))]
}

fn add_sparse(dim: usize, parts: &[&Sparse]) -> Vec<Rational> {
    let mut acc = vec![Rational::from(0); dim];
    for p in parts {
        for (k, v) in p.iter() {
            acc[*k as usize] = acc[*k as usize].clone() + v.clone();
        }
    }
    acc
}

fn jacobi(desc: &CubicDescriptor, level: Level, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let g = GAlgebra::new(desc);
    let dim = g.dim();
    let list = triples(dim, level, rng);
    let outcomes = list
        .par_iter()
        .map(|&(i, j, k)| {
            let a = g.bracket_sparse(&unit(i), g.bracket_basis(j, k));
            let b = g.bracket_sparse(&unit(j), g.bracket_basis(k, i));
            let c = g.bracket_sparse(&unit(k), g.bracket_basis(i, j));
            let sum = add_sparse(dim, &[&a, &b, &c]);
            (!sum.iter().all(|x| x.is_zero())).then(|| format!("Jacobi fails on basis triple ({i}, {j}, {k})"))
        })
        .collect();
    t.batch(outcomes);
}

fn sparse_gram(g: &Mat<Rational>, x: &Sparse, y: &Sparse) -> Rational {
    let mut acc = Rational::from(0);
    for (i, a) in x {
        for (j, b) in y {
            let e = &g[(*i as usize, *j as usize)];
            if !e.is_zero() {
                acc = acc + a.clone() * b.clone() * e.clone();
            }
        }
    }
    acc
}

fn killing(desc: &CubicDescriptor, level: Level, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let g = GAlgebra::new(desc);
    let dim = g.dim();
    let gram = g.gram();
    t.check(*gram == gram.transpose(), || "B_g is not symmetric".into());
    t.check(gram.rank() == dim, || "B_g is degenerate".into());
    let list = triples(dim, level, rng);
    let outcomes = list
        .par_iter()
        .map(|&(i, j, k)| {
            // B([b_i, b_k], b_j) = −B([b_j, b_k], b_i)
            let l = sparse_gram(gram, g.bracket_basis(i, k), &unit(j));
            let r = sparse_gram(gram, g.bracket_basis(j, k), &unit(i));
            (l != -r).then(|| format!("invariance fails on basis triple ({i}, {j}, {k})"))
        })
        .collect();
    t.batch(outcomes);
}

/// Exact leading-minor test; above `exact_limit` only random principal submatrices are tested.
fn positive_definite_check(
    gram: &Mat<Rational>,
    exact_limit: usize,
    level: Level,
    rng: &mut ChaCha8Rng,
    label: &str,
    t: &mut Tally,
) {
    let n = gram.rows;
    if n <= exact_limit {
        t.check(is_positive_definite(gram), || format!("B_theta on {label} is not positive definite"));
        return;
    }
    let draws = match level {
        Level::Quick => 4,
        Level::Full => 16,
    };
    let size = 32.min(n);
    let idx: Vec<usize> = (0..n).collect();
    t.notes.push(format!("B_theta on {label}: {draws} random principal {size}x{size} blocks"));
    for d in 0..draws {
        let pick: Vec<usize> = idx.choose_multiple(rng, size).cloned().collect();
        let sub = Mat::from_fn(size, size, |i, j| gram[(pick[i], pick[j])].clone());
        t.check(is_positive_definite(&sub), || format!("principal block #{d} of B_theta on {label} is not positive definite"));
    }
}

fn cartan(desc: &CubicDescriptor, level: Level, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let g = GAlgebra::new(desc);
    let dim = g.dim();
    let th = g.cartan_table();
    let gram = g.gram();
    let apply_theta = |x: &Sparse| -> Vec<Rational> {
        let mut acc = vec![Rational::from(0); dim];
        for (k, c) in x {
            for (l, v) in &th[*k as usize] {
                acc[*l as usize] = acc[*l as usize].clone() + c.clone() * v.clone();
            }
        }
        acc
    };
    for i in 0..dim {
        let twice = apply_theta(&th[i]);
        t.check(twice == densify(&unit(i), dim), || format!("Theta^2 differs from the identity on basis vector {i}"));
    }
    // Θ pairs are cheap enough to sweep exhaustively through E₇ at the full level.
    let limit = if level == Level::Full { 133 } else { exhaustive_limit(level) };
    let list = pairs(dim, limit, level, rng);
    let outcomes = list
        .par_iter()
        .map(|&(i, j)| {
            let lhs = g.bracket_sparse(&th[i], &th[j]);
            let rhs = sparsify(&apply_theta(g.bracket_basis(i, j)));
            if lhs != rhs {
                return Some(format!("Theta is not an automorphism on ({i}, {j})"));
            }
            let b = sparse_gram(gram, &th[i], &th[j]);
            (b != gram[(i, j)]).then(|| format!("Theta does not preserve B_g on ({i}, {j})"))
        })
        .collect();
    t.batch(outcomes);
    positive_definite_check(&g.h.m.cartan_gram(), 80, level, rng, "m(J)", t);
    positive_definite_check(&g.h.cartan_gram(), 133, level, rng, "h(J)0", t);
    positive_definite_check(&g.cartan_gram(), 78, level, rng, "g(J)", t);
}

fn cayley(desc: &CubicDescriptor, t: &mut Tally) {
    let g = GAlgebra::new(desc);
    let theorem = theorem_checks(desc);
    t.notes.push(format!("{} identities for the inverse Cayley transform", theorem.len()));
    for (name, ok) in theorem.into_iter().chain(helper_checks(desc)).chain(basis_checks(&g)) {
        t.check(ok, || name);
    }
    t.check(eigenspace_check(&g), || "Cayley transform does not carry the grading to k + p".into());
}

fn iso32(desc: &CubicDescriptor, level: Level, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let g3 = G3Algebra::new(desc);
    let g = GAlgebra::new(desc);
    t.check(g3.dim() == g.dim(), || format!("dimensions differ: {} vs {}", g3.dim(), g.dim()));
    let dim = g.dim();
    let basis: Vec<_> = (0..dim).map(|k| g3.basis(k)).collect();
    let images: Vec<Sparse> = basis.iter().map(|b| sparsify(&g.coords(&iso_32(b)))).collect();
    let rows: Vec<Vec<Rational>> = images.iter().map(|s| densify(s, dim)).collect();
    t.check(Mat::from_rows(&rows).rank() == dim, || "the map is not bijective".into());
    for (k, b) in basis.iter().enumerate() {
        t.check(iso_32(&g3_cartan(desc, b)) == g_cartan(desc, &iso_32(b)), || format!("involution not transported on basis vector {k}"));
        t.check(&iso_23(&iso_32(b)) == b, || format!("inverse map fails on basis vector {k}"));
    }
    let gram = g.gram();
    let list = pairs(dim, exhaustive_limit(level), level, rng);
    let outcomes = list
        .par_iter()
        .map(|&(i, j)| {
            let lhs = sparsify(&g.coords(&iso_32(&g3_bracket(desc, &basis[i], &basis[j]))));
            if lhs != g.bracket_sparse(&images[i], &images[j]) {
                return Some(format!("bracket not transported on ({i}, {j})"));
            }
            (g3_killing(&g3.m, &basis[i], &basis[j]) != sparse_gram(gram, &images[i], &images[j]))
                .then(|| format!("pairing not transported on ({i}, {j})"))
        })
        .collect();
    t.batch(outcomes);
}

fn iso_so(desc: &CubicDescriptor, t: &mut Tally) -> Result<()> {
    let m = OrthogonalModel::new(desc)?;
    let g = GAlgebra::new(desc);
    let basis = m.total.basis();
    let dim = g.dim();
    t.check(basis.len() == dim, || format!("dim so = {} but dim g = {dim}", basis.len()));
    let images: Vec<GElement<Rational>> = basis.iter().map(|p| m.so_to_g(p)).collect();
    let rows: Vec<Vec<Rational>> = images.iter().map(|x| g.coords(x)).collect();
    t.check(Mat::from_rows(&rows).rank() == dim, || "the map is not bijective".into());
    let ratio = m.killing_ratio(&g);
    t.notes.push(format!("B_g / B_so = {ratio}"));
    let list: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
    for (i, p) in basis.iter().enumerate() {
        t.check(m.so_to_g(&m.total.cartan(p)) == g_cartan(desc, &images[i]), || format!("involution not transported on {i}"));
    }
    let outcomes = list
        .par_iter()
        .map(|&(i, j)| {
            let (p, q) = (&basis[i], &basis[j]);
            if m.so_to_g(&m.total.bracket(p, q)) != g_bracket(desc, &images[i], &images[j]) {
                return Some(format!("bracket not transported on ({i}, {j})"));
            }
            (g.killing(&images[i], &images[j]) != ratio.clone() * m.total.killing(p, q))
                .then(|| format!("pairing not transported on ({i}, {j})"))
        })
        .collect();
    t.batch(outcomes);
    Ok(())
}

/// `ω = (0, −1_J, 0, 1)`, the class with `p(Z) = 1 − tr(Z#)`.
pub fn positive_character(desc: &CubicDescriptor) -> FreudenthalVector<f64> {
    FreudenthalVector::new(0.0, desc.one::<f64>().scale(&-1.0), desc.zero(), 1.0)
}

/// A seeded point with `|⟨ω, Z̃⟩|` in `[10⁻², 10²]`, where `K_v` is representable.
pub fn schmid_point(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>, rng: &mut ChaCha8Rng) -> LeviPoint {
    loop {
        let p = LeviPoint::sample(desc, rng);
        let u = pairing_tilde(desc, omega, &p).norm();
        if (1e-2..=1e2).contains(&u) {
            return p;
        }
    }
}

/// Tolerances of the Schmid suite.
pub const SCHMID_TOL: f64 = 1e-6;
pub const SCHMID_DETECT: f64 = 1e-3;

fn schmid(desc: &CubicDescriptor, level: Level, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let points = match level {
        Level::Quick => 5,
        Level::Full => 20,
    };
    let omega = positive_character(desc);
    let e_basis: Vec<_> = (0..desc.dim()).map(|a| desc.basis::<f64>(a)).collect();
    for n in [1usize, 2] {
        t.check(table_matches_character_system(n, desc.dim())?, || format!("coefficient table n={n} does not reduce to the character system"));
        let whit = ComponentBundle::whittaker(desc, n, &omega);
        let bent = ComponentBundle::whittaker(desc, n, &omega).times_w_power(0.1);
        let d = desc.clone();
        let one = ComponentBundle::new(
            n,
            Box::new(move |q| constant_term_eval(&d, n, &|_| Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), q)),
        );
        let mid = ComponentBundle::from_components(n, move |v, q| {
            Ok(Complex64::new(if v == 0 { q.nu_weight(n) } else { 0.0 }, 0.0))
        });
        for k in 0..points {
            let p = schmid_point(desc, &omega, rng);
            let r = max_relative(&char_residuals(desc, n, &omega, &whit, &p, &e_basis)?);
            t.residual(r, SCHMID_TOL, || format!("Whittaker vector n={n} point #{k}"));
            let r = max_relative(&char_residuals(desc, n, &omega, &bent, &p, &e_basis)?);
            t.check(r > SCHMID_DETECT, || format!("perturbed bundle n={n} point #{k} not detected (residual {r:e})"));
            let r = max_relative(&const_term_residuals(desc, n, &one, &p, &e_basis)?);
            t.residual(r, SCHMID_TOL, || format!("constant term with H = 1, n={n} point #{k}"));
            let r = max_relative(&const_term_residuals(desc, n, &mid, &p, &e_basis)?);
            t.residual(r, SCHMID_TOL, || format!("middle slot constant term n={n} point #{k}"));
        }
    }
    Ok(())
}

/// `(name, dim g(J))` for the five exceptional descriptors and `so:0` … `so:r_max`,
/// each dimension counted from an explicit basis.
pub fn dims_table(r_max: usize) -> Vec<(String, usize)> {
    let mut names: Vec<String> = ["g2", "f4", "e6", "e7", "e8"].iter().map(|s| s.to_string()).collect();
    names.extend((0..=r_max).map(|r| format!("so:{r}")));
    names
        .into_iter()
        .map(|name| {
            let desc = CubicDescriptor::from_name(&name).expect("built-in name");
            (name, enumerated_dim(&desc))
        })
        .collect()
}

/// Counts the basis of `sl₂ ⊕ h(J)⁰ ⊕ W_J ⊕ W_J`, with `h(J)⁰` enumerated from its
/// own basis and checked for linear independence.
pub fn enumerated_dim(desc: &CubicDescriptor) -> usize {
    let g = GAlgebra::new(desc);
    let hdim = g.h.dim();
    let rows: Vec<Vec<Rational>> = (0..hdim).map(|k| g.h.coords(&g.h.basis(k))).collect();
    let h_rank = Mat::from_rows(&rows).rank();
    let wdim = 2 * desc.dim() + 2;
    3 + h_rank + 2 * wdim
}

/// Closed form `(r+7)(r+6)/2` for `so:r`.
pub fn so_dim(desc: &CubicDescriptor) -> Option<usize> {
    match desc.kind() {
        CubicKind::QuadraticPair { s_diag } => {
            let r = s_diag.len() - 1;
            Some((r + 7) * (r + 6) / 2)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_tokens() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("fast".parse::<Level>().is_err());
    }

    #[test]
    fn quick_suites_pass_on_g2() {
        let d = CubicDescriptor::unit();
        for s in Suite::ALL {
            if s == Suite::IsoSo {
                assert!(run_suite(&d, s, Level::Quick, 1).is_err());
                continue;
            }
            let r = run_suite(&d, s, Level::Quick, 1).unwrap();
            assert!(r.ok(), "{s}: {:?}", r.first_failure);
        }
        let r = run_suite(&d, Suite::Jacobi, Level::Quick, 1).unwrap();
        assert_eq!(r.attempted, 14 * 14 * 14);
    }

    #[test]
    fn reports_are_deterministic() {
        let d = CubicDescriptor::hermitian(crate::composition::CompositionKind::Reals);
        let mut a = run_suite(&d, Suite::Schmid, Level::Quick, 7).unwrap();
        let mut b = run_suite(&d, Suite::Schmid, Level::Quick, 7).unwrap();
        a.elapsed_ms = None;
        b.elapsed_ms = None;
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn iso_so_on_small_pair() {
        let r = run_suite(&CubicDescriptor::quadratic_pair(1), Suite::IsoSo, Level::Quick, 0).unwrap();
        assert!(r.ok(), "{:?}", r.first_failure);
        assert_eq!(r.notes, vec!["B_g / B_so = 1".to_string()]);
    }

    #[test]
    fn dims() {
        let t = dims_table(3);
        let want = [14, 52, 78, 133, 248, 21, 28, 36, 45];
        assert_eq!(t.iter().map(|x| x.1).collect::<Vec<_>>(), want);
        for (name, dim) in &t[5..] {
            assert_eq!(so_dim(&CubicDescriptor::from_name(name).unwrap()), Some(*dim));
        }
    }
}
