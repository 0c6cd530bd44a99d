//! One runnable verifier per balance statement: hypothesis predicates,
//! orbit and arithmetic-simplex suites, necessary-condition sweeps and the
//! Pascal multinomial check. Every verdict is replayable from its recorded
//! parameters; failures are sorted for deterministic output.

use std::time::Instant;

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::ArithSimplex;
use crate::automaton::WeightScheme;
use crate::orbit::{ClosedFormOrbit, GridOrbit, OrbitSource, Seed};
use crate::residue::{size_period, Modulus, Residue};
use crate::search;
use crate::simplex::{extract, spec_is_antisymmetric, SimplexSpec};
use crate::{Error, Result};

/// Default seed for apex sampling; reports echo it.
pub const DEFAULT_RNG_SEED: u64 = 0x5ba1a9ced;

/// Every statement the suite can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Balanced simplices in orbits of arithmetic arrays.
    MainOrbit,
    /// Balanced arithmetic simplices under the pairwise invertibility
    /// hypotheses.
    ArithBalanced,
    /// Necessary invertibility of the three differences of a balanced
    /// arithmetic triangle.
    TriangleNecessary,
    /// Necessary structure of the six differences of a balanced arithmetic
    /// tetrahedron.
    TetraNecessary,
    /// No balanced arithmetic tetrahedron when 3 divides m.
    TetraMod3Impossible,
    /// Balanced arithmetic tetrahedra for even m with the gcd-2 pair.
    TetraEven,
    /// Balanced orbit tetrahedra for even m with sigma = 1 mod 2^v2(m).
    OrbitTetraEven,
    /// Balanced (0,1)-antisymmetric triangles at the projective-order period.
    AntisymTriangle,
    /// No balanced simplex of large size when sigma is not invertible.
    SigmaNecessity,
    /// The explicit Pascal-automaton seeds from the corollary constructions.
    PascalCorollary,
    /// Balanced Steinhaus triangles with arithmetic first rows.
    Chap1,
    /// Balanced triangles of both orientations in the interlace orbit.
    Chap2,
    /// The linear constraints antisymmetry forces on common differences.
    AntisymConstraints,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::MainOrbit,
        TheoremId::ArithBalanced,
        TheoremId::TriangleNecessary,
        TheoremId::TetraNecessary,
        TheoremId::TetraMod3Impossible,
        TheoremId::TetraEven,
        TheoremId::OrbitTetraEven,
        TheoremId::AntisymTriangle,
        TheoremId::SigmaNecessity,
        TheoremId::PascalCorollary,
        TheoremId::Chap1,
        TheoremId::Chap2,
        TheoremId::AntisymConstraints,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::MainOrbit => "main-orbit",
            TheoremId::ArithBalanced => "arith-balanced",
            TheoremId::TriangleNecessary => "triangle-necessary",
            TheoremId::TetraNecessary => "tetra-necessary",
            TheoremId::TetraMod3Impossible => "tetra-mod3-impossible",
            TheoremId::TetraEven => "tetra-even",
            TheoremId::OrbitTetraEven => "orbit-tetra-even",
            TheoremId::AntisymTriangle => "antisym-triangle",
            TheoremId::SigmaNecessity => "sigma-necessity",
            TheoremId::PascalCorollary => "pascal-corollary",
            TheoremId::Chap1 => "chap1",
            TheoremId::Chap2 => "chap2",
            TheoremId::AntisymConstraints => "antisym-constraints",
        }
    }

    pub fn parse(text: &str) -> Option<TheoremId> {
        let t = text.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|id| id.name() == t)
            .or(match t.as_str() {
                "thm1" => Some(TheoremId::MainOrbit),
                "thm2" => Some(TheoremId::ArithBalanced),
                "balasn2" => Some(TheoremId::TriangleNecessary),
                "thmarithdim2" => Some(TheoremId::TetraNecessary),
                "tetra-mod3" => Some(TheoremId::TetraMod3Impossible),
                "thm5" => Some(TheoremId::TetraEven),
                "thm6" => Some(TheoremId::OrbitTetraEven),
                "thm7" => Some(TheoremId::AntisymTriangle),
                _ => None,
            })
    }
}

/// One counterexample candidate: enough to replay the instance.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub parameters: String,
    pub witness: String,
}

/// Outcome of one verifier run.
#[derive(Debug, Serialize)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub instances: u64,
    pub failures: Vec<Failure>,
    /// Set when the run saw too few instances to mean anything.
    pub inconclusive: bool,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    started: Instant,
}

impl Verdict {
    pub fn new(theorem: TheoremId) -> Self {
        Verdict {
            theorem,
            instances: 0,
            failures: Vec::new(),
            inconclusive: false,
            notes: Vec::new(),
            elapsed_ms: 0,
            started: Instant::now(),
        }
    }

    pub fn count_instance(&mut self) {
        self.instances += 1;
    }

    pub fn fail(&mut self, failure: Failure) {
        self.failures.push(failure);
    }

    pub fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.inconclusive
    }

    /// Sorts failures by parameters so merged output is deterministic.
    pub fn finish(mut self) -> Self {
        self.failures
            .sort_by(|a, b| a.parameters.cmp(&b.parameters).then(a.witness.cmp(&b.witness)));
        self.elapsed_ms = self.started.elapsed().as_millis() as u64;
        self
    }
}

/// One named hypothesis clause and whether it holds.
#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
}

/// Evaluation of the main-theorem hypotheses for a stencil, differences and
/// orientation; reports which clause fails.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub clauses: Vec<Clause>,
    /// The induced time-axis difference, when sigma is invertible.
    pub derived: Option<u32>,
}

impl HypothesisReport {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&Clause> {
        self.clauses.iter().find(|c| !c.holds)
    }
}

fn gcd_with_factorial_is_one(m: u32, n: usize) -> bool {
    (2..=n as u32).all(|i| i.gcd(&m) == 1)
}

/// Checks gcd(m, n!) = 1, sigma invertible, every d_i (including the derived
/// d_n) invertible, and every eps_j d_j - eps_i d_i invertible.
pub fn thm1_hypotheses(
    scheme: &WeightScheme,
    diffs: &[Residue],
    orientation: &[i8],
) -> HypothesisReport {
    let modulus = scheme.modulus();
    let m = modulus.get();
    let n = scheme.dim() + 1;
    let mut clauses = Vec::new();
    clauses.push(Clause {
        name: format!("gcd({m}, {n}!) = 1"),
        holds: gcd_with_factorial_is_one(m, n),
    });
    let sigma = scheme.sigma();
    clauses.push(Clause {
        name: format!("sigma = {sigma} invertible"),
        holds: sigma.is_invertible(),
    });
    let derived = crate::orbit::derived_difference(scheme, diffs).ok();
    let mut extended = diffs.to_vec();
    match derived {
        Some(d) => extended.push(d),
        None => {
            return HypothesisReport { clauses, derived: None };
        }
    }
    for (i, d) in extended.iter().enumerate() {
        clauses.push(Clause {
            name: format!("d_{} = {d} invertible", i + 1),
            holds: d.is_invertible(),
        });
    }
    if orientation.len() == n {
        for i in 0..n {
            for j in i + 1..n {
                let diff = extended[j].scale(orientation[j] as i128)
                    - extended[i].scale(orientation[i] as i128);
                clauses.push(Clause {
                    name: format!("eps_{}d_{} - eps_{}d_{} = {diff} invertible", j + 1, j + 1, i + 1, i + 1),
                    holds: diff.is_invertible(),
                });
            }
        }
    } else {
        clauses.push(Clause {
            name: format!("orientation has {n} components"),
            holds: false,
        });
    }
    HypothesisReport { clauses, derived: derived.map(|d| d.value()) }
}

fn require_pass(report: &HypothesisReport) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(clause) => Err(Error::PreconditionViolated(clause.name.clone())),
    }
}

fn sample_apex(
    rng: &mut StdRng,
    q: usize,
    span: i64,
    time_span: u64,
    eps_time: i8,
    size: u64,
) -> (Vec<i64>, u64) {
    let space: Vec<i64> = (0..q).map(|_| rng.gen_range(-span..=span)).collect();
    let time = if eps_time == 1 {
        rng.gen_range(0..=time_span)
    } else {
        size - 1 + rng.gen_range(0..=time_span)
    };
    (space, time)
}

/// The main orbit suite: extracts simplices of the first `size_count`
/// admissible sizes (s = -t mod lcm(ord(sigma), m), t in [0, n-1]) at
/// `apex_count` sampled apexes and asserts balance.
pub fn verify_thm1(
    scheme: &WeightScheme,
    first: Residue,
    diffs: &[Residue],
    orientation: &[i8],
    size_count: usize,
    apex_count: usize,
    rng_seed: u64,
) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::MainOrbit);
    let report = thm1_hypotheses(scheme, diffs, orientation);
    require_pass(&report)?;
    let n = scheme.dim() + 1;
    let period = size_period(scheme.sigma())?;
    verdict.note(format!("size period {period}"));
    let tails: Vec<u64> = (0..n as u64).collect();
    let sizes = search::sizes_in_classes(period, &tails, size_count);
    let orbit = ClosedFormOrbit::new(scheme, first, diffs.to_vec())?;
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let span = period.min(1_000) as i64;
    for &s in &sizes {
        for _ in 0..apex_count {
            let (space, time) =
                sample_apex(&mut rng, scheme.dim(), span, 2 * period, orientation[n - 1], s);
            let spec = SimplexSpec::new(space, time, orientation.to_vec(), s)?;
            verdict.count_instance();
            let ms = extract(&orbit, &spec)?;
            if let Some((lo, hi)) = ms.balance_witness() {
                verdict.fail(Failure {
                    parameters: format!(
                        "scheme={scheme} a={first} d={diffs:?} orient={orientation:?} s={s} apex={:?}@{}",
                        spec.apex_space(),
                        spec.apex_time()
                    ),
                    witness: format!("counts differ at {lo} and {hi}"),
                });
            }
        }
    }
    Ok(verdict.finish())
}

/// Which difference tuples satisfy the arithmetic-simplex hypotheses:
/// every d_i invertible and every d_j - d_i invertible.
pub fn thm2_valid_diffs(modulus: Modulus, d: &[Residue]) -> bool {
    d.iter().all(|x| x.is_invertible())
        && (0..d.len()).all(|i| (i + 1..d.len()).all(|j| (d[j] - d[i]).is_invertible()))
        && gcd_with_factorial_is_one(modulus.get(), d.len())
}

/// Balance of arithmetic simplices at sizes -t mod m. `exhaustive` sweeps
/// every valid difference tuple; otherwise `samples` random ones are drawn.
/// Balance is translation invariant, so the first element is fixed at 0.
pub fn verify_thm2(
    modulus: Modulus,
    n: usize,
    exhaustive: bool,
    samples: usize,
    sizes: Option<Vec<u64>>,
    rng_seed: u64,
) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::ArithBalanced);
    let m = modulus.get();
    if !gcd_with_factorial_is_one(m, n) {
        return Err(Error::PreconditionViolated(format!("gcd({m}, {n}!) must be 1")));
    }
    let sizes = sizes.unwrap_or_else(|| {
        let tails: Vec<u64> = (0..n as u64).collect();
        search::sizes_in_classes(m as u64, &tails, 2 * n)
    });
    let tuples: Vec<Vec<Residue>> = if exhaustive {
        let mut all = Vec::new();
        let mut d = vec![0u32; n];
        loop {
            let tuple: Vec<Residue> = d.iter().map(|&v| modulus.residue(v as i128)).collect();
            if thm2_valid_diffs(modulus, &tuple) {
                all.push(tuple);
            }
            let mut axis = n;
            loop {
                if axis == 0 {
                    break;
                }
                axis -= 1;
                d[axis] += 1;
                if d[axis] < m {
                    break;
                }
                d[axis] = 0;
            }
            if d.iter().all(|&v| v == 0) {
                break;
            }
        }
        all
    } else {
        let mut rng = StdRng::seed_from_u64(rng_seed);
        let mut picked = Vec::new();
        let mut guard = 0;
        while picked.len() < samples && guard < samples * 1000 {
            guard += 1;
            let tuple: Vec<Residue> = (0..n)
                .map(|_| modulus.residue(rng.gen_range(0..m) as i128))
                .collect();
            if thm2_valid_diffs(modulus, &tuple) {
                picked.push(tuple);
            }
        }
        picked
    };
    verdict.note(format!("{} difference tuples, sizes {sizes:?}", tuples.len()));
    for d in &tuples {
        for &s in &sizes {
            verdict.count_instance();
            let t = ArithSimplex::new(modulus.zero(), d.clone(), s)?;
            if let Some((lo, hi)) = t.as_multiset()?.balance_witness() {
                verdict.fail(Failure {
                    parameters: format!("m={m} d={d:?} s={s}"),
                    witness: format!("counts differ at {lo} and {hi}"),
                });
            }
        }
    }
    Ok(verdict.finish())
}

/// Exhaustive necessary-condition sweep over arithmetic triangles: every
/// balanced AS(0,(d1,d2),s) with s <= 2m must have d1, d2 and d2-d1 all
/// invertible.
pub fn verify_triangle_necessary(moduli: &[u32]) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::TriangleNecessary);
    for &m in moduli {
        let modulus = Modulus::new(m)?;
        let sizes = crate::simplex::admissible_sizes(modulus, 2, 2 * m as u64);
        for d1 in 0..m {
            for d2 in 0..m {
                let diffs = vec![modulus.residue(d1 as i128), modulus.residue(d2 as i128)];
                for &s in &sizes {
                    verdict.count_instance();
                    let t = ArithSimplex::new(modulus.zero(), diffs.clone(), s)?;
                    if !t.as_multiset()?.is_balanced() {
                        continue;
                    }
                    let all_invertible = diffs[0].is_invertible()
                        && diffs[1].is_invertible()
                        && (diffs[1] - diffs[0]).is_invertible();
                    if !all_invertible {
                        verdict.fail(Failure {
                            parameters: format!("m={m} d=({d1},{d2}) s={s}"),
                            witness: "balanced with a non-invertible difference".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(verdict.finish())
}

/// The three non-adjacent difference pairs of a tetrahedron, as indices
/// into [d1, d2, d3, d2-d1, d3-d2, d1-d3].
const NON_ADJACENT_PAIRS: [(usize, usize); 3] = [(0, 4), (1, 5), (2, 3)];

fn tetra_differences(d: &[Residue; 3]) -> [Residue; 6] {
    [d[0], d[1], d[2], d[1] - d[0], d[2] - d[1], d[0] - d[2]]
}

/// Exhaustive necessary-condition sweep over arithmetic tetrahedra: for m
/// odd every balanced one has all six differences invertible; for m even
/// exactly one non-adjacent pair is non-invertible, both entries of gcd 2.
pub fn verify_tetra_necessary(moduli: &[u32]) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::TetraNecessary);
    for &m in moduli {
        let modulus = Modulus::new(m)?;
        let sizes = crate::simplex::admissible_sizes(modulus, 3, 2 * m as u64);
        let mut found_balanced = 0u64;
        for d1 in 0..m {
            for d2 in 0..m {
                for d3 in 0..m {
                    let d = [
                        modulus.residue(d1 as i128),
                        modulus.residue(d2 as i128),
                        modulus.residue(d3 as i128),
                    ];
                    for &s in &sizes {
                        verdict.count_instance();
                        let t = ArithSimplex::new(modulus.zero(), d.to_vec(), s)?;
                        if !t.as_multiset()?.is_balanced() {
                            continue;
                        }
                        found_balanced += 1;
                        let ds = tetra_differences(&d);
                        let bad: Vec<usize> = (0..6).filter(|&i| !ds[i].is_invertible()).collect();
                        let structure_ok = if m % 2 == 1 {
                            bad.is_empty()
                        } else {
                            bad.len() == 2
                                && NON_ADJACENT_PAIRS.contains(&(bad[0], bad[1]))
                                && bad.iter().all(|&i| ds[i].gcd_with_modulus() == 2)
                        };
                        if !structure_ok {
                            verdict.fail(Failure {
                                parameters: format!("m={m} d=({d1},{d2},{d3}) s={s}"),
                                witness: format!(
                                    "balanced but non-invertible difference indices {bad:?}"
                                ),
                            });
                        }
                    }
                }
            }
        }
        verdict.note(format!("m={m}: {found_balanced} balanced tetrahedra examined"));
    }
    Ok(verdict.finish())
}

/// No balanced arithmetic tetrahedron exists when 3 divides m; sweeps all
/// difference triples and admissible sizes up to 2m.
pub fn verify_tetra_mod3(moduli: &[u32]) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::TetraMod3Impossible);
    for &m in moduli {
        if m % 3 != 0 {
            return Err(Error::PreconditionViolated(format!("m = {m} is not a multiple of 3")));
        }
        let modulus = Modulus::new(m)?;
        let sizes = crate::simplex::admissible_sizes(modulus, 3, 2 * m as u64);
        for d1 in 0..m {
            for d2 in 0..m {
                for d3 in 0..m {
                    let diffs = vec![
                        modulus.residue(d1 as i128),
                        modulus.residue(d2 as i128),
                        modulus.residue(d3 as i128),
                    ];
                    for &s in &sizes {
                        verdict.count_instance();
                        let t = ArithSimplex::new(modulus.zero(), diffs.clone(), s)?;
                        if t.as_multiset()?.is_balanced() {
                            verdict.fail(Failure {
                                parameters: format!("m={m} d=({d1},{d2},{d3}) s={s}"),
                                witness: "balanced tetrahedron exists mod a multiple of 3".into(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(verdict.finish())
}

/// Arithmetic tetrahedra for even m with gcd(d1, m) = gcd(d3-d2, m) = 2 and
/// the other four differences invertible: balanced at sizes 0 and -2 mod m,
/// and not balanced at -1 mod m. `periods` many multiples of m are checked
/// per congruence class.
pub fn verify_thm5(
    modulus: Modulus,
    a: Residue,
    d: [Residue; 3],
    periods: usize,
) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::TetraEven);
    let m = modulus.get();
    if m % 2 != 0 {
        return Err(Error::PreconditionViolated(format!("m = {m} must be even")));
    }
    if m % 3 == 0 {
        return Err(Error::PreconditionViolated(format!("m = {m} must not be divisible by 3")));
    }
    let ds = tetra_differences(&d);
    if ds[0].gcd_with_modulus() != 2 {
        return Err(Error::PreconditionViolated(format!("gcd(d1, {m}) must be 2")));
    }
    if ds[4].gcd_with_modulus() != 2 {
        return Err(Error::PreconditionViolated(format!("gcd(d3-d2, {m}) must be 2")));
    }
    for (i, label) in [(1usize, "d2"), (2, "d3"), (3, "d2-d1"), (5, "d1-d3")] {
        if !ds[i].is_invertible() {
            return Err(Error::PreconditionViolated(format!("{label} must be invertible")));
        }
    }
    let mut balanced_sizes = Vec::new();
    let mut unbalanced_sizes = Vec::new();
    for k in 1..=periods as u64 {
        balanced_sizes.push(k * m as u64 - 2);
        balanced_sizes.push(k * m as u64);
        unbalanced_sizes.push(k * m as u64 - 1);
    }
    for &s in &balanced_sizes {
        verdict.count_instance();
        let t = ArithSimplex::new(a, d.to_vec(), s)?;
        if let Some((lo, hi)) = t.as_multiset()?.balance_witness() {
            verdict.fail(Failure {
                parameters: format!("m={m} a={a} d={d:?} s={s}"),
                witness: format!("expected balanced; counts differ at {lo} and {hi}"),
            });
        }
    }
    for &s in &unbalanced_sizes {
        verdict.count_instance();
        let t = ArithSimplex::new(a, d.to_vec(), s)?;
        if t.as_multiset()?.is_balanced() {
            verdict.fail(Failure {
                parameters: format!("m={m} a={a} d={d:?} s={s}"),
                witness: "expected not balanced at s = -1 mod m".into(),
            });
        }
    }
    Ok(verdict.finish())
}

/// Orbit tetrahedra for even m not divisible by 3 with sigma = 1 mod
/// 2^v2(m): balanced at sizes 0 and -2 mod lcm(ord(sigma), m).
pub fn verify_thm6(
    scheme: &WeightScheme,
    first: Residue,
    diffs: &[Residue; 2],
    orientation: &[i8],
    size_count: usize,
    apex_count: usize,
    rng_seed: u64,
) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::OrbitTetraEven);
    let modulus = scheme.modulus();
    let m = modulus.get();
    if scheme.dim() != 2 || orientation.len() != 3 {
        return Err(Error::PreconditionViolated("tetrahedra need q = 2 and |orientation| = 3".into()));
    }
    if m % 2 != 0 {
        return Err(Error::PreconditionViolated(format!("m = {m} must be even")));
    }
    if m % 3 == 0 {
        return Err(Error::PreconditionViolated(format!("m = {m} must not be divisible by 3")));
    }
    let sigma = scheme.sigma();
    if !sigma.is_invertible() {
        return Err(Error::PreconditionViolated(format!("sigma = {sigma} must be invertible")));
    }
    let pow2 = 1u32 << modulus.v2();
    if sigma.value() % pow2 != 1 % pow2 {
        return Err(Error::PreconditionViolated(format!(
            "sigma = {sigma} must be 1 mod 2^v2({m}) = {pow2}"
        )));
    }
    let d3 = crate::orbit::derived_difference(scheme, diffs)?;
    let e = |i: usize, d: Residue| d.scale(orientation[i] as i128);
    let ed = [e(0, diffs[0]), e(1, diffs[1]), e(2, d3)];
    if ed[0].gcd_with_modulus() != 2 {
        return Err(Error::PreconditionViolated(format!(
            "gcd(eps1 d1, {m}) must be 2, got {}",
            ed[0].gcd_with_modulus()
        )));
    }
    if (ed[2] - ed[1]).gcd_with_modulus() != 2 {
        return Err(Error::PreconditionViolated(format!(
            "gcd(eps3 d3 - eps2 d2, {m}) must be 2, got {}",
            (ed[2] - ed[1]).gcd_with_modulus()
        )));
    }
    for (x, label) in [
        (ed[1], "eps2 d2"),
        (ed[2], "eps3 d3"),
        (ed[1] - ed[0], "eps2 d2 - eps1 d1"),
        (ed[0] - ed[2], "eps1 d1 - eps3 d3"),
    ] {
        if !x.is_invertible() {
            return Err(Error::PreconditionViolated(format!("{label} must be invertible")));
        }
    }
    let period = size_period(sigma)?;
    verdict.note(format!("size period {period}"));
    let sizes = search::sizes_in_classes(period, &[0, 2], size_count);
    let orbit = ClosedFormOrbit::new(scheme, first, diffs.to_vec())?;
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let span = period.min(300) as i64;
    for &s in &sizes {
        for _ in 0..apex_count {
            let (space, time) = sample_apex(&mut rng, 2, span, 2 * period, orientation[2], s);
            let spec = SimplexSpec::new(space, time, orientation.to_vec(), s)?;
            verdict.count_instance();
            if let Some((lo, hi)) = extract(&orbit, &spec)?.balance_witness() {
                verdict.fail(Failure {
                    parameters: format!(
                        "scheme={scheme} a={first} d={diffs:?} orient={orientation:?} s={s} apex={:?}@{}",
                        spec.apex_space(),
                        spec.apex_time()
                    ),
                    witness: format!("counts differ at {lo} and {hi}"),
                });
            }
        }
    }
    Ok(verdict.finish())
}

/// Necessary linear constraints on the common differences of a
/// (u,v)-antisymmetric orbit simplex: d_w = 0 off the pair for u >= 1 and
/// eps_u d_u + eps_v d_v = 0; for u = 0, 2 eps_w d_w = eps_v d_v.
#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    pub clauses: Vec<Clause>,
    /// Weight form (0, (2 eps1 eps2 - 1) sigma', sigma') for the
    /// one-dimensional (0,1) case, when the constraints hold.
    pub weight_form: Option<Vec<i64>>,
}

impl ConstraintReport {
    pub fn satisfied(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }
}

pub fn antisym_constraints(
    scheme: &WeightScheme,
    diffs: &[Residue],
    orientation: &[i8],
    u: usize,
    v: usize,
) -> Result<ConstraintReport> {
    let n = scheme.dim() + 1;
    if !(u < v && v <= n) {
        return Err(Error::IndexOutOfRange { index: v.max(u), limit: n });
    }
    if orientation.len() != n {
        return Err(Error::PreconditionViolated(format!("orientation needs {n} components")));
    }
    let mut clauses = Vec::new();
    let sigma = scheme.sigma();
    if !sigma.is_invertible() {
        clauses.push(Clause {
            name: format!("sigma = {sigma} invertible"),
            holds: false,
        });
        return Ok(ConstraintReport { clauses, weight_form: None });
    }
    let mut extended = diffs.to_vec();
    extended.push(crate::orbit::derived_difference(scheme, diffs)?);
    let e = |w: usize| extended[w - 1].scale(orientation[w - 1] as i128);
    if u >= 1 {
        for w in 1..=n {
            if w == u || w == v {
                continue;
            }
            clauses.push(Clause {
                name: format!("d_{w} = 0"),
                holds: extended[w - 1].is_zero(),
            });
        }
        clauses.push(Clause {
            name: format!("eps_{u} d_{u} + eps_{v} d_{v} = 0"),
            holds: (e(u) + e(v)).is_zero(),
        });
    } else {
        for w in 1..=n {
            if w == v {
                continue;
            }
            clauses.push(Clause {
                name: format!("2 eps_{w} d_{w} = eps_{v} d_{v}"),
                holds: (e(w).scale(2) - e(v)).is_zero(),
            });
        }
    }
    let report_ok = clauses.iter().all(|c| c.holds);
    let weight_form = if scheme.dim() == 1 && u == 0 && v == 1 && report_ok {
        // W = (0, (2 eps1 eps2 - 1) sigma', sigma') reproduces (sigma, sigma')
        let sp = scheme.sigma_k()[0].value() as i64;
        let factor = 2 * (orientation[0] * orientation[1]) as i64 - 1;
        Some(vec![0, factor * sp, sp])
    } else {
        None
    };
    Ok(ConstraintReport { clauses, weight_form })
}

/// Scans the orbit of AP(a, d) for (0,1)-antisymmetric triangles of the
/// admissible sizes (0 or -1 mod lcm(pord(sigma), m)) and asserts their
/// balance. Orientations ++/-- need sigma = 2 sigma'; the mirror statement
/// for -+/+- needs sigma = -2 sigma'. Runs with fewer than `min_instances`
/// discovered triangles are inconclusive.
pub fn verify_antisym(
    scheme: &WeightScheme,
    first: Residue,
    d: Residue,
    orientation: &[i8],
    size_count: usize,
    min_instances: u64,
) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::AntisymTriangle);
    let modulus = scheme.modulus();
    let m = modulus.get();
    if scheme.dim() != 1 || orientation.len() != 2 {
        return Err(Error::PreconditionViolated("triangles need q = 1".into()));
    }
    if m % 2 == 0 {
        return Err(Error::PreconditionViolated(format!("m = {m} must be odd")));
    }
    let sigma = scheme.sigma();
    if !sigma.is_invertible() {
        return Err(Error::PreconditionViolated(format!("sigma = {sigma} must be invertible")));
    }
    if !d.is_invertible() {
        return Err(Error::PreconditionViolated(format!("d = {d} must be invertible")));
    }
    let sigma_prime = scheme.sigma_k()[0];
    let mirror = orientation[0] != orientation[1];
    let wanted = if mirror { -sigma_prime.scale(2) } else { sigma_prime.scale(2) };
    if sigma != wanted {
        return Err(Error::PreconditionViolated(format!(
            "2 eps_w d_w = eps_v d_v forces sigma = {}2 sigma'; got sigma = {sigma}, sigma' = {sigma_prime}",
            if mirror { "-" } else { "" }
        )));
    }
    if mirror {
        verdict.note("mirror-derived branch: sigma = -2 sigma'".into());
    }
    let period = sigma.pord()?.lcm(&(m as u64));
    verdict.note(format!("size period lcm(pord, m) = {period}"));
    let sizes = search::sizes_in_classes(period, &[0, 1], size_count);
    let orbit = ClosedFormOrbit::new(scheme, first, vec![d])?;
    let span = period as i64 + 2;
    for &s in &sizes {
        for j2 in 0..=(2 * period) {
            let apex_time = if orientation[1] == 1 { j2 } else { j2 + s - 1 };
            for j1 in -span..=span {
                let spec = SimplexSpec::new(vec![j1], apex_time, orientation.to_vec(), s)?;
                if !spec_is_antisymmetric(&orbit, &spec, 0, 1)? {
                    continue;
                }
                verdict.count_instance();
                if let Some((lo, hi)) = extract(&orbit, &spec)?.balance_witness() {
                    verdict.fail(Failure {
                        parameters: format!(
                            "scheme={scheme} a={first} d={d} orient={orientation:?} s={s} apex=({j1},{apex_time})"
                        ),
                        witness: format!("antisymmetric but counts differ at {lo} and {hi}"),
                    });
                }
            }
        }
    }
    if verdict.instances < min_instances {
        verdict.inconclusive = true;
        verdict.note(format!(
            "only {} antisymmetric triangles found, {min_instances} required",
            verdict.instances
        ));
    }
    Ok(verdict.finish())
}

/// When sigma is not invertible, no simplex of size >= ceil((5n+3)/2) in
/// the orbit of an arithmetic array is balanced. Scans every orientation
/// and all apexes in a window.
pub fn verify_sigma_necessity(
    scheme: &WeightScheme,
    first: Residue,
    diffs: &[Residue],
    size_bound: u64,
    window: u64,
) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::SigmaNecessity);
    if scheme.sigma().is_invertible() {
        return Err(Error::PreconditionViolated(format!(
            "sigma = {} is invertible; the statement is about the non-invertible case",
            scheme.sigma()
        )));
    }
    let q = scheme.dim();
    let n = q + 1;
    let s_min = (5 * n as u64 + 3).div_ceil(2);
    if size_bound < s_min {
        return Err(Error::PreconditionViolated(format!(
            "size bound {size_bound} below the threshold {s_min}"
        )));
    }
    verdict.note(format!("size threshold ceil((5n+3)/2) = {s_min}"));
    let w = window as i64;
    let reach = w + size_bound as i64 + 1;
    let time_len = (size_bound + window) as usize + 2;
    let seed = Seed::Arithmetic { first, diffs: diffs.to_vec() };
    let grid = GridOrbit::build(
        scheme,
        &seed,
        &vec![-reach; q],
        &vec![2 * reach as usize + 1; q],
        time_len,
    )?;
    let mut orientation = vec![1i8; n];
    for mask in 0..(1u32 << n) {
        for (axis, o) in orientation.iter_mut().enumerate() {
            *o = if mask & (1 << axis) == 0 { 1 } else { -1 };
        }
        for s in s_min..=size_bound {
            let mut apex_space = vec![-w; q];
            loop {
                for j2 in 0..=window {
                    let apex_time = if orientation[n - 1] == 1 { j2 } else { j2 + s - 1 };
                    let spec =
                        SimplexSpec::new(apex_space.clone(), apex_time, orientation.clone(), s)?;
                    verdict.count_instance();
                    if extract(&grid, &spec)?.is_balanced() {
                        verdict.fail(Failure {
                            parameters: format!(
                                "scheme={scheme} orient={orientation:?} s={s} apex={apex_space:?}@{apex_time}"
                            ),
                            witness: "balanced simplex despite non-invertible sigma".into(),
                        });
                    }
                }
                // odometer over the space window
                let mut axis = q;
                loop {
                    if axis == 0 {
                        break;
                    }
                    axis -= 1;
                    apex_space[axis] += 1;
                    if apex_space[axis] <= w {
                        break;
                    }
                    apex_space[axis] = -w;
                }
                if apex_space.iter().all(|&x| x == -w) {
                    break;
                }
            }
        }
    }
    Ok(verdict.finish())
}

/// Exact multinomial coefficient j! / (i_1! ... i_q! (j - sum i)!) mod m,
/// computed from exact binomials; 0 outside the cone.
pub fn multinomial_mod(j: u64, parts: &[i64], modulus: Modulus) -> Result<u32> {
    let mut remaining = j;
    let mut acc: u128 = 1;
    let total: i64 = parts.iter().sum();
    if parts.iter().any(|&p| p < 0) || total < 0 || total as u64 > j {
        return Ok(0);
    }
    for &p in parts {
        let p = p as u64;
        // C(remaining, p)
        let mut c: u128 = 1;
        for i in 0..p {
            c = c.checked_mul((remaining - i) as u128).ok_or(Error::Overflow)?;
            c /= (i + 1) as u128;
        }
        acc = acc.checked_mul(c).ok_or(Error::Overflow)?;
        remaining -= p;
    }
    Ok((acc % modulus.get() as u128) as u32)
}

/// The delta-seed orbit of the Pascal automaton equals the multinomial
/// coefficients mod m at every point of the cone (and 0 outside it).
pub fn verify_pascal_multinomial(q: usize, modulus: Modulus, time_max: u64) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::PascalCorollary);
    let scheme = WeightScheme::pascal(q, modulus);
    let margin = 2i64;
    let lo = vec![-margin; q];
    let extent = vec![(time_max as i64 + 2 * margin + 1) as usize; q];
    let grid = GridOrbit::build(&scheme, &Seed::Delta, &lo, &extent, time_max as usize + 1)?;
    let mut point = lo.clone();
    let hi: Vec<i64> = lo.iter().zip(&extent).map(|(&l, &e)| l + e as i64 - 1).collect();
    loop {
        for j in 0..=time_max {
            let got = grid.value(&point, j)?.value();
            let expect = multinomial_mod(j, &point, modulus)?;
            verdict.count_instance();
            if got != expect {
                verdict.fail(Failure {
                    parameters: format!("q={q} m={} i={point:?} j={j}", modulus.get()),
                    witness: format!("orbit {got} != multinomial {expect}"),
                });
            }
        }
        let mut axis = q;
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            point[axis] += 1;
            if point[axis] <= hi[axis] {
                break;
            }
            point[axis] = lo[axis];
        }
        if point == lo {
            break;
        }
    }
    Ok(verdict.finish())
}

/// The explicit seeds from the Pascal-corollary constructions: d_k = k,
/// with the swap for n odd when some eps_l equals eps_n, and the
/// d_{(n+1)/2} = (3n+1)/2 variant for the +...+- / -...-+ orientations.
pub fn pascal_corollary_diffs(n: usize, modulus: Modulus, orientation: &[i8]) -> Vec<Residue> {
    assert!(n >= 2 && orientation.len() == n);
    let mut d: Vec<i128> = (1..n as i128).collect();
    if n % 2 == 1 {
        let eps_n = orientation[n - 1];
        if let Some(l) = (0..n - 1).find(|&l| orientation[l] == eps_n) {
            let half = (n - 1) / 2;
            d[l] = half as i128;
            d[half - 1] = l as i128 + 1;
        } else {
            d[(n + 1) / 2 - 1] = (3 * n as i128 + 1) / 2;
        }
    }
    d.into_iter().map(|v| modulus.residue(v)).collect()
}

/// Runs the main-orbit suite on the corollary's explicit seed for
/// PCA_{n-1}.
pub fn verify_pascal_corollary(
    n: usize,
    modulus: Modulus,
    orientation: &[i8],
    size_count: usize,
    apex_count: usize,
    rng_seed: u64,
) -> Result<Verdict> {
    if n < 2 || orientation.len() != n {
        return Err(Error::PreconditionViolated(format!(
            "need n >= 2 and an orientation of {n} components"
        )));
    }
    let scheme = WeightScheme::pascal(n - 1, modulus);
    let diffs = pascal_corollary_diffs(n, modulus, orientation);
    let mut verdict = verify_thm1(
        &scheme,
        modulus.zero(),
        &diffs,
        orientation,
        size_count,
        apex_count,
        rng_seed,
    )?;
    verdict.theorem = TheoremId::PascalCorollary;
    verdict.note(format!(
        "construction d = {:?} for orientation {orientation:?}",
        diffs.iter().map(|d| d.value()).collect::<Vec<_>>()
    ));
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::cardinality;

    fn m(v: u32) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(TheoremId::parse(id.name()), Some(id));
        }
        assert_eq!(TheoremId::parse("thm2"), Some(TheoremId::ArithBalanced));
        assert_eq!(TheoremId::parse("thm7"), Some(TheoremId::AntisymTriangle));
        assert_eq!(TheoremId::parse("nope"), None);
    }

    #[test]
    fn hypotheses_examples() {
        // PCA_1, m odd, d invertible, eps = (+,-)
        let m5 = m(5);
        let pca1 = WeightScheme::pascal(1, m5);
        let report = thm1_hypotheses(&pca1, &[m5.one()], &[1, -1]);
        assert!(report.pass(), "clauses {:?}", report.clauses);
        assert_eq!(report.derived, Some(2)); // -2^{-1} mod 5

        // m even fails gcd(m, 2!) = 1
        let m6 = m(6);
        let pca1 = WeightScheme::pascal(1, m6);
        let report = thm1_hypotheses(&pca1, &[m6.one()], &[1, -1]);
        assert!(!report.pass());
        assert!(report.first_failure().unwrap().name.contains("gcd"));

        // PCA_2, m=5, d=(1,2): derived d3 = -1, all differences invertible
        let pca2 = WeightScheme::pascal(2, m5);
        let report = thm1_hypotheses(&pca2, &[m5.one(), m5.residue(2)], &[1, 1, 1]);
        assert!(report.pass(), "clauses {:?}", report.clauses);
        assert_eq!(report.derived, Some(4));
    }

    #[test]
    fn thm1_pca1_small() {
        let m5 = m(5);
        let pca1 = WeightScheme::pascal(1, m5);
        for orient in [[1i8, 1], [1, -1], [-1, 1], [-1, -1]] {
            let v = verify_thm1(&pca1, m5.zero(), &[m5.one()], &orient, 2, 8, DEFAULT_RNG_SEED)
                .unwrap();
            assert!(v.passed(), "orient {orient:?}: {:?}", v.failures);
            assert_eq!(v.instances, 16);
        }
    }

    #[test]
    fn thm1_sizes_for_pca1_mod5() {
        let m5 = m(5);
        let period = size_period(WeightScheme::pascal(1, m5).sigma()).unwrap();
        assert_eq!(period, 20);
        assert_eq!(search::sizes_in_classes(period, &[0, 1], 2), vec![19, 20]);
        // cardinalities per class: 19*20/2/5 = 38 and 20*21/2/5 = 42
        assert_eq!(cardinality(2, 19).unwrap() / 5, 38);
        assert_eq!(cardinality(2, 20).unwrap() / 5, 42);
    }

    #[test]
    fn thm1_modulus_one_is_vacuous() {
        let m1 = m(1);
        let pca1 = WeightScheme::pascal(1, m1);
        let v = verify_thm1(&pca1, m1.zero(), &[m1.zero()], &[1, 1], 2, 3, DEFAULT_RNG_SEED)
            .unwrap();
        assert!(v.passed());
    }

    #[test]
    fn antisym_run_below_min_instances_is_inconclusive() {
        let m5 = m(5);
        let w = WeightScheme::line(&[0, 1, 1], m5).unwrap();
        let v = verify_antisym(&w, m5.zero(), m5.one(), &[1, 1], 1, u64::MAX).unwrap();
        assert!(v.inconclusive);
        assert!(!v.passed());
        assert!(v.failures.is_empty());
    }

    #[test]
    fn thm1_rejects_bad_hypotheses() {
        let m6 = m(6);
        let pca1 = WeightScheme::pascal(1, m6);
        let err =
            verify_thm1(&pca1, m6.zero(), &[m6.one()], &[1, 1], 1, 1, DEFAULT_RNG_SEED).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }

    #[test]
    fn thm2_exhaustive_small() {
        let v = verify_thm2(m(5), 2, true, 0, None, DEFAULT_RNG_SEED).unwrap();
        assert!(v.passed(), "{:?}", v.failures);
        // sigma = 1 orbits reduce to this: spot-check one instance directly
        let t = ArithSimplex::new(
            m(5).zero(),
            vec![m(5).residue(1), m(5).residue(2)],
            4,
        )
        .unwrap();
        assert!(t.as_multiset().unwrap().is_balanced());
    }

    #[test]
    fn triangle_necessary_sweep_small() {
        let v = verify_triangle_necessary(&[4, 5, 6]).unwrap();
        assert!(v.passed(), "{:?}", v.failures);
    }

    #[test]
    fn tetra_mod3_rejects_non_multiples() {
        assert!(verify_tetra_mod3(&[5]).is_err());
    }

    #[test]
    fn thm5_instance() {
        let m10 = m(10);
        let d = [m10.residue(2), m10.residue(1), m10.residue(3)];
        let v = verify_thm5(m10, m10.zero(), d, 2).unwrap();
        assert!(v.passed(), "{:?}", v.failures);
        assert_eq!(v.instances, 6); // sizes {8,10,18,20} balanced + {9,19} not
    }

    #[test]
    fn thm5_rejects_odd_m() {
        let m5 = m(5);
        let d = [m5.residue(2), m5.residue(1), m5.residue(3)];
        assert!(verify_thm5(m5, m5.zero(), d, 1).is_err());
    }

    #[test]
    fn thm6_pca2_mod10() {
        // corollary construction relabeled so gcd(eps1 d1, m) = 2:
        // d = (2, 1), derived d3 = -1
        let m10 = m(10);
        let pca2 = WeightScheme::pascal(2, m10);
        assert_eq!(pca2.sigma().value(), 3);
        let d = [m10.residue(2), m10.one()];
        let v = verify_thm6(&pca2, m10.zero(), &d, &[1, 1, 1], 2, 4, DEFAULT_RNG_SEED).unwrap();
        assert!(v.passed(), "{:?}", v.failures);

        // v2(m) = 2 breaks sigma = 1 mod 2^v2(m) for sigma = 3
        let m4 = m(4);
        let pca2 = WeightScheme::pascal(2, m4);
        let d = [m4.residue(2), m4.one()];
        assert!(verify_thm6(&pca2, m4.zero(), &d, &[1, 1, 1], 1, 1, DEFAULT_RNG_SEED).is_err());

        // odd m rejected
        let m5 = m(5);
        let pca2 = WeightScheme::pascal(2, m5);
        let d = [m5.residue(2), m5.one()];
        assert!(verify_thm6(&pca2, m5.zero(), &d, &[1, 1, 1], 1, 1, DEFAULT_RNG_SEED).is_err());
    }

    #[test]
    fn antisym_triangles_mod5() {
        let m5 = m(5);
        let w = WeightScheme::line(&[0, 1, 1], m5).unwrap();
        assert_eq!(w.sigma().value(), 2);
        assert_eq!(w.sigma_k()[0].value(), 1);
        let v = verify_antisym(&w, m5.zero(), m5.one(), &[1, 1], 2, 5).unwrap();
        assert!(v.passed(), "inconclusive={} failures={:?}", v.inconclusive, v.failures);
        assert!(v.instances >= 5);
    }

    #[test]
    fn antisym_rejects_wrong_sigma_relation() {
        let m5 = m(5);
        let pca1 = WeightScheme::pascal(1, m5); // sigma = 2, sigma' = -1
        let err = verify_antisym(&pca1, m5.zero(), m5.one(), &[1, 1], 1, 1).unwrap_err();
        match err {
            Error::PreconditionViolated(msg) => assert!(msg.contains("2 sigma'")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn antisym_mirror_branch() {
        // sigma = -2 sigma': W = (0, 3, -1) gives sigma = 2, sigma' = -1
        let m5 = m(5);
        let w = WeightScheme::line(&[0, 3, -1], m5).unwrap();
        assert_eq!(w.sigma().value(), 2);
        assert_eq!(w.sigma_k()[0].value(), 4);
        let v = verify_antisym(&w, m5.zero(), m5.one(), &[-1, 1], 2, 1).unwrap();
        assert!(v.passed(), "{:?}", v.failures);
        assert!(v.notes.iter().any(|n| n.contains("mirror")));
    }

    #[test]
    fn constraint_reports() {
        let m5 = m(5);
        let w = WeightScheme::line(&[0, 1, 1], m5).unwrap();
        let report = antisym_constraints(&w, &[m5.one()], &[1, 1], 0, 1).unwrap();
        assert!(report.satisfied(), "{:?}", report.clauses);
        assert_eq!(report.weight_form, Some(vec![0, 1, 1]));

        // all-zero differences satisfy every clause trivially
        let report = antisym_constraints(&w, &[m5.zero()], &[1, 1], 1, 2).unwrap();
        assert!(report.satisfied());

        // a (1,2) pair with incompatible d fails
        let report = antisym_constraints(&w, &[m5.one()], &[1, 1], 1, 2).unwrap();
        assert!(!report.satisfied());
    }

    #[test]
    fn sigma_necessity_threshold_and_scan() {
        // W = (2,2,0) mod 4: sigma = 4 = 0
        let m4 = m(4);
        let w = WeightScheme::line(&[2, 2, 0], m4).unwrap();
        let v = verify_sigma_necessity(&w, m4.zero(), &[m4.one()], 8, 3).unwrap();
        assert!(v.passed(), "{:?}", v.failures);
        assert!(v.notes.iter().any(|n| n.contains("= 7")));

        // threshold formula: n=3 gives 9
        assert_eq!((5 * 3u64 + 3).div_ceil(2), 9);

        // invertible sigma is rejected
        let w = WeightScheme::line(&[1, 1, 0], m(5)).unwrap();
        assert!(verify_sigma_necessity(&w, m(5).zero(), &[m(5).one()], 8, 2).is_err());
    }

    #[test]
    fn multinomial_oracle() {
        let m7 = m(7);
        assert_eq!(multinomial_mod(4, &[2], m7).unwrap(), 6);
        assert_eq!(multinomial_mod(4, &[5], m7).unwrap(), 0);
        assert_eq!(multinomial_mod(0, &[0, 0], m7).unwrap(), 1);
        assert_eq!(multinomial_mod(3, &[1, 1], m7).unwrap(), 6);
        assert_eq!(multinomial_mod(10, &[-1], m7).unwrap(), 0);
    }

    #[test]
    fn pascal_multinomial_small() {
        for q in [1usize, 2] {
            for m_val in [2u32, 7] {
                let v = verify_pascal_multinomial(q, m(m_val), 8).unwrap();
                assert!(v.passed(), "q={q} m={m_val}: {:?}", v.failures);
            }
        }
    }

    #[test]
    fn pascal_corollary_constructions() {
        let m5 = m(5);
        // n = 3 (PCA_2), orientation +++ has eps_1 = eps_3: the swap variant
        let d = pascal_corollary_diffs(3, m5, &[1, 1, 1]);
        let scheme = WeightScheme::pascal(2, m5);
        assert!(thm1_hypotheses(&scheme, &d, &[1, 1, 1]).pass());
        let v = verify_pascal_corollary(3, m5, &[1, 1, 1], 1, 3, DEFAULT_RNG_SEED).unwrap();
        assert!(v.passed(), "{:?}", v.failures);

        // n = 3, +,+,- takes the (3n+1)/2 variant: d = (1, 5)
        let m7 = m(7);
        let d = pascal_corollary_diffs(3, m7, &[1, 1, -1]);
        assert_eq!(d.iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1, 5]);
        let v = verify_pascal_corollary(3, m7, &[1, 1, -1], 1, 3, DEFAULT_RNG_SEED).unwrap();
        assert!(v.passed(), "{:?}", v.failures);

        // n = 2: plain d = (1)
        let v = verify_pascal_corollary(2, m5, &[-1, 1], 1, 4, DEFAULT_RNG_SEED).unwrap();
        assert!(v.passed(), "{:?}", v.failures);
    }

    #[test]
    fn lemma_lem1_shift_invariance() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(53);
        let mut done = 0;
        while done < 25 {
            let m1 = rng.gen_range(2..=4u32);
            let m2 = rng.gen_range(2..=7u32);
            let n = rng.gen_range(2..=3usize);
            if !gcd_with_factorial_is_one(m2, n) {
                continue;
            }
            let m_full = m(m1 * m2);
            let m2_mod = m(m2);
            let d: Vec<Residue> = (0..n)
                .map(|_| m_full.residue(rng.gen_range(0..(m1 * m2)) as i128))
                .collect();
            let proj: Vec<Residue> =
                d.iter().map(|x| m2_mod.residue(x.value() as i128)).collect();
            if !thm2_valid_diffs(m2_mod, &proj) {
                continue;
            }
            let t_tail = rng.gen_range(0..n as u64);
            let s = (rng.gen_range(1..=2u64)) * m2 as u64;
            if s <= t_tail {
                continue;
            }
            let s = s - t_tail;
            let a = m_full.residue(rng.gen_range(0..(m1 * m2)) as i128);
            let scaled: Vec<Residue> = d.iter().map(|x| x.scale(m1 as i128)).collect();
            let t = ArithSimplex::new(a, scaled, s).unwrap();
            let ms = t.as_multiset().unwrap();
            assert!(ms.has_period(m1), "m1={m1} m2={m2} n={n} s={s}");
            done += 1;
        }
    }
}
