//! Arithmetic simplices AS(a, d, s): direct generation, the analytic
//! multiplicity tables of the degenerate and period-two cases, the key
//! multiplicity-difference identity, and the decomposition of orbit
//! simplices into arithmetic subsimplices.

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::automaton::WeightScheme;
use crate::orbit::{closed_form, derived_difference, OrbitPoint};
use crate::residue::{Modulus, Residue};
use crate::simplex::{boundary_cells, cardinality, BoundaryKind, ResidueMultiset, SimplexSpec};
use crate::{Error, Result};

/// Full verification of a decomposition switches to sampling above this
/// many cells.
const DECOMPOSE_FULL_VERIFY_LIMIT: u64 = 10_000_000;
const DECOMPOSE_SAMPLES: usize = 10_000;

/// The multiset { a + i_1 d_1 + ... + i_n d_n : i in N^n, sum i <= s-1 }.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithSimplex {
    pub first: Residue,
    pub diffs: Vec<Residue>,
    pub size: u64,
}

impl ArithSimplex {
    pub fn new(first: Residue, diffs: Vec<Residue>, size: u64) -> Result<Self> {
        if diffs.is_empty() {
            return Err(Error::PreconditionViolated("need at least one common difference".into()));
        }
        if size == 0 {
            return Err(Error::PreconditionViolated("simplex size must be >= 1".into()));
        }
        for d in &diffs {
            assert_eq!(d.modulus(), first.modulus(), "modulus mismatch");
        }
        Ok(ArithSimplex { first, diffs, size })
    }

    pub fn modulus(&self) -> Modulus {
        self.first.modulus()
    }

    pub fn dimension(&self) -> usize {
        self.diffs.len()
    }

    pub fn cardinality(&self) -> Result<u64> {
        cardinality(self.dimension(), self.size)
    }

    /// Entry at simplex coordinates k.
    pub fn cell(&self, k: &[u64]) -> Residue {
        debug_assert_eq!(k.len(), self.dimension());
        let mut v = self.first;
        for (&ki, d) in k.iter().zip(&self.diffs) {
            v = v + d.scale(ki as i128);
        }
        v
    }

    /// Enumerates the whole multiset. Values accumulate by nested partial
    /// sums along each axis, one addition per cell.
    pub fn as_multiset(&self) -> Result<ResidueMultiset> {
        self.cardinality()?;
        let mut ms = ResidueMultiset::new(self.modulus());
        fn rec(
            axis: usize,
            remaining: u64,
            value: Residue,
            diffs: &[Residue],
            ms: &mut ResidueMultiset,
        ) {
            if axis + 1 == diffs.len() {
                let mut v = value;
                for _ in 0..remaining {
                    ms.insert(v);
                    v = v + diffs[axis];
                }
                ms.insert(v);
                return;
            }
            let mut v = value;
            for i in 0..=remaining {
                rec(axis + 1, remaining - i, v, diffs, ms);
                v = v + diffs[axis];
            }
        }
        rec(0, self.size - 1, self.first, &self.diffs, &mut ms);
        Ok(ms)
    }

    pub fn is_balanced(&self) -> Result<bool> {
        Ok(self.as_multiset()?.is_balanced())
    }

    /// The multiset identity that re-bases the simplex at vertex `pivot`
    /// (1-based): AS(a + (s-1) d_p, (..., -d_p at p, ..., d_k - d_p, ...), s).
    pub fn rebased(&self, pivot: usize) -> Result<ArithSimplex> {
        let n = self.dimension();
        if pivot == 0 || pivot > n {
            return Err(Error::IndexOutOfRange { index: pivot, limit: n });
        }
        let dp = self.diffs[pivot - 1];
        let first = self.first + dp.scale(self.size as i128 - 1);
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, &d)| if i == pivot - 1 { -dp } else { d - dp })
            .collect();
        ArithSimplex::new(first, diffs, self.size)
    }

    /// The multiset identity that permutes the common differences.
    pub fn permuted(&self, perm: &[usize]) -> Result<ArithSimplex> {
        let n = self.dimension();
        if perm.len() != n {
            return Err(Error::IndexOutOfRange { index: perm.len(), limit: n });
        }
        let mut diffs = Vec::with_capacity(n);
        for &p in perm {
            if p >= n {
                return Err(Error::IndexOutOfRange { index: p, limit: n - 1 });
            }
            diffs.push(self.diffs[p]);
        }
        ArithSimplex::new(self.first, diffs, self.size)
    }

    /// Vertex value V_k = a + (s-1) d_k, with d_0 = 0.
    pub fn vertex(&self, k: usize) -> Result<Residue> {
        let n = self.dimension();
        if k > n {
            return Err(Error::IndexOutOfRange { index: k, limit: n });
        }
        if k == 0 {
            Ok(self.first)
        } else {
            Ok(self.first + self.diffs[k - 1].scale(self.size as i128 - 1))
        }
    }

    fn diff_for(&self, k: usize) -> Residue {
        if k == 0 {
            self.modulus().zero()
        } else {
            self.diffs[k - 1]
        }
    }

    /// The designated boundary part with its closed-form description:
    /// vertices are points, edges arithmetic progressions, facets and rows
    /// arithmetic simplices of one dimension less.
    pub fn boundary(&self, kind: BoundaryKind) -> Result<ArithBoundary> {
        let n = self.dimension();
        let s = self.size;
        let description = match kind {
            BoundaryKind::Vertex(k) => ArithDescription::Point(self.vertex(k)?),
            BoundaryKind::Edge(k, l) => {
                if k > n || l > n || k == l {
                    return Err(Error::IndexOutOfRange { index: k.max(l), limit: n });
                }
                ArithDescription::Progression {
                    first: self.vertex(k)?,
                    diff: self.diff_for(l) - self.diff_for(k),
                    len: s,
                }
            }
            BoundaryKind::Facet(k) => {
                if n < 2 {
                    return Err(Error::PreconditionViolated(
                        "facets need a simplex of dimension >= 2".into(),
                    ));
                }
                if k > n {
                    return Err(Error::IndexOutOfRange { index: k, limit: n });
                }
                if k == 0 {
                    let d1 = self.diffs[0];
                    let first = self.first + d1.scale(s as i128 - 1);
                    let diffs = self.diffs[1..].iter().map(|&d| d - d1).collect();
                    ArithDescription::Simplex(ArithSimplex::new(first, diffs, s)?)
                } else {
                    let diffs: Vec<Residue> = self
                        .diffs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != k - 1)
                        .map(|(_, &d)| d)
                        .collect();
                    ArithDescription::Simplex(ArithSimplex::new(self.first, diffs, s)?)
                }
            }
            BoundaryKind::Row(k) => {
                if n < 2 {
                    return Err(Error::PreconditionViolated(
                        "rows need a simplex of dimension >= 2".into(),
                    ));
                }
                if k >= s {
                    return Err(Error::IndexOutOfRange {
                        index: k as usize,
                        limit: s as usize - 1,
                    });
                }
                let dn = self.diffs[n - 1];
                let first = self.first + dn.scale(k as i128);
                let diffs = self.diffs[..n - 1].to_vec();
                ArithDescription::Simplex(ArithSimplex::new(first, diffs, s - k)?)
            }
        };
        let multiset = description.multiset()?;
        if cfg!(debug_assertions) {
            // cross-check the description against the raw cell enumeration
            let mut direct = ResidueMultiset::new(self.modulus());
            for cell in boundary_cells(n, s, kind)? {
                direct.insert(self.cell(&cell));
            }
            debug_assert_eq!(direct.counts_table(), multiset.counts_table());
        }
        Ok(ArithBoundary { kind, description, multiset })
    }
}

/// Closed-form description of a boundary part of an arithmetic simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithDescription {
    Point(Residue),
    Progression { first: Residue, diff: Residue, len: u64 },
    Simplex(ArithSimplex),
}

impl ArithDescription {
    pub fn multiset(&self) -> Result<ResidueMultiset> {
        match self {
            ArithDescription::Point(r) => {
                Ok(ResidueMultiset::from_residues(r.modulus(), [*r]))
            }
            ArithDescription::Progression { first, diff, len } => {
                let mut ms = ResidueMultiset::new(first.modulus());
                let mut v = *first;
                for _ in 0..*len {
                    ms.insert(v);
                    v = v + *diff;
                }
                Ok(ms)
            }
            ArithDescription::Simplex(t) => t.as_multiset(),
        }
    }
}

/// A boundary part together with its description and payload multiset.
#[derive(Clone, Debug)]
pub struct ArithBoundary {
    pub kind: BoundaryKind,
    pub description: ArithDescription,
    pub multiset: ResidueMultiset,
}

/// The multiplicity table of the degenerate triangle AS(a, (0, d), s) with
/// d invertible: m(a + i d) = C(lambda+1, 2) m + ceil((s-i)/m) (mu - i)
/// where s = lambda m + mu. Strictly decreasing in i; never balanced.
#[derive(Clone, Debug)]
pub struct DegenerateTable {
    pub first: Residue,
    pub diff: Residue,
    pub size: u64,
    /// m(a + i d) indexed by i in [0, m-1].
    pub by_step: Vec<u64>,
    /// Full multiplicity function indexed by residue.
    pub by_residue: Vec<u64>,
    pub strictly_decreasing: bool,
}

pub fn analytic_degenerate(a: Residue, d: Residue, size: u64) -> Result<DegenerateTable> {
    if !d.is_invertible() {
        return Err(Error::NotInvertible {
            value: d.value(),
            modulus: d.modulus().get(),
            gcd: d.gcd_with_modulus(),
        });
    }
    if size == 0 {
        return Err(Error::PreconditionViolated("size must be >= 1".into()));
    }
    let m = d.modulus().get() as i128;
    let (lambda, mu) = d.modulus().split(size);
    let (lambda, mu) = (lambda as i128, mu as i128);
    let s = size as i128;
    let mut by_step = Vec::with_capacity(m as usize);
    for i in 0..m {
        let ceil = (s - i + m - 1).div_euclid(m);
        let count = lambda * (lambda + 1) / 2 * m + ceil * (mu - i);
        debug_assert!(count >= 0, "negative multiplicity at i={i}");
        by_step.push(count as u64);
    }
    let mut by_residue = vec![0u64; m as usize];
    let mut x = a;
    for &c in &by_step {
        by_residue[x.value() as usize] = c;
        x = x + d;
    }
    let strictly_decreasing = by_step.windows(2).all(|w| w[0] > w[1]);
    Ok(DegenerateTable { first: a, diff: d, size, by_step, by_residue, strictly_decreasing })
}

/// The multiplicity table of AS(a, (d1, d2), s) with d2 and d2 - d1
/// invertible and s = 0 or -1 mod m: the function has period gcd(d1, m) and
/// m(a + i d2) = C(s+1,2)/m + ceil(s/m) ((g-1)/2 - i) on i in [0, g-1].
/// Halves are tracked scaled by two; every entry is integral.
#[derive(Clone, Debug)]
pub struct Period2Table {
    pub period: u32,
    /// m(a + i d2) indexed by i in [0, g-1].
    pub by_step: Vec<u64>,
    /// Full multiplicity function indexed by residue.
    pub by_residue: Vec<u64>,
}

pub fn analytic_period2(a: Residue, d1: Residue, d2: Residue, size: u64) -> Result<Period2Table> {
    let modulus = a.modulus();
    let m = modulus.get();
    if !d2.is_invertible() {
        return Err(Error::PreconditionViolated(format!(
            "d2 = {d2} must be invertible mod {m}"
        )));
    }
    if !(d2 - d1).is_invertible() {
        return Err(Error::PreconditionViolated(format!(
            "d2 - d1 = {} must be invertible mod {m}",
            d2 - d1
        )));
    }
    let rem = size % m as u64;
    if !(rem == 0 || rem == (m - 1) as u64) {
        return Err(Error::PreconditionViolated(format!(
            "size {size} must be 0 or -1 mod {m}"
        )));
    }
    let g = d1.gcd_with_modulus();
    let s = size as i128;
    let mi = m as i128;
    let ceil_s = (s + mi - 1).div_euclid(mi);
    // 2 C(s+1,2) = s (s+1) is divisible by m for the admitted sizes
    let doubled_balanced = s * (s + 1) / mi;
    let mut by_step = Vec::with_capacity(g as usize);
    for i in 0..g as i128 {
        let doubled = doubled_balanced + ceil_s * (g as i128 - 1 - 2 * i);
        debug_assert!(doubled >= 0 && doubled % 2 == 0, "entry not integral at i={i}");
        by_step.push((doubled / 2) as u64);
    }
    // spread along residues: m(x) = m(x + g), classes keyed by a + i d2 mod g
    let d2_mod_g = Modulus::new(g).expect("g >= 1").residue(d2.value() as i128);
    let inv_d2 = d2_mod_g.inv().expect("d2 invertible mod m, hence mod g");
    let mut by_residue = vec![0u64; m as usize];
    for x in 0..m {
        let offset = (x + m - a.value() % m) % m % g;
        let i = (offset as u64 * inv_d2.value() as u64 % g as u64) as usize;
        by_residue[x as usize] = by_step[i];
    }
    Ok(Period2Table { period: g, by_step, by_residue })
}

/// The multiplicity-difference identity between a simplex and its facets:
/// m(x + d_j) - m(x + d_i) = m_{F_j}(x + d_j) - m_{F_i}(x + d_i) for every
/// x, with d_0 = 0. Returns whether it holds at every x.
pub fn key_lemma_check(t: &ArithSimplex, i: usize, j: usize) -> Result<bool> {
    let n = t.dimension();
    if n < 2 {
        return Err(Error::PreconditionViolated("key lemma needs dimension >= 2".into()));
    }
    if !(i < j && j <= n) {
        return Err(Error::IndexOutOfRange { index: j.max(i), limit: n });
    }
    let whole = t.as_multiset()?;
    let fi = t.boundary(BoundaryKind::Facet(i))?.multiset;
    let fj = t.boundary(BoundaryKind::Facet(j))?.multiset;
    let di = t.diff_for(i);
    let dj = t.diff_for(j);
    for x in t.modulus().residues() {
        let lhs = whole.count((x + dj).value()) as i128 - whole.count((x + di).value()) as i128;
        let rhs = fj.count((x + dj).value()) as i128 - fi.count((x + di).value()) as i128;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One arithmetic subsimplex of a decomposition, keyed by its offset
/// k in [0, alpha-1]^n.
#[derive(Clone, Debug)]
pub struct DecompPart {
    pub index: Vec<u64>,
    pub simplex: ArithSimplex,
}

/// The decomposition of an orbit simplex into alpha^n arithmetic
/// subsimplices (empty offsets omitted), with a verification flag.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub alpha: u64,
    pub tail: u64,
    pub parts: Vec<DecompPart>,
    pub verified: bool,
}

/// Decomposes the simplex `spec` of the orbit of AA(first, diffs) by
/// extracting one term every `alpha` along each component. Requires sigma
/// invertible, ord(sigma) dividing alpha, and s = -t mod alpha with
/// t in [0, n-1]. Each part SS_k is the arithmetic simplex
/// AS(a_{j+eps*k}, alpha sigma^{j_n + eps_n k_n} eps*d~, ceil(s/alpha) -
/// floor((sum k + t)/alpha)).
pub fn decompose(
    scheme: &WeightScheme,
    first: Residue,
    diffs: &[Residue],
    spec: &SimplexSpec,
    alpha: u64,
) -> Result<Decomposition> {
    let n = spec.dimension();
    assert_eq!(scheme.dim(), n - 1, "spec dimension mismatch");
    let sigma = scheme.sigma();
    let ord = sigma.ord()?;
    if alpha == 0 || alpha % ord != 0 {
        return Err(Error::PreconditionViolated(format!(
            "alpha = {alpha} must be a positive multiple of ord(sigma) = {ord}"
        )));
    }
    let s = spec.size();
    let tail = (alpha - s % alpha) % alpha;
    if tail as usize > n - 1 {
        return Err(Error::PreconditionViolated(format!(
            "size {s} is -{tail} mod {alpha}, outside [0, {}]",
            n - 1
        )));
    }
    let lambda = (s + tail) / alpha;
    let d_next = derived_difference(scheme, diffs)?;
    let mut extended = diffs.to_vec();
    extended.push(d_next);

    let mut parts = Vec::new();
    let mut offsets = vec![0u64; n];
    loop {
        let total: u64 = offsets.iter().sum();
        let part_size = lambda as i128 - ((total + tail) / alpha) as i128;
        if part_size >= 1 {
            let (space, time) = spec.locate(&offsets)?;
            let apex = closed_form(scheme, first, diffs, &OrbitPoint::new(space, time))?;
            let scale = sigma.pow(time);
            let part_diffs: Vec<Residue> = extended
                .iter()
                .zip(spec.orientation())
                .map(|(&d, &eps)| (scale * d).scale(alpha as i128 * eps as i128))
                .collect();
            parts.push(DecompPart {
                index: offsets.clone(),
                simplex: ArithSimplex::new(apex, part_diffs, part_size as u64)?,
            });
        }
        // odometer over [0, alpha-1]^n
        let mut axis = n;
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            offsets[axis] += 1;
            if offsets[axis] < alpha {
                break;
            }
            offsets[axis] = 0;
        }
        if offsets.iter().all(|&o| o == 0) {
            break;
        }
    }

    let verified = verify_decomposition(scheme, first, diffs, spec, alpha, &parts)?;
    Ok(Decomposition { alpha, tail, parts, verified })
}

fn verify_decomposition(
    scheme: &WeightScheme,
    first: Residue,
    diffs: &[Residue],
    spec: &SimplexSpec,
    alpha: u64,
    parts: &[DecompPart],
) -> Result<bool> {
    let n = spec.dimension();
    let total = cardinality(n, spec.size())?;
    let mut part_total = 0u64;
    for p in parts {
        part_total += p.simplex.cardinality()?;
    }
    if part_total != total {
        return Ok(false);
    }

    let locate_part_cell = |part: &DecompPart, l: &[u64]| -> Result<Residue> {
        let cell: Vec<u64> = part
            .index
            .iter()
            .zip(l)
            .map(|(&k, &li)| k + alpha * li)
            .collect();
        let (space, time) = spec.locate(&cell)?;
        closed_form(scheme, first, diffs, &OrbitPoint::new(space, time))
    };

    if total <= DECOMPOSE_FULL_VERIFY_LIMIT {
        // every predicted cell equals the orbit value, and the parts'
        // multiset union equals the extracted simplex
        let mut union = ResidueMultiset::new(scheme.modulus());
        for part in parts {
            let mut ok = true;
            crate::simplex::for_each_cell(n, part.simplex.size, |l| {
                if part.simplex.cell(l) != locate_part_cell(part, l)? {
                    ok = false;
                }
                Ok(())
            })?;
            if !ok {
                return Ok(false);
            }
            union.merge(&part.simplex.as_multiset()?);
        }
        let orbit = crate::orbit::ClosedFormOrbit::new(scheme, first, diffs.to_vec())?;
        let extracted = crate::simplex::extract(&orbit, spec)?;
        Ok(union.counts_table() == extracted.counts_table())
    } else {
        // sampled pointwise check of the predicted descriptions
        let mut rng = StdRng::seed_from_u64(0x5u64);
        for _ in 0..DECOMPOSE_SAMPLES {
            let part = &parts[rng.gen_range(0..parts.len())];
            let mut l = vec![0u64; n];
            let mut remaining = part.simplex.size - 1;
            for axis in 0..n {
                let v = rng.gen_range(0..=remaining);
                l[axis] = v;
                remaining -= v;
            }
            if part.simplex.cell(&l) != locate_part_cell(part, &l)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Euclidean split of a size by the modulus, s = lambda m + mu.
pub fn euclidean_split(modulus: Modulus, size: u64) -> (u64, u64) {
    modulus.split(size)
}

/// gcd helper on raw values (d may be zero: gcd(0, m) = m).
pub fn gcd_with(modulus: Modulus, value: u32) -> u32 {
    if value == 0 {
        modulus.get()
    } else {
        value.gcd(&modulus.get())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::WeightScheme;
    use crate::simplex::SimplexData;

    fn m(v: u32) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn simplex(m_val: u32, a: i128, d: &[i128], s: u64) -> ArithSimplex {
        let modulus = m(m_val);
        ArithSimplex::new(
            modulus.residue(a),
            d.iter().map(|&x| modulus.residue(x)).collect(),
            s,
        )
        .unwrap()
    }

    /// Plain nested-loop enumeration, the oracle for the incremental path.
    fn enumerate_oracle(t: &ArithSimplex) -> ResidueMultiset {
        let mut ms = ResidueMultiset::new(t.modulus());
        let n = t.dimension();
        crate::simplex::for_each_cell(n, t.size, |k| {
            let mut v = t.first;
            for (axis, &ki) in k.iter().enumerate() {
                v = v + t.diffs[axis].scale(ki as i128);
            }
            ms.insert(v);
            Ok(())
        })
        .unwrap();
        ms
    }

    #[test]
    fn multiset_matches_figure4_tetrahedron() {
        let t = simplex(5, 0, &[1, 2, 3], 5);
        let text = "\
0,1,2,3,4\n2,3,4,0\n4,0,1\n1,2\n3\n
3,4,0,1\n0,1,2\n2,3\n4\n
1,2,3\n3,4\n0\n
4,0\n1\n
2\n";
        let data = SimplexData::parse(m(5), text).unwrap();
        assert_eq!(
            t.as_multiset().unwrap().counts_table(),
            data.multiset().counts_table()
        );
        // and cell-by-cell
        for k3 in 0..5u64 {
            for k2 in 0..5 - k3 {
                for k1 in 0..5 - k3 - k2 {
                    assert_eq!(
                        t.cell(&[k1, k2, k3]),
                        data.cell(&[k1, k2, k3]).unwrap(),
                        "cell ({k1},{k2},{k3})"
                    );
                }
            }
        }
    }

    #[test]
    fn multiset_matches_table1() {
        let t = simplex(12, 0, &[1, 5], 12);
        let counts = t.as_multiset().unwrap().counts_table();
        assert_eq!(counts, vec![5, 6, 7, 8, 5, 6, 7, 8, 5, 6, 7, 8]);
    }

    #[test]
    fn singleton_simplex() {
        let t = simplex(7, 3, &[1, 2], 1);
        let ms = t.as_multiset().unwrap();
        assert_eq!(ms.total(), 1);
        assert_eq!(ms.count(3), 1);
    }

    #[test]
    fn incremental_enumeration_matches_oracle() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..60 {
            let m_val = rng.gen_range(1..=30u32);
            let n = rng.gen_range(1..=4usize);
            let s = rng.gen_range(1..=9u64);
            let d: Vec<i128> = (0..n).map(|_| rng.gen_range(-20..20)).collect();
            let t = simplex(m_val, rng.gen_range(-20..20), &d, s);
            assert_eq!(
                t.as_multiset().unwrap().counts_table(),
                enumerate_oracle(&t).counts_table()
            );
        }
    }

    #[test]
    fn rebase_and_permutation_identities() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(37);
        for _ in 0..40 {
            let m_val = rng.gen_range(2..=20u32);
            let n = rng.gen_range(1..=3usize);
            let s = rng.gen_range(1..=7u64);
            let d: Vec<i128> = (0..n).map(|_| rng.gen_range(0..m_val as i128)).collect();
            let t = simplex(m_val, rng.gen_range(0..m_val as i128), &d, s);
            let base = t.as_multiset().unwrap().counts_table();
            for pivot in 1..=n {
                let r = t.rebased(pivot).unwrap();
                assert_eq!(r.as_multiset().unwrap().counts_table(), base, "pivot {pivot}");
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.reverse();
            let p = t.permuted(&perm).unwrap();
            assert_eq!(p.as_multiset().unwrap().counts_table(), base);
        }
    }

    #[test]
    fn boundary_examples() {
        // rows of the figure-4 tetrahedron
        let t = simplex(5, 0, &[1, 2, 3], 5);
        let row1 = t.boundary(BoundaryKind::Row(1)).unwrap();
        match row1.description {
            ArithDescription::Simplex(ref s) => {
                assert_eq!(s.first.value(), 3);
                assert_eq!(s.diffs.iter().map(|d| d.value()).collect::<Vec<_>>(), vec![1, 2]);
                assert_eq!(s.size, 4);
            }
            ref other => panic!("expected a simplex, got {other:?}"),
        }
        // principal vertex is the first element
        let v0 = t.boundary(BoundaryKind::Vertex(0)).unwrap();
        assert_eq!(v0.description, ArithDescription::Point(m(5).residue(0)));
        // facet 1 of AS(0,(1,2),4) drops d_1
        let tri = simplex(5, 0, &[1, 2], 4);
        let f1 = tri.boundary(BoundaryKind::Facet(1)).unwrap();
        match f1.description {
            ArithDescription::Simplex(ref s) => {
                assert_eq!(s.diffs.len(), 1);
                assert_eq!(s.diffs[0].value(), 2);
                assert_eq!(s.size, 4);
            }
            ref other => panic!("expected a simplex, got {other:?}"),
        }
        assert_eq!(f1.multiset.counts_table(), vec![1, 1, 1, 0, 1]);
        assert_eq!(
            f1.multiset.total(),
            cardinality(1, 4).unwrap()
        );
        assert!(tri.boundary(BoundaryKind::Facet(3)).is_err());
    }

    #[test]
    fn degenerate_table_example() {
        let m5 = m(5);
        let table = analytic_degenerate(m5.zero(), m5.one(), 7).unwrap();
        assert_eq!(table.by_step, vec![9, 7, 5, 4, 3]);
        assert!(table.strictly_decreasing);
        assert_eq!(table.by_step.iter().sum::<u64>(), cardinality(2, 7).unwrap());
        // against direct enumeration of AS(0,(0,1),7)
        let t = simplex(5, 0, &[0, 1], 7);
        assert_eq!(t.as_multiset().unwrap().counts_table(), table.by_residue);
    }

    #[test]
    fn degenerate_table_full_period() {
        // s = m: the table is m, m-1, ..., 1
        for m_val in [3u32, 5, 8] {
            let modulus = m(m_val);
            let table = analytic_degenerate(modulus.residue(2), modulus.one(), m_val as u64).unwrap();
            let expected: Vec<u64> = (1..=m_val as u64).rev().collect();
            assert_eq!(table.by_step, expected);
        }
    }

    #[test]
    fn degenerate_is_never_balanced() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(41);
        let mut done = 0;
        while done < 100 {
            let m_val = rng.gen_range(2..=40u32);
            let modulus = m(m_val);
            let d = modulus.residue(rng.gen_range(1..m_val) as i128);
            if !d.is_invertible() {
                continue;
            }
            let s = rng.gen_range(1..=3 * m_val as u64);
            let a = modulus.residue(rng.gen_range(0..m_val) as i128);
            let table = analytic_degenerate(a, d, s).unwrap();
            let t = ArithSimplex::new(a, vec![modulus.zero(), d], s).unwrap();
            let direct = t.as_multiset().unwrap();
            assert_eq!(direct.counts_table(), table.by_residue);
            assert!(!direct.is_balanced());
            // the strict chain needs every class present, i.e. s >= m-1
            assert_eq!(table.strictly_decreasing, s >= m_val as u64 - 1, "m={m_val} s={s}");
            done += 1;
        }
    }

    #[test]
    fn period2_table_matches_table1() {
        // AS(0,(1,5),12) rebased and permuted so the non-invertible
        // difference sits first: AS(11,(4,11),12)
        let t = simplex(12, 0, &[1, 5], 12);
        let relabeled = t.rebased(1).unwrap().permuted(&[1, 0]).unwrap();
        assert_eq!(relabeled.first.value(), 11);
        assert_eq!(relabeled.diffs[0].value(), 4);
        let table = analytic_period2(
            relabeled.first,
            relabeled.diffs[0],
            relabeled.diffs[1],
            relabeled.size,
        )
        .unwrap();
        assert_eq!(table.period, 4);
        assert_eq!(table.by_step, vec![8, 7, 6, 5]);
        assert_eq!(
            table.by_residue,
            t.as_multiset().unwrap().counts_table()
        );
    }

    #[test]
    fn period2_balanced_when_d1_invertible() {
        let m5 = m(5);
        let table = analytic_period2(m5.residue(2), m5.residue(3), m5.one(), 10).unwrap();
        assert_eq!(table.period, 1);
        assert!(table.by_residue.iter().all(|&c| c == cardinality(2, 10).unwrap() / 5));
    }

    #[test]
    fn period2_matches_enumeration() {
        let t = simplex(10, 0, &[2, 1], 10);
        let table = analytic_period2(t.first, t.diffs[0], t.diffs[1], t.size).unwrap();
        assert_eq!(table.period, 2);
        assert_eq!(table.by_residue, t.as_multiset().unwrap().counts_table());
        // s = -1 mod m branch
        let t = simplex(10, 3, &[4, 3], 19);
        let table = analytic_period2(t.first, t.diffs[0], t.diffs[1], t.size).unwrap();
        assert_eq!(table.period, 2);
        assert_eq!(table.by_residue, t.as_multiset().unwrap().counts_table());
    }

    #[test]
    fn period2_rejects_bad_hypotheses() {
        let m10 = m(10);
        let err = analytic_period2(m10.zero(), m10.residue(2), m10.residue(4), 10).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
        let err = analytic_period2(m10.zero(), m10.residue(2), m10.residue(1), 7).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }

    #[test]
    fn key_lemma_examples() {
        let t = simplex(5, 0, &[1, 2], 4);
        assert!(key_lemma_check(&t, 1, 2).unwrap());
        assert!(key_lemma_check(&t, 0, 1).unwrap());
        let tiny = simplex(7, 4, &[2, 3, 5], 1);
        assert!(key_lemma_check(&tiny, 1, 3).unwrap());
        assert!(key_lemma_check(&tiny, 0, 2).unwrap());
        assert!(key_lemma_check(&tiny, 2, 2).is_err());
    }

    #[test]
    fn key_lemma_random_instances() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..40 {
            let m_val = rng.gen_range(2..=25u32);
            let n = rng.gen_range(2..=4usize);
            let s = rng.gen_range(1..=10u64);
            let d: Vec<i128> = (0..n).map(|_| rng.gen_range(0..m_val as i128)).collect();
            let t = simplex(m_val, rng.gen_range(0..m_val as i128), &d, s);
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(i + 1..=n);
            assert!(key_lemma_check(&t, i, j).unwrap(), "m={m_val} n={n} s={s}");
        }
    }

    #[test]
    fn decompose_example_alpha2() {
        let m5 = m(5);
        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        let spec = SimplexSpec::new(vec![0], 0, vec![1, 1], 10).unwrap();
        let dec = decompose(&w, m5.zero(), &[m5.one()], &spec, 2).unwrap();
        assert!(dec.verified);
        assert_eq!(dec.parts.len(), 4);
        let find = |idx: &[u64]| {
            dec.parts
                .iter()
                .find(|p| p.index == idx)
                .map(|p| {
                    (
                        p.simplex.first.value(),
                        p.simplex.diffs.iter().map(|d| d.value()).collect::<Vec<_>>(),
                        p.simplex.size,
                    )
                })
                .unwrap()
        };
        assert_eq!(find(&[0, 0]), (0, vec![2, 2], 5));
        assert_eq!(find(&[0, 1]), (4, vec![3, 3], 5));
        assert_eq!(find(&[1, 1]).2, 4);
    }

    #[test]
    fn decompose_identity_when_sigma_is_one() {
        let m7 = m(7);
        let w = WeightScheme::line(&[0, 1, 0], m7).unwrap();
        assert_eq!(w.sigma().value(), 1);
        let spec = SimplexSpec::new(vec![3], 2, vec![1, 1], 6).unwrap();
        let dec = decompose(&w, m7.residue(2), &[m7.residue(3)], &spec, 1).unwrap();
        assert!(dec.verified);
        assert_eq!(dec.parts.len(), 1);
        let part = &dec.parts[0].simplex;
        assert_eq!(part.size, 6);
        assert_eq!(part.first, m7.residue(2 + 3 * 3));
    }

    #[test]
    fn decompose_pascal_sixteen_parts() {
        let m5 = m(5);
        let w = WeightScheme::pascal(1, m5);
        assert_eq!(w.sigma().ord().unwrap(), 4);
        let spec = SimplexSpec::new(vec![0], 0, vec![1, 1], 20).unwrap();
        let dec = decompose(&w, m5.zero(), &[m5.one()], &spec, 4).unwrap();
        assert!(dec.verified);
        assert_eq!(dec.parts.len(), 16);
        let mut sizes: Vec<u64> = dec.parts.iter().map(|p| p.simplex.size).collect();
        sizes.sort_unstable();
        assert!(sizes.iter().all(|&s| s == 4 || s == 5));
    }

    #[test]
    fn decompose_rejects_bad_sizes() {
        let m5 = m(5);
        let w = WeightScheme::pascal(1, m5);
        let spec = SimplexSpec::new(vec![0], 0, vec![1, 1], 18).unwrap();
        // 18 = -2 mod 4, outside t in [0, 1] for n = 2
        let err = decompose(&w, m5.zero(), &[m5.one()], &spec, 4).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
        // alpha not a multiple of ord(sigma) = 4
        let spec = SimplexSpec::new(vec![0], 0, vec![1, 1], 10).unwrap();
        let err = decompose(&w, m5.zero(), &[m5.one()], &spec, 2).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }

    #[test]
    fn decompose_random_partitions() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(47);
        let mut done = 0;
        while done < 15 {
            let m_val = rng.gen_range(2..=12u32);
            let modulus = m(m_val);
            let weights: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
            let Ok(w) = WeightScheme::line(&weights, modulus) else { continue };
            if !w.sigma().is_invertible() {
                continue;
            }
            let ord = w.sigma().ord().unwrap();
            let alpha = ord * rng.gen_range(1..=2u64);
            let t = rng.gen_range(0..=1u64).min(alpha - 1);
            let lambda = rng.gen_range(1..=3u64);
            let s = lambda * alpha - t;
            if s == 0 {
                continue;
            }
            let eps_time: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let apex_time = if eps_time == 1 { rng.gen_range(0..4) } else { s - 1 + rng.gen_range(0..3) };
            let eps_space: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let spec = SimplexSpec::new(
                vec![rng.gen_range(-5..5)],
                apex_time,
                vec![eps_space, eps_time],
                s,
            )
            .unwrap();
            let first = modulus.residue(rng.gen_range(0..m_val) as i128);
            let diffs = vec![modulus.residue(rng.gen_range(0..m_val) as i128)];
            let dec = decompose(&w, first, &diffs, &spec, alpha).unwrap();
            assert!(dec.verified, "scheme {w} spec {spec:?} alpha {alpha}");
            done += 1;
        }
    }
}
