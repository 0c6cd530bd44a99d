//! Oriented simplices extracted from orbits or explicit arrays, residue
//! multisets with balance tests, projections, boundary parts and
//! antisymmetry checks.
//!
//! A simplex of dimension n = q+1 and size s collects the orbit entries
//! a_{j + eps*k} over all k in N^n with k_1 + ... + k_n <= s-1. The last
//! orientation component runs along the time axis.

use std::collections::BTreeMap;

use crate::orbit::OrbitSource;
use crate::residue::{Modulus, Residue};
use crate::{Error, Result};

/// Counts above this modulus switch to a sparse map.
const DENSE_LIMIT: u32 = 1 << 20;

/// Identifies one oriented simplex inside an orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexSpec {
    apex_space: Vec<i64>,
    apex_time: u64,
    orientation: Vec<i8>,
    size: u64,
}

impl SimplexSpec {
    /// `orientation` holds n = q+1 entries of +-1, the last one along time.
    /// A simplex pointing backwards in time must fit above time 0.
    pub fn new(apex_space: Vec<i64>, apex_time: u64, orientation: Vec<i8>, size: u64) -> Result<Self> {
        if size == 0 {
            return Err(Error::PreconditionViolated("simplex size must be >= 1".into()));
        }
        if orientation.len() != apex_space.len() + 1 {
            return Err(Error::PreconditionViolated(format!(
                "orientation needs {} components, got {}",
                apex_space.len() + 1,
                orientation.len()
            )));
        }
        if orientation.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::PreconditionViolated("orientation entries must be +-1".into()));
        }
        if *orientation.last().unwrap() == -1 && apex_time < size - 1 {
            return Err(Error::OutOfDomain(format!(
                "backward simplex of size {size} from time {apex_time} crosses time 0"
            )));
        }
        Ok(SimplexSpec { apex_space, apex_time, orientation, size })
    }

    /// Parses "++-" style orientation strings.
    pub fn parse_orientation(text: &str) -> Result<Vec<i8>> {
        let o: Vec<i8> = text
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Parse(format!("bad orientation char {other:?}"))),
            })
            .collect::<Result<_>>()?;
        if o.is_empty() {
            return Err(Error::Parse("empty orientation".into()));
        }
        Ok(o)
    }

    pub fn apex_space(&self) -> &[i64] {
        &self.apex_space
    }

    pub fn apex_time(&self) -> u64 {
        self.apex_time
    }

    pub fn orientation(&self) -> &[i8] {
        &self.orientation
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// n, the simplex dimension (space axes + time).
    pub fn dimension(&self) -> usize {
        self.orientation.len()
    }

    /// Maps simplex coordinates k to an orbit position.
    pub fn locate(&self, k: &[u64]) -> Result<(Vec<i64>, u64)> {
        let q = self.apex_space.len();
        let mut space = vec![0i64; q];
        for u in 0..q {
            space[u] = self.apex_space[u] + self.orientation[u] as i64 * k[u] as i64;
        }
        let time = if self.orientation[q] == 1 {
            self.apex_time + k[q]
        } else {
            self.apex_time
                .checked_sub(k[q])
                .ok_or_else(|| Error::OutOfDomain(format!("cell {k:?} is below time 0")))?
        };
        Ok((space, time))
    }
}

/// Visits every k in N^n with k_1 + ... + k_n <= size-1, last axis varying
/// fastest.
pub fn for_each_cell<F>(n: usize, size: u64, mut f: F) -> Result<()>
where
    F: FnMut(&[u64]) -> Result<()>,
{
    fn rec(
        axis: usize,
        remaining: u64,
        k: &mut Vec<u64>,
        f: &mut dyn FnMut(&[u64]) -> Result<()>,
    ) -> Result<()> {
        if axis + 1 == k.len() {
            for v in 0..=remaining {
                k[axis] = v;
                f(k)?;
            }
            k[axis] = 0;
            return Ok(());
        }
        for v in 0..=remaining {
            k[axis] = v;
            rec(axis + 1, remaining - v, k, f)?;
        }
        k[axis] = 0;
        Ok(())
    }
    assert!(n >= 1 && size >= 1);
    let mut k = vec![0u64; n];
    rec(0, size - 1, &mut k, &mut f)
}

/// Multiset cardinality of an n-simplex of size s: C(s+n-1, n).
pub fn cardinality(n: usize, size: u64) -> Result<u64> {
    if n == 0 || size == 0 {
        return Err(Error::PreconditionViolated("cardinality wants n >= 1, s >= 1".into()));
    }
    let mut acc: u128 = 1;
    for i in 0..n as u64 {
        acc = acc.checked_mul((size + i) as u128).ok_or(Error::Overflow)?;
        acc /= (i + 1) as u128;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow)
}

/// All sizes s <= bound with m dividing C(s+n-1, n). Computed without big
/// integers: the rising product is taken mod m*n!, then divided by n!.
pub fn admissible_sizes(modulus: Modulus, n: usize, bound: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut factorial: u128 = 1;
    for i in 1..=n as u128 {
        factorial *= i;
    }
    let scaled = factorial * modulus.get() as u128;
    (1..=bound)
        .filter(|&s| {
            let mut product: u128 = 1;
            for i in 0..n as u64 {
                product = product * ((s + i) as u128 % scaled) % scaled;
            }
            (product / factorial) % modulus.get() as u128 == 0
        })
        .collect()
}

#[derive(Clone, Debug)]
enum CountStore {
    Dense(Vec<u64>),
    Sparse(BTreeMap<u32, u64>),
}

/// A multiset of Z/mZ as its multiplicity function, with cached cardinality.
#[derive(Clone, Debug)]
pub struct ResidueMultiset {
    modulus: Modulus,
    counts: CountStore,
    total: u64,
}

impl ResidueMultiset {
    pub fn new(modulus: Modulus) -> Self {
        let counts = if modulus.get() <= DENSE_LIMIT {
            CountStore::Dense(vec![0; modulus.get() as usize])
        } else {
            CountStore::Sparse(BTreeMap::new())
        };
        ResidueMultiset { modulus, counts, total: 0 }
    }

    pub fn from_residues<I: IntoIterator<Item = Residue>>(modulus: Modulus, iter: I) -> Self {
        let mut ms = Self::new(modulus);
        for r in iter {
            ms.insert(r);
        }
        ms
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn insert(&mut self, r: Residue) {
        self.insert_count(r, 1);
    }

    pub fn insert_count(&mut self, r: Residue, k: u64) {
        assert_eq!(r.modulus(), self.modulus, "modulus mismatch");
        if k == 0 {
            return;
        }
        match &mut self.counts {
            CountStore::Dense(v) => v[r.value() as usize] += k,
            CountStore::Sparse(map) => *map.entry(r.value()).or_insert(0) += k,
        }
        self.total += k;
    }

    pub fn count(&self, x: u32) -> u64 {
        debug_assert!(x < self.modulus.get());
        match &self.counts {
            CountStore::Dense(v) => v[x as usize],
            CountStore::Sparse(map) => map.get(&x).copied().unwrap_or(0),
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// (residue, count) pairs with nonzero count, in residue order.
    pub fn nonzero_counts(&self) -> Vec<(u32, u64)> {
        match &self.counts {
            CountStore::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(x, &c)| (x as u32, c))
                .collect(),
            CountStore::Sparse(map) => map.iter().map(|(&x, &c)| (x, c)).collect(),
        }
    }

    /// The full multiplicity table; only sensible for small m.
    pub fn counts_table(&self) -> Vec<u64> {
        let m = self.modulus.get() as usize;
        match &self.counts {
            CountStore::Dense(v) => v.clone(),
            CountStore::Sparse(map) => {
                let mut v = vec![0; m];
                for (&x, &c) in map {
                    v[x as usize] = c;
                }
                v
            }
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.balance_witness().is_none()
    }

    /// None when balanced; otherwise the pair (x, y) where x is the smallest
    /// residue of minimal multiplicity and y the smallest of maximal
    /// multiplicity.
    pub fn balance_witness(&self) -> Option<(Residue, Residue)> {
        let m = self.modulus.get();
        let mut min: Option<(u64, u32)> = None;
        let mut max: Option<(u64, u32)> = None;
        let mut note = |count: u64, x: u32| {
            if min.map_or(true, |(c, _)| count < c) {
                min = Some((count, x));
            }
            if max.map_or(true, |(c, _)| count > c) {
                max = Some((count, x));
            }
        };
        match &self.counts {
            CountStore::Dense(v) => {
                for (x, &c) in v.iter().enumerate() {
                    note(c, x as u32);
                }
            }
            CountStore::Sparse(map) => {
                if (map.len() as u64) < m as u64 {
                    // smallest residue that never occurs
                    let mut missing = 0u32;
                    for &x in map.keys() {
                        if x != missing {
                            break;
                        }
                        missing += 1;
                    }
                    note(0, missing);
                }
                for (&x, &c) in map {
                    note(c, x);
                }
            }
        }
        let (min_c, min_x) = min.unwrap();
        let (max_c, max_x) = max.unwrap();
        if min_c == max_c {
            None
        } else {
            Some((self.modulus.residue(min_x as i128), self.modulus.residue(max_x as i128)))
        }
    }

    /// Adds another multiset over the same modulus (sharded extraction).
    pub fn merge(&mut self, other: &ResidueMultiset) {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        for (x, c) in other.nonzero_counts() {
            self.insert_count(self.modulus.residue(x as i128), c);
        }
    }

    /// Projection into Z/alphaZ: counts fold along residue classes mod alpha.
    pub fn project(&self, alpha: u32) -> Result<ResidueMultiset> {
        let m = self.modulus.get();
        if alpha == 0 || m % alpha != 0 {
            return Err(Error::NotADivisor { alpha, modulus: m });
        }
        let target = Modulus::new(alpha).expect("alpha >= 1");
        let mut out = ResidueMultiset::new(target);
        for (x, c) in self.nonzero_counts() {
            out.insert_count(target.residue((x % alpha) as i128), c);
        }
        Ok(out)
    }

    /// Whether the multiplicity function has period `alpha`:
    /// m(x + alpha) = m(x) for all x. `alpha` must divide m.
    pub fn has_period(&self, alpha: u32) -> bool {
        let m = self.modulus.get();
        debug_assert!(alpha >= 1 && m % alpha == 0);
        match &self.counts {
            CountStore::Dense(v) => (0..m).all(|x| {
                let shifted = (x + alpha) % m;
                v[x as usize] == v[shifted as usize]
            }),
            CountStore::Sparse(map) => map.iter().all(|(&x, &c)| {
                let fwd = ((x as u64 + alpha as u64) % m as u64) as u32;
                let bwd = ((x as u64 + m as u64 - alpha as u64) % m as u64) as u32;
                self.count(fwd) == c && self.count(bwd) == c
            }),
        }
    }
}

/// The projection theorem as a runnable oracle: M is balanced in Z/mZ
/// exactly when its projection mod alpha is balanced and the multiplicity
/// function has period alpha. Returns whether the equivalence holds.
pub fn check_projection_theorem(ms: &ResidueMultiset, alpha: u32) -> Result<bool> {
    let m = ms.modulus().get();
    if alpha == 0 || m % alpha != 0 {
        return Err(Error::NotADivisor { alpha, modulus: m });
    }
    let lhs = ms.project(alpha)?.is_balanced() && ms.has_period(alpha);
    Ok(lhs == ms.is_balanced())
}

/// Extracts the simplex as a residue multiset; exactly C(s+n-1, n) entries.
pub fn extract<S: OrbitSource + ?Sized>(source: &S, spec: &SimplexSpec) -> Result<ResidueMultiset> {
    let n = spec.dimension();
    assert_eq!(source.dim(), n - 1, "source dimension mismatch");
    let mut ms = ResidueMultiset::new(source.modulus());
    for_each_cell(n, spec.size(), |k| {
        let (space, time) = spec.locate(k)?;
        ms.insert(source.value(&space, time)?);
        Ok(())
    })?;
    Ok(ms)
}

/// Boundary parts of a simplex, after the vertex/edge/facet/row definitions.
/// Vertex and facet indices run over 0..=n, paper style.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    Vertex(usize),
    Edge(usize, usize),
    Facet(usize),
    Row(u64),
}

/// Enumerates the cells k of the given boundary part of an n-simplex of
/// size s. Shared by orbit simplices and arithmetic ones.
pub fn boundary_cells(n: usize, size: u64, kind: BoundaryKind) -> Result<Vec<Vec<u64>>> {
    let unit = |k: usize| -> Vec<u64> {
        // e_0 is the zero vector, e_k the k-th basis vector
        let mut v = vec![0u64; n];
        if k >= 1 {
            v[k - 1] = 1;
        }
        v
    };
    match kind {
        BoundaryKind::Vertex(k) => {
            if k > n {
                return Err(Error::IndexOutOfRange { index: k, limit: n });
            }
            let mut cell = unit(k);
            cell.iter_mut().for_each(|c| *c *= size - 1);
            Ok(vec![cell])
        }
        BoundaryKind::Edge(k, l) => {
            if k > n || l > n || k == l {
                return Err(Error::IndexOutOfRange { index: k.max(l), limit: n });
            }
            let ek = unit(k);
            let el = unit(l);
            Ok((0..size)
                .map(|x| {
                    (0..n)
                        .map(|axis| (size - 1 - x) * ek[axis] + x * el[axis])
                        .collect()
                })
                .collect())
        }
        BoundaryKind::Facet(k) => {
            if k > n {
                return Err(Error::IndexOutOfRange { index: k, limit: n });
            }
            let mut cells = Vec::new();
            for_each_cell(n, size, |cell| {
                let keep = if k == 0 {
                    cell.iter().sum::<u64>() == size - 1
                } else {
                    cell[k - 1] == 0
                };
                if keep {
                    cells.push(cell.to_vec());
                }
                Ok(())
            })?;
            Ok(cells)
        }
        BoundaryKind::Row(k) => {
            if k >= size {
                return Err(Error::IndexOutOfRange { index: k as usize, limit: size as usize - 1 });
            }
            let mut cells = Vec::new();
            for_each_cell(n, size, |cell| {
                if cell[n - 1] == k {
                    cells.push(cell.to_vec());
                }
                Ok(())
            })?;
            Ok(cells)
        }
    }
}

/// Multiset of a boundary part of an orbit simplex.
pub fn boundary_of_spec<S: OrbitSource + ?Sized>(
    source: &S,
    spec: &SimplexSpec,
    kind: BoundaryKind,
) -> Result<ResidueMultiset> {
    let mut ms = ResidueMultiset::new(source.modulus());
    for cell in boundary_cells(spec.dimension(), spec.size(), kind)? {
        let (space, time) = spec.locate(&cell)?;
        ms.insert(source.value(&space, time)?);
    }
    Ok(ms)
}

/// A finite sequence is antisymmetric when every entry and its mirror sum
/// to zero.
pub fn sequence_is_antisymmetric(seq: &[Residue]) -> bool {
    let s = seq.len();
    (0..s).all(|i| (seq[i] + seq[s - 1 - i]).is_zero())
}

/// The (u,v)-antisymmetry test over simplex cells, 0 <= u < v <= n.
/// For u >= 1 the partner of k swaps coordinates u and v; for u = 0 it
/// replaces coordinate v with s - 1 - (k_1 + ... + k_n).
pub fn is_antisymmetric_cells<F>(n: usize, size: u64, u: usize, v: usize, mut cell: F) -> Result<bool>
where
    F: FnMut(&[u64]) -> Result<Residue>,
{
    if !(u < v && v <= n) {
        return Err(Error::IndexOutOfRange { index: v.max(u), limit: n });
    }
    let mut ok = true;
    let mut partner = vec![0u64; n];
    for_each_cell(n, size, |k| {
        if !ok {
            return Ok(());
        }
        partner.copy_from_slice(k);
        if u >= 1 {
            partner.swap(u - 1, v - 1);
        } else {
            let total: u64 = k.iter().sum();
            partner[v - 1] = size - 1 - total;
        }
        let sum = cell(k)? + cell(&partner)?;
        if !sum.is_zero() {
            ok = false;
        }
        Ok(())
    })?;
    Ok(ok)
}

/// (u,v)-antisymmetry of a simplex inside an orbit.
pub fn spec_is_antisymmetric<S: OrbitSource + ?Sized>(
    source: &S,
    spec: &SimplexSpec,
    u: usize,
    v: usize,
) -> Result<bool> {
    is_antisymmetric_cells(spec.dimension(), spec.size(), u, v, |k| {
        let (space, time) = spec.locate(k)?;
        source.value(&space, time)
    })
}

/// Explicit simplex data entered as triangular text: one row per line,
/// comma-separated, shrinking by one per line; tetrahedra as blank-line
/// separated triangle groups of shrinking size. Line index is the k_2
/// coordinate, position the k_1 coordinate, group (if any) the k_3.
#[derive(Clone, Debug)]
pub struct SimplexData {
    modulus: Modulus,
    n: usize,
    size: u64,
    cells: BTreeMap<Vec<u64>, u32>,
}

impl SimplexData {
    pub fn parse(modulus: Modulus, text: &str) -> Result<Self> {
        let mut groups: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut current: Vec<Vec<i64>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                if !current.is_empty() {
                    groups.push(std::mem::take(&mut current));
                }
                continue;
            }
            let row = line
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<i64>>>()?;
            current.push(row);
        }
        if !current.is_empty() {
            groups.push(current);
        }
        if groups.is_empty() {
            return Err(Error::Parse("no simplex data found".into()));
        }
        let size = groups[0][0].len() as u64;
        let n = if groups.len() == 1 { 2 } else { 3 };
        if n == 3 && groups.len() as u64 != size {
            return Err(Error::Parse(format!(
                "expected {size} groups for a tetrahedron of size {size}, got {}",
                groups.len()
            )));
        }
        let mut cells = BTreeMap::new();
        for (g, group) in groups.iter().enumerate() {
            let gsize = size - g as u64;
            if group.len() as u64 != gsize {
                return Err(Error::Parse(format!(
                    "group {g} should have {gsize} lines, got {}",
                    group.len()
                )));
            }
            for (line_idx, row) in group.iter().enumerate() {
                let expected = gsize - line_idx as u64;
                if row.len() as u64 != expected {
                    return Err(Error::Parse(format!(
                        "group {g} line {line_idx} should have {expected} entries, got {}",
                        row.len()
                    )));
                }
                for (pos, &value) in row.iter().enumerate() {
                    let key = if n == 2 {
                        vec![pos as u64, line_idx as u64]
                    } else {
                        vec![pos as u64, line_idx as u64, g as u64]
                    };
                    cells.insert(key, modulus.residue(value as i128).value());
                }
            }
        }
        Ok(SimplexData { modulus, n, size, cells })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn cell(&self, k: &[u64]) -> Result<Residue> {
        self.cells
            .get(k)
            .map(|&v| self.modulus.residue(v as i128))
            .ok_or_else(|| Error::OutOfDomain(format!("no cell at {k:?}")))
    }

    pub fn multiset(&self) -> ResidueMultiset {
        ResidueMultiset::from_residues(
            self.modulus,
            self.cells.values().map(|&v| self.modulus.residue(v as i128)),
        )
    }

    pub fn is_antisymmetric(&self, u: usize, v: usize) -> Result<bool> {
        is_antisymmetric_cells(self.n, self.size, u, v, |k| self.cell(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::WeightScheme;
    use crate::orbit::ClosedFormOrbit;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn m(v: u32) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn cardinality_formula() {
        assert_eq!(cardinality(2, 5).unwrap(), 15);
        assert_eq!(cardinality(3, 5).unwrap(), 35);
        for s in 1..20 {
            assert_eq!(cardinality(1, s).unwrap(), s);
        }
        assert!(matches!(cardinality(4, u64::MAX / 2), Err(Error::Overflow)));
    }

    #[test]
    fn extraction_matches_figure_counts() {
        let m5 = m(5);
        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        let orbit = ClosedFormOrbit::new(&w, m5.zero(), vec![m5.one()]).unwrap();
        let spec = SimplexSpec::new(vec![2], 2, vec![1, 1], 5).unwrap();
        let ms = extract(&orbit, &spec).unwrap();
        assert_eq!(ms.counts_table(), vec![2, 2, 4, 5, 2]);
        assert!(!ms.is_balanced());
        assert_eq!(ms.total(), cardinality(2, 5).unwrap());
    }

    #[test]
    fn extraction_singleton() {
        let m5 = m(5);
        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        let orbit = ClosedFormOrbit::new(&w, m5.zero(), vec![m5.one()]).unwrap();
        let spec = SimplexSpec::new(vec![3], 1, vec![1, 1], 1).unwrap();
        let ms = extract(&orbit, &spec).unwrap();
        assert_eq!(ms.total(), 1);
        let v = orbit.value(&[3], 1).unwrap();
        assert_eq!(ms.count(v.value()), 1);
    }

    #[test]
    fn steinhaus_triangle_from_pascal_orbit() {
        // PCA_1, AP(0,1) mod 3: the (-+) triangle at apex (4, 0) of size 5
        // has rows (0,1,2,0,1), (1,0,2,1), (1,2,0), (0,2), (2).
        let m3 = m(3);
        let w = WeightScheme::pascal(1, m3);
        let orbit = ClosedFormOrbit::new(&w, m3.zero(), vec![m3.one()]).unwrap();
        let spec = SimplexSpec::new(vec![4], 0, vec![-1, 1], 5).unwrap();
        let ms = extract(&orbit, &spec).unwrap();
        assert_eq!(ms.counts_table(), vec![5, 5, 5]);
        assert!(ms.is_balanced());
    }

    #[test]
    fn backward_simplexes_must_fit() {
        assert!(matches!(
            SimplexSpec::new(vec![0], 3, vec![1, -1], 5),
            Err(Error::OutOfDomain(_))
        ));
        assert!(SimplexSpec::new(vec![0], 4, vec![1, -1], 5).is_ok());
    }

    #[test]
    fn balance_witness_is_min_max() {
        let m12 = m(12);
        let mut ms = ResidueMultiset::new(m12);
        for x in 0..12u32 {
            ms.insert_count(m12.residue(x as i128), [5u64, 6, 7, 8][(x % 4) as usize]);
        }
        let (lo, hi) = ms.balance_witness().unwrap();
        assert_eq!((lo.value(), hi.value()), (0, 3));

        let m1 = m(1);
        let mut ms = ResidueMultiset::new(m1);
        ms.insert_count(m1.zero(), 17);
        assert!(ms.is_balanced());
    }

    #[test]
    fn sparse_counts_behave_like_dense() {
        let big = m(1 << 24);
        let mut ms = ResidueMultiset::new(big);
        ms.insert(big.residue(5));
        ms.insert(big.residue(5));
        ms.insert(big.residue(9));
        assert_eq!(ms.count(5), 2);
        assert_eq!(ms.count(9), 1);
        assert_eq!(ms.count(11), 0);
        assert_eq!(ms.total(), 3);
        let (lo, hi) = ms.balance_witness().unwrap();
        assert_eq!((lo.value(), hi.value()), (0, 5));
    }

    #[test]
    fn projection_folds_counts() {
        let m12 = m(12);
        let mut ms = ResidueMultiset::new(m12);
        for x in 0..12u32 {
            ms.insert_count(m12.residue(x as i128), [5u64, 6, 7, 8][(x % 4) as usize]);
        }
        let p4 = ms.project(4).unwrap();
        assert_eq!(p4.counts_table(), vec![15, 18, 21, 24]);
        assert_eq!(p4.total(), ms.total());
        let id = ms.project(12).unwrap();
        assert_eq!(id.counts_table(), ms.counts_table());
        let one = ms.project(1).unwrap();
        assert_eq!(one.counts_table(), vec![ms.total()]);
        assert!(matches!(ms.project(5), Err(Error::NotADivisor { .. })));
        assert!(check_projection_theorem(&ms, 4).unwrap());
    }

    #[test]
    fn admissible_size_lists() {
        assert_eq!(admissible_sizes(m(5), 2, 12), vec![4, 5, 9, 10]);
        assert_eq!(admissible_sizes(m(2), 2, 8), vec![3, 4, 7, 8]);
        assert_eq!(admissible_sizes(m(1), 2, 5), vec![1, 2, 3, 4, 5]);
        // cross-check against the exact binomial
        let listed = admissible_sizes(m(12), 3, 40);
        for s in 1..=40 {
            let divisible = cardinality(3, s).unwrap() % 12 == 0;
            assert_eq!(divisible, listed.contains(&s), "s={s}");
        }
    }

    #[test]
    fn boundary_cardinalities() {
        let n = 3;
        let s = 5;
        for k in 0..=n {
            let cells = boundary_cells(n, s, BoundaryKind::Facet(k)).unwrap();
            assert_eq!(cells.len() as u64, cardinality(n - 1, s).unwrap());
        }
        for k in 0..s {
            let cells = boundary_cells(n, s, BoundaryKind::Row(k)).unwrap();
            assert_eq!(cells.len() as u64, cardinality(n - 1, s - k).unwrap());
        }
        let edge = boundary_cells(n, s, BoundaryKind::Edge(0, 2)).unwrap();
        assert_eq!(edge.len() as u64, s);
        assert!(boundary_cells(n, s, BoundaryKind::Facet(4)).is_err());
        assert!(boundary_cells(n, s, BoundaryKind::Row(5)).is_err());
    }

    #[test]
    fn antisymmetric_sequence_example() {
        let m5 = m(5);
        let seq: Vec<Residue> = [2, 2, 1, 0, 4, 3, 3].iter().map(|&v| m5.residue(v)).collect();
        assert!(sequence_is_antisymmetric(&seq));
        let seq: Vec<Residue> = [2, 2, 1, 1, 4, 3, 3].iter().map(|&v| m5.residue(v)).collect();
        assert!(!sequence_is_antisymmetric(&seq));
    }

    const FIG9_TETRA: &str = "\
0,1,1,3,6
6,0,4,5
6,3,0
4,2
1

0,4,0,1
3,0,3
0,4
6

0,2,3
5,0
4

0,5
2

0
";

    #[test]
    fn figure9_tetrahedron_is_12_antisymmetric() {
        let data = SimplexData::parse(m(7), FIG9_TETRA).unwrap();
        assert_eq!(data.dimension(), 3);
        assert_eq!(data.size(), 5);
        assert!(data.is_antisymmetric(1, 2).unwrap());
        assert!(!data.is_antisymmetric(1, 3).unwrap());
        // in a (1,2)-antisymmetric simplex all cells with k_1 = k_2 vanish
        for g in 0..5u64 {
            for d in 0..5u64 {
                if let Ok(v) = data.cell(&[d, d, g]) {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn all_zero_simplex_is_antisymmetric_everywhere() {
        let m5 = m(5);
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            let ok = is_antisymmetric_cells(2, 4, u, v, |_| Ok(m5.zero())).unwrap();
            assert!(ok);
        }
    }

    #[test]
    fn triangle_text_round_trip() {
        let text = "0,1,2,3,4\n2,3,4,0\n4,0,1\n1,2\n3\n";
        let data = SimplexData::parse(m(5), text).unwrap();
        assert_eq!(data.dimension(), 2);
        // matches AS(0,(1,2),5): cell value = k1 + 2*k2
        for k2 in 0..5u64 {
            for k1 in 0..5u64 - k2 {
                let v = data.cell(&[k1, k2]).unwrap();
                assert_eq!(v.value() as u64, (k1 + 2 * k2) % 5);
            }
        }
        assert!(SimplexData::parse(m(5), "1,2\n3,4\n").is_err());
    }

    #[test]
    fn merge_shards_by_addition() {
        let m7 = m(7);
        let mut rng = StdRng::seed_from_u64(23);
        let values: Vec<Residue> = (0..100).map(|_| m7.residue(rng.gen_range(0..7))).collect();
        let whole = ResidueMultiset::from_residues(m7, values.iter().copied());
        let mut left = ResidueMultiset::from_residues(m7, values[..40].iter().copied());
        let right = ResidueMultiset::from_residues(m7, values[40..].iter().copied());
        left.merge(&right);
        assert_eq!(left.counts_table(), whole.counts_table());
    }

    proptest! {
        #[test]
        fn projection_preserves_totals_and_balance(
            m_small in 1u32..40,
            counts in proptest::collection::vec(0u64..20, 1..40),
        ) {
            let modulus = Modulus::new(m_small).unwrap();
            let mut ms = ResidueMultiset::new(modulus);
            for (i, &c) in counts.iter().enumerate() {
                ms.insert_count(modulus.residue(i as i128), c);
            }
            let divisors: Vec<u32> = (1..=m_small).filter(|a| m_small % a == 0).collect();
            for alpha in divisors {
                let p = ms.project(alpha).unwrap();
                prop_assert_eq!(p.total(), ms.total());
                if ms.is_balanced() {
                    prop_assert!(p.is_balanced());
                }
                prop_assert!(check_projection_theorem(&ms, alpha).unwrap());
            }
        }

        #[test]
        fn cell_enumeration_count_is_the_binomial(
            s in 1u64..10,
            n in 1usize..4,
        ) {
            let mut seen = 0u64;
            for_each_cell(n, s, |_| { seen += 1; Ok(()) }).unwrap();
            prop_assert_eq!(seen, cardinality(n, s).unwrap());
        }
    }
}
