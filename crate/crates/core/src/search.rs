//! Exhaustive search over Steinhaus triangles: first rows are enumerated as
//! base-m counters in lexicographic order, the triangle grows one
//! anti-diagonal per digit, and running residue counts prune as soon as any
//! class exceeds its balanced share.
//!
//! Shards are contiguous index intervals; results are independent of the
//! sharding and of the worker count. Optional symmetry reduction
//! canonicalizes first rows under unit scaling with exact orbit-stabilizer
//! weights, so counts stay exact.

use num_integer::Integer;
use rayon::prelude::*;

use crate::residue::{size_period, Modulus, Residue};
use crate::simplex::{cardinality, ResidueMultiset};
use crate::verify::{Failure, TheoremId, Verdict};
use crate::{Error, Result};

/// Largest unsharded first-row space; bigger runs must shard explicitly.
pub const DEFAULT_SEARCH_LIMIT: u64 = 1 << 30;

/// A Steinhaus triangle: a first row of s residues and the s-1 derived rows
/// of adjacent sums (row k+1 entry i = row k entry i + row k entry i+1).
#[derive(Clone, Debug)]
pub struct SteinhausTriangle {
    modulus: Modulus,
    rows: Vec<Vec<u32>>,
}

impl SteinhausTriangle {
    pub fn new(modulus: Modulus, first_row: &[u32]) -> Self {
        assert!(!first_row.is_empty(), "first row must be non-empty");
        let m = modulus.get() as u64;
        let mut rows = Vec::with_capacity(first_row.len());
        rows.push(first_row.iter().map(|&v| (v as u64 % m) as u32).collect::<Vec<u32>>());
        while rows.last().unwrap().len() > 1 {
            let prev = rows.last().unwrap();
            let next: Vec<u32> = prev
                .windows(2)
                .map(|w| ((w[0] as u64 + w[1] as u64) % m) as u32)
                .collect();
            rows.push(next);
        }
        SteinhausTriangle { modulus, rows }
    }

    pub fn from_residues(modulus: Modulus, first_row: &[Residue]) -> Self {
        let raw: Vec<u32> = first_row.iter().map(|r| r.value()).collect();
        Self::new(modulus, &raw)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn size(&self) -> u64 {
        self.rows[0].len() as u64
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn multiset(&self) -> ResidueMultiset {
        ResidueMultiset::from_residues(
            self.modulus,
            self.rows
                .iter()
                .flatten()
                .map(|&v| self.modulus.residue(v as i128)),
        )
    }

    pub fn is_balanced(&self) -> bool {
        self.multiset().is_balanced()
    }
}

/// A contiguous interval of first-row indices, [start, end).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchShard {
    pub start: u64,
    pub end: u64,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Canonicalize first rows under unit scaling and weight by orbit size.
    pub symmetry: bool,
    /// Keep the balanced rows (canonical representatives under symmetry).
    pub collect: bool,
    /// Refuse unsharded runs above this many first rows.
    pub limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { symmetry: false, collect: true, limit: DEFAULT_SEARCH_LIMIT }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// m^s, the full first-row space.
    pub space: u64,
    /// Exact number of balanced triangles (orbit-weighted under symmetry).
    pub balanced: u64,
    /// Balanced first rows, in enumeration order.
    pub rows: Vec<Vec<u32>>,
    /// Set when the size is inadmissible and enumeration was skipped.
    pub skipped: Option<String>,
}

/// Unit-scaling canonicalization tables for one modulus.
struct CanonTables {
    /// Minimal associate u*v over units u, indexed by v.
    canonical: Vec<u32>,
    units: Vec<u32>,
    /// unit count congruent to 1 mod d, for every divisor d of m.
    stab: Vec<(u32, u64)>,
}

impl CanonTables {
    fn build(m: u32) -> Self {
        let units: Vec<u32> = (1..=m).filter(|&u| u.gcd(&m) == 1).collect();
        let units = if m == 1 { vec![0] } else { units };
        let mut canonical: Vec<u32> = (0..m.max(1)).collect();
        for v in 1..m {
            let mut best = v;
            for &u in &units {
                let scaled = (u as u64 * v as u64 % m as u64) as u32;
                best = best.min(scaled);
            }
            canonical[v as usize] = best;
        }
        let mut stab = Vec::new();
        for d in 1..=m {
            if m % d == 0 {
                let count = units.iter().filter(|&&u| u % d == 1 % d).count() as u64;
                stab.push((d, count));
            }
        }
        CanonTables { canonical, units, stab }
    }

    fn phi(&self) -> u64 {
        self.units.len() as u64
    }

    fn stab_count(&self, d: u32) -> u64 {
        self.stab
            .iter()
            .find(|&&(div, _)| div == d)
            .map(|&(_, c)| c)
            .expect("d divides m")
    }

    /// Orbit size of a row whose entries have gcd `g` with m.
    fn orbit_weight(&self, m: u32, g: u32) -> u64 {
        self.phi() / self.stab_count(m / g)
    }

    /// Whether `row` is the lexicographically smallest among its unit
    /// scalings.
    fn is_lex_min(&self, m: u32, row: &[u32]) -> bool {
        for &u in &self.units {
            for (i, &v) in row.iter().enumerate() {
                let scaled = (u as u64 * v as u64 % m as u64) as u32;
                match scaled.cmp(&row[i]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }
}

/// Exhaustive (optionally sharded) enumeration of balanced Steinhaus
/// triangles of size `size` in Z/mZ. Deterministic: results depend only on
/// (m, size, shard interval, options).
pub fn search_balanced(
    modulus: Modulus,
    size: u64,
    shard: Option<SearchShard>,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    let m = modulus.get();
    if size == 0 || size > 48 {
        return Err(Error::PreconditionViolated(format!(
            "triangle size {size} out of supported range [1, 48]"
        )));
    }
    let space_u128 = (m as u128).pow(size as u32);
    if space_u128 > u64::MAX as u128 {
        return Err(Error::BudgetExceeded { needed: space_u128, budget: u64::MAX });
    }
    let space = space_u128 as u64;
    let cells = cardinality(2, size)?;
    if cells % m as u64 != 0 {
        return Ok(SearchOutcome {
            space,
            balanced: 0,
            rows: Vec::new(),
            skipped: Some(format!(
                "{m} does not divide the cell count {cells}; no admissible triangle"
            )),
        });
    }
    let shard = match shard {
        Some(sh) => {
            if sh.start > sh.end || sh.end > space {
                return Err(Error::PreconditionViolated(format!(
                    "shard {}..{} outside 0..{space}",
                    sh.start, sh.end
                )));
            }
            sh
        }
        None => {
            if space > opts.limit {
                return Err(Error::BudgetExceeded { needed: space as u128, budget: opts.limit });
            }
            SearchShard { start: 0, end: space }
        }
    };
    let target = cells / m as u64;
    let canon = opts.symmetry.then(|| CanonTables::build(m));
    let (balanced, rows) = run_shard(m, size as usize, shard, target, canon.as_ref(), opts.collect);
    Ok(SearchOutcome { space, balanced, rows, skipped: None })
}

/// Splits the index space into `shards` contiguous intervals and runs them
/// on the rayon pool, merging in shard order.
pub fn search_balanced_parallel(
    modulus: Modulus,
    size: u64,
    shards: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    let shards = shards.max(1);
    let m = modulus.get();
    let space_u128 = (m as u128).pow(size as u32);
    if space_u128 > u64::MAX as u128 {
        return Err(Error::BudgetExceeded { needed: space_u128, budget: u64::MAX });
    }
    let space = space_u128 as u64;
    let bounds = shard_bounds(space, shards);
    let results: Vec<Result<SearchOutcome>> = bounds
        .par_iter()
        .map(|&(start, end)| search_balanced(modulus, size, Some(SearchShard { start, end }), opts))
        .collect();
    let mut merged = SearchOutcome { space, balanced: 0, rows: Vec::new(), skipped: None };
    for r in results {
        let r = r?;
        merged.balanced += r.balanced;
        merged.rows.extend(r.rows);
        merged.skipped = merged.skipped.or(r.skipped);
    }
    Ok(merged)
}

/// Contiguous shard intervals covering [0, space).
pub fn shard_bounds(space: u64, shards: usize) -> Vec<(u64, u64)> {
    let shards = shards.max(1) as u64;
    let chunk = space.div_ceil(shards);
    (0..shards)
        .map(|i| (i * chunk, ((i + 1) * chunk).min(space)))
        .filter(|&(a, b)| a < b)
        .collect()
}

/// The DFS odometer over one index interval. Digits are placed most
/// significant first; pruning skips the whole subtree below a digit as soon
/// as a residue count exceeds the balanced share.
fn run_shard(
    m: u32,
    size: usize,
    shard: SearchShard,
    target: u64,
    canon: Option<&CanonTables>,
    collect: bool,
) -> (u64, Vec<Vec<u32>>) {
    let m64 = m as u64;
    // pow[pos] = m^(size-1-pos)
    let mut pow = vec![1u64; size];
    for pos in (0..size - 1).rev() {
        pow[pos] = pow[pos + 1] * m64;
    }
    let mut digits = vec![0u32; size];
    // diagonal pos holds the pos+1 new cells produced by digit pos
    let mut diag = vec![0u32; size * size];
    let mut counts = vec![0u64; m as usize];
    let mut built = 0usize;
    let mut balanced = 0u64;
    let mut rows = Vec::new();

    let mut idx = shard.start;
    'outer: while idx < shard.end {
        // longest prefix shared with the already-built state
        let mut p = 0usize;
        while p < built && digits[p] == ((idx / pow[p]) % m64) as u32 {
            p += 1;
        }
        while built > p {
            built -= 1;
            for i in 0..=built {
                counts[diag[built * size + i] as usize] -= 1;
            }
        }
        while built < size {
            let pos = built;
            let dg = ((idx / pow[pos]) % m64) as u32;
            digits[pos] = dg;
            if let Some(c) = canon {
                // at the first nonzero digit only minimal associates survive
                let first_nonzero = digits[..pos].iter().all(|&d| d == 0);
                if first_nonzero && dg != 0 && c.canonical[dg as usize] != dg {
                    idx = skip_subtree(idx, pow[pos]);
                    continue 'outer;
                }
            }
            // new anti-diagonal: row k gains cell diag[k] = prev[k-1] + diag[k-1]
            diag[pos * size] = dg;
            for k in 1..=pos {
                let prev = diag[(pos - 1) * size + (k - 1)] as u64;
                let below = diag[pos * size + (k - 1)] as u64;
                diag[pos * size + k] = ((prev + below) % m64) as u32;
            }
            let mut applied = 0usize;
            let mut pruned = false;
            for k in 0..=pos {
                let v = diag[pos * size + k] as usize;
                counts[v] += 1;
                applied += 1;
                if counts[v] > target {
                    pruned = true;
                    break;
                }
            }
            if pruned {
                for k in 0..applied {
                    counts[diag[pos * size + k] as usize] -= 1;
                }
                idx = skip_subtree(idx, pow[pos]);
                continue 'outer;
            }
            built = pos + 1;
        }
        // a full row survived every prune: counts are capped by target and
        // sum to m*target, so the triangle is balanced
        let weight = match canon {
            Some(c) => {
                if !c.is_lex_min(m, &digits) {
                    idx += 1;
                    continue 'outer;
                }
                let mut g = m;
                for &d in &digits {
                    if d != 0 {
                        g = g.gcd(&d);
                    }
                }
                c.orbit_weight(m, g)
            }
            None => 1,
        };
        balanced += weight;
        if collect {
            rows.push(digits.clone());
        }
        idx += 1;
    }
    (balanced, rows)
}

fn skip_subtree(idx: u64, stride: u64) -> u64 {
    (idx / stride + 1).saturating_mul(stride)
}

/// Balance of Steinhaus triangles with an arithmetic first row
/// (a, a+d, ..., a+(s-1)d), at the first `count` sizes congruent to 0 or -1
/// mod ord_m(2^m) * m. Requires m odd and d invertible.
pub fn verify_chap1(modulus: Modulus, a: Residue, d: Residue, count: usize) -> Result<Verdict> {
    let mut verdict = Verdict::new(TheoremId::Chap1);
    let m = modulus.get();
    if m % 2 == 0 {
        return Err(Error::PreconditionViolated(format!("m = {m} must be odd")));
    }
    if !d.is_invertible() {
        return Err(Error::PreconditionViolated(format!(
            "d = {d} must be invertible mod {m}"
        )));
    }
    let two = modulus.residue(2);
    let period = size_period(two)?;
    verdict.note(format!("period lcm(ord_{m}(2), {m}) = {period}"));
    for s in sizes_in_classes(period, &[0, 1], count) {
        let row: Vec<Residue> = (0..s).map(|i| a + d.scale(i as i128)).collect();
        let triangle = SteinhausTriangle::from_residues(modulus, &row);
        verdict.count_instance();
        if let Some((lo, hi)) = triangle.multiset().balance_witness() {
            verdict.fail(Failure {
                parameters: format!("m={m} a={a} d={d} s={s}"),
                witness: format!("counts differ at {lo} and {hi}"),
            });
        }
    }
    Ok(verdict.finish())
}

/// The first `count` positive sizes congruent to -t mod `period` over the
/// given t values, ascending.
pub fn sizes_in_classes(period: u64, tails: &[u64], count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1u64;
    while out.len() < count {
        for &t in tails {
            let threshold = k.saturating_mul(period);
            if threshold > t && threshold - t >= 1 {
                out.push(threshold - t);
            }
        }
        out.sort_unstable();
        out.dedup();
        k += 1;
    }
    out.truncate(count);
    out
}

/// Balanced triangles in the orbit of the interlace seed under the Pascal
/// automaton: Steinhaus (-+) triangles at sizes s = 0 mod m, and both
/// orientations at s = -1 mod 3m, located by scanning apexes. Requires m
/// odd.
pub fn verify_chap2(modulus: Modulus, steinhaus_sizes: usize, both_sizes: usize) -> Result<Verdict> {
    use crate::automaton::WeightScheme;
    use crate::orbit::{GridOrbit, Seed};
    use crate::simplex::{extract, SimplexSpec};

    let mut verdict = Verdict::new(TheoremId::Chap2);
    let m = modulus.get();
    if m % 2 == 0 {
        return Err(Error::PreconditionViolated(format!("m = {m} must be odd")));
    }
    if m == 1 {
        verdict.note("m = 1: every triangle is balanced".into());
        verdict.count_instance();
        return Ok(verdict.finish());
    }
    let m64 = m as u64;
    let mut wanted: Vec<(u64, Vec<i8>)> = Vec::new();
    for k in 1..=steinhaus_sizes as u64 {
        wanted.push((k * m64, vec![-1, 1]));
    }
    for k in 1..=both_sizes as u64 {
        let s = 3 * k * m64 - 1;
        wanted.push((s, vec![-1, 1]));
        wanted.push((s, vec![1, -1]));
    }
    let max_size = wanted.iter().map(|(s, _)| *s).max().unwrap();
    let scan = 3 * m as i64;
    let reach = scan + max_size as i64 + 1;
    let time_len = (scan as usize) + max_size as usize + 1;
    let scheme = WeightScheme::pascal(1, modulus);
    let grid = GridOrbit::build(&scheme, &Seed::Interlace, &[-reach], &[2 * reach as usize + 1], time_len)?;

    for (s, orientation) in wanted {
        let mut found = None;
        'scan: for j2 in 0..=scan as u64 {
            let apex_time = if orientation[1] == 1 { j2 } else { j2 + s - 1 };
            for j1 in -scan..=scan {
                let spec = SimplexSpec::new(vec![j1], apex_time, orientation.clone(), s)?;
                if extract(&grid, &spec)?.is_balanced() {
                    found = Some((j1, apex_time));
                    break 'scan;
                }
            }
        }
        verdict.count_instance();
        let label = if orientation == [-1, 1] { "-+" } else { "+-" };
        match found {
            Some((j1, j2)) => {
                verdict.note(format!("s={s} ({label}): balanced at apex ({j1}, {j2})"));
            }
            None => verdict.fail(Failure {
                parameters: format!("m={m} s={s} orientation={label}"),
                witness: format!("no balanced triangle in the scanned window (|i|,j <= {scan})"),
            }),
        }
    }
    Ok(verdict.finish())
}
