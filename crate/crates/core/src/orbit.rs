//! Orbit evaluation: closed form for arithmetic seeds, dependency-cone
//! dynamic programming for every other seed, and materialized grids for
//! window scans.
//!
//! The orbit of a seed A under the automaton is the (q+1)-dimensional array
//! whose row j is the j-th derived array; `space` indexes the first q axes
//! and `time` the last one.

use crate::automaton::{WeightScheme, Window};
use crate::residue::{Modulus, Residue};
use crate::{Error, Result};

/// Default cap on the number of cells a cone evaluation may touch.
pub const DEFAULT_CELL_BUDGET: u64 = 100_000_000;

/// An infinite-array seed for an orbit.
#[derive(Clone, Debug)]
pub enum Seed {
    /// a_i = first + sum_k i_k * diffs_k; `diffs` has one entry per axis.
    Arithmetic { first: Residue, diffs: Vec<Residue> },
    /// 1 at the origin, 0 elsewhere.
    Delta,
    /// The interlacing of three arithmetic progressions
    /// (..., 0, -1, 1, 1, -3, 2, 2, -5, 3, 3, ...): s(3t) = -(2t+1),
    /// s(3t+1) = s(3t+2) = t+1. One-dimensional only.
    Interlace,
    /// Per-axis periodic patterns; the value is the sum over axes of
    /// pattern_k[i_k mod len_k].
    Periodic { patterns: Vec<Vec<Residue>> },
    /// Explicit finite window, with an optional default outside it.
    Explicit { window: Window, default: Option<Residue> },
}

impl Seed {
    /// Parses the seed grammar: `ap:a,d` (q=1), `aa:a:d1,d2,...`, `delta`,
    /// `interlace`, `periodic:p1,p2,...` (axes separated by `/` when q > 1).
    pub fn parse(text: &str, dim: usize, modulus: Modulus) -> Result<Self> {
        let text = text.trim();
        let parse_list = |csv: &str| -> Result<Vec<Residue>> {
            csv.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i128>()
                        .map(|v| modulus.residue(v))
                        .map_err(|e| Error::Parse(e.to_string()))
                })
                .collect()
        };
        if text == "delta" {
            return Ok(Seed::Delta);
        }
        if text == "interlace" {
            if dim != 1 {
                return Err(Error::Parse("interlace seed is one-dimensional".into()));
            }
            return Ok(Seed::Interlace);
        }
        if let Some(rest) = text.strip_prefix("ap:") {
            if dim != 1 {
                return Err(Error::Parse("ap: seed is one-dimensional; use aa:".into()));
            }
            let vals = parse_list(rest)?;
            if vals.len() != 2 {
                return Err(Error::Parse("ap: wants two values `a,d`".into()));
            }
            return Ok(Seed::Arithmetic { first: vals[0], diffs: vec![vals[1]] });
        }
        if let Some(rest) = text.strip_prefix("aa:") {
            let (a, ds) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse("aa: wants `aa:a:d1,d2,...`".into()))?;
            let first = modulus.residue(
                a.trim().parse::<i128>().map_err(|e| Error::Parse(e.to_string()))?,
            );
            let diffs = parse_list(ds)?;
            if diffs.len() != dim {
                return Err(Error::Parse(format!(
                    "aa: wants {dim} common differences, got {}",
                    diffs.len()
                )));
            }
            return Ok(Seed::Arithmetic { first, diffs });
        }
        if let Some(rest) = text.strip_prefix("periodic:") {
            let patterns = rest
                .split('/')
                .map(|axis| {
                    let p = parse_list(axis)?;
                    if p.is_empty() {
                        return Err(Error::Parse("empty periodic pattern".into()));
                    }
                    Ok(p)
                })
                .collect::<Result<Vec<_>>>()?;
            if patterns.len() != dim {
                return Err(Error::Parse(format!(
                    "periodic: wants {dim} axis patterns, got {}",
                    patterns.len()
                )));
            }
            return Ok(Seed::Periodic { patterns });
        }
        Err(Error::Parse(format!("unknown seed {text:?}")))
    }

    /// Seed value at an absolute point of Z^q.
    pub fn value(&self, modulus: Modulus, point: &[i64]) -> Result<Residue> {
        match self {
            Seed::Arithmetic { first, diffs } => {
                assert_eq!(point.len(), diffs.len(), "seed dimension mismatch");
                let mut acc = *first;
                for (&i, d) in point.iter().zip(diffs) {
                    acc = acc + d.scale(i as i128);
                }
                Ok(acc)
            }
            Seed::Delta => {
                let v = if point.iter().all(|&i| i == 0) { 1 } else { 0 };
                Ok(modulus.residue(v))
            }
            Seed::Interlace => {
                assert_eq!(point.len(), 1, "interlace seed is one-dimensional");
                let i = point[0];
                let t = i.div_euclid(3) as i128;
                let v = match i.rem_euclid(3) {
                    0 => -(2 * t + 1),
                    _ => t + 1,
                };
                Ok(modulus.residue(v))
            }
            Seed::Periodic { patterns } => {
                assert_eq!(point.len(), patterns.len(), "seed dimension mismatch");
                let mut acc = modulus.zero();
                for (&i, pattern) in point.iter().zip(patterns) {
                    let idx = i.rem_euclid(pattern.len() as i64) as usize;
                    acc = acc + pattern[idx];
                }
                Ok(acc)
            }
            Seed::Explicit { window, default } => match window.get(point) {
                Some(v) => Ok(v),
                None => default.ok_or_else(|| {
                    Error::OutOfDomain(format!("explicit seed has no value at {point:?}"))
                }),
            },
        }
    }

    pub fn dim_hint(&self) -> Option<usize> {
        match self {
            Seed::Arithmetic { diffs, .. } => Some(diffs.len()),
            Seed::Interlace => Some(1),
            Seed::Periodic { patterns } => Some(patterns.len()),
            Seed::Explicit { window, .. } => Some(window.dim()),
            Seed::Delta => None,
        }
    }
}

/// A position in an orbit: q space coordinates and one non-negative time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoint {
    pub space: Vec<i64>,
    pub time: u64,
}

impl OrbitPoint {
    pub fn new(space: Vec<i64>, time: u64) -> Self {
        OrbitPoint { space, time }
    }
}

/// The induced time-axis common difference d_{q+1} = sigma^{-1} sum sigma_k d_k.
pub fn derived_difference(scheme: &WeightScheme, diffs: &[Residue]) -> Result<Residue> {
    assert_eq!(diffs.len(), scheme.dim(), "one common difference per axis");
    let inv = scheme.sigma().inv()?;
    let mut acc = scheme.modulus().zero();
    for (&s, &d) in scheme.sigma_k().iter().zip(diffs) {
        acc = acc + s * d;
    }
    Ok(inv * acc)
}

/// Arithmetic description (first element, common differences) of orbit row j.
/// Valid even when sigma is not invertible.
pub fn orbit_row(
    scheme: &WeightScheme,
    first: Residue,
    diffs: &[Residue],
    time: u64,
) -> (Residue, Vec<Residue>) {
    assert_eq!(diffs.len(), scheme.dim(), "one common difference per axis");
    if time == 0 {
        return (first, diffs.to_vec());
    }
    let sigma = scheme.sigma();
    let pow_jm1 = sigma.pow(time - 1);
    let pow_j = pow_jm1 * sigma;
    let mut weighted = scheme.modulus().zero();
    for (&s, &d) in scheme.sigma_k().iter().zip(diffs) {
        weighted = weighted + s * d;
    }
    let row_first = pow_j * first + (pow_jm1 * weighted).scale(time as i128);
    let row_diffs = diffs.iter().map(|&d| pow_j * d).collect();
    (row_first, row_diffs)
}

/// Closed-form orbit entry for an arithmetic seed:
/// sigma^j (a + sum_k i_k d_k + j d_{q+1}). Requires sigma invertible.
pub fn closed_form(
    scheme: &WeightScheme,
    first: Residue,
    diffs: &[Residue],
    point: &OrbitPoint,
) -> Result<Residue> {
    let d_next = derived_difference(scheme, diffs)?;
    Ok(closed_form_with(scheme, first, diffs, d_next, point))
}

fn closed_form_with(
    scheme: &WeightScheme,
    first: Residue,
    diffs: &[Residue],
    d_next: Residue,
    point: &OrbitPoint,
) -> Residue {
    assert_eq!(point.space.len(), scheme.dim(), "point dimension mismatch");
    let mut acc = first;
    for (&i, d) in point.space.iter().zip(diffs) {
        acc = acc + d.scale(i as i128);
    }
    acc = acc + d_next.scale(point.time as i128);
    scheme.sigma().pow(point.time) * acc
}

/// Orbit entry by iterated stencil application over the dependency cone.
/// Layer-by-layer dynamic programming: one shrinking hyper-rectangle per
/// time step, (2jr+1)^q cells at the base.
pub fn cone_value(
    scheme: &WeightScheme,
    seed: &Seed,
    point: &OrbitPoint,
    cap: u64,
) -> Result<Residue> {
    assert_eq!(point.space.len(), scheme.dim(), "point dimension mismatch");
    let q = scheme.dim();
    let r = scheme.radius() as u128;
    let j = point.time as u128;
    if j > 0 {
        let side = 2 * j * r + 1;
        let needed = side.pow(q as u32).saturating_mul(j);
        if needed > cap as u128 {
            return Err(Error::BudgetExceeded { needed, budget: cap });
        }
    }
    if point.time == 0 {
        return seed.value(scheme.modulus(), &point.space);
    }
    let reach = (point.time * scheme.radius() as u64) as i64;
    let origin: Vec<i64> = point.space.iter().map(|&i| i - reach).collect();
    let extents = vec![(2 * reach + 1) as usize; q];
    let mut window = Window::from_fn(scheme.modulus(), origin, extents, |p| {
        seed.value(scheme.modulus(), p)
    })?;
    for _ in 0..point.time {
        window = scheme.step(&window)?;
    }
    window
        .get(&point.space)
        .ok_or_else(|| Error::OutOfDomain(format!("cone collapsed before {point:?}")))
}

/// Anything that can produce orbit entries.
pub trait OrbitSource {
    fn modulus(&self) -> Modulus;
    /// Number of space axes q.
    fn dim(&self) -> usize;
    fn value(&self, space: &[i64], time: u64) -> Result<Residue>;
}

/// Closed-form evaluator over the orbit of an arithmetic seed.
pub struct ClosedFormOrbit<'a> {
    scheme: &'a WeightScheme,
    first: Residue,
    diffs: Vec<Residue>,
    d_next: Residue,
}

impl<'a> ClosedFormOrbit<'a> {
    pub fn new(scheme: &'a WeightScheme, first: Residue, diffs: Vec<Residue>) -> Result<Self> {
        let d_next = derived_difference(scheme, &diffs)?;
        Ok(ClosedFormOrbit { scheme, first, diffs, d_next })
    }

    pub fn derived(&self) -> Residue {
        self.d_next
    }

    /// Full common-difference tuple (d_1, ..., d_q, d_{q+1}).
    pub fn extended_diffs(&self) -> Vec<Residue> {
        let mut d = self.diffs.clone();
        d.push(self.d_next);
        d
    }
}

impl OrbitSource for ClosedFormOrbit<'_> {
    fn modulus(&self) -> Modulus {
        self.scheme.modulus()
    }

    fn dim(&self) -> usize {
        self.scheme.dim()
    }

    fn value(&self, space: &[i64], time: u64) -> Result<Residue> {
        let point = OrbitPoint::new(space.to_vec(), time);
        Ok(closed_form_with(self.scheme, self.first, &self.diffs, self.d_next, &point))
    }
}

/// Per-point cone evaluator for arbitrary seeds.
pub struct ConeOrbit<'a> {
    scheme: &'a WeightScheme,
    seed: Seed,
    cap: u64,
}

impl<'a> ConeOrbit<'a> {
    pub fn new(scheme: &'a WeightScheme, seed: Seed, cap: u64) -> Self {
        ConeOrbit { scheme, seed, cap }
    }
}

impl OrbitSource for ConeOrbit<'_> {
    fn modulus(&self) -> Modulus {
        self.scheme.modulus()
    }

    fn dim(&self) -> usize {
        self.scheme.dim()
    }

    fn value(&self, space: &[i64], time: u64) -> Result<Residue> {
        cone_value(self.scheme, &self.seed, &OrbitPoint::new(space.to_vec(), time), self.cap)
    }
}

/// Materialized orbit rows over a space box and a time range, built by
/// stepping a seed window wide enough that every requested cell stays inside
/// the shrinking cone.
pub struct GridOrbit {
    modulus: Modulus,
    rows: Vec<Window>,
}

impl GridOrbit {
    pub fn build(
        scheme: &WeightScheme,
        seed: &Seed,
        space_lo: &[i64],
        space_extents: &[usize],
        time_len: usize,
    ) -> Result<Self> {
        assert_eq!(space_lo.len(), scheme.dim());
        assert_eq!(space_extents.len(), scheme.dim());
        assert!(time_len >= 1);
        let margin = (scheme.radius() * (time_len - 1)) as i64;
        let origin: Vec<i64> = space_lo.iter().map(|&l| l - margin).collect();
        let extents: Vec<usize> = space_extents
            .iter()
            .map(|&e| e + 2 * margin as usize)
            .collect();
        let mut rows = Vec::with_capacity(time_len);
        let mut window = Window::from_fn(scheme.modulus(), origin, extents, |p| {
            seed.value(scheme.modulus(), p)
        })?;
        for _ in 1..time_len {
            let next = scheme.step(&window)?;
            rows.push(window);
            window = next;
        }
        rows.push(window);
        Ok(GridOrbit { modulus: scheme.modulus(), rows })
    }

    pub fn time_len(&self) -> usize {
        self.rows.len()
    }
}

impl OrbitSource for GridOrbit {
    fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn dim(&self) -> usize {
        self.rows[0].dim()
    }

    fn value(&self, space: &[i64], time: u64) -> Result<Residue> {
        let row = self
            .rows
            .get(time as usize)
            .ok_or_else(|| Error::OutOfDomain(format!("grid has no row {time}")))?;
        row.get(space)
            .ok_or_else(|| Error::OutOfDomain(format!("grid row {time} has no column {space:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn m(v: u32) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn ap01(modulus: Modulus) -> Seed {
        Seed::Arithmetic { first: modulus.zero(), diffs: vec![modulus.one()] }
    }

    #[test]
    fn derived_difference_examples() {
        let m5 = m(5);
        let pca1 = WeightScheme::pascal(1, m5);
        let d = derived_difference(&pca1, &[m5.one()]).unwrap();
        assert_eq!(d.value(), 2); // -2^{-1} mod 5

        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        assert_eq!(derived_difference(&w, &[m5.one()]).unwrap().value(), 1);
        assert_eq!(derived_difference(&w, &[m5.zero()]).unwrap().value(), 0);
    }

    #[test]
    fn closed_form_examples() {
        let m5 = m(5);
        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        let a = m5.zero();
        let d = vec![m5.one()];
        let v = closed_form(&w, a, &d, &OrbitPoint::new(vec![4], 1)).unwrap();
        assert_eq!(v.value(), 0);
        let v = closed_form(&w, a, &d, &OrbitPoint::new(vec![2], 3)).unwrap();
        assert_eq!(v.value(), 0);

        // sigma = 1: row 0 is the seed itself
        let w1 = WeightScheme::line(&[0, 1, 0], m(7)).unwrap();
        let a = m(7).residue(3);
        let d = vec![m(7).residue(2)];
        for i in -4..4 {
            let v = closed_form(&w1, a, &d, &OrbitPoint::new(vec![i], 0)).unwrap();
            assert_eq!(v, a + d[0].scale(i as i128));
        }
    }

    #[test]
    fn orbit_row_examples() {
        let m5 = m(5);
        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        let (f0, d0) = orbit_row(&w, m5.zero(), &[m5.one()], 0);
        assert_eq!((f0.value(), d0[0].value()), (0, 1));
        let (f1, d1) = orbit_row(&w, m5.zero(), &[m5.one()], 1);
        assert_eq!((f1.value(), d1[0].value()), (4, 4));

        // sigma = 0 mod 4: from time 2 on everything vanishes
        let wz = WeightScheme::line(&[2, 2, 0], m(4)).unwrap();
        assert_eq!(wz.sigma().value(), 0);
        let (f2, d2) = orbit_row(&wz, m(4).residue(3), &[m(4).one()], 2);
        assert_eq!((f2.value(), d2[0].value()), (0, 0));
    }

    #[test]
    fn cone_examples() {
        let m7 = m(7);
        let pca1 = WeightScheme::pascal(1, m7);
        let v = cone_value(&pca1, &Seed::Delta, &OrbitPoint::new(vec![2], 4), DEFAULT_CELL_BUDGET)
            .unwrap();
        assert_eq!(v.value(), 6); // C(4,2) = 6

        let m5 = m(5);
        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        let v = cone_value(&w, &ap01(m5), &OrbitPoint::new(vec![3], 1), DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(v.value(), 1);

        let seed = Seed::Interlace;
        let v = cone_value(&w, &seed, &OrbitPoint::new(vec![-3], 0), DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(v, seed.value(m5, &[-3]).unwrap());
    }

    #[test]
    fn cone_budget_guard() {
        let m5 = m(5);
        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        let err = cone_value(&w, &ap01(m5), &OrbitPoint::new(vec![0], 40), 10).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn interlace_matches_the_listed_values() {
        let m100 = m(100);
        let seed = Seed::Interlace;
        let expect: Vec<(i64, i128)> = vec![
            (-2, 0),
            (-1, 0),
            (0, -1),
            (1, 1),
            (2, 1),
            (3, -3),
            (4, 2),
            (5, 2),
            (6, -5),
            (7, 3),
            (8, 3),
            (9, -7),
            (10, 4),
        ];
        for (i, v) in expect {
            assert_eq!(seed.value(m100, &[i]).unwrap(), m100.residue(v), "i={i}");
        }
    }

    #[test]
    fn explicit_seed_domain() {
        let m5 = m(5);
        let win = Window::new(m5, vec![0], vec![3], vec![1, 2, 3]).unwrap();
        let seed = Seed::Explicit { window: win.clone(), default: None };
        assert_eq!(seed.value(m5, &[1]).unwrap().value(), 2);
        assert!(matches!(seed.value(m5, &[5]), Err(Error::OutOfDomain(_))));
        let seed = Seed::Explicit { window: win, default: Some(m5.zero()) };
        assert_eq!(seed.value(m5, &[5]).unwrap().value(), 0);
    }

    fn random_invertible_sigma_scheme(rng: &mut StdRng, qmax: usize, rmax: usize) -> WeightScheme {
        loop {
            let modulus = m(rng.gen_range(2..=100));
            let q = rng.gen_range(1..=qmax);
            let r = rng.gen_range(0..=rmax);
            let len = (2 * r + 1).pow(q as u32);
            let weights: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
            let w = WeightScheme::new(q, r, &weights, modulus).unwrap();
            if w.sigma().is_invertible() {
                return w;
            }
        }
    }

    #[test]
    fn cone_equals_closed_form_on_random_arithmetic_orbits() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..60 {
            let w = random_invertible_sigma_scheme(&mut rng, 2, 2);
            let modulus = w.modulus();
            let first = modulus.residue(rng.gen_range(0..modulus.get()) as i128);
            let diffs: Vec<Residue> = (0..w.dim())
                .map(|_| modulus.residue(rng.gen_range(0..modulus.get()) as i128))
                .collect();
            let seed = Seed::Arithmetic { first, diffs: diffs.clone() };
            let point = OrbitPoint::new(
                (0..w.dim()).map(|_| rng.gen_range(-6..=6)).collect(),
                rng.gen_range(0..=8),
            );
            let cf = closed_form(&w, first, &diffs, &point).unwrap();
            let cv = cone_value(&w, &seed, &point, DEFAULT_CELL_BUDGET).unwrap();
            assert_eq!(cf, cv, "scheme {w} point {point:?}");
        }
    }

    #[test]
    fn closed_form_matches_row_description() {
        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..40 {
            let w = random_invertible_sigma_scheme(&mut rng, 2, 1);
            let modulus = w.modulus();
            let first = modulus.residue(rng.gen_range(0..modulus.get()) as i128);
            let diffs: Vec<Residue> = (0..w.dim())
                .map(|_| modulus.residue(rng.gen_range(0..modulus.get()) as i128))
                .collect();
            let time = rng.gen_range(0..=10u64);
            let (row_first, row_diffs) = orbit_row(&w, first, &diffs, time);
            for _ in 0..5 {
                let space: Vec<i64> = (0..w.dim()).map(|_| rng.gen_range(-7..=7)).collect();
                let mut expected = row_first;
                for (&i, d) in space.iter().zip(&row_diffs) {
                    expected = expected + d.scale(i as i128);
                }
                let got = closed_form(&w, first, &diffs, &OrbitPoint::new(space, time)).unwrap();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn time_axis_is_arithmetico_geometric() {
        let m5 = m(5);
        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        let seed = ap01(m5);
        let orbit = ClosedFormOrbit::new(&w, m5.zero(), vec![m5.one()]).unwrap();
        let d_next = orbit.derived();
        for i in -5..=5i64 {
            let base = seed.value(m5, &[i]).unwrap();
            for j in 0..=12u64 {
                let direct = cone_value(&w, &seed, &OrbitPoint::new(vec![i], j), DEFAULT_CELL_BUDGET)
                    .unwrap();
                let literal = w.sigma().pow(j) * (base + d_next.scale(j as i128));
                assert_eq!(direct, literal, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn grid_agrees_with_cone() {
        let m5 = m(5);
        let w = WeightScheme::line(&[2, 1, 1], m5).unwrap();
        let seed = Seed::Interlace;
        let grid = GridOrbit::build(&w, &seed, &[-6], &[13], 9).unwrap();
        for i in -6..=6i64 {
            for j in 0..9u64 {
                let g = grid.value(&[i], j).unwrap();
                let c = cone_value(&w, &seed, &OrbitPoint::new(vec![i], j), DEFAULT_CELL_BUDGET)
                    .unwrap();
                assert_eq!(g, c, "i={i} j={j}");
            }
        }
        assert!(grid.value(&[100], 0).is_err());
    }

    #[test]
    fn seed_parsing() {
        let m5 = m(5);
        assert!(matches!(Seed::parse("delta", 2, m5).unwrap(), Seed::Delta));
        assert!(matches!(Seed::parse("interlace", 1, m5).unwrap(), Seed::Interlace));
        match Seed::parse("ap:0,1", 1, m5).unwrap() {
            Seed::Arithmetic { first, diffs } => {
                assert_eq!(first.value(), 0);
                assert_eq!(diffs[0].value(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        match Seed::parse("aa:3:1,2", 2, m5).unwrap() {
            Seed::Arithmetic { first, diffs } => {
                assert_eq!(first.value(), 3);
                assert_eq!(diffs.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        match Seed::parse("periodic:1,2,3/4,0", 2, m5).unwrap() {
            Seed::Periodic { patterns } => {
                assert_eq!(patterns[0].len(), 3);
                assert_eq!(patterns[1].len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Seed::parse("interlace", 2, m5).is_err());
        assert!(Seed::parse("ap:1", 1, m5).is_err());
        assert!(Seed::parse("nope", 1, m5).is_err());
    }
}
