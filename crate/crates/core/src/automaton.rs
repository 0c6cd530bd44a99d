//! Weight stencils of additive cellular automata, their derived coefficients
//! sigma and sigma_k, and one naive evolution step on finite windows.
//!
//! Stencil entries are plain integers (possibly negative) reduced mod m on
//! construction. Serialized index order is fixed: last axis fastest, indices
//! from -r to r on every axis.

use std::fmt;

use crate::residue::{Modulus, Residue};
use crate::{Error, Result};

/// The weight array W of an ACA of dimension q and radius r, together with
/// its cached coefficients sigma = sum w_j and sigma_k = sum j_k w_j.
#[derive(Clone, Debug)]
pub struct WeightScheme {
    dim: usize,
    radius: usize,
    weights: Vec<Residue>,
    modulus: Modulus,
    sigma: Residue,
    sigma_k: Vec<Residue>,
}

impl WeightScheme {
    /// Builds a stencil from raw integer weights, reducing them mod m.
    /// `weights` must hold exactly (2r+1)^q entries, last axis fastest.
    pub fn new(dim: usize, radius: usize, weights: &[i64], modulus: Modulus) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parse("stencil dimension must be >= 1".into()));
        }
        let side = 2 * radius + 1;
        let expected = (side as u128).pow(dim as u32);
        if expected > u32::MAX as u128 {
            return Err(Error::Overflow);
        }
        if weights.len() as u128 != expected {
            return Err(Error::Parse(format!(
                "stencil needs {expected} weights for q={dim}, r={radius}, got {}",
                weights.len()
            )));
        }
        let reduced: Vec<Residue> = weights.iter().map(|&w| modulus.residue(w as i128)).collect();
        let (sigma, sigma_k) = coeffs_from(dim, radius, &reduced, modulus);
        Ok(WeightScheme { dim, radius, weights: reduced, modulus, sigma, sigma_k })
    }

    /// The Pascal stencil: radius 1, weight 1 at the origin and at -e_k for
    /// every axis k, zero elsewhere.
    pub fn pascal(dim: usize, modulus: Modulus) -> Self {
        let side = 3usize;
        let len = side.pow(dim as u32);
        let mut weights = vec![0i64; len];
        // origin is the all-zero offset, i.e. component 1 on every axis
        let origin: usize = (0..dim).fold(0, |acc, _| acc * side + 1);
        weights[origin] = 1;
        let mut stride = 1usize;
        for _axis in 0..dim {
            // -e_k moves the axis-k component from 1 to 0
            weights[origin - stride] = 1;
            stride *= side;
        }
        Self::new(dim, 1, &weights, modulus).expect("pascal stencil is well formed")
    }

    /// Parses the stencil text format: `q=1;r=1;w=2,1,1` or `pascal:2`.
    pub fn parse(text: &str, modulus: Modulus) -> Result<Self> {
        let text = text.trim();
        if let Some(dim) = text.strip_prefix("pascal:") {
            let dim: usize = dim
                .parse()
                .map_err(|_| Error::Parse(format!("bad pascal dimension in {text:?}")))?;
            if dim == 0 {
                return Err(Error::Parse("pascal dimension must be >= 1".into()));
            }
            return Ok(Self::pascal(dim, modulus));
        }
        let mut dim = None;
        let mut radius = None;
        let mut weights = None;
        for part in text.split(';') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {part:?}")))?;
            match key.trim() {
                "q" => dim = Some(value.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?),
                "r" => radius = Some(value.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?),
                "w" => {
                    weights = Some(
                        value
                            .split(',')
                            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(e.to_string())))
                            .collect::<Result<Vec<i64>>>()?,
                    )
                }
                other => return Err(Error::Parse(format!("unknown stencil field {other:?}"))),
            }
        }
        let dim = dim.ok_or_else(|| Error::Parse("stencil text misses q=".into()))?;
        let radius = radius.ok_or_else(|| Error::Parse("stencil text misses r=".into()))?;
        let weights = weights.ok_or_else(|| Error::Parse("stencil text misses w=".into()))?;
        Self::new(dim, radius, &weights, modulus)
    }

    /// Shorthand for a 1-dimensional stencil (w_{-r}, ..., w_r).
    pub fn line(weights: &[i64], modulus: Modulus) -> Result<Self> {
        if weights.len() % 2 == 0 {
            return Err(Error::Parse("1-d stencil needs an odd number of weights".into()));
        }
        Self::new(1, weights.len() / 2, weights, modulus)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn sigma(&self) -> Residue {
        self.sigma
    }

    pub fn sigma_k(&self) -> &[Residue] {
        &self.sigma_k
    }

    /// (sigma, (sigma_1, ..., sigma_q)) as cached on construction.
    pub fn sigma_coeffs(&self) -> (Residue, &[Residue]) {
        (self.sigma, &self.sigma_k)
    }

    /// Recomputes sigma and sigma_k from the stored weights.
    pub fn rederive_coeffs(&self) -> (Residue, Vec<Residue>) {
        coeffs_from(self.dim, self.radius, &self.weights, self.modulus)
    }

    /// Weight at a stencil offset in [-r, r]^q.
    pub fn weight(&self, offset: &[i64]) -> Option<Residue> {
        assert_eq!(offset.len(), self.dim);
        let r = self.radius as i64;
        let side = (2 * self.radius + 1) as usize;
        let mut idx = 0usize;
        for &o in offset {
            if o < -r || o > r {
                return None;
            }
            idx = idx * side + (o + r) as usize;
        }
        Some(self.weights[idx])
    }

    /// Iterates (offset, weight) over all stencil positions.
    pub fn entries(&self) -> Vec<(Vec<i64>, Residue)> {
        let r = self.radius as i64;
        let mut out = Vec::with_capacity(self.weights.len());
        let mut offset = vec![-r; self.dim];
        for &w in &self.weights {
            out.push((offset.clone(), w));
            for axis in (0..self.dim).rev() {
                offset[axis] += 1;
                if offset[axis] <= r {
                    break;
                }
                offset[axis] = -r;
            }
        }
        out
    }

    /// One application of the automaton to a finite window. The result
    /// shrinks by r on each side per axis (the dependency cone); entry i is
    /// sum_j w_j * a_{i+j}.
    pub fn step(&self, win: &Window) -> Result<Window> {
        assert_eq!(win.dim(), self.dim, "window dimension mismatch");
        assert_eq!(win.modulus(), self.modulus, "window modulus mismatch");
        let r = self.radius;
        for &e in win.extents() {
            if e <= 2 * r {
                return Err(Error::WindowTooSmall { extent: e, radius: r });
            }
        }
        let out_extents: Vec<usize> = win.extents().iter().map(|&e| e - 2 * r).collect();
        let out_origin: Vec<i64> = win.origin().iter().map(|&o| o + r as i64).collect();

        // flat deltas of the stencil offsets relative to the input layout
        let in_strides = strides(win.extents());
        let deltas: Vec<(usize, u64)> = self
            .entries()
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(off, w)| {
                let mut d = 0i64;
                for (axis, &o) in off.iter().enumerate() {
                    d += (o + r as i64) * in_strides[axis] as i64;
                }
                (d as usize, w.value() as u64)
            })
            .collect();

        let m = self.modulus.get() as u64;
        let mut data = Vec::with_capacity(out_extents.iter().product());
        let mut idx = vec![0usize; self.dim];
        let total: usize = out_extents.iter().product();
        for _ in 0..total {
            let base: usize = idx
                .iter()
                .zip(&in_strides)
                .map(|(&i, &s)| i * s)
                .sum();
            let mut acc: u128 = 0;
            for &(delta, w) in &deltas {
                acc += (w * win.data[base + delta] as u64) as u128;
            }
            data.push((acc % m as u128) as u32);
            for axis in (0..self.dim).rev() {
                idx[axis] += 1;
                if idx[axis] < out_extents[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
        Ok(Window { modulus: self.modulus, origin: out_origin, extents: out_extents, data })
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|r| r.value().to_string()).collect();
        write!(f, "q={};r={};w={}", self.dim, self.radius, w.join(","))
    }
}

fn coeffs_from(
    dim: usize,
    radius: usize,
    weights: &[Residue],
    modulus: Modulus,
) -> (Residue, Vec<Residue>) {
    let r = radius as i64;
    let side = 2 * radius + 1;
    let mut sigma = modulus.zero();
    let mut sigma_k = vec![modulus.zero(); dim];
    for (flat, &w) in weights.iter().enumerate() {
        sigma = sigma + w;
        let mut rest = flat;
        for axis in (0..dim).rev() {
            let component = (rest % side) as i64 - r;
            rest /= side;
            sigma_k[axis] = sigma_k[axis] + w.scale(component as i128);
        }
    }
    (sigma, sigma_k)
}

fn strides(extents: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; extents.len()];
    for axis in (0..extents.len().saturating_sub(1)).rev() {
        s[axis] = s[axis + 1] * extents[axis + 1];
    }
    s
}

/// A finite q-dimensional view of an infinite array: canonical residues over
/// a box `origin + [0, extents)` per axis, row-major with last axis fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    modulus: Modulus,
    origin: Vec<i64>,
    extents: Vec<usize>,
    data: Vec<u32>,
}

impl Window {
    pub fn new(modulus: Modulus, origin: Vec<i64>, extents: Vec<usize>, raw: Vec<i64>) -> Result<Self> {
        if extents.iter().any(|&e| e == 0) {
            return Err(Error::Parse("window extents must be positive".into()));
        }
        if origin.len() != extents.len() {
            return Err(Error::Parse("window origin/extent rank mismatch".into()));
        }
        let total: usize = extents.iter().product();
        if raw.len() != total {
            return Err(Error::Parse(format!(
                "window needs {total} entries, got {}",
                raw.len()
            )));
        }
        let data = raw.iter().map(|&v| modulus.residue(v as i128).value()).collect();
        Ok(Window { modulus, origin, extents, data })
    }

    pub fn from_fn<F>(modulus: Modulus, origin: Vec<i64>, extents: Vec<usize>, mut f: F) -> Result<Self>
    where
        F: FnMut(&[i64]) -> Result<Residue>,
    {
        let total: usize = extents.iter().product();
        let mut data = Vec::with_capacity(total);
        let mut point = origin.clone();
        for _ in 0..total {
            data.push(f(&point)?.value());
            for axis in (0..extents.len()).rev() {
                point[axis] += 1;
                if point[axis] < origin[axis] + extents[axis] as i64 {
                    break;
                }
                point[axis] = origin[axis];
            }
        }
        Ok(Window { modulus, origin, extents, data })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn origin(&self) -> &[i64] {
        &self.origin
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Value at an absolute point, or None outside the window.
    pub fn get(&self, point: &[i64]) -> Option<Residue> {
        assert_eq!(point.len(), self.dim());
        let mut flat = 0usize;
        for axis in 0..self.dim() {
            let rel = point[axis] - self.origin[axis];
            if rel < 0 || rel >= self.extents[axis] as i64 {
                return None;
            }
            flat = flat * self.extents[axis] + rel as usize;
        }
        Some(self.modulus.residue(self.data[flat] as i128))
    }

    pub fn values(&self) -> &[u32] {
        &self.data
    }
}
