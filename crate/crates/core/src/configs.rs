//! Finite point sets on the unit sphere: named witness configurations,
//! minimal angular separation `ψ(X)`, and contact graphs.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const NORM_TOL: f64 = 1e-12;
/// Two points closer than this (in angle) are considered identical.
pub const DISTINCT_TOL: f64 = 1e-9;
pub const CODE_TOL: f64 = 1e-12;

pub const NAMED: [&str; 8] = [
    "triangle",
    "tetrahedron",
    "octahedron",
    "cube",
    "icosahedron",
    "24cell",
    "600cell",
    "e8roots",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalConfig {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Angular distance between two unit vectors, `2 atan2(|a - b|, |a + b|)`,
/// which stays accurate near `0` and `π` where `acos` of the inner product
/// does not.
pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    let (mut minus, mut plus) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        minus += (x - y) * (x - y);
        plus += (x + y) * (x + y);
    }
    2.0 * minus.sqrt().atan2(plus.sqrt())
}

impl SphericalConfig {
    /// Builds a configuration, checking unit norms and distinctness.
    pub fn new(dim: usize, points: Vec<Vec<f64>>, label: Option<String>) -> Result<Self> {
        let c = Self { dim, points, label };
        c.validate()?;
        Ok(c)
    }

    /// Normalizes every point before validating.
    pub fn from_raw(dim: usize, points: Vec<Vec<f64>>, label: Option<&str>) -> Result<Self> {
        let mut pts = points;
        for p in &mut pts {
            let r = norm(p);
            if r == 0.0 {
                return Err(Error::InvalidConfig(
                    "zero vector cannot be normalized".into(),
                ));
            }
            p.iter_mut().for_each(|x| *x /= r);
        }
        Self::new(dim, pts, label.map(str::to_owned))
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidConfig(format!(
                "dimension must be >= 2, got {}",
                self.dim
            )));
        }
        if self.points.is_empty() {
            return Err(Error::InvalidConfig("configuration has no points".into()));
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.len() != self.dim {
                return Err(Error::InvalidConfig(format!(
                    "point {i} has {} coordinates, expected {}",
                    p.len(),
                    self.dim
                )));
            }
            if (norm(p) - 1.0).abs() > NORM_TOL {
                return Err(Error::InvalidConfig(format!(
                    "point {i} has norm {}",
                    norm(p)
                )));
            }
        }
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                if angle(&self.points[i], &self.points[j]) <= DISTINCT_TOL {
                    return Err(Error::InvalidConfig(format!("points {i} and {j} coincide")));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }
}

/// Minimal pairwise angular distance `ψ(X)`.
pub fn psi(config: &SphericalConfig) -> Result<f64> {
    min_angle(&config.points)
        .ok_or_else(|| Error::InvalidConfig("ψ needs at least 2 points".into()))
}

pub(crate) fn min_angle(points: &[Vec<f64>]) -> Option<f64> {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min(angle(&points[i], &points[j]));
        }
    }
    (points.len() >= 2).then_some(best)
}

/// Whether the configuration is a spherical `φ`-code, certifying
/// `A(n, φ) >= |X|`.
pub fn verify_code(config: &SphericalConfig, phi: f64) -> bool {
    match psi(config) {
        Ok(p) => p >= phi - CODE_TOL,
        Err(_) => true,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContactGraph {
    pub psi: f64,
    pub tol: f64,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    pub vertices: usize,
}

impl ContactGraph {
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }
}

/// Pairs at angular distance within `tol` of `ψ(config)`.
pub fn contact_graph(config: &SphericalConfig, tol: f64) -> Result<ContactGraph> {
    if tol < 0.0 {
        return Err(Error::Domain(format!("tolerance must be >= 0, got {tol}")));
    }
    let psi = psi(config)?;
    let n = config.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (angle(&config.points[i], &config.points[j]) - psi).abs() <= tol {
                edges.push((i, j));
            }
        }
    }
    Ok(ContactGraph {
        psi,
        tol,
        edges,
        vertices: n,
    })
}

/// Exact named configurations.
pub fn named(label: &str) -> Result<SphericalConfig> {
    let (dim, pts) = match label {
        "triangle" => (
            3,
            (0..3)
                .map(|i| {
                    let a = 2.0 * PI * i as f64 / 3.0;
                    vec![a.cos(), a.sin(), 0.0]
                })
                .collect(),
        ),
        "tetrahedron" => (
            3,
            vec![
                vec![1.0, 1.0, 1.0],
                vec![1.0, -1.0, -1.0],
                vec![-1.0, 1.0, -1.0],
                vec![-1.0, -1.0, 1.0],
            ],
        ),
        "octahedron" => (3, signed_axes(3)),
        "cube" => (3, sign_patterns(&[1.0, 1.0, 1.0])),
        "icosahedron" => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let mut pts = Vec::new();
            for base in sign_patterns(&[0.0, 1.0, phi]) {
                for shift in 0..3 {
                    pts.push((0..3).map(|i| base[(i + 3 - shift) % 3]).collect());
                }
            }
            (3, pts)
        }
        "24cell" => (4, pair_patterns(4)),
        "600cell" => (4, six_hundred_cell()),
        "e8roots" => {
            let mut pts = pair_patterns(8);
            for mask in 0u32..256 {
                if mask.count_ones() % 2 == 0 {
                    pts.push(
                        (0..8)
                            .map(|i| if mask >> i & 1 == 1 { -0.5 } else { 0.5 })
                            .collect(),
                    );
                }
            }
            (8, pts)
        }
        other => return Err(Error::UnknownConfig(other.to_owned())),
    };
    SphericalConfig::from_raw(dim, pts, Some(label))
}

fn signed_axes(dim: usize) -> Vec<Vec<f64>> {
    let mut pts = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut p = vec![0.0; dim];
            p[i] = s;
            pts.push(p);
        }
    }
    pts
}

/// All sign choices on the nonzero entries of `base`.
fn sign_patterns(base: &[f64]) -> Vec<Vec<f64>> {
    let nz: Vec<usize> = (0..base.len()).filter(|&i| base[i] != 0.0).collect();
    (0u32..1 << nz.len())
        .map(|mask| {
            let mut p = base.to_vec();
            for (bit, &i) in nz.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    p[i] = -p[i];
                }
            }
            p
        })
        .collect()
}

/// Vectors `±e_i ± e_j`, `i < j`.
fn pair_patterns(dim: usize) -> Vec<Vec<f64>> {
    let mut pts = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut base = vec![0.0; dim];
            base[i] = 1.0;
            base[j] = 1.0;
            pts.extend(sign_patterns(&base));
        }
    }
    pts
}

/// The 120 unit quaternions of the binary icosahedral group.
fn six_hundred_cell() -> Vec<Vec<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts = signed_axes(4);
    pts.extend(sign_patterns(&[0.5; 4]));
    let base = [phi / 2.0, 0.5, 1.0 / (2.0 * phi), 0.0];
    for perm in even_permutations4() {
        let permuted: Vec<f64> = perm.iter().map(|&i| base[i]).collect();
        pts.extend(sign_patterns(&permuted));
    }
    pts
}

fn even_permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(12);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct && inversions(&p) % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn sizes_and_angles() {
        let expected = [
            ("triangle", 3, 2.0 * PI / 3.0),
            ("tetrahedron", 4, (-1.0f64 / 3.0).acos()),
            ("octahedron", 6, PI / 2.0),
            ("cube", 8, (1.0f64 / 3.0).acos()),
            ("icosahedron", 12, (1.0 / 5f64.sqrt()).acos()),
            ("24cell", 24, PI / 3.0),
            ("600cell", 120, PI / 5.0),
            ("e8roots", 240, PI / 3.0),
        ];
        for (name, size, angle) in expected {
            let c = named(name).unwrap();
            assert_eq!(c.len(), size, "{name}");
            assert!(
                close(psi(&c).unwrap(), angle, 1e-12),
                "{name}: {}",
                psi(&c).unwrap()
            );
        }
    }

    #[test]
    fn antipodal_pair() {
        let c =
            SphericalConfig::new(3, vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, -1.0]], None).unwrap();
        assert_eq!(psi(&c).unwrap(), PI);
        let g = contact_graph(&c, 1e-9).unwrap();
        assert_eq!(g.edges, vec![(0, 1)]);
    }

    #[test]
    fn psi_needs_two_points() {
        let c = SphericalConfig::new(3, vec![vec![1.0, 0.0, 0.0]], None).unwrap();
        assert!(psi(&c).is_err());
        assert!(contact_graph(&c, 0.0).is_err());
    }

    #[test]
    fn contact_graph_examples() {
        let g = contact_graph(&named("octahedron").unwrap(), 1e-9).unwrap();
        assert_eq!(g.edges.len(), 12);
        assert!(g.degrees().iter().all(|&d| d == 4));

        let g = contact_graph(&named("24cell").unwrap(), 1e-9).unwrap();
        assert_eq!(g.edges.len(), 96);
        assert!(g.degrees().iter().all(|&d| d == 8));
    }

    #[test]
    fn verify_code_examples() {
        assert!(verify_code(&named("600cell").unwrap(), PI / 5.0));
        assert!(!verify_code(&named("24cell").unwrap(), PI / 3.0 + 0.01));
        assert!(verify_code(
            &named("tetrahedron").unwrap(),
            (-1.0f64 / 3.0).acos()
        ));
    }

    #[test]
    fn twenty_four_cell_inner_products() {
        let c = named("24cell").unwrap();
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let ip = dot(&c.points[i], &c.points[j]);
                let allowed = [0.5, 0.0, -0.5, -1.0];
                assert!(allowed.iter().any(|a| close(ip, *a, 1e-12)), "{ip}");
            }
        }
    }

    #[test]
    fn unknown_label() {
        assert_eq!(
            named("dodecahedron").unwrap_err(),
            Error::UnknownConfig("dodecahedron".into())
        );
    }

    #[test]
    fn rejects_bad_points() {
        assert!(SphericalConfig::new(3, vec![vec![1.0, 1.0, 0.0]], None).is_err());
        assert!(
            SphericalConfig::new(3, vec![vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]], None).is_err()
        );
        assert!(SphericalConfig::new(3, vec![vec![1.0, 0.0]], None).is_err());
        assert!(
            SphericalConfig::from_json(r#"{"dim": 2, "points": [[1.0, 0.0], [0.0, 1.0]]}"#).is_ok()
        );
        assert!(SphericalConfig::from_json(r#"{"dim": 2, "points": [[2.0, 0.0]]}"#).is_err());
    }

    fn contains(c: &SphericalConfig, p: &[f64]) -> bool {
        c.points
            .iter()
            .any(|q| q.iter().zip(p).all(|(a, b)| (a - b).abs() <= 1e-12))
    }

    #[test]
    fn invariant_under_signed_permutation() {
        for name in NAMED {
            let c = named(name).unwrap();
            let dim = c.dim;
            let mut found = false;
            // Try single sign flips and signed transpositions.
            'outer: for i in 0..dim {
                for j in i..dim {
                    for flip in [false, true] {
                        if i == j && !flip {
                            continue;
                        }
                        let map = |p: &Vec<f64>| {
                            let mut q = p.clone();
                            q.swap(i, j);
                            if flip {
                                q[i] = -q[i];
                            }
                            q
                        };
                        if c.points.iter().all(|p| contains(&c, &map(p))) {
                            found = true;
                            break 'outer;
                        }
                    }
                }
            }
            assert!(found, "{name} has no signed-permutation symmetry");
        }
    }
}
