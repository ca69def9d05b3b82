use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::catalog::CatalogEntry;
use crate::error::{domain, Result};
use crate::functors::{morphism_f, pushforward_left};
use crate::linalg::Matrix;
use crate::poly::rational_eigenvalues;
use crate::quiver::{ArrowId, QuiverSchema, VertexId};
use crate::rational::{q, Rational};
use crate::rep::{check_relations, decompose, hom_basis, iso, standard_relations, IsoResult, Representation};

/// Small integer matrix used while enumerating.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IMat {
    fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    fn mul(&self, rhs: &IMat) -> IMat {
        let mut out = IMat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a != 0 {
                    for c in 0..rhs.cols {
                        out.data[r * rhs.cols + c] += a * rhs.get(k, c);
                    }
                }
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }

    /// Rank by fraction-free elimination.
    fn rank(&self) -> usize {
        let mut m: Vec<Vec<i128>> = (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c) as i128).collect()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, p);
            for r in 0..self.rows {
                if r != rank && m[r][c] != 0 {
                    let (a, b) = (m[rank][c], m[r][c]);
                    for k in 0..self.cols {
                        m[r][k] = m[r][k] * a - m[rank][k] * b;
                    }
                    let g = m[r].iter().fold(0i128, |g, x| gcd(g, *x));
                    if g > 1 {
                        m[r].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_matrix(&self) -> Matrix {
        Matrix::from_i64(self.rows, self.cols, &self.data)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A representation of the line quiver on `0..dims.len()`: `fwd[i]` is
/// `rho_i: i -> i+1`, `bwd[i]` is `rhobar_{i+1}: i+1 -> i`.
#[derive(Clone, Debug)]
struct Strip {
    dims: Vec<usize>,
    fwd: Vec<IMat>,
    bwd: Vec<IMat>,
}

impl Strip {
    fn to_rep(&self) -> Result<Representation> {
        let s = QuiverSchema::qinf();
        let v = |i: usize| VertexId::Int(i as i64);
        let mut mats = Vec::new();
        for (i, m) in self.fwd.iter().enumerate() {
            mats.push((ArrowId::new(1, v(i)), m.to_matrix()));
        }
        for (i, m) in self.bwd.iter().enumerate() {
            mats.push((ArrowId::new(2, v(i + 1)), m.to_matrix()));
        }
        Representation::new(&s, self.dims.iter().enumerate().map(|(i, d)| (v(i), *d)), mats)
    }

    /// `rho_{t-1} rhobar_t` as a map on vertex `t` (zero at `t = 0`).
    fn loop_at(&self, t: usize) -> IMat {
        if t == 0 {
            IMat::zeros(self.dims[0], self.dims[0])
        } else {
            self.fwd[t - 1].mul(&self.bwd[t - 1])
        }
    }

    /// Ranks of the maps along every path of length at most 4.
    fn fingerprint(&self) -> Vec<usize> {
        let n = self.dims.len();
        let mut out = self.dims.clone();
        let mut frontier: Vec<(usize, IMat)> = (0..n).map(|i| (i, IMat { rows: self.dims[i], cols: self.dims[i], data: identity(self.dims[i]) })).collect();
        for _ in 0..4 {
            let mut next = Vec::new();
            for (v, m) in &frontier {
                if *v + 1 < n {
                    let p = self.fwd[*v].mul(m);
                    out.push(p.rank());
                    next.push((*v + 1, p));
                }
                if *v > 0 {
                    let p = self.bwd[*v - 1].mul(m);
                    out.push(p.rank());
                    next.push((*v - 1, p));
                }
            }
            frontier = next;
        }
        out
    }
}

fn identity(d: usize) -> Vec<i64> {
    let mut v = vec![0; d * d];
    for i in 0..d {
        v[i * d + i] = 1;
    }
    v
}

/// All matrices of the given shape with entries from `entries`.
fn all_matrices(rows: usize, cols: usize, entries: &[i64]) -> Vec<IMat> {
    let cells = rows * cols;
    let mut out = Vec::new();
    let total = entries.len().pow(cells as u32);
    for mut code in 0..total {
        let mut data = Vec::with_capacity(cells);
        for _ in 0..cells {
            data.push(entries[code % entries.len()]);
            code /= entries.len();
        }
        out.push(IMat { rows, cols, data });
    }
    out
}

/// Signed permutation matrices of size `d`.
fn signed_perms(d: usize) -> Vec<IMat> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for p in &perms {
            for i in 0..d {
                if !p.contains(&i) {
                    let mut q = p.clone();
                    q.push(i);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..(1u32 << d) {
            let mut m = IMat::zeros(d, d);
            for (r, c) in p.iter().enumerate() {
                m.data[r * d + c] = if signs >> r & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}

fn transpose(m: &IMat) -> IMat {
    let mut t = IMat::zeros(m.cols, m.rows);
    for r in 0..m.rows {
        for c in 0..m.cols {
            t.data[c * m.rows + r] = m.get(r, c);
        }
    }
    t
}

/// Iso classes seen so far, bucketed by fingerprint.
struct Classes {
    reps: Vec<(Strip, Arc<Representation>)>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
    seed: u64,
}

impl Classes {
    fn new(seed: u64) -> Self {
        Classes { reps: Vec::new(), buckets: HashMap::new(), seed }
    }

    /// Adds `s` unless an isomorphic strip is already present.
    fn insert(&mut self, s: Strip) -> Result<bool> {
        let fp = s.fingerprint();
        let rep = Arc::new(s.to_rep()?);
        if let Some(bucket) = self.buckets.get(&fp) {
            for &i in bucket {
                if same_class(&rep, &self.reps[i].1, self.seed)? {
                    return Ok(false);
                }
            }
        }
        self.buckets.entry(fp).or_default().push(self.reps.len());
        self.reps.push((s, rep));
        Ok(true)
    }
}

fn same_class(v: &Arc<Representation>, u: &Arc<Representation>, seed: u64) -> Result<bool> {
    if v == u {
        return Ok(true);
    }
    if v.dims() != u.dims() {
        return Ok(false);
    }
    if hom_basis(v, v)?.len() != hom_basis(u, v)?.len() {
        return Ok(false);
    }
    // Unknown verdicts count as distinct, so a class may be listed twice but never merged wrongly.
    Ok(iso(v, u, seed)?.is_iso())
}

/// Output of the preprojective enumeration.
#[derive(Clone, Debug)]
pub struct BandCatalog {
    pub width: usize,
    pub dim_max: usize,
    pub entries_set: Vec<i64>,
    /// Candidate representations examined after the relation filter.
    pub candidates: usize,
    pub entries: Vec<CatalogEntry>,
    pub note: &'static str,
}

pub const BOUNDED_NOTE: &str = "bounded search, not a completeness proof";

fn shift_to_zero(v: &Representation) -> Result<Representation> {
    let lo = v.dims().keys().filter_map(|x| x.int()).min().unwrap_or(0);
    v.relabel(v.schema(), |x| match x {
        VertexId::Int(k) => VertexId::Int(k - lo),
        other => other,
    })
}

fn support_width(v: &Representation) -> usize {
    let ks: Vec<i64> = v.dims().keys().filter_map(|x| x.int()).collect();
    match (ks.iter().min(), ks.iter().max()) {
        (Some(lo), Some(hi)) => (hi - lo + 1) as usize,
        _ => 0,
    }
}

/// Indecomposable representations of the line quiver with preprojective
/// relations, supported on at most `width` consecutive vertices, found by
/// extending one vertex at a time. Each stage keeps one strip per iso class
/// and tries every new pair of matrices with entries from `entries` (up to
/// signed permutations of the new basis). Results are listed up to translation.
pub fn catalog_preprojective_band(width: usize, dim_max: usize, entries: &[i64], seed: u64) -> Result<BandCatalog> {
    if !(1..=4).contains(&width) {
        return domain("width must be between 1 and 4");
    }
    if !(1..=3).contains(&dim_max) {
        return domain("dim_max must be between 1 and 3");
    }
    if entries.is_empty() || entries.iter().any(|e| e.abs() > 1) {
        return domain("entries must be drawn from {-1, 0, 1}");
    }
    let mut entries = entries.to_vec();
    entries.sort();
    entries.dedup();

    let mut stage = Classes::new(seed);
    for d in 1..=dim_max {
        stage.insert(Strip { dims: vec![d], fwd: vec![], bwd: vec![] })?;
    }
    let mut finals: Vec<Arc<Representation>> = stage.reps.iter().map(|r| r.1.clone()).collect();
    let mut candidates = finals.len();
    let perms: BTreeMap<usize, Vec<IMat>> = (1..=dim_max).map(|d| (d, signed_perms(d))).collect();
    for t in 1..width {
        let mut next = Classes::new(seed);
        for (p, _) in &stage.reps {
            let dp = p.dims[t - 1];
            // The relation at t-1 once the new arrows exist: rhobar_t rho_{t-1} = rho_{t-2} rhobar_{t-1}.
            let target = p.loop_at(t - 1);
            for dt in 1..=dim_max {
                let fwds = all_matrices(dt, dp, &entries);
                let bwds = all_matrices(dp, dt, &entries);
                for a in &fwds {
                    for b in &bwds {
                        if b.mul(a) != target {
                            continue;
                        }
                        let canonical = perms[&dt].iter().all(|g| {
                            let ga = g.mul(a);
                            let bg = b.mul(&transpose(g));
                            let allowed = ga.data.iter().chain(&bg.data).all(|x| entries.contains(x));
                            !allowed || (a, b) <= (&ga, &bg)
                        });
                        if !canonical {
                            continue;
                        }
                        candidates += 1;
                        let mut s = p.clone();
                        s.dims.push(dt);
                        s.fwd.push(a.clone());
                        s.bwd.push(b.clone());
                        next.insert(s)?;
                    }
                }
            }
        }
        stage = next;
        // A strip on 0..=t is a module once the relation at t holds: rho_{t-1} rhobar_t = 0.
        for (s, rep) in &stage.reps {
            if s.loop_at(t).is_zero() {
                finals.push(rep.clone());
            }
        }
    }

    let qinf = QuiverSchema::qinf();
    let mut leaves = Classes::new(seed);
    let mut found: Vec<Arc<Representation>> = Vec::new();
    let mut buckets: HashMap<Vec<(VertexId, usize)>, Vec<usize>> = HashMap::new();
    let _ = &mut leaves;
    for (i, v) in finals.iter().enumerate() {
        let d = decompose(v, seed.wrapping_add(i as u64))?;
        for s in d.summands {
            let leaf = Arc::new(shift_to_zero(&s.rep)?);
            let key: Vec<(VertexId, usize)> = leaf.dims().iter().map(|(x, d)| (*x, *d)).collect();
            let bucket = buckets.entry(key).or_default();
            let mut dup = false;
            for &j in bucket.iter() {
                if same_class(&leaf, &found[j], seed)? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                bucket.push(found.len());
                found.push(leaf);
            }
        }
    }
    found.sort_by_key(|r| (support_width(r), r.total_dim(), r.dims().iter().map(|(x, d)| (*x, *d)).collect::<Vec<_>>()));
    let mut out = Vec::new();
    for (i, rep) in found.into_iter().enumerate() {
        let dims: Vec<String> = rep.dims().values().map(|d| d.to_string()).collect();
        let name = format!("P{i} dims ({})", dims.join(","));
        let rep = Arc::try_unwrap(rep).unwrap_or_else(|a| (*a).clone());
        debug_assert_eq!(*rep.schema(), qinf);
        out.push(CatalogEntry::new(name, "preprojective-band", rep).expecting(Some(true), Some(true)).checked(seed)?);
    }
    Ok(BandCatalog { width, dim_max, entries_set: entries, candidates, entries: out, note: BOUNDED_NOTE })
}

/// Attempts to lift `v` along `f`: finds `U` on the grid with `f_!(U) = v`.
///
/// A lift is the same as a grading of `v` by the second coordinate `j`: an
/// operator `D` commuting with every `rho` and with `[D, rhobar] = rhobar`.
/// Such `D` form an affine space; the particular solution is tried first, then
/// seeded perturbations by endomorphisms. `None` means no lift was found
/// within those attempts.
pub fn lift_band_rep(v: &Arc<Representation>, seed: u64) -> Result<Option<Representation>> {
    if *v.schema() != QuiverSchema::qinf() {
        return domain(format!("band lifting starts from the line quiver, not {}", v.schema()));
    }
    if v.is_zero() {
        return domain("cannot lift the zero representation");
    }
    if support_width(v) > 5 {
        return domain(format!("support width {} exceeds 5", support_width(v)));
    }
    let (particular, homogeneous) = grading_solutions(v)?;
    let Some(particular) = particular else { return Ok(None) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = morphism_f();
    for attempt in 0..8 {
        let mut x = particular.clone();
        if attempt > 0 {
            for h in &homogeneous {
                let c = q(rng.gen_range(-2..=2));
                for (xi, hi) in x.iter_mut().zip(h) {
                    *xi += &c * hi;
                }
            }
        }
        let d = unflatten(v, &x)?;
        let Some(u) = grade(v, &d)? else { continue };
        if !check_relations(&u, &standard_relations(&u)?)?.is_empty() {
            continue;
        }
        if let IsoResult::Iso(_) = iso(&Arc::new(pushforward_left(&f, &u)?), v, seed)? {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

type Flat = Vec<Rational>;

fn offsets(v: &Representation) -> (BTreeMap<VertexId, usize>, usize) {
    let mut off = BTreeMap::new();
    let mut n = 0;
    for (x, d) in v.dims() {
        off.insert(*x, n);
        n += d * d;
    }
    (off, n)
}

/// Particular solution and homogeneous basis of `D rho = rho D`, `D rhobar - rhobar D = rhobar`.
fn grading_solutions(v: &Representation) -> Result<(Option<Flat>, Vec<Flat>)> {
    let schema = v.schema();
    let (off, nvars) = offsets(v);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for (a, m) in v.stored_arrows() {
        let (x, y) = (a.tail, schema.head(*a)?);
        let (dx, dy) = (v.dim(x), v.dim(y));
        // D_y M - M D_x = c M with c = 0 for rho, 1 for rhobar.
        let c = if a.family == 2 { q(1) } else { q(0) };
        for r in 0..dy {
            for col in 0..dx {
                let mut row = vec![q(0); nvars];
                for k in 0..dy {
                    row[off[&y] + r * dy + k] += m.get(k, col);
                }
                for k in 0..dx {
                    row[off[&x] + k * dx + col] -= m.get(r, k);
                }
                rows.push(row);
                rhs.push(&c * m.get(r, col));
            }
        }
    }
    if rows.is_empty() {
        return Ok((Some(vec![q(0); nvars]), identity_basis(nvars)));
    }
    let system = Matrix::from_rows(rows, nvars)?;
    let b = Matrix::column(rhs);
    let particular = system.solve(&b)?.map(|s| (0..nvars).map(|i| s.get(i, 0).clone()).collect());
    let k = system.kernel();
    let homogeneous = (0..k.cols()).map(|j| (0..nvars).map(|i| k.get(i, j).clone()).collect()).collect();
    Ok((particular, homogeneous))
}

fn identity_basis(n: usize) -> Vec<Flat> {
    (0..n).map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect()
}

fn unflatten(v: &Representation, x: &[Rational]) -> Result<BTreeMap<VertexId, Matrix>> {
    let (off, _) = offsets(v);
    v.dims()
        .iter()
        .map(|(k, d)| Ok((*k, Matrix::from_vec(*d, *d, x[off[k]..off[k] + d * d].to_vec())?)))
        .collect()
}

/// Splits `v` along the generalized eigenspaces of `D`, eigenvalue `c0 + j`
/// going to grid vertex `(k + j, j)`. `None` if the spectrum is not of that shape.
fn grade(v: &Representation, d: &BTreeMap<VertexId, Matrix>) -> Result<Option<Representation>> {
    let mut spectrum: Vec<Rational> = Vec::new();
    for m in d.values() {
        spectrum.extend(rational_eigenvalues(m));
    }
    let Some(c0) = spectrum.iter().min().cloned() else { return Ok(None) };
    let mut pieces: BTreeMap<(i64, i64), Matrix> = BTreeMap::new();
    for (x, m) in d {
        let k = x.int().expect("line vertex");
        let n = m.rows();
        let mut covered = 0;
        for c in rational_eigenvalues(m) {
            let shift = &c - &c0;
            if !shift.is_integer() {
                return Ok(None);
            }
            let j: i64 = shift.to_integer().try_into().unwrap_or(i64::MAX);
            let basis = (m - &Matrix::scalar(n, &c)).pow(n).kernel();
            covered += basis.cols();
            pieces.insert((k, j), basis);
        }
        if covered != n {
            return Ok(None);
        }
    }
    let grid = QuiverSchema::grid();
    let schema = v.schema();
    let mut dims = Vec::new();
    let mut mats = Vec::new();
    for ((k, j), basis) in &pieces {
        dims.push((VertexId::Pair(k + j, *j), basis.cols()));
        for (family, target) in [(1u8, (k + 1, *j)), (2u8, (k - 1, j + 1))] {
            let a = ArrowId::new(family, VertexId::Int(*k));
            let image = &v.mat(a)? * basis;
            if image.is_zero() {
                continue;
            }
            let Some(tb) = pieces.get(&target) else { return Ok(None) };
            let Some(x) = tb.solve(&image)? else { return Ok(None) };
            let _ = schema;
            mats.push((ArrowId::new(family, VertexId::Pair(k + j, *j)), x));
        }
    }
    Ok(Some(Representation::new(&grid, dims, mats)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::orbit_canonical;

    fn int(k: i64) -> VertexId {
        VertexId::Int(k)
    }

    #[test]
    fn lift_interval() {
        let s = QuiverSchema::qinf();
        let v = Arc::new(Representation::new(&s, [(int(0), 1), (int(1), 1)], [(ArrowId::new(1, int(0)), Matrix::identity(1))]).unwrap());
        let u = lift_band_rep(&v, 0).unwrap().unwrap();
        assert_eq!(u.support(), vec![VertexId::Pair(0, 0), VertexId::Pair(1, 0)]);
        assert_eq!(u.mat(ArrowId::new(1, VertexId::Pair(0, 0))).unwrap(), Matrix::identity(1));
    }

    #[test]
    fn lift_simple_and_backward() {
        let s = QuiverSchema::qinf();
        let simple = Arc::new(Representation::simple(&s, int(0)).unwrap());
        let u = lift_band_rep(&simple, 3).unwrap().unwrap();
        assert_eq!(orbit_canonical(&u).unwrap().support(), vec![VertexId::Pair(0, 0)]);
        let back = Arc::new(Representation::new(&s, [(int(0), 1), (int(1), 1)], [(ArrowId::new(2, int(1)), Matrix::identity(1))]).unwrap());
        let u = lift_band_rep(&back, 0).unwrap().unwrap();
        assert_eq!(u.total_dim(), 2);
    }

    #[test]
    fn wide_support_rejected() {
        let s = QuiverSchema::qinf();
        let v = Arc::new(Representation::new(&s, [(int(0), 1), (int(6), 1)], []).unwrap());
        assert!(lift_band_rep(&v, 0).is_err());
    }

    #[test]
    fn small_band_catalogs() {
        let c1 = catalog_preprojective_band(1, 2, &[-1, 0, 1], 0).unwrap();
        assert_eq!(c1.entries.len(), 1);
        let c2 = catalog_preprojective_band(2, 1, &[-1, 0, 1], 0).unwrap();
        // Simple, forward arrow, backward arrow.
        assert_eq!(c2.entries.len(), 3);
    }

    #[test]
    fn int_rank() {
        let m = IMat { rows: 2, cols: 2, data: vec![1, 1, 1, 1] };
        assert_eq!(m.rank(), 1);
        let m = IMat { rows: 2, cols: 3, data: vec![1, 0, -1, 0, 1, 1] };
        assert_eq!(m.rank(), 2);
    }
}
