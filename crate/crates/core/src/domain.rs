//! Rasterized bounded open domains: generation, connectivity, interior
//! truncations and boundary faces.
//!
//! A domain is a set of grid cells whose centers lie in the open region of a
//! shape. Adjacency is the 2N-neighborhood matching the finite-volume stencil;
//! no boundary regularity is assumed anywhere, which is the whole point of the
//! rough shapes (slit, Koch prefractal, cusp) provided here.

use crate::error::{CoreError, Result};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Uniform cell grid. Cell (ix, iy) has center
/// (ox + (ix + 1/2) h, oy + (iy + 1/2) h).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub origin: (f64, f64),
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, h: f64) -> Self {
        assert!(h > 0.0 && nx >= 1 && ny >= 1);
        GridSpec {
            nx,
            ny,
            h,
            origin: (0.0, 0.0),
        }
    }

    pub fn with_origin(mut self, ox: f64, oy: f64) -> Self {
        self.origin = (ox, oy);
        self
    }

    /// Spatial dimension: ny == 1 encodes a 1-D grid.
    pub fn dim(&self) -> usize {
        if self.ny == 1 {
            1
        } else {
            2
        }
    }

    pub fn center(&self, ix: usize, iy: usize) -> (f64, f64) {
        (
            self.origin.0 + (ix as f64 + 0.5) * self.h,
            self.origin.1 + (iy as f64 + 0.5) * self.h,
        )
    }
}

/// Geometric shapes in absolute coordinates. Membership is by cell center,
/// except the slit which blocks the cells its segment passes through.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShapeSpec {
    /// Open interval (a, b); 1-D only.
    Interval { a: f64, b: f64 },
    /// Open axis-aligned rectangle.
    Square { x0: f64, y0: f64, x1: f64, y1: f64 },
    Disk { cx: f64, cy: f64, r: f64 },
    /// Rectangle minus its closed upper-right quadrant.
    LShape { x0: f64, y0: f64, x1: f64, y1: f64 },
    /// Rectangle minus the vertical segment {x = sx, y0 <= y <= sy}.
    Slit {
        x0: f64,
        y0: f64,
        x1: f64,
        y1: f64,
        sx: f64,
        sy: f64,
    },
    /// Koch snowflake prefractal, equilateral base triangle of circumradius r.
    Koch { cx: f64, cy: f64, r: f64, level: usize },
    /// {(x, y): x0 < x < x1, |y - cy| < w ((x - x0)/(x1 - x0))^power}:
    /// an outward cusp of the given power at x0.
    Cusp {
        x0: f64,
        x1: f64,
        cy: f64,
        w: f64,
        power: f64,
    },
    Annulus {
        cx: f64,
        cy: f64,
        r_inner: f64,
        r_outer: f64,
    },
}

impl ShapeSpec {
    pub fn unit_square() -> Self {
        ShapeSpec::Square {
            x0: 0.0,
            y0: 0.0,
            x1: 1.0,
            y1: 1.0,
        }
    }

    pub fn unit_interval() -> Self {
        ShapeSpec::Interval { a: 0.0, b: 1.0 }
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        match *self {
            ShapeSpec::Interval { a, b } => x > a && x < b,
            ShapeSpec::Square { x0, y0, x1, y1 } => x > x0 && x < x1 && y > y0 && y < y1,
            ShapeSpec::Disk { cx, cy, r } => (x - cx).powi(2) + (y - cy).powi(2) < r * r,
            ShapeSpec::LShape { x0, y0, x1, y1 } => {
                let inside = x > x0 && x < x1 && y > y0 && y < y1;
                let mx = 0.5 * (x0 + x1);
                let my = 0.5 * (y0 + y1);
                inside && !(x >= mx && y >= my)
            }
            ShapeSpec::Slit { x0, y0, x1, y1, .. } => x > x0 && x < x1 && y > y0 && y < y1,
            ShapeSpec::Koch { cx, cy, r, level } => {
                point_in_polygon(x, y, &koch_snowflake(cx, cy, r, level))
            }
            ShapeSpec::Cusp { x0, x1, cy, w, power } => {
                if x <= x0 || x >= x1 {
                    return false;
                }
                let t = (x - x0) / (x1 - x0);
                (y - cy).abs() < w * t.powf(power)
            }
            ShapeSpec::Annulus {
                cx,
                cy,
                r_inner,
                r_outer,
            } => {
                let d2 = (x - cx).powi(2) + (y - cy).powi(2);
                d2 > r_inner * r_inner && d2 < r_outer * r_outer
            }
        }
    }

    /// True when the slit segment passes through this cell's footprint
    /// [xl, xl+h) x [yl, yl+h) below the slit tip.
    fn blocks_cell(&self, xl: f64, yl: f64, h: f64) -> bool {
        match *self {
            ShapeSpec::Slit { sx, sy, .. } => xl <= sx && sx < xl + h && yl < sy,
            _ => false,
        }
    }

    /// Smallest geometric feature the grid must resolve.
    fn min_feature(&self) -> f64 {
        match *self {
            ShapeSpec::Interval { a, b } => b - a,
            ShapeSpec::Square { x0, y0, x1, y1 } => (x1 - x0).min(y1 - y0),
            ShapeSpec::Disk { r, .. } => r,
            ShapeSpec::LShape { x0, y0, x1, y1 } => 0.5 * (x1 - x0).min(y1 - y0),
            ShapeSpec::Slit { x0, x1, y1, sy, .. } => 0.5 * (x1 - x0).min(y1 - sy),
            ShapeSpec::Koch { r, level, .. } => 3.0f64.sqrt() * r / 3.0f64.powi(level as i32),
            ShapeSpec::Cusp { x0, x1, w, power, .. } => {
                // half-width at the quarter point of the axis
                let _ = x1 - x0;
                w * 0.25f64.powf(power)
            }
            ShapeSpec::Annulus {
                r_inner, r_outer, ..
            } => r_outer - r_inner,
        }
    }
}

fn koch_snowflake(cx: f64, cy: f64, r: f64, level: usize) -> Vec<(f64, f64)> {
    let level = level.min(5);
    let mut pts: Vec<(f64, f64)> = (0..3)
        .map(|k| {
            let ang = std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            (cx + r * ang.cos(), cy + r * ang.sin())
        })
        .collect();
    for _ in 0..level {
        let mut next = Vec::with_capacity(pts.len() * 4);
        for i in 0..pts.len() {
            let (ax, ay) = pts[i];
            let (bx, by) = pts[(i + 1) % pts.len()];
            let (dx, dy) = (bx - ax, by - ay);
            let p1 = (ax + dx / 3.0, ay + dy / 3.0);
            let p2 = (ax + 2.0 * dx / 3.0, ay + 2.0 * dy / 3.0);
            // outward bump: rotate the middle third by -60 degrees
            let (mx, my) = (p2.0 - p1.0, p2.1 - p1.1);
            let c60 = 0.5;
            let s60 = 3.0f64.sqrt() / 2.0;
            let tip = (p1.0 + c60 * mx + s60 * my, p1.1 - s60 * mx + c60 * my);
            next.push((ax, ay));
            next.push(p1);
            next.push(tip);
            next.push(p2);
        }
        pts = next;
    }
    pts
}

fn point_in_polygon(x: f64, y: f64, poly: &[(f64, f64)]) -> bool {
    let mut inside = false;
    let n = poly.len();
    let mut j = n - 1;
    for i in 0..n {
        let (xi, yi) = poly[i];
        let (xj, yj) = poly[j];
        if ((yi > y) != (yj > y)) && (x < (xj - xi) * (y - yi) / (yj - yi) + xi) {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Directions of the 2N-neighborhood. In 1-D only East/West apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    East,
    West,
    North,
    South,
}

impl Direction {
    pub fn all(dim: usize) -> &'static [Direction] {
        if dim == 1 {
            &[Direction::East, Direction::West]
        } else {
            &[
                Direction::East,
                Direction::West,
                Direction::North,
                Direction::South,
            ]
        }
    }

    fn offset(self) -> (isize, isize) {
        match self {
            Direction::East => (1, 0),
            Direction::West => (-1, 0),
            Direction::North => (0, 1),
            Direction::South => (0, -1),
        }
    }
}

/// Rasterized bounded domain: interior cells with adjacency and component labels.
#[derive(Debug, Clone)]
pub struct DomainMask {
    pub grid: GridSpec,
    interior: Vec<bool>,
    /// interior cell index -> (ix, iy)
    cells: Vec<(usize, usize)>,
    /// grid cell -> interior index
    index: Vec<Option<usize>>,
    /// per interior cell: neighbor interior index in each of the 4 directions
    neighbors: Vec<[Option<usize>; 4]>,
    component_id: Vec<usize>,
    n_components: usize,
    /// set when the grid under-resolves the shape's smallest feature
    pub resolution_warning: bool,
}

impl DomainMask {
    /// Number of interior cells.
    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn cell(&self, i: usize) -> (usize, usize) {
        self.cells[i]
    }

    pub fn cell_center(&self, i: usize) -> (f64, f64) {
        let (ix, iy) = self.cells[i];
        self.grid.center(ix, iy)
    }

    pub fn is_interior(&self, ix: usize, iy: usize) -> bool {
        ix < self.grid.nx && iy < self.grid.ny && self.interior[iy * self.grid.nx + ix]
    }

    pub fn interior_index(&self, ix: usize, iy: usize) -> Option<usize> {
        if ix < self.grid.nx && iy < self.grid.ny {
            self.index[iy * self.grid.nx + ix]
        } else {
            None
        }
    }

    pub fn neighbor(&self, i: usize, dir: Direction) -> Option<usize> {
        self.neighbors[i][dir as usize]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors[i].iter().flatten().copied()
    }

    pub fn component_id(&self, i: usize) -> usize {
        self.component_id[i]
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    /// Cells with at least one missing neighbor (the discrete boundary layer).
    pub fn boundary_layer(&self) -> Vec<bool> {
        (0..self.n())
            .map(|i| self.neighbors(i).count() < 2 * self.dim())
            .collect()
    }

    /// Exact Euclidean distance from each interior cell center to the nearest
    /// non-interior cell center (cells beyond the grid edge count as exterior).
    pub fn distance_to_exterior(&self) -> Vec<f64> {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        if self.dim() == 1 {
            // pad one ghost cell on each side
            let w = nx + 2;
            let mut f = vec![0.0f64; w];
            for ix in 0..nx {
                if self.interior[ix] {
                    f[ix + 1] = INF;
                }
            }
            let d = dt1d(&f);
            return self
                .cells
                .iter()
                .map(|&(ix, _)| (d[ix + 1]).sqrt() * self.grid.h)
                .collect();
        }
        let (w, hgt) = (nx + 2, ny + 2);
        let mut f = vec![0.0f64; w * hgt];
        for iy in 0..ny {
            for ix in 0..nx {
                if self.interior[iy * nx + ix] {
                    f[(iy + 1) * w + (ix + 1)] = INF;
                }
            }
        }
        // two-pass exact squared EDT: columns then rows
        let mut g = vec![0.0f64; w * hgt];
        let mut col = vec![0.0f64; hgt];
        for x in 0..w {
            for y in 0..hgt {
                col[y] = f[y * w + x];
            }
            let d = dt1d(&col);
            for y in 0..hgt {
                g[y * w + x] = d[y];
            }
        }
        let mut dist = vec![0.0f64; w * hgt];
        let mut row = vec![0.0f64; w];
        for y in 0..hgt {
            row.copy_from_slice(&g[y * w..(y + 1) * w]);
            let d = dt1d(&row);
            dist[y * w..(y + 1) * w].copy_from_slice(&d);
        }
        self.cells
            .iter()
            .map(|&(ix, iy)| dist[(iy + 1) * w + (ix + 1)].sqrt() * self.grid.h)
            .collect()
    }

    /// Largest distance-to-exterior over interior cells.
    pub fn inradius(&self) -> f64 {
        self.distance_to_exterior()
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Text serialization: header `nx ny h ox oy`, then row-major 0/1 rows.
    pub fn to_text(&self) -> String {
        let g = &self.grid;
        let mut s = format!("{} {} {:.17e} {:.17e} {:.17e}\n", g.nx, g.ny, g.h, g.origin.0, g.origin.1);
        for iy in 0..g.ny {
            for ix in 0..g.nx {
                s.push(if self.interior[iy * g.nx + ix] { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Arc<DomainMask>> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| CoreError::DegenerateDomain("empty mask file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 5 {
            return Err(CoreError::DegenerateDomain(format!(
                "bad mask header: {header}"
            )));
        }
        let nx: usize = parts[0].parse().map_err(|_| {
            CoreError::DegenerateDomain("bad nx in mask header".into())
        })?;
        let ny: usize = parts[1].parse().map_err(|_| {
            CoreError::DegenerateDomain("bad ny in mask header".into())
        })?;
        let h: f64 = parts[2].parse().unwrap_or(0.0);
        let ox: f64 = parts[3].parse().unwrap_or(0.0);
        let oy: f64 = parts[4].parse().unwrap_or(0.0);
        if h <= 0.0 {
            return Err(CoreError::DegenerateDomain("h must be positive".into()));
        }
        let mut interior = vec![false; nx * ny];
        for (iy, line) in lines.take(ny).enumerate() {
            for (ix, ch) in line.chars().take(nx).enumerate() {
                interior[iy * nx + ix] = ch == '1';
            }
        }
        let grid = GridSpec::new(nx, ny, h).with_origin(ox, oy);
        DomainMask::from_interior(grid, interior, false)
    }

    /// Builds the mask from an explicit interior bitmap.
    pub fn from_interior(
        grid: GridSpec,
        interior: Vec<bool>,
        resolution_warning: bool,
    ) -> Result<Arc<DomainMask>> {
        assert_eq!(interior.len(), grid.nx * grid.ny);
        let mut cells = Vec::new();
        let mut index = vec![None; grid.nx * grid.ny];
        for iy in 0..grid.ny {
            for ix in 0..grid.nx {
                if interior[iy * grid.nx + ix] {
                    index[iy * grid.nx + ix] = Some(cells.len());
                    cells.push((ix, iy));
                }
            }
        }
        if cells.is_empty() {
            return Err(CoreError::DegenerateDomain(
                "no cell centers fall in the shape's open region".into(),
            ));
        }
        let dim = grid.dim();
        let mut neighbors = vec![[None; 4]; cells.len()];
        for (i, &(ix, iy)) in cells.iter().enumerate() {
            for &dir in Direction::all(dim) {
                let (dx, dy) = dir.offset();
                let jx = ix as isize + dx;
                let jy = iy as isize + dy;
                if jx >= 0 && jy >= 0 && (jx as usize) < grid.nx && (jy as usize) < grid.ny {
                    neighbors[i][dir as usize] = index[(jy as usize) * grid.nx + jx as usize];
                }
            }
        }
        // component labels by BFS
        let mut component_id = vec![usize::MAX; cells.len()];
        let mut n_components = 0;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..cells.len() {
            if component_id[start] != usize::MAX {
                continue;
            }
            component_id[start] = n_components;
            queue.push_back(start);
            while let Some(i) = queue.pop_front() {
                for j in neighbors[i].iter().flatten().copied() {
                    if component_id[j] == usize::MAX {
                        component_id[j] = n_components;
                        queue.push_back(j);
                    }
                }
            }
            n_components += 1;
        }
        Ok(Arc::new(DomainMask {
            grid,
            interior,
            cells,
            index,
            neighbors,
            component_id,
            n_components,
            resolution_warning,
        }))
    }
}

const INF: f64 = 1e20;

/// 1-D squared distance transform (lower envelope of parabolas).
fn dt1d(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0f64; n];
    let mut v = vec![0usize; n];
    let mut z = vec![0.0f64; n + 1];
    let mut k = 0usize;
    v[0] = 0;
    z[0] = -2.0 * INF;
    z[1] = 2.0 * INF;
    let sect = |q: usize, p: usize| -> f64 {
        ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64))
    };
    for q in 1..n {
        let mut s = sect(q, v[k]);
        while s <= z[k] {
            k -= 1;
            s = sect(q, v[k]);
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = 2.0 * INF;
    }
    let mut k = 0usize;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let dq = q as f64 - p as f64;
        d[q] = dq * dq + f[p];
    }
    d
}

/// Subset of a mask's interior cells (houses interior truncations and
/// degeneracy sets).
#[derive(Debug, Clone)]
pub struct CellSet {
    pub mask: Arc<DomainMask>,
    member: Vec<bool>,
}

impl CellSet {
    pub fn new(mask: Arc<DomainMask>, member: Vec<bool>) -> Self {
        assert_eq!(member.len(), mask.n());
        CellSet { mask, member }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.member[i]
    }

    pub fn count(&self) -> usize {
        self.member.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
    }

    pub fn is_subset_of(&self, other: &CellSet) -> bool {
        self.member
            .iter()
            .zip(&other.member)
            .all(|(&a, &b)| !a || b)
    }
}

/// Rasterizes a shape on a grid. Errors on an empty interior; sets the
/// resolution warning when fewer than 4 cells span the smallest feature.
pub fn make_domain(shape: &ShapeSpec, grid: GridSpec) -> Result<Arc<DomainMask>> {
    if let ShapeSpec::Interval { .. } = shape {
        if grid.ny != 1 {
            return Err(CoreError::DegenerateDomain(
                "interval shape requires a 1-D grid (ny = 1)".into(),
            ));
        }
    }
    let mut interior = vec![false; grid.nx * grid.ny];
    for iy in 0..grid.ny {
        for ix in 0..grid.nx {
            let (cx, cy) = grid.center(ix, iy);
            let mut inside = shape.contains(cx, cy);
            if inside {
                let xl = grid.origin.0 + ix as f64 * grid.h;
                let yl = grid.origin.1 + iy as f64 * grid.h;
                if shape.blocks_cell(xl, yl, grid.h) {
                    inside = false;
                }
            }
            interior[iy * grid.nx + ix] = inside;
        }
    }
    let warn = shape.min_feature() < 4.0 * grid.h;
    DomainMask::from_interior(grid, interior, warn)
}

/// True iff all interior cells share one component.
pub fn is_connected(mask: &DomainMask) -> bool {
    mask.n_components() == 1
}

/// Interior truncation Omega_delta: cells whose center-to-nearest-exterior
/// distance exceeds delta + h/2. delta = 0 reproduces the full interior.
pub fn interior_truncation(mask: &Arc<DomainMask>, delta: f64) -> CellSet {
    assert!(delta >= 0.0);
    let dist = mask.distance_to_exterior();
    let cut = delta + mask.grid.h / 2.0;
    let member = dist.iter().map(|&d| d > cut).collect();
    CellSet::new(mask.clone(), member)
}

/// One entry per interior-cell face touching a non-interior cell.
pub fn boundary_faces(mask: &DomainMask) -> Vec<(usize, Direction, f64)> {
    let dim = mask.dim();
    let measure = if dim == 1 { 1.0 } else { mask.grid.h };
    let mut faces = Vec::new();
    for i in 0..mask.n() {
        for &dir in Direction::all(dim) {
            if mask.neighbor(i, dir).is_none() {
                faces.push((i, dir, measure));
            }
        }
    }
    faces
}

/// Random connected mask grown by seeded BFS; used by verification sweeps.
pub fn random_connected_mask(
    seed: u64,
    nx: usize,
    ny: usize,
    h: f64,
    target_cells: usize,
) -> Arc<DomainMask> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = GridSpec::new(nx, ny, h);
    let mut chosen = vec![false; nx * ny];
    let start = (ny / 2) * nx + nx / 2;
    chosen[start] = true;
    let mut frontier = vec![start];
    let mut count = 1usize;
    let target = target_cells.min(nx * ny);
    while count < target && !frontier.is_empty() {
        let pick = rng.gen_range(0..frontier.len());
        let cell = frontier.swap_remove(pick);
        let (ix, iy) = (cell % nx, cell / nx);
        let mut candidates = Vec::new();
        if ix + 1 < nx {
            candidates.push(cell + 1);
        }
        if ix > 0 {
            candidates.push(cell - 1);
        }
        if iy + 1 < ny {
            candidates.push(cell + nx);
        }
        if iy > 0 {
            candidates.push(cell - nx);
        }
        let mut extended = false;
        for &c in &candidates {
            if !chosen[c] && rng.gen::<f64>() < 0.7 && count < target {
                chosen[c] = true;
                frontier.push(c);
                count += 1;
                extended = true;
            }
        }
        if extended || candidates.iter().any(|&c| !chosen[c]) {
            frontier.push(cell);
        }
    }
    DomainMask::from_interior(grid, chosen, false).expect("random mask has at least one cell")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_square_rasterization() {
        // square on 4x4 grid, h = 0.25: all 16 cells interior
        let grid = GridSpec::new(4, 4, 0.25);
        let mask = make_domain(&ShapeSpec::unit_square(), grid).unwrap();
        assert_eq!(mask.n(), 16);
        assert!(is_connected(&mask));
    }

    #[test]
    fn disk_on_coarse_grid() {
        // disk of radius 0.5 in the unit square, 2x2 grid: all 4 centers at
        // distance sqrt(2)/4 < 0.5
        let grid = GridSpec::new(2, 2, 0.5);
        let mask = make_domain(
            &ShapeSpec::Disk {
                cx: 0.5,
                cy: 0.5,
                r: 0.5,
            },
            grid,
        )
        .unwrap();
        assert_eq!(mask.n(), 4);
        assert!(mask.resolution_warning);
    }

    #[test]
    fn slit_square_removes_blocked_cells_and_stays_connected() {
        let grid = GridSpec::new(64, 64, 1.0 / 64.0);
        let shape = ShapeSpec::Slit {
            x0: 0.0,
            y0: 0.0,
            x1: 1.0,
            y1: 1.0,
            sx: 0.5,
            sy: 0.5,
        };
        let mask = make_domain(&shape, grid).unwrap();
        // oracle: enumerate cells whose half-open x-range contains sx below sy
        let mut blocked = 0;
        for iy in 0..64 {
            for ix in 0..64 {
                let xl = ix as f64 / 64.0;
                let yl = iy as f64 / 64.0;
                if xl <= 0.5 && 0.5 < xl + 1.0 / 64.0 && yl < 0.5 {
                    blocked += 1;
                }
            }
        }
        assert_eq!(blocked, 32);
        assert_eq!(mask.n(), 64 * 64 - 32);
        assert!(is_connected(&mask));
    }

    #[test]
    fn two_disjoint_squares_are_disconnected() {
        let grid = GridSpec::new(9, 4, 0.25);
        let mut interior = vec![false; 36];
        for iy in 0..4 {
            for ix in 0..4 {
                interior[iy * 9 + ix] = true;
                interior[iy * 9 + ix + 5] = true;
            }
        }
        let mask = DomainMask::from_interior(grid, interior, false).unwrap();
        assert!(!is_connected(&mask));
        assert_eq!(mask.n_components(), 2);
    }

    #[test]
    fn truncation_zero_is_full_interior() {
        let grid = GridSpec::new(16, 16, 1.0 / 16.0);
        let mask = make_domain(&ShapeSpec::unit_square(), grid).unwrap();
        let full = interior_truncation(&mask, 0.0);
        assert_eq!(full.count(), mask.n());
    }

    #[test]
    fn truncation_beyond_inradius_is_empty() {
        let grid = GridSpec::new(16, 16, 1.0 / 16.0);
        let mask = make_domain(&ShapeSpec::unit_square(), grid).unwrap();
        let set = interior_truncation(&mask, 0.5);
        assert!(set.is_empty());
    }

    #[test]
    fn truncation_quarter_is_centered_subsquare() {
        // unit square, 64x64, delta = 0.25: kept cells form a centered square
        // of side about 0.5. Oracle: brute-force distance per cell.
        let grid = GridSpec::new(64, 64, 1.0 / 64.0);
        let mask = make_domain(&ShapeSpec::unit_square(), grid).unwrap();
        let set = interior_truncation(&mask, 0.25);
        let h = grid.h;
        let cut = 0.25 + h / 2.0;
        for i in 0..mask.n() {
            let (ix, iy) = mask.cell(i);
            // brute force: nearest exterior center is beyond the grid edge
            let dx = (ix.min(63 - ix) + 1) as f64 * h;
            let dy = (iy.min(63 - iy) + 1) as f64 * h;
            let d = dx.min(dy);
            assert_eq!(
                set.contains(i),
                d > cut,
                "cell ({ix},{iy}) dist {d} cut {cut}"
            );
        }
        let side = (set.count() as f64).sqrt() * h;
        assert!((side - 0.5).abs() < 2.5 * h, "side {side}");
    }

    #[test]
    fn truncation_is_antitone() {
        let grid = GridSpec::new(32, 32, 1.0 / 32.0);
        let mask = make_domain(
            &ShapeSpec::LShape {
                x0: 0.0,
                y0: 0.0,
                x1: 1.0,
                y1: 1.0,
            },
            grid,
        )
        .unwrap();
        let mut prev = interior_truncation(&mask, 0.0);
        for &d in &[0.05, 0.1, 0.2, 0.4] {
            let cur = interior_truncation(&mask, d);
            assert!(cur.is_subset_of(&prev));
            prev = cur;
        }
    }

    #[test]
    fn boundary_faces_of_unit_square() {
        let grid = GridSpec::new(4, 4, 0.25);
        let mask = make_domain(&ShapeSpec::unit_square(), grid).unwrap();
        let faces = boundary_faces(&mask);
        assert_eq!(faces.len(), 16);
        let total: f64 = faces.iter().map(|&(_, _, m)| m).sum();
        assert!((total - 4.0 * 0.25 * 4.0).abs() < 1e-15);
    }

    #[test]
    fn interval_has_two_unit_faces() {
        for n in [3usize, 17, 64] {
            let grid = GridSpec::new(n, 1, 1.0 / n as f64);
            let mask = make_domain(&ShapeSpec::unit_interval(), grid).unwrap();
            let faces = boundary_faces(&mask);
            assert_eq!(faces.len(), 2);
            assert!(faces.iter().all(|&(_, _, m)| m == 1.0));
        }
    }

    #[test]
    fn lshape_staircase_perimeter() {
        let grid = GridSpec::new(32, 32, 1.0 / 32.0);
        let mask = make_domain(
            &ShapeSpec::LShape {
                x0: 0.0,
                y0: 0.0,
                x1: 1.0,
                y1: 1.0,
            },
            grid,
        )
        .unwrap();
        let faces = boundary_faces(&mask);
        let total: f64 = faces.iter().map(|&(_, _, m)| m).sum();
        // oracle: enumerate exposed faces directly from the bitmap
        let mut expect = 0.0;
        for i in 0..mask.n() {
            let missing = 4 - mask.neighbors(i).count();
            expect += missing as f64 * grid.h;
        }
        assert!((total - expect).abs() < 1e-12);
        // L-shape perimeter: outer 4 sides minus the notch still totals 4.0
        assert!((total - 4.0).abs() < 1e-12);
    }

    #[test]
    fn cells_in_boundary_layer_have_faces() {
        let mask = random_connected_mask(42, 24, 24, 1.0 / 24.0, 260);
        let faces = boundary_faces(&mask);
        let layer = mask.boundary_layer();
        for i in 0..mask.n() {
            if layer[i] {
                assert!(faces.iter().any(|&(c, _, _)| c == i));
            }
        }
    }

    #[test]
    fn connectivity_agrees_with_union_find_oracle() {
        // independent union-find check on 100 random masks
        struct Uf(Vec<usize>);
        impl Uf {
            fn find(&mut self, a: usize) -> usize {
                if self.0[a] != a {
                    let r = self.find(self.0[a]);
                    self.0[a] = r;
                }
                self.0[a]
            }
            fn union(&mut self, a: usize, b: usize) {
                let (ra, rb) = (self.find(a), self.find(b));
                if ra != rb {
                    self.0[ra] = rb;
                }
            }
        }
        for seed in 0..100u64 {
            let mask = random_connected_mask(seed, 16, 16, 1.0 / 16.0, 60 + (seed as usize) % 120);
            let mut uf = Uf((0..mask.n()).collect());
            for i in 0..mask.n() {
                for j in mask.neighbors(i) {
                    uf.union(i, j);
                }
            }
            let root = uf.find(0);
            let connected = (0..mask.n()).all(|i| uf.find(i) == root);
            assert_eq!(connected, is_connected(&mask), "seed {seed}");
        }
    }

    #[test]
    fn text_round_trip() {
        let grid = GridSpec::new(8, 8, 0.125);
        let mask = make_domain(
            &ShapeSpec::Disk {
                cx: 0.5,
                cy: 0.5,
                r: 0.4,
            },
            grid,
        )
        .unwrap();
        let text = mask.to_text();
        let back = DomainMask::from_text(&text).unwrap();
        assert_eq!(back.n(), mask.n());
        for i in 0..mask.n() {
            assert_eq!(back.cell(i), mask.cell(i));
        }
    }

    #[test]
    fn koch_prefractal_is_connected_at_moderate_resolution() {
        let grid = GridSpec::new(64, 64, 1.0 / 64.0);
        let mask = make_domain(
            &ShapeSpec::Koch {
                cx: 0.5,
                cy: 0.5,
                r: 0.45,
                level: 3,
            },
            grid,
        )
        .unwrap();
        assert!(mask.n() > 500);
        assert!(is_connected(&mask));
    }

    #[test]
    fn empty_interior_is_an_error() {
        let grid = GridSpec::new(4, 4, 0.25);
        let shape = ShapeSpec::Disk {
            cx: 10.0,
            cy: 10.0,
            r: 0.1,
        };
        assert!(make_domain(&shape, grid).is_err());
    }
}
