//! Admissible figures: unions of overlapping `k x (k+1)` rectangles.
//!
//! Coordinates are 1-based `(row, col)` with row 1 at the top, matching the
//! conventional tile labelling; internally tiles are indexed 0-based in
//! row-major order. A figure is admissible when it can be assembled in a
//! sequence of rectangle placements such that each new rectangle overlaps the
//! union built so far by at least one tile (even `k`) or by at least two
//! edge-adjacent tiles (odd `k`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FigureError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("a figure needs at least one rectangle placement")]
    NoPlacements,
    #[error("placement {index} does not overlap the union of the previous rectangles")]
    NoOverlap { index: usize },
    #[error("placement {index} overlaps in {found} tile(s) with no edge-adjacent pair; odd k requires at least two adjacent tiles")]
    OverlapNotAdjacent { index: usize, found: usize },
    #[error("anchor coordinates are 1-based and must be positive")]
    BadAnchor,
    #[error("no {k}x{k} block at ({row},{col}) lies inside the figure")]
    SiteNotInFigure { row: usize, col: usize, k: usize },
    #[error("figure file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Rectangle orientation: `Horizontal` is `k` rows by `k+1` columns,
/// `Vertical` is `k+1` rows by `k` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// One rectangle of the construction sequence, anchored at its top-left cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RectPlacement {
    pub row: usize,
    pub col: usize,
    pub orientation: Orientation,
}

impl RectPlacement {
    pub fn new(row: usize, col: usize, orientation: Orientation) -> Self {
        RectPlacement { row, col, orientation }
    }

    fn cells(&self, k: usize) -> Vec<(usize, usize)> {
        let (rows, cols) = match self.orientation {
            Orientation::Horizontal => (k, k + 1),
            Orientation::Vertical => (k + 1, k),
        };
        let mut out = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                out.push((self.row + i, self.col + j));
            }
        }
        out
    }
}

/// Block size plus the ordered construction sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureSpec {
    pub k: usize,
    pub placements: Vec<RectPlacement>,
}

impl FigureSpec {
    pub fn new(k: usize, placements: Vec<RectPlacement>) -> Self {
        FigureSpec { k, placements }
    }

    /// Parses the text figure format: a `k=<int>` line followed by
    /// `rect <row> <col> <H|V>` lines, `#` starting a comment.
    pub fn parse(text: &str) -> Result<FigureSpec, FigureError> {
        let mut k = None;
        let mut placements = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(v) = content.strip_prefix("k=") {
                let parsed = v.trim().parse::<usize>().map_err(|e| FigureError::Parse {
                    line,
                    msg: format!("bad k value: {e}"),
                })?;
                k = Some(parsed);
            } else if let Some(rest) = content.strip_prefix("rect") {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 {
                    return Err(FigureError::Parse {
                        line,
                        msg: "expected: rect <row> <col> <H|V>".into(),
                    });
                }
                let row = fields[0].parse::<usize>().map_err(|e| FigureError::Parse {
                    line,
                    msg: format!("bad row: {e}"),
                })?;
                let col = fields[1].parse::<usize>().map_err(|e| FigureError::Parse {
                    line,
                    msg: format!("bad col: {e}"),
                })?;
                let orientation = match fields[2] {
                    "H" | "h" => Orientation::Horizontal,
                    "V" | "v" => Orientation::Vertical,
                    other => {
                        return Err(FigureError::Parse {
                            line,
                            msg: format!("orientation must be H or V, got {other}"),
                        })
                    }
                };
                placements.push(RectPlacement::new(row, col, orientation));
            } else {
                return Err(FigureError::Parse {
                    line,
                    msg: format!("unrecognized line: {content}"),
                });
            }
        }
        match k {
            Some(k) => Ok(FigureSpec::new(k, placements)),
            None => Err(FigureError::Parse {
                line: 0,
                msg: "missing k=<int> line".into(),
            }),
        }
    }
}

impl fmt::Display for FigureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k={}", self.k)?;
        for p in &self.placements {
            let o = match p.orientation {
                Orientation::Horizontal => "H",
                Orientation::Vertical => "V",
            };
            writeln!(f, "rect {} {} {}", p.row, p.col, o)?;
        }
        Ok(())
    }
}

/// Anchor of a `k x k` rotation block inside a figure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RotationSite {
    pub row: usize,
    pub col: usize,
}

/// A validated figure: occupied cells, row-major tile indexing, checkerboard
/// counts, and every `k x k` rotation site. Immutable once built.
#[derive(Clone, Debug)]
pub struct Figure {
    k: usize,
    cells: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    sites: Vec<RotationSite>,
    shaded: usize,
    spec: FigureSpec,
}

impl Figure {
    /// Validates the construction sequence and assembles the figure.
    pub fn build(spec: &FigureSpec) -> Result<Figure, FigureError> {
        if spec.k < 2 {
            return Err(FigureError::KTooSmall(spec.k));
        }
        if spec.placements.is_empty() {
            return Err(FigureError::NoPlacements);
        }
        let k = spec.k;
        let mut cells: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (idx, placement) in spec.placements.iter().enumerate() {
            if placement.row == 0 || placement.col == 0 {
                return Err(FigureError::BadAnchor);
            }
            let rect: BTreeSet<(usize, usize)> = placement.cells(k).into_iter().collect();
            if idx > 0 {
                let overlap: Vec<(usize, usize)> =
                    rect.intersection(&cells).copied().collect();
                if overlap.is_empty() {
                    return Err(FigureError::NoOverlap { index: idx + 1 });
                }
                if k % 2 == 1 {
                    let set: BTreeSet<_> = overlap.iter().copied().collect();
                    let adjacent = overlap.iter().any(|&(r, c)| {
                        set.contains(&(r + 1, c)) || set.contains(&(r, c + 1))
                    });
                    if !adjacent {
                        return Err(FigureError::OverlapNotAdjacent {
                            index: idx + 1,
                            found: overlap.len(),
                        });
                    }
                }
            }
            cells.extend(rect);
        }
        let cells: Vec<(usize, usize)> = cells.into_iter().collect();
        let index: BTreeMap<(usize, usize), usize> =
            cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut sites = Vec::new();
        for &(r, c) in &cells {
            let fits = (0..k).all(|i| (0..k).all(|j| index.contains_key(&(r + i, c + j))));
            if fits {
                sites.push(RotationSite { row: r, col: c });
            }
        }
        let shaded = cells.iter().filter(|&&(r, c)| (r + c) % 2 == 0).count();
        Ok(Figure {
            k,
            cells,
            index,
            sites,
            shaded,
            spec: spec.clone(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Tile count.
    pub fn n(&self) -> usize {
        self.cells.len()
    }

    /// Number of cells with `(row + col)` even (the shaded checkerboard class).
    pub fn shaded_count(&self) -> usize {
        self.shaded
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn sites(&self) -> &[RotationSite] {
        &self.sites
    }

    pub fn spec(&self) -> &FigureSpec {
        &self.spec
    }

    pub fn tile_index(&self, cell: (usize, usize)) -> Option<usize> {
        self.index.get(&cell).copied()
    }

    pub fn cell(&self, tile: usize) -> (usize, usize) {
        self.cells[tile]
    }

    /// 0 for `(row+col)` even, 1 for odd.
    pub fn tile_color(&self, tile: usize) -> u8 {
        let (r, c) = self.cells[tile];
        ((r + c) % 2) as u8
    }

    /// Clockwise quarter-turn of the `k x k` block anchored at `site`; tiles
    /// outside the block stay fixed. The block tile at offset `(di, dj)` from
    /// the anchor moves to offset `(dj, k−1−di)`.
    pub fn rotation_permutation(&self, site: RotationSite) -> Result<Permutation, FigureError> {
        if !self.sites.contains(&site) {
            return Err(FigureError::SiteNotInFigure {
                row: site.row,
                col: site.col,
                k: self.k,
            });
        }
        let mut images: Vec<usize> = (0..self.n()).collect();
        for di in 0..self.k {
            for dj in 0..self.k {
                let src = self.index[&(site.row + di, site.col + dj)];
                let dst = self.index[&(site.row + dj, site.col + self.k - 1 - di)];
                images[src] = dst;
            }
        }
        Ok(Permutation::from_images(images).expect("rotation is a bijection"))
    }

    /// One clockwise rotation per site, in row-major site order. Inverses are
    /// not included; each generator satisfies `g⁴ = id`, so `g⁻¹ = g³`.
    pub fn generators(&self) -> Vec<Permutation> {
        self.sites
            .iter()
            .map(|&s| self.rotation_permutation(s).expect("site is valid"))
            .collect()
    }

    pub fn generator_index(&self, site: RotationSite) -> Option<usize> {
        self.sites.iter().position(|&s| s == site)
    }

    /// Tile indices of the two checkerboard classes: `(row+col)` even first.
    pub fn checkerboard_orbit_sets(&self) -> (Vec<usize>, Vec<usize>) {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for t in 0..self.n() {
            if self.tile_color(t) == 0 {
                even.push(t);
            } else {
                odd.push(t);
            }
        }
        (even, odd)
    }

    /// Centerpoint reflection `(i,j) → (k+1−i, k+2−j)` of a single horizontal
    /// rectangle anchored at (1,1); conjugates the left rotation to the right
    /// one and swaps the checkerboard classes when `k` is odd. `None` when the
    /// figure is not that rectangle.
    pub fn centerpoint_reflection(&self) -> Option<Permutation> {
        let k = self.k;
        if self.n() != k * (k + 1) || self.cells[0] != (1, 1) || self.cells[self.n() - 1] != (k, k + 1)
        {
            return None;
        }
        let mut images = vec![0; self.n()];
        for (t, &(i, j)) in self.cells.iter().enumerate() {
            let dst = *self.index.get(&(k + 1 - i, k + 2 - j))?;
            images[t] = dst;
        }
        Some(Permutation::from_images(images).expect("reflection is a bijection"))
    }

    /// Cycle notation over `(row,col)` coordinates; each listed tile maps to
    /// the next, the last back to the first. Fixed tiles are omitted.
    pub fn cycle_string(&self, p: &Permutation) -> String {
        let mut out = String::new();
        for cycle in p.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            out.push('(');
            for (i, &t) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let (r, c) = self.cells[t];
                out.push_str(&format!("({r},{c})"));
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    fn bounds(&self) -> (usize, usize, usize, usize) {
        let min_r = self.cells.iter().map(|c| c.0).min().unwrap();
        let max_r = self.cells.iter().map(|c| c.0).max().unwrap();
        let min_c = self.cells.iter().map(|c| c.1).min().unwrap();
        let max_c = self.cells.iter().map(|c| c.1).max().unwrap();
        (min_r, max_r, min_c, max_c)
    }

    /// ASCII occupancy grid: `#` occupied, `.` empty.
    pub fn render_occupancy(&self) -> String {
        self.render_with(|_, _| '#')
    }

    /// ASCII checkerboard: `B` where `(row+col)` is even, `W` otherwise.
    pub fn render_checkerboard(&self) -> String {
        self.render_with(|r, c| if (r + c) % 2 == 0 { 'B' } else { 'W' })
    }

    fn render_with(&self, glyph: impl Fn(usize, usize) -> char) -> String {
        let (min_r, max_r, min_c, max_c) = self.bounds();
        let mut out = String::new();
        for r in min_r..=max_r {
            for c in min_c..=max_c {
                out.push(if self.index.contains_key(&(r, c)) {
                    glyph(r, c)
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }
}

/// The `k x (k+1)` rectangle anchored at (1,1); its two generators are the
/// left and right block rotations, in that order.
pub fn rectangle(k: usize) -> Result<Figure, FigureError> {
    Figure::build(&FigureSpec::new(
        k,
        vec![RectPlacement::new(1, 1, Orientation::Horizontal)],
    ))
}
