//! Explicit 3-cycle words: the even- and odd-case rectangle constructions and
//! the extension words for k=2 and k=3 overlap shapes.
//!
//! For a single `k x (k+1)` rectangle with `k > 3` the base words are
//!   even k:  ( c σ₃ c⁻¹ (σ_R⁻¹ σ_L⁻¹)² )²⁰   with c = (σ_R² σ_L²)^⌈k/4⌉,
//!            σ₃ = σ_R for k ≡ 0 mod 4 and σ₃ = σ_L for k ≡ 2 mod 4;
//!   odd k:   ( (σ_R⁻¹ σ_L)^α (σ_R² σ_L²)^((k−1)/2) σ_L² )^(β/3)
//! where α depends on k mod 72 and β is the order of the inner word. The odd
//! base word has exactly one cycle of length divisible by 3 (a 3-cycle), so
//! the β/3 power isolates it. Swapping σ_L and σ_R mirrors the construction
//! into the other checkerboard class.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::figure::{
    rectangle, Figure, FigureError, FigureSpec, Orientation, RectPlacement, RotationSite,
};
use crate::perm::Permutation;
use crate::word::{PowerWord, Word, WordError};

/// Odd k values whose base-word cycle structure is charted exactly, covering
/// every residue branch of the construction.
pub const CHARTED_ODD_K: [usize; 14] = [5, 7, 9, 11, 13, 15, 21, 27, 33, 39, 57, 75, 111, 183];

/// Additional large cases refining k ≡ 39 mod 72 modulo 360.
pub const EXTENDED_ODD_K: [usize; 2] = [255, 327];

/// Even k values exercised by the certification suite.
pub const CHARTED_EVEN_K: [usize; 5] = [4, 6, 8, 10, 12];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThreeCycleError {
    #[error("k must be odd and greater than 3, got {0}")]
    NotOddAbove3(usize),
    #[error("k must be even and greater than 3, got {0}")]
    NotEvenAbove3(usize),
    #[error("base word order {beta} is not divisible by 3 for k={k}")]
    BetaNotDivisibleBy3 { k: usize, beta: BigUint },
    #[error("word does not evaluate to a 3-cycle (moves {moved} tiles)")]
    NotAThreeCycle { moved: usize },
    #[error("3-cycle straddles both checkerboard classes")]
    MixedOrbit,
    #[error("an odd-k construction needs a specific checkerboard class")]
    OrbitRequired,
    #[error(transparent)]
    Figure(#[from] FigureError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Which orbit a certificate lives in. `Shaded` is the class with
/// `(row+col)` even; even k has a single orbit, tagged `All`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitTag {
    All,
    Shaded,
    Unshaded,
}

impl OrbitTag {
    pub fn label(self) -> &'static str {
        match self {
            OrbitTag::All => "all",
            OrbitTag::Shaded => "E",
            OrbitTag::Unshaded => "Ec",
        }
    }

    fn of_color(color: u8) -> OrbitTag {
        if color == 0 {
            OrbitTag::Shaded
        } else {
            OrbitTag::Unshaded
        }
    }
}

/// α of the odd-case word: 3 unless k ≡ 3 mod 18, then 4 / 2 / 12 according
/// to k mod 72.
pub fn alpha_for(k: usize) -> Result<usize, ThreeCycleError> {
    if k % 2 == 0 || k <= 3 {
        return Err(ThreeCycleError::NotOddAbove3(k));
    }
    Ok(if k % 18 != 3 {
        3
    } else {
        match k % 72 {
            3 => 4,
            21 | 57 => 2,
            _ => 12, // k ≡ 39 mod 72
        }
    })
}

/// `(σ_R⁻¹ σ_L)^α (σ_R² σ_L²)^((k−1)/2) σ_L²` over generators `[σ_L, σ_R]`.
pub fn odd_base_word(k: usize, alpha: usize) -> Word {
    let mut w = Word::empty();
    for _ in 0..alpha {
        w.push(1, 3);
        w.push(0, 1);
    }
    for _ in 0..(k - 1) / 2 {
        w.push(1, 2);
        w.push(0, 2);
    }
    w.push(0, 2);
    w
}

/// `c σ₃ c⁻¹ (σ_R⁻¹ σ_L⁻¹)²` with `c = (σ_R² σ_L²)^⌈k/4⌉`.
pub fn even_base_word(k: usize) -> Word {
    let reps = k.div_ceil(4);
    let sigma3 = if k % 4 == 0 { 1 } else { 0 };
    let mut c = Word::empty();
    for _ in 0..reps {
        c.push(1, 2);
        c.push(0, 2);
    }
    let mut w = c.concat(&Word::letter(sigma3, 1)).concat(&c.inverse());
    for _ in 0..2 {
        w.push(1, 3);
        w.push(0, 3);
    }
    w
}

/// A word certified to evaluate to a 3-cycle, with the evaluated permutation,
/// the three moved tiles, and the orbit they live in.
#[derive(Clone, Debug)]
pub struct ThreeCycleCertificate {
    pub word: PowerWord,
    pub perm: Permutation,
    pub moved: Vec<usize>,
    pub orbit: OrbitTag,
}

fn certify(
    figure: &Figure,
    word: PowerWord,
    perm: Permutation,
) -> Result<ThreeCycleCertificate, ThreeCycleError> {
    let moved = perm.moved_points();
    if moved.len() != 3 {
        return Err(ThreeCycleError::NotAThreeCycle { moved: moved.len() });
    }
    let orbit = if figure.k() % 2 == 0 {
        OrbitTag::All
    } else {
        let colors: Vec<u8> = moved.iter().map(|&t| figure.tile_color(t)).collect();
        if colors[1] != colors[0] || colors[2] != colors[0] {
            return Err(ThreeCycleError::MixedOrbit);
        }
        OrbitTag::of_color(colors[0])
    };
    Ok(ThreeCycleCertificate {
        word,
        perm,
        moved,
        orbit,
    })
}

/// The even-case 3-cycle on the `k x (k+1)` rectangle (`k > 3` even).
pub fn even_three_cycle(k: usize) -> Result<ThreeCycleCertificate, ThreeCycleError> {
    if k % 2 != 0 || k <= 3 {
        return Err(ThreeCycleError::NotEvenAbove3(k));
    }
    let figure = rectangle(k)?;
    let gens = figure.generators();
    let word = PowerWord::new(even_base_word(k), BigUint::from(20u8));
    let perm = word.evaluate(&gens)?;
    certify(&figure, word, perm)
}

/// Order of the odd base word (lcm of its cycle lengths).
pub fn odd_beta(k: usize) -> Result<BigUint, ThreeCycleError> {
    let alpha = alpha_for(k)?;
    let figure = rectangle(k)?;
    let base = odd_base_word(k, alpha).evaluate(&figure.generators())?;
    Ok(base.element_order())
}

/// The odd-case 3-cycle on the requested checkerboard class of the
/// `k x (k+1)` rectangle (`k > 3` odd). The construction's word is evaluated
/// and, when its 3-cycle lands in the other class, the σ_L↔σ_R-swapped word
/// is used instead, which mirrors it through the rectangle's centerpoint.
pub fn odd_three_cycle(
    k: usize,
    orbit: OrbitTag,
) -> Result<ThreeCycleCertificate, ThreeCycleError> {
    if orbit == OrbitTag::All {
        return Err(ThreeCycleError::OrbitRequired);
    }
    let alpha = alpha_for(k)?;
    let figure = rectangle(k)?;
    let gens = figure.generators();
    let plain = odd_base_word(k, alpha);
    for candidate in [plain.clone(), plain.swap_gens(0, 1)] {
        let base = candidate.evaluate(&gens)?;
        let beta = base.element_order();
        let (q, r) = beta.div_rem(&BigUint::from(3u8));
        if !r.is_zero() {
            return Err(ThreeCycleError::BetaNotDivisibleBy3 { k, beta });
        }
        let perm = base.power_big(&q);
        let cert = certify(&figure, PowerWord::new(candidate, q), perm)?;
        if cert.orbit == orbit {
            return Ok(cert);
        }
    }
    Err(ThreeCycleError::MixedOrbit)
}

/// The overlap shapes that start every larger admissible figure for k=2 and
/// k=3, each with a designated third generator σ₃.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionShape {
    /// k=2: two 2x3 side by side forming a 2x4.
    K2Rect2x4,
    /// k=2: a 2x3 joined at the corner square (2,3) to a 2x2 region.
    K2CornerJoin,
    /// k=2: two 2x3 at right angles, a 3x3 missing the (3,1) corner.
    K2LMinusCorner,
    /// k=3: two 3x4 side by side forming a 3x5.
    K3Rect3x5,
    /// k=3: a 3x4 joined by the two squares (2,4),(3,4) to a 3x3 region.
    K3NearCornerA,
    /// k=3: a 3x4 joined by the two squares (3,3),(3,4) to a 3x3 region.
    K3NearCornerB,
    /// k=3: two 3x4 at right angles, a 4x4 missing the (4,1) corner.
    K3LMinusCorner,
}

impl ExtensionShape {
    pub const ALL: [ExtensionShape; 7] = [
        ExtensionShape::K2Rect2x4,
        ExtensionShape::K2CornerJoin,
        ExtensionShape::K2LMinusCorner,
        ExtensionShape::K3Rect3x5,
        ExtensionShape::K3NearCornerA,
        ExtensionShape::K3NearCornerB,
        ExtensionShape::K3LMinusCorner,
    ];

    pub fn k(self) -> usize {
        match self {
            ExtensionShape::K2Rect2x4
            | ExtensionShape::K2CornerJoin
            | ExtensionShape::K2LMinusCorner => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExtensionShape::K2Rect2x4 => "k2-2x4",
            ExtensionShape::K2CornerJoin => "k2-corner-join",
            ExtensionShape::K2LMinusCorner => "k2-l-minus-corner",
            ExtensionShape::K3Rect3x5 => "k3-3x5",
            ExtensionShape::K3NearCornerA => "k3-near-corner-a",
            ExtensionShape::K3NearCornerB => "k3-near-corner-b",
            ExtensionShape::K3LMinusCorner => "k3-l-minus-corner",
        }
    }

    pub fn spec(self) -> FigureSpec {
        let h = |r, c| RectPlacement::new(r, c, Orientation::Horizontal);
        let v = |r, c| RectPlacement::new(r, c, Orientation::Vertical);
        match self {
            ExtensionShape::K2Rect2x4 => FigureSpec::new(2, vec![h(1, 1), h(1, 2)]),
            ExtensionShape::K2CornerJoin => FigureSpec::new(2, vec![h(1, 1), v(2, 3)]),
            ExtensionShape::K2LMinusCorner => FigureSpec::new(2, vec![h(1, 1), v(1, 2)]),
            ExtensionShape::K3Rect3x5 => FigureSpec::new(3, vec![h(1, 1), h(1, 2)]),
            ExtensionShape::K3NearCornerA => FigureSpec::new(3, vec![h(1, 1), v(2, 4)]),
            ExtensionShape::K3NearCornerB => FigureSpec::new(3, vec![h(1, 1), v(3, 3)]),
            ExtensionShape::K3LMinusCorner => FigureSpec::new(3, vec![h(1, 1), v(1, 2)]),
        }
    }

    fn sigma3_anchor(self) -> (usize, usize) {
        match self {
            ExtensionShape::K2Rect2x4 => (1, 3),
            ExtensionShape::K2CornerJoin => (2, 3),
            ExtensionShape::K2LMinusCorner => (2, 2),
            ExtensionShape::K3Rect3x5 => (1, 3),
            ExtensionShape::K3NearCornerA => (2, 4),
            ExtensionShape::K3NearCornerB => (3, 3),
            ExtensionShape::K3LMinusCorner => (2, 2),
        }
    }
}

/// The designated 3-cycle words of one extension shape: one certificate for
/// k=2 (single orbit), one per checkerboard class for k=3 (shaded first).
pub fn extension_three_cycles(
    shape: ExtensionShape,
) -> Result<(Figure, Vec<ThreeCycleCertificate>), ThreeCycleError> {
    let figure = Figure::build(&shape.spec())?;
    let gens = figure.generators();
    let (ar, ac) = shape.sigma3_anchor();
    let s3 = figure
        .generator_index(RotationSite { row: ar, col: ac })
        .expect("sigma3 anchor is a site of the shape");
    let s1 = Word::letter(0, 1);
    let s2 = Word::letter(1, 1);
    let w3 = Word::letter(s3, 1);
    // Designated words: (base, power).
    let words: Vec<(Word, usize)> = match shape {
        ExtensionShape::K2Rect2x4 => {
            vec![(Word::letter(s3, 2).concat(&Word::commutator(&s2, &s1)), 2)]
        }
        ExtensionShape::K2CornerJoin => vec![(Word::commutator(&w3, &s2), 1)],
        ExtensionShape::K2LMinusCorner => vec![(Word::commutator(&w3, &s1), 1)],
        ExtensionShape::K3Rect3x5 => vec![
            (Word::commutator(&s1, &w3), 2),
            (
                Word::letter(s3, 2)
                    .concat(&Word::letter(1, 3))
                    .concat(&Word::letter(0, 1)),
                20,
            ),
        ],
        ExtensionShape::K3NearCornerA => vec![
            (
                Word::letter(s3, 2)
                    .concat(&Word::commutator(&Word::letter(1, 2), &Word::letter(0, 2))),
                2,
            ),
            (
                Word::letter(0, 2)
                    .concat(&Word::commutator(&Word::letter(s3, 2), &Word::letter(1, 2))),
                4,
            ),
        ],
        ExtensionShape::K3NearCornerB => vec![
            (Word::commutator(&s1, &w3), 4),
            (
                Word::commutator(&s1, &w3).concat(&Word::commutator(&s2, &w3)),
                2,
            ),
        ],
        ExtensionShape::K3LMinusCorner => vec![
            (
                s2.concat(&Word::commutator(&Word::letter(s3, 2), &Word::letter(0, 2))),
                4,
            ),
            (
                w3.concat(&Word::letter(1, 2)).concat(&Word::letter(0, 2)),
                20,
            ),
        ],
    };
    let mut certs = Vec::new();
    for (base, power) in words {
        let word = PowerWord::new(base, BigUint::from(power));
        let perm = word.evaluate(&gens)?;
        certs.push(certify(&figure, word, perm)?);
    }
    if shape.k() == 3 {
        certs.sort_by_key(|c| c.orbit != OrbitTag::Shaded);
        if certs[0].orbit == certs[1].orbit {
            return Err(ThreeCycleError::MixedOrbit);
        }
    }
    Ok((figure, certs))
}

/// A 3-cycle inside one checkerboard class of the exceptional 3x4 rectangle:
/// the word moves tiles of both classes, but its restriction to the requested
/// class is a genuine 3-cycle (the shaded-class word is `(σ_L σ_R²)²`).
pub struct RestrictedThreeCycle {
    pub word: PowerWord,
    pub orbit: OrbitTag,
    /// Tiles of the class moved by the restriction.
    pub moved: Vec<usize>,
    /// The restriction, re-indexed within the class.
    pub restricted: Permutation,
}

pub fn exceptional_k3_restricted(
    orbit: OrbitTag,
) -> Result<(Figure, RestrictedThreeCycle), ThreeCycleError> {
    if orbit == OrbitTag::All {
        return Err(ThreeCycleError::OrbitRequired);
    }
    let figure = rectangle(3)?;
    let mut base = Word::letter(0, 1).concat(&Word::letter(1, 2));
    if orbit == OrbitTag::Unshaded {
        base = base.swap_gens(0, 1);
    }
    let word = PowerWord::new(base, BigUint::from(2u8));
    let perm = word.evaluate(&figure.generators())?;
    let (shaded, unshaded) = figure.checkerboard_orbit_sets();
    let points = if orbit == OrbitTag::Shaded {
        shaded
    } else {
        unshaded
    };
    let restricted = perm
        .restrict(&points)
        .expect("generators preserve the classes");
    let moved: Vec<usize> = restricted
        .moved_points()
        .into_iter()
        .map(|i| points[i])
        .collect();
    if moved.len() != 3 {
        return Err(ThreeCycleError::NotAThreeCycle { moved: moved.len() });
    }
    Ok((
        figure,
        RestrictedThreeCycle {
            word,
            orbit,
            moved,
            restricted,
        },
    ))
}

/// Certificate 3-cycles for an arbitrary figure, as `(permutation, word)`
/// pairs over the figure's generator list. For `k ≥ 4` the first placed
/// rectangle hosts the single-rectangle construction (both mirror images for
/// odd k, covering the two classes); for k=2/3 only the canonical extension
/// shapes are recognized and other figures yield no certificates.
pub fn figure_three_cycles(
    figure: &Figure,
) -> Result<Vec<(Permutation, Word)>, ThreeCycleError> {
    let k = figure.k();
    if k >= 4 {
        let first = figure.spec().placements[0];
        let (a1, a2) = match first.orientation {
            Orientation::Horizontal => (
                RotationSite {
                    row: first.row,
                    col: first.col,
                },
                RotationSite {
                    row: first.row,
                    col: first.col + 1,
                },
            ),
            Orientation::Vertical => (
                RotationSite {
                    row: first.row + 1,
                    col: first.col,
                },
                RotationSite {
                    row: first.row,
                    col: first.col,
                },
            ),
        };
        let ga = figure.generator_index(a1).expect("block of first rectangle");
        let gb = figure.generator_index(a2).expect("block of first rectangle");
        let gens = figure.generators();
        let words: Vec<PowerWord> = if k % 2 == 0 {
            vec![PowerWord::new(even_base_word(k), BigUint::from(20u8))]
        } else {
            let alpha = alpha_for(k)?;
            let base = odd_base_word(k, alpha);
            let local = rectangle(k)?;
            let local_gens = local.generators();
            let mut out = Vec::new();
            for cand in [base.clone(), base.swap_gens(0, 1)] {
                let inner = cand.evaluate(&local_gens)?;
                let beta = inner.element_order();
                let (q, r) = beta.div_rem(&BigUint::from(3u8));
                if !r.is_zero() {
                    return Err(ThreeCycleError::BetaNotDivisibleBy3 { k, beta });
                }
                out.push(PowerWord::new(cand, q));
            }
            out
        };
        let mut certs = Vec::new();
        for pw in words {
            let translated = PowerWord::new(remap_two(&pw.base, ga, gb), pw.exponent.clone());
            let perm = translated.evaluate(&gens)?;
            let moved = perm.moved_points();
            if moved.len() != 3 {
                return Err(ThreeCycleError::NotAThreeCycle { moved: moved.len() });
            }
            let flat = translated
                .expand(4_000_000)
                .ok_or(ThreeCycleError::NotAThreeCycle { moved: 0 })?;
            certs.push((perm, flat));
        }
        return Ok(certs);
    }
    for shape in ExtensionShape::ALL {
        if shape.k() != k {
            continue;
        }
        let (canon, certs) = extension_three_cycles(shape)?;
        if canon.cells() == figure.cells() {
            return Ok(certs
                .into_iter()
                .filter_map(|c| c.word.expand(1_000_000).map(|w| (c.perm, w)))
                .collect());
        }
    }
    Ok(Vec::new())
}

/// Rewrites a two-generator word (gens 0 and 1) onto arbitrary generator ids.
fn remap_two(word: &Word, a: usize, b: usize) -> Word {
    let mut out = Word::empty();
    for l in word.letters() {
        let gen = match l.gen {
            0 => a,
            1 => b,
            other => other,
        };
        out.push(gen, l.exp as i64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn tiles(figure: &Figure, moved: &[usize]) -> Vec<(usize, usize)> {
        moved.iter().map(|&t| figure.cell(t)).collect()
    }

    #[test]
    fn alpha_table() {
        assert_eq!(alpha_for(5).unwrap(), 3);
        assert_eq!(alpha_for(7).unwrap(), 3);
        assert_eq!(alpha_for(9).unwrap(), 3);
        assert_eq!(alpha_for(21).unwrap(), 2);
        assert_eq!(alpha_for(57).unwrap(), 2);
        assert_eq!(alpha_for(75).unwrap(), 4);
        assert_eq!(alpha_for(39).unwrap(), 12);
        assert_eq!(alpha_for(111).unwrap(), 12);
        assert!(alpha_for(4).is_err());
        assert!(alpha_for(3).is_err());
    }

    #[test]
    fn even_case_moved_tiles() {
        // (1, k/2+1), (k/2, k), (k/2+2, 1) for every charted even k.
        for k in CHARTED_EVEN_K {
            let cert = even_three_cycle(k).unwrap();
            let figure = rectangle(k).unwrap();
            let mut want = vec![(1, k / 2 + 1), (k / 2, k), (k / 2 + 2, 1)];
            want.sort();
            assert_eq!(tiles(&figure, &cert.moved), want, "k={k}");
            assert_eq!(cert.perm.sign(), 1);
            assert_eq!(cert.orbit, OrbitTag::All);
        }
        assert!(even_three_cycle(2).is_err());
    }

    #[test]
    fn odd_case_beta_values() {
        assert_eq!(odd_beta(5).unwrap().to_u64(), Some(120));
        assert_eq!(odd_beta(7).unwrap().to_u64(), Some(1560));
    }

    #[test]
    fn odd_case_hits_requested_orbit() {
        for k in [5usize, 7, 9] {
            let figure = rectangle(k).unwrap();
            for orbit in [OrbitTag::Shaded, OrbitTag::Unshaded] {
                let cert = odd_three_cycle(k, orbit).unwrap();
                assert_eq!(cert.orbit, orbit, "k={k}");
                assert_eq!(cert.moved.len(), 3);
                for &t in &cert.moved {
                    assert_eq!(
                        figure.tile_color(t),
                        if orbit == OrbitTag::Shaded { 0 } else { 1 }
                    );
                }
            }
        }
    }

    #[test]
    fn main_case_unshaded_cycle_is_the_listed_one() {
        // α=3 branch: the plain word's 3-cycle is ((1,2),(4,k),(2,k)), all
        // with odd coordinate sum.
        let k = 7;
        let cert = odd_three_cycle(k, OrbitTag::Unshaded).unwrap();
        let figure = rectangle(k).unwrap();
        let mut want = vec![(1, 2), (4, k), (2, k)];
        want.sort();
        assert_eq!(tiles(&figure, &cert.moved), want);
    }

    #[test]
    fn k9_family_has_twelve_short_cycles() {
        // k ≡ 9 mod 18: 3(k−5) cycles of length (k+6)/3 in the base word.
        let k = 9;
        let figure = rectangle(k).unwrap();
        let base = odd_base_word(k, 3).evaluate(&figure.generators()).unwrap();
        let count = base
            .cycle_type()
            .length_multiset()
            .get(&((k + 6) / 3))
            .copied()
            .unwrap_or(0);
        assert_eq!(count, 3 * (k - 5));
    }

    #[test]
    fn swap_symmetry_via_centerpoint_reflection() {
        for k in [5usize, 7] {
            let figure = rectangle(k).unwrap();
            let refl = figure.centerpoint_reflection().unwrap();
            let a = odd_three_cycle(k, OrbitTag::Shaded).unwrap();
            let b = odd_three_cycle(k, OrbitTag::Unshaded).unwrap();
            let mirrored = refl.conjugate(&a.perm).unwrap();
            // The mirrored shaded certificate is exactly the unshaded one.
            assert_eq!(mirrored, b.perm, "k={k}");
        }
    }

    #[test]
    fn extension_stated_images() {
        let (f, certs) = extension_three_cycles(ExtensionShape::K2Rect2x4).unwrap();
        assert_eq!(tiles(&f, &certs[0].moved), vec![(1, 2), (1, 3), (2, 4)]);

        let (f, certs) = extension_three_cycles(ExtensionShape::K2CornerJoin).unwrap();
        assert_eq!(tiles(&f, &certs[0].moved), vec![(2, 2), (2, 3), (2, 4)]);

        let (f, certs) = extension_three_cycles(ExtensionShape::K2LMinusCorner).unwrap();
        assert_eq!(tiles(&f, &certs[0].moved), vec![(2, 1), (2, 2), (2, 3)]);

        let (f, certs) = extension_three_cycles(ExtensionShape::K3Rect3x5).unwrap();
        assert_eq!(tiles(&f, &certs[0].moved), vec![(1, 3), (2, 4), (3, 5)]);
        assert_eq!(tiles(&f, &certs[1].moved), vec![(1, 4), (2, 3), (3, 2)]);
    }

    #[test]
    fn extension_derived_images() {
        // Words stated without images; values frozen from direct composition.
        let (f, certs) = extension_three_cycles(ExtensionShape::K3NearCornerA).unwrap();
        assert_eq!(tiles(&f, &certs[0].moved), vec![(2, 2), (2, 4), (4, 6)]);
        assert_eq!(tiles(&f, &certs[1].moved), vec![(1, 4), (3, 4), (3, 6)]);

        let (f, certs) = extension_three_cycles(ExtensionShape::K3NearCornerB).unwrap();
        assert_eq!(tiles(&f, &certs[0].moved), vec![(3, 1), (3, 3), (3, 5)]);
        assert_eq!(tiles(&f, &certs[1].moved), vec![(3, 2), (3, 4), (4, 5)]);

        let (f, certs) = extension_three_cycles(ExtensionShape::K3LMinusCorner).unwrap();
        assert_eq!(tiles(&f, &certs[0].moved), vec![(2, 2), (4, 2), (4, 4)]);
        assert_eq!(tiles(&f, &certs[1].moved), vec![(2, 1), (2, 3), (4, 3)]);
    }

    #[test]
    fn k3_shapes_cover_both_orbits_with_even_signs() {
        for shape in ExtensionShape::ALL {
            let (figure, certs) = extension_three_cycles(shape).unwrap();
            if shape.k() == 2 {
                assert_eq!(certs.len(), 1);
                assert_eq!(certs[0].orbit, OrbitTag::All);
            } else {
                assert_eq!(certs.len(), 2);
                assert_eq!(certs[0].orbit, OrbitTag::Shaded);
                assert_eq!(certs[1].orbit, OrbitTag::Unshaded);
            }
            for cert in &certs {
                assert_eq!(cert.perm.sign(), 1, "{}", shape.name());
                assert_eq!(cert.perm.cycle_type().length_multiset().get(&3), Some(&1));
                assert_eq!(
                    cert.word.evaluate(&figure.generators()).unwrap(),
                    cert.perm
                );
            }
        }
    }

    #[test]
    fn exceptional_k3_restriction_is_a_three_cycle() {
        let (figure, rc) = exceptional_k3_restricted(OrbitTag::Shaded).unwrap();
        assert_eq!(tiles(&figure, &rc.moved), vec![(1, 1), (1, 3), (3, 1)]);
        assert_eq!(rc.restricted.moved_points().len(), 3);
        // (1,1) → (3,1) → (1,3) → (1,1)
        let full = rc.word.evaluate(&figure.generators()).unwrap();
        let i11 = figure.tile_index((1, 1)).unwrap();
        let i31 = figure.tile_index((3, 1)).unwrap();
        let i13 = figure.tile_index((1, 3)).unwrap();
        assert_eq!(full.image(i11), i31);
        assert_eq!(full.image(i31), i13);
        assert_eq!(full.image(i13), i11);

        let (_, rc2) = exceptional_k3_restricted(OrbitTag::Unshaded).unwrap();
        assert_eq!(rc2.moved.len(), 3);
        assert!(rc2.moved.iter().all(|&t| figure.tile_color(t) == 1));
    }

    #[test]
    fn figure_three_cycles_for_embedded_rectangles() {
        // L-shaped k=4 union: certificates come from the first rectangle.
        let spec = FigureSpec::new(
            4,
            vec![
                RectPlacement::new(1, 1, Orientation::Horizontal),
                RectPlacement::new(1, 1, Orientation::Vertical),
            ],
        );
        let figure = Figure::build(&spec).unwrap();
        let certs = figure_three_cycles(&figure).unwrap();
        assert_eq!(certs.len(), 1);
        let gens = figure.generators();
        for (perm, word) in &certs {
            assert_eq!(perm.moved_points().len(), 3);
            assert_eq!(&word.evaluate(&gens).unwrap(), perm);
        }
        // Odd k: both classes covered.
        let spec5 = FigureSpec::new(
            5,
            vec![
                RectPlacement::new(1, 1, Orientation::Horizontal),
                RectPlacement::new(1, 1, Orientation::Vertical),
            ],
        );
        let figure5 = Figure::build(&spec5).unwrap();
        let certs5 = figure_three_cycles(&figure5).unwrap();
        assert_eq!(certs5.len(), 2);
        let colors: Vec<u8> = certs5
            .iter()
            .map(|(p, _)| figure5.tile_color(p.moved_points()[0]))
            .collect();
        assert_ne!(colors[0], colors[1]);
    }
}
