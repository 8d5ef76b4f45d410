//! Orbits, double transitivity, and a deterministic base-and-strong-generating-set
//! (BSGS) giving exact group order, membership testing, and constructive word
//! sifting.
//!
//! The Schreier–Sims construction is deterministic: base points are chosen
//! greedily as the smallest moved point at each level, transversals are built
//! by a shortest-word search with fixed tie-breaking, and Schreier generators
//! are deduplicated by image array. Orders are arbitrary-precision.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::perm::Permutation;
use crate::word::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("at least one generator is required")]
    EmptyGenerators,
    #[error("generators have mismatched degrees")]
    DegreeMismatch,
    #[error("the point set is not invariant under the generators")]
    OrbitNotInvariant,
    #[error("this BSGS was built without word tracking")]
    WordsNotTracked,
    #[error("point {0} is outside the expected orbit")]
    PointNotInOrbit(usize),
}

/// Disjoint orbits covering `{0, …, n−1}`, each sorted, ordered by minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    orbits: Vec<Vec<usize>>,
    membership: Vec<usize>,
}

impl OrbitPartition {
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_index_of(&self, point: usize) -> usize {
        self.membership[point]
    }

    pub fn orbit_of(&self, point: usize) -> &[usize] {
        &self.orbits[self.membership[point]]
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }
}

/// Connected components of the action graph. An empty generator list yields
/// single-point orbits.
pub fn orbits(degree: usize, gens: &[Permutation]) -> OrbitPartition {
    let mut membership = vec![usize::MAX; degree];
    let mut orbits = Vec::new();
    for start in 0..degree {
        if membership[start] != usize::MAX {
            continue;
        }
        let idx = orbits.len();
        let mut orbit = vec![start];
        membership[start] = idx;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in gens {
                let y = g.image(x);
                if membership[y] == usize::MAX {
                    membership[y] = idx;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    OrbitPartition { orbits, membership }
}

/// Sign of each generator restricted to each orbit: `result[gen][orbit]`.
pub fn parity_signature(
    gens: &[Permutation],
    partition: &OrbitPartition,
) -> Result<Vec<Vec<i8>>, EngineError> {
    gens.iter()
        .map(|g| {
            partition
                .orbits()
                .iter()
                .map(|o| g.sign_on(o).map_err(|_| EngineError::OrbitNotInvariant))
                .collect()
        })
        .collect()
}

fn check_orbit_invariant(gens: &[Permutation], orbit: &[usize]) -> Result<(), EngineError> {
    let set: HashSet<usize> = orbit.iter().copied().collect();
    for g in gens {
        if orbit.iter().any(|&x| !set.contains(&g.image(x))) {
            return Err(EngineError::OrbitNotInvariant);
        }
    }
    Ok(())
}

/// Breadth-first transversal of the orbit of `start`: for each reachable
/// point `q`, a permutation mapping `start` to `q`.
fn point_transversal(
    degree: usize,
    gens: &[Permutation],
    start: usize,
) -> Vec<Option<Permutation>> {
    let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
    transversal[start] = Some(Permutation::identity(degree));
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for g in gens {
            let y = g.image(x);
            if transversal[y].is_none() {
                let u = g * transversal[x].as_ref().unwrap();
                transversal[y] = Some(u);
                queue.push(y);
            }
        }
    }
    transversal
}

/// Schreier generators of the stabilizer of `start`, deduplicated by image
/// array, identity omitted.
fn schreier_stabilizer_gens(
    gens: &[Permutation],
    start: usize,
    transversal: &[Option<Permutation>],
) -> Vec<Permutation> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for u in transversal.iter().flatten() {
        let q = u.image(start);
        debug_assert_eq!(q, u.image(start));
        for g in gens {
            let target = g.image(q);
            let u_target = transversal[target].as_ref().expect("orbit closed");
            let s = &u_target.inverse() * &(g * u);
            if s.is_identity() {
                continue;
            }
            if seen.insert(s.images().to_vec()) {
                out.push(s);
            }
        }
    }
    out
}

/// True iff the generated group is transitive on `orbit` and the stabilizer
/// of its least point (generated by Schreier generators) is transitive on the
/// rest.
pub fn is_doubly_transitive_on(
    gens: &[Permutation],
    orbit: &[usize],
) -> Result<bool, EngineError> {
    if gens.is_empty() {
        return Err(EngineError::EmptyGenerators);
    }
    check_orbit_invariant(gens, orbit)?;
    if orbit.len() <= 1 {
        return Ok(true);
    }
    let degree = gens[0].degree();
    let x = orbit[0];
    let transversal = point_transversal(degree, gens, x);
    if orbit.iter().any(|&p| transversal[p].is_none()) {
        return Ok(false);
    }
    let stab = schreier_stabilizer_gens(gens, x, &transversal);
    let sub = orbits(degree, &stab);
    let rest = sub.orbit_of(orbit[1]);
    Ok(orbit[1..].iter().all(|p| rest.binary_search(p).is_ok()))
}

/// A group element mapping `a → c` and `b → d` inside a doubly transitive
/// orbit (`a ≠ b`, `c ≠ d`).
pub fn double_transitivity_witness(
    gens: &[Permutation],
    orbit: &[usize],
    (a, b): (usize, usize),
    (c, d): (usize, usize),
) -> Result<Permutation, EngineError> {
    if gens.is_empty() {
        return Err(EngineError::EmptyGenerators);
    }
    check_orbit_invariant(gens, orbit)?;
    for p in [a, b, c, d] {
        if orbit.binary_search(&p).is_err() {
            return Err(EngineError::PointNotInOrbit(p));
        }
    }
    let degree = gens[0].degree();
    let x = orbit[0];
    let transversal = point_transversal(degree, gens, x);
    let t_a = transversal[a].as_ref().ok_or(EngineError::PointNotInOrbit(a))?;
    let t_c = transversal[c].as_ref().ok_or(EngineError::PointNotInOrbit(c))?;
    // Move the pair problem into the stabilizer of x.
    let b0 = t_a.inverse().image(b);
    let d0 = t_c.inverse().image(d);
    let stab = schreier_stabilizer_gens(gens, x, &transversal);
    let stab_t = point_transversal(degree, &stab, b0);
    let w = stab_t[d0].as_ref().ok_or(EngineError::PointNotInOrbit(d0))?;
    // t_c ∘ w ∘ t_a⁻¹ sends a → c and b → d.
    Ok(&(t_c * w) * &t_a.inverse())
}

struct StrongGen {
    id: u32,
    pows: [Permutation; 3], // g, g^2, g^3
    word: Option<Word>,
}

impl StrongGen {
    fn perm(&self) -> &Permutation {
        &self.pows[0]
    }
}

struct Entry {
    perm: Permutation,
    word: Option<Word>,
}

struct Level {
    point: usize,
    own: Vec<StrongGen>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Entry>>,
    processed: HashSet<(usize, u32)>,
    schreier_seen: HashSet<Vec<usize>>,
    dirty: bool,
}

/// Outcome of sifting a permutation through the stabilizer chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SiftOutcome {
    /// Member, with a word over the original generators evaluating to it.
    Member(Word),
    /// Not a member; sifting stalled at this base level with this residue.
    NonMember { level: usize, residue: Permutation },
}

/// Base and strong generating set for the group generated by the input
/// permutations. Construction is single-threaded; a finished value is
/// immutable and may be queried concurrently.
pub struct Bsgs {
    degree: usize,
    gens: Vec<Permutation>,
    track_words: bool,
    base: Vec<usize>,
    levels: Vec<Level>,
}

/// Deterministic Schreier–Sims with word tracking (suitable for the solver
/// and for groups of modest degree).
pub fn schreier_sims(gens: &[Permutation]) -> Result<Bsgs, EngineError> {
    Bsgs::build(gens, &[], true)
}

/// Word-free variant: membership and exact order only, with less memory.
pub fn schreier_sims_order_only(gens: &[Permutation]) -> Result<Bsgs, EngineError> {
    Bsgs::build(gens, &[], false)
}

impl Bsgs {
    /// Builds the chain. `seeds` are known members of the generated group
    /// with known words over `gens`; they are installed as extra strong
    /// generators so that sifted words stay short. Seeds never change the
    /// group itself.
    pub fn build(
        gens: &[Permutation],
        seeds: &[(Permutation, Word)],
        track_words: bool,
    ) -> Result<Bsgs, EngineError> {
        if gens.is_empty() {
            return Err(EngineError::EmptyGenerators);
        }
        let degree = gens[0].degree();
        if gens.iter().any(|g| g.degree() != degree)
            || seeds.iter().any(|(p, _)| p.degree() != degree)
        {
            return Err(EngineError::DegreeMismatch);
        }
        let mut bsgs = Bsgs {
            degree,
            gens: gens.to_vec(),
            track_words,
            base: Vec::new(),
            levels: Vec::new(),
        };
        let mut next_id = 0u32;
        for (i, g) in gens.iter().enumerate() {
            let word = track_words.then(|| Word::letter(i, 1));
            bsgs.assign(g.clone(), word, &mut next_id);
        }
        for (p, w) in seeds {
            let word = track_words.then(|| w.clone());
            bsgs.assign(p.clone(), word, &mut next_id);
        }
        if bsgs.levels.is_empty() {
            return Ok(bsgs); // trivial group
        }
        let mut level = bsgs.levels.len() - 1;
        loop {
            bsgs.refresh(level);
            match bsgs.find_violation(level) {
                Some((residue, word)) => {
                    let stall = bsgs.assign(residue, word, &mut next_id);
                    for j in 0..=stall.min(bsgs.levels.len() - 1) {
                        bsgs.levels[j].dirty = true;
                    }
                    level = stall.min(bsgs.levels.len() - 1);
                }
                None => {
                    if level == 0 {
                        break;
                    }
                    level -= 1;
                }
            }
        }
        Ok(bsgs)
    }

    /// Installs a strong generator at the deepest level whose base prefix it
    /// fixes, extending the base when it fixes every current base point.
    fn assign(&mut self, p: Permutation, word: Option<Word>, next_id: &mut u32) -> usize {
        if p.is_identity() {
            return 0;
        }
        let mut level = 0;
        while level < self.base.len() && p.image(self.base[level]) == self.base[level] {
            level += 1;
        }
        if level == self.levels.len() {
            let point = *p.moved_points().first().expect("non-identity");
            self.base.push(point);
            self.levels.push(Level {
                point,
                own: Vec::new(),
                orbit: Vec::new(),
                transversal: Vec::new(),
                processed: HashSet::new(),
                schreier_seen: HashSet::new(),
                dirty: true,
            });
        }
        let p2 = &p * &p;
        let p3 = &p2 * &p;
        self.levels[level].own.push(StrongGen {
            id: *next_id,
            pows: [p, p2, p3],
            word,
        });
        *next_id += 1;
        self.levels[level].dirty = true;
        level
    }

    /// Recomputes the level's orbit and transversal when its effective
    /// generator set changed, via a shortest-word search (unit edge cost when
    /// words are untracked). Clears Schreier bookkeeping only if some
    /// representative permutation actually changed.
    fn refresh(&mut self, level: usize) {
        if !self.levels[level].dirty {
            return;
        }
        let point = self.levels[level].point;
        let degree = self.degree;
        struct Edge {
            perm: Permutation,
            word: Option<Word>,
            cost: u64,
        }
        let mut edges = Vec::new();
        for lvl in &self.levels[level..] {
            for sg in &lvl.own {
                for e in 1..=3usize {
                    let word = sg.word.as_ref().map(|w| w.pow(e));
                    let cost = word.as_ref().map_or(1, |w| w.len().max(1) as u64);
                    edges.push(Edge {
                        perm: sg.pows[e - 1].clone(),
                        word,
                        cost,
                    });
                }
            }
        }
        let mut transversal: Vec<Option<Entry>> = (0..degree).map(|_| None).collect();
        transversal[point] = Some(Entry {
            perm: Permutation::identity(degree),
            word: self.track_words.then(Word::empty),
        });
        let mut best: Vec<u64> = vec![u64::MAX; degree];
        best[point] = 0;
        let mut orbit = Vec::new();
        let mut settled = vec![false; degree];
        let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::new();
        heap.push(Reverse((0, point)));
        while let Some(Reverse((cost, q))) = heap.pop() {
            if settled[q] || cost > best[q] {
                continue;
            }
            settled[q] = true;
            orbit.push(q);
            for edge in &edges {
                let r = edge.perm.image(q);
                let cand = cost.saturating_add(edge.cost);
                if cand < best[r] {
                    best[r] = cand;
                    let uq = transversal[q].as_ref().expect("settled");
                    let perm = &edge.perm * &uq.perm;
                    let word = self
                        .track_words
                        .then(|| edge.word.as_ref().unwrap().concat(uq.word.as_ref().unwrap()));
                    transversal[r] = Some(Entry { perm, word });
                    heap.push(Reverse((cand, r)));
                }
            }
        }
        let changed = {
            let old = &self.levels[level];
            old.orbit != orbit
                || orbit.iter().any(|&q| {
                    let old_perm = old.transversal.get(q).and_then(|e| e.as_ref());
                    old_perm.map(|e| &e.perm) != transversal[q].as_ref().map(|e| &e.perm)
                })
        };
        let lvl = &mut self.levels[level];
        lvl.orbit = orbit;
        lvl.transversal = transversal;
        if changed {
            lvl.processed.clear();
            lvl.schreier_seen.clear();
        }
        lvl.dirty = false;
    }

    /// Scans the level's Schreier generators for one that fails to sift
    /// through the deeper chain; returns the residue to install.
    fn find_violation(&mut self, level: usize) -> Option<(Permutation, Option<Word>)> {
        let orbit = self.levels[level].orbit.clone();
        let gen_keys: Vec<(usize, usize, u32)> = self.levels[level..]
            .iter()
            .enumerate()
            .flat_map(|(off, lvl)| {
                lvl.own
                    .iter()
                    .enumerate()
                    .map(move |(gi, sg)| (level + off, gi, sg.id))
            })
            .collect();
        for &q in &orbit {
            for &(li, gi, id) in &gen_keys {
                if self.levels[level].processed.contains(&(q, id)) {
                    continue;
                }
                self.levels[level].processed.insert((q, id));
                let (s_perm, s_word) = {
                    let sg = &self.levels[li].own[gi];
                    (sg.perm().clone(), sg.word.clone())
                };
                let target = s_perm.image(q);
                let (schreier, word) = {
                    let lvl = &self.levels[level];
                    let uq = lvl.transversal[q].as_ref().expect("orbit point");
                    let ut = lvl.transversal[target].as_ref().expect("orbit closed");
                    let schreier = &ut.perm.inverse() * &(&s_perm * &uq.perm);
                    let word = self.track_words.then(|| {
                        ut.word
                            .as_ref()
                            .unwrap()
                            .inverse()
                            .concat(s_word.as_ref().unwrap())
                            .concat(uq.word.as_ref().unwrap())
                    });
                    (schreier, word)
                };
                if schreier.is_identity() {
                    continue;
                }
                if !self.levels[level]
                    .schreier_seen
                    .insert(schreier.images().to_vec())
                {
                    continue;
                }
                if let Some((residue, rword)) = self.sift_residue(level + 1, schreier, word) {
                    return Some((residue, rword));
                }
            }
        }
        None
    }

    /// Sifts starting at `from`; `None` means the element reduced to the
    /// identity, otherwise the non-trivial residue (fixing every base point
    /// above the level where it stalled) is returned.
    fn sift_residue(
        &self,
        from: usize,
        mut p: Permutation,
        mut word: Option<Word>,
    ) -> Option<(Permutation, Option<Word>)> {
        for lvl in &self.levels[from.min(self.levels.len())..] {
            if p.is_identity() {
                return None;
            }
            let q = p.image(lvl.point);
            if q == lvl.point {
                continue;
            }
            match lvl.transversal.get(q).and_then(|e| e.as_ref()) {
                Some(entry) => {
                    p = &entry.perm.inverse() * &p;
                    if self.track_words {
                        word = Some(
                            entry
                                .word
                                .as_ref()
                                .unwrap()
                                .inverse()
                                .concat(word.as_ref().unwrap()),
                        );
                    }
                }
                None => return Some((p, word)),
            }
        }
        if p.is_identity() {
            None
        } else {
            Some((p, word))
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// Exact group order: the product of the transversal sizes.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let mut cur = p.clone();
        for lvl in &self.levels {
            if cur.is_identity() {
                return true;
            }
            let q = cur.image(lvl.point);
            if q == lvl.point {
                continue;
            }
            match lvl.transversal.get(q).and_then(|e| e.as_ref()) {
                Some(entry) => cur = &entry.perm.inverse() * &cur,
                None => return false,
            }
        }
        cur.is_identity()
    }

    /// Factors a member into a word over the original generators; for a
    /// non-member, reports the first base level where sifting fails. No
    /// length bound is promised.
    pub fn sift_with_word(&self, p: &Permutation) -> Result<SiftOutcome, EngineError> {
        if !self.track_words {
            return Err(EngineError::WordsNotTracked);
        }
        if p.degree() != self.degree {
            return Err(EngineError::DegreeMismatch);
        }
        let mut cur = p.clone();
        let mut parts: Vec<Word> = Vec::new();
        for (i, lvl) in self.levels.iter().enumerate() {
            if cur.is_identity() {
                break;
            }
            let q = cur.image(lvl.point);
            if q == lvl.point {
                continue;
            }
            match lvl.transversal.get(q).and_then(|e| e.as_ref()) {
                Some(entry) => {
                    parts.push(entry.word.clone().unwrap());
                    cur = &entry.perm.inverse() * &cur;
                }
                None => {
                    return Ok(SiftOutcome::NonMember {
                        level: i,
                        residue: cur,
                    })
                }
            }
        }
        if cur.is_identity() {
            let word = parts
                .iter()
                .fold(Word::empty(), |acc, w| acc.concat(w));
            Ok(SiftOutcome::Member(word))
        } else {
            Ok(SiftOutcome::NonMember {
                level: self.levels.len(),
                residue: cur,
            })
        }
    }

    /// Every group element, as transversal products. Only sensible for small
    /// orders.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * lvl.orbit.len());
            for &q in &lvl.orbit {
                let u = &lvl.transversal[q].as_ref().unwrap().perm;
                for a in &acc {
                    next.push(u * a);
                }
            }
            acc = next;
        }
        acc
    }

    /// Strong generators with their words (words `None` when untracked).
    pub fn strong_generators(&self) -> Vec<(&Permutation, Option<&Word>)> {
        self.levels
            .iter()
            .flat_map(|l| l.own.iter().map(|sg| (sg.perm(), sg.word.as_ref())))
            .collect()
    }

    /// Transversal labels at one level: `(orbit point, representative, word)`.
    pub fn transversal(&self, level: usize) -> Vec<(usize, &Permutation, Option<&Word>)> {
        self.levels[level]
            .orbit
            .iter()
            .map(|&q| {
                let e = self.levels[level].transversal[q].as_ref().unwrap();
                (q, &e.perm, e.word.as_ref())
            })
            .collect()
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figure::rectangle;
    use num_traits::ToPrimitive;
    use std::collections::HashSet as Set;

    /// Independent oracle: full Cayley-graph breadth-first enumeration.
    fn cayley_elements(gens: &[Permutation]) -> Set<Vec<usize>> {
        let degree = gens[0].degree();
        let id = Permutation::identity(degree);
        let mut seen: Set<Vec<usize>> = Set::new();
        seen.insert(id.images().to_vec());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for g in gens {
                    let q = g * p;
                    if seen.insert(q.images().to_vec()) {
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    #[test]
    fn orbit_partition_examples() {
        let f = rectangle(3).unwrap();
        let part = orbits(f.n(), &f.generators());
        assert_eq!(part.sizes(), vec![6, 6]);
        let (even, odd) = f.checkerboard_orbit_sets();
        assert_eq!(part.orbits()[0], even);
        assert_eq!(part.orbits()[1], odd);

        let f2 = rectangle(2).unwrap();
        assert_eq!(orbits(f2.n(), &f2.generators()).sizes(), vec![6]);

        let ids = [Permutation::identity(5)];
        assert_eq!(orbits(5, &ids).sizes(), vec![1, 1, 1, 1, 1]);
        assert_eq!(orbits(3, &[]).sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn double_transitivity_small_cases() {
        let f = rectangle(2).unwrap();
        let gens = f.generators();
        let orbit: Vec<usize> = (0..6).collect();
        assert!(is_doubly_transitive_on(&gens, &orbit).unwrap());

        let f3 = rectangle(3).unwrap();
        let gens3 = f3.generators();
        let part = orbits(12, &gens3);
        for o in part.orbits() {
            assert!(is_doubly_transitive_on(&gens3, o).unwrap());
        }

        let four_cycle = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let all: Vec<usize> = (0..4).collect();
        assert!(!is_doubly_transitive_on(&[four_cycle], &all).unwrap());
    }

    #[test]
    fn double_transitivity_rejects_non_invariant_sets() {
        let f = rectangle(3).unwrap();
        let gens = f.generators();
        let bad: Vec<usize> = (0..5).collect();
        assert_eq!(
            is_doubly_transitive_on(&gens, &bad),
            Err(EngineError::OrbitNotInvariant)
        );
    }

    #[test]
    fn witness_maps_pairs_as_requested() {
        let f = rectangle(3).unwrap();
        let gens = f.generators();
        let part = orbits(12, &gens);
        let o = part.orbits()[0].clone();
        let w = double_transitivity_witness(&gens, &o, (o[0], o[3]), (o[4], o[1])).unwrap();
        assert_eq!(w.image(o[0]), o[4]);
        assert_eq!(w.image(o[3]), o[1]);
    }

    #[test]
    fn bsgs_orders_for_small_figures() {
        let f2 = rectangle(2).unwrap();
        let b2 = schreier_sims(&f2.generators()).unwrap();
        assert_eq!(b2.order().to_u64(), Some(120));

        let f3 = rectangle(3).unwrap();
        let b3 = schreier_sims(&f3.generators()).unwrap();
        assert_eq!(b3.order().to_u64(), Some(720));
    }

    #[test]
    fn bsgs_matches_cayley_enumeration() {
        // <sigma_L> alone has order 4.
        let f = rectangle(2).unwrap();
        let gens = f.generators();
        let just_left = [gens[0].clone()];
        let b = schreier_sims(&just_left).unwrap();
        assert_eq!(b.order().to_u64(), Some(4));
        let cayley = cayley_elements(&just_left);
        assert_eq!(cayley.len(), 4);

        let b = schreier_sims(&gens).unwrap();
        let cayley = cayley_elements(&gens);
        assert_eq!(BigUint::from(cayley.len()), b.order());
        // membership agreement both ways
        for imgs in cayley.iter().take(200) {
            let p = Permutation::from_images(imgs.clone()).unwrap();
            assert!(b.contains(&p));
        }
        let transposition = Permutation::from_cycles(6, &[vec![0, 1]]).unwrap();
        assert_eq!(
            b.contains(&transposition),
            cayley.contains(transposition.images())
        );
    }

    #[test]
    fn elements_enumeration_matches_order() {
        let f = rectangle(2).unwrap();
        let b = schreier_sims(&f.generators()).unwrap();
        let elems = b.elements();
        assert_eq!(elems.len(), 120);
        let distinct: Set<Vec<usize>> = elems.iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(distinct.len(), 120);
        assert_eq!(distinct, cayley_elements(&f.generators()));
    }

    #[test]
    fn strong_generators_sift_to_identity_with_words() {
        for k in [2usize, 3] {
            let f = rectangle(k).unwrap();
            let gens = f.generators();
            let b = schreier_sims(&gens).unwrap();
            for (perm, word) in b.strong_generators() {
                match b.sift_with_word(perm).unwrap() {
                    SiftOutcome::Member(w) => {
                        assert_eq!(&w.evaluate(&gens).unwrap(), perm);
                    }
                    SiftOutcome::NonMember { .. } => panic!("strong gen must sift"),
                }
                let w = word.expect("tracked");
                assert_eq!(&w.evaluate(&gens).unwrap(), perm);
            }
            for (level, &point) in b.base().iter().enumerate() {
                for (q, rep, _) in b.transversal(level) {
                    assert_eq!(rep.image(point), q);
                }
            }
        }
    }

    #[test]
    fn sift_examples() {
        let f = rectangle(2).unwrap();
        let gens = f.generators();
        let b = schreier_sims(&gens).unwrap();
        match b.sift_with_word(&Permutation::identity(6)).unwrap() {
            SiftOutcome::Member(w) => assert!(w.is_empty()),
            _ => panic!("identity is a member"),
        }
        let r2 = gens[1].power(2);
        match b.sift_with_word(&r2).unwrap() {
            SiftOutcome::Member(w) => assert_eq!(w.evaluate(&gens).unwrap(), r2),
            _ => panic!("sigma_R^2 is a member"),
        }
        let transposition = Permutation::from_cycles(6, &[vec![0, 1]]).unwrap();
        match b.sift_with_word(&transposition).unwrap() {
            SiftOutcome::NonMember { level, .. } => assert!(level <= b.level_count()),
            _ => panic!("transposition of two tiles is not in PGL2(5)"),
        }
    }

    #[test]
    fn random_products_are_members() {
        use rand::{Rng, SeedableRng};
        let f = rectangle(3).unwrap();
        let gens = f.generators();
        let b = schreier_sims(&gens).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let mut p = Permutation::identity(12);
            let mut w = Word::empty();
            for _ in 0..30 {
                let g = rng.gen_range(0..gens.len());
                let e = rng.gen_range(1..=3);
                p = &gens[g].power(e) * &p;
                w = Word::letter(g, e).concat(&w);
            }
            assert!(b.contains(&p));
            match b.sift_with_word(&p).unwrap() {
                SiftOutcome::Member(sw) => assert_eq!(sw.evaluate(&gens).unwrap(), p),
                _ => panic!("product of generators must be a member"),
            }
        }
    }

    #[test]
    fn parity_signature_examples() {
        let f3 = rectangle(3).unwrap();
        let part3 = orbits(12, &f3.generators());
        assert_eq!(
            parity_signature(&f3.generators(), &part3).unwrap(),
            vec![vec![-1, -1], vec![-1, -1]]
        );
        for g in f3.generators() {
            assert_eq!(g.sign(), 1); // odd on each orbit, even overall
        }

        let f7 = rectangle(7).unwrap();
        let part7 = orbits(f7.n(), &f7.generators());
        assert_eq!(
            parity_signature(&f7.generators(), &part7).unwrap(),
            vec![vec![1, 1], vec![1, 1]]
        );

        let f4 = rectangle(4).unwrap();
        let part4 = orbits(f4.n(), &f4.generators());
        assert_eq!(
            parity_signature(&f4.generators(), &part4).unwrap(),
            vec![vec![1], vec![1]]
        );
    }

    #[test]
    fn order_only_build_rejects_word_queries() {
        let f = rectangle(2).unwrap();
        let b = schreier_sims_order_only(&f.generators()).unwrap();
        assert_eq!(b.order().to_u64(), Some(120));
        assert_eq!(
            b.sift_with_word(&Permutation::identity(6)),
            Err(EngineError::WordsNotTracked)
        );
    }
}
