//! Triangle presentations over the Singer-coordinate plane.
//!
//! T0 lives over the point set: triples (i, i+s, i+(q+1)s) mod n with s
//! ranging over the trace-zero set Z. T1 types each triple over the three
//! alphabets A, B, C; a typed tile records its pattern (which alphabet
//! sits in which position) plus the underlying index triple. The basic
//! subset of Lemma 1 and the per-corner link graphs are built here too.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::BipartiteGraph;
use crate::plane::PlaneModel;
use crate::report::VerificationReport;

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("T0 has {got} triples, expected (q+1)(q^2+q+1) = {want}")]
    BadCardinality { got: usize, want: usize },
    #[error("generator exponent {0} is not coprime to {1}")]
    NotAGenerator(usize, usize),
    #[error("xi exponent {0} is not in the trace-zero set")]
    XiNotTraceZero(usize),
}

/// Which alphabet occupies positions 1,2,3 of a typed tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pattern {
    Abc,
    Bca,
    Cab,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::Abc, Pattern::Bca, Pattern::Cab];

    pub fn index(self) -> usize {
        match self {
            Pattern::Abc => 0,
            Pattern::Bca => 1,
            Pattern::Cab => 2,
        }
    }

    /// Pattern of the rotated tile: the alphabet cycle shifts left.
    pub fn rotated(self) -> Pattern {
        match self {
            Pattern::Abc => Pattern::Bca,
            Pattern::Bca => Pattern::Cab,
            Pattern::Cab => Pattern::Abc,
        }
    }

    pub fn alphabets(self) -> [Alphabet; 3] {
        match self {
            Pattern::Abc => [Alphabet::A, Alphabet::B, Alphabet::C],
            Pattern::Bca => [Alphabet::B, Alphabet::C, Alphabet::A],
            Pattern::Cab => [Alphabet::C, Alphabet::A, Alphabet::B],
        }
    }

    /// The pattern whose first position carries the given alphabet.
    pub fn starting_with(a: Alphabet) -> Pattern {
        match a {
            Alphabet::A => Pattern::Abc,
            Alphabet::B => Pattern::Bca,
            Alphabet::C => Pattern::Cab,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pattern::Abc => "ABC",
            Pattern::Bca => "BCA",
            Pattern::Cab => "CAB",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Alphabet {
    A,
    B,
    C,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Alphabet::A => "a",
            Alphabet::B => "b",
            Alphabet::C => "c",
        };
        f.write_str(s)
    }
}

/// One letter a_i / b_i / c_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub alphabet: Alphabet,
    pub index: usize,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.alphabet, self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypedTile {
    pub pattern: Pattern,
    pub triple: [usize; 3],
}

impl TypedTile {
    pub fn letter(&self, pos: usize) -> Letter {
        Letter {
            alphabet: self.pattern.alphabets()[pos],
            index: self.triple[pos],
        }
    }

    /// Cyclic rotation: (x1,x2,x3) -> (x2,x3,x1) with the matching
    /// pattern shift.
    pub fn rotated(&self) -> TypedTile {
        TypedTile {
            pattern: self.pattern.rotated(),
            triple: [self.triple[1], self.triple[2], self.triple[0]],
        }
    }
}

impl fmt::Display for TypedTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.letter(0), self.letter(1), self.letter(2))
    }
}

/// The untyped presentation T0: a sorted set of point triples.
#[derive(Debug, Clone)]
pub struct TrianglePresentation {
    q: u64,
    n: usize,
    z: Vec<usize>,
    triples: Vec<[usize; 3]>,
    index: BTreeMap<[usize; 3], usize>,
}

impl TrianglePresentation {
    pub fn build(plane: &PlaneModel) -> Result<TrianglePresentation, PresentationError> {
        let n = plane.n();
        let q = plane.q();
        let step = (q + 1) as usize;
        let mut triples = Vec::with_capacity(n * plane.trace_zero_set().len());
        for i in 0..n {
            for &s in plane.trace_zero_set() {
                triples.push([i, (i + s) % n, (i + step * s) % n]);
            }
        }
        triples.sort_unstable();
        triples.dedup();
        let want = (q + 1) as usize * n;
        if triples.len() != want {
            return Err(PresentationError::BadCardinality {
                got: triples.len(),
                want,
            });
        }
        let index = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        Ok(TrianglePresentation {
            q,
            n,
            z: plane.trace_zero_set().to_vec(),
            triples,
            index,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn contains(&self, t: &[usize; 3]) -> bool {
        self.index.contains_key(t)
    }

    pub fn position(&self, t: &[usize; 3]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Conditions (1)-(3) of a polygonal presentation, checked
    /// exhaustively against the plane's own incidence.
    pub fn verify_polygonal_axioms(&self, plane: &PlaneModel) -> VerificationReport {
        let mut rep = VerificationReport::new("polygonal axioms");

        // (1) rotation closure
        let missing_rotation = self
            .triples
            .iter()
            .find(|&&[a, b, c]| !self.contains(&[b, c, a]));
        rep.record(
            "(1) closed under rotation",
            missing_rotation.is_none(),
            missing_rotation
                .map(|t| format!("rotation of {t:?} missing"))
                .unwrap_or_default(),
        );

        // Extendable ordered pairs
        let mut extensions: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &[a, b, c] in &self.triples {
            extensions.entry((a, b)).or_default().push(c);
        }

        // (2) extendability <=> incidence of x2 with lambda_0(x1), both ways
        let mut witness = None;
        'outer: for x1 in 0..self.n {
            for x2 in 0..self.n {
                let extendable = extensions.contains_key(&(x1, x2));
                let incident = plane.incident(x2, x1).unwrap();
                if extendable != incident {
                    witness = Some((x1, x2, extendable));
                    break 'outer;
                }
            }
        }
        rep.record(
            "(2) extendable pairs match incidence",
            witness.is_none(),
            witness
                .map(|(x1, x2, ext)| {
                    if ext {
                        format!("tile ({x1},{x2},_) exists but {x2} not on lambda_0({x1})")
                    } else {
                        format!("{x2} on lambda_0({x1}) but no tile ({x1},{x2},_)")
                    }
                })
                .unwrap_or_default(),
        );

        // (3) at most one completion
        let ambiguous = extensions.iter().find(|(_, v)| v.len() > 1);
        rep.record(
            "(3) unique third vertex",
            ambiguous.is_none(),
            ambiguous
                .map(|((a, b), v)| format!("pair ({a},{b}) extends to {v:?}"))
                .unwrap_or_default(),
        );
        rep
    }

    pub fn export_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# T0 q={} n={} size={}", self.q, self.n, self.len());
        for &[a, b, c] in &self.triples {
            let _ = writeln!(out, "{a} {b} {c}");
        }
        out
    }
}

/// The typed presentation T1: three typed tiles per T0 triple, indexed
/// pattern-major so tile indices are reproducible across runs.
#[derive(Debug, Clone)]
pub struct TypedPresentation {
    t0: TrianglePresentation,
    /// starts[pattern][first_index] = sorted tile ids beginning with that letter.
    starts: Vec<Vec<Vec<usize>>>,
}

impl TypedPresentation {
    pub fn build(t0: TrianglePresentation) -> TypedPresentation {
        let n = t0.n();
        let mut starts = vec![vec![Vec::new(); n]; 3];
        let t0_len = t0.len();
        for pat in Pattern::ALL {
            for (i, t) in t0.triples().iter().enumerate() {
                starts[pat.index()][t[0]].push(pat.index() * t0_len + i);
            }
        }
        TypedPresentation { t0, starts }
    }

    pub fn t0(&self) -> &TrianglePresentation {
        &self.t0
    }

    pub fn q(&self) -> u64 {
        self.t0.q()
    }

    pub fn n(&self) -> usize {
        self.t0.n()
    }

    /// 3(q+1)(q^2+q+1).
    pub fn len(&self) -> usize {
        3 * self.t0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t0.is_empty()
    }

    pub fn tile(&self, id: usize) -> TypedTile {
        let t0_len = self.t0.len();
        TypedTile {
            pattern: Pattern::ALL[id / t0_len],
            triple: self.t0.triples()[id % t0_len],
        }
    }

    pub fn id(&self, tile: &TypedTile) -> Option<usize> {
        self.t0
            .position(&tile.triple)
            .map(|i| tile.pattern.index() * self.t0.len() + i)
    }

    pub fn contains(&self, tile: &TypedTile) -> bool {
        self.t0.contains(&tile.triple)
    }

    /// Id of the rotation of tile `id`; total as T0 is rotation-closed.
    pub fn rotate(&self, id: usize) -> usize {
        self.id(&self.tile(id).rotated())
            .expect("T0 is closed under rotation")
    }

    /// Tiles whose first letter is the given one; there are exactly q+1.
    pub fn starting_with(&self, letter: Letter) -> &[usize] {
        let pat = Pattern::starting_with(letter.alphabet);
        &self.starts[pat.index()][letter.index]
    }

    pub fn pattern_class(&self, pat: Pattern) -> std::ops::Range<usize> {
        let t0_len = self.t0.len();
        pat.index() * t0_len..(pat.index() + 1) * t0_len
    }

    /// Link graph at the selected corner: one edge per tile whose first
    /// two positions realize the corner. Corner XY selects the pattern
    /// starting with X.
    pub fn link_graph(&self, corner: Corner) -> BipartiteGraph {
        let n = self.n();
        let (pat, black, white) = match corner {
            Corner::Ab => (Pattern::Abc, Alphabet::A, Alphabet::B),
            Corner::Bc => (Pattern::Bca, Alphabet::B, Alphabet::C),
            Corner::Ca => (Pattern::Cab, Alphabet::C, Alphabet::A),
        };
        let mut g = BipartiteGraph::new(
            (0..n).map(|i| format!("{black}{i}")).collect(),
            (0..n).map(|i| format!("{white}{i}")).collect(),
        );
        for id in self.pattern_class(pat) {
            let t = self.tile(id);
            g.add_edge(t.triple[0], t.triple[1]);
        }
        g.finish();
        g
    }

    /// Rotation invariance, clause consistency, extendability degree.
    pub fn verify_typed_invariants(&self) -> VerificationReport {
        let mut rep = VerificationReport::new("typed presentation");
        rep.record(
            "cardinality 3(q+1)(q^2+q+1)",
            self.len() == 3 * (self.q() as usize + 1) * self.n(),
            format!("|T1| = {}", self.len()),
        );
        let rho_breaks = (0..self.len()).find(|&id| {
            let r = self.rotate(id);
            let r3 = self.rotate(self.rotate(r));
            r3 != id || !self.contains(&self.tile(id).rotated())
        });
        rep.record(
            "rho is a total bijection with rho^3 = id",
            rho_breaks.is_none(),
            rho_breaks
                .map(|id| format!("tile {}", self.tile(id)))
                .unwrap_or_default(),
        );
        let q1 = self.q() as usize + 1;
        let mut bad_degree = None;
        'deg: for alphabet in [Alphabet::A, Alphabet::B, Alphabet::C] {
            for index in 0..self.n() {
                let l = Letter { alphabet, index };
                if self.starting_with(l).len() != q1 {
                    bad_degree = Some(l);
                    break 'deg;
                }
            }
        }
        rep.record(
            format!("every letter starts exactly q+1 = {q1} tiles"),
            bad_degree.is_none(),
            bad_degree.map(|l| format!("letter {l}")).unwrap_or_default(),
        );
        rep
    }

    pub fn export_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# T1 q={} size={}", self.q(), self.len());
        for id in 0..self.len() {
            let t = self.tile(id);
            let _ = writeln!(
                out,
                "{} {} {} {}",
                t.pattern, t.triple[0], t.triple[1], t.triple[2]
            );
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    Ab,
    Bc,
    Ca,
}

/// The Lemma 1 basic subset: n pattern-ABC tiles in which every letter of
/// every alphabet occurs exactly once.
#[derive(Debug, Clone)]
pub struct BasicSubset {
    x_exp: usize,
    xi_exp: usize,
    /// T1 tile ids, in order of the generating exponent i.
    tiles: Vec<usize>,
}

impl BasicSubset {
    /// S = {(a_{ix}, b_{ix+s}, c_{ix+(q+1)s}) : i in Z_n} with x = x_exp
    /// and s = xi_exp. Defaults used by the pipeline: x_exp = 1,
    /// s = min(Z).
    pub fn build(
        t1: &TypedPresentation,
        x_exp: usize,
        xi_exp: usize,
    ) -> Result<BasicSubset, PresentationError> {
        let n = t1.n();
        if num_integer::gcd(x_exp, n) != 1 {
            return Err(PresentationError::NotAGenerator(x_exp, n));
        }
        if !t1.t0().z.contains(&xi_exp) {
            return Err(PresentationError::XiNotTraceZero(xi_exp));
        }
        let step = t1.q() as usize + 1;
        let mut tiles = Vec::with_capacity(n);
        for i in 0..n {
            let a = i * x_exp % n;
            let tile = TypedTile {
                pattern: Pattern::Abc,
                triple: [a, (a + xi_exp) % n, (a + step * xi_exp) % n],
            };
            tiles.push(t1.id(&tile).expect("basic subset tiles lie in T1"));
        }
        let s = BasicSubset { x_exp, xi_exp, tiles };
        debug_assert!(s.verify_balanced(t1).passed());
        Ok(s)
    }

    pub fn with_defaults(t1: &TypedPresentation) -> Result<BasicSubset, PresentationError> {
        let s = *t1.t0().z.first().expect("Z is nonempty");
        BasicSubset::build(t1, 1, s)
    }

    pub fn x_exp(&self) -> usize {
        self.x_exp
    }

    pub fn xi_exp(&self) -> usize {
        self.xi_exp
    }

    pub fn tile_ids(&self) -> &[usize] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Tile ids of rho^count(S); S^b = rho(S), S^c = rho^2(S).
    pub fn rotated_ids(&self, t1: &TypedPresentation, count: usize) -> Vec<usize> {
        self.tiles
            .iter()
            .map(|&id| {
                let mut r = id;
                for _ in 0..count % 3 {
                    r = t1.rotate(r);
                }
                r
            })
            .collect()
    }

    /// The Lemma 1 certificate: membership in T1 and each position's
    /// index multiset equal to {0,...,n-1}.
    pub fn verify_balanced(&self, t1: &TypedPresentation) -> VerificationReport {
        let mut rep = VerificationReport::new("basic subset");
        let n = t1.n();
        rep.record(
            "size q^2+q+1",
            self.tiles.len() == n,
            format!("|S| = {}", self.tiles.len()),
        );
        for pos in 0..3 {
            let mut seen = vec![0usize; n];
            for &id in &self.tiles {
                seen[t1.tile(id).triple[pos]] += 1;
            }
            let repeated = seen.iter().position(|&c| c != 1);
            rep.record(
                format!("position {} letters each occur once", pos + 1),
                repeated.is_none(),
                repeated
                    .map(|i| format!("index {i} occurs {} times", seen[i]))
                    .unwrap_or_default(),
            );
        }
        let all_abc = self
            .tiles
            .iter()
            .all(|&id| t1.tile(id).pattern == Pattern::Abc);
        rep.record("all tiles have pattern ABC", all_abc, "pattern mix".to_string());
        rep
    }

    pub fn export_text(&self, t1: &TypedPresentation) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# S x_exp={} xi_exp={} size={}",
            self.x_exp,
            self.xi_exp,
            self.tiles.len()
        );
        for &id in &self.tiles {
            let t = t1.tile(id);
            let _ = writeln!(
                out,
                "{} {} {} {}",
                t.pattern, t.triple[0], t.triple[1], t.triple[2]
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::plane::PairingKind;

    fn t0(q_p: u64, pairing: PairingKind) -> (PlaneModel, TrianglePresentation) {
        let field = Field::new(q_p, 3, None).unwrap();
        let plane = PlaneModel::build(&field, pairing).unwrap();
        let t0 = TrianglePresentation::build(&plane).unwrap();
        (plane, t0)
    }

    #[test]
    fn t0_q2_has_21_triples() {
        let (_, t) = t0(2, PairingKind::TrXInvY);
        assert_eq!(t.len(), 21);
        assert!(t.contains(&[0, 1, 3]));
        assert!(t.contains(&[1, 3, 0])); // rotation, s' = 2
    }

    #[test]
    fn polygonal_axioms_pass_default_pairing() {
        for p in [2u64, 3] {
            let (plane, t) = t0(p, PairingKind::TrXInvY);
            let rep = t.verify_polygonal_axioms(&plane);
            assert!(rep.passed(), "{:?}", rep.first_failure());
        }
    }

    #[test]
    fn polygonal_axioms_fail_literal_pairing() {
        let (plane, t) = t0(2, PairingKind::TrXY);
        let rep = t.verify_polygonal_axioms(&plane);
        assert!(!rep.passed());
        assert!(rep
            .first_failure()
            .unwrap()
            .name
            .contains("(2)"));
    }

    #[test]
    fn dropping_a_triple_breaks_rotation_closure() {
        let (plane, mut t) = t0(2, PairingKind::TrXInvY);
        let victim = t.triples[0];
        t.triples.retain(|&x| x != victim);
        t.index.remove(&victim);
        let rep = t.verify_polygonal_axioms(&plane);
        let first = rep.first_failure().unwrap();
        assert!(first.name.contains("(1)"));
    }

    #[test]
    fn t1_q2_counts() {
        let (_, t) = t0(2, PairingKind::TrXInvY);
        let t1 = TypedPresentation::build(t);
        assert_eq!(t1.len(), 63);
        for pat in Pattern::ALL {
            assert_eq!(t1.pattern_class(pat).len(), 21);
        }
        assert!(t1.verify_typed_invariants().passed());
    }

    #[test]
    fn rotation_of_typed_tile_present() {
        let (_, t) = t0(2, PairingKind::TrXInvY);
        let t1 = TypedPresentation::build(t);
        for id in 0..t1.len() {
            let r = t1.tile(id).rotated();
            assert!(t1.contains(&r), "rotation of {} missing", t1.tile(id));
            // clause consistency: same triple under all three patterns
            let tile = t1.tile(id);
            for pat in Pattern::ALL {
                assert!(t1.contains(&TypedTile {
                    pattern: pat,
                    triple: tile.triple
                }));
            }
        }
    }

    #[test]
    fn basic_subset_q2() {
        let (_, t) = t0(2, PairingKind::TrXInvY);
        let t1 = TypedPresentation::build(t);
        let s = BasicSubset::with_defaults(&t1).unwrap();
        assert_eq!(s.len(), 7);
        assert_eq!(s.xi_exp(), 1);
        // S = {(a_i, b_{i+1}, c_{i+3})}
        for (i, &id) in s.tile_ids().iter().enumerate() {
            assert_eq!(t1.tile(id).triple, [i, (i + 1) % 7, (i + 3) % 7]);
        }
        assert!(s.verify_balanced(&t1).passed());
    }

    #[test]
    fn basic_subset_rejects_non_generator() {
        let (_, t) = t0(2, PairingKind::TrXInvY);
        let t1 = TypedPresentation::build(t);
        assert!(matches!(
            BasicSubset::build(&t1, 7, 1),
            Err(PresentationError::NotAGenerator(7, 7))
        ));
        assert!(matches!(
            BasicSubset::build(&t1, 1, 3),
            Err(PresentationError::XiNotTraceZero(3))
        ));
    }

    #[test]
    fn link_graphs_q2() {
        let (_, t) = t0(2, PairingKind::TrXInvY);
        let t1 = TypedPresentation::build(t);
        for corner in [Corner::Ab, Corner::Bc, Corner::Ca] {
            let g = t1.link_graph(corner);
            assert_eq!(g.vertex_count(), 14);
            assert_eq!(g.edge_count(), 21);
            assert!(g.duplicate_edges().is_empty());
            assert!(g.verify_generalized_mgon(3, 2).passed());
        }
    }
}
