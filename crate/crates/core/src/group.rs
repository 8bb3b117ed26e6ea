//! Exact arithmetic in `PGL(2, Z[i]) ⋊ <ρ>`, where `ρ` acts by complex conjugation.
//!
//! Elements are stored in a canonical form: the matrix is divided by its content
//! (the gcd of its four entries) and then scaled by the unique unit that makes the
//! first nonzero entry (row-major) have `re > 0`, or `re = 0` and `im > 0`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjIsom {
    /// Row-major `[a, b, c, d]`.
    m: [GaussianInt; 4],
    conj: bool,
}

impl ProjIsom {
    /// Builds a canonical element. Fails on a singular matrix.
    pub fn new(m: [GaussianInt; 4], conj: bool) -> Result<Self> {
        let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
        if det.is_zero() {
            return Err(Error::Domain("singular matrix".into()));
        }
        Ok(ProjIsom { m, conj }.canonical())
    }

    pub fn from_ints(m: [(i64, i64); 4], conj: bool) -> Result<Self> {
        ProjIsom::new(m.map(|(re, im)| GaussianInt::new(re, im)), conj)
    }

    pub fn identity() -> Self {
        ProjIsom {
            m: [
                GaussianInt::one(),
                GaussianInt::zero(),
                GaussianInt::zero(),
                GaussianInt::one(),
            ],
            conj: false,
        }
    }

    pub fn matrix(&self) -> &[GaussianInt; 4] {
        &self.m
    }

    pub fn conj(&self) -> bool {
        self.conj
    }

    pub fn det(&self) -> GaussianInt {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    pub fn is_identity(&self) -> bool {
        *self == ProjIsom::identity()
    }

    /// Content division followed by unit normalization.
    pub fn canonical(&self) -> Self {
        let mut content = GaussianInt::zero();
        for e in &self.m {
            content = content.gcd(e);
        }
        let mut m = self.m.clone();
        if !content.is_unit() {
            for e in m.iter_mut() {
                *e = e.div_exact(&content).expect("content divides every entry");
            }
        }
        let lead = m.iter().find(|e| !e.is_zero()).expect("nonzero matrix");
        let u = lead.normalizing_unit();
        if u != GaussianInt::one() {
            for e in m.iter_mut() {
                *e = &u * e;
            }
        }
        ProjIsom { m, conj: self.conj }
    }

    /// Twisted product `(A, s)(B, t) = (A σ^s(B), s + t)`.
    pub fn mul(&self, rhs: &ProjIsom) -> ProjIsom {
        let b: [GaussianInt; 4] = if self.conj {
            rhs.m.clone().map(|e| e.conj())
        } else {
            rhs.m.clone()
        };
        let a = &self.m;
        let m = [
            &(&a[0] * &b[0]) + &(&a[1] * &b[2]),
            &(&a[0] * &b[1]) + &(&a[1] * &b[3]),
            &(&a[2] * &b[0]) + &(&a[3] * &b[2]),
            &(&a[2] * &b[1]) + &(&a[3] * &b[3]),
        ];
        ProjIsom {
            m,
            conj: self.conj ^ rhs.conj,
        }
        .canonical()
    }

    pub fn inverse(&self) -> ProjIsom {
        let [a, b, c, d] = &self.m;
        let adj = [d.clone(), -b, -c, a.clone()];
        let adj = if self.conj {
            adj.map(|e| e.conj())
        } else {
            adj
        };
        ProjIsom {
            m: adj,
            conj: self.conj,
        }
        .canonical()
    }

    pub fn pow(&self, k: u32) -> ProjIsom {
        (0..k).fold(ProjIsom::identity(), |acc, _| acc.mul(self))
    }

    /// JSON form `[[re, im] x 4, conj]`.
    pub fn to_json(&self) -> Value {
        let mut arr: Vec<Value> = self
            .m
            .iter()
            .map(|e| json!([bigint_json(&e.re), bigint_json(&e.im)]))
            .collect();
        arr.push(json!(u8::from(self.conj)));
        Value::Array(arr)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [[re,im] x 4, conj], got {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        if arr.len() != 5 {
            return Err(bad());
        }
        let mut m = Vec::with_capacity(4);
        for e in &arr[..4] {
            let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let re = json_bigint(&pair[0]).ok_or_else(bad)?;
            let im = json_bigint(&pair[1]).ok_or_else(bad)?;
            m.push(GaussianInt::new(re, im));
        }
        let conj = match arr[4].as_u64() {
            Some(0) => false,
            Some(1) => true,
            _ => return Err(bad()),
        };
        ProjIsom::new(m.try_into().expect("four entries"), conj)
    }
}

fn bigint_json(x: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn json_bigint(v: &Value) -> Option<num_bigint::BigInt> {
    if let Some(i) = v.as_i64() {
        return Some(i.into());
    }
    v.as_str().and_then(|s| s.parse().ok())
}

impl fmt::Debug for ProjIsom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "([[{}, {}], [{}, {}]], {})",
            self.m[0],
            self.m[1],
            self.m[2],
            self.m[3],
            if self.conj { "ρ" } else { "e" }
        )
    }
}

/// Composition in the group; see [`ProjIsom::mul`].
pub fn gmul(a: &ProjIsom, b: &ProjIsom) -> ProjIsom {
    a.mul(b)
}

/// The ρ-component: 1 for orientation-reversing elements.
pub fn orientation(g: &ProjIsom) -> u8 {
    u8::from(g.conj)
}

/// Membership in the level-2 congruence subgroup: orientation preserving and
/// `m ≡ u·I (mod 2)` for a unit `u ∈ {1, i}` of `Z[i]/(2)`.
pub fn in_gamma2(g: &ProjIsom) -> bool {
    if g.conj {
        return false;
    }
    let [a, b, c, d] = g.matrix().clone().map(|e| e.mod2());
    if b != (0, 0) || c != (0, 0) {
        return false;
    }
    a == d && (a == (1, 0) || a == (0, 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorName {
    R1,
    R2,
    R3,
    R4,
    R1p,
    R2p,
    R3p,
    R4p,
}

impl GeneratorName {
    pub const ALL: [GeneratorName; 8] = [
        GeneratorName::R1,
        GeneratorName::R2,
        GeneratorName::R3,
        GeneratorName::R4,
        GeneratorName::R1p,
        GeneratorName::R2p,
        GeneratorName::R3p,
        GeneratorName::R4p,
    ];

    /// The generators of the Apollonian subgroup.
    pub const APOLLONIAN: [GeneratorName; 4] = [
        GeneratorName::R1,
        GeneratorName::R2,
        GeneratorName::R3,
        GeneratorName::R4,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        GeneratorName::ALL.get(i).copied()
    }

    /// True for the `⊥`-decorated generators.
    pub fn is_perp(self) -> bool {
        self.index() >= 4
    }

    pub fn as_str(self) -> &'static str {
        ["r1", "r2", "r3", "r4", "r1p", "r2p", "r3p", "r4p"][self.index()]
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GeneratorName::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown generator '{s}'")))
    }
}

/// Matrices for the eight face reflections of the ideal octahedron.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorTable {
    pub elements: [ProjIsom; 8],
}

impl GeneratorTable {
    pub fn standard() -> Self {
        let raw: [[(i64, i64); 4]; 8] = [
            [(1, 2), (-2, 0), (2, 0), (-1, 2)], // r1
            [(1, 0), (0, 0), (2, 0), (-1, 0)],  // r2
            [(-1, 0), (2, 0), (0, 0), (1, 0)],  // r3
            [(-1, 0), (0, 0), (0, 0), (1, 0)],  // r4
            [(1, 0), (0, 0), (0, 0), (1, 0)],   // r1p
            [(1, 0), (0, 2), (0, 0), (1, 0)],   // r2p
            [(1, 0), (0, 0), (0, -2), (1, 0)],  // r3p
            [(1, -2), (0, 2), (0, -2), (1, 2)], // r4p
        ];
        GeneratorTable {
            elements: raw.map(|m| ProjIsom::from_ints(m, true).expect("nonsingular generator")),
        }
    }

    pub fn get(&self, g: GeneratorName) -> &ProjIsom {
        &self.elements[g.index()]
    }

    /// A copy of the table with one entry replaced (used to exercise failure paths).
    pub fn with_override(&self, g: GeneratorName, value: ProjIsom) -> Self {
        let mut t = self.clone();
        t.elements[g.index()] = value;
        t
    }
}

pub fn standard_table() -> &'static GeneratorTable {
    static TABLE: OnceLock<GeneratorTable> = OnceLock::new();
    TABLE.get_or_init(GeneratorTable::standard)
}

pub fn standard_generator(name: GeneratorName) -> ProjIsom {
    standard_table().get(name).clone()
}

/// Undirected graph on the eight generators; `{a, b}` is an edge iff `(ab)^2 = e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationGraph {
    adj: [[bool; 8]; 8],
}

impl CommutationGraph {
    pub fn from_table(table: &GeneratorTable) -> Self {
        let mut adj = [[false; 8]; 8];
        for a in GeneratorName::ALL {
            for b in GeneratorName::ALL {
                if a != b {
                    let ab = table.get(a).mul(table.get(b));
                    adj[a.index()][b.index()] = ab.mul(&ab).is_identity();
                }
            }
        }
        CommutationGraph { adj }
    }

    pub fn commute(&self, a: GeneratorName, b: GeneratorName) -> bool {
        self.adj[a.index()][b.index()]
    }

    pub fn edges(&self) -> Vec<(GeneratorName, GeneratorName)> {
        let mut out = Vec::new();
        for a in GeneratorName::ALL {
            for b in GeneratorName::ALL {
                if a < b && self.commute(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn non_edges(&self) -> Vec<(GeneratorName, GeneratorName)> {
        let mut out = Vec::new();
        for a in GeneratorName::ALL {
            for b in GeneratorName::ALL {
                if a < b && !self.commute(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn degree(&self, a: GeneratorName) -> usize {
        self.adj[a.index()].iter().filter(|&&x| x).count()
    }

    /// Exhaustive isomorphism test against the 1-skeleton of the 3-cube.
    pub fn is_cube(&self) -> bool {
        let cube = |u: usize, v: usize| (u ^ v).count_ones() == 1;
        let mut perm: Vec<usize> = (0..8).collect();
        let mut found = false;
        permute(&mut perm, 0, &mut |p| {
            let ok = (0..8).all(|u| (0..8).all(|v| u == v || self.adj[u][v] == cube(p[u], p[v])));
            found |= ok;
            found
        });
        found
    }

    /// Checks every structural invariant; the first failure is reported.
    pub fn check(&self) -> Result<()> {
        use GeneratorName::*;
        for a in GeneratorName::ALL {
            if self.degree(a) != 3 {
                return Err(Error::Invariant(format!(
                    "{a} has degree {} (expected 3)",
                    self.degree(a)
                )));
            }
        }
        for (a, b) in self.edges() {
            if a.is_perp() == b.is_perp() {
                return Err(Error::Invariant(format!(
                    "edge {{{a}, {b}}} violates bipartition"
                )));
            }
        }
        for (i, a) in [R1, R2, R3, R4].into_iter().enumerate() {
            let ap = GeneratorName::from_index(i + 4).expect("perp partner");
            if self.commute(a, ap) {
                return Err(Error::Invariant(format!("{a} commutes with {ap}")));
            }
        }
        if !self.is_cube() {
            return Err(Error::Invariant("commutation graph is not the cube".into()));
        }
        Ok(())
    }
}

// Visits permutations; the visitor returns true to stop early.
fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return visit(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permute(p, k + 1, visit) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}

pub fn commutation_graph_from(table: &GeneratorTable) -> Result<CommutationGraph> {
    let g = CommutationGraph::from_table(table);
    g.check()?;
    Ok(g)
}

/// The commutation graph of the standard generators. Panics if the generator
/// table fails its invariants, which would mean the table itself is wrong.
pub fn commutation_graph() -> &'static CommutationGraph {
    static GRAPH: OnceLock<CommutationGraph> = OnceLock::new();
    GRAPH.get_or_init(|| {
        commutation_graph_from(standard_table()).expect("standard generator table is consistent")
    })
}

/// Order-three rotation of the octahedron.
pub fn octa_r3() -> ProjIsom {
    ProjIsom::from_ints([(1, 0), (0, -1), (0, -1), (0, 0)], false).expect("nonsingular")
}

/// Order-four rotation; the `1/√2` normalization disappears projectively.
pub fn octa_r4() -> ProjIsom {
    ProjIsom::from_ints([(1, -1), (-1, 1), (0, 0), (1, 1)], false).expect("nonsingular")
}

const OCTA_CLOSURE_GUARD: usize = 100;

/// The orientation-preserving symmetry group of the octahedron, as the closure
/// of `{R3, R4}`. Elements are sorted for determinism.
pub fn octa_symmetry_group() -> Result<Vec<ProjIsom>> {
    let gens = [octa_r3(), octa_r4()];
    let mut seen: HashSet<ProjIsom> = HashSet::new();
    let mut queue = VecDeque::from([ProjIsom::identity()]);
    seen.insert(ProjIsom::identity());
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = g.mul(s);
            if seen.insert(h.clone()) {
                if seen.len() > OCTA_CLOSURE_GUARD {
                    return Err(Error::SizeGuard(format!(
                        "closure of <R3, R4> exceeds {OCTA_CLOSURE_GUARD} elements"
                    )));
                }
                queue.push_back(h);
            }
        }
    }
    Ok(seen
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorName::*;

    #[test]
    fn generators_are_involutions() {
        for g in GeneratorName::ALL {
            let x = standard_generator(g);
            assert!(
                gmul(&x, &x).is_identity(),
                "{g} squared is not the identity"
            );
            assert_eq!(orientation(&x), 1);
        }
    }

    #[test]
    fn table_entries_match_canonical_forms() {
        assert_eq!(
            standard_generator(R1p),
            ProjIsom::from_ints([(1, 0), (0, 0), (0, 0), (1, 0)], true).unwrap()
        );
        assert_eq!(
            *standard_generator(R2).matrix(),
            [(1, 0), (0, 0), (2, 0), (-1, 0)].map(|(a, b)| GaussianInt::new(a, b))
        );
        // r4p = [[1-2i, 2i], [-2i, 1+2i]] is rescaled by i
        assert_eq!(
            *standard_generator(R4p).matrix(),
            [(2, 1), (-2, 0), (2, 0), (-2, 1)].map(|(a, b)| GaussianInt::new(a, b))
        );
        // r3 = [[-1, 2], [0, 1]] canonicalizes to [[1, -2], [0, -1]]
        assert_eq!(
            *standard_generator(R3).matrix(),
            [(1, 0), (-2, 0), (0, 0), (-1, 0)].map(|(a, b)| GaussianInt::new(a, b))
        );
    }

    #[test]
    fn identity_law() {
        for g in GeneratorName::ALL {
            let x = standard_generator(g);
            assert_eq!(gmul(&ProjIsom::identity(), &x), x);
            assert_eq!(gmul(&x, &ProjIsom::identity()), x);
        }
    }

    #[test]
    fn r1_r2p_commute() {
        let p = gmul(&standard_generator(R1), &standard_generator(R2p));
        assert!(gmul(&p, &p).is_identity());
        let q = gmul(&standard_generator(R1), &standard_generator(R1p));
        assert!(!gmul(&q, &q).is_identity());
    }

    #[test]
    fn congruence_membership() {
        assert!(in_gamma2(&ProjIsom::identity()));
        assert!(!in_gamma2(&standard_generator(R1)));
        assert!(in_gamma2(&gmul(
            &standard_generator(R1),
            &standard_generator(R2)
        )));
        assert_eq!(
            orientation(&gmul(&standard_generator(R3), &standard_generator(R4))),
            0
        );
        // 1+i is nilpotent mod 2, so (1+i)I-type residues are excluded
        let x = ProjIsom::from_ints([(1, 1), (2, 0), (0, 0), (1, 1)], false).unwrap();
        assert!(!in_gamma2(&x));
    }

    #[test]
    fn commutation_graph_is_cube() {
        let g = commutation_graph();
        assert!(g.commute(R1, R2p));
        assert!(!g.commute(R1, R1p));
        assert!(!g.commute(R1, R2));
        assert_eq!(g.edges().len(), 12);
        assert_eq!(g.non_edges().len(), 16);
        assert!(g.is_cube());
    }

    #[test]
    fn corrupted_table_fails_cube_check() {
        let bad = GeneratorTable::standard().with_override(R2p, standard_generator(R1p));
        assert!(commutation_graph_from(&bad).is_err());
    }

    #[test]
    fn octahedral_group_has_order_24() {
        let g = octa_symmetry_group().unwrap();
        assert_eq!(g.len(), 24);
        assert!(octa_r3().pow(3).is_identity());
        assert!(octa_r4().pow(4).is_identity());
        assert!(!octa_r4().pow(2).is_identity());
        let expected = ProjIsom::from_ints([(0, -1), (-1, 1), (0, 0), (0, 1)], false).unwrap();
        assert_eq!(octa_r4().pow(2), expected);
        assert_ne!(gmul(&octa_r3(), &octa_r4()), gmul(&octa_r4(), &octa_r3()));
    }

    #[test]
    fn inverse_and_json_roundtrip() {
        let x = gmul(
            &gmul(&standard_generator(R1), &standard_generator(R3p)),
            &standard_generator(R4p),
        );
        assert!(gmul(&x, &x.inverse()).is_identity());
        assert_eq!(ProjIsom::from_json(&x.to_json()).unwrap(), x);
    }
}
