//! Exact structural checks on a generator table, collected into a report.

use serde::Serialize;

use crate::group::{
    octa_r3, octa_r4, octa_symmetry_group, CommutationGraph, GeneratorName, GeneratorTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Involution,
    Edge,
    NonEdge,
    Cube,
    Congruence,
    Octahedral,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupCheck {
    pub kind: CheckKind,
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupReport {
    pub checks: Vec<GroupCheck>,
    pub octahedral_order: usize,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&GroupCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn count(&self, kind: CheckKind) -> usize {
        self.checks.iter().filter(|c| c.kind == kind).count()
    }
}

/// `{r_i, r_j^⊥}` for `i != j`: the cube as `K_{4,4}` minus a perfect matching.
pub fn expected_cube_edge(a: GeneratorName, b: GeneratorName) -> bool {
    a.is_perp() != b.is_perp() && a.index() % 4 != b.index() % 4
}

/// Runs every exact invariant on `table`. Checks are ordered so that a broken
/// entry shows up in the commutation checks before the summary cube check.
pub fn verify_group(table: &GeneratorTable) -> GroupReport {
    let mut checks = Vec::new();
    let mut push = |kind, name: String, passed| checks.push(GroupCheck { kind, name, passed });
    for g in GeneratorName::ALL {
        let x = table.get(g);
        push(
            CheckKind::Involution,
            format!("{g}^2 = e"),
            x.mul(x).is_identity(),
        );
    }
    let graph = CommutationGraph::from_table(table);
    for (i, &a) in GeneratorName::ALL.iter().enumerate() {
        for &b in &GeneratorName::ALL[i + 1..] {
            if expected_cube_edge(a, b) {
                push(
                    CheckKind::Edge,
                    format!("({a} {b})^2 = e"),
                    graph.commute(a, b),
                );
            } else {
                push(
                    CheckKind::NonEdge,
                    format!("({a} {b})^2 != e"),
                    !graph.commute(a, b),
                );
            }
        }
    }
    push(
        CheckKind::Cube,
        "commutation graph is the cube".into(),
        graph.check().is_ok(),
    );
    for g in GeneratorName::ALL {
        let [a, b, c, d] = table.get(g).matrix().clone().map(|e| e.mod2());
        let ok = table.get(g).conj()
            && b == (0, 0)
            && c == (0, 0)
            && a == d
            && (a == (1, 0) || a == (0, 1));
        push(CheckKind::Congruence, format!("{g} ≡ (I mod 2, ρ)"), ok);
    }
    let (r3, r4) = (octa_r3(), octa_r4());
    push(
        CheckKind::Octahedral,
        "R3^3 = e".into(),
        r3.pow(3).is_identity(),
    );
    push(
        CheckKind::Octahedral,
        "R4^4 = e".into(),
        r4.pow(4).is_identity(),
    );
    let order = octa_symmetry_group().map_or(0, |g| g.len());
    push(CheckKind::Octahedral, "|<R3, R4>| = 24".into(), order == 24);
    GroupReport {
        checks,
        octahedral_order: order,
    }
}
