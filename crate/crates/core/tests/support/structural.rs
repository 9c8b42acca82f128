//! Exhaustive witness generation and a forward evaluator, independent of
//! `check_witness`. Shared with the acceptance suite of the `zalpha` crate.

#![allow(dead_code)]

use zalpha_core::pelczynski::{AxiomSet, IsoWitness, SpaceExpr};

/// Every expression tree of depth ≤ `depth` over `atoms`.
pub fn expressions(atoms: &[&str], depth: usize) -> Vec<SpaceExpr> {
    let mut levels: Vec<Vec<SpaceExpr>> = vec![atoms.iter().map(|a| SpaceExpr::atom(*a)).collect()];
    for _ in 1..depth {
        let below = levels.last().unwrap().clone();
        let mut next: Vec<SpaceExpr> = levels[0].clone();
        for l in &below {
            for r in &below {
                next.push(SpaceExpr::sum(l.clone(), r.clone()));
            }
        }
        levels.push(next);
    }
    levels.pop().unwrap()
}

/// Witnesses over Refl/Sym/Assoc/AssocInv/Comm/Cong whose source is an
/// expression of depth ≤ `depth`, closed under `Sym`, plus `Trans` of every
/// ordered pair of witnesses with sources of depth ≤ 2 (composable or not).
pub fn structural_witnesses(atoms: &[&str], depth: usize) -> Vec<IsoWitness> {
    let exprs: Vec<Vec<SpaceExpr>> = (0..=depth)
        .map(|d| {
            if d == 0 {
                Vec::new()
            } else {
                expressions(atoms, d)
            }
        })
        .collect();
    let mut levels: Vec<Vec<IsoWitness>> = vec![Vec::new()];
    for d in 1..=depth {
        let mut ws: Vec<IsoWitness> = exprs[d].iter().cloned().map(IsoWitness::refl).collect();
        if d >= 2 {
            for a in &exprs[d - 1] {
                for b in &exprs[d - 1] {
                    ws.push(IsoWitness::Comm {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
            for l in &levels[d - 1] {
                for r in &levels[d - 1] {
                    ws.push(IsoWitness::cong(l.clone(), r.clone()));
                }
            }
        }
        if d >= 3 {
            for a in &exprs[d - 2] {
                for b in &exprs[d - 2] {
                    for c in &exprs[d - 1] {
                        ws.push(IsoWitness::Assoc {
                            a: a.clone(),
                            b: b.clone(),
                            c: c.clone(),
                        });
                        ws.push(IsoWitness::AssocInv {
                            a: c.clone(),
                            b: a.clone(),
                            c: b.clone(),
                        });
                    }
                }
            }
        }
        let syms: Vec<IsoWitness> = ws.iter().cloned().map(IsoWitness::sym).collect();
        ws.extend(syms);
        levels.push(ws);
    }
    let shallow = levels[depth.min(2)].clone();
    let mut all = levels.pop().unwrap_or_default();
    for a in &shallow {
        for b in &shallow {
            all.push(IsoWitness::trans(a.clone(), b.clone()));
        }
    }
    all
}

/// Applies `w` to `source` by direct rewriting; `None` if it does not apply.
pub fn apply(w: &IsoWitness, source: &SpaceExpr, axioms: &AxiomSet) -> Option<SpaceExpr> {
    match w {
        IsoWitness::Axiom { name } => {
            let ax = axioms.get(name)?;
            (ax.lhs == *source).then(|| ax.rhs.clone())
        }
        IsoWitness::Refl { expr } => (expr == source).then(|| source.clone()),
        IsoWitness::Sym { of } => unapply(of, source, axioms),
        IsoWitness::Trans { first, second } => {
            let mid = apply(first, source, axioms)?;
            apply(second, &mid, axioms)
        }
        IsoWitness::Cong { left, right } => match source {
            SpaceExpr::Sum(l, r) => Some(SpaceExpr::sum(
                apply(left, l, axioms)?,
                apply(right, r, axioms)?,
            )),
            SpaceExpr::Atom(_) => None,
        },
        IsoWitness::Assoc { a, b, c } => match source {
            SpaceExpr::Sum(ab, c2) => match ab.as_ref() {
                SpaceExpr::Sum(a2, b2) if **a2 == *a && **b2 == *b && **c2 == *c => Some(
                    SpaceExpr::sum(a.clone(), SpaceExpr::sum(b.clone(), c.clone())),
                ),
                _ => None,
            },
            SpaceExpr::Atom(_) => None,
        },
        IsoWitness::AssocInv { a, b, c } => match source {
            SpaceExpr::Sum(a2, bc) => match bc.as_ref() {
                SpaceExpr::Sum(b2, c2) if **a2 == *a && **b2 == *b && **c2 == *c => Some(
                    SpaceExpr::sum(SpaceExpr::sum(a.clone(), b.clone()), c.clone()),
                ),
                _ => None,
            },
            SpaceExpr::Atom(_) => None,
        },
        IsoWitness::Comm { a, b } => match source {
            SpaceExpr::Sum(l, r) if **l == *a && **r == *b => {
                Some(SpaceExpr::sum(b.clone(), a.clone()))
            }
            _ => None,
        },
    }
}

/// Applies `w` backwards: finds `s` with `apply(w, s) = target`.
fn unapply(w: &IsoWitness, target: &SpaceExpr, axioms: &AxiomSet) -> Option<SpaceExpr> {
    match w {
        IsoWitness::Axiom { name } => {
            let ax = axioms.get(name)?;
            (ax.rhs == *target).then(|| ax.lhs.clone())
        }
        IsoWitness::Refl { expr } => (expr == target).then(|| target.clone()),
        IsoWitness::Sym { of } => apply(of, target, axioms),
        IsoWitness::Trans { first, second } => {
            let mid = unapply(second, target, axioms)?;
            unapply(first, &mid, axioms)
        }
        IsoWitness::Cong { left, right } => match target {
            SpaceExpr::Sum(l, r) => Some(SpaceExpr::sum(
                unapply(left, l, axioms)?,
                unapply(right, r, axioms)?,
            )),
            SpaceExpr::Atom(_) => None,
        },
        IsoWitness::Assoc { a, b, c } => apply(
            &IsoWitness::AssocInv {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            },
            target,
            axioms,
        ),
        IsoWitness::AssocInv { a, b, c } => apply(
            &IsoWitness::Assoc {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            },
            target,
            axioms,
        ),
        IsoWitness::Comm { a, b } => apply(
            &IsoWitness::Comm {
                a: b.clone(),
                b: a.clone(),
            },
            target,
            axioms,
        ),
    }
}

/// Sorted atom multiset, invariant under every structural isomorphism.
pub fn atom_multiset(e: &SpaceExpr) -> Vec<String> {
    let mut atoms: Vec<String> = e.atoms().into_iter().map(String::from).collect();
    atoms.sort();
    atoms
}
